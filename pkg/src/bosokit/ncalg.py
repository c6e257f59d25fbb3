"""Free-algebra rewriting: noncommutative polynomials, degree-truncated
two-sided Groebner bases, normal-word bases and Hilbert series.

Words are tuples of generator indices.  The monomial order is graded
(length-refined) lexicographic: words compare first by total degree, then
by letter count, then letterwise by the presentation's priority list
(earlier in the list = larger letter).  Zero-degree generators are allowed,
which is what the length refinement is for.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .scalars import FieldSpec, Scalar

Word = tuple  # tuple[int, ...]


class PresentationError(ValueError):
    pass


class InconsistentPresentationError(PresentationError):
    """The relation ideal contains a nonzero constant."""


class CutoffError(ValueError):
    """A degree bound was exceeded."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise PresentationError(f"generator {self.name} has negative degree")


class FreeAlgebra:
    """Shared context: generators, base field, monomial order."""

    def __init__(self, field: FieldSpec, generators, priority=None):
        self.field = field
        self.generators = [
            g if isinstance(g, Generator) else Generator(*g) for g in generators
        ]
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        if priority is None:
            priority = names
        if sorted(priority) != sorted(names):
            raise PresentationError("priority list must permute the generators")
        rank = {name: r for r, name in enumerate(priority)}
        self._neg_rank = tuple(-rank[g.name] for g in self.generators)
        self._degrees = tuple(g.degree for g in self.generators)
        self.priority = list(priority)

    def word_degree(self, w: Word) -> int:
        degs = self._degrees
        return sum(degs[i] for i in w)

    def order_key(self, w: Word):
        nr = self._neg_rank
        return (self.word_degree(w), len(w), tuple(nr[i] for i in w))

    def zero(self) -> "NcPoly":
        return NcPoly(self, {})

    def one(self) -> "NcPoly":
        return NcPoly(self, {(): self.field.one()})

    def gen(self, i) -> "NcPoly":
        if isinstance(i, str):
            i = self.index[i]
        return NcPoly(self, {(i,): self.field.one()})

    def poly(self, terms) -> "NcPoly":
        clean = {}
        for w, c in terms.items():
            if not isinstance(c, Scalar):
                c = self.field.from_int(c)
            if not c.is_zero():
                clean[tuple(w)] = c
        return NcPoly(self, clean)

    def word_name(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.generators[w[i]].name
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def parse(self, text: str) -> "NcPoly":
        return _parse_expression(text, self)

    def same_signature(self, other: "FreeAlgebra") -> bool:
        return (
            self.field == other.field
            and self.generators == other.generators
            and self.priority == other.priority
        )


class NcPoly:
    """Noncommutative polynomial: finite map word -> nonzero Scalar."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms):
        self.alg = alg
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Max word degree, or None for 0."""
        if not self.terms:
            return None
        return max(self.alg.word_degree(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.alg.word_degree(w) for w in self.terms}
        return len(degs) <= 1

    def leading(self):
        """(word, coefficient) of the order-largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        w = max(self.terms, key=self.alg.order_key)
        return w, self.terms[w]

    def constant_coefficient(self) -> Scalar:
        return self.terms.get((), self.alg.field.zero())

    def _merge(self, other, sign):
        out = dict(self.terms)
        for w, c in other.terms.items():
            c = c if sign > 0 else -c
            acc = out.get(w)
            if acc is None:
                out[w] = c
            else:
                acc = acc + c
                if acc.is_zero():
                    del out[w]
                else:
                    out[w] = acc
        return NcPoly(self.alg, out)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return NcPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def scale(self, c: Scalar) -> "NcPoly":
        if c.is_zero():
            return NcPoly(self.alg, {})
        return NcPoly(self.alg, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                acc = out.get(w)
                if acc is None:
                    out[w] = c
                else:
                    acc = acc + c
                    if acc.is_zero():
                        del out[w]
                    else:
                        out[w] = acc
        return NcPoly(self.alg, out)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative powers are not defined in a free algebra")
        out = self.alg.one()
        for _ in range(exp):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, NcPoly)
            and self.alg.same_signature(other.alg)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda t: self.alg.order_key(t[0]), reverse=True
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = self.alg.word_name(w)
            cs = str(c)
            if mono == "1":
                term = cs if not _needs_parens(cs) else f"({cs})"
            elif cs == "1":
                term = mono
            elif cs == "-1":
                term = f"-{mono}"
            elif _needs_parens(cs):
                term = f"({cs})*{mono}"
            else:
                term = f"{cs}*{mono}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def _needs_parens(s: str) -> bool:
    return any(ch in s for ch in "+-* ") and not (s.startswith("-") and " " not in s[1:])


@dataclass
class Presentation:
    """Generators, relations, and augmentation data for a quotient algebra."""

    free: FreeAlgebra
    relations: list
    augmentation: dict = dc_field(default_factory=dict)  # gen index -> Scalar

    def __post_init__(self):
        field = self.free.field
        aug = {}
        for i, g in enumerate(self.free.generators):
            if i in self.augmentation:
                val = self.augmentation[i]
                aug[i] = val if isinstance(val, Scalar) else field.from_int(val)
            elif g.name in self.augmentation:
                val = self.augmentation[g.name]
                aug[i] = val if isinstance(val, Scalar) else field.from_int(val)
            else:
                # positive-degree generators default to counit 0; filtered
                # presentations (grouplike generators) may override
                aug[i] = field.zero()
        self.augmentation = aug

    @property
    def field(self) -> FieldSpec:
        return self.free.field

    def is_graded(self) -> bool:
        return all(r.is_homogeneous() for r in self.relations)

    def augment_poly(self, f: NcPoly) -> Scalar:
        total = self.field.zero()
        for w, c in f.terms.items():
            val = c
            for letter in w:
                val = val * self.augmentation[letter]
                if val.is_zero():
                    break
            total = total + val
        return total

    def validate(self):
        for r in self.relations:
            if r.is_zero():
                continue
            if not self.augment_poly(r).is_zero():
                raise PresentationError(
                    f"augmentation does not kill the relation {r}"
                )


class Rule:
    __slots__ = ("lead", "tail", "alive")

    def __init__(self, lead: Word, tail: NcPoly):
        self.lead = lead
        self.tail = tail  # lead rewrites to tail; every tail word < lead
        self.alive = True

    def poly(self, alg: FreeAlgebra) -> NcPoly:
        lead_poly = NcPoly(alg, {self.lead: alg.field.one()})
        return lead_poly - self.tail


class PresentedAlgebra:
    """A quotient algebra with rewrite rules valid up to a degree cutoff."""

    def __init__(self, presentation, cutoff, rules, complete):
        self.presentation = presentation
        self.free = presentation.free
        self.field = presentation.field
        self.cutoff = cutoff
        self.rules = rules
        self.gb_complete = complete
        self._normal_cache = {}
        self._nf_cache = {}
        self._dimension = None
        self._index_rules()

    def _index_rules(self):
        self._rules_by_first = {}
        for rule in self.rules:
            self._rules_by_first.setdefault(rule.lead[0], []).append(rule)

    # -- rewriting -----------------------------------------------------

    def _find_rewrite(self, word: Word):
        by_first = self._rules_by_first
        n = len(word)
        for pos in range(n):
            for rule in by_first.get(word[pos], ()):
                L = len(rule.lead)
                if pos + L <= n and word[pos : pos + L] == rule.lead:
                    return pos, rule
        return None

    def _nf_word(self, word: Word):
        """Memoized normal form of a single word, as a terms dict."""
        cache = self._nf_cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        one = self.field.one()
        stack = [word]
        while stack:
            w = stack[-1]
            if w in cache:
                stack.pop()
                continue
            found = self._find_rewrite(w)
            if found is None:
                cache[w] = {w: one}
                stack.pop()
                continue
            pos, rule = found
            pre, post = w[:pos], w[pos + len(rule.lead):]
            children = {pre + tw + post: tc for tw, tc in rule.tail.terms.items()}
            missing = [ch for ch in children if ch not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc = {}
            for ch, tc in children.items():
                for ww, cc in cache[ch].items():
                    val = tc * cc
                    cur = acc.get(ww)
                    if cur is None:
                        acc[ww] = val
                    else:
                        cur = cur + val
                        if cur.is_zero():
                            del acc[ww]
                        else:
                            acc[ww] = cur
            cache[w] = acc
            stack.pop()
        return cache[word]

    def normal_form(self, f: NcPoly, rng=None) -> NcPoly:
        """Fully reduce f against the rewrite rules.

        Exact at any degree when the basis is complete; otherwise requires
        deg f <= cutoff.  The optional rng picks random reduction paths
        (used by the confluence property tests); the result must not
        depend on it.
        """
        if not self.gb_complete:
            d = f.degree()
            if d is not None and d > self.cutoff:
                raise CutoffError(
                    f"degree {d} exceeds cutoff {self.cutoff} of an incomplete basis"
                )
        if rng is None:
            out = {}
            for word, coeff in f.terms.items():
                for ww, cc in self._nf_word(word).items():
                    val = coeff * cc
                    acc = out.get(ww)
                    if acc is None:
                        out[ww] = val
                    else:
                        acc = acc + val
                        if acc.is_zero():
                            del out[ww]
                        else:
                            out[ww] = acc
            return NcPoly(self.free, out)
        # random reduction path (confluence property tests)
        work = dict(f.terms)
        out = {}
        key = self.free.order_key
        while work:
            word = sorted(work, key=key)[rng.randrange(len(work))]
            coeff = work.pop(word)
            hits = []
            for pos in range(len(word)):
                for rule in self.rules:
                    L = len(rule.lead)
                    if pos + L <= len(word) and word[pos : pos + L] == rule.lead:
                        hits.append((pos, rule))
            if not hits:
                acc = out.get(word)
                if acc is None:
                    out[word] = coeff
                else:
                    acc = acc + coeff
                    if acc.is_zero():
                        del out[word]
                    else:
                        out[word] = acc
                continue
            pos, rule = hits[rng.randrange(len(hits))]
            pre, post = word[:pos], word[pos + len(rule.lead):]
            for tw, tc in rule.tail.terms.items():
                nw = pre + tw + post
                nc = coeff * tc
                acc = work.get(nw)
                if acc is None:
                    work[nw] = nc
                else:
                    acc = acc + nc
                    if acc.is_zero():
                        del work[nw]
                    else:
                        work[nw] = acc
        return NcPoly(self.free, out)

    def is_normal_word(self, word: Word) -> bool:
        return self._find_rewrite(word) is None

    # -- normal words / Hilbert data ------------------------------------

    def normal_words(self, d: int):
        """All irreducible words of degree exactly d, in order-key order."""
        if d > self.cutoff and not self.gb_complete:
            raise CutoffError(f"degree {d} exceeds cutoff {self.cutoff}")
        if d in self._normal_cache:
            return self._normal_cache[d]
        gens = self.free.generators
        leads = [r.lead for r in self.rules]
        out = []
        limit = 200000  # guards against infinite zero-degree tails

        def ends_reducible(word):
            n = len(word)
            for lead in leads:
                L = len(lead)
                if L <= n and word[n - L :] == lead:
                    return True
            return False

        stack = [((), 0)]
        count = 0
        while stack:
            word, deg = stack.pop()
            count += 1
            if count > limit:
                raise PresentationError(
                    "normal-word enumeration exploded; degree-0 part not finite?"
                )
            if deg == d:
                out.append(word)
            # extend: zero-degree letters may continue at deg == d
            for i in range(len(gens) - 1, -1, -1):
                nd = deg + gens[i].degree
                if nd > d:
                    continue
                nw = word + (i,)
                if not ends_reducible(nw):
                    stack.append((nw, nd))
        out.sort(key=self.free.order_key)
        self._normal_cache[d] = out
        return out

    def hilbert_series(self, D: int):
        if D > self.cutoff and not self.gb_complete:
            raise CutoffError(f"degree {D} exceeds cutoff {self.cutoff}")
        return [len(self.normal_words(d)) for d in range(D + 1)]

    def is_connected(self) -> bool:
        return self.normal_words(0) == [()]

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.free.generators), default=0)

    def top_degree(self):
        """Largest degree with normal words (finite-dimensional case)."""
        dim, top = self._finite_scan()
        return top

    def _finite_scan(self):
        step = max(self.max_generator_degree(), 1)
        total, top, empty_run = 0, -1, 0
        d = 0
        while d <= self.cutoff:
            n = len(self.normal_words(d))
            if n:
                total += n
                top = d
                empty_run = 0
            else:
                empty_run += 1
                if empty_run >= step:
                    return total, top
            d += 1
        raise CutoffError(
            f"no empty window below cutoff {self.cutoff}; "
            "algebra not certified finite-dimensional"
        )

    def is_finite_dimensional(self) -> bool:
        if not self.gb_complete:
            return False
        try:
            self._finite_scan()
            return True
        except CutoffError:
            return False

    def dimension(self) -> int:
        if self._dimension is None:
            if not self.gb_complete:
                raise CutoffError("dimension needs a complete Groebner basis")
            self._dimension, _ = self._finite_scan()
        return self._dimension

    # -- derived predicates ---------------------------------------------

    def is_central(self, f: NcPoly, D=None) -> bool:
        """True iff f commutes with every generator (exact when complete)."""
        D = D if D is not None else self.cutoff
        fd = f.degree() or 0
        if not self.gb_complete and fd + self.max_generator_degree() > D:
            raise CutoffError("centrality check exceeds the cutoff")
        for i in range(len(self.free.generators)):
            g = self.free.gen(i)
            if not self.normal_form(f * g - g * f).is_zero():
                return False
        return True

    def centrality_witness(self, f: NcPoly):
        """Generator name on which centrality fails, or None."""
        for i, gen in enumerate(self.free.generators):
            g = self.free.gen(i)
            if not self.normal_form(f * g - g * f).is_zero():
                return gen.name
        return None

    def parse(self, text: str) -> NcPoly:
        return self.free.parse(text)

    def describe(self):
        return {
            "field": str(self.field),
            "generators": [f"{g.name}:{g.degree}" for g in self.free.generators],
            "relations": [str(r) for r in self.presentation.relations],
            "priority": list(self.free.priority),
            "cutoff": self.cutoff,
            "gb_complete": self.gb_complete,
        }


# -- Groebner engine ------------------------------------------------------


def groebner_truncated(pres: Presentation, D: int, validate=True) -> PresentedAlgebra:
    """Diamond-lemma closure of the relation set up to degree D.

    All S-overlap obstructions of degree <= D are resolved.  The returned
    algebra is flagged complete when either no overlap was skipped, or the
    normal words vanish on a window wide enough to certify that no new rule
    can appear above D.
    """
    if validate:
        pres.validate()
    alg = pres.free
    field = alg.field
    max_rel = 0
    for r in pres.relations:
        d = r.degree()
        if d is not None:
            max_rel = max(max_rel, d)
    if D < max_rel:
        raise CutoffError(f"cutoff {D} is below the relation degree {max_rel}")

    rules: list[Rule] = []
    skipped_above = False

    def reduce_poly(f: NcPoly) -> NcPoly:
        work = dict(f.terms)
        out = {}
        key = alg.order_key
        while work:
            word = max(work, key=key)
            coeff = work.pop(word)
            hit = None
            for pos in range(len(word)):
                for rule in rules:
                    if not rule.alive:
                        continue
                    L = len(rule.lead)
                    if pos + L <= len(word) and word[pos : pos + L] == rule.lead:
                        hit = (pos, rule)
                        break
                if hit:
                    break
            if hit is None:
                acc = out.get(word)
                out[word] = coeff if acc is None else acc + coeff
                if out[word].is_zero():
                    del out[word]
                continue
            pos, rule = hit
            pre, post = word[:pos], word[pos + len(rule.lead):]
            for tw, tc in rule.tail.terms.items():
                nw = pre + tw + post
                nc = coeff * tc
                acc = work.get(nw)
                if acc is None:
                    work[nw] = nc
                else:
                    acc = acc + nc
                    if acc.is_zero():
                        del work[nw]
                    else:
                        work[nw] = acc
        return NcPoly(alg, out)

    import heapq

    overlap_heap = []  # (degree, len, ia, ib, shift)

    def push_overlaps(ia):
        u = rules[ia].lead
        for ib, rb in enumerate(rules):
            if not rb.alive:
                continue
            v = rb.lead
            # u suffix == v prefix (u left, v right)
            for t in range(1, min(len(u), len(v))):
                if u[len(u) - t :] == v[:t]:
                    w = u + v[t:]
                    heapq.heappush(
                        overlap_heap, (alg.word_degree(w), len(w), ia, ib, t)
                    )
            if ib != ia:
                # v suffix == u prefix (v left, u right)
                for t in range(1, min(len(u), len(v))):
                    if v[len(v) - t :] == u[:t]:
                        w = v + u[t:]
                        heapq.heappush(
                            overlap_heap, (alg.word_degree(w), len(w), ib, ia, t)
                        )

    def contains(word, sub):
        L = len(sub)
        return any(word[p : p + L] == sub for p in range(len(word) - L + 1))

    pending = sorted(
        (r for r in pres.relations if not r.is_zero()),
        key=lambda r: alg.order_key(r.leading()[0]),
    )
    pending = list(pending)

    while pending or overlap_heap:
        if pending:
            cand = pending.pop(0)
        else:
            deg, _, ia, ib, t = heapq.heappop(overlap_heap)
            if not (rules[ia].alive and rules[ib].alive):
                continue
            if deg > D:
                skipped_above = True
                continue
            u, v = rules[ia].lead, rules[ib].lead
            # overlap word w = u + v[t:] = (u[:-t]) + v
            left = NcPoly(alg, {u[: len(u) - t]: field.one()})
            right = NcPoly(alg, {v[t:]: field.one()})
            cand = rules[ia].tail * right - left * rules[ib].tail
        nf = reduce_poly(cand)
        if nf.is_zero():
            continue
        lead, lc = nf.leading()
        if not lead:
            raise InconsistentPresentationError(
                "the relation ideal contains a nonzero constant"
            )
        monic = nf.scale(lc.inverse())
        tail = NcPoly(alg, {w: -c for w, c in monic.terms.items() if w != lead})
        new_rule = Rule(lead, tail)
        # retire rules made redundant by the new lead
        for rule in rules:
            if rule.alive and contains(rule.lead, lead):
                rule.alive = False
                pending.append(rule.poly(alg))
        rules.append(new_rule)
        push_overlaps(len(rules) - 1)

    final = [r for r in rules if r.alive]
    final.sort(key=lambda r: alg.order_key(r.lead))
    # inter-reduce tails against the final rule set
    result = PresentedAlgebra(pres, D, final, complete=not skipped_above)
    for r in final:
        r.tail = result.normal_form(r.tail)
    result._normal_cache = {}

    if skipped_above:
        # finite-window certificate: a run of empty degrees of width
        # max generator degree proves no normal words above, hence no
        # S-poly remainder above D can be nonzero.
        step = max(result.max_generator_degree(), 1)
        run = 0
        for d in range(D + 1):
            if len(result.normal_words(d)) == 0:
                run += 1
                if run >= step:
                    result.gb_complete = True
                    break
            else:
                run = 0
    return result


def normal_form(f: NcPoly, a: PresentedAlgebra) -> NcPoly:
    return a.normal_form(f)


def normal_words(a: PresentedAlgebra, d: int):
    return a.normal_words(d)


def hilbert_series(a: PresentedAlgebra, D: int):
    return a.hilbert_series(D)


def is_central(f: NcPoly, a: PresentedAlgebra, D=None) -> bool:
    return a.is_central(f, D)


def ideal_contains_truncated(f, ideal_gens, a: PresentedAlgebra, D: int) -> bool:
    """Membership of f in the two-sided ideal of a generated by ideal_gens,
    decided by a Groebner basis of the enlarged presentation up to D."""
    fd = f.degree() or 0
    if fd > D:
        raise CutoffError(f"degree {fd} exceeds the bound {D}")
    enlarged = Presentation(
        a.free,
        list(a.presentation.relations) + list(ideal_gens),
        dict(a.presentation.augmentation),
    )
    bigger = groebner_truncated(enlarged, D, validate=False)
    return bigger.normal_form(f).is_zero()


# -- expression grammar ---------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<op>[-+*^()/:])|(?P<bad>\S))"
)


class ParseError(ValueError):
    def __init__(self, message, column):
        super().__init__(f"{message} (column {column})")
        self.column = column


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        if m.group("bad"):
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad") + 1)
        kind = "name" if m.group("name") else ("int" if m.group("int") else "op")
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, alg: FreeAlgebra):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alg = alg

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        kind, val, col = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}", col)

    def parse(self):
        poly = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {val!r}", col)
        return poly

    def expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if val == "-":
            self.next()
            sign = -1
        elif val == "+":
            self.next()
        poly = self.term()
        if sign < 0:
            poly = -poly
        while True:
            kind, val, _ = self.peek()
            if val == "+":
                self.next()
                poly = poly + self.term()
            elif val == "-":
                self.next()
                poly = poly - self.term()
            else:
                return poly

    def term(self):
        poly = self.factor()
        while True:
            kind, val, _ = self.peek()
            if val == "*":
                self.next()
                poly = poly * self.factor()
            else:
                return poly

    def factor(self):
        poly = self.atom()
        kind, val, _ = self.peek()
        if val == "^":
            self.next()
            kind, val, col = self.next()
            if kind != "int":
                raise ParseError("exponent must be a positive integer", col)
            exp = int(val)
            out = self.alg.one()
            for _ in range(exp):
                out = out * poly
            return out
        return poly

    def atom(self):
        kind, val, col = self.next()
        if val == "(":
            poly = self.expr()
            self.expect(")")
            return poly
        if kind == "int":
            num = int(val)
            k2, v2, _ = self.peek()
            if v2 == "/":
                self.next()
                k3, v3, col3 = self.next()
                if k3 != "int":
                    raise ParseError("denominator must be an integer", col3)
                from fractions import Fraction

                c = self.alg.field.from_fraction(Fraction(num, int(v3)))
                return NcPoly(self.alg, {(): c} if not c.is_zero() else {})
            c = self.alg.field.from_int(num)
            return NcPoly(self.alg, {(): c} if not c.is_zero() else {})
        if kind == "name":
            if val == "zeta" or re.fullmatch(r"zeta\d+", val):
                k2, v2, _ = self.peek()
                power = 1
                if v2 == "^":
                    self.next()
                    k3, v3, col3 = self.next()
                    if k3 != "int":
                        raise ParseError("zeta exponent must be an integer", col3)
                    power = int(v3)
                from .scalars import parse_scalar

                base = val if val != "zeta" else "zeta"
                c = parse_scalar(f"{base}^{power}" if power != 1 else base, self.alg.field)
                return NcPoly(self.alg, {(): c} if not c.is_zero() else {})
            if val not in self.alg.index:
                raise ParseError(f"unknown generator {val!r}", col)
            return self.alg.gen(val)
        raise ParseError(f"unexpected token {val!r}", col)


def _parse_expression(text: str, alg: FreeAlgebra) -> NcPoly:
    return _Parser(text, alg).parse()


def parse_generator_decls(decls, field: FieldSpec, priority=None) -> FreeAlgebra:
    """Build a FreeAlgebra from declarations like ["x:1", "g:0"]."""
    gens = []
    for decl in decls:
        if ":" in decl:
            name, deg = decl.rsplit(":", 1)
            gens.append(Generator(name.strip(), int(deg)))
        else:
            gens.append(Generator(decl.strip(), 1))
    return FreeAlgebra(field, gens, priority=priority)
