"""Deformation sequences Z -> Q -> R as first-class values with
degree-certified verification of the defining conditions, their
Hopf-algebra and equivariant variants, and the smash-of-sequences
constructor Z (x) W -> Q x| H -> R x| K.

Every check is exact linear algebra on cumulative normal-word bases up to
the requested internal degree.  A report entry is verified(D),
asserted(reason), or failed(witness); a verified label never relies on
floating point or sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .linalg import SpanBasis
from .hopf import (
    GROUPLIKE,
    PRIMITIVE,
    ActionSpec,
    HopfAlgebraData,
    HopfError,
    HopfPresented,
    PresentedHopfAction,
)
from .ncalg import (
    FreeAlgebra,
    Generator,
    NcPoly,
    Presentation,
    PresentedAlgebra,
    groebner_truncated,
)


class SequenceError(ValueError):
    pass


# -- algebra maps --------------------------------------------------------------


class AlgebraMapSpec:
    """An algebra map given by generator images in the target."""

    def __init__(self, source: PresentedAlgebra, target: PresentedAlgebra,
                 images, name="map"):
        self.source = source
        self.target = target
        self.name = name
        if isinstance(images, dict):
            images = [
                images[g.name] if g.name in images else images[i]
                for i, g in enumerate(source.free.generators)
            ]
        self.images = list(images)
        if len(self.images) != len(source.free.generators):
            raise SequenceError(f"{name}: one image per source generator required")

    def apply_word(self, word) -> NcPoly:
        out = self.target.free.one()
        for letter in word:
            out = out * self.images[letter]
            if out.is_zero():
                break
        return self.target.normal_form(out)

    def apply(self, f: NcPoly) -> NcPoly:
        out = self.target.free.zero()
        for w, c in f.terms.items():
            out = out + self.apply_word(w).scale(c)
        return self.target.normal_form(out)

    def is_degree_preserving(self) -> bool:
        for i, g in enumerate(self.source.free.generators):
            img = self.images[i]
            if img.is_zero():
                continue
            degs = {self.target.free.word_degree(w) for w in img.terms}
            if degs != {g.degree}:
                return False
        return True

    def validate(self):
        """Relations of the source must map to zero in the target."""
        for rel in self.source.presentation.relations:
            if not self.apply(rel).is_zero():
                raise SequenceError(
                    f"{self.name}: source relation {rel} does not map to zero"
                )

    def preserves_augmentation(self) -> bool:
        src = self.source.presentation
        tgt = self.target.presentation
        for i in range(len(self.source.free.generators)):
            if tgt.augment_poly(self.images[i]) != src.augmentation[i]:
                return False
        return True

    def target_generator_lift(self):
        """Map target generator index -> a source generator mapping exactly
        onto it, provided every target generator is covered; else None."""
        out = {}
        for i, img in enumerate(self.images):
            if len(img.terms) != 1:
                continue
            w, c = next(iter(img.terms.items()))
            if len(w) == 1 and c.is_one() and w[0] not in out:
                out[w[0]] = i
        if len(out) != len(self.target.free.generators):
            return None
        return out

    def describe(self):
        return {
            "name": self.name,
            "images": {
                g.name: str(self.images[i])
                for i, g in enumerate(self.source.free.generators)
            },
        }


# -- reports -------------------------------------------------------------------


@dataclass
class Condition:
    label: str
    status: str  # "verified" | "asserted" | "failed"
    degree: int = None
    reason: str = None
    witness: str = None

    def to_json(self):
        out = {"label": self.label, "status": self.status}
        if self.degree is not None:
            out["degree"] = self.degree
        if self.reason is not None:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class CheckReport:
    conditions: list

    @property
    def passed(self) -> bool:
        return all(c.status != "failed" for c in self.conditions)

    def condition(self, label):
        for c in self.conditions:
            if c.label == label:
                return c
        return None

    def to_json(self):
        return {
            "passed": self.passed,
            "conditions": [c.to_json() for c in self.conditions],
        }


# -- sequences -----------------------------------------------------------------


@dataclass
class DeformationSequence:
    Z: PresentedAlgebra
    Q: PresentedAlgebra
    R: PresentedAlgebra
    iota: AlgebraMapSpec
    pi: AlgebraMapSpec
    asserted: dict = dc_field(default_factory=dict)
    name: str = "sequence"

    def describe(self):
        return {
            "name": self.name,
            "Z": self.Z.describe(),
            "Q": self.Q.describe(),
            "R": self.R.describe(),
            "iota": self.iota.describe(),
            "pi": self.pi.describe(),
        }


@dataclass
class HopfDefSequence:
    W: HopfPresented
    H: HopfPresented
    K: HopfPresented
    jmap: AlgebraMapSpec  # W.algebra -> H.algebra
    pmap: AlgebraMapSpec  # H.algebra -> K.algebra
    name: str = "hopf-sequence"

    def describe(self):
        return {
            "name": self.name,
            "W": self.W.algebra.describe(),
            "H": self.H.algebra.describe(),
            "K": self.K.algebra.describe(),
            "j": self.jmap.describe(),
            "p": self.pmap.describe(),
        }


# -- basis helpers -------------------------------------------------------------


def cumulative_words(A: PresentedAlgebra, D: int):
    out = []
    for d in range(D + 1):
        out.extend(A.normal_words(d))
    return out


def poly_vec(poly: NcPoly, index, field, size):
    vec = [field.zero()] * size
    for w, c in poly.terms.items():
        pos = index.get(w)
        if pos is None:
            raise SequenceError(f"word {w} escapes the cumulative basis")
        vec[pos] = vec[pos] + c
    return vec


# -- structural pattern whitelist ----------------------------------------------


def _is_commutator(A: PresentedAlgebra, rel: NcPoly):
    """(i, j) if rel is +-(x_i x_j - x_j x_i), else None."""
    terms = rel.sorted_terms()
    if len(terms) != 2:
        return None
    (w1, c1), (w2, c2) = terms
    if len(w1) == 2 and len(w2) == 2 and w1 == (w2[1], w2[0]) and w1[0] != w1[1]:
        if (c1 + c2).is_zero():
            return (w1[0], w1[1])
    return None


def _is_inverse_pair(A: PresentedAlgebra, rel: NcPoly):
    """(u, v) if rel is +-(x_u x_v - 1), else None."""
    terms = rel.sorted_terms()
    if len(terms) != 2:
        return None
    (w1, c1), (w2, c2) = terms
    if len(w1) == 2 and w2 == () and (c1 + c2).is_zero():
        return (w1[0], w1[1])
    return None


def _is_ore_relation(A: PresentedAlgebra, rel: NcPoly):
    """(b, a) for a skew/Ore rule b a = sigma(a) b + delta(a); sigma(a) and
    delta(a) may only involve letters of strictly larger rank than b (the
    adjoined variable).  Returns None when the shape does not match."""
    alg = A.free
    lead, lc = rel.leading()
    if len(lead) != 2 or lead[0] == lead[1]:
        return None
    b, a = lead
    rank = {i: alg.priority.index(alg.generators[i].name) for i in range(len(alg.generators))}
    if rank[b] >= rank[a]:
        return None  # lead must be (higher, lower)
    found_sigma = False
    for w, c in rel.terms.items():
        if w == lead:
            continue
        if w and w[-1] == b:
            body = w[:-1]
            found_sigma = True
        else:
            body = w
        if any(rank[letter] <= rank[b] for letter in body):
            return None
    return (b, a) if found_sigma else None


def classify_structure(A: PresentedAlgebra):
    """Whitelisted structural tags of a presented algebra.

    Returns (tag, reason) with tag in {"free-commutative-polynomial",
    "localized-polynomial", "iterated-ore", "semisimple-finite"} or None.
    """
    ngen = len(A.free.generators)
    rels = [r for r in A.presentation.relations if not r.is_zero()]
    commutators, inverses, ore, other = set(), set(), set(), []
    for r in rels:
        cm = _is_commutator(A, r)
        if cm is not None:
            commutators.add(frozenset(cm))
            continue
        iv = _is_inverse_pair(A, r)
        if iv is not None:
            inverses.add(iv)
            continue
        oo = _is_ore_relation(A, r)
        if oo is not None:
            ore.add(frozenset(oo))
            continue
        other.append(r)
    all_pairs = {
        frozenset((i, j)) for i in range(ngen) for j in range(i + 1, ngen)
    }
    inverse_letters = {x for p in inverses for x in p}
    free_pairs = {
        p for p in all_pairs if not (p & inverse_letters)
    }
    if not other and not ore and not inverses and commutators >= all_pairs or (
        not other and not ore and not inverses and ngen <= 1 and not rels
    ):
        return ("free-commutative-polynomial", f"{ngen} commuting polynomial generators")
    if not other and not ore:
        # commutative with some invertible pairs
        need = {p for p in all_pairs if not (set(p) & inverse_letters)} | {
            p for p in all_pairs
        }
        pair_ok = commutators | {frozenset(p) for p in inverses}
        covered = all(
            frozenset({i, j}) in commutators
            or ({i, j} & inverse_letters)
            for i in range(ngen)
            for j in range(i + 1, ngen)
        )
        if inverses and covered and _inverses_consistent(inverses):
            return ("localized-polynomial", "commutative generators with inverse pairs")
    if not other:
        covered = all(
            frozenset({i, j}) in (commutators | ore) or ({i, j} & inverse_letters)
            for i in range(ngen)
            for j in range(i + 1, ngen)
        )
        if covered and _inverses_consistent(inverses):
            return (
                "iterated-ore",
                "skew-commutation (Ore) rules cover every generator pair",
            )
    if A.gb_complete and A.is_finite_dimensional():
        try:
            if _semisimple_trace_check(A):
                return ("semisimple-finite", "finite-dimensional with nondegenerate trace form")
        except SequenceError:
            pass
    return None


def _inverses_consistent(inverses) -> bool:
    # each inverse pair must appear in both orders
    return all((v, u) in inverses for (u, v) in inverses)


def _semisimple_trace_check(A: PresentedAlgebra) -> bool:
    words = cumulative_words(A, A.top_degree())
    n = len(words)
    if n > 60:
        raise SequenceError("trace-form check too large")
    field = A.field
    index = {w: i for i, w in enumerate(words)}
    mats = []
    one = field.one()
    for a in words:
        m = [[field.zero()] * n for _ in range(n)]
        for j, b in enumerate(words):
            prod = A.normal_form(NcPoly(A.free, {a + b: one}))
            for w, c in prod.terms.items():
                m[index[w]][j] = c
        mats.append(m)
    gram = [[field.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            prod = linalg.mat_mul(mats[i], mats[j], field)
            tr = field.zero()
            for t in range(n):
                tr = tr + prod[t][t]
            gram[i][j] = tr
    return linalg.rank(gram, field) == n


def is_commutative_presented(A: PresentedAlgebra) -> bool:
    for i in range(len(A.free.generators)):
        for j in range(i + 1, len(A.free.generators)):
            f = A.free.gen(i) * A.free.gen(j) - A.free.gen(j) * A.free.gen(i)
            if not A.normal_form(f).is_zero():
                return False
    return True


# -- shared freeness witness ----------------------------------------------------


@dataclass
class FreenessWitness:
    independent_to: int
    spanning_to: int
    failure: str = None

    def ok(self, D: int) -> bool:
        if self.failure:
            return False
        return self.independent_to >= D and 2 * self.spanning_to >= D


def free_module_witness(field, D, ambient_index, ambient_degrees,
                        sub_elements, fiber_elements, multiply) -> FreenessWitness:
    """Certify an explicit free-module basis inside a cumulative basis.

    sub_elements / fiber_elements: lists of (formal_degree, payload); the
    products multiply(sub, fiber) are vectors over the ambient cumulative
    basis.  Checks that all products of formal degree <= D are linearly
    independent and computes the largest degree whose ambient slice they
    span.  Used by both the deformation-sequence flatness proxy and the
    twisted-tensor-product flatness check.
    """
    size = len(ambient_index)
    span = SpanBasis(field, size)
    pairs = []
    for ds, s in sub_elements:
        for df, f in fiber_elements:
            if ds + df <= D:
                pairs.append((ds + df, s, f))
    pairs.sort(key=lambda t: t[0])
    independent_to = D
    failure = None
    for deg, s, f in pairs:
        vec = multiply(s, f)
        if not span.add(vec):
            independent_to = deg - 1
            failure = f"dependent product at formal degree {deg}"
            break
    spanning_to = -1
    by_degree = {}
    for w, pos in ambient_index.items():
        by_degree.setdefault(ambient_degrees[pos], []).append(pos)
    zero, one = field.zero(), field.one()
    for d in range(D + 1):
        ok = True
        for pos in by_degree.get(d, []):
            probe = [zero] * size
            probe[pos] = one
            if not span.contains(probe):
                ok = False
                break
        if ok:
            spanning_to = d
        else:
            break
    return FreenessWitness(independent_to, spanning_to, failure)


# -- the plain verifier ----------------------------------------------------------


def _injectivity(map_spec: AlgebraMapSpec, D: int):
    """(ok, witness): images of all source normal words of degree <= D are
    linearly independent in the target."""
    src, tgt = map_spec.source, map_spec.target
    words = cumulative_words(src, D)
    tgt_words = cumulative_words(tgt, D)
    index = {w: i for i, w in enumerate(tgt_words)}
    field = tgt.field
    vectors = []
    for w in words:
        img = map_spec.apply_word(w)
        vectors.append(poly_vec(img, index, field, len(tgt_words)))
    span = SpanBasis(field, len(tgt_words))
    for w, v in zip(words, vectors):
        if not span.add(v):
            return False, src.free.word_name(w)
    return True, None


def _surjectivity(map_spec: AlgebraMapSpec):
    """(ok, witness): every target generator lies in the image subalgebra."""
    tgt = map_spec.target
    field = tgt.field
    maxdeg = max((g.degree for g in tgt.free.generators), default=0)
    tgt_words = cumulative_words(tgt, maxdeg)
    index = {w: i for i, w in enumerate(tgt_words)}
    size = len(tgt_words)
    span = SpanBasis(field, size)
    level = [tgt.free.one()]
    span.add(poly_vec(level[0], index, field, size))
    for _ in range(max(1, maxdeg)):
        new_level = []
        for el in level:
            for img in map_spec.images:
                prod = tgt.normal_form(el * img)
                if prod.is_zero():
                    continue
                if (prod.degree() or 0) > maxdeg:
                    continue
                if span.add(poly_vec(prod, index, field, size)):
                    new_level.append(prod)
        if not new_level:
            break
        level = new_level
    for t, g in enumerate(tgt.free.generators):
        vec = poly_vec(tgt.normal_form(tgt.free.gen(t)), index, field, size)
        if not span.contains(vec):
            return False, g.name
    return True, None


def _kernel_equals_ideal(map_spec: AlgebraMapSpec, sub_map: AlgebraMapSpec, D: int):
    """ker(map) = target-of-sub . (augmentation ideal of sub source), to D.

    map: Q -> R, sub_map: Z -> Q.  Returns (ok, witness_string).
    """
    Q, R, Z = map_spec.source, map_spec.target, sub_map.source
    field = Q.field
    q_words = cumulative_words(Q, D)
    q_index = {w: i for i, w in enumerate(q_words)}
    r_words = cumulative_words(R, D)
    r_index = {w: i for i, w in enumerate(r_words)}
    # pi o iota = eps_Z on generators => Q Z+ inside ker pi
    for i, g in enumerate(Z.free.generators):
        img = map_spec.apply(sub_map.images[i])
        expected = R.free.one().scale(Z.presentation.augmentation[i])
        if img != R.normal_form(expected):
            return False, f"pi(iota({g.name})) = {img} != eps({g.name})"
    # span of Q Z+ within degree <= D
    zplus = []
    for d in range(1, D + 1):
        for zw in Z.normal_words(d):
            el = sub_map.apply_word(zw)
            eps = Z.presentation.augment_poly(NcPoly(Z.free, {zw: field.one()}))
            el = el - Q.free.one().scale(eps)
            el = Q.normal_form(el)
            if not el.is_zero():
                zplus.append((d, el))
    for zw in Z.normal_words(0):
        if zw == ():
            continue
        el = sub_map.apply_word(zw)
        eps = Z.presentation.augment_poly(NcPoly(Z.free, {zw: field.one()}))
        el = Q.normal_form(el - Q.free.one().scale(eps))
        if not el.is_zero():
            zplus.append((0, el))
    ideal_span = SpanBasis(field, len(q_words))
    for dq in range(D + 1):
        for qw in Q.normal_words(dq):
            qpoly = NcPoly(Q.free, {qw: field.one()})
            for dz, el in zplus:
                if dq + dz > D:
                    continue
                prod = Q.normal_form(qpoly * el)
                if not prod.is_zero():
                    ideal_span.add(poly_vec(prod, q_index, field, len(q_words)))
    # kernel of pi on the cumulative basis
    rows = []
    for _ in r_words:
        rows.append([field.zero()] * len(q_words))
    for col, qw in enumerate(q_words):
        img = map_spec.apply_word(qw)
        for w, c in img.terms.items():
            rows[r_index[w]][col] = c
    kernel = linalg.nullspace(rows, field, len(q_words))
    for vec in kernel:
        if not ideal_span.contains(vec):
            terms = {
                q_words[i]: c for i, c in enumerate(vec) if not c.is_zero()
            }
            return False, str(NcPoly(Q.free, terms))
    if len(kernel) != ideal_span.dim:
        return False, f"dim ker = {len(kernel)} != dim Q Z+ = {ideal_span.dim}"
    return True, None


def _flatness(seq: DeformationSequence, D: int) -> Condition:
    Z, Q, R = seq.Z, seq.Q, seq.R
    field = Q.field
    graded = (
        Z.presentation.is_graded()
        and Q.presentation.is_graded()
        and R.presentation.is_graded()
    )
    lift = seq.pi.target_generator_lift()
    if lift is None:
        reason = seq.asserted.get("Q_flat_over_Z")
        if reason:
            return Condition("e", "asserted", reason=f"user: {reason}")
        return Condition(
            "e", "failed",
            witness="pi does not cover the R generators; no canonical basis lift",
        )

    def lift_word(rw):
        return tuple(lift[t] for t in rw)

    q_words = cumulative_words(Q, D)
    q_index = {w: i for i, w in enumerate(q_words)}
    q_degs = [Q.free.word_degree(w) for w in q_words]
    sub_elements = []
    for d in range(D + 1):
        for zw in Z.normal_words(d):
            sub_elements.append((d, seq.iota.apply_word(zw)))
    fiber = []
    top_r = R.top_degree()
    for d in range(min(D, top_r) + 1):
        for rw in R.normal_words(d):
            lifted = lift_word(rw)
            fiber.append((Q.free.word_degree(lifted), NcPoly(Q.free, {lifted: field.one()})))

    def multiply(s, f):
        prod = Q.normal_form(s * f)
        return poly_vec(prod, q_index, field, len(q_words))

    witness = free_module_witness(
        field, D, q_index, q_degs, sub_elements, fiber, multiply
    )
    if graded:
        hs_q = Q.hilbert_series(D)
        hs_z = Z.hilbert_series(D)
        hs_r = R.hilbert_series(min(D, R.cutoff))
        for d in range(D + 1):
            conv = sum(
                hs_z[a] * hs_r[d - a]
                for a in range(d + 1)
                if d - a < len(hs_r)
            )
            if conv != hs_q[d]:
                return Condition(
                    "e", "failed",
                    witness=f"Hilbert coefficient mismatch at degree {d}: "
                            f"{hs_q[d]} != {conv}",
                )
        if witness.failure or witness.independent_to < D or witness.spanning_to < D:
            return Condition(
                "e", "failed",
                witness=witness.failure or
                f"normal-word splitting spans only to degree {witness.spanning_to}",
            )
        return Condition(
            "e", "verified", degree=D,
            reason="freeness witnessed to degree "
                   f"{D}: Hilbert factorization and unique normal-word splitting",
        )
    if not witness.ok(D):
        return Condition(
            "e", "failed",
            witness=witness.failure
            or f"filtered freeness witness spans only to degree {witness.spanning_to}",
        )
    return Condition(
        "e", "verified", degree=witness.spanning_to,
        reason=f"freeness witnessed: products independent to degree "
               f"{witness.independent_to}, spanning to degree {witness.spanning_to}",
    )


def _smoothness(seq, Z: PresentedAlgebra) -> Condition:
    if not is_commutative_presented(Z):
        return Condition("f", "failed", witness="Z is not commutative")
    tag = classify_structure(Z)
    if tag is not None and tag[0] in ("free-commutative-polynomial", "localized-polynomial"):
        return Condition(
            "f", "asserted",
            reason=f"smoothness whitelist: {tag[0]} ({tag[1]})",
        )
    reason = seq.asserted.get("Z_smooth")
    if reason:
        return Condition("f", "asserted", reason=f"user: {reason}")
    return Condition("f", "failed", witness="no smoothness certificate for Z")


def _gldim(seq_asserted, Q: PresentedAlgebra, label="h") -> Condition:
    tag = classify_structure(Q)
    if tag is not None:
        if tag[0] == "semisimple-finite":
            return Condition(label, "verified", reason=f"pattern: {tag[0]} (gldim 0)")
        return Condition(label, "verified", reason=f"pattern: {tag[0]}")
    reason = seq_asserted.get("Q_finite_gldim")
    if reason:
        return Condition(label, "asserted", reason=f"user: {reason}")
    return Condition(label, "failed", witness="no finite-global-dimension certificate")


def _map_condition(*maps) -> Condition:
    for m in maps:
        try:
            m.validate()
        except SequenceError as exc:
            return Condition("maps", "failed", witness=str(exc))
    return Condition("maps", "verified")


def check_deformation_sequence(seq: DeformationSequence, D: int) -> CheckReport:
    """Verify the deformation-sequence conditions to internal degree D.

    A map that fails to be well-defined on the quotient is reported as a
    failed condition; the remaining checks still run on representatives.
    """
    if not seq.R.is_finite_dimensional():
        raise SequenceError("R must be finite-dimensional")
    conditions = [_map_condition(seq.iota, seq.pi)]

    ok, wit = _injectivity(seq.iota, D)
    conditions.append(
        Condition("a", "verified" if ok else "failed", degree=D if ok else None,
                  witness=None if ok else f"kernel element detected at {wit}")
    )

    ok, wit = _surjectivity(seq.pi)
    conditions.append(
        Condition("b", "verified" if ok else "failed", degree=D if ok else None,
                  witness=None if ok else f"generator {wit} not in the image")
    )

    ok, wit = _kernel_equals_ideal(seq.pi, seq.iota, D)
    conditions.append(
        Condition("c", "verified" if ok else "failed", degree=D if ok else None,
                  witness=wit)
    )

    conditions.append(_flatness(seq, D))

    fcond = _smoothness(seq, seq.Z)
    if fcond.status != "failed":
        # centrality of the Z generators inside Q
        for i, g in enumerate(seq.Z.free.generators):
            el = seq.iota.images[i]
            wit = seq.Q.centrality_witness(seq.Q.normal_form(el))
            if wit is not None:
                fcond = Condition(
                    "f", "failed",
                    witness=f"iota({g.name}) fails to commute with {wit}",
                )
                break
    conditions.append(fcond)

    ok = seq.iota.preserves_augmentation() and seq.pi.preserves_augmentation()
    conditions.append(
        Condition("g", "verified" if ok else "failed",
                  witness=None if ok else "augmentations do not commute")
    )

    conditions.append(_gldim(seq.asserted, seq.Q))
    return CheckReport(conditions)


# -- equivariant variants --------------------------------------------------------


def check_K_equivariant(seq: DeformationSequence, K: HopfAlgebraData,
                        actions, D: int) -> CheckReport:
    """actions: dict with ActionSpec values for 'Z', 'Q', 'R'."""
    from .hopf import is_module_algebra

    base = check_deformation_sequence(seq, D)
    conditions = list(base.conditions)
    for name in ("Z", "Q", "R"):
        alg = getattr(seq, name)
        ok = is_module_algebra(K, alg, actions[name])
        conditions.append(
            Condition(f"module-algebra {name}", "verified" if ok else "failed",
                      degree=D if ok else None,
                      witness=None if ok else f"{name} is not a K-module algebra")
        )
    az, aq, ar = actions["Z"], actions["Q"], actions["R"]
    wit = None
    for b in range(K.dim):
        for i, g in enumerate(seq.Z.free.generators):
            lhs = seq.iota.apply(az.act_basis_poly(b, seq.Z.free.gen(i)))
            rhs = aq.act_basis_poly(b, seq.iota.images[i])
            if lhs != rhs:
                wit = f"iota not K-linear at ({K.basis[b]}, {g.name})"
                break
        if wit:
            break
    if wit is None:
        for b in range(K.dim):
            for i, g in enumerate(seq.Q.free.generators):
                lhs = seq.pi.apply(aq.act_basis_poly(b, seq.Q.free.gen(i)))
                rhs = ar.act_basis_poly(b, seq.pi.images[i])
                if lhs != rhs:
                    wit = f"pi not K-linear at ({K.basis[b]}, {g.name})"
                    break
            if wit:
                break
    conditions.append(
        Condition("equivariance", "verified" if wit is None else "failed",
                  degree=D if wit is None else None, witness=wit)
    )
    return CheckReport(conditions)


def _coinvariants(c: HopfDefSequence, D: int):
    """(ok, witness): H^{co p} = j(W) degree-wise to D."""
    H, K = c.H, c.K
    field = H.field
    h_words = cumulative_words(H.algebra, D)
    h_index = {w: i for i, w in enumerate(h_words)}
    k_words = cumulative_words(K.algebra, K.algebra.top_degree())
    k_index = {w: i for i, w in enumerate(k_words)}
    nH, nK = len(h_words), len(k_words)
    unit_col = k_index[()]
    # rows: coefficient of (h_word, k_word) in (id (x) p) Delta(h) - h (x) 1
    rows = [[field.zero()] * nH for _ in range(nH * nK)]
    for col, hw in enumerate(h_words):
        for (lw, rw), cc in H.delta_word(hw).items():
            img = c.pmap.apply(NcPoly(H.free, {rw: field.one()}))
            for kw, ck in img.terms.items():
                if H.algebra.free.word_degree(lw) > D:
                    continue
                rows[h_index[lw] * nK + k_index[kw]][col] = (
                    rows[h_index[lw] * nK + k_index[kw]][col] + cc * ck
                )
        rows[h_index[hw] * nK + unit_col][col] = (
            rows[h_index[hw] * nK + unit_col][col] - field.one()
        )
    coinv = linalg.nullspace(rows, field, nH)
    w_span = SpanBasis(field, nH)
    for d in range(D + 1):
        for ww in c.W.algebra.normal_words(d):
            img = c.jmap.apply_word(ww)
            w_span.add(poly_vec(img, h_index, field, nH))
    for vec in coinv:
        if not w_span.contains(vec):
            terms = {h_words[i]: cc for i, cc in enumerate(vec) if not cc.is_zero()}
            return False, f"coinvariant outside j(W): {NcPoly(H.free, terms)}"
    if len(coinv) != w_span.dim:
        return False, (
            f"dim H^co p = {len(coinv)} != dim j(W) = {w_span.dim} up to degree {D}"
        )
    return True, None


def _module_finite(c: HopfDefSequence, D: int) -> Condition:
    """H finitely generated as a left W-module, witnessed by lifted K-basis
    generators spanning H up to a certified degree."""
    H, W, K = c.H, c.W, c.K
    field = H.field
    lift = c.pmap.target_generator_lift()
    if lift is None:
        return Condition("e'", "failed",
                         witness="p does not cover the K generators; no canonical lift")
    h_words = cumulative_words(H.algebra, D)
    h_index = {w: i for i, w in enumerate(h_words)}
    h_degs = [H.algebra.free.word_degree(w) for w in h_words]
    size = len(h_words)
    span = SpanBasis(field, size)
    top_k = K.algebra.top_degree()
    fiber = []
    for d in range(top_k + 1):
        for kw in K.algebra.normal_words(d):
            lifted = tuple(lift[t] for t in kw)
            fiber.append(
                (H.algebra.free.word_degree(lifted),
                 NcPoly(H.free, {lifted: field.one()}))
            )
    subs = []
    for d in range(D + 1):
        for ww in W.algebra.normal_words(d):
            subs.append((d, c.jmap.apply_word(ww)))
    for ds, s in subs:
        for df, f in fiber:
            if ds + df > D:
                continue
            prod = H.algebra.normal_form(s * f)
            if not prod.is_zero():
                span.add(poly_vec(prod, h_index, field, size))
    spanning_to = -1
    zero, one = field.zero(), field.one()
    for d in range(D + 1):
        ok = True
        for i, w in enumerate(h_words):
            if h_degs[i] != d:
                continue
            probe = [zero] * size
            probe[i] = one
            if not span.contains(probe):
                ok = False
                break
        if ok:
            spanning_to = d
        else:
            break
    if 2 * spanning_to < D:
        return Condition(
            "e'", "failed",
            witness=f"W-module generators span only to degree {spanning_to} of {D}",
        )
    return Condition(
        "e'", "verified", degree=spanning_to,
        reason=f"H spanned over W by {len(fiber)} lifted fiber words to degree {spanning_to}",
    )


def check_hopf_def_sequence(c: HopfDefSequence, D: int,
                            asserted=None) -> CheckReport:
    """Verify the Hopf deformation-sequence conditions to degree D."""
    asserted = asserted or {}
    conditions = [_map_condition(c.jmap, c.pmap)]

    # bialgebra maps on generators
    wit = None
    for i, g in enumerate(c.W.free.generators):
        tag = c.W.tags[i]
        img = c.jmap.images[i]
        good = c.H.is_grouplike_poly(img) if tag == GROUPLIKE else c.H.is_primitive_poly(img)
        if not good:
            wit = f"j({g.name}) is not {tag} in H"
            break
    if wit is None:
        for i, g in enumerate(c.H.free.generators):
            tag = c.H.tags[i]
            img = c.pmap.images[i]
            good = c.K.is_grouplike_poly(img) if tag == GROUPLIKE else c.K.is_primitive_poly(img)
            if not good:
                wit = f"p({g.name}) is not {tag} in K"
                break
    conditions.append(
        Condition("bialgebra-maps", "verified" if wit is None else "failed",
                  witness=wit)
    )

    ok, wit = _injectivity(c.jmap, D)
    conditions.append(Condition("a", "verified" if ok else "failed",
                                degree=D if ok else None,
                                witness=None if ok else f"kernel element at {wit}"))
    ok, wit = _surjectivity(c.pmap)
    conditions.append(Condition("b", "verified" if ok else "failed",
                                degree=D if ok else None,
                                witness=None if ok else f"generator {wit} not covered"))
    ok, wit = _kernel_equals_ideal(c.pmap, c.jmap, D)
    conditions.append(Condition("c", "verified" if ok else "failed",
                                degree=D if ok else None, witness=wit))
    ok, wit = _coinvariants(c, D)
    conditions.append(Condition("d", "verified" if ok else "failed",
                                degree=D if ok else None, witness=wit))
    conditions.append(_module_finite(c, D))
    fcond = _smoothness(
        DeformationSequence(c.W.algebra, c.H.algebra, c.K.algebra, c.jmap, c.pmap,
                            asserted=asserted),
        c.W.algebra,
    )
    if fcond.status != "failed":
        for i, g in enumerate(c.W.free.generators):
            el = c.jmap.images[i]
            witn = c.H.algebra.centrality_witness(c.H.algebra.normal_form(el))
            if witn is not None:
                fcond = Condition("f", "failed",
                                  witness=f"j({g.name}) fails to commute with {witn}")
                break
    conditions.append(fcond)
    conditions.append(_gldim(asserted, c.H.algebra))
    return CheckReport(conditions)


def check_C_equivariant(m: DeformationSequence, c: HopfDefSequence,
                        actions, D: int) -> CheckReport:
    """actions: dict 'Z'/'Q'/'R' -> PresentedHopfAction of c.H."""
    conditions = []
    for name in ("Z", "Q", "R"):
        act = actions[name]
        ok = act.is_module_algebra()
        conditions.append(
            Condition(f"module-algebra {name}", "verified" if ok else "failed",
                      degree=D if ok else None,
                      witness=None if ok else f"H-action on {name} ill-defined")
        )
    az, aq, ar = actions["Z"], actions["Q"], actions["R"]
    wit = None
    for h in range(len(c.H.free.generators)):
        hname = c.H.free.generators[h].name
        for i, g in enumerate(m.Z.free.generators):
            lhs = m.iota.apply(az.act_letter(h, m.Z.free.gen(i)))
            rhs = aq.act_letter(h, m.iota.images[i])
            if lhs != m.Q.normal_form(rhs):
                wit = f"iota not H-linear at ({hname}, {g.name})"
                break
        if wit:
            break
        for i, g in enumerate(m.Q.free.generators):
            lhs = m.pi.apply(aq.act_letter(h, m.Q.free.gen(i)))
            rhs = ar.act_letter(h, m.pi.images[i])
            if lhs != m.R.normal_form(rhs):
                wit = f"pi not H-linear at ({hname}, {g.name})"
                break
        if wit:
            break
    conditions.append(
        Condition("j", "verified" if wit is None else "failed",
                  degree=D if wit is None else None, witness=wit)
    )

    wit = None
    for i, wg in enumerate(c.W.free.generators):
        img = c.jmap.images[i]
        eps = c.W.algebra.presentation.augmentation[i]
        for t, qg in enumerate(m.Q.free.generators):
            result = aq.act_poly(img, m.Q.free.gen(t))
            expected = m.Q.normal_form(m.Q.free.gen(t).scale(eps))
            if result != expected:
                wit = f"W generator {wg.name} acts nontrivially on {qg.name}"
                break
        if wit:
            break
    conditions.append(
        Condition("k", "verified" if wit is None else "failed",
                  degree=D if wit is None else None, witness=wit)
    )

    wit = None
    for h in range(len(c.H.free.generators)):
        hname = c.H.free.generators[h].name
        eps = c.H.algebra.presentation.augmentation[h]
        for i, zg in enumerate(m.Z.free.generators):
            result = az.act_letter(h, m.Z.free.gen(i))
            expected = m.Z.normal_form(m.Z.free.gen(i).scale(eps))
            if result != expected:
                wit = f"H generator {hname} acts nontrivially on Z generator {zg.name}"
                break
        if wit:
            break
    conditions.append(
        Condition("l", "verified" if wit is None else "failed",
                  degree=D if wit is None else None, witness=wit)
    )
    return CheckReport(conditions)


# -- smash of sequences ------------------------------------------------------------


def _disjoint_union_algebra(first: PresentedAlgebra, second: PresentedAlgebra,
                            priority_first=False, extra_relations=None,
                            cutoff=None):
    """Presented algebra on the disjoint union of generators; relations of
    both sides are lifted, extra relations added by the caller via the
    returned lift maps before the Groebner pass."""
    gens = list(first.free.generators) + list(second.free.generators)
    names = {g.name for g in first.free.generators}
    for g in second.free.generators:
        if g.name in names:
            raise SequenceError(f"generator name clash: {g.name}")
    if priority_first:
        priority = list(first.free.priority) + list(second.free.priority)
    else:
        priority = list(second.free.priority) + list(first.free.priority)
    free = FreeAlgebra(first.field, gens, priority=priority)
    off = len(first.free.generators)

    def lift1(poly):
        return NcPoly(free, {w: c for w, c in poly.terms.items()})

    def lift2(poly):
        return NcPoly(free, {tuple(i + off for i in w): c for w, c in poly.terms.items()})

    relations = [lift1(r) for r in first.presentation.relations]
    relations += [lift2(r) for r in second.presentation.relations]
    if extra_relations:
        relations += extra_relations(free, lift1, lift2)
    augmentation = {}
    for i in range(len(first.free.generators)):
        augmentation[i] = first.presentation.augmentation[i]
    for i in range(len(second.free.generators)):
        augmentation[off + i] = second.presentation.augmentation[i]
    pres = Presentation(free, relations, augmentation)
    return groebner_truncated(pres, cutoff), lift1, lift2, off


def smash_sequences(m: DeformationSequence, c: HopfDefSequence, actions,
                    D: int):
    """The smash of a C-equivariant sequence with its Hopf sequence:
    Z (x) W -> Q x| H -> R x| K, re-verified to degree D.

    Returns (DeformationSequence, equivariance_report, verification_report).
    """
    eq_report = check_C_equivariant(m, c, actions, D)
    if not eq_report.passed:
        return None, eq_report, None
    field = m.Q.field
    aq = actions["Q"]

    # Z (x) W: commuting tensor factors
    def zw_extra(free, lift1, lift2):
        rels = []
        n1 = len(m.Z.free.generators)
        n2 = len(c.W.free.generators)
        for i in range(n1):
            for j in range(n2):
                zi = NcPoly(free, {(i,): field.one()})
                wj = NcPoly(free, {(n1 + j,): field.one()})
                rels.append(zi * wj - wj * zi)
        return rels

    ZW, _, _, z_off = _disjoint_union_algebra(
        m.Z, c.W.algebra, priority_first=True, extra_relations=zw_extra, cutoff=D
    )

    # Q x| H with commutation rules from the H-action on Q
    def qh_extra(free, lift_q, lift_h):
        rels = []
        nq = len(m.Q.free.generators)
        for h in range(len(c.H.free.generators)):
            tag = c.H.tags[h]
            for t in range(nq):
                hvar = NcPoly(free, {(nq + h,): field.one()})
                xvar = NcPoly(free, {(t,): field.one()})
                image = aq.act_letter(h, m.Q.free.gen(t))
                if tag == GROUPLIKE:
                    rels.append(hvar * xvar - lift_q(image) * hvar)
                else:
                    rels.append(hvar * xvar - xvar * hvar - lift_q(image))
        return rels

    QH, lift_q, lift_h, q_off = _disjoint_union_algebra(
        m.Q, c.H.algebra, priority_first=False, extra_relations=qh_extra, cutoff=D
    )

    # R x| K with the induced K-action
    k_to_h = c.pmap.target_generator_lift()
    r_to_q = m.pi.target_generator_lift()
    if k_to_h is None or r_to_q is None:
        raise SequenceError(
            "smash construction needs every R and K generator to be the exact "
            "image of a generator"
        )

    def rk_extra(free, lift_r, lift_k):
        rels = []
        nr = len(m.R.free.generators)
        for k in range(len(c.K.free.generators)):
            h = k_to_h[k]
            tag = c.K.tags[k]
            if tag != c.H.tags[h]:
                raise SequenceError("coalgebra tags differ along p")
            for t in range(nr):
                kvar = NcPoly(free, {(nr + k,): field.one()})
                xvar = NcPoly(free, {(t,): field.one()})
                acted_q = aq.act_letter(h, m.Q.free.gen(r_to_q[t]))
                image = m.pi.apply(acted_q)
                if tag == GROUPLIKE:
                    rels.append(kvar * xvar - lift_r(image) * kvar)
                else:
                    rels.append(kvar * xvar - xvar * kvar - lift_r(image))
        return rels

    RK, lift_r, lift_k, r_off = _disjoint_union_algebra(
        m.R, c.K.algebra, priority_first=False, extra_relations=rk_extra, cutoff=D
    )

    # maps
    def into_qh_from_q(poly):
        return NcPoly(QH.free, {w: cc for w, cc in poly.terms.items()})

    def into_qh_from_h(poly):
        return NcPoly(
            QH.free, {tuple(q_off + i for i in w): cc for w, cc in poly.terms.items()}
        )

    def into_rk_from_r(poly):
        return NcPoly(RK.free, {w: cc for w, cc in poly.terms.items()})

    def into_rk_from_k(poly):
        return NcPoly(
            RK.free, {tuple(r_off + i for i in w): cc for w, cc in poly.terms.items()}
        )

    iota_images = [into_qh_from_q(m.iota.images[i]) for i in range(len(m.Z.free.generators))]
    iota_images += [into_qh_from_h(c.jmap.images[j]) for j in range(len(c.W.free.generators))]
    big_iota = AlgebraMapSpec(ZW, QH, iota_images, name="iota x j")

    pi_images = [into_rk_from_r(m.pi.images[i]) for i in range(len(m.Q.free.generators))]
    pi_images += [into_rk_from_k(c.pmap.images[j]) for j in range(len(c.H.free.generators))]
    big_pi = AlgebraMapSpec(QH, RK, pi_images, name="pi x p")

    asserted = dict(m.asserted)
    out = DeformationSequence(
        ZW, QH, RK, big_iota, big_pi, asserted=asserted,
        name=f"{m.name} x {c.name}",
    )
    verification = check_deformation_sequence(out, D)
    return out, eq_report, verification
