"""Finite-dimensional Hopf algebras by structure constants, braided vector
spaces, YD-pairs/triples, module-algebra actions, smash products, and the
builders for the standard example families (quantum lines, quantum linear
spaces, Jordan planes).

Elements of a structure-constant algebra are sparse dicts {basis index ->
Scalar}.  All validation is exact linear algebra on the basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from . import linalg
from .scalars import FieldSpec, Scalar, compute_big_n, order_of_unity
from .ncalg import (
    FreeAlgebra,
    Generator,
    NcPoly,
    PresentedAlgebra,
    Presentation,
    PresentationError,
    groebner_truncated,
    parse_generator_decls,
)


class HopfError(ValueError):
    pass


def _vec_add(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        if c.is_zero():
            continue
        c = c if sign > 0 else -c
        acc = out.get(k)
        if acc is None:
            out[k] = c
        else:
            acc = acc + c
            if acc.is_zero():
                del out[k]
            else:
                out[k] = acc
    return out


def _vec_scale(a, c):
    if c.is_zero():
        return {}
    return {k: c * x for k, x in a.items()}


class HopfAlgebraData:
    """A finite-dimensional Hopf algebra given by structure constants."""

    def __init__(
        self,
        field: FieldSpec,
        basis,
        mult,
        comult,
        counit,
        antipode,
        unit,
        semisimple=None,
        algebra_generators=None,
        gen_names=None,
        metadata=None,
    ):
        self.field = field
        self.basis = list(basis)
        self.dim = len(self.basis)
        self.mult = mult            # mult[i][j]: dict {k: Scalar}
        self.comult = comult        # comult[i]: list[(j, k, Scalar)]
        self.counit = counit        # list[Scalar]
        self.antipode = antipode    # antipode[i]: dict {j: Scalar}
        self.unit = unit
        self.semisimple_asserted = semisimple
        self.algebra_generators = algebra_generators or []
        self.gen_names = gen_names or []
        self.metadata = metadata or {}

    # -- element operations ---------------------------------------------

    def basis_vec(self, i):
        return {i: self.field.one()}

    def unit_vec(self):
        return self.basis_vec(self.unit)

    def multiply(self, u, v):
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                c = ci * cj
                for k, ck in self.mult[i][j].items():
                    val = c * ck
                    acc = out.get(k)
                    if acc is None:
                        out[k] = val
                    else:
                        acc = acc + val
                        if acc.is_zero():
                            del out[k]
                        else:
                            out[k] = acc
        return out

    def delta(self, u):
        out = {}
        for i, ci in u.items():
            for j, k, c in self.comult[i]:
                val = ci * c
                acc = out.get((j, k))
                if acc is None:
                    out[(j, k)] = val
                else:
                    acc = acc + val
                    if acc.is_zero():
                        del out[(j, k)]
                    else:
                        out[(j, k)] = acc
        return out

    def delta_iter(self, i, m):
        """Delta^{m-1}(e_i) as [(coef, (i_1, ..., i_m))]."""
        if m <= 0:
            raise HopfError("delta_iter needs m >= 1")
        terms = [(self.field.one(), (i,))]
        while len(terms[0][1]) < m:
            new = {}
            for c, idx in terms:
                first = idx[0]
                for j, k, cc in self.comult[first]:
                    key = (j, k) + idx[1:]
                    val = c * cc
                    acc = new.get(key)
                    if acc is None:
                        new[key] = val
                    else:
                        acc = acc + val
                        if acc.is_zero():
                            del new[key]
                        else:
                            new[key] = acc
            terms = [(c, idx) for idx, c in sorted(new.items())]
        return terms

    def counit_of(self, u):
        total = self.field.zero()
        for i, c in u.items():
            total = total + c * self.counit[i]
        return total

    def antipode_of(self, u):
        out = {}
        for i, c in u.items():
            for j, cj in self.antipode[i].items():
                val = c * cj
                acc = out.get(j)
                if acc is None:
                    out[j] = val
                else:
                    acc = acc + val
                    if acc.is_zero():
                        del out[j]
                    else:
                        out[j] = acc
        return out

    # -- derived structure ----------------------------------------------

    def is_grouplike(self, i) -> bool:
        if not self.counit[i].is_one():
            return False
        dd = self.delta(self.basis_vec(i))
        return dd == {(i, i): self.field.one()}

    def grouplike_indices(self):
        return [i for i in range(self.dim) if self.is_grouplike(i)]

    def is_cocommutative(self) -> bool:
        for i in range(self.dim):
            dd = self.delta(self.basis_vec(i))
            flipped = {(k, j): c for (j, k), c in dd.items()}
            if dd != flipped:
                return False
        return True

    def is_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(i):
                if self.mult[i][j] != self.mult[j][i]:
                    return False
        return True

    def left_integral(self):
        """Normalized left integral (eps = 1), or None if none exists."""
        rows = []
        for h in range(self.dim):
            for coord in range(self.dim):
                row = []
                for x in range(self.dim):
                    val = self.mult[h][x].get(coord, self.field.zero())
                    if coord == x:
                        val = val - self.counit[h]
                    row.append(val)
                rows.append(row)
        ker = linalg.nullspace(rows, self.field, self.dim)
        for vec in ker:
            lam = {i: c for i, c in enumerate(vec) if not c.is_zero()}
            eps = self.counit_of(lam)
            if not eps.is_zero():
                return _vec_scale(lam, eps.inverse())
        return None

    def is_semisimple(self) -> bool:
        """Maschke criterion: a left integral with nonzero counit exists."""
        if self.semisimple_asserted is not None:
            return self.semisimple_asserted
        return self.left_integral() is not None


@dataclass
class AxiomReport:
    entries: list  # (axiom, ok, witness-or-None)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def failures(self):
        return [(name, wit) for name, ok, wit in self.entries if not ok]


def check_hopf_axioms(H: HopfAlgebraData) -> AxiomReport:
    """Verify the Hopf axioms exactly on the basis; witnesses on failure."""
    n = H.dim
    if len(H.mult) != n or any(len(row) != n for row in H.mult):
        raise HopfError("multiplication table dimension mismatch")
    if len(H.comult) != n or len(H.counit) != n or len(H.antipode) != n:
        raise HopfError("coalgebra data dimension mismatch")
    entries = []
    one = H.field.one()

    wit = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = H.multiply(H.multiply(H.basis_vec(i), H.basis_vec(j)), H.basis_vec(k))
                rhs = H.multiply(H.basis_vec(i), H.multiply(H.basis_vec(j), H.basis_vec(k)))
                if lhs != rhs:
                    wit = (H.basis[i], H.basis[j], H.basis[k])
                    break
            if wit:
                break
        if wit:
            break
    entries.append(("associativity", wit is None, wit))

    wit = None
    for i in range(n):
        if (
            H.multiply(H.unit_vec(), H.basis_vec(i)) != H.basis_vec(i)
            or H.multiply(H.basis_vec(i), H.unit_vec()) != H.basis_vec(i)
        ):
            wit = (H.basis[i],)
            break
    entries.append(("unit", wit is None, wit))

    wit = None
    for i in range(n):
        left, right = {}, {}
        for (j, k), c in H.delta(H.basis_vec(i)).items():
            for a, b, cc in H.comult[j]:
                left = _vec_add(left, {(a, b, k): c * cc})
            for a, b, cc in H.comult[k]:
                right = _vec_add(right, {(j, a, b): c * cc})
        if left != right:
            wit = (H.basis[i],)
            break
    entries.append(("coassociativity", wit is None, wit))

    wit = None
    for i in range(n):
        lhs, rhs = {}, {}
        for (j, k), c in H.delta(H.basis_vec(i)).items():
            lhs = _vec_add(lhs, {k: c * H.counit[j]})
            rhs = _vec_add(rhs, {j: c * H.counit[k]})
        if lhs != H.basis_vec(i) or rhs != H.basis_vec(i):
            wit = (H.basis[i],)
            break
    entries.append(("counit", wit is None, wit))

    wit = None
    for i in range(n):
        for j in range(n):
            prod = H.multiply(H.basis_vec(i), H.basis_vec(j))
            lhs = H.delta(prod)
            rhs = {}
            di = H.delta(H.basis_vec(i))
            dj = H.delta(H.basis_vec(j))
            for (a, b), c in di.items():
                for (x, y), cc in dj.items():
                    left = H.multiply(H.basis_vec(a), H.basis_vec(x))
                    right = H.multiply(H.basis_vec(b), H.basis_vec(y))
                    for la, ca in left.items():
                        for rb, cb in right.items():
                            rhs = _vec_add(rhs, {(la, rb): c * cc * ca * cb})
            if lhs != rhs:
                wit = (H.basis[i], H.basis[j])
                break
        if wit:
            break
    entries.append(("comultiplication multiplicative", wit is None, wit))

    wit = None
    for i in range(n):
        target = _vec_scale(H.unit_vec(), H.counit[i])
        lhs, rhs = {}, {}
        for (j, k), c in H.delta(H.basis_vec(i)).items():
            lhs = _vec_add(lhs, _vec_scale(H.multiply(H.antipode_of(H.basis_vec(j)), H.basis_vec(k)), c))
            rhs = _vec_add(rhs, _vec_scale(H.multiply(H.basis_vec(j), H.antipode_of(H.basis_vec(k))), c))
        if lhs != target or rhs != target:
            wit = (H.basis[i],)
            break
    entries.append(("antipode", wit is None, wit))

    return AxiomReport(entries)


# -- constructors ----------------------------------------------------------


def group_algebra(field, table, names=None, generators=None, gen_names=None):
    """Group algebra kG from a multiplication table table[i][j] = index."""
    n = len(table)
    if names is None:
        names = [f"b{i}" for i in range(n)]
    unit = None
    for e in range(n):
        if all(table[e][j] == j and table[j][e] == j for j in range(n)):
            unit = e
            break
    if unit is None:
        raise HopfError("multiplication table has no identity element")
    inverse = [None] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == unit:
                inverse[i] = j
        if inverse[i] is None or table[inverse[i]][i] != unit:
            raise HopfError(f"element {names[i]} has no two-sided inverse")
    one = field.one()
    mult = [[{table[i][j]: one} for j in range(n)] for i in range(n)]
    comult = [[(i, i, one)] for i in range(n)]
    counit = [one] * n
    antipode = [{inverse[i]: one} for i in range(n)]
    semisimple = field.characteristic == 0 or n % field.characteristic != 0
    if generators is None:
        generators = _group_generating_set(table, unit)
    return HopfAlgebraData(
        field,
        names,
        mult,
        comult,
        counit,
        antipode,
        unit,
        semisimple=semisimple,
        algebra_generators=generators,
        gen_names=gen_names or [names[i] for i in generators],
        metadata={"kind": "group"},
    )


def _group_generating_set(table, unit):
    n = len(table)

    def closure(gens):
        seen = {unit}
        frontier = [unit]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    for i in range(n):
        if i != unit and len(closure([i])) == n:
            return [i]
    gens = []
    covered = {unit}
    for i in range(n):
        if i not in covered:
            gens.append(i)
            covered = closure(gens)
            if len(covered) == n:
                break
    return gens


def cyclic_group_algebra(field, n, gen_name="g"):
    names = ["1"] + [gen_name if k == 1 else f"{gen_name}{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_algebra(field, table, names=names, generators=[1] if n > 1 else [],
                         gen_names=[gen_name] if n > 1 else [])


def dual_abelian_group_algebra(field, n, gen_name="chi"):
    """k^{Z_n} via the character-basis identification with the dual cyclic group.

    Needs a primitive n-th root of unity in the field.
    """
    probe = field.zeta(1) if field.kind == "cyclotomic" else None
    if field.kind == "cyclotomic":
        if field.param % n != 0:
            raise HopfError(f"{field} has no primitive {n}-th root of unity")
    else:
        if (field.param - 1) % n != 0:
            raise HopfError(f"{field} has no primitive {n}-th root of unity")
    H = cyclic_group_algebra(field, n, gen_name=gen_name)
    H.metadata = {"kind": "dual_group", "dual_of": f"Z{n}"}
    return H


def sweedler_algebra(field):
    """The 4-dimensional Sweedler Hopf algebra (char != 2)."""
    if field.characteristic == 2:
        raise HopfError("the Sweedler algebra needs char != 2")
    one = field.one()
    zero = field.zero()
    minus = field.from_int(-1)
    names = ["1", "g", "x", "gx"]
    I, G, X, GX = 0, 1, 2, 3
    mult = [[{} for _ in range(4)] for _ in range(4)]
    mult[I][I] = {I: one}; mult[I][G] = {G: one}; mult[I][X] = {X: one}; mult[I][GX] = {GX: one}
    mult[G][I] = {G: one}; mult[G][G] = {I: one}; mult[G][X] = {GX: one}; mult[G][GX] = {X: one}
    mult[X][I] = {X: one}; mult[X][G] = {GX: minus}; mult[X][X] = {}; mult[X][GX] = {}
    mult[GX][I] = {GX: one}; mult[GX][G] = {X: minus}; mult[GX][X] = {}; mult[GX][GX] = {}
    comult = [
        [(I, I, one)],
        [(G, G, one)],
        [(X, I, one), (G, X, one)],
        [(GX, G, one), (I, GX, one)],
    ]
    counit = [one, one, zero, zero]
    antipode = [{I: one}, {G: one}, {GX: minus}, {X: one}]
    return HopfAlgebraData(
        field, names, mult, comult, counit, antipode, I,
        semisimple=False,
        algebra_generators=[G, X],
        gen_names=["g", "x"],
        metadata={"kind": "sweedler"},
    )


# -- braided vector spaces -------------------------------------------------


class BraidedVectorSpace:
    """A vector space with a braiding given on the tensor-square basis."""

    def __init__(self, field, theta, images, descriptor="explicit"):
        # images[(i, j)] -> dict {(k, l): Scalar}, image of v_i (x) v_j
        self.field = field
        self.theta = theta
        self.images = images
        self.descriptor = descriptor

    @staticmethod
    def diagonal(q_matrix):
        theta = len(q_matrix)
        field = q_matrix[0][0].field
        images = {
            (i, j): {(j, i): q_matrix[i][j]} for i in range(theta) for j in range(theta)
        }
        return BraidedVectorSpace(field, theta, images, descriptor="diagonal")

    @staticmethod
    def jordan_block(field):
        one = field.one()
        images = {
            (0, 0): {(0, 0): one},
            (1, 0): {(0, 1): one},
            (0, 1): {(1, 0): one, (0, 0): one},
            (1, 1): {(1, 0): one, (0, 0): one},
        }
        # c(x@x) = x@x, c(y@x) = x@y, c(x@y) = (y+x)@x, c(y@y) = (y+x)@y
        images = {
            (0, 0): {(0, 0): one},
            (1, 0): {(0, 1): one},
            (0, 1): {(1, 0): one, (0, 0): one},
            (1, 1): {(1, 1): one, (0, 1): one},
        }
        return BraidedVectorSpace(field, 2, images, descriptor="jordan_block")

    def matrix(self):
        pairs = [(i, j) for i in range(self.theta) for j in range(self.theta)]
        idx = {p: t for t, p in enumerate(pairs)}
        zero = self.field.zero()
        rows = [[zero] * len(pairs) for _ in pairs]
        for p, img in self.images.items():
            for q, c in img.items():
                rows[idx[q]][idx[p]] = c
        return rows

    def is_invertible(self) -> bool:
        m = self.matrix()
        return linalg.rank(m, self.field) == len(m)


def braid_equation_check(V: BraidedVectorSpace):
    """Exact check of (c x id)(id x c)(c x id) = (id x c)(c x id)(id x c).

    Returns (ok, witness_triple_or_None).  Requires invertibility.
    """
    if not V.is_invertible():
        raise HopfError("braiding matrix is singular")

    def c12(t):
        out = {}
        for (a, b, c), coef in t.items():
            for (x, y), cc in V.images[(a, b)].items():
                out = _vec_add(out, {(x, y, c): coef * cc})
        return out

    def c23(t):
        out = {}
        for (a, b, c), coef in t.items():
            for (x, y), cc in V.images[(b, c)].items():
                out = _vec_add(out, {(a, x, y): coef * cc})
        return out

    one = V.field.one()
    for i in range(V.theta):
        for j in range(V.theta):
            for k in range(V.theta):
                t = {(i, j, k): one}
                lhs = c12(c23(c12(t)))
                rhs = c23(c12(c23(t)))
                if lhs != rhs:
                    return False, (i, j, k)
    return True, None


# -- YD pairs and triples ----------------------------------------------------


@dataclass
class YDCheckResult:
    ok: bool
    braiding_scalar: Scalar = None
    witness: str = None


def _check_algebra_map(K: HopfAlgebraData, chi):
    if not chi[K.unit].is_one():
        return f"chi(1) = {chi[K.unit]} != 1"
    for i in range(K.dim):
        for j in range(K.dim):
            lhs = K.field.zero()
            for k, c in K.mult[i][j].items():
                lhs = lhs + c * chi[k]
            if lhs != chi[i] * chi[j]:
                return f"chi not multiplicative at ({K.basis[i]}, {K.basis[j]})"
    return None


def validate_yd_pair(K: HopfAlgebraData, g: int, chi) -> YDCheckResult:
    """Check chi(h) g = chi(h_2) h_1 g S(h_3) on every basis element.

    chi is the value vector of an algebra map K -> field.  The realized
    braiding scalar is chi(g).
    """
    if not K.is_grouplike(g):
        raise HopfError(f"{K.basis[g]} is not group-like")
    err = _check_algebra_map(K, chi)
    if err:
        raise HopfError(err)
    gv = K.basis_vec(g)
    for h in range(K.dim):
        lhs = _vec_scale(gv, chi[h])
        rhs = {}
        for coef, (a, b, c) in K.delta_iter(h, 3):
            term = K.multiply(K.basis_vec(a), gv)
            term = K.multiply(term, K.antipode_of(K.basis_vec(c)))
            rhs = _vec_add(rhs, _vec_scale(term, coef * chi[b]))
        if lhs != rhs:
            return YDCheckResult(False, chi[g], witness=str(K.basis[h]))
    return YDCheckResult(True, chi[g])


def validate_yd_triple(K: HopfAlgebraData, g: int, chi, eta) -> YDCheckResult:
    """YD-pair plus a (chi,chi)-derivation eta with eta-compatibility and
    chi(g) = eta(g) = 1."""
    pair = validate_yd_pair(K, g, chi)
    if not pair.ok:
        return YDCheckResult(False, witness=f"YD-pair fails at {pair.witness}")
    if not eta[K.unit].is_zero():
        return YDCheckResult(False, witness="eta(1) != 0")
    for i in range(K.dim):
        for j in range(K.dim):
            lhs = K.field.zero()
            for k, c in K.mult[i][j].items():
                lhs = lhs + c * eta[k]
            if lhs != chi[i] * eta[j] + eta[i] * chi[j]:
                return YDCheckResult(
                    False, witness=f"derivation law fails at ({K.basis[i]}, {K.basis[j]})"
                )
    gv = K.basis_vec(g)
    for h in range(K.dim):
        lhs = _vec_scale(gv, eta[h])
        rhs = {}
        for coef, (a, b, c) in K.delta_iter(h, 3):
            term = K.multiply(K.basis_vec(a), gv)
            term = K.multiply(term, K.antipode_of(K.basis_vec(c)))
            rhs = _vec_add(rhs, _vec_scale(term, coef * eta[b]))
        if lhs != rhs:
            return YDCheckResult(False, witness=f"eta-compatibility fails at {K.basis[h]}")
    if not chi[g].is_one():
        return YDCheckResult(False, witness=f"chi(g) = {chi[g]} != 1")
    if not eta[g].is_one():
        return YDCheckResult(False, witness=f"eta(g) = {eta[g]} != 1")
    return YDCheckResult(True, chi[g])


# -- module-algebra actions --------------------------------------------------


class ActionSpec:
    """Action of each K-basis element on each generator of R.

    Images must be homogeneous of the generator's degree; the action on
    words extends through the iterated coproduct.
    """

    def __init__(self, K: HopfAlgebraData, R: PresentedAlgebra, images):
        self.K = K
        self.R = R
        self.images = {}
        for (i, t), poly in images.items():
            if isinstance(t, str):
                t = R.free.index[t]
            d = poly.degree()
            if d is not None and d != R.free.generators[t].degree:
                raise HopfError(
                    f"action image of {R.free.generators[t].name} is not degree-preserving"
                )
            self.images[(i, t)] = poly
        for i in range(K.dim):
            for t in range(len(R.free.generators)):
                if (i, t) not in self.images:
                    raise HopfError(
                        f"missing action of basis element {K.basis[i]} on generator "
                        f"{R.free.generators[t].name}"
                    )

    @staticmethod
    def cyclic_diagonal(K, R, scalars):
        """kZ_n with generator basis index 1 acting diagonally: g.x_t = c_t x_t."""
        images = {}
        for i in range(K.dim):
            for t in range(len(R.free.generators)):
                images[(i, t)] = R.free.gen(t).scale(scalars[t] ** i)
        return ActionSpec(K, R, images)

    @staticmethod
    def cyclic_linear(K, R, matrix):
        """kZ_n acting by iterating one linear map on the generator span.

        matrix[t] is the image of generator t as a linear combination
        {gen_index: Scalar}.
        """
        ngen = len(R.free.generators)
        field = R.field

        def apply_power(t, k):
            vec = {t: field.one()}
            for _ in range(k):
                new = {}
                for s, c in vec.items():
                    for u, cc in matrix[s].items():
                        new = _vec_add(new, {u: c * cc})
                vec = new
            poly = R.free.zero()
            for s, c in vec.items():
                poly = poly + R.free.gen(s).scale(c)
            return poly

        images = {}
        for i in range(K.dim):
            for t in range(ngen):
                images[(i, t)] = apply_power(t, i)
        return ActionSpec(K, R, images)

    @staticmethod
    def trivial(K, R):
        images = {}
        for i in range(K.dim):
            for t in range(len(R.free.generators)):
                images[(i, t)] = R.free.gen(t).scale(K.counit[i])
        return ActionSpec(K, R, images)

    def act_basis_word(self, i, word):
        """e_i . word, fully normal-formed in R."""
        if not word:
            return self.R.free.one().scale(self.K.counit[i])
        acc = self.R.free.zero()
        for coef, idx in self.K.delta_iter(i, len(word)):
            prod = self.R.free.one()
            for b, letter in zip(idx, word):
                prod = prod * self.images[(b, letter)]
                if prod.is_zero():
                    break
            acc = acc + prod.scale(coef)
        return self.R.normal_form(acc)

    def act_basis_poly(self, i, f):
        acc = self.R.free.zero()
        for word, c in f.terms.items():
            acc = acc + self.act_basis_word(i, word).scale(c)
        return self.R.normal_form(acc)

    def act_vector_poly(self, vec, f):
        acc = self.R.free.zero()
        for i, c in vec.items():
            acc = acc + self.act_basis_poly(i, f).scale(c)
        return acc


def is_module_algebra(K, R, act: ActionSpec, D=None) -> bool:
    """True iff the generator-level action extends to a K-module algebra
    structure on R: the unit acts as identity, the action respects K's
    multiplication on generators, and every relation maps to zero."""
    D = D if D is not None else R.cutoff
    ngen = len(R.free.generators)
    for t in range(ngen):
        if act.images[(K.unit, t)] != R.normal_form(R.free.gen(t)):
            return False
    for i in range(K.dim):
        for j in range(K.dim):
            for t in range(ngen):
                rhs = act.act_basis_poly(i, act.images[(j, t)])
                lhs = R.free.zero()
                for k, c in K.mult[i][j].items():
                    lhs = lhs + act.images[(k, t)].scale(c)
                if R.normal_form(lhs) != rhs:
                    return False
    for rel in R.presentation.relations:
        d = rel.degree()
        if d is not None and d > D:
            raise HopfError("relation degree exceeds the check bound")
        for i in range(K.dim):
            if not act.act_basis_poly(i, rel).is_zero():
                return False
    return True


# -- presentations from structure constants ----------------------------------


def presentation_from_structure_constants(K: HopfAlgebraData, degree=0):
    """Discover a confluent presentation of K on its metadata generators.

    Returns (free_algebra, relations, basis_words) where basis_words[i] is
    the expression of basis element i as a combination [(word, Scalar)].
    """
    gens = K.algebra_generators
    names = K.gen_names
    if not gens and K.dim == 1:
        free = FreeAlgebra(K.field, [])
        return free, [], [[((), K.field.one())]]
    if not gens:
        raise HopfError("structure-constant algebra carries no generator metadata")
    free = FreeAlgebra(K.field, [Generator(n, degree) for n in names])
    span = linalg.SpanBasis(K.field, K.dim)
    normal_words = []
    normal_elements = []

    def as_row(vec):
        zero = K.field.zero()
        return [vec.get(i, zero) for i in range(K.dim)]

    unit_el = K.unit_vec()
    span.add(as_row(unit_el))
    normal_words.append(())
    normal_elements.append(unit_el)
    relations = []
    dependent = set()
    frontier = [((), unit_el)]
    while frontier:
        new_frontier = []
        for word, el in frontier:
            for gpos, gidx in enumerate(gens):
                w2 = word + (gpos,)
                if any(w2[s:] in dependent for s in range(len(w2))):
                    continue
                el2 = K.multiply(el, K.basis_vec(gidx))
                if span.add(as_row(el2)):
                    normal_words.append(w2)
                    normal_elements.append(el2)
                    new_frontier.append((w2, el2))
                else:
                    cols = [as_row(e) for e in normal_elements]
                    sol = linalg.solve_right(linalg.transpose(cols), as_row(el2), K.field)
                    terms = {w2: K.field.one()}
                    for t, c in enumerate(sol):
                        if not c.is_zero():
                            terms[normal_words[t]] = terms.get(normal_words[t], K.field.zero()) - c
                    rel = free.poly(terms)
                    relations.append(rel)
                    dependent.add(w2)
        frontier = new_frontier

    basis_words = []
    cols = [as_row(e) for e in normal_elements]
    mat = linalg.transpose(cols)
    for i in range(K.dim):
        sol = linalg.solve_right(mat, as_row(K.basis_vec(i)), K.field)
        basis_words.append(
            [(normal_words[t], c) for t, c in enumerate(sol) if not c.is_zero()]
        )
    return free, relations, basis_words


@dataclass
class SmashProductAlgebra:
    """R smash K presented on R's generators plus K's algebra generators."""

    result: PresentedAlgebra
    r_generator_map: dict     # R generator index -> combined index
    k_generator_map: dict     # position in K.algebra_generators -> combined index
    k_basis_words: list       # K basis index -> [(combined word, Scalar)]
    action: ActionSpec

    def embed_r(self, f: NcPoly) -> NcPoly:
        out = {}
        for w, c in f.terms.items():
            out[tuple(self.r_generator_map[i] for i in w)] = c
        return NcPoly(self.result.free, out)

    def embed_k_basis(self, i) -> NcPoly:
        out = self.result.free.zero()
        for word, c in self.k_basis_words[i]:
            out = out + NcPoly(
                self.result.free,
                {tuple(self.k_generator_map[p] for p in word): c},
            )
        return out


def smash_product(R: PresentedAlgebra, K: HopfAlgebraData, act: ActionSpec,
                  cutoff=None) -> SmashProductAlgebra:
    """The smash product R x| K with commutation rules h x = (h_1 . x) h_2."""
    if not is_module_algebra(K, R, act):
        raise HopfError("the action is not a module-algebra action")
    k_free, k_rels, basis_words = presentation_from_structure_constants(K)
    r_gens = R.free.generators
    r_names = {g.name for g in r_gens}
    for g in k_free.generators:
        if g.name in r_names:
            raise HopfError(f"generator name clash: {g.name}")
    combined_gens = list(k_free.generators) + list(r_gens)
    priority = [g.name for g in k_free.generators] + list(R.free.priority)
    free = FreeAlgebra(R.field, combined_gens, priority=priority)
    nk = len(k_free.generators)
    k_map = {p: p for p in range(nk)}
    r_map = {i: nk + i for i in range(len(r_gens))}

    def lift_k(poly):
        return NcPoly(free, {tuple(k_map[i] for i in w): c for w, c in poly.terms.items()})

    def lift_r(poly):
        return NcPoly(free, {tuple(r_map[i] for i in w): c for w, c in poly.terms.items()})

    relations = [lift_r(r) for r in R.presentation.relations]
    relations += [lift_k(r) for r in k_rels]
    # commutation: for each K algebra generator h and R generator x,
    # h x - sum (h_1 . x) h_2
    for p, gidx in enumerate(K.algebra_generators):
        for t in range(len(r_gens)):
            lead = NcPoly(free, {(k_map[p], r_map[t]): R.field.one()})
            tail = free.zero()
            for coef, (b1, b2) in [(c, jk) for jk, c in K.delta(K.basis_vec(gidx)).items()]:
                acted = act.act_basis_poly(b1, R.free.gen(t))
                for word2, c2 in basis_words[b2]:
                    lifted_word = tuple(k_map[i] for i in word2)
                    tail = tail + NcPoly(
                        free,
                        {
                            tuple(r_map[i] for i in wa) + lifted_word: ca * coef * c2
                            for wa, ca in acted.terms.items()
                        },
                    )
            relations.append(lead - tail)
    augmentation = {}
    for p, gidx in enumerate(K.algebra_generators):
        augmentation[p] = K.counit[gidx]
    for i in range(len(r_gens)):
        augmentation[nk + i] = R.presentation.augment_poly(R.free.gen(i))
    pres = Presentation(free, relations, augmentation)
    D = cutoff if cutoff is not None else R.cutoff
    result = groebner_truncated(pres, D)
    if R.is_finite_dimensional():
        expected = R.dimension() * K.dim
        got = result.dimension()
        if got != expected:
            raise HopfError(
                f"smash product dimension {got} != dim R * dim K = {expected}"
            )
    return SmashProductAlgebra(
        result=result,
        r_generator_map=r_map,
        k_generator_map=k_map,
        k_basis_words=[
            [(w, c) for (w, c) in bw] for bw in basis_words
        ],
        action=act,
    )


# -- builders ----------------------------------------------------------------


def quantum_line(n: int, q: Scalar, cutoff=None) -> PresentedAlgebra:
    """k<X>/(X^n) for q a root of unity realizing n (the Nichols algebra of
    a one-dimensional braided vector space)."""
    field = q.field
    expected = compute_big_n(q, field.characteristic)
    if field.characteristic == 0 and q.is_one():
        raise HopfError("q = 1 gives an infinite-dimensional Nichols algebra in char 0")
    if expected != n:
        raise HopfError(f"q realizes N = {expected}, not {n}")
    free = FreeAlgebra(field, [Generator("X", 1)])
    pres = Presentation(free, [free.gen(0) ** _int(n)])
    return groebner_truncated(pres, cutoff if cutoff is not None else n + 1)


def _int(n):
    return n


@dataclass
class QlsData:
    algebra: PresentedAlgebra
    q_matrix: list
    big_n: list
    big_m: list

    def divisibility_ok(self) -> bool:
        return all(n % m == 0 for m, n in zip(self.big_m, self.big_n))


def qls(q_matrix, cutoff=None) -> QlsData:
    """Quantum linear space B(V_q) for a diagonal braiding matrix with
    q_ij q_ji = 1 off the diagonal."""
    theta = len(q_matrix)
    field = q_matrix[0][0].field
    char = field.characteristic
    for i in range(theta):
        for j in range(theta):
            if order_of_unity(q_matrix[i][j]) is None:
                raise HopfError(f"q[{i}][{j}] is not a root of unity")
        if char == 0 and q_matrix[i][i].is_one():
            raise HopfError(f"q[{i}][{i}] = 1 is not allowed in characteristic 0")
    for i in range(theta):
        for j in range(theta):
            if i != j and not (q_matrix[i][j] * q_matrix[j][i]).is_one():
                raise HopfError(f"q_ij q_ji != 1 at ({i}, {j})")
    big_n = [compute_big_n(q_matrix[i][i], char) for i in range(theta)]
    big_m = []
    for i in range(theta):
        orders = [order_of_unity(q_matrix[i][j]) for j in range(theta) if j != i]
        big_m.append(math.lcm(*orders) if orders else 1)
    free = FreeAlgebra(field, [Generator(f"X{i+1}", 1) for i in range(theta)])
    rels = []
    for i in range(theta):
        for j in range(i + 1, theta):
            rels.append(free.gen(i) * free.gen(j) - (free.gen(j) * free.gen(i)).scale(q_matrix[i][j]))
    for i in range(theta):
        rels.append(free.gen(i) ** big_n[i])
    D = cutoff if cutoff is not None else max(big_n) + max(big_n) + 2
    alg = groebner_truncated(Presentation(free, rels), D)
    expected = math.prod(big_n)
    if alg.dimension() != expected:
        raise HopfError(
            f"quantum linear space dimension {alg.dimension()} != {expected}"
        )
    return QlsData(alg, q_matrix, big_n, big_m)


def jordan_plane(p: int, restricted: bool, cutoff=None) -> PresentedAlgebra:
    """The (restricted) Jordan plane over F_p, p an odd prime."""
    if p == 2:
        raise HopfError("the Jordan plane needs an odd prime")
    field = FieldSpec.prime(p)
    free = FreeAlgebra(field, [Generator("x", 1), Generator("y", 1)], priority=["y", "x"])
    half = field.from_int(2).inverse()
    rels = [free.parse("y*x - x*y") + (free.gen(0) * free.gen(0)).scale(half)]
    if restricted:
        rels.append(free.gen(0) ** p)
        rels.append(free.gen(1) ** p)
    D = cutoff if cutoff is not None else (2 * p + 2 if restricted else 3 * p + 2)
    alg = groebner_truncated(Presentation(free, rels), D)
    if restricted and alg.dimension() != p * p:
        raise HopfError(f"restricted Jordan plane dimension {alg.dimension()} != {p*p}")
    return alg


@dataclass
class CartanReport:
    rows: list  # (label, ok, detail)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.rows)


def cartan_check(q_matrix, positive_roots, check_divisibility=True) -> CartanReport:
    """Evaluate the centrality condition q_{alpha beta}^{N_beta} = 1 over all
    positive-root pairs, plus the M_i | N_i condition on the matrix data.

    positive_roots: list of integer coordinate vectors in the simple roots.
    """
    theta = len(q_matrix)
    field = q_matrix[0][0].field
    char = field.characteristic

    def q_pair(alpha, beta):
        out = field.one()
        for i in range(theta):
            for j in range(theta):
                e = alpha[i] * beta[j]
                if e:
                    out = out * q_matrix[i][j] ** e
        return out

    rows = []
    for bi, beta in enumerate(positive_roots):
        qbb = q_pair(beta, beta)
        nb = order_of_unity(qbb)
        if nb is None:
            rows.append((f"N_beta[{bi}]", False, "q_beta_beta is not a root of unity"))
            continue
        for ai, alpha in enumerate(positive_roots):
            val = q_pair(alpha, beta) ** nb
            rows.append(
                (
                    f"q(alpha[{ai}],beta[{bi}])^N_beta",
                    val.is_one(),
                    f"N_beta = {nb}, value = {val}",
                )
            )
    if check_divisibility and theta >= 1:
        big_n = [compute_big_n(q_matrix[i][i], char) for i in range(theta)]
        for i in range(theta):
            orders = [order_of_unity(q_matrix[i][j]) for j in range(theta) if j != i]
            mi = math.lcm(*orders) if orders else 1
            rows.append(
                (f"M_{i+1} | N_{i+1}", big_n[i] % mi == 0, f"M = {mi}, N = {big_n[i]}")
            )
    return CartanReport(rows)


# -- presented Hopf algebras (possibly infinite-dimensional) ------------------


GROUPLIKE = "grouplike"
PRIMITIVE = "primitive"


class HopfPresented:
    """A presented algebra whose generators carry coalgebra tags.

    Grouplike generators g have Delta g = g (x) g, eps g = 1; primitive
    generators x have Delta x = x (x) 1 + 1 (x) x, eps x = 0.  The coproduct
    extends multiplicatively to words.
    """

    def __init__(self, algebra: PresentedAlgebra, tags):
        self.algebra = algebra
        free = algebra.free
        self.tags = {}
        for key, tag in tags.items():
            idx = free.index[key] if isinstance(key, str) else key
            if tag not in (GROUPLIKE, PRIMITIVE):
                raise HopfError(f"unknown coalgebra tag {tag!r}")
            self.tags[idx] = tag
        for i, g in enumerate(free.generators):
            if i not in self.tags:
                raise HopfError(f"generator {g.name} carries no coalgebra tag")
            expected = free.field.one() if self.tags[i] == GROUPLIKE else free.field.zero()
            if algebra.presentation.augmentation[i] != expected:
                raise HopfError(
                    f"augmentation of {g.name} conflicts with its {self.tags[i]} tag"
                )

    @property
    def field(self):
        return self.algebra.field

    @property
    def free(self):
        return self.algebra.free

    def counit_word(self, word) -> Scalar:
        out = self.field.one()
        for i in word:
            out = out * self.algebra.presentation.augmentation[i]
            if out.is_zero():
                break
        return out

    def counit_poly(self, f: NcPoly) -> Scalar:
        return self.algebra.presentation.augment_poly(f)

    def delta_word(self, word):
        """Delta(word) as dict {(left_word, right_word): Scalar}, with both
        sides normal-formed."""
        one = self.field.one()
        terms = {((), ()): one}
        for letter in word:
            new = {}
            if self.tags[letter] == GROUPLIKE:
                pieces = [((letter,), (letter,), one)]
            else:
                pieces = [((letter,), (), one), ((), (letter,), one)]
            for (lw, rw), c in terms.items():
                for pl, pr, pc in pieces:
                    key = (lw + pl, rw + pr)
                    val = c * pc
                    acc = new.get(key)
                    if acc is None:
                        new[key] = val
                    else:
                        acc = acc + val
                        if acc.is_zero():
                            del new[key]
                        else:
                            new[key] = acc
            terms = new
        out = {}
        for (lw, rw), c in terms.items():
            nl = self.algebra.normal_form(NcPoly(self.free, {lw: one}))
            nr = self.algebra.normal_form(NcPoly(self.free, {rw: one}))
            for wl, cl in nl.terms.items():
                for wr, cr in nr.terms.items():
                    key = (wl, wr)
                    val = c * cl * cr
                    acc = out.get(key)
                    if acc is None:
                        out[key] = val
                    else:
                        acc = acc + val
                        if acc.is_zero():
                            del out[key]
                        else:
                            out[key] = acc
        return out

    def delta_poly(self, f: NcPoly):
        out = {}
        for w, c in f.terms.items():
            for key, cc in self.delta_word(w).items():
                val = c * cc
                acc = out.get(key)
                if acc is None:
                    out[key] = val
                else:
                    acc = acc + val
                    if acc.is_zero():
                        del out[key]
                    else:
                        out[key] = acc
        return out

    def is_grouplike_poly(self, f: NcPoly) -> bool:
        f = self.algebra.normal_form(f)
        dd = self.delta_poly(f)
        expected = {}
        for w1, c1 in f.terms.items():
            for w2, c2 in f.terms.items():
                expected = _vec_add(expected, {(w1, w2): c1 * c2})
        return dd == expected and self.counit_poly(f).is_one()

    def is_primitive_poly(self, f: NcPoly) -> bool:
        f = self.algebra.normal_form(f)
        dd = self.delta_poly(f)
        expected = {}
        for w, c in f.terms.items():
            expected = _vec_add(expected, {(w, ()): c})
            expected = _vec_add(expected, {((), w): c})
        return dd == expected and self.counit_poly(f).is_zero()

    def to_structure_constants(self) -> HopfAlgebraData:
        """Structure constants on the normal-word basis (finite case only).

        The antipode is solved from its defining law by exact linear algebra.
        """
        alg = self.algebra
        if not alg.is_finite_dimensional():
            raise HopfError("structure constants need a finite-dimensional algebra")
        words = []
        d = 0
        step = max(alg.max_generator_degree(), 1)
        empty = 0
        while True:
            ws = alg.normal_words(d)
            if ws:
                words.extend(ws)
                empty = 0
            else:
                empty += 1
                if empty >= step:
                    break
            d += 1
        index = {w: i for i, w in enumerate(words)}
        n = len(words)
        field = self.field
        one = field.one()

        def to_vec(poly):
            return {index[w]: c for w, c in poly.terms.items()}

        mult = [[None] * n for _ in range(n)]
        for i, wi in enumerate(words):
            for j, wj in enumerate(words):
                prod = alg.normal_form(NcPoly(self.free, {wi + wj: one}))
                mult[i][j] = to_vec(prod)
        comult = []
        for i, wi in enumerate(words):
            row = []
            for (lw, rw), c in sorted(self.delta_word(wi).items()):
                row.append((index[lw], index[rw], c))
            comult.append(row)
        counit = [self.counit_word(w) for w in words]
        unit = index[()]
        # solve the antipode from m(S (x) id) Delta = unit . counit
        zero = field.zero()
        ncols = n * n
        rows, rhs = [], []
        for i in range(n):
            dd = {}
            for (a, b, c) in comult[i]:
                dd[(a, b)] = dd.get((a, b), zero) + c
            for coord in range(n):
                row = [zero] * ncols
                for (a, b), c in dd.items():
                    for k in range(n):
                        entry = mult[k][b].get(coord)
                        if entry is not None:
                            row[a * n + k] = row[a * n + k] + c * entry
                rows.append(row)
                target = counit[i] if coord == unit else zero
                rhs.append(target)
        sol = linalg.solve_right(rows, rhs, field)
        if sol is None:
            raise HopfError("no antipode exists for this presented bialgebra")
        antipode = []
        for a in range(n):
            antipode.append(
                {k: sol[a * n + k] for k in range(n) if not sol[a * n + k].is_zero()}
            )
        H = HopfAlgebraData(
            field,
            [self.free.word_name(w) for w in words],
            mult,
            comult,
            counit,
            antipode,
            unit,
            metadata={"kind": "presented"},
        )
        report = check_hopf_axioms(H)
        if not report.passed:
            raise HopfError(f"presented Hopf data fails axioms: {report.failures()}")
        return H


class PresentedHopfAction:
    """Action of a presented Hopf algebra on a presented algebra, given by
    generator images; grouplike generators act as algebra endomorphisms,
    primitive ones as derivations."""

    def __init__(self, hopf: HopfPresented, target: PresentedAlgebra, images):
        self.hopf = hopf
        self.target = target
        self.images = {}
        for (h, t), poly in images.items():
            hi = hopf.free.index[h] if isinstance(h, str) else h
            ti = target.free.index[t] if isinstance(t, str) else t
            self.images[(hi, ti)] = poly
        for hi in range(len(hopf.free.generators)):
            for ti in range(len(target.free.generators)):
                if (hi, ti) not in self.images:
                    raise HopfError("incomplete presented-Hopf action table")

    def act_letter(self, h, f: NcPoly) -> NcPoly:
        tag = self.hopf.tags[h]
        free = self.target.free
        out = free.zero()
        if tag == GROUPLIKE:
            for w, c in f.terms.items():
                prod = free.one()
                for letter in w:
                    prod = prod * self.images[(h, letter)]
                    if prod.is_zero():
                        break
                out = out + prod.scale(c)
        else:
            for w, c in f.terms.items():
                for pos in range(len(w)):
                    pre = NcPoly(free, {w[:pos]: free.field.one()})
                    post = NcPoly(free, {w[pos + 1:]: free.field.one()})
                    out = out + (pre * self.images[(h, w[pos])] * post).scale(c)
        return self.target.normal_form(out)

    def act_word(self, hword, f: NcPoly) -> NcPoly:
        for h in reversed(hword):
            f = self.act_letter(h, f)
        return f

    def act_poly(self, hpoly: NcPoly, f: NcPoly) -> NcPoly:
        out = self.target.free.zero()
        for hw, c in hpoly.terms.items():
            out = out + self.act_word(hw, f).scale(c)
        return self.target.normal_form(out)

    def is_module_algebra(self) -> bool:
        """The H-relations act as the zero operator and each generator's
        action preserves the target relations."""
        free = self.target.free
        for rel in self.hopf.algebra.presentation.relations:
            eps = self.hopf.counit_poly(rel)
            for t in range(len(free.generators)):
                result = self.act_poly(rel, free.gen(t))
                expected = self.target.normal_form(free.gen(t).scale(eps))
                if result != expected:
                    return False
        for h in range(len(self.hopf.free.generators)):
            for rel in self.target.presentation.relations:
                tag = self.hopf.tags[h]
                image = self.act_letter(h, rel)
                if tag == GROUPLIKE:
                    if not image.is_zero():
                        return False
                else:
                    if not image.is_zero():
                        return False
        return True
