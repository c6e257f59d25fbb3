"""Graded free resolutions of the trivial module over finite-dimensional
augmented algebras, Ext dimensions and Yoneda products, the semisimple
invariant subalgebra, and the smash-versus-invariants dimension comparison.

Resolutions are built by exact linear algebra, internal degree by internal
degree.  Over connected algebras the construction is minimal (differential
entries in the augmentation ideal) and Ext dimensions are the ranks; over
non-connected graded algebras (smash products with a group algebra in
degree zero) Ext is the cohomology of the counit-image complex of the same
resolution, which is resolution-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .linalg import SpanBasis
from .hopf import ActionSpec, HopfAlgebraData, HopfError, smash_product
from .ncalg import CutoffError, NcPoly, PresentedAlgebra
from .scalars import Scalar


class ResolutionError(ValueError):
    pass


class FreeResolution:
    """Stages P_0 <- P_1 <- ... with free generators labeled by internal
    degree and differential matrices with normal-form entries."""

    def __init__(self, algebra: PresentedAlgebra):
        if not algebra.gb_complete:
            raise ResolutionError("resolutions need a complete Groebner basis")
        if not algebra.is_finite_dimensional():
            raise ResolutionError("resolutions need a finite-dimensional algebra")
        if not algebra.presentation.is_graded():
            raise ResolutionError("resolutions need a graded presentation")
        self.algebra = algebra
        self.field = algebra.field
        self.connected = algebra.is_connected()
        self.shifts = [[0]]
        self.diffs = [None]  # diffs[n]: ranks[n-1] x ranks[n] NcPoly matrix
        self.v_actions = None  # equivariant mode only
        self.exactness_certified = []
        self._slice_cache = {}
        self._matrix_cache = {}
        self._solve_cache = {}
        self.top_degree = algebra.top_degree()

    @property
    def ranks(self):
        return [len(s) for s in self.shifts]

    @property
    def stages(self):
        return len(self.shifts) - 1

    def slice_basis(self, n, d):
        key = (n, d)
        if key not in self._slice_cache:
            out = []
            for j, s in enumerate(self.shifts[n]):
                if d - s >= 0:
                    for w in self.algebra.normal_words(d - s):
                        out.append((w, j))
            out.sort(key=lambda t: (t[1], self.algebra.free.order_key(t[0])))
            self._slice_cache[key] = out
        return self._slice_cache[key]

    def element_to_vec(self, n, d, element):
        basis = self.slice_basis(n, d)
        index = {b: i for i, b in enumerate(basis)}
        vec = [self.field.zero()] * len(basis)
        for j, poly in enumerate(element):
            for w, c in poly.terms.items():
                vec[index[(w, j)]] = vec[index[(w, j)]] + c
        return vec

    def vec_to_element(self, n, d, vec):
        basis = self.slice_basis(n, d)
        polys = [dict() for _ in self.shifts[n]]
        for (w, j), c in zip(basis, vec):
            if not c.is_zero():
                polys[j][w] = c
        return [NcPoly(self.algebra.free, t) for t in polys]

    def apply_diff(self, n, element):
        """d_n applied to an element of P_n (list of NcPoly per generator)."""
        mat = self.diffs[n]
        out = [self.algebra.free.zero() for _ in self.shifts[n - 1]]
        for j, poly in enumerate(element):
            if poly.is_zero():
                continue
            for i in range(len(out)):
                entry = mat[i][j]
                if not entry.is_zero():
                    out[i] = out[i] + poly * entry
        return [self.algebra.normal_form(p) for p in out]

    def matrix_slice(self, n, d):
        """Field matrix of d_n on internal degree d (stage 0 is the counit)."""
        key = (n, d)
        if key in self._matrix_cache:
            return self._matrix_cache[key]
        cols = self.slice_basis(n, d) if n > 0 else None
        if n == 0:
            raise ResolutionError("stage 0 has no incoming differential")
        rows_basis = self.slice_basis(n - 1, d)
        row_index = {b: i for i, b in enumerate(rows_basis)}
        zero = self.field.zero()
        mat = [[zero] * len(cols) for _ in rows_basis]
        one = self.field.one()
        for cidx, (w, j) in enumerate(cols):
            image = [self.algebra.free.zero() for _ in self.shifts[n - 1]]
            wpoly = NcPoly(self.algebra.free, {w: one})
            for i in range(len(image)):
                entry = self.diffs[n][i][j]
                if not entry.is_zero():
                    image[i] = self.algebra.normal_form(wpoly * entry)
            for i, poly in enumerate(image):
                for ww, c in poly.terms.items():
                    mat[row_index[(ww, i)]][cidx] = c
        self._matrix_cache[key] = mat
        return mat

    def augmentation_kernel_dim(self, d):
        if d > 0:
            return len(self.slice_basis(0, d))
        return len(self.algebra.normal_words(0)) - 1

    def kernel_basis(self, n, d):
        """Nullspace of d_n on internal degree d; for n = 0 the counit."""
        if n == 0:
            words = self.algebra.normal_words(d)
            if d > 0:
                return [
                    [self.field.one() if i == t else self.field.zero() for i in range(len(words))]
                    for t in range(len(words))
                ]
            row = [self.algebra.presentation.augment_poly(
                NcPoly(self.algebra.free, {w: self.field.one()})) for w in words]
            return linalg.nullspace([row], self.field, len(words))
        mat = self.matrix_slice(n, d)
        ncols = len(self.slice_basis(n, d))
        if not mat:
            return linalg.nullspace([], self.field, ncols) if ncols else []
        return linalg.nullspace(mat, self.field, ncols)

    def solve_preimage(self, n, d, target_vec):
        """x with d_n x = target (slice d); None if inconsistent."""
        mat = self.matrix_slice(n, d)
        return linalg.solve_right(mat, target_vec, self.field)

    def decompose_element(self, n, element):
        """Split an element of P_n into internal-degree slices {d: vec}."""
        pieces = {}
        for j, poly in enumerate(element):
            s = self.shifts[n][j]
            for w, c in poly.terms.items():
                d = self.algebra.free.word_degree(w) + s
                pieces.setdefault(d, []).append((w, j, c))
        out = {}
        for d, items in pieces.items():
            basis = self.slice_basis(n, d)
            index = {b: i for i, b in enumerate(basis)}
            vec = [self.field.zero()] * len(basis)
            for w, j, c in items:
                vec[index[(w, j)]] = vec[index[(w, j)]] + c
            out[d] = vec
        return out

    def solve_preimage_element(self, n, element):
        """x in P_n with d_n x = element, solved per internal degree."""
        out = [self.algebra.free.zero() for _ in self.shifts[n]]
        for d, vec in self.decompose_element(n - 1, element).items():
            sol = self.solve_preimage(n, d, vec)
            if sol is None:
                return None
            piece = self.vec_to_element(n, d, sol)
            out = [a + b for a, b in zip(out, piece)]
        return out

    def eps_matrix(self, n):
        aug = self.algebra.presentation.augment_poly
        return [[aug(e) for e in row] for row in self.diffs[n]]

    def check_d_squared(self):
        for n in range(2, self.stages + 1):
            rk_prev = len(self.shifts[n - 2])
            for j in range(len(self.shifts[n])):
                col = [self.diffs[n][i][j] for i in range(len(self.shifts[n - 1]))]
                image = self.apply_diff(n - 1, col)
                if any(not p.is_zero() for p in image):
                    return False
        return True

    def is_minimal(self):
        """All differential entries in the augmentation ideal."""
        aug = self.algebra.presentation.augment_poly
        for n in range(1, self.stages + 1):
            for row in self.diffs[n]:
                for e in row:
                    if not aug(e).is_zero():
                        return False
        return True


def _degree_range(res: FreeResolution, n):
    lo = min(res.shifts[n - 1]) if res.shifts[n - 1] else 0
    hi = max(res.shifts[n - 1], default=0) + res.top_degree
    return lo, hi


def minimal_resolution(A: PresentedAlgebra, N: int, equivariant=None) -> FreeResolution:
    """Graded free resolution of the trivial module to homological stage N.

    Kernels are generated degree-by-degree, lowest internal degree first,
    with previously covered directions discarded.  With equivariant =
    (K, action), K semisimple, each stage carries a K-module structure
    making the differentials equivariant (Maschke-averaged sections).
    """
    res = FreeResolution(A)
    K = act = integral = None
    if equivariant is not None:
        K, act = equivariant
        if not res.connected:
            raise ResolutionError("equivariant resolutions need a connected algebra")
        integral = K.left_integral()
        if integral is None:
            raise HopfError("K is not semisimple: no normalized integral")
        res.v_actions = [{b: [[K.counit[b]]] for b in range(K.dim)}]

    zero_words = A.normal_words(0)

    def slice_action(n, b, vec, d):
        # K acting diagonally on A (x) V_n, restricted to internal degree d
        basis = res.slice_basis(n, d)
        index = {t: i for i, t in enumerate(basis)}
        out = [res.field.zero()] * len(basis)
        rho = res.v_actions[n]
        for (w, j), c in zip(basis, vec):
            if c.is_zero():
                continue
            for coef, (b1, b2) in [(cc, jk) for jk, cc in K.delta(K.basis_vec(b)).items()]:
                acted = act.act_basis_word(b1, w)
                col = rho[b2]
                for i in range(len(res.shifts[n])):
                    m = col[i][j]
                    if m.is_zero():
                        continue
                    for ww, ca in acted.terms.items():
                        out[index[(ww, i)]] = out[index[(ww, i)]] + c * coef * ca * m
        return out

    def element_action(b, element, n, d):
        vec = res.element_to_vec(n, d, element)
        return slice_action(n, b, vec, d)

    for n in range(1, N + 1):
        lo, hi = _degree_range(res, n)
        new_shifts = []
        new_gens = []  # elements of P_{n-1}
        stage_blocks = {} if equivariant else None  # degree -> K-action block
        for d in range(lo, hi + 1):
            kers = res.kernel_basis(n - 1, d)
            if not kers:
                continue
            ncols = len(res.slice_basis(n - 1, d))
            covered = SpanBasis(res.field, ncols)
            for gi, g in enumerate(new_gens):
                s = new_shifts[gi]
                if s > d:
                    continue
                for w in A.normal_words(d - s):
                    shifted = [
                        A.normal_form(NcPoly(A.free, {w: res.field.one()}) * p)
                        for p in g
                    ]
                    covered.add(res.element_to_vec(n - 1, d, shifted))
            if equivariant is None:
                for v in kers:
                    residual = covered.reduce(v)
                    if not residual:
                        continue
                    inv = residual[min(residual)].inverse()
                    dense = [res.field.zero()] * ncols
                    for col, val in residual.items():
                        dense[col] = val * inv
                    gen = res.vec_to_element(n - 1, d, dense)
                    new_gens.append(gen)
                    new_shifts.append(d)
                    for w0 in zero_words:
                        shifted = [
                            A.normal_form(NcPoly(A.free, {w0: res.field.one()}) * p)
                            for p in gen
                        ]
                        covered.add(res.element_to_vec(n - 1, d, shifted))
            else:
                reps = []
                for v in kers:
                    residual = covered.reduce(v)
                    if not residual:
                        continue
                    inv = residual[min(residual)].inverse()
                    dense = [res.field.zero()] * ncols
                    for col, val in residual.items():
                        dense[col] = val * inv
                    reps.append(dense)
                    covered.add(dense)
                if not reps:
                    continue
                q = len(reps)
                cover_rows = covered.dense_rows()

                def quotient_coords(vec, _reps=reps, _d=d):
                    cols = [list(r) for r in _reps] + [
                        row for row in cover_rows if True
                    ]
                    sol = linalg.solve_right(
                        linalg.transpose(cols), vec, res.field
                    )
                    return sol[:q]

                # recompute covered-without-reps span for coordinates
                base_cover = SpanBasis(res.field, ncols)
                for gi, g in enumerate(new_gens):
                    s = new_shifts[gi]
                    if s > d:
                        continue
                    for w in A.normal_words(d - s):
                        shifted = [
                            A.normal_form(NcPoly(A.free, {w: res.field.one()}) * p)
                            for p in g
                        ]
                        base_cover.add(res.element_to_vec(n - 1, d, shifted))

                def coords(vec):
                    cols = [list(r) for r in reps] + base_cover.dense_rows()
                    sol = linalg.solve_right(linalg.transpose(cols), vec, res.field)
                    if sol is None:
                        raise ResolutionError("vector escapes kernel + covered span")
                    return sol[:q]

                # quotient K-action
                rho_q = {}
                for b in range(K.dim):
                    cols_out = []
                    for r in reps:
                        image = slice_action(n - 1, b, r, d)
                        cols_out.append(coords(image))
                    rho_q[b] = [[cols_out[j][i] for j in range(q)] for i in range(q)]

                def s0(cvec):
                    out = [res.field.zero()] * ncols
                    for cj, r in zip(cvec, reps):
                        if not cj.is_zero():
                            out = [x + cj * y for x, y in zip(out, r)]
                    return out

                def averaged(cvec):
                    out = [res.field.zero()] * ncols
                    for bb, lam in integral.items():
                        for jk, coef in K.delta(K.basis_vec(bb)).items():
                            b1, b2 = jk
                            sv = K.antipode_of(K.basis_vec(b2))
                            tv = [res.field.zero()] * q
                            for k2, c2 in sv.items():
                                mat = rho_q[k2]
                                for i in range(q):
                                    acc = res.field.zero()
                                    for j in range(q):
                                        acc = acc + mat[i][j] * cvec[j]
                                    tv[i] = tv[i] + c2 * acc
                            lifted = s0(tv)
                            img = slice_action(n - 1, b1, lifted, d)
                            out = [x + lam * coef * y for x, y in zip(out, img)]
                    return out

                unit = res.field.one()
                zero = res.field.zero()
                block = rho_q
                for t in range(q):
                    e = [unit if i == t else zero for i in range(q)]
                    w = averaged(e)
                    if coords(w) != e:
                        raise ResolutionError("averaged section is not a section")
                    gen = res.vec_to_element(n - 1, d, w)
                    new_gens.append(gen)
                    new_shifts.append(d)
                stage_blocks[d] = (len(new_gens) - q, block)

        # assemble the stage
        rank_prev = len(res.shifts[n - 1])
        matrix = [[A.free.zero() for _ in new_gens] for _ in range(rank_prev)]
        for j, g in enumerate(new_gens):
            for i in range(rank_prev):
                matrix[i][j] = g[i]
        res.shifts.append(new_shifts)
        res.diffs.append(matrix)
        if equivariant is not None:
            rank = len(new_gens)
            rho_n = {}
            for b in range(K.dim):
                zero = res.field.zero()
                m = [[zero] * rank for _ in range(rank)]
                for d, (offset, block) in stage_blocks.items():
                    q = len(block[b])
                    for i in range(q):
                        for j in range(q):
                            m[offset + i][offset + j] = block[b][i][j]
                rho_n[b] = m
            res.v_actions.append(rho_n)

    # certifications
    if not res.check_d_squared():
        raise ResolutionError("d o d != 0")
    for n in range(1, res.stages + 1):
        lo, hi = _degree_range(res, n)
        for d in range(lo, hi + 1):
            want = len(res.kernel_basis(n - 1, d))
            mat = res.matrix_slice(n, d)
            got = linalg.rank(mat, res.field) if mat else 0
            if got != want:
                raise ResolutionError(
                    f"exactness fails at stage {n}, internal degree {d}"
                )
            res.exactness_certified.append((n, d))
    res.minimal = res.is_minimal() if res.connected else False
    return res


# -- Ext tables ---------------------------------------------------------------


@dataclass
class ExtTable:
    dims: list
    internal: list          # per degree: {internal degree: multiplicity}
    basis: list             # per degree: list of representative vectors in k^{b_n}
    products: dict          # ((m, i), (l, j)) -> coords in the H^{m+l} basis
    generator_degrees: list
    certificate: str
    resolution: FreeResolution = None

    def to_json(self):
        return {
            "dims": self.dims,
            "internal_degrees": [sorted(d.items()) for d in self.internal],
            "generators": self.generator_degrees,
            "fgc_certificate": self.certificate,
            "products": [
                {
                    "a": list(a),
                    "b": list(b),
                    "value": [str(c) for c in coords],
                }
                for (a, b), coords in sorted(self.products.items())
            ],
        }


class _ExtComplex:
    """The counit-image complex k^{b_0} -> k^{b_1} -> ... of a resolution."""

    def __init__(self, res: FreeResolution):
        self.res = res
        self.field = res.field
        self.maps = []  # maps[n]: matrix of delta^n : k^{b_n} -> k^{b_{n+1}}
        for n in range(1, res.stages + 1):
            eps = res.eps_matrix(n)
            self.maps.append(linalg.transpose(eps) if eps else [])

    def delta(self, n):
        if n < 0 or n >= len(self.maps):
            return None
        return self.maps[n]

    def cohomology_basis(self, n):
        """(representatives, coordinate_solver) for H^n."""
        b_n = len(self.res.shifts[n])
        dn = self.delta(n)
        if dn is None or not dn:
            cocycles = linalg.nullspace([], self.field, b_n) if b_n else []
            if dn is None and b_n:
                cocycles = [
                    [self.field.one() if i == t else self.field.zero() for i in range(b_n)]
                    for t in range(b_n)
                ]
        else:
            cocycles = linalg.nullspace(dn, self.field, b_n)
        boundaries = []
        if n >= 1:
            prev = self.delta(n - 1)
            if prev and prev[0]:
                for col in linalg.transpose(prev):
                    boundaries.append(col)
        span = SpanBasis(self.field, b_n)
        bound_basis = []
        for b in boundaries:
            if span.add(b):
                bound_basis.append(b)
        reps = []
        for v in cocycles:
            residual = span.reduce(v)
            if not residual:
                continue
            inv = residual[min(residual)].inverse()
            dense = [self.field.zero()] * b_n
            for col, val in residual.items():
                dense[col] = val * inv
            if span.add(dense):
                reps.append(dense)

        def coords(vec, _reps=reps, _bound=bound_basis, _n=b_n):
            if not _reps:
                return []
            cols = [list(r) for r in _reps] + [list(b) for b in _bound]
            sol = linalg.solve_right(linalg.transpose(cols), vec, self.field)
            if sol is None:
                raise ResolutionError("vector is not a cocycle class")
            return sol[: len(_reps)]

        return reps, coords


def _lift_chain(res: FreeResolution, g_vec, l, depth):
    """Chain maps beta_j : P_{l+j} -> P_j lifting the cocycle g in Ext^l."""
    A = res.algebra
    field = res.field
    one = field.one()
    betas = []
    beta0 = [[NcPoly(A.free, {(): c} if not c.is_zero() else {}) for c in g_vec]]
    betas.append(beta0)
    for j in range(1, depth + 1):
        rank_j = len(res.shifts[j])
        rank_src = len(res.shifts[l + j])
        mat = [[A.free.zero() for _ in range(rank_src)] for _ in range(rank_j)]
        for e in range(rank_src):
            col = [res.diffs[l + j][i][e] for i in range(len(res.shifts[l + j - 1]))]
            rhs = [A.free.zero() for _ in range(len(res.shifts[j - 1]))]
            prev = betas[j - 1]
            for t, poly in enumerate(col):
                if poly.is_zero():
                    continue
                for i in range(len(rhs)):
                    entry = prev[i][t]
                    if not entry.is_zero():
                        rhs[i] = rhs[i] + poly * entry
            rhs = [A.normal_form(p) for p in rhs]
            element = res.solve_preimage_element(j, rhs)
            if element is None:
                raise ResolutionError("chain lift failed (insufficient depth?)")
            for i in range(rank_j):
                mat[i][e] = element[i]
        betas.append(mat)
    return betas


def yoneda_product(res: FreeResolution, f_vec, m, g_vec, l, betas=None):
    """Composition product of cocycle vectors: class of f o (lift of g)."""
    if betas is None:
        betas = _lift_chain(res, g_vec, l, m)
    beta_m = betas[m]
    aug = res.algebra.presentation.augment_poly
    out = []
    for e in range(len(res.shifts[l + m])):
        acc = res.field.zero()
        for i in range(len(res.shifts[m])):
            if not f_vec[i].is_zero():
                acc = acc + aug(beta_m[i][e]) * f_vec[i]
        out.append(acc)
    return out


def ext_table(A: PresentedAlgebra, N: int, with_products=True,
              resolution=None) -> ExtTable:
    """Ext dimensions, internal degrees, a chosen cocycle basis, Yoneda
    products on it, and the bounded generation certificate."""
    res = resolution if resolution is not None else minimal_resolution(A, N + 1)
    if res.stages < N + 1:
        raise ResolutionError("resolution too short for the requested range")
    cx = _ExtComplex(res)
    dims, internal, basis, coord_fns = [], [], [], []
    for n in range(N + 1):
        reps, coords = cx.cohomology_basis(n)
        basis.append(reps)
        coord_fns.append(coords)
        dims.append(len(reps))
        strand = {}
        for rep in reps:
            degs = {res.shifts[n][i] for i, c in enumerate(rep) if not c.is_zero()}
            d = max(degs)
            strand[d] = strand.get(d, 0) + 1
        internal.append(strand)

    products = {}
    if with_products:
        for l in range(1, N):
            for j, g in enumerate(basis[l]):
                betas = _lift_chain(res, g, l, N - l)
                for m in range(1, N - l + 1):
                    for i, f in enumerate(basis[m]):
                        prod = yoneda_product(res, f, m, g, l, betas=betas)
                        coords = coord_fns[m + l](prod)
                        products[((m, i), (l, j))] = coords

    gen_degrees, certificate = detect_generators_from(dims, products, N, res.field)
    return ExtTable(
        dims=dims,
        internal=internal,
        basis=basis,
        products=products,
        generator_degrees=gen_degrees,
        certificate=certificate,
        resolution=res,
    )


def ext_dims(A: PresentedAlgebra, N: int, resolution=None):
    """Ext^n dimensions for n <= N."""
    return ext_table(A, N, with_products=False, resolution=resolution).dims


def detect_generators_from(dims, products, N, field):
    """Smallest degree set whose classes generate Ext^{<=N} under products.

    Greedy from below: degree n needs new generators exactly when products
    of lower-degree classes fail to span Ext^n.  This is a bounded
    certificate, not a proof of finite generation.
    """
    gen_degrees = []
    spans = {}  # degree -> list of coordinate vectors spanning the generated part
    one, zero = field.one(), field.zero()
    for n in range(1, N + 1):
        if dims[n] == 0:
            spans[n] = []
            continue
        span = SpanBasis(field, dims[n])
        for i in range(1, n):
            j = n - i
            for vi in spans.get(i, []):
                for vj in spans.get(j, []):
                    acc = [zero] * dims[n]
                    hit = False
                    for s, cs in enumerate(vi):
                        if cs.is_zero():
                            continue
                        for t, ct in enumerate(vj):
                            if ct.is_zero():
                                continue
                            coords = products.get(((i, s), (j, t)))
                            if coords is None:
                                continue
                            hit = True
                            acc = [a + cs * ct * c for a, c in zip(acc, coords)]
                    if hit:
                        span.add(acc)
        if span.dim < dims[n]:
            gen_degrees.append(n)
            spans[n] = [
                [one if s == t else zero for s in range(dims[n])]
                for t in range(dims[n])
            ]
        else:
            spans[n] = span.dense_rows()
    cert = (
        f"Ext is generated in degrees {gen_degrees} up to cohomological degree {N} "
        "(bounded certificate from the computed product table; not a finite "
        "generation proof)"
    )
    return gen_degrees, cert


# -- bar-complex oracle --------------------------------------------------------


class _BarLevels:
    """Reduced bar complex of a finite-dimensional graded algebra relative to
    its degree-zero subalgebra S (plain reduced bar when connected).

    Levels V_m = Apos (x)_S ... (x)_S Apos (x)_S k are built as explicit
    quotients; the S-relative construction resolves the trivial module
    whenever S is (split) semisimple, which is checked via the trace form.
    """

    def __init__(self, A: PresentedAlgebra):
        if not A.gb_complete or not A.is_finite_dimensional():
            raise ResolutionError("bar oracle needs a finite-dimensional algebra")
        self.A = A
        self.field = A.field
        one = self.field.one()
        self.s_words = A.normal_words(0)
        self.pos_words = []
        d = 1
        step = max(A.max_generator_degree(), 1)
        empty = 0
        while True:
            ws = A.normal_words(d)
            if ws:
                self.pos_words.extend(ws)
                empty = 0
            else:
                empty += 1
                if empty >= step:
                    break
            d += 1
        self.pos_index = {w: i for i, w in enumerate(self.pos_words)}
        self.s_index = {w: i for i, w in enumerate(self.s_words)}
        if len(self.s_words) > 1:
            self._check_s_semisimple()
        self.aug = A.presentation.augment_poly
        # product splitting caches
        self._prod_cache = {}
        # levels
        self.bases = [[0]]       # V_0 is one-dimensional
        self.s_actions = [
            {
                sw: [[self._eps_word(sw)]]
                for sw in self.s_words
            }
        ]
        self.lifts = [None]
        self.projs = [None]
        self.deltas = [None]     # deltas[m]: matrix V_m -> V_{m-1}

    def _eps_word(self, w):
        return self.aug(NcPoly(self.A.free, {w: self.field.one()}))

    def _check_s_semisimple(self):
        # trace form of the left regular representation must be nondegenerate
        n = len(self.s_words)
        field = self.field
        mats = []
        for a in self.s_words:
            m = [[field.zero()] * n for _ in range(n)]
            for j, b in enumerate(self.s_words):
                prod = self.A.normal_form(
                    NcPoly(self.A.free, {a + b: field.one()})
                )
                for w, c in prod.terms.items():
                    m[self.s_index[w]][j] = c
            mats.append(m)
        gram = [[field.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                prod = linalg.mat_mul(mats[i], mats[j], field)
                tr = field.zero()
                for t in range(n):
                    tr = tr + prod[t][t]
                gram[i][j] = tr
        if linalg.rank(gram, field) != n:
            raise ResolutionError(
                "degree-zero subalgebra is not certified semisimple; "
                "bar oracle unavailable"
            )

    def _split_product(self, w1, w2):
        """nf(w1 * w2) split into (S-part coords, positive-part coords)."""
        key = (w1, w2)
        if key in self._prod_cache:
            return self._prod_cache[key]
        prod = self.A.normal_form(NcPoly(self.A.free, {w1 + w2: self.field.one()}))
        s_part, p_part = {}, {}
        for w, c in prod.terms.items():
            if self.A.free.word_degree(w) == 0:
                s_part[w] = c
            else:
                p_part[w] = c
        self._prod_cache[key] = (s_part, p_part)
        return s_part, p_part

    def ambient_dim(self, m):
        return len(self.pos_words) * len(self.bases[m - 1])

    def build_level(self, m):
        """Quotient A_pos (x) V_{m-1} by the S-balance relations."""
        field = self.field
        prev_dim = len(self.bases[m - 1])
        npos = len(self.pos_words)
        amb = npos * prev_dim

        def amb_index(pi, u):
            return pi * prev_dim + u

        relations = SpanBasis(field, amb)
        prev_act = self.s_actions[m - 1]
        for pi, a in enumerate(self.pos_words):
            for sw in self.s_words:
                if sw == ():
                    continue
                s_part, p_part = self._split_product(a, sw)
                # (a.s) (x) u  -  a (x) (s.u); S-part of a.s is positive-degree
                # times degree-0, so it stays positive: s_part is empty here.
                for u in range(prev_dim):
                    vec = [field.zero()] * amb
                    ok = False
                    for w, c in p_part.items():
                        vec[amb_index(self.pos_index[w], u)] = c
                        ok = True
                    mat = prev_act[sw]
                    for i in range(prev_dim):
                        c = mat[i][u]
                        if not c.is_zero():
                            vec[amb_index(pi, i)] = vec[amb_index(pi, i)] - c
                            ok = True
                    if ok:
                        relations.add(vec)
        pivot_cols = set(relations.pivots.keys())
        basis_cols = [c for c in range(amb) if c not in pivot_cols]

        def proj(vec):
            residual = relations.reduce(vec)
            return [residual[c] for c in basis_cols]

        self.bases.append(basis_cols)
        self.projs.append(proj)
        self.lifts.append(basis_cols)

        # left S-action on the new level: s.(a (x) u) = (s.a) (x) u
        new_dim = len(basis_cols)
        act = {}
        for sw in self.s_words:
            cols = []
            for col in basis_cols:
                pi, u = divmod(col, prev_dim)
                a = self.pos_words[pi]
                s_part, p_part = self._split_product(sw, a)
                vec = [field.zero()] * amb
                for w, c in p_part.items():
                    vec[amb_index(self.pos_index[w], u)] = c
                # degree-0 * positive word stays positive: s_part empty
                cols.append(proj(vec))
            act[sw] = [[cols[j][i] for j in range(new_dim)] for i in range(new_dim)]
        self.s_actions.append(act)

        # differential V_m -> V_{m-1}
        zero = field.zero()
        delta_cols = []
        prev_basis_cols = self.bases[m - 1]
        for col in basis_cols:
            pi, u = divmod(col, prev_dim)
            a = self.pos_words[pi]
            out = [zero] * prev_dim
            if m >= 2:
                # face_1: merge a into u's first factor (kill the S-part)
                pprev_dim = len(self.bases[m - 2])
                col_u = prev_basis_cols[u]
                bi, u2 = divmod(col_u, pprev_dim)
                b = self.pos_words[bi]
                _, p_part = self._split_product(a, b)
                amb_prev = len(self.pos_words) * pprev_dim
                vec = [zero] * amb_prev
                for w, c in p_part.items():
                    vec[self.pos_index[w] * pprev_dim + u2] = c
                merged = self.projs[m - 1](vec)
                out = [x + y for x, y in zip(out, merged)]
                # remaining faces: -(a (x) delta_{m-1}(u))
                du = [self.deltas[m - 1][i][u] for i in range(pprev_dim)]
                vec = [zero] * len(self.pos_words) * pprev_dim
                for i, c in enumerate(du):
                    if not c.is_zero():
                        vec[pi * pprev_dim + i] = c
                tail = self.projs[m - 1](vec)
                out = [x - y for x, y in zip(out, tail)]
            delta_cols.append(out)
        self.deltas.append(
            [[delta_cols[j][i] for j in range(new_dim)] for i in range(prev_dim)]
        )

    def invariant_functionals(self, m):
        """Basis of Hom_S(V_m, k_eps) as vectors in V_m^*."""
        dim = len(self.bases[m])
        field = self.field
        rows = []
        for sw in self.s_words:
            if sw == ():
                continue
            mat = self.s_actions[m][sw]
            eps = self._eps_word(sw)
            # f(s.v) = eps(s) f(v): f^T (A_s - eps I) = 0
            for j in range(dim):
                row = [mat[i][j] - (eps if i == j else field.zero()) for i in range(dim)]
                rows.append(row)
        if not rows:
            return linalg.identity(field, dim)
        cols = linalg.transpose(rows)
        return linalg.nullspace(cols, field, dim)


def bar_ext_dims(A: PresentedAlgebra, N: int):
    """Ext dimensions through degree N from the (relative) reduced bar
    complex: an oracle independent of the resolution machinery."""
    levels = _BarLevels(A)
    for m in range(1, N + 2):
        levels.build_level(m)
    field = A.field
    c_bases = [levels.invariant_functionals(m) for m in range(N + 2)]
    ranks = []
    for m in range(N + 1):
        # d^m : C^m -> C^{m+1}, f -> f o delta_{m+1}
        delta = levels.deltas[m + 1]
        cols = []
        for f in c_bases[m]:
            img = [field.zero()] * len(levels.bases[m + 1])
            for j in range(len(levels.bases[m + 1])):
                acc = field.zero()
                for i in range(len(levels.bases[m])):
                    if not delta[i][j].is_zero() and not f[i].is_zero():
                        acc = acc + delta[i][j] * f[i]
                img[j] = acc
            cols.append(img)
        ranks.append(linalg.rank(cols, field) if cols else 0)
    dims = []
    for m in range(N + 1):
        total = len(c_bases[m])
        prev = ranks[m - 1] if m >= 1 else 0
        dims.append(total - ranks[m] - prev)
    return dims


# -- K-action on Ext and invariants -------------------------------------------


@dataclass
class KActionOnExt:
    K: HopfAlgebraData
    resolution: FreeResolution
    matrices: list  # per degree n: {basis index -> matrix on Ext^n}

    def dims(self):
        return [len(m[self.K.unit]) for m in self.matrices]


def k_action_on_ext(K: HopfAlgebraData, R: PresentedAlgebra, act: ActionSpec,
                    N: int) -> KActionOnExt:
    """Left K-module structure on Ext^n_R(k, k) for n <= N, via an
    equivariant resolution; the generator-space action is pulled back
    through the antipode so invariants match the Hom-action convention."""
    if not K.is_semisimple():
        raise HopfError("K must be semisimple for the equivariant machinery")
    res = minimal_resolution(R, N, equivariant=(K, act))
    if not res.minimal:
        raise ResolutionError("equivariant resolution unexpectedly non-minimal")
    field = R.field
    matrices = []
    for n in range(N + 1):
        rank = len(res.shifts[n])
        per_basis = {}
        for b in range(K.dim):
            sb = K.antipode_of(K.basis_vec(b))
            m = [[field.zero()] * rank for _ in range(rank)]
            for k2, c2 in sb.items():
                rho = res.v_actions[n][k2]
                for i in range(rank):
                    for j in range(rank):
                        if not rho[i][j].is_zero():
                            # dual action: (b . f)(v) = f(S(b) v)
                            m[j][i] = m[j][i] + c2 * rho[i][j]
            per_basis[b] = m
        matrices.append(per_basis)
    return KActionOnExt(K=K, resolution=res, matrices=matrices)


def invariants(action: KActionOnExt):
    """Dimensions of the K-invariant subspace of Ext per degree, via the
    integral projector (requires K semisimple)."""
    K = action.K
    integral = K.left_integral()
    if integral is None:
        raise HopfError("no normalized integral: K is not semisimple")
    field = K.field
    dims = []
    for per_basis in action.matrices:
        rank = len(per_basis[K.unit])
        proj = [[field.zero()] * rank for _ in range(rank)]
        for b, lam in integral.items():
            m = per_basis[b]
            for i in range(rank):
                for j in range(rank):
                    proj[i][j] = proj[i][j] + lam * m[i][j]
        sq = linalg.mat_mul(proj, proj, field)
        if sq != proj:
            raise ResolutionError("integral projector is not idempotent")
        dims.append(linalg.rank(proj, field) if rank else 0)
    return dims


@dataclass
class CompareReport:
    smash_dims: list
    invariant_dims: list
    equal: bool
    first_discrepancy: int = None

    def to_json(self):
        return {
            "smash_dims": self.smash_dims,
            "invariant_dims": self.invariant_dims,
            "equal": self.equal,
            "first_discrepancy": self.first_discrepancy,
        }


def compare_sv(R: PresentedAlgebra, K: HopfAlgebraData, act: ActionSpec,
               N: int) -> CompareReport:
    """Per-degree equality of dim H^n(R x| K) and dim H^n(R)^K for n <= N.

    Only the dimension identity is asserted, not a ring isomorphism.
    """
    smash = smash_product(R, K, act)
    dims1 = ext_dims(smash.result, N)
    kact = k_action_on_ext(K, R, act, N)
    dims2 = invariants(kact)
    first = None
    for n in range(N + 1):
        if dims1[n] != dims2[n]:
            first = n
            break
    return CompareReport(dims1, dims2, first is None, first)
