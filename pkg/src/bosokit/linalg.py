"""Dense exact linear algebra over the scalar fields.

Matrices are lists of rows; rows are lists of Scalars.  Everything is
deterministic: pivots are chosen left to right, first nonzero row wins.
"""

from __future__ import annotations

from .scalars import FieldSpec, Scalar


def zero_vector(field: FieldSpec, n: int):
    z = field.zero()
    return [z] * n


def rref(rows, field: FieldSpec):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows, field: FieldSpec) -> int:
    return len(rref(rows, field)[0])


def nullspace(rows, field: FieldSpec, ncols: int):
    """Basis of the right kernel {x : A x = 0}, deterministic order."""
    red, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    one = field.one()
    zero = field.zero()
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def solve_right(rows, b, field: FieldSpec):
    """One solution x of A x = b, or None if inconsistent.

    Free variables are set to zero, so the solution is deterministic.
    """
    if not rows:
        return [] if all(v.is_zero() for v in b) else None
    ncols = len(rows[0])
    aug = [list(r) + [bv] for r, bv in zip(rows, b)]
    red, pivots = rref(aug, field)
    zero = field.zero()
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None  # pivot in the augmented column
        x[pc] = red[r][ncols]
    return x


def mat_mul(a, b, field: FieldSpec):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    zero = field.zero()
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c.is_zero():
                continue
            bt = b[t]
            row = out[i]
            for j in range(m):
                if not bt[j].is_zero():
                    row[j] = row[j] + c * bt[j]
    return out


def mat_vec(a, v, field: FieldSpec):
    zero = field.zero()
    out = []
    for row in a:
        acc = zero
        for c, x in zip(row, v):
            if not c.is_zero() and not x.is_zero():
                acc = acc + c * x
        out.append(acc)
    return out


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def identity(field: FieldSpec, n: int):
    zero, one = field.zero(), field.one()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


class SpanBasis:
    """Incrementally maintained row space with exact membership tests.

    Rows are sparse dicts {column: Scalar}, echelonized so that each row's
    pivot is its smallest column and carries coefficient 1.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows = []          # sparse dicts
        self.pivots = {}        # pivot column -> row index

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _sparsify(self, vec):
        if isinstance(vec, dict):
            return {c: x for c, x in vec.items() if not x.is_zero()}
        return {c: x for c, x in enumerate(vec) if not x.is_zero()}

    def reduce(self, vec):
        """Sparse residual of vec after eliminating all known pivots."""
        vec = self._sparsify(vec)
        while vec:
            hit = None
            for c in sorted(vec):
                if c in self.pivots:
                    hit = c
                    break
            if hit is None:
                break
            f = vec.pop(hit)
            row = self.rows[self.pivots[hit]]
            for c, y in row.items():
                if c == hit:
                    continue
                acc = vec.get(c)
                val = -(f * y) if acc is None else acc - f * y
                if val.is_zero():
                    vec.pop(c, None)
                else:
                    vec[c] = val
        return vec

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def add(self, vec) -> bool:
        """Insert vec; returns True if the span grew."""
        res = self.reduce(vec)
        if not res:
            return False
        pivot = min(res)
        inv = res[pivot].inverse()
        res = {c: x * inv for c, x in res.items()}
        self.pivots[pivot] = len(self.rows)
        self.rows.append(res)
        return True

    def dense_rows(self):
        zero = self.field.zero()
        out = []
        for row in self.rows:
            dense = [zero] * self.ncols
            for c, x in row.items():
                dense[c] = x
            out.append(dense)
        return out
