"""Exact arithmetic in prime fields F_p and cyclotomic fields Q(zeta_n).

Scalars are immutable and kept in canonical form: an integer in [0, p) for
F_p, or the residue modulo Phi_n with Fraction coefficients for Q(zeta_n).
Q(zeta_1) is plain Q.  All operations are pure; values may be shared freely
between threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    """Invalid field data, cross-field arithmetic, or division by zero."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p in (2, 3):
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _zpoly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zpoly_divexact(num, den):
    # exact division in Z[x]; den monic up to sign with den[-1] == 1 here
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        c //= den[-1]
        q[k] = c
        if c:
            for j, y in enumerate(den):
                num[k + j] -= c * y
    assert all(v == 0 for v in num)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree, exact integers."""
    if n < 1:
        raise FieldError("cyclotomic index must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            num = _zpoly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_table(n: int):
    # x^k mod Phi_n for k = deg .. 2*deg-2, as Fraction tuples
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    # x^deg = -(phi[0] + ... + phi[deg-1] x^{deg-1})  (phi monic)
    cur = [Fraction(-c) for c in phi[:deg]]
    rows.append(tuple(cur))
    for _ in range(deg - 2):
        nxt = [Fraction(0)] + cur[:-1]
        top = cur[-1]
        if top:
            for i in range(deg):
                nxt[i] += top * Fraction(-phi[i])
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


_FIELD_RE = re.compile(r"^(?:F(\d+)|Q(?:\(zeta(\d+)\))?)$")


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p or a cyclotomic field Q(zeta_n)."""

    kind: str  # "prime" | "cyclotomic"
    param: int

    def __post_init__(self):
        if self.kind == "prime":
            if not is_prime(self.param):
                raise FieldError(f"{self.param} is not prime")
        elif self.kind == "cyclotomic":
            if self.param < 1:
                raise FieldError("cyclotomic index must be >= 1")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return self.param if self.kind == "prime" else 0

    @property
    def degree(self) -> int:
        if self.kind == "prime":
            return 1
        return len(cyclotomic_polynomial(self.param)) - 1

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime", p)

    @staticmethod
    def cyclotomic(n: int) -> "FieldSpec":
        return FieldSpec("cyclotomic", n)

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("cyclotomic", 1)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        m = _FIELD_RE.match(text.strip())
        if not m:
            raise FieldError(f"cannot parse field literal {text!r}")
        if m.group(1):
            return FieldSpec.prime(int(m.group(1)))
        if m.group(2):
            return FieldSpec.cyclotomic(int(m.group(2)))
        return FieldSpec.rationals()

    def __str__(self):
        if self.kind == "prime":
            return f"F{self.param}"
        if self.param == 1:
            return "Q"
        return f"Q(zeta{self.param})"

    # -- element constructors ------------------------------------------

    def zero(self) -> "Scalar":
        return self.from_int(0)

    def one(self) -> "Scalar":
        return self.from_int(1)

    def from_int(self, k: int) -> "Scalar":
        if self.kind == "prime":
            return Scalar(self, k % self.param)
        vec = [Fraction(0)] * self.degree
        if self.degree > 0:
            vec[0] = Fraction(k)
        return Scalar(self, tuple(vec))

    def from_fraction(self, q: Fraction) -> "Scalar":
        if self.kind == "prime":
            num = q.numerator % self.param
            den = q.denominator % self.param
            if den == 0:
                raise FieldError(f"denominator {q.denominator} vanishes in {self}")
            return Scalar(self, (num * pow(den, -1, self.param)) % self.param)
        vec = [Fraction(0)] * self.degree
        vec[0] = Fraction(q)
        return Scalar(self, tuple(vec))

    def zeta(self, power: int = 1) -> "Scalar":
        """The chosen primitive root of unity zeta_n (cyclotomic fields only)."""
        if self.kind != "cyclotomic":
            raise FieldError("zeta only lives in cyclotomic fields")
        power %= self.param
        coeffs = [Fraction(0)] * (power + 1)
        coeffs[power] = Fraction(1)
        return Scalar(self, _cyc_reduce(self, coeffs))


def _cyc_reduce(field: FieldSpec, coeffs):
    deg = field.degree
    out = [Fraction(c) for c in coeffs[:deg]]
    out += [Fraction(0)] * (deg - len(out))
    if len(coeffs) > deg:
        table = _reduction_table(field.param)
        for k in range(deg, len(coeffs)):
            c = coeffs[k]
            if c:
                row = table[k - deg]
                for i in range(deg):
                    out[i] += c * row[i]
    return tuple(out)


def _frpoly_divmod(a, b):
    # a, b lists of Fractions, b != 0
    a = list(a)
    db = len(b) - 1
    while db >= 0 and b[db] == 0:
        db -= 1
    q = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[k + db] / b[db]
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return q, a


@dataclass(frozen=True)
class Scalar:
    """An element of a FieldSpec, always in canonical reduced form."""

    field: FieldSpec
    value: object  # int for prime fields, tuple[Fraction, ...] for cyclotomic

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return NotImplemented

    def is_zero(self) -> bool:
        if self.field.kind == "prime":
            return self.value == 0
        return all(c == 0 for c in self.value)

    def is_one(self) -> bool:
        return self == self.field.one()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.kind == "prime":
            return Scalar(self.field, (self.value + other.value) % self.field.param)
        return Scalar(self.field, tuple(a + b for a, b in zip(self.value, other.value)))

    __radd__ = __add__

    def __neg__(self):
        if self.field.kind == "prime":
            return Scalar(self.field, (-self.value) % self.field.param)
        return Scalar(self.field, tuple(-a for a in self.value))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.kind == "prime":
            return Scalar(self.field, (self.value * other.value) % self.field.param)
        a, b = self.value, other.value
        prod = [Fraction(0)] * (2 * len(a) - 1) if a else []
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Scalar(self.field, _cyc_reduce(self.field, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise FieldError("division by zero")
        if self.field.kind == "prime":
            return Scalar(self.field, pow(self.value, -1, self.field.param))
        # extended Euclid in Q[t] against Phi_n (irreducible over Q)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.field.param)]
        r0, r1 = phi, list(self.value)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _frpoly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = _zpoly_mul_fr(q, s1)
            s_new = _frpoly_sub(s0, qs)
            s0, s1 = s1, s_new
        # r0 is the gcd, a nonzero constant
        lead = next(c for c in r0 if c != 0)
        inv = [c / lead for c in s0]
        return Scalar(self.field, _cyc_reduce(self.field, inv))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exp: int):
        if exp < 0:
            return self.inverse() ** (-exp)
        result = self.field.one()
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        if self.field.kind == "prime":
            return str(self.value)
        parts = []
        for i, c in enumerate(self.value):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mon = "zeta" if i == 1 else f"zeta^{i}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}*{mon}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def _zpoly_mul_fr(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _frpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Field arithmetic dispatch; op in {add, sub, mul, div}."""
    if a.field != b.field:
        raise FieldError(f"field mismatch: {a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise FieldError(f"unknown op {op!r}")


def order_of_unity(a: Scalar):
    """Least m >= 1 with a^m = 1, or None if a is not a root of unity.

    The search is bounded by the torsion exponent of the unit group:
    p - 1 for F_p, lcm(2, n) for Q(zeta_n).
    """
    if a.is_zero():
        raise FieldError("0 has no multiplicative order")
    f = a.field
    bound = f.param - 1 if f.kind == "prime" else math.lcm(2, f.param)
    if bound == 0:
        bound = 1
    one = f.one()
    if a ** bound != one:
        return None
    for d in divisors(bound):
        if a ** d == one:
            return d
    return None  # pragma: no cover


def compute_big_n(q: Scalar, char: int) -> int:
    """The nilpotency exponent attached to a diagonal braiding entry.

    Returns char when char = p > 0 and q = 1, and ord(q) otherwise.
    """
    if char != q.field.characteristic:
        raise FieldError(
            f"characteristic {char} does not match the field {q.field}"
        )
    if char > 0 and q.is_one():
        return char
    n = order_of_unity(q)
    if n is None:
        raise FieldError(f"{q} is not a root of unity in {q.field}")
    return n


_SCALAR_RE = re.compile(
    r"^\s*(-)?\s*(?:(\d+)\s*(?:/\s*(\d+))?|zeta(\d*)(?:\^(\d+))?)\s*$"
)


def parse_scalar(text: str, field: FieldSpec) -> Scalar:
    """Parse a scalar literal: integers, fractions a/b, zeta, zeta^k."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse scalar literal {text!r}")
    neg, num, den, zeta_n, zeta_pow = m.groups()
    if num is not None:
        val = field.from_fraction(Fraction(int(num), int(den) if den else 1))
    else:
        if zeta_n:
            if field.kind != "cyclotomic" or field.param != int(zeta_n):
                raise FieldError(f"zeta{zeta_n} does not live in {field}")
        val = field.zeta(int(zeta_pow) if zeta_pow else 1)
    return -val if neg else val


def infer_field(text: str) -> FieldSpec:
    """Field implied by a standalone scalar literal like 'zeta3' or '-1'."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse scalar literal {text!r}")
    _, num, _, zeta_n, _ = m.groups()
    if num is not None:
        return FieldSpec.rationals()
    if not zeta_n:
        raise FieldError("bare 'zeta' needs an explicit field")
    return FieldSpec.cyclotomic(int(zeta_n))
