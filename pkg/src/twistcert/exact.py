"""Exact numbers for eigen-analysis: real quadratic fields and integer polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt
from numbers import Rational
from typing import Sequence


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n > 0 as ``f^2 * d`` with d squarefree; returns (f, d)."""
    f, d, k = 1, n, 2
    while k * k <= d:
        while d % (k * k) == 0:
            d //= k * k
            f *= k
        k += 1
    return f, d


def _sign_of(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of ``a + b sqrt(d)``."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or d == 1:
        v = a + b if d == 1 else a
        return (v > 0) - (v < 0)
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


@total_ordering
@dataclass(frozen=True)
class QuadraticNumber:
    """``a + b sqrt(d)`` with rational a, b and squarefree d.

    d = 1 marks a plain rational (b is folded into a).  Arithmetic mixes a
    rational with any field, but two different irrational fields are refused.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if not is_squarefree(d):
            raise ValueError(f"d = {d} is not a squarefree positive integer")
        if d == 1:
            a, b = a + b, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _field(self, other: QuadraticNumber) -> int:
        if self.is_rational:
            return other.d if not other.is_rational else 1
        if other.is_rational or other.d == self.d:
            return self.d
        raise ValueError(f"mixed quadratic fields sqrt({self.d}) and sqrt({other.d})")

    @staticmethod
    def _coerce(x) -> QuadraticNumber:
        if isinstance(x, QuadraticNumber):
            return x
        if isinstance(x, Rational):
            return QuadraticNumber(Fraction(x))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticNumber(self.a + other.a, self.b + other.b, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return QuadraticNumber(self.a * other.a + self.b * other.b * d,
                               self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> QuadraticNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = self.conjugate()
        return QuadraticNumber(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadraticNumber(1, 0, self.d)
        for _ in range(k):
            out = out * self
        return out

    def sign(self) -> int:
        return _sign_of(self.a, self.b, self.d)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.b == other.b and (self.is_rational or self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 1))

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) < 0

    def __str__(self):
        if self.is_rational:
            return str(self.a)
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        root = f"{b}sqrt({self.d})"
        if self.a == 0:
            return root
        return f"{self.a}+{root}" if not root.startswith("-") else f"{self.a}{root}"


def compare(x: QuadraticNumber, y: QuadraticNumber) -> int:
    """Exact sign of ``x - y``, allowing x and y to live in different fields."""
    if x.is_rational or y.is_rational or x.d == y.d:
        return (x - y).sign()
    # u + v with u = (x.a - y.a) + x.b sqrt(x.d) in Q(sqrt x.d), v = -y.b sqrt(y.d)
    u = QuadraticNumber(x.a - y.a, x.b, x.d)
    su = u.sign()
    sv = -((y.b > 0) - (y.b < 0))
    if su == 0 or su == sv:
        return sv if su == 0 else su
    # opposite signs: compare u^2 against v^2 = y.b^2 y.d (a rational)
    diff = (u * u - y.b * y.b * y.d).sign()
    if diff == 0:
        return 0
    return su if diff > 0 else sv


# -- integer polynomials -----------------------------------------------------

@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients from the constant term upward."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @classmethod
    def from_high(cls, *coeffs: int) -> IntPoly:
        return cls(tuple(reversed(coeffs)))

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def __mul__(self, other: IntPoly) -> IntPoly:
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    def __pow__(self, k: int) -> IntPoly:
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_monic(self, divisor: IntPoly) -> tuple[IntPoly, IntPoly]:
        if divisor.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPoly((0,)), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd]
            quot[k] = q
            if q:
                for i, c in enumerate(divisor.coeffs):
                    rem[k + i] -= q * c
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[:dd]) or (0,))

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            var = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            body = f"{mag}{var}" if (mag != 1 or not var) else var
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def matrix_poly_eval(p: IntPoly, M: Sequence[Sequence[int]]) -> list[list[int]]:
    """``p(M)`` by Horner's rule with exact integers."""
    n = len(M)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        acc = [[sum(acc[i][k] * M[k][j] for k in range(n)) + (c if i == j else 0)
                for j in range(n)] for i in range(n)]
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.extend({k, n // k})
        k += 1
    return sorted(out)


@dataclass(frozen=True)
class Factorization:
    """Monic integer factors with multiplicities.

    ``linear`` holds integer roots, ``quadratic`` irreducible monic
    quadratics, and ``residual`` whatever monic part has neither (degree 0
    when the split is complete).
    """

    linear: tuple[tuple[int, int], ...]
    quadratic: tuple[tuple[IntPoly, int], ...]
    residual: IntPoly

    @property
    def complete(self) -> bool:
        return self.residual.degree == 0

    def factors(self) -> list[tuple[IntPoly, int]]:
        out = [(IntPoly((-r, 1)), k) for r, k in self.linear]
        out.extend(self.quadratic)
        if not self.complete:
            out.append((self.residual, 1))
        return out

    def expand(self) -> IntPoly:
        out = IntPoly((1,))
        for f, k in self.factors():
            out = out * f ** k
        return out

    def __str__(self):
        parts = []
        for f, k in self.factors():
            s = f"({f})"
            parts.append(s if k == 1 else f"{s}^{k}")
        return "".join(parts) or "1"


def _root_bound(p: IntPoly) -> int:
    """Cauchy bound on |root| for a monic integer polynomial."""
    return 1 + max((abs(c) for c in p.coeffs[:-1]), default=0)


def factor_monic(p: IntPoly) -> Factorization:
    """Split off integer roots, then monic irreducible quadratic factors.

    Integer roots of a monic integer polynomial divide the constant term
    (0 is tested separately).  A monic quadratic factor q = x^2 + u x + v
    has v dividing the constant term with |v| <= R^2 for the Cauchy root
    bound R.  Once the roots +-1 are gone, q(1) = 1 + u + v divides p(1)
    and q(-1) divides p(-1), which leaves a handful of candidates for u.
    """
    if p.coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    linear = []
    rest = p
    mult = 0
    while rest.degree >= 1 and rest.coeffs[0] == 0:
        rest = IntPoly(rest.coeffs[1:])
        mult += 1
    if mult:
        linear.append((0, mult))
    for r in sorted({s * d for d in _divisors(rest.coeffs[0]) for s in (1, -1)}):
        mult = 0
        while rest.degree >= 1 and rest(r) == 0:
            rest, _ = rest.divmod_monic(IntPoly((-r, 1)))
            mult += 1
        if mult:
            linear.append((r, mult))
    linear.sort()

    quadratic: dict[IntPoly, int] = {}
    while rest.degree >= 2:
        if rest.degree == 2:
            quadratic[rest] = quadratic.get(rest, 0) + 1
            rest = IntPoly((1,))
            break
        R = _root_bound(rest)
        at_one, at_minus_one = rest(1), rest(-1)
        q_at_one = sorted({s * d for d in _divisors(at_one) for s in (1, -1)})
        found = None
        for v in sorted({s * d for d in _divisors(rest.coeffs[0]) for s in (1, -1)}, key=lambda z: (abs(z), z)):
            if abs(v) > R * R:
                continue
            for e in q_at_one:
                u = e - 1 - v
                if abs(u) > 2 * R or 1 - u + v == 0 or at_minus_one % (1 - u + v):
                    continue
                q = IntPoly((v, u, 1))
                quo, rem = rest.divmod_monic(q)
                if rem.coeffs == (0,):
                    found = (q, quo)
                    break
            if found:
                break
        if found is None:
            break
        q, rest = found
        quadratic[q] = quadratic.get(q, 0) + 1
    quads = tuple(sorted(quadratic.items(), key=lambda kv: kv[0].coeffs))
    return Factorization(tuple(linear), quads, rest)


def quadratic_roots(q: IntPoly) -> tuple[QuadraticNumber, QuadraticNumber] | None:
    """Real roots of ``x^2 + u x + v`` as field elements, larger first; None if complex."""
    v, u, one = q.coeffs
    disc = u * u - 4 * v
    if disc < 0:
        return None
    if disc == 0:
        r = QuadraticNumber(Fraction(-u, 2))
        return r, r
    f, d = squarefree_part(disc)
    if d == 1:
        # perfect square: rational roots
        s = isqrt(disc)
        return QuadraticNumber(Fraction(-u + s, 2)), QuadraticNumber(Fraction(-u - s, 2))
    a = Fraction(-u, 2)
    b = Fraction(f, 2)
    return QuadraticNumber(a, b, d), QuadraticNumber(a, -b, d)
