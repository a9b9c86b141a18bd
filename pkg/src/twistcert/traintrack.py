"""Linear charts of measured train tracks and exact Perron-Frobenius analysis.

When a mapping class carries a train track into itself, its action on branch
weights is a nonnegative integer matrix.  If that matrix is primitive and its
dominant eigenvalue is an irrational quadratic integer > 1 with a positive
eigenvector, the eigenvector is a projectively invariant measured lamination
that stretches by the eigenvalue.  Irrationality is what rules out closed
leaves (they would show up as rational invariant weights) and leaves running
puncture to puncture (their weights would force the square root to be
rational).

Matrices act on column vectors of branch weights; a word's matrix is the
product of its letters' matrices in written order, so ``B^-1 A`` is the
matrix of ``T_b^-1 T_a`` with the A letter applied first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import TwistWord
from .exact import (Factorization, IntPoly, QuadraticNumber, compare, factor_monic,
                    quadratic_roots)

Matrix = tuple[tuple[int, ...], ...]

CARRYING_CAVEAT = (
    "chart-level certificate: the invariant weights are irrational, so the lamination "
    "has no closed leaves and no leaf joins two punctures")


class ChartError(ValueError):
    pass


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ChartError(f"matrix entries must be integers, got {x!r}")
            r.append(x)
        out.append(tuple(r))
    n = len(out)
    if any(len(r) != n for r in out):
        raise ChartError("matrix must be square")
    return tuple(out)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(X: Sequence[Sequence], Y: Sequence[Sequence]) -> Matrix:
    if len(X[0]) != len(Y):
        raise ChartError("dimension mismatch")
    cols = list(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in X)


def matpow(M: Matrix, k: int) -> Matrix:
    out = identity(len(M))
    for _ in range(k):
        out = matmul(out, M)
    return out


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class Chart:
    branch_count: int
    generators: tuple[str, ...]
    matrices: Mapping[str, Matrix]
    provenance: str = ""
    full_carrying: Mapping[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        mats = {k: _as_matrix(v) for k, v in self.matrices.items()}
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "generators", tuple(self.generators))
        for name, M in mats.items():
            if len(M) != self.branch_count:
                raise ChartError(f"matrix {name!r} is {len(M)}x{len(M)}, expected {self.branch_count}")
            if any(x < 0 for row in M for x in row):
                raise ChartError(f"matrix {name!r} has a negative entry")
        for name, flag in self.full_carrying.items():
            if name not in mats:
                raise ChartError(f"full_carrying names unknown matrix {name!r}")
            if flag and abs(determinant(mats[name])) != 1:
                raise ChartError(f"matrix {name!r} claims full carrying but det is not +-1")

    def letter_matrix(self, generator: int, sign: int) -> Matrix:
        if not 0 <= generator < len(self.generators):
            raise ChartError(f"generator index {generator} not in chart")
        key = self.generators[generator] + ("" if sign > 0 else "^-1")
        if key not in self.matrices:
            raise ChartError(f"chart has no matrix for {key!r}")
        return self.matrices[key]


def compose(chart: Chart, w: TwistWord) -> Matrix:
    out = identity(chart.branch_count)
    for g, e in w.letters:
        out = matmul(out, matpow(chart.letter_matrix(g, e), abs(e)))
    return out


def _charpoly_coeffs(M: Sequence[Sequence[int]]) -> IntPoly:
    """Faddeev-LeVerrier; every division is exact for integer M."""
    n = len(M)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = matmul(M, Mk) if k > 1 else [[0] * n for _ in range(n)]
        Mk = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        tr = sum(sum(M[i][l] * Mk[l][i] for l in range(n)) for i in range(n))
        c = Fraction(-tr, k)
        if c.denominator != 1:
            raise ArithmeticError("non-integral characteristic coefficient")
        coeffs[n - k] = int(c)
    return IntPoly(tuple(coeffs))


def char_poly(M: Sequence[Sequence[int]]) -> Factorization:
    """Characteristic polynomial ``det(xI - M)``, split over the rationals.

    ``.expand()`` recovers the polynomial itself.
    """
    M = _as_matrix(M)
    if len(M) > 10:
        raise ChartError("char_poly supports matrices up to 10x10")
    return factor_monic(_charpoly_coeffs(M))


def _check_field(values: Sequence[QuadraticNumber]) -> int:
    fields = {x.d for x in values if not x.is_rational}
    if len(fields) > 1:
        raise ValueError(f"mixed quadratic fields {sorted(fields)}")
    return fields.pop() if fields else 1


def verify_eigenpair(M: Sequence[Sequence[int]], lam: QuadraticNumber,
                     v: Sequence[QuadraticNumber]) -> bool:
    """Exact check of ``M v = lam v`` with every entry of v strictly positive."""
    _check_field([lam, *v])
    if len(v) != len(M):
        raise ValueError("vector length does not match matrix")
    for row, vi in zip(M, v):
        acc = QuadraticNumber(0)
        for m, vj in zip(row, v):
            acc = acc + m * vj
        if acc != lam * vi:
            return False
    return all(x.sign() > 0 for x in v)


def eigenvector(M: Sequence[Sequence[int]], lam: QuadraticNumber) -> list[list[QuadraticNumber]]:
    """Basis of the kernel of ``M - lam I`` over Q(sqrt d), by exact elimination."""
    n = len(M)
    A = [[QuadraticNumber(M[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [QuadraticNumber(0)] * n
        vec[fc] = QuadraticNumber(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -A[row][fc]
        basis.append(vec)
    return basis


def _normalise(v: list[QuadraticNumber]) -> list[QuadraticNumber]:
    """Positive scaling with integral a, b parts of content 1."""
    from math import gcd, lcm
    if v and all(x.sign() < 0 for x in v if x.sign()):
        v = [-x for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.a.denominator, x.b.denominator)
    v = [x * den for x in v]
    g = 0
    for x in v:
        g = gcd(g, int(x.a), int(x.b))
    return [x / g for x in v] if g > 1 else v


@dataclass(frozen=True)
class ChartCertificate:
    certified: bool
    reason: str
    dilatation: QuadraticNumber | None = None
    eigenvector: tuple[QuadraticNumber, ...] | None = None
    factorization: Factorization | None = None
    primitive_power: int | None = None
    caveat: str = ""


def _positive_power(M: Matrix) -> int | None:
    n = len(M)
    P = M
    for k in range(1, n * n + 1):
        if all(x > 0 for row in P for x in row):
            return k
        P = matmul(P, M)
    return None


def pa_certificate(M: Sequence[Sequence[int]]) -> ChartCertificate:
    """Certify a pseudo-Anosov stretch on the chart, or say which condition failed.

    Checks run in order: split of the characteristic polynomial, dominant
    real eigenvalue (the spectral radius, for a nonnegative matrix) being an
    irrational number above 1, primitivity within n^2 powers, and an exact
    positive eigenvector.
    """
    M = _as_matrix(M)
    if any(x < 0 for row in M for x in row):
        raise ChartError("pa_certificate needs a nonnegative matrix")
    fac = char_poly(M)
    if not fac.complete:
        return ChartCertificate(False, f"irreducible factor {fac.residual} of degree "
                                f"{fac.residual.degree} is outside quadratic scope", factorization=fac)
    real_roots = [QuadraticNumber(r) for r, _ in fac.linear]
    for q, _ in fac.quadratic:
        roots = quadratic_roots(q)
        if roots:
            real_roots.extend(roots)
    if not real_roots:
        return ChartCertificate(False, "no real eigenvalue", factorization=fac)
    lam = real_roots[0]
    for r in real_roots[1:]:
        if compare(r, lam) > 0:
            lam = r
    if lam.is_rational:
        return ChartCertificate(False, f"dominant eigenvalue {lam} is rational", lam, factorization=fac)
    if compare(lam, QuadraticNumber(1)) <= 0:
        return ChartCertificate(False, f"dominant eigenvalue {lam} is not > 1", lam, factorization=fac)
    k = _positive_power(M)
    if k is None:
        return ChartCertificate(False, "matrix is not primitive", lam, factorization=fac)
    basis = eigenvector(M, lam)
    if len(basis) != 1:
        return ChartCertificate(False, "dominant eigenspace is not one-dimensional", lam,
                                factorization=fac, primitive_power=k)
    v = _normalise(basis[0])
    if not verify_eigenpair(M, lam, v):
        return ChartCertificate(False, "no positive eigenvector for the dominant eigenvalue", lam,
                                factorization=fac, primitive_power=k)
    return ChartCertificate(True, "primitive; irrational quadratic dilatation > 1 with positive eigenvector",
                            lam, tuple(v), fac, k, CARRYING_CAVEAT)


# Matrix of T_b^-1 T_a on the branch weights (x, y, z) of the twice-punctured
# torus track, as printed.
FIXTURE = ((2, 3, 3), (1, 4, 3), (1, 1, 1))
