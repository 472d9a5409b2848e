"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer matrices hold Python ints, rational
ones hold ``fractions.Fraction``. Nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .errors import InconsistentSystem, NotNegativeDefinite, SingularSystem

Matrix = list[list]
Vector = list


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bilinear(gram: Sequence[Sequence], u: Sequence, v: Sequence):
    """u^T * gram * v."""
    return sum(ui * x for ui, x in zip(u, matvec(gram, v)))


def congruent(gram: Sequence[Sequence], basis: Sequence[Sequence]) -> Matrix:
    """Gram matrix of the row vectors in ``basis``: B * gram * B^T."""
    return [[bilinear(gram, u, v) for v in basis] for u in basis]


def as_fraction_matrix(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def simplify(x):
    """Turn an integral Fraction into an int, leave everything else alone."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, s, t) with s*a + t*b = g >= 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U * M = H``. ``H`` is upper
    echelon, every pivot is positive and the entries above a pivot ``p`` lie in
    ``[0, p)``. For a fixed ``M`` the matrix ``H`` is unique.
    """
    if not m or not m[0]:
        raise ValueError("hermite_normal_form needs a nonempty matrix")
    h = [[int(x) for x in row] for row in m]
    rows, cols = len(h), len(h[0])
    u = identity(rows)
    r = 0
    for j in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            b = h[i][j]
            if b == 0:
                continue
            a = h[r][j]
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            for mat in (h, u):
                top, low = mat[r], mat[i]
                mat[r] = [s * x + t * y for x, y in zip(top, low)]
                mat[i] = [-bg * x + ag * y for x, y in zip(top, low)]
        p = h[r][j]
        if p == 0:
            continue
        if p < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
            p = -p
        for k in range(r):
            q = h[k][j] // p
            if q:
                h[k] = [x - q * y for x, y in zip(h[k], h[r])]
                u[k] = [x - q * y for x, y in zip(u[k], u[r])]
        r += 1
    return h, u


def integer_kernel(m: Sequence[Sequence[int]], cols: int | None = None) -> list[list[int]]:
    """Basis of the integral kernel ``{v in Z^cols : M v = 0}``.

    The basis generates the whole kernel lattice (it is saturated), and is
    returned in Hermite normal form so the answer is canonical.
    """
    if cols is None:
        cols = len(m[0])
    if not m:
        return identity(cols)
    h, u = hermite_normal_form(transpose(m))
    kernel = [u[i] for i, row in enumerate(h) if not any(row)]
    if not kernel:
        return []
    hk, _ = hermite_normal_form(kernel)
    return [row for row in hk if any(row)]


def orthogonal_complement(
    gram: Sequence[Sequence[int]], indices: Sequence[int]
) -> tuple[list[list[int]], Matrix]:
    """Saturated sublattice orthogonal to the basis vectors at ``indices``.

    ``indices`` are 0-based. Returns ``(basis, complement_gram)`` where the
    basis rows are expressed in the ambient coordinates. After the kernel
    computation the basis is swept once so that whenever ``b_i^2`` divides
    ``b_i . b_j`` the pair is made orthogonal; this keeps the output in the
    diagonal shape people write by hand whenever that is possible over Z.
    """
    n = len(gram)
    rows = [list(gram[i]) for i in indices]
    basis = integer_kernel(rows, n) if rows else identity(n)
    for j in range(len(basis)):
        for i in range(j):
            gii = bilinear(gram, basis[i], basis[i])
            gij = bilinear(gram, basis[i], basis[j])
            if gii and gij and gij % gii == 0:
                q = gij // gii
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return basis, congruent(gram, basis)


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q. Returns ``(R, pivot_columns)``."""
    a = as_fraction_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, rows) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][j]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
        if r == rows:
            break
    return a, pivots


def determinant(m: Sequence[Sequence]):
    """Exact determinant. Integer input uses fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        a = [list(row) for row in m]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = as_fraction_matrix(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def solve_linear(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Exact solution of ``A x = b``.

    ``A`` may have more rows than columns as long as the system is consistent;
    every equation is checked. Raises InconsistentSystem when no solution
    exists and SingularSystem when the solution is not unique.
    """
    if len(a) != len(b):
        raise ValueError("row count of A and length of b differ")
    cols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        raise InconsistentSystem("no exact solution")
    if len(pivots) < cols:
        raise SingularSystem(f"rank {len(pivots)} < {cols} unknowns")
    x = [r[i][cols] for i in range(cols)]
    for row, rhs in zip(a, b):
        assert sum(Fraction(c) * xi for c, xi in zip(row, x)) == rhs
    return x


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(row) + ident for row, ident in zip(m, identity(n))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularSystem("matrix is not invertible")
    return [row[n:] for row in r[:n]]


def leading_minors(m: Sequence[Sequence]) -> list:
    return [determinant([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def is_negative_definite(m: Sequence[Sequence]) -> bool:
    """Sylvester's criterion: the k-th leading minor has sign (-1)^k."""
    return all((d < 0) if k % 2 == 0 else (d > 0) for k, d in enumerate(leading_minors(m)))


@dataclass(frozen=True)
class QuadricSpec:
    """The integer points of ``v^T G v + l . v + constant = target``."""

    gram: list
    linear: list | None = None
    constant: Fraction | int = 0
    target: Fraction | int = 0

    def __post_init__(self):
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise ValueError("gram must be square")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram must be symmetric")
        if self.linear is not None and len(self.linear) != n:
            raise ValueError("linear part has the wrong length")

    def value(self, v: Sequence[int]):
        lin = self.linear or [0] * len(v)
        return bilinear(self.gram, v, v) + sum(c * x for c, x in zip(lin, v)) + self.constant


def _floor_sqrt(x: Fraction) -> int:
    # floor(sqrt(p/q)) == isqrt(p*q) // q
    return isqrt(x.numerator * x.denominator) // x.denominator


def _integer_window(center: Fraction, radius_sq: Fraction) -> range:
    """Integers v with (v - center)^2 <= radius_sq."""
    s = _floor_sqrt(radius_sq)
    hi = center.__floor__() + s + 1
    while hi > center and (hi - center) ** 2 > radius_sq:
        hi -= 1
    lo = center.__ceil__() - s - 1
    while lo < center and (lo - center) ** 2 > radius_sq:
        lo += 1
    if (hi - center) ** 2 > radius_sq or lo > hi:
        return range(0)
    return range(lo, hi + 1)


def _completed_squares(p: Matrix) -> Matrix:
    # p positive definite; afterwards y^T p y = sum_i q[i][i] * (y_i + sum_{j>i} q[i][j] y_j)^2
    n = len(p)
    q = as_fraction_matrix(p)
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def enumerate_quadric(spec: QuadricSpec) -> list[tuple[int, ...]]:
    """All integer solutions of a quadric with negative definite quadratic part.

    The equation is recentred at the critical point of the quadratic function,
    the quadratic part is written as a sum of squares, and the coordinates are
    enumerated last to first inside the nested intervals those squares allow.
    Output is sorted lexicographically.
    """
    g = spec.gram
    n = len(g)
    if n == 0:
        return [()] if spec.constant == spec.target else []
    if not is_negative_definite(g):
        raise NotNegativeDefinite("quadratic part is not negative definite")
    lin = [Fraction(x) for x in (spec.linear or [0] * n)]
    # critical point x0 = -1/2 G^{-1} l; then v^T G v + l.v = (v-x0)^T G (v-x0) - x0^T G x0
    x0 = solve_linear(g, [-x / 2 for x in lin]) if any(lin) else [Fraction(0)] * n
    budget = -(Fraction(spec.target) - spec.constant + bilinear(g, x0, x0))
    if budget < 0:
        return []
    q = _completed_squares([[-x for x in row] for row in g])

    found = []
    v = [0] * n

    def descend(i: int, remaining: Fraction):
        if i < 0:
            if remaining == 0:
                found.append(tuple(v))
            return
        shift = sum(q[i][j] * (v[j] - x0[j]) for j in range(i + 1, n))
        center = x0[i] - shift
        for vi in _integer_window(center, remaining / q[i][i]):
            v[i] = vi
            descend(i - 1, remaining - q[i][i] * (vi - center) ** 2)
        v[i] = 0

    descend(n - 1, budget)
    found.sort()
    return found
