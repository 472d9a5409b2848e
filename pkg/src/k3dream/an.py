"""Arithmetic of A_n singularities.

Sign convention: the exceptional curves of an A_n point have intersection
matrix ``M = -C`` where ``C`` is the Cartan matrix. Every norm below is
computed through ``M``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import IndexOutOfRange, LengthMismatch, NTooSmall
from .linalg import bilinear, inverse


def cartan(n: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def _cartan_inverse(n: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(row) for row in inverse(cartan(n)))


@dataclass(frozen=True)
class AnModel:
    n: int

    @property
    def cartan(self) -> list[list[int]]:
        return cartan(self.n)

    @property
    def cartan_inv(self) -> tuple[tuple[Fraction, ...], ...]:
        return _cartan_inverse(self.n)

    @property
    def intersection(self) -> list[list[int]]:
        return [[-x for x in row] for row in self.cartan]


def _det_recursive(n: int) -> int:
    # first-row expansion: det C^n = 2 det C^{n-1} - det C^{n-2}
    prev, cur = 1, 2
    for _ in range(n - 1):
        prev, cur = cur, 2 * cur - prev
    return cur


def cartan_det(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    d = _det_recursive(n)
    if d != n + 1:
        raise AssertionError(f"det C^{n} = {d}, expected {n + 1}")
    return d


def inv_diagonal(n: int, i: int) -> Fraction:
    """Diagonal entry ``i(n-i+1)/(n+1)`` of the inverse Cartan matrix (1-based ``i``)."""
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"i = {i} outside 1..{n}")
    d = Fraction(i * (n - i + 1), n + 1)
    if _cartan_inverse(n)[i - 1][i - 1] != d:
        raise AssertionError(f"inverse diagonal mismatch at n={n}, i={i}")
    return d


def check_diag_bound(n: int) -> bool:
    """Every inverse diagonal entry with ``3 <= i <= n-2`` is at least 2."""
    if n < 8:
        raise NTooSmall(f"n = {n} < 8")
    return all(inv_diagonal(n, i) >= 2 for i in range(3, n - 1))


@dataclass(frozen=True)
class DualClassNorm:
    n: int
    k: int
    frac_vector: tuple[Fraction, ...]
    norm: Fraction


def frac_norm(n: int, k: int) -> DualClassNorm:
    """``{kE}`` and its square, ``E = (1/(n+1)) sum i E_i`` generating the discriminant group."""
    k %= n + 1
    v = tuple(Fraction(k * i % (n + 1), n + 1) for i in range(1, n + 1))
    return DualClassNorm(n, k, v, -bilinear(cartan(n), v, v))


def closed_form_norm(n: int, k: int) -> Fraction:
    k %= n + 1
    return Fraction(-k * (n + 1 - k), n + 1)


def mod2_congruence(n: int) -> bool:
    """``{kE}^2 = k^2 {E}^2`` modulo 2 for every k."""
    e = frac_norm(n, 1).norm
    for k in range(n + 1):
        diff = frac_norm(n, k).norm - k * k * e
        if diff.denominator != 1 or diff.numerator % 2:
            return False
    return True


def curve_selfint(n: int, beta: Sequence[int]) -> Fraction:
    """Square of the image of a (-2)-curve meeting the chain with multiplicities ``beta``."""
    if len(beta) != n:
        raise LengthMismatch(f"beta has length {len(beta)}, expected {n}")
    if any(b < 0 for b in beta):
        raise ValueError("beta must be nonnegative")
    return -2 + bilinear(_cartan_inverse(n), beta, beta)


def _unit(n: int, i: int) -> list[int]:
    return [int(j == i) for j in range(1, n + 1)]


def negative_curve_indices(n: int) -> dict[int, Fraction]:
    """Chain positions a single transverse (-2)-curve may meet while its image stays negative."""
    if n < 8:
        raise NTooSmall(f"n = {n} < 8")
    out = {}
    for i in range(1, n + 1):
        s = curve_selfint(n, _unit(n, i))
        if s < 0:
            out[i] = s
    return out


def negative_curve_options(n: int) -> frozenset[Fraction]:
    """``{-(n+2)/(n+1), -4/(n+1)}``, cross-checked against the Cartan inverse."""
    by_index = negative_curve_indices(n)
    end, second = Fraction(-(n + 2), n + 1), Fraction(-4, n + 1)
    assert by_index == {1: end, n: end, 2: second, n - 1: second}
    assert check_diag_bound(n)
    return frozenset((end, second))


@dataclass(frozen=True)
class AmbiguityRow:
    n: int
    k: int
    k2: int
    norm_k: Fraction
    norm_k2: Fraction


def ambiguity_rows(n: int) -> list[AmbiguityRow]:
    """Pairs ``k < k' <= (n+1)/2`` whose norms differ by a nonzero even integer,
    both lying in ``(-4, 0]``."""
    rows = []
    half = (n + 1) // 2
    norms = {k: frac_norm(n, k).norm for k in range(1, half + 1)}
    for k in range(1, half + 1):
        for k2 in range(k + 1, half + 1):
            a, b = norms[k], norms[k2]
            diff = a - b
            if a == b or diff.denominator != 1 or diff.numerator % 2:
                continue
            if -4 < a <= 0 and -4 < b <= 0:
                rows.append(AmbiguityRow(n, k, k2, a, b))
    return rows


def ambiguity_scan(n_max: int) -> list[AmbiguityRow]:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    return [row for n in range(1, n_max + 1) for row in ambiguity_rows(n)]


class AnDecision(str, Enum):
    MORI_DREAM = "MoriDream"
    UNDETERMINED = "Undetermined"
    INAPPLICABLE = "Inapplicable"


@dataclass(frozen=True)
class AnVerdict:
    decision: AnDecision
    n: int
    obstruction: tuple[AmbiguityRow, ...] = ()


def decide_main_an(n: int, has_negative_irreducible_curve: bool) -> AnVerdict:
    """Rank two, one A_n point, an irreducible negative curve: Mori dream unless the
    parity of ``D^2 + {E_D}^2`` fails to pin down ``{E_D}^2``.

    For ``n <= 18`` the undecided values are exactly 11, 14 and 15. Larger ``n``
    are judged by the same scan, which first flags ``n = 20``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not has_negative_irreducible_curve:
        return AnVerdict(AnDecision.INAPPLICABLE, n)
    rows = tuple(ambiguity_rows(n))
    if rows:
        return AnVerdict(AnDecision.UNDETERMINED, n, rows)
    return AnVerdict(AnDecision.MORI_DREAM, n)
