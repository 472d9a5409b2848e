"""Mori dream tests for rank-two K3 lattices, and Mumford pullbacks on resolutions."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import floor, lcm
from typing import Optional, Sequence

from . import qform
from .errors import (
    HypothesisViolated,
    NonNegativeSelfIntersection,
    NotHyperbolic,
    OddLattice,
    ParityViolation,
    SquareDiscriminant,
)
from .linalg import bilinear, is_negative_definite, solve_linear
from .qform import QForm


class Decision(str, Enum):
    MORI_DREAM = "MoriDream"
    NOT_MORI_DREAM = "NotMoriDream"
    UNDETERMINED_BUDGET = "UndeterminedBudget"


class Effectiveness(str, Enum):
    EFFECTIVE_UP_TO_SIGN = "EffectiveUpToSign"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class RankTwoLattice:
    """Picard lattice of rank two, given by its symmetric Gram matrix.

    Entries may be rational (Weil divisor classes on a singular surface).
    """

    gram: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    def __init__(self, gram):
        (g11, g12), (g21, g22) = gram
        if g12 != g21:
            raise ValueError("gram must be symmetric")
        g = ((Fraction(g11), Fraction(g12)), (Fraction(g12), Fraction(g22)))
        object.__setattr__(self, "gram", g)
        if self.d <= 0:
            raise NotHyperbolic(f"d_X = {self.d} <= 0: not of signature (1,1)")

    @classmethod
    def from_entries(cls, g11, g12, g22) -> "RankTwoLattice":
        return cls(((g11, g12), (g12, g22)))

    @property
    def d(self) -> Fraction:
        (a, b), (_, c) = self.gram
        return b * b - a * c

    def dot(self, u: Sequence, v: Sequence) -> Fraction:
        return bilinear(self.gram, u, v)

    def square(self, u: Sequence) -> Fraction:
        return self.dot(u, u)

    @property
    def is_even_integral(self) -> bool:
        (a, b), (_, c) = self.gram
        return all(x.denominator == 1 for x in (a, b, c)) and a % 2 == 0 and c % 2 == 0

    def smooth_form(self) -> QForm:
        """``a x^2 + b x y + c y^2`` with gram ``(2a, b; b, 2c)``."""
        if not self.is_even_integral:
            raise OddLattice("gram must be integral with even diagonal")
        (a, b), (_, c) = self.gram
        return QForm(int(a) // 2, int(b), int(c) // 2)

    def cleared_form(self) -> tuple[QForm, int]:
        """Integral form ``s * D^2`` and the scale ``s`` that clears denominators."""
        (a, b), (_, c) = self.gram
        coeffs = (a, 2 * b, c)
        s = lcm(*(x.denominator for x in coeffs))
        return QForm(*(int(x * s) for x in coeffs)), s


DivisorClass = tuple


@dataclass(frozen=True)
class MdsVerdict:
    decision: Decision
    witness: Optional[tuple] = None
    self_intersection: Optional[Fraction] = None
    reason: str = ""
    d: Optional[Fraction] = None

    @property
    def is_mori_dream(self) -> bool:
        return self.decision is Decision.MORI_DREAM


def mds_smooth(lattice: RankTwoLattice) -> MdsVerdict:
    """Decide Mori-dreamness of a smooth K3 with the given rank-two Picard lattice.

    Rank two means: Mori dream iff some class has square 0 or -2. Both are
    decided completely, and a positive answer carries the class as witness.
    """
    f = lattice.smooth_form()
    d = lattice.d
    iso = qform.isotropic_vector(f)
    if iso is not None:
        assert lattice.square(iso) == 0
        return MdsVerdict(Decision.MORI_DREAM, iso, Fraction(0), "square discriminant: isotropic class", d)
    w = qform.represents_minus_one(f)
    if w is not None:
        assert lattice.square(w) == -2
        return MdsVerdict(Decision.MORI_DREAM, w, Fraction(-2), "class of self-intersection -2", d)
    return MdsVerdict(
        Decision.NOT_MORI_DREAM, None, None, "no class of self-intersection 0 or -2", d
    )


def mds_singular_pair(lattice: RankTwoLattice, d1: DivisorClass, d2: DivisorClass) -> bool:
    """The two-curve criterion: ``D1^2 <= 0``, ``D2^2 <= 0`` and ``D1.D2 > 0``.

    Effectiveness of ``d1`` and ``d2`` is the caller's assertion.
    """
    return lattice.square(d1) <= 0 and lattice.square(d2) <= 0 and lattice.dot(d1, d2) > 0


def second_negative_divisor(lattice: RankTwoLattice, d1: DivisorClass) -> tuple[int, int]:
    """Another class with the same negative square as ``d1`` and positive product with it.

    Walks the orbit of ``d1`` under the fundamental automorph of the
    (denominator-cleared, primitive) form until a class other than ``+-d1``
    with nonzero product shows up, then fixes the sign.
    """
    if any(Fraction(x).denominator != 1 for x in d1):
        raise ValueError("d1 must have integer coordinates in the lattice basis")
    d1 = tuple(int(x) for x in d1)
    alpha = lattice.square(d1)
    if alpha >= 0:
        raise NonNegativeSelfIntersection(f"D1^2 = {alpha} >= 0")
    f, _ = lattice.cleared_form()
    if qform.is_square(f.disc):
        raise SquareDiscriminant("lattice has isotropic classes")
    m = qform.fundamental_automorph(f.primitive())
    v = d1
    minus = (-d1[0], -d1[1])
    while True:
        v = qform.mat_apply(m, v)
        if v in (d1, minus):
            continue
        prod = lattice.dot(d1, v)
        if prod != 0:
            d2 = v if prod > 0 else (-v[0], -v[1])
            assert lattice.square(d2) == alpha and lattice.dot(d1, d2) > 0
            return d2


def same_discriminant_equivalent(lx: RankTwoLattice, ly: RankTwoLattice) -> bool:
    """Equal discriminant plus a common class of square ``2a`` (``0 <= 2a <= 6``)
    forces isometric lattices, hence the same Mori dream verdict.

    The class of square ``2a`` is taken to be the first basis vector.
    """
    if not (lx.is_even_integral and ly.is_even_integral):
        raise HypothesisViolated("both lattices must be even and integral")
    fx, fy = lx.smooth_form(), ly.smooth_form()
    if fx.a != fy.a:
        raise HypothesisViolated(f"first basis vectors have squares {2 * fx.a} and {2 * fy.a}")
    if not 0 <= fx.a <= 3:
        raise HypothesisViolated(f"2a = {2 * fx.a} outside [0, 6]")
    if lx.d != ly.d:
        raise HypothesisViolated(f"discriminants {lx.d} and {ly.d} differ")
    vx, vy = mds_smooth(lx), mds_smooth(ly)
    if qform.is_square(fx.disc):
        equivalent = True
    else:
        expected = qform.same_disc_normal_form(fx.a, fx.disc)
        nx, _ = qform.normalize_b(fx)
        ny, _ = qform.normalize_b(fy)
        equivalent = nx == ny and (nx.b, nx.c) == expected
    assert equivalent and vx.decision == vy.decision
    return equivalent


# --- resolutions ---------------------------------------------------------------

@dataclass(frozen=True)
class ResolutionModel:
    """Gram matrix of a resolution lattice with the exceptional classes marked.

    ``exceptional`` holds 0-based indices of the basis vectors ``E_i``.
    """

    gram: tuple
    exceptional: tuple[int, ...]
    block: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, gram, exceptional):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(g)
        if any(len(row) != n for row in g) or any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram must be square and symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise ValueError("resolution lattice must be even")
        ex = tuple(exceptional)
        if any(g[i][i] != -2 for i in ex):
            raise ValueError("exceptional classes must have square -2")
        block = tuple(tuple(g[i][j] for j in ex) for i in ex)
        if ex and not is_negative_definite(block):
            raise ValueError("exceptional block is not negative definite")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "exceptional", ex)
        object.__setattr__(self, "block", block)

    def exceptional_coefficients(self, dbar: Sequence[int]) -> list[Fraction]:
        """Coefficients of ``E_D`` on the exceptional classes."""
        if not self.exceptional:
            return []
        beta = [bilinear(self.gram, dbar, [int(k == i) for k in range(len(self.gram))]) for i in self.exceptional]
        # sum_k alpha_k E_k . E_i = -beta_i; the block is symmetric
        return solve_linear(self.block, [-b for b in beta])


def mumford_pullback(model: ResolutionModel, dbar: Sequence[int]) -> list[Fraction]:
    """``pi^* D = Dbar + E_D`` in ambient coordinates, orthogonal to every ``E_i``."""
    alpha = model.exceptional_coefficients(dbar)
    pull = [Fraction(x) for x in dbar]
    for k, a in zip(model.exceptional, alpha):
        pull[k] += a
    for i in model.exceptional:
        e = [int(k == i) for k in range(len(pull))]
        assert bilinear(model.gram, pull, e) == 0
    return pull


def fractional_part_data(model: ResolutionModel, dbar: Sequence[int]):
    """``({E_D}, floor(E_D), {E_D}^2)`` in exceptional coordinates."""
    alpha = model.exceptional_coefficients(dbar)
    fl = [floor(a) for a in alpha]
    frac = [a - f for a, f in zip(alpha, fl)]
    return frac, fl, bilinear(model.block, frac, frac)


def effectiveness_test(dsq, fracsq) -> Effectiveness:
    """``D^2 + {E_D}^2`` is an even integer; above -4 it means D or -D is effective."""
    total = Fraction(dsq) + Fraction(fracsq)
    if total.denominator != 1 or total.numerator % 2:
        raise ParityViolation(f"D^2 + {{E_D}}^2 = {total} is not an even integer")
    return Effectiveness.EFFECTIVE_UP_TO_SIGN if total > -4 else Effectiveness.INCONCLUSIVE
