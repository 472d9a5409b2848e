"""Indefinite integral binary quadratic forms ``a x^2 + b x y + c y^2``.

Conventions used throughout:

* A unimodular matrix ``U = ((p, q), (r, s))`` acts on column vectors and on
  forms by substitution: ``transform(f, U)(v) == f(U v)``.
* Every comparison against ``sqrt(D)`` is done on squares, so the code is exact
  for discriminants of any size.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, Optional

from .errors import (
    AOutOfRange,
    NonPositiveDiscriminant,
    NotASolution,
    NotPrimitive,
    NotUnimodular,
    SquareDiscriminant,
)
from .linalg import _xgcd

Unimodular = tuple[tuple[int, int], tuple[int, int]]
IDENTITY: Unimodular = ((1, 0), (0, 1))


@dataclass(frozen=True)
class QForm:
    a: int
    b: int
    c: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def primitive(self) -> "QForm":
        g = self.content() or 1
        return QForm(self.a // g, self.b // g, self.c // g)


@dataclass(frozen=True)
class PellSolution:
    t: int
    u: int
    delta: int

    def __post_init__(self):
        assert self.t * self.t - self.delta * self.u * self.u == 4


def discriminant(f: QForm) -> int:
    return f.disc


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _require_indefinite(delta: int) -> None:
    if delta <= 0:
        raise NonPositiveDiscriminant(f"discriminant {delta} is not positive")
    if is_square(delta):
        raise SquareDiscriminant(f"discriminant {delta} is a perfect square")


def mat_mul(m: Unimodular, n: Unimodular) -> Unimodular:
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_det(m: Unimodular) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_apply(m: Unimodular, v: tuple[int, int]) -> tuple[int, int]:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def mat_inverse(m: Unimodular) -> Unimodular:
    d = mat_det(m)
    if d not in (1, -1):
        raise NotUnimodular(f"determinant {d}")
    (a, b), (c, e) = m
    return ((e * d, -b * d), (-c * d, a * d))


def transform(f: QForm, u: Unimodular) -> QForm:
    """The form ``v -> f(U v)``."""
    if mat_det(u) not in (1, -1):
        raise NotUnimodular(f"determinant {mat_det(u)}")
    (p, q), (r, s) = u
    a, b, c = f
    return QForm(f(p, r), 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s, f(q, s))


def normalize_b(f: QForm) -> tuple[QForm, Unimodular]:
    """Shear and reflect until ``0 <= b <= |a|``; ``a`` is untouched."""
    if f.a == 0:
        raise ValueError("normalize_b needs a != 0")
    m = 2 * abs(f.a)
    b = f.b % m
    if b > abs(f.a):
        b -= m
    # shear (x, y) -> (x + k y, y) sends b to b + 2 a k
    k = (b - f.b) // (2 * f.a)
    u: Unimodular = ((1, k), (0, 1))
    g = transform(f, u)
    if g.b < 0:
        u = mat_mul(u, ((1, 0), (0, -1)))
        g = transform(f, u)
    return g, u


def isotropic_vector(f: QForm) -> Optional[tuple[int, int]]:
    """A primitive nonzero zero of ``f``, or None if the discriminant is not a square."""
    delta = f.disc
    if not is_square(delta):
        return None
    if f.a == 0:
        return (1, 0)
    # 4a f(x, y) = (2ax + (b - r) y)(2ax + (b + r) y)
    r = isqrt(delta)
    x, y = r - f.b, 2 * f.a
    g = gcd(x, y)
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    assert f(x, y) == 0
    return (x, y)


# --- reduction theory -------------------------------------------------------

def _lt_sqrt(x: int, delta: int) -> bool:
    # x < sqrt(delta), delta not a square
    return x < 0 or x * x < delta


def is_reduced(f: QForm) -> bool:
    """0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b."""
    delta = f.disc
    a2 = 2 * abs(f.a)
    return (
        0 < f.b
        and f.b * f.b < delta
        and (a2 + f.b) ** 2 > delta
        and _lt_sqrt(a2 - f.b, delta)
    )


def _rho(f: QForm, s: int) -> tuple[QForm, Unimodular]:
    # neighbour (c, b', *) with b' = -b (mod 2|c|); s = isqrt(D)
    a, b, c = f
    delta = f.disc
    m = 2 * abs(c)
    if abs(c) * abs(c) < delta:
        # sqrt(D) - 2|c| < b' < sqrt(D)
        b1 = s - (s + b) % m
    else:
        # -|c| < b' <= |c|
        b1 = (-b) % m
        if b1 > abs(c):
            b1 -= m
    t = (b1 + b) // (2 * c)
    u: Unimodular = ((0, -1), (1, t))
    g = QForm(c, b1, (b1 * b1 - delta) // (4 * c))
    return g, u


def reduction_path(f: QForm) -> Iterator[tuple[QForm, Unimodular]]:
    """Yield ``(g, U)`` with ``g == transform(f, U)``: first the forms met while
    reducing ``f``, then one full period of its reduced cycle (the reduced form
    that starts the cycle is yielded again at the end)."""
    delta = f.disc
    _require_indefinite(delta)
    s = isqrt(delta)
    g, u = f, IDENTITY
    yield g, u
    while not is_reduced(g):
        step, m = _rho(g, s)
        g, u = step, mat_mul(u, m)
        yield g, u
    start = g
    while True:
        g, m = _rho(g, s)
        u = mat_mul(u, m)
        yield g, u
        if g == start:
            return


def reduced_cycle(f: QForm) -> list[QForm]:
    """The full cycle of reduced forms properly equivalent to ``f``."""
    forms = [g for g, _ in reduction_path(f)]
    start = next(i for i, g in enumerate(forms) if is_reduced(g))
    return forms[start:-1]


def _cycle_with_transforms(f: QForm) -> list[tuple[QForm, Unimodular]]:
    path = list(reduction_path(f))
    start = next(i for i, (g, _) in enumerate(path) if is_reduced(g))
    return path[start:-1]


def represents_minus_one(f: QForm) -> Optional[tuple[int, int]]:
    """Solve ``f(x, y) = -1`` or prove there is no solution.

    Since ``1 < sqrt(D)/2`` for every positive non-square discriminant, a form
    represents -1 exactly when some form of its reduced cycle has first
    coefficient -1. The witness is read off the first column of the transform
    that reaches that form.
    """
    _require_indefinite(f.disc)
    if f.a == -1:
        return (1, 0)
    if f.c == -1:
        return (0, 1)
    for g, u in reduction_path(f):
        if g.a == -1:
            w = (u[0][0], u[1][0])
            assert f(*w) == -1
            return w
    return None


# --- automorphs and Pell ----------------------------------------------------

def _convergents(P: int, Q: int, D: int) -> Iterator[tuple[int, int]]:
    # convergents of (P + sqrt(D))/Q; requires Q | D - P^2 and D not a square
    s = isqrt(D)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while True:
        a = (P + s) // Q if Q > 0 else -((P + s) // -Q) - 1
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q
        P = a * Q - P
        Q = (D - P * P) // Q


def _cf_pell4(delta: int, max_steps: int) -> Optional[tuple[int, int]]:
    # w = (sigma + sqrt(D))/2; for a convergent p/q of w, t = 2p - sigma q and
    # u = q satisfy t^2 - D u^2 = 4 (p^2 - sigma p q - q^2 (D - sigma)/4)
    sigma = delta % 2
    for step, (p, q) in enumerate(_convergents(sigma, 2, delta)):
        t = 2 * p - sigma * q
        if t > 0 and t * t - delta * q * q == 4:
            return t, q
        if step > max_steps:
            return None


def _cf_pell1(delta: int) -> tuple[int, int]:
    # minimal x^2 - D y^2 = 1 from the continued fraction of sqrt(D)
    for p, q in _convergents(0, 1, delta):
        if p * p - delta * q * q == 1:
            return p, q


def pell4(delta: int) -> PellSolution:
    """Minimal ``t, u > 0`` with ``t^2 - delta u^2 = 4``."""
    _require_indefinite(delta)
    # the period of the expansion is O(sqrt(D) log D); this cap is never hit in practice
    found = _cf_pell4(delta, 64 * (isqrt(delta) + 1) * delta.bit_length())
    if found is None:
        x, y = _cf_pell1(delta)
        found = (2 * x, 2 * y)
    return PellSolution(found[0], found[1], delta)


def fundamental_automorph(f: QForm) -> Unimodular:
    """Generator (up to sign) of the proper automorphism group of a primitive ``f``."""
    a, b, c = f
    sol = pell4(f.disc)
    t, u = sol.t, sol.u
    assert (t - b * u) % 2 == 0
    m: Unimodular = (((t - b * u) // 2, -c * u), (a * u, (t + b * u) // 2))
    assert mat_det(m) == 1 and transform(f, m) == f
    return m


def _orbit_region_bound(f: QForm, n: int, sol: PellSolution) -> int:
    # Writing L1, L2 = 2ax + (b -+ sqrt D) y, the automorph scales L1/L2 by eps^2
    # with eps = (t + u sqrt D)/2, so every orbit meets |y| <= sqrt(|aN|)(eps^1/2 + eps^-1/2)/sqrt(D).
    # Squaring: y^2 <= |aN| (eps + 1/eps + 2) / D, and eps + 1/eps = t.
    return isqrt(abs(f.a * n) * (sol.t + 2) // f.disc) + 1


def represent(f: QForm, n: int, budget: int = 64) -> list[tuple[int, int]]:
    """Solutions of ``f(x, y) = n`` found within ``budget``.

    Base solutions come from an exhaustive scan of ``|y| <= Y`` where ``Y`` is
    the orbit-region bound capped at ``budget**2``; each is then pushed along
    the automorph orbit ``budget`` steps in both directions, together with its
    negative. An empty list is a proof of non-representability only when the
    uncapped bound was used (or for ``n = -1``, see ``represents_minus_one``).
    """
    delta = f.disc
    _require_indefinite(delta)
    if n == 0:
        return []
    prim = f.primitive()
    sol = pell4(delta // (f.content() ** 2))
    m = fundamental_automorph(prim)
    minv = mat_inverse(m)
    ybound = min(_orbit_region_bound(f, n, sol), max(budget, 1) ** 2)

    base = set()
    a, b, c = f
    for y in range(-ybound, ybound + 1):
        # a x^2 + (b y) x + (c y^2 - n) = 0
        disc = delta * y * y + 4 * a * n
        if not is_square(disc):
            continue
        r = isqrt(disc)
        for num in (-b * y + r, -b * y - r):
            if num % (2 * a) == 0:
                base.add((num // (2 * a), y))

    found = set()
    for v in base:
        for start in (v, (-v[0], -v[1])):
            found.add(start)
            fwd = bwd = start
            for _ in range(budget):
                fwd = mat_apply(m, fwd)
                bwd = mat_apply(minv, bwd)
                found.update((fwd, bwd))
    assert all(f(*v) == n for v in found)
    return sorted(found, key=lambda v: (max(abs(v[0]), abs(v[1])), v))


def canonicalize_minus2(f: QForm, sol: tuple[int, int]) -> tuple[QForm, Unimodular]:
    """Bring ``f`` with ``f(sol) = -1`` to ``-x^2 + D/4 y^2`` or ``-x^2 + xy + (D-1)/4 y^2``.

    Returns ``(g, U)`` with ``g == transform(f, U)``; ``U`` sends ``(1, 0)`` to
    ``sol``.
    """
    x0, y0 = sol
    if f(x0, y0) != -1:
        raise NotASolution(f"f{sol} = {f(x0, y0)}, not -1")
    g_, s, t = _xgcd(x0, y0)
    if g_ != 1:
        raise NotPrimitive(f"gcd{sol} = {g_}")
    u: Unimodular = ((x0, -t), (y0, s))
    g = transform(f, u)
    assert g.a == -1
    # shear (x, y) -> (x + k y, y) moves b by -2k
    k = (g.b - g.b % 2) // 2
    u = mat_mul(u, ((1, k), (0, 1)))
    g = transform(f, u)
    assert g.a == -1 and g.b in (0, 1)
    return g, u


def same_disc_normal_form(a: int, d: int) -> Optional[tuple[int, int]]:
    """The unique ``(b, c)`` with ``0 <= b <= a``, ``b^2 - 4ac = d``; None if absent."""
    if a not in (1, 2, 3):
        raise AOutOfRange(f"a = {a} not in 1..3")
    hits = [b for b in range(a + 1) if (b * b - d) % (4 * a) == 0]
    if not hits:
        return None
    assert len(hits) == 1
    b = hits[0]
    return b, (b * b - d) // (4 * a)
