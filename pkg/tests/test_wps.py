from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3dream.errors import DimensionMismatch, Inconsistent, Underdetermined
from k3dream.wps import (
    LedgerProblem,
    evaluate,
    ledger_solve,
    ledger_values,
    monomial,
    monomial_name,
    parse_expression,
    parse_relation,
    paut_check,
    wps_intersection,
)

F = Fraction


@pytest.mark.parametrize(
    "weights, degrees, value",
    [
        ((1, 3, 7, 10), (21, 12, 12), F(72, 5)),
        ((1, 1, 4, 6), (12, 4, 4), F(8)),
        ((1, 1, 1, 2), (5, 1, 1), F(5, 2)),
        ((1, 3, 7, 10), (21, 1, 1), F(1, 10)),
    ],
)
def test_wps_examples(weights, degrees, value):
    assert wps_intersection(weights, degrees) == value


def test_wps_errors():
    with pytest.raises(DimensionMismatch):
        wps_intersection((1, 1, 1, 2), (5, 1))
    with pytest.raises(ValueError):
        wps_intersection((1, 0, 1), (1, 1))


@given(st.lists(st.integers(1, 12), min_size=2, max_size=5), st.data())
def test_wps_multilinear(weights, data):
    degrees = data.draw(st.lists(st.integers(1, 30), min_size=len(weights) - 1, max_size=len(weights) - 1))
    i = data.draw(st.integers(0, len(degrees) - 1))
    doubled = list(degrees)
    doubled[i] *= 2
    assert wps_intersection(weights, doubled) == 2 * wps_intersection(weights, degrees)


@pytest.mark.parametrize("args, ok", [((10, 1, 9), True), ((27, 10, 1), True), ((24, 9, 2), False), ((25, 8, 1), True)])
def test_paut(args, ok):
    assert paut_check(*args) is ok


# --- parsing -----------------------------------------------------------------------------

def test_parse_products():
    assert parse_expression("(G1 + G2)^2") == {("G1", "G1"): 1, ("G1", "G2"): 2, ("G2", "G2"): 1}
    assert parse_expression("4H.G1") == {("G1", "H"): 4}
    assert parse_expression("3/5") == {(): F(3, 5)}
    assert parse_relation("12H = G1 + G2") == {("H",): 12, ("G1",): -1, ("G2",): -1}
    assert parse_expression("-G1 + 2 G2") == {("G1",): -1, ("G2",): 2}


def test_parse_errors():
    for bad in ("G1 ^", "G1 + ", "(G1", "G1 $ G2", "G1.G2.H"):
        with pytest.raises(ValueError):
            parse_expression(bad)
    with pytest.raises(ValueError):
        parse_relation("G1 = G2 = H")


def test_monomials():
    assert monomial("G2.G1") == ("G1", "G2")
    assert monomial_name(monomial("G1*G1")) == "G1^2"
    with pytest.raises(ValueError):
        monomial("2 G1.G2")


# --- ledger ----------------------------------------------------------------------------

def x10():
    knowns = {"H^2": F(2, 3), "H.G1": 1, "G1.G2": 5, "G1.G3": 7}
    return LedgerProblem(["G1^2", "G2^2", "G3^2"], ["3H = G1 + G2", "5H = G1 + G3"], knowns)


def test_ledger_x10():
    assert ledger_solve(x10()) == {"G1^2": -2, "G2^2": -2, "G3^2": F(14, 3)}


def test_ledger_x9():
    knowns = {"H^2": F(3, 4), "H.G1": 1, "G1.G2": 5, "G1.G3": 6}
    p = LedgerProblem(["G1^2", "G2^2", "G3^2"], ["3H = G1 + G2", "4H = G1 + G3"], knowns)
    assert ledger_solve(p) == {"G1^2": -2, "G2^2": F(-5, 4), "G3^2": 2}


def test_ledger_x21_with_given_multiplicities():
    knowns = {"H^2": F(1, 10), "H.G1": F(3, 5), "G1.G2": F(38, 5)}
    p = LedgerProblem(["G1^2", "G2^2", "G1.G2"], ["12H = G1 + G2"], knowns)
    assert ledger_solve(p) == {"G1^2": F(-2, 5), "G2^2": F(-2, 5), "G1.G2": F(38, 5)}


def test_ledger_underdetermined():
    with pytest.raises(Underdetermined):
        ledger_solve(LedgerProblem(["G1^2", "G2^2"], ["G1^2 + G2^2 = 3"]))


def test_ledger_inconsistent():
    with pytest.raises(Inconsistent):
        ledger_solve(LedgerProblem(["G1^2"], ["G1^2 = 1", "G1^2 = 2"]))


def test_ledger_rejects_mixed_relation():
    with pytest.raises(ValueError):
        LedgerProblem(["G1^2"], ["G1 + G1^2 = 1"]).equations()


def test_ledger_residuals_vanish():
    p = x10()
    values = ledger_values(p)
    for eq in p.equations():
        assert evaluate(eq, values) == 0


@given(st.fractions(max_denominator=12), st.integers(1, 6), st.integers(1, 6), st.fractions(max_denominator=12))
def test_ledger_random_pencil(h2, m, n, g1h):
    # mH = G1 + G2 with H^2, H.G1 and G1.G2 known pins down both squares
    g12 = F(n)
    knowns = {"H^2": h2, "H.G1": g1h, "G1.G2": g12}
    out = ledger_solve(LedgerProblem(["G1^2", "G2^2"], [f"{m}H = G1 + G2"], knowns))
    g1sq = m * g1h - g12
    hg2 = m * h2 - g1h
    assert out == {"G1^2": g1sq, "G2^2": m * hg2 - g12}
    assert out["G1^2"] + 2 * g12 + out["G2^2"] == m * m * h2
