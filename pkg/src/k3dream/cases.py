"""Registry of worked examples and the pipelines that re-verify them."""
from __future__ import annotations

import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import an, mori
from .errors import K3DreamError, UnknownCase
from .linalg import QuadricSpec, bilinear, congruent, enumerate_quadric, orthogonal_complement, solve_linear, transpose
from .wps import LedgerProblem, evaluate, ledger_values, monomial, parse_expression, parse_rational, paut_check, wps_intersection

REGISTRY_ENV = "K3DREAM_REGISTRY"


def fmt(x) -> str:
    """Exact text form of a number: ``"p/q"`` or ``"n"``."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(fmt(v) for v in x) + "]"
    return str(x)


@dataclass
class Check:
    name: str
    expected: str
    computed: str
    passed: bool
    paper_tag: str = ""

    @classmethod
    def compare(cls, name: str, expected, computed, tag: str = "") -> "Check":
        e, c = fmt(expected), fmt(computed)
        return cls(name, e, c, e == c, tag)


@dataclass
class CaseReport:
    name: str
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "title": self.title, "passed": self.passed, "checks": [asdict(c) for c in self.checks]}


def registry_path() -> Path:
    override = os.environ.get(REGISTRY_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("k3dream") / "registry.toml"))


def load_registry(path: str | os.PathLike | None = None) -> dict[str, Any]:
    with open(path or registry_path(), "rb") as fh:
        data = tomllib.load(fh)
    if data.get("version") != 1:
        raise ValueError(f"unsupported registry version {data.get('version')!r}")
    return data.get("cases", {})


def case_names(registry: dict | None = None) -> list[str]:
    return list((registry if registry is not None else load_registry()).keys())


# --- pipelines ---------------------------------------------------------------

def _run_wps(spec: dict, report: CaseReport) -> None:
    tags = spec.get("tags", {})
    weights = spec["weights"]
    knowns = {}
    for key, value in spec.get("intersections", {}).items():
        knowns[key] = wps_intersection(weights, value) if isinstance(value, list) else parse_rational(value)
    expected = spec.get("expected", {})
    problem = LedgerProblem(list(expected), spec.get("relations", []), knowns)
    values = ledger_values(problem)

    for key, want in expected.items():
        got = values.get(monomial(key), "undetermined")
        report.checks.append(Check.compare(key, parse_rational(want), got, tags.get(key, "")))

    for expr, degrees in spec.get("checks", {}).items():
        poly = parse_expression(expr)
        try:
            got = evaluate(poly, values)
        except KeyError:
            got = "undetermined"
        report.checks.append(Check.compare(expr, wps_intersection(weights, degrees), got, tags.get(expr, "")))

    if "paut" in spec:
        report.checks.append(Check.compare("paut", True, paut_check(*spec["paut"]), tags.get("paut", "")))

    if "pair" in spec:
        s1, s2 = spec["pair"]
        try:
            g11 = values[monomial(f"{s1}^2")]
            g12 = values[monomial(f"{s1}.{s2}")]
            g22 = values[monomial(f"{s2}^2")]
            lattice = mori.RankTwoLattice.from_entries(g11, g12, g22)
            ok = mori.mds_singular_pair(lattice, (1, 0), (0, 1))
        except (KeyError, K3DreamError):
            ok = False
        report.checks.append(Check.compare(f"two-curve criterion {s1},{s2}", True, ok, tags.get("pair", "")))

    if "an" in spec:
        n = spec["an"]["n"]
        for sym, pos in spec["an"]["curves"].items():
            beta = [int(i == pos) for i in range(1, n + 1)]
            got = values.get(monomial(f"{sym}^2"), "undetermined")
            report.checks.append(Check.compare(f"{sym}^2 via A_{n} chain position {pos}", an.curve_selfint(n, beta), got))


def _quadric(gram, section: dict) -> QuadricSpec:
    basis, offset = section["basis"], section["offset"]
    q = congruent(gram, basis)
    linear = [2 * bilinear(gram, b, offset) for b in basis]
    return QuadricSpec(q, linear, bilinear(gram, offset, offset), parse_rational(section["target"]))


def _antipodal_pairs(points) -> int:
    return len({max(p, tuple(-x for x in p)) for p in points})


def _run_resolution(spec: dict, report: CaseReport) -> None:
    tags = spec.get("tags", {})
    gram = spec["gram"]
    pol = spec["polarization"]
    report.checks.append(Check.compare("polarization pairs evenly", True, all(x % 2 == 0 for x in gram[pol])))

    basis, cgram = orthogonal_complement(gram, spec["exceptional"])
    report.checks.append(
        Check.compare("complement gram", spec["expected_complement_gram"], cgram, tags.get("complement_gram", ""))
    )
    if len(cgram) == 2:
        verdict = mori.mds_smooth(mori.RankTwoLattice(cgram)).decision.value
        report.checks.append(
            Check.compare("complement verdict", spec["expected_complement_verdict"], verdict, tags.get("complement_verdict", ""))
        )

    for key in ("zero_quadric", "minus2_quadric"):
        if key not in spec:
            continue
        section = spec[key]
        points = enumerate_quadric(_quadric(gram, section))
        report.checks.append(Check.compare(f"{key} solutions", section["expected_count"], len(points), tags.get(key, "")))
        if "expected_pairs" in section:
            report.checks.append(
                Check.compare(f"{key} antipodal pairs", section["expected_pairs"], _antipodal_pairs(points), tags.get(key, ""))
            )

    model = mori.ResolutionModel(gram, spec["exceptional"])
    lattice = mori.RankTwoLattice(cgram)
    images = []
    for curve, want in zip(spec["curves"], spec["expected_pushforward_squares"]):
        pull = mori.mumford_pullback(model, curve)
        dsq = bilinear(gram, pull, pull)
        report.checks.append(Check.compare(f"pushforward square of {curve}", parse_rational(want), dsq, tags.get("pushforward", "")))
        _, _, fracsq = mori.fractional_part_data(model, curve)
        eff = mori.effectiveness_test(dsq, fracsq).value
        report.checks.append(Check.compare(f"effectiveness of {curve}", "EffectiveUpToSign", eff))
        coords = solve_linear(transpose(basis), pull)
        assert [sum(c * b[i] for c, b in zip(coords, basis)) for i in range(len(pull))] == pull
        images.append(tuple(coords))

    d1, d2 = images
    report.checks.append(
        Check.compare("pushforward product", parse_rational(spec["expected_pushforward_product"]), lattice.dot(d1, d2), tags.get("pair", ""))
    )
    report.checks.append(Check.compare("two-curve criterion", True, mori.mds_singular_pair(lattice, d1, d2), tags.get("pair", "")))


def parse_gram(text: str) -> mori.RankTwoLattice:
    parts = [parse_rational(p) for p in str(text).split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected g11,g12,g22, got {text!r}")
    return mori.RankTwoLattice.from_entries(*parts)


def _run_smooth(spec: dict, report: CaseReport) -> None:
    lattices = []
    for item in spec["lattices"]:
        lattice = parse_gram(item["gram"])
        lattices.append(lattice)
        tag = item.get("tag", "")
        report.checks.append(Check.compare(f"{item['label']} discriminant", item["expected_d"], lattice.d, tag))
        verdict = mori.mds_smooth(lattice)
        report.checks.append(Check.compare(f"{item['label']} verdict", item["expected"], verdict.decision.value, tag))
    for item in spec.get("equivalences", []):
        i, j = item["pair"]
        try:
            outcome = "equivalent" if mori.same_discriminant_equivalent(lattices[i], lattices[j]) else "inequivalent"
        except K3DreamError as exc:
            outcome = type(exc).__name__
        report.checks.append(Check.compare(f"equal-discriminant test {i},{j}", item["expected"], outcome, item.get("tag", "")))


_PIPELINES = {"wps": _run_wps, "resolution": _run_resolution, "smooth": _run_smooth}


def run_case(name: str, registry: dict | None = None) -> CaseReport:
    registry = registry if registry is not None else load_registry()
    if name not in registry:
        raise UnknownCase(f"unknown case {name!r}; known: {', '.join(registry)}")
    spec = registry[name]
    report = CaseReport(name, spec.get("title", name))
    _PIPELINES[spec["kind"]](spec, report)
    return report


def run_all(registry: dict | None = None) -> list[CaseReport]:
    registry = registry if registry is not None else load_registry()
    return [run_case(name, registry) for name in registry]
