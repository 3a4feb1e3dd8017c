import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

import pgnlab

PHI = "alg:-1,-1,1@[1,2]"
SQRT2 = "alg:-2,0,1@[1,2]"
CBRT2 = "alg:-2,0,0,1@[1,2]"


def test_target_parsing_and_enclosure():
    t = pgnlab.Target(SQRT2)
    assert t.id == SQRT2
    assert t.degree == 2
    lo, hi = t.enclosure(80)
    assert isinstance(lo, Fraction)
    assert lo <= Fraction(14142135623730951, 10**16) <= hi or abs(float(lo) - math.sqrt(2)) < 1e-15
    assert hi - lo <= Fraction(1, 2**80)
    assert lo * lo <= 2 <= hi * hi
    with pytest.raises(pgnlab.ParseError):
        pgnlab.Target("alg:1,2@[0")


def test_refusal():
    refused, why = pgnlab.refuse_target(pgnlab.Target("rat:1/3"), 2)
    assert refused and "degree 1" in why
    assert pgnlab.refuse_target(pgnlab.Target(CBRT2), 2) == (False, "")


def test_profile_and_minkowski():
    t = pgnlab.Target(PHI)
    grid = pgnlab.q_grid(10, 30, 10)
    assert grid[0] == "10"
    primal = pgnlab.psi_profile(t, 1, "primal", grid)
    linear = pgnlab.psi_profile(t, 1, "linear", grid)
    assert len(primal) == 21 and primal.family == "Primal"
    psi1, psi2 = primal.psi(1), primal.psi(2)
    assert all(a <= b + 1e-12 for a, b in zip(psi1, psi2))
    # Minkowski: 1/(n+1)! <= product of minima <= 1, certified
    for row in pgnlab.minkowski_check(linear):
        lo, hi = row["product"]
        assert row["lower"] == Fraction(1, 2)
        assert lo >= row["lower"] and hi <= 1
    again = pgnlab.Profile.from_csv(primal.to_csv())
    assert again.psi(1) == pytest.approx(psi1, abs=1e-12)
    svg = pgnlab.profile_svg([primal, linear])
    root = ET.fromstring(svg.encode())
    assert len([e for e in root.iter() if e.tag.endswith("polyline")]) == 4


def test_exponent_report_golden_ratio():
    t = pgnlab.Target(PHI)
    grid = pgnlab.q_grid(10, 50, 10)
    primal = pgnlab.psi_profile(t, 1, "primal", grid)
    linear = pgnlab.psi_profile(t, 1, "linear", grid)
    rep = pgnlab.exponent_report(t, 1, primal, linear)
    assert not rep["refused"]
    statuses = {v["name"]: v["status"] for v in rep["verdicts"]}
    assert statuses["minkowski"] == "pass"
    assert "fail" not in statuses.values()
    assert pgnlab.exponent_from_psi(0.0, 1) == pytest.approx(1.0)
    assert pgnlab.exponent_from_nu(0.0, 2) == pytest.approx(2.0)


def test_slab_volume_exact():
    assert pgnlab.slab_cube_volume([1, 2], 1) == 2
    assert pgnlab.slab_cube_volume([Fraction(1, 3), 1, 1], 100) == 8
    assert pgnlab.slab_cube_volume([1, 1], 0) == 0
    est, sigma = pgnlab.monte_carlo_volume([1.0, 2.0], 1.0, 200000, 3)
    assert abs(est - 2) <= 4 * sigma


def test_compression_is_q_independent():
    t = pgnlab.Target(CBRT2)
    a = pgnlab.solve_compression(2, "100", t)
    b = pgnlab.solve_compression(2, "10^(7/2)", t)
    assert a["c"] == b["c"]
    lo, hi = a["residual"]
    assert max(abs(lo), abs(hi)) < Fraction(1, 2**50)
    sweep = pgnlab.lemma_sweep(2, t, pgnlab.q_grid(10, 20, 10), [1e-3, 1e-2, 1e-1])
    assert 0 < sweep["F"] <= sweep["E"] and sweep["B"] > 0


def test_best_ratio_sqrt2():
    t = pgnlab.Target(SQRT2)
    b = pgnlab.best_ratio(t, 1, 3)
    assert b["coeffs"] == [-3, 2]
    assert b["wstar"] == pytest.approx(1.2354, abs=1e-3)
    with pytest.raises(pgnlab.TargetIsAlgebraicOfLowHeight):
        pgnlab.best_ratio(t, 2, 3)
    with pytest.raises(pgnlab.BudgetExceeded):
        pgnlab.best_ratio(t, 1, 10**6, budget=10)


def test_root_proximity():
    t = pgnlab.Target(SQRT2)
    w = pgnlab.nearest_root([-3, 2], t)
    assert w["height"] == "3"
    v = pgnlab.acc_check([-3, 2], t)
    assert v["status"] == "pass"
    v = pgnlab.acc_check([-1, 0, 0, 1], pgnlab.Target("rat:3/2"))
    assert v["status"] in ("pass", "inconclusive")


def test_wstar_profile_tail():
    table = pgnlab.wstar_profile(pgnlab.Target(SQRT2), 1, pgnlab.h_grid(1, 8, 2))
    assert [r["H"] for r in table["rows"]] [:6] == [3, 10, 32, 100, 316, 1000]
    assert 0.8 <= float(table["tail"]["inf"]) <= float(table["tail"]["sup"]) <= 1.3


def test_uniform_bound():
    u = pgnlab.uniform_lower_bound(3)
    lo, hi = u["value"]
    assert float(lo) == pytest.approx(1 + math.sqrt(2), abs=1e-12)
    table = pgnlab.uniform_table(2, 50)
    assert all(v["status"] == "pass" for v in table["verdicts"])
    with pytest.raises(pgnlab.InvalidParameter):
        pgnlab.uniform_lower_bound(1)
