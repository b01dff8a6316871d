from fractions import Fraction

import pytest
import sympy

from fanocheck.assets import UnknownScenario, load_asset
from fanocheck.report import EVIDENCE, FLAGGED
from fanocheck.scen317 import Scenario317, family_er_bound, run_all_317
from fanocheck.zariski import s_partial


def test_ring_reference_is_expanded(sc317):
    Xt = sc317.rings["Xt"]
    assert Xt.basis[-1] == "E"
    assert sc317.rings["X"].basis == Xt.basis[:-1]


def test_blowup_degree(sc317):
    # (-K_Xt)^3 = 36 - 2(-K.C) + 2g - 2 with -K.C = 6 for C = E1.E2
    from fanocheck.chow import numeric

    Xt = sc317.rings["Xt"]
    assert numeric(Xt.cube(Xt.anticanonical())) == 36 - 2 * 6 - 2


def test_branch_choice_at_the_wall(sc317):
    branch, bound = family_er_bound(sc317, 7, 2)
    assert branch == 2 and bound > 2
    branch, bound = family_er_bound(sc317, 3, 1)
    assert branch == 1 and bound == Fraction(1, 9)


def test_second_branch_bound_against_sympy(sc317):
    a, b = sympy.symbols("a b", positive=True)
    t = 2 * b / (a + b)
    S = t - t**3 / 6 + t**4 / 36
    for av, bv in [(7, 2), (10, 1), (20, 5)]:
        ref = (a + 2 * b - (a + b) * (S + sympy.Rational(4, 9))).subs({a: av, b: bv})
        assert family_er_bound(sc317, av, bv)[1] == Fraction(str(sympy.nsimplify(ref)))


def test_partial_S_is_increasing_below_the_wall(sc317):
    cert = sc317.certificate("E")
    ts = [Fraction(k, 36) for k in range(17)]
    vals = [s_partial(cert, t) for t in ts]
    assert vals == sorted(vals) and vals[-1] < Fraction(5, 9)


def test_statuses(reports317):
    assert reports317["s-partial-E-printed"].status == FLAGGED
    assert reports317["family-Ehat-Rprime-printed"].status == FLAGGED
    assert reports317["nef-evidence-E"].status == EVIDENCE
    assert all(r.ok for r in reports317.values())


def test_small_grid_and_depth(sc317):
    reps = {r.checkId: r for r in run_all_317(sc317, depth=4, grid=5, only=["families", "chain"])}
    assert "chain-depth-4" in reps and reps["family-E-R-grid"].ok


def test_asset_override(tmp_path, monkeypatch):
    import json

    data = load_asset("3-17")
    data["minusK_cube"] = 35
    (tmp_path / "3-17.json").write_text(json.dumps(data))
    monkeypatch.setenv("FANOCHECK_ASSETS", str(tmp_path))
    reps = {r.checkId: r for r in run_all_317(Scenario317(), only=["ring"])}
    assert not reps["minusK-cube"].ok
    with pytest.raises(UnknownScenario):
        load_asset("1-1")
