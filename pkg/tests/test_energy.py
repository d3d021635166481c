import math

import numpy as np
import pytest

from relaylab.energy import (
    EbitResult,
    ebit_lower,
    ebit_ratio,
    ebit_ratio_curve,
    ebit_report,
    ebit_upper_baf,
    ebit_upper_bspdf,
    ebit_upper_df,
    worst_ratio,
)
from relaylab.energy import _gamma_infimum
from relaylab.errors import DomainError, OptimizerError

LN2 = math.log(2.0)

# refined worst-case upper/lower ratios, frozen at build time
WORST_BAF = 2.8502244591714487
WORST_BSPDF = 1.877504752455253


def test_lower_bound_values():
    assert ebit_lower(1.0, 1.0) == pytest.approx(math.sqrt(8.0) * LN2, rel=1e-14)
    assert ebit_lower(1.0, 10.0) == pytest.approx(12.0 * LN2 / 10.0, rel=1e-14)
    assert ebit_lower(2.0, 0.5, n0=3.0) == pytest.approx(
        (2.0 + 1.0) * 3.0 * LN2 / 1.0, rel=1e-14
    )


def test_lower_bound_continuity_at_breakpoints():
    for hb in (0.5, 2.0):
        left = ebit_lower(1.0, hb - 1e-12)
        right = ebit_lower(1.0, hb + 1e-12)
        assert left == pytest.approx(right, rel=1e-9)


def test_df_upper_values():
    assert ebit_upper_df(1.0, 1.0) == pytest.approx(3.0 * LN2, rel=1e-14)
    # identical to the lower bound in the beamform-limited regime
    for x in (0.1, 0.3, 0.5):
        assert ebit_upper_df(1.0, x) == ebit_lower(1.0, x)


def test_df_ratio_approaches_two():
    assert ebit_ratio("df", 1.0) == pytest.approx(3.0 / math.sqrt(8.0), rel=1e-12)
    r = [ebit_ratio("df", x) for x in (1e2, 1e3, 1e4)]
    assert r[0] < r[1] < r[2] < 2.0
    assert r[1] == pytest.approx(2.0, abs=0.01)


def test_baf_fixed_point_upper_bounds_infimum():
    # beta = gamma = 1 at unit gains evaluates to exactly 6.0
    fixed = 2.0 * 3.0 * LN2 / (1.0 * math.log(1.0 + 4.0 / (2.0 + 1.0 + 1.0)))
    assert fixed == pytest.approx(6.0, rel=1e-14)
    assert ebit_upper_baf(1.0, 1.0) <= fixed


def test_baf_ratio_tends_to_one_in_the_tails():
    mid = ebit_ratio("baf", 1.0)
    lo = ebit_ratio("baf", 1e-3)
    hi = ebit_ratio("baf", 1e3)
    assert lo < mid and hi < mid
    assert lo < 1.8 and hi < 1.35


def test_worst_ratios_frozen():
    x_baf, r_baf = worst_ratio("baf")
    assert r_baf == pytest.approx(WORST_BAF, abs=1e-6)
    x_bspdf, r_bspdf = worst_ratio("bspdf")
    assert r_bspdf == pytest.approx(WORST_BSPDF, abs=1e-6)
    assert 0.1 < x_baf < 1.0 and 5.0 < x_bspdf < 100.0


def test_bspdf_ratio_one_below_half():
    for x in (0.1, 0.3, 0.5):
        assert ebit_ratio("bspdf", x) == pytest.approx(1.0, abs=1e-6)


def test_bspdf_never_worse_than_df_or_baf():
    # the burst-density supremum is approached, not attained, so allow a
    # relative epsilon where the schemes coincide
    for x in np.geomspace(1e-2, 1e2, 9):
        e_bspdf = ebit_upper_bspdf(1.0, float(x))
        e_df = ebit_upper_df(1.0, float(x))
        e_baf = ebit_upper_baf(1.0, float(x))
        assert e_bspdf <= min(e_df, e_baf) * (1.0 + 1e-8)


def test_ratio_at_least_one():
    for scheme in ("df", "baf", "bspdf"):
        for x in np.geomspace(1e-2, 1e2, 7):
            assert ebit_ratio(scheme, float(x)) >= 1.0 - 1e-9


def test_ratio_scale_invariance():
    for x in (0.3, 1.0, 20.0):
        small = ebit_upper_baf(1e-3, 1e-3 * x) / ebit_lower(1e-3, 1e-3 * x)
        assert small == pytest.approx(ebit_ratio("baf", x), abs=1e-6)


def test_ratio_curve_points():
    pts = ebit_ratio_curve("df", [0.5, 1.0, 2.0])
    assert [p.x for p in pts] == [0.5, 1.0, 2.0]
    assert all(p.scheme == "df" for p in pts)
    assert pts[0].y == pytest.approx(1.0)


def test_report_invariants():
    report = ebit_report(1.0, 1.0)
    assert isinstance(report, EbitResult)
    assert report.lower > 0.0
    for name in ("df", "baf", "bspdf"):
        assert report.ratios[name] >= 1.0 - 1e-9
        assert report.gamma_star[name] > 0.0
    assert report.gamma_star["df"] == pytest.approx(0.25)


def test_energy_n0_scaling():
    assert ebit_upper_df(1.0, 1.0, n0=2.0) == pytest.approx(
        2.0 * ebit_upper_df(1.0, 1.0), rel=1e-14
    )
    assert ebit_lower(1.0, 3.0, n0=2.0) == pytest.approx(
        2.0 * ebit_lower(1.0, 3.0), rel=1e-14
    )


def test_invalid_inputs():
    with pytest.raises(DomainError):
        ebit_lower(0.0, 1.0)
    with pytest.raises(DomainError):
        ebit_upper_df(1.0, -1.0)
    with pytest.raises(DomainError):
        ebit_ratio("nope", 1.0)


def test_gamma_bracket_edge_is_reported():
    # a constant rate makes the objective monotone in gamma: the infimum
    # escapes the bracket and must be reported, not silently clipped
    with pytest.raises(OptimizerError):
        _gamma_infimum(lambda c: 1.0, 1.0, 1.0, 1.0)
