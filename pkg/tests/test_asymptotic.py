import math

import numpy as np
import pytest

from relaylab import bounds
from relaylab.asymptotic import (
    CurvePoint,
    TimeshareEnvelope,
    abaf,
    abaf_asym,
    abafdf,
    abspdf_asym11,
    abspdf_asym12,
    abspdf_sym2,
    abspdf_symN,
    adf,
    adf_asym,
    atspdf_sym2,
    evaluate_asym,
    evaluate_sym,
    timeshare_envelope,
)
from relaylab.asymptotic import _bafdf_value, _gauss_cap_dest, _thm_sym2_caps
from relaylab.errors import DomainError

LN2 = math.log(2.0)

# optimizer-frozen regression constants (cross-checked against dense
# 1-D/2-D grids at build time)
ABAF_X1_N2 = 0.5061689216253342
ABSPDF_X1 = 0.7556027927875835
ABAFDF_X100 = 0.14288539607478937


def test_adf_values():
    assert adf(0.25, 2) == pytest.approx(1.0 / (2.0 * LN2), abs=1e-12)
    assert adf(0.1, 2) == pytest.approx(0.4 / (2.0 * LN2), rel=1e-14)
    assert adf(1e9, 2) == pytest.approx(1.0 / (2.0 * LN2), rel=1e-14)
    assert adf(0.25, 4) == pytest.approx(1.0 / (2.0 * LN2), rel=1e-14)


def test_abaf_frozen_and_grid_oracle():
    val = abaf(1.0, 2)
    assert val == pytest.approx(ABAF_X1_N2, abs=1e-8)
    grid_best = max(
        _gauss_cap_dest(1.0, float(b), 2) for b in np.geomspace(1e-4, 1e3, 200001)
    )
    assert val >= grid_best - 1e-10
    # a feasible burst density lower-bounds the supremum: beta = 1 gives 1/2
    assert _gauss_cap_dest(1.0, 1.0, 2) == pytest.approx(0.5, rel=1e-14)


def test_abaf_sandwich_at_small_x():
    x = 1e-3
    val = abaf(x, 2)
    assert 0.0 <= val <= bounds.cutset_asymptotic(1.0, x)


def test_abspdf_cutset_matching_regime():
    for x in (0.05, 0.1, 0.2, 0.25):
        val = abspdf_sym2(x)
        assert val * LN2 == pytest.approx(2.0 * x, rel=1e-3)


def test_abspdf_frozen_regression_at_one():
    assert abspdf_sym2(1.0) == pytest.approx(ABSPDF_X1, abs=1e-8)
    assert ABSPDF_X1 > adf(1.0, 2)  # strictly above DF per the figure


def test_abspdf_symn_specializes_to_two_relays():
    for x in np.geomspace(1e-2, 1e2, 9):
        assert abs(abspdf_symN(float(x), 2) - abspdf_sym2(float(x))) <= 1e-9


def test_abspdf_symn_gap_shrinks_with_relays():
    gaps = []
    for n in (2, 8):
        b = abaf(1.0, n)
        s = abspdf_symN(1.0, n)
        gaps.append((s - b) / b)
    assert gaps[1] < gaps[0]


def test_abspdf_symn_df_regime():
    # small x: the binary layer carries everything, matching N-relay DF
    assert abspdf_symN(0.01, 4) == pytest.approx(
        min(1.0, 16.0 * 0.01) / (2.0 * LN2), rel=1e-3
    )


def test_atspdf_dominates_bspdf():
    for x in (0.1, 1.0, 10.0):
        assert atspdf_sym2(x) >= abspdf_sym2(x) - 1e-6


def test_atspdf_beats_timeshared_bspdf_at_one():
    ts = timeshare_envelope(abspdf_sym2, abspdf_sym2, 1.0)
    assert atspdf_sym2(1.0) >= ts - 1e-6


def test_atspdf_cutset_matching_regime():
    assert atspdf_sym2(0.1) * LN2 == pytest.approx(0.2, rel=1e-3)


def test_asym11_mirror_symmetry():
    for x in (0.1, 0.37, 5.0):
        assert abspdf_asym11(x) == abspdf_asym11(1.0 / x)
        assert abafdf(x) == abafdf(1.0 / x)
        assert abspdf_asym12(x) == abspdf_asym12(1.0 / x)


def test_asym11_coincides_with_symmetric_diamond_at_one():
    assert abspdf_asym11(1.0) == pytest.approx(abspdf_sym2(1.0), abs=1e-8)


def test_asym11_below_asymmetric_cutset():
    for x in (1.0, 4.0, 10.0):
        assert abspdf_asym11(x) <= bounds.cutset_asym_asymptotic(x) + 1e-9


def test_adf_abaf_asym_basics():
    assert adf_asym(1.0) == pytest.approx(1.0 / (2.0 * LN2), rel=1e-14)
    assert adf_asym(4.0) == pytest.approx(1.0 / (4.0 * LN2), rel=1e-14)
    for x in (1.0, 10.0):
        assert abaf_asym(x) <= abspdf_asym11(x) + 1e-9


def test_abafdf_kappa_zero_slice_is_dominated():
    for x in (1.0, 4.0):
        c = 1.0 / max(x, 1.0 / x)
        slice_best = max(
            _bafdf_value(c, (float(b), 0.0)) for b in np.geomspace(1e-6, 1e6, 2001)
        )
        assert slice_best <= abafdf(x) / math.sqrt(max(x, 1.0 / x)) + 1e-10


def test_abafdf_below_bspdf12_at_one():
    assert abafdf(1.0) <= abspdf_asym12(1.0) + 1e-9


def test_abafdf_frozen_regression_far_asymmetric():
    assert abafdf(100.0) == pytest.approx(ABAFDF_X100, abs=1e-7)
    assert math.isfinite(abafdf(100.0))


def test_asym12_dominates_bafdf_everywhere():
    for x in (0.3, 1.0, 4.0, 30.0):
        assert abspdf_asym12(x) >= abafdf(x) - 1e-6


def test_asym_variants_max_ordering_at_four():
    # the two burst-label variants are the top achievable pair; at x = 4
    # the full-decode variant wins
    assert max(abspdf_asym12(4.0), abspdf_asym11(4.0)) == abspdf_asym12(4.0)


def test_timeshare_envelope_properties():
    env = lambda x: timeshare_envelope(lambda v: adf(v, 2), lambda v: abaf(v, 2), x)
    # the chord starts at the decode-and-forward corner
    assert env(0.25) == pytest.approx(1.0 / (2.0 * LN2), abs=1e-9)
    for x in (0.3, 0.5, 1.0, 2.0):
        v = env(x)
        assert v >= adf(x, 2) - 1e-12
        assert v >= abaf(x, 2) - 1e-12


def test_timeshare_self_envelope_dominates_curve():
    support = [float(v) for v in np.geomspace(1e-2, 1e2, 33)]
    ys = [abspdf_sym2(x) for x in support]
    env = TimeshareEnvelope(support, ys, ys)
    for x, y in zip(support, ys):
        assert env.value(x) >= y - 1e-12
    assert env.value(1.0) > abspdf_sym2(1.0)  # strict gain near the knee


def test_timeshare_envelope_is_concave_on_chords():
    support = [float(v) for v in np.geomspace(1e-2, 1e2, 33)]
    ys = [abspdf_sym2(x) for x in support]
    env = TimeshareEnvelope(support, ys, ys)
    xs = np.linspace(0.3, 30.0, 41)
    vals = [env.value(float(x)) for x in xs]
    for i in range(1, len(xs) - 1):
        mid = 0.5 * (vals[i - 1] + vals[i + 1])
        assert vals[i] >= mid - 1e-12


def test_timeshare_proportional_split_recovers_pure_curve():
    # a == b leaves the effective ratio unchanged: on the concave segment
    # of a single curve the envelope adds nothing
    env = lambda x: timeshare_envelope(lambda v: adf(v, 2), lambda v: adf(v, 2), x)
    assert env(0.1) == pytest.approx(adf(0.1, 2), abs=1e-12)


def test_timeshare_outside_support_raises():
    support = [0.5, 1.0, 2.0]
    env = TimeshareEnvelope(support, [1.0, 2.0, 2.5], [1.0, 2.0, 2.5])
    with pytest.raises(DomainError):
        env.value(10.0)


def test_curvepoint_validation():
    with pytest.raises(DomainError):
        CurvePoint(-1.0, 0.5, "df", {})
    with pytest.raises(DomainError):
        CurvePoint(1.0, math.inf, "df", {})


def test_evaluate_registries():
    pt = evaluate_sym("df", 0.25, 2, 0)
    assert pt.scheme == "df" and pt.y == pytest.approx(1.0 / (2.0 * LN2))
    pt = evaluate_asym("df", 4.0, 0)
    assert pt.y == pytest.approx(adf_asym(4.0))
    with pytest.raises(DomainError):
        evaluate_sym("nope", 1.0)
    with pytest.raises(DomainError):
        evaluate_asym("nope", 1.0)


def test_thm_sym2_caps_match_n_parameterized_family():
    from relaylab.asymptotic import _label_cap_dest, _label_cap_relay

    for c in (0.03, 1.0, 40.0):
        for beta in (0.1, 1.3, 20.0):
            r1a, r1b, r2 = _thm_sym2_caps(c, beta)
            assert r1a == pytest.approx(_label_cap_relay(c, beta), rel=1e-12)
            assert r1b == pytest.approx(_label_cap_dest(c, beta, 2), rel=1e-12)
            assert r2 == pytest.approx(_gauss_cap_dest(c, beta, 2), rel=1e-12)
