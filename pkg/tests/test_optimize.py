import math

import pytest

from relaylab.errors import DomainError, InfeasibleError
from relaylab.optimize import Dim, OptResult, SearchSpec, maximize


def quadratic(v):
    return -sum((x - 0.3) ** 2 for x in v)


def test_known_quadratic_argmax():
    spec = SearchSpec(dims=(Dim(0.0, 1.0), Dim(0.0, 1.0)), starts=16, seed=1)
    res = maximize(quadratic, spec)
    assert all(abs(x - 0.3) < 1e-6 for x in res.argmax)
    assert res.value == pytest.approx(0.0, abs=1e-10)
    assert not res.on_boundary


def test_determinism_bit_identical():
    spec = SearchSpec(dims=(Dim(0.0, 1.0), Dim(0.0, 1.0)), starts=8, seed=42)
    assert maximize(quadratic, spec) == maximize(quadratic, spec)


def test_monotone_in_starts():
    def lumpy(v):
        x = v[0]
        return math.sin(9.0 * x) + 0.6 * math.sin(31.0 * x)

    for k in (2, 4, 8):
        lo = maximize(lumpy, SearchSpec(dims=(Dim(0.0, 1.0),), starts=k, seed=5))
        hi = maximize(lumpy, SearchSpec(dims=(Dim(0.0, 1.0),), starts=2 * k, seed=5))
        assert hi.value >= lo.value


def test_all_infeasible_raises():
    spec = SearchSpec(dims=(Dim(0.0, 1.0),), starts=4, seed=0)
    with pytest.raises(InfeasibleError):
        maximize(lambda v: -math.inf, spec)


def test_nan_treated_as_infeasible():
    spec = SearchSpec(dims=(Dim(0.0, 1.0),), starts=4, seed=0)
    with pytest.raises(InfeasibleError):
        maximize(lambda v: math.nan, spec)


def test_partial_feasibility_sentinel():
    def objective(v):
        if v[0] > 0.5:
            return -math.inf
        return v[0]

    res = maximize(objective, SearchSpec(dims=(Dim(0.0, 1.0),), starts=16, seed=3))
    assert res.value == pytest.approx(0.5, abs=1e-5)


def test_boundary_flag():
    res = maximize(lambda v: v[0], SearchSpec(dims=(Dim(0.0, 1.0),), starts=4, seed=0))
    assert res.boundary_flags == (True,)
    assert res.argmax[0] == pytest.approx(1.0, abs=1e-8)


def test_log_scaled_dimension():
    res = maximize(
        lambda v: -(math.log10(v[0]) - 2.0) ** 2,
        SearchSpec(dims=(Dim(1e-6, 1e6, "log"),), starts=8, seed=0),
    )
    assert res.argmax[0] == pytest.approx(100.0, rel=1e-4)


def test_warm_start_is_used():
    # the spike at 0.123456 is invisible to Sobol starts and local steps
    def spiky(v):
        return 1.0 if abs(v[0] - 0.123456) < 1e-9 else 0.0

    spec = SearchSpec(dims=(Dim(0.0, 1.0),), starts=4, seed=0)
    res = maximize(spiky, spec, warm_starts=((0.123456,),))
    assert res.value == 1.0


def test_value_at_least_every_start():
    spec = SearchSpec(dims=(Dim(0.0, 1.0), Dim(0.0, 1.0)), starts=32, seed=9)
    res = maximize(quadratic, spec)
    assert res.value >= quadratic((0.5, 0.5))


def test_dim_validation():
    with pytest.raises(DomainError):
        Dim(1.0, 0.0)
    with pytest.raises(DomainError):
        Dim(0.0, 1.0, "log")
    with pytest.raises(DomainError):
        Dim(0.0, 1.0, "exp")
    with pytest.raises(DomainError):
        SearchSpec(dims=())
    with pytest.raises(DomainError):
        SearchSpec(dims=(Dim(0.0, 1.0),), starts=0)


def test_result_shape():
    res = maximize(quadratic, SearchSpec(dims=(Dim(0.0, 1.0),), starts=2, seed=0))
    assert isinstance(res, OptResult)
    assert isinstance(res.argmax, tuple)
    assert isinstance(res.evals, int) and res.evals > 0
