"""Closed-form low-SNR rate curves and the timesharing envelope.

Every curve lives in the regime where both gain families scale to zero at
a fixed ratio x = h/g.  Symmetric-family curves are normalized as rate/g;
the mirrored asymmetric diamond family is normalized as rate/sqrt(gh),
which makes x and 1/x equivalent.  Internally each scheme is a function of
c = g/h built from first-order label mutual informations plus in-burst
Gaussian rates; for fixed parameters the sum rate is the minimum of the
label caps plus the Gaussian cap, and only the physical parameters are
searched (multi-start, seeded, deterministic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from . import bounds
from .optimize import Dim, SearchSpec, maximize

__all__ = [
    "CurvePoint",
    "adf",
    "abaf",
    "abspdf_sym2",
    "abspdf_symN",
    "atspdf_sym2",
    "abspdf_asym11",
    "abafdf",
    "abspdf_asym12",
    "adf_asym",
    "abaf_asym",
    "timeshare_envelope",
    "TimeshareEnvelope",
    "evaluate_sym",
    "evaluate_asym",
    "SYM_SCHEMES",
    "ASYM_SCHEMES",
]

LN2 = math.log(2.0)
_BETA_DIM = Dim(1e-9, 1e8, "log")


@dataclass(frozen=True)
class CurvePoint:
    """One (abscissa, normalized rate or ratio) sample of a sweep."""

    x: float
    y: float
    scheme: str
    params: dict
    boundary: bool = False

    def __post_init__(self):
        if not (self.x > 0.0 and math.isfinite(self.x)):
            raise DomainError("x must be finite and > 0")
        if not (self.y >= 0.0 and math.isfinite(self.y)):
            raise DomainError("y must be finite and >= 0")


def _check_x(x: float) -> float:
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError("x must be finite and > 0")
    return x


# ---------------------------------------------------------------------------
# symmetric N-relay family, c = g/h, values are rate/h before the x rescale


def _label_cap_relay(c: float, beta: float) -> float:
    """Binary label rate cap at a relay: the weakest relay sees the bursts
    at variance ratio 1 + sqrt(c)/beta."""
    sc = math.sqrt(c)
    return (c - beta * sc * math.log1p(sc / beta)) / (2.0 * LN2)


def _label_cap_dest(c: float, beta: float, n: int) -> float:
    sc = math.sqrt(c)
    w = n * (n * sc + beta) / (beta * (c + beta * sc))
    lead = n * (n * sc + beta) / (sc + beta)
    return (lead - beta * sc * math.log1p(w)) / (2.0 * LN2)


def _gauss_cap_dest(c: float, beta: float, n: int) -> float:
    sc = math.sqrt(c)
    return beta * sc * math.log1p(n * n * sc / (beta * (n + c + beta * sc))) / (2.0 * LN2)


def _thm_sym2_caps(c: float, beta: float) -> tuple[float, float, float]:
    """Two-relay specialization written out literally (cross-checks the
    N-parameterized family)."""
    sc = math.sqrt(c)
    r1a = (c - beta * sc * math.log1p(sc / beta)) / (2.0 * LN2)
    r1b = (
        2.0 * (2.0 * sc + beta) / (sc + beta)
        - beta * sc * math.log1p(2.0 * (2.0 * sc + beta) / (beta * (c + beta * sc)))
    ) / (2.0 * LN2)
    r2 = beta * sc * math.log1p(4.0 * sc / (beta * (2.0 + c + beta * sc))) / (2.0 * LN2)
    return r1a, r1b, r2


def _sup_beta(objective, seed: int, starts: int = 64, warm=()):
    spec = SearchSpec(dims=(_BETA_DIM,), starts=starts, seed=seed)
    res = maximize(lambda v: objective(v[0]), spec, warm_starts=warm)
    return res.value, res.argmax[0], res.on_boundary


@lru_cache(maxsize=4096)
def _abaf_point(x: float, n: int, seed: int) -> CurvePoint:
    c = 1.0 / x
    val, beta, bdry = _sup_beta(lambda b: _gauss_cap_dest(c, b, n), seed)
    return CurvePoint(x, x * val, "baf", {"beta": beta}, bdry)


@lru_cache(maxsize=4096)
def _abspdf_point(x: float, n: int, seed: int, literal2: bool = False) -> CurvePoint:
    c = 1.0 / x

    if literal2:
        def obj(b):
            r1a, r1b, r2 = _thm_sym2_caps(c, b)
            return min(r1a, r1b) + r2
    else:
        def obj(b):
            return min(
                _label_cap_relay(c, b), _label_cap_dest(c, b, n)
            ) + _gauss_cap_dest(c, b, n)

    baf = _abaf_point(x, n, seed)
    val, beta, bdry = _sup_beta(obj, seed, warm=((baf.params["beta"],),))
    r1 = min(_label_cap_relay(c, beta), _label_cap_dest(c, beta, n))
    r2 = _gauss_cap_dest(c, beta, n)
    params = {"beta": beta, "r1": x * r1, "r2": x * r2}
    return CurvePoint(x, x * val, "bspdf", params, bdry)


def adf(x: float, n_relays: int = 2) -> float:
    """Decode-and-forward, rate/g: min(1, N^2 x)/(2 ln 2)."""
    x = _check_x(x)
    return min(1.0, n_relays * n_relays * x) / (2.0 * LN2)


def abaf(x: float, n_relays: int = 2, seed: int = 0) -> float:
    """Bursty AF, rate/g: the zero-label-rate face of the burst program."""
    return _abaf_point(_check_x(x), n_relays, seed).y


def abspdf_sym2(x: float, seed: int = 0) -> float:
    """Binary burst-label scheme on the symmetric diamond, rate/g."""
    return _abspdf_point(_check_x(x), 2, seed, literal2=True).y


def abspdf_symN(x: float, n_relays: int, seed: int = 0) -> float:
    """Binary burst-label scheme on the symmetric N-relay network, rate/g."""
    return _abspdf_point(_check_x(x), n_relays, seed, literal2=False).y


# ---------------------------------------------------------------------------
# ternary scheme, 6 free parameters


def _tspdf_value(c: float, p) -> float:
    b1, b2, g1, g2, k1, k2 = p
    sc = math.sqrt(c)
    if sc * (b1 * g1 + b2 * g2) >= 1.0:
        return -math.inf
    if sc * (b1 * (1.0 + g1 * c) * k1 + b2 * (1.0 + g2 * c) * k2) >= 1.0:
        return -math.inf
    r1a = b1 * (g1 * c - math.log1p(g1 * c)) + b2 * (g2 * c - math.log1p(g2 * c))
    e1 = (2.0 + 4.0 * g1 * c) * k1
    e2 = (2.0 + 4.0 * g2 * c) * k2
    r1b = b1 * (e1 - math.log1p(e1)) + b2 * (e2 - math.log1p(e2))
    r2 = b1 * math.log1p(4.0 * g1 * c * k1 / (1.0 + 2.0 * k1)) + b2 * math.log1p(
        4.0 * g2 * c * k2 / (1.0 + 2.0 * k2)
    )
    return sc * (min(r1a, r1b) + r2) / (2.0 * LN2)


def _tspdf_from_box(c: float, v6) -> tuple:
    """Box coordinates -> scheme parameters.

    The two strict power constraints become the box faces S = 1 and T = 1
    by searching over total loads and per-class shares, so every box point
    is feasible and the optimizer can slide along an active constraint.
    """
    b1, b2, s_tot, s_share, t_tot, t_share = v6
    sc = math.sqrt(c)
    g1 = s_tot * s_share / (sc * b1)
    g2 = s_tot * (1.0 - s_share) / (sc * b2)
    k1 = t_tot * t_share / (sc * b1 * (1.0 + g1 * c))
    k2 = t_tot * (1.0 - t_share) / (sc * b2 * (1.0 + g2 * c))
    return (b1, b2, g1, g2, k1, k2)


def _tspdf_warm_starts(x: float, seed: int) -> list:
    """Feasible seeds: the binary optimum collapsed onto two equal classes,
    and the two-phase power split mapped from the binary timeshare chord."""
    shrink = 1.0 - 1e-9
    warm = []

    bs = _abspdf_point(x, 2, seed, literal2=True)
    beta = bs.params["beta"]
    warm.append((0.5 * beta, 0.5 * beta, shrink, 0.5, shrink, 0.5))

    chord = _bspdf_chord(x, seed)
    if chord is not None:
        (xa, ba), (xb, bb) = chord
        a = (x - xb) / (xa - xb)
        b = a * xa / x
        if 1e-9 < a < 1.0 - 1e-9 and 1e-9 < b < 1.0 - 1e-9:
            b1 = ba * math.sqrt(a * b)
            b2 = bb * math.sqrt((1.0 - a) * (1.0 - b))
            warm.append((b1, b2, shrink, a, shrink, b))
    return warm


@lru_cache(maxsize=2048)
def _atspdf_point(x: float, seed: int, starts: int) -> CurvePoint:
    c = 1.0 / x
    dims = (
        Dim(1e-12, 1e6, "log"), Dim(1e-12, 1e6, "log"),
        Dim(0.0, 1.0), Dim(0.0, 1.0), Dim(0.0, 1.0), Dim(0.0, 1.0),
    )
    spec = SearchSpec(dims=dims, starts=starts, seed=seed, max_evals=600)
    res = maximize(lambda v: _tspdf_value(c, _tspdf_from_box(c, v)), spec,
                   warm_starts=_tspdf_warm_starts(x, seed))
    names = ("beta1", "beta2", "gamma1", "gamma2", "kappa1", "kappa2")
    params = dict(zip(names, _tspdf_from_box(c, res.argmax)))
    return CurvePoint(x, x * res.value, "tspdf", params, res.on_boundary)


def atspdf_sym2(x: float, seed: int = 0, starts: int = 512) -> float:
    """Ternary burst-label scheme on the symmetric diamond, rate/g.

    Local optima only (the 6-parameter program is non-convex); the reported
    value is nevertheless an achievable rate.
    """
    return _atspdf_point(_check_x(x), seed, starts).y


# ---------------------------------------------------------------------------
# mirrored asymmetric diamond family (g1 = h2 = g, g2 = h1 = h), rate/sqrt(gh)


def _mirror(x: float) -> tuple[float, float]:
    """The family is invariant under swapping the two relays, which maps
    x to 1/x; fold onto x >= 1 where the weaker source link has gain g."""
    r = x if x >= 1.0 else 1.0 / x
    return r, 1.0 / r


def _asym11_value(c: float, p) -> tuple[float, float]:
    beta, t1, t2 = p
    sc = math.sqrt(c)
    k1 = t1 / (c + beta * sc)
    k2 = t2 / (1.0 + beta * sc)
    e = k1 + c * k2 + sc * (math.sqrt(k1) + math.sqrt(k2)) ** 2 / beta
    r1a = _label_cap_relay(c, beta)
    r1b = beta * sc * (e - math.log1p(e)) / (2.0 * LN2)
    r2 = beta * sc * math.log1p(
        sc * (math.sqrt(k1) + math.sqrt(k2)) ** 2 / (beta * (1.0 + k1 + c * k2))
    ) / (2.0 * LN2)
    return min(r1a, r1b) + r2, r2


@lru_cache(maxsize=4096)
def _asym11_point(x: float, seed: int, gauss_only: bool) -> CurvePoint:
    r, c = _mirror(_check_x(x))
    dims = (_BETA_DIM, Dim(0.0, 1.0), Dim(0.0, 1.0))
    spec = SearchSpec(dims=dims, starts=64, seed=seed)
    pick = (lambda v: _asym11_value(c, v)[1]) if gauss_only else (
        lambda v: _asym11_value(c, v)[0]
    )
    res = maximize(pick, spec)
    beta, t1, t2 = res.argmax
    sc = math.sqrt(c)
    params = {
        "beta": beta,
        "kappa1": t1 / (c + beta * sc),
        "kappa2": t2 / (1.0 + beta * sc),
    }
    label = "baf" if gauss_only else "bspdf11"
    return CurvePoint(x, math.sqrt(r) * res.value, label, params, res.on_boundary)


def abspdf_asym11(x: float, seed: int = 0) -> float:
    """Both relays decode the burst label; rate/sqrt(gh)."""
    return _asym11_point(_check_x(x), seed, gauss_only=False).y


def abaf_asym(x: float, seed: int = 0) -> float:
    """Bursty AF on the mirrored diamond (zero-label face); rate/sqrt(gh)."""
    return _asym11_point(_check_x(x), seed, gauss_only=True).y


def adf_asym(x: float) -> float:
    """Decode-and-forward on the mirrored diamond; rate/sqrt(gh).

    The weaker source link (gain min(g,h)) caps decoding, so the value is
    sqrt(c)/(2 ln 2) after normalization.
    """
    r, _ = _mirror(_check_x(x))
    return 1.0 / (2.0 * LN2 * math.sqrt(r))


def _asym_df2_caps(c: float, beta: float, kappa: float) -> tuple[float, float]:
    """Gaussian-layer caps when the strong relay fully decodes: its own
    decoding cap and the beamformed destination cap."""
    sc = math.sqrt(c)
    r2a = beta * sc * math.log1p(1.0 / (beta * sc)) / (2.0 * LN2)
    r2b = beta * sc * math.log1p(
        sc * (1.0 + math.sqrt(kappa)) ** 2 / (beta * (1.0 + kappa))
    ) / (2.0 * LN2)
    return r2a, r2b


def _bafdf_value(c: float, p) -> float:
    beta, t = p
    sc = math.sqrt(c)
    kappa = t / (beta * sc + c)
    return min(_asym_df2_caps(c, beta, kappa))


def _asym12_value(c: float, p) -> float:
    beta, t = p
    sc = math.sqrt(c)
    kappa = t / (beta * sc + c)
    r1a = _label_cap_relay(c, beta)
    e = kappa + sc * (1.0 + math.sqrt(kappa)) ** 2 / beta
    r1b = beta * sc * (e - math.log1p(e)) / (2.0 * LN2)
    return min(r1a, r1b) + min(_asym_df2_caps(c, beta, kappa))


@lru_cache(maxsize=4096)
def _asym2_point(x: float, seed: int, scheme: str) -> CurvePoint:
    r, c = _mirror(_check_x(x))
    value_fn = _bafdf_value if scheme == "bafdf" else _asym12_value
    dims = (_BETA_DIM, Dim(0.0, 1.0))
    spec = SearchSpec(dims=dims, starts=64, seed=seed)
    res = maximize(lambda v: value_fn(c, v), spec)
    beta, t = res.argmax
    sc = math.sqrt(c)
    params = {"beta": beta, "kappa": t / (beta * sc + c)}
    return CurvePoint(x, math.sqrt(r) * res.value, scheme, params, res.on_boundary)


def abafdf(x: float, seed: int = 0) -> float:
    """Bursty AF at the weak relay, full decoding at the strong relay;
    rate/sqrt(gh)."""
    return _asym2_point(_check_x(x), seed, "bafdf").y


def abspdf_asym12(x: float, seed: int = 0) -> float:
    """Burst label at the weak relay, full decoding at the strong relay;
    rate/sqrt(gh)."""
    return _asym2_point(_check_x(x), seed, "bspdf12").y


# ---------------------------------------------------------------------------
# timesharing envelope


class TimeshareEnvelope:
    """Upper concave envelope of two normalized-rate curves.

    Splitting time, source energy and relay energy between two schemes A
    and B achieves, at leading order,

        rate/g = a * curve_A(x * b/a) + (1 - a) * curve_B(x * (1-b)/(1-a))

    for source share a and relay share b (the time fraction cancels).  For
    fixed effective ratios x_A = x*b/a and x_B = x*(1-b)/(1-a) this is
    affine in x, tracing the chord from (x_B, curve_B(x_B)) to
    (x_A, curve_A(x_A)); the supremum over (a, b) at each x is therefore
    the upper concave hull of the union of the two curves, which is what
    this class tabulates.
    """

    def __init__(self, xs, ya, yb, params_a=None, params_b=None):
        pts = []
        for i, x in enumerate(xs):
            pts.append((float(x), float(ya[i]), "a", None if params_a is None else params_a[i]))
            pts.append((float(x), float(yb[i]), "b", None if params_b is None else params_b[i]))
        pts.sort(key=lambda p: (p[0], -p[1]))
        hull = []
        for p in pts:
            if hull and hull[-1][0] == p[0]:
                continue  # same x: the higher y came first
            while len(hull) >= 2:
                (x1, y1, *_), (x2, y2, *_) = hull[-2], hull[-1]
                # drop the middle point when it lies on or below the chord
                if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                    hull.pop()
                else:
                    break
            hull.append(p)
        self._hull = hull
        self._hx = np.array([p[0] for p in hull])
        self._hy = np.array([p[1] for p in hull])

    def value(self, x: float) -> float:
        if not (self._hx[0] <= x <= self._hx[-1]):
            raise DomainError(
                f"x={x} outside the tabulated envelope support "
                f"[{self._hx[0]}, {self._hx[-1]}]"
            )
        return float(np.interp(x, self._hx, self._hy))

    def chord(self, x: float):
        """Hull segment endpoints bracketing x: ((x_lo, point), (x_hi, point))."""
        i = int(np.searchsorted(self._hx, x, side="right"))
        i = min(max(i, 1), len(self._hull) - 1)
        return self._hull[i - 1], self._hull[i]


def _default_support(x: float) -> np.ndarray:
    lo = min(x, 0.25) / 100.0
    hi = max(x, 0.25) * 100.0
    grid = np.geomspace(lo, hi, 129)
    return np.unique(np.concatenate([grid, [0.25, x]]))


def timeshare_envelope(curve_a, curve_b, x: float, support=None) -> float:
    """Best timeshared normalized rate of two symmetric-family curves at x.

    ``curve_a`` and ``curve_b`` map x = h/g to rate/g.  ``support`` is the
    tabulation grid (defaults to a wide log grid around x including the
    decode-and-forward corner at 1/4).
    """
    x = _check_x(x)
    xs = _default_support(x) if support is None else np.asarray(support, dtype=float)
    env = TimeshareEnvelope(xs, [curve_a(v) for v in xs], [curve_b(v) for v in xs])
    return env.value(x)


@lru_cache(maxsize=64)
def _bspdf_envelope(seed: int, n_grid: int = 97):
    """Self-timeshare envelope of the binary scheme on a wide grid."""
    xs = np.geomspace(1e-3, 1e3, n_grid)
    xs = np.unique(np.concatenate([xs, [0.25]]))
    pts = [_abspdf_point(float(v), 2, seed, literal2=True) for v in xs]
    ys = [p.y for p in pts]
    betas = [p.params["beta"] for p in pts]
    return TimeshareEnvelope(xs, ys, ys, betas, betas)


def _bspdf_chord(x: float, seed: int):
    """Chord endpoints (x_i, beta_i) of the binary self-timeshare at x."""
    env = _bspdf_envelope(seed)
    (xa, _, _, ba), (xb, _, _, bb) = env.chord(x)
    if xa == xb or ba is None or bb is None:
        return None
    # map so that x lies strictly between; a-phase is the larger-x endpoint
    return ((xb, bb), (xa, ba)) if xb > xa else ((xa, ba), (xb, bb))


# ---------------------------------------------------------------------------
# scheme registries used by the sweep engine


def _cutset_sym_point(x, n, seed):
    if n == 2:
        y = bounds.cutset_asymptotic(1.0, x)
        return CurvePoint(x, y, "cutset", {})
    return CurvePoint(x, bounds.cutset_symmetric_asymptotic(n, x), "cutset", {})


def _adf_point(x, n, seed):
    return CurvePoint(x, adf(x, n), "df", {})


SYM_SCHEMES = {
    "cutset": _cutset_sym_point,
    "df": _adf_point,
    "baf": lambda x, n, seed: _abaf_point(x, n, seed),
    "bspdf": lambda x, n, seed: _abspdf_point(x, n, seed, literal2=(n == 2)),
    "tspdf": lambda x, n, seed: _atspdf_point(x, seed, 512),
}

ASYM_SCHEMES = {
    "cutset": lambda x, seed: CurvePoint(
        x, bounds.cutset_asym_asymptotic(x), "cutset", {}
    ),
    "df": lambda x, seed: CurvePoint(x, adf_asym(x), "df", {}),
    "baf": lambda x, seed: _asym11_point(x, seed, gauss_only=True),
    "bafdf": lambda x, seed: _asym2_point(x, seed, "bafdf"),
    "bspdf11": lambda x, seed: _asym11_point(x, seed, gauss_only=False),
    "bspdf12": lambda x, seed: _asym2_point(x, seed, "bspdf12"),
}


def evaluate_sym(scheme: str, x: float, n_relays: int = 2, seed: int = 0) -> CurvePoint:
    if scheme not in SYM_SCHEMES:
        raise DomainError(f"unknown symmetric-family scheme {scheme!r}")
    pt = SYM_SCHEMES[scheme](float(x), n_relays, seed)
    return pt


def evaluate_asym(scheme: str, x: float, seed: int = 0) -> CurvePoint:
    if scheme not in ASYM_SCHEMES:
        raise DomainError(f"unknown asymmetric-family scheme {scheme!r}")
    return ASYM_SCHEMES[scheme](float(x), seed)
