"""Cut-set capacity upper bounds for parallel relay networks.

Exact bounds: the four-cut 2-relay diamond bound (max over the relay
transmit correlation rho) and the symmetric N-relay bound (min over the
relay-set split n, sup over rho).  Asymptotic bounds: the leading-order
piecewise closed form for the symmetric diamond, plus numerical low-SNR
limits of the exact bounds for the families whose leading order has no
closed form (symmetric N-relay, mirrored asymmetric diamond).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .network import NormalizedNetwork

__all__ = [
    "CutsetResult",
    "cutset_diamond",
    "cutset_symmetric_n",
    "cutset_asymptotic",
    "cutset_symmetric_asymptotic",
    "cutset_asym_asymptotic",
]

LN2 = math.log(2.0)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CutsetResult:
    bound_bits: float
    rho_star: float
    active_cut: str


def _grid_golden_max(fun, lo, hi, grid_points=1001, iters=80):
    """Deterministic 1-D maximizer: coarse grid, then golden section.

    The grid picks the first argmax; golden section refines within the
    bracketing cells.  On a plateau the smallest grid argmax is preferred.
    """
    step = (hi - lo) / (grid_points - 1)
    best_i, best_v = 0, -math.inf
    vals = []
    for i in range(grid_points):
        v = fun(lo + i * step)
        vals.append(v)
        if v > best_v:
            best_i, best_v = i, v
    a = lo + max(best_i - 1, 0) * step
    b = lo + min(best_i + 1, grid_points - 1) * step

    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fun(x1)
    x_ref, f_ref = (x1, f1) if f1 >= f2 else (x2, f2)
    # prefer the grid point on plateaus (deterministic, smallest argmax)
    if best_v >= f_ref - 1e-13:
        return lo + best_i * step, best_v
    return x_ref, f_ref


def _diamond_cuts(g1, g2, h1, h2, rho):
    one_m = 1.0 - rho * rho
    return (
        0.5 * math.log1p(g1 + g2) / LN2,
        0.5 * math.log((1.0 + g2) * (1.0 + h1 * one_m)) / LN2,
        0.5 * math.log((1.0 + g1) * (1.0 + h2 * one_m)) / LN2,
        0.5 * math.log1p(h1 + h2 + 2.0 * rho * math.sqrt(h1 * h2)) / LN2,
    )


_CUT_LABELS = ("S", "SR1", "SR2", "D")


def cutset_diamond(net: NormalizedNetwork) -> CutsetResult:
    """Four-cut bound for the 2-relay diamond, max over rho in [0, 1]."""
    if net.n_relays != 2:
        raise DomainError("cutset_diamond needs exactly 2 relays")
    g1, g2 = net.g_tilde
    h1, h2 = net.h_tilde

    def value(rho):
        return min(_diamond_cuts(g1, g2, h1, h2, rho))

    rho_star, bound = _grid_golden_max(value, 0.0, 1.0)
    cuts = _diamond_cuts(g1, g2, h1, h2, rho_star)
    active = _CUT_LABELS[min(range(4), key=lambda i: (cuts[i], i))]
    return CutsetResult(bound, rho_star, active)


def _symmetric_term(n_relays, g, h, n, rho):
    beam = 1.0 + (n - 1.0) * rho
    if n > 0 and n_relays > n:
        beam -= n * (n_relays - n) * rho * rho / (1.0 + (n_relays - n - 1.0) * rho)
    return (
        0.5 * math.log1p((n_relays - n) * g) / LN2
        + 0.5 * math.log1p(n * beam * h) / LN2
    )


def cutset_symmetric_n(n_relays: int, g: float, h: float) -> CutsetResult:
    """Symmetric N-relay bound: sup over rho in [0,1) of the min over n."""
    if n_relays < 2:
        raise DomainError("cutset_symmetric_n needs N >= 2")
    if not (g > 0.0 and h > 0.0):
        raise DomainError("cutset_symmetric_n needs g, h > 0")

    def value(rho):
        return min(
            _symmetric_term(n_relays, g, h, n, rho) for n in range(n_relays + 1)
        )

    rho_star, bound = _grid_golden_max(value, 0.0, 1.0 - 1e-12)
    n_star = min(
        range(n_relays + 1),
        key=lambda n: (_symmetric_term(n_relays, g, h, n, rho_star), n),
    )
    return CutsetResult(bound, rho_star, f"n={n_star}")


def cutset_asymptotic(g: float, h: float) -> float:
    """Leading-order symmetric diamond cut-set bound in bits.

    max over rho of min{g, (g + h(1-rho^2))/2, h(1+rho)} has the piecewise
    solution {2h, sqrt(g h), g} on the h/g branches (<1/4, [1/4,1], >1);
    dividing by ln 2 converts nats to bits.
    """
    if not (g > 0.0 and h > 0.0):
        raise DomainError("cutset_asymptotic needs g, h > 0")
    ratio = h / g
    if ratio < 0.25:
        val = 2.0 * h
    elif ratio <= 1.0:
        val = math.sqrt(g * h)
    else:
        val = g
    return val / LN2


def cutset_symmetric_asymptotic(n_relays: int, x: float, scale: float = 1e-4) -> float:
    """Low-SNR limit of the symmetric N-relay bound, as rate/g at h/g = x.

    Evaluated by Taylor scaling (the exact bound at gains (s, s*x) divided
    by s) with Richardson extrapolation of the O(s) term; the leading
    order has no closed form for N > 2.
    """
    if x <= 0.0:
        raise DomainError("x must be > 0")

    def at(s):
        return cutset_symmetric_n(n_relays, s, s * x).bound_bits / s

    return 2.0 * at(0.5 * scale) - at(scale)


def cutset_asym_asymptotic(x: float, scale: float = 1e-4) -> float:
    """Low-SNR limit of the mirrored asymmetric diamond bound, rate/sqrt(gh).

    The family has gains g1 = h2 = g and g2 = h1 = h with x = h/g; the
    bound is symmetric under x <-> 1/x after the sqrt(gh) normalization.
    Computed as a Richardson-extrapolated numerical limit of the exact
    diamond bound (no closed form is available at leading order).
    """
    if x <= 0.0:
        raise DomainError("x must be > 0")
    r = x if x >= 1.0 else 1.0 / x

    def at(s):
        net = NormalizedNetwork((s, s * r), (s * r, s))
        return cutset_diamond(net).bound_bits / (s * math.sqrt(r))

    return 2.0 * at(0.5 * scale) - at(scale)
