"""Differential entropy and mutual information of zero-mean Gaussian mixtures.

This is the numeric core behind the exact superposition-scheme rates: every
label variable (burst on/off, ternary class) turns an observed signal into a
zero-mean Gaussian mixture, and the label's mutual information is the mixture
entropy minus the per-component Gaussian entropies.  A first-order expansion
in the small component weights gives the closed forms used in the low-SNR
analysis; the quadrature route is kept independent so the two can check each
other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "GaussianMixture",
    "entropy_quadrature",
    "entropy_taylor",
    "mi_label",
    "mi_conditional_gaussian",
    "gaussian_entropy_bits",
]

LN2 = math.log(2.0)
_WEIGHT_SUM_TOL = 1e-12


def gaussian_entropy_bits(variance: float) -> float:
    """Differential entropy of N(0, variance) in bits: (1/2)log2(2*pi*e*v)."""
    if variance <= 0.0 or not math.isfinite(variance):
        raise DomainError("variance must be finite and > 0")
    return 0.5 * math.log(2.0 * math.pi * math.e * variance) / LN2


@dataclass(frozen=True)
class GaussianMixture:
    """Weighted zero-mean Gaussian mixture.

    Weights are probabilities (non-negative, summing to one within 1e-12);
    variances are strictly positive and finite.  Component 0 is the reference
    component for the first-order entropy expansion.
    """

    weights: tuple[float, ...]
    variances: tuple[float, ...]

    def __init__(self, weights, variances):
        weights = tuple(float(w) for w in weights)
        variances = tuple(float(v) for v in variances)
        if len(weights) == 0 or len(weights) != len(variances):
            raise DomainError("weights and variances must be non-empty, equal length")
        if any((not math.isfinite(w)) or w < 0.0 for w in weights):
            raise DomainError("weights must be finite and >= 0")
        if abs(sum(weights) - 1.0) > _WEIGHT_SUM_TOL:
            raise DomainError("weights must sum to 1 within 1e-12")
        if any((not math.isfinite(v)) or v <= 0.0 for v in variances):
            raise DomainError("variances must be finite and > 0")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "variances", variances)

    @property
    def q(self) -> int:
        return len(self.weights)

    def variance(self) -> float:
        """Var(Y) = sum_i w_i * v_i (all components are zero-mean)."""
        return sum(w * v for w, v in zip(self.weights, self.variances))

    def pdf(self, y):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        for w, v in zip(self.weights, self.variances):
            if w > 0.0:
                out += w * np.exp(-0.5 * y * y / v) / math.sqrt(2.0 * math.pi * v)
        return out


def _neg_f_log2_f(mix: GaussianMixture, y: np.ndarray) -> np.ndarray:
    # guarded at f = 0 via the limit f*log(f) -> 0
    f = mix.pdf(y)
    out = np.zeros_like(f)
    pos = f > 0.0
    out[pos] = -f[pos] * np.log2(f[pos])
    return out


def _tail_bound_bits(mix: GaussianMixture, half_width: float) -> float:
    """Upper bound on |integral of f*log2(f)| over |y| > half_width."""
    # f is sandwiched between its widest positive-weight component and the
    # sum of peak densities: w_ref*phi_vref(y) <= f(y) <= b_hi*exp(-y^2/(2 v_ref))
    v_ref, w_ref = max(
        (v, w) for w, v in zip(mix.weights, mix.variances) if w > 0.0
    )
    b_hi = sum(
        w / math.sqrt(2.0 * math.pi * v)
        for w, v in zip(mix.weights, mix.variances)
        if w > 0.0
    )
    a_const = max(
        abs(math.log2(b_hi)),
        abs(math.log2(w_ref / math.sqrt(2.0 * math.pi * v_ref))),
    )
    s = math.sqrt(v_ref)
    z = half_width / (s * math.sqrt(2.0))
    e0 = s * math.sqrt(math.pi / 2.0) * math.erfc(z)
    e2 = v_ref * half_width * math.exp(-z * z) + v_ref * e0
    return 2.0 * b_hi * (a_const * e0 + e2 / (2.0 * v_ref * LN2))


def entropy_quadrature(mix: GaussianMixture, tol: float = 1e-10) -> float:
    """Mixture differential entropy in bits by adaptive Simpson quadrature.

    Integrates -f log2 f on [-L, L] with L = 10 * max sigma; the analytic
    tail beyond L is folded into the error budget (it is < 1e-20 relative at
    that truncation).  Absolute error <= tol * max(1, |result|).
    """
    if not (0.0 < tol <= 1e-3):
        raise DomainError("tol must be in (0, 1e-3]")
    half_width = 10.0 * math.sqrt(max(mix.variances))
    tail = _tail_bound_bits(mix, half_width)
    budget = tol - tail
    if budget <= 0.5 * tol:
        raise ConvergenceError("tail bound exceeds half the error budget", None)

    # integrand is even: integrate [0, L] and double; seed knots at the
    # component length scales so narrow components are never stepped over
    sigmas = sorted(math.sqrt(v) for v in mix.variances)
    knots = {0.0, half_width}
    for s in sigmas:
        for m in (0.5, 1.0, 2.0, 4.0):
            y = m * s
            if 0.0 < y < half_width:
                knots.add(y)
    knots = np.array(sorted(knots))

    fn = lambda y: _neg_f_log2_f(mix, y)
    half = _adaptive_simpson(fn, knots, 0.5 * budget)
    return 2.0 * half


def _adaptive_simpson(fn, knots: np.ndarray, eps_abs: float,
                      max_rounds: int = 60, max_intervals: int = 400000) -> float:
    """Interval-queue adaptive Simpson; fn must accept numpy arrays."""
    a = knots[:-1].copy()
    h = np.diff(knots)
    total_len = knots[-1] - knots[0]
    fa = fn(a)
    fm = fn(a + 0.5 * h)
    fb = fn(a + h)
    s = h / 6.0 * (fa + 4.0 * fm + fb)

    # the 1/15 Richardson estimate under-reports on coarse intervals; a
    # safety factor keeps the true error inside budget at loose tolerances,
    # while tight budgets already refine past the rough-estimate regime
    # (and a large factor there would chase double-precision noise)
    safety = 20.0 if eps_abs > 1e-8 else 4.0

    accepted = 0.0
    s2 = s
    for _ in range(max_rounds):
        flm = fn(a + 0.25 * h)
        frm = fn(a + 0.75 * h)
        h2 = 0.5 * h
        s_left = h2 / 6.0 * (fa + 4.0 * flm + fm)
        s_right = h2 / 6.0 * (fm + 4.0 * frm + fb)
        s2 = s_left + s_right
        err = (s2 - s) / 15.0
        ok = np.abs(err) <= eps_abs * (h / total_len) / safety
        accepted += float(np.sum(s2[ok] + err[ok]))
        if np.all(ok):
            return accepted
        keep = ~ok
        if 2 * int(np.sum(keep)) > max_intervals:
            raise ConvergenceError(
                "adaptive Simpson exceeded the interval cap",
                accepted + float(np.sum(s2[keep])),
            )
        # split survivors: left half [a, a+h/2], right half [a+h/2, a+h]
        a = np.concatenate([a[keep], a[keep] + h2[keep]])
        h = np.concatenate([h2[keep], h2[keep]])
        fa = np.concatenate([fa[keep], fm[keep]])
        new_fm = np.concatenate([flm[keep], frm[keep]])
        fb = np.concatenate([fm[keep], fb[keep]])
        fm = new_fm
        s = np.concatenate([s_left[keep], s_right[keep]])
    raise ConvergenceError(
        "adaptive Simpson did not converge within the round cap",
        accepted + float(np.sum(s2[~ok])),
    )


def entropy_taylor(mix: GaussianMixture) -> float:
    """First-order mixture entropy in bits around the dominant component.

    h(Y) ~ (1/2)log2(2 pi e v0) + sum_{i>=1} w_i (v_i/v0 - 1)/(2 ln 2),
    dropping the quadratic remainder in the perturbation weights.  Component
    0 must be the dominant one (w0 = 1 - sum of the rest).
    """
    v0 = mix.variances[0]
    if v0 <= 0.0:
        raise DomainError("reference variance must be > 0")
    first_order = sum(
        w * (v / v0 - 1.0) for w, v in zip(mix.weights[1:], mix.variances[1:])
    )
    return gaussian_entropy_bits(v0) + first_order / (2.0 * LN2)


def mi_label(mix_signal: GaussianMixture, noise_var: float = 0.0,
             method: str = "exact", tol: float = 1e-10) -> float:
    """I(Q; W+Z) in bits where W|Q=i ~ N(0, v_i), Z ~ N(0, noise_var).

    Callers fold a state-dependent noise into the mixture itself and pass
    noise_var=0 (the usual route for label variables observed through
    channels whose noise depends on the label).

    method 'exact': mixture entropy by quadrature minus the conditional
    Gaussian entropies.  method 'taylor': first-order expansion
    sum_{i>=1} w_i ((v_i/v0 - 1) - ln(v_i/v0)) / (2 ln 2) on the
    noise-inflated variances.
    """
    if noise_var < 0.0 or not math.isfinite(noise_var):
        raise DomainError("noise_var must be finite and >= 0")
    inflated = GaussianMixture(
        mix_signal.weights, tuple(v + noise_var for v in mix_signal.variances)
    )
    if method == "exact":
        h_y = entropy_quadrature(inflated, tol=tol)
        h_cond = sum(
            w * gaussian_entropy_bits(v)
            for w, v in zip(inflated.weights, inflated.variances)
            if w > 0.0
        )
        return max(0.0, h_y - h_cond)
    if method == "taylor":
        v0 = inflated.variances[0]
        acc = 0.0
        for w, v in zip(inflated.weights[1:], inflated.variances[1:]):
            r = v / v0
            acc += w * ((r - 1.0) - math.log(r))
        return acc / (2.0 * LN2)
    raise DomainError(f"unknown method {method!r}")


def mi_conditional_gaussian(weights, signal_variances, noise_var) -> float:
    """I(W; W+Z | Q) = sum_i w_i * (1/2) log2(1 + v_i / noise_var), exact.

    Zero noise with some positive signal variance returns math.inf as a
    distinguished value.  Components with zero signal variance contribute
    nothing regardless of the noise level.
    """
    weights = tuple(float(w) for w in weights)
    signal_variances = tuple(float(v) for v in signal_variances)
    if len(weights) != len(signal_variances) or not weights:
        raise DomainError("weights and signal_variances must be equal length")
    if any((not math.isfinite(w)) or w < 0.0 for w in weights):
        raise DomainError("weights must be finite and >= 0")
    if abs(sum(weights) - 1.0) > _WEIGHT_SUM_TOL:
        raise DomainError("weights must sum to 1 within 1e-12")
    if any((not math.isfinite(v)) or v < 0.0 for v in signal_variances):
        raise DomainError("signal variances must be finite and >= 0")
    noise_var = float(noise_var)
    if noise_var < 0.0 or not math.isfinite(noise_var):
        raise DomainError("noise_var must be finite and >= 0")
    acc = 0.0
    for w, v in zip(weights, signal_variances):
        if w == 0.0 or v == 0.0:
            continue
        if noise_var == 0.0:
            return math.inf
        acc += w * 0.5 * math.log1p(v / noise_var) / LN2
    return acc
