"""Shared quadrature oracles for the test suite.

The oracles integrate with scipy's Gauss-Kronrod rule, a different
algorithm family from the package's adaptive Simpson, so agreement between
the two is a meaningful check.  Breakpoints at the component length scales
keep narrow mixture components from being stepped over.
"""

import math

from scipy.integrate import quad

LN2 = math.log(2.0)


def gaussian_entropy_bits(v):
    return 0.5 * math.log(2.0 * math.pi * math.e * v) / LN2


def oracle_entropy_bits(weights, variances):
    """Mixture differential entropy in bits via scipy.integrate.quad."""

    def neg_f_log2_f(y):
        pdf = sum(
            w * math.exp(-0.5 * y * y / v) / math.sqrt(2.0 * math.pi * v)
            for w, v in zip(weights, variances)
            if w > 0.0
        )
        return -pdf * math.log2(pdf) if pdf > 0.0 else 0.0

    hi = 12.0 * math.sqrt(max(variances))
    pts = sorted(
        {m * math.sqrt(v) for v in variances for m in (0.25, 1.0, 3.0)} | {0.0}
    )
    pts = [p for p in pts if p < hi]
    half, _ = quad(
        neg_f_log2_f, 0.0, hi, epsabs=1e-15, epsrel=1e-14, limit=900, points=pts
    )
    return 2.0 * half


def oracle_mi_label_bits(weights, variances):
    """I(label; observation) for a finite mixture of zero-mean Gaussians."""
    h_mix = oracle_entropy_bits(weights, variances)
    h_cond = sum(
        w * gaussian_entropy_bits(v) for w, v in zip(weights, variances) if w > 0.0
    )
    return h_mix - h_cond


def oracle_mi_conditional_bits(delta, signal_var, noise_var):
    """delta * [h(signal+noise) - h(noise)], each entropy by quadrature."""
    if signal_var == 0.0:
        return 0.0
    return delta * (
        oracle_entropy_bits([1.0], [signal_var + noise_var])
        - oracle_entropy_bits([1.0], [noise_var])
    )
