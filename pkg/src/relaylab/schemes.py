"""Exact (non-asymptotic) achievable rates on a normalized network.

Implements decode-and-forward, amplify-and-forward, bursty AF, and the
two-layer superposition schemes in which a sparse label codeword tells the
relays when (and how strongly) to amplify while a Gaussian codeword rides
inside the bursts.  Label mutual informations are Gaussian-mixture
quantities evaluated by quadrature; in-burst Gaussian rates are closed
form.  The sum rate for fixed parameters is the exact LP optimum of the
achievable-rate constraints; only the free physical parameters are
searched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .gaussmix import GaussianMixture, mi_conditional_gaussian, mi_label
from .network import NormalizedNetwork
from .optimize import Dim, SearchSpec, maximize

__all__ = [
    "BafParams",
    "BspdfParams",
    "TspdfParams",
    "RateResult",
    "rate_df",
    "rate_af",
    "rate_baf",
    "rate_bspdf",
    "rate_bspdf_f",
    "rate_bspdf_opt",
    "rate_tspdf",
    "rate_tspdf_opt",
]

LN2 = math.log(2.0)
_MARGIN = 1e-9


def _half_log2_1p(snr: float) -> float:
    return 0.5 * math.log1p(snr) / LN2


@dataclass(frozen=True)
class RateResult:
    rate_bits: float
    rate_split: tuple[float, float] | None = None
    params: dict | None = None
    active_constraints: tuple[str, ...] = ()
    boundary: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.rate_bits) and self.rate_bits >= 0.0):
            raise DomainError("rate_bits must be finite and >= 0")


@dataclass(frozen=True)
class BafParams:
    """Duty cycle and amplification powers for (bursty) amplify-and-forward.

    AF is the delta = 1 slice.  Feasibility (kappa_i < 1/(delta + g_i))
    depends on the network, so it is checked by validate().
    """

    delta: float
    kappa: tuple[float, ...]

    def __init__(self, delta, kappa):
        object.__setattr__(self, "delta", float(delta))
        object.__setattr__(self, "kappa", tuple(float(k) for k in kappa))

    def validate(self, net: NormalizedNetwork) -> None:
        if not (0.0 < self.delta <= 1.0):
            raise DomainError("0 < delta <= 1 violated")
        if len(self.kappa) != net.n_relays:
            raise DomainError("kappa length must equal n_relays")
        for k, g in zip(self.kappa, net.g_tilde):
            if not (math.isfinite(k) and k >= 0.0):
                raise DomainError("kappa_i >= 0 violated")
            if not k * (self.delta + g) < 1.0:
                raise DomainError("kappa_i < 1/(delta + g_i) violated")


@dataclass(frozen=True)
class BspdfParams:
    """Burst-label scheme parameters.

    f maps each relay to its decode level: 0 = amplify always (no
    decoding), 1 = amplify only inside bursts, 2 = decode everything and
    retransmit the Gaussian codeword.  kappa entries of level-2 relays are
    unused.  f must be non-decreasing in the (ascending-gain) relay order.
    """

    delta: float
    sigma2: float
    kappa: tuple[float, ...]
    f: tuple[int, ...] | None = None

    def __init__(self, delta, sigma2, kappa, f=None):
        object.__setattr__(self, "delta", float(delta))
        object.__setattr__(self, "sigma2", float(sigma2))
        object.__setattr__(self, "kappa", tuple(float(k) for k in kappa))
        object.__setattr__(self, "f", None if f is None else tuple(int(v) for v in f))

    def levels(self, n_relays: int) -> tuple[int, ...]:
        return (1,) * n_relays if self.f is None else self.f

    def validate(self, net: NormalizedNetwork) -> None:
        n = net.n_relays
        if len(self.kappa) != n:
            raise DomainError("kappa length must equal n_relays")
        if not (0.0 < self.delta <= 1.0):
            raise DomainError("0 < delta <= 1 violated")
        if not (math.isfinite(self.sigma2) and self.sigma2 > 0.0):
            raise DomainError("sigma2 > 0 violated")
        if not self.delta * self.sigma2 < 1.0:
            raise DomainError("delta*sigma2 < 1 violated")
        f = self.levels(n)
        if len(f) != n:
            raise DomainError("f length must equal n_relays")
        if any(v not in (0, 1, 2) for v in f):
            raise DomainError("f values must be in {0, 1, 2}")
        if any(f[i] > f[i + 1] for i in range(n - 1)):
            raise DomainError("f must be non-decreasing in relay index")
        # maps without a level-1 relay are only meaningful when every relay
        # fully decodes; mixed 0/2 maps have no stated rate constraints
        if 1 not in f and not all(v == 2 for v in f):
            raise DomainError("f needs a level-1 relay unless every relay decodes fully")
        for i, (k, g, lv) in enumerate(zip(self.kappa, net.g_tilde, f)):
            if lv == 2:
                continue
            if not (math.isfinite(k) and k >= 0.0):
                raise DomainError("kappa_i >= 0 violated")
            if lv == 1 and not self.delta * k * (g * self.sigma2 + 1.0) < 1.0:
                raise DomainError("delta*kappa_i*(g_i*sigma2 + 1) < 1 violated")
            if lv == 0 and not k * (self.delta * g * self.sigma2 + 1.0) < 1.0:
                raise DomainError("kappa_i*(delta*g_i*sigma2 + 1) < 1 violated")


@dataclass(frozen=True)
class TspdfParams:
    """Ternary-label scheme parameters: two burst classes."""

    delta1: float
    delta2: float
    sigma2_1: float
    sigma2_2: float
    kappa1: tuple[float, ...]
    kappa2: tuple[float, ...]

    def __init__(self, delta1, delta2, sigma2_1, sigma2_2, kappa1, kappa2):
        object.__setattr__(self, "delta1", float(delta1))
        object.__setattr__(self, "delta2", float(delta2))
        object.__setattr__(self, "sigma2_1", float(sigma2_1))
        object.__setattr__(self, "sigma2_2", float(sigma2_2))
        object.__setattr__(self, "kappa1", tuple(float(k) for k in kappa1))
        object.__setattr__(self, "kappa2", tuple(float(k) for k in kappa2))

    def validate(self, net: NormalizedNetwork) -> None:
        n = net.n_relays
        if len(self.kappa1) != n or len(self.kappa2) != n:
            raise DomainError("kappa vectors must have length n_relays")
        if not (self.delta1 > 0.0 and self.delta2 > 0.0):
            raise DomainError("delta1, delta2 > 0 violated")
        if not self.delta1 + self.delta2 <= 1.0:
            raise DomainError("delta1 + delta2 <= 1 violated")
        if self.sigma2_1 < 0.0 or self.sigma2_2 < 0.0:
            raise DomainError("sigma2_j >= 0 violated")
        if not self.delta1 * self.sigma2_1 + self.delta2 * self.sigma2_2 < 1.0:
            raise DomainError("delta1*sigma2_1 + delta2*sigma2_2 < 1 violated")
        for g, k1, k2 in zip(net.g_tilde, self.kappa1, self.kappa2):
            if k1 < 0.0 or k2 < 0.0:
                raise DomainError("kappa_ij >= 0 violated")
            load = self.delta1 * k1 * (g * self.sigma2_1 + 1.0) + self.delta2 * k2 * (
                g * self.sigma2_2 + 1.0
            )
            if not load < 1.0:
                raise DomainError(
                    "delta1*kappa_i1*(g_i*sigma2_1+1) + delta2*kappa_i2*(g_i*sigma2_2+1) < 1 violated"
                )


# ---------------------------------------------------------------------------
# closed-form schemes


def rate_df(net: NormalizedNetwork) -> RateResult:
    """Decode-and-forward: weakest-relay decoding vs beamformed MISO cut."""
    g_min = min(net.g_tilde)
    beam = sum(math.sqrt(h) for h in net.h_tilde) ** 2
    snr = min(g_min, beam)
    active = "source_decode" if g_min <= beam else "beamform"
    return RateResult(_half_log2_1p(snr), active_constraints=(active,))


def _baf_objective(net: NormalizedNetwork, delta: float, kappa) -> float:
    num = sum(
        math.sqrt(k * g * h / delta)
        for k, g, h in zip(kappa, net.g_tilde, net.h_tilde)
    )
    den = sum(k * h for k, h in zip(kappa, net.h_tilde)) + 1.0
    return 0.5 * delta * math.log1p(num * num / den) / LN2


def _baf_search(net: NormalizedNetwork, fix_delta, starts, seed, warm=()):
    """Shared AF/BAF maximizer over (delta, kappa shares).

    kappa_i = t_i/(delta + g_i) with t_i in [0, 1) keeps the feasible box
    rectangular; symmetric networks are reduced to a single shared share.
    """
    sym = net.is_symmetric
    n = net.n_relays
    n_shares = 1 if sym else n
    dims = [] if fix_delta else [Dim(1e-6, 1.0)]
    dims += [Dim(0.0, 1.0)] * n_shares

    def unpack(v):
        if fix_delta:
            delta, shares = 1.0, v
        else:
            delta, shares = v[0], v[1:]
        if sym:
            shares = shares * n
        kappa = tuple(t / (delta + g) for t, g in zip(shares, net.g_tilde))
        return delta, kappa

    def objective(v):
        delta, kappa = unpack(v)
        return _baf_objective(net, delta, kappa)

    spec = SearchSpec(dims=tuple(dims), margin=_MARGIN, starts=starts, seed=seed)
    res = maximize(objective, spec, warm_starts=warm)
    delta, kappa = unpack(res.argmax)
    return res, delta, kappa


def rate_af(net: NormalizedNetwork, starts: int = 64, seed: int = 0) -> RateResult:
    """Amplify-and-forward: supremum over the amplification powers.

    The supremum need not be attained (the kappa box is open); the value is
    reported on the margin-shrunk box with ``boundary`` flagged when the
    optimum pins a face.
    """
    res, delta, kappa = _baf_search(net, fix_delta=True, starts=starts, seed=seed)
    return RateResult(
        max(0.0, res.value),
        params={"delta": 1.0, "kappa": list(kappa)},
        active_constraints=("destination_gaussian",),
        boundary=res.on_boundary,
    )


def rate_baf(net: NormalizedNetwork, starts: int = 64, seed: int = 0) -> RateResult:
    """Bursty AF: supremum over duty cycle and amplification powers."""
    af_res, _, af_kappa = _baf_search(net, fix_delta=True, starts=starts, seed=seed)
    sym = net.is_symmetric
    af_shares = [af_kappa[0] * (1.0 + net.g_tilde[0])] if sym else [
        k * (1.0 + g) for k, g in zip(af_kappa, net.g_tilde)
    ]
    warm = [tuple([1.0 - _MARGIN] + af_shares)]
    res, delta, kappa = _baf_search(
        net, fix_delta=False, starts=starts, seed=seed, warm=warm
    )
    value = max(res.value, af_res.value)
    if af_res.value > res.value:
        delta, kappa = 1.0, af_kappa
    return RateResult(
        max(0.0, value),
        params={"delta": delta, "kappa": list(kappa)},
        active_constraints=("destination_gaussian",),
        boundary=res.on_boundary,
    )


# ---------------------------------------------------------------------------
# superposition schemes


def _bspdf_caps(net: NormalizedNetwork, p: BspdfParams, tol: float) -> dict:
    """Mutual-information caps of the burst-label scheme for fixed params.

    Returns the caps keyed by constraint label; missing keys mean the
    constraint does not apply for this f-map.
    """
    f = p.levels(net.n_relays)
    delta, sigma2 = p.delta, p.sigma2
    amp = 0.0  # destination signal amplitude per unit source symbol
    noise_on = 1.0  # destination noise variance inside bursts
    noise_off = 1.0  # destination noise variance outside bursts
    for g, h, k, lv in zip(net.g_tilde, net.h_tilde, p.kappa, f):
        if lv == 2:
            amp += math.sqrt(h)
        else:
            amp += math.sqrt(k * h * g)
            noise_on += k * h
            if lv == 0:
                noise_off += k * h
    sig_on = amp * amp * sigma2

    caps = {}
    caps["destination_gaussian"] = mi_conditional_gaussian(
        (1.0 - delta, delta), (0.0, sig_on), noise_on
    )
    caps["destination_label"] = mi_label(
        GaussianMixture((1.0 - delta, delta), (noise_off, sig_on + noise_on)),
        0.0,
        "exact",
        tol=tol,
    )
    ones = [i for i, lv in enumerate(f) if lv == 1]
    twos = [i for i, lv in enumerate(f) if lv == 2]
    if ones:
        g1 = net.g_tilde[ones[0]]
        caps["relay_label"] = mi_label(
            GaussianMixture((1.0 - delta, delta), (1.0, g1 * sigma2 + 1.0)),
            0.0,
            "exact",
            tol=tol,
        )
    if twos:
        g2 = net.g_tilde[twos[0]]
        caps["relay_gaussian"] = mi_conditional_gaussian(
            (1.0 - delta, delta), (0.0, g2 * sigma2), 1.0
        )
        if not ones:
            # every relay decodes both layers: the weakest relay also caps
            # the sum rate, like a second destination
            g0 = net.g_tilde[0]
            caps["relay_joint"] = mi_label(
                GaussianMixture((1.0 - delta, delta), (1.0, g0 * sigma2 + 1.0)),
                0.0,
                "exact",
                tol=tol,
            ) + mi_conditional_gaussian((1.0 - delta, delta), (0.0, g0 * sigma2), 1.0)
    return caps


def _caps_to_rate(caps: dict, params: dict) -> RateResult:
    """Exact LP optimum of R1 + R2 under the cap structure."""
    inf = math.inf
    a = caps.get("relay_label", inf)
    b = caps.get("relay_gaussian", inf)
    c = caps["destination_gaussian"]
    d = caps["destination_label"]
    e = caps.get("relay_joint", inf)

    r2 = min(b, c)
    r1 = min(a, c + d - r2, e - r2)
    r1 = max(0.0, r1)
    rate = r1 + r2

    active = []
    tol = 1e-12 * (1.0 + rate)
    if abs(r2 - b) <= tol and b < inf:
        active.append("relay_gaussian")
    if abs(r2 - c) <= tol:
        active.append("destination_gaussian")
    if abs(r1 - a) <= tol and a < inf:
        active.append("relay_label")
    if abs(r1 - (c + d - r2)) <= tol:
        active.append("destination_label")
    if abs(r1 - (e - r2)) <= tol and e < inf:
        active.append("relay_joint")
    return RateResult(rate, (r1, r2), params, tuple(active))


def rate_bspdf(net: NormalizedNetwork, params: BspdfParams, tol: float = 1e-10) -> RateResult:
    """Burst-label rate for fixed parameters, all relays at level 1."""
    if params.f is not None and any(v != 1 for v in params.f):
        raise DomainError("rate_bspdf needs f identically 1; use rate_bspdf_f")
    return rate_bspdf_f(net, params, tol=tol)


def rate_bspdf_f(net: NormalizedNetwork, params: BspdfParams, tol: float = 1e-10) -> RateResult:
    """Burst-label rate for fixed parameters and a general decode-level map."""
    params.validate(net)
    caps = _bspdf_caps(net, params, tol)
    pd = {
        "delta": params.delta,
        "sigma2": params.sigma2,
        "kappa": list(params.kappa),
        "f": list(params.levels(net.n_relays)),
    }
    return _caps_to_rate(caps, pd)


def rate_bspdf_opt(
    net: NormalizedNetwork,
    starts: int = 32,
    seed: int = 0,
    tol: float = 1e-9,
) -> RateResult:
    """Maximize the level-1 burst-label rate over (delta, sigma2, kappa).

    Parameterized by s = delta*sigma2 in (0,1) and per-relay power shares
    t_i = delta*kappa_i*(g_i*sigma2 + 1) in [0,1) so the box is
    rectangular; warm-started from the bursty-AF optimum (its R1 = 0 face).
    """
    sym = net.is_symmetric
    n = net.n_relays
    n_shares = 1 if sym else n
    dims = (Dim(1e-8, 1.0, "log"), Dim(0.0, 1.0)) + (Dim(0.0, 1.0),) * n_shares

    def unpack(v):
        delta, s = v[0], v[1]
        shares = v[2:] * n if sym else v[2:]
        sigma2 = s / delta
        kappa = tuple(
            t / (delta * (g * sigma2 + 1.0)) for t, g in zip(shares, net.g_tilde)
        )
        return BspdfParams(delta, sigma2, kappa)

    def objective(v):
        if v[1] <= 0.0:
            return -math.inf
        p = unpack(v)
        return rate_bspdf(net, p, tol=tol).rate_bits

    baf = rate_baf(net, starts=starts, seed=seed)
    bd, bk = baf.params["delta"], baf.params["kappa"]
    s_w = 1.0 - 1e-9
    sig_w = s_w / bd
    shares_w = [
        min(k * bd * (g * sig_w + 1.0), 1.0 - 1e-9)
        for k, g in zip(bk, net.g_tilde)
    ]
    warm = [tuple([bd, s_w] + ([shares_w[0]] if sym else shares_w))]

    spec = SearchSpec(dims=dims, margin=_MARGIN, starts=starts, seed=seed)
    res = maximize(objective, spec, warm_starts=warm)
    p = unpack(res.argmax)
    out = rate_bspdf(net, p, tol=tol)
    return RateResult(
        out.rate_bits, out.rate_split, out.params, out.active_constraints,
        boundary=res.on_boundary,
    )


def rate_tspdf(net: NormalizedNetwork, params: TspdfParams, tol: float = 1e-10) -> RateResult:
    """Ternary-label rate for fixed parameters (all relays decode the label)."""
    params.validate(net)
    d1, d2 = params.delta1, params.delta2
    s1, s2 = params.sigma2_1, params.sigma2_2
    w = (1.0 - d1 - d2, d1, d2)

    amp = [0.0, 0.0]
    noise = [1.0, 1.0]
    for g, h, k1, k2 in zip(net.g_tilde, net.h_tilde, params.kappa1, params.kappa2):
        amp[0] += math.sqrt(k1 * h * g)
        amp[1] += math.sqrt(k2 * h * g)
        noise[0] += k1 * h
        noise[1] += k2 * h
    sig = (amp[0] ** 2 * s1, amp[1] ** 2 * s2)

    # in-burst Gaussian rate; the two classes see different noise levels
    c = d1 * _half_log2_1p(sig[0] / noise[0]) + d2 * _half_log2_1p(sig[1] / noise[1])
    g_min = net.g_tilde[0]
    a = mi_label(
        GaussianMixture(w, (1.0, g_min * s1 + 1.0, g_min * s2 + 1.0)),
        0.0, "exact", tol=tol,
    )
    d_cap = mi_label(
        GaussianMixture(w, (1.0, sig[0] + noise[0], sig[1] + noise[1])),
        0.0, "exact", tol=tol,
    )

    r1 = min(a, d_cap)
    pd = {
        "delta1": d1, "delta2": d2,
        "sigma2_1": s1, "sigma2_2": s2,
        "kappa1": list(params.kappa1), "kappa2": list(params.kappa2),
    }
    active = ("relay_label",) if a <= d_cap else ("destination_label",)
    return RateResult(r1 + c, (r1, c), pd, active + ("destination_gaussian",))


def rate_tspdf_opt(
    net: NormalizedNetwork,
    starts: int = 48,
    seed: int = 0,
    tol: float = 1e-9,
) -> RateResult:
    """Maximize the ternary-label rate; warm-started from the binary optimum.

    Source power is split as s = d1*sigma2_1 + d2*sigma2_2 with a class
    share, and each relay's power load is split the same way, keeping every
    strict constraint on a box edge.
    """
    sym = net.is_symmetric
    n = net.n_relays
    n_shares = 1 if sym else n
    # dims: log d1, log d2, s, source share, relay load t_i, relay share v_i
    dims = (
        Dim(1e-8, 1.0, "log"), Dim(1e-8, 1.0, "log"),
        Dim(0.0, 1.0), Dim(0.0, 1.0),
    ) + (Dim(0.0, 1.0),) * (2 * n_shares)

    def unpack(v):
        d1, d2, s, w = v[0], v[1], v[2], v[3]
        if d1 + d2 > 1.0:
            return None
        ts = v[4:4 + n_shares] * n if sym else v[4:4 + n_shares]
        vs = v[4 + n_shares:] * n if sym else v[4 + n_shares:]
        s1 = s * w / d1
        s2 = s * (1.0 - w) / d2
        k1, k2 = [], []
        for g, t, share in zip(net.g_tilde, ts, vs):
            k1.append(t * share / (d1 * (g * s1 + 1.0)))
            k2.append(t * (1.0 - share) / (d2 * (g * s2 + 1.0)))
        return TspdfParams(d1, d2, s1, s2, tuple(k1), tuple(k2))

    def objective(v):
        p = unpack(v)
        if p is None:
            return -math.inf
        return rate_tspdf(net, p, tol=tol).rate_bits

    bs = rate_bspdf_opt(net, starts=max(8, starts // 4), seed=seed, tol=tol)
    bp = bs.params
    half = 0.5 * bp["delta"]
    s_tot = min(bp["delta"] * bp["sigma2"], 1.0 - 1e-9)
    t_w = []
    for g, k in zip(net.g_tilde, bp["kappa"]):
        t_w.append(min(bp["delta"] * k * (g * bp["sigma2"] + 1.0), 1.0 - 1e-9))
    if sym:
        t_w = t_w[:1]
    warm = [tuple([half, half, s_tot, 0.5] + t_w + [0.5] * len(t_w))]

    spec = SearchSpec(dims=dims, margin=_MARGIN, starts=starts, seed=seed)
    res = maximize(objective, spec, warm_starts=warm)
    p = unpack(res.argmax)
    out = rate_tspdf(net, p, tol=tol)
    return RateResult(
        out.rate_bits, out.rate_split, out.params, out.active_constraints,
        boundary=res.on_boundary,
    )
