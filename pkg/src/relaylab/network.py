"""Network model for the Gaussian N-relay parallel (diamond) network.

A network is a single source, N parallel relays and a single destination
with no direct source-destination link.  Power gains g_i (source -> relay i)
and h_i (relay i -> destination) are stored as *power* gains, i.e. the
square of the amplitude gains; every rate formula uses them inside logs.

Different power constraints and noise variances are absorbed into the
gains by :func:`normalize`, after which all rate and bound computations
run on unit powers and unit noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

__all__ = ["NetworkConfig", "NormalizedNetwork", "normalize"]


def _as_float_tuple(values, name):
    try:
        out = tuple(float(v) for v in values)
    except TypeError:
        raise DomainError(f"{name} must be a sequence of reals") from None
    for v in out:
        if not math.isfinite(v):
            raise DomainError(f"{name} entries must be finite, got {v!r}")
    return out


@dataclass(frozen=True)
class NetworkConfig:
    """Physical description of an N-relay parallel network.

    Gains are stored sorted ascending by ``g`` (the usual weakest-relay-first
    convention); ``permutation`` holds the 0-based user indices in sorted
    order so results can be mapped back to the caller's relay numbering.
    """

    n_relays: int
    g: tuple[float, ...]
    h: tuple[float, ...]
    p_source: float
    p_relay: tuple[float, ...]
    n0: float
    permutation: tuple[int, ...] = field(default=())

    def __init__(self, g, h, p_source=1.0, p_relay=1.0, n0=1.0):
        g = _as_float_tuple(g, "g")
        h = _as_float_tuple(h, "h")
        n = len(g)
        if n == 0 or len(h) != n:
            raise DomainError("g and h must be non-empty and of equal length")
        try:
            p_relay = _as_float_tuple(p_relay, "p_relay")
        except DomainError:
            p_relay = (float(p_relay),) * n
        if len(p_relay) == 1 and n > 1:
            p_relay = p_relay * n
        if len(p_relay) != n:
            raise DomainError("p_relay must be scalar or of length n_relays")
        p_source = float(p_source)
        n0 = float(n0)
        if not math.isfinite(p_source) or p_source <= 0.0:
            raise DomainError("p_source must be finite and > 0")
        if not math.isfinite(n0) or n0 <= 0.0:
            raise DomainError("n0 must be finite and > 0")
        for name, vec in (("g", g), ("h", h)):
            if any(v < 0.0 for v in vec):
                raise DomainError(f"{name} entries must be >= 0")
        if any((not math.isfinite(p)) or p <= 0.0 for p in p_relay):
            raise DomainError("p_relay entries must be finite and > 0")

        order = tuple(sorted(range(n), key=lambda i: (g[i], i)))
        object.__setattr__(self, "n_relays", n)
        object.__setattr__(self, "g", tuple(g[i] for i in order))
        object.__setattr__(self, "h", tuple(h[i] for i in order))
        object.__setattr__(self, "p_source", p_source)
        object.__setattr__(self, "p_relay", tuple(p_relay[i] for i in order))
        object.__setattr__(self, "n0", n0)
        object.__setattr__(self, "permutation", order)


@dataclass(frozen=True)
class NormalizedNetwork:
    """Network with unit powers and unit noise; gains carry everything.

    ``g_tilde`` is sorted ascending; ``permutation`` maps sorted positions
    back to the originating user order (0-based).
    """

    n_relays: int
    g_tilde: tuple[float, ...]
    h_tilde: tuple[float, ...]
    permutation: tuple[int, ...] = field(default=())

    def __init__(self, g_tilde, h_tilde, permutation=None):
        g_tilde = _as_float_tuple(g_tilde, "g_tilde")
        h_tilde = _as_float_tuple(h_tilde, "h_tilde")
        n = len(g_tilde)
        if n == 0 or len(h_tilde) != n:
            raise DomainError("g_tilde and h_tilde must be non-empty, equal length")
        if any(v < 0.0 for v in g_tilde) or any(v < 0.0 for v in h_tilde):
            raise DomainError("normalized gains must be >= 0")
        if any(g_tilde[i] > g_tilde[i + 1] for i in range(n - 1)):
            order = tuple(sorted(range(n), key=lambda i: (g_tilde[i], i)))
            g_tilde = tuple(g_tilde[i] for i in order)
            h_tilde = tuple(h_tilde[i] for i in order)
            permutation = order if permutation is None else tuple(permutation[i] for i in order)
        if permutation is None:
            permutation = tuple(range(n))
        object.__setattr__(self, "n_relays", n)
        object.__setattr__(self, "g_tilde", g_tilde)
        object.__setattr__(self, "h_tilde", h_tilde)
        object.__setattr__(self, "permutation", tuple(permutation))

    @property
    def is_symmetric(self) -> bool:
        g, h = self.g_tilde, self.h_tilde
        return all(x == g[0] for x in g) and all(x == h[0] for x in h)


def normalize(config: NetworkConfig) -> NormalizedNetwork:
    """Absorb powers and noise into the channel gains.

    g_tilde_i = g_i * P_S / N0 and h_tilde_i = h_i * P_i / N0, after which
    the network behaves as one with unit power constraints and unit noise.
    """
    scale_g = config.p_source / config.n0
    g_tilde = tuple(g * scale_g for g in config.g)
    h_tilde = tuple(h * p / config.n0 for h, p in zip(config.h, config.p_relay))
    return NormalizedNetwork(g_tilde, h_tilde, permutation=config.permutation)
