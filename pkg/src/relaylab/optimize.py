"""Bounded derivative-free maximizer used by every rate optimization.

Multi-start Nelder-Mead on a box, with per-dimension linear or log scaling,
a strict-inequality shrink margin, and a -inf sentinel for constraint
violations.  Starts come from a seeded Sobol sequence, so results are
deterministic for a fixed seed and monotone in the number of starts
(drawing 2k starts replays the first k exactly).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.stats import qmc

from .errors import DomainError, InfeasibleError

__all__ = ["Dim", "SearchSpec", "OptResult", "maximize"]


@dataclass(frozen=True)
class Dim:
    lower: float
    upper: float
    scale: str = "linear"  # or "log"

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise DomainError("dimension bounds must be finite")
        if not self.lower < self.upper:
            raise DomainError("dimension needs lower < upper")
        if self.scale not in ("linear", "log"):
            raise DomainError(f"unknown scale {self.scale!r}")
        if self.scale == "log" and self.lower <= 0.0:
            raise DomainError("log-scaled dimension needs lower > 0")


@dataclass(frozen=True)
class SearchSpec:
    dims: tuple[Dim, ...]
    margin: float = 1e-9
    starts: int = 64
    seed: int = 0
    tol: float = 1e-10
    max_evals: int = 400  # per start

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if not self.dims:
            raise DomainError("SearchSpec needs at least one dimension")
        if self.starts < 1:
            raise DomainError("starts must be >= 1")
        if not (0.0 <= self.margin < 0.5):
            raise DomainError("margin must be in [0, 0.5)")


@dataclass(frozen=True)
class OptResult:
    value: float
    argmax: tuple[float, ...]
    boundary_flags: tuple[bool, ...]
    evals: int

    @property
    def on_boundary(self) -> bool:
        return any(self.boundary_flags)


def _transforms(dims):
    to_x = []
    to_u = []
    for d in dims:
        if d.scale == "linear":
            lo, span = d.lower, d.upper - d.lower
            to_x.append(lambda u, lo=lo, span=span: lo + u * span)
            to_u.append(lambda x, lo=lo, span=span: (x - lo) / span)
        else:
            lo, lr = d.lower, math.log(d.upper / d.lower)
            to_x.append(lambda u, lo=lo, lr=lr: lo * math.exp(u * lr))
            to_u.append(lambda x, lo=lo, lr=lr: math.log(x / lo) / lr)
    return to_x, to_u


def maximize(objective, spec: SearchSpec, warm_starts=()) -> OptResult:
    """Maximize ``objective(x)`` over the spec's box.

    The box is shrunk by ``margin`` at both ends of every dimension (strict
    inequality constraints are handled by the caller mapping them onto box
    edges).  ``objective`` may return -inf to reject a point; if every
    evaluation rejects, InfeasibleError is raised.  ``warm_starts`` are
    extra start points in parameter space, tried before the Sobol starts.
    """
    dims = spec.dims
    d = len(dims)
    lo, hi = spec.margin, 1.0 - spec.margin
    to_x, to_u = _transforms(dims)

    evals = 0
    best_val = -math.inf
    best_u = None
    best_x = None

    def f_of_u(u) -> float:
        nonlocal evals, best_val, best_u, best_x
        evals += 1
        x = tuple(t(ui) for t, ui in zip(to_x, u))
        v = objective(x)
        if v == v and v > -math.inf:  # not NaN, feasible
            if v > best_val or (v == best_val and (best_x is None or x < best_x)):
                best_val = v
                best_u = list(u)
                best_x = x
            return v
        return -math.inf

    starts = []
    for w in warm_starts:
        starts.append([min(max(t(wi), lo), hi) for t, wi in zip(to_u, w)])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # Sobol balance warning for odd counts
        sob = qmc.Sobol(d=d, scramble=True, seed=spec.seed)
        pts = sob.random(spec.starts)
    for row in pts:
        starts.append([lo + (hi - lo) * float(r) for r in row])

    for u0 in starts:
        v0 = f_of_u(u0)
        if v0 == -math.inf:
            continue  # screen out infeasible starts cheaply
        _nelder_mead(f_of_u, u0, v0, lo, hi, spec.tol, spec.max_evals)

    # polish the incumbent with progressively finer simplices (log-scaled
    # dims make the default step a large multiplicative jump)
    for step in (0.02, 0.002, 0.0002):
        if best_u is not None:
            _nelder_mead(f_of_u, list(best_u), best_val, lo, hi,
                         spec.tol, spec.max_evals, step=step)

    if best_u is None:
        raise InfeasibleError(
            f"all {len(starts)} starts were infeasible ({evals} evaluations)"
        )
    flags = tuple(bool(ui <= lo + 1e-6 or ui >= hi - 1e-6) for ui in best_u)
    return OptResult(best_val, best_x, flags, evals)


def _nelder_mead(f, u0, f0, lo, hi, tol, max_evals, step=0.08):
    """One Nelder-Mead run in normalized coordinates (maximization).

    Vertices are plain float lists; dimensions are small enough that pure
    Python beats array overhead by a wide margin.
    """
    d = len(u0)
    verts = [list(u0)]
    vals = [f0]
    for i in range(d):
        p = list(u0)
        p[i] = p[i] + step if p[i] + step <= hi else p[i] - step
        p[i] = min(max(p[i], lo), hi)
        verts.append(p)
        vals.append(f(p))
    evals = d + 1
    restarted = False

    while evals < max_evals:
        pairs = sorted(zip(vals, range(d + 1)), key=lambda t: (-t[0], t[1]))
        verts = [verts[i] for _, i in pairs]
        vals = [v for v, _ in pairs]
        fbest, fworst = vals[0], vals[-1]
        vb = verts[0]
        diam = 0.0
        for v in verts[1:]:
            for a, b in zip(v, vb):
                ad = abs(a - b)
                if ad > diam:
                    diam = ad
        spread = fbest - fworst if fworst > -math.inf else math.inf
        if diam < 1e-10 or (spread <= tol * (1.0 + abs(fbest)) and diam < 1e-7):
            if diam < 1e-12 and not restarted and evals + 2 * d < max_evals:
                # simplex collapsed; rebuild around the best vertex once
                restarted = True
                verts = [vb]
                vals = [fbest]
                for i in range(d):
                    p = list(vb)
                    p[i] = p[i] + 0.02 if p[i] + 0.02 <= hi else p[i] - 0.02
                    p[i] = min(max(p[i], lo), hi)
                    verts.append(p)
                    vals.append(f(p))
                evals += d
                continue
            break

        worst = verts[-1]
        centroid = [0.0] * d
        for v in verts[:-1]:
            for i in range(d):
                centroid[i] += v[i]
        for i in range(d):
            centroid[i] /= d

        def move(coef):
            return [
                min(max(centroid[i] + coef * (centroid[i] - worst[i]), lo), hi)
                for i in range(d)
            ]

        xr = move(1.0)
        fr = f(xr)
        evals += 1
        if fr > vals[0]:
            xe = move(2.0)
            fe = f(xe)
            evals += 1
            if fe > fr:
                verts[-1], vals[-1] = xe, fe
            else:
                verts[-1], vals[-1] = xr, fr
        elif fr > vals[-2]:
            verts[-1], vals[-1] = xr, fr
        else:
            xc = move(0.5) if fr > vals[-1] else move(-0.5)
            fc = f(xc)
            evals += 1
            if fc > min(fr, vals[-1]):
                verts[-1], vals[-1] = xc, fc
            else:
                # shrink toward the best vertex
                for j in range(1, d + 1):
                    verts[j] = [
                        min(max(vb[i] + 0.5 * (verts[j][i] - vb[i]), lo), hi)
                        for i in range(d)
                    ]
                    vals[j] = f(verts[j])
                evals += d
