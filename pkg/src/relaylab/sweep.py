"""Curve sweeps and deterministic CSV emission.

A sweep evaluates a set of scheme curves on an x grid and writes one row
per (x, scheme) with 17-significant-digit floats, the maximizing
parameters as embedded JSON, and a boundary flag.  Reruns with the same
job and seed are byte-identical.  Figure presets reproduce the paper-style
data sets; timeshared curves are derived from the tabulated pure curves
via the concave-envelope construction.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError
from . import asymptotic, energy
from .asymptotic import CurvePoint, TimeshareEnvelope

__all__ = ["SweepJob", "run_sweep", "write_csv", "read_csv", "figure_job", "FIGURES"]

_TS_SCHEMES = {
    "ts_df_baf": ("df", "baf"),
    "ts_bspdf": ("bspdf", "bspdf"),
}
_SPLIT_SCHEMES = {"bspdf_r1": "r1", "bspdf_r2": "r2"}


@dataclass(frozen=True)
class SweepJob:
    family: str  # sym2 | symN | asym2 | energy
    schemes: tuple[str, ...]
    x_min: float = 1e-2
    x_max: float = 1e2
    points: int = 81
    log: bool = True
    n_relays: tuple[int, ...] = (2,)
    seed: int = 0
    extra_points: tuple = ()  # (x, scheme) singletons appended to the sweep

    def __post_init__(self):
        object.__setattr__(self, "schemes", tuple(self.schemes))
        object.__setattr__(self, "n_relays", tuple(self.n_relays))
        if self.family not in ("sym2", "symN", "asym2", "energy"):
            raise DomainError(f"unknown sweep family {self.family!r}")
        if not self.x_min < self.x_max:
            raise DomainError("x_min < x_max violated")
        if self.points < 2:
            raise DomainError("points must be >= 2")

    def grid(self) -> list[float]:
        if self.log:
            return [float(v) for v in np.geomspace(self.x_min, self.x_max, self.points)]
        return [float(v) for v in np.linspace(self.x_min, self.x_max, self.points)]


def _threads() -> int:
    raw = os.environ.get("RELAYLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _eval_task(task) -> CurvePoint:
    kind = task[0]
    if kind == "sym":
        _, scheme, x, n, seed = task
        pt = asymptotic.evaluate_sym(scheme, x, n, seed)
        label = scheme if n == 2 else f"{scheme}_n{n}"
        return replace(pt, scheme=label) if pt.scheme != label else pt
    if kind == "asym":
        _, scheme, x, seed = task
        pt = asymptotic.evaluate_asym(scheme, x, seed)
        return replace(pt, scheme=scheme) if pt.scheme != scheme else pt
    if kind == "energy":
        _, scheme, x, seed = task
        return CurvePoint(x, energy.ebit_ratio(scheme, x, seed), scheme, {})
    raise DomainError(f"unknown task kind {kind!r}")


def _run_tasks(tasks) -> list[CurvePoint]:
    workers = _threads()
    if workers == 1 or len(tasks) < 4:
        return [_eval_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_eval_task, tasks, chunksize=4))


def _ts_support(job: SweepJob) -> list[float]:
    """Pure-curve tabulation grid for envelopes: the sweep grid widened by
    a decade each side (chords may anchor outside the plotted span) plus
    the decode-and-forward corner."""
    per_decade = (job.points - 1) / math.log10(job.x_max / job.x_min)
    extra = max(2, int(round(per_decade)))
    left = np.geomspace(job.x_min / 10.0, job.x_min, extra + 1)[:-1]
    right = np.geomspace(job.x_max, job.x_max * 10.0, extra + 1)[1:]
    support = np.concatenate([left, job.grid(), right, [0.25]])
    return [float(v) for v in np.unique(support)]


def run_sweep(job: SweepJob) -> list[CurvePoint]:
    pure = [s for s in job.schemes if s not in _TS_SCHEMES and s not in _SPLIT_SCHEMES]
    ts = [s for s in job.schemes if s in _TS_SCHEMES]
    splits = [s for s in job.schemes if s in _SPLIT_SCHEMES]
    if (ts or splits) and job.family not in ("sym2",):
        raise DomainError("timeshare/split schemes are defined for family sym2")

    xs = job.grid()
    tasks = []
    if job.family == "energy":
        tasks += [("energy", s, x, job.seed) for s in pure for x in xs]
    elif job.family == "asym2":
        tasks += [("asym", s, x, job.seed) for s in pure for x in xs]
    else:
        ns = job.n_relays if job.family == "symN" else (2,)
        tasks += [("sym", s, x, n, job.seed) for s in pure for n in ns for x in xs]

    # envelopes and rate splits need the underlying curves on a wider grid
    need = {base for s in ts for base in _TS_SCHEMES[s]}
    if splits:
        need.add("bspdf")
    support = _ts_support(job) if need else []
    support_tasks = [("sym", s, x, 2, job.seed) for s in sorted(need) for x in support]

    results = _run_tasks(tasks + support_tasks)
    points = results[: len(tasks)]
    by_scheme: dict[str, dict[float, CurvePoint]] = {}
    for pt in results[len(tasks):]:
        by_scheme.setdefault(pt.scheme, {})[pt.x] = pt

    for s in ts:
        base_a, base_b = _TS_SCHEMES[s]
        ca = by_scheme[base_a]
        cb = by_scheme[base_b]
        env = TimeshareEnvelope(
            support,
            [ca[x].y for x in support],
            [cb[x].y for x in support],
        )
        for x in xs:
            (xa, *_), (xb, *_) = env.chord(x)
            points.append(
                CurvePoint(x, env.value(x), s, {"x_a": xa, "x_b": xb})
            )

    for s in splits:
        key = _SPLIT_SCHEMES[s]
        curve = by_scheme["bspdf"]
        for x in xs:
            pt = curve[x]
            points.append(
                CurvePoint(x, pt.params[key], s, {"beta": pt.params["beta"]}, pt.boundary)
            )

    for x, scheme in job.extra_points:
        if scheme in _TS_SCHEMES and job.family == "asym2":
            # the mirrored family coincides with the symmetric diamond at
            # x = 1, where rate/sqrt(gh) = rate/g
            base_a, base_b = _TS_SCHEMES[scheme]
            y = asymptotic.timeshare_envelope(
                lambda v: asymptotic.evaluate_sym(base_a, v, 2, job.seed).y,
                lambda v: asymptotic.evaluate_sym(base_b, v, 2, job.seed).y,
                x,
            )
            points.append(CurvePoint(x, y, scheme, {}))
        else:
            raise DomainError(f"unsupported extra point {(x, scheme)!r}")

    points.sort(key=lambda p: (p.x, p.scheme))
    return points


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(points, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "scheme", "y", "params_json", "boundary_flag"])
        for p in points:
            writer.writerow(
                [
                    _fmt(p.x),
                    p.scheme,
                    _fmt(p.y),
                    json.dumps(p.params, sort_keys=True, separators=(",", ":")),
                    "1" if p.boundary else "0",
                ]
            )


def read_csv(path) -> list[CurvePoint]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"x", "scheme", "y", "params_json", "boundary_flag"}
        missing = required - set(reader.fieldnames or ())
        if missing:
            raise DomainError(f"CSV is missing columns: {sorted(missing)}")
        for row in reader:
            out.append(
                CurvePoint(
                    float(row["x"]),
                    float(row["y"]),
                    row["scheme"],
                    json.loads(row["params_json"]),
                    row["boundary_flag"] == "1",
                )
            )
    return out


FIGURES = {
    "fig3": dict(
        family="sym2",
        schemes=("cutset", "df", "baf", "bspdf", "ts_df_baf", "ts_bspdf"),
    ),
    "fig4": dict(family="sym2", schemes=("bspdf", "bspdf_r1", "bspdf_r2")),
    "fig5": dict(
        family="sym2",
        schemes=("cutset", "df", "baf", "bspdf", "tspdf", "ts_bspdf"),
    ),
    "fig6": dict(
        family="symN", schemes=("cutset", "baf", "bspdf"), n_relays=(2, 4, 8)
    ),
    "fig7": dict(
        family="asym2",
        schemes=("cutset", "df", "baf", "bafdf", "bspdf11", "bspdf12"),
        extra_points=((1.0, "ts_bspdf"),),
    ),
    "fig8": dict(family="energy", schemes=("baf", "df", "bspdf")),
}


def figure_job(fig: str, seed: int = 0, points: int = 81,
               x_min: float = 1e-2, x_max: float = 1e2) -> SweepJob:
    if fig not in FIGURES:
        raise DomainError(f"unknown figure {fig!r} (expected fig3..fig8)")
    kw = dict(FIGURES[fig])
    return SweepJob(
        x_min=x_min, x_max=x_max, points=points, log=True, seed=seed, **kw
    )
