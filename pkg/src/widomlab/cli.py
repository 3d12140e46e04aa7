"""Command-line front end: norm sweeps, closed-form limits, the built-in
Shabat exploration, and preimage point clouds, emitted as CSV and minimal
hand-rolled SVG scatters.

Exit codes: 0 success, 1 partial (some degrees failed), 2 bad config.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import cheb_complex, sets, widom
from .errors import WidomlabError
from .poly import preimage_points

CSV_HEADER = "degree,route,norm,capacity,widom_factor,gap"


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return "%.12g" % x


@dataclass(frozen=True)
class ExperimentConfig:
    set_spec: sets.SetSpec
    degrees: tuple
    tol: float = 1e-8
    per_edge: Optional[int] = None
    output: Optional[str] = None
    emit: tuple = ("csv",)
    samples: int = 64      # preimage mode: target samples per arm

    def __post_init__(self):
        if not self.degrees:
            raise ValueError("degrees must be nonempty")
        if max(self.degrees) > 400:
            raise ValueError("max degree is 400")
        if min(self.degrees) < 1:
            raise ValueError("degrees must be >= 1")
        if not 1e-10 <= self.tol <= 1e-2:
            raise ValueError("tol must lie in [1e-10, 1e-2]")
        bad = set(self.emit) - {"csv", "svg"}
        if bad:
            raise ValueError(f"unknown emit targets {sorted(bad)}")


_CONFIG_KEYS = {"set", "degrees", "tol", "per_edge", "output", "emit",
                "samples"}


def parse_config(obj: dict, require_set: bool = True) -> ExperimentConfig:
    """Strict JSON config: unknown keys are rejected, degrees may be an
    explicit integer list or an inclusive "a..b" range string."""
    if not isinstance(obj, dict):
        raise ValueError("config must be a JSON object")
    extra = set(obj) - _CONFIG_KEYS
    if extra:
        raise ValueError(f"unknown config keys {sorted(extra)}")
    if require_set and "set" not in obj:
        raise ValueError("config needs a 'set' entry")
    spec = sets.SetSpec.from_json(obj["set"]) if "set" in obj \
        else sets.shabat_spec()
    degrees = _parse_degrees(obj.get("degrees", [1]))
    kw = {}
    if "tol" in obj:
        kw["tol"] = float(obj["tol"])
    if "per_edge" in obj:
        kw["per_edge"] = int(obj["per_edge"])
    if "output" in obj:
        kw["output"] = str(obj["output"])
    if "emit" in obj:
        kw["emit"] = tuple(obj["emit"])
    if "samples" in obj:
        kw["samples"] = int(obj["samples"])
    return ExperimentConfig(set_spec=spec, degrees=degrees, **kw)


def _parse_degrees(v) -> tuple:
    if isinstance(v, str):
        lo, _, hi = v.partition("..")
        return tuple(range(int(lo), int(hi) + 1))
    if isinstance(v, list) and all(isinstance(d, int) for d in v):
        return tuple(v)
    raise ValueError("degrees must be an integer list or an 'a..b' string")


def _n_workers() -> int:
    env = os.environ.get("WIDOMLAB_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def _records_parallel(spec, degrees, tol, per_edge, seed):
    with ThreadPoolExecutor(max_workers=_n_workers()) as ex:
        futs = [ex.submit(widom.widom_inf_series, spec, [d], tol,
                          per_edge, seed) for d in degrees]
        return [f.result()[0] for f in futs]  # assembled in degree order


def _records_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([str(r.degree), r.route, _fmt(r.norm),
                               _fmt(r.capacity), _fmt(r.factor),
                               _fmt(r.gap)]))
    return "\n".join(lines) + "\n"


def _write(path: str, text: str):
    with open(path, "w", newline="") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# hand-rolled SVG scatter
# ---------------------------------------------------------------------------

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#7f7f7f")


def _svg_scatter(xs, ys, groups, title, width=640, height=420) -> str:
    """Minimal scatter plot; points colored by their group index."""
    pad = 50
    finite = [(x, y, g) for x, y, g in zip(xs, ys, groups)
              if math.isfinite(y)]
    if not finite:
        finite = [(0.0, 0.0, 0)]
    fx = [p[0] for p in finite]
    fy = [p[1] for p in finite]
    x0, x1 = min(fx), max(fx)
    y0, y1 = min(fy), max(fy)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{height}" viewBox="0 0 {width} {height}">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
           f'y2="{height - pad}" stroke="black"/>',
           f'<line x1="{pad}" y1="{pad}" x2="{pad}" '
           f'y2="{height - pad}" stroke="black"/>',
           f'<text x="{width // 2}" y="20" text-anchor="middle" '
           f'font-size="14">{title}</text>',
           f'<text x="{pad}" y="{height - pad + 20}" font-size="11">'
           f'{_fmt(x0)}</text>',
           f'<text x="{width - pad}" y="{height - pad + 20}" '
           f'text-anchor="end" font-size="11">{_fmt(x1)}</text>',
           f'<text x="{pad - 5}" y="{height - pad}" text-anchor="end" '
           f'font-size="11">{_fmt(y0)}</text>',
           f'<text x="{pad - 5}" y="{pad}" text-anchor="end" '
           f'font-size="11">{_fmt(y1)}</text>']
    for x, y, g in finite:
        color = _PALETTE[g % len(_PALETTE)]
        out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" '
                   f'fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _norms_svg(records, spec) -> str:
    period = 2 * spec.m if spec.kind in ("star_even", "star_odd") else 1
    xs = [r.degree for r in records]
    ys = [r.factor for r in records]
    gs = [r.degree % period for r in records]
    return _svg_scatter(xs, ys, gs, f"Widom factors: {spec.kind}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_norms(cfg: ExperimentConfig, seed: int, out_prefix: str) -> int:
    records = _records_parallel(cfg.set_spec, cfg.degrees, cfg.tol,
                                cfg.per_edge, seed)
    csv = _records_csv(records)
    if "csv" in cfg.emit:
        _write(out_prefix + ".csv", csv)
    if "svg" in cfg.emit:
        _write(out_prefix + ".svg", _norms_svg(records, cfg.set_spec))
    sys.stdout.write(csv)
    return 1 if any(r.route == widom.ROUTE_ERROR for r in records) else 0


def cmd_limits(cfg: ExperimentConfig, seed: int, out_prefix: str) -> int:
    lim = widom.widom_limit(cfg.set_spec)
    lines = ["subsequence,limit,conjecture",
             f"even,{_fmt(lim.even)},{str(lim.conjecture).lower()}",
             f"odd,{_fmt(lim.odd)},{str(lim.conjecture).lower()}"]
    text = "\n".join(lines) + "\n"
    if "csv" in cfg.emit:
        _write(out_prefix + ".csv", text)
    sys.stdout.write(text)
    return 0


def cmd_shabat(cfg: ExperimentConfig, seed: int, out_prefix: str) -> int:
    if max(cfg.degrees) > 40:
        raise ValueError("shabat mode supports degrees up to 40")
    spec = sets.shabat_spec()
    records = _records_parallel(spec, cfg.degrees, cfg.tol, cfg.per_edge,
                                seed)
    csv = _records_csv(records)
    if "csv" in cfg.emit:
        _write(out_prefix + ".csv", csv)
    if "svg" in cfg.emit:
        _write(out_prefix + ".svg", _norms_svg(records, spec))
    sys.stdout.write(csv)
    return 1 if any(r.route == widom.ROUTE_ERROR for r in records) else 0


def preimage_cloud(spec: sets.SetSpec, degree: int, samples: int,
                   tol: float = 1e-10, seed: int = 0):
    """Point cloud of T_degree^{-1}(image of the set), grouped by arm.

    For star sets the image of the set under its Chebyshev polynomial is a
    union of rotated copies of a segment of length equal to the norm; the
    preimage of that cross is the decorated set containing the original.
    For a general polynomial preimage spec the cloud samples the preimage of
    the target interval under the defining polynomial itself.
    """
    if spec.kind == "star_even":
        r = cheb_complex.star_norm(spec.m, degree, tol=min(tol, 1e-10))
        _, l = cheb_complex.star_degree_split(spec.m, degree)
        arms = 2 * spec.m // math.gcd(2 * spec.m, l) if l else 1
        ts = np.linspace(0.0, r.norm, samples + 1)[1:]
        clouds = []
        for k in range(arms):
            rot = np.exp(2j * np.pi * k / arms) if arms > 1 else 1.0
            targets = [rot * t for t in ts] if arms > 1 else \
                list(ts) + list(-ts)
            groups = preimage_points(r.poly, targets, tol=1e-8, seed=seed)
            clouds.append(np.concatenate(groups))
        return clouds
    if spec.kind == "poly_preimage":
        p, (ta, tb) = spec.defining_poly()
        ts = np.linspace(ta, tb, samples + 2)[1:-1]
        groups = preimage_points(p, list(ts), tol=1e-8, seed=seed)
        return [np.concatenate(groups)]
    raise WidomlabError(f"no preimage cloud for kind {spec.kind!r}")


def cmd_preimage(cfg: ExperimentConfig, seed: int, out_prefix: str) -> int:
    spec = cfg.set_spec
    degree = cfg.degrees[0]
    clouds = preimage_cloud(spec, degree, cfg.samples, cfg.tol, seed)
    lines = ["re,im,group"]
    xs, ys, gs = [], [], []
    for g, cloud in enumerate(clouds):
        for z in cloud:
            lines.append(f"{_fmt(z.real)},{_fmt(z.imag)},{g}")
            xs.append(z.real)
            ys.append(z.imag)
            gs.append(g)
    if spec.kind == "star_even" and spec.m == 2:
        ng = len(clouds)
        for cloud in clouds:
            for z in cloud:
                w = sets.phi_star(z)
                lines.append(f"{_fmt(w.real)},{_fmt(w.imag)},{ng}")
    text = "\n".join(lines) + "\n"
    if "csv" in cfg.emit:
        _write(out_prefix + ".csv", text)
    if "svg" in cfg.emit:
        _write(out_prefix + ".svg",
               _svg_scatter(xs, ys, gs, f"preimage cloud, degree {degree}"))
    sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="widomlab",
        description="Chebyshev norms and Widom factors of polynomial "
                    "preimages of intervals")
    ap.add_argument("mode", choices=("norms", "limits", "shabat",
                                     "preimage"))
    ap.add_argument("--config", required=True, help="JSON experiment config")
    ap.add_argument("--out", default="widomlab_out",
                    help="output path prefix for CSV/SVG")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=None,
                    help="override the config tolerance")
    args = ap.parse_args(argv)

    try:
        with open(args.config) as fh:
            obj = json.load(fh)
        cfg = parse_config(obj, require_set=args.mode != "shabat")
        if args.tol is not None:
            obj2 = dict(obj)
            obj2["tol"] = args.tol
            cfg = parse_config(obj2, require_set=args.mode != "shabat")
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2

    handler = {"norms": cmd_norms, "limits": cmd_limits,
               "shabat": cmd_shabat, "preimage": cmd_preimage}[args.mode]
    try:
        return handler(cfg, args.seed, args.out)
    except (WidomlabError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
