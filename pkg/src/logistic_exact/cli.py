"""Command-line front end.

Subcommands: ``ode`` (closed-form curves of the growth equation), ``map3``
(quadratic map iteration / closed forms), ``map4`` (backward-coupled map),
``compare`` (round-off divergence reports against the oracle), ``figure``
(presets 1-3 reproducing the reference parameter sets), and ``rng`` (chaos
bits).  Output is CSV (default), JSON (default for ``compare``), or a
minimal dependency-free SVG line chart.

Exit codes: 0 success, 2 usage/validation problems, 3 mathematical
domain/pole errors raised by the core modules.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from mpmath import mp
from mpmath.libmp import repr_dps

from . import continuous, map_riccati, map_standard
from .errors import DegeneracyError, DomainError, EscapeError, PoleError
from .precision import (
    METHOD_ITERATED,
    METHOD_ODE_CLOSED_FORM,
    PrecisionPolicy,
)

FIGURE_PRESETS = {
    "1": {"r": 1.7, "x0": 0.11, "gammas": (0.14, 0.15, 0.17, 0.25),
          "t_end": 10.0, "dt": 0.02},
    "2": {"r": -2.0, "x0": 0.9, "steps": 60, "bits": 53},
    "3": {"r": 1.73, "x0": 0.333, "gammas": (0.5, 1.0, 2.0, 5.0, 10.0),
          "steps": 50},
}

_FORM_CHOICES = tuple(v.value for v in map_standard.ClosedForm)


@dataclass
class RunConfig:
    """A fully resolved invocation: subcommand, its parameters, and output routing."""

    subcommand: str
    parameters: dict = field(default_factory=dict)
    output_format: str = "csv"
    output_path: str = "-"


@dataclass
class _Series:
    label: str
    method: str
    bits: int
    samples: list


def _require_finite(name, value):
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f"--{name} must be a finite number, got {value!r}")


def _get(params, key, default):
    value = params.get(key)
    return default if value is None else value


# ---------------------------------------------------------------- runners

def _run_ode(params):
    r, x0 = params["r"], params["x0"]
    t_end = _get(params, "t_end", 10.0)
    dt = _get(params, "dt", 0.02)
    if not (dt > 0 and t_end >= dt):
        raise ValueError("need 0 < dt <= t_end")
    gammas = sorted(params.get("gammas") or ())
    p = continuous.ContinuousParams(r, x0)
    ts = [k * dt for k in range(int(round(t_end / dt)) + 1)]
    series = [_Series("particular", METHOD_ODE_CLOSED_FORM, 53,
                      [(t, continuous.particular_solution(t, p)) for t in ts])]
    for g in gammas:
        shift = continuous.RiccatiShift(g)
        series.append(_Series(f"gamma={g!r}", METHOD_ODE_CLOSED_FORM, 53,
                              [(t, continuous.general_solution(t, p, shift)) for t in ts]))
    config = {"subcommand": "ode", "r": r, "x0": x0, "gammas": list(gammas),
              "t_end": t_end, "dt": dt}
    return {"config": config, "series": series}


def _run_map3(params):
    r, x0 = params["r"], params["x0"]
    steps = params["steps"]
    bits = _get(params, "bits", 53)
    forms = params.get("forms") or ()
    policy = PrecisionPolicy(bits)
    p = map_standard.MapParams(r, x0)
    traj = map_standard.iterate(p, steps, policy)
    series = [_Series("iterated", traj.method_tag, bits, list(traj.samples))]
    for name in forms:
        variant = map_standard.ClosedForm(name)
        ct = map_standard.closed_form_trajectory(p, steps, variant, policy)
        series.append(_Series(name, ct.method_tag, bits, list(ct.samples)))
    config = {"subcommand": "map3", "r": r, "x0": x0, "steps": steps,
              "bits": bits, "forms": list(forms)}
    return {"config": config, "series": series}


def _run_map4(params):
    r, x0 = params["r"], params["x0"]
    steps = params["steps"]
    gammas = sorted(params.get("gammas") or ())
    p = map_riccati.RiccatiMapParams(r, x0)
    traj = map_riccati.iterate(p, steps)
    series = [_Series("iterated", traj.method_tag, 53, list(traj.samples))]
    pt = map_riccati.particular_trajectory(p, steps)
    series.append(_Series("particular", pt.method_tag, 53, list(pt.samples)))
    coeffs = map_riccati.coefficients(p, steps) if steps > 0 else None
    for g in gammas:
        gt = map_riccati.general_trajectory(p, g, steps, coeffs)
        series.append(_Series(f"gamma={g!r}", gt.method_tag, 53, list(gt.samples)))
    config = {"subcommand": "map4", "r": r, "x0": x0, "steps": steps,
              "gammas": list(gammas)}
    return {"config": config, "series": series}


def _run_compare(params):
    r, x0 = params["r"], params["x0"]
    steps = _get(params, "steps", 60)
    bits = _get(params, "bits", 53)
    threshold = _get(params, "threshold", 0.01)
    forms = params.get("forms") or ()
    oracle_bits = params.get("oracle_bits")
    resolved = oracle_bits if oracle_bits is not None else \
        map_standard.resolve_oracle_bits(steps, bits)
    p = map_standard.MapParams(r, x0)
    reports = []

    def pack(label, method, rep):
        reports.append({
            "label": label,
            "method": method,
            "working_bits": bits,
            "oracle_bits": resolved,
            "threshold": rep.threshold,
            "first_divergent_index": rep.first_divergent_index,
            "max_error": rep.max_error,
            "per_step_abs_error": list(rep.per_step_abs_error),
        })

    pack("iterated", METHOD_ITERATED,
         map_standard.iteration_divergence(p, steps, bits, threshold, resolved))
    for name in forms:
        variant = map_standard.ClosedForm(name)
        pack(name, f"closed-form:{name}",
             map_standard.divergence_analysis(p, variant, steps, bits, threshold, resolved))
    config = {"subcommand": "compare", "r": r, "x0": x0, "steps": steps,
              "bits": bits, "threshold": threshold, "forms": list(forms),
              "oracle_bits": resolved}
    return {"config": config, "reports": reports}


def _run_rng(params):
    x0 = params["x0"]
    count = params["count"]
    burn_in = _get(params, "burn_in", 0)
    bits = map_standard.prng_bits(x0, count, burn_in)
    series = [_Series("bits", "prng", 53, list(enumerate(bits)))]
    config = {"subcommand": "rng", "x0": x0, "count": count, "burn_in": burn_in}
    return {"config": config, "series": series}


def _run_figure(params):
    which = params["which"]
    preset = FIGURE_PRESETS[which]
    if which == "1":
        doc = _run_ode({"r": preset["r"], "x0": preset["x0"],
                        "gammas": preset["gammas"], "t_end": preset["t_end"],
                        "dt": preset["dt"]})
    elif which == "2":
        p = map_standard.MapParams(preset["r"], preset["x0"])
        steps, bits = preset["steps"], preset["bits"]
        policy = PrecisionPolicy(bits)
        series = []
        it = map_standard.iterate(p, steps, policy)
        series.append(_Series("iterated", it.method_tag, bits, list(it.samples)))
        for variant in (map_standard.ClosedForm.RM2_COMPOSED,
                        map_standard.ClosedForm.RM2_DIRECT):
            ct = map_standard.closed_form_trajectory(p, steps, variant, policy)
            series.append(_Series(variant.value, ct.method_tag, bits, list(ct.samples)))
        ref = map_standard.oracle(p, steps)
        series.append(_Series("oracle", ref.method_tag,
                              ref.precision.significand_bits, list(ref.samples)))
        doc = {"config": {"subcommand": "map3", "r": preset["r"], "x0": preset["x0"],
                          "steps": steps, "bits": bits,
                          "forms": ["table1", "simple"]},
               "series": series}
    else:
        doc = _run_map4({"r": preset["r"], "x0": preset["x0"],
                         "gammas": preset["gammas"], "steps": preset["steps"]})
    doc["config"] = {"subcommand": "figure", "which": which,
                     "preset": doc["config"]}
    return doc


_RUNNERS = {
    "ode": _run_ode,
    "map3": _run_map3,
    "map4": _run_map4,
    "compare": _run_compare,
    "figure": _run_figure,
    "rng": _run_rng,
}


# --------------------------------------------------------------- emitters

def _format_index(i):
    return str(i) if isinstance(i, int) else repr(float(i))


def _format_value(v, bits):
    """Lossless decimal serialization: shortest round-trip repr for doubles,
    full digit count for high-precision values."""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if bits <= 53:
        return repr(float(v))
    return mp.nstr(v, repr_dps(bits))


def _json_value(v, bits):
    if isinstance(v, int):
        return v
    if isinstance(v, float) or bits <= 53:
        return float(v)
    return mp.nstr(v, repr_dps(bits))


def _render_csv(doc):
    lines = ["index_or_time,series,method,value"]
    if "series" in doc:
        for s in doc["series"]:
            for i, v in s.samples:
                lines.append(f"{_format_index(i)},{s.label},{s.method},"
                             f"{_format_value(v, s.bits)}")
    else:
        for rep in doc["reports"]:
            for i, e in enumerate(rep["per_step_abs_error"]):
                lines.append(f"{i},{rep['label']},abs-error,{e!r}")
    return "\n".join(lines) + "\n"


def _render_json(doc):
    obj = {"config": doc["config"]}
    if "series" in doc:
        obj["series"] = [{
            "label": s.label,
            "method": s.method,
            "precision_bits": s.bits,
            "samples": [[_json_value(i, 53) if isinstance(i, (int, float)) else i,
                         _json_value(v, s.bits)] for i, v in s.samples],
        } for s in doc["series"]]
    else:
        obj["reports"] = doc["reports"]
    return json.dumps(obj, indent=2) + "\n"


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
            "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _svg_series(doc):
    if "series" in doc:
        return [(s.label, [(float(i), float(v)) for i, v in s.samples])
                for s in doc["series"]]
    return [(rep["label"],
             [(float(i), e) for i, e in enumerate(rep["per_step_abs_error"])])
            for rep in doc["reports"]]


def _render_svg(doc):
    """Minimal line chart: axes, one polyline per series, legend.  Meant for
    eyeballing the curves, not for publication."""
    named = _svg_series(doc)
    width, height = 720, 480
    ml, mr, mt, mb = 60, 160, 36, 46
    xs = [x for _, pts in named for x, _ in pts]
    ys = [y for _, pts in named for _, y in pts]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    if xmax == xmin:
        xmax = xmin + 1.0
    if ymax == ymin:
        ymax = ymin + 1.0
    pad = 0.05 * (ymax - ymin)
    ymin, ymax = ymin - pad, ymax + pad

    def sx(x):
        return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr)

    def sy(y):
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb)

    title = doc["config"].get("subcommand", "")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{height - mb}" x2="{width - mr}" y2="{height - mb}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" '
        'stroke="black" stroke-width="1"/>',
        f'<text x="{ml}" y="{height - mb + 18}" font-size="11" '
        f'text-anchor="middle">{xmin:g}</text>',
        f'<text x="{width - mr}" y="{height - mb + 18}" font-size="11" '
        f'text-anchor="middle">{xmax:g}</text>',
        f'<text x="{ml - 6}" y="{height - mb + 4}" font-size="11" '
        f'text-anchor="end">{ymin:.6g}</text>',
        f'<text x="{ml - 6}" y="{mt + 4}" font-size="11" '
        f'text-anchor="end">{ymax:.6g}</text>',
        f'<text x="{(ml + width - mr) / 2:.1f}" y="{mt - 14}" font-size="13" '
        f'text-anchor="middle">{title}</text>',
    ]
    for idx, (label, pts) in enumerate(named):
        color = _PALETTE[idx % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                     f'points="{coords}"/>')
        ly = mt + 16 * idx
        parts.append(f'<line x1="{width - mr + 10}" y1="{ly}" '
                     f'x2="{width - mr + 30}" y2="{ly}" stroke="{color}" '
                     'stroke-width="2"/>')
        parts.append(f'<text x="{width - mr + 36}" y="{ly + 4}" '
                     f'font-size="11">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


_RENDERERS = {"csv": _render_csv, "json": _render_json, "svg": _render_svg}


# ------------------------------------------------------------ entry point

def run(config: RunConfig) -> int:
    """Execute one resolved configuration, writing the artifact to its sink."""
    runner = _RUNNERS.get(config.subcommand)
    if runner is None:
        raise ValueError(f"unknown subcommand {config.subcommand!r}")
    renderer = _RENDERERS.get(config.output_format)
    if renderer is None:
        raise ValueError(f"unknown output format {config.output_format!r}")
    for key, value in config.parameters.items():
        if isinstance(value, (list, tuple)):
            for v in value:
                _require_finite(key, v)
        else:
            _require_finite(key, value)
    text = renderer(runner(config.parameters))
    if config.output_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="logistic-exact",
        description="Exact solutions of logistic dynamics with "
                    "arbitrary-precision iteration oracles.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(sp, default_format="csv"):
        sp.add_argument("--format", choices=("csv", "json", "svg"),
                        default=default_format, help="output format")
        sp.add_argument("--out", default="-", metavar="PATH",
                        help="output path ('-' for stdout)")

    sp = sub.add_parser("ode", help="closed-form curves of dx/dt = r*x*(1-x)")
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--gamma", type=float, action="append", dest="gammas",
                    help="general-solution member (repeatable)")
    sp.add_argument("--t-end", type=float, default=10.0)
    sp.add_argument("--dt", type=float, default=0.02)
    common(sp)

    sp = sub.add_parser("map3", help="quadratic map x' = r*x*(1-x)")
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--bits", type=int, default=53)
    sp.add_argument("--form", choices=_FORM_CHOICES, action="append",
                    dest="forms", help="closed form to evaluate (repeatable)")
    common(sp)

    sp = sub.add_parser("map4", help="backward-coupled map x'-x = r*x*(1-x')")
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--gamma", type=float, action="append", dest="gammas",
                    help="general-solution member (repeatable)")
    common(sp)

    sp = sub.add_parser("compare",
                        help="divergence of low-precision methods vs the oracle")
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--steps", type=int, default=60)
    sp.add_argument("--bits", type=int, default=53)
    sp.add_argument("--threshold", type=float, default=0.01)
    sp.add_argument("--form", choices=_FORM_CHOICES, action="append",
                    dest="forms", help="closed form to compare (repeatable)")
    sp.add_argument("--oracle-bits", type=int, default=None)
    common(sp, default_format="json")

    sp = sub.add_parser("figure", help="reference parameter presets 1-3")
    sp.add_argument("which", choices=("1", "2", "3"))
    common(sp)

    sp = sub.add_parser("rng", help="chaos bits from the r=4 orbit")
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--burn-in", type=int, default=0, dest="burn_in")
    common(sp)
    return ap


_PARAM_KEYS = {
    "ode": ("r", "x0", "gammas", "t_end", "dt"),
    "map3": ("r", "x0", "steps", "bits", "forms"),
    "map4": ("r", "x0", "steps", "gammas"),
    "compare": ("r", "x0", "steps", "bits", "threshold", "forms", "oracle_bits"),
    "figure": ("which",),
    "rng": ("x0", "count", "burn_in"),
}


def parse_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    params = {k: getattr(ns, k) for k in _PARAM_KEYS[ns.subcommand]}
    return RunConfig(ns.subcommand, params, ns.format, ns.out)


def main(argv=None) -> int:
    config = parse_args(argv)
    try:
        return run(config)
    except (PoleError, DomainError, EscapeError, DegeneracyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
