"""Command-line entry point.

Every subcommand parses its flags, calls the library and formats the
result. JSON records look like ``{schema_version, command, inputs,
results}``; CSV subcommands write a header row. Failures print a JSON error
with a machine-readable ``code`` to stderr and exit with 1 (invalid or
unphysical input) or 2 (usage).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import entropic, extremal, multimode, sampling, sweeps, symplectic, twomode
from .entropy import LOG_FAMILIES, EntropySpec
from .errors import GaussianStateError, UnphysicalState

SCHEMA_VERSION = "1"
DIGITS = 12

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x):
    """Round to ``DIGITS`` significant digits; non-finite values become null."""
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return float(f"{x:.{DIGITS}g}") if math.isfinite(x) else None
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_num(v) for v in x]
    return x


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.{DIGITS}g}" if math.isfinite(x) else ""
    return str(x)


def _floats(count: int | None = None):
    def parse(text: str) -> list[float]:
        try:
            values = [float(v) for v in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
        if count is not None and len(values) != count:
            raise argparse.ArgumentTypeError(f"expected {count} values, got {len(values)}")
        return values

    return parse


def _range(text: str) -> tuple[float, float]:
    values = _floats()(text)
    if len(values) == 1:
        return values[0], values[0]
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected lo,hi or a single value, got {text!r}")
    return values[0], values[1]


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated mode indices, got {text!r}")


def _log_scale(args) -> float:
    return 1.0 / math.log(2.0) if args.log_base == "2" else 1.0


def _scaled(value, scale: float):
    return None if value is None else value * scale


def _emit_json(out, command: str, inputs: dict, results: dict) -> None:
    record = {"schema_version": SCHEMA_VERSION, "command": command, "inputs": _num(inputs), "results": _num(results)}
    json.dump(record, out, allow_nan=False)
    out.write("\n")


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _inputs(args, *names) -> dict:
    return {n: getattr(args, n) for n in names}


# Subcommands. Each returns None after writing to ``out``.


def cmd_classify(args, out):
    cls = extremal.classify(args.mu1, args.mu2, args.mu)
    if cls.tag is extremal.Region.UNPHYSICAL:
        raise UnphysicalState(f"purities ({args.mu1}, {args.mu2}, {args.mu}) are outside the physical domain")
    _emit_json(out, "classify", _inputs(args, "mu1", "mu2", "mu"), cls.to_dict())


def cmd_bounds(args, out):
    row = sweeps.purity_row(args.mu1, args.mu2, args.mu)
    if row.region == extremal.Region.UNPHYSICAL.value:
        raise UnphysicalState(f"purities ({args.mu1}, {args.mu2}, {args.mu}) are outside the physical domain")
    k = _log_scale(args)
    results = {
        "class": row.region,
        "emin": row.emin * k,
        "emax": row.emax * k,
        "ebar": row.ebar * k,
        "delta_ebar": row.delta,
    }
    _emit_json(out, "bounds", _inputs(args, "mu1", "mu2", "mu", "log_base"), results)


def cmd_negativity(args, out):
    k = _log_scale(args)
    if args.invariants is not None:
        inv = twomode.TwoModeInvariants(*args.invariants)
        report = twomode.validate_invariants(*inv)
        if not report.ok:
            raise UnphysicalState(f"invariants {tuple(inv)} violate {', '.join(report.failures)}")
        nu_lo, nu_hi = twomode.ppt_symplectic_eigs(twomode.require_valid(inv))
        results = {
            "en": twomode.two_mode_negativity(inv) * k,
            "nu_ppt_minus": nu_lo,
            "nu_ppt_plus": nu_hi,
            "validation": report.to_dict(),
        }
        inputs = {"invariants": list(inv), "log_base": args.log_base}
    else:
        cm = symplectic.require_physical(symplectic.CovarianceMatrix.load(args.cm).matrix)
        modes = args.modes if args.modes is not None else [0]
        nu_pt = symplectic.symplectic_spectrum(symplectic.partial_transpose(cm, modes))
        results = {
            "en": symplectic.log_negativity(cm, modes) * k,
            "nu_ppt_minus": nu_pt[0],
            "nu_ppt_plus": nu_pt[-1],
            "nu_ppt": nu_pt,
        }
        if cm.shape == (4, 4):
            inv = twomode.invariants_from_cm(cm)
            results["invariants"] = list(inv)
            results["validation"] = twomode.validate_invariants(*inv).to_dict()
        inputs = {"cm": args.cm, "modes": modes, "log_base": args.log_base}
    _emit_json(out, "negativity", inputs, results)


def cmd_entropy(args, out):
    spec = EntropySpec(args.family, args.p)
    cm = symplectic.require_physical(symplectic.CovarianceMatrix.load(args.cm).matrix)
    value = spec(cm)
    if spec.family in LOG_FAMILIES:
        value *= _log_scale(args)
    if args.json:
        inputs = {"cm": args.cm, "family": spec.family, "p": args.p, "log_base": args.log_base}
        _emit_json(out, "entropy", inputs, {"value": value})
    else:
        out.write(f"{value:.{DIGITS}g}\n")


def _constraint(args) -> entropic.EntropicConstraint:
    if args.s_marginal is not None:
        if args.s1 is not None or args.s2 is not None:
            raise UsageError("use either --s-marginal or --s1/--s2")
        return entropic.EntropicConstraint.symmetric(args.p, args.s_global, args.s_marginal)
    if args.s1 is None or args.s2 is None:
        raise UsageError("give --s-marginal, or both --s1 and --s2")
    return entropic.EntropicConstraint(args.p, args.s_global, args.s1, args.s2)


def cmd_entropic_bounds(args, out):
    c = _constraint(args)
    b = entropic.entropic_negativity_bounds(c, args.delta_points, args.cells)
    k = _log_scale(args)
    results = b.to_dict()
    for key in ("emin", "emax", "e_gmems", "e_glems"):
        results[key] = _scaled(results[key], k)
    inputs = {"p": c.p, "s_global": c.s_global, "s1": c.s1, "s2": c.s2, "log_base": args.log_base}
    _emit_json(out, "entropic-bounds", inputs, results)


def cmd_nodal(args, out):
    if args.s_marginal_range is not None:
        grid = sweeps.axis(*args.s_marginal_range, args.grid_steps)
    else:
        grid = entropic.default_marginal_grid(args.p, args.grid_steps)
    w = _writer(out)
    w.writerow(["s_marginal", "s_nodal"])
    for point in entropic.nodal_surface(grid, args.p, cells=args.cells):
        w.writerow([_cell(point.s_marginal), _cell(point.s_nodal)])


def cmd_localize(args, out):
    params = multimode.SymmetricMultimodeParams.from_sequence(args.params, args.n)
    state = multimode.localize(params)
    k = _log_scale(args)
    results = {
        "method": args.method,
        "equivalent": state.equivalent._asdict(),
        "nu_minus_block": state.nu_minus_block,
        "nu_plus_block": state.nu_plus_block,
        "degeneracy": state.degeneracy,
    }
    value = multimode.one_to_n_negativity(params, args.method)
    if args.method == "estimated":
        results["ebar"], results["delta_ebar"] = value[0] * k, value[1]
    else:
        results["en"] = value * k
    inputs = {"params": list(params.as_tuple()), "n": params.n, "method": args.method, "log_base": args.log_base}
    _emit_json(out, "localize", inputs, results)


SAMPLE_COLUMNS = ("mu1", "mu2", "mu", "delta", "class", "en")


def cmd_sample(args, out):
    config = sampling.SamplerConfig(seed=args.seed, mu_floor=args.mu_floor)
    rows = sampling.labelled_samples(config, args.count, args.region)
    k = _log_scale(args)
    for row in rows:
        row["en"] *= k
    if args.format == "json":
        inputs = _inputs(args, "seed", "count", "region", "mu_floor", "log_base")
        _emit_json(out, "sample", inputs, {"samples": rows})
        return
    w = _writer(out)
    w.writerow(SAMPLE_COLUMNS)
    for row in rows:
        w.writerow([_cell(row[c]) for c in SAMPLE_COLUMNS])


PURITY_COLUMNS = ("mu1", "mu2", "mu", "class", "emin", "emax", "ebar", "delta", "mu_over_mu1mu2", "mu_over_mu1")
ENTROPIC_COLUMNS = ("p", "s_marginal", "s_global", "emin", "emax", "argmin_family", "argmax_family", "e_gmems", "e_glems")


def cmd_sweep(args, out):
    k = _log_scale(args)
    w = _writer(out)
    if args.p is not None:
        rows = sweeps.entropic_sweep(
            args.p,
            sweeps.axis(*args.s_marginal_range, args.steps),
            sweeps.axis(*args.s_global_range, args.steps),
            args.delta_points,
            args.cells,
            args.jobs,
        )
        w.writerow(ENTROPIC_COLUMNS)
        for r in rows:
            w.writerow(
                [_cell(v) for v in (r.p, r.s_marginal, r.s_global, _scaled(r.emin, k), _scaled(r.emax, k))]
                + [_cell(r.argmin_family), _cell(r.argmax_family)]
                + [_cell(_scaled(r.e_gmems, k)), _cell(_scaled(r.e_glems, k))]
            )
        return
    rows = sweeps.purity_sweep(
        sweeps.axis(*args.mu1_range, args.steps),
        sweeps.axis(*args.mu2_range, args.steps),
        sweeps.axis(*args.mu_range, args.steps),
        symmetric=args.symmetric,
        jobs=args.jobs,
    )
    w.writerow(PURITY_COLUMNS)
    for r in rows:
        if args.physical_only and r.region == extremal.Region.UNPHYSICAL.value:
            continue
        w.writerow(
            [_cell(v) for v in (r.mu1, r.mu2, r.mu)]
            + [r.region]
            + [_cell(_scaled(v, k)) for v in (r.emin, r.emax, r.ebar)]
            + [_cell(v) for v in (r.delta, r.mu_over_mu1mu2, r.mu_over_mu1)]
        )


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--log-base", choices=("e", "2"), default="e", help="display base for negativities and log entropies")

    parser = _Parser(prog="cventangle", description="Entanglement of Gaussian states from purities and entropies.")
    sub = parser.add_subparsers(dest="command", required=True)

    def purities(p):
        p.add_argument("--mu1", type=float, required=True)
        p.add_argument("--mu2", type=float, required=True)
        p.add_argument("--mu", type=float, required=True)

    p = sub.add_parser("classify", parents=[common], help="place purities in the separability phase diagram")
    purities(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", parents=[common], help="extremal negativities at fixed purities")
    purities(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("negativity", parents=[common], help="logarithmic negativity of a state")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cm", help="covariance matrix JSON file")
    src.add_argument("--invariants", type=_floats(4), help="mu1,mu2,mu,delta")
    p.add_argument("--modes", type=_ints, help="0-based modes to transpose (CM input only, default 0)")
    p.set_defaults(func=cmd_negativity)

    p = sub.add_parser("entropy", parents=[common], help="entropy of a covariance matrix")
    p.add_argument("--cm", required=True, help="covariance matrix JSON file")
    p.add_argument(
        "--family", choices=("purity", "linear", "tsallis", "renyi", "von-neumann"), default="von-neumann"
    )
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--json", action="store_true", help="emit a JSON record instead of the bare value")
    p.set_defaults(func=cmd_entropy)

    def grids(p):
        p.add_argument("--delta-points", type=int, default=entropic.DEFAULT_DELTA_POINTS)
        p.add_argument("--cells", type=int, default=entropic.DEFAULT_CELLS)

    p = sub.add_parser("entropic-bounds", parents=[common], help="negativity bounds at fixed p-entropies")
    p.add_argument("--p", type=float, required=True, help="Tsallis index > 1, or 1 for von Neumann")
    p.add_argument("--s-global", type=float, required=True)
    p.add_argument("--s-marginal", type=float)
    p.add_argument("--s1", type=float)
    p.add_argument("--s2", type=float)
    grids(p)
    p.set_defaults(func=cmd_entropic_bounds)

    p = sub.add_parser("nodal", parents=[common], help="nodal inversion line as CSV")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--grid-steps", type=int, default=20)
    p.add_argument("--s-marginal-range", type=_range, help="lo,hi (default: marginal purities 0.95 down to 0.1)")
    p.add_argument("--cells", type=int, default=entropic.DEFAULT_CELLS)
    p.set_defaults(func=cmd_nodal)

    p = sub.add_parser("localize", parents=[common], help="1 x N negativity of a symmetric multimode state")
    p.add_argument("--params", type=_floats(7), required=True, help="a1,a2,b,e1,e2,g1,g2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("direct", "localized", "estimated"), default="localized")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("sample", parents=[common], help="seeded random two-mode invariants")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--region", choices=("separable", "coexistence", "entangled"))
    p.add_argument("--mu-floor", type=float, default=0.05)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("sweep", parents=[common], help="grid of bounds as CSV")
    p.add_argument("--mu1-range", type=_range, default=(0.05, 1.0))
    p.add_argument("--mu2-range", type=_range, default=(0.05, 1.0))
    p.add_argument("--mu-range", type=_range, default=(0.05, 1.0))
    p.add_argument("--symmetric", action="store_true", help="tie mu2 to mu1")
    p.add_argument("--physical-only", action="store_true", help="drop rows outside the physical domain")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--p", type=float, help="sweep symmetric p-entropies instead of purities")
    p.add_argument("--s-marginal-range", type=_range, default=(0.05, 0.3))
    p.add_argument("--s-global-range", type=_range, default=(0.05, 0.3))
    grids(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def _fail(command: str | None, code: str, message: str, status: int) -> int:
    record = {"schema_version": SCHEMA_VERSION, "command": command, "error": {"code": code, "message": message}}
    sys.stderr.write(json.dumps(record) + "\n")
    return status


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail(None, "usage", str(exc), EXIT_USAGE)
    try:
        args.func(args, out)
    except UsageError as exc:
        return _fail(args.command, "usage", str(exc), EXIT_USAGE)
    except GaussianStateError as exc:
        return _fail(args.command, exc.code, str(exc), EXIT_INVALID)
    except (ValueError, OSError) as exc:
        return _fail(args.command, "invalid_input", str(exc), EXIT_INVALID)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
