"""Command-line front end.

Exit codes are a stable contract: 0 member/true, 1 non-member/false,
2 undecided, 64 malformed input/usage, 66 unreadable input file, 73
unwritable output file.  All numeric output uses 12 significant digits and
identical inputs with identical seeds produce byte-identical output.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .appt import is_appt
from .families import FAMILIES
from .feasibility import Budget, decide_conv_dbp
from .linalg import eigvals_hermitian
from .orderings import enumerate_orderings
from .qubit_qudit import conv_bp2n_member_c, conv_bp2n_member_d, threshold_bisect
from .region import write_region_csv
from .serialize import (
    certificate_to_obj,
    dumps,
    operator_from_obj,
    ordering_to_obj,
    real_matrix_to_obj,
    spectrum_from_obj,
)
from .spectra import Spectrum
from .two_qubit import is_bp22_spectrum
from .witnesses import (
    battery_passed,
    necessary_battery,
    probe_block_positivity,
    sample_decomposable,
)

EXIT_MEMBER = 0
EXIT_NONMEMBER = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 64
EXIT_NOINPUT = 66
EXIT_CANTCREAT = 73


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2, which we reserve
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name: str, cast, fallback):
    raw = os.environ.get(f"EWS_{name}")
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        return fallback


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=_env("TOL", float, 1e-9))
    p.add_argument("--seed", type=int, default=_env("SEED", int, 0))
    p.add_argument("--budget", type=int, default=_env("BUDGET", int, 0),
                   help="iteration budget where applicable (0 = defaults)")


def _parse_dims(text: str) -> tuple[int, int]:
    parts = text.replace("x", ",").split(",")
    if len(parts) != 2:
        raise UsageError(f"bad dims {text!r}; expected m,n")
    return int(parts[0]), int(parts[1])


def _infer_dims(length: int, dims: tuple[int, int] | None, mode: str) -> tuple[int, int]:
    if dims is not None:
        return dims
    if mode == "bp22":
        if length != 4:
            raise UsageError("bp22 needs a length-4 spectrum")
        return (2, 2)
    if mode == "conv2n":
        if length % 2:
            raise UsageError("conv2n needs an even-length spectrum")
        return (2, length // 2)
    raise UsageError("provide --dims m,n for this mode")


def _parse_number_list(text: str) -> list[float]:
    clean = text.replace("−", "-").strip()
    clean = clean.replace("(", "[").replace(")", "]")
    import json

    try:
        data = json.loads(clean)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse spectrum values: {exc}") from exc
    if not isinstance(data, list):
        raise UsageError("spectrum values must be a list")
    return [float(v) for v in data]


def _spectrum_from_text(text: str, dims: tuple[int, int] | None, mode: str) -> Spectrum:
    import json

    text = text.strip()
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise FileNotFoundError(str(exc)) from exc
        text = raw.strip()
    for name, (builder, _mode) in FAMILIES.items():
        if text == name or text.startswith(name + ":"):
            if ":" not in text:
                raise UsageError(f"family {name} needs a parameter, e.g. {name}:c=-0.9")
            param = text.split(":", 1)[1]
            if not param.startswith("c="):
                raise UsageError(f"bad family parameter {param!r}; expected c=VALUE")
            return builder(float(param[2:].replace("−", "-")))
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse spectrum JSON: {exc}") from exc
        return spectrum_from_obj(obj)
    values = _parse_number_list(text)
    return Spectrum(np.asarray(values), _infer_dims(len(values), dims, mode))


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8"), True
    except OSError as exc:
        raise PermissionError(str(exc)) from exc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_check(args) -> int:
    dims = _parse_dims(args.dims) if args.dims else None
    s = _spectrum_from_text(args.spectrum, dims, args.mode)
    tol = args.tol
    payload: dict = {"mode": args.mode, "dims": [s.m, s.n], "spectrum": list(s.values)}
    if args.mode == "bp22":
        member = is_bp22_spectrum(s, tol)
        payload["member"] = member
        code = EXIT_MEMBER if member else EXIT_NONMEMBER
    elif args.mode == "conv2n":
        member = conv_bp2n_member_d(s, tol)
        payload["member"] = member
        cert = conv_bp2n_member_c(s, tol) if member else None
        payload["certificate"] = real_matrix_to_obj(cert) if cert is not None else None
        code = EXIT_MEMBER if member else EXIT_NONMEMBER
    elif args.mode == "appt":
        member = is_appt(s, tol)
        payload["member"] = member
        code = EXIT_MEMBER if member else EXIT_NONMEMBER
    elif args.mode == "battery":
        report = necessary_battery(s, decomposable=args.decomposable, tol=tol)
        payload["checks"] = report
        payload["all_pass"] = battery_passed(report)
        code = EXIT_MEMBER if payload["all_pass"] else EXIT_NONMEMBER
    else:  # convdbp
        budget = Budget(dykstra_cycles=args.budget) if args.budget else Budget()
        verdict = decide_conv_dbp(s, budget=budget, seed=args.seed, tol=tol)
        payload["status"] = verdict.status
        cert = verdict.psd or verdict.pairing
        payload["certificate"] = certificate_to_obj(cert) if cert is not None else None
        code = {
            "member": EXIT_MEMBER,
            "nonmember": EXIT_NONMEMBER,
            "undecided": EXIT_UNDECIDED,
        }[verdict.status]
    print(dumps(payload))
    return code


def _cmd_region(args) -> int:
    fh, close = _open_out(args.out)
    try:
        write_region_csv(fh, args.step, args.which, args.tol)
    finally:
        if close:
            fh.close()
    return 0


def _cmd_orderings(args) -> int:
    maps = enumerate_orderings(args.m)
    if args.export is None:
        print(dumps({"m": args.m, "count": len(maps)}))
        return 0
    fh, close = _open_out(args.export)
    try:
        fh.write(dumps([ordering_to_obj(o) for o in maps]))
        fh.write("\n")
    finally:
        if close:
            fh.close()
    return 0


def _membership_fn(mode: str, args):
    if mode == "bp22":
        return lambda s: is_bp22_spectrum(s, args.tol)
    if mode == "conv2n":
        return lambda s: conv_bp2n_member_d(s, args.tol)
    if mode == "appt":
        return lambda s: is_appt(s, args.tol)
    if mode == "convdbp":
        budget = Budget(dykstra_cycles=args.budget) if args.budget else Budget()
        return lambda s: decide_conv_dbp(s, budget=budget, seed=args.seed, tol=args.tol).is_member
    raise UsageError(f"unknown mode {mode!r}")


def _cmd_bisect(args) -> int:
    if args.family in FAMILIES:
        builder, mode = FAMILIES[args.family]
        label = args.family
    elif args.values:
        template = args.values.replace("−", "-").split(",")
        if "c" not in template:
            raise UsageError("--values template needs a 'c' placeholder")
        if not args.dims or not args.mode:
            raise UsageError("--values needs --dims and --mode")
        dims = _parse_dims(args.dims)
        mode = args.mode

        def builder(c: float, _template=template, _dims=dims) -> Spectrum:
            vals = [c if tok.strip() == "c" else float(tok) for tok in _template]
            return Spectrum(np.asarray(vals), _dims)

        label = args.values
    else:
        raise UsageError("give a known family name or --values/--dims/--mode")
    member = _membership_fn(mode, args)
    threshold = threshold_bisect(builder, args.lo, args.hi, member, tol=args.tol)
    print(dumps({"family": label, "mode": mode, "lo": args.lo, "hi": args.hi,
                 "threshold": threshold}))
    return 0


def _cmd_sample(args) -> int:
    dims = _parse_dims(args.dims)
    d = dims[0] * dims[1]
    if args.ranks:
        parts = args.ranks.split(",")
        if len(parts) != 2:
            raise UsageError("--ranks needs rx,ry")
        ranks = tuple(d if p.strip() == "full" else int(p) for p in parts)
    else:
        ranks = (d, d)
    batch = sample_decomposable(dims, ranks, args.seed, args.count)
    fh, close = _open_out(args.out)
    try:
        for op in batch:
            spectrum = eigvals_hermitian(op)
            fh.write(dumps({
                "dims": [dims[0], dims[1]],
                "spectrum": list(spectrum),
                "ranks": [ranks[0], ranks[1]],
                "seed": args.seed,
            }))
            fh.write("\n")
    finally:
        if close:
            fh.close()
    return 0


def _cmd_verify(args) -> int:
    import json

    try:
        with open(args.matrix, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise FileNotFoundError(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse matrix JSON: {exc}") from exc
    try:
        op = operator_from_obj(obj)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad matrix object: {exc}") from exc
    spectrum = eigvals_hermitian(op)
    s = Spectrum(spectrum, op.dims)
    report = necessary_battery(s, decomposable=args.decomposable, tol=args.tol)
    value, vec = probe_block_positivity(
        op, restarts=args.restarts, iters=args.iters, seed=args.seed
    )
    violation = value < -args.tol
    payload = {
        "dims": [op.m, op.n],
        "spectrum": list(spectrum),
        "battery": report,
        "battery_all_pass": battery_passed(report),
        "probe": {
            "min_value": value,
            "vector": [[z.real, z.imag] for z in vec],
            "violation_found": violation,
        },
    }
    print(dumps(payload))
    return EXIT_MEMBER if (payload["battery_all_pass"] and not violation) else EXIT_NONMEMBER


def build_parser() -> _Parser:
    parser = _Parser(prog="ews", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[], help="spectral membership checks")
    p.add_argument("--mode", required=True,
                   choices=["bp22", "conv2n", "convdbp", "appt", "battery"])
    p.add_argument("--dims", help="factor dimensions m,n (when not inferable)")
    p.add_argument("--decomposable", action="store_true",
                   help="battery: include the decomposable-only floor")
    p.add_argument("spectrum", help="JSON object, bare list, @file, or family:c=VALUE")
    _add_common(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("region", help="export the trace-1 slice labels as CSV")
    p.add_argument("--step", type=float, default=0.02)
    p.add_argument("--which", choices=["exact", "convexhull"], default="convexhull")
    p.add_argument("--out", help="output path (default stdout)")
    _add_common(p)
    p.set_defaults(fn=_cmd_region)

    p = sub.add_parser("orderings", help="enumerate realizable product orderings")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", action="store_true", help="print the count (default)")
    p.add_argument("--export", help="write the full list as JSON to a path or '-'")
    _add_common(p)
    p.set_defaults(fn=_cmd_orderings)

    p = sub.add_parser("bisect", help="membership threshold of a one-parameter family")
    p.add_argument("family", nargs="?", help="built-in family name")
    p.add_argument("lo", type=float)
    p.add_argument("hi", type=float)
    p.add_argument("--values", help="comma list with a 'c' placeholder")
    p.add_argument("--dims")
    p.add_argument("--mode", choices=["bp22", "conv2n", "convdbp", "appt"])
    _add_common(p)
    p.set_defaults(fn=_cmd_bisect)

    p = sub.add_parser("sample", help="sample random decomposable witnesses as JSONL")
    p.add_argument("--dims", required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--ranks", help="rx,ry (integers or 'full'; 0 drops that part)")
    p.add_argument("--out", help="output path (default stdout)")
    _add_common(p)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("verify", help="spectrum, battery, and see-saw probe of a matrix")
    p.add_argument("matrix", help="path to a matrix JSON file")
    p.add_argument("--decomposable", action="store_true")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--iters", type=int, default=200)
    _add_common(p)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"ews: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"ews: cannot read input: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except PermissionError as exc:
        print(f"ews: cannot write output: {exc}", file=sys.stderr)
        return EXIT_CANTCREAT
    except ValueError as exc:
        print(f"ews: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
