"""Command-line front end.

Every subcommand writes CSV (header row, LF endings) or JSON to standard
output, or to ``--output``.  Floats carry 12 significant digits so repeated
runs are byte-identical.  Exit status: 0 success, 1 usage error, 2 numerical
failure; errors go to standard error as ``error_kind=<kind> <message>``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import ed_engine, scaling, spectra, xy_exact
from .errors import ChainEntError, NumericalError
from .profiles import EntropyProfile

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0"
    return format(x, ".12g")


def _round(x):
    """Round floats in a JSON-bound structure to 12 significant digits."""
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise ValueError("non-finite value cannot be written as JSON")
        return float(format(x, ".12g"))
    return x


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_json(obj) -> str:
    return json.dumps(_round(obj), indent=2, ensure_ascii=False) + "\n"


def read_profile_csv(path: str) -> EntropyProfile:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"L", "S_bits"} <= set(reader.fieldnames):
            raise UsageError(f"{path}: expected CSV columns L,S_bits")
        rows = [(int(r["L"]), float(r["S_bits"])) for r in reader]
    if not rows:
        raise UsageError(f"{path}: no data rows")
    L, S = zip(*rows)
    return EntropyProfile(np.array(L), np.array(S), model="csv", params={"source": path})


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _xy(args) -> xy_exact.XYModel:
    try:
        return xy_exact.XYModel(args.h, args.gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_xy_profile(args):
    prof = xy_exact.entropy_profile(_xy(args), args.lmax, args.tol)
    return write_csv(["L", "S_bits"], zip(prof.L, prof.S))


def cmd_xy_surface(args):
    if args.h_steps < 1 or args.h_min < 0 or args.h_max < args.h_min:
        raise UsageError("need 0 <= h-min <= h-max and h-steps >= 1")
    hs = np.linspace(args.h_min, args.h_max, args.h_steps) if args.h_steps > 1 else [args.h_min]
    rows = []
    for h in hs:
        model = xy_exact.XYModel(float(h), args.gamma)
        prof = xy_exact.entropy_profile(model, args.lmax, args.tol)
        rows.extend((model.a, L, S) for L, S in zip(prof.L, prof.S))
    return write_csv(["a", "L", "S_bits"], rows)


def cmd_xy_spectrum(args):
    nu = xy_exact.block_modes(_xy(args), args.l, args.tol)
    if args.top is None:
        spec = spectra.reduced_spectrum_full(nu)
    else:
        spec = spectra.reduced_spectrum_topk(nu, args.top)
    return write_csv(["rank", "probability"], enumerate(spec.probabilities, start=1))


def cmd_xy_halfchain(args):
    if not args.a > 0 or math.isinf(args.a):
        raise UsageError("a must be positive and finite")
    return fmt(xy_exact.half_chain_entropy(xy_exact.XYModel.from_a(args.a, 1.0))) + "\n"


def cmd_xxz_profile(args):
    try:
        model = ed_engine.XXZModel(args.delta, args.lam, args.n, args.sign, args.bc)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    prof = ed_engine.entropy_profile_ed(model, args.tol, args.max_iter, args.seed)
    return write_csv(["L", "S_bits"], zip(prof.L, prof.S))


def cmd_fit(args):
    prof = read_profile_csv(args.input)
    window = (args.lmin if args.lmin is not None else scaling.default_window(prof)[0],
              args.lmax if args.lmax is not None else int(prof.L[-1]))
    try:
        fit = scaling.fit_central_charge(prof, window)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return write_json(fit.as_dict())


def cmd_majorize(args):
    if args.lmax > spectra.FULL_SPECTRUM_MAX_L:
        raise UsageError(f"--lmax is capped at {spectra.FULL_SPECTRUM_MAX_L} (full enumeration)")
    model = _xy(args)
    g = xy_exact.coupling_coefficients(model, args.lmax - 1, args.tol)
    specs = {L: spectra.reduced_spectrum_full(xy_exact.block_modes(model, L, g=g))
             for L in range(1, args.lmax + 1)}
    reports = []
    for L in range(1, args.lmax - 1):
        rep = spectra.majorization_compare(specs[L], specs[L + 2], args.maj_tol)
        reports.append({"l": L, "l_plus_2": L + 2, "holds": rep.holds,
                        "max_violation": rep.max_violation, "worst_index": rep.worst_index})
    return write_json(reports)


def cmd_gamma_shift(args):
    try:
        value = scaling.gamma_subleading(args.gamma, args.lmax, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return fmt(value) + "\n"


def cmd_rank_growth(args):
    model = _xy(args)
    g = xy_exact.coupling_coefficients(model, args.lmax - 1, args.tol)
    rows = []
    for L in range(1, args.lmax + 1):
        nu = xy_exact.block_modes(model, L, g=g)
        rows.append((L, spectra.effective_rank_from_modes(nu, args.epsilon)))
    return write_csv(["L", "effective_rank"], rows)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chainent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, xy=True):
        if xy:
            p.add_argument("--h", type=float, required=True, help="inverse coupling 1/a")
            p.add_argument("--gamma", type=float, required=True)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--output", "-o", default=None, help="write here instead of stdout")

    p = sub.add_parser("xy-profile", help="S_L of an XY chain for L = 1..lmax")
    common(p)
    p.add_argument("--lmax", type=_positive_int, required=True)
    p.set_defaults(func=cmd_xy_profile)

    p = sub.add_parser("xy-surface", help="S_L over a range of h (Ising by default)")
    common(p, xy=False)
    p.add_argument("--h-min", type=float, required=True)
    p.add_argument("--h-max", type=float, required=True)
    p.add_argument("--h-steps", type=int, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--lmax", type=_positive_int, required=True)
    p.set_defaults(func=cmd_xy_surface)

    p = sub.add_parser("xy-spectrum", help="eigenvalues of rho_L")
    common(p)
    p.add_argument("--l", type=_positive_int, required=True)
    p.add_argument("--top", type=_positive_int, default=None)
    p.set_defaults(func=cmd_xy_spectrum)

    p = sub.add_parser("xy-halfchain", help="near-critical Ising saturation entropy")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_xy_halfchain)

    p = sub.add_parser("xxz-profile", help="S_L of a finite XXZ chain by Lanczos")
    common(p, xy=False)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sign", choices=sorted(ed_engine.SIGNS), default="antiferro")
    p.add_argument("--bc", choices=ed_engine.BOUNDARIES, default="periodic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=_positive_int, default=500)
    p.set_defaults(func=cmd_xxz_profile)

    p = sub.add_parser("fit", help="central-charge fit of an L,S_bits CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--lmin", type=int, default=None)
    p.add_argument("--lmax", type=int, default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("majorize", help="check spectrum(L+2) is majorized by spectrum(L)")
    common(p)
    p.add_argument("--lmax", type=_positive_int, required=True)
    p.add_argument("--maj-tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_majorize)

    p = sub.add_parser("gamma-shift", help="S_L(gamma=1) - S_L(gamma) at a = 1")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--lmax", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_gamma_shift)

    p = sub.add_parser("rank-growth", help="effective rank of rho_L for L = 1..lmax")
    common(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--lmax", type=_positive_int, required=True)
    p.set_defaults(func=cmd_rank_growth)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        text = args.func(args)
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return EXIT_OK
    except UsageError as exc:
        stderr.write(f"error_kind=usage {exc}\n")
        return EXIT_USAGE
    except NumericalError as exc:
        stderr.write(f"error_kind={exc.kind} {exc}\n")
        return EXIT_NUMERICAL
    except (ChainEntError, ValueError) as exc:
        kind = getattr(exc, "kind", "usage")
        stderr.write(f"error_kind={kind} {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE


def main():  # pragma: no cover
    sys.exit(run())
