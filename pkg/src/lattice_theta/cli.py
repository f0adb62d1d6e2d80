"""Command-line front end: ``lattice-theta <subcommand> [options]``.

Data goes to stdout (aligned table or CSV), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from mpmath import mp, mpf

from . import __version__
from .builtin import TABLE1_BUILTIN, builtin_entries
from .codes import (
    CodeCatalogEntry,
    CodeError,
    extremal_type2_distribution,
    format_catalog,
    load_catalog,
    load_catalog_dir,
    parse_catalog,
    parse_generator,
    weight_distribution,
)
from .criteria import global_min_check, necessary_condition, sufficient_condition, ushape_exact
from .ensemble import EnsembleSpec, ensemble_min_value, ensemble_ushape_check
from .numerics import DEFAULT_DIGITS, PrecisionReal, precision, workdps
from .ratio import LatticeSpec, decompose_h_basis, ratio_eval, ratio_poly_from_code, theta_eval
from .secrecy import (
    TABLE1_LENGTHS,
    figure1_sweep,
    flatness_factor,
    smoothing_parameter,
    table1_row,
    tau_eps_solve,
)

__all__ = ["RunConfig", "build_parser", "main"]


@dataclass(frozen=True)
class RunConfig:
    precision_digits: int = DEFAULT_DIGITS
    tol: mpf = mpf("1e-30")
    catalog_path: Path = Path("catalog")
    output: str = "table"
    grid_size: int = 1001

    def __post_init__(self) -> None:
        if self.precision_digits < 15:
            raise ValueError("--digits must be at least 15")
        if self.tol <= 0:
            raise ValueError("--tol must be positive")
        if self.output not in ("table", "csv"):
            raise ValueError("output must be 'table' or 'csv'")


class UsageError(Exception):
    pass


# formatting ------------------------------------------------------------------

def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_real(x, digits: int = 12) -> str:
    if isinstance(x, PrecisionReal):
        x = x.value
    with workdps():
        return mp.nstr(mpf(x), digits, strip_zeros=False)


def fmt_err(x: PrecisionReal) -> str:
    return mp.nstr(x.err, 3)


def emit(cfg: RunConfig, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    out = sys.stdout
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
        return
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    for line in [header, *rows]:
        out.write("  ".join(str(c).ljust(wd) for c, wd in zip(line, widths)).rstrip() + "\n")


# lattice selection -------------------------------------------------------------

def _looks_like_generator(text: str) -> bool:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return set(line) <= {"0", "1"}
    return False


def _entries(cfg: RunConfig) -> list[CodeCatalogEntry]:
    return list(builtin_entries()) + load_catalog_dir(cfg.catalog_path)


def find_entry(cfg: RunConfig, name: str) -> CodeCatalogEntry:
    for e in _entries(cfg):
        if e.name == name:
            return e
    known = ", ".join(e.name for e in _entries(cfg))
    raise UsageError(f"unknown catalog code {name!r} (known: {known})")


def _code_source(args, cfg: RunConfig):
    """(distribution, k, name) from --code or --catalog, or None."""
    if args.code:
        path = Path(args.code)
        text = path.read_text()
        if _looks_like_generator(text):
            code = parse_generator(text, path.stem)
            return weight_distribution(code), code.k, code.name
        entries = parse_catalog(text, str(path))
        if not entries:
            raise UsageError(f"{path} holds no catalog entries")
        e = entries[0]
        return e.distribution, e.k, e.name
    if args.catalog:
        e = find_entry(cfg, args.catalog)
        return e.distribution, e.k, e.name
    return None


def parse_h_coeffs(text: str) -> list[Fraction]:
    """Comma-separated a_0,a_1,...; rationals as p/q."""
    try:
        return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --h-coeffs list: {exc}") from None


def lattice_from_args(args, cfg: RunConfig) -> LatticeSpec:
    chosen = [bool(args.zn), bool(args.code), bool(args.catalog), bool(args.h_coeffs), bool(args.ensemble)]
    if sum(chosen) != 1:
        raise UsageError("choose exactly one of --zn, --code, --catalog, --h-coeffs, --ensemble")
    if args.zn:
        return LatticeSpec.integer(args.zn)
    if args.ensemble:
        return LatticeSpec.ensemble(args.ensemble)
    if args.h_coeffs:
        a = parse_h_coeffs(args.h_coeffs)
        n = args.dim or 8 * max(len(a) - 1, 1)
        if n // 8 < len(a) - 1:
            raise UsageError(f"{len(a)} h-coefficients need --dim of at least {8 * (len(a) - 1)}")
        return LatticeSpec.explicit_h(n, a)
    dist, k, name = _code_source(args, cfg)
    if args.scaled:
        return LatticeSpec.scaled(dist, k, name)
    return LatticeSpec.construction_a(dist, name)


def _code_distribution(args, cfg: RunConfig):
    src = _code_source(args, cfg)
    if src is None:
        raise UsageError("this command needs --code FILE or --catalog NAME")
    return src


def parse_eps(text: str | None, n: int) -> Fraction:
    if text is None:
        return Fraction(1, n)
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --eps value {text!r}") from None
    if eps <= 0:
        raise UsageError("--eps must be positive")
    return eps


def parse_real(text) -> mpf:
    """Decimal string to mpf at the working precision."""
    with workdps():
        return mpf(text)


def _geometric_grid(lo, hi, points: int) -> list[mpf]:
    lo, hi = parse_real(lo), parse_real(hi)
    if not 0 < lo < hi or points < 2:
        raise UsageError("need 0 < tau-min < tau-max and at least 2 points")
    with workdps():
        ratio = (hi / lo) ** (mpf(1) / (points - 1))
        return [lo * ratio**i for i in range(points)]


# subcommands -------------------------------------------------------------------

def cmd_theta(args, cfg: RunConfig) -> None:
    spec = lattice_from_args(args, cfg)
    v = theta_eval(spec, parse_real(args.tau), cfg.tol)
    emit(cfg, ["lattice", "tau", "theta", "err_bound"],
         [[spec.label, args.tau, fmt_real(v, cfg.precision_digits // 2), fmt_err(v)]])


def cmd_ratio(args, cfg: RunConfig) -> None:
    spec = lattice_from_args(args, cfg)
    v = ratio_eval(spec, parse_real(args.tau), cfg.tol)
    emit(cfg, ["lattice", "tau", "ratio", "err_bound"],
         [[spec.label, args.tau, fmt_real(v, cfg.precision_digits // 2), fmt_err(v)]])


def _h_coeffs_for(args, cfg: RunConfig) -> tuple[list[Fraction], object | None]:
    if args.h_coeffs:
        return parse_h_coeffs(args.h_coeffs), None
    dist, _, _ = _code_distribution(args, cfg)
    return list(decompose_h_basis(ratio_poly_from_code(dist)).h_coeffs), dist


def cmd_decompose(args, cfg: RunConfig) -> None:
    a, _ = _h_coeffs_for(args, cfg)
    if cfg.output == "csv":
        emit(cfg, ["r", "a_r"], [[str(r), fmt_rational(c)] for r, c in enumerate(a)])
        return
    sys.stdout.write(" ".join(f"a{r}={fmt_rational(a[r])}" for r in reversed(range(len(a)))) + "\n")


def cmd_check(args, cfg: RunConfig) -> None:
    a, dist = _h_coeffs_for(args, cfg)
    rows = []
    suff = sufficient_condition(a)
    for j, alpha, beta, ok in suff.per_j:
        rows.append([f"sufficient j={j}", f"alpha={fmt_rational(alpha)} beta={fmt_rational(beta)}",
                     "pass" if ok else "fail"])
    rows.append(["sufficient", suff.note or "all j", "pass" if suff.overall else "fail"])
    if dist is not None:
        nec = necessary_condition(dist)
        rows.append(["necessary", f"value={fmt_rational(nec.value)}", "pass" if nec.passes else "fail"])
    cert = ushape_exact(a)
    detail = f"roots={cert.proof.roots_in_unit_interval}" if cert.proof else cert.note
    if cert.witness is not None:
        detail += f" witness={fmt_rational(cert.witness)}"
    rows.append(["u_shape", detail, cert.verdict.value])
    if cert.u_shaped:
        gm = global_min_check(a, cfg.tol, cert)
        rows.append(["minimum", f"t={gm.marker} value={fmt_rational(gm.min_value)}",
                     "pass" if 0 < gm.min_value <= 1 else "fail"])
    emit(cfg, ["check", "detail", "result"], rows)


def cmd_flatness(args, cfg: RunConfig) -> None:
    spec = lattice_from_args(args, cfg)
    if args.curve:
        lo, hi, pts = args.curve
        rows = [[fmt_real(t), fmt_real(flatness_factor(spec, t, cfg.tol))]
                for t in _geometric_grid(lo, hi, int(pts))]
        emit(cfg, ["tau", "epsilon"], rows)
        return
    if args.tau is None:
        raise UsageError("flatness needs --tau or --curve")
    v = flatness_factor(spec, parse_real(args.tau), cfg.tol)
    emit(cfg, ["lattice", "tau", "epsilon", "err_bound"], [[spec.label, args.tau, fmt_real(v, 20), fmt_err(v)]])


def cmd_tau_eps(args, cfg: RunConfig) -> None:
    spec = lattice_from_args(args, cfg)
    eps = parse_eps(args.eps, spec.n)
    tau = tau_eps_solve(spec, eps, args.tau_tol)
    emit(cfg, ["lattice", "n", "eps", "tau_eps"], [[spec.label, str(spec.n), fmt_rational(eps), fmt_real(tau)]])


def cmd_smoothing(args, cfg: RunConfig) -> None:
    spec = lattice_from_args(args, cfg)
    eps = parse_eps(args.eps, spec.n)
    eta = smoothing_parameter(spec, eps, args.tau_tol)
    emit(cfg, ["lattice", "n", "eps", "eta_eps"], [[spec.label, str(spec.n), fmt_rational(eps), fmt_real(eta)]])


def _table1_entry(cfg: RunConfig, n: int) -> CodeCatalogEntry | None:
    if n in TABLE1_BUILTIN:
        return find_entry(cfg, TABLE1_BUILTIN[n])
    for e in load_catalog_dir(cfg.catalog_path):
        if e.n == n and e.claims_self_dual:
            return e
    return None


def cmd_table1(args, cfg: RunConfig) -> None:
    rows = []
    for n in args.lengths:
        entry = _table1_entry(cfg, n)
        if entry is None:
            print(f"n={n}: no catalog entry under {cfg.catalog_path}, code column skipped", file=sys.stderr)
        r = table1_row(n, entry, args.tau_tol)
        code = "catalog-missing" if r.tau_code is None else f"{float(r.tau_code):.{args.places}f}"
        rows.append([str(n), f"{float(r.tau_zn):.{args.places}f}", f"{float(r.tau_lower):.{args.places}f}",
                     code, f"{float(r.tau_ensemble):.{args.places}f}", r.code_name or ""])
    emit(cfg, ["n", "tau_zn", "tau_lower", "tau_code", "tau_ensemble", "code"], rows)


def cmd_figure1(args, cfg: RunConfig) -> None:
    eps = parse_eps(args.eps, args.n)
    rows = [[r.code_id, str(r.n), fmt_real(r.tau_eps), fmt_real(r.eta_eps)]
            for r in figure1_sweep(eps, args.n, args.tau_tol)]
    emit(cfg, ["code_id", "n", "tau_eps", "eta_eps"], rows)


def cmd_ratio_curve(args, cfg: RunConfig) -> None:
    spec = lattice_from_args(args, cfg)
    rows = [[fmt_real(t), fmt_real(ratio_eval(spec, t, cfg.tol))]
            for t in _geometric_grid(args.tau_min, args.tau_max, args.points)]
    emit(cfg, ["tau", "ratio"], rows)


def cmd_ensemble(args, cfg: RunConfig) -> None:
    spec = EnsembleSpec(args.n)
    cert = ensemble_ushape_check(spec, cfg.grid_size)
    eps = parse_eps(args.eps, spec.n)
    tau = tau_eps_solve(LatticeSpec.ensemble(spec.n), eps, args.tau_tol)
    emit(cfg, ["n", "k", "min_ratio", "u_shape", "eps", "tau_eps"],
         [[str(spec.n), str(spec.k), fmt_real(ensemble_min_value(spec)), cert.verdict.value,
           fmt_rational(eps), fmt_real(tau)]])


def cmd_catalog_extremal(args, cfg: RunConfig) -> None:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n in args.lengths:
        dist = extremal_type2_distribution(n)
        entry = CodeCatalogEntry(f"extremal{n}", n, n // 2,
                       f"doubly-even self-dual [{n},{n // 2},{dist.min_distance}] extremal enumerator from Gleason basis",
                       dist)
        path = out / f"extremal_typeII_{n}.txt"
        path.write_text("# weight distribution of a doubly-even self-dual code meeting d = 4*floor(n/24)+4\n"
                        + format_catalog([entry]))
        load_catalog(path)
        print(f"wrote {path}", file=sys.stderr)


# parser --------------------------------------------------------------------------

def _lattice_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("lattice")
    g.add_argument("--zn", type=int, metavar="N", help="integer lattice Z^N")
    g.add_argument("--code", metavar="FILE", help="generator bit-matrix or catalog file")
    g.add_argument("--catalog", metavar="NAME", help="built-in or catalog code by name")
    g.add_argument("--h-coeffs", metavar="LIST", help="comma-separated a_0,...,a_l (p/q allowed)")
    g.add_argument("--ensemble", type=int, metavar="N", help="random self-dual code ensemble of length N")
    g.add_argument("--scaled", action="store_true", help="use C + 2Z^n instead of Construction A")
    g.add_argument("--dim", type=int, metavar="N", help="dimension for --h-coeffs (default 8*l)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="working precision in decimal digits")
    common.add_argument("--tol", default="1e-30", help="absolute error tolerance for evaluations")
    common.add_argument("--catalog-dir", default="catalog", help="directory of catalog *.txt files")
    common.add_argument("--csv", action="store_true", help="emit CSV instead of an aligned table")
    common.add_argument("--grid", type=int, default=1001, help="grid size for sampled checks")

    parser = argparse.ArgumentParser(prog="lattice-theta", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, lattice=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if lattice:
            _lattice_options(p)
        p.set_defaults(func=func)
        return p

    add("theta", cmd_theta, "theta series at i*tau").add_argument("--tau", required=True)
    add("ratio", cmd_ratio, "theta series ratio at i*tau").add_argument("--tau", required=True)
    add("decompose", cmd_decompose, "exact h-basis coefficients of a code's ratio")
    add("check", cmd_check, "sufficient, necessary, exact U-shape and minimum checks")

    p = add("flatness", cmd_flatness, "flatness factor at tau or along a curve")
    p.add_argument("--tau")
    p.add_argument("--curve", nargs=3, metavar=("TAU_MIN", "TAU_MAX", "POINTS"))

    for name, func, help_text in (("smoothing", cmd_smoothing, "smoothing parameter eta_eps"),
                                  ("tau-eps", cmd_tau_eps, "largest tau with flatness <= eps")):
        p = add(name, func, help_text)
        p.add_argument("--eps", help="target flatness (default 1/n; p/q allowed)")
        p.add_argument("--tau-tol", type=float, default=1e-9)

    p = add("table1", cmd_table1, "tau_eps table at eps = 1/n", lattice=False)
    p.add_argument("--lengths", type=int, nargs="+", default=list(TABLE1_LENGTHS))
    p.add_argument("--places", type=int, default=3)
    p.add_argument("--tau-tol", type=float, default=1e-9)

    p = add("figure1", cmd_figure1, "eta_eps of self-dual pure double circulant lattices", lattice=False)
    p.add_argument("--eps", help="target flatness (default 1/n)")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--tau-tol", type=float, default=1e-9)

    p = add("ratio-curve", cmd_ratio_curve, "ratio samples on a geometric tau grid")
    p.add_argument("--tau-min", default="0.1")
    p.add_argument("--tau-max", default="10")
    p.add_argument("--points", type=int, default=201)

    p = add("ensemble", cmd_ensemble, "ensemble minimum, U-shape and tau_eps", lattice=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", help="target flatness (default 1/n)")
    p.add_argument("--tau-tol", type=float, default=1e-9)

    p = add("catalog-extremal", cmd_catalog_extremal, "write extremal doubly-even catalog files", lattice=False)
    p.add_argument("--lengths", type=int, nargs="+", default=[72, 128, 168, 256])
    p.add_argument("--out", default="catalog")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.digits, mpf(args.tol), Path(args.catalog_dir), "csv" if args.csv else "table", args.grid)
        with precision(cfg.precision_digits):
            args.func(args, cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError, CodeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
