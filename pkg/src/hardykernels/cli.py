"""Command-line front end: ``hardykernels <command> [options]``.

Results are written as canonical JSON to ``--out`` (or stdout).  Exit codes:
0 success, 1 computation error (JSON ``{"error", "detail"}``), 2 usage error.
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from . import expr
from . import report as rep
from . import serialize as ser
from .boundary import majorant_outer, outer_from_modulus
from .catalog import Catalog, load_catalog
from .errors import HardyKernelError, ParseError, SchemaError
from .hardy import (
    FiniteBlaschke,
    HardyFunction,
    blaschke_gcd,
    blaschke_lcm,
    classify_and_factor,
    minimal_inner,
)
from .maximal import maximality_status, scalar_maximal
from .minimal_kernels import (
    coprime_symbol_verify,
    kmin_pair_scalar,
    kmin_pair_vector,
    minimal_kernel_symbol,
)
from .toeplitz import (
    MatrixSymbol,
    build_truncated,
    kernel_basis,
    kernel_inclusion_check,
    membership_residual,
)

COMMANDS = ("factor", "gcd", "lcm", "outer", "mintheta", "minkernel", "kminpair", "maxfn",
            "check", "report")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--grid", type=int, default=4096, help="boundary samples (power of two)")
    p.add_argument("--trunc", type=int, default=256, help="truncation order K")
    p.add_argument("--tol", type=float, default=1e-8, help="relative SVD null threshold")
    p.add_argument("--out", help="write the JSON result here instead of stdout")
    p.add_argument("--report-dir", help="directory for CSV/SVG artifacts")
    p.add_argument("--catalog", help="catalog JSON providing @name references")
    p.add_argument("--seed", type=int, default=0, help="seed for plots and random choices")
    p.add_argument("--dry-run", action="store_true", help="validate inputs only")
    return p


def build_parser():
    common = _common()
    parser = _Parser(prog="hardykernels", description="Toeplitz kernels on the Hardy space")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("factor", parents=[common], help="classify and inner-outer factor")
    p.add_argument("function")

    for name in ("gcd", "lcm"):
        p = sub.add_parser(name, parents=[common], help=f"Blaschke {name}")
        p.add_argument("--blaschke", nargs=2, required=True, metavar="ZEROS")

    p = sub.add_parser("outer", parents=[common], help="outer function with given modulus")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--modulus", help="function whose boundary modulus is the target")
    g.add_argument("--vector", help="vector f; target is sum |f_i| + 1")

    p = sub.add_parser("mintheta", parents=[common], help="minimal inner function")
    p.add_argument("function")

    p = sub.add_parser("minkernel", parents=[common], help="minimal-kernel symbol of a vector")
    p.add_argument("--vector", required=True)
    p.add_argument("--pivot", type=int, default=1, help="1-based pivot coordinate")

    p = sub.add_parser("kminpair", parents=[common], help="minimal kernel of two elements")
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--phi")
    p.add_argument("--psi")

    p = sub.add_parser("maxfn", parents=[common], help="maximal function from a kernel element")
    p.add_argument("--symbol", required=True)
    p.add_argument("--fn", required=True)

    p = sub.add_parser("check", parents=[common], help="kernel diagnostics for a symbol")
    p.add_argument("--symbol", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--maximality", action="store_true")
    g.add_argument("--membership", metavar="VECTOR")
    g.add_argument("--inclusion", metavar="SYMBOL")
    g.add_argument("--coprime", metavar="VECTOR")

    p = sub.add_parser("report", parents=[common], help="CSV/SVG reports")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--symbol")
    g.add_argument("--fn")
    return parser


# input helpers ------------------------------------------------------------------

class _Inputs:
    def __init__(self, args):
        self.args = args
        cat = load_catalog(args.catalog) if args.catalog else Catalog()
        self.refs = cat.refs()

    def parse(self, text):
        return expr.parse(text, self.refs)

    def function(self, text):
        x = expr.as_scalar(self.parse(text))
        if isinstance(x, FiniteBlaschke):
            return x.to_rational()
        return x

    def vector(self, text):
        x = self.parse(text)
        if isinstance(x, HardyFunction) or not isinstance(x, list):
            x = [x]
        return [_scalar(c) for c in expr.as_vector(x)]

    def blaschke(self, text):
        x = self.parse(text)
        if not isinstance(x, FiniteBlaschke):
            raise ParseError("expected a Blaschke zero set like {0.5, 0.3}")
        return x

    def symbol(self, text):
        m = expr.as_matrix(self.parse(text))
        rows = tuple(tuple(_scalar(c) for c in row) for row in m)
        return MatrixSymbol(rows, self.args.grid)


def _scalar(c):
    if isinstance(c, list):
        raise ParseError("nested lists are not allowed here")
    if isinstance(c, FiniteBlaschke):
        return c.to_rational()
    return c


def _hardy(x):
    if isinstance(x, HardyFunction):
        return x
    return classify_and_factor(x)


def _hardy_json(h):
    out = {"value": ser.rational_json(h.value), "class": h.cls.value,
           "cyclicity": h.cyclicity.value}
    out["inner"] = ser.blaschke_json(h.inner) if h.inner is not None else None
    out["outer"] = ser.rational_json(h.outer) if h.outer is not None else None
    return out


def _kernel_summary(G, args):
    T = build_truncated(G, args.trunc)
    B = kernel_basis(T, args.tol, require_gap=0.0)
    return B, {"kernel_dim": B.dim, "gap": B.gap, "truncation": args.trunc,
               "residual_max": float(B.residuals.max()) if B.dim else 0.0}


# commands -------------------------------------------------------------------------

def cmd_factor(args, inp):
    h = _hardy(inp.function(args.function))
    if args.dry_run:
        return None
    if args.report_dir:
        _boundary_report(args, h.value, "factor")
    return _hardy_json(h)


def cmd_gcd(args, inp):
    a, b = (inp.blaschke(t) for t in args.blaschke)
    if args.dry_run:
        return None
    op = blaschke_gcd if args.command == "gcd" else blaschke_lcm
    return ser.blaschke_json(op(a, b))


def cmd_outer(args, inp):
    w = _w(args.grid)
    if args.modulus:
        f = _plain(inp.function(args.modulus))
        if args.dry_run:
            return None
        u = outer_from_modulus(lambda x: np.abs(f(x)), args.grid)
        target = np.abs(f(w))
    else:
        vec = inp.vector(args.vector)
        if args.dry_run:
            return None
        u = majorant_outer(vec, args.grid)
        target = 1 + sum(np.abs(_plain(v)(w)) for v in vec)
    err = float(np.max(np.abs(np.abs(u.boundary.samples) - target)))
    if args.report_dir:
        _boundary_report(args, u.boundary, "outer")
    return {"at_zero": ser.complex_pair(u.at_zero()), "winding": u.winding(),
            "modulus_error": err, "warnings": list(u.warnings),
            "coeffs": ser.complex_array(u.boundary.coeffs[:16])}


def _plain(v):
    return v.value if isinstance(v, HardyFunction) else v


def _w(n):
    return np.exp(2j * np.pi * np.arange(n) / n)


def cmd_mintheta(args, inp):
    f = inp.function(args.function)
    if args.dry_run:
        return None
    return ser.blaschke_json(minimal_inner(_hardy(f)))


def cmd_minkernel(args, inp):
    vec = inp.vector(args.vector)
    if not 1 <= args.pivot <= len(vec):
        raise ParseError(f"--pivot must be between 1 and {len(vec)}")
    if args.dry_run:
        return None
    G = minimal_kernel_symbol(vec, pivot=args.pivot - 1, n_samples=args.grid)
    B, summary = _kernel_summary(G, args)
    if args.report_dir:
        _spectrum_report(args, B, "minkernel")
    return {"symbol": ser.symbol_json(G), "pivot": args.pivot,
            "residuals": [membership_residual(G, vec)], **summary}


def cmd_kminpair(args, inp):
    if args.f is not None and args.g is not None:
        f, g = inp.function(args.f), inp.function(args.g)
        if args.dry_run:
            return None
        res = kmin_pair_scalar(f, g, args.grid)
    elif args.phi is not None and args.psi is not None:
        phi, psi = inp.vector(args.phi), inp.vector(args.psi)
        if args.dry_run:
            return None
        res = kmin_pair_vector(phi, psi, args.grid)
    else:
        raise ParseError("give either --f and --g or --phi and --psi")
    out = ser.kmin_json(res)
    if res.symbol is not None:
        out.update(_kernel_summary(res.symbol, args)[1])
    return out


def cmd_maxfn(args, inp):
    G = inp.symbol(args.symbol)
    f = inp.function(args.fn)
    if G.n != 1:
        raise ParseError("maxfn needs a scalar symbol")
    if args.dry_run:
        return None
    m = scalar_maximal(G, f, args.grid)
    return {"maximal": _hardy_json(m), "residual": membership_residual(G, [m.value])}


def cmd_check(args, inp):
    G = inp.symbol(args.symbol)
    if args.maximality:
        if args.dry_run:
            return None
        v = maximality_status(G, args.trunc, args.tol)
        if args.report_dir:
            B = kernel_basis(build_truncated(G, args.trunc), args.tol, require_gap=0.0)
            _spectrum_report(args, B, "check")
        return ser.verdict_json(v)
    if args.membership:
        vec = inp.vector(args.membership)
        if args.dry_run:
            return None
        r = membership_residual(G, vec)
        return {"residual": r, "member": r < 1e-6}
    if args.inclusion:
        H = inp.symbol(args.inclusion)
        if args.dry_run:
            return None
        return {"included": bool(kernel_inclusion_check(G, H, K=args.trunc,
                                                        kernel_tol=args.tol))}
    vec = inp.vector(args.coprime)
    if args.dry_run:
        return None
    r = coprime_symbol_verify(G, vec, args.grid)
    return {"holds": r.holds, "factors": [ser.rational_json(p) for p in r.factors],
            "gcd": ser.blaschke_json(r.gcd)}


def cmd_report(args, inp):
    if not args.report_dir:
        raise ParseError("report needs --report-dir")
    if args.symbol:
        G = inp.symbol(args.symbol)
        if args.dry_run:
            return None
        B, summary = _kernel_summary(G, args)
        files = _spectrum_report(args, B, "symbol")
        return {**summary, "files": files}
    f = inp.function(args.fn)
    if args.dry_run:
        return None
    return {"files": _boundary_report(args, _plain(f), "function")}


def _spectrum_report(args, B, stem):
    d = rep.ensure_dir(args.report_dir)
    csv_path, svg_path = d / f"{stem}_singular_values.csv", d / f"{stem}_singular_values.svg"
    rep.write_singular_csv(csv_path, B.singular_values)
    rep.plot_singular_values(svg_path, B.singular_values, args.tol, args.seed)
    return [csv_path.name, svg_path.name]


def _boundary_report(args, f, stem):
    d = rep.ensure_dir(args.report_dir)
    csv_path, svg_path = d / f"{stem}_boundary.csv", d / f"{stem}_boundary.svg"
    rep.write_boundary_csv(csv_path, f, args.grid)
    rep.plot_modulus(svg_path, f, args.grid, args.seed)
    return [csv_path.name, svg_path.name]


HANDLERS = {
    "factor": cmd_factor, "gcd": cmd_gcd, "lcm": cmd_gcd, "outer": cmd_outer,
    "mintheta": cmd_mintheta, "minkernel": cmd_minkernel, "kminpair": cmd_kminpair,
    "maxfn": cmd_maxfn, "check": cmd_check, "report": cmd_report,
}


def _emit(payload, args):
    text = ser.dumps(payload)
    if args is not None and getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def run_command(argv=None):
    """Run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    np.random.seed(args.seed)
    try:
        inp = _Inputs(args)
        result = HANDLERS[args.command](args, inp)
    except ParseError as exc:
        sys.stderr.write(ser.dumps({"error": exc.code, "detail": exc.detail}))
        return 2
    except (HardyKernelError, SchemaError) as exc:
        _emit({"error": exc.code, "detail": exc.detail}, args)
        return 1
    if result is None:
        result = {"dry_run": True, "command": args.command, "valid": True}
    _emit(result, args)
    return 0


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
