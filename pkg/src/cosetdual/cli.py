"""Command-line front end.

Every subcommand builds the algebra described by ``--family/--rank`` (or
``--algebra``), runs one module operation and exits 0 only if the resulting
report is clean. ``--json`` wraps the output in a fixed envelope with sorted
keys so that identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import adjoint, chevalley, dualized, field_equations
from ._exact import frac_str
from .adjoint import FieldConfiguration
from .coset import ClosureError, build_solvable
from .lie import THREADS_ENV
from .report import Report, combine
from .roots import RootSystem, RootSystemError, build_root_system, parse_type

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_NAME = re.compile(r"^(?:a|α|alpha)_?(\d+)$")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument parsing


def parse_root(rs: RootSystem, text: str) -> tuple[int, ...]:
    """``"1,1"`` (coefficients) or ``"a1+a2"`` / ``"α1+α2"`` (simple-root names)."""
    text = text.strip()
    if re.fullmatch(r"-?\d+(,-?\d+)*", text):
        coeffs = tuple(int(x) for x in text.split(","))
        if len(coeffs) != rs.rank:
            raise UsageError(f"root '{text}' has {len(coeffs)} coefficients, rank is {rs.rank}")
        return coeffs
    coeffs = [0] * rs.rank
    for term in text.replace(" ", "").split("+"):
        m = re.fullmatch(r"(\d*)\*?(.+)", term)
        mult = int(m.group(1)) if m and m.group(1) else 1
        name = _NAME.match(m.group(2) if m else term)
        if not name:
            raise UsageError(f"cannot parse root '{text}'")
        k = int(name.group(1))
        if not 1 <= k <= rs.rank:
            raise UsageError(f"simple root index {k} out of range 1..{rs.rank}")
        coeffs[k - 1] += mult
    return tuple(coeffs)


def parse_ncp(rs: RootSystem, items: Sequence[str] | None) -> list[tuple[int, ...]] | None:
    """Roots separated by ';' or spaces; a comma list of names such as ``α1,α2`` is several roots."""
    if not items:
        return None
    out = []
    for item in items:
        for chunk in filter(None, (c.strip() for c in item.split(";"))):
            if re.search(r"[^\d,\s-]", chunk):
                out.extend(parse_root(rs, name) for name in chunk.split(",") if name.strip())
            else:
                out.append(parse_root(rs, chunk))
    for c in out:
        if c not in rs:
            raise UsageError(f"({','.join(map(str, c))}) is not a root of {rs.name}")
    return out


def parse_values(items: Sequence[str] | None, exact: bool) -> list | None:
    if items is None:
        return None
    vals = [v for item in items for v in item.split(",") if v.strip()]
    try:
        if exact:
            return [Fraction(v.strip()) for v in vals]
        return [float(Fraction(v.strip())) if "/" in v else float(v) for v in vals]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad field value: {exc}") from None


def _algebra_type(args) -> tuple[str, int | None]:
    if args.algebra:
        return parse_type(args.algebra)
    if not args.family:
        raise UsageError("give --algebra (e.g. A2) or --family and --rank")
    return args.family.upper(), args.rank


def _common(p: argparse.ArgumentParser, coset: bool = True) -> None:
    p.add_argument("--family", help="A, B, C, D, E, F or G")
    p.add_argument("--rank", type=int)
    p.add_argument("--algebra", help="family and rank together, e.g. G2")
    if coset:
        p.add_argument("--ncp", nargs="+", metavar="ROOT",
                       help="noncompact positive roots: '1,1' coefficients, 'a1+a2' or 'α1,α2' (default: all)")
        p.add_argument("--cartan", help="1-based retained Cartan generators, e.g. 1,2 (default: all)")
    p.add_argument("--json", action="store_true", help="print the JSON envelope")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cosetdual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="positive roots and Cartan matrix")
    _common(p, coset=False)

    p = sub.add_parser("structure-constants", help="N_{a,b} table and its identities")
    _common(p, coset=False)

    p = sub.add_parser("brackets", help="bracket table of the dualized algebra")
    _common(p)
    p.add_argument("--base", action="store_true", help="only the solvable algebra s")

    p = sub.add_parser("jacobi", aliases=["jacobi-check"], help="full Jacobi scan")
    _common(p)
    p.add_argument("--workers", type=int, help=f"process count (default ${THREADS_ENV} or 1)")

    p = sub.add_parser("matrices", help="g~ and f~ structure matrices")
    _common(p)
    p.add_argument("--format", choices=["json", "pretty"], default="pretty")

    p = sub.add_parser("identities", aliases=["identity-check"], help="matrix identity suites")
    _common(p)
    p.add_argument("--which", choices=["hh", "ee", "r-structure", "all"], default="all")

    p = sub.add_parser("coset-matrix", help="the coset matrix nu = exp(Gamma) exp(Lambda)")
    _common(p)
    p.add_argument("--phi", nargs="+")
    p.add_argument("--chi", nargs="+")
    p.add_argument("--seed", type=int, default=0, help="seed for fields not given explicitly")
    p.add_argument("--precision", type=int, default=6)

    p = sub.add_parser("verify-field-eqs", help="first-order => second-order check")
    _common(p)
    p.add_argument("--phi", nargs="+")
    p.add_argument("--chi", nargs="+")
    p.add_argument("--dim", type=int, default=2, help="base-manifold dimension D")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="rational fields and exact comparison")
    p.add_argument("--step", type=float, default=1e-5, help="finite-difference step")
    return parser


# ---------------------------------------------------------------------------
# building


def _setup(args):
    family, rank = _algebra_type(args)
    rs = build_root_system(family, rank)
    sc = chevalley.compute_structure_constants(rs)
    ncp = parse_ncp(rs, getattr(args, "ncp", None))
    cartan = None
    if getattr(args, "cartan", None):
        try:
            cartan = [int(x) - 1 for x in args.cartan.split(",")]
        except ValueError:
            raise UsageError(f"bad --cartan '{args.cartan}'") from None
    s = build_solvable(rs, sc, ncp, cartan)
    return rs, sc, s, dualized.build_dualized(s)


def _config(args, rs: RootSystem, s=None) -> dict:
    cfg: dict[str, Any] = {"family": rs.family, "rank": rs.rank}
    if s is not None:
        cfg["ncp"] = [list(a.coeffs) for a in s.ncp]
        cfg["cartan"] = [j + 1 for j in s.cartan_indices]
    for key in ("seed", "dim", "exact", "which", "precision", "step"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    return cfg


def _fields(args, d, exact: bool) -> FieldConfiguration:
    rng = np.random.default_rng(args.seed)
    rand = FieldConfiguration.random(d, rng)
    phi = parse_values(args.phi, exact)
    chi = parse_values(args.chi, exact)
    if exact:
        rand = FieldConfiguration(*(tuple(Fraction(round(x * 64), 64) for x in v) for v in (rand.phi, rand.chi)))
    fc = FieldConfiguration(tuple(phi) if phi is not None else rand.phi, tuple(chi) if chi is not None else rand.chi)
    try:
        fc.check(d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return fc


def _num(x) -> str:
    return frac_str(x) if isinstance(x, Fraction) else repr(float(x))


# ---------------------------------------------------------------------------
# commands; each returns (report, data, pretty lines)


def cmd_roots(args):
    family, rank = _algebra_type(args)
    rs = build_root_system(family, rank)
    lines = [f"{rs.name}: {len(rs.positive_roots)} positive roots", "Cartan matrix:"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in rs.cartan_matrix]
    for a in rs.positive_roots:
        comps = ", ".join(_pretty(c) for c in a.components)
        lines.append(f"  ({a.label()})  {a}  height {a.height}  components [{comps}]")
    return Report("roots", checked=len(rs.positive_roots), unit="roots"), rs.to_dict(), lines, _config(args, rs)


def cmd_structure_constants(args):
    family, rank = _algebra_type(args)
    rs = build_root_system(family, rank)
    sc = chevalley.compute_structure_constants(rs)
    rep = combine("structure constants", [
        chevalley.verify_table(sc),
        chevalley.verify_cycle_identity(sc),
        chevalley.verify_quadruple_identity(sc),
        chevalley.check_ambient_jacobi(sc),
    ], unit="checks")
    table = sc.to_list()
    lines = [f"N[{','.join(map(str, e['alpha']))}; {','.join(map(str, e['beta']))}] = {e['N'].removesuffix('/1')}" for e in table]
    lines.append(rep.summary())
    return rep, {"table": table}, lines, _config(args, rs)


def cmd_brackets(args):
    rs, sc, s, d = _setup(args)
    labels = s.basis_labels if args.base else d.basis_labels
    br = s.bracket if args.base else d.bracket
    lines = []
    for (a, b), coeffs in sorted(br.items()):
        if a < b:
            rhs = " + ".join(f"({_pretty(v)}) {labels[c]}" for c, v in sorted(coeffs.items()))
            lines.append(f"[{labels[a]}, {labels[b]}] = {rhs}")
    tensor = [[a, b, c, frac_str(v)] for (a, b), co in sorted(br.items()) for c, v in sorted(co.items())]
    rep = combine("brackets", [s.check_antisymmetry() if args.base else dualized.check_ideal(d)], unit="pairs")
    return rep, {"labels": labels, "tensor": tensor}, lines, _config(args, rs, s)


def cmd_jacobi(args):
    rs, sc, s, d = _setup(args)
    rep = dualized.check_jacobi(d, args.workers)
    return rep, {"dim": d.dim, "triples": rep.checked}, [rep.summary()], _config(args, rs, s)


def cmd_matrices(args):
    rs, sc, s, d = _setup(args)
    mats = [dualized.gtilde(d, j) for j in range(d.r)] + [dualized.ftilde(d, g) for g in d.ncp]
    data = [m.to_dict() for m in mats]
    if args.format == "json" and not args.json:
        lines = [json.dumps(data)]
    else:
        lines = []
        for m in data:
            name = "g~" if m["kind"] == "gtilde" else "f~"
            lines.append(f"{name}[{m['index']}]")
            width = max(len(x) for row in m["rows"] for x in row)
            lines += ["  " + " ".join(x.replace("/1", "").rjust(width) for x in row) for row in m["rows"]]
    rep = adjoint.verify_homomorphism(d)
    return rep, {"matrices": data}, lines, _config(args, rs, s)


def cmd_identities(args):
    rs, sc, s, d = _setup(args)
    suites = {"hh": dualized.check_all_hh, "ee": dualized.check_all_ee, "r-structure": dualized.check_all_R}
    chosen = list(suites) if args.which == "all" else [args.which]
    reports = [suites[k](d) for k in chosen]
    rep = combine("identities", reports, unit="checks")
    return rep, {"suites": {k: r.to_dict() for k, r in zip(chosen, reports)}}, [r.summary() for r in reports], _config(args, rs, s)


def cmd_coset_matrix(args):
    rs, sc, s, d = _setup(args)
    fc = _fields(args, d, exact=False)
    nu = adjoint.coset_matrix(d, fc)
    inv = adjoint.coset_matrix_inverse(d, fc)
    err = float(np.abs(nu @ inv - np.eye(d.S)).max())
    rep = Report("nu nu^-1 = I", checked=1, unit="products")
    if err > 1e-10:
        rep.add(max_error=err)
    p = args.precision
    lines = [f"phi = {[round(float(x), p) for x in fc.phi]}", f"chi = {[round(float(x), p) for x in fc.chi]}",
             "nu (rows/columns: " + " ".join(s.basis_labels) + ")"]
    lines += ["  " + " ".join(f"{x: .{p}f}" for x in row) for row in nu]
    lines.append(f"max |nu nu^-1 - I| = {err:.3e}")
    data = adjoint.coset_matrix_json(d, fc, p)
    data.update(phi=[_num(x) for x in fc.phi], chi=[_num(x) for x in fc.chi])
    return rep, data, lines, _config(args, rs, s)


def cmd_verify_field_eqs(args):
    rs, sc, s, d = _setup(args)
    fc = _fields(args, d, exact=args.exact)
    res = field_equations.expand_second_order(d, fc, exact=args.exact)
    labels = s.basis_labels
    failed = {v["component"] for v in res.report.violations} | {v["component"] for v in res.vanishing.violations}
    rows = []
    for m in range(d.S):
        rows.append({
            "component": labels[m],
            "sector": "dilaton" if m < d.r else "axion",
            "max_deviation": res.max_deviation[m],
            "passed": m not in failed,
        })

    omega = field_equations.check_omega_series(d, fc.chi, tol=0 if args.exact else 1e-12)
    float_fc = FieldConfiguration(tuple(float(x) for x in fc.phi), tuple(float(x) for x in fc.chi))
    direction = FieldConfiguration.random(d, np.random.default_rng(args.seed + 1))
    fd1 = field_equations.fd_check_cartan_form(d, float_fc, direction, args.step)
    fd2 = field_equations.fd_check_cartan_form(d, float_fc, direction, args.step / 2)
    fd = Report("Cartan form finite difference", checked=1, unit="directions")
    ratio = fd1 / fd2 if fd2 else float("inf")
    if fd1 > 1e-6 or not 3.5 <= ratio <= 4.5:
        fd.add(deviation=fd1, ratio=ratio)
    first = field_equations.first_order_system(d, float_fc, args.dim)
    inv = Report("first-order system inversion", checked=1, unit="systems")
    if first.inversion_error() > 1e-10:
        inv.add(max_error=first.inversion_error())

    rep = combine("field equations", [res.report, res.vanishing, omega, fd, inv], unit="checks")
    mode = "exact" if res.exact else "float, rtol 1e-12"
    lines = [f"{rs.name}, D = {args.dim}, comparison: {mode}", f"{'component':<12}{'sector':<9}{'max deviation':>15}  result"]
    for row in rows:
        lines.append(f"{row['component']:<12}{row['sector']:<9}{row['max_deviation']:>15.3e}  {'PASS' if row['passed'] else 'FAIL'}")
    lines += [res.vanishing.summary(), omega.summary(),
              f"Cartan form FD: deviation {fd1:.3e} at step {args.step:g}, halving ratio {ratio:.4f}  {'PASS' if fd.passed else 'FAIL'}",
              f"first-order inversion error {first.inversion_error():.3e}  {'PASS' if inv.passed else 'FAIL'}"]
    data = {
        "phi": [_num(x) for x in fc.phi],
        "chi": [_num(x) for x in fc.chi],
        "components": rows,
        "fd": {"step": args.step, "deviation": fd1, "ratio": ratio},
        "inversion_error": first.inversion_error(),
    }
    return rep, data, lines, _config(args, rs, s)


COMMANDS = {
    "roots": cmd_roots,
    "structure-constants": cmd_structure_constants,
    "brackets": cmd_brackets,
    "jacobi": cmd_jacobi,
    "jacobi-check": cmd_jacobi,
    "matrices": cmd_matrices,
    "identities": cmd_identities,
    "identity-check": cmd_identities,
    "coset-matrix": cmd_coset_matrix,
    "verify-field-eqs": cmd_verify_field_eqs,
}


def _envelope(command, config, rep: Report | None, data, error: str | None = None) -> str:
    out = {
        "command": command,
        "config": config,
        "passed": rep is not None and rep.passed,
        "violations": rep.violations if rep is not None else [],
        "data": data,
    }
    if error is not None:
        out["error"] = error
    return json.dumps(out, sort_keys=True, default=str)


_NUMBER = re.compile(r"^[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?(/\d+)?(,.*)?$")


def _join_values(argv: list[str]) -> list[str]:
    """Fold ``--phi 1/3 -1/2`` into ``--phi=1/3,-1/2`` (argparse reads ``-1/2`` as an option)."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--phi", "--chi"):
            vals = []
            i += 1
            while i < len(argv) and _NUMBER.match(argv[i]):
                vals.append(argv[i])
                i += 1
            out.append(f"{tok}={','.join(vals)}")
            continue
        out.append(tok)
        i += 1
    return out


def _pretty(q) -> str:
    text = frac_str(q)
    return text[:-2] if text.endswith("/1") else text


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        rep, data, lines, config = COMMANDS[args.command](args)
    except ClosureError as exc:
        bad = [{"alpha": list(a.coeffs), "beta": list(b.coeffs), "sum": list(c.coeffs)} for a, b, c in exc.violations]
        if args.json:
            print(_envelope(args.command, {}, None, {"closure": bad}, str(exc)))
        else:
            print(f"error: {exc}", file=sys.stderr)
            for v in bad:
                print(f"  missing sum: ({','.join(map(str, v['sum']))})", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, RootSystemError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.json:
        print(_envelope(args.command, config, rep, data))
    else:
        print("\n".join(lines))
        raw_json = getattr(args, "format", None) == "json"
        if not raw_json and args.command not in ("jacobi", "jacobi-check", "identities", "identity-check", "structure-constants", "verify-field-eqs"):
            print(rep.summary())
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
