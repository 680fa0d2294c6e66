"""Command-line interface.

Exit codes: 0 separable (or success), 1 entangled, 2 input/usage error,
3 root finding did not converge.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .charpoly import TRIM_TOL, binary_digits, from_state
from .families import KINDS, generate
from .oracle import site_purity_defects
from .qudit import MAX_LOCAL_DIM, qudit_separable
from .roots import SolverConfig, find_roots
from .separability import DEFAULT_TOL, is_separable
from .state import MAX_SITES
from .statefile import StateFileError, complex_pair, dump_state, load_state, parse_state
from .unentangled import count_unentangled

SCHEMA = 1

EXIT_SEPARABLE = 0
EXIT_ENTANGLED = 1
EXIT_USAGE = 2
EXIT_NONCONVERGED = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _num(x: float):
    """JSON-safe float: non-finite values become null."""
    x = float(x)
    return x if math.isfinite(x) else None


def _read(path: str, max_sites: int):
    if path == "-":
        state, label = parse_state(sys.stdin.read(), max_sites)
    else:
        state, label = load_state(path, max_sites)
    if state.local_dim > MAX_LOCAL_DIM:
        raise StateFileError(
            f"field 'local_dim': {state.local_dim} levels per site is not supported "
            f"(at most {MAX_LOCAL_DIM}; no coefficient-level test exists from 6 levels on)"
        )
    return state, label


def _factor_doc(factors):
    if factors is None:
        return None
    return [{"site": f.site, "amplitudes": [complex_pair(a) for a in f.amplitudes]} for f in factors]


def _roots_doc(rs):
    return [
        {"root": complex_pair(r), "residual": _num(res), "converged": bool(ok)}
        for r, res, ok in zip(rs.roots, rs.residuals, rs.converged)
    ]


def analyze(state, label=None, *, tol=DEFAULT_TOL, trim_tol=TRIM_TOL, with_roots=False,
            oracle=True, echo=False, timing=False, solver=None):
    """Run the full pipeline; returns ``(report, exit_code)``."""
    t0 = time.perf_counter()
    poly = from_state(state, trim_tol)
    report: dict = {
        "schema": SCHEMA,
        "label": label,
        "num_sites": state.num_sites,
        "local_dim": state.local_dim,
        "site_order": "site 0 is the least-significant digit of the basis index",
        "tolerances": {"tol": tol, "trim_tol": trim_tol},
        "degree": poly.degree,
        "degree_digits": list(binary_digits(poly.degree, state.num_sites)) if state.local_dim == 2 else None,
    }
    if state.local_dim == 2:
        sep = is_separable(state, tol, trim_tol)
        unent = count_unentangled(state, tol, trim_tol)
        separable = sep.separable
        report["separable"] = separable
        report["separability"] = {
            "separable": sep.separable,
            "score": _num(sep.score),
            "normalized_score": _num(sep.normalized_score),
            "condition_Ib": sep.condition_Ib,
            "reconstruction_distance": _num(sep.reconstruction_distance),
            "method_agreement": sep.method_agreement,
            "factors": _factor_doc(sep.factors),
        }
        report["unentangled"] = {
            "count": unent.count,
            "upper_bound": unent.upper_bound,
            "sites": [
                {
                    "site": s.site,
                    "branch": s.branch,
                    "unentangled": s.unentangled,
                    "condition_IIa": s.condition_IIa,
                    "remainder_norm": _num(s.remainder_norm),
                    "offending_norm": _num(s.offending_norm),
                }
                for s in unent.statuses
            ],
        }
    else:
        separable = qudit_separable(state, tol)
        report["separable"] = separable
        report["separability"] = {"separable": separable, "method": "reduced density matrices"}
        report["unentangled"] = None
    if oracle:
        defects = site_purity_defects(state)
        pure = defects <= tol
        report["oracle"] = {
            "quantity": "det(rho_j)" if state.local_dim == 2 else "purity defect",
            "normalized": [_num(d) for d in defects],
            "unnormalized": [_num(d * state.norm**4) for d in defects],
            "separable": bool(np.all(pure)),
            "unentangled_count": int(np.sum(pure)),
        }
    else:
        report["oracle"] = None
    code = EXIT_SEPARABLE if separable else EXIT_ENTANGLED
    if with_roots:
        if poly.degree >= 1 and state.local_dim == 2:
            rs = find_roots(poly, solver)
            report["roots"] = {"converged": rs.all_converged, "iterations": rs.iterations,
                               "method": rs.method, "values": _roots_doc(rs)}
            if not rs.all_converged:
                code = EXIT_NONCONVERGED
        else:
            report["roots"] = {"converged": True, "iterations": 0, "method": None, "values": []}
    if echo:
        report["amplitudes"] = [complex_pair(a) for a in state.amplitudes]
    if timing:
        report["timing_seconds"] = time.perf_counter() - t0
    return report, code


def _fmt_c(z) -> str:
    z = complex(z)
    return f"{z.real:+.6g}{z.imag:+.6g}j"


def _text_analyze(r: dict) -> str:
    lines = [f"state: {r['label'] or '(unlabelled)'}  N={r['num_sites']}  h={r['local_dim']}  degree k={r['degree']}"]
    if r["degree_digits"] is not None:
        lines.append(f"degree digits k_j (site 0 first): {' '.join(map(str, r['degree_digits']))}")
    lines.append(f"verdict: {'separable' if r['separable'] else 'entangled'}")
    sep = r["separability"]
    if "score" in sep:
        lines.append(
            f"score S={sep['score']}  normalized={sep['normalized_score']}  "
            f"condition Ib={sep['condition_Ib']}  reconstruction distance={sep['reconstruction_distance']}"
        )
        if not sep["method_agreement"]:
            lines.append("WARNING: reconstruction and score tests disagree")
        for f in sep["factors"] or []:
            a, b = (complex(*p) for p in f["amplitudes"])
            lines.append(f"  site {f['site']}: {_fmt_c(a)} |0> {_fmt_c(b)} |1>")
    if r["unentangled"] is not None:
        u = r["unentangled"]
        free = [s["site"] for s in u["sites"] if s["unentangled"]]
        lines.append(f"unentangled qubits: {u['count']} (upper bound {u['upper_bound']}) sites {free}")
    if r["oracle"] is not None:
        o = r["oracle"]
        vals = " ".join(f"{v:.6g}" for v in o["normalized"])
        lines.append(f"oracle {o['quantity']}/|phi|^4: {vals}  -> {o['unentangled_count']} pure sites")
    if "roots" in r:
        lines.append(_text_roots(r["roots"]))
    return "\n".join(lines)


def _text_roots(doc: dict) -> str:
    lines = [f"{len(doc['values'])} roots ({doc['method']}, {doc['iterations']} iterations, converged={doc['converged']})"]
    for v in doc["values"]:
        lines.append(f"  {_fmt_c(complex(*v['root']))}  residual {v['residual']:.3g}{'' if v['converged'] else '  NOT CONVERGED'}")
    return "\n".join(lines)


def _emit(doc, text: bool, formatter):
    if text:
        print(formatter(doc))
    else:
        print(json.dumps(doc, indent=2))


def cmd_analyze(args) -> int:
    state, label = _read(args.path, args.max_sites)
    report, code = analyze(
        state, label, tol=args.tol, trim_tol=args.trim_tol, with_roots=args.with_roots,
        oracle=not args.no_oracle, echo=args.echo, timing=args.timing,
        solver=SolverConfig(max_iter=args.max_iter),
    )
    _emit(report, args.text, _text_analyze)
    return code


def cmd_roots(args) -> int:
    state, label = _read(args.path, args.max_sites)
    if state.local_dim != 2:
        raise UsageError("roots: only qubit states (local_dim 2) are supported")
    poly = from_state(state, args.trim_tol)
    doc = {"schema": SCHEMA, "label": label, "degree": poly.degree}
    if poly.degree == 0:
        doc["roots"] = {"converged": True, "iterations": 0, "method": None, "values": []}
        _emit(doc, args.text, lambda d: _text_roots(d["roots"]))
        return 0
    rs = find_roots(poly, SolverConfig(max_iter=args.max_iter))
    doc["roots"] = {"converged": rs.all_converged, "iterations": rs.iterations,
                    "method": rs.method, "values": _roots_doc(rs)}
    _emit(doc, args.text, lambda d: _text_roots(d["roots"]))
    return 0 if rs.all_converged else EXIT_NONCONVERGED


def cmd_factors(args) -> int:
    state, label = _read(args.path, args.max_sites)
    if state.local_dim != 2:
        raise UsageError("factors: only qubit states (local_dim 2) are supported")
    sep = is_separable(state, args.tol, args.trim_tol)
    doc = {"schema": SCHEMA, "label": label, "separable": sep.separable,
           "reconstruction_distance": _num(sep.reconstruction_distance),
           "factors": _factor_doc(sep.factors)}

    def fmt(d):
        if not d["separable"]:
            return f"entangled (reconstruction distance {d['reconstruction_distance']:.3g}); no factors"
        return "\n".join(
            f"site {f['site']}: {_fmt_c(complex(*f['amplitudes'][0]))} |0> {_fmt_c(complex(*f['amplitudes'][1]))} |1>"
            for f in d["factors"]
        )

    _emit(doc, args.text, fmt)
    return EXIT_SEPARABLE if sep.separable else EXIT_ENTANGLED


def cmd_generate(args) -> int:
    try:
        state = generate(args.kind, args.sites, args.seed, args.theta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    label = args.label or args.kind
    text = dump_state(state, label, sparse=args.sparse)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qubitpoly", description="Characteristic-polynomial separability analysis of pure qubit states.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, tol=True):
        sp.add_argument("path", help="state file (JSON), or - for stdin")
        sp.add_argument("--max-sites", type=int, default=MAX_SITES)
        sp.add_argument("--trim-tol", type=float, default=TRIM_TOL)
        sp.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
        if tol:
            sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    a = sub.add_parser("analyze", help="separability, unentangled qubits and oracle check")
    common(a)
    a.add_argument("--with-roots", action="store_true")
    a.add_argument("--no-oracle", action="store_true")
    a.add_argument("--echo", action="store_true", help="include the amplitudes in the report")
    a.add_argument("--timing", action="store_true", help="include wall time (makes output nondeterministic)")
    a.add_argument("--max-iter", type=int, default=SolverConfig.max_iter)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("roots", help="numerical roots of the characteristic polynomial")
    common(r, tol=False)
    r.add_argument("--max-iter", type=int, default=SolverConfig.max_iter)
    r.set_defaults(func=cmd_roots)

    f = sub.add_parser("factors", help="single-qubit factors of a separable state")
    common(f)
    f.set_defaults(func=cmd_factors)

    g = sub.add_parser("generate", help="write a state file for a named family")
    g.add_argument("kind", help=f"one of: {', '.join(KINDS)}")
    g.add_argument("-n", "--sites", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--theta", type=float, default=0.0, help="phase for example3")
    g.add_argument("--label")
    g.add_argument("--sparse", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StateFileError, UsageError) as exc:
        print(f"qubitpoly {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"qubitpoly {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
