"""Command-line front end.

Exit codes: 0 success, 1 parameter error, 2 resource guard tripped,
3 golden verification failure.  All output is deterministic; JSON output
carries a ``schema`` tag naming the shipped schema it conforms to.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bounds, homology, ideal, invariants, limits, parity, pebasis, swcalc, verify
from .errors import ParameterError, ResourceError
from .polyf2 import parse, sorted_terms, monomial_text, to_text

SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParameterError(message)


def _schema(name: str) -> str:
    return f"mod2config/{name}/v{SCHEMA_VERSION}"


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _poly_json(kind: str, basis: str, poly, **fields) -> dict:
    out = {"schema": _schema(kind), "basis": basis}
    out.update(fields)
    out["terms"] = [monomial_text(t, poly.ctx) for t in sorted_terms(poly)]
    out["poly"] = to_text(poly)
    return out


def _csv(rows) -> str:
    return "".join(",".join(str(x) for x in row) + "\n" for row in rows)


def _table(header, rows) -> str:
    cells = [list(map(str, header))] + [[str(x) for x in r] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    return "".join(
        "  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in cells
    )


# -- subcommands -----------------------------------------------------------

def cmd_dickson(a) -> str:
    if a.basis == "x":
        p = invariants.dickson_bruteforce(a.m, a.r)
    else:
        p = invariants.dickson_recurrence(a.m, a.r)
    if a.format == "json":
        return _emit_json(_poly_json("dickson", a.basis, p, m=a.m, r=a.r))
    return to_text(p) + "\n"


def cmd_mui(a) -> str:
    p = invariants.mui_h(a.m, a.i)
    if a.format == "json":
        return _emit_json(_poly_json("mui", "x", p, m=a.m, i=a.i))
    return to_text(p) + "\n"


def cmd_res_v(a) -> str:
    p = invariants.restriction_v(a.m, a.r)
    if a.format == "json":
        return _emit_json(_poly_json("res-v", "y", p, m=a.m, r=a.r))
    return to_text(p) + "\n"


def cmd_dual_sw(a) -> str:
    img = swcalc.dual_image(a.d, a.m, a.power)
    comps = swcalc.components(img)
    if a.degree is not None:
        comps = {a.degree: img.component(a.degree)}
    witness = None
    if a.witness is not None:
        mono = parse(a.witness, img.poly.ctx)
        if len(mono.terms) != 1:
            raise ParameterError("witness must be a single monomial")
        witness = (to_text(mono), swcalc.witness_coefficient(img, mono, a.degree))
    top = swcalc.top_nonzero_degree(img)
    if a.format == "json":
        out = {
            "schema": _schema("dual-sw"),
            "d": a.d,
            "m": a.m,
            "power": a.power,
            "top_nonzero": top,
            "components": {str(n): to_text(p) for n, p in comps.items()},
        }
        if witness:
            out["witness"] = {"monomial": witness[0], "coefficient": witness[1]}
        return _emit_json(out)
    lines = [f"top nonzero degree: {top if top is not None else 'none'}"]
    lines += [f"degree {n}: {to_text(p)}" for n, p in comps.items()]
    if witness:
        lines.append(f"coefficient of {witness[0]}: {witness[1]}")
    return "\n".join(lines) + "\n"


def cmd_ideal(a) -> str:
    out = {"schema": _schema("ideal"), "n": a.n, "q": a.q}
    lines = []
    if a.member:
        p = ideal.parse_q(a.member, a.n)
        exp = ideal.expand_q(p, a.q)
        member = not exp.terms
        out["member"] = {"element": to_text(p), "in_ideal": member, "truncated_expansion": to_text(exp)}
        lines += [f"element: {p}", f"in ideal: {str(member).lower()}", f"truncated expansion: {exp}"]
    if a.check_monomial_generation or not a.member:
        chk = ideal.monomial_generation_check(a.n, a.q, a.max_degree)
        cex = to_text(chk.counterexample) if chk.counterexample is not None else None
        out["monomial_generation"] = {
            "max_degree": a.max_degree,
            "holds": chk.holds,
            "counterexample": cex,
            "degree": chk.degree,
        }
        lines.append(f"monomially generated up to degree {a.max_degree}: {str(chk.holds).lower()}")
        if cex is not None:
            lines.append(f"counterexample (degree {chk.degree}): {cex}")
    if a.format == "json":
        return _emit_json(out)
    return "\n".join(lines) + "\n"


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise ParameterError(f"bad integer list {text!r}") from exc


def cmd_key(a) -> str:
    r = _int_list(a.r)
    value = parity.key_condition(a.d, a.m, a.ell, r)
    arg = parity.key_argument(a.d, a.m, a.ell, r)
    if a.format == "json":
        return _emit_json({
            "schema": _schema("key"), "d": a.d, "m": a.m, "ell": a.ell, "r": list(r),
            "upper": arg, "lower": a.d - 1, "value": value,
        })
    return f"{value}\n"


def cmd_binom2(a) -> str:
    value = parity.binom_parity(a.a, a.b)
    if a.format == "json":
        return _emit_json({"schema": _schema("binom2"), "a": a.a, "b": a.b, "value": value})
    return f"{value}\n"


BOUND_HEADER = ("d", "k", "ell", "theorem", "case", "excluded_N")


def _bound_rows(kind, d, k, ell, all_theorems):
    if all_theorems:
        results = bounds.bounds_for(kind, d, k, ell)
    else:
        best = bounds.best_bound(kind, d, k, ell)
        results = [best] if best is not None else []
    rows = []
    for r in results:
        entry = bounds.case_catalog()[r.case_id]
        theorem = entry["theorem"].split()[-1]
        rows.append((d, k if k is not None else "", ell if ell is not None else "",
                     theorem, entry["case"] or "-", r.value if r.value is not None else "none", r))
    return rows


def cmd_bounds(a) -> str:
    needs_k = a.kind in ("k-regular", "k-regular-l-skew", "complex-k-regular")
    needs_l = a.kind in ("l-skew", "k-regular-l-skew", "complex-l-skew")
    queries = []
    if a.table:
        spec = _int_list(a.table)
        if len(spec) not in (2, 3):
            raise ParameterError("--table expects dmax,kmax[,lmax]")
        dmax, pmax = spec[0], spec[1]
        lmax = spec[2] if len(spec) == 3 else pmax
        dmin = 1 if a.kind in ("k-regular", "complex-k-regular", "complex-l-skew") else 2
        size = dmax * pmax * (lmax if needs_k and needs_l else 1)
        if size > limits.max_grid():
            raise ResourceError(f"table of {size} queries exceeds grid guard")
        for d in range(dmin, dmax + 1):
            if needs_k and needs_l:
                queries += [(d, k, l) for k in range(1, pmax + 1) for l in range(1, lmax + 1)]
            elif needs_k:
                queries += [(d, k, None) for k in range(1, pmax + 1)]
            else:
                queries += [(d, None, l) for l in range(1, pmax + 1)]
    else:
        if a.d is None:
            raise ParameterError("--d is required")
        if needs_k and a.k is None:
            raise ParameterError("--k is required for this kind")
        if needs_l and a.ell is None:
            raise ParameterError("--ell is required for this kind")
        queries.append((a.d, a.k if needs_k else None, a.ell if needs_l else None))
    rows = []
    for d, k, l in queries:
        rows += _bound_rows(a.kind, d, k, l, a.all_theorems or bool(a.table))
    if a.format == "json":
        return _emit_json({
            "schema": _schema("bounds"),
            "kind": a.kind,
            "results": [
                {"d": r[0], "k": r[1] if r[1] != "" else None, "ell": r[2] if r[2] != "" else None,
                 "theorem": r[3], "case": r[4] if r[4] != "-" else "",
                 "excluded_N": r[6].value, "formula": r[6].formula}
                for r in rows
            ],
        })
    plain = [r[:6] for r in rows]
    if a.format == "csv":
        return _csv([BOUND_HEADER] + plain)
    return _table(BOUND_HEADER, plain)


def cmd_homdim(a) -> str:
    dims = homology.poincare_config(a.d, a.k)
    if a.format == "json":
        return _emit_json({"schema": _schema("homdim"), "d": a.d, "k": a.k, "dims": list(dims)})
    rows = list(enumerate(dims))
    if a.format == "csv":
        return _csv([("i", "dim")] + rows)
    return _table(("i", "dim"), rows)


def cmd_fuks(a) -> str:
    dims = homology.fuks_series(a.n)
    if a.format == "json":
        return _emit_json({"schema": _schema("fuks"), "n": a.n, "dims": list(dims)})
    rows = list(enumerate(dims))
    if a.format == "csv":
        return _csv([("k", "dim")] + rows)
    return _table(("k", "dim"), rows)


def cmd_pe_series(a) -> str:
    s = pebasis.pe_series_split(a.d, a.m)
    if a.format == "json":
        return _emit_json({
            "schema": _schema("pe-series"), "d": a.d, "m": a.m,
            "a_series": s["a_series"], "i_series": s["i_series"], "total": s["total"],
        })
    header = ("degree", "a_part", "i_part", "total") if a.split else ("degree", "total")
    rows = []
    for n, t in enumerate(s["total"]):
        rows.append((n, s["a_series"][n], s["i_series"][n], t) if a.split else (n, t))
    if a.format == "csv":
        return _csv([header] + rows)
    return _table(header, rows)


class _VerifyFailed(Exception):
    def __init__(self, text, failed):
        super().__init__(text)
        self.text = text
        self.failed = failed


def cmd_verify(a) -> str:
    results = verify.run(a.section, a.golden_dir)
    if a.section and not results:
        raise ParameterError(f"no checks tagged with section {a.section!r}")
    if a.format == "json":
        text = _emit_json({
            "schema": _schema("verify-paper"),
            "section": a.section,
            "passed": all(r.passed for r in results),
            "checks": [
                {"id": r.check_id, "anchor": r.anchor, "section": r.section,
                 "passed": r.passed, "detail": r.detail}
                for r in results
            ],
        })
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.anchor} [{r.check_id}]"
            if r.detail:
                line += f": {r.detail}"
            lines.append(line)
        n_fail = sum(not r.passed for r in results)
        lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
        text = "\n".join(lines) + "\n"
    failed = [r.anchor for r in results if not r.passed]
    if failed:
        raise _VerifyFailed(text, failed)
    return text


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-terms", type=int, default=limits.DEFAULT_MAX_TERMS,
                        help="abort when a polynomial exceeds this many terms")
    common.add_argument("--max-grid", type=int, default=limits.DEFAULT_MAX_GRID,
                        help="abort enumerations or tables larger than this")

    def fmt(p, choices=("text", "json"), default="text"):
        p.add_argument("--format", choices=choices, default=default)

    parser = _Parser(prog="mod2config", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("dickson", parents=[common], help="Dickson invariant d_{m,r}")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--basis", choices=("x", "k"), default="k")
    fmt(p)
    p.set_defaults(func=cmd_dickson)

    p = sub.add_parser("mui", parents=[common], help="Mui invariant h_i")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_mui)

    p = sub.add_parser("res-v", parents=[common], help="restriction image v_{m,r}")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_res_v)

    p = sub.add_parser("dual-sw", parents=[common], help="projected dual Stiefel-Whitney class")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--degree", type=int)
    p.add_argument("--witness")
    fmt(p)
    p.set_defaults(func=cmd_dual_sw)

    p = sub.add_parser("ideal", parents=[common], help="truncation-ideal membership")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=16)
    p.add_argument("--check-monomial-generation", action="store_true")
    p.add_argument("--member")
    fmt(p)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("key", parents=[common], help="key binomial parity condition")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", required=True, help="comma separated r1,...,rm")
    fmt(p)
    p.set_defaults(func=cmd_key)

    p = sub.add_parser("binom2", parents=[common], help="binomial coefficient mod 2")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_binom2)

    p = sub.add_parser("bounds", parents=[common], help="embedding non-existence bounds")
    p.add_argument("--kind", choices=bounds.KINDS, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--all-theorems", action="store_true")
    p.add_argument("--table", help="dmax,kmax[,lmax]")
    fmt(p, ("table", "csv", "json"), "table")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("homdim", parents=[common], help="Betti numbers of F(R^d,k)/S_k")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    fmt(p, ("table", "csv", "json"), "table")
    p.set_defaults(func=cmd_homdim)

    p = sub.add_parser("fuks", parents=[common], help="braid group Betti numbers")
    p.add_argument("--n", type=int, required=True)
    fmt(p, ("table", "csv", "json"), "table")
    p.set_defaults(func=cmd_fuks)

    p = sub.add_parser("pe-series", parents=[common], help="Poincare series of the Pe quotient")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--split", action="store_true")
    fmt(p, ("table", "csv", "json"), "table")
    p.set_defaults(func=cmd_pe_series)

    p = sub.add_parser("verify-paper", parents=[common], help="run the golden regression suite")
    p.add_argument("--section")
    p.add_argument("--golden-dir", help="directory holding manifest.json and golden files")
    fmt(p)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise ParameterError("missing subcommand")
        with limits.resource_limits(max_terms=args.max_terms, max_grid=args.max_grid):
            stdout.write(args.func(args))
        return 0
    except _VerifyFailed as exc:
        stdout.write(exc.text)
        stderr.write("verification failed: " + ", ".join(dict.fromkeys(exc.failed)) + "\n")
        return 3
    except ResourceError as exc:
        stderr.write(f"resource guard: {exc}\n")
        return 2
    except ParameterError as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
