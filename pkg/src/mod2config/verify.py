"""Golden-file regression suite behind the ``verify-paper`` command.

Each check renders a deterministic text block; the block must match the
corresponding file under ``data/golden`` byte for byte.  The manifest
(``data/golden/manifest.json``) attaches a citation anchor and a section
tag to every check so failures can be reported by anchor and runs can be
filtered by section.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import bounds, homology, ideal, invariants, parity, pebasis, swcalc
from .polyf2 import RingContext, geometric_inverse


def _ideal_report(q: int) -> str:
    n = 2
    members = {
        3: ["Q0^3", "Q0^2*Q1", "Q0*Q1^2", "Q1^3", "Q0^2 + Q1^3"],
        4: ["Q0^4", "Q0^3*Q1", "Q0^2*Q1^2", "Q1^4", "Q0*Q1^3"],
    }[q]
    lines = [f"n={n} q={q}"]
    for text in members:
        p = ideal.parse_q(text, n)
        lines.append(f"{text}: member={str(ideal.in_truncation_ideal(p, q)).lower()}")
    check = ideal.monomial_generation_check(n, q, 8 if q == 3 else 10)
    lines.append(f"monomially generated: {str(check.holds).lower()}")
    lines.append(f"counterexample: {check.counterexample} (degree {check.degree})")
    return "\n".join(lines) + "\n"


def _ideal_expansions() -> str:
    lines = []
    for text in ["Q0^3", "Q0*Q1^3", "Q1^4", "Q0^2 + Q1^3"]:
        lines.append(f"{text} = {ideal.expand_q(ideal.parse_q(text, 2))}")
    return "\n".join(lines) + "\n"


def _dual_report(d: int, m: int, degrees, full=False) -> str:
    img = swcalc.dual_image(d, m, 1)
    lines = [f"d={d} m={m} power=1"]
    if full:
        lines.append(f"dual: {img.poly}")
    for n in degrees:
        lines.append(f"component {n}: {img.component(n)}")
    lines.append(f"top nonzero degree: {swcalc.top_nonzero_degree(img)}")
    return "\n".join(lines) + "\n"


def _line_inverse() -> str:
    lines = []
    for d in range(2, 7):
        ctx = RingContext.make(1, cap=d, stem="f", index_base=None)
        inv = geometric_inverse(ctx.one() + ctx.var(1))
        lines.append(f"d={d}: (1 + f)^-1 = {inv}")
    return "\n".join(lines) + "\n"


def _power_of_two_witness() -> str:
    lines = []
    for d in (2, 4, 8):
        for m in (1, 2, 3):
            img = swcalc.dual_image(d, m, 1)
            wit = (d - 1,) * m
            deg = (d - 1) * ((1 << m) - 1)
            lines.append(f"d={d} m={m} degree {deg}: {swcalc.witness_coefficient(img, wit, deg)}")
    return "\n".join(lines) + "\n"


def _middle_witness() -> str:
    lines = []
    for d in (3, 5, 6, 7):
        for m in (1, 2, 3):
            img = swcalc.dual_image(d, m, 1)
            deg = (d - 1) << (m - 1)
            lead = (0,) * (m - 1) + (d - 1,)
            lines.append(
                f"d={d} m={m} degree {deg}: nonzero={int(bool(img.component(deg)))} "
                f"lead={swcalc.witness_coefficient(img, lead, deg)}"
            )
    return "\n".join(lines) + "\n"


def _even_witness() -> str:
    lines = []
    for d in (6, 10, 12):
        for m in (1, 2, 3):
            img = swcalc.dual_image(d, m, 1)
            deg = d * (1 << (m - 1)) - 1
            wit = (1,) * (m - 1) + (d - 1,)
            lines.append(f"d={d} m={m} degree {deg}: {swcalc.witness_coefficient(img, wit, deg)}")
    return "\n".join(lines) + "\n"


def _trivial_dual() -> str:
    lines = []
    for d in (3, 7):
        for m in (1, 2, 3):
            lines.append(f"d={d} m={m}: {swcalc.dual_image(d, m, d + 1).poly}")
    return "\n".join(lines) + "\n"


def _mui() -> str:
    return "".join(f"h{i} = {invariants.mui_h(3, i)}\n" for i in (1, 2, 3))


def _dickson_small() -> str:
    return "".join(f"d(2,{r}) = {invariants.dickson_bruteforce(2, r)}\n" for r in (0, 1))


def _dickson_extremes() -> str:
    lines = []
    for m in range(1, 6):
        for r in sorted({0, m - 1}):
            lines.append(f"m={m} r={r}: {invariants.dickson_recurrence(m, r)}")
    return "\n".join(lines) + "\n"


def _restriction() -> str:
    lines = []
    for m in range(1, 5):
        for r in range(1, m + 1):
            v = invariants.restriction_v(m, r)
            same = v.terms == invariants.mui_h(m, r).terms
            lines.append(f"v({m},{r}) = {v} ; equals h_{r}: {str(same).lower()}")
    return "\n".join(lines) + "\n"


def _homology_examples() -> str:
    lines = []
    for d, k in ((2, 2), (2, 3), (2, 4), (3, 2), (3, 4)):
        dims = ",".join(map(str, homology.poincare_config(d, k)))
        lines.append(f"d={d} k={k}: {dims}")
    return "\n".join(lines) + "\n"


def _fuks_top() -> str:
    hits = [n for n in range(2, 129) if homology.fuks_dim(n, n - 1) > 0]
    return "n <= 128 with nonzero top class: " + ",".join(map(str, hits)) + "\n"


def _families() -> str:
    lines = []
    for d, m, fam, k in ((6, 3, 2, None), (5, 2, 3, 1), (4, 2, 1, None), (3, 2, 1, None)):
        for c in parity.family_cases(d, m):
            if c.family == fam and (k is None or c.k == k):
                r = ",".join(map(str, c.r))
                lines.append(f"d={d} m={m} family {fam}: ell={c.ell} r=({r}) -> {c.value}")
    for d in range(2, 9):
        lines.append(f"binom(-1, {d - 1}) mod 2 = {parity.binom_parity(-1, d - 1)}")
    return "\n".join(lines) + "\n"


def _skew_none() -> str:
    lines = []
    for d, ell in ((3, 5), (7, 3), (15, 2)):
        for r in bounds.bound_l_skew(d, ell):
            if r.case_id == "skew.dplus1-pow2":
                lines.append(f"d={d} ell={ell}: {r.value}")
    return "\n".join(lines) + "\n"


def _pe_base() -> str:
    lines = []
    for d in (2, 3, 5):
        s = pebasis.pe_series_split(d, 1)
        lines.append(f"d={d} m=1 a={s['a_series']} i={s['i_series']}")
    return "\n".join(lines) + "\n"


def _pe_two() -> str:
    lines = []
    for d in (2, 3, 5):
        s = pebasis.pe_series_split(d, 2)
        lines.append(f"d={d} m=2 a={s['a_series']}")
    return "\n".join(lines) + "\n"


CHECKS = {
    "ideal-q3": lambda: _ideal_report(3),
    "ideal-q4": lambda: _ideal_report(4),
    "ideal-expansions": _ideal_expansions,
    "dual-d3-m2": lambda: _dual_report(3, 2, [4], full=True),
    "dual-d6-m2": lambda: _dual_report(6, 2, [10, 11]),
    "line-inverse": _line_inverse,
    "pow2-witness": _power_of_two_witness,
    "middle-witness": _middle_witness,
    "even-witness": _even_witness,
    "trivial-dual": _trivial_dual,
    "mui": _mui,
    "dickson-small": _dickson_small,
    "dickson-extremes": _dickson_extremes,
    "restriction": _restriction,
    "homology-examples": _homology_examples,
    "fuks-top": _fuks_top,
    "key-families": _families,
    "skew-none": _skew_none,
    "pe-base": _pe_base,
    "pe-two": _pe_two,
}


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    anchor: str
    section: str
    passed: bool
    detail: str = ""


def golden_dir() -> Path:
    return Path(str(resources.files("mod2config.data").joinpath("golden")))


def manifest(directory: Path | None = None) -> list:
    directory = directory or golden_dir()
    return json.loads((directory / "manifest.json").read_text())["checks"]


def section_matches(entry_section: str, wanted: str) -> bool:
    return entry_section == wanted or entry_section.startswith(wanted + ".")


def run(section: str | None = None, directory: Path | None = None) -> list:
    directory = Path(directory) if directory else golden_dir()
    results = []
    for entry in manifest(directory):
        if section and not section_matches(entry["section"], section):
            continue
        actual = CHECKS[entry["id"]]()
        path = directory / entry["file"]
        try:
            expected = path.read_text()
        except FileNotFoundError:
            results.append(CheckResult(entry["id"], entry["anchor"], entry["section"], False, "golden file missing"))
            continue
        ok = actual == expected
        detail = "" if ok else _first_difference(expected, actual)
        results.append(CheckResult(entry["id"], entry["anchor"], entry["section"], ok, detail))
    return results


def _first_difference(expected: str, actual: str) -> str:
    exp, act = expected.splitlines(), actual.splitlines()
    for i, (a, b) in enumerate(zip(exp, act)):
        if a != b:
            return f"line {i + 1}: expected {a!r}, got {b!r}"
    return f"line count differs: expected {len(exp)}, got {len(act)}"


def write_goldens(directory: Path):
    """Regenerate every golden file from the current build (maintainer tool)."""
    directory = Path(directory)
    for entry in manifest(directory):
        (directory / entry["file"]).write_text(CHECKS[entry["id"]]())
