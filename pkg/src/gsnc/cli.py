"""Command-line front end.

    gsnc --command mhs --input model.json [--format text|structured] [--degrees 0..2]

Exit status: 0 success, 1 validation failure or failed cross-check, 2
unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .divisors import CoveringHypothesisError, covering_plan, is_permissible, round_up
from .epoly import e_polynomial_compact, e_polynomial_from_mhs, e_polynomial_strata, format_epoly
from .model import level
from .mv import build_mv_complex, cohomology_of_X, structure_sheaf_cohomology
from .pair import GsncPair, InvalidModel, prepare, validate_pair
from .schema import SchemaError, load_pair
from .weight import D1SquareError, hodge_filtration_dims, mixed_hodge_numbers

COMMANDS = ("validate", "betti", "mhs", "epoly", "sheaf", "cover-plan", "all")
REPORT_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    output_format: str = "text"
    degree_range: tuple[int, int] | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in ("text", "structured"):
            raise ValueError(f"unknown format {self.output_format!r}")


@dataclass
class Section:
    title: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class Report:
    command: str
    model: str
    status: str = "ok"
    sections: list[Section] = field(default_factory=list)

    def text(self) -> str:
        lines = [f"# {self.command}: {self.model}"]
        for s in self.sections:
            lines.append("")
            lines.append(f"## {s.title}")
            if s.columns:
                lines.append("\t".join(s.columns))
                for r in s.rows:
                    lines.append("\t".join(str(x) for x in r))
            lines.extend(s.notes)
        lines.append("")
        lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"

    def structured(self) -> str:
        doc = {
            "version": REPORT_VERSION,
            "command": self.command,
            "model": self.model,
            "status": self.status,
            "sections": [{"title": s.title, "columns": list(s.columns),
                          "rows": [list(r) for r in s.rows], "notes": s.notes}
                         for s in self.sections],
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def parse_degrees(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"degrees must look like 'a..b', got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty degree range {text!r}")
    return (lo, hi)


def bundled_examples() -> list[Path]:
    """Model files shipped with the package (the oracle corpus)."""
    root = resources.files("gsnc") / "data" / "models"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".json"))


# --------------------------------------------------------------------------
# sections


def _in_range(n: int, cfg: RunConfig) -> bool:
    return cfg.degree_range is None or cfg.degree_range[0] <= n <= cfg.degree_range[1]


def _validate(pair: GsncPair, report: Report) -> bool:
    res = validate_pair(pair)
    sec = Section("validation", ())
    if res.ok:
        sec.notes.append(f"valid, level {level(pair.model)}, {len(pair.model.strata)} strata")
    else:
        sec.notes.append(f"invalid: {len(res)} problem(s)")
        sec.notes.extend(f"- {i}" for i in res)
        report.status = "invalid"
    report.sections.append(sec)
    return res.ok


def _betti(pair: GsncPair, cfg: RunConfig, report: Report) -> None:
    x = pair.x_part()
    res = cohomology_of_X(build_mv_complex(x))
    sec = Section("cohomology of X (Mayer-Vietoris, E2 = E_infinity)", ("n", "b_n", "weights"))
    for n, b, ws in res.rows():
        if _in_range(n, cfg):
            sec.rows.append((n, b, ",".join(f"{w}:{d}" for w, d in ws.items()) or "-"))
    if pair.has_boundary:
        sec.notes.append("B is ignored here; see mhs for the cohomology of X - B")
    report.sections.append(sec)


def _mhs(pair: GsncPair, cfg: RunConfig, report: Report) -> None:
    table = mixed_hodge_numbers(pair)
    sec = Section("mixed Hodge numbers of H^n(X - B)", ("n", "a", "b", "dim"))
    sec.rows = [r for r in table.rows() if _in_range(r[0], cfg)]
    sec.notes.append("valid under E2-degeneration of the weight spectral sequence (X proper)")
    report.sections.append(sec)
    wsec = Section("weight graded pieces", ("n", "w", "dim"))
    wsec.rows = [r for r in table.weight_rows() if _in_range(r[0], cfg)]
    report.sections.append(wsec)
    hf = hodge_filtration_dims(pair, table)
    fsec = Section("Hodge filtration Gr_F^r H^n (from table, from F-graded E1)",
                   ("n", "r", "table", "e1"))
    fsec.rows = [r for r in hf.rows() if _in_range(r[0], cfg)]
    fsec.notes.append("two-way check: " + ("agree" if hf.consistent else "MISMATCH"))
    if not hf.consistent:
        report.status = "failed"
    report.sections.append(fsec)


def _epoly(pair: GsncPair, report: Report) -> None:
    table = mixed_hodge_numbers(pair)
    from_mhs = e_polynomial_from_mhs(table)
    strata = e_polynomial_strata(pair)
    sec = Section("E-polynomials", ("source", "polynomial"))
    sec.rows = [("strata", format_epoly(strata)), ("mhs", format_epoly(from_mhs)),
                ("compact", format_epoly(e_polynomial_compact(pair)))]
    ok = strata == from_mhs
    sec.notes.append("oracle check (strata vs mhs): " + ("agree" if ok else "MISMATCH"))
    if not ok:
        report.status = "failed"
    report.sections.append(sec)


def _sheaf(pair: GsncPair, report: Report) -> None:
    sec = Section("structure sheaf cohomology h^q(X, O_X)", ("q", "dim"))
    h = structure_sheaf_cohomology(pair)
    sec.rows = [(q, d) for q, d in enumerate(h)]
    report.sections.append(sec)


def _cover(pair: GsncPair, report: Report) -> None:
    sec = Section("covering plans", ("divisor", "component", "coefficient", "round_up",
                                     "multiplicity", "pullback"))
    if not pair.divisors:
        sec.notes.append("no divisors declared")
    for d in pair.divisors:
        ok, witnesses = is_permissible(pair.model, d)
        if not ok:
            sec.notes.append(f"{d.id}: not permissible, contains {', '.join(witnesses)}")
            report.status = "failed"
            continue
        try:
            plan = covering_plan(d, pair.model)
        except CoveringHypothesisError as e:
            sec.notes.append(f"{d.id}: {e}")
            report.status = "failed"
            continue
        up = round_up(d)
        for k, v in d.coefficients.items():
            sec.rows.append((d.id, k, str(v), str(up.coefficients[k]), plan.multiplicities[k],
                             plan.pullback[k]))
        sec.notes.append(f"{d.id}: total degree {plan.total_degree} (product of multiplicities); "
                         f"a single cyclic cover of degree {plan.lcm_degree} also clears denominators")
    report.sections.append(sec)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        pair = load_pair(cfg.input_path)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = Report(cfg.command, pair.model.name or Path(cfg.input_path).stem)
    pair = prepare(pair)
    if not _validate(pair, report) or cfg.command == "validate":
        _emit(report, cfg, out)
        return 0 if report.status == "ok" else 1
    if cfg.command != "all":
        report.sections.clear()
    try:
        if cfg.command in ("betti", "all"):
            _betti(pair, cfg, report)
        if cfg.command in ("mhs", "all"):
            _mhs(pair, cfg, report)
        if cfg.command in ("epoly", "all"):
            _epoly(pair, report)
        if cfg.command == "sheaf" or (cfg.command == "all" and not pair.has_boundary):
            if pair.has_boundary:
                report.sections.append(Section("structure sheaf cohomology", (),
                                               notes=["requires B = 0"]))
                report.status = "failed"
            else:
                _sheaf(pair, report)
        if cfg.command in ("cover-plan", "all"):
            _cover(pair, report)
    except (D1SquareError, InvalidModel, ArithmeticError) as e:
        report.sections.append(Section("inconsistency", (), notes=[str(e)]))
        report.status = "failed"
    _emit(report, cfg, out)
    return 0 if report.status == "ok" else 1


def _emit(report: Report, cfg: RunConfig, out) -> None:
    out.write(report.structured() if cfg.output_format == "structured" else report.text())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gsnc", description="Cohomological invariants of GSNC pairs.")
    p.add_argument("--command", choices=COMMANDS, help="analysis to run")
    p.add_argument("--input", help="model file (JSON)")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--degrees", type=parse_degrees, default=None, metavar="a..b",
                   help="restrict report rows to degrees a..b")
    p.add_argument("--list-examples", action="store_true", help="print bundled model files and exit")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_examples:
        for path in bundled_examples():
            print(path)
        return 0
    if not args.command or not args.input:
        print("error: --command and --input are required", file=sys.stderr)
        return 2
    return run(RunConfig(args.command, args.input, args.format, args.degrees))


if __name__ == "__main__":
    sys.exit(main())
