"""Report assembly and the three output formats (json, text, latex).

A Report is plain data: the invocation, a summary dict, catalog entries and
named sections of rows. Rows carry a text rendering and, where the content is
mathematics, a LaTeX rendering used by the latex writer.
"""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence

from catalog import Entry, Status
from cohomology import H1Report
from deformations import (ConditionSet, DeformationReport, DeformationSpec, ReferenceDiff, matching_example,
                          omega_table)
from scalars import ParamPoly, Weight

SCHEMA = "symbol-deformations/1"
VERSION = "0.1.0"


@dataclass
class Row:
    label: str
    text: str
    latex: Optional[str] = None

    def as_dict(self) -> Dict[str, str]:
        out = {"label": self.label, "text": self.text}
        if self.latex is not None:
            out["latex"] = self.latex
        return out


@dataclass
class Report:
    command: str
    invocation: List[str]
    summary: Dict[str, object] = field(default_factory=dict)
    entries: List[Entry] = field(default_factory=list)
    sections: Dict[str, List[Row]] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return any(e.status is Status.FAIL for e in self.entries)

    def sorted_entries(self) -> List[Entry]:
        return sorted(self.entries, key=lambda e: (e.suite, e.name))

    def counts(self) -> Dict[str, int]:
        out = {s.value: 0 for s in Status}
        for e in self.entries:
            out[e.status.value] += 1
        return out

    def as_dict(self, timings: bool = False) -> Dict[str, object]:
        out: Dict[str, object] = {
            "schema": SCHEMA,
            "version": VERSION,
            "command": self.command,
            "invocation": list(self.invocation),
            "summary": self.summary,
            "counts": self.counts(),
            "entries": [e.as_dict() for e in self.sorted_entries()],
            "sections": {name: [r.as_dict() for r in rows] for name, rows in self.sections.items()},
        }
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


@contextmanager
def phase(report: Report, name: str) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        report.timings[name] = report.timings.get(name, 0.0) + time.perf_counter() - start


# ---------------------------------------------------------------------------
# section builders
# ---------------------------------------------------------------------------

def poly_row(label: str, p: ParamPoly, weight: Weight) -> Row:
    return Row(label, p.render(weight), p.latex(weight))


def condition_rows(conditions: Dict[int, ConditionSet], weight: Weight) -> List[Row]:
    rows = []
    for m, cs in sorted(conditions.items()):
        for label, g in zip(cs.provenance, cs.generators):
            rows.append(poly_row(f"order {m} {label}", g, weight))
    return rows


def diff_rows(diff: ReferenceDiff, weight: Weight) -> Dict[str, List[Row]]:
    out = {}
    for name in ("matched", "missing", "extra"):
        out[name] = [poly_row(f"order {m} {label}", g, weight) for m, label, g in getattr(diff, name)]
    return out


def diff_entries(diff: ReferenceDiff) -> List[Entry]:
    s = "reference-diff"
    entries = [Entry(s, f"tabulated order {m} {label}: {i}", Status.FAIL, "not in the derived ideal")
               for i, (m, label, _) in enumerate(diff.missing)]
    entries += [Entry(s, f"derived order {m} {label}: {i}", Status.FAIL, "not in the tabulated ideal")
                for i, (m, label, _) in enumerate(diff.extra)]
    entries.append(Entry(s, "tabulated generators matched", Status.PASS if diff.ok else Status.FAIL,
                         f"{len(diff.matched)} matched, {len(diff.missing)} missing, {len(diff.extra)} extra"))
    return entries


def l1_rows(spec: DeformationSpec) -> List[Row]:
    rows = []
    for key, block in sorted(spec.l1.items()):
        coeff, c = block.terms[0]
        text = f"{coeff.render(spec.base)} * C({block.source.label},{block.target.label})"
        latex = f"{coeff.latex(spec.base)}\\,C_{{{block.source.label},{block.target.label}}}"
        rows.append(Row(block.label(), text, latex))
    return rows


def omega_rows(spec: DeformationSpec) -> List[Row]:
    return [poly_row(f"omega({spec.base.label(o)},{spec.base.label(t)})", w, spec.base)
            for (o, t), w in sorted(omega_table(spec).items())]


def l2_rows(report: DeformationReport) -> List[Row]:
    base = report.spec.base
    rows = []
    for r in report.l2:
        tab = r.tabulated.render(base) if r.tabulated is not None else "-"
        text = f"sigma = {r.sigma.render(base)}; tabulated omega/2 = {tab}; ratio {r.ratio or '-'}"
        rows.append(Row(f"{r.block} J{r.k + 1}", text, r.sigma.latex(base)))
    return rows


def deform_entries(report: DeformationReport) -> List[Entry]:
    entries = list(report.entries)
    if report.integrability is not None:
        integ = report.integrability
        detail = ", ".join(f"order {m}: {n} blocks" for m, n in sorted(integ.checked.items()))
        entries.append(Entry("maurer-cartan", "defects vanish modulo the derived ideal",
                             Status.PASS if integ.ok else Status.FAIL,
                             "; ".join(integ.failures) or detail))
        if integ.absorbed:
            entries.append(Entry("maurer-cartan", "dJ components removed by equivalence", Status.FLAG,
                                 "; ".join(integ.absorbed)))
    free = report.free_parameters
    entries.append(Entry("deform", "maximal zero-assignments", Status.PASS,
                         f"{len(report.zero_assignments)} branches, {free} free parameters"))
    ex = matching_example(report.spec)
    if ex is not None and ex.conditions:
        entries.append(Entry(ex.name, "deformation count in the prose", Status.FLAG,
                             f"derived {len(report.zero_assignments)} branches with {free} free parameters"))
    return entries


def zero_assignment_rows(report: DeformationReport) -> List[Row]:
    total = len(report.spec.parameters)
    rows = []
    for i, zeros in enumerate(report.zero_assignments):
        if not zeros:
            rows.append(Row(f"branch {i}", f"no parameter vanishes; {total} free parameters"))
            continue
        names = ", ".join(p.render() for p in zeros)
        rows.append(Row(f"branch {i}", f"{{{names}}} = 0; {total - len(zeros)} free parameters",
                        ", ".join(p.latex() for p in zeros) + " = 0"))
    return rows


def h1_entries(h1: H1Report, tabulated: Optional[int]) -> List[Entry]:
    s = "h1"
    name = f"H1 at (l={h1.weight}, k={h1.k})"
    entries = []
    if tabulated is None:
        entries.append(Entry(s, name, Status.PASS, f"computed {h1.dimension}"))
    else:
        entries.append(Entry(s, name, Status.PASS if h1.dimension == tabulated else Status.FAIL,
                             f"computed {h1.dimension}, tabulated {tabulated}"))
    if h1.notes and h1.cocycle and h1.bol:
        entries.append(Entry(s, f"{name} coboundary tension", Status.FLAG, "; ".join(h1.notes)))
    return entries


# ---------------------------------------------------------------------------
# writers
# ---------------------------------------------------------------------------

def render_json(report: Report, timings: bool = False) -> str:
    return json.dumps(report.as_dict(timings), indent=2, sort_keys=True) + "\n"


def _table(headers: Sequence[str], rows: List[Sequence[str]]) -> List[str]:
    widths = [len(h) for h in headers]
    for r in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, r)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers), "  ".join("-" * w for w in widths)]
    lines += [fmt.format(*r) for r in rows]
    return lines


def render_text(report: Report, timings: bool = False) -> str:
    lines = [f"{report.command} ({SCHEMA}, version {VERSION})"]
    for k, v in sorted(report.summary.items()):
        lines.append(f"  {k}: {v}")
    if report.entries:
        lines.append("")
        lines += _table(("suite", "status", "name", "detail"),
                        [(e.suite, e.status.value.upper(), e.name, e.detail) for e in report.sorted_entries()])
    for name, rows in report.sections.items():
        lines.append("")
        lines.append(f"[{name}]")
        lines += [f"  {r.label}: {r.text}" for r in rows] or ["  (none)"]
    counts = report.counts()
    lines.append("")
    lines.append(f"{counts['pass']} pass, {counts['fail']} fail, {counts['flag']} flag")
    if timings:
        for k, v in sorted(report.timings.items()):
            lines.append(f"  {k}: {v:.3f}s")
    return "\n".join(lines) + "\n"


_LATEX_SPECIAL = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def latex_escape(s: str) -> str:
    return "".join(_LATEX_SPECIAL.get(ch, ch) for ch in str(s))


def render_latex(report: Report, timings: bool = False) -> str:
    out = [
        "\\documentclass[11pt]{article}\n",
        "\\usepackage{amsmath}\n",
        "\\usepackage{amssymb}\n",
        "\\usepackage{longtable}\n",
        "\\begin{document}\n",
        f"\\section*{{{latex_escape(report.command)}}}\n",
        f"\\noindent Schema {latex_escape(SCHEMA)}, version {latex_escape(VERSION)}.\n\n",
    ]
    if report.summary:
        out.append("\\begin{itemize}\n")
        for k, v in sorted(report.summary.items()):
            out.append(f"  \\item {latex_escape(k)}: {latex_escape(v)}\n")
        out.append("\\end{itemize}\n")
    if report.entries:
        out.append("\\begin{longtable}{llp{6cm}p{5cm}}\n")
        out.append("suite & status & name & detail \\\\ \\hline\n")
        for e in report.sorted_entries():
            cells = (e.suite, e.status.value.upper(), e.name, e.detail)
            out.append(" & ".join(latex_escape(c) for c in cells) + " \\\\\n")
        out.append("\\end{longtable}\n")
    for name, rows in report.sections.items():
        out.append(f"\\subsection*{{{latex_escape(name)}}}\n")
        if not rows:
            out.append("None.\n\n")
            continue
        out.append("\\begin{itemize}\n")
        for r in rows:
            body = f"$\\displaystyle {r.latex}$" if r.latex is not None else latex_escape(r.text)
            out.append(f"  \\item {latex_escape(r.label)}: {body}\n")
        out.append("\\end{itemize}\n")
    if timings and report.timings:
        out.append("\\subsection*{timings}\n\\begin{itemize}\n")
        for k, v in sorted(report.timings.items()):
            out.append(f"  \\item {latex_escape(k)}: {v:.3f}s\n")
        out.append("\\end{itemize}\n")
    out.append("\\end{document}\n")
    return "".join(out)


WRITERS = {"json": render_json, "text": render_text, "latex": render_latex}


def render(report: Report, fmt: str, timings: bool = False) -> str:
    return WRITERS[fmt](report, timings)
