"""E_2-page bookkeeping for the spectral sequence E_2^{s,t} = (L_n^s BP_*X)_t.

Differentials are indexed d_r: E_r^{s,t} -> E_r^{s+r,t+r-1}.  None is ever
computed: a page collapses when every potential source is either a column
of permanent cycles (column 0 when it is the image of the input) or has a
zero target column for every r >= 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cohomology import cech_cohomology
from .errors import NotCollapsed
from .modules import (ModuleSum, is_ideal_torsion,
                      module_to_json, modules_equal, per_degree_evaluate,
                      render, suspend)

COLLAPSED = "COLLAPSED"
UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class E2Page:
    """Columns s -> ModuleSum (graded by t); ``image_of_input`` flags column 0."""

    n: int
    columns: dict
    image_of_input: bool = False

    def __post_init__(self):
        for s in self.columns:
            if s < 0 or s > self.n:
                raise ValueError(f"column {s} outside 0..{self.n}")

    @property
    def nonzero_columns(self) -> list:
        return [s for s, m in sorted(self.columns.items()) if not m.is_zero]

    def column(self, s: int):
        return self.columns.get(s)

    def is_zero(self) -> bool:
        return not self.nonzero_columns


def assemble_E2(BPX: ModuleSum, n: int, route: str = "closed") -> E2Page:
    table = cech_cohomology(BPX, BPX.ring.ideal(n), route)
    cols = {s: m for s, m in table.entries.items() if not m.is_zero}
    for s, m in cols.items():
        if s >= 1:
            assert is_ideal_torsion(m, table.ideal), f"column {s} not torsion"
    image = 0 in cols and modules_equal(cols[0], BPX)
    return E2Page(n, cols, image)


@dataclass(frozen=True)
class Differential:
    r: int
    source: int
    target: int

    def __str__(self):
        return f"d_{self.r}: column {self.source} -> column {self.target}"


@dataclass(frozen=True)
class CollapseVerdict:
    verdict: str
    possible: tuple = ()

    @property
    def collapsed(self) -> bool:
        return self.verdict == COLLAPSED

    def __str__(self):
        if self.collapsed:
            return COLLAPSED
        return UNDETERMINED + ": " + "; ".join(map(str, self.possible))


def detect_collapse(page: E2Page) -> CollapseVerdict:
    nz = set(page.nonzero_columns)
    possible = []
    for s in sorted(nz):
        if s == 0 and page.image_of_input:
            continue                     # permanent cycles
        for tgt in sorted(nz):
            r = tgt - s
            if r >= 2:
                possible.append(Differential(r, s, tgt))
    if possible:
        return CollapseVerdict(UNDETERMINED, tuple(possible))
    return CollapseVerdict(COLLAPSED)


@dataclass(frozen=True)
class AbutmentReport:
    """Filtration pieces Sigma^{-s} E_inf^{s,*} of BP_*(L_n X), top filtration first."""

    page: E2Page
    pieces: tuple = field(default=())    # ((s, Sigma^{-s} column), ...)
    split: bool = False

    def in_degree(self, m: int) -> list:
        """(s, t, group) with t - s = m for each contributing column."""
        return [(s, m + s, per_degree_evaluate(self.page.columns[s], m + s))
                for s, _ in self.pieces]

    def ses(self, style: str = "ascii"):
        """The two-column short exact sequence, or None."""
        if len(self.pieces) != 2:
            return None
        (_, sub), (_, quot) = self.pieces
        arrow = " → "
        return ("0" + arrow + render(sub, style) + arrow + "abutment" + arrow
                + render(quot, style) + arrow + "0")

    def render(self, style: str = "ascii") -> str:
        if not self.pieces:
            return "abutment = 0"
        if len(self.pieces) == 1:
            return "abutment = " + render(self.pieces[0][1], style)
        seq = self.ses(style)
        if seq is not None:
            out = seq
            if self.split:
                out += "\n(split: the column-0 classes come from the input)"
            return out
        lines = ["filtration (top first):"]
        lines += [f"  F^{s}/F^{s + 1} = {render(m, style)}" for s, m in self.pieces]
        return "\n".join(lines)

    def to_json(self) -> list:
        return [{"s": s, "shift": -s, "module": module_to_json(m)}
                for s, m in self.pieces]


def abutment_report(page: E2Page) -> AbutmentReport:
    verdict = detect_collapse(page)
    if not verdict.collapsed:
        raise NotCollapsed(str(verdict))
    pieces = tuple((s, suspend(page.columns[s], -s))
                   for s in sorted(page.nonzero_columns, reverse=True))
    split = page.image_of_input and len(pieces) == 2
    return AbutmentReport(page, pieces, split)


def page_to_json(page: E2Page) -> dict:
    verdict = detect_collapse(page)
    report = abutment_report(page).to_json() if verdict.collapsed else []
    return {"n": page.n,
            "columns": {str(s): module_to_json(m)
                        for s, m in sorted(page.columns.items())},
            "verdict": verdict.verdict,
            "report": report}


def dumps(page: E2Page) -> str:
    return json.dumps(page_to_json(page), sort_keys=True)
