"""Local and Cech cohomology with respect to I_{n+1} = (v_0, ..., v_n).

Two routes compute H^*_{I_{n+1}}:

* ``local_cohomology_iterative`` runs the two-row spectral sequence
  H^s_{v_j} H^t_{I_j} => H^{s+t}_{I_{j+1}} one generator at a time.  Each
  CCM summand is either v_j-torsion or has none, so every extension in the
  sequence is a direct sum and no element-level work is needed.
* ``local_cohomology_closed_form`` writes the answer down directly.

Cech cohomology then follows from the four-term sequence
0 -> H^0 -> M -> CH^0 -> H^1 -> 0 and CH^k = H^{k+1} for k > 0.
On comodules these are T_n^* and L_n^* respectively.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import AmbiguousExtension
from .grading import IdealSpec, RingDescriptor
from .modules import (CCM, INF, ModuleSum, local_cokernel,
                      localize, module_from_json, module_to_json, render,
                      torsion_part)

ROUTES = ("iterative", "closed", "chromatic")


@dataclass(frozen=True)
class CohomologyTable:
    """s -> ModuleSum for one ideal; ``kind`` is 'local' or 'cech'."""

    ideal: IdealSpec
    entries: dict = field(default_factory=dict)
    route: str = "closed"
    kind: str = "local"

    def __post_init__(self):
        top = self.max_degree
        for s in self.entries:
            if s < 0 or s > top:
                raise ValueError(f"{self.kind} cohomology has no degree {s}")
        full = {s: self.entries.get(s, ModuleSum.zero(self.ring))
                for s in range(top + 1)}
        object.__setattr__(self, "entries", full)

    @property
    def ring(self) -> RingDescriptor:
        return self.ideal.ring

    @property
    def max_degree(self) -> int:
        n = self.ideal.top
        return n + 1 if self.kind == "local" else n

    def __getitem__(self, s: int) -> ModuleSum:
        if s < 0:
            raise KeyError(s)
        return self.entries.get(s, ModuleSum.zero(self.ring))

    def nonzero_degrees(self) -> list:
        return [s for s, m in sorted(self.entries.items()) if not m.is_zero]

    def same_values(self, other: "CohomologyTable") -> bool:
        return (self.ideal == other.ideal and self.kind == other.kind
                and self.entries == other.entries)

    def render(self, style: str = "ascii") -> str:
        name = "H" if self.kind == "local" else "ČH"
        lines = [f"{name}^{s} = {render(m, style)}"
                 for s, m in sorted(self.entries.items()) if not m.is_zero]
        return "\n".join(lines) or f"{name}^* = 0"

    def to_json(self) -> dict:
        return {"ideal": self.ideal.label,
                "kind": self.kind,
                "entries": [{"s": s, "module": module_to_json(m)}
                            for s, m in sorted(self.entries.items())],
                "route": self.route}

    @classmethod
    def from_json(cls, ring: RingDescriptor, obj: dict) -> "CohomologyTable":
        ideal = IdealSpec(ring, obj["ideal"] - 1)
        entries = {e["s"]: module_from_json(ring, e["module"])
                   for e in obj["entries"]}
        return cls(ideal, entries, obj.get("route", "closed"),
                   obj.get("kind", "local"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _single(M: ModuleSum, c: CCM) -> ModuleSum:
    return ModuleSum(M.ring, (c,))


def local_cohomology_iterative(M: ModuleSum, ideal: IdealSpec) -> CohomologyTable:
    ring = M.ring
    if ideal.ring != ring:
        raise ValueError("module and ideal live over different rings")
    zero = ModuleSum.zero(ring)
    table = {0: torsion_part(M, 0), 1: local_cokernel(M, 0)}
    for j in range(1, ideal.top + 1):
        new = {}
        for k in range(j + 2):
            sub = local_cokernel(table.get(k - 1, zero), j)
            quotient = zero
            for c in table.get(k, zero):
                single = _single(M, c)
                tors = torsion_part(single, j)
                if not (tors.is_zero or tors == single):
                    raise AmbiguousExtension(
                        f"{c} is neither v_{j}-torsion nor v_{j}-torsion-free")
                quotient = quotient + tors
            new[k] = sub + quotient
        table = new
    return CohomologyTable(ideal, table, route="iterative", kind="local")


def _closed_form_ccm(c: CCM, ideal: IdealSpec):
    """(degree, CCM) of the concentrated local cohomology, or None if zero."""
    idx = set(ideal.indices)
    if c.inverted_set & idx:
        return None
    free = sorted(idx - c.support)
    value = c
    for j in free:
        value = value.with_exponent(j, INF)
    return len(free), value


def local_cohomology_closed_form(M, ideal: IdealSpec) -> CohomologyTable:
    """Accepts a single CCM (wrapped) or a ModuleSum; sums over summands."""
    if isinstance(M, CCM):
        M = ModuleSum.of(ideal.ring, [M])
    entries = {}
    for c in M.summands:
        hit = _closed_form_ccm(c, ideal)
        if hit is None:
            continue
        s, value = hit
        entries[s] = entries.get(s, ModuleSum.zero(M.ring)) + _single(M, value)
    return CohomologyTable(ideal, entries, route="closed", kind="local")


def _cech_ccm(c: CCM, ideal: IdealSpec, M: ModuleSum) -> dict:
    single = _single(M, c)
    if c.inverted_set & set(ideal.indices):
        return {0: single}
    s, value = _closed_form_ccm(c, ideal)
    if s == 0:
        return {}
    if s == 1:
        (m,) = set(ideal.indices) - c.support
        return {0: localize(single, m)}
    return {0: single, s - 1: _single(M, value)}


def cech_cohomology(M: ModuleSum, ideal: IdealSpec,
                    route: str = "closed") -> CohomologyTable:
    """CH^*_{I}(M).  ``route`` selects how the underlying local cohomology is
    computed; the Cech groups are read off from it summand by summand."""
    if route == "iterative":
        # re-derive each summand's concentration degree from the iteration
        entries = {}
        for c in M.summands:
            single = _single(M, c)
            local = local_cohomology_iterative(single, ideal)
            nz = local.nonzero_degrees()
            if not nz:
                part = {0: single}
            elif nz == [0]:
                part = {}
            elif nz == [1]:
                (m,) = set(ideal.indices) - c.support
                part = {0: localize(single, m)}
            else:
                (s,) = nz
                part = {0: single, s - 1: local[s]}
            for s, v in part.items():
                entries[s] = entries.get(s, ModuleSum.zero(M.ring)) + v
        return CohomologyTable(ideal, entries, route="iterative", kind="cech")
    if route != "closed":
        raise ValueError(f"unknown route {route!r}")
    entries = {}
    for c in M.summands:
        for s, v in _cech_ccm(c, ideal, M).items():
            entries[s] = entries.get(s, ModuleSum.zero(M.ring)) + v
    return CohomologyTable(ideal, entries, route="closed", kind="cech")


def local_cohomology(M: ModuleSum, ideal: IdealSpec,
                     route: str = "closed") -> CohomologyTable:
    if route == "iterative":
        return local_cohomology_iterative(M, ideal)
    if route == "closed":
        return local_cohomology_closed_form(M, ideal)
    raise ValueError(f"unknown route {route!r}")


def derived_L(M: ModuleSum, n: int, i: int, route: str = "closed") -> ModuleSum:
    """L_n^i M, computed as CH^i_{I_{n+1}} M."""
    if i < 0:
        raise ValueError("derived functors live in degrees >= 0")
    return cech_cohomology(M, M.ring.ideal(n), route)[i]


def derived_T(M: ModuleSum, n: int, i: int, route: str = "closed") -> ModuleSum:
    """T_n^i M, computed as H^i_{I_{n+1}} M."""
    if i < 0:
        raise ValueError("derived functors live in degrees >= 0")
    return local_cohomology(M, M.ring.ideal(n), route)[i]

