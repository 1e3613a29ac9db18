"""Chromatic resolution of R/I_k and a second route to L_n^i.

The resolution is R/I_k -> J_0 -> J_1 -> ... with

    N_t = R/(p, ..., v_{k-1}, v_k^inf, ..., v_{t+k-1}^inf),
    J_t = v_{t+k}^{-1} N_t,

and J_t -> J_{t+1} the composite J_t -> N_{t+1} -> J_{t+1} of the quotient
by N_t and the localization at v_{t+k+1}.  L_n fixes J_t when t + k <= n and
kills it otherwise, so L_n^i(R/I_k) is the cohomology of the truncated
complex.  That cohomology is read off with rules for the two kinds of
canonical map; exactness in the middle is the resolution property and is
not recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cohomology import CohomologyTable
from .errors import TruncationExceeded
from .grading import RingDescriptor
from .modules import (CCM, INF, ModuleSum, local_cokernel, localize, render,
                      torsion_part)

MAP_KINDS = ("localize", "quotient-to-infinity", "composite")


@dataclass(frozen=True)
class CanonicalMap:
    """A canonical map between ModuleSums.

    localize(j):              X -> v_j^{-1} X
    quotient-to-infinity(j):  v_j^{-1} X -> X/(v_j^inf), with ``base`` X
    composite:                ``parts`` applied left to right
    """

    kind: str
    source: ModuleSum
    target: ModuleSum
    index: Optional[int] = None
    base: Optional[ModuleSum] = None
    parts: tuple = ()

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.kind == "localize":
            if localize(self.source, self.index) != self.target:
                raise ValueError("target is not the localization of the source")
        elif self.kind == "quotient-to-infinity":
            if self.base is None:
                raise ValueError("quotient map needs its base module")
            if (localize(self.base, self.index) != self.source
                    or local_cokernel(self.base, self.index) != self.target):
                raise ValueError("source/target do not match the base module")
        else:
            for f, g in zip(self.parts, self.parts[1:]):
                if f.target != g.source:
                    raise ValueError("composite parts do not compose")

    @classmethod
    def localization(cls, X: ModuleSum, j: int) -> "CanonicalMap":
        return cls("localize", X, localize(X, j), index=j)

    @classmethod
    def quotient(cls, X: ModuleSum, j: int) -> "CanonicalMap":
        return cls("quotient-to-infinity", localize(X, j), local_cokernel(X, j),
                   index=j, base=X)

    @classmethod
    def compose(cls, *maps: "CanonicalMap") -> "CanonicalMap":
        """Composite of ``maps`` (first applied first), flattened."""
        flat = []
        for f in maps:
            flat.extend(f.parts if f.kind == "composite" else (f,))
        if len(flat) == 1:
            return flat[0]
        return cls("composite", flat[0].source, flat[-1].target,
                   parts=tuple(flat))

    def kernel(self) -> ModuleSum:
        """Kernel, as a module; composites need every later part injective."""
        if self.kind == "localize":
            return torsion_part(self.source, self.index)
        if self.kind == "quotient-to-infinity":
            return self.base
        first, rest = self.parts[0], self.parts[1:]
        for g in rest:
            if not g.kernel().is_zero:
                raise ValueError("kernel of this composite is not a CCM rule case")
        return first.kernel()

    def cokernel(self) -> ModuleSum:
        if self.kind == "localize":
            return local_cokernel(self.source, self.index)
        if self.kind == "quotient-to-infinity":
            return ModuleSum.zero(self.source.ring)
        last = self.parts[-1]
        for f in self.parts[:-1]:
            if not f.cokernel().is_zero:
                raise ValueError("cokernel of this composite is not a CCM rule case")
        return last.cokernel()

    def render(self, style: str = "ascii") -> str:
        if self.kind == "composite":
            return " ; ".join(f.render(style) for f in self.parts)
        return f"{self.kind}({self.index})"


def _N(ring: RingDescriptor, k: int, t: int) -> ModuleSum:
    exps = {i: 1 for i in range(k)}
    exps.update({i: INF for i in range(k, t + k)})
    return ModuleSum.of(ring, [CCM.make(0, exps)])


@dataclass(frozen=True)
class ChromaticResolution:
    ring: RingDescriptor
    k: int
    length: int
    terms: tuple            # J_0, ..., J_length
    torsion: tuple          # N_0, ..., N_{length+1}
    maps: tuple             # J_t -> J_{t+1}
    augmentation: CanonicalMap = field(default=None)

    def render(self, style: str = "unicode") -> str:
        arrow = " → " if style == "unicode" else " -> "
        mods = [render(self.torsion[0], style)] + [render(J, style)
                                                   for J in self.terms]
        return "0" + arrow + arrow.join(mods)


def build_chromatic_resolution(ring: RingDescriptor, k: int,
                               length: int) -> ChromaticResolution:
    if k < 0 or length < 0:
        raise ValueError("k and length must be nonnegative")
    if k + length > ring.truncation:
        raise TruncationExceeded(
            f"J_{length} needs v_{k + length} but truncation is {ring.truncation}")
    Ns = [_N(ring, k, t) for t in range(length + 1)]
    Js = [localize(Ns[t], t + k) for t in range(length + 1)]
    Ns.append(local_cokernel(Ns[length], length + k))
    maps = []
    for t in range(length):
        q = CanonicalMap.quotient(Ns[t], t + k)
        loc = CanonicalMap.localization(Ns[t + 1], t + k + 1)
        maps.append(CanonicalMap.compose(q, loc))
    aug = CanonicalMap.localization(Ns[0], k)
    return ChromaticResolution(ring, k, length, tuple(Js), tuple(Ns),
                               tuple(maps), aug)


@dataclass(frozen=True)
class TruncatedComplex:
    """L_n applied termwise: ``alive[t]`` says whether J_t survives."""

    resolution: ChromaticResolution
    n: int
    alive: tuple

    @property
    def terms(self) -> tuple:
        zero = ModuleSum.zero(self.resolution.ring)
        return tuple(J if a else zero
                     for J, a in zip(self.resolution.terms, self.alive))


def apply_Ln(res: ChromaticResolution, n: int) -> TruncatedComplex:
    """J_t is v_{t+k}-local: L_n keeps it iff t + k <= n."""
    if n < 0 or n > res.ring.truncation:
        raise TruncationExceeded(f"L_{n} outside truncation {res.ring.truncation}")
    alive = tuple(t + res.k <= n for t in range(res.length + 1))
    return TruncatedComplex(res, n, alive)


def truncated_cohomology(cx: TruncatedComplex) -> dict:
    """H^t of the truncated complex, by the canonical-map rules.

    With d_t nonzero, ker d_t = N_t (the quotient kills exactly N_t and the
    localization after it is injective); with J_{t+1} gone, ker d_t = J_t.
    The image of d_{t-1} is N_t, the target of a surjection followed by the
    localization, whose cokernel is N_{t+1}."""
    res = cx.resolution
    out = {}
    zero = ModuleSum.zero(res.ring)
    for t in range(res.length + 1):
        if not cx.alive[t]:
            continue
        outgoing = t < res.length and cx.alive[t + 1]
        incoming = t > 0 and cx.alive[t - 1]
        if outgoing and incoming:
            out[t] = zero                                  # exactness
        elif outgoing:
            out[t] = res.maps[t].kernel()                  # N_0
        elif incoming:
            last = res.maps[t - 1].parts[-1]
            out[t] = last.cokernel()                       # N_{t+1}
        else:
            out[t] = res.terms[t]
    return out


def chromatic_route_derived_L(ring: RingDescriptor, k: int,
                              n: int) -> CohomologyTable:
    """L_n^*(R/I_k) from the chromatic resolution."""
    ideal = ring.ideal(n)
    if k > ring.truncation:
        raise TruncationExceeded(f"R/I_{k} needs v_{k - 1}")
    if k > n:
        return CohomologyTable(ideal, {}, route="chromatic", kind="cech")
    res = build_chromatic_resolution(ring, k, ring.truncation - k)
    table = truncated_cohomology(apply_Ln(res, n))
    return CohomologyTable(ideal, table, route="chromatic", kind="cech")
