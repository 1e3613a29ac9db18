"""Cyclic chromatic modules and their finite direct sums.

A cyclic chromatic module (CCM) is

    Sigma^t (prod_{s in S} v_s^{-1}) R / (v_i^{e_i} : i in support)

with e_i a positive integer or infinity.  R/(..., v_i^inf, ...) is the colimit
of the quotients R/(..., v_i^r, ...) along multiplication by v_i.

Canonical form.  Two normalized CCMs are isomorphic iff their canonical
forms agree.  The annihilator profile recovers the support with its finite
exponents, the indices acting invertibly recover S, and the indices acting
surjectively but nilpotently-per-element recover the infinite exponents.
Once these agree, the only freedom left is the internal degree of a
generator: for i in S, multiplication by v_i is an isomorphism
Sigma^{t} M -> Sigma^{t - |v_i|} M, so t is only defined modulo the gcd g of
the positive degrees of inverted generators.  Without inversions (g = 0) the
lowest-degree element (or, for v^inf quotients, the top degree of the socle
v^{-1}) pins t.  Normalization therefore reduces t into [0, g).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Optional, Union

from .errors import TruncationExceeded
from .grading import (ALL_INTEGERS, NEGATIVE, ExponentConstraint,
                      IdealSpec, RingDescriptor, bounded, generator_degree,
                      monomials_of_degree)

INF = math.inf

Exponent = Union[int, float]


def _exp_key(e: Exponent):
    return (1, 0) if e == INF else (0, e)


@dataclass(frozen=True, order=False)
class CCM:
    """A single cyclic chromatic module (not necessarily normalized)."""

    suspension: int = 0
    exponents: tuple = ()      # sorted ((index, exponent), ...)
    inverted: tuple = ()       # sorted indices

    @classmethod
    def make(cls, suspension: int = 0, exponents=None, inverted=()) -> "CCM":
        exponents = dict(exponents or {})
        for i, e in exponents.items():
            if not (e == INF or (isinstance(e, int) and e >= 1)):
                raise ValueError(f"exponent of v_{i} must be >= 1 or inf, got {e}")
        return cls(int(suspension),
                   tuple(sorted(exponents.items())),
                   tuple(sorted(set(inverted))))

    @property
    def exponent_map(self) -> dict:
        return dict(self.exponents)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, _ in self.exponents)

    @property
    def inverted_set(self) -> frozenset:
        return frozenset(self.inverted)

    def key(self):
        return (self.suspension,
                tuple((i, _exp_key(e)) for i, e in self.exponents),
                self.inverted)

    def with_exponent(self, i: int, e: Exponent) -> "CCM":
        m = self.exponent_map
        m[i] = e
        return CCM.make(self.suspension, m, self.inverted)

    def with_inverted(self, i: int) -> "CCM":
        return CCM.make(self.suspension, self.exponents, set(self.inverted) | {i})

    def shifted(self, t: int) -> "CCM":
        return CCM(self.suspension + t, self.exponents, self.inverted)

    def __str__(self):
        return render_ccm(self)


def normalize(raw: CCM, ring: RingDescriptor) -> Optional[CCM]:
    """Canonical form of ``raw``, or None when it is the zero module."""
    for i in list(raw.support) + list(raw.inverted):
        ring.check_index(i)
    if raw.support & raw.inverted_set:
        return None
    g = reduce(math.gcd, (generator_degree(ring, i) for i in raw.inverted), 0)
    t = raw.suspension % g if g else raw.suspension
    return CCM(t, raw.exponents, raw.inverted)


@dataclass(frozen=True)
class ModuleSum:
    """A finite direct sum of normalized nonzero CCMs over one ring."""

    ring: RingDescriptor
    summands: tuple = field(default=())

    @classmethod
    def of(cls, ring: RingDescriptor, ccms: Iterable[CCM]) -> "ModuleSum":
        normed = [c for c in (normalize(c, ring) for c in ccms) if c is not None]
        normed.sort(key=CCM.key)
        return cls(ring, tuple(normed))

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "ModuleSum":
        return cls(ring, ())

    @classmethod
    def free(cls, ring: RingDescriptor, suspension: int = 0) -> "ModuleSum":
        return cls.of(ring, [CCM.make(suspension)])

    @classmethod
    def invariant_quotient(cls, ring: RingDescriptor, k: int) -> "ModuleSum":
        """R/I_k = R/(p, v_1, ..., v_{k-1})."""
        if k - 1 > ring.truncation:
            raise TruncationExceeded(f"I_{k} needs v_{k - 1}")
        return cls.of(ring, [CCM.make(0, {i: 1 for i in range(k)})])

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    def __add__(self, other: "ModuleSum") -> "ModuleSum":
        if other.ring != self.ring:
            raise ValueError("cannot add modules over different rings")
        return ModuleSum.of(self.ring, self.summands + other.summands)

    def map_summands(self, fn) -> "ModuleSum":
        out = []
        for c in self.summands:
            r = fn(c)
            if r is not None:
                out.append(r)
        return ModuleSum.of(self.ring, out)

    def __str__(self):
        return render(self)


def direct_sum(ring: RingDescriptor, parts: Iterable[ModuleSum]) -> ModuleSum:
    out = ModuleSum.zero(ring)
    for part in parts:
        out = out + part
    return out


# --- the operations ---------------------------------------------------------

def suspend(M: ModuleSum, t: int) -> ModuleSum:
    return M.map_summands(lambda c: c.shifted(t))


def localize(M: ModuleSum, j: int) -> ModuleSum:
    """M[1/v_j]."""
    M.ring.check_index(j)

    def one(c: CCM):
        if j in c.support:
            return None
        if j in c.inverted:
            return c
        return c.with_inverted(j)
    return M.map_summands(one)


def torsion_part(M: ModuleSum, j: int) -> ModuleSum:
    """H^0_{(v_j)}: the v_j-power-torsion submodule.  All or nothing per CCM."""
    M.ring.check_index(j)
    return M.map_summands(lambda c: c if j in c.support else None)


def local_cokernel(M: ModuleSum, j: int) -> ModuleSum:
    """H^1_{(v_j)} = coker(M -> M[1/v_j])."""
    M.ring.check_index(j)

    def one(c: CCM):
        if j in c.support or j in c.inverted:
            return None
        return c.with_exponent(j, INF)
    return M.map_summands(one)


def is_ideal_torsion(M: ModuleSum, ideal: IdealSpec) -> bool:
    need = set(ideal.indices)
    return all(need <= c.support for c in M.summands)


def is_chromatic_torsion(M: ModuleSum, k: int) -> bool:
    """Every summand is I_{k+1}-torsion; for comodules this is the same as
    being v_k-torsion.  k = -1 is always true."""
    need = set(range(k + 1))
    return all(need <= c.support for c in M.summands)


def modules_equal(A: ModuleSum, B: ModuleSum) -> bool:
    return A.ring == B.ring and A.summands == B.summands


# --- per-degree invariants ---------------------------------------------------

@dataclass(frozen=True)
class PerDegreeGroup:
    """Invariants of a Z_(p)-module of the form
    Z_(p)^a + (finite p-group) + (Z/p^inf)^c + Q^b."""

    free_rank: int = 0
    torsion_orders: tuple = ()
    divisible_corank: int = 0
    rational_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders",
                           tuple(sorted(o for o in self.torsion_orders if o != 1)))
        if min(self.free_rank, self.divisible_corank, self.rational_rank) < 0:
            raise ValueError("invariants must be nonnegative")

    def __add__(self, other: "PerDegreeGroup") -> "PerDegreeGroup":
        return PerDegreeGroup(self.free_rank + other.free_rank,
                              self.torsion_orders + other.torsion_orders,
                              self.divisible_corank + other.divisible_corank,
                              self.rational_rank + other.rational_rank)

    @property
    def is_zero(self) -> bool:
        return self == PerDegreeGroup()

    @property
    def rank(self) -> int:
        """dim over Q of the rationalization."""
        return self.free_rank + self.rational_rank

    def length(self, p: int) -> Optional[int]:
        """Composition length, or None if infinite."""
        if self.free_rank or self.rational_rank or self.divisible_corank:
            return None
        total = 0
        for o in self.torsion_orders:
            e = 0
            while o % p == 0:
                o //= p
                e += 1
            if o != 1:
                raise ValueError(f"order {o} is not a power of {p}")
            total += e
        return total

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank,
                "torsion_orders": list(self.torsion_orders),
                "divisible_corank": self.divisible_corank,
                "rational_rank": self.rational_rank}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"Z_(p)^{self.free_rank}" if self.free_rank > 1 else "Z_(p)")
        parts += [f"Z/{o}" for o in self.torsion_orders]
        if self.divisible_corank:
            parts.append("Z/p^inf" + (f"^{self.divisible_corank}"
                                      if self.divisible_corank > 1 else ""))
        if self.rational_rank:
            parts.append("Q" + (f"^{self.rational_rank}"
                                if self.rational_rank > 1 else ""))
        return " + ".join(parts) or "0"


def exponent_constraints(c: CCM, ring: RingDescriptor) -> ExponentConstraint:
    """Basis exponent ranges of the positive-degree generators of ``c``."""
    mapping = {}
    for i, e in c.exponents:
        if i >= 1:
            mapping[i] = NEGATIVE if e == INF else bounded(e)
    for i in c.inverted:
        if i >= 1:
            mapping[i] = ALL_INTEGERS
    return ExponentConstraint.from_mapping(ring, mapping)


def coefficient_group(c: CCM, ring: RingDescriptor) -> PerDegreeGroup:
    """The Z_(p)-module carried by each basis monomial of ``c``."""
    if 0 in c.inverted:
        return PerDegreeGroup(rational_rank=1)
    e0 = c.exponent_map.get(0)
    if e0 is None:
        return PerDegreeGroup(free_rank=1)
    if e0 == INF:
        return PerDegreeGroup(divisible_corank=1)
    return PerDegreeGroup(torsion_orders=(ring.prime ** e0,))


def basis_monomials(c: CCM, ring: RingDescriptor, d: int) -> list:
    return monomials_of_degree(ring, exponent_constraints(c, ring), d - c.suspension)


def per_degree_evaluate(M: ModuleSum, d: int) -> PerDegreeGroup:
    out = PerDegreeGroup()
    for c in M.summands:
        n = len(basis_monomials(c, M.ring, d))
        coeff = coefficient_group(c, M.ring)
        for _ in range(n):
            out = out + coeff
    return out


# --- serialization -------------------------------------------------------------

def _gen_name(i: int, style: str) -> str:
    if i == 0:
        return "p"
    return f"v_{i}" if style == "unicode" else f"v{i}"


def _exp_text(e: Exponent, style: str) -> str:
    if e == INF:
        return "^∞" if style == "unicode" else "^inf"
    if e == 1:
        return ""
    return f"^{e}"


def render_ccm(c: CCM, style: str = "ascii") -> str:
    parts = []
    if c.suspension:
        parts.append(f"Σ^{{{c.suspension}}}" if style == "unicode"
                     else f"S^{c.suspension}")
    inv = []
    for i in c.inverted:
        inv.append(f"{_gen_name(i, style)}^{{-1}}" if style == "unicode"
                   else f"{_gen_name(i, style)}^-1")
    if inv:
        parts.append(" ".join(inv))
    base = "BP_*" if style == "unicode" else "R"
    if c.exponents:
        gens = ", ".join(_gen_name(i, style) + _exp_text(e, style)
                         for i, e in c.exponents)
        base += f"/({gens})"
    parts.append(base)
    return " ".join(parts)


def render(M: ModuleSum, style: str = "ascii") -> str:
    if M.is_zero:
        return "0"
    return " + ".join(render_ccm(c, style) for c in M.summands)


def ccm_to_json(c: CCM) -> dict:
    return {"suspension": c.suspension,
            "exponents": {str(i): ("inf" if e == INF else e) for i, e in c.exponents},
            "inverted": list(c.inverted)}


def ccm_from_json(obj: dict) -> CCM:
    exps = {int(i): (INF if e == "inf" else int(e))
            for i, e in obj.get("exponents", {}).items()}
    return CCM.make(obj.get("suspension", 0), exps, obj.get("inverted", ()))


def module_to_json(M: ModuleSum) -> list:
    return [ccm_to_json(c) for c in M.summands]


def module_from_json(ring: RingDescriptor, obj: list) -> ModuleSum:
    return ModuleSum.of(ring, [ccm_from_json(o) for o in obj])


def dumps(M: ModuleSum) -> str:
    return json.dumps(module_to_json(M), sort_keys=True)
