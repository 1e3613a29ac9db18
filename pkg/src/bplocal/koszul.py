"""Brute-force local cohomology through Koszul complexes.

H^k_I(M) = colim_r Ext^k_R(R/I_r, M) with I_r = (v_0^r, ..., v_n^r).  Each
Ext group is the cohomology of Hom(K_r, M) for the Koszul resolution K_r of
R/I_r; in internal degree d its k-th term is the sum over k-subsets S of
{0..n} of M in degree d + r |v_S|, with differential the signed sum of
multiplications by v_j^r.  The map K_{r+1} -> K_r lifting R/I_{r+1} -> R/I_r
sends e_S to v_S e_S, so the transition Ext(R/I_r, M) -> Ext(R/I_{r+1}, M) is
multiplication by v_S on the S-component.

Modules that are not finitely generated are written as colimits of finitely
generated stages: v_i^{-1} and v_i^inf become Sigma^{-s|v_i|} with a v_i^s
relation (none for an inverted v_i) along multiplication by v_i, and p^inf,
p^{-1} likewise along multiplication by p.  The double colimit over (r, s)
follows the schedule in ``_schedule``.  Cohomology is computed with the Z_(p) Smith form in
``padic``; nothing here calls the symbolic engine.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .errors import (NonFiniteDegreewise, NoStabilization, NonZeroComposite,
                     UnsupportedModule)
from .grading import (ExponentConstraint, IdealSpec, RingDescriptor, bounded,
                      generator_degree, monomials_of_degree)
from .modules import CCM, INF, ModuleSum, PerDegreeGroup, per_degree_evaluate
from .padic import (kernel_basis, matmul, matvec, quotient_invariants,
                    valuation)


@dataclass(frozen=True)
class KoszulDescriptor:
    ideal: IdealSpec
    power: int = 1

    def __post_init__(self):
        if self.power < 1:
            raise ValueError("Koszul power must be >= 1")


# --- finitely generated stages ------------------------------------------------

def is_finitely_generated(c: CCM) -> bool:
    return not c.inverted and all(e != INF for _, e in c.exponents)


def _growing(c: CCM) -> tuple:
    """Indices along which c is a colimit (infinite exponents or inverted)."""
    return tuple(sorted({i for i, e in c.exponents if e == INF} | set(c.inverted)))


@dataclass(frozen=True)
class _Stage:
    """Sigma^suspension R/(v_i^bounds[i]) -- a finitely generated module."""

    suspension: int
    bounds: tuple           # ((index, exponent), ...)

    @property
    def bound_map(self) -> dict:
        return dict(self.bounds)


def finite_stage(c: CCM, ring: RingDescriptor, s: int) -> _Stage:
    if s < 1:
        raise ValueError("stages start at 1")
    bounds = {i: (s if e == INF else e) for i, e in c.exponents}
    shift = sum(generator_degree(ring, i) for i in _growing(c))
    return _Stage(c.suspension - s * shift, tuple(sorted(bounds.items())))


def _stage_basis(stage: _Stage, ring: RingDescriptor, degree: int) -> list:
    mapping = {i: bounded(e) for i, e in stage.bounds if i >= 1}
    cons = ExponentConstraint.from_mapping(ring, mapping)
    return monomials_of_degree(ring, cons, degree - stage.suspension)


# --- complexes -------------------------------------------------------------------

@dataclass
class Term:
    labels: list                  # [(S, monomial), ...]
    relations: list               # per generator: p-exponent or None (free)

    @property
    def rank(self) -> int:
        return len(self.labels)


@dataclass
class PerDegreeComplex:
    """Cochain complex of finitely presented Z_(p)-modules in one degree.

    differentials[k] maps terms[k] -> terms[k+1]; a matrix has one row per
    target generator and one column per source generator."""

    prime: int
    degree: int
    terms: list
    differentials: list
    meta: dict = field(default_factory=dict)

    def check(self) -> None:
        p = self.prime
        for k in range(len(self.differentials) - 1):
            a, b = self.differentials[k], self.differentials[k + 1]
            nsrc = self.terms[k].rank
            if not b or not a or nsrc == 0:
                continue
            prod = matmul(b, a)
            rel = self.terms[k + 2].relations
            for i, row in enumerate(prod):
                for x in row:
                    if x == 0:
                        continue
                    if rel[i] is None or valuation(x, p) < rel[i]:
                        raise NonZeroComposite(
                            f"d^{k + 1} d^{k} != 0 in degree {self.degree}")


def _koszul_sign(S: tuple, j: int) -> int:
    return -1 if sum(1 for i in S if i < j) % 2 else 1


def _mult_monomial(mono: tuple, bounds: dict, add: dict):
    """mono * prod v_i^add[i] (i >= 1) in a stage; None if it vanishes."""
    out = list(mono)
    for i, a in add.items():
        if i == 0 or a == 0:
            continue
        out[i - 1] += a
        if i in bounds and out[i - 1] >= bounds[i]:
            return None
    return tuple(out)


def _build(c: CCM, ring: RingDescriptor, ideal: IdealSpec, r: int, s: int,
           d: int) -> PerDegreeComplex:
    stage = finite_stage(c, ring, s)
    bounds = stage.bound_map
    p0 = bounds.get(0)
    idx = list(ideal.indices)
    degs = {j: generator_degree(ring, j) for j in idx}
    terms = []
    lookup = []
    for k in range(len(idx) + 1):
        labels = []
        for S in combinations(idx, k):
            shift = r * sum(degs[j] for j in S)
            for mono in _stage_basis(stage, ring, d + shift):
                labels.append((S, mono))
        terms.append(Term(labels, [p0] * len(labels)))
        lookup.append({lab: n for n, lab in enumerate(labels)})
    diffs = []
    for k in range(len(idx)):
        src, tgt = terms[k], terms[k + 1]
        M = [[0] * src.rank for _ in range(tgt.rank)]
        for col, (S, mono) in enumerate(src.labels):
            for j in idx:
                if j in S:
                    continue
                T = tuple(sorted(S + (j,)))
                new = _mult_monomial(mono, bounds, {j: r})
                if new is None:
                    continue
                scalar = _koszul_sign(S, j) * (ring.prime ** r if j == 0 else 1)
                M[lookup[k + 1][(T, new)]][col] += scalar
        diffs.append(M)
    cx = PerDegreeComplex(ring.prime, d, terms, diffs,
                          meta={"ccm": c, "r": r, "s": s, "lookup": lookup,
                                "bounds": bounds})
    cx.check()
    return cx


def dual_koszul_tensor(desc: KoszulDescriptor, M, d: int,
                       stage: Optional[int] = None) -> PerDegreeComplex:
    """Hom(K_r, M) in internal degree d.

    M must be finitely generated; otherwise pass ``stage`` to use its
    ``stage``-th finitely generated approximation."""
    c = _as_ccm(M, desc.ideal.ring)
    if c is None:
        return _zero_complex(desc, d)
    if not is_finitely_generated(c) and stage is None:
        raise UnsupportedModule(
            f"{c} is not finitely generated; pass a stage index")
    return _build_cached(c, desc.ideal, desc.power, stage or 1, d)


@lru_cache(maxsize=4096)
def _build_cached(c: CCM, ideal: IdealSpec, r: int, s: int, d: int):
    return _build(c, ideal.ring, ideal, r, s, d)


def _zero_complex(desc: KoszulDescriptor, d: int) -> PerDegreeComplex:
    n = desc.ideal.top + 1
    terms = [Term([], []) for _ in range(n + 1)]
    return PerDegreeComplex(desc.ideal.ring.prime, d, terms, [[] for _ in range(n)])


def _as_ccm(M, ring) -> Optional[CCM]:
    if isinstance(M, CCM):
        return M
    if isinstance(M, ModuleSum):
        if M.is_zero:
            return None
        if len(M) != 1:
            raise UnsupportedModule("pass one cyclic summand at a time")
        return M.summands[0]
    raise TypeError(f"not a module: {M!r}")


# --- cohomology -------------------------------------------------------------------

def _relation_vectors(term: Term, p: int) -> list:
    out = []
    for i, e in enumerate(term.relations):
        if e is not None:
            v = [0] * term.rank
            v[i] = p ** e
            out.append(v)
    return out


def _cached(C: PerDegreeComplex, key, fn):
    store = C.meta.setdefault("cache", {})
    if key not in store:
        store[key] = fn()
    return store[key]


def cocycles(C: PerDegreeComplex, k: int) -> list:
    """Generators of {x in F^k : d x = 0 in C^{k+1}}."""
    return _cached(C, ("Z", k), lambda: _cocycles(C, k))


def coboundaries(C: PerDegreeComplex, k: int) -> list:
    """Generators of im(d^{k-1}) plus the relations of C^k."""
    return _cached(C, ("B", k), lambda: _coboundaries(C, k))


def _cocycles(C: PerDegreeComplex, k: int) -> list:
    p = C.prime
    src = C.terms[k]
    if src.rank == 0:
        return []
    if k >= len(C.differentials) or C.terms[k + 1].rank == 0:
        return [[int(i == j) for i in range(src.rank)]
                for j in range(src.rank)]
    tgt = C.terms[k + 1]
    rels = _relation_vectors(tgt, p)
    A = [list(C.differentials[k][i]) + [-v[i] for v in rels]
         for i in range(tgt.rank)]
    ker = kernel_basis(A, p, src.rank + len(rels))
    return [v[:src.rank] for v in ker]


def _coboundaries(C: PerDegreeComplex, k: int) -> list:
    p = C.prime
    out = _relation_vectors(C.terms[k], p)
    if k >= 1 and C.terms[k - 1].rank and C.terms[k].rank:
        D = C.differentials[k - 1]
        out += [[D[i][j] for i in range(C.terms[k].rank)]
                for j in range(C.terms[k - 1].rank)]
    return out


def _group(p: int, free: int, torsion_vals) -> PerDegreeGroup:
    return PerDegreeGroup(free_rank=free,
                          torsion_orders=tuple(p ** a for a in torsion_vals))


def snf_cohomology(C: PerDegreeComplex) -> list:
    """Invariants of H^k(C) for every k."""
    C.check()
    out = []
    for k, term in enumerate(C.terms):
        if term.rank == 0:
            out.append(PerDegreeGroup())
            continue
        free, tors = quotient_invariants(coboundaries(C, k), cocycles(C, k),
                                         term.rank, C.prime)
        out.append(_group(C.prime, free, tors))
    return out


def snf_cohomology_randomized(C: PerDegreeComplex, seed: int) -> list:
    """Same as snf_cohomology but with randomized pivot tie-breaking; used to
    check that the answer does not depend on pivot order."""
    rng = random.Random(seed)
    out = []
    for k, term in enumerate(C.terms):
        if term.rank == 0:
            out.append(PerDegreeGroup())
            continue
        free, tors = quotient_invariants(_coboundaries(C, k), _cocycles(C, k),
                                         term.rank, C.prime, rng=rng)
        out.append(_group(C.prime, free, tors))
    return out


# --- transitions --------------------------------------------------------------------

def _transition(src: PerDegreeComplex, tgt: PerDegreeComplex, k: int) -> list:
    """Matrix of the chain map C_(r,s)^k -> C_(r',s')^k."""
    dr = tgt.meta["r"] - src.meta["r"]
    ds = tgt.meta["s"] - src.meta["s"]
    c = src.meta["ccm"]
    grow = set(_growing(c))
    bounds = tgt.meta["bounds"]
    lookup = tgt.meta["lookup"][k]
    p = src.prime
    rows = tgt.terms[k].rank
    cols = src.terms[k].rank
    M = [[0] * cols for _ in range(rows)]
    for col, (S, mono) in enumerate(src.terms[k].labels):
        add = {}
        for j in S:
            add[j] = add.get(j, 0) + dr
        for j in grow:
            add[j] = add.get(j, 0) + ds
        new = _mult_monomial(mono, bounds, add)
        if new is None:
            continue
        M[lookup[(S, new)]][col] += p ** add.get(0, 0)
    return M


def _image_invariants(src: PerDegreeComplex, tgt: PerDegreeComplex, k: int):
    """Invariants of the image of H^k(src) in H^k(tgt)."""
    if tgt.terms[k].rank == 0 or src.terms[k].rank == 0:
        return (0, ())
    T = _transition(src, tgt, k)
    images = [matvec(T, z) for z in cocycles(src, k)]
    free, tors = quotient_invariants(coboundaries(tgt, k), images,
                                     tgt.terms[k].rank, src.prime)
    return (free, tuple(sorted(tors)))


# --- Ext and colimits ---------------------------------------------------------------

def _check_admissible(ideal: IdealSpec, c: CCM) -> None:
    if ideal.ring.truncation == ideal.top or is_finitely_generated(c):
        return
    raise UnsupportedModule(
        f"{c} with I_{ideal.label} over truncation {ideal.ring.truncation}: "
        "need truncation = n or a finitely generated module")


@dataclass
class StabilizationReport:
    k: int
    degree: int
    group: PerDegreeGroup
    stabilized: bool
    stable_from: Optional[int]
    stages: list            # examined r (or s) values
    images: list            # image invariants per examined stage

    def row(self) -> dict:
        g = self.group
        return {"k": self.k, "d": self.degree, "r": self.stable_from,
                "free_rank": g.free_rank,
                "torsion_orders": " ".join(str(o) for o in g.torsion_orders),
                "divisible_corank": g.divisible_corank,
                "rational_rank": g.rational_rank,
                "stabilized": self.stabilized}


def _step(a, b):
    """Per-position exponent change between two sorted torsion profiles."""
    if a[0] != b[0] or len(a[1]) != len(b[1]):
        return None
    delta = tuple(y - x for x, y in zip(a[1], b[1]))
    if any(x < 0 for x in delta):
        return None
    return delta


def _classify_tower(p: int, stages: list, images: list, settled: list):
    """Pick the longest run of settled stages following one growth pattern."""
    best = None
    n = len(images)
    i = 0
    while i < n:
        if not settled[i]:
            i += 1
            continue
        j = i
        pattern = None
        while j + 1 < n and settled[j + 1]:
            step = _step(images[j], images[j + 1])
            if step is None or (pattern is not None and step != pattern):
                break
            pattern = step
            j += 1
        length = j - i + 1
        if best is None or length >= best[1] - best[0] + 1:
            best = (i, j, pattern)
        i = j if j > i else i + 1
    if best is None:
        return None
    i, j, pattern = best
    length = j - i + 1
    growing = sum(1 for x in (pattern or ()) if x)
    if length < 2 or (growing and length < 4):
        return None
    free, vals = images[j]
    keep = [v for v, g in zip(vals, pattern or (0,) * len(vals)) if not g]
    group = PerDegreeGroup(free_rank=free,
                           torsion_orders=tuple(p ** v for v in keep),
                           divisible_corank=growing)
    return group, stages[i]


def _tower(cxs: list, k: int, p: int):
    """Colimit invariants of H^k along a list of complexes with chain maps."""
    L = len(cxs)
    if L < 4:
        raise NoStabilization("need at least four stages")
    window = range(L - 2)
    images, settled = [], []
    for a in window:
        last = _image_invariants(cxs[a], cxs[L - 1], k)
        prev = _image_invariants(cxs[a], cxs[L - 2], k)
        images.append(last)
        settled.append(last == prev)
    return images, settled


def _reach(ring, indices) -> int:
    return sum(generator_degree(ring, j) for j in indices)


def _start(c: CCM, reach: int, d: int, extra: int = 0) -> int:
    """First power whose shifts reach from degree d up to c's generators
    (plus ``extra``, the span of its finite directions outside the ideal)."""
    top = c.suspension + extra
    if reach == 0 or d >= top:
        return 1
    return 1 + -((d - top) // reach)


def _outside_span(c: CCM, ideal: IdealSpec) -> int:
    ring = ideal.ring
    return sum((e - 1) * generator_degree(ring, i) for i, e in c.exponents
               if i not in ideal.indices and e != INF)


def _schedule(c: CCM, ideal: IdealSpec, d: int, count: int) -> list:
    """(r, s) pairs for the double colimit over Koszul powers r and module
    stages s.  Degree d must be reachable: r starts where the ideal's
    Koszul shifts reach it, s where the module's own v-shifts do.  When p
    itself is built as a colimit, one index advances faster than the other
    so that classes that eventually die do so within the window: for p^inf
    the orders are bounded by p^s, so r runs ahead; for p^{-1} they are
    bounded by p^r, so s runs ahead."""
    ring = ideal.ring
    grow = _growing(c)
    r0 = _start(c, _reach(ring, ideal.indices), d, _outside_span(c, ideal))
    s0 = _start(c, _reach(ring, grow), d)
    r_step, s_step = 1, 1
    if 0 in c.inverted:
        s_step = 4
    elif 0 in grow:
        r_step = 2
    return [(r0 + r_step * a, s0 + s_step * a) for a in range(count)]


def ext_group(k: int, desc: KoszulDescriptor, M, d: int,
              s_max: Optional[int] = None) -> PerDegreeGroup:
    """Ext^k_R(R/I_r, M) in internal degree d."""
    ideal = desc.ideal
    c = _as_ccm(M, ideal.ring)
    if c is None or k > ideal.top + 1:
        return PerDegreeGroup()
    _check_admissible(ideal, c)
    if is_finitely_generated(c):
        return snf_cohomology(_build_cached(c, ideal, desc.power, 1, d))[k]
    # colimit over the finitely generated stages of M; the result is
    # killed by p^r so it settles once the stages pass r.
    start = _start(c, _reach(ideal.ring, _growing(c)), d)
    count = s_max or (desc.power + 6)
    cxs = [_build_cached(c, ideal, desc.power, s, d)
           for s in range(start, start + count)]
    images, settled = _tower(cxs, k, ideal.ring.prime)
    got = _classify_tower(ideal.ring.prime, list(range(start, start + count)),
                          images, settled)
    if got is None:
        raise NoStabilization(f"Ext^{k} in degree {d} did not settle")
    return got[0]


def colim_stabilize(k: int, ideal: IdealSpec, M, d: int, r_max: int = 8,
                    r_start: Optional[int] = None) -> StabilizationReport:
    """colim_r Ext^k(R/I_r, M) in degree d from r_max stages of the tower.

    The Koszul powers begin at ``r_start`` (default: the first r for which
    degree d can be reached); any tail of the tower is cofinal, so this does
    not change the colimit.  Non-finitely-generated M is replaced by its
    finitely generated stages along the way (see ``_schedule``)."""
    c = _as_ccm(M, ideal.ring)
    p = ideal.ring.prime
    if c is None or k > ideal.top + 1:
        return StabilizationReport(k, d, PerDegreeGroup(), True, r_start or 1,
                                   [], [])
    _check_admissible(ideal, c)
    plan = _schedule(c, ideal, d, r_max)
    if r_start is not None:
        shift = r_start - plan[0][0]
        plan = [(r + shift, s) for r, s in plan]
    stages = [r for r, _ in plan]
    cxs = [_build_cached(c, ideal, r, s, d) for r, s in plan]
    images, settled = _tower(cxs, k, p)
    got = _classify_tower(p, stages, images, settled)
    if got is None:
        raise NoStabilization(
            f"H^{k} of {c} in degree {d}: no stable pattern in r = "
            f"{stages[0]}..{stages[-1]} (images {images})")
    group, stable_from = got
    return StabilizationReport(k, d, group, True, stable_from, stages, images)


def oracle_local_cohomology(M: ModuleSum, ideal: IdealSpec, k: int, d: int,
                            r_max: int = 8) -> PerDegreeGroup:
    """Sum of colim_stabilize over the summands of M."""
    out = PerDegreeGroup()
    for c in M.summands:
        out = out + colim_stabilize(k, ideal, c, d, r_max).group
    return out


# --- comparison harness -----------------------------------------------------------

@dataclass
class ComparisonRow:
    s: int
    degree: int
    symbolic: Optional[PerDegreeGroup]
    oracle: Optional[PerDegreeGroup]
    note: str = ""

    @property
    def match(self) -> bool:
        return self.symbolic == self.oracle


@dataclass
class ComparisonReport:
    rows: list

    @property
    def mismatches(self) -> list:
        return [r for r in self.rows if not r.match and not r.note]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> str:
        return json.dumps([{
            "s": r.s, "d": r.degree,
            "symbolic": r.symbolic.to_dict() if r.symbolic else None,
            "oracle": r.oracle.to_dict() if r.oracle else None,
            "match": r.match, "note": r.note} for r in self.rows],
            sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "d", "free_rank", "torsion_orders", "divisible_corank",
                    "rational_rank", "match"])
        for r in self.rows:
            g = r.oracle or PerDegreeGroup()
            w.writerow([r.s, r.degree, g.free_rank,
                        " ".join(map(str, g.torsion_orders)),
                        g.divisible_corank, g.rational_rank,
                        r.note or r.match])
        return buf.getvalue()

    def render(self) -> str:
        lines = []
        for r in self.rows:
            status = r.note or ("ok" if r.match else "MISMATCH")
            lines.append(f"H^{r.s} degree {r.degree}: symbolic {r.symbolic}, "
                         f"oracle {r.oracle} [{status}]")
        return "\n".join(lines)


def compare_with_symbolic(table, M: ModuleSum, degrees, r_max: int = 8
                          ) -> ComparisonReport:
    """Check a local cohomology table degree by degree against the oracle."""
    if table.kind != "local":
        raise ValueError("the oracle computes local cohomology; "
                         "pass a local cohomology table")
    rows = []
    for s in range(table.max_degree + 1):
        for d in degrees:
            try:
                sym = per_degree_evaluate(table[s], d)
            except NonFiniteDegreewise:
                rows.append(ComparisonRow(s, d, None, None, "non-finite"))
                continue
            orc = oracle_local_cohomology(M, table.ideal, s, d, r_max)
            rows.append(ComparisonRow(s, d, sym, orc))
    return ComparisonReport(rows)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["k", "d", "r", "free_rank",
                                        "torsion_orders", "divisible_corank",
                                        "rational_rank", "stabilized"],
                       lineterminator="\n")
    w.writeheader()
    for rep in reports:
        w.writerow(rep.row())
    return buf.getvalue()


def reports_to_json(reports) -> str:
    return json.dumps([rep.row() for rep in reports], sort_keys=True)
