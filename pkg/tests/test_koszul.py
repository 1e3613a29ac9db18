import json
import random

import pytest

from bplocal import CCM, INF, ModuleSum, RingDescriptor
from bplocal.cohomology import local_cohomology
from bplocal.errors import NonZeroComposite, UnsupportedModule
from bplocal.grading import ExponentConstraint, monomials_of_degree
from bplocal.koszul import (KoszulDescriptor, PerDegreeComplex, Term,
                            colim_stabilize, compare_with_symbolic,
                            dual_koszul_tensor, ext_group,
                            oracle_local_cohomology, reports_to_csv,
                            reports_to_json, snf_cohomology,
                            snf_cohomology_randomized)
from bplocal.modules import PerDegreeGroup


def free_term(n):
    return Term([((), (i,)) for i in range(n)], [None] * n)


def complex_of(p, ranks, diffs):
    return PerDegreeComplex(p, 0, [free_term(r) for r in ranks], diffs)


def test_term_ranks_match_enumeration():
    ring = RingDescriptor(2, 1)
    desc = KoszulDescriptor(ring.ideal(1), 1)
    for d in range(-4, 7, 2):
        C = dual_koszul_tensor(desc, ModuleSum.free(ring), d)
        free = ExponentConstraint.free(ring)
        count = lambda e: len(monomials_of_degree(ring, free, e))
        expect = [count(d), count(d) + count(d + 2), count(d + 2)]
        assert [t.rank for t in C.terms] == expect


def test_zero_module_complex():
    ring = RingDescriptor(2, 1)
    C = dual_koszul_tensor(KoszulDescriptor(ring.ideal(1)), ModuleSum.zero(ring), 0)
    assert all(t.rank == 0 for t in C.terms)


def test_snf_cohomology_small_complexes():
    for r in (1, 3):
        C = complex_of(2, [1, 1], [[[2 ** r]]])
        H = snf_cohomology(C)
        assert H[0].is_zero and H[1] == PerDegreeGroup(torsion_orders=(2 ** r,))
    C = complex_of(3, [2, 2], [[[1, 0], [0, 1]]])
    assert all(h.is_zero for h in snf_cohomology(C))
    C = complex_of(3, [2, 1], [[[0, 0]]])
    assert [h.free_rank for h in snf_cohomology(C)] == [2, 1]


def test_nonzero_composite_detected():
    C = complex_of(2, [1, 1, 1], [[[1]], [[1]]])
    with pytest.raises(NonZeroComposite):
        C.check()


def test_ext_examples():
    ring = RingDescriptor(2, 1)
    R = ModuleSum.free(ring)
    for d in range(-8, 9, 2):
        assert ext_group(0, KoszulDescriptor(ring.ideal(1)), R, d).is_zero
    # Ext^2(R/(2^r, v1^r), R)_d = (R/(2^r, v1^r))_{d+2r}
    for r in (1, 2, 3):
        desc = KoszulDescriptor(ring.ideal(1), r)
        for d in range(-2 * r - 4, 6):
            g = ext_group(2, desc, R, d)
            if d % 2 == 0 and -2 * r <= d <= -2:
                assert g == PerDegreeGroup(torsion_orders=(2 ** r,))
            else:
                assert g.is_zero
    ring0 = RingDescriptor(2, 0)
    M = ModuleSum.invariant_quotient(ring0, 1)
    g = ext_group(0, KoszulDescriptor(ring0.ideal(0)), M, 0)
    assert g == PerDegreeGroup(torsion_orders=(2,))
    assert ext_group(3, KoszulDescriptor(ring.ideal(1)), R, 0).is_zero


def test_colim_examples():
    ring = RingDescriptor(2, 1)
    I = ring.ideal(1)
    R = ModuleSum.free(ring)
    assert colim_stabilize(2, I, R, -2, r_max=6).group == PerDegreeGroup(divisible_corank=1)
    for d in (-4, 0, 4):
        assert colim_stabilize(0, I, R, d).group.is_zero
    assert colim_stabilize(1, I, ModuleSum.zero(ring), 0).group.is_zero


def test_euler_characteristic_and_pivots():
    rng = random.Random(9)
    ring = RingDescriptor(3, 2)
    modules = [CCM.make(0), CCM.make(4, {1: 2}), CCM.make(0, {2: 1}),
               CCM.make(0, {0: 2, 2: 3}), CCM.make(-4, {1: 1, 2: 2})]
    for c in modules:
        for n in (0, 1, 2):
            desc = KoszulDescriptor(ring.ideal(n), rng.randint(1, 3))
            for d in range(-20, 21, 4):
                C = dual_koszul_tensor(desc, c, d)
                H = snf_cohomology(C)
                free_terms = sum((-1) ** k * t.rank for k, t in enumerate(C.terms)
                                 if all(e is None for e in t.relations))
                assert free_terms == sum((-1) ** k * h.free_rank
                                         for k, h in enumerate(H))
                for seed in range(2):
                    assert snf_cohomology_randomized(C, seed) == H


def test_admissibility():
    ring = RingDescriptor(2, 2)
    desc = KoszulDescriptor(ring.ideal(1))
    M = ModuleSum.of(ring, [CCM.make(0, {0: INF})])
    with pytest.raises(UnsupportedModule):
        dual_koszul_tensor(desc, M, 0)
    with pytest.raises(UnsupportedModule):
        colim_stabilize(1, ring.ideal(1), M, 0)
    with pytest.raises(UnsupportedModule):
        dual_koszul_tensor(desc, ModuleSum.of(ring, [CCM.make(0, {0: 1}),
                                                      CCM.make(0)]), 0)


def test_finitely_generated_with_larger_truncation():
    ring = RingDescriptor(2, 2)
    M = ModuleSum.of(ring, [CCM.make(0, {0: 2, 2: 1})])
    table = local_cohomology(M, ring.ideal(1))
    assert compare_with_symbolic(table, M, range(-8, 9, 2)).ok


def test_compare_report_and_outputs():
    ring = RingDescriptor(2, 1)
    R = ModuleSum.free(ring)
    table = local_cohomology(R, ring.ideal(1))
    rep = compare_with_symbolic(table, R, range(-6, 1))
    assert rep.ok and len(rep.rows) == 3 * 7
    zero = ModuleSum.zero(ring)
    assert compare_with_symbolic(local_cohomology(zero, ring.ideal(1)), zero,
                                 range(-2, 1)).ok
    # perturbed table: move H^2 into H^1
    bad = type(table)(table.ideal, {1: table[2]}, kind="local")
    rep = compare_with_symbolic(bad, R, range(-4, 1))
    assert {(r.s, r.degree) for r in rep.mismatches} == {
        (1, -2), (1, -4), (2, -2), (2, -4)}
    assert json.loads(rep.to_json())[0]["match"] in (True, False)
    assert rep.to_csv().splitlines()[0].startswith("k,d,")


def test_report_serialization():
    ring = RingDescriptor(2, 1)
    reps = [colim_stabilize(k, ring.ideal(1), ModuleSum.free(ring), -2)
            for k in range(3)]
    rows = reports_to_csv(reps).splitlines()
    assert rows[0] == ("k,d,r,free_rank,torsion_orders,divisible_corank,"
                       "rational_rank,stabilized")
    assert rows[3].startswith("2,-2,") and rows[3].endswith(",1,0,True")
    assert len(json.loads(reports_to_json(reps))) == 3


def test_oracle_on_sums():
    ring = RingDescriptor(3, 1)
    M = ModuleSum.of(ring, [CCM.make(0, {0: 2}), CCM.make(4, {0: INF}, [1])])
    table = local_cohomology(M, ring.ideal(1))
    assert compare_with_symbolic(table, M, range(-8, 9)).ok
    assert oracle_local_cohomology(M, ring.ideal(1), 0, 0) == \
        PerDegreeGroup(torsion_orders=())
