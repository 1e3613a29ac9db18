import random

import pytest

from conftest import random_ccm, random_sum

from bplocal import CCM, INF, ModuleSum, RingDescriptor
from bplocal.errors import NonFiniteDegreewise
from bplocal.modules import (PerDegreeGroup, ccm_from_json, ccm_to_json,
                             dumps, is_ideal_torsion, local_cokernel, localize,
                             module_from_json, module_to_json, modules_equal,
                             normalize, per_degree_evaluate, render,
                             suspend, torsion_part)


def ms(ring, *ccms):
    return ModuleSum.of(ring, ccms)


def test_normalize(R2):
    assert normalize(CCM.make(0, {1: 1}, [1]), R2) is None
    c = CCM.make(0, {0: INF}, [1])
    assert normalize(c, R2) == c
    assert normalize(CCM.make(), R2) == CCM.make()


def test_suspension_reduced_modulo_inverted_degrees(R2):
    # v1 is a unit of degree 2 in v1^-1 R/(p)
    a = ms(R2, CCM.make(4, {0: 1}, [1]))
    b = ms(R2, CCM.make(0, {0: 1}, [1]))
    assert a == b
    assert ms(R2, CCM.make(2, {0: 1})) != ms(R2, CCM.make(0, {0: 1}))


def test_suspend(R2):
    M = ms(R2, CCM.make(0, {0: 2}), CCM.make(4, {1: INF}))
    assert suspend(M, 0) == M
    assert suspend(suspend(M, 6), -6) == M
    assert suspend(ModuleSum.zero(R2), 3).is_zero


def test_localize_examples(R2):
    assert localize(ModuleSum.invariant_quotient(R2, 1), 1) == ms(
        R2, CCM.make(0, {0: 1}, [1]))
    assert localize(ms(R2, CCM.make(0, {1: 2})), 1).is_zero
    v1R = ms(R2, CCM.make(0, {}, [1]))
    assert localize(v1R, 1) == v1R


def test_torsion_part_examples(R2):
    M = ms(R2, CCM.make(0, {0: 2}))
    assert torsion_part(M, 0) == M
    R = ModuleSum.free(R2)
    for j in range(4):
        assert torsion_part(R, j).is_zero
    P = ms(R2, CCM.make(0, {0: INF}))
    assert torsion_part(P, 0) == P


def test_local_cokernel_examples(R2):
    R = ModuleSum.free(R2)
    assert local_cokernel(R, 0) == ms(R2, CCM.make(0, {0: INF}))
    assert local_cokernel(ms(R2, CCM.make(0, {}, [1])), 1).is_zero
    assert local_cokernel(ms(R2, CCM.make(0, {0: INF})), 1) == ms(
        R2, CCM.make(0, {0: INF, 1: INF}))


def test_is_ideal_torsion(R2):
    I2 = R2.ideal(1)
    assert is_ideal_torsion(ModuleSum.invariant_quotient(R2, 2), I2)
    assert not is_ideal_torsion(ModuleSum.invariant_quotient(R2, 1), I2)
    assert is_ideal_torsion(ms(R2, CCM.make(0, {0: INF, 1: INF})), I2)


def test_laws_on_random_modules():
    rng = random.Random(3)
    ring = RingDescriptor(3, 4)
    for _ in range(300):
        M = random_sum(rng, ring)
        for j in range(5):
            for c in M.summands:
                single = ModuleSum.of(ring, [c])
                tors = torsion_part(single, j)
                assert tors.is_zero or tors == single
                blocked = j in c.support or j in c.inverted
                assert local_cokernel(single, j).is_zero == blocked
            assert localize(localize(M, j), j) == localize(M, j)
            assert torsion_part(torsion_part(M, j), j) == torsion_part(M, j)
            for op in (localize, torsion_part, local_cokernel):
                assert op(suspend(M, 4), j) == suspend(op(M, j), 4)
                parts = [op(ModuleSum.of(ring, [c]), j) for c in M.summands]
                total = ModuleSum.zero(ring)
                for x in parts:
                    total = total + x
                assert op(M, j) == total


def test_modules_equal(R2):
    a = ms(R2, CCM.make(0, {0: 1}), CCM.make(2, {1: 3}))
    b = ms(R2, CCM.make(2, {1: 3}), CCM.make(0, {0: 1}))
    assert modules_equal(a, a) and modules_equal(a, b)
    assert not modules_equal(ms(R2, CCM.make(0, {0: 1})),
                             ms(R2, CCM.make(0, {0: 2})))


def test_per_degree_examples():
    ring = RingDescriptor(2, 2)
    assert per_degree_evaluate(ModuleSum.free(ring), 6) == PerDegreeGroup(free_rank=2)
    assert per_degree_evaluate(ms(ring, CCM.make(0, {0: INF})), 0) == \
        PerDegreeGroup(divisible_corank=1)
    with pytest.raises(NonFiniteDegreewise):
        per_degree_evaluate(ms(ring, CCM.make(0, {1: INF})), 0)


def test_per_degree_coefficients():
    ring = RingDescriptor(2, 1)
    assert per_degree_evaluate(ms(ring, CCM.make(0, {0: 3})), 2) == \
        PerDegreeGroup(torsion_orders=(8,))
    assert per_degree_evaluate(ms(ring, CCM.make(0, {}, [0])), 4) == \
        PerDegreeGroup(rational_rank=1)
    assert per_degree_evaluate(ms(ring, CCM.make(0, {0: 1}, [1])), -6) == \
        PerDegreeGroup(torsion_orders=(2,))
    assert per_degree_evaluate(ms(ring, CCM.make(0, {0: 1}, [1])), -5).is_zero


def test_per_degree_additive():
    rng = random.Random(4)
    ring = RingDescriptor(2, 1)
    for _ in range(100):
        A = ModuleSum.of(ring, [random_ccm(rng, 1)])
        B = ModuleSum.of(ring, [random_ccm(rng, 1)])
        for d in range(-6, 7):
            assert per_degree_evaluate(A + B, d) == \
                per_degree_evaluate(A, d) + per_degree_evaluate(B, d)


def test_group_arithmetic():
    g = PerDegreeGroup(free_rank=1, torsion_orders=(4, 1, 2))
    assert g.torsion_orders == (2, 4)
    assert g.length(2) is None
    assert PerDegreeGroup(torsion_orders=(4, 2)).length(2) == 3
    assert PerDegreeGroup(divisible_corank=1).length(2) is None
    assert g.rank == 1
    assert str(PerDegreeGroup()) == "0"


def test_render_forms(R2):
    c = CCM.make(-2, {0: 2, 1: INF})
    assert render(ms(R2, c)) == "S^-2 R/(p^2, v1^inf)"
    assert render(ms(R2, c), "unicode") == "Σ^{-2} BP_*/(p^2, v_1^∞)"
    # |v2| = 6, so the suspension is read mod 6
    c = CCM.make(-2, {0: 2, 1: INF}, [2])
    assert render(ms(R2, c)) == "S^4 v2^-1 R/(p^2, v1^inf)"
    assert render(ModuleSum.zero(R2)) == "0"


def test_json_round_trip():
    rng = random.Random(5)
    ring = RingDescriptor(3, 4)
    for _ in range(200):
        M = random_sum(rng, ring)
        assert module_from_json(ring, module_to_json(M)) == M
        for c in M.summands:
            assert ccm_from_json(ccm_to_json(c)) == c
        assert dumps(M) == dumps(module_from_json(ring, module_to_json(M)))
