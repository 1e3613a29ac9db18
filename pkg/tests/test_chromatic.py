import pytest

from bplocal import CCM, INF, ModuleSum, RingDescriptor
from bplocal.chromatic import (CanonicalMap, apply_Ln,
                               build_chromatic_resolution,
                               chromatic_route_derived_L, truncated_cohomology)
from bplocal.cohomology import cech_cohomology
from bplocal.errors import TruncationExceeded
from bplocal.modules import per_degree_evaluate


def ms(ring, *ccms):
    return ModuleSum.of(ring, ccms)


def test_resolution_k0():
    ring = RingDescriptor(2, 2)
    res = build_chromatic_resolution(ring, 0, 2)
    assert res.terms == (ms(ring, CCM.make(0, {}, [0])),
                         ms(ring, CCM.make(0, {0: INF}, [1])),
                         ms(ring, CCM.make(0, {0: INF, 1: INF}, [2])))
    assert res.render() == ("0 → BP_* → p^{-1} BP_* → v_1^{-1} BP_*/(p^∞) → "
                            "v_2^{-1} BP_*/(p^∞, v_1^∞)")


def test_resolution_k1_and_length_zero():
    ring = RingDescriptor(2, 3)
    res = build_chromatic_resolution(ring, 1, 1)
    assert res.terms == (ms(ring, CCM.make(0, {0: 1}, [1])),
                         ms(ring, CCM.make(0, {0: 1, 1: INF}, [2])))
    res = build_chromatic_resolution(ring, 2, 0)
    assert res.terms == (ms(ring, CCM.make(0, {0: 1, 1: 1}, [2])),)
    with pytest.raises(TruncationExceeded):
        build_chromatic_resolution(ring, 2, 2)


def test_term_shapes():
    ring = RingDescriptor(3, 5)
    for k in range(5):
        res = build_chromatic_resolution(ring, k, 5 - k)
        for t, J in enumerate(res.terms):
            (c,) = J.summands
            assert c.inverted == (t + k,)
            if t + k >= 1:
                assert t + k - 1 in c.support
            assert res.torsion[t + 1] == ms(
                ring, CCM.make(0, {**{i: 1 for i in range(k)},
                                   **{i: INF for i in range(k, t + k + 1)}}))


def test_apply_Ln():
    ring = RingDescriptor(2, 3)
    res = build_chromatic_resolution(ring, 0, 2)
    assert apply_Ln(res, 1).alive == (True, True, False)
    res = build_chromatic_resolution(ring, 2, 1)
    assert apply_Ln(res, 1).alive == (False, False)
    res = build_chromatic_resolution(ring, 2, 1)
    cx = apply_Ln(res, 2)
    assert cx.alive == (True, False)
    assert truncated_cohomology(cx) == {0: res.terms[0]}


def test_route_examples():
    ring = RingDescriptor(2, 3)
    t = chromatic_route_derived_L(ring, 1, 3)
    assert t.nonzero_degrees() == [0, 2]
    assert t[0] == ModuleSum.invariant_quotient(ring, 1)
    assert t[2] == ms(ring, CCM.make(0, {0: 1, 1: INF, 2: INF, 3: INF}))
    t = chromatic_route_derived_L(ring, 2, 2)
    assert t.nonzero_degrees() == [0]
    assert t[0] == ms(ring, CCM.make(0, {0: 1, 1: 1}, [2]))
    assert chromatic_route_derived_L(ring, 3, 1).nonzero_degrees() == []


def test_route_matches_cech():
    for p in (2, 5):
        ring = RingDescriptor(p, 4)
        for k in range(5):
            for n in range(5):
                direct = cech_cohomology(ModuleSum.invariant_quotient(ring, k),
                                         ring.ideal(n))
                assert chromatic_route_derived_L(ring, k, n).same_values(direct)


def test_Ln_rule_matches_cech_on_terms():
    ring = RingDescriptor(2, 4)
    for k in range(4):
        res = build_chromatic_resolution(ring, k, 4 - k)
        for n in range(5):
            alive = apply_Ln(res, n).alive
            for J, a in zip(res.terms, alive):
                L0 = cech_cohomology(J, ring.ideal(n))[0]
                assert L0 == (J if a else ModuleSum.zero(ring))


def test_short_exact_sequences_per_degree():
    # 0 -> N_t -> J_t -> N_{t+1} -> 0, checked on ranks and finite lengths
    ring = RingDescriptor(2, 1)
    for k in (0, 1):
        res = build_chromatic_resolution(ring, k, 1 - k)
        for t in range(res.length + 1):
            a, b, c = res.torsion[t], res.terms[t], res.torsion[t + 1]
            for d in range(-10, 11):
                ga, gb, gc = (per_degree_evaluate(x, d) for x in (a, b, c))
                assert ga.rank - gb.rank + gc.rank == 0
                lens = [g.length(2) for g in (ga, gb, gc)]
                if None not in lens:
                    assert lens[0] - lens[1] + lens[2] == 0


def test_canonical_maps():
    ring = RingDescriptor(2, 2)
    N0 = ModuleSum.free(ring)
    q = CanonicalMap.quotient(N0, 0)
    assert q.kernel() == N0 and q.cokernel().is_zero
    loc = CanonicalMap.localization(q.target, 1)
    f = CanonicalMap.compose(q, loc)
    g = CanonicalMap.compose(CanonicalMap.compose(q), loc)
    assert f == g and len(f.parts) == 2
    assert f.kernel() == N0
    assert f.cokernel() == ms(ring, CCM.make(0, {0: INF, 1: INF}))
    with pytest.raises(ValueError):
        CanonicalMap("localize", N0, N0, index=1)
    with pytest.raises(ValueError):
        CanonicalMap.compose(loc, q)
