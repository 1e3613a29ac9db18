import json

import pytest

from bplocal import CCM, INF, ModuleSum, RingDescriptor
from bplocal.errors import NotCollapsed
from bplocal.modules import PerDegreeGroup
from bplocal.spectral import (COLLAPSED, UNDETERMINED, E2Page, abutment_report,
                              assemble_E2, detect_collapse, dumps)


def test_sphere_page_n2():
    ring = RingDescriptor(2, 2)
    page = assemble_E2(ModuleSum.free(ring), 2)
    assert page.nonzero_columns == [0, 2] and page.image_of_input
    assert page.columns[2] == ModuleSum.of(ring, [CCM.make(0, {0: INF, 1: INF, 2: INF})])
    rep = abutment_report(page)
    assert rep.ses() == "0 → S^-2 R/(p^inf, v1^inf, v2^inf) → abutment → R → 0"
    assert "split" in rep.render()


def test_zero_pages():
    ring = RingDescriptor(3, 3)
    page = assemble_E2(ModuleSum.invariant_quotient(ring, 3), 1)
    assert page.is_zero()
    assert abutment_report(page).render() == "abutment = 0"
    assert assemble_E2(ModuleSum.zero(ring), 2).is_zero()


def test_columns_above_n_vanish_and_are_torsion():
    ring = RingDescriptor(2, 3)
    M = ModuleSum.of(ring, [CCM.make(0, {1: 2}), CCM.make(2, {}, [3]),
                            CCM.make(0, {0: INF})])
    for n in range(4):
        page = assemble_E2(M, n)
        assert max(page.nonzero_columns) <= n


def test_collapse_rules():
    ring = RingDescriptor(2, 3)
    X = ModuleSum.invariant_quotient(ring, 1)
    Y = ModuleSum.of(ring, [CCM.make(0, {0: INF, 1: INF})])
    page = E2Page(3, {0: X, 1: Y}, image_of_input=True)
    assert detect_collapse(page).verdict == COLLAPSED
    page = E2Page(3, {1: Y, 3: Y})
    verdict = detect_collapse(page)
    assert verdict.verdict == UNDETERMINED
    assert [(d.r, d.source, d.target) for d in verdict.possible] == [(2, 1, 3)]
    with pytest.raises(NotCollapsed):
        abutment_report(page)
    page = E2Page(3, {0: X, 2: Y}, image_of_input=False)
    assert detect_collapse(page).verdict == UNDETERMINED


def test_single_column_and_degrees():
    ring = RingDescriptor(2, 1)
    X = ModuleSum.invariant_quotient(ring, 1)
    rep = abutment_report(E2Page(1, {1: X}))
    assert rep.render() == "abutment = S^-1 R/(p)"
    page = assemble_E2(ModuleSum.free(ring), 1)
    rep = abutment_report(page)
    # total degree -3: (s=1, t=-2) Prufer and nothing from column 0
    pieces = rep.in_degree(-3)
    assert pieces[0][:2] == (1, -2)
    assert pieces[0][2] == PerDegreeGroup(divisible_corank=1)
    assert pieces[1][2].is_zero


def test_json_dump():
    ring = RingDescriptor(2, 1)
    obj = json.loads(dumps(assemble_E2(ModuleSum.free(ring), 1)))
    assert obj["n"] == 1 and obj["verdict"] == COLLAPSED
    assert set(obj["columns"]) == {"0", "1"}
    assert [r["s"] for r in obj["report"]] == [1, 0]
