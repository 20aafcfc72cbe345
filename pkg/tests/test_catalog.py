import sys
from pathlib import Path

SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import pytest
from sympy import QQ

from catalog import (SUITES, CatalogError, Status, abc_relation, cocycle, cocycle_exists, dj, omega, rational_weight,
                     singular_weight, verify_identity_suite)
from cochains import DensityWeight, coboundary1
from cohomology import Coboundary, h1_dimension, triviality_test
from scalars import GENERIC
from transvectants import transvectant_J


def test_table_of_cocycles():
    g = DensityWeight(GENERIC)
    assert all(cocycle_exists(g, k) for k in (2, 3, 4))
    assert not cocycle_exists(g, 5)
    assert not cocycle_exists(rational_weight(-1, 2), 2)
    assert cocycle_exists(rational_weight(0), 5) and cocycle_exists(rational_weight(-4), 5)
    assert not cocycle_exists(rational_weight(1), 5)
    assert cocycle_exists(singular_weight("-"), 6)
    assert not cocycle_exists(singular_weight("-", 1), 6)
    with pytest.raises(CatalogError):
        cocycle(rational_weight(-1), 3)


def test_singular_rows_are_cocycles():
    assert h1_dimension(rational_weight(0), 5) == 1
    assert h1_dimension(rational_weight(1), 5) == 0


def test_abc_relation_at_one():
    t = abc_relation(rational_weight(1))
    assert t.branch == "generic"
    assert (t.a, t.b, t.c) == (QQ(1), QQ(11), QQ(-1, 5))


def test_abc_relation_special_branches():
    assert abc_relation(rational_weight(-3)).branch == "l=-3"
    at6 = abc_relation(rational_weight(-6))
    assert at6.branch == "l=-6" and at6.kernel_dim == 2


def test_cup_of_catalog_cocycles_is_cocycle():
    entries = verify_identity_suite("cup-cocycle")
    assert entries
    assert all(e.status is Status.PASS for e in entries)


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_identity_suites_have_no_failures(suite):
    entries = verify_identity_suite(suite)
    assert entries
    assert not [e.name for e in entries if e.status is Status.FAIL]


def test_dj6_relation_uses_the_seed_one_operator():
    w = DensityWeight(GENERIC)
    v = w.value
    p = v * (v * v + v * 6 + 8)
    assert dj(w, 5).scale(w.base.const(3)) == omega(w, 5).scale(-p)
    displayed = coboundary1(transvectant_J(w, 6, tabulated=True))
    assert displayed == omega(w, 5).scale(-p)


def test_triviality_scales_at_rational_weights():
    at1 = triviality_test(omega(rational_weight(1), 5))
    assert isinstance(at1, Coboundary) and at1.scale == QQ(-1, 5)
    at0 = triviality_test(omega(rational_weight(0), 6))
    assert isinstance(at0, Coboundary) and at0.scale == QQ(1, 5)


def test_prop2_reports_the_displayed_j6_as_flag():
    entries = {e.name: e for e in verify_identity_suite("prop2")}
    assert entries["3 dJ6 = -l(l^2+6l+8) Omega5"].status is Status.PASS
    assert entries["dJ6 with the displayed J6 (leading coefficient 3)"].status is Status.FLAG
    assert entries["Omega5 at l=1 is -1/5 dJ6"].status is Status.PASS


def test_unknown_suite_raises():
    with pytest.raises(CatalogError):
        verify_identity_suite("nosuchsuite")
