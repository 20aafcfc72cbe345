import sys
from pathlib import Path

SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import pytest
from sympy import QQ

from catalog import dj, omega
from cochains import Cochain2, DensityWeight
from deformations import (DecompositionFailure, DeformationError, DeformationSpec, ParamCochain, decompose_block,
                          derive_conditions, enumerate_parameters, ideal_contains, maximal_zero_assignments)
from jets import JetExpr
from scalars import GENERIC, ParamPoly, ParamSymbol


def t(i, j):
    return ParamPoly.symbol(QQ, ParamSymbol(i, j))


def test_parameter_counts():
    assert len(enumerate_parameters(4)) == 6
    assert len(enumerate_parameters(7)) == 15
    assert len(enumerate_parameters(6, "7")) == 12
    assert enumerate_parameters(1) == []
    with pytest.raises(DeformationError):
        enumerate_parameters(-1)


def test_small_window_is_trivial():
    spec = DeformationSpec.create(1)
    assert not spec.parameters
    assert not spec.l1


def test_generic_window_of_four_has_no_conditions():
    spec = DeformationSpec.create(4)
    assert all(not derive_conditions(spec, m) for m in (2, 3, 4))


def test_window_below_seven_is_unobstructed():
    spec = DeformationSpec.create(6, "7")
    assert len(spec.parameters) == 12
    assert len(spec.l2) == 3
    assert not derive_conditions(spec, 2)
    assert not derive_conditions(spec, 3)


def test_zero_assignments_are_minimal_transversals():
    found = maximal_zero_assignments([t(0, 2) * t(2, 5), t(0, 3) * t(3, 5)])
    assert len(found) == 4
    assert all(len(s) == 2 for s in found)
    assert maximal_zero_assignments([t(0, 2), t(0, 2) * t(2, 5)]) == [(ParamSymbol(0, 2),)]
    assert maximal_zero_assignments([]) == [()]


def test_ideal_membership_methods():
    g = t(0, 2) * t(2, 5)
    assert ideal_contains(ParamPoly.zero(QQ), [g]) == (True, "zero")
    assert ideal_contains(g * t(5, 7), [g]) == (True, "rewrite")
    assert ideal_contains(t(0, 3) * t(3, 5), [g]) == (False, "graded")


def test_omega5_block_lies_along_dj6():
    w = DensityWeight(GENERIC)
    K = w.domain
    block = ParamCochain(w, w.shift(5), [(ParamPoly.symbol(K, ParamSymbol(0, 5)), omega(w, 5))])
    d = decompose_block(block, dj(w, 5))
    assert d.generators == []
    assert d.scale


def test_block_not_vanishing_on_sl2_fails_to_decompose():
    w = DensityWeight(GENERIC)
    K = w.domain
    body = JetExpr(Cochain2.SLOTS, {(1, 0, 0): K.one, (0, 1, 0): -K.one}, K)
    block = ParamCochain(w, w.shift(5), [(ParamPoly.symbol(K, ParamSymbol(0, 5)), Cochain2(w, w.shift(5), body))])
    with pytest.raises(DecompositionFailure):
        decompose_block(block, dj(w, 5))
