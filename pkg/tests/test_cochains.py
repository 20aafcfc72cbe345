import sys
from pathlib import Path

SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import pytest
from sympy import QQ

from cochains import (Cochain1, DensityWeight, NonComposableError, NotInvariantError, coboundary0, coboundary1,
                      cocycle2_defect, cup, invariance_defect, lie_density, poly_ring)
from cohomology import Coboundary, h1_dimension, in_coboundary0_image, triviality_test
from jets import JetExpr
from scalars import GENERIC, Weight
from transvectants import transvectant_J


def rational(p, q=1):
    return DensityWeight(Weight.of_rational(p, q))


def test_lie_derivative_on_polynomials():
    w = rational(1)
    R, x = poly_ring(QQ)
    assert lie_density(x, x ** 2, w) == 3 * x ** 2


def test_coboundary_squares_to_zero():
    w = DensityWeight(GENERIC)
    b = Cochain1.from_coefficients(w, w.shift(3), {(3, 0): w.value, (4, 1): w.base.const(2), (1, 2): w.domain.one})
    db = coboundary1(b)
    assert db.body.is_antisymmetric()
    assert not cocycle2_defect(db)


def test_cup_is_antisymmetric_and_order_free():
    w = rational(1, 3)
    outer = Cochain1.from_coefficients(w.shift(2), w.shift(4), {(3, 1): QQ(1)})
    inner = Cochain1.from_coefficients(w, w.shift(2), {(3, 0): QQ(1)})
    c = cup(outer, inner)
    assert c == cup(inner, outer)
    assert c.source == w and c.target == w.shift(4)
    assert c.body.is_antisymmetric()
    assert c.body.coefficient(X=4, Y=3, f=0) == QQ(1)


def test_cup_rejects_non_composable():
    w = rational(1)
    c = Cochain1.from_coefficients(w, w.shift(2), {(3, 0): QQ(1)})
    with pytest.raises(NonComposableError):
        cup(c, c)


def test_bol_weight_derivative_is_invariant():
    d = JetExpr(("f",), {(1,): QQ(1)}, QQ)
    w = rational(0)
    assert not coboundary0(d, w, w.shift(1))
    g = DensityWeight(GENERIC)
    with pytest.raises(NotInvariantError):
        coboundary0(JetExpr(("f",), {(1,): g.domain.one}, g.domain), g, g.shift(1))


def test_transvectant_is_relative_cocycle():
    g = DensityWeight(GENERIC)
    j3 = transvectant_J(g, 3)
    assert j3.is_relative()
    assert not invariance_defect(j3)
    assert not coboundary1(j3)


def test_h1_at_low_gap():
    assert h1_dimension(DensityWeight(GENERIC), 2) == 1
    # J_3 is a coboundary at the Bol weight
    assert in_coboundary0_image(transvectant_J(rational(-1, 2), 3))
    assert h1_dimension(rational(-1, 2), 2) == 0


def test_coboundary_of_transvectant_is_trivial():
    w = DensityWeight(GENERIC)
    om = coboundary1(transvectant_J(w, 7, tabulated=True)).scale(w.base.const(5))
    result = triviality_test(om)
    assert isinstance(result, Coboundary)
    assert result.scale == w.base.const(5)
