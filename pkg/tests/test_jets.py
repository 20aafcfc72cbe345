import sys
from pathlib import Path

SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import pytest
from sympy import QQ

import jets
from jets import JetError, JetExpr, OrderOverflowError, parse_jet, set_max_order
from scalars import Weight, render_rational


def m(coeff=None, **orders):
    return JetExpr.monomial(QQ, coeff, **orders)


def test_derive_is_leibniz():
    assert m(X=0, f=0).derive() == m(X=1, f=0) + m(X=0, f=1)


def test_compose_substitutes_the_density_slot():
    inner = JetExpr(("f",), {(2,): QQ(1)}, QQ)
    assert m(X=0, f=1).compose(inner) == m(X=0, f=3)


def test_substitute_bracket_is_antisymmetric():
    e = m(Z=0, f=0).substitute_bracket("Z", "X", "Y")
    assert e == m(X=0, Y=1, f=0) - m(X=1, Y=0, f=0)
    assert e.is_antisymmetric()


def test_slots_must_be_canonical():
    with pytest.raises(JetError):
        JetExpr(("f", "X"), {}, QQ)


def test_order_bound_is_enforced():
    previous = jets.MAX_ORDER
    try:
        set_max_order(5)
        with pytest.raises(OrderOverflowError):
            m(X=6, f=0)
        with pytest.raises(JetError):
            set_max_order(2)
    finally:
        set_max_order(previous)


def test_render_parses_back():
    e = m(QQ(3, 2), X=3, f=1) + m(QQ(-1), X=4, f=0)
    text = e.render(render_rational)
    assert text.startswith("(-1) X^(4) f^(0)")
    assert parse_jet(text, ("X", "f"), QQ, Weight.of_rational(0).parse_scalar) == e
