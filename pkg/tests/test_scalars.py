import sys
from pathlib import Path

SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import pytest
from sympy import QQ

from scalars import (GENERIC, SINGULAR_MINPOLY, ParamPoly, ParamSymbol, PoleError, ScalarError, UnsupportedIdealShape,
                     Weight, as_rational, lam, normalize_ratfun, parampoly_reduce, parse_weight)


def t(i, j):
    return ParamPoly.symbol(QQ, ParamSymbol(i, j))


def test_parse_weight_forms():
    assert parse_weight("generic") == (GENERIC, 0)
    base, offset = parse_weight("-6/4")
    assert base.rational == (-3, 2) and offset == 0
    base, offset = parse_weight("alg:2,10,3:-:4")
    assert base.minpoly == SINGULAR_MINPOLY and base.branch == "-" and offset == 4


@pytest.mark.parametrize("text", ["abc", "1/0", "alg:1,2:+", "alg:1,0,-4:+", "alg:2,10,3:?"])
def test_malformed_weights_raise(text):
    with pytest.raises(ScalarError):
        parse_weight(text)


def test_labels_carry_offsets():
    assert GENERIC.label(0) == "l"
    assert GENERIC.label(2) == "l+2"
    assert Weight.of_rational(7).label(-3) == "4"


def test_singular_root_is_exact():
    w = Weight.algebraic(SINGULAR_MINPOLY, "-")
    v = w.value()
    assert v * v * 2 + v * 10 + 3 == w.domain.zero
    assert as_rational(v) is None
    assert w.render(v) == "-5/2 - 1/2*sqrt(19)"


def test_parameter_gap_bounds():
    with pytest.raises(ScalarError):
        ParamSymbol(0, 1)
    with pytest.raises(ScalarError):
        ParamSymbol(0, 7)


def test_reduce_by_monomial_generator():
    p = t(0, 2) * t(2, 5) * t(5, 7)
    assert not parampoly_reduce(p, [t(0, 2) * t(2, 5)])
    assert parampoly_reduce(t(0, 3) * t(3, 5), [t(0, 2) * t(2, 5)]) == t(0, 3) * t(3, 5)


def test_reduce_by_binomial_records_trace():
    g = t(0, 3) * t(3, 5) - (t(0, 2) * t(2, 5)).scale(QQ(2))
    p = t(0, 3) * t(3, 5) * t(5, 7)
    trace = []
    r = parampoly_reduce(p, [g], trace)
    assert r == (t(0, 2) * t(2, 5) * t(5, 7)).scale(QQ(2))
    total = ParamPoly.zero(QQ)
    for mult, idx in trace:
        total = total + mult * [g][idx]
    assert p - r == total


def test_three_term_generator_is_rejected():
    g = t(0, 2) + t(0, 3) * t(3, 5) + t(0, 4)
    with pytest.raises(UnsupportedIdealShape):
        parampoly_reduce(t(0, 2), [g])


def test_normalized_leading_coefficient():
    p = (t(0, 3) * t(3, 5)).scale(QQ(4)) + t(0, 2).scale(QQ(2))
    n = p.normalized()
    assert n.leading()[1] == QQ(1)
    assert n.coefficient(p.leading()[0]) == QQ(1)


def test_normalize_cancels_common_factors():
    assert normalize_ratfun([-1, 0, 1], [-1, 1]) == lam + 1
    assert normalize_ratfun([0, 2], [4]) == lam / 2
    with pytest.raises(ScalarError):
        normalize_ratfun([1], [0])


def test_specialize_to_each_weight_kind():
    assert Weight.of_rational(-4).specialize(lam + 4) == 0
    w = Weight.algebraic(SINGULAR_MINPOLY, "+")
    assert not w.specialize(2 * lam ** 2 + 10 * lam + 3)
    with pytest.raises(PoleError):
        Weight.of_rational(-3).specialize(1 / (lam + 3))
