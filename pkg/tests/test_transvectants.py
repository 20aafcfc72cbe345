import sys
from pathlib import Path

SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import pytest
from sympy import QQ

from cochains import DensityWeight
from jets import JetExpr
from scalars import GENERIC, LAMBDA_DOMAIN, Weight
from transvectants import (ResonanceError, TransvectantError, bilinear_defect, generic_coefficients,
                           predicted_resonant_dimension, printed_generic_coefficients, resonant_index,
                           resonant_solutions, transvectant_J, transvectant_table)


def test_low_order_transvectants():
    g = DensityWeight(GENERIC)
    assert transvectant_J(g, 3).body == JetExpr.monomial(g.domain, X=3, f=0)
    j4 = transvectant_J(DensityWeight(Weight.of_rational(2)), 4)
    assert j4.body.coefficient(X=3, f=1) == QQ(1)
    assert j4.body.coefficient(X=4, f=0) == QQ(-1)


def test_tabulated_normalization_scales_j6():
    w = DensityWeight(Weight.of_rational(1))
    plain = transvectant_J(w, 6)
    tab = transvectant_J(w, 6, tabulated=True)
    assert tab.body.coefficient(X=3, f=3) == QQ(3)
    assert tab == plain.scale(QQ(3))
    assert transvectant_J(w, 7, tabulated=True) == transvectant_J(w, 7)


def test_table_needs_order_three():
    with pytest.raises(TransvectantError):
        transvectant_table(QQ(1), 2, QQ)


def test_generic_formula_satisfies_recurrence():
    tau, lam = GENERIC.value(0), GENERIC.value(1)
    for k in (1, 3, 5):
        table = generic_coefficients(tau, lam, k, LAMBDA_DOMAIN)
        assert table.satisfies_recurrence(tau, lam)
        assert not bilinear_defect(table, tau, lam)
    assert not printed_generic_coefficients(tau, lam, 1, LAMBDA_DOMAIN).satisfies_recurrence(tau, lam)


def test_resonance_detection():
    assert resonant_index(QQ(-3)) == 3
    assert resonant_index(QQ(1)) is None
    assert resonant_index(QQ(-3, 2)) is None
    with pytest.raises(ResonanceError):
        generic_coefficients(QQ(0), QQ(1), 3, QQ)


def test_resonant_solution_space_dimension():
    tau, lam = QQ(-1, 2), QQ(-1)
    assert predicted_resonant_dimension(tau, lam, 3) == 2
    assert len(resonant_solutions(tau, lam, 3, QQ)) == 2
    assert predicted_resonant_dimension(QQ(1), QQ(1), 3) == 1
