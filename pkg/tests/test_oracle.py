import sys
from pathlib import Path

SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import pytest
from sympy import QQ

from catalog import Status, omega, rational_weight
from cochains import DensityWeight, poly_ring
from cohomology import Coboundary, triviality_test
from config import EngineConfig
from oracle import (DensityElement, OracleError, agreement_entries, crosscheck_expansion, evaluate_cochain,
                    rank_coboundary_test, sl2_vanishing_entries)
from scalars import GENERIC, Weight
from transvectants import transvectant_J


def setup_j3():
    w = DensityWeight(Weight.of_rational(1))
    R, x = poly_ring(QQ)
    return w, transvectant_J(w, 3), x


def test_j3_evaluates_on_polynomials():
    w, j3, x = setup_j3()
    out = evaluate_cochain(j3, X=x ** 3, f=DensityElement(x ** 2, w))
    assert out.poly == 6 * x ** 2
    assert out.weight == j3.target
    assert not evaluate_cochain(j3, X=x ** 2, f=DensityElement(x ** 2, w)).poly


def test_evaluation_rejects_bad_inputs():
    w, j3, x = setup_j3()
    with pytest.raises(OracleError):
        evaluate_cochain(j3, X=x ** 5, f=DensityElement(x, w), config=EngineConfig(degree_bound=3))
    with pytest.raises(OracleError):
        evaluate_cochain(j3, X=x ** 3, f=DensityElement(x, w.shift(1)))
    with pytest.raises(OracleError):
        evaluate_cochain(j3, X=x ** 3)


def test_random_crosschecks_agree():
    assert crosscheck_expansion("cup", trials=3, seed=1).status is Status.PASS
    assert crosscheck_expansion("ddzero", trials=2, seed=1).status is Status.PASS
    with pytest.raises(OracleError):
        crosscheck_expansion("nope")


def test_rank_test_matches_symbolic_triviality():
    om = omega(rational_weight(1), 5)
    assert isinstance(rank_coboundary_test(om), Coboundary)
    assert isinstance(triviality_test(om), Coboundary)


def test_rank_test_preconditions():
    with pytest.raises(OracleError):
        rank_coboundary_test(omega(DensityWeight(GENERIC), 5))
    with pytest.raises(OracleError):
        rank_coboundary_test(omega(rational_weight(1), 5), EngineConfig(degree_bound=4))


def test_symbolic_and_rank_triviality_agree_on_small_weights():
    entries = agreement_entries(weights=[(1, 1), (0, 1), (-3, 1)], ks=(5, 6))
    assert entries
    assert all(e.status is Status.PASS for e in entries)
    assert all(e.status is Status.PASS for e in sl2_vanishing_entries())
