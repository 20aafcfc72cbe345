"""Triviality of relative 2-cocycles and the first relative cohomology.

The only relative 2-coboundaries between D(l) and D(l+k) are multiples of
the coboundary of J_{k+1}^{-1,l}, so triviality is a one-unknown solve and
H^1 reduces to asking whether that coboundary vanishes.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Union

from sympy import QQ

from cochains import (Cochain1, Cochain2, DensityWeight, coboundary0, coboundary1,
                      operator_action)
from echelon import nullspace, solve_in_span
from jets import JetExpr
from scalars import LAMBDA_RING, Weight, render_rational
from transvectants import transvectant_J

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Coboundary:
    scale: object


@dataclass(frozen=True)
class Nontrivial:
    residual: Cochain2 = field(compare=False)


TrivialityResult = Union[Coboundary, Nontrivial]


def project_out(target: JetExpr, direction: JetExpr):
    """(s, target - s*direction) with s chosen to kill direction's leading monomial."""
    if not direction:
        return target.domain.zero, target
    pivot = direction.sorted_monomials()[0]
    s = target.terms.get(pivot, target.domain.zero) / direction.terms[pivot]
    return s, target - direction.scale(s)


def triviality_test(omega: Cochain2) -> TrivialityResult:
    """Decide omega = s * coboundary(J_{k+1}^{-1,l}), J seeded with c[3, k-2] = 1."""
    dj = coboundary1(transvectant_J(omega.source, omega.k + 1))
    scale, residual = project_out(omega.body, dj.body)
    if residual:
        return Nontrivial(Cochain2(omega.source, omega.target, residual))
    return Coboundary(scale)


def invariant_zero_cochains(source: DensityWeight, k: int) -> List[JetExpr]:
    """Basis of constant-coefficient operators sum a_j d^j : F_l -> F_{l+k} commuting with sl(2)."""
    K = source.domain
    target = source.shift(k)
    columns = []
    for j in range(k + 1):
        body = operator_action(JetExpr(("f",), {(j,): K.one}, K), source, target, "X")
        columns.append(body.sl2_truncation("X"))
    monomials = sorted({m for col in columns for m in col.terms})
    rows = [[col.terms.get(m, K.zero) for col in columns] for m in monomials]
    basis = nullspace(rows, k + 1, K) if rows else [
        [K.one if i == j else K.zero for i in range(k + 1)] for j in range(k + 1)]
    ops = [JetExpr(("f",), {(j,): v[j] for j in range(k + 1)}, K) for v in basis]
    logger.debug("invariant 0-cochains at %s, k=%d: %d", source.label, k, len(ops))
    return ops


def in_coboundary0_image(c: Cochain1) -> bool:
    images = [coboundary0(op, c.source, c.target).body
              for op in invariant_zero_cochains(c.source, c.k)]
    images = [b for b in images if b]
    if not images:
        return False
    monomials = sorted({m for b in images + [c.body] for m in b.terms})
    K = c.domain
    columns = [[b.terms.get(m, K.zero) for m in monomials] for b in images]
    target = [c.body.terms.get(m, K.zero) for m in monomials]
    return solve_in_span(target, columns, K) is not None


@dataclass
class H1Report:
    weight: str
    k: int
    dimension: int
    cocycle: bool
    bol: bool
    exceptional: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def _vanishing_weights(dj: Cochain2) -> List[str]:
    """Roots of the gcd of the coefficient numerators, as weight strings."""
    g = None
    for c in dj.body.terms.values():
        num = c.numer
        g = num if g is None else g.gcd(num)
    if g is None or g.is_ground:
        return []
    roots: List[str] = []
    _, factors = g.factor_list()
    for poly, _mult in factors:
        coeffs = [QQ.convert(poly.coeff(LAMBDA_RING.gens[0] ** d)) for d in range(poly.degree() + 1)]
        if poly.degree() == 1:
            roots.append(render_rational(-coeffs[0] / coeffs[1]))
        elif poly.degree() == 2:
            a, b, c = coeffs[2], coeffs[1], coeffs[0]
            scale = a.denominator * b.denominator * c.denominator
            ints = [int(v * scale) for v in (a, b, c)]
            for branch in ("-", "+"):
                roots.append(Weight.algebraic(ints, branch).describe())
        else:
            roots.append(f"root of {poly}")
    return sorted(roots)


def h1_analysis(source: DensityWeight, k: int) -> H1Report:
    report = H1Report(weight=source.label, k=k, dimension=0, cocycle=False, bol=False)
    if k <= 1:
        report.notes.append("no relative transvectant below k=2")
        return report
    j = transvectant_J(source, k + 1)
    dj = coboundary1(j)
    report.cocycle = not dj
    report.bol = in_coboundary0_image(j)
    report.dimension = int(report.cocycle) - int(report.bol)
    bol_weight = QQ(1 - k, 2)
    if source.base.is_generic and source.offset == 0:
        if dj:
            report.exceptional = [w for w in _vanishing_weights(dj) if w != render_rational(bol_weight)]
        else:
            report.exceptional = [render_rational(bol_weight)]
    if report.cocycle and report.bol:
        report.notes.append(
            f"coboundary of J_{k + 1} vanishes at the Bol weight because J_{k + 1} is itself a coboundary")
    logger.info("H1 at (%s, %d): dim %d", source.label, k, report.dimension)
    return report


def h1_dimension(source: DensityWeight, k: int) -> int:
    return h1_analysis(source, k).dimension
