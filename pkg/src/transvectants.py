"""sl(2)-invariant bilinear operators F_tau x F_lam -> F_{tau+lam+k}.

Coefficient tables c[i, j] (i + j = k) weight phi^(i) psi^(j). The
generic binomial formula, the resonant recurrence, the J_k^{-1,lam} branch
and the low-order I_k operators all live here.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy import QQ

from cochains import Cochain1, DensityWeight
from echelon import nullspace
from jets import JetExpr
from scalars import as_rational, lift

logger = logging.getLogger(__name__)

# Leading coefficients under which J_6, J_7, J_8 are tabulated.
COMPAT_SCALE = {6: 3, 7: 1, 8: 1}


class TransvectantError(ValueError):
    pass


class ResonanceError(TransvectantError):
    def __init__(self) -> None:
        super().__init__("resonant weights: use resonant_solutions")


@dataclass(frozen=True)
class CoefficientTable:
    k: int
    entries: Dict[Tuple[int, int], object] = field(hash=False)
    provenance: str
    domain: object = field(hash=False, compare=False)

    def get(self, i: int, j: int):
        return self.entries.get((i, j), self.domain.zero)

    def to_jet(self, first: str = "X") -> JetExpr:
        """The operator phi^(i) psi^(j) with phi in slot ``first`` and psi in f."""
        return JetExpr((first, "f"), dict(self.entries), self.domain)

    def scaled(self, c) -> "CoefficientTable":
        return CoefficientTable(self.k, {ij: v * c for ij, v in self.entries.items() if v * c},
                                self.provenance, self.domain)

    def satisfies_recurrence(self, tau, lam) -> bool:
        for i in range(self.k):
            j = self.k - 1 - i
            lhs = (tau * 2 + i) * (i + 1) * self.get(i + 1, j) + (lam * 2 + j) * (j + 1) * self.get(i, j + 1)
            if lhs:
                return False
        return True


def _table(k: int, entries: Dict[Tuple[int, int], object], provenance: str, domain) -> CoefficientTable:
    return CoefficientTable(k, {ij: c for ij, c in entries.items() if c}, provenance, domain)


def binomial(x, i: int, domain):
    """Generalized binomial x(x-1)...(x-i+1)/i! over a domain element x."""
    acc = domain.one
    for r in range(i):
        acc = acc * (x - r)
    for r in range(2, i + 1):
        acc = acc / domain.convert_from(QQ(r), QQ)
    return acc


def resonant_index(two_w) -> Optional[int]:
    """s when 2w = -s for an integer s >= 0, else None."""
    q = as_rational(two_w)
    if q is None or q.denominator != 1 or q > 0:
        return None
    return int(-q.numerator)


def is_resonant(tau, lam, k: int) -> bool:
    for w in (tau, lam):
        s = resonant_index(w * 2)
        if s is not None and s <= k - 1:
            return True
    return False


def generic_coefficients(tau, lam, k: int, domain) -> CoefficientTable:
    """c[i, j] = (-1)^j C(2tau+k-1, j) C(2lam+k-1, i)."""
    tau, lam = lift(tau, domain), lift(lam, domain)
    if k > 0 and is_resonant(tau, lam, k):
        raise ResonanceError()
    entries = {}
    for i in range(k + 1):
        j = k - i
        c = binomial(tau * 2 + (k - 1), j, domain) * binomial(lam * 2 + (k - 1), i, domain)
        entries[(i, j)] = -c if j % 2 else c
    return _table(k, entries, "generic", domain)


def printed_generic_coefficients(tau, lam, k: int, domain) -> CoefficientTable:
    """The C(2tau+k, j) C(2lam+k, i) variant; it fails the recurrence and is kept for reports."""
    tau, lam = lift(tau, domain), lift(lam, domain)
    entries = {}
    for i in range(k + 1):
        j = k - i
        c = binomial(tau * 2 + k, j, domain) * binomial(lam * 2 + k, i, domain)
        entries[(i, j)] = -c if j % 2 else c
    return _table(k, entries, "generic (tabulated variant)", domain)


def resonant_solutions(tau, lam, k: int, domain) -> List[CoefficientTable]:
    """Basis of the recurrence solution space; unknown i is c[i, k - i]."""
    tau, lam = lift(tau, domain), lift(lam, domain)
    rows = []
    for i in range(k):
        j = k - 1 - i
        row = [domain.zero] * (k + 1)
        row[i + 1] = (tau * 2 + i) * (i + 1)
        row[i] = (lam * 2 + j) * (j + 1)
        rows.append(row)
    basis = nullspace(rows, k + 1, domain) if rows else [[domain.one]]
    logger.debug("recurrence at k=%d has %d solutions", k, len(basis))
    return [_table(k, {(i, k - i): v[i] for i in range(k + 1)}, "recurrence", domain) for v in basis]


def predicted_resonant_dimension(tau, lam, k: int) -> int:
    """2 iff 2lam = -s and 2tau = -t with s, t in 0..k-1 and t > k-s-2, else 1."""
    s, t = resonant_index(lam * 2), resonant_index(tau * 2)
    if s is None or t is None or s > k - 1 or t > k - 1:
        return 1
    return 2 if t > k - s - 2 else 1


def bilinear_defect(table: CoefficientTable, tau, lam) -> JetExpr:
    """X-truncation of L_X B(phi, psi) - B(L_X phi, psi) - B(phi, L_X psi)."""
    K = table.domain
    tau, lam = lift(tau, K), lift(lam, K)
    op = table.to_jet("Y")
    mu = tau + lam + table.k

    def action(value, dslot):
        return (JetExpr.monomial(K, **{"X": 0, dslot: 1})
                + JetExpr.monomial(K, value, **{"X": 1, dslot: 0}))

    outer = action(mu, "f").compose(op)
    on_phi = op.substitute_slot("Y", action(tau, "Y"))
    on_psi = op.compose(action(lam, "f"))
    return (outer - on_phi - on_psi).sl2_truncation("X")


def transvectant_table(lam, k: int, domain) -> CoefficientTable:
    """J_k^{-1,lam}: seed c[3, k-3] = 1 and run the recurrence downward in j."""
    if k < 3:
        raise TransvectantError(f"J_k^(-1,l) needs k >= 3, got {k}")
    lam = lift(lam, domain)
    entries = {(3, k - 3): domain.one}
    for i in range(3, k):
        j = k - 1 - i
        entries[(i + 1, j)] = -entries[(i, j + 1)] * ((lam * 2 + j) * (j + 1)) / domain.convert_from(
            QQ((i + 1) * (i - 2)), QQ)
    return _table(k, entries, "recurrence seed (3, k-3)", domain)


def transvectant_J(source: DensityWeight, k: int, tabulated: bool = False) -> Cochain1:
    """J_k^{-1,lam} as a 1-cochain F_lam -> F_{lam+k-1}."""
    K = source.domain
    table = transvectant_table(source.value, k, K)
    if tabulated:
        table = table.scaled(K.convert_from(QQ(COMPAT_SCALE.get(k, 1)), QQ))
    return Cochain1(source, source.shift(k - 1), table.to_jet("X"))


def operator_I(source: DensityWeight, k: int) -> Cochain1:
    """The extra invariant operator at 2lam in {1-k, 2-k, 3-k}."""
    two_lam = as_rational(source.value * 2)
    K = source.domain
    one = K.one

    def q(p, d=1):
        return K.convert_from(QQ(p, d), QQ)

    if two_lam == 1 - k:
        coeffs = {(0, k): one}
    elif two_lam == 2 - k:
        coeffs = {(0, k): one, (1, k - 1): q(k, 2)}
    elif two_lam == 3 - k:
        coeffs = {(0, k): one, (1, k - 1): q(k), (2, k - 2): q(k * (k - 1), 2)}
    else:
        raise TransvectantError("I-operator undefined")
    return Cochain1.from_coefficients(source, source.shift(k - 1), coeffs)
