"""Brute-force cross-checks of the symbolic engine on concrete polynomials.

Nothing here touches jet composition: cochains are read as differential
operators and applied to actual polynomials, Lie derivatives are taken
directly, and the coboundary test is a rank computation on monomial inputs.
Randomness always comes from numpy's PCG64 seeded by the caller.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ

from catalog import CatalogError, Entry, Status, cocycle, cocycle_exists, omega, rational_weight
from cochains import (CUP_SIGN, Cochain1, Cochain2, DensityWeight, coboundary1, cocycle2_defect, cup,
                      lie_density, poly_ring)
from cohomology import Coboundary, Nontrivial, TrivialityResult, triviality_test
from config import DEFAULT_CONFIG, EngineConfig
from deformations import DeformationSpec, mc_defect
from echelon import rank
from jets import JetExpr
from scalars import Weight

logger = logging.getLogger(__name__)

RANDOM_DEGREE = 10
RANDOM_COEFF = 9


class OracleError(ValueError):
    pass


@dataclass
class DensityElement:
    poly: object
    weight: DensityWeight

    @property
    def degree(self) -> int:
        return max(self.poly.degree(), 0) if self.poly else -1


def _check_degree(polys: Sequence, bound: int) -> None:
    for p in polys:
        if p and p.degree() > bound:
            raise OracleError(f"degree overflow: {p.degree()} > {bound}")


def _derivatives(p, n: int, x) -> List:
    out = [p]
    for _ in range(n):
        out.append(out[-1].diff(x))
    return out


def evaluate_jet(expr: JetExpr, inputs: Dict[str, object]):
    """Read each monomial X^(a) Y^(b) ... f^(c) as a product of actual derivatives."""
    R, x = poly_ring(expr.domain)
    top = {s: max((m[i] for m in expr.terms), default=0) for i, s in enumerate(expr.slots)}
    derivs = {s: _derivatives(inputs[s], top[s], x) for s in expr.slots}
    total = R.zero
    for m, c in expr.terms.items():
        term = R.ground_new(c)
        for s, o in zip(expr.slots, m):
            term = term * derivs[s][o]
        total += term
    return total


def evaluate_cochain(c, X, Y=None, f: Optional[DensityElement] = None, Z=None,
                     config: EngineConfig = DEFAULT_CONFIG) -> DensityElement:
    if f is None:
        raise OracleError("a density argument is required")
    if f.weight != c.source:
        raise OracleError(f"density of weight {f.weight.label} fed to a cochain on {c.source.label}")
    inputs = {"X": X, "Y": Y, "Z": Z, "f": f.poly}
    used = {s: inputs[s] for s in c.body.slots}
    if any(v is None for v in used.values()):
        raise OracleError(f"cochain needs arguments {c.body.slots}")
    _check_degree(list(used.values()), config.degree_bound)
    if not c.body:
        return DensityElement(poly_ring(c.domain)[0].zero, c.target)
    return DensityElement(evaluate_jet(c.body, used), c.target)


# ---------------------------------------------------------------------------
# direct evaluation of coboundaries and cups
# ---------------------------------------------------------------------------

Operator1 = Callable[[object, object], object]


def _bracket(X, Y, x):
    return X * Y.diff(x) - X.diff(x) * Y


def operator_of(c: Cochain1) -> Operator1:
    def apply(X, f):
        return evaluate_jet(c.body, {"X": X, "f": f}) if c.body else poly_ring(c.domain)[0].zero
    return apply


def direct_coboundary1(b: Operator1, source: DensityWeight, target: DensityWeight, X, Y, f):
    """X.b(Y) - Y.b(X) - b([X, Y]) with the module actions taken literally."""
    _, x = poly_ring(source.domain)

    def act(V, W):
        return lie_density(V, b(W, f), target) - b(W, lie_density(V, f, source))

    return act(X, Y) - act(Y, X) - b(_bracket(X, Y, x), f)


def direct_coboundary2(omega2: Callable, source: DensityWeight, target: DensityWeight, X, Y, Z, f):
    """Cyclic sum of X.omega(Y, Z) - omega([X, Y], Z)."""
    _, x = poly_ring(source.domain)

    def term(A, B, C):
        acting = lie_density(A, omega2(B, C, f), target) - omega2(B, C, lie_density(A, f, source))
        return acting - omega2(_bracket(A, B, x), C, f)

    return term(X, Y, Z) + term(Y, Z, X) + term(Z, X, Y)


def direct_cup(outer: Cochain1, inner: Cochain1, X, Y, f):
    o, i = operator_of(outer), operator_of(inner)
    return (o(X, i(Y, f)) - o(Y, i(X, f))) * CUP_SIGN


# ---------------------------------------------------------------------------
# rank-based coboundary test
# ---------------------------------------------------------------------------

@dataclass
class GradedBlock:
    """Rows of b -> db on monomial inputs of one total x-degree."""

    degree: int
    keys: List[Tuple[int, int, int, int]] = field(default_factory=list)
    rows: List[List] = field(default_factory=list)
    targets: List = field(default_factory=list)


def relative_templates(k: int) -> List[Tuple[int, int]]:
    """Jet templates X^(a) f^(c) with a >= 3 and a + c <= k + 1."""
    return [(a, c) for a in range(3, k + 2) for c in range(0, k + 2 - a)]


def graded_blocks(om: Cochain2, bound: int) -> Dict[int, GradedBlock]:
    K = om.domain
    R, x = poly_ring(K)
    k = om.k
    top = min(bound, k + 2)
    templates = [Cochain1.from_coefficients(om.source, om.target, {t: K.one}) for t in relative_templates(k)]
    ops = [operator_of(t) for t in templates]
    blocks: Dict[int, GradedBlock] = {}
    for p in range(0, top + 1):
        for q in range(p + 1, top + 1):
            for r in range(0, top + 1):
                X, Y, f = x ** p, x ** q, x ** r
                values = [direct_coboundary1(op, om.source, om.target, X, Y, f) for op in ops]
                want = evaluate_jet(om.body, {"X": X, "Y": Y, "f": f}) if om.body else R.zero
                degrees = {d for v in values + [want] for (d,) in v.monoms()}
                block = blocks.setdefault(p + q + r, GradedBlock(p + q + r))
                for d in sorted(degrees):
                    block.keys.append((p, q, r, d))
                    block.rows.append([v.get((d,), K.zero) for v in values])
                    block.targets.append(want.get((d,), K.zero))
    return blocks


def rank_coboundary_test(om: Cochain2, config: EngineConfig = DEFAULT_CONFIG) -> TrivialityResult:
    """Decide whether om = db for a relative 1-cochain b by exact ranks."""
    if om.base.is_generic:
        raise OracleError("the rank test needs a numeric weight")
    if config.degree_bound < om.k + 2:
        raise OracleError(f"degree bound {config.degree_bound} below k+2 = {om.k + 2}")
    K = om.domain
    blocks = graded_blocks(om, config.degree_bound)
    rows, augmented = [], []
    for d in sorted(blocks):
        for row, t in zip(blocks[d].rows, blocks[d].targets):
            rows.append([K.convert(v) for v in row])
            augmented.append([K.convert(v) for v in row] + [K.convert(t)])
    ncols = len(relative_templates(om.k))
    plain = rank(rows, ncols, K)
    full = rank(augmented, ncols + 1, K)
    logger.debug("rank test at %s, k=%d: %d rows, ranks %d/%d", om.source.label, om.k, len(rows), plain, full)
    if plain == full:
        return Coboundary(None)
    return Nontrivial(om)


# ---------------------------------------------------------------------------
# randomized cross-checks
# ---------------------------------------------------------------------------

def random_poly(rng: np.random.Generator, K, degree: int = RANDOM_DEGREE):
    R, x = poly_ring(K)
    coeffs = rng.integers(-RANDOM_COEFF, RANDOM_COEFF + 1, size=degree + 1)
    total = R.zero
    for e, c in enumerate(coeffs):
        if c:
            total += R.ground_new(K.convert_from(QQ(int(c)), QQ)) * x ** e
    return total


def random_weight(rng: np.random.Generator) -> DensityWeight:
    return DensityWeight(Weight.of_rational(int(rng.integers(-8, 3)), int(rng.integers(1, 3))))


def random_cochain1(rng: np.random.Generator, source: DensityWeight, k: int, order: int = 6) -> Cochain1:
    K = source.domain
    coeffs = {}
    for a in range(order + 1):
        for c in range(order + 1 - a):
            v = int(rng.integers(-RANDOM_COEFF, RANDOM_COEFF + 1))
            if v:
                coeffs[(a, c)] = K.convert_from(QQ(v), QQ)
    return Cochain1.from_coefficients(source, source.shift(k), coeffs)


def _trial_ddzero(rng: np.random.Generator) -> bool:
    w = random_weight(rng)
    b = random_cochain1(rng, w, int(rng.integers(0, 4)))
    K = w.domain
    X, Y, Z, f = (random_poly(rng, K) for _ in range(4))
    db = coboundary1(b)
    direct = direct_coboundary1(operator_of(b), b.source, b.target, X, Y, f)
    symbolic = evaluate_jet(db.body, {"X": X, "Y": Y, "f": f}) if db.body else poly_ring(K)[0].zero
    if symbolic != direct:
        return False

    def omega2(A, B, g):
        return direct_coboundary1(operator_of(b), b.source, b.target, A, B, g)

    if direct_coboundary2(omega2, b.source, b.target, X, Y, Z, f):
        return False
    return not cocycle2_defect(db)


def _trial_cup(rng: np.random.Generator) -> bool:
    w = random_weight(rng)
    while not (cocycle_exists(w, 2) and cocycle_exists(w.shift(2), 3)):
        w = random_weight(rng)
    outer, inner = cocycle(w.shift(2), 3), cocycle(w, 2)
    K = w.domain
    X, Y, f = (random_poly(rng, K) for _ in range(3))
    symbolic = evaluate_jet(cup(outer, inner).body, {"X": X, "Y": Y, "f": f})
    return symbolic == direct_cup(outer, inner, X, Y, f)


def _trial_mc2_example2(rng: np.random.Generator) -> bool:
    spec = _example2_spec()
    K = spec.domain
    point = {p: K.convert_from(QQ(int(rng.integers(-9, 10)), int(rng.integers(1, 4))), QQ)
             for p in spec.parameters}
    X, Y, f = (random_poly(rng, K) for _ in range(3))
    for key, block in mc_defect(spec, 2).items():
        symbolic = poly_ring(K)[0].zero
        for p, c in block.terms:
            symbolic += evaluate_jet(c.body, {"X": X, "Y": Y, "f": f}) * p.evaluate(point)
        direct = poly_ring(K)[0].zero
        for (i, j), a in spec.l1.items():
            for (j2, l), b in spec.l1.items():
                if (i, l) == key and j2 == j:
                    tt = a.terms[0][0].evaluate(point) * b.terms[0][0].evaluate(point)
                    direct += direct_cup(b.terms[0][1], a.terms[0][1], X, Y, f) * tt
        if key in spec.l2:
            s, j_op = spec.l2[key].terms[0]
            direct += direct_coboundary1(operator_of(j_op), j_op.source, j_op.target, X, Y, f) * s.evaluate(point)
        if symbolic != direct or symbolic:
            return False
    return True


@lru_cache(maxsize=None)
def _example2_spec() -> DeformationSpec:
    return DeformationSpec.create(6, "7")


IDENTITIES: Dict[str, Callable[[np.random.Generator], bool]] = {
    "ddzero": _trial_ddzero,
    "cup": _trial_cup,
    "mc2-example2": _trial_mc2_example2,
}


def crosscheck_expansion(identity: str, trials: int = DEFAULT_CONFIG.trials, seed: int = DEFAULT_CONFIG.seed) -> Entry:
    if identity not in IDENTITIES:
        raise OracleError(f"unknown identity {identity!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    trial = IDENTITIES[identity]
    bad = [i for i in range(trials) if not trial(rng)]
    logger.info("%s: %d/%d trials agree", identity, trials - len(bad), trials)
    status = Status.PASS if not bad else Status.FAIL
    detail = f"{trials - len(bad)}/{trials} trials agree"
    if bad:
        detail += f"; first disagreement at trial {bad[0]}"
    return Entry(identity, f"symbolic vs direct evaluation, seed {seed}", status, detail)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

AGREEMENT_KS = (5, 6, 7, 8, 9, 10)


def agreement_weights() -> List[Tuple[int, int]]:
    """Rationals in [-8, 2] with denominator at most 2."""
    return [(p, 2) if p % 2 else (p // 2, 1) for p in range(-16, 5)]


def _omega_at(w: DensityWeight, k: int) -> Optional[Cochain2]:
    try:
        return omega(w, k)
    except CatalogError:
        return None


def agreement_entries(config: EngineConfig = DEFAULT_CONFIG, weights: Optional[Sequence[Tuple[int, int]]] = None,
                      ks: Sequence[int] = AGREEMENT_KS) -> List[Entry]:
    """triviality_test against the rank test wherever an Omega exists."""
    s = "oracle-agreement"
    entries = []
    for p, d in weights if weights is not None else agreement_weights():
        w = rational_weight(p, d)
        for k in ks:
            om = _omega_at(w, k)
            if om is None or config.degree_bound < k + 2:
                continue
            symbolic = isinstance(triviality_test(om), Coboundary)
            brute = isinstance(rank_coboundary_test(om, config), Coboundary)
            entries.append(Entry(s, f"Omega({w.label},{w.shift(k).label}) trivial={symbolic}",
                                 Status.PASS if symbolic == brute else Status.FAIL,
                                 "" if symbolic == brute else f"rank test says trivial={brute}"))
    return entries


def sl2_vanishing_entries() -> List[Entry]:
    s = "oracle-agreement"
    w = rational_weight(1, 3)
    K = w.domain
    R, x = poly_ring(K)
    f = DensityElement(x ** 5 + R.one, w)
    entries = []
    for k in (2, 3, 4):
        c = cocycle(w, k)
        ok = all(not evaluate_cochain(c, X, f=f).poly for X in (R.one, x, x ** 2))
        entries.append(Entry(s, f"C(l,l+{k}) vanishes on sl(2) at l={w.label}", Status.PASS if ok else Status.FAIL))
    om = omega(w, 5)
    X, Y = x ** 3 + x, x ** 4
    flip = evaluate_cochain(om, X, Y, f).poly + evaluate_cochain(om, Y, X, f).poly
    entries.append(Entry(s, "Omega5 antisymmetric on concrete inputs", Status.PASS if not flip else Status.FAIL))
    return entries


def oracle_agreement_suite(config: EngineConfig = DEFAULT_CONFIG) -> List[Entry]:
    entries = sl2_vanishing_entries()
    for name in ("ddzero", "cup"):
        entry = crosscheck_expansion(name, config.trials, config.seed)
        entry.suite = "oracle-agreement"
        entries.append(entry)
    entries += agreement_entries(config)
    return entries
