"""Weighted relative cochains: module actions, coboundaries, cup products."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from sympy.polys.rings import ring

from jets import JetExpr
from scalars import Weight

logger = logging.getLogger(__name__)

# Global orientation of the cup product; with -1 the cup of the two k=5
# building blocks reproduces (l+4) Omega_5 = 2 [[C_{l+2,l+5}, C_{l,l+2}]].
CUP_SIGN = -1


class CochainError(ValueError):
    pass


class NotInvariantError(CochainError):
    def __init__(self) -> None:
        super().__init__("not an invariant 0-cochain")


class NonComposableError(CochainError):
    def __init__(self) -> None:
        super().__init__("non-composable cup operands")


@dataclass(frozen=True)
class DensityWeight:
    base: Weight
    offset: int = 0

    @property
    def domain(self):
        return self.base.domain

    @property
    def value(self):
        return self.base.value(self.offset)

    @property
    def label(self) -> str:
        return self.base.label(self.offset)

    def shift(self, n: int) -> "DensityWeight":
        return DensityWeight(self.base, self.offset + n)


def _gap(source: DensityWeight, target: DensityWeight) -> int:
    if source.base != target.base:
        raise CochainError(f"weights {source.label} and {target.label} live over different bases")
    return target.offset - source.offset


class _Cochain:
    SLOTS: tuple = ()

    def __init__(self, source: DensityWeight, target: DensityWeight, body: JetExpr) -> None:
        self.k = _gap(source, target)
        if body and body.slots != self.SLOTS:
            raise CochainError(f"{type(self).__name__} body must use slots {self.SLOTS}")
        if not body:
            body = JetExpr(self.SLOTS, {}, source.domain)
        self.source = source
        self.target = target
        self.body = body

    @property
    def domain(self):
        return self.source.domain

    @property
    def base(self) -> Weight:
        return self.source.base

    def _like(self, body: JetExpr):
        return type(self)(self.source, self.target, body)

    def _same_shape(self, other) -> None:
        if type(other) is not type(self) or (other.source, other.target) != (self.source, self.target):
            raise CochainError("cochains differ in shape or weights")

    def __add__(self, other):
        self._same_shape(other)
        return self._like(self.body + other.body)

    def __sub__(self, other):
        self._same_shape(other)
        return self._like(self.body - other.body)

    def __neg__(self):
        return self._like(-self.body)

    def scale(self, c):
        return self._like(self.body.scale(c))

    def __bool__(self) -> bool:
        return bool(self.body)

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Cochain):
            return NotImplemented
        return (type(self) is type(other) and self.source == other.source
                and self.target == other.target and self.body == other.body)

    __hash__ = None  # type: ignore[assignment]

    def render(self) -> str:
        return self.body.render(self.base.render)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.source.label} -> {self.target.label}, {len(self.body.terms)} terms)"


class Cochain1(_Cochain):
    """Map Vect -> D(source, target); body in slots (X, f)."""

    SLOTS = ("X", "f")

    @classmethod
    def from_coefficients(cls, source: DensityWeight, target: DensityWeight, coeffs) -> "Cochain1":
        """coeffs maps (X-order, f-order) to a scalar in the weight domain."""
        return cls(source, target, JetExpr(cls.SLOTS, dict(coeffs), source.domain))

    def is_relative(self) -> bool:
        return not self.body.sl2_truncation("X") and not invariance_defect(self)


class Cochain2(_Cochain):
    """Antisymmetric map Vect x Vect -> D(source, target); body in slots (X, Y, f)."""

    SLOTS = ("X", "Y", "f")

    def is_relative(self) -> bool:
        return not self.body.sl2_truncation("X") and not self.body.sl2_truncation("Y")


class Cochain3Defect(_Cochain):
    SLOTS = ("X", "Y", "Z", "f")


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def density_action(weight: DensityWeight, vslot: str = "X") -> JetExpr:
    """L_V(f) = V f' + weight V' f."""
    K = weight.domain
    return (JetExpr.monomial(K, **{vslot: 0, "f": 1})
            + JetExpr.monomial(K, weight.value, **{vslot: 1, "f": 0}))


def operator_action(op: JetExpr, source: DensityWeight, target: DensityWeight, vslot: str = "X") -> JetExpr:
    """V acting on an operator D(source, target): L_V^target o op - op o L_V^source."""
    return density_action(target, vslot).compose(op) - op.compose(density_action(source, vslot))


@lru_cache(maxsize=None)
def poly_ring(domain):
    R, x = ring("x", domain)
    return R, x


def lie_density(X, f, weight: DensityWeight):
    """Concrete L_X f = X f' + weight X' f for polynomials in ring("x", domain)."""
    R, x = poly_ring(weight.domain)
    return X * f.diff(x) + X.diff(x) * f * weight.value


# ---------------------------------------------------------------------------
# coboundaries
# ---------------------------------------------------------------------------

def coboundary0(op: JetExpr, source: DensityWeight, target: DensityWeight) -> Cochain1:
    """X -> X.op for an sl(2)-invariant operator op in the slot f alone."""
    if op.slots != ("f",):
        raise CochainError("0-cochains are operators in the slot f alone")
    body = operator_action(op, source, target, "X") if op else JetExpr(("X", "f"), {}, source.domain)
    if body.sl2_truncation("X"):
        raise NotInvariantError()
    return Cochain1(source, target, body)


def coboundary1(b: Cochain1) -> Cochain2:
    """(X, Y) -> X.b(Y) - Y.b(X) - b([X, Y])."""
    on_y = b.body.rename({"X": "Y"})
    act = operator_action(on_y, b.source, b.target, "X")
    on_bracket = b.body.rename({"X": "Z"}).substitute_bracket("Z", "X", "Y")
    return Cochain2(b.source, b.target, act - act.swap("X", "Y") - on_bracket)


def _cycle(e: JetExpr) -> JetExpr:
    return e.rename({"X": "Y", "Y": "Z", "Z": "X"})


def cocycle2_defect(omega: Cochain2) -> Cochain3Defect:
    """Cyclic sum over (X, Y, Z) of X.omega(Y, Z) - omega([X, Y], Z)."""
    on_yz = omega.body.rename({"X": "Y", "Y": "Z"})
    act = operator_action(on_yz, omega.source, omega.target, "X")
    on_bracket = omega.body.rename({"X": "W", "Y": "Z"}).substitute_bracket("W", "X", "Y")
    term = act - on_bracket
    once = _cycle(term)
    return Cochain3Defect(omega.source, omega.target, term + once + _cycle(once))


def invariance_defect(c) -> JetExpr:
    """Order <= 2 X-truncation of (L_X c); zero iff c is sl(2)-invariant."""
    if isinstance(c, Cochain1):
        act = operator_action(c.body.rename({"X": "Y"}), c.source, c.target, "X")
        on_bracket = c.body.rename({"X": "Z"}).substitute_bracket("Z", "X", "Y")
        return (act - on_bracket).sl2_truncation("X")
    if isinstance(c, Cochain2):
        act = operator_action(c.body.rename({"X": "Y", "Y": "Z"}), c.source, c.target, "X")
        first = c.body.rename({"X": "W", "Y": "Z"}).substitute_bracket("W", "X", "Y")
        second = c.body.rename({"X": "Y", "Y": "W"}).substitute_bracket("W", "X", "Z")
        return (act - first - second).sl2_truncation("X")
    raise CochainError(f"no invariance test for {type(c).__name__}")


# ---------------------------------------------------------------------------
# cup product
# ---------------------------------------------------------------------------

def cup(c1: Cochain1, c2: Cochain1) -> Cochain2:
    """Graded commutator pairing of two composable 1-cochains.

    The operand whose source is the other's target acts last; the result runs
    from the inner source to the outer target and is antisymmetric.
    """
    if c2.target == c1.source:
        outer, inner = c1, c2
    elif c1.target == c2.source:
        outer, inner = c2, c1
    else:
        raise NonComposableError()
    if not outer.body or not inner.body:
        return Cochain2(inner.source, outer.target, JetExpr(Cochain2.SLOTS, {}, inner.domain))
    xy = outer.body.compose(inner.body.rename({"X": "Y"}))
    yx = outer.body.rename({"X": "Y"}).compose(inner.body)
    body = (xy - yx).scale(CUP_SIGN)
    return Cochain2(inner.source, outer.target, body)
