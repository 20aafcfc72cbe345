"""Exact scalars for the symbol-module engine.

Three layers live here:

- LambdaScalar: elements of the rational function field QQ(l), where ``l``
  stands for the formal weight. Tabulated formulas (transvectant
  coefficients, the (a, b, c) relation, omega polynomials) are written once
  in this field.
- Weight: where a computation happens. Generic weights compute in QQ(l),
  rational weights in QQ, algebraic weights in the quadratic field generated
  by a root of a degree-2 minimal polynomial. ``Weight.specialize`` moves a
  LambdaScalar into the weight's domain.
- ParamPoly: polynomials in the deformation parameters t[p,q] with
  coefficients in a weight domain, plus the rewrite-based reduction used for
  ideal membership.
"""
from __future__ import annotations

import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, field as dc_field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.polyclasses import ANP
from sympy.polys.rings import PolyElement

logger = logging.getLogger(__name__)

LAMBDA_FIELD, lam = field("l", QQ)
LAMBDA_RING = LAMBDA_FIELD.ring
LAMBDA_DOMAIN = LAMBDA_FIELD.to_domain()
LAMBDA_SYMBOL = sympy.Symbol("l")


class ScalarError(ValueError):
    pass


class PoleError(ArithmeticError):
    def __init__(self, detail: str = "") -> None:
        super().__init__("pole at weight" + (f": {detail}" if detail else ""))


class UnsupportedIdealShape(ScalarError):
    def __init__(self, generator: "ParamPoly") -> None:
        super().__init__(f"unsupported ideal shape: {len(generator.terms)} terms")
        self.generator = generator


# ---------------------------------------------------------------------------
# LambdaPoly / LambdaScalar
# ---------------------------------------------------------------------------

def lambda_poly(coeffs: Sequence) -> PolyElement:
    """Polynomial in l from rational coefficients indexed by degree."""
    return LAMBDA_RING.from_dict({(i,): QQ.convert(c) for i, c in enumerate(coeffs) if c})


def _as_lambda_poly(p) -> PolyElement:
    if isinstance(p, PolyElement):
        return p
    if isinstance(p, (list, tuple)):
        return lambda_poly(p)
    return LAMBDA_RING.from_dict({(0,): QQ.convert(p)} if p else {})


def normalize_ratfun(num, den) -> FracElement:
    num, den = _as_lambda_poly(num), _as_lambda_poly(den)
    if not den:
        raise ScalarError("division by zero polynomial")
    return LAMBDA_FIELD.new(num, den)


def rat(p: int, q: int = 1) -> FracElement:
    """Rational constant as a LambdaScalar."""
    if q == 0:
        raise ScalarError("division by zero polynomial")
    return LAMBDA_FIELD.ground_new(QQ(p, q))


def ratfun_parts(s: FracElement) -> Tuple[PolyElement, PolyElement]:
    """Numerator and denominator with a monic denominator."""
    lc = s.denom.LC
    return s.numer.quo_ground(lc), s.denom.quo_ground(lc)


def render_rational(q) -> str:
    q = QQ.convert(q)
    p, d = int(q.numerator), int(q.denominator)
    return f"{p}" if d == 1 else f"{p}/{d}"


def render_lambda(s: FracElement) -> str:
    num, den = ratfun_parts(s)
    if den == LAMBDA_RING.one:
        if num.is_ground:
            return render_rational(num.LC if num else QQ(0))
        return f"({num})"
    return f"({num})/({den})"


def as_rational(x):
    """The rational value of a domain element, or None if it is not constant."""
    if isinstance(x, FracElement):
        if x.numer.is_ground and x.denom.is_ground:
            return QQ(0) if not x.numer else QQ.convert(x.numer.LC) / QQ.convert(x.denom.LC)
        return None
    if isinstance(x, ANP):
        coeffs = x.to_list()
        if len(coeffs) > 1:
            return None
        return QQ.convert(coeffs[0]) if coeffs else QQ(0)
    return QQ.convert(x)


def lift(x, domain):
    """Coerce an int, a rational or a same-domain element into ``domain``."""
    if isinstance(x, QQ.dtype) and domain != QQ:
        return domain.convert_from(x, QQ)
    return domain.convert(x)


def _horner(poly: PolyElement, value, domain):
    acc = domain.zero
    for (e,), c in poly.terms():
        acc += domain.convert_from(c, QQ) * value ** e
    return acc


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------

class WeightKind(Enum):
    GENERIC = "generic"
    RATIONAL = "rational"
    ALGEBRAIC = "algebraic"


def _squarefree_split(n: int) -> Tuple[int, int]:
    """n = s**2 * d with d squarefree."""
    s, d = 1, 1
    for prime, mult in sympy.factorint(n).items():
        s *= prime ** (mult // 2)
        d *= prime ** (mult % 2)
    return s, d


@lru_cache(maxsize=None)
def _algebraic_domain(minpoly: Tuple[int, int, int], branch: str):
    a, b, c = minpoly
    disc = b * b - 4 * a * c
    sign = 1 if branch == "+" else -1
    root = (-b + sign * sympy.sqrt(disc)) / (2 * a)
    return QQ.algebraic_field(root)


@dataclass(frozen=True)
class Weight:
    kind: WeightKind
    rational: Optional[Tuple[int, int]] = None
    minpoly: Optional[Tuple[int, int, int]] = None
    branch: str = "+"

    @classmethod
    def generic(cls) -> "Weight":
        return cls(WeightKind.GENERIC)

    @classmethod
    def of_rational(cls, p: int, q: int = 1) -> "Weight":
        v = QQ(p, q)
        return cls(WeightKind.RATIONAL, rational=(int(v.numerator), int(v.denominator)))

    @classmethod
    def algebraic(cls, coeffs: Sequence[int], branch: str = "+") -> "Weight":
        if len(coeffs) != 3 or coeffs[0] == 0:
            raise ScalarError("algebraic weights need a degree-2 minimal polynomial")
        if branch not in ("+", "-"):
            raise ScalarError(f"unknown branch {branch!r}")
        a, b, c = (int(x) for x in coeffs)
        g = math.gcd(math.gcd(a, b), c)
        if a < 0:
            g = -g
        a, b, c = a // g, b // g, c // g
        disc = b * b - 4 * a * c
        if disc >= 0 and math.isqrt(disc) ** 2 == disc:
            raise ScalarError(f"minimal polynomial {a}l^2+{b}l+{c} is reducible over the rationals")
        if disc < 0:
            raise ScalarError("complex roots are not supported")
        return cls(WeightKind.ALGEBRAIC, minpoly=(a, b, c), branch=branch)

    # -- domain plumbing --------------------------------------------------

    @property
    def is_generic(self) -> bool:
        return self.kind is WeightKind.GENERIC

    @property
    def domain(self):
        if self.kind is WeightKind.GENERIC:
            return LAMBDA_DOMAIN
        if self.kind is WeightKind.RATIONAL:
            return QQ
        return _algebraic_domain(self.minpoly, self.branch)

    @property
    def generator(self):
        if self.kind is WeightKind.GENERIC:
            return lam
        if self.kind is WeightKind.RATIONAL:
            return QQ(*self.rational)
        return self.domain.unit

    def value(self, offset: int = 0):
        return self.generator + self.domain.convert_from(QQ(offset), QQ)

    def const(self, p, q: int = 1):
        return self.domain.convert_from(QQ(p, q) if isinstance(p, int) else QQ.convert(p) / q, QQ)

    def rational_value(self, offset: int = 0):
        if self.kind is WeightKind.RATIONAL:
            return QQ(*self.rational) + offset
        return None

    def minpoly_lambda(self) -> PolyElement:
        a, b, c = self.minpoly
        return lambda_poly([c, b, a])

    def specialize(self, s: FracElement):
        """Move a LambdaScalar into this weight's domain."""
        if self.kind is WeightKind.GENERIC:
            return s
        if self.kind is WeightKind.RATIONAL:
            x = QQ(*self.rational)
            den = _horner(s.denom, x, QQ)
            if not den:
                raise PoleError(f"l = {render_rational(x)}")
            return _horner(s.numer, x, QQ) / den
        m = self.minpoly_lambda()
        num, den = s.numer.rem(m), s.denom.rem(m)
        if not den:
            raise PoleError(self.describe())
        inv, _, g = den.gcdex(m)
        if not g.is_ground:
            raise PoleError(self.describe())
        residue = (num * inv.quo_ground(g.LC)).rem(m)
        return _horner(residue, self.generator, self.domain)

    def at(self, offset: int) -> FracElement:
        """LambdaScalar l + offset, the formal value a tabulated formula sees."""
        return lam + offset

    # -- rendering ----------------------------------------------------------

    @property
    def base_name(self) -> str:
        if self.kind is WeightKind.GENERIC:
            return "l"
        if self.kind is WeightKind.ALGEBRAIC:
            return "a1" if self.branch == "-" else "a2"
        return render_rational(QQ(*self.rational))

    def label(self, offset: int) -> str:
        if self.kind is WeightKind.RATIONAL:
            return render_rational(QQ(*self.rational) + offset)
        if offset == 0:
            return self.base_name
        return f"{self.base_name}{offset:+d}"

    def describe(self) -> str:
        if self.kind is WeightKind.GENERIC:
            return "generic"
        if self.kind is WeightKind.RATIONAL:
            return render_rational(QQ(*self.rational))
        a, b, c = self.minpoly
        return f"alg:{a},{b},{c}:{self.branch}"

    def render(self, x) -> str:
        if self.kind is WeightKind.GENERIC:
            return render_lambda(x)
        if self.kind is WeightKind.RATIONAL:
            return render_rational(x)
        return self._render_algebraic(x)

    def _render_algebraic(self, x) -> str:
        coeffs = [QQ.convert(c) for c in x.to_list()]
        v = coeffs[-2] if len(coeffs) == 2 else QQ(0)
        u = coeffs[-1] if coeffs else QQ(0)
        a, b, c = self.minpoly
        s, d = _squarefree_split(b * b - 4 * a * c)
        sign = 1 if self.branch == "+" else -1
        const = u - v * QQ(b, 2 * a)
        radical = v * QQ(sign * s, 2 * a)
        if not radical:
            return render_rational(const)
        rad_text = f"{render_rational(abs(radical))}*sqrt({d})"
        if not const:
            return rad_text if radical > 0 else f"-{rad_text}"
        op = "+" if radical > 0 else "-"
        return f"{render_rational(const)} {op} {rad_text}"

    def parse_scalar(self, text: str):
        try:
            expr = sympy.sympify(text, locals={"l": LAMBDA_SYMBOL})
            return self.domain.from_sympy(expr)
        except (sympy.SympifyError, TypeError, ValueError) as exc:
            raise ScalarError(f"cannot parse scalar {text!r}") from exc


GENERIC = Weight.generic()
SINGULAR_MINPOLY = (2, 10, 3)

_WEIGHT_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_weight(text: str) -> Tuple[Weight, int]:
    """Parse "generic", "p/q" or "alg:a,b,c:+|-[:offset]" into (base, offset)."""
    text = text.strip()
    if text == "generic":
        return GENERIC, 0
    m = _WEIGHT_RATIONAL.match(text)
    if m:
        q = int(m.group(2) or 1)
        if q == 0:
            raise ScalarError(f"malformed weight {text!r}")
        return Weight.of_rational(int(m.group(1)), q), 0
    if text.startswith("alg:"):
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ScalarError(f"malformed weight {text!r}")
        try:
            coeffs = [int(c) for c in parts[1].split(",")]
            offset = int(parts[3]) if len(parts) == 4 else 0
        except ValueError as exc:
            raise ScalarError(f"malformed weight {text!r}") from exc
        return Weight.algebraic(coeffs, parts[2]), offset
    raise ScalarError(f"malformed weight {text!r}")


# ---------------------------------------------------------------------------
# Deformation parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ParamSymbol:
    """The parameter t[base+source, base+target]."""

    source: int
    target: int
    base: Weight = dc_field(default=GENERIC, compare=False)

    def __post_init__(self) -> None:
        if not 2 <= self.target - self.source <= 6:
            raise ScalarError(f"parameter gap {self.target - self.source} outside 2..6")

    @property
    def gap(self) -> int:
        return self.target - self.source

    def render(self) -> str:
        return f"t[{self.base.label(self.source)},{self.base.label(self.target)}]"

    def latex(self) -> str:
        return f"t_{{{self.base.label(self.source)},{self.base.label(self.target)}}}"


Monomial = Tuple[ParamSymbol, ...]


def monomial_key(m: Monomial):
    """Graded, then lexicographic on (source, target)."""
    return (len(m), tuple((p.source, p.target) for p in m))


def _merge(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def _divide(m: Monomial, d: Monomial) -> Optional[Monomial]:
    rest = Counter(m)
    rest.subtract(Counter(d))
    if any(v < 0 for v in rest.values()):
        return None
    return tuple(sorted(rest.elements()))


def _accumulate(terms: Dict[Monomial, object], m: Monomial, c) -> None:
    total = terms.get(m)
    total = c if total is None else total + c
    if total:
        terms[m] = total
    else:
        terms.pop(m, None)


class ParamPoly:
    """Polynomial in deformation parameters over a weight domain."""

    __slots__ = ("domain", "terms")

    def __init__(self, domain, terms: Optional[Mapping[Monomial, object]] = None) -> None:
        self.domain = domain
        self.terms: Dict[Monomial, object] = {}
        for m, c in (terms or {}).items():
            _accumulate(self.terms, tuple(sorted(m)), c)

    @classmethod
    def zero(cls, domain) -> "ParamPoly":
        return cls(domain)

    @classmethod
    def constant(cls, domain, c) -> "ParamPoly":
        return cls(domain, {(): c})

    @classmethod
    def symbol(cls, domain, p: ParamSymbol) -> "ParamPoly":
        return cls(domain, {(p,): domain.one})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return ParamPoly(self.domain, out)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.domain, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            return self.scale(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _accumulate(out, _merge(m1, m2), c1 * c2)
        return ParamPoly(self.domain, out)

    def scale(self, c) -> "ParamPoly":
        if not c:
            return ParamPoly(self.domain)
        return ParamPoly(self.domain, {m: v * c for m, v in self.terms.items()})

    def monomials(self) -> List[Monomial]:
        return sorted(self.terms, key=monomial_key, reverse=True)

    def leading(self) -> Tuple[Monomial, object]:
        m = max(self.terms, key=monomial_key)
        return m, self.terms[m]

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def variables(self) -> List[ParamSymbol]:
        return sorted({p for m in self.terms for p in m})

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(sorted(m)), self.domain.zero)

    def normalized(self) -> "ParamPoly":
        """Scale so the leading coefficient is 1."""
        if not self.terms:
            return self
        _, lc = self.leading()
        return self.scale(self.domain.one / lc)

    def map_coefficients(self, fn, domain) -> "ParamPoly":
        return ParamPoly(domain, {m: fn(c) for m, c in self.terms.items()})

    def set_zero(self, symbols: Iterable[ParamSymbol]) -> "ParamPoly":
        dead = set(symbols)
        return ParamPoly(self.domain, {m: c for m, c in self.terms.items() if not dead.intersection(m)})

    def evaluate(self, point: Mapping[ParamSymbol, object]):
        total = self.domain.zero
        for m, c in self.terms.items():
            v = c
            for p in m:
                v = v * point[p]
            total += v
        return total

    def render(self, weight: Weight) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            mono = "*".join(p.render() for p in m) or "1"
            if c == self.domain.one:
                parts.append(mono)
            else:
                parts.append(f"({weight.render(c)})*{mono}")
        return " + ".join(parts)

    def latex(self, weight: Weight) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            mono = " ".join(p.latex() for p in m) or "1"
            if c == self.domain.one:
                parts.append(mono)
            else:
                parts.append(r"\left(" + latex_scalar(weight.render(c)) + r"\right)" + mono)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ParamPoly({len(self.terms)} terms)"


def latex_scalar(text: str) -> str:
    """Turn a rendered scalar into LaTeX (fractions, powers, sqrt)."""
    expr = sympy.sympify(text, locals={"l": LAMBDA_SYMBOL})
    return sympy.latex(expr).replace(r"\lambda", "l")


def _rewrite_rule(g: ParamPoly):
    if len(g.terms) == 1:
        (m, c), = g.terms.items()
        return m, c, None, None
    if len(g.terms) == 2:
        big, small = g.monomials()
        return big, g.terms[big], small, -g.terms[small] / g.terms[big]
    raise UnsupportedIdealShape(g)


def parampoly_reduce(
    p: ParamPoly,
    generators: Sequence[ParamPoly],
    trace: Optional[List[Tuple[ParamPoly, int]]] = None,
) -> ParamPoly:
    """Normal form of p modulo monomial and binomial generators.

    Each step rewrites the largest reducible monomial. When ``trace`` is a list,
    it receives (multiplier, generator index) pairs with
    p - result == sum(multiplier * generators[index]).
    """
    rules = [(i, _rewrite_rule(g)) for i, g in enumerate(generators) if g]
    terms = dict(p.terms)
    while True:
        hit = None
        for m in sorted(terms, key=monomial_key, reverse=True):
            for idx, (lhs, lhs_c, rhs, rhs_c) in rules:
                rest = _divide(m, lhs)
                if rest is not None:
                    hit = (m, idx, lhs_c, rest, rhs, rhs_c)
                    break
            if hit:
                break
        if hit is None:
            return ParamPoly(p.domain, terms)
        m, idx, lhs_c, rest, rhs, rhs_c = hit
        c = terms.pop(m)
        if trace is not None:
            trace.append((ParamPoly(p.domain, {rest: c / lhs_c}), idx))
        if rhs is not None:
            _accumulate(terms, _merge(rest, rhs), c * rhs_c)
