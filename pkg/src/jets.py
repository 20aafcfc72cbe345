"""Normal-form multilinear differential expressions.

A JetExpr is a finite sum of monomials X^(a) Y^(b) ... f^(c) over a fixed
tuple of slots, with coefficients in a sympy domain. Slots always appear in
the canonical order X, Y, Z, W, f. Cochains, cup products and coboundaries
are all expanded in this form.
"""
from __future__ import annotations

import logging
import re
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

SLOT_ORDER = ("X", "Y", "Z", "W", "f")
DEFAULT_MAX_ORDER = 16
MAX_ORDER = DEFAULT_MAX_ORDER

Orders = Tuple[int, ...]


class JetError(ValueError):
    pass


class OrderOverflowError(JetError):
    pass


class JetParseError(JetError):
    pass


def set_max_order(n: int) -> None:
    global MAX_ORDER
    if n < 3:
        raise JetError("maximum jet order must be at least 3")
    MAX_ORDER = n


def canonical_slots(slots: Iterable[str]) -> Tuple[str, ...]:
    slots = tuple(slots)
    unknown = [s for s in slots if s not in SLOT_ORDER]
    if unknown:
        raise JetError(f"unknown slot {unknown[0]!r}")
    if len(set(slots)) != len(slots):
        raise JetError(f"repeated slot in {slots}")
    return tuple(sorted(slots, key=SLOT_ORDER.index))


class JetExpr:
    __slots__ = ("slots", "terms", "domain")

    def __init__(self, slots: Sequence[str], terms: Mapping[Orders, object], domain) -> None:
        self.slots = tuple(slots)
        if self.slots != canonical_slots(self.slots):
            raise JetError(f"slots {self.slots} not in canonical order")
        self.domain = domain
        self.terms: Dict[Orders, object] = {}
        for orders, c in terms.items():
            if len(orders) != len(self.slots):
                raise JetError(f"monomial {orders} does not match slots {self.slots}")
            if c:
                top = max(orders, default=0)
                if top > MAX_ORDER:
                    raise OrderOverflowError(f"derivative order {top} exceeds maximum {MAX_ORDER}")
                self.terms[tuple(orders)] = c

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, slots: Sequence[str], domain) -> "JetExpr":
        return cls(canonical_slots(slots), {}, domain)

    @classmethod
    def monomial(cls, domain, coeff=None, **orders: int) -> "JetExpr":
        """JetExpr.monomial(K, c, X=3, f=0) is c * X^(3) f."""
        slots = canonical_slots(orders)
        key = tuple(orders[s] for s in slots)
        return cls(slots, {key: domain.one if coeff is None else coeff}, domain)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "JetExpr") -> None:
        if self.slots != other.slots:
            raise JetError(f"slot mismatch {self.slots} vs {other.slots}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetExpr):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.slots == other.slots and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "JetExpr") -> "JetExpr":
        if not other.terms:
            return self
        if not self.terms:
            return other
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            total = out.get(m)
            total = c if total is None else total + c
            if total:
                out[m] = total
            else:
                out.pop(m, None)
        return JetExpr(self.slots, out, self.domain)

    def __neg__(self) -> "JetExpr":
        return JetExpr(self.slots, {m: -c for m, c in self.terms.items()}, self.domain)

    def __sub__(self, other: "JetExpr") -> "JetExpr":
        return self + (-other)

    def scale(self, c) -> "JetExpr":
        if not c:
            return JetExpr(self.slots, {}, self.domain)
        return JetExpr(self.slots, {m: v * c for m, v in self.terms.items()}, self.domain)

    def __mul__(self, other) -> "JetExpr":
        if isinstance(other, JetExpr):
            return product(self, other)
        return self.scale(other)

    __rmul__ = scale

    def map_coefficients(self, fn, domain) -> "JetExpr":
        return JetExpr(self.slots, {m: fn(c) for m, c in self.terms.items()}, domain)

    # -- inspection -------------------------------------------------------------

    def index(self, slot: str) -> int:
        try:
            return self.slots.index(slot)
        except ValueError:
            raise JetError(f"slot {slot!r} not in {self.slots}") from None

    def coefficient(self, **orders: int):
        key = tuple(orders.get(s, 0) for s in self.slots)
        return self.terms.get(key, self.domain.zero)

    def min_order(self, slot: str) -> Optional[int]:
        i = self.index(slot)
        return min((m[i] for m in self.terms), default=None)

    def sorted_monomials(self) -> List[Orders]:
        """Graded lexicographic, highest first."""
        return sorted(self.terms, key=lambda m: (sum(m), m), reverse=True)

    # -- differential operations ----------------------------------------------

    def derive(self) -> "JetExpr":
        out: Dict[Orders, object] = {}
        for m, c in self.terms.items():
            for i in range(len(m)):
                key = m[:i] + (m[i] + 1,) + m[i + 1:]
                total = out.get(key)
                out[key] = c if total is None else total + c
        return JetExpr(self.slots, out, self.domain)

    def derive_n(self, n: int) -> "JetExpr":
        e = self
        for _ in range(n):
            e = e.derive()
        return e

    def sl2_truncation(self, slot: str) -> "JetExpr":
        """Monomials of order at most 2 in ``slot``; zero iff the expression vanishes on sl(2) there."""
        i = self.index(slot)
        return JetExpr(self.slots, {m: c for m, c in self.terms.items() if m[i] <= 2}, self.domain)

    def rename(self, mapping: Mapping[str, str]) -> "JetExpr":
        """Simultaneous slot renaming."""
        new_names = [mapping.get(s, s) for s in self.slots]
        slots = canonical_slots(new_names)
        perm = [new_names.index(s) for s in slots]
        terms = {tuple(m[p] for p in perm): c for m, c in self.terms.items()}
        return JetExpr(slots, terms, self.domain)

    def swap(self, a: str = "X", b: str = "Y") -> "JetExpr":
        return self.rename({a: b, b: a})

    def antisymmetrize(self, a: str = "X", b: str = "Y") -> "JetExpr":
        return self - self.swap(a, b)

    def is_antisymmetric(self, a: str = "X", b: str = "Y") -> bool:
        return not (self + self.swap(a, b))

    def substitute_slot(self, slot: str, repl: "JetExpr") -> "JetExpr":
        """Replace every slot^(j) by D^j(repl)."""
        i = self.index(slot)
        rest_slots = self.slots[:i] + self.slots[i + 1:]
        clash = set(rest_slots) & set(repl.slots)
        if clash:
            raise JetError(f"substitution would merge slots {sorted(clash)}")
        out_slots = canonical_slots(rest_slots + repl.slots)
        derivs: Dict[int, JetExpr] = {}
        total = JetExpr(out_slots, {}, self.domain)
        for m, c in self.terms.items():
            j = m[i]
            if j not in derivs:
                derivs[j] = repl.derive_n(j)
            rest = JetExpr(rest_slots, {m[:i] + m[i + 1:]: c}, self.domain)
            total = total + product(rest, derivs[j])
        return total

    def compose(self, inner: "JetExpr") -> "JetExpr":
        """self o inner: substitute inner for the density slot f."""
        return self.substitute_slot("f", inner)

    def substitute_bracket(self, slot: str = "Z", left: str = "X", right: str = "Y") -> "JetExpr":
        """Replace ``slot`` by the vector-field bracket left*right' - left'*right."""
        return self.substitute_slot(slot, bracket(left, right, self.domain))

    # -- text ---------------------------------------------------------------------

    def render(self, render_scalar=str) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.sorted_monomials():
            mono = " ".join(f"{s}^({o})" for s, o in zip(self.slots, m))
            parts.append(f"({render_scalar(self.terms[m])}) {mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"JetExpr({self.slots}, {len(self.terms)} terms)"


def product(a: JetExpr, b: JetExpr) -> JetExpr:
    """Product of expressions in disjoint slots."""
    if set(a.slots) & set(b.slots):
        raise JetError(f"product needs disjoint slots, got {a.slots} and {b.slots}")
    slots = canonical_slots(a.slots + b.slots)
    pos_a = [slots.index(s) for s in a.slots]
    pos_b = [slots.index(s) for s in b.slots]
    out: Dict[Orders, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            key = [0] * len(slots)
            for p, o in zip(pos_a, ma):
                key[p] = o
            for p, o in zip(pos_b, mb):
                key[p] = o
            key = tuple(key)
            total = out.get(key)
            c = ca * cb
            out[key] = c if total is None else total + c
    return JetExpr(slots, out, a.domain)


def bracket(left: str, right: str, domain) -> JetExpr:
    return (JetExpr.monomial(domain, **{left: 0, right: 1})
            - JetExpr.monomial(domain, **{left: 1, right: 0}))


_MONO = re.compile(r"([XYZWf])\^\((\d+)\)")


def _split_top_level(text: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            parts.append(text[start:i])
            start = i + 3
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]


def parse_jet(text: str, slots: Sequence[str], domain, parse_scalar) -> JetExpr:
    """Inverse of ``JetExpr.render``; ``parse_scalar`` reads one coefficient."""
    slots = canonical_slots(slots)
    text = text.strip()
    if text == "0":
        return JetExpr(slots, {}, domain)
    total = JetExpr(slots, {}, domain)
    for part in _split_top_level(text):
        if not part.startswith("("):
            raise JetParseError(f"term {part!r} lacks a coefficient")
        depth = 0
        for end, ch in enumerate(part):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                break
        coeff = parse_scalar(part[1:end])
        found = dict((s, int(o)) for s, o in _MONO.findall(part[end + 1:]))
        if set(found) != set(slots):
            raise JetParseError(f"term {part!r} does not use slots {slots}")
        total = total + JetExpr(slots, {tuple(found[s] for s in slots): coeff}, domain)
    return total
