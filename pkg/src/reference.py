"""Tabulated omega polynomials and integrability conditions.

Everything here is transcribed, not derived: the deformation engine derives
its own conditions and ``compare_with_reference`` sets them against these
lists restricted to a window. Parameters outside the window count as zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

from sympy import QQ

from catalog import printed_b, printed_c
from scalars import SINGULAR_MINPOLY, ParamPoly, as_rational

if TYPE_CHECKING:
    from deformations import DeformationSpec

OMEGA_GAPS = (5, 6, 7, 8)

# (j, k): the pair t[l, l+j] * omega[l+j, l+j+k] and omega[l, l+k] * t[l+k, l+k+j].
THIRD_ORDER = {
    "thirdk7": ((2, 5), (2, 6), (3, 5)),
    "thirdk9": ((3, 6), (4, 5), (2, 7)),
    "thirdk10": ((2, 8), (3, 7), (4, 6), (5, 5)),
    "thirdk11": ((6, 5), (5, 6), (4, 7), (3, 8)),
    "k12": ((5, 7), (6, 6), (4, 8)),
}


@dataclass(frozen=True)
class TabulatedExample:
    name: str
    n: int
    delta: str
    parameters: int
    l2_blocks: int
    conditions: int


EXAMPLES = (
    TabulatedExample("example1", 4, "generic", 6, 0, 0),
    TabulatedExample("example2", 6, "7", 11, 3, 0),
    TabulatedExample("example3", 7, "generic", 15, 5, 3),
)


def _at(spec: "DeformationSpec", o: int) -> Optional[QQ]:
    return as_rational(spec.value(o))


def _is_singular_root(spec: "DeformationSpec", o: int) -> bool:
    return spec.base.minpoly == SINGULAR_MINPOLY and o == 0


def _q(spec: "DeformationSpec", p, d=1):
    return spec.domain.convert_from(QQ(p, d), QQ)


def _path(spec: "DeformationSpec", *offsets: int) -> ParamPoly:
    """Product t[o0,o1] t[o1,o2] ... along consecutive offsets."""
    acc = ParamPoly.constant(spec.domain, spec.domain.one)
    for a, b in zip(offsets, offsets[1:]):
        acc = acc * spec.t(a, b)
    return acc


def tabulated_abc(spec: "DeformationSpec", o: int) -> Tuple[object, object, object]:
    """(a, b, c) with a*Omega + b*Omega~ = c*dJ8 from the closed forms."""
    K = spec.domain
    v = spec.value(o)
    x = _at(spec, o)
    if x == -3:
        return _q(spec, -1), K.one, K.zero
    den = v ** 3 * 4 + v ** 2 * 24 + v * 17 - 15
    if not den:
        return K.zero, K.one, (v ** 3 * -8 - v ** 2 * 60 - v * 70 + 45) / _q(spec, 210)
    b = printed_b(v, K)
    return K.one, b, printed_c(v, b, K)


def omega(spec: "DeformationSpec", o: int, k: int) -> ParamPoly:
    """omega[o, o+k](t) as tabulated; zero where no formula is given."""
    K = spec.domain
    v = spec.value(o)
    x = _at(spec, o)
    zero = ParamPoly.zero(K)
    if k == 5:
        return (_path(spec, o, o + 2, o + 5).scale(-(v + 4) / _q(spec, 2))
                + _path(spec, o, o + 3, o + 5).scale(v / _q(spec, 2)))
    if k == 6:
        return (_path(spec, o, o + 2, o + 6).scale((v * 2 + 9) / _q(spec, 2))
                + _path(spec, o, o + 3, o + 6).scale(_q(spec, 5, 2))
                - _path(spec, o, o + 4, o + 6).scale((v * 2 + 1) / _q(spec, 2)))
    if k == 7:
        if x == 0:
            return (_path(spec, o, o + 3, o + 7).scale(_q(spec, 11, 10))
                    + _path(spec, o, o + 4, o + 7).scale(_q(spec, 1, 2))
                    + _path(spec, o, o + 5, o + 7).scale(_q(spec, 3))).scale(_q(spec, -1, 7))
        if x == -6:
            return (_path(spec, o, o + 3, o + 7)
                    - _path(spec, o, o + 2, o + 7).scale(_q(spec, 6))
                    + _path(spec, o, o + 4, o + 7).scale(_q(spec, 11, 5))).scale(_q(spec, 1, 14))
        if x == -3:
            return zero
        a, b, c = tabulated_abc(spec, o)
        if b:
            return _path(spec, o, o + 4, o + 7).scale(-c / b)
        return _path(spec, o, o + 3, o + 7).scale(-c / a)
    if k == 8:
        if x == 0:
            return _path(spec, o, o + 5, o + 8).scale(_q(spec, 2, 11))
        if x == -7:
            return _path(spec, o, o + 3, o + 8).scale(_q(spec, 2, 15))
        return zero
    return zero


def tabulated_l2(spec: "DeformationSpec") -> Dict[Tuple[int, int], ParamPoly]:
    """Coefficients of (1/2) omega J_{k+1} with the tabulated weight exclusions."""
    half = _q(spec, 1, 2)
    out = {}
    for o in spec.offsets:
        x = _at(spec, o)
        for k in OMEGA_GAPS:
            if o + k not in spec.offsets:
                continue
            if k == 5 and x in (0, -2, -4):
                continue
            if k == 6 and (x == QQ(-5, 2) or _is_singular_root(spec, o)):
                continue
            if k == 8 and x not in (0, -7):
                continue
            w = omega(spec, o, k)
            if w:
                out[(o, o + k)] = w.scale(half)
    return out


def _second_order(spec: "DeformationSpec") -> List[Tuple[str, ParamPoly]]:
    out: List[Tuple[str, ParamPoly]] = []

    def add(label: str, p: ParamPoly) -> None:
        out.append((label, p))

    for o in spec.offsets:
        x = _at(spec, o)
        singular = _is_singular_root(spec, o)
        if x in (0, -2, -4):
            add("k567", omega(spec, o, 5))
        if x == QQ(-5, 2) or singular:
            add("k567", omega(spec, o, 6))
        if x not in (0, -2, -4, -6):
            a, b, _ = tabulated_abc(spec, o)
            add("k567", _path(spec, o, o + 3, o + 7).scale(b) - _path(spec, o, o + 4, o + 7).scale(a))
        if x == -2:
            add("k567", _path(spec, o, o + 2, o + 7).scale(_q(spec, 10)) - _path(spec, o, o + 3, o + 7)
                - _path(spec, o, o + 4, o + 7).scale(_q(spec, 1, 3)))
        if x == -4:
            add("k567", _path(spec, o, o + 5, o + 7).scale(_q(spec, 10)) + _path(spec, o, o + 3, o + 7)
                + _path(spec, o, o + 4, o + 7).scale(_q(spec, 3)))
        if x not in (0, -3, -4, -7):
            add("k89", _path(spec, o, o + 4, o + 8))
        if x == 0:
            add("k89", _path(spec, o, o + 4, o + 8).scale(_q(spec, 11))
                + _path(spec, o, o + 5, o + 8).scale(_q(spec, 10)))
            add("k89", _path(spec, o, o + 5, o + 9))
        if x == -3:
            add("k89", _path(spec, o, o + 4, o + 8) - _path(spec, o, o + 3, o + 8).scale(_q(spec, 10)))
        if x == -4:
            add("k89", _path(spec, o, o + 4, o + 8) + _path(spec, o, o + 5, o + 8).scale(_q(spec, 10)))
            add("k89", _path(spec, o, o + 4, o + 9) - _path(spec, o, o + 5, o + 9))
        if x == -7:
            add("k89", _path(spec, o, o + 4, o + 8).scale(_q(spec, 11))
                - _path(spec, o, o + 3, o + 8).scale(_q(spec, 10)))
        if x == -8:
            add("k89", _path(spec, o, o + 4, o + 9))
        if singular:
            for gap in (2, 3, 4):
                add("k89", _path(spec, o, o + 6, o + 6 + gap))
                add("k89", _path(spec, o - gap, o, o + 6))
    return out


def _third_order(spec: "DeformationSpec") -> List[Tuple[str, ParamPoly]]:
    out = []
    for label, pairs in THIRD_ORDER.items():
        for j, k in pairs:
            for o in spec.offsets:
                out.append((label, spec.t(o, o + j) * omega(spec, o + j, k)))
                out.append((label, omega(spec, o, k) * spec.t(o + k, o + k + j)))
    return out


def _fourth_order(spec: "DeformationSpec") -> List[Tuple[str, ParamPoly]]:
    out = []
    for o in spec.offsets:
        for i in (5, 6, 7):
            for rest in (5, 6, 7):
                out.append(("fourth", omega(spec, o, i) * omega(spec, o + i, rest)))
    return out


def reference_conditions(spec: "DeformationSpec", order: int) -> List[Tuple[str, ParamPoly]]:
    """Nonzero tabulated generators of one order inside the window, leading coefficient 1."""
    if order == 2:
        raw = _second_order(spec)
    elif order == 3:
        raw = _third_order(spec)
    elif order == 4:
        raw = _fourth_order(spec)
    else:
        raise ValueError(f"no tabulated conditions of order {order}")
    seen: List[ParamPoly] = []
    out = []
    for label, p in raw:
        if not p:
            continue
        p = p.normalized()
        if any(p == q for q in seen):
            continue
        seen.append(p)
        out.append((label, p))
    return out
