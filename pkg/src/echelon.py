"""Exact row reduction helpers over any sympy domain."""
from __future__ import annotations

from typing import List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix


def _matrix(rows: Sequence[Sequence], ncols: int, domain) -> DomainMatrix:
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), domain)


def rref_rows(rows: Sequence[Sequence], ncols: int, domain) -> Tuple[List[List], Tuple[int, ...]]:
    """Nonzero rows of the reduced echelon form and the pivot columns."""
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _matrix(rows, ncols, domain).rref()
    out = reduced.to_list()
    return [list(out[i]) for i in range(len(pivots))], tuple(pivots)


def rank(rows: Sequence[Sequence], ncols: int, domain) -> int:
    return len(rref_rows(rows, ncols, domain)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, domain) -> List[List]:
    """Basis of {x : rows @ x = 0}, one free variable set to 1 per vector."""
    if ncols == 0:
        return []
    reduced, pivots = rref_rows(rows, ncols, domain)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [domain.zero] * ncols
        vec[f] = domain.one
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def solve_in_span(target: Sequence, columns: Sequence[Sequence], domain):
    """Coefficients x with sum(x[j] * columns[j]) == target, or None."""
    n = len(target)
    if not columns:
        return [] if all(not v for v in target) else None
    rows = [[columns[j][i] for j in range(len(columns))] + [target[i]] for i in range(n)]
    reduced, pivots = rref_rows(rows, len(columns) + 1, domain)
    if len(columns) in pivots:
        return None
    x = [domain.zero] * len(columns)
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return x
