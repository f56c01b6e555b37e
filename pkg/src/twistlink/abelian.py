"""Abelianization of group presentations via integer Smith normal form."""
from __future__ import annotations

from typing import NamedTuple

from .errors import PresentationError
from .presentation import GROUP, Presentation

__all__ = ["AbelianInvariants", "abelian_invariants", "relation_matrix", "elementary_divisors"]


class AbelianInvariants(NamedTuple):
    free_rank: int
    torsion: tuple[int, ...]  # invariant factors > 1, each dividing the next

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def relation_matrix(p: Presentation) -> list[list[int]]:
    """Exponent-sum matrix: one row per relation ``lhs = rhs``, one column per generator."""
    n = len(p.generators)
    rows = []
    for lhs, rhs in p.relations:
        row = [0] * n
        for g, e in lhs:
            row[g] += e
        for g, e in rhs:
            row[g] -= e
        rows.append(row)
    return rows


def elementary_divisors(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form, in divisibility order."""
    A = [row[:] for row in matrix if any(row)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]] + \
                    [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    """Free rank and torsion of the abelianized group."""
    if p.flavor != GROUP:
        raise PresentationError("abelian invariants need a group presentation")
    divisors = elementary_divisors(relation_matrix(p))
    rank = len(divisors)
    return AbelianInvariants(len(p.generators) - rank, tuple(d for d in divisors if d > 1))
