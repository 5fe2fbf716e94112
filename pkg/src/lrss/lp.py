"""Exact simplex method over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, list[Fraction]]:
    """Maximize c.x subject to A x <= b, x >= 0, for b >= 0.

    Tableau simplex with Bland's rule, so it terminates without cycling.
    """
    m, n = len(A), len(c)
    if any(Fraction(bi) < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative")
    T = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(bi)]
         for i, (row, bi) in enumerate(zip(A, b))]
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise ValueError("unbounded")
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, T[leave])]
        basis[leave] = enter
    x = [Fraction(0)] * n
    for i, v in enumerate(basis):
        if v < n:
            x[v] = T[i][-1]
    return obj[-1], x
