"""Monotone access structures over participants 0..n-1."""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping


def subsets(n: int, sizes: Iterable[int] | None = None):
    for s in (range(n + 1) if sizes is None else sizes):
        for c in itertools.combinations(range(n), s):
            yield c


class AccessStructure:
    """Qualified sets are the supersets of the minimal sets."""

    def __init__(self, n: int, minimal: Iterable[Iterable[int]]):
        mins = sorted({frozenset(m) for m in minimal}, key=lambda s: (len(s), sorted(s)))
        for m in mins:
            if any(not 0 <= i < n for i in m):
                raise ValueError("participant out of range")
        for a, b in itertools.permutations(mins, 2):
            if a < b:
                raise ValueError("minimal sets must form an antichain")
        self.n = n
        self.minimal = tuple(mins)

    def qualified(self, A: Iterable[int]) -> bool:
        A = frozenset(A)
        return any(m <= A for m in self.minimal)

    @classmethod
    def from_predicate(cls, n: int, pred: Callable[[frozenset[int]], bool]) -> "AccessStructure":
        qual = [frozenset(c) for c in subsets(n) if pred(frozenset(c))]
        qs = set(qual)
        for A in qual:
            for i in range(n):
                if i not in A and A | {i} not in qs:
                    raise ValueError("predicate is not monotone")
        minimal = [A for A in qual if not any(A - {i} in qs for i in A)]
        return cls(n, minimal)

    @classmethod
    def threshold(cls, n: int, t: int) -> "AccessStructure":
        return cls(n, itertools.combinations(range(n), t))

    def maximal_blocked(self) -> list[frozenset[int]]:
        blocked = [frozenset(c) for c in subsets(self.n) if not self.qualified(c)]
        bs = set(blocked)
        out = [B for B in blocked if not any(B | {i} in bs for i in range(self.n) if i not in B)]
        return sorted(out, key=lambda s: (sorted(s), len(s)))

    def min_qualified_size(self) -> int:
        return min(len(m) for m in self.minimal)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AccessStructure) and self.n == other.n and set(self.minimal) == set(other.minimal)

    def __repr__(self) -> str:
        return f"AccessStructure({self.n}, {[sorted(m) for m in self.minimal]})"

    def to_json(self) -> dict:
        return {"n": self.n, "minimal": [sorted(m) for m in self.minimal]}

    @classmethod
    def from_json(cls, d: Mapping) -> "AccessStructure":
        return cls(d["n"], d["minimal"])
