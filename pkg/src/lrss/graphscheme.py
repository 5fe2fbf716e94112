"""Schemes where each node is repaired from its neighbours in a fixed graph."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .galois import GF, vandermonde
from .lp import maximize
from .secret import SchemeParams, SecretSharingScheme

MAX_N = 20
MAX_LP_N = 14


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    directed: bool = False

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"bad edge {(u, v)}")
            norm.add((u, v) if self.directed else (min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def out(self, i: int) -> set[int]:
        s = {v for u, v in self.edges if u == i}
        if not self.directed:
            s |= {u for u, v in self.edges if v == i}
        return s

    def neighborhood(self, U: Iterable[int]) -> set[int]:
        U = set(U)
        out: set[int] = set()
        for i in U:
            out |= self.out(i)
        return out - U

    def to_json(self) -> dict:
        return {"n": self.n, "directed": self.directed, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, d: Mapping) -> "Graph":
        return cls(d["n"], tuple(tuple(e) for e in d["edges"]), bool(d.get("directed", False)))

    def nx(self):
        g = nx.DiGraph() if self.directed else nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def _is_independent(g: Graph, U: Sequence[int]) -> bool:
    s = set(U)
    return not any(u in s and v in s for u, v in g.edges)


def _is_acyclic(g: Graph, U: Sequence[int]) -> bool:
    s = set(U)
    indeg = {i: 0 for i in s}
    adj: dict[int, list[int]] = {i: [] for i in s}
    for u, v in g.edges:
        if u in s and v in s:
            adj[u].append(v)
            indeg[v] += 1
    stack = [i for i in s if indeg[i] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for v in adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    return seen == len(s)


def repair_free(g: Graph, U: Sequence[int]) -> bool:
    """No node of U can be rebuilt from the others in U alone."""
    return _is_acyclic(g, U) if g.directed else _is_independent(g, U)


def _largest(g: Graph, pred) -> tuple[int, ...]:
    if g.n > MAX_N:
        raise ValueError("graph too large for exhaustive search")
    for size in range(g.n, -1, -1):
        for U in itertools.combinations(range(g.n), size):
            if pred(U):
                return U
    return ()


def max_independent_set(g: Graph) -> tuple[int, ...]:
    if g.directed:
        raise ValueError("independent sets are for undirected graphs")
    return _largest(g, lambda U: _is_independent(g, U))


def max_induced_acyclic(g: Graph) -> tuple[int, ...]:
    if not g.directed:
        raise ValueError("acyclic sets are for directed graphs")
    return _largest(g, lambda U: _is_acyclic(g, U))


def max_repair_free(g: Graph) -> tuple[int, ...]:
    return max_induced_acyclic(g) if g.directed else max_independent_set(g)


def graph_lower_bound_m(g: Graph, k: int, l: int) -> tuple[int, tuple[int, ...], bool]:
    """Fewest shares needed for recovery: returns (bound, extremal set,
    whether the bound is at most n)."""
    if k < 1 or l < 0:
        raise ValueError("need k >= 1 and l >= 0")
    U = _largest(g, lambda U: repair_free(g, U) and len(g.neighborhood(U)) <= l + k - 1)
    bound = k + l + len(U)
    return bound, U, bound <= g.n


def graph_secrecy_bound(g: Graph, l: int) -> int:
    """Largest secret size when every node must be present for recovery."""
    return g.n - len(max_repair_free(g)) - l


def max_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximum matching; ties broken toward matching low vertices to low
    neighbours first."""
    if g.directed:
        raise ValueError("matching is for undirected graphs")
    if g.n > MAX_N:
        raise ValueError("graph too large for exhaustive search")
    adj = [sorted(g.out(i)) for i in range(g.n)]
    memo: dict[int, tuple[int, tuple]] = {}

    def best(mask: int) -> tuple[int, tuple]:
        if mask == 0:
            return 0, ()
        if mask in memo:
            return memo[mask]
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        top: tuple[int, tuple] | None = None
        for u in adj[v]:
            if rest >> u & 1:
                size, edges = best(rest & ~(1 << u))
                if top is None or size + 1 > top[0]:
                    top = (size + 1, ((v, u),) + edges)
        size, edges = best(rest)
        if top is None or size > top[0]:
            top = (size, edges)
        memo[mask] = top
        return top

    return sorted(best((1 << g.n) - 1)[1])


def build_matching_scheme(g: Graph, l: int, F: GF) -> SecretSharingScheme:
    """Matched pairs hold the same coordinate of a Vandermonde encoding of
    (randomness || secret); unmatched nodes hold zero."""
    M = max_matching(g)
    K = len(M)
    if K - l < 1:
        raise ValueError("matching too small for this l")
    if F.order < K:
        raise ValueError("field too small")
    V = vandermonde(F, list(range(K)), K)
    blocks = [[[0] * K] for _ in range(g.n)]
    recovery: list[tuple[int, ...] | None] = [() for _ in range(g.n)]
    for j, (u, v) in enumerate(M):
        blocks[u] = [V[j]]
        blocks[v] = [V[j]]
        recovery[u], recovery[v] = (v,), (u,)
    params = SchemeParams(g.n, K - l, l, g.n, 1)
    return SecretSharingScheme("graph-matching", params, F, blocks, l, K - l, recovery,
                               payload={"graph": g.to_json(), "matching": [list(e) for e in M]})


# --- cycles ---

def _rotate(c: Sequence[int]) -> tuple[int, ...]:
    i = c.index(min(c))
    return tuple(c[i:]) + tuple(c[:i])


def simple_cycles(g: Graph) -> list[tuple[int, ...]]:
    if not g.directed:
        raise ValueError("cycle packing is for directed graphs")
    return sorted({_rotate(c) for c in nx.simple_cycles(g.nx())}, key=lambda c: (c[0], len(c), c))


def max_disjoint_cycles(g: Graph) -> list[tuple[int, ...]]:
    cycles = simple_cycles(g)
    best: list[tuple[int, ...]] = []

    def go(start: int, used: set[int], chosen: list):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for j in range(start, len(cycles)):
            c = cycles[j]
            if not used & set(c):
                chosen.append(c)
                go(j + 1, used | set(c), chosen)
                chosen.pop()

    go(0, set(), [])
    return best


@dataclass
class CyclePacking:
    cycles: list[tuple[int, ...]]
    counts: list[int]
    p: int

    @property
    def value(self) -> Fraction:
        return Fraction(sum(self.counts), self.p)

    def weights(self) -> list[Fraction]:
        return [Fraction(c, self.p) for c in self.counts]

    def to_json(self) -> dict:
        return {"cycles": [list(c) for c in self.cycles], "counts": self.counts, "p": self.p}

    @classmethod
    def from_json(cls, d: Mapping) -> "CyclePacking":
        return cls([tuple(c) for c in d["cycles"]], list(d["counts"]), d["p"])


def integral_packing(g: Graph) -> CyclePacking:
    cyc = max_disjoint_cycles(g)
    return CyclePacking(cyc, [1] * len(cyc), 1)


def fractional_cycle_packing(g: Graph) -> CyclePacking:
    """Optimal vertex-capacitated fractional packing, solved exactly."""
    if g.n > MAX_LP_N:
        raise ValueError("graph too large for exact packing")
    cycles = simple_cycles(g)
    if not cycles:
        return CyclePacking([], [], 1)
    A = [[1 if v in c else 0 for c in cycles] for v in range(g.n)]
    _, x = maximize([1] * len(cycles), A, [1] * g.n)
    keep = [(c, w) for c, w in zip(cycles, x) if w > 0]
    p = lcm(*[w.denominator for _, w in keep])
    return CyclePacking([c for c, _ in keep], [int(w * p) for _, w in keep], p)


def build_cycle_scheme(g: Graph, packing: CyclePacking, l: int, F: GF) -> SecretSharingScheme:
    """Each node keeps p slots. A cycle with count c carries c consecutive
    coordinates of a Vandermonde encoding, copied on every node of the
    cycle, so a node is rebuilt from its successors."""
    p = packing.p
    total = sum(packing.counts)
    n_random = p * l
    n_secret = total - n_random
    if n_secret < 1:
        raise ValueError("packing too small for this l")
    if F.order < total:
        raise ValueError("field too small")
    V = vandermonde(F, list(range(total)), total)
    blocks = [[[0] * total for _ in range(p)] for _ in range(g.n)]
    fill = [0] * g.n
    helpers: list[set[int]] = [set() for _ in range(g.n)]
    order = sorted(zip(packing.cycles, packing.counts), key=lambda t: (min(t[0]), t[0]))
    pos = 0
    edges = set(g.edges)
    for cyc, cnt in order:
        cyc = _rotate(list(cyc))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if (a, b) not in edges:
                raise ValueError(f"{cyc} is not a cycle of the graph")
        for idx, v in enumerate(cyc):
            if fill[v] + cnt > p:
                raise ValueError("packing overloads a node")
            for t in range(cnt):
                blocks[v][fill[v] + t] = list(V[pos + t])
            fill[v] += cnt
            helpers[v].add(cyc[(idx + 1) % len(cyc)])
        pos += cnt
    recovery = [tuple(sorted(h)) for h in helpers]
    r = min(max(1, max(len(h) for h in helpers)), g.n - 1)
    params = SchemeParams(g.n, n_secret, l, g.n, r)
    return SecretSharingScheme("graph-cycle", params, F, blocks, n_random, n_secret, recovery, p,
                               payload={"graph": g.to_json(), "packing": packing.to_json()})
