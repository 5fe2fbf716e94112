"""Secure locally repairable codes from random linear network coding on a
layered multicast network."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from .galois import GF, Mat, rank
from .lrc import LinearCode, LocalityStructure
from .secret import SecretSharingScheme, build_split_scheme

MAX_EAVES_L = 4
MAX_EAVES_N = 12

SOURCE = ("X",)


@dataclass
class FlowNetwork:
    n: int
    k0: int
    m: int
    r: int
    graph: nx.DiGraph
    sinks: list[tuple[int, ...]]

    @property
    def groups(self) -> list[tuple[int, ...]]:
        return [tuple(range(j, j + self.r + 1)) for j in range(0, self.n, self.r + 1)]

    def symbol_owner(self, j: int) -> int:
        """Intermediate node receiving source symbol j (0-based)."""
        return j % self.r

    def copy(self) -> "FlowNetwork":
        return FlowNetwork(self.n, self.k0, self.m, self.r, self.graph.copy(), list(self.sinks))


def build_flow_graph(n: int, k0: int, m: int, r: int) -> FlowNetwork:
    """Source -> r intermediate nodes (k0/r symbols each) -> one node per
    group (unit edges from every intermediate node) -> the r+1 storage nodes
    of the group (capacity r) -> unit storage edge -> one collector per
    m-subset of storage nodes."""
    if r < 1 or n % (r + 1) or k0 % r:
        raise ValueError("need (r+1) | n and r | k0")
    if m != k0 + k0 // r - 1:
        raise ValueError("need m = k0 + k0/r - 1")
    if not 1 <= k0 or m > n:
        raise ValueError("need 1 <= k0 and m <= n")
    g = nx.DiGraph()
    for nu in range(r):
        g.add_edge(SOURCE, ("F", nu), capacity=k0 // r)
        for rho in range(n // (r + 1)):
            g.add_edge(("F", nu), ("G", rho), capacity=1)
    for i in range(n):
        g.add_edge(("G", i // (r + 1)), ("Yin", i), capacity=r)
        g.add_edge(("Yin", i), ("Yout", i), capacity=1)
    sinks = list(itertools.combinations(range(n), m))
    for mu, I in enumerate(sinks):
        for i in I:
            g.add_edge(("Yout", i), ("DC", mu), capacity=1)
    return FlowNetwork(n, k0, m, r, g, sinks)


def min_cut(net: FlowNetwork, sink) -> int:
    return nx.maximum_flow_value(net.graph, SOURCE, sink, flow_func=edmonds_karp)


def verify_multicast_capacity(net: FlowNetwork) -> tuple[bool, list[int]]:
    cuts = [min_cut(net, ("DC", mu)) for mu in range(len(net.sinks))]
    return all(c == net.k0 for c in cuts), cuts


def set_capacity(net: FlowNetwork, u, v, cap: int) -> FlowNetwork:
    out = net.copy()
    if not out.graph.has_edge(u, v):
        raise ValueError("no such edge")
    out.graph[u][v]["capacity"] = cap
    return out


def eavesdropper_min_cut(net: FlowNetwork, l: int, watched: tuple[int, ...]) -> int:
    """Flow from the first l source symbols to a node watching the given
    storage nodes."""
    g = net.graph.copy()
    for nu in range(net.r):
        g[SOURCE][("F", nu)]["capacity"] = sum(1 for j in range(l) if j % net.r == nu)
    for i in watched:
        g.add_edge(("Yout", i), ("ED",), capacity=1)
    return nx.maximum_flow_value(g, SOURCE, ("ED",), flow_func=edmonds_karp)


def eavesdropper_sets(net: FlowNetwork, l: int) -> list[tuple[int, ...]]:
    """l-subsets of storage nodes meeting each group in at most r nodes."""
    if l > MAX_EAVES_L or net.n > MAX_EAVES_N:
        raise ValueError("too many eavesdropper sets")
    return [W for W in itertools.combinations(range(net.n), l)
            if all(len(set(W) & set(g)) <= net.r for g in net.groups)]


@dataclass
class LncAssignment:
    field: GF
    l: int
    forward: dict[tuple[int, int], list[int]]  # (nu, rho) -> combination of nu's symbols
    storage: list[list[int]]  # per storage node: combination of its group's r inputs
    A: Mat  # n x k0 global encoding
    attempts: int


def _global_matrix(net: FlowNetwork, F: GF, forward, storage) -> Mat:
    k0, r = net.k0, net.r
    A = []
    for i in range(net.n):
        rho = i // (r + 1)
        row = [0] * k0
        for nu in range(r):
            syms = [j for j in range(k0) if j % r == nu]
            for c, j in zip(forward[(nu, rho)], syms):
                row[j] = F.add(row[j], F.mul(storage[i][nu], c))
        A.append(row)
    return A


def check_assignment(net: FlowNetwork, F: GF, A: Mat, storage: list[list[int]], l: int) -> tuple[bool, str | None]:
    for I in net.sinks:
        if rank(F, [A[i] for i in I]) < net.k0:
            return False, f"collector {I}"
    for i in range(net.n):
        g = net.groups[i // (net.r + 1)]
        if rank(F, [storage[j] for j in g if j != i]) < net.r:
            return False, f"local matrix {i}"
    for W in eavesdropper_sets(net, l):
        if rank(F, [A[i][:l] for i in W]) < l:
            return False, f"eavesdropper {W}"
    return True, None


def sample_lnc(net: FlowNetwork, F: GF, l: int, seed: int, max_retries: int = 64) -> LncAssignment:
    """Draw uniform local coefficients until every collector decodes, every
    node is locally repairable and every admissible eavesdropper set sees
    independent randomness."""
    if not 0 <= l < net.k0:
        raise ValueError("need 0 <= l < k0")
    ok, _ = verify_multicast_capacity(net)
    if not ok:
        raise ValueError("network does not support the multicast rate")
    rng = random.Random(seed)
    per = net.k0 // net.r
    for attempt in range(1, max_retries + 1):
        forward = {(nu, rho): [rng.randrange(F.order) for _ in range(per)]
                   for nu in range(net.r) for rho in range(net.n // (net.r + 1))}
        storage = [[rng.randrange(F.order) for _ in range(net.r)] for _ in range(net.n)]
        A = _global_matrix(net, F, forward, storage)
        if check_assignment(net, F, A, storage, l)[0]:
            return LncAssignment(F, l, forward, storage, A, attempt)
    raise ValueError("sampling failed, raise field size")


def lnc_scheme(net: FlowNetwork, assignment: LncAssignment) -> SecretSharingScheme:
    """The first l source symbols become randomness, the rest the secret."""
    code = LinearCode(assignment.field, assignment.A, LocalityStructure.partition(net.n, net.r))
    return build_split_scheme(code, net.k0 - assignment.l, assignment.l, tag="lnc", m=net.m)
