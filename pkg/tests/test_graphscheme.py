from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from lrss.galois import field
from lrss.graphscheme import (
    CyclePacking, Graph, build_cycle_scheme, build_matching_scheme, fractional_cycle_packing, graph_lower_bound_m,
    graph_secrecy_bound, integral_packing, max_disjoint_cycles, max_independent_set, max_induced_acyclic,
    max_matching, simple_cycles,
)
from lrss.lp import maximize
from lrss.oracle import DETERMINED, INDEPENDENT, enumerate_joint, is_function_of, verdict

C4 = Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))
STAR = Graph(4, ((0, 1), (0, 2), (0, 3)))
P5 = Graph(5, ((0, 1), (1, 2), (2, 3), (3, 4)))
DC4 = Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0)), True)
TWO_2CYCLES = Graph(4, ((0, 1), (1, 0), (2, 3), (3, 2)), True)
BI_TRIANGLE = Graph(3, ((0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)), True)


def complete(n):
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def random_graph(rng, n, directed, p=0.4):
    pairs = itertools.permutations(range(n), 2) if directed else itertools.combinations(range(n), 2)
    return Graph(n, tuple(e for e in pairs if rng.random() < p), directed)


def lp_vertex_oracle(c, A, b):
    """Best objective over all basic feasible points, found by solving every
    square subsystem of tight constraints."""
    n = len(c)
    rows = [(list(map(Fraction, r)), Fraction(bi)) for r, bi in zip(A, b)]
    rows += [([Fraction(int(i == j)) for j in range(n)], Fraction(0)) for i in range(n)]
    best = None
    for tight in itertools.combinations(range(len(rows)), n):
        M = [list(rows[i][0]) + [rows[i][1]] for i in tight]
        ok = True
        for col in range(n):
            piv = next((r for r in range(col, n) if M[r][col] != 0), None)
            if piv is None:
                ok = False
                break
            M[col], M[piv] = M[piv], M[col]
            M[col] = [x / M[col][col] for x in M[col]]
            for r in range(n):
                if r != col and M[r][col] != 0:
                    f = M[r][col]
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
        if not ok:
            continue
        x = [M[i][n] for i in range(n)]
        if all(v >= 0 for v in x) and all(sum(a * v for a, v in zip(r, x)) <= bi for r, bi in rows[:len(A)]):
            val = sum(ci * v for ci, v in zip(c, x))
            best = val if best is None else max(best, val)
    return best


def test_examples_repair_free_sets():
    assert len(max_independent_set(C4)) == 2
    assert len(max_induced_acyclic(DC4)) == 3
    for n in range(1, 7):
        assert len(max_independent_set(complete(n))) == 1


def test_repair_free_sets_match_networkx():
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 8), False)
        comp = nx.complement(g.nx())
        assert len(max_independent_set(g)) == max(len(c) for c in nx.find_cliques(comp))
        dg = random_graph(rng, rng.randint(1, 7), True)
        best = max(len(U) for s in range(dg.n + 1) for U in itertools.combinations(range(dg.n), s)
                   if nx.is_directed_acyclic_graph(dg.nx().subgraph(U)))
        assert len(max_induced_acyclic(dg)) == best


def test_lower_bound_examples():
    bound, U, feasible = graph_lower_bound_m(TWO_2CYCLES, 1, 1)
    assert bound == 3 and len(U) == 1 and feasible
    bound, U, _ = graph_lower_bound_m(complete(4), 1, 0)
    assert U == () and bound == 1
    bound, U, feasible = graph_lower_bound_m(Graph(6, tuple((i, (i + 1) % 6) for i in range(6)), True), 2, 0)
    assert len(U) == 5 and bound == 7 and not feasible


def test_secrecy_bound_examples():
    assert graph_secrecy_bound(C4, 0) == 2
    assert graph_secrecy_bound(DC4, 0) == 1
    for n in range(2, 7):
        for l in range(n - 1):
            assert graph_secrecy_bound(complete(n), l) == n - 1 - l


def test_matching_examples():
    assert len(max_matching(C4)) == 2
    assert len(max_matching(STAR)) == 1
    assert len(max_matching(P5)) == 2
    with pytest.raises(ValueError):
        max_matching(DC4)


def test_matching_matches_networkx():
    rng = random.Random(11)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 12), False)
        M = max_matching(g)
        assert len(M) == len(nx.max_weight_matching(g.nx(), maxcardinality=True))
        used = [v for e in M for v in e]
        assert len(used) == len(set(used)) and all(e in g.edges for e in M)


def test_matching_scheme_c4():
    F = field(5)
    sch = build_matching_scheme(C4, 0, F)
    assert sch.params.k == 2 == graph_secrecy_bound(C4, 0)
    sch = build_matching_scheme(C4, 1, F)
    assert sch.params.k == 1
    dist = enumerate_joint(sch)
    for i in range(4):
        assert verdict(dist, [i]) == INDEPENDENT
        assert is_function_of(dist, i, sch.recovery[i])
    assert verdict(dist, range(4)) == DETERMINED
    with pytest.raises(ValueError):
        build_matching_scheme(Graph(3, ()), 0, F)


def test_matching_scheme_invariants():
    rng = random.Random(5)
    F = field(7)
    for _ in range(25):
        g = random_graph(rng, rng.randint(2, 9), False, 0.5)
        K = len(max_matching(g))
        U = max_independent_set(g)
        for l in range(K):
            sch = build_matching_scheme(g, l, F)
            assert sch.params.k == K - l >= Fraction(g.n - len(U), 2) - l
            assert sch.params.k <= graph_secrecy_bound(g, l)


def test_cycle_enumeration():
    assert simple_cycles(TWO_2CYCLES) == [(0, 1), (2, 3)]
    assert simple_cycles(DC4) == [(0, 1, 2, 3)]
    assert len(simple_cycles(BI_TRIANGLE)) == 5


def test_packing_examples():
    assert len(max_disjoint_cycles(TWO_2CYCLES)) == 2
    frac = fractional_cycle_packing(TWO_2CYCLES)
    assert frac.value == 2 and frac.p == 1
    assert integral_packing(DC4).value == 1 == fractional_cycle_packing(DC4).value
    assert integral_packing(BI_TRIANGLE).value == 1
    frac = fractional_cycle_packing(BI_TRIANGLE)
    assert frac.value == Fraction(3, 2) and frac.p == 2
    # two triangles sharing vertex 0: the shared vertex caps both
    bowtie = Graph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)), True)
    assert integral_packing(bowtie).value == 1 == fractional_cycle_packing(bowtie).value


def test_lp_matches_vertex_oracle():
    rng = random.Random(17)
    for _ in range(40):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)]
        A.append([1] * n)
        b = [rng.randint(0, 5) for _ in range(m)] + [6]
        c = [rng.randint(-2, 4) for _ in range(n)]
        val, x = maximize(c, A, b)
        assert val == lp_vertex_oracle(c, A, b)
        assert all(v >= 0 for v in x)
        assert all(sum(a * v for a, v in zip(r, x)) <= bi for r, bi in zip(A, b))


def test_packing_lp_matches_oracle_and_dominates_integral():
    rng = random.Random(23)
    for _ in range(15):
        g = random_graph(rng, rng.randint(2, 6), True, 0.35)
        cyc = simple_cycles(g)
        frac = fractional_cycle_packing(g)
        integ = integral_packing(g)
        assert frac.value >= integ.value
        if cyc and len(cyc) <= 8:
            A = [[1 if v in c else 0 for c in cyc] for v in range(g.n)]
            assert frac.value == lp_vertex_oracle([1] * len(cyc), A, [1] * g.n)
        load = [sum(cnt for c, cnt in zip(frac.cycles, frac.counts) if v in c) for v in range(g.n)]
        assert max(load, default=0) <= frac.p
        verts = [v for c in cyc for v in c]
        if len(verts) == len(set(verts)):
            assert frac.value == integ.value


def test_cycle_scheme_two_2cycles():
    sch = build_cycle_scheme(TWO_2CYCLES, integral_packing(TWO_2CYCLES), 1, field(5))
    assert sch.params.k == 1 and sch.symbols_per_share == 1
    dist = enumerate_joint(sch)
    for i in range(4):
        assert verdict(dist, [i]) == INDEPENDENT
        assert is_function_of(dist, i, sch.recovery[i])
    assert verdict(dist, range(4)) == DETERMINED


def test_cycle_scheme_single_cycle():
    sch = build_cycle_scheme(DC4, integral_packing(DC4), 0, field(5))
    dist = enumerate_joint(sch)
    assert sch.params.k == 1
    for i in range(4):
        assert verdict(dist, [i]) == DETERMINED


def test_cycle_scheme_fractional_triangle():
    packing = fractional_cycle_packing(BI_TRIANGLE)
    sch = build_cycle_scheme(BI_TRIANGLE, packing, 0, field(5))
    assert sch.symbols_per_share == 2 and sch.n_secret == 3
    dist = enumerate_joint(sch)
    for i in range(3):
        assert is_function_of(dist, i, sch.recovery[i])
    assert verdict(dist, range(3)) == DETERMINED
    sch1 = build_cycle_scheme(BI_TRIANGLE, packing, 1, field(5))
    dist1 = enumerate_joint(sch1)
    for i in range(3):
        assert verdict(dist1, [i]) == INDEPENDENT


def test_cycle_scheme_rejects_overload():
    bad = CyclePacking([(0, 1), (0, 2)], [1, 1], 1)
    with pytest.raises(ValueError, match="overloads"):
        build_cycle_scheme(BI_TRIANGLE, bad, 0, field(5))
    with pytest.raises(ValueError):
        build_cycle_scheme(DC4, integral_packing(DC4), 1, field(5))


def test_graph_json():
    for g in (C4, DC4):
        assert Graph.from_json(g.to_json()) == g
    pk = fractional_cycle_packing(BI_TRIANGLE)
    assert CyclePacking.from_json(pk.to_json()) == pk
