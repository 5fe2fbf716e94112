from __future__ import annotations

import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from lrss.access import AccessStructure
from lrss.galois import field, linearized_eval, rank
from lrss.lrc import LinearCode, LocalityStructure, build_partitioned_lrc, distance_bound, min_distance, random_group_code
from lrss.oracle import INDEPENDENT, enumerate_joint, verdict
from lrss.secret import (
    SchemeParams, audit_gabidulin_security, audit_split_security, build_gabidulin_scheme, build_split_scheme,
    decode, decode_linear, encode, encode_linear, encode_split, isn_locality, isn_scheme, mr_secrecy_range,
    local_access_structure, perfect_local_scheme, rank_audit, repair, repair_linear, scheme_from_json,
    scheme_to_json, shamir, shares_from_json, shares_to_json, subcode_check,
)


@pytest.fixture(scope="module")
def flagship():
    return build_gabidulin_scheme(build_partitioned_lrc(field(11), 8, 6, 3), 5, 1, 8)


@pytest.fixture(scope="module")
def small():
    return build_gabidulin_scheme(build_partitioned_lrc(field(2), 4, 2, 1), 1, 1, 4)


def literal_shares(scheme, secret, randomness):
    """Evaluate the linearized polynomial at the basis points, expand each
    value into base-field digits and encode digit columns with G."""
    E = scheme.field
    base = scheme.payload["base"]
    a = list(randomness) + list(secret)
    vals = [linearized_eval(E, a, E.p ** j) for j in range(base.dim)]
    out = {}
    for i, row in enumerate(base.G):
        digits = [sum(g * E.coeffs(v)[t] for g, v in zip(row, vals)) % E.p for t in range(E.N)]
        out[i] = E.from_coeffs(digits)
    return out


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12), st.integers(1, 12), st.integers(-1, 12))
def test_params_invariants(n, k, l, m, r):
    ok = k >= 1 and 0 <= l < m <= n and (r == -1 or 1 <= r <= n - 1)
    try:
        SchemeParams(n, k, l, m, None if r == -1 else r)
        assert ok
    except ValueError:
        assert not ok


def test_flagship_params(flagship):
    p = flagship.params
    assert (p.n, p.k, p.l, p.m, p.r) == (8, 5, 1, 7, 3)
    assert flagship.field.order == 11 ** 8
    assert flagship.payload["alphas"] == [11 ** j for j in range(6)]


def test_encoding_routes_agree(flagship, small):
    rng = random.Random(3)
    for scheme in (flagship, small):
        E = scheme.field
        for _ in range(5):
            s = [rng.randrange(E.order) for _ in range(scheme.n_secret)]
            r = [rng.randrange(E.order) for _ in range(scheme.n_random)]
            sh = encode(scheme, s, r)
            assert sh == literal_shares(scheme, s, r) == encode_linear(scheme, s, r)


def test_flagship_decode_and_repair(flagship):
    rng = random.Random(4)
    E = flagship.field
    for _ in range(10):
        s = [rng.randrange(E.order) for _ in range(5)]
        sh = encode(flagship, s, [rng.randrange(E.order)])
        for I in itertools.combinations(range(8), 7):
            sub = {i: sh[i] for i in I}
            assert decode(flagship, sub) == s == decode_linear(flagship, sub)
        for i in range(8):
            others = {j: v for j, v in sh.items() if j != i}
            assert repair(flagship, i, others) == sh[i] == repair_linear(flagship, i, others)


def test_flagship_moore_security(flagship):
    for i in range(8):
        ok, info = audit_gabidulin_security(flagship, [i])
        assert ok and info["independent"] == [i]
    ok, _ = audit_gabidulin_security(flagship, [0, 1])
    assert not ok
    # a full group is dependent: only three independent coordinates
    _, info = audit_gabidulin_security(flagship, [0, 1, 2, 3])
    assert len(info["independent"]) == 3


def test_flagship_rank_audit(flagship):
    assert rank_audit(flagship).passed


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.sampled_from(list(itertools.combinations(range(4), 3))))
def test_small_roundtrip(small, s, r, I):
    sh = encode(small, [s], [r])
    assert decode(small, {i: sh[i] for i in I}) == [s]


def test_decode_errors(small):
    sh = encode(small, [7], [3])
    with pytest.raises(ValueError, match="undecodable"):
        decode(small, {0: sh[0], 1: sh[1]})
    bad = dict(sh)
    bad[1] ^= 1
    with pytest.raises(ValueError, match="inconsistent"):
        decode(small, bad)
    with pytest.raises(ValueError, match="incomplete recovery set"):
        repair(small, 0, {2: sh[2], 3: sh[3]})


def test_gabidulin_preconditions():
    base = build_partitioned_lrc(field(2), 4, 2, 1)
    with pytest.raises(ValueError):
        build_gabidulin_scheme(base, 1, 1, 1)
    with pytest.raises(ValueError):
        build_gabidulin_scheme(base, 2, 1, 4)


def test_encode_split_and_audit():
    F = field(5)
    G = [[1, 2, 3], [0, 1, 4], [2, 2, 2]]
    assert encode_split(F, G, [1, 2], [3]) == [(3 + 2 + 6) % 5, (1 + 8) % 5, (6 + 2 + 4) % 5]
    ok, w = audit_split_security(F, G, 1)
    assert not ok and w == (1,)
    assert audit_split_security(F, [[1, 2, 3], [4, 1, 4]], 1) == (True, None)


def test_split_security_matches_rank_definition():
    rng = random.Random(21)
    F = field(3)
    for _ in range(40):
        G = [[rng.randrange(3) for _ in range(3)] for _ in range(4)]
        if rank(F, G) < 3:
            continue
        for l in (1, 2):
            code = LinearCode(F, G)
            scheme = build_split_scheme(code, 3 - l, l, m=4)
            dist = enumerate_joint(scheme)
            oracle = all(verdict(dist, J) == INDEPENDENT for t in range(l + 1) for J in itertools.combinations(range(4), t))
            assert audit_split_security(F, G, l)[0] == oracle


def test_mr_secrecy_range():
    assert mr_secrecy_range(4, 3) == 4
    assert mr_secrecy_range(2, 2) == 3
    assert mr_secrecy_range(1, 2) == 2
    with pytest.raises(ValueError):
        mr_secrecy_range(3, 1)


def test_subcode_equivalence_on_random_codes():
    rng = random.Random(77)
    F = field(13)
    checked = 0
    while checked < 40:
        l = rng.choice([1, 2])
        G = random_group_code(F, 6, 4, 2, rng)
        if rank(F, G) < 4:
            continue
        code = LinearCode(F, G, LocalityStructure.partition(6, 2))
        if min_distance(code) != distance_bound(6, 4, 2):
            continue
        rep = subcode_check(code, l)
        assert rep.in_range and rep.consistent and rep.secure == rep.mr_subcode
        checked += 1


def test_shamir_basic():
    F = field(7)
    sch = shamir(5, 3, F)
    assert (sch.params.k, sch.params.l, sch.params.m, sch.params.r) == (1, 2, 3, 3)
    sh = encode(sch, [4], [1, 6])
    for I in itertools.combinations(range(5), 3):
        assert decode(sch, {i: sh[i] for i in I}) == [4]
    with pytest.raises(ValueError):
        shamir(7, 3, F)


def test_isn_example():
    access = AccessStructure(3, [(0, 1), (1, 2)])
    blocked = access.maximal_blocked()
    assert blocked == [frozenset({0, 2}), frozenset({1})]
    assert isn_locality(0, blocked, 3) == (2,)
    assert isn_locality(1, blocked, 3) is None
    sch = isn_scheme(access, field(5))
    assert sch.params.r is None and (sch.params.l, sch.params.m) == (1, 3)
    sh = encode(sch, [3], [2])
    assert decode(sch, {0: sh[0], 1: sh[1]}) == [3]
    with pytest.raises(ValueError, match="undecodable"):
        decode(sch, {0: sh[0], 2: sh[2]})
    assert repair(sch, 0, {2: sh[2]}) == sh[0]


def test_isn_degenerate():
    with pytest.raises(ValueError):
        isn_scheme(AccessStructure(2, [()]), field(5))


def test_local_access_structure():
    acc = local_access_structure(4, 1, 2)
    assert acc.qualified((0, 2)) and not acc.qualified((0, 1))


def test_perfect_local_small():
    sch, acc = perfect_local_scheme(4, 1, 2, field(2), 2)
    assert (sch.params.k, sch.params.l, sch.params.m, sch.params.r) == (1, 1, 4, 1)
    dist = enumerate_joint(sch)
    for A in itertools.chain.from_iterable(itertools.combinations(range(4), t) for t in range(5)):
        v = verdict(dist, A)
        assert v == ("determined" if acc.qualified(A) else "independent")


def test_perfect_local_preconditions():
    with pytest.raises(ValueError):
        perfect_local_scheme(6, 2, 3, field(2), 4)


def test_scheme_json_roundtrip(flagship, small):
    for sch in (flagship, small, shamir(5, 3, field(7)), isn_scheme(AccessStructure(3, [(0, 1), (1, 2)]), field(5))):
        d = json.loads(json.dumps(scheme_to_json(sch)))
        assert d["format"] == "lrss/1" and set(d["params"]) == {"n", "k", "l", "m", "r"}
        back = scheme_from_json(d)
        assert back.blocks == sch.blocks and back.params == sch.params
        rng = random.Random(1)
        s = [rng.randrange(sch.field.order) for _ in range(sch.n_secret)]
        r = [rng.randrange(sch.field.order) for _ in range(sch.n_random)]
        sh = encode(sch, s, r)
        assert encode(back, s, r) == sh
        sj = json.loads(json.dumps(shares_to_json(sch, sh)))
        assert shares_from_json(back, sj) == sh


def test_shares_json_rejects_bad_length(small):
    with pytest.raises(ValueError):
        shares_from_json(small, {"n": 4, "coords": {"0": [1, 0]}})
    with pytest.raises(ValueError):
        shares_from_json(small, {"n": 5, "coords": {}})
