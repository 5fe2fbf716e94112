from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from lrss.bounds import coop_general_bound, coop_rate_bound
from lrss.coop import build_repetition_coop, coop_repair, is_r_delta_repairable, repair_set, wrap_secure_coop
from lrss.galois import field
from lrss.lrc import LinearCode, build_partitioned_lrc, verify_locality
from lrss.oracle import INDEPENDENT, DETERMINED, enumerate_joint, verdict
from lrss.secret import decode, encode


def test_repetition_examples():
    code = build_repetition_coop(field(5), 6, 2)
    assert code.dim == 2 and Fraction(code.dim, code.n) == Fraction(1, 3)
    ok, bad, found = is_r_delta_repairable(code, 2, 2)
    assert ok and bad is None and len(found) == 6 + 15
    ok, bad, _ = is_r_delta_repairable(code, 1, 2)
    assert not ok and bad == (0, 3)
    one = build_repetition_coop(field(5), 4, 3)
    assert one.dim == 1 and is_r_delta_repairable(one, 3, 3)[0]
    with pytest.raises(ValueError):
        build_repetition_coop(field(5), 7, 2)


def test_repetition_always_passes_own_delta():
    for delta in (1, 2, 3):
        for groups in (1, 2, 3):
            n = (delta + 1) * groups
            if n > 16:
                continue
            assert is_r_delta_repairable(build_repetition_coop(field(3), n, delta), delta, delta)[0]


def test_repetition_rate_below_limit():
    for r in range(1, 11):
        for delta in range(1, r + 1):
            assert Fraction(1, delta + 1) <= Fraction(r, r + delta)


def test_delta_one_is_locality():
    code = build_partitioned_lrc(field(11), 8, 6, 3)
    assert is_r_delta_repairable(code, 3, 1)[0] == verify_locality(code)[0] is True
    assert not is_r_delta_repairable(code, 2, 1)[0]


def test_helper_set_is_brute_force_minimal():
    rng = random.Random(2)
    F = field(3)
    for _ in range(20):
        G = [[rng.randrange(3) for _ in range(3)] for _ in range(7)]
        try:
            code = LinearCode(F, G)
        except ValueError:
            continue
        for lost in itertools.combinations(range(7), 2):
            R = repair_set(code, lost, 5)
            # brute force: smallest set whose encodings pin down the lost values
            best = None
            others = [j for j in range(7) if j not in lost]
            for size in range(6):
                for S in itertools.combinations(others, size):
                    seen = {}
                    if all(seen.setdefault(tuple(c[j] for j in S), tuple(c[i] for i in lost)) == tuple(c[i] for i in lost)
                           for c in (code.encode(list(m)) for m in itertools.product(range(3), repeat=3))):
                        best = S
                        break
                if best is not None:
                    break
            assert R == best


def test_cutoff():
    with pytest.raises(ValueError):
        is_r_delta_repairable(build_repetition_coop(field(2), 18, 2), 2, 2)


@pytest.fixture(scope="module")
def wrapped():
    return wrap_secure_coop(build_repetition_coop(field(2), 6, 2), 1, 1, 6, 2, 2)


def test_wrap_oracle(wrapped):
    assert wrapped.field.order == 64 and wrapped.tag == "coop"
    dist = enumerate_joint(wrapped)
    for i in range(6):
        assert verdict(dist, [i]) == INDEPENDENT
    assert verdict(dist, [0, 3]) == DETERMINED
    assert Fraction(wrapped.params.k, wrapped.n) <= coop_rate_bound(6, 2, 2, 1)


def test_wrap_repair_exhaustive(wrapped):
    rng = random.Random(8)
    for _ in range(10):
        s, r = rng.randrange(64), rng.randrange(64)
        sh = encode(wrapped, [s], [r])
        for size in (1, 2):
            for lost in itertools.combinations(range(6), size):
                rest = {j: v for j, v in sh.items() if j not in lost}
                assert coop_repair(wrapped, lost, rest) == {i: sh[i] for i in lost}
        assert decode(wrapped, {0: sh[0], 3: sh[3]}) == [s]


def test_wrap_without_randomness():
    sch = wrap_secure_coop(build_repetition_coop(field(2), 6, 2), 2, 0, 6, 2, 2)
    assert sch.n_random == 0
    sh = encode(sch, [5, 9], [])
    assert decode(sch, {1: sh[1], 4: sh[4]}) == [5, 9]


def test_wrap_rejects_bad_code():
    with pytest.raises(ValueError):
        wrap_secure_coop(build_repetition_coop(field(2), 6, 2), 1, 1, 6, 1, 2)


def test_general_limit_on_wrapped(wrapped):
    p = wrapped.params
    if p.m < p.n:
        assert p.k + p.l <= coop_general_bound(p.m, 2, 2)
