"""Cooperative repair: any delta simultaneous failures are rebuilt from at
most r surviving coordinates."""

from __future__ import annotations

import itertools
from typing import Any, Mapping, Sequence

from .galois import GF, combination, rank
from .lrc import LinearCode, LocalityStructure
from .secret import SecretSharingScheme, build_gabidulin_scheme

MAX_N = 16
MAX_DELTA = 3


def _covers(F: GF, code: LinearCode, lost: Sequence[int], R: Sequence[int]) -> bool:
    rows = code.rows(R)
    base = rank(F, rows) if rows else 0
    return all((rank(F, rows + [code.G[i]]) if rows else (1 if any(code.G[i]) else 0)) == base for i in lost)


def repair_set(code: LinearCode, lost: Sequence[int], r: int) -> tuple[int, ...] | None:
    """Lexicographically first smallest helper set for the lost coordinates."""
    F = code.field
    others = [j for j in range(code.n) if j not in set(lost)]
    for size in range(0, r + 1):
        for R in itertools.combinations(others, size):
            if _covers(F, code, lost, R):
                return R
    return None


def is_r_delta_repairable(code: LinearCode, r: int, delta: int) -> tuple[bool, tuple[int, ...] | None, dict]:
    """Exhaustive check over every failure pattern of size 1..delta. Returns
    (ok, failing pattern, helper sets found)."""
    if code.n > MAX_N or delta > MAX_DELTA:
        raise ValueError("instance too large for exhaustive check")
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for size in range(1, delta + 1):
        for lost in itertools.combinations(range(code.n), size):
            R = repair_set(code, lost, r)
            if R is None:
                return False, lost, found
            found[lost] = R
    return True, None, found


def build_repetition_coop(F: GF, n: int, delta: int) -> LinearCode:
    """Each message symbol is stored delta+1 times."""
    if delta < 1 or n % (delta + 1):
        raise ValueError("delta+1 must divide n")
    dim = n // (delta + 1)
    G = [[1 if j == i // (delta + 1) else 0 for j in range(dim)] for i in range(n)]
    return LinearCode(F, G, LocalityStructure.partition(n, delta), delta)


def coop_repair_coefficients(code: LinearCode, lost: Sequence[int], R: Sequence[int]) -> dict[int, dict[int, int]]:
    out = {}
    for i in lost:
        lam = combination(code.field, code.rows(R), code.G[i])
        if lam is None:
            raise ValueError("no local relation")
        out[i] = dict(zip(R, lam))
    return out


def wrap_secure_coop(code: LinearCode, k: int, l: int, N: int, r: int, delta: int) -> SecretSharingScheme:
    """Gabidulin-precoded scheme on a cooperative-repair code."""
    ok, bad, found = is_r_delta_repairable(code, r, delta)
    if not ok:
        raise ValueError(f"code is not ({r},{delta})-repairable: {bad}")
    recovery = [found[(i,)] for i in range(code.n)]
    scheme = build_gabidulin_scheme(code, k, l, N, tag="coop", r=r, recovery=recovery)
    scheme.payload["delta"] = delta
    scheme.payload["coop_r"] = r
    return scheme


def coop_repair(scheme: SecretSharingScheme, lost: Sequence[int], shares: Mapping[int, Any]) -> dict[int, int]:
    """Rebuild several lost shares at once from a helper set."""
    code: LinearCode = scheme.payload["base"]
    R = repair_set(code, lost, scheme.payload.get("coop_r", scheme.params.r))
    if R is None:
        raise ValueError("no local relation")
    if any(j not in shares for j in R):
        raise ValueError("incomplete recovery set")
    E = scheme.field
    out = {}
    for i, lam in coop_repair_coefficients(code, lost, R).items():
        acc = 0
        for j, c in lam.items():
            acc = E.add(acc, E.mul(c, shares[j]))
        out[i] = acc
    return out
