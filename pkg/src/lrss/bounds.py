"""Closed-form limits relating share counts, secret size and locality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .lrc import LocalityStructure


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass
class BoundReport:
    name: str
    inputs: dict[str, Any]
    value: Any

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, Fraction):
            v = v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        elif isinstance(v, tuple):
            v = [str(x) if isinstance(x, Fraction) else x for x in v]
        return {"name": self.name, "inputs": self.inputs, "value": v}


def locality_distance_bound(n: int, k: int, r: int) -> int:
    """Largest possible minimum distance of a dimension-k code with locality r."""
    if not (1 <= k <= n and r >= 1):
        raise ValueError("need 1 <= k <= n and r >= 1")
    return n - k - _ceil_div(k, r) + 2


def naive_secrecy_bound(m: int, l: int, r: int) -> int:
    """Largest k from deleting the eavesdropped shares and applying the
    distance limit to what is left."""
    _check(m, l, r)
    return m - l - (m - l) // (r + 1)


def secrecy_bound(m: int, l: int, r: int) -> int:
    """Largest k with k + l <= m - floor(m/(r+1))."""
    _check(m, l, r)
    return m - m // (r + 1) - l


def min_m(k: int, l: int, r: int) -> int:
    """Fewest shares that can ever recover a k-symbol secret with l
    symbols of randomness under locality r."""
    if k < 1 or l < 0 or r < 1:
        raise ValueError("need k >= 1, l >= 0, r >= 1")
    x = k + l
    return x + _ceil_div(x, r) - 1


def roundtrip_claim(x: int, r: int) -> tuple[int, int, bool]:
    """y = x + ceil(x/r) - 1 and its inverse x' = y - floor(y/(r+1))."""
    if x < 1 or r < 1:
        raise ValueError("need x >= 1 and r >= 1")
    y = x + _ceil_div(x, r) - 1
    back = y - y // (r + 1)
    return y, back, back == x


def _check(m: int, l: int, r: int) -> None:
    if not (0 <= l < m and r >= 1):
        raise ValueError("need 0 <= l < m and r >= 1")


def construct_M(locality: LocalityStructure, m: int) -> tuple[list[int], list[int], list[int]]:
    """Greedy m-set built from closed recovery sets, the coordinates whose
    closed set lies inside it, and the subset left after dropping one
    coordinate from every fully contained set."""
    n = locality.n
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    M: set[int] = set()

    def next_t() -> int:
        return min(i for i in range(n) if i not in M)

    t = next_t()
    while len(M | locality.closure(t)) < m:
        M |= locality.closure(t)
        t = next_t()
    if len(M | locality.closure(t)) <= m:
        M |= locality.closure(t)
    else:
        rest = [i for i in range(n) if i not in M]
        M |= set(rest[:m - len(M)])
    covered = sorted(i for i in M if locality.closure(i) <= M)
    dropped: set[int] = set()
    seen: set[frozenset[int]] = set()
    for i in sorted(covered, reverse=True):
        lam = locality.closure(i)
        if lam not in seen and not (lam & dropped):
            seen.add(lam)
            dropped.add(i)
    return sorted(M), covered, sorted(M - dropped)


def coop_rate_bound(n: int, r: int, delta: int, l: int) -> Fraction:
    """Rate limit k/n for cooperative (r, delta) repair with l eavesdroppers."""
    if n < 1 or r < 1 or delta < 1 or l < 0:
        raise ValueError("bad parameters")
    return Fraction(r, r + delta) - Fraction(l, n)


def coop_general_bound(m: int, r: int, delta: int) -> int:
    """Limit on k + l for cooperative (r, delta) repair from m shares."""
    if m < 1 or r < 1 or delta < 1:
        raise ValueError("bad parameters")
    h = max(m % (r + delta) - r, 0)
    return m - (m // (r + delta)) * delta - h


def _eta_lhs(eta: int, r: int) -> int:
    return eta - eta // (r + 1) + 2 ** eta - (r + 2) ** (eta // (r + 1)) + 1


def share_size_bound(n: int, r: int) -> tuple[int, Fraction]:
    """Largest admissible eta (a multiple of r+1) and the resulting lower
    limit coefficient on the average share size of a perfect scheme."""
    if r < 1 or n % (r + 1):
        raise ValueError("r+1 must divide n")
    cap = Fraction(n * r, r + 1)
    eta, best = r + 1, None
    while _eta_lhs(eta, r) <= cap:
        best = eta
        eta += r + 1
    if best is None:
        raise ValueError("n too small for bound")
    coef = Fraction((r + 1) * (2 ** best - (r + 2) ** (best // (r + 1))), best * r)
    return best, coef


BOUNDS = {
    "distance": (locality_distance_bound, ("n", "k", "r")),
    "naive": (naive_secrecy_bound, ("m", "l", "r")),
    "secrecy": (secrecy_bound, ("m", "l", "r")),
    "min-m": (min_m, ("k", "l", "r")),
    "roundtrip": (roundtrip_claim, ("x", "r")),
    "coop-rate": (coop_rate_bound, ("n", "r", "delta", "l")),
    "coop-general": (coop_general_bound, ("m", "r", "delta")),
    "share-size": (share_size_bound, ("n", "r")),
}


def evaluate(name: str, **kwargs: int) -> BoundReport:
    if name not in BOUNDS:
        raise ValueError(f"unknown bound {name!r}")
    fn, names = BOUNDS[name]
    missing = [a for a in names if kwargs.get(a) is None]
    if missing:
        raise ValueError(f"missing arguments: {', '.join(missing)}")
    args = {a: kwargs[a] for a in names}
    return BoundReport(name, args, fn(**args))


def sweep(m_max: int, r_max: int) -> list[dict[str, int]]:
    """Grid comparing the naive and sharp secrecy limits."""
    rows = []
    for r in range(1, r_max + 1):
        for m in range(1, m_max + 1):
            for l in range(0, m):
                rows.append({"m": m, "l": l, "r": r,
                             "naive": naive_secrecy_bound(m, l, r),
                             "secrecy": secrecy_bound(m, l, r)})
    return rows
