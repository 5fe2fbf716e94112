"""Exhaustive information-theoretic audits.

The oracle enumerates every (secret, randomness) input of a scheme, builds the
exact joint distribution of secret and shares with rational probabilities,
and decides each property by exact comparison. Entropies are computed from
that distribution in high precision, in units of log(share alphabet size).
"""

from __future__ import annotations

import itertools
import os
from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

from .access import AccessStructure, subsets
from .secret import SecretSharingScheme, encode

DEFAULT_LIMIT = 1 << 20
PRECISION = 50

DETERMINED = "determined"
INDEPENDENT = "independent"
PARTIAL = "partial"


def oracle_limit() -> int:
    return int(os.environ.get("LRSS_ORACLE_LIMIT", DEFAULT_LIMIT))


@dataclass
class JointDistribution:
    n: int
    secret_size: int
    base: int
    counts: Counter  # (secret, shares) -> multiplicity
    total: int

    def support(self) -> list[tuple[tuple, tuple, Fraction]]:
        return [(s, c, Fraction(w, self.total)) for (s, c), w in self.counts.items()]

    def prob(self, secret: tuple, shares: tuple) -> Fraction:
        return Fraction(self.counts.get((secret, shares), 0), self.total)


def enumerate_joint(scheme: SecretSharingScheme, limit: int | None = None) -> JointDistribution:
    limit = oracle_limit() if limit is None else limit
    q = scheme.field.order
    size = q ** (scheme.n_secret + scheme.n_random)
    if size > limit:
        raise ValueError("too large for oracle")
    counts: Counter = Counter()
    dom = range(q)
    for s in itertools.product(dom, repeat=scheme.n_secret):
        for r in itertools.product(dom, repeat=scheme.n_random):
            sh = encode(scheme, s, r)
            counts[(s, tuple(sh[i] for i in range(scheme.n)))] += 1
    return JointDistribution(scheme.n, q ** scheme.n_secret, scheme.entropy_base, counts, size)


def _by_view(dist: JointDistribution, J: Sequence[int]) -> dict[tuple, Counter]:
    groups: dict[tuple, Counter] = defaultdict(Counter)
    for (s, c), w in dist.counts.items():
        groups[tuple(c[j] for j in J)][s] += w
    return groups


def verdict(dist: JointDistribution, J: Iterable[int]) -> str:
    """Relation between the secret and the shares indexed by J."""
    groups = _by_view(dist, sorted(J))
    if all(len(g) == 1 for g in groups.values()):
        return DETERMINED
    uniform = Fraction(1, dist.secret_size)
    for g in groups.values():
        if len(g) != dist.secret_size:
            return PARTIAL
        tot = sum(g.values())
        if any(Fraction(w, tot) != uniform for w in g.values()):
            return PARTIAL
    return INDEPENDENT


def is_function_of(dist: JointDistribution, i: int, R: Sequence[int]) -> bool:
    seen: dict[tuple, object] = {}
    for (_, c) in dist.counts:
        key = tuple(c[j] for j in R)
        if seen.setdefault(key, c[i]) != c[i]:
            return False
    return True


# --- entropies ---

class Entropies:
    """Cached entropies of share subsets, optionally joined with the secret."""

    def __init__(self, dist: JointDistribution):
        self.dist = dist
        self._cache: dict[tuple[int, bool], Decimal] = {}
        with localcontext() as ctx:
            ctx.prec = PRECISION
            self._lnbase = Decimal(dist.base).ln()

    def H(self, mask: int, with_secret: bool = False) -> Decimal:
        key = (mask, with_secret)
        if key in self._cache:
            return self._cache[key]
        idx = [j for j in range(self.dist.n) if mask >> j & 1]
        cnt: Counter = Counter()
        for (s, c), w in self.dist.counts.items():
            view = tuple(c[j] for j in idx)
            cnt[(s, view) if with_secret else view] += w
        total = Decimal(self.dist.total)
        with localcontext() as ctx:
            ctx.prec = PRECISION
            h = Decimal(0)
            # outcomes with equal mass contribute equal terms
            for w, mult in Counter(cnt.values()).items():
                pr = Decimal(w) / total
                h -= mult * pr * pr.ln()
            h = h / self._lnbase
        self._cache[key] = h
        return h

    def secret(self) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = PRECISION
            return Decimal(self.dist.secret_size).ln() / self._lnbase

    def conditional(self, J: Iterable[int]) -> Decimal:
        """H(S | C_J)."""
        mask = to_mask(J)
        with localcontext() as ctx:
            ctx.prec = PRECISION
            return self.H(mask, True) - self.H(mask)


def to_mask(J: Iterable[int]) -> int:
    m = 0
    for j in J:
        m |= 1 << j
    return m


def from_mask(mask: int, n: int) -> tuple[int, ...]:
    return tuple(j for j in range(n) if mask >> j & 1)


# --- audits ---

@dataclass
class SchemeAudit:
    recovery: bool
    recovery_witness: tuple[int, ...] | None
    security: bool
    security_witness: tuple[int, ...] | None
    locality: bool
    locality_witness: int | None
    recovery_sets: dict[int, tuple[int, ...]] = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.recovery and self.security and self.locality


def find_recovery_set(dist: JointDistribution, i: int, r: int, declared: Sequence[int] | None = None) -> tuple[int, ...] | None:
    if declared is not None and len(declared) <= r and is_function_of(dist, i, declared):
        return tuple(declared)
    others = [j for j in range(dist.n) if j != i]
    for size in range(0, r + 1):
        for R in itertools.combinations(others, size):
            if is_function_of(dist, i, R):
                return R
    return None


def audit_scheme(scheme: SecretSharingScheme, dist: JointDistribution | None = None,
                      r: int | None = None, use_declared: bool = True) -> SchemeAudit:
    """Exact recovery, security and locality checks over the full joint
    distribution."""
    dist = dist or enumerate_joint(scheme)
    p = scheme.params
    r = p.r if r is None else r
    rec_w = next((I for I in itertools.combinations(range(p.n), p.m) if verdict(dist, I) != DETERMINED), None)
    sec_w = next((J for J in itertools.combinations(range(p.n), p.l) if verdict(dist, J) != INDEPENDENT), None)
    loc_w, sets = None, {}
    if r is None:
        loc_w = 0
    else:
        for i in range(p.n):
            R = find_recovery_set(dist, i, r, scheme.recovery[i] if use_declared else None)
            if R is None:
                loc_w = i
                break
            sets[i] = R
    return SchemeAudit(rec_w is None, rec_w, sec_w is None, sec_w, loc_w is None, loc_w, sets)


@dataclass
class PerfectReport:
    perfect: bool
    witness: tuple[int, ...] | None
    observed: str | None


def audit_perfect(scheme: SecretSharingScheme, access: AccessStructure,
                  dist: JointDistribution | None = None) -> PerfectReport:
    """Qualified sets determine the secret, all other sets learn nothing."""
    dist = dist or enumerate_joint(scheme)
    if access.n != scheme.n:
        raise ValueError("access structure size mismatch")
    for A in subsets(scheme.n):
        v = verdict(dist, A)
        want = DETERMINED if access.qualified(A) else INDEPENDENT
        if v != want:
            return PerfectReport(False, A, v)
    return PerfectReport(True, None, None)


@dataclass
class DegradationReport:
    holds: bool
    best_set: tuple[int, ...] | None
    best_margin: float | None
    table: list[tuple[tuple[int, ...], float, int]]


def gradual_degradation(scheme: SecretSharingScheme, dist: JointDistribution | None = None,
                        tol: float = 1e-9) -> DegradationReport:
    """Look for an observed set J, l <= |J| <= m - floor(m/(r+1)), whose
    leftover secret entropy is at most that upper limit minus |J|."""
    dist = dist or enumerate_joint(scheme)
    p = scheme.params
    if p.r is None:
        raise ValueError("scheme has no locality parameter")
    top = p.m - p.m // (p.r + 1)
    ent = Entropies(dist)
    table, best, best_margin = [], None, None
    for size in range(p.l, top + 1):
        for J in itertools.combinations(range(p.n), size):
            h = float(ent.conditional(J))
            bound = top - size
            table.append((J, h, bound))
            margin = h - bound
            if best_margin is None or margin < best_margin - tol:
                best, best_margin = J, margin
    holds = best_margin is not None and best_margin <= tol
    return DegradationReport(holds, best, best_margin, table)


@dataclass
class PolymatroidReport:
    nonnegative: bool
    monotone: bool
    submodular: bool
    qualified_ok: bool | None
    blocked_ok: bool | None
    violations: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(x is not False for x in (self.nonnegative, self.monotone, self.submodular,
                                            self.qualified_ok, self.blocked_ok))


def polymatroid_check(dist: JointDistribution, access: AccessStructure | None = None,
                      blocked=None, tol: float = 1e-9) -> PolymatroidReport:
    """Normalized entropy phi(A) = H(C_A)/H(S) must be a polymatroid. With an
    access structure, qualified sets add nothing when joined with the secret
    and blocked sets add exactly one unit. `blocked` overrides the default
    (complement of qualified) blocked-set predicate."""
    n = dist.n
    ent = Entropies(dist)
    hs = ent.secret()
    if hs == 0:
        raise ValueError("secret has zero entropy")
    full = 1 << n
    phi = [float(ent.H(a) / hs) for a in range(full)]
    viol: list[str] = []
    nonneg = phi[0] == 0 and all(x >= -tol for x in phi)
    if not nonneg:
        viol.append("nonnegativity")
    mono = True
    for b in range(full):
        a = b
        while True:
            if phi[a] > phi[b] + tol:
                mono = False
                viol.append(f"monotone {from_mask(a, n)} {from_mask(b, n)}")
                break
            if a == 0:
                break
            a = (a - 1) & b
        if not mono:
            break
    sub = True
    for a in range(full):
        for b in range(a + 1, full):
            if phi[a | b] + phi[a & b] > phi[a] + phi[b] + tol:
                sub = False
                viol.append(f"submodular {from_mask(a, n)} {from_mask(b, n)}")
                break
        if not sub:
            break
    qok = bok = None
    if access is not None or blocked is not None:
        is_blocked = blocked if blocked is not None else (lambda A: not access.qualified(A))
        qok = bok = True
        for a in range(full):
            A = from_mask(a, n)
            joint = float(ent.H(a, True) / hs)
            if access is not None and access.qualified(A):
                if abs(joint - phi[a]) > tol:
                    qok = False
                    viol.append(f"qualified {A}")
            elif is_blocked(A):
                if abs(joint - phi[a] - 1) > tol:
                    bok = False
                    viol.append(f"blocked {A}")
    return PolymatroidReport(nonneg, mono, sub, qok, bok, viol)
