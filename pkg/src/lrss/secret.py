"""Secret sharing schemes built on linear codes.

Every scheme here is linear over its share field: participant i holds
block_i * a, where a = (randomness || secret) and block_i is a small matrix.
Rank-based audits use that description directly; the exhaustive oracle in
`lrss.oracle` only uses `encode`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Mapping, Sequence

from .access import AccessStructure
from .galois import (
    GF, Mat, combination, field, independent_rows, inverse, matvec, moore, rank, solve,
    InconsistentSystemError, SingularMatrixError,
)
from .lrc import LinearCode, erasure_decode, min_distance, repair_coefficients, rows_maximally_recoverable

FORMAT = "lrss/1"
TAGS = ("split", "gabidulin", "shamir", "isn", "graph-matching", "graph-cycle", "coop", "lnc")

# exhaustive rank-audit cutoffs
SPLIT_AUDIT_MAX_N = 24
SPLIT_AUDIT_MAX_L = 8


@dataclass(frozen=True)
class SchemeParams:
    n: int
    k: int
    l: int
    m: int
    r: int | None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 <= self.l < self.m <= self.n:
            raise ValueError("need 0 <= l < m <= n")
        if self.r is not None and not 1 <= self.r <= self.n - 1:
            raise ValueError("need 1 <= r <= n-1")

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l, "m": self.m, "r": self.r}

    @classmethod
    def from_json(cls, d: Mapping) -> "SchemeParams":
        return cls(d["n"], d["k"], d["l"], d["m"], d.get("r"))


@dataclass
class SecretSharingScheme:
    tag: str
    params: SchemeParams
    field: GF
    blocks: list[Mat]
    n_random: int
    n_secret: int
    recovery: list[tuple[int, ...] | None]
    symbols_per_share: int = 1
    payload: dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown scheme tag {self.tag!r}")
        if len(self.blocks) != self.params.n or len(self.recovery) != self.params.n:
            raise ValueError("need one block and one recovery entry per participant")
        w = self.n_random + self.n_secret
        for b in self.blocks:
            if any(len(row) != w for row in b):
                raise ValueError("block width must be n_random + n_secret")

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def scalar(self) -> bool:
        """True when every share is a single field element."""
        return all(len(b) == 1 for b in self.blocks)

    @property
    def entropy_base(self) -> int:
        return self.field.order ** self.symbols_per_share

    def rows(self, idx: Sequence[int]) -> Mat:
        return [row for i in idx for row in self.blocks[i]]

    def flat(self, i: int, share) -> list[int]:
        return [share] if self.scalar else list(share)


# --- generic linear machinery ---

def _shape(scheme: SecretSharingScheme, values: Sequence[int], i: int):
    return values[0] if scheme.scalar else tuple(values)


def encode_linear(scheme: SecretSharingScheme, secret: Sequence[int], randomness: Sequence[int]) -> dict[int, Any]:
    a = _input_vector(scheme, secret, randomness)
    F = scheme.field
    return {i: _shape(scheme, matvec(F, b, a), i) for i, b in enumerate(scheme.blocks)}


def _input_vector(scheme: SecretSharingScheme, secret: Sequence[int], randomness: Sequence[int]) -> list[int]:
    if len(secret) != scheme.n_secret or len(randomness) != scheme.n_random:
        raise ValueError(f"need {scheme.n_secret} secret and {scheme.n_random} random symbols")
    for x in itertools.chain(secret, randomness):
        scheme.field.check(x)
    return list(randomness) + list(secret)


def secret_determined(F: GF, rows: Mat, n_random: int, n_secret: int) -> bool:
    if not rows:
        return False
    base = rank(F, rows)
    for j in range(n_secret):
        e = [0] * (n_random + n_secret)
        e[n_random + j] = 1
        if rank(F, rows + [e]) != base:
            return False
    return True


def secret_hidden(F: GF, rows: Mat, n_random: int) -> bool:
    """Observation rows reveal nothing when the randomness part alone already
    has the full rank of the observation."""
    if not rows:
        return True
    return rank(F, rows) == rank(F, [row[:n_random] for row in rows])


def decode_linear(scheme: SecretSharingScheme, shares: Mapping[int, Any]) -> list[int]:
    F = scheme.field
    idx = sorted(shares)
    rows = scheme.rows(idx)
    values = [v for i in idx for v in scheme.flat(i, shares[i])]
    if len(values) != len(rows):
        raise ValueError("share shape does not match scheme")
    if not secret_determined(F, rows, scheme.n_random, scheme.n_secret):
        raise ValueError("undecodable")
    try:
        x = solve(F, rows, values)
    except InconsistentSystemError:
        raise ValueError("inconsistent shares") from None
    return x[scheme.n_random:]


def repair_linear(scheme: SecretSharingScheme, i: int, shares: Mapping[int, Any], R: Sequence[int] | None = None):
    F = scheme.field
    if R is None:
        R = scheme.recovery[i]
        if R is None:
            raise ValueError("no local relation")
    if any(j not in shares for j in R):
        raise ValueError("incomplete recovery set")
    rows = scheme.rows(R)
    values = [v for j in R for v in scheme.flat(j, shares[j])]
    out = []
    for target in scheme.blocks[i]:
        lam = combination(F, rows, target)
        if lam is None:
            raise ValueError("no local relation")
        out.append(F.dot(lam, values))
    return _shape(scheme, out, i)


# --- dispatching entry points ---

def encode(scheme: SecretSharingScheme, secret: Sequence[int], randomness: Sequence[int]) -> dict[int, Any]:
    if scheme.tag in ("gabidulin", "coop"):
        return _gabidulin_encode(scheme, secret, randomness)
    return encode_linear(scheme, secret, randomness)


def decode(scheme: SecretSharingScheme, shares: Mapping[int, Any]) -> list[int]:
    if scheme.tag in ("gabidulin", "coop"):
        return _gabidulin_decode(scheme, shares)
    return decode_linear(scheme, shares)


def repair(scheme: SecretSharingScheme, i: int, shares: Mapping[int, Any]):
    base = scheme.payload.get("base")
    if isinstance(base, LinearCode) and scheme.scalar:
        # coefficients over the base field act on every coordinate of a share
        R = scheme.recovery[i]
        if R is None:
            raise ValueError("no local relation")
        if any(j not in shares for j in R):
            raise ValueError("incomplete recovery set")
        lam = repair_coefficients(base, i, R)
        F = scheme.field
        acc = 0
        for j, c in lam.items():
            acc = F.add(acc, F.mul(c, shares[j]))
        return acc
    return repair_linear(scheme, i, shares)


# --- split construction ---

def encode_split(F: GF, G: Sequence[Sequence[int]], secret: Sequence[int], randomness: Sequence[int]) -> list[int]:
    """Shares G * (randomness || secret)."""
    a = list(randomness) + list(secret)
    if any(len(row) != len(a) for row in G):
        raise ValueError("generator width must be k + l")
    return matvec(F, G, a)


def audit_split_security(F: GF, G: Sequence[Sequence[int]], l: int) -> tuple[bool, tuple[int, ...] | None]:
    """Every independent set of at most l rows of G must stay independent
    after restricting to the first l columns. Returns a witness otherwise."""
    n = len(G)
    if n > SPLIT_AUDIT_MAX_N or l > SPLIT_AUDIT_MAX_L:
        raise ValueError("instance too large for exhaustive audit")
    for t in range(1, l + 1):
        for J in itertools.combinations(range(n), t):
            rows = [list(G[i]) for i in J]
            if rank(F, rows) == t and rank(F, [row[:l] for row in rows]) < t:
                return False, J
    return True, None


def _recovery_from_code(code: LinearCode) -> list[tuple[int, ...] | None]:
    if code.locality is None:
        return [None] * code.n
    return [tuple(R) for R in code.locality.recovery]


def _m_from_code(code: LinearCode) -> int:
    return code.n - min_distance(code) + 1


def build_split_scheme(code: LinearCode, k: int, l: int, tag: str = "split", m: int | None = None) -> SecretSharingScheme:
    if k + l != code.dim:
        raise ValueError("k + l must equal the code dimension")
    r = code.locality.r if code.locality else None
    params = SchemeParams(code.n, k, l, m if m is not None else _m_from_code(code), r)
    return SecretSharingScheme(tag, params, code.field, [[list(row)] for row in code.G], l, k,
                               _recovery_from_code(code), payload={"base": code})


# --- Gabidulin precoding ---

def power_basis(E: GF, t: int) -> list[int]:
    """1, x, x^2, ... as elements of the extension."""
    return [E.p ** j for j in range(t)]


def effective_points(scheme: SecretSharingScheme) -> list[int]:
    E = scheme.field
    base: LinearCode = scheme.payload["base"]
    alphas = scheme.payload["alphas"]
    return [E.sum(E.mul(g, a) for g, a in zip(row, alphas)) for row in base.G]


def build_gabidulin_scheme(base: LinearCode, k: int, l: int, N: int, tag: str = "gabidulin",
                           m: int | None = None, r: int | None = None,
                           recovery: list[tuple[int, ...] | None] | None = None) -> SecretSharingScheme:
    """Shares are evaluations of a random linearized polynomial whose
    coefficients are (randomness || secret), pushed through the base code."""
    F = base.field
    if F.N != 1:
        raise ValueError("base code must be over a prime field")
    if k + l != base.dim:
        raise ValueError("k + l must equal the code dimension")
    if N < base.dim:
        raise ValueError("extension degree must be at least k + l")
    E = field(F.p, N)
    alphas = power_basis(E, base.dim)
    if r is None:
        r = base.locality.r if base.locality else None
    params = SchemeParams(base.n, k, l, m if m is not None else _m_from_code(base), r)
    pts = [E.sum(E.mul(g, a) for g, a in zip(row, alphas)) for row in base.G]
    blocks = [[row] for row in moore(E, pts, base.dim)]
    rec = recovery if recovery is not None else _recovery_from_code(base)
    return SecretSharingScheme(tag, params, E, blocks, l, k, rec, payload={"base": base, "alphas": alphas})


def _gabidulin_encode(scheme: SecretSharingScheme, secret: Sequence[int], randomness: Sequence[int]) -> dict[int, int]:
    E = scheme.field
    base: LinearCode = scheme.payload["base"]
    a = _input_vector(scheme, secret, randomness)
    # row j of the Moore matrix of the points evaluates the polynomial at alpha_j
    values = matvec(E, _moore_cache(scheme)[0], a)
    digits = [E.coeffs(v) for v in values]
    F = base.field
    out = {}
    for i, row in enumerate(base.G):
        col = [F.dot(row, [d[t] for d in digits]) for t in range(E.N)]
        out[i] = E.from_coeffs(col)
    return out


def _gabidulin_decode(scheme: SecretSharingScheme, shares: Mapping[int, int]) -> list[int]:
    E = scheme.field
    base: LinearCode = scheme.payload["base"]
    idx = sorted(shares)
    digits = {i: E.coeffs(shares[i]) for i in idx}
    cols = [erasure_decode(base, {i: digits[i][t] for i in idx}) for t in range(E.N)]
    values = [E.from_coeffs([cols[t][j] for t in range(E.N)]) for j in range(base.dim)]
    a = matvec(E, _moore_cache(scheme)[1], values)
    return a[scheme.n_random:]


def _moore_cache(scheme: SecretSharingScheme) -> tuple[Mat, Mat]:
    """Moore matrix of the evaluation points and its inverse."""
    cached = scheme.payload.get("_moore")
    if cached is None:
        E, alphas = scheme.field, scheme.payload["alphas"]
        B = moore(E, alphas, len(alphas))
        if rank(E, B) < len(alphas):
            raise SingularMatrixError("singular Moore matrix")
        cached = (B, inverse(E, B))
        scheme.payload["_moore"] = cached
    return cached


def audit_gabidulin_security(scheme: SecretSharingScheme, eavesdropped: Sequence[int]) -> tuple[bool, dict]:
    """Sufficient condition for the eavesdropped coordinates: at most l of
    them are independent, and the Moore block on the independent ones has
    full row rank."""
    E = scheme.field
    base: LinearCode = scheme.payload["base"]
    l = scheme.n_random
    Ep = [sorted(eavesdropped)[j] for j in independent_rows(base.field, base.rows(sorted(eavesdropped)))]
    pts = effective_points(scheme)
    B = moore(E, [pts[i] for i in Ep], l)
    ok = len(Ep) <= l and (not Ep or rank(E, B) == len(Ep))
    return ok, {"independent": Ep, "moore_rank": rank(E, B) if Ep else 0}


# --- range and subcode checks ---

def mr_secrecy_range(k: int, r: int) -> int:
    """Largest l for which secrecy forces an MR subcode."""
    if r < 2:
        raise ValueError("r must be at least 2")
    return r - 1 + (r * (k // (r - 1)) - k)


@dataclass
class SubcodeReport:
    secure: bool
    insecure_witness: tuple[int, ...] | None
    mr_subcode: bool
    mr_witness: tuple[int, ...] | None
    in_range: bool
    consistent: bool


def subcode_check(code: LinearCode, l: int) -> SubcodeReport:
    """Compare split security with maximal recoverability of the code
    spanned by the randomness columns."""
    if code.locality is None or code.locality.groups is None:
        raise ValueError("needs a partition locality")
    F = code.field
    k = code.dim - l
    secure, w = audit_split_security(F, code.G, l)
    G1 = [row[:l] for row in code.G]
    mr, mw = rows_maximally_recoverable(F, G1, code.locality.groups, l)
    r = code.locality.r
    in_range = r >= 2 and k >= 1 and l <= mr_secrecy_range(k, r)
    consistent = (secure == mr) if in_range else (secure or not mr)
    return SubcodeReport(secure, w, mr, mw, in_range, consistent)


# --- classical schemes ---

def shamir(nf: int, t: int, F: GF) -> SecretSharingScheme:
    """Threshold scheme; participant i evaluates at i+1."""
    if not 1 <= t <= nf:
        raise ValueError("need 1 <= t <= n")
    if F.order <= nf:
        raise ValueError("field too small")
    blocks = []
    for i in range(nf):
        x = i + 1
        blocks.append([[F.pow(x, e) for e in range(1, t)] + [1]])
    r = t if t <= nf - 1 else None
    recovery = [tuple(j for j in range(nf) if j != i)[:t] if r else None for i in range(nf)]
    params = SchemeParams(nf, 1, t - 1, t, r)
    return SecretSharingScheme("shamir", params, F, blocks, t - 1, 1, recovery,
                               payload={"access": AccessStructure.threshold(nf, t)})


def isn_locality(p: int, blocked: Sequence[frozenset[int]], n: int) -> tuple[int, ...] | None:
    """Smallest set of other participants that jointly hold every piece p holds."""
    need = [B for B in blocked if p not in B]
    others = [j for j in range(n) if j != p]
    for size in range(0, n):
        for R in itertools.combinations(others, size):
            Rs = set(R)
            if all(not Rs <= B for B in need):
                return R
    return None


def isn_scheme(access: AccessStructure, F: GF) -> SecretSharingScheme:
    """Cumulative scheme: one Shamir piece per maximal blocked set, given to
    everyone outside that set."""
    n = access.n
    if access.qualified(()) or not access.qualified(range(n)):
        raise ValueError("degenerate access structure")
    blocked = access.maximal_blocked()
    b = len(blocked)
    if F.order <= b:
        raise ValueError("field too small")
    piece_rows = [[F.pow(x + 1, e) for e in range(1, b)] + [1] for x in range(b)]
    blocks = [[piece_rows[j] for j, B in enumerate(blocked) if p not in B] for p in range(n)]
    loc = [isn_locality(p, blocked, n) for p in range(n)]
    r = None if any(R is None for R in loc) else max(1, max(len(R) for R in loc))
    if r is not None and r > n - 1:
        r = None
    l = access.min_qualified_size() - 1
    m = max(len(B) for B in blocked) + 1
    params = SchemeParams(n, 1, l, m, r)
    return SecretSharingScheme("isn", params, F, blocks, b - 1, 1, loc,
                               payload={"access": access, "blocked": blocked})


def effective_count(A: frozenset[int] | Sequence[int], groups: Sequence[Sequence[int]], r: int) -> int:
    A = set(A)
    return sum(min(len(A & set(g)), r) for g in groups)


def local_access_structure(n: int, r: int, kappa: int) -> AccessStructure:
    groups = [tuple(range(j, j + r + 1)) for j in range(0, n, r + 1)]
    return AccessStructure.from_predicate(n, lambda A: effective_count(A, groups, r) >= kappa)


def perfect_local_scheme(n: int, r: int, kappa: int, F: GF, N: int, seed: int = 1,
                         max_tries: int = 200) -> tuple[SecretSharingScheme, AccessStructure]:
    """Perfect scheme for the access structure 'effective count >= kappa',
    from Gabidulin precoding of a maximally recoverable code of dim kappa."""
    from .lrc import search_mr_code

    if kappa % r or n % (r + 1) or kappa > n * r // (r + 1):
        raise ValueError("need r | kappa, (r+1) | n and kappa <= n r/(r+1)")
    code, _ = search_mr_code(F, n, kappa, r, seed, max_tries)
    if code is None:
        raise ValueError("no maximally recoverable code found")
    access = local_access_structure(n, r, kappa)
    scheme = build_gabidulin_scheme(code, 1, kappa - 1, N, m=kappa + kappa // r)
    scheme.payload["access"] = access
    return scheme, access


# --- rank audits ---

@dataclass
class RankAudit:
    recovery: bool
    recovery_witness: tuple[int, ...] | None
    security: bool
    security_witness: tuple[int, ...] | None
    locality: bool
    locality_witness: int | None

    @property
    def passed(self) -> bool:
        return self.recovery and self.security and self.locality


def rank_audit(scheme: SecretSharingScheme) -> RankAudit:
    """Definition-level checks via ranks of the linear description."""
    F, p = scheme.field, scheme.params
    rec_w = next((I for I in itertools.combinations(range(p.n), p.m)
                  if not secret_determined(F, scheme.rows(I), scheme.n_random, scheme.n_secret)), None)
    sec_w = next((J for J in itertools.combinations(range(p.n), p.l)
                  if not secret_hidden(F, scheme.rows(J), scheme.n_random)), None)
    loc_w = None
    for i in range(p.n):
        R = scheme.recovery[i]
        if R is None or any(combination(F, scheme.rows(R), t) is None for t in scheme.blocks[i]):
            loc_w = i
            break
    return RankAudit(rec_w is None, rec_w, sec_w is None, sec_w, loc_w is None, loc_w)


# --- JSON ---

def scheme_to_json(scheme: SecretSharingScheme) -> dict:
    E = scheme.field
    pl: dict[str, Any] = {
        "n_random": scheme.n_random,
        "n_secret": scheme.n_secret,
        "symbols_per_share": scheme.symbols_per_share,
        "blocks": [[[E.dump(x) for x in row] for row in b] for b in scheme.blocks],
        "recovery": [list(R) if R is not None else None for R in scheme.recovery],
    }
    for key, val in scheme.payload.items():
        if key.startswith("_"):
            continue
        if isinstance(val, LinearCode):
            pl[key] = val.to_json()
        elif isinstance(val, AccessStructure):
            pl[key] = val.to_json()
        elif key == "blocked":
            pl[key] = [sorted(B) for B in val]
        elif key == "alphas":
            pl[key] = [E.dump(a) for a in val]
        else:
            pl[key] = val
    return {"format": FORMAT, "tag": scheme.tag, "params": scheme.params.to_json(),
            "field": E.to_json(), "payload": pl}


def scheme_from_json(d: Mapping) -> SecretSharingScheme:
    if d.get("format") != FORMAT:
        raise ValueError("unsupported format")
    E = GF.from_json(d["field"])
    pl = dict(d["payload"])
    blocks = [[[E.load(x) for x in row] for row in b] for b in pl.pop("blocks")]
    recovery = [tuple(R) if R is not None else None for R in pl.pop("recovery")]
    extra: dict[str, Any] = {}
    for key, val in pl.items():
        if key in ("n_random", "n_secret", "symbols_per_share"):
            continue
        if key == "base":
            extra[key] = LinearCode.from_json(val)
        elif key == "access":
            extra[key] = AccessStructure.from_json(val)
        elif key == "blocked":
            extra[key] = [frozenset(B) for B in val]
        elif key == "alphas":
            extra[key] = [E.load(a) for a in val]
        else:
            extra[key] = val
    return SecretSharingScheme(d["tag"], SchemeParams.from_json(d["params"]), E, blocks,
                               pl["n_random"], pl["n_secret"], recovery,
                               pl.get("symbols_per_share", 1), extra)


def shares_to_json(scheme: SecretSharingScheme, shares: Mapping[int, Any]) -> dict:
    E = scheme.field
    coords = {str(i): [c for x in scheme.flat(i, shares[i]) for c in E.coeffs(x)] for i in sorted(shares)}
    return {"format": FORMAT, "n": scheme.n, "coords": coords}


def shares_from_json(scheme: SecretSharingScheme, d: Mapping) -> dict[int, Any]:
    E = scheme.field
    if d.get("n", scheme.n) != scheme.n:
        raise ValueError("share vector length does not match scheme")
    out = {}
    for key, flat in d["coords"].items():
        i = int(key)
        if not 0 <= i < scheme.n:
            raise ValueError(f"coordinate {i} out of range")
        width = len(scheme.blocks[i])
        if len(flat) != width * E.N:
            raise ValueError(f"share {i} has wrong length")
        vals = [E.from_coeffs(flat[t * E.N:(t + 1) * E.N]) for t in range(width)]
        out[i] = _shape(scheme, vals, i)
    return out
