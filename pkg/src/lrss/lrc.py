"""Linear codes with locality: construction, distance, repair, and the
maximal-recoverability test."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .galois import GF, Mat, combination, inverse, matmul, matvec, rank, solve, vandermonde, InconsistentSystemError

# exhaustive work cap for distance computations
DISTANCE_LIMIT = 10 ** 6


@dataclass(frozen=True)
class LocalityStructure:
    """Recovery sets R_i for every coordinate; `groups` is set when the
    structure comes from a partition into blocks of size r+1."""

    n: int
    r: int
    recovery: tuple[tuple[int, ...], ...]
    groups: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if len(self.recovery) != self.n:
            raise ValueError("need one recovery set per coordinate")
        for i, R in enumerate(self.recovery):
            if i in R or any(not 0 <= j < self.n for j in R):
                raise ValueError(f"bad recovery set for coordinate {i}")
            if len(R) > self.r:
                raise ValueError(f"recovery set of coordinate {i} exceeds r")
        if self.groups is not None:
            flat = sorted(i for g in self.groups for i in g)
            if flat != list(range(self.n)):
                raise ValueError("groups must partition the coordinates")

    @classmethod
    def partition(cls, n: int, r: int) -> "LocalityStructure":
        if r < 1 or n % (r + 1):
            raise ValueError("r+1 must divide n")
        groups = [tuple(range(j, j + r + 1)) for j in range(0, n, r + 1)]
        return cls.from_groups(groups)

    @classmethod
    def from_groups(cls, groups: Sequence[Sequence[int]]) -> "LocalityStructure":
        groups = tuple(tuple(sorted(g)) for g in groups)
        n = sum(len(g) for g in groups)
        rec: list[tuple[int, ...]] = [()] * n
        for g in groups:
            for i in g:
                rec[i] = tuple(j for j in g if j != i)
        r = max(len(g) for g in groups) - 1
        return cls(n, max(r, 1), tuple(rec), groups)

    def closure(self, i: int) -> frozenset[int]:
        return frozenset(self.recovery[i]) | {i}

    def group_of(self, i: int) -> int:
        if self.groups is None:
            raise ValueError("locality is not a partition")
        return next(j for j, g in enumerate(self.groups) if i in g)

    def to_json(self) -> dict:
        d: dict = {"r": self.r}
        if self.groups is not None:
            d["groups"] = [list(g) for g in self.groups]
        else:
            d["recovery"] = [list(R) for R in self.recovery]
        return d

    @classmethod
    def from_json(cls, n: int, d: Mapping) -> "LocalityStructure":
        if d.get("groups") is not None:
            return cls.from_groups(d["groups"])
        return cls(n, d["r"], tuple(tuple(R) for R in d["recovery"]))


@dataclass
class LinearCode:
    """Code spanned by the columns of the n x dim generator G; codeword
    coordinate i is row i of G applied to the message."""

    field: GF
    G: Mat
    locality: LocalityStructure | None = None
    delta: int | None = None

    def __post_init__(self):
        if not self.G or not self.G[0]:
            raise ValueError("empty generator")
        if len({len(r) for r in self.G}) != 1:
            raise ValueError("ragged generator")
        for row in self.G:
            for x in row:
                self.field.check(x)
        if rank(self.field, self.G) != self.dim:
            raise ValueError("generator does not have full column rank")
        if self.locality is not None and self.locality.n != self.n:
            raise ValueError("locality does not match code length")

    @property
    def n(self) -> int:
        return len(self.G)

    @property
    def dim(self) -> int:
        return len(self.G[0])

    def encode(self, message: Sequence[int]) -> list[int]:
        if len(message) != self.dim:
            raise ValueError("message length must equal dim")
        return matvec(self.field, self.G, message)

    def rows(self, idx: Sequence[int]) -> Mat:
        return [self.G[i] for i in idx]

    def to_json(self) -> dict:
        F = self.field
        d = {
            "field": F.to_json(),
            "n": self.n,
            "dim": self.dim,
            "r": self.locality.r if self.locality else None,
            "groups": [list(g) for g in self.locality.groups] if self.locality and self.locality.groups else None,
            "G": [[F.dump(x) for x in row] for row in self.G],
        }
        if self.locality is not None and self.locality.groups is None:
            d["recovery"] = [list(R) for R in self.locality.recovery]
        if self.delta is not None:
            d["delta"] = self.delta
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "LinearCode":
        F = GF.from_json(d["field"])
        G = [[F.load(x) for x in row] for row in d["G"]]
        loc = None
        if d.get("groups"):
            loc = LocalityStructure.from_groups(d["groups"])
        elif d.get("recovery") is not None:
            loc = LocalityStructure(len(G), d["r"], tuple(tuple(R) for R in d["recovery"]))
        code = cls(F, G, loc, d.get("delta"))
        if code.dim != d.get("dim", code.dim) or code.n != d.get("n", code.n):
            raise ValueError("declared n/dim disagree with G")
        return code


@dataclass
class CodeAudit:
    n: int
    dim: int
    r: int | None
    distance: int
    distance_bound: int | None
    optimal: bool | None
    locality_ok: bool | None
    maximally_recoverable: bool | None
    failures: list[str] = dc_field(default_factory=list)


def distance_bound(n: int, dim: int, r: int) -> int:
    return n - dim - -(-dim // r) + 2


def build_partitioned_lrc(F: GF, n: int, dim: int, r: int) -> LinearCode:
    """Groups of r+1 consecutive coordinates; the first r of each group carry a
    systematic MDS encoding of the message, the last is the group sum."""
    if r < 1 or n % (r + 1):
        raise ValueError("r+1 must divide n")
    L = n * r // (r + 1)
    if not 1 <= dim <= L:
        raise ValueError("need 1 <= dim <= n*r/(r+1)")
    if dim == L:
        D = [[1 if i == j else 0 for j in range(dim)] for i in range(L)]
    else:
        if F.order < L:
            raise ValueError("field too small for the MDS component")
        V = vandermonde(F, list(range(L)), dim)
        D = matmul(F, V, inverse(F, V[:dim]))
    G: Mat = []
    for j in range(n // (r + 1)):
        block = D[j * r:(j + 1) * r]
        G.extend([list(row) for row in block])
        parity = [F.sum(col) for col in zip(*block)]
        G.append(parity)
    return LinearCode(F, G, LocalityStructure.partition(n, r))


def random_group_code(F: GF, n: int, dim: int, r: int, rng: random.Random) -> list[list[int]]:
    """Random generator respecting the partition: each group's last row is a
    combination of its other rows with nonzero coefficients."""
    G: Mat = []
    for _ in range(n // (r + 1)):
        block = [[rng.randrange(F.order) for _ in range(dim)] for _ in range(r)]
        lam = [rng.randrange(1, F.order) for _ in range(r)]
        parity = [F.dot(lam, col) for col in zip(*block)]
        G.extend(block)
        G.append(parity)
    return G


def _distance_from_rows(F: GF, G: Sequence[Sequence[int]], dim: int) -> int:
    # a nonzero codeword vanishes on I exactly when rank(G_I) < dim
    n = len(G)
    for size in range(n - 1, dim - 2, -1):
        if size < dim:
            return n - size
        for I in itertools.combinations(range(n), size):
            if rank(F, [G[i] for i in I]) < dim:
                return n - size
    return n - dim + 1


def min_distance(code: LinearCode) -> int:
    """Exact minimum distance, by coordinate-subset rank scan or by codeword
    enumeration, whichever is smaller."""
    subsets, words = 2 ** code.n, code.field.order ** code.dim
    if min(subsets, words) > DISTANCE_LIMIT:
        raise ValueError("code too large for exhaustive distance")
    if words < subsets:
        return min_distance_enumerate(code)
    return _distance_from_rows(code.field, code.G, code.dim)


def min_distance_enumerate(code: LinearCode) -> int:
    """Minimum weight over all nonzero codewords."""
    F = code.field
    if F.order ** code.dim > DISTANCE_LIMIT:
        raise ValueError("code too large for exhaustive distance")
    best = code.n
    for msg in itertools.product(range(F.order), repeat=code.dim):
        if any(msg):
            best = min(best, sum(1 for x in code.encode(list(msg)) if x))
    return best


def verify_locality(code: LinearCode, locality: LocalityStructure | None = None) -> tuple[bool, int | None]:
    """Check every coordinate is a combination of its recovery set; returns
    the first failing coordinate otherwise."""
    loc = locality or code.locality
    if loc is None:
        raise ValueError("code has no locality structure")
    for i in range(code.n):
        if combination(code.field, code.rows(loc.recovery[i]), code.G[i]) is None:
            return False, i
    return True, None


def _mr_witness(F: GF, rows: Sequence[Sequence[int]], groups: Sequence[Sequence[int]], dim: int) -> tuple[int, ...] | None:
    # every dim-subset meeting each group in at most r positions must be independent
    n = len(rows)
    caps = {i: len(g) - 1 for g in groups for i in g}
    gid = {i: j for j, g in enumerate(groups) for i in g}
    for T in itertools.combinations(range(n), dim):
        counts: dict[int, int] = {}
        ok = True
        for i in T:
            counts[gid[i]] = counts.get(gid[i], 0) + 1
            if counts[gid[i]] > caps[i]:
                ok = False
                break
        if ok and rank(F, [rows[i] for i in T]) < dim:
            return T
    return None


def is_maximally_recoverable(code: LinearCode) -> tuple[bool, tuple[int, ...] | None]:
    """True when erasing one coordinate per group always leaves an MDS code."""
    if code.locality is None or code.locality.groups is None:
        raise ValueError("maximal recoverability needs a partition locality")
    L = code.n - len(code.locality.groups)
    if code.dim > L:
        return False, None
    w = _mr_witness(code.field, code.G, code.locality.groups, code.dim)
    return w is None, w


def rows_maximally_recoverable(F: GF, rows: Sequence[Sequence[int]], groups: Sequence[Sequence[int]], dim: int) -> tuple[bool, tuple[int, ...] | None]:
    """Same test applied to an arbitrary row set (no rank requirement)."""
    if dim == 0:
        return True, None
    if dim > len(rows) - len(groups):
        return False, None
    w = _mr_witness(F, rows, groups, dim)
    return w is None, w


def search_mr_code(F: GF, n: int, dim: int, r: int, seed: int, max_tries: int = 200) -> tuple[LinearCode | None, int]:
    rng = random.Random(seed)
    loc = LocalityStructure.partition(n, r)
    for t in range(1, max_tries + 1):
        G = random_group_code(F, n, dim, r, rng)
        if rank(F, G) < dim:
            continue
        code = LinearCode(F, G, loc)
        if is_maximally_recoverable(code)[0]:
            return code, t
    return None, max_tries


def erasure_decode(code: LinearCode, observed: Mapping[int, int]) -> list[int]:
    """Recover the message from surviving coordinates."""
    F = code.field
    idx = sorted(observed)
    A = code.rows(idx)
    if rank(F, A) < code.dim:
        raise ValueError("undecodable")
    try:
        return solve(F, A, [observed[i] for i in idx])
    except InconsistentSystemError:
        raise ValueError("inconsistent shares") from None


def repair_coefficients(code: LinearCode, i: int, R: Sequence[int] | None = None) -> dict[int, int]:
    """Coefficients lam with G_i = sum_{j in R} lam_j G_j."""
    if R is None:
        if code.locality is None:
            raise ValueError("no recovery set given")
        R = code.locality.recovery[i]
    lam = combination(code.field, code.rows(R), code.G[i])
    if lam is None:
        raise ValueError("no local relation")
    return dict(zip(R, lam))


def audit_code(code: LinearCode) -> CodeAudit:
    d = min_distance(code)
    loc = code.locality
    bound = distance_bound(code.n, code.dim, loc.r) if loc else None
    locality_ok = verify_locality(code)[0] if loc else None
    mr = is_maximally_recoverable(code)[0] if loc and loc.groups else None
    failures = []
    if locality_ok is False:
        failures.append("locality")
    if bound is not None and d > bound:
        failures.append("distance exceeds bound")
    return CodeAudit(code.n, code.dim, loc.r if loc else None, d, bound,
                     None if bound is None else d == bound, locality_ok, mr, failures)
