"""Exact arithmetic over GF(p) and GF(p^N), plus dense linear algebra.

Elements are plain ints. An element of GF(p^N) is the integer whose base-p
digits (least significant first) are the coefficients of its polynomial
representative modulo the field's irreducible modulus. Elements of the prime
subfield are therefore the ints 0..p-1 in every extension.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

Row = list[int]
Mat = list[list[int]]

# fields up to this order get exp/log tables
TABLE_LIMIT = 1 << 17


class ZeroInverseError(ZeroDivisionError):
    pass


class SingularMatrixError(ValueError):
    pass


class InconsistentSystemError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), little-endian coefficient lists ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial given little-endian."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob_power(k: int) -> list[int]:
        h = x
        for _ in range(k):
            h = _ppowmod(h, p, f, p)
        return h

    for q in _prime_factors(n):
        h = frob_power(n // q)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _trim(diff), p)
        if len(g) != 1:
            return False
    h = frob_power(n)
    return _trim(list(h)) == x


def find_irreducible(p: int, N: int) -> tuple[int, ...]:
    """First monic irreducible of degree N, scanning lower coefficients as a
    little-endian base-p counter starting from zero."""
    for idx in range(p ** N):
        low = [(idx // p ** i) % p for i in range(N)]
        f = low + [1]
        if N == 1 or low[0] != 0:
            if is_irreducible(f, p):
                return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {N} over GF({p})")


class GF:
    """The finite field GF(p^N)."""

    def __init__(self, p: int, N: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if N < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = find_irreducible(p, N)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != N + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree N")
        if not is_irreducible(modulus, p):
            raise ValueError("modulus is not irreducible")
        self.p = p
        self.N = N
        self.modulus = modulus
        self.order = p ** N
        self._mod_int = sum(c << i for i, c in enumerate(modulus)) if p == 2 else 0
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if N > 1 and self.order <= TABLE_LIMIT:
            self._build_tables()

    # identity and (de)serialization

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.N, self.modulus) == (other.p, other.N, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.N, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.N == 1 else f"GF({self.p}^{self.N})"

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, d: dict) -> "GF":
        return field(d["p"], d.get("N", 1), tuple(d["modulus"]) if "modulus" in d else None)

    # element views

    def coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.N):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def from_coeffs(self, c: Sequence[int]) -> int:
        if len(c) > self.N:
            raise ValueError("too many coefficients")
        x = 0
        for d in reversed(list(c)):
            x = x * self.p + (d % self.p)
        return x

    def dump(self, x: int) -> int | list[int]:
        """JSON form of an element: a residue, or a coefficient list."""
        return x if self.N == 1 else self.coeffs(x)

    def load(self, v: int | Sequence[int]) -> int:
        if isinstance(v, int):
            if self.N != 1:
                raise ValueError("extension element must be a coefficient list")
            return self.check(v)
        return self.from_coeffs([int(c) for c in v])

    def elements(self) -> range:
        return range(self.order)

    def check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.order:
            raise ValueError(f"{x!r} is not an element of {self}")
        return x

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.N == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, out, mul = self.p, 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * mul
            mul *= p
        return out

    def neg(self, a: int) -> int:
        if self.N == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p, out, mul = self.p, 0, 1
        while a:
            a, d = divmod(a, p)
            out += ((-d) % p) * mul
            mul *= p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.N == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def _slow_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> self.N & 1:
                    a ^= self._mod_int
            return r
        prod = _pmulmod(self.coeffs(a), self.coeffs(b), list(self.modulus), self.p)
        return self.from_coeffs(prod)

    def mul(self, a: int, b: int) -> int:
        if self.N == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverseError("zero inverse")
        if self.N == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.N == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(p^i)."""
        return self.pow(a, self.p ** (i % self.N))

    def sum(self, xs: Iterable[int]) -> int:
        acc = 0
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = self.add(acc, self.mul(a, b))
        return acc

    def _build_tables(self) -> None:
        n = self.order - 1
        factors = _prime_factors(n)
        g = 2
        while g < self.order:
            if all(self._slow_mul_pow(g, n // f) != 1 for f in factors):
                break
            g += 1
        exp = [0] * (2 * n)
        x = 1
        for i in range(n):
            exp[i] = x
            x = self._slow_mul(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        log = [0] * self.order
        for i in range(n):
            log[exp[i]] = i
        self.generator = g
        self._exp, self._log = exp, log

    def _slow_mul_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result


@lru_cache(maxsize=None)
def field(p: int, N: int = 1, modulus: tuple[int, ...] | None = None) -> GF:
    """Cached field constructor."""
    return GF(p, N, modulus)


# --- dense matrices (lists of rows) ---

def zeros(rows: int, cols: int) -> Mat:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> Mat:
    return [list(c) for c in zip(*M)] if M else []


def matmul(F: GF, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Mat:
    Bt = transpose(B)
    return [[F.dot(row, col) for col in Bt] for row in A]


def matvec(F: GF, A: Sequence[Sequence[int]], v: Sequence[int]) -> Row:
    return [F.dot(row, v) for row in A]


def rref(F: GF, M: Sequence[Sequence[int]]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns (first nonzero pivot)."""
    A = [list(r) for r in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots: list[int] = []
    prime = F.N == 1
    p = F.p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        if prime:
            A[r] = [x * inv % p for x in A[r]]
        else:
            A[r] = [F.mul(x, inv) for x in A[r]]
        pr = A[r]
        for i in range(rows):
            f = A[i][c]
            if i != r and f:
                if prime:
                    A[i] = [(x - f * y) % p for x, y in zip(A[i], pr)]
                else:
                    A[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(A[i], pr)]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: GF, M: Sequence[Sequence[int]]) -> int:
    return len(rref(F, M)[1])


def solve(F: GF, A: Sequence[Sequence[int]], b: Sequence[int]) -> Row:
    """One solution x of A x = b (free variables set to zero)."""
    if len(A) != len(b):
        raise ValueError("dimension mismatch")
    cols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(F, aug)
    if cols in piv:
        raise InconsistentSystemError("inconsistent")
    x = [0] * cols
    for i, c in enumerate(piv):
        x[c] = R[i][cols]
    return x


def inverse(F: GF, M: Sequence[Sequence[int]]) -> Mat:
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    aug = [list(r) + e for r, e in zip(M, identity(n))]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("singular matrix")
    return [row[n:] for row in R]


def independent_rows(F: GF, M: Sequence[Sequence[int]], order: Iterable[int] | None = None) -> list[int]:
    """Greedy maximal independent subset of row indices, scanned in order."""
    chosen: list[int] = []
    basis: Mat = []
    for i in (range(len(M)) if order is None else order):
        trial = basis + [list(M[i])]
        if rank(F, trial) == len(trial):
            chosen.append(i)
            basis = trial
    return chosen


def combination(F: GF, rows: Sequence[Sequence[int]], target: Sequence[int]) -> Row | None:
    """Coefficients c with sum c_j rows_j == target, or None."""
    if not rows:
        return [] if not any(target) else None
    try:
        return solve(F, transpose(rows), list(target))
    except InconsistentSystemError:
        return None


def vandermonde(F: GF, alphas: Sequence[int], t: int) -> Mat:
    return [[F.pow(a, j) for j in range(t)] for a in alphas]


def moore(F: GF, alphas: Sequence[int], t: int) -> Mat:
    """Rows [a, a^p, a^(p^2), ...] of length t."""
    out = []
    for a in alphas:
        row, x = [], a
        for _ in range(t):
            row.append(x)
            x = F.pow(x, F.p)
        out.append(row)
    return out


def base_rank(F: GF, elems: Sequence[int]) -> int:
    """Rank over the prime subfield of extension elements viewed as vectors."""
    P = field(F.p)
    return rank(P, [F.coeffs(x) for x in elems])


# --- linearized polynomials ---

def linearized_eval(F: GF, coeffs: Sequence[int], y: int) -> int:
    """sum_i coeffs[i] * y^(p^i)."""
    acc, x = 0, y
    for a in coeffs:
        if a:
            acc = F.add(acc, F.mul(a, x))
        x = F.pow(x, F.p)
    return acc


def linearized_interpolate(F: GF, points: Sequence[tuple[int, int]]) -> Row:
    """Coefficients of the linearized polynomial through the given points,
    with as many coefficients as points."""
    alphas = [a for a, _ in points]
    B = moore(F, alphas, len(points))
    if rank(F, B) < len(points):
        raise SingularMatrixError("singular Moore matrix")
    return solve(F, B, [v for _, v in points])


class LinearizedPoly:
    def __init__(self, F: GF, coeffs: Sequence[int]):
        if not coeffs:
            raise ValueError("need at least one coefficient")
        self.field = F
        self.coeffs = tuple(F.check(c) for c in coeffs)

    def __call__(self, y: int) -> int:
        return linearized_eval(self.field, self.coeffs, y)

    def __repr__(self) -> str:
        return f"LinearizedPoly({self.field}, {list(self.coeffs)})"
