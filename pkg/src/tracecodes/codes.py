"""Trace codes C_D = {(Tr(x d))_{d in D} : x in GF(q)} and their weight data."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import config
from .errors import EmptyDefiningSetError, IntegrityError, ResourceError
from .field import FieldCtx, FieldElement
from .linalg import null_space, rank, rref

FULL = "full"
PUNCTURED = "punctured"

# codeword blocks are materialised in chunks of about this many entries
_CHUNK_ENTRIES = 1 << 22


@dataclass(frozen=True, eq=False)
class DefiningSet:
    """Distinct nonzero field elements, stored as ascending integer encodings."""

    ctx: FieldCtx
    codes: np.ndarray
    kind: str = FULL

    def __post_init__(self):
        codes = np.asarray(self.codes, dtype=np.int64)
        if codes.size and (codes[0] <= 0 or np.any(np.diff(codes) <= 0)):
            raise IntegrityError("defining set must be nonzero, distinct and ascending")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    def __len__(self):
        return int(self.codes.size)

    def __eq__(self, other):
        return (isinstance(other, DefiningSet) and self.ctx == other.ctx
                and np.array_equal(self.codes, other.codes))

    def elements(self) -> np.ndarray:
        return self.ctx.decode(self.codes)

    def __iter__(self) -> Iterator[FieldElement]:
        for c in self.codes:
            yield self.ctx.element(int(c))

    def to_json(self) -> list[int]:
        return [int(c) for c in self.codes]


def zero_trace_set(ctx: FieldCtx, f: Callable[[np.ndarray], np.ndarray], kind: str) -> DefiningSet:
    """{x in GF(q)* : Tr(f(x)) = 0} for a vectorised map f on coefficient arrays."""
    X = ctx.elements()
    hit = ctx.trace(f(X)) == 0
    hit[0] = False
    return DefiningSet(ctx, np.nonzero(hit)[0], kind)


def build_defining_set(ctx: FieldCtx) -> DefiningSet:
    """All x != 0 with Tr(x^2) = 0."""
    D = zero_trace_set(ctx, lambda X: ctx.mul(X, X), FULL)
    if len(D) == 0:
        raise EmptyDefiningSetError(f"defining set is empty for p={ctx.p}, m={ctx.m}")
    return D


def scalar_orbits(D: DefiningSet) -> np.ndarray:
    """(p-1, |D|) array: row a-1 holds the encodings of a*d for d in D."""
    ctx = D.ctx
    X = D.elements()
    return np.stack([ctx.encode(ctx.scale(X, a)) for a in range(1, ctx.p)])


def puncture_representatives(D: DefiningSet) -> DefiningSet:
    """One element per GF(p)*-orbit: the member with the smallest encoding."""
    orbits = scalar_orbits(D)
    if not np.all(np.isin(orbits, D.codes)):
        raise IntegrityError("defining set is not closed under GF(p)* scaling")
    reps = D.codes[D.codes == orbits.min(axis=0)]
    if D.kind.startswith("planar:"):
        kind = D.kind + ":punctured"
    else:
        kind = PUNCTURED
    return DefiningSet(D.ctx, reps, kind)


# -- codes -------------------------------------------------------------------

@dataclass(eq=False)
class LinearCode:
    """A linear code over GF(p) given by a generator matrix (rows may be dependent)."""

    p: int
    gen_matrix: np.ndarray
    k: int = field(init=False)
    basis: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.gen_matrix = np.asarray(self.gen_matrix, dtype=np.int64) % self.p
        self.basis, pivots = rref(self.gen_matrix, self.p)
        self.k = len(pivots)

    @property
    def n(self) -> int:
        return int(self.gen_matrix.shape[1])


@dataclass(eq=False)
class TraceCode(LinearCode):
    ctx: FieldCtx = None
    defining_set: DefiningSet = None

    @property
    def kind(self) -> str:
        return self.defining_set.kind

    @property
    def m(self) -> int:
        return self.ctx.m


def build_code(ctx: FieldCtx, D: DefiningSet) -> TraceCode:
    """Generator matrix with row i equal to (Tr(b_i d))_{d in D}, b_i = a^i."""
    if len(D) == 0:
        raise EmptyDefiningSetError("cannot build a code from an empty defining set")
    basis = np.eye(ctx.m, dtype=np.int64)
    G = ctx.trace(ctx.mul(basis[:, None, :], D.elements()[None, :, :]))
    return TraceCode(ctx.p, G, ctx=ctx, defining_set=D)


def codeword_for(code: TraceCode, x) -> np.ndarray:
    """c_x = (Tr(x d_1), ..., Tr(x d_n))."""
    x = code.ctx.element(x)
    return code.ctx.trace(code.ctx.mul(code.defining_set.elements(), x.array))


# -- enumeration ---------------------------------------------------------------

def _check_ceiling(count: int, what: str):
    limit = config.get_ceiling()
    if count > limit:
        raise ResourceError(f"{what}: {count} codewords exceed enumeration ceiling {limit}")


def _messages(p: int, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    return (idx[:, None] // p ** np.arange(k, dtype=np.int64)) % p


def _encode_block(U: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    # float64 products are exact here: entries stay far below 2**53
    C = U.astype(np.float64) @ B.astype(np.float64)
    return np.fmod(C, p).astype(np.int8 if p < 128 else np.int64)


def _rows_for(code: LinearCode) -> np.ndarray:
    # for full-rank trace codes use G itself so message index = x encoding
    if code.gen_matrix.shape[0] == code.k:
        return code.gen_matrix
    return code.basis


def iter_codewords(code: LinearCode) -> Iterator[np.ndarray]:
    """All p^k codewords in blocks, ordered by message encoding.

    For a trace code of full dimension the message index equals the
    encoding of x, so block rows follow the canonical order of GF(q).
    """
    B = _rows_for(code)
    k, p = B.shape[0], code.p
    total = p**k
    _check_ceiling(total, "codeword enumeration")
    step = max(1, _CHUNK_ENTRIES // max(1, code.n))
    for start in range(0, total, step):
        yield _encode_block(_messages(p, k, start, min(total, start + step)), B, p)


def _projective_messages(p: int, k: int) -> Iterator[np.ndarray]:
    # messages whose highest nonzero digit is 1: one per GF(p)* class
    for top in range(k):
        low = _messages(p, top, 0, p**top) if top else np.zeros((1, 0), dtype=np.int64)
        U = np.zeros((low.shape[0], k), dtype=np.int64)
        U[:, :top] = low
        U[:, top] = 1
        yield U


@dataclass
class WeightDistribution:
    n: int
    k: int
    counts: dict[int, int]

    def __post_init__(self):
        self.counts = {int(w): int(a) for w, a in sorted(self.counts.items()) if a}

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def nonzero(self) -> dict[int, int]:
        return {w: a for w, a in self.counts.items() if w}

    @property
    def min_weight(self) -> int | None:
        nz = self.nonzero
        return min(nz) if nz else None

    @property
    def max_weight(self) -> int | None:
        nz = self.nonzero
        return max(nz) if nz else None

    def to_json(self) -> list[dict]:
        return [{"w": w, "A": a} for w, a in self.counts.items()]


def weight_distribution(code: LinearCode) -> WeightDistribution:
    """Exact weight distribution by enumerating the row space.

    Codewords are enumerated one per GF(p)* class (scalar multiples share a
    weight) and each class is counted p-1 times.
    """
    B = code.basis
    k, p, n = code.k, code.p, code.n
    _check_ceiling(p**k, "weight distribution")
    counts: Counter = Counter({0: 1})
    step = max(1, _CHUNK_ENTRIES // max(1, n))
    for U in _projective_messages(p, k):
        for start in range(0, U.shape[0], step):
            C = _encode_block(U[start:start + step], B, p)
            w = np.count_nonzero(C, axis=1)
            vals, mult = np.unique(w, return_counts=True)
            for v, c in zip(vals.tolist(), mult.tolist()):
                counts[v] += c * (p - 1)
    return WeightDistribution(n, k, counts)


def minimum_distance(code: LinearCode, wd: WeightDistribution | None = None) -> int | None:
    wd = wd or weight_distribution(code)
    return wd.min_weight


def dual_code(code: LinearCode) -> LinearCode:
    """C^perp with generator matrix the reduced-echelon null-space basis of G."""
    return LinearCode(code.p, null_space(code.gen_matrix, code.p))


def _normalize_columns(M: np.ndarray, p: int) -> np.ndarray:
    """Scale each column so its first nonzero entry is 1; zero columns stay zero."""
    M = np.asarray(M, dtype=np.int64) % p
    out = M.copy()
    for j in range(M.shape[1]):
        nz = np.nonzero(M[:, j])[0]
        if nz.size:
            out[:, j] = M[:, j] * pow(int(M[nz[0], j]), p - 2, p) % p
    return out


def _column_keys(M: np.ndarray, p: int) -> np.ndarray:
    return (M * p ** np.arange(M.shape[0], dtype=np.int64)[:, None]).sum(axis=0)


def _normalize_vectors(V: np.ndarray, p: int) -> np.ndarray:
    """Row-wise: scale each row so its first nonzero entry is 1."""
    V = V % p
    first = np.argmax(V != 0, axis=1)
    lead = V[np.arange(V.shape[0]), first]
    inv = np.array([pow(int(a), p - 2, p) if a else 0 for a in range(p)], dtype=np.int64)
    return V * inv[lead][:, None] % p


def min_dependent_columns(G: np.ndarray, p: int, max_size: int = 4) -> int | None:
    """Smallest number of linearly dependent columns of G, searched up to max_size."""
    G = np.asarray(G, dtype=np.int64) % p
    n = G.shape[1]
    if np.any(np.all(G == 0, axis=0)):
        return 1
    N = _normalize_columns(G, p)
    keys = _column_keys(N, p)
    if len(np.unique(keys)) < n:
        return 2
    if max_size < 3 or n < 3:
        return None
    key_set = set(keys.tolist())
    weights = p ** np.arange(G.shape[0], dtype=np.int64)
    cols = N.T
    # size 3: g_k proportional to g_i + a g_j
    for i in range(n - 1):
        for a in range(1, p):
            V = _normalize_vectors(cols[i][None, :] + a * cols[i + 1:], p)
            if np.any(np.isin(V @ weights, list(key_set))):
                return 3
    if max_size < 4 or n < 4:
        return None
    # size 4: a g_i + g_j = c g_k + g_l with {i,j} and {k,l} disjoint
    seen: dict[int, list[tuple[int, int]]] = {}
    for i, j in itertools.combinations(range(n), 2):
        for a in range(1, p):
            v = (a * cols[i] + cols[j]) % p
            key = int(_normalize_vectors(v[None, :], p)[0] @ weights)
            for (k, l) in seen.get(key, ()):
                if len({i, j, k, l}) == 4:
                    return 4
            seen.setdefault(key, []).append((i, j))
    return None


def dual_minimum_distance(code: LinearCode) -> int | None:
    """d of the dual code; None when the dual is the zero code.

    Enumerates the dual when n-k <= 20 and p^(n-k) fits the ceiling,
    otherwise searches for the smallest dependent set of columns of G.
    """
    r = code.n - code.k
    if r == 0:
        return None
    if r <= 20 and code.p**r <= config.get_ceiling():
        return minimum_distance(dual_code(code))
    d = min_dependent_columns(code.basis, code.p, max_size=4)
    if d is None:
        raise ResourceError("dual distance exceeds 4 and the dual is too large to enumerate")
    return d


def complete_weight_table(code: LinearCode) -> dict[tuple[int, ...], int]:
    """Map (count of symbol 0, ..., count of symbol p-1) -> number of codewords."""
    p = code.p
    table: Counter = Counter()
    for C in iter_codewords(code):
        freq = np.stack([np.count_nonzero(C == s, axis=1) for s in range(p)], axis=1)
        rows, mult = np.unique(freq, axis=0, return_counts=True)
        for r, c in zip(rows.tolist(), mult.tolist()):
            table[tuple(r)] += c
    return dict(sorted(table.items()))


def code_report(code: TraceCode, wd: WeightDistribution | None = None) -> dict:
    wd = wd or weight_distribution(code)
    return {
        "p": code.p,
        "m": code.ctx.m,
        "kind": code.kind,
        "n": code.n,
        "k": code.k,
        "d": wd.min_weight,
        "weights": wd.to_json(),
    }


def make_code(p: int, m: int, punctured: bool = False, modulus=None) -> TraceCode:
    ctx = FieldCtx(p, m, modulus)
    D = build_defining_set(ctx)
    if punctured:
        D = puncture_representatives(D)
    return build_code(ctx, D)
