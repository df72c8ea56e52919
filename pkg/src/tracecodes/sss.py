"""Massey secret sharing on the dual of a linear code.

The dealer picks u with u.h_0 = s and hands out t = uH minus its first
coordinate.  Minimal access sets are the supports (minus coordinate 0) of
the minimal codewords of the base code whose first coordinate is nonzero.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .codes import (
    LinearCode,
    TraceCode,
    _check_ceiling,
    _encode_block,
    _projective_messages,
    dual_minimum_distance,
)
from .errors import DegenerateSchemeError, IntegrityError, ParameterError
from .linalg import null_space, solve


@dataclass(frozen=True, eq=False)
class MasseyScheme:
    base_code: LinearCode
    H: np.ndarray

    @property
    def p(self) -> int:
        return self.base_code.p

    @property
    def n(self) -> int:
        return self.base_code.n

    @property
    def participants(self) -> int:
        return self.n - 1

    @property
    def secret_column(self) -> np.ndarray:
        return self.H[:, 0]


@dataclass(frozen=True)
class ShareDeal:
    secret: int
    seed: int
    shares: tuple[int, ...]


@dataclass
class AccessStructure:
    n_participants: int
    minimal_access_sets: list[tuple[int, ...]]
    per_participant_count: dict[int, int] = field(init=False)
    dictators: set[int] = field(init=False)

    def __post_init__(self):
        counts = Counter(i for s in self.minimal_access_sets for i in s)
        self.per_participant_count = {i: counts.get(i, 0)
                                      for i in range(1, self.n_participants + 1)}
        total = len(self.minimal_access_sets)
        self.dictators = {i for i, c in self.per_participant_count.items() if total and c == total}

    def group_counts(self, t: int) -> Counter:
        """Number of minimal access sets containing each t-subset of participants."""
        out: Counter = Counter()
        for s in self.minimal_access_sets:
            out.update(itertools.combinations(s, t))
        return out

    def to_json(self) -> dict:
        return {
            "participants": self.n_participants,
            "minimal_access_sets": [list(s) for s in self.minimal_access_sets],
            "count": len(self.minimal_access_sets),
            "per_participant_count": {str(i): c for i, c in self.per_participant_count.items()},
            "dictators": sorted(self.dictators),
        }


def setup(code: LinearCode) -> MasseyScheme:
    if code.n < 2 or code.k < 1:
        raise DegenerateSchemeError("the base code needs n >= 2 and k >= 1")
    H = null_space(code.gen_matrix, code.p)
    if H.shape[0] == 0:
        raise DegenerateSchemeError("the dual code is trivial (n = k)")
    if not H[:, 0].any():
        raise DegenerateSchemeError("column h_0 of the dual generator matrix is zero")
    H.setflags(write=False)
    return MasseyScheme(code, H)


def deal(scheme: MasseyScheme, secret: int, seed: int) -> ShareDeal:
    """Shares for ``secret`` from a PCG64 generator seeded with ``seed``.

    Every coordinate of u is drawn uniformly, then the first coordinate where
    h_0 is nonzero is overwritten so that u.h_0 = secret.  This makes u
    uniform over the solutions.
    """
    p = scheme.p
    if not 0 <= secret < p:
        raise ParameterError(f"secret must lie in [0, {p - 1}]")
    h0 = scheme.secret_column
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.integers(0, p, size=h0.size, dtype=np.int64)
    j = int(np.nonzero(h0)[0][0])
    u[j] = 0
    rest = int(u @ h0) % p
    u[j] = (secret - rest) * pow(int(h0[j]), p - 2, p) % p
    t = u @ scheme.H % p
    assert int(t[0]) == secret
    return ShareDeal(secret, seed, tuple(int(v) for v in t[1:]))


def _check_indices(scheme: MasseyScheme, indices) -> list[int]:
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise ParameterError("participant indices must be distinct")
    bad = [i for i in idx if not 1 <= i <= scheme.participants]
    if bad:
        raise ParameterError(f"participant indices out of range 1..{scheme.participants}: {bad}")
    return idx


def is_access_set(scheme: MasseyScheme, indices) -> bool:
    idx = _check_indices(scheme, indices)
    if not idx:
        return False
    return solve(scheme.H[:, idx], scheme.secret_column, scheme.p) is not None


def recover(scheme: MasseyScheme, indices, shares) -> int | None:
    """The secret, or None when ``indices`` is not an access set.

    With all n-1 shares present the padded vector must lie in the dual code,
    otherwise IntegrityError is raised.
    """
    idx = _check_indices(scheme, indices)
    vals = np.asarray(list(shares), dtype=np.int64) % scheme.p
    if vals.size != len(idx):
        raise ParameterError("need exactly one share per participant index")
    if not idx:
        return None
    x = solve(scheme.H[:, idx], scheme.secret_column, scheme.p)
    if x is None:
        return None
    s = int(x @ vals) % scheme.p
    if len(idx) == scheme.participants:
        t = np.zeros(scheme.n, dtype=np.int64)
        t[0] = s
        t[idx] = vals
        if (scheme.base_code.gen_matrix @ t % scheme.p).any():
            raise IntegrityError("shares are not consistent with any codeword of the dual code")
    return s


# -- minimal codewords ---------------------------------------------------------

def _class_representatives(code: LinearCode) -> np.ndarray:
    """One nonzero codeword per GF(p)* class, as an (N, n) array."""
    _check_ceiling(code.p**code.k, "minimal codeword search")
    blocks = [_encode_block(U, code.basis, code.p) for U in _projective_messages(code.p, code.k)]
    return np.concatenate(blocks).astype(np.int64)


def _minimal_flags(C: np.ndarray, threads: int = 1) -> np.ndarray:
    S = C != 0
    w = S.sum(axis=1)
    packed = np.packbits(S, axis=1)

    def check(rows):
        out = []
        for i in rows:
            lighter = packed[w < w[i]]
            covered = ~np.any(lighter & ~packed[i], axis=1)
            out.append(not covered.any())
        return out

    rows = np.arange(C.shape[0])
    if threads <= 1 or len(rows) < 256:
        return np.array(check(rows), dtype=bool)
    chunks = np.array_split(rows, threads * 4)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(check, chunks))
    return np.array([f for part in parts for f in part], dtype=bool)


def minimal_codewords(code: LinearCode, threads: int = 1) -> np.ndarray:
    """All minimal nonzero codewords, scalar multiples included.

    c is minimal iff no nonzero codeword has support strictly inside supp(c).
    """
    reps = _class_representatives(code)
    keep = reps[_minimal_flags(reps, threads)]
    return np.concatenate([keep * a % code.p for a in range(1, code.p)])


def access_set_of(codeword) -> tuple[int, ...]:
    """Participants named by a codeword with nonzero first coordinate."""
    c = np.asarray(codeword)
    if c[0] == 0:
        raise ParameterError("codeword has a zero secret coordinate")
    return tuple(int(i) for i in np.nonzero(c[1:])[0] + 1)


def access_structure(code: LinearCode, threads: int = 1) -> AccessStructure:
    reps = _class_representatives(code)
    minimal = reps[_minimal_flags(reps, threads)]
    sets = {access_set_of(c) for c in minimal if c[0]}
    return AccessStructure(code.n - 1, sorted(sets, key=lambda s: (len(s), s)))


def proportional_to_secret_column(code: LinearCode) -> set[int]:
    """Participants i whose column g_i of G is a nonzero multiple of g_0."""
    G = code.basis
    g0 = G[:, 0]
    out = set()
    for i in range(1, code.n):
        if any(np.array_equal(G[:, i], a * g0 % code.p) for a in range(1, code.p)):
            out.add(i)
    return out


def theoretical_stats(p: int, k: int, d_dual: int, t: int = 1) -> dict:
    """Access structure counts predicted when every nonzero codeword is minimal.

    For d_dual = 2, participants with g_i a multiple of g_0 lie in every set
    and the rest lie in (p-1) p^(k-2).  For d_dual >= 3 every group of t
    participants lies in (p-1)^t p^(k-t-1) sets, 1 <= t <= min(k-1, d_dual-2).
    """
    total = p ** (k - 1)
    if d_dual == 2:
        return {"d_dual": 2, "minimal_access_sets": total, "dictator": total,
                "non_dictator": (p - 1) * p ** (k - 2)}
    if d_dual < 2:
        raise ParameterError("dual distance must be at least 2")
    if not 1 <= t <= min(k - 1, d_dual - 2):
        raise ParameterError(f"t must lie in [1, {min(k - 1, d_dual - 2)}]")
    return {"d_dual": d_dual, "t": t, "minimal_access_sets": total,
            "per_group": (p - 1) ** t * p ** (k - t - 1)}


def structure_report(code: LinearCode, threads: int = 1) -> dict:
    """Enumerated access structure compared with the predicted counts."""
    st = access_structure(code, threads)
    d_dual = dual_minimum_distance(code)
    reps = _class_representatives(code)
    all_minimal = bool(_minimal_flags(reps, threads).all())
    report = {"n": code.n, "k": code.k, "d_dual": d_dual, "all_minimal": all_minimal,
              "structure": st.to_json(), "checks": []}
    if d_dual is None or not all_minimal:
        return report
    if d_dual == 2:
        pred = theoretical_stats(code.p, code.k, 2)
        prop = proportional_to_secret_column(code)
        counts = st.per_participant_count
        report["checks"].append({
            "check": "dictators",
            "predicted": sorted(prop),
            "observed": sorted(st.dictators),
            "pass": prop == st.dictators and all(
                c == (pred["dictator"] if i in prop else pred["non_dictator"])
                for i, c in counts.items()),
        })
        return report
    report["checks"].append({"check": "count", "predicted": code.p ** (code.k - 1),
                             "observed": len(st.minimal_access_sets),
                             "pass": len(st.minimal_access_sets) == code.p ** (code.k - 1)})
    for t in range(1, min(code.k - 1, d_dual - 2, 2) + 1):
        pred = theoretical_stats(code.p, code.k, d_dual, t)["per_group"]
        if t == 1:
            observed = set(st.per_participant_count.values())
        else:
            groups = st.group_counts(t)
            n_groups = sum(1 for _ in itertools.combinations(range(code.n - 1), t))
            observed = set(groups.values()) | ({0} if len(groups) < n_groups else set())
        report["checks"].append({"check": f"t={t}", "predicted": pred,
                                 "observed": sorted(observed), "pass": observed == {pred}})
    if d_dual < 4:
        report["skipped"] = [f"t=2 needs d_dual >= 4, measured {d_dual}"]
    return report


def participant_count_report(code: TraceCode) -> dict:
    """n-1 participants versus the closed form p^(m-2); reported, never asserted."""
    stated = code.p ** (code.m - 2)
    return {"participants": code.n - 1, "closed_form_p^(m-2)": stated,
            "agree": code.n - 1 == stated}


def share_bundle(code: TraceCode, deal_: ShareDeal) -> dict:
    """JSON bundle of shares; the secret is deliberately left out."""
    return {
        "p": code.p,
        "m": code.m,
        "kind": code.kind,
        "modulus": list(code.ctx.modulus),
        "seed": deal_.seed,
        "shares": [{"participant": i + 1, "value": v} for i, v in enumerate(deal_.shares)],
    }
