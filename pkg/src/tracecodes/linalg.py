"""Gaussian elimination over GF(p) on integer numpy matrices."""

import numpy as np


def rref(A, p):
    """Reduced row echelon form of A mod p.

    Returns ``(R, pivots)`` where R keeps only the nonzero rows.
    """
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = R[r] * pow(int(R[r, c]), p - 2, p) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(A, p) -> int:
    return len(rref(A, p)[1])


def null_space(A, p):
    """Basis (as rows, in reduced echelon form) of {v : A v = 0}."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, pc in enumerate(pivots):
            basis[j, pc] = (-R[i, f]) % p
    if basis.shape[0] == 0:
        return basis
    return rref(basis, p)[0]


def solve(A, b, p):
    """One solution x of A x = b mod p, or None when the system is inconsistent."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    rows, cols = A.shape
    R, pivots = rref(np.hstack([A, b]), p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return x
