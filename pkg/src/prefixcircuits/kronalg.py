"""Exact integer linear algebra behind the triangular decomposition identities.

Matrices are dense ``numpy`` int64 arrays; every check here is combinatorial
and compared bit-exactly, never with a float tolerance.  The magnitudes stay
tiny (entries of the triangular constructions are 0/1 and test vectors are
small), so int64 is exact throughout.

The inclusive prefix sum of a vector x is L @ x with L the lower triangular
all-ones matrix.  L factors through any splitting n = n1 * n2::

    L_n = L_n1 (x) L_n2 + Lminus_n1 (x) Uminus_n2
        = I_n1 (x) L_n2 + Lminus_n1 (x) ones

with ``(x)`` the Kronecker product; the equivalent upper form and the
all-ones/strict-lower proof identity are verified by :func:`decomposition_check`.
Evaluating the second form column-blockwise is a two-term recursion on
blocks, which is what the circuit generators exploit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_KINDS = ("L", "U", "Lminus", "Uminus", "I", "Ones")


def build(kind: str, n: int) -> np.ndarray:
    """Triangular all-ones / identity / all-ones matrix constructors."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "L":
        return np.tril(np.ones((n, n), dtype=np.int64))
    if kind == "U":
        return np.triu(np.ones((n, n), dtype=np.int64))
    if kind == "Lminus":
        return np.tril(np.ones((n, n), dtype=np.int64), -1)
    if kind == "Uminus":
        return np.triu(np.ones((n, n), dtype=np.int64), 1)
    if kind == "I":
        return np.eye(n, dtype=np.int64)
    if kind == "Ones":
        return np.ones((n, n), dtype=np.int64)
    raise ValueError(f"unknown kind {kind!r}; expected one of {_KINDS}")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with exact integer dtype preserved."""
    return np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def decomposition_check(n1: int, n2: int) -> bool:
    """Verify the two-term Kronecker decompositions of L_n and U_n exactly.

    Requires n1, n2 >= 2.  Checks, for n = n1*n2:

    1. L_n == L_n1 (x) L_n2 + Lminus_n1 (x) Uminus_n2
    2. L_n == I_n1 (x) L_n2 + Lminus_n1 (x) Ones_n2
    3. U_n == U_n1 (x) U_n2 + Uminus_n1 (x) Lminus_n2
    4. U_n == U_n1 (x) Ones_n2 - I_n1 (x) Lminus_n2
    """
    if n1 < 2 or n2 < 2:
        raise ValueError("decomposition requires n1, n2 >= 2")
    n = n1 * n2
    L, U = build("L", n), build("U", n)
    checks = (
        np.array_equal(L, kron(build("L", n1), build("L", n2))
                       + kron(build("Lminus", n1), build("Uminus", n2))),
        np.array_equal(L, kron(build("I", n1), build("L", n2))
                       + kron(build("Lminus", n1), build("Ones", n2))),
        np.array_equal(U, kron(build("U", n1), build("U", n2))
                       + kron(build("Uminus", n1), build("Lminus", n2))),
        np.array_equal(U, kron(build("U", n1), build("Ones", n2))
                       - kron(build("I", n1), build("Lminus", n2))),
    )
    return all(checks)


def mat_s(x, s: int) -> np.ndarray:
    """Reshape a length-n vector into s x ceil(n/s) column blocks.

    Column i is x[i*s : i*s + s], zero-padded when s does not divide n.
    Requires 1 < s < n.
    """
    x = np.asarray(x, dtype=np.int64)
    n = len(x)
    if not 1 < s < n:
        raise ValueError(f"need 1 < s < n, got s={s}, n={n}")
    cols = -(-n // s)
    padded = np.zeros(s * cols, dtype=np.int64)
    padded[:n] = x
    return padded.reshape(cols, s).T.copy()


def vec(X: np.ndarray) -> np.ndarray:
    """Stack the columns of X into a single vector (inverse of mat_s)."""
    return np.asarray(X, dtype=np.int64).T.reshape(-1).copy()


def prefix_via_kron(x, n1: int, n2: int) -> np.ndarray:
    """Inclusive prefix sums of x through the split L_n = I(x)L + Lminus(x)ones.

    Term one applies L_n2 to each column block (n1 independent prefix sums
    of length n2).  Term two broadcasts the exclusive prefix sums of the
    column totals; it is computed as column sums followed by an exclusive
    scan, never as a full n x n multiply.  Exact integers; must equal the
    serial fold.
    """
    x = np.asarray(x, dtype=np.int64)
    if n1 * n2 != len(x):
        raise ValueError(f"n1*n2 = {n1 * n2} != len(x) = {len(x)}")
    X = x.reshape(n1, n2).T  # mat_{n2}(x): columns are the blocks
    term1 = np.cumsum(X, axis=0, dtype=np.int64)  # L_{n2} @ X
    colsums = X.sum(axis=0, dtype=np.int64)
    excl = np.concatenate(([0], np.cumsum(colsums[:-1], dtype=np.int64)))
    return vec(term1 + excl[np.newaxis, :])


def brent_kung_kron_step(x) -> np.ndarray:
    """One pair-and-recurse step of the prefix sum, in matrix form.

    Pairs adjacent entries (with the last entry peeled off when the length
    is odd), recursively prefix-sums the pair totals, and completes the
    even positions from the shifted recursive result.  Equals L_n @ x.
    """
    x = np.asarray(x, dtype=np.int64)
    n = len(x)
    if n <= 1:
        return x.copy()
    if n % 2:
        head = brent_kung_kron_step(x[:-1])
        return np.concatenate((head, [head[-1] + x[-1]]))
    X = x.reshape(n // 2, 2).T  # mat_2(x)
    w = X.sum(axis=0, dtype=np.int64)  # step 1: pair totals
    z = brent_kung_kron_step(w)  # step 2: recurse
    Y = np.empty_like(X)
    Y[1, :] = z
    Y[0, 0] = X[0, 0]
    Y[0, 1:] = X[0, 1:] + z[:-1]  # step 3: complete the first row
    return vec(Y)


@dataclass(frozen=True)
class HStats:
    """Iterates of h(v) = ceil(v/s) - 1, the recursion's size map.

    ``h_seq[k]`` is the k-th iterate starting from ``h_seq[0] = n``;
    iteration stops at the first value <= s.  ``h_star`` is the largest k
    with ``h_seq[k] > s`` (0 when already h(n) <= s), and ``remainder`` is
    the iterate at ``h_star`` -- so the blocked recursion reaches its serial
    base case after exactly ``h_star + 1`` levels.
    """

    s: int
    n: int
    h_seq: tuple
    h_star: int
    remainder: int


def h_stats(n: int, s: int) -> HStats:
    if n < 1 or s < 2:
        raise ValueError("need n >= 1 and s >= 2")
    seq = [n]
    while seq[-1] > s:
        seq.append(-(-seq[-1] // s) - 1)
    h_star = max((k for k in range(1, len(seq)) if seq[k] > s), default=0)
    return HStats(s, n, tuple(seq), h_star, seq[h_star])
