"""Integer and local (mod p^K) linear algebra.

Two tools live here:

* :func:`smith_normal_form` works over the integers with Python ints and
  returns unimodular transforms.  It is meant for the small presentation
  matrices that describe subgroups and quotients.
* :func:`local_snf` works over ``Z/p^K`` with numpy ``int64`` arrays.  It
  is the workhorse for bar-resolution cohomology, where matrices have a
  few thousand rows.

Example
-------
>>> d, u, v = smith_normal_form([[2, 4], [6, 8]])
>>> d
[2, 4]
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import numpy as np

Matrix = list[list[int]]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n is always small here)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def smith_normal_form(mat: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form over Z.

    Returns ``(diag, U, V)`` with ``U @ mat @ V`` diagonal, diagonal entries
    non-negative and each dividing the next.  ``diag`` has length
    ``min(rows, cols)``.
    """
    a = [list(map(int, row)) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        if k:
            for row in a:
                row[dst] += k * row[src]
            for row in v:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pick the nonzero entry of least absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
                        swap_rows(t, i)
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
                        swap_cols(t, j)
            if not done:
                continue
            # divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [a[i][i] if i < m and i < n else 0 for i in range(min(m, n))]
    return diag, u, v


def inverse_unimodular(mat: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix (exact, via fractions-free Gauss-Jordan)."""
    from fractions import Fraction

    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


# ---------------------------------------------------------------------------
# local arithmetic over Z/p^K


def _inv_mod(x: int, mod: int) -> int:
    return pow(int(x), -1, mod)


@dataclass
class LocalSNF:
    """Result of :func:`local_snf`.

    Pivot ``t`` sits at ``(rows[t], cols[t])`` with value ``p^valuations[t]``
    after the row operations ``U`` (never materialized) and the column
    operations ``V`` (materialized when tracked): ``U A V`` is zero except at
    the pivots.  ``rhs``, when given, has been multiplied by ``U``.
    """

    p: int
    K: int
    valuations: list[int]
    rows: list[int]
    cols: list[int]
    V: Optional[np.ndarray]
    rhs: Optional[np.ndarray]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.valuations)


def local_snf(
    a: np.ndarray,
    p: int,
    K: int,
    track_v: bool = False,
    rhs: Optional[np.ndarray] = None,
) -> LocalSNF:
    """Smith form of ``a`` over ``Z/p^K`` by a column sweep per valuation level.

    At level ``v`` every remaining entry is divisible by ``p^v``; each column
    is scanned once for an entry of valuation exactly ``v``.  Eliminating
    with such a pivot keeps the other columns divisible by ``p^(v+1)``
    wherever they were, so a single sweep per level suffices.
    """
    mod = p**K
    if mod >= 2**31:
        raise OverflowError("modulus too large for int64 elimination")
    a = np.array(a, dtype=np.int64) % mod
    m, n = a.shape
    V = np.eye(n, dtype=np.int64) if track_v else None
    b = None if rhs is None else (np.array(rhs, dtype=np.int64).reshape(m, -1) % mod)
    active_row = np.ones(m, dtype=bool)
    active_col = np.ones(n, dtype=bool)
    vals: list[int] = []
    prow: list[int] = []
    pcol: list[int] = []
    pk = 1
    for level in range(K):
        nxt = pk * p
        for j in range(n):
            if not active_col[j]:
                continue
            col = a[:, j]
            hits = np.nonzero(active_row & (col % nxt != 0))[0]
            if hits.size == 0:
                continue
            i = int(hits[0])
            unit = (int(col[i]) // pk) % mod
            uinv = _inv_mod(unit, mod)
            if uinv != 1:
                a[i] = (a[i] * uinv) % mod
                if b is not None:
                    b[i] = (b[i] * uinv) % mod
            others = np.nonzero(active_row & (col != 0))[0]
            others = others[others != i]
            if others.size:
                factors = (a[others, j] // pk) % mod
                a[others] = (a[others] - np.outer(factors, a[i])) % mod
                if b is not None:
                    b[others] = (b[others] - np.outer(factors, b[i])) % mod
            if V is not None:
                row = a[i].copy()
                row[j] = 0
                nzc = np.nonzero(row)[0]
                if nzc.size:
                    factors = (row[nzc] // pk) % mod
                    V[:, nzc] = (V[:, nzc] - np.outer(V[:, j], factors)) % mod
            a[i] = 0
            a[i, j] = pk
            active_row[i] = False
            active_col[j] = False
            vals.append(level)
            prow.append(i)
            pcol.append(j)
        pk = nxt
    return LocalSNF(p=p, K=K, valuations=vals, rows=prow, cols=pcol, V=V, rhs=b, shape=(m, n))


def kernel_mod_pk(a: np.ndarray, p: int, K: int) -> np.ndarray:
    """Generators (as columns) of ``{x : a x = 0 mod p^K}``."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    res = local_snf(a, p, K, track_v=True)
    gens = []
    pivot_of = dict(zip(res.cols, res.valuations))
    for j in range(n):
        v = pivot_of.get(j)
        if v is None:
            gens.append(res.V[:, j] % p**K)
        elif v > 0:
            gens.append((res.V[:, j] * p ** (K - v)) % p**K)
    if not gens:
        return np.zeros((n, 0), dtype=np.int64)
    return np.stack(gens, axis=1)


def solve_mod_pk(a: np.ndarray, rhs: np.ndarray, p: int, K: int) -> Optional[np.ndarray]:
    """One solution of ``a x = rhs (mod p^K)`` or ``None``."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    res = local_snf(a, p, K, track_v=True, rhs=np.asarray(rhs).reshape(m, 1))
    mod = p**K
    b = res.rhs[:, 0]
    y = np.zeros(n, dtype=np.int64)
    for i, j, v in zip(res.rows, res.cols, res.valuations):
        if b[i] % p**v:
            return None
        y[j] = (b[i] // p**v) % mod
    rest = np.ones(m, dtype=bool)
    rest[res.rows] = False
    if np.any(b[rest] % mod):
        return None
    return (res.V @ y) % mod


def solve_mod(a: np.ndarray, rhs: np.ndarray, modulus: int) -> Optional[np.ndarray]:
    """Solve ``a x = rhs (mod modulus)`` prime by prime, glued by CRT."""
    a = np.asarray(a, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    n = a.shape[1]
    if modulus == 1:
        return np.zeros(n, dtype=np.int64)
    x = np.zeros(n, dtype=object)
    acc = 1
    for p, k in factorize(modulus).items():
        pk = p**k
        part = solve_mod_pk(a % pk, rhs % pk, p, k)
        if part is None:
            return None
        # combine x (mod acc) with part (mod pk)
        inv = pow(acc, -1, pk)
        for i in range(n):
            xi = int(x[i])
            t = ((int(part[i]) - xi) * inv) % pk
            x[i] = xi + acc * t
        acc *= pk
    return np.array([int(v) % modulus for v in x], dtype=np.int64)


def invariant_valuations(a: np.ndarray, p: int, K: int) -> list[int]:
    """Valuations of the nonzero invariant factors of ``a`` over Z/p^K."""
    return local_snf(a, p, K).valuations


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
