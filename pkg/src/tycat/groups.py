"""Fingerprints of small finite groups.

A fingerprint is (order, element-order histogram, abelian flag, center
order, derived-subgroup order).  The reference list is generated from
permutation and matrix models of a few families; a label is returned only
when exactly one reference group has the fingerprint.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd

from .abelian import FinAbGroup, canonicalize, format_group
from .intlinalg import factorize

Perm = tuple[int, ...]


def _compose(p: Perm, q: Perm) -> Perm:
    """(p * q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def _close(gens: list[Perm]) -> list[Perm]:
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return sorted(seen)


def fingerprint_of_elements(elems: list, mul, ident) -> tuple:
    idx = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = [[idx[mul(a, b)] for b in elems] for a in elems]
    from .witt import _table_invariants

    orders, hist, abelian, zc, dc = _table_invariants(table, idx[ident])
    return (n, tuple(sorted(hist.items())), abelian, zc, dc)


def _abelian_fingerprint(factors: tuple[int, ...]) -> tuple:
    G = FinAbGroup(factors)
    hist: dict[int, int] = {}
    for x in G.elements():
        o = G.element_order(x)
        hist[o] = hist.get(o, 0) + 1
    return (G.order, tuple(sorted(hist.items())), True, G.order, 1)


def _abelian_types(n: int) -> list[tuple[int, ...]]:
    """All invariant-factor types of abelian groups of order n."""
    out = set()

    def partitions(k, maxpart=None):
        if k == 0:
            yield ()
            return
        maxpart = k if maxpart is None else maxpart
        for part in range(min(k, maxpart), 0, -1):
            for rest in partitions(k - part, part):
                yield (part,) + rest

    per_prime = []
    for p, k in factorize(n).items():
        per_prime.append([[p**e for e in part] for part in partitions(k)])
    for combo in itertools.product(*per_prime):
        factors = tuple(x for part in combo for x in part)
        out.add(canonicalize(FinAbGroup(factors)).factors)
    return sorted(out)


def _dihedral(n: int) -> list[Perm]:
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return _close([r, s])


def _dicyclic(m: int) -> tuple[list, callable, tuple]:
    """Dic_m of order 4m as pairs (k, e): a^k x^e with a^{2m} = 1, x^2 = a^m, x a x^-1 = a^-1."""
    N = 2 * m

    def mul(u, v):
        k1, e1 = u
        k2, e2 = v
        if e1 == 0:
            return ((k1 + k2) % N, e2)
        if e2 == 0:
            return ((k1 - k2) % N, 1)
        return ((k1 - k2 + m) % N, 0)

    elems = [(k, e) for e in (0, 1) for k in range(N)]
    return elems, mul, (0, 0)


def _sl23() -> tuple[list, callable, tuple]:
    mats = []
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 1:
            mats.append((a, b, c, d))

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    return mats, mul, (1, 0, 0, 1)


def _direct(g1, g2):
    e1, m1, i1 = g1
    e2, m2, i2 = g2
    return [(a, b) for a in e1 for b in e2], (lambda x, y: (m1(x[0], y[0]), m2(x[1], y[1]))), (i1, i2)


def _perm_group(elems):
    n = len(elems[0])
    return elems, _compose, tuple(range(n))


def _cyclic(n):
    return list(range(n)), (lambda a, b: (a + b) % n), 0


@lru_cache(maxsize=1)
def reference_fingerprints() -> dict[tuple, list[str]]:
    table: dict[tuple, list[str]] = {}

    def add(name, fp):
        table.setdefault(fp, [])
        if name not in table[fp]:
            table[fp].append(name)

    for n in range(1, 61):
        for t in _abelian_types(n):
            label = "trivial" if n == 1 else ("Z" + "xZ".join(str(f) for f in t))
            if len(t) == 1:
                label = f"Z{t[0]}"
            add(label, _abelian_fingerprint(t))
    for n in range(3, 31):
        name = "S3" if n == 3 else f"D{n}"
        add(name, fingerprint_of_elements(*_perm_group(_dihedral(n))))
    for m in range(2, 16):
        name = "Q8" if m == 2 else f"Dic{m}"
        add(name, fingerprint_of_elements(*_dicyclic(m)))
    s4 = _close([(1, 2, 3, 0), (1, 0, 2, 3)])
    add("S4", fingerprint_of_elements(*_perm_group(s4)))
    a4 = _close([(1, 2, 0, 3), (0, 2, 3, 1)])
    add("A4", fingerprint_of_elements(*_perm_group(a4)))
    a5 = _close([(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)])
    add("A5", fingerprint_of_elements(*_perm_group(a5)))
    add("SL(2,3)", fingerprint_of_elements(*_sl23()))
    add("S3xZ3", fingerprint_of_elements(*_direct(_perm_group(_dihedral(3)), _cyclic(3))))
    add("A4xZ2", fingerprint_of_elements(*_direct(_perm_group(a4), _cyclic(2))))
    add("Q8xZ2", fingerprint_of_elements(*_direct(_dicyclic(2), _cyclic(2))))
    add("D4xZ2", fingerprint_of_elements(*_direct(_perm_group(_dihedral(4)), _cyclic(2))))
    return table


def identify(order: int, histogram: dict, abelian: bool, center: int, derived: int) -> str:
    """Label for the fingerprint, or ``"unknown"`` when no unique reference group matches."""
    if order > 60:
        return "unknown"
    fp = (order, tuple(sorted(histogram.items())), abelian, center, derived)
    names = reference_fingerprints().get(fp, [])
    return names[0] if len(names) == 1 else "unknown"
