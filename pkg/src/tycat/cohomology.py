"""Cohomology of small finite abelian groups.

Three independent routes:

* :func:`cohomology_cyclic` uses the 2-periodic resolution of a cyclic
  group: ``H^0 = M^G``, ``H^odd = Ker N / Im(s-1)``,
  ``H^even = Ker(s-1) / Im N`` with ``N = 1 + s + ... + s^(n-1)``.
* :func:`cohomology_bar` uses the normalized bar resolution, solved one
  prime at a time over ``Z/p^K`` by Smith forms.
* :func:`cohomology_torus` handles ``C^x`` coefficients.  On the periodic
  route it takes the image of ``H^d(G; Z/N) -> H^d(G; Z/N')`` induced by
  ``(1/N)Z/Z`` inside ``(1/N')Z/Z``, with a stabilization re-check; on the
  bar route it reads off the torsion of ``H^(d+1)(G; Z)``.

Cochains are numpy arrays of shape ``((|G|-1)^d, rank M)``: the value on
a tuple of non-identity elements, in the coordinates of ``M``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, prod
from typing import Optional, Sequence

import numpy as np

from .abelian import (
    Elem,
    FinAbGroup,
    GroupHom,
    Subgroup,
    TRIVIAL,
    canonicalize,
    format_group,
    parse_group,
    quotient,
)
from .errors import (
    ActionInvalid,
    CapExceeded,
    NotACocycle,
    PairingNotInvariant,
    ParseError,
    StabilizationFailure,
)
from .forms import Bicharacter
from .intlinalg import factorize, kernel_mod_pk, local_snf, solve_mod, solve_mod_pk
from .qz import QZ

CELL_CAP = 1 << 16


@dataclass(frozen=True)
class GModule:
    """Finite abelian group M with an action of the abelian group G (one automorphism per generator)."""

    G: FinAbGroup
    M: FinAbGroup
    action: tuple[GroupHom, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.action) != self.G.rank:
            raise ActionInvalid("need one automorphism per generator of G")
        for rho in self.action:
            if rho.source != self.M or rho.target != self.M:
                raise ActionInvalid("action maps must be endomorphisms of M")
        ident = GroupHom.identity(self.M)
        for n, rho in zip(self.G.factors, self.action):
            acc = ident
            for _ in range(n):
                acc = rho.compose(acc)
            if acc != ident:
                raise ActionInvalid(f"generator action does not have order dividing {n}")
        for r1, r2 in itertools.combinations(self.action, 2):
            if r1.compose(r2) != r2.compose(r1):
                raise ActionInvalid("generator actions do not commute")

    @classmethod
    def trivial(cls, G: FinAbGroup, M: FinAbGroup) -> "GModule":
        return cls(G, M, tuple(GroupHom.identity(M) for _ in G.factors), "trivial")

    def act_hom(self, g: Sequence[int]) -> GroupHom:
        out = GroupHom.identity(self.M)
        for k, rho in zip(g, self.action):
            for _ in range(k):
                out = rho.compose(out)
        return out

    def is_trivial(self) -> bool:
        ident = GroupHom.identity(self.M)
        return all(r == ident for r in self.action)

    def describe(self) -> str:
        return f"{format_group(self.M)}:{self.label or 'custom'}"


def named_action(M: FinAbGroup, name: str) -> GroupHom:
    r = M.rank
    basis = M.basis()
    if name == "trivial":
        return GroupHom.identity(M)
    if name == "neg":
        return GroupHom.from_images(M, M, [M.neg(e) for e in basis])
    if name in ("swap", "smatrix", "s-matrix", "S-matrix"):
        if r % 2:
            raise ParseError(f"action {name!r} needs an even number of factors")
        k = r // 2
        if M.factors[:k] != M.factors[k:]:
            raise ParseError(f"action {name!r} needs M = A + A")
        imgs = []
        for i in range(r):
            if name == "swap":
                j = (i + k) % r
                imgs.append(basis[j])
            else:
                # (a, l) -> (l, -a): e_i (a-part) -> -(l-part e_{i+k}); e_{i+k} -> e_i
                if i < k:
                    imgs.append(M.neg(basis[i + k]))
                else:
                    imgs.append(basis[i - k])
        return GroupHom.from_images(M, M, imgs)
    raise ParseError(f"unknown action {name!r} (trivial, neg, swap, smatrix)")


def parse_module(text: str, G: FinAbGroup) -> GModule:
    """``"Z2+Z2:swap"``, ``"Z4:neg"``, ``"Z3"`` (trivial action).  The named automorphism is used for every generator of G."""
    if ":" in text:
        mtxt, act = text.split(":", 1)
    else:
        mtxt, act = text, "trivial"
    M = parse_group(mtxt)
    rho = named_action(M, act.strip())
    try:
        return GModule(G, M, tuple(rho for _ in G.factors), act.strip())
    except ActionInvalid as exc:
        raise ParseError(str(exc)) from exc


@dataclass
class CohomologyGroup:
    degree: int
    group: FinAbGroup
    representatives: Optional[list] = None
    method: str = ""
    note: str = ""

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def is_zero(self) -> bool:
        return self.group.order == 1

    def literal(self) -> str:
        return format_group(self.group)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "group": format_group(self.group),
            "invariant_factors": list(self.group.factors),
            "method": self.method,
        }


# ---------------------------------------------------------------------------
# periodic resolution


def _subquotient(M: FinAbGroup, K: Sequence[Elem], I: Sequence[Elem]) -> tuple[FinAbGroup, list[Elem]]:
    """Canonical form of K / I (element lists of subgroups of M) and lifts of its generators."""
    Ks = Subgroup.from_elements(M, K, check=False)
    Kabs, inc = Ks.as_group()
    lookup = {inc(x): x for x in Kabs.elements()}
    Isub = Subgroup.from_elements(Kabs, [lookup[i] for i in I], check=False)
    Q = quotient(Kabs, Isub)
    table = Q.lift_table()
    reps = [inc(table[e]) for e in Q.group.basis()]
    return canonicalize(Q.group), reps


def _cyclic_pieces(M: FinAbGroup, sigma: GroupHom, n: int):
    elems = list(M.elements())
    zero = M.zero

    def norm(x):
        acc, cur = zero, x
        for _ in range(n):
            acc = M.add(acc, cur)
            cur = sigma(cur)
        return acc

    fixed = [x for x in elems if sigma(x) == x]
    ker_n = [x for x in elems if norm(x) == zero]
    im_sm1 = sorted({M.sub(sigma(x), x) for x in elems})
    im_n = sorted({norm(x) for x in elems})
    return fixed, ker_n, im_sm1, im_n


def cohomology_cyclic(n: int, module: GModule, degree: int) -> CohomologyGroup:
    if degree < 0:
        raise ValueError("degree must be non-negative")
    M = module.M
    if n == 1 or module.G.rank == 0:
        if degree == 0:
            return CohomologyGroup(0, canonicalize(M), [x for x in M.basis()], "periodic")
        return CohomologyGroup(degree, TRIVIAL, [], "periodic")
    if module.G.factors != (n,):
        raise ActionInvalid(f"module is over {format_group(module.G)}, not Z{n}")
    sigma = module.action[0]
    fixed, ker_n, im_sm1, im_n = _cyclic_pieces(M, sigma, n)
    if degree == 0:
        grp, reps = _subquotient(M, fixed, [M.zero])
    elif degree % 2:
        grp, reps = _subquotient(M, ker_n, im_sm1)
    else:
        grp, reps = _subquotient(M, fixed, im_n)
    return CohomologyGroup(degree, grp, reps, "periodic")


def _cyclic_torus_image(n: int, degree: int, N: int, N2: int) -> FinAbGroup:
    """Image of H^d(Z/n; Z/N) -> H^d(Z/n; Z/N2) under x -> (N2/N) x (trivial action)."""
    M1, M2 = FinAbGroup((N,)), FinAbGroup((N2,))
    s1, s2 = GroupHom.identity(M1), GroupHom.identity(M2)
    f1 = _cyclic_pieces(M1, s1, n)
    f2 = _cyclic_pieces(M2, s2, n)
    k = N2 // N
    if degree % 2:
        K1, K2, I2 = f1[1], f2[1], f2[2]
    else:
        K1, K2, I2 = f1[0], f2[0], f2[3]
    img = sorted({((k * x[0]) % N2,) for x in K1} | set(I2))
    img_sub = Subgroup.generated_by(M2, img)
    grp, _ = _subquotient(M2, img_sub.elements, I2)
    return grp


def cohomology_torus(G: FinAbGroup, degree: int, method: str = "auto") -> CohomologyGroup:
    """H^d(G; C^x) for trivial action, d >= 1."""
    if degree < 1:
        raise ValueError("H^0(G; C^x) = C^x is not a finite group")
    if G.rank == 0:
        return CohomologyGroup(degree, TRIVIAL, [], "trivial-group")
    cyclic = canonicalize(G).rank == 1
    if method == "bar" or (method == "auto" and not cyclic):
        return torus_bar(G, degree)
    if not cyclic:
        raise ActionInvalid("periodic route needs a cyclic group")
    n = G.order
    N = n * n
    first = _cyclic_torus_image(n, degree, N, N * n)
    second = _cyclic_torus_image(n, degree, N * n, N * n * n)
    if first.factors != second.factors:
        raise StabilizationFailure(
            f"H^{degree}: {format_group(first)} at N={N} but {format_group(second)} at N={N * n}"
        )
    return CohomologyGroup(degree, first, None, "periodic", f"N={N}, rechecked at {N * n}")


# ---------------------------------------------------------------------------
# bar resolution


@dataclass(frozen=True)
class BarData:
    G: FinAbGroup
    elements: tuple[Elem, ...]
    mult: np.ndarray  # mult[i, j] = index of elements[i] + elements[j]

    @property
    def B(self) -> int:
        return len(self.elements) - 1


@lru_cache(maxsize=32)
def bar_data(G: FinAbGroup) -> BarData:
    elems = tuple(G.elements())
    index = {e: i for i, e in enumerate(elems)}
    mult = np.array([[index[G.add(x, y)] for y in elems] for x in elems], dtype=np.int64)
    return BarData(G, elems, mult)


def _tuples(B: int, d: int) -> np.ndarray:
    """All d-tuples of non-identity indices 1..B, lexicographic."""
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((B,) * d).reshape(d, -1).T + 1
    return grids.astype(np.int64)


def _tuple_index(T: np.ndarray, B: int) -> np.ndarray:
    idx = np.zeros(T.shape[0], dtype=np.int64)
    for k in range(T.shape[1]):
        idx = idx * B + (T[:, k] - 1)
    return idx


def action_matrices(module: GModule) -> list[np.ndarray]:
    """Integer matrix of the action of every element of G (in bar_data order)."""
    bd = bar_data(module.G)
    out = []
    r = module.M.rank
    for g in bd.elements:
        h = module.act_hom(g)
        out.append(np.array(h.matrix, dtype=np.int64).reshape(r, r))
    return out


def bar_differential(module: GModule, degree: int, mats: Optional[list] = None) -> np.ndarray:
    """Integer matrix of d: C^degree -> C^(degree+1) of the normalized bar complex."""
    bd = bar_data(module.G)
    B = bd.B
    r = module.M.rank
    d = degree
    rows_n = B ** (d + 1) * r
    cols_n = B**d * r
    out = np.zeros((rows_n, cols_n), dtype=np.int64)
    if B == 0 or r == 0:
        return out
    mats = action_matrices(module) if mats is None else mats
    T = _tuples(B, d + 1)
    rowt = np.arange(T.shape[0], dtype=np.int64)
    # g1 . phi(g2, ..., g_{d+1})
    tail = _tuple_index(T[:, 1:], B)
    acts = np.stack([mats[i] for i in range(len(mats))])  # |G| x r x r
    g1 = T[:, 0]
    for a in range(r):
        for b in range(r):
            np.add.at(out, (rowt * r + a, tail * r + b), acts[g1, a, b])
    # merged faces
    for i in range(1, d + 1):
        prodidx = bd.mult[T[:, i - 1], T[:, i]]
        keep = prodidx != 0
        if not np.any(keep):
            continue
        merged = np.concatenate([T[keep, : i - 1], prodidx[keep, None], T[keep, i + 1 :]], axis=1)
        cidx = _tuple_index(merged, B)
        sign = -1 if i % 2 else 1
        for a in range(r):
            np.add.at(out, (rowt[keep] * r + a, cidx * r + a), sign)
    # last face
    head = _tuple_index(T[:, :d], B)
    sign = -1 if (d + 1) % 2 else 1
    for a in range(r):
        np.add.at(out, (rowt * r + a, head * r + a), sign)
    return out


def _p_part(module: GModule, p: int):
    """Coordinates of M carrying p-torsion, their exponents and the restricted action."""
    coords = [i for i, m in enumerate(module.M.factors) if m % p == 0]
    ks = [factorize(module.M.factors[i])[p] for i in coords]
    return coords, ks


def _restricted_module_mats(module: GModule, coords: list[int], ks: list[int], p: int) -> list[np.ndarray]:
    full = action_matrices(module)
    out = []
    for mat in full:
        sub = mat[np.ix_(coords, coords)] if coords else np.zeros((0, 0), dtype=np.int64)
        out.append(sub)
    return out


class _RestrictedModule:
    """Stand-in with the attributes bar_differential needs (G and M.rank)."""

    def __init__(self, G: FinAbGroup, rank: int):
        self.G = G
        self.M = type("M", (), {"rank": rank})()


def _diag_moduli(count: int, ks: list[int], p: int, K: int) -> np.ndarray:
    vec = np.array([p**k for k in ks] * count, dtype=np.int64) % p**K
    return np.diag(vec)


def _local_cohomology(module: GModule, degree: int, p: int, want_reps: bool):
    coords, ks = _p_part(module, p)
    if not coords:
        return [], None
    K = max(ks)
    mod = p**K
    mats = _restricted_module_mats(module, coords, ks, p)
    stand = _RestrictedModule(module.G, len(coords))
    B = bar_data(module.G).B
    r = len(coords)
    homogeneous = all(k == K for k in ks)
    A = bar_differential(stand, degree, mats) % mod
    n_d = A.shape[1]
    if homogeneous:
        Z = kernel_mod_pk(A, p, K)
    else:
        D1 = _diag_moduli(B ** (degree + 1), ks, p, K)
        Z = kernel_mod_pk(np.concatenate([A, D1], axis=1), p, K)[:n_d]
    parts = []
    if degree > 0:
        parts.append(bar_differential(stand, degree - 1, mats) % mod)
    if not homogeneous:
        parts.append(_diag_moduli(B**degree, ks, p, K))
    z = Z.shape[1]
    if z == 0:
        return [], None
    Bm = np.concatenate([Z] + parts, axis=1)
    Rel = kernel_mod_pk(Bm, p, K)[:z]
    factors: list[int] = []
    reps = None
    if Rel.shape[1] == 0:
        res_vals, res_rows = [], []
        free_rows = list(range(z))
        res = None
    else:
        res = local_snf(Rel, p, K, rhs=np.eye(z, dtype=np.int64) if want_reps else None)
        res_vals, res_rows = res.valuations, res.rows
        used = set(res_rows)
        free_rows = [i for i in range(z) if i not in used]
    gens_rows = []
    for i, v in zip(res_rows, res_vals):
        if v >= 1:
            factors.append(p**v)
            gens_rows.append(i)
    for i in free_rows:
        factors.append(mod)
        gens_rows.append(i)
    if want_reps and gens_rows:
        U = res.rhs if res is not None else np.eye(z, dtype=np.int64)
        E = np.zeros((z, len(gens_rows)), dtype=np.int64)
        for c, i in enumerate(gens_rows):
            E[i, c] = 1
        cols = []
        for c in range(E.shape[1]):
            x = solve_mod_pk(U, E[:, c], p, K)
            cols.append((Z @ x) % mod)
        reps = []
        for vec, k_list in zip(cols, itertools.repeat(ks)):
            reps.append(vec.reshape(B**degree, r))
        reps = (coords, ks, reps)
    return factors, reps


def cohomology_bar(module: GModule, degree: int, representatives: bool = True, cell_cap: int = CELL_CAP) -> CohomologyGroup:
    """H^degree(G; M) from the normalized bar complex."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    G, M = module.G, module.M
    if G.order == 1:
        if degree == 0:
            return CohomologyGroup(0, canonicalize(M), None, "bar")
        return CohomologyGroup(degree, TRIVIAL, [], "bar")
    B = G.order - 1
    cells = B ** (degree + 1) * M.rank
    if cells > 64 * cell_cap:
        raise CapExceeded(f"bar complex too large ({cells} cells)", size=cells, cap=64 * cell_cap)
    want = representatives and B**degree * M.rank <= cell_cap
    factors: list[int] = []
    reps_full: Optional[list] = [] if want else None
    for p in sorted(factorize(M.exponent)) if M.rank else []:
        f_p, reps = _local_cohomology(module, degree, p, want)
        factors.extend(f_p)
        if want and reps is not None:
            coords, ks, vecs = reps
            for vec in vecs:
                reps_full.append(_embed_p_cochain(M, coords, ks, p, vec))
    grp = canonicalize(FinAbGroup(tuple(f for f in factors if f > 1)))
    return CohomologyGroup(degree, grp, reps_full, "bar")


def _embed_p_cochain(M: FinAbGroup, coords, ks, p, vec: np.ndarray) -> np.ndarray:
    out = np.zeros((vec.shape[0], M.rank), dtype=np.int64)
    for c, (i, k) in enumerate(zip(coords, ks)):
        m = M.factors[i]
        pk = p**k
        rest = m // pk
        # idempotent: 1 mod p^k, 0 mod rest
        e = (rest * pow(rest, -1, pk)) % m if rest > 1 else 1
        out[:, i] = (vec[:, c] % pk) * e % m
    return out


def is_cocycle(module: GModule, degree: int, cochain: np.ndarray) -> bool:
    A = bar_differential(module, degree)
    vec = np.asarray(cochain, dtype=np.int64).reshape(-1)
    img = A @ vec
    r = module.M.rank
    mods = np.array(list(module.M.factors) * (img.shape[0] // max(r, 1)), dtype=np.int64)
    return bool(np.all(img % mods == 0)) if r else True


def coboundary(module: GModule, degree: int, cochain: np.ndarray) -> np.ndarray:
    A = bar_differential(module, degree)
    vec = np.asarray(cochain, dtype=np.int64).reshape(-1)
    img = A @ vec
    r = module.M.rank
    mods = np.array(list(module.M.factors) * (img.shape[0] // max(r, 1)), dtype=np.int64)
    return (img % mods).reshape(-1, r)


def torus_bar(G: FinAbGroup, degree: int) -> CohomologyGroup:
    """H^d(G; C^x) = torsion of H^(d+1)(G; Z), read from the integral bar differential."""
    if degree < 1:
        raise ValueError("H^0(G; C^x) is not finite")
    if G.order == 1:
        return CohomologyGroup(degree, TRIVIAL, [], "bar")
    triv = GModule.trivial(G, FinAbGroup((2,)))  # only the shape (rank 1, trivial action) matters
    A = bar_differential(_RestrictedModule(G, 1), degree, [np.eye(1, dtype=np.int64)] * G.order)
    factors = []
    for p, e in factorize(G.order).items():
        res = local_snf(A, p, e + 1)
        factors.extend(p**v for v in res.valuations if v >= 1)
    return CohomologyGroup(degree, canonicalize(FinAbGroup(tuple(factors))), None, "bar")


# ---------------------------------------------------------------------------
# cup square


@dataclass
class CupSquareResult:
    values: np.ndarray  # numerators over `denominator`, one per 6-tuple
    denominator: int
    vanishes: bool
    class_order: int
    witness: Optional[np.ndarray]
    witness_modulus: int

    def to_json(self) -> dict:
        return {
            "vanishes": self.vanishes,
            "class_order": self.class_order,
            "denominator": self.denominator,
            "nonzero_entries": int(np.count_nonzero(self.values)),
        }


def random_cocycle(module: GModule, degree: int, rng: np.random.Generator) -> np.ndarray:
    """Random normalized cocycle: a random combination of kernel generators of the differential."""
    M = module.M
    B = bar_data(module.G).B
    out = np.zeros((B**degree, M.rank), dtype=np.int64)
    for p in sorted(factorize(M.exponent)) if M.rank else []:
        coords, ks = _p_part(module, p)
        K = max(ks)
        mats = _restricted_module_mats(module, coords, ks, p)
        stand = _RestrictedModule(module.G, len(coords))
        A = bar_differential(stand, degree, mats) % p**K
        if all(k == K for k in ks):
            Z = kernel_mod_pk(A, p, K)
        else:
            D1 = _diag_moduli(B ** (degree + 1), ks, p, K)
            Z = kernel_mod_pk(np.concatenate([A, D1], axis=1), p, K)[: A.shape[1]]
        coeffs = rng.integers(0, p**K, Z.shape[1])
        vec = (Z @ coeffs) % p**K
        out = (out + _embed_p_cochain(M, coords, ks, p, vec.reshape(B**degree, len(coords)))) % np.array(M.factors)
    return out


def _torus_coboundary_matrix(G: FinAbGroup, degree: int) -> np.ndarray:
    return bar_differential(_RestrictedModule(G, 1), degree, [np.eye(1, dtype=np.int64)] * G.order)


def cup_square(module: GModule, alpha: np.ndarray, pairing: Bicharacter) -> CupSquareResult:
    """Class of alpha u alpha in H^6(G; C^x), built with the pairing M x M -> Q/Z."""
    G, M = module.G, module.M
    bd = bar_data(G)
    B = bd.B
    if B**6 > CELL_CAP:
        raise CapExceeded(f"6-cochains on a group of order {G.order} exceed the table cap", size=B**6, cap=CELL_CAP)
    alpha = np.asarray(alpha, dtype=np.int64).reshape(B**3, M.rank)
    if not is_cocycle(module, 3, alpha):
        raise NotACocycle("alpha is not a 3-cocycle")
    if pairing.left != M or pairing.right != M:
        raise PairingNotInvariant("pairing must be defined on M x M")
    for rho in module.action:
        for x in M.basis():
            for y in M.basis():
                if pairing(rho(x), rho(y)) != pairing(x, y):
                    raise PairingNotInvariant("pairing is not invariant under the action")
    D = pairing.denominator
    P = np.array(pairing._num, dtype=np.int64).reshape(M.rank, M.rank)
    mats = action_matrices(module)
    T3 = _tuples(B, 3)
    h = bd.mult[bd.mult[T3[:, 0], T3[:, 1]], T3[:, 2]]
    L = (alpha @ P) % D  # linear functional pairing(alpha(t1), -)
    values = np.zeros((B**3, B**3), dtype=np.int64)
    for gi in range(G.order):
        rows = np.nonzero(h == gi)[0]
        if rows.size == 0:
            continue
        moved = (alpha @ mats[gi].T) % np.array(M.factors)
        values[rows] = (L[rows] @ moved.T) % D
    values = values.reshape(-1)
    n = G.order
    A5 = _torus_coboundary_matrix(G, 5)
    modulus = D * n
    witness = None
    class_order = None
    for k in range(1, n + 1):
        if n % k:
            continue
        rhs = (values * k * n) % modulus
        x = solve_mod(A5 % modulus, rhs, modulus)
        if x is not None:
            # verify elementwise
            if np.any((A5 @ x - rhs) % modulus):
                raise AssertionError("coboundary witness failed verification")
            if k == 1:
                witness = x
            class_order = k
            break
    if class_order is None:
        raise AssertionError("class order does not divide |G|")
    return CupSquareResult(values, D, class_order == 1, class_order, witness, modulus)
