"""Finite abelian groups, homomorphisms, subgroups and quotients.

Groups are direct sums of cyclic factors ``Z/n_1 + ... + Z/n_k``; elements
are coordinate tuples reduced factor by factor.  Homomorphisms are integer
matrices whose column ``j`` is the image of generator ``j``.

>>> G = parse_group("Z2+Z4+Z2")
>>> canonicalize(G).factors
(2, 2, 4)
>>> len(enumerate_subgroups(parse_group("Z2+Z2")))
5
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapExceeded, NotClosed, ParseError
from .intlinalg import factorize, inverse_unimodular, smith_normal_form
from .qz import QZ

Elem = tuple[int, ...]

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class FinAbGroup:
    """Direct sum of cyclic groups with the given orders (any order of factors)."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        for n in self.factors:
            if n < 2:
                raise ValueError(f"cyclic factor must be >= 2, got {n}")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        e = 1
        for n in self.factors:
            e = e * n // gcd(e, n)
        return e

    @property
    def zero(self) -> Elem:
        return (0,) * self.rank

    def reduce(self, x: Iterable[int]) -> Elem:
        x = tuple(x)
        if len(x) != self.rank:
            raise ValueError(f"element {x} has wrong length for {self}")
        return tuple(int(c) % n for c, n in zip(x, self.factors))

    def add(self, x: Elem, y: Elem) -> Elem:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def sub(self, x: Elem, y: Elem) -> Elem:
        return tuple((a - b) % n for a, b, n in zip(x, y, self.factors))

    def neg(self, x: Elem) -> Elem:
        return tuple((-a) % n for a, n in zip(x, self.factors))

    def scale(self, k: int, x: Elem) -> Elem:
        return tuple((k * a) % n for a, n in zip(x, self.factors))

    def element_order(self, x: Elem) -> int:
        o = 1
        for a, n in zip(x, self.factors):
            d = n // gcd(a, n)
            o = o * d // gcd(o, d)
        return o

    def elements(self) -> Iterator[Elem]:
        return itertools.product(*(range(n) for n in self.factors))

    def basis(self) -> list[Elem]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def element(self, coords: Iterable[int]) -> "GroupElement":
        return GroupElement(self, self.reduce(coords))

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.factors + other.factors)

    def is_trivial(self) -> bool:
        return self.rank == 0

    def literal(self) -> str:
        return format_group(self)

    def __str__(self) -> str:
        return format_group(self)


@dataclass(frozen=True)
class GroupElement:
    parent: FinAbGroup
    coordinates: Elem

    def __post_init__(self):
        object.__setattr__(self, "coordinates", self.parent.reduce(self.coordinates))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.parent, self.parent.add(self.coordinates, other.coordinates))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.parent, self.parent.neg(self.coordinates))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(self.parent, self.parent.scale(k, self.coordinates))

    def order(self) -> int:
        return self.parent.element_order(self.coordinates)

    def __str__(self) -> str:
        return format_element(self.coordinates)


TRIVIAL = FinAbGroup(())


# ---------------------------------------------------------------------------
# literals

_GROUP_RE = re.compile(r"^Z(\d+)$")


def parse_group(text: str) -> FinAbGroup:
    """Parse ``"Z2+Z4"``; ``"0"``, ``"1"``, ``"Z1"`` and ``"trivial"`` give the trivial group."""
    s = text.replace(" ", "").replace("/", "")
    if s in ("", "0", "1", "trivial", "Z1"):
        return TRIVIAL
    factors = []
    for part in s.split("+"):
        m = _GROUP_RE.match(part)
        if not m:
            raise ParseError(f"bad group literal {text!r}: cannot read {part!r}")
        n = int(m.group(1))
        if n == 1:
            continue
        if n < 1:
            raise ParseError(f"bad cyclic order in {text!r}")
        factors.append(n)
    return FinAbGroup(tuple(factors))


def format_group(G: FinAbGroup) -> str:
    if G.rank == 0:
        return "0"
    return "+".join(f"Z{n}" for n in G.factors)


def parse_element(text: str, G: FinAbGroup) -> Elem:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"bad element literal {text!r}")
    body = s[1:-1].strip()
    coords = [int(c) for c in body.split(",")] if body else []
    if len(coords) != G.rank:
        raise ParseError(f"element {text!r} does not match {format_group(G)}")
    return G.reduce(coords)


def format_element(x: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in x) + ")"


# ---------------------------------------------------------------------------
# canonical form


def _prime_power_parts(n: int) -> list[int]:
    return [p**k for p, k in factorize(n).items()]


def canonicalize(group: FinAbGroup) -> FinAbGroup:
    """Invariant-factor normal form ``d_1 | d_2 | ... | d_k``."""
    by_prime: dict[int, list[int]] = {}
    for n in group.factors:
        for p, k in factorize(n).items():
            by_prime.setdefault(p, []).append(p**k)
    if not by_prime:
        return TRIVIAL
    width = max(len(v) for v in by_prime.values())
    cols = [1] * width
    for p, powers in by_prime.items():
        powers = sorted(powers)
        padded = [1] * (width - len(powers)) + powers
        cols = [c * q for c, q in zip(cols, padded)]
    return FinAbGroup(tuple(c for c in cols if c > 1))


def is_isomorphic(g: FinAbGroup, h: FinAbGroup) -> bool:
    return canonicalize(g).factors == canonicalize(h).factors


def direct_sum(*groups: FinAbGroup) -> FinAbGroup:
    out: tuple[int, ...] = ()
    for g in groups:
        out = out + g.factors
    return FinAbGroup(out)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix (rows: target coords, cols: source gens)."""

    source: FinAbGroup
    target: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(
            tuple(int(self.matrix[i][j]) % self.target.factors[i] for j in range(self.source.rank))
            for i in range(self.target.rank)
        )
        object.__setattr__(self, "matrix", mat)
        for j, n in enumerate(self.source.factors):
            col = tuple(mat[i][j] for i in range(self.target.rank))
            if self.target.scale(n, col) != self.target.zero:
                raise ValueError(
                    f"matrix column {j} = {col} is not killed by {n}; map is not well defined"
                )

    @classmethod
    def from_images(cls, source: FinAbGroup, target: FinAbGroup, images: Sequence[Sequence[int]]) -> "GroupHom":
        cols = [target.reduce(img) for img in images]
        mat = [[cols[j][i] for j in range(source.rank)] for i in range(target.rank)]
        return cls(source, target, tuple(tuple(r) for r in mat))

    @classmethod
    def zero_map(cls, source: FinAbGroup, target: FinAbGroup) -> "GroupHom":
        return cls.from_images(source, target, [target.zero] * source.rank)

    @classmethod
    def identity(cls, G: FinAbGroup) -> "GroupHom":
        return cls.from_images(G, G, G.basis())

    def column(self, j: int) -> Elem:
        return tuple(self.matrix[i][j] for i in range(self.target.rank))

    def images(self) -> list[Elem]:
        return [self.column(j) for j in range(self.source.rank)]

    def __call__(self, x: Sequence[int]) -> Elem:
        t = self.target
        return tuple(
            sum(self.matrix[i][j] * x[j] for j in range(self.source.rank)) % t.factors[i]
            for i in range(t.rank)
        )

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self o other``."""
        if other.target.factors != self.source.factors:
            raise ValueError("cannot compose: target/source mismatch")
        return GroupHom.from_images(other.source, self.target, [self(c) for c in other.images()])

    def __add__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom.from_images(
            self.source, self.target, [self.target.add(a, b) for a, b in zip(self.images(), other.images())]
        )

    def is_injective(self) -> bool:
        return kernel(self).order == 1

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise ValueError("map is not invertible")
        lookup = {self(x): x for x in self.source.elements()}
        return GroupHom.from_images(self.target, self.source, [lookup[e] for e in self.target.basis()])

    def restrict_to(self, sub: "Subgroup") -> dict[Elem, Elem]:
        return {x: self(x) for x in sub.elements}

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(v) for v in row) for row in self.matrix) + "]"


# ---------------------------------------------------------------------------
# subgroups


def _closure(G: FinAbGroup, gens: Iterable[Elem], start: Optional[frozenset] = None) -> frozenset:
    """Subgroup generated by ``gens`` (optionally on top of subgroup ``start``)."""
    current = set(start) if start is not None else {G.zero}
    for g in gens:
        g = G.reduce(g)
        if g in current:
            continue
        # add multiples of g to every element already present
        base = list(current)
        k = G.element_order(g)
        mult = G.zero
        for _ in range(1, k):
            mult = G.add(mult, g)
            if mult in current:
                break
            for x in base:
                current.add(G.add(x, mult))
    return frozenset(current)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``parent`` stored as its element set plus a minimal generating list."""

    parent: FinAbGroup
    elements: tuple[Elem, ...]
    generators: tuple[Elem, ...]
    invariant_factors: tuple[int, ...] = field(default=())

    @classmethod
    def generated_by(cls, parent: FinAbGroup, gens: Iterable[Elem]) -> "Subgroup":
        return cls.from_elements(parent, _closure(parent, list(gens)))

    @classmethod
    def from_elements(cls, parent: FinAbGroup, elems: Iterable[Elem], check: bool = True) -> "Subgroup":
        es = frozenset(parent.reduce(e) for e in elems)
        if check:
            if parent.zero not in es:
                raise NotClosed("element set does not contain the identity")
            items = list(es)
            for x in items:
                for y in items:
                    if parent.add(x, y) not in es:
                        raise NotClosed(f"not closed: {x} + {y}")
        gens, inv = _minimal_generators(parent, es)
        return cls(parent, tuple(sorted(es)), gens, inv)

    @classmethod
    def trivial(cls, parent: FinAbGroup) -> "Subgroup":
        return cls(parent, (parent.zero,), (), ())

    @classmethod
    def whole(cls, parent: FinAbGroup) -> "Subgroup":
        return cls.generated_by(parent, parent.basis())

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.element_set

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.element_set <= other.element_set

    def sort_key(self):
        return (self.order, self.generators, self.elements)

    def as_group(self) -> tuple[FinAbGroup, GroupHom]:
        """Abstract group with an injective hom onto this subgroup."""
        H = FinAbGroup(self.invariant_factors)
        return H, GroupHom.from_images(H, self.parent, list(self.generators))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.parent == other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.parent, self.elements))

    def __str__(self) -> str:
        if not self.generators:
            return "<0>"
        return "<" + ", ".join(format_element(g) for g in self.generators) + ">"


def _integer_kernel(mat: list[list[int]]) -> list[list[int]]:
    """Basis (as columns) of the integer kernel of ``mat``."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [[int(i == j) for j in range(cols)] for i in range(cols)]
    d, _, v = smith_normal_form(mat)
    r = sum(1 for x in d if x != 0)
    return [[v[i][j] for j in range(r, cols)] for i in range(cols)]


def _minimal_generators(G: FinAbGroup, elems: frozenset) -> tuple[tuple[Elem, ...], tuple[int, ...]]:
    """Invariant-factor basis of a subgroup: generators h_i of order d_i with d_1 | d_2 | ...."""
    if len(elems) == 1:
        return (), ()
    # greedy generating set in lexicographic order
    greedy: list[Elem] = []
    span = frozenset({G.zero})
    for x in sorted(elems):
        if x not in span:
            greedy.append(x)
            span = _closure(G, [x], span)
            if len(span) == len(elems):
                break
    orders = tuple(G.element_order(g) for g in greedy)
    # if the greedy set is already a direct-sum basis keep it (readable)
    if prod(orders) == len(elems):
        order_sorted = sorted(zip(orders, greedy), key=lambda t: (t[0], t[1]))
        if canonicalize(FinAbGroup(tuple(o for o, _ in order_sorted))).factors == tuple(
            o for o, _ in order_sorted
        ):
            return tuple(g for _, g in order_sorted), tuple(o for o, _ in order_sorted)
    # general case: relation lattice of the greedy set and its Smith form
    k = len(greedy)
    r = G.rank
    big = [[greedy[j][i] for j in range(k)] + [G.factors[i] * int(i == t) for t in range(r)] for i in range(r)]
    kern = _integer_kernel(big)
    rel = [row[:] for row in kern[:k]]  # k x l relation matrix
    if not rel or not rel[0]:
        rel = [[0] for _ in range(k)]
    d, u, _ = smith_normal_form(rel)
    d = d + [0] * (k - len(d))
    uinv = inverse_unimodular(u)
    gens: list[Elem] = []
    invs: list[int] = []
    for i in range(k):
        di = abs(d[i])
        if di == 1:
            continue
        coeffs = [uinv[j][i] for j in range(k)]
        h = G.reduce(sum(coeffs[j] * greedy[j][c] for j in range(k)) for c in range(r))
        gens.append(h)
        invs.append(G.element_order(h))
    return tuple(gens), tuple(invs)


def subgroup_generated(G: FinAbGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    return Subgroup.generated_by(G, [G.reduce(g) for g in gens])


def kernel(h: GroupHom) -> Subgroup:
    tz = h.target.zero
    return Subgroup.from_elements(h.source, [x for x in h.source.elements() if h(x) == tz], check=False)


def image(h: GroupHom) -> Subgroup:
    return Subgroup.generated_by(h.target, h.images())


def sum_subgroups(a: Subgroup, b: Subgroup) -> Subgroup:
    return Subgroup.from_elements(a.parent, _closure(a.parent, b.generators, a.element_set), check=False)


def intersect(a: Subgroup, b: Subgroup) -> Subgroup:
    return Subgroup.from_elements(a.parent, a.element_set & b.element_set, check=False)


@dataclass(frozen=True)
class Quotient:
    """``parent / sub`` in canonical form, with projection and lexicographic section."""

    parent: FinAbGroup
    sub: Subgroup
    group: FinAbGroup
    projection: GroupHom
    section_table: tuple[tuple[Elem, Elem], ...]

    def section(self, y: Sequence[int]) -> Elem:
        return dict(self.section_table)[tuple(y)]

    def lift_table(self) -> dict[Elem, Elem]:
        return dict(self.section_table)


def quotient(parent: FinAbGroup, sub: Subgroup, cap: int = DEFAULT_CAP) -> Quotient:
    if parent.order > cap:
        raise CapExceeded(f"|G| = {parent.order} exceeds cap {cap}", size=parent.order, cap=cap)
    if sub.parent != parent:
        raise ValueError("subgroup belongs to another group")
    r = parent.rank
    gens = list(sub.generators)
    mat = [[g[i] for g in gens] + [parent.factors[i] * int(i == t) for t in range(r)] for i in range(r)]
    if r == 0:
        Q = TRIVIAL
        proj = GroupHom.zero_map(parent, Q)
        return Quotient(parent, sub, Q, proj, (((), ()),))
    d, u, _ = smith_normal_form(mat)
    keep = [i for i in range(r) if abs(d[i]) != 1]
    qf = tuple(abs(d[i]) for i in keep)
    Q = FinAbGroup(qf)
    rows = [[u[i][j] for j in range(r)] for i in keep]
    proj = GroupHom(parent, Q, tuple(tuple(row) for row in rows))
    table: dict[Elem, Elem] = {}
    for x in parent.elements():
        y = proj(x)
        if y not in table:
            table[y] = x  # elements() runs in lex order, so first hit is least
    if len(table) * sub.order != parent.order:
        raise NotClosed("subgroup index mismatch in quotient")
    return Quotient(parent, sub, Q, proj, tuple(sorted(table.items())))


def enumerate_subgroups(
    group: FinAbGroup, only_inside: Optional[Subgroup] = None, cap: int = DEFAULT_CAP
) -> list[Subgroup]:
    """All subgroups, each once, sorted by order then generators."""
    if group.order > cap:
        raise CapExceeded(f"|G| = {group.order} exceeds subgroup cap {cap}", size=group.order, cap=cap)
    ambient = only_inside.elements if only_inside is not None else tuple(group.elements())
    zero = frozenset({group.zero})
    seen = {zero}
    queue = deque([zero])
    while queue:
        s = queue.popleft()
        covered: set = set(s)
        for g in ambient:
            if g in covered:
                continue
            t = _closure(group, [g], s)
            # <s, g> = <s, u g + x> for units u and x in s: skip those later
            k_ord = group.element_order(g)
            for u in range(1, k_ord):
                if gcd(u, k_ord) == 1:
                    ug = group.scale(u, g)
                    covered.update(group.add(x, ug) for x in s)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    subs = [Subgroup.from_elements(group, s, check=False) for s in seen]
    subs.sort(key=Subgroup.sort_key)
    return subs


def endomorphism_count(group: FinAbGroup) -> int:
    total = 1
    for n in group.factors:
        total *= sum(1 for x in group.elements() if group.scale(n, x) == group.zero)
    return total


def automorphisms(group: FinAbGroup, cap: int = 1 << 20) -> list[GroupHom]:
    """All automorphisms, sorted by matrix."""
    total = endomorphism_count(group)
    if total > cap:
        raise CapExceeded(f"{total} candidate endomorphisms exceed cap {cap}", size=total, cap=cap)
    choices = [[x for x in group.elements() if group.scale(n, x) == group.zero] for n in group.factors]
    out = []
    target_order = group.order
    for imgs in itertools.product(*choices):
        # bijective iff the images generate the whole group
        if len(_closure(group, imgs)) == target_order:
            out.append(GroupHom.from_images(group, group, imgs))
    out.sort(key=lambda h: h.matrix)
    return out


# ---------------------------------------------------------------------------
# duality


@dataclass(frozen=True)
class DualGroup:
    """Pontryagin dual ``Hom(G, Q/Z)``; a character is stored by its values on generators times n_i."""

    group: FinAbGroup
    dual: FinAbGroup

    def ev(self, x: Sequence[int], chi: Sequence[int]) -> QZ:
        total = QZ(0)
        for a, c, n in zip(x, chi, self.group.factors):
            total = total + QZ(a * c, n)
        return total

    def is_nondegenerate(self) -> bool:
        G, D = self.group, self.dual
        left = all(any(not self.ev(x, c).is_zero() for c in D.elements()) for x in G.elements() if x != G.zero)
        right = all(any(not self.ev(x, c).is_zero() for x in G.elements()) for c in D.elements() if c != D.zero)
        return left and right


def dual_group(group: FinAbGroup) -> DualGroup:
    return DualGroup(group, FinAbGroup(group.factors))
