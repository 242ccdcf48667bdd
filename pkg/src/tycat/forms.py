"""Bicharacters, quadratic and alternating forms, Gauss sums.

Values live in Q/Z (:class:`~tycat.qz.QZ`).  A quadratic form is stored by
its values on generators and the off-diagonal part of its bilinear form,

    q(x) = sum_i x_i^2 q(e_i) + sum_{i<j} x_i x_j b(e_i, e_j),

which makes enumeration a finite product and well-definedness a local
check on orders.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from .abelian import (
    DEFAULT_CAP,
    Elem,
    FinAbGroup,
    GroupHom,
    Subgroup,
    TRIVIAL,
    canonicalize,
    dual_group,
    parse_group,
)
from .errors import CapExceeded, ParseError
from .qz import QZ


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def gen_value_modulus(n: int) -> int:
    """Largest allowed order of q(e) for a generator of order n: q(n e) = n^2 q(e) must vanish
    and q(-e) = q(e) is automatic, while Bil(e, e) = 2 q(e) must have order dividing n."""
    return gcd(2 * n, n * n)


# ---------------------------------------------------------------------------
# bicharacters


@dataclass(frozen=True)
class Bicharacter:
    """Bilinear map ``left x right -> Q/Z`` given on generator pairs."""

    left: FinAbGroup
    right: FinAbGroup
    values: tuple[tuple[QZ, ...], ...]

    def __post_init__(self):
        vals = tuple(tuple(QZ(v) for v in row) for row in self.values)
        if len(vals) != self.left.rank or any(len(r) != self.right.rank for r in vals):
            raise ValueError("bicharacter matrix has the wrong shape")
        for i, n in enumerate(self.left.factors):
            for j, m in enumerate(self.right.factors):
                if gcd(n, m) % vals[i][j].order():
                    raise ValueError(
                        f"b(e_{i}, f_{j}) = {vals[i][j]} has order not dividing gcd({n}, {m})"
                    )
        object.__setattr__(self, "values", vals)

    @classmethod
    def on(cls, G: FinAbGroup, values) -> "Bicharacter":
        return cls(G, G, values)

    @classmethod
    def zero(cls, left: FinAbGroup, right: Optional[FinAbGroup] = None) -> "Bicharacter":
        right = left if right is None else right
        return cls(left, right, tuple(tuple(QZ(0) for _ in right.factors) for _ in left.factors))

    @classmethod
    def from_function(cls, left: FinAbGroup, right: FinAbGroup, fn: Callable[[Elem, Elem], QZ]) -> "Bicharacter":
        return cls(left, right, tuple(tuple(fn(e, f) for f in right.basis()) for e in left.basis()))

    @cached_property
    def denominator(self) -> int:
        d = 1
        for row in self.values:
            for v in row:
                d = _lcm(d, v.denominator)
        return d

    @cached_property
    def _num(self) -> tuple[tuple[int, ...], ...]:
        d = self.denominator
        return tuple(tuple(v.numerator * (d // v.denominator) for v in row) for row in self.values)

    def value_num(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Numerator of b(x, y) over :attr:`denominator`."""
        num = self._num
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = num[i]
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * yj * row[j]
        return total % self.denominator

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> QZ:
        return QZ(self.value_num(x, y), self.denominator)

    @property
    def is_square(self) -> bool:
        return self.left == self.right

    def transpose(self) -> "Bicharacter":
        return Bicharacter(
            self.right, self.left, tuple(tuple(self.values[i][j] for i in range(self.left.rank)) for j in range(self.right.rank))
        )

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.values[i][j] == self.values[j][i] for i in range(self.left.rank) for j in range(self.left.rank)
        )

    def is_alternating(self) -> bool:
        if not self.is_square:
            return False
        r = self.left.rank
        return all(self.values[i][i].is_zero() for i in range(r)) and all(
            (self.values[i][j] + self.values[j][i]).is_zero() for i in range(r) for j in range(r)
        )

    def pullback(self, phi: GroupHom, psi: Optional[GroupHom] = None) -> "Bicharacter":
        """``(x, y) -> b(phi x, psi y)``; psi defaults to phi."""
        psi = phi if psi is None else psi
        return Bicharacter.from_function(phi.source, psi.source, lambda e, f: self(phi(e), psi(f)))

    def left_radical(self) -> list[Elem]:
        basis = self.right.basis()
        return [x for x in self.left.elements() if all(self.value_num(x, f) == 0 for f in basis)]

    def right_radical(self) -> list[Elem]:
        basis = self.left.basis()
        return [y for y in self.right.elements() if all(self.value_num(e, y) == 0 for e in basis)]

    def is_nondegenerate(self) -> bool:
        """Both adjoint maps are injective (equivalently isomorphisms onto the duals)."""
        return (
            self.left.order == self.right.order
            and len(self.left_radical()) == 1
            and len(self.right_radical()) == 1
        )

    def __add__(self, other: "Bicharacter") -> "Bicharacter":
        return Bicharacter(
            self.left,
            self.right,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.values, other.values)),
        )

    def __neg__(self) -> "Bicharacter":
        return Bicharacter(self.left, self.right, tuple(tuple(-a for a in r) for r in self.values))

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.values]

    @classmethod
    def from_json(cls, G: FinAbGroup, data, right: Optional[FinAbGroup] = None) -> "Bicharacter":
        try:
            vals = tuple(tuple(QZ(str(v)) for v in row) for row in data)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad bicharacter entries: {exc}") from exc
        return cls(G, G if right is None else right, vals)


# ---------------------------------------------------------------------------
# quadratic forms


@dataclass(frozen=True)
class QuadraticForm:
    """Quadratic form on ``group``; ``split`` tags the group as ``A + A`` (first ``split`` factors = A)."""

    group: FinAbGroup
    gen_values: tuple[QZ, ...]
    offdiag: tuple[QZ, ...] = ()
    split: Optional[int] = None

    def __post_init__(self):
        G = self.group
        gv = tuple(QZ(v) for v in self.gen_values)
        r = G.rank
        npairs = r * (r - 1) // 2
        od = tuple(QZ(v) for v in self.offdiag) if self.offdiag else tuple(QZ(0) for _ in range(npairs))
        if len(gv) != r:
            raise ValueError(f"need {r} generator values, got {len(gv)}")
        if len(od) != npairs:
            raise ValueError(f"need {npairs} off-diagonal values, got {len(od)}")
        for i, n in enumerate(G.factors):
            if gen_value_modulus(n) % gv[i].order():
                raise ValueError(f"q(e_{i}) = {gv[i]} has order not dividing {gen_value_modulus(n)} (factor Z{n})")
        for (i, j), v in zip(itertools.combinations(range(r), 2), od):
            g = gcd(G.factors[i], G.factors[j])
            if g % v.order():
                raise ValueError(f"b(e_{i}, e_{j}) = {v} has order not dividing {g}")
        object.__setattr__(self, "gen_values", gv)
        object.__setattr__(self, "offdiag", od)

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, G: FinAbGroup) -> "QuadraticForm":
        return cls(G, tuple(QZ(0) for _ in G.factors))

    @classmethod
    def from_function(cls, G: FinAbGroup, fn: Callable[[Elem], QZ], check: bool = True, split=None) -> "QuadraticForm":
        basis = G.basis()
        gv = tuple(QZ(fn(e)) for e in basis)
        od = []
        for i, j in itertools.combinations(range(G.rank), 2):
            od.append(QZ(fn(G.add(basis[i], basis[j]))) - gv[i] - gv[j])
        q = cls(G, gv, tuple(od), split)
        if check:
            for x in G.elements():
                if q(x) != QZ(fn(x)):
                    raise ValueError(f"function is not a quadratic form (mismatch at {x})")
        return q

    @classmethod
    def from_table(cls, G: FinAbGroup, table: dict, check: bool = True) -> "QuadraticForm":
        return cls.from_function(G, lambda x: table[tuple(x)], check=check)

    # -- evaluation ---------------------------------------------------------
    @cached_property
    def denominator(self) -> int:
        d = 1
        for v in self.gen_values + self.offdiag:
            d = _lcm(d, v.denominator)
        return d

    @cached_property
    def _diag(self) -> tuple[int, ...]:
        d = self.denominator
        return tuple(v.numerator * (d // v.denominator) for v in self.gen_values)

    @cached_property
    def _off(self) -> tuple[tuple[int, int, int], ...]:
        d = self.denominator
        out = []
        for (i, j), v in zip(itertools.combinations(range(self.group.rank), 2), self.offdiag):
            if v.numerator:
                out.append((i, j, v.numerator * (d // v.denominator)))
        return tuple(out)

    def value_num(self, x: Sequence[int]) -> int:
        total = 0
        for xi, di in zip(x, self._diag):
            if xi and di:
                total += xi * xi * di
        for i, j, o in self._off:
            total += x[i] * x[j] * o
        return total % self.denominator

    def __call__(self, x: Sequence[int]) -> QZ:
        return QZ(self.value_num(x), self.denominator)

    @cached_property
    def table(self) -> dict[Elem, QZ]:
        return {x: self(x) for x in self.group.elements()}

    def values(self) -> list[QZ]:
        return [self(x) for x in self.group.elements()]

    # -- derived data -----------------------------------------------------------
    @cached_property
    def bil(self) -> Bicharacter:
        return bil_of_quad(self)

    def bil_num(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Numerator of Bil(q)(x, y) over :attr:`denominator`."""
        D = self.denominator
        total = 0
        diag = self._diag
        for i in range(len(x)):
            if x[i] and y[i] and diag[i]:
                total += 2 * x[i] * y[i] * diag[i]
        for i, j, o in self._off:
            total += (x[i] * y[j] + x[j] * y[i]) * o
        return total % D

    def is_nondegenerate(self) -> bool:
        return len(radical(self)) == 1

    def restrict(self, H: Subgroup) -> "QuadraticForm":
        Habs, inc = H.as_group()
        return self.pullback(inc)

    def pullback(self, phi: GroupHom) -> "QuadraticForm":
        return QuadraticForm.from_function(phi.source, lambda x: self(phi(x)), check=False)

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        if self.group != other.group:
            raise ValueError("forms on different groups")
        return QuadraticForm(
            self.group,
            tuple(a + b for a, b in zip(self.gen_values, other.gen_values)),
            tuple(a + b for a, b in zip(self.offdiag, other.offdiag)),
            self.split,
        )

    def __neg__(self) -> "QuadraticForm":
        return QuadraticForm(self.group, tuple(-a for a in self.gen_values), tuple(-a for a in self.offdiag), self.split)

    def key(self) -> tuple:
        return (self.group.factors, tuple(str(v) for v in self.gen_values), tuple(str(v) for v in self.offdiag))

    def to_json(self) -> dict:
        return {"gen": [str(v) for v in self.gen_values], "offdiag": [str(v) for v in self.offdiag]}

    @classmethod
    def from_json(cls, G: FinAbGroup, data: dict, split=None) -> "QuadraticForm":
        try:
            gen = tuple(QZ(str(v)) for v in data.get("gen", []))
            off = tuple(QZ(str(v)) for v in data.get("offdiag", []))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad form values: {exc}") from exc
        try:
            return cls(G, gen, off, split)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def __str__(self) -> str:
        return f"q[{self.group}](gen={','.join(map(str, self.gen_values))}; off={','.join(map(str, self.offdiag))})"


def orthogonal_sum(q1: QuadraticForm, q2: QuadraticForm) -> QuadraticForm:
    G = q1.group.direct_sum(q2.group)
    r1, r2 = q1.group.rank, q2.group.rank
    off = []
    it1 = iter(q1.offdiag)
    it2 = iter(q2.offdiag)
    for i, j in itertools.combinations(range(r1 + r2), 2):
        if j < r1:
            off.append(next(it1))
        elif i >= r1:
            off.append(next(it2))
        else:
            off.append(QZ(0))
    return QuadraticForm(G, q1.gen_values + q2.gen_values, tuple(off))


def parse_form(data: dict) -> QuadraticForm:
    """``{"group": "Z2+Z2", "q": {"gen": [...], "offdiag": [...]}}``."""
    G = parse_group(data["group"])
    return QuadraticForm.from_json(G, data.get("q", {}))


@dataclass(frozen=True)
class AlternatingForm:
    form: Bicharacter

    def __post_init__(self):
        if not self.form.is_alternating():
            raise ValueError("bicharacter is not alternating")

    def __call__(self, x, y) -> QZ:
        return self.form(x, y)

    @property
    def group(self) -> FinAbGroup:
        return self.form.left


@dataclass(frozen=True)
class MetricGroup:
    group: FinAbGroup
    q: QuadraticForm

    @property
    def nondegenerate(self) -> bool:
        return self.q.is_nondegenerate()

    def gauss_sum(self) -> complex:
        return gauss_sum(self.q)


# ---------------------------------------------------------------------------
# operations


def bil_of_quad(q: QuadraticForm) -> Bicharacter:
    G = q.group
    r = G.rank
    vals = [[QZ(0)] * r for _ in range(r)]
    for i in range(r):
        vals[i][i] = q.gen_values[i] * 2
    for (i, j), v in zip(itertools.combinations(range(r), 2), q.offdiag):
        vals[i][j] = v
        vals[j][i] = v
    return Bicharacter(G, G, tuple(tuple(row) for row in vals))


def bil12(q: QuadraticForm) -> Bicharacter:
    """Mixed pairing ``(a, b) -> Bil(q)((a, 0), (0, b))`` for a form on ``A + A``."""
    if q.split is None:
        raise ValueError("form is not tagged as living on a product A + A")
    k = q.split
    G = q.group
    A = FinAbGroup(G.factors[:k])
    if FinAbGroup(G.factors[k:]) != A:
        raise ValueError("product tag does not describe A + A")
    b = q.bil
    return Bicharacter.from_function(A, A, lambda a, c: b(tuple(a) + A.zero, A.zero + tuple(c)))


def radical(form) -> list[Elem]:
    """Radical of a symmetric bicharacter (or of Bil(q) for a quadratic form)."""
    if isinstance(form, QuadraticForm):
        q = form
        basis = q.group.basis()
        return [x for x in q.group.elements() if all(q.bil_num(x, e) == 0 for e in basis)]
    return form.left_radical()


def radical_subgroup(form) -> Subgroup:
    G = form.group if isinstance(form, QuadraticForm) else form.left
    return Subgroup.from_elements(G, radical(form), check=False)


def is_nondegenerate(form) -> bool:
    if isinstance(form, QuadraticForm):
        return form.is_nondegenerate()
    return form.is_nondegenerate()


def orthogonal_complement(form, H: Subgroup, inside: Optional[Iterable[Elem]] = None) -> Subgroup:
    """``{g : b(g, h) = 0 for all h in H}`` (optionally intersected with ``inside``)."""
    gens = H.generators
    if isinstance(form, QuadraticForm):
        q = form
        G = q.group
        test = lambda x: all(q.bil_num(x, h) == 0 for h in gens)
    else:
        G = form.left
        test = lambda x: all(form.value_num(x, h) == 0 for h in gens)
    pool = G.elements() if inside is None else inside
    return Subgroup.from_elements(G, [x for x in pool if test(x)], check=False)


def restrict(form, H: Subgroup):
    if isinstance(form, QuadraticForm):
        return form.restrict(H)
    Habs, inc = H.as_group()
    return form.pullback(inc)


def gauss_sum(q: QuadraticForm) -> complex:
    """Normalized Gauss sum ``|G|^{-1/2} sum_g exp(2 pi i q(g))``."""
    D = q.denominator
    counts = [0] * D
    for x in q.group.elements():
        counts[q.value_num(x)] += 1
    total = sum(c * cmath.exp(2j * math.pi * k / D) for k, c in enumerate(counts) if c)
    return total / math.sqrt(q.group.order)


def enumerate_quadratic_forms(B: FinAbGroup, cap: int = DEFAULT_CAP, split: Optional[int] = None) -> list[QuadraticForm]:
    """Every quadratic form on B exactly once, lexicographic in (gen values, off-diagonal values)."""
    if B.order > cap:
        raise CapExceeded(f"|B| = {B.order} exceeds cap {cap}", size=B.order, cap=cap)
    gen_choices = [[QZ(k, gen_value_modulus(n)) for k in range(gen_value_modulus(n))] for n in B.factors]
    off_choices = [
        [QZ(k, gcd(B.factors[i], B.factors[j])) for k in range(gcd(B.factors[i], B.factors[j]))]
        for i, j in itertools.combinations(range(B.rank), 2)
    ]
    out = []
    for gv in itertools.product(*gen_choices):
        for od in itertools.product(*off_choices):
            out.append(QuadraticForm(B, tuple(gv), tuple(od), split))
    return out


def quadratic_form_count(B: FinAbGroup) -> int:
    """Closed-form count of quadratic forms (product of the local choices)."""
    total = 1
    for n in B.factors:
        total *= gen_value_modulus(n)
    for i, j in itertools.combinations(range(B.rank), 2):
        total *= gcd(B.factors[i], B.factors[j])
    return total


def enumerate_alternating_forms(B: FinAbGroup, cap: int = DEFAULT_CAP) -> list[AlternatingForm]:
    if B.order > cap:
        raise CapExceeded(f"|B| = {B.order} exceeds cap {cap}", size=B.order, cap=cap)
    r = B.rank
    pairs = list(itertools.combinations(range(r), 2))
    choices = [[QZ(k, gcd(B.factors[i], B.factors[j])) for k in range(gcd(B.factors[i], B.factors[j]))] for i, j in pairs]
    out = []
    for vals in itertools.product(*choices):
        m = [[QZ(0)] * r for _ in range(r)]
        for (i, j), v in zip(pairs, vals):
            m[i][j] = v
            m[j][i] = -v
        out.append(AlternatingForm(Bicharacter(B, B, tuple(tuple(row) for row in m))))
    return out


def two_torsion_characters(B: FinAbGroup) -> FinAbGroup:
    """The 2-torsion subgroup of the dual group, in canonical form."""
    return canonicalize(FinAbGroup(tuple(2 for n in B.factors if n % 2 == 0)))


@dataclass(frozen=True)
class SyllepticCount:
    alternating: int
    two_torsion: FinAbGroup

    @property
    def h6_order(self) -> int:
        return self.alternating * self.two_torsion.order


def sylleptic_classification(B: FinAbGroup, cap: int = DEFAULT_CAP) -> SyllepticCount:
    return SyllepticCount(len(enumerate_alternating_forms(B, cap)), two_torsion_characters(B))


def em_h5_b3(B: FinAbGroup) -> FinAbGroup:
    """H^5(B[3]; C^x) in the closed form Hom(B/2B, C^x) = B/2B."""
    return canonicalize(FinAbGroup(tuple(2 for n in B.factors if n % 2 == 0)))


def alt_of_bicharacter(s: Bicharacter) -> AlternatingForm:
    return AlternatingForm(s + (-s.transpose()))


def evaluation_pairing(A: FinAbGroup) -> Bicharacter:
    """ev: A x A^ -> Q/Z for the coordinate dual."""
    D = dual_group(A)
    return Bicharacter.from_function(A, D.dual, D.ev)


def canonical_sigma(A: FinAbGroup) -> Bicharacter:
    """Bicharacter on A + A^ with ((a1, l1), (a2, l2)) -> l1(a2)."""
    k = A.rank
    B = A.direct_sum(A)
    D = dual_group(A)
    return Bicharacter.from_function(B, B, lambda x, y: D.ev(y[:k], x[k:]))


def split_sum(A: FinAbGroup) -> FinAbGroup:
    return A.direct_sum(A)
