"""A-graded premetric groups and their twisted graded Witt classes.

An A-graded premetric group is a triple ``(G, f: G -> A, q)`` living in a
sylleptic context ``(A, s)``.  Products are twisted by ``s``:

    Q(g, h) = q_G(g) + q_H(h) + s(f g, k h)

(the ``"forward"`` convention; ``"symmetric"`` adds ``s(k h, f g)`` as
well).  The s-opposite is ``-q(g) + s(f g, f g)``.  An object is A-trivial
when its form is nondegenerate and a Lagrangian subgroup sits inside the
degree-zero part ``G0 = Ker f``.

Every verdict comes with a certificate that can be re-checked without
re-running the search (:meth:`TrivialityCertificate.verify`,
:func:`replay_trace`).
"""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

from .abelian import (
    DEFAULT_CAP,
    Elem,
    FinAbGroup,
    GroupHom,
    Subgroup,
    TRIVIAL,
    _closure,
    automorphisms,
    format_element,
    format_group,
    parse_group,
    quotient,
)
from .errors import (
    CapExceeded,
    ClosureCapExceeded,
    ContextMismatch,
    DegenerateRestriction,
    NotInKernel,
    NotInvertible,
    NotIsotropic,
    OrderCapExceeded,
    ParseError,
)
from .forms import (
    AlternatingForm,
    Bicharacter,
    MetricGroup,
    QuadraticForm,
    alt_of_bicharacter,
    em_h5_b3,
    enumerate_quadratic_forms,
    gauss_sum,
    orthogonal_sum,
)
from .qz import QZ

CONVENTIONS = ("forward", "symmetric")
GAUSS_TOL = 1e-9


@dataclass(frozen=True)
class SyllepticContext:
    A: FinAbGroup
    s: Bicharacter
    convention: str = "forward"

    def __post_init__(self):
        if self.s.left != self.A or self.s.right != self.A:
            raise ValueError("syllepsis must be a bicharacter on A")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown product convention {self.convention!r}")

    @cached_property
    def alt(self) -> AlternatingForm:
        return alt_of_bicharacter(self.s)

    def twist(self, u: Sequence[int], v: Sequence[int]) -> QZ:
        """Correction term added to q_G(g) + q_H(h) for degrees u = f g, v = k h."""
        if self.convention == "forward":
            return self.s(u, v)
        return self.s(u, v) + self.s(v, u)

    def to_json(self) -> dict:
        out = {"A": format_group(self.A), "s": self.s.to_json()}
        if self.convention != "forward":
            out["convention"] = self.convention
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SyllepticContext":
        A = parse_group(data["A"])
        s = Bicharacter.from_json(A, data.get("s", [["0"] * A.rank for _ in range(A.rank)]))
        return cls(A, s, data.get("convention", "forward"))


@dataclass(frozen=True)
class GradedPremetricGroup:
    context: SyllepticContext
    G: FinAbGroup
    f: GroupHom
    q: QuadraticForm

    def __post_init__(self):
        if self.f.source != self.G or self.f.target != self.context.A:
            raise ValueError("grading must be a hom G -> A")
        if self.q.group != self.G:
            raise ValueError("form lives on another group")

    # -- basic data ---------------------------------------------------------
    @property
    def order(self) -> int:
        return self.G.order

    @cached_property
    def G0(self) -> Subgroup:
        zero = self.context.A.zero
        return Subgroup.from_elements(self.G, [x for x in self.G.elements() if self.f(x) == zero], check=False)

    @cached_property
    def q0(self) -> QuadraticForm:
        return self.q.restrict(self.G0)

    @cached_property
    def radical(self) -> tuple[Elem, ...]:
        q = self.q
        basis = self.G.basis()
        return tuple(x for x in self.G.elements() if all(q.bil_num(x, e) == 0 for e in basis))

    def is_nondegenerate(self) -> bool:
        return len(self.radical) == 1

    def gauss_sum(self) -> complex:
        return gauss_sum(self.q)

    def perp(self, H: Iterable[Elem], inside: Optional[Iterable[Elem]] = None) -> Subgroup:
        gens = list(H)
        q = self.q
        pool = self.G.elements() if inside is None else inside
        return Subgroup.from_elements(self.G, [x for x in pool if all(q.bil_num(x, h) == 0 for h in gens)], check=False)

    def is_trivially_graded(self) -> bool:
        return all(all(v == 0 for v in col) for col in self.f.images())

    def grading_of(self, x: Sequence[int]) -> Elem:
        return self.f(x)

    # -- io ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "context": self.context.to_json(),
            "G": format_group(self.G),
            "f": [list(row) for row in self.f.matrix],
            "q": self.q.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, context: Optional[SyllepticContext] = None) -> "GradedPremetricGroup":
        try:
            ctx = context if context is not None else SyllepticContext.from_json(data["context"])
            G = parse_group(data.get("G", "0"))
            rows = data.get("f", [[] for _ in range(ctx.A.rank)])
            if G.rank == 0:
                rows = [[] for _ in range(ctx.A.rank)]
            f = GroupHom(G, ctx.A, tuple(tuple(int(v) for v in row) for row in rows))
            q = QuadraticForm.from_json(G, data.get("q", {"gen": ["0"] * G.rank}))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad graded premetric group: {exc}") from exc
        return cls(ctx, G, f, q)

    def describe(self) -> str:
        lines = [f"G = {format_group(self.G)}, f = {self.f}, q = {self.q}"]
        return "\n".join(lines)

    def value_table(self) -> dict[str, str]:
        return {format_element(x): str(self.q(x)) for x in self.G.elements()}


def unit(ctx: SyllepticContext) -> GradedPremetricGroup:
    return GradedPremetricGroup(ctx, TRIVIAL, GroupHom.zero_map(TRIVIAL, ctx.A), QuadraticForm.zero(TRIVIAL))


def make_element(
    ctx: SyllepticContext, G: FinAbGroup, images: Sequence[Sequence[int]], gen: Sequence, offdiag: Sequence = ()
) -> GradedPremetricGroup:
    f = GroupHom.from_images(G, ctx.A, images)
    q = QuadraticForm(G, tuple(QZ(v) for v in gen), tuple(QZ(v) for v in offdiag))
    return GradedPremetricGroup(ctx, G, f, q)


def trivially_graded(ctx: SyllepticContext, q: QuadraticForm) -> GradedPremetricGroup:
    return GradedPremetricGroup(ctx, q.group, GroupHom.zero_map(q.group, ctx.A), q)


# ---------------------------------------------------------------------------
# monoid structure


def twisted_product(X: GradedPremetricGroup, Y: GradedPremetricGroup) -> GradedPremetricGroup:
    if X.context != Y.context:
        raise ContextMismatch("objects live in different sylleptic contexts")
    ctx = X.context
    G = X.G.direct_sum(Y.G)
    r1, r2 = X.G.rank, Y.G.rank
    fx, fy = X.f.images(), Y.f.images()
    images = fx + fy
    off = []
    it1, it2 = iter(X.q.offdiag), iter(Y.q.offdiag)
    for i, j in itertools.combinations(range(r1 + r2), 2):
        if j < r1:
            off.append(next(it1))
        elif i >= r1:
            off.append(next(it2))
        else:
            off.append(ctx.twist(fx[i], fy[j - r1]))
    q = QuadraticForm(G, X.q.gen_values + Y.q.gen_values, tuple(off))
    return GradedPremetricGroup(ctx, G, GroupHom.from_images(G, ctx.A, images), q)


def product(*objs: GradedPremetricGroup) -> GradedPremetricGroup:
    out = objs[0]
    for o in objs[1:]:
        out = twisted_product(out, o)
    return out


def power(X: GradedPremetricGroup, n: int) -> GradedPremetricGroup:
    out = unit(X.context)
    for _ in range(n):
        out = twisted_product(out, X)
    return out


def s_opposite(X: GradedPremetricGroup) -> GradedPremetricGroup:
    ctx = X.context
    imgs = X.f.images()
    gen = tuple(-v + ctx.s(u, u) for v, u in zip(X.q.gen_values, imgs))
    off = tuple(
        -v + ctx.s(imgs[i], imgs[j]) + ctx.s(imgs[j], imgs[i])
        for (i, j), v in zip(itertools.combinations(range(X.G.rank), 2), X.q.offdiag)
    )
    return GradedPremetricGroup(ctx, X.G, X.f, QuadraticForm(X.G, gen, off))


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class TrivialityCertificate:
    """Lagrangian subgroup inside G0 witnessing A-triviality."""

    lagrangian: Subgroup
    nondegenerate: bool = True

    def verify(self, X: GradedPremetricGroup) -> bool:
        L = self.lagrangian
        if L.parent != X.G:
            return False
        if not X.is_nondegenerate():
            return False
        if not L.is_subgroup_of(X.G0):
            return False
        if any(X.q.value_num(x) for x in L.elements):
            return False
        if X.perp(L.generators).elements != L.elements:
            return False
        return L.order * L.order == X.order

    def to_json(self) -> dict:
        return {
            "lagrangian": [format_element(g) for g in self.lagrangian.generators],
            "order": self.lagrangian.order,
            "nondegenerate": self.nondegenerate,
        }


@dataclass(frozen=True)
class SplitStep:
    subgroup: Subgroup
    gauss_sum: complex
    residue: QuadraticForm

    kind = "split"

    def to_json(self) -> dict:
        return {
            "step": "split",
            "subgroup": [format_element(g) for g in self.subgroup.generators],
            "residue_group": format_group(self.residue.group),
            "residue_q": self.residue.to_json(),
            "gauss_sum": [round(self.gauss_sum.real, 12), round(self.gauss_sum.imag, 12)],
        }


@dataclass(frozen=True)
class CondenseStep:
    subgroup: Subgroup

    kind = "condense"

    def to_json(self) -> dict:
        return {"step": "condense", "subgroup": [format_element(g) for g in self.subgroup.generators]}


@dataclass
class ReductionTrace:
    start: GradedPremetricGroup
    steps: list
    final: GradedPremetricGroup
    decided_by: str = ""
    certificate: Optional[TrivialityCertificate] = None
    stabilization: Optional[TrivialityCertificate] = None

    @property
    def residues(self) -> list[QuadraticForm]:
        return [st.residue for st in self.steps if isinstance(st, SplitStep)]

    def to_json(self) -> dict:
        out = {
            "decided_by": self.decided_by,
            "start": self.start.to_json(),
            "steps": [st.to_json() for st in self.steps],
            "final": self.final.to_json(),
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.stabilization is not None:
            out["stabilization"] = self.stabilization.to_json()
        return out


def replay_trace(trace: ReductionTrace) -> GradedPremetricGroup:
    X = trace.start
    for st in trace.steps:
        if isinstance(st, SplitStep):
            _, X = split_metric(X, st.subgroup)
        else:
            X = condense(X, st.subgroup)
    return X


def verify_trace(trace: ReductionTrace) -> bool:
    """Replay the steps and re-check the attached certificates."""
    if replay_trace(trace) != trace.final:
        return False
    for st in trace.steps:
        if isinstance(st, SplitStep):
            g = gauss_sum(st.residue)
            if abs(g - st.gauss_sum) > GAUSS_TOL:
                return False
    if trace.certificate is not None and not trace.certificate.verify(trace.final):
        return False
    if trace.decided_by == "condensation":
        if trace.stabilization is None:
            return False
        witness = twisted_product(trace.start, s_opposite(trace.final))
        if not trace.stabilization.verify(witness):
            return False
        if not trace.final.is_trivially_graded():
            return False
    return True


# ---------------------------------------------------------------------------
# split and condense


def _subgroup_as_object(X: GradedPremetricGroup, H: Subgroup) -> tuple[GradedPremetricGroup, GroupHom]:
    Habs, inc = H.as_group()
    f = X.f.compose(inc)
    q = X.q.pullback(inc)
    return GradedPremetricGroup(X.context, Habs, f, q), inc


def split_metric(X: GradedPremetricGroup, H: Subgroup) -> tuple[MetricGroup, GradedPremetricGroup]:
    """Split a degree-zero metric summand off ``X``; returns (metric part, complement)."""
    if not H.is_subgroup_of(X.G0):
        raise NotInKernel("split subgroup must lie in G0")
    Hobj, _ = _subgroup_as_object(X, H)
    if not Hobj.is_nondegenerate():
        raise DegenerateRestriction("restriction of q to the split subgroup is degenerate")
    comp = X.perp(H.generators)
    if comp.order * H.order != X.order or len(comp.element_set & H.element_set) != 1:
        raise DegenerateRestriction("orthogonal decomposition failed")
    Cobj, _ = _subgroup_as_object(X, comp)
    return MetricGroup(Hobj.G, Hobj.q), Cobj


def condense(X: GradedPremetricGroup, H: Subgroup, cap: int = DEFAULT_CAP) -> GradedPremetricGroup:
    """Pass to ``H^perp / H`` for an isotropic ``H`` inside ``G0``."""
    if not H.is_subgroup_of(X.G0):
        raise NotInKernel("condensed subgroup must lie in G0")
    if any(X.q.value_num(h) for h in H.elements):
        raise NotIsotropic("q does not vanish on the condensed subgroup")
    if H.order == 1:
        return X
    P = X.perp(H.generators)
    Pobj, inc = _subgroup_as_object(X, P)
    inc_lookup = {inc(x): x for x in Pobj.G.elements()}
    Hp = Subgroup.from_elements(Pobj.G, [inc_lookup[h] for h in H.elements], check=False)
    Q = quotient(Pobj.G, Hp, cap=cap)
    lift = Q.lift_table()
    f = GroupHom.from_images(Q.group, X.context.A, [Pobj.f(lift[e]) for e in Q.group.basis()])
    q = QuadraticForm.from_function(Q.group, lambda y: Pobj.q(lift[tuple(y)]), check=True)
    # well-definedness on every coset representative
    for x in Pobj.G.elements():
        if Pobj.q(x) != q(Q.projection(x)) or Pobj.f(x) != f(Q.projection(x)):
            raise NotIsotropic("induced form is not well defined on cosets")
    return GradedPremetricGroup(X.context, Q.group, f, q)


# ---------------------------------------------------------------------------
# triviality tests


def _greedy_complement(G: FinAbGroup, ambient: Sequence[Elem], K: frozenset, pred=None) -> tuple[list[Elem], frozenset]:
    """Greedy lexicographic choice of elements of ``ambient`` independent of ``K``.

    Returns the chosen generators and the subgroup they generate.  With
    ``pred`` only elements satisfying it are considered.
    """
    chosen: list[Elem] = []
    span = frozenset({G.zero})
    total = K
    for x in ambient:
        if x in total:
            continue
        if pred is not None and not pred(x, chosen):
            continue
        new_span = _closure(G, [x], span)
        if len(new_span & K) != 1:
            continue
        chosen.append(x)
        span = new_span
        total = _closure(G, [x], total)
    return chosen, span


def _find_lagrangian(X: GradedPremetricGroup, start: Optional[Subgroup] = None, cap: int = DEFAULT_CAP) -> Optional[Subgroup]:
    """Depth-first search for a Lagrangian inside G0 containing ``start``."""
    G, q = X.G, X.q
    target = X.order
    base = start.element_set if start is not None else frozenset({G.zero})
    base_gens = list(start.generators) if start is not None else []
    cand = [g for g in X.G0.elements if q.value_num(g) == 0]
    visited: set = set()
    budget = [cap * 64]

    def dfs(S: frozenset, gens: list) -> Optional[frozenset]:
        if len(S) * len(S) == target:
            return S
        if len(S) * len(S) > target:
            return None
        for g in cand:
            if g in S:
                continue
            if any(q.bil_num(g, h) for h in gens):
                continue
            T = _closure(G, [g], S)
            if T in visited:
                continue
            visited.add(T)
            budget[0] -= 1
            if budget[0] < 0:
                raise CapExceeded("Lagrangian search budget exhausted", size=len(visited), cap=cap * 64)
            r = dfs(T, gens + [g])
            if r is not None:
                return r
        return None

    found = dfs(base, base_gens)
    if found is None:
        return None
    return Subgroup.from_elements(G, found, check=False)


def is_a_trivial(X: GradedPremetricGroup, cap: int = DEFAULT_CAP) -> Optional[TrivialityCertificate]:
    """Certificate that ``X`` is nondegenerate with a Lagrangian in G0, or ``None``."""
    if X.order > cap:
        raise CapExceeded(f"|G| = {X.order} exceeds cap {cap}", size=X.order, cap=cap)
    if not X.is_nondegenerate():
        return None
    if abs(X.gauss_sum() - 1) > 1e-6:
        return None  # the Gauss sum of an A-trivial object is 1
    K = X.perp(X.G0.generators)
    if not K.is_subgroup_of(X.G0) or any(X.q.value_num(k) for k in K.elements):
        return None
    L = _find_lagrangian(X, K, cap)
    if L is None:
        return None
    cert = TrivialityCertificate(L, True)
    if not cert.verify(X):
        raise AssertionError("internal error: Lagrangian failed re-verification")
    return cert


def is_s_invertible(X: GradedPremetricGroup, cap: int = DEFAULT_CAP) -> tuple[bool, Optional[TrivialityCertificate]]:
    if X.order * X.order > cap:
        raise CapExceeded(f"|G|^2 = {X.order ** 2} exceeds cap {cap}", size=X.order**2, cap=cap)
    cert = is_a_trivial(twisted_product(X, s_opposite(X)), cap)
    return cert is not None, cert


def witt_kernel_criterion(X: GradedPremetricGroup) -> Optional[Subgroup]:
    """``K = G0^perp`` if X is nondegenerate, K lies in G0 and q vanishes on K; else None.

    These three conditions are equivalent to X being trivial modulo
    trivially graded metric groups; ``G0 / K`` is then the metric residue.
    """
    if not X.is_nondegenerate():
        return None
    K = X.perp(X.G0.generators)
    if not K.is_subgroup_of(X.G0):
        return None
    if any(X.q.value_num(k) for k in K.elements):
        return None
    return K


def metric_residue(X: GradedPremetricGroup, K: Subgroup) -> GradedPremetricGroup:
    """The trivially graded metric group G0 / K (X assumed to pass the kernel criterion)."""
    return condense(X, K)


def is_trivial_mod_witt(X: GradedPremetricGroup, cap: int = DEFAULT_CAP) -> Optional[ReductionTrace]:
    """Trace showing X is trivial modulo trivially graded metric groups, or None.

    First tries to split a degree-zero metric summand ``M`` whose
    complement is A-trivial (decided_by = "split").  When no such summand
    is found (K need not be a direct summand of G0) the object is
    condensed to its metric residue and a stabilization certificate is
    attached (decided_by = "condensation").
    """
    if X.order > cap:
        raise CapExceeded(f"|G| = {X.order} exceeds cap {cap}", size=X.order, cap=cap)
    K = witt_kernel_criterion(X)
    if K is None:
        return None
    G0 = X.G0
    chosen, span = _greedy_complement(X.G, G0.elements, K.element_set)
    if len(span) * K.order == G0.order:
        M = Subgroup.from_elements(X.G, span, check=False)
        steps = []
        Y = X
        if M.order > 1:
            metric, Y = split_metric(X, M)
            steps.append(SplitStep(M, gauss_sum(metric.q), metric.q))
        cert = is_a_trivial(Y, cap)
        if cert is not None:
            return ReductionTrace(X, steps, Y, "split", cert)
    residue = condense(X, K)
    witness = twisted_product(X, s_opposite(residue))
    stab = _antidiagonal_certificate(X, residue, K, witness)
    return ReductionTrace(X, [CondenseStep(K)], residue, "condensation", None, stab)


def _antidiagonal_certificate(
    X: GradedPremetricGroup, R: GradedPremetricGroup, K: Subgroup, W: GradedPremetricGroup
) -> TrivialityCertificate:
    """Lagrangian {(x, -[x]) : x in G0} in X (x) R^op, R = G0 / K."""
    P = X.perp(K.generators)
    Pobj, inc = _subgroup_as_object(X, P)
    Q = quotient(Pobj.G, Subgroup.from_elements(
        Pobj.G, [x for x in Pobj.G.elements() if inc(x) in K.element_set], check=False))
    elems = []
    for x in Pobj.G.elements():
        y = Q.projection(x)
        elems.append(tuple(inc(x)) + tuple(R.G.neg(y)))
    L = Subgroup.from_elements(W.G, elems, check=False)
    cert = TrivialityCertificate(L, True)
    if not cert.verify(W):
        raise AssertionError("internal error: antidiagonal Lagrangian failed verification")
    return cert


# ---------------------------------------------------------------------------
# reduction of representatives


def reduce_object(X: GradedPremetricGroup, mod_witt: bool = True, cap: int = DEFAULT_CAP) -> ReductionTrace:
    """Shrink X inside its class by splitting degree-zero metric summands
    (only when ``mod_witt``) and condensing isotropic subgroups of G0 that
    meet the radical trivially."""
    steps: list = []
    Y = X
    while True:
        changed = False
        G0 = Y.G0
        if mod_witt and G0.order > 1:
            q = Y.q
            g0 = G0.elements
            R0 = frozenset(x for x in g0 if all(q.bil_num(x, h) == 0 for h in G0.generators))
            chosen, span = _greedy_complement(Y.G, g0, R0)
            if len(span) > 1 and len(span) * len(R0) == G0.order:
                M = Subgroup.from_elements(Y.G, span, check=False)
                metric, Y = split_metric(Y, M)
                steps.append(SplitStep(M, gauss_sum(metric.q), metric.q))
                changed = True
                continue
        rad = frozenset(Y.radical)
        q = Y.q
        iso = [x for x in Y.G0.elements if q.value_num(x) == 0 and x not in rad]

        def ok(x, chosen):
            return all(q.bil_num(x, c) == 0 for c in chosen)

        chosen: list[Elem] = []
        span = frozenset({Y.G.zero})
        for x in iso:
            if x in span or not ok(x, chosen):
                continue
            new = _closure(Y.G, [x], span)
            if len(new & rad) != 1 or any(q.value_num(z) for z in new):
                continue
            chosen.append(x)
            span = new
        if len(span) > 1:
            H = Subgroup.from_elements(Y.G, span, check=False)
            Y = condense(Y, H, cap)
            steps.append(CondenseStep(H))
            changed = True
        if not changed:
            break
    return ReductionTrace(X, steps, Y, "reduction")


def reduce_mod_witt(X: GradedPremetricGroup, cap: int = DEFAULT_CAP) -> GradedPremetricGroup:
    return reduce_object(X, True, cap).final


def reduce_raw(X: GradedPremetricGroup, cap: int = DEFAULT_CAP) -> GradedPremetricGroup:
    return reduce_object(X, False, cap).final


# ---------------------------------------------------------------------------
# orders and equality


@dataclass
class OrderResult:
    order: int
    powers: list  # reduced representatives X^1 .. X^order
    trace: Optional[ReductionTrace]


def _order(X: GradedPremetricGroup, cap_n: int, mod_witt: bool, cap: int) -> OrderResult:
    ok, _ = is_s_invertible(X, cap * cap)
    if not ok:
        raise NotInvertible("object is not s-invertible")
    reducer = reduce_mod_witt if mod_witt else reduce_raw
    P = reducer(X, cap)
    powers = [P]
    for n in range(1, cap_n + 1):
        if mod_witt:
            tr = is_trivial_mod_witt(P, cap)
            if tr is not None:
                return OrderResult(n, powers, tr)
        else:
            cert = is_a_trivial(P, cap)
            if cert is not None:
                return OrderResult(n, powers, ReductionTrace(P, [], P, "lagrangian", cert))
        P = reducer(twisted_product(P, X), cap)
        powers.append(P)
    raise OrderCapExceeded(f"no trivial power up to n = {cap_n}", size=cap_n, cap=cap_n)


def order_mod_witt(X: GradedPremetricGroup, cap_n: int = 12, cap: int = DEFAULT_CAP) -> int:
    return _order(X, cap_n, True, cap).order


def order_raw(X: GradedPremetricGroup, cap_n: int = 12, cap: int = DEFAULT_CAP) -> int:
    return _order(X, cap_n, False, cap).order


def order_details(X: GradedPremetricGroup, cap_n: int = 12, mod_witt: bool = True, cap: int = DEFAULT_CAP) -> OrderResult:
    return _order(X, cap_n, mod_witt, cap)


def classes_equal(X: GradedPremetricGroup, Y: GradedPremetricGroup, cap: int = DEFAULT_CAP) -> bool:
    return is_a_trivial(twisted_product(X, s_opposite(Y)), cap) is not None


def classes_equal_mod_witt(X: GradedPremetricGroup, Y: GradedPremetricGroup, cap: int = DEFAULT_CAP) -> bool:
    return witt_kernel_criterion(twisted_product(X, s_opposite(Y))) is not None


def classes_equal_mod_witt_trace(X, Y, cap: int = DEFAULT_CAP) -> Optional[ReductionTrace]:
    return is_trivial_mod_witt(twisted_product(X, s_opposite(Y)), cap)


# ---------------------------------------------------------------------------
# graded isometries


def find_graded_isometry(X: GradedPremetricGroup, Y: GradedPremetricGroup) -> Optional[GroupHom]:
    """Backtracking search for an isomorphism G_X -> G_Y preserving grading and form."""
    if X.G.order != Y.G.order or X.context.A != Y.context.A:
        return None
    GX, GY = X.G, Y.G
    basis = GX.basis()
    # candidate images per generator: killed by the same order, same degree, same q-value
    cands = []
    for i, e in enumerate(basis):
        n = GX.factors[i]
        pool = [y for y in GY.elements() if GY.scale(n, y) == GY.zero and Y.f(y) == X.f(e) and Y.q(y) == X.q(e)]
        cands.append(pool)
    r = GX.rank

    def bil_ok(imgs, i):
        xi = basis[i]
        for j in range(i):
            if X.q.bil(basis[j], xi) != Y.q.bil(imgs[j], imgs[i]):
                return False
        return True

    def rec(i, imgs):
        if i == r:
            h = GroupHom.from_images(GX, GY, imgs)
            return h if h.is_bijective() else None
        for y in cands[i]:
            imgs.append(y)
            if bil_ok(imgs, i):
                res = rec(i + 1, imgs)
                if res is not None:
                    return res
            imgs.pop()
        return None

    return rec(0, [])


# ---------------------------------------------------------------------------
# symplectic automorphisms and transport


def symplectic_automorphisms(ctx: SyllepticContext, form: Optional[Bicharacter] = None) -> list[GroupHom]:
    """Automorphisms of A preserving Alt(s) (or the given alternating form)."""
    alt = form if form is not None else ctx.alt.form
    A = ctx.A
    basis = A.basis()
    out = []
    for phi in automorphisms(A):
        imgs = phi.images()
        if all(alt(imgs[i], imgs[j]) == alt(basis[i], basis[j]) for i in range(A.rank) for j in range(A.rank)):
            out.append(phi)
    return out


def transport_correction(ctx: SyllepticContext, phi: GroupHom) -> Optional[QuadraticForm]:
    """A quadratic form p on A with Bil(p)(u, v) = s(u, v) - s(phi^-1 u, phi^-1 v), if any."""
    inv = phi.inverse()
    A = ctx.A
    target = Bicharacter.from_function(A, A, lambda u, v: ctx.s(u, v) - ctx.s(inv(u), inv(v)))
    for p in enumerate_quadratic_forms(A):
        if p.bil == target:
            return p
    return None


def transport(X: GradedPremetricGroup, phi: GroupHom, p: Optional[QuadraticForm] = None) -> GradedPremetricGroup:
    """Compose a symplectic automorphism into the grading, correcting q so products are respected."""
    ctx = X.context
    if p is None:
        p = transport_correction(ctx, phi)
        if p is None:
            raise ValueError("no quadratic correction exists for this automorphism")
    f = phi.compose(X.f)
    q = QuadraticForm.from_function(X.G, lambda x: X.q(x) + p(f(x)), check=False)
    return GradedPremetricGroup(ctx, X.G, f, q)


# ---------------------------------------------------------------------------
# group structure


@dataclass
class GroupStructure:
    order: int
    representatives: list
    words: list
    table: list  # table[i][j] = index of class_i * class_j
    identity: int
    histogram: dict
    abelian: bool
    center_order: int
    derived_order: int
    label: str
    element_orders: list

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "abelian": self.abelian,
            "center_order": self.center_order,
            "derived_order": self.derived_order,
            "label": self.label,
            "words": ["".join(w) if w else "1" for w in self.words],
        }


def _table_invariants(table: list, identity: int):
    n = len(table)
    orders = []
    for i in range(n):
        k, cur = 1, i
        while cur != identity:
            cur = table[cur][i]
            k += 1
            if k > n + 1:
                raise AssertionError("element order exceeds group order")
        orders.append(k)
    hist: dict[int, int] = {}
    for o in orders:
        hist[o] = hist.get(o, 0) + 1
    abelian = all(table[i][j] == table[j][i] for i in range(n) for j in range(n))
    center = [i for i in range(n) if all(table[i][j] == table[j][i] for j in range(n))]
    inv = [next(j for j in range(n) if table[i][j] == identity) for i in range(n)]
    comms = {table[table[inv[i]][inv[j]]][table[i][j]] for i in range(n) for j in range(n)}
    derived = {identity} | comms
    frontier = list(derived)
    while frontier:
        new = []
        for a in frontier:
            for b in list(derived):
                for c in (table[a][b], table[b][a]):
                    if c not in derived:
                        derived.add(c)
                        new.append(c)
        frontier = new
    return orders, hist, abelian, len(center), len(derived)


def group_structure(
    generators: Sequence[GradedPremetricGroup],
    ctx: Optional[SyllepticContext] = None,
    closure_cap: int = 256,
    cap: int = DEFAULT_CAP,
    names: Optional[Sequence[str]] = None,
) -> GroupStructure:
    from .groups import identify

    if not generators and ctx is None:
        raise ValueError("need a context when no generators are given")
    ctx = generators[0].context if generators else ctx
    names = list(names) if names is not None else [chr(ord("a") + i) for i in range(len(generators))]
    for g in generators:
        ok, _ = is_s_invertible(g, cap * cap)
        if not ok:
            raise NotInvertible("generator is not s-invertible")
    gens = [reduce_mod_witt(g, cap) for g in generators]
    reps = [reduce_mod_witt(unit(ctx), cap)]
    words: list[list[str]] = [[]]
    right: list[list[int]] = []
    i = 0
    while i < len(reps):
        row = []
        for j, g in enumerate(gens):
            Y = reduce_mod_witt(twisted_product(reps[i], g), cap)
            hit = None
            for k, R in enumerate(reps):
                if R.G.order == Y.G.order and Y == R:
                    hit = k
                    break
            if hit is None:
                for k, R in enumerate(reps):
                    if classes_equal_mod_witt(Y, R, cap):
                        hit = k
                        break
            if hit is None:
                if len(reps) >= closure_cap:
                    raise ClosureCapExceeded(f"more than {closure_cap} classes", size=len(reps) + 1, cap=closure_cap)
                reps.append(Y)
                words.append(words[i] + [names[j]])
                hit = len(reps) - 1
            row.append(hit)
        right.append(row)
        i += 1
    n = len(reps)
    letter = {name: j for j, name in enumerate(names)}
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            cur = a
            for ch in words[b]:
                cur = right[cur][letter[ch]]
            row.append(cur)
        table.append(row)
    orders, hist, abelian, zc, dc = _table_invariants(table, 0)
    label = identify(n, hist, abelian, zc, dc)
    return GroupStructure(n, reps, words, table, 0, hist, abelian, zc, dc, label, orders)


# ---------------------------------------------------------------------------
# exact sequence bookkeeping


@dataclass
class ExactSequenceReport:
    aut_syp_order: int
    h5_group: FinAbGroup
    predicted_order: int
    computed_order: Optional[int]
    consistent: Optional[bool]
    final_map_zero: Optional[bool]

    def to_json(self) -> dict:
        return {
            "aut_syp_order": self.aut_syp_order,
            "h5": format_group(self.h5_group),
            "h5_order": self.h5_group.order,
            "predicted_order": self.predicted_order,
            "computed_order": self.computed_order,
            "consistent": self.consistent,
            "final_map_zero": self.final_map_zero,
        }


def exact_sequence_report(ctx: SyllepticContext, computed_order: Optional[int] = None) -> ExactSequenceReport:
    aut = len(symplectic_automorphisms(ctx))
    h5 = em_h5_b3(ctx.A)
    predicted = aut * h5.order
    if computed_order is None:
        return ExactSequenceReport(aut, h5, predicted, None, None, None)
    consistent = computed_order == predicted or 2 * computed_order == predicted
    return ExactSequenceReport(aut, h5, predicted, computed_order, consistent, computed_order == predicted)
