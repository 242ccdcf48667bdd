"""Duality-defect bookkeeping over a finite abelian group A.

A bimodule form is a quadratic form q on A + A.  Its two slices
``q1(a) = q(a, 0)`` and ``q2(b) = q(0, b)`` and the mixed pairing
``Bil(q)12(a, b) = Bil(q)((a, 0), (0, b))`` drive every filter here.
The center of the relevant categories is A + A^ with the canonical
alternating form ``((a1, l1), (a2, l2)) -> l1(a2) - l2(a1)``; actions on it
must preserve that form.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abelian import (
    FinAbGroup,
    GroupHom,
    automorphisms,
    canonicalize,
    dual_group,
    format_group,
    parse_group,
)
from .cohomology import (
    CohomologyGroup,
    GModule,
    cohomology_bar,
    cohomology_cyclic,
    cohomology_torus,
    named_action,
)
from .errors import ActionInvalid, CapExceeded, HypothesisViolated, NotSymplectic, ParseError
from .forms import (
    DEFAULT_CAP,
    Bicharacter,
    QuadraticForm,
    bil12,
    canonical_sigma,
    enumerate_quadratic_forms,
    quadratic_form_count,
)
from .qz import QZ


@dataclass(frozen=True)
class BimoduleForm:
    A: FinAbGroup
    q: QuadraticForm

    def __post_init__(self):
        if self.q.group != self.A.direct_sum(self.A):
            raise ValueError("bimodule form must live on A + A")
        if self.q.split != self.A.rank:
            object.__setattr__(self, "q", QuadraticForm(self.q.group, self.q.gen_values, self.q.offdiag, self.A.rank))

    def pair(self, a, b) -> tuple[int, ...]:
        return tuple(a) + tuple(b)

    def __call__(self, a, b) -> QZ:
        return self.q(self.pair(a, b))

    def q1(self, a) -> QZ:
        return self.q(self.pair(a, self.A.zero))

    def q2(self, b) -> QZ:
        return self.q(self.pair(self.A.zero, b))

    @property
    def b12(self) -> Bicharacter:
        cached = self.__dict__.get("_b12")
        if cached is None:
            cached = bil12(self.q)
            object.__setattr__(self, "_b12", cached)
        return cached

    def slices_trivial(self) -> bool:
        return all(self.q1(a) == 0 and self.q2(a) == 0 for a in self.A.elements())

    def is_symmetric(self) -> bool:
        return all(self(a, b) == self(b, a) for a in self.A.elements() for b in self.A.elements())

    def key(self) -> tuple:
        return self.q.key()

    def label(self) -> str:
        gv = ",".join(str(v) for v in self.q.gen_values)
        od = ",".join(str(v) for v in self.q.offdiag)
        return f"q=[{gv}|{od}]"

    def to_json(self) -> dict:
        return {"A": format_group(self.A), "q": self.q.to_json()}


def enumerate_bimodule_forms(A: FinAbGroup, cap: int = DEFAULT_CAP) -> list[BimoduleForm]:
    if A.order**2 > cap:
        raise CapExceeded(f"|A|^2 = {A.order ** 2} exceeds cap {cap}", size=A.order**2, cap=cap)
    B = A.direct_sum(A)
    return [BimoduleForm(A, q) for q in enumerate_quadratic_forms(B, cap=cap, split=A.rank)]


def bimodule_form_count(A: FinAbGroup) -> int:
    return quadratic_form_count(A.direct_sum(A))


def is_viable(form: BimoduleForm) -> bool:
    """Bil(q)12 : A -> A^ is an isomorphism."""
    return form.b12.is_nondegenerate()


def filter_viable(forms: Sequence[BimoduleForm]) -> list[BimoduleForm]:
    return [f for f in forms if is_viable(f)]


def filter_order_two(viable: Sequence[BimoduleForm]) -> list[BimoduleForm]:
    return [f for f in viable if f.is_symmetric()]


def _is_antisymmetric(b: Bicharacter) -> bool:
    A = b.left
    return all(b(x, y) == -b(y, x) for x in A.basis() for y in A.basis())


def filter_order_four(viable: Sequence[BimoduleForm]) -> list[BimoduleForm]:
    """Trivial slices, nondegenerate mixed pairing, induced center action of order exactly 4."""
    out = []
    for f in viable:
        if not f.slices_trivial():
            continue
        act = induced_center_action(f, order4_case=True)
        if act.order == 4:
            out.append(f)
    return out


def filter_order_four_literal(viable: Sequence[BimoduleForm]) -> list[BimoduleForm]:
    """Trivial slices and an antisymmetric (nondegenerate) mixed pairing, read literally."""
    return [f for f in viable if f.slices_trivial() and _is_antisymmetric(f.b12)]


# ---------------------------------------------------------------------------
# center action


def center_group(A: FinAbGroup) -> FinAbGroup:
    """A + A^ in coordinates (the coordinate dual has the same factors)."""
    return A.direct_sum(dual_group(A).dual)


def center_alt(A: FinAbGroup) -> Bicharacter:
    s = canonical_sigma(A)
    return s + (-s.transpose())


def hom_order(h: GroupHom, limit: int = 10_000) -> int:
    ident = GroupHom.identity(h.source)
    acc = h
    for k in range(1, limit + 1):
        if acc == ident:
            return k
        acc = h.compose(acc)
    raise ValueError("automorphism order exceeds search limit")


def preserves(h: GroupHom, form: Bicharacter) -> bool:
    basis = h.source.basis()
    imgs = h.images()
    return all(form(imgs[i], imgs[j]) == form(basis[i], basis[j]) for i in range(len(basis)) for j in range(len(basis)))


@dataclass(frozen=True)
class CenterAction:
    matrix: GroupHom
    order: int
    square_is_minus_identity: bool
    preserves_alt: bool

    def to_json(self) -> dict:
        return {
            "matrix": [list(r) for r in self.matrix.matrix],
            "order": self.order,
            "square_is_minus_identity": self.square_is_minus_identity,
            "preserves_alt": self.preserves_alt,
        }


def induced_center_action(form: BimoduleForm, order4_case: bool = False) -> CenterAction:
    """The automorphism (a, l) -> (-(B^T)^-1 l, B a) of A + A^, where B = Bil(q)12 as a map A -> A^."""
    A = form.A
    if not is_viable(form):
        raise HypothesisViolated("mixed pairing is degenerate; the form is not viable")
    if order4_case and not form.slices_trivial():
        raise HypothesisViolated("order-four case needs q(a, 0) = q(0, b) = 0")
    D = dual_group(A)
    b = form.b12
    k = A.rank
    Z = center_group(A)
    elems = list(A.elements())

    def as_char(fn) -> tuple[int, ...]:
        # coordinates of the character x -> fn(x) in the coordinate dual
        out = []
        for e, n in zip(A.basis(), A.factors):
            v = fn(e)
            if n % v.denominator:
                raise ValueError("value is not a character value")
            out.append(v.numerator * (n // v.denominator) % n)
        return tuple(out)

    def B(a):
        return as_char(lambda c: b(a, c))

    # (B^T)^-1: character l -> the unique a with b(c, a) = l(c) for all c
    bt_inv: dict[tuple, tuple] = {}
    for a in elems:
        bt_inv[as_char(lambda c, a=a: b(c, a))] = a
    imgs = []
    for e in A.basis():
        imgs.append(A.zero + B(e))
    for chi in D.dual.basis():
        a = bt_inv[tuple(chi)]
        imgs.append(A.neg(a) + D.dual.zero)
    M = GroupHom.from_images(Z, Z, imgs)
    order = hom_order(M)
    minus = GroupHom.from_images(Z, Z, [Z.neg(e) for e in Z.basis()])
    return CenterAction(M, order, M.compose(M) == minus, preserves(M, center_alt(A)))


# ---------------------------------------------------------------------------
# twisting


def twist(form: BimoduleForm, p: QuadraticForm, alpha: GroupHom) -> BimoduleForm:
    """(p, alpha) . q : (a, b) -> q(alpha^-1 a, alpha^-1 b) + p(a) + p(b)."""
    A = form.A
    inv = alpha.inverse()
    k = A.rank

    def fn(x):
        a, c = x[:k], x[k:]
        return form(inv(a), inv(c)) + p(a) + p(c)

    q = QuadraticForm.from_function(A.direct_sum(A), fn, check=False, split=k)
    return BimoduleForm(A, q)


def twist_group(A: FinAbGroup) -> list[tuple[QuadraticForm, GroupHom]]:
    return [(p, al) for p in enumerate_quadratic_forms(A) for al in automorphisms(A)]


def twist_orbits(forms: Sequence[BimoduleForm], A: FinAbGroup) -> list[list[BimoduleForm]]:
    """Orbits of the forms under Quad(A) x| Aut(A), restricted to the supplied set."""
    group = twist_group(A)
    remaining = {f.key(): f for f in forms}
    orbits = []
    for f in forms:
        if f.key() not in remaining:
            continue
        orbit_keys = set()
        orbit = []
        for p, al in group:
            g = twist(f, p, al)
            if g.key() not in orbit_keys:
                orbit_keys.add(g.key())
                orbit.append(g)
        members = [remaining.pop(k) for k in sorted(orbit_keys) if k in remaining]
        orbits.append(sorted(orbit, key=lambda x: x.key()) if len(members) == len(orbit) else members)
    return orbits


def full_orbit(form: BimoduleForm) -> list[BimoduleForm]:
    seen = {}
    for p, al in twist_group(form.A):
        g = twist(form, p, al)
        seen.setdefault(g.key(), g)
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# extension data


def parse_center_action(A: FinAbGroup, action) -> tuple[str, GroupHom]:
    Z = center_group(A)
    if isinstance(action, GroupHom):
        return "explicit", action
    name = str(action).strip()
    if name in ("S-matrix", "s-matrix", "S", "smatrix"):
        name = "smatrix"
    try:
        return name, named_action(Z, name)
    except ParseError:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise ParseError(str(exc)) from exc


@dataclass
class ExtensionReport:
    G: FinAbGroup
    A: FinAbGroup
    action: str
    pairing: str
    h3: CohomologyGroup
    h4: CohomologyGroup
    h5: CohomologyGroup
    h6: CohomologyGroup
    witt_orders: tuple[int, ...]
    sigma_torsor_size: int
    labels: list[str] = field(default_factory=list)
    note: str = "Witt orders of the stacked braided category are caller-declared, not computed."

    @property
    def obstructions_vanish(self) -> bool:
        return self.h4.is_zero and self.h6.is_zero

    def to_json(self) -> dict:
        return {
            "G": format_group(self.G),
            "A": format_group(self.A),
            "action": self.action,
            "pairing": self.pairing,
            "obstructions": {
                "H4(G,A+A^)": {"group": self.h4.literal(), "vanishes": self.h4.is_zero},
                "H6(G,C^x)": {"group": self.h6.literal(), "vanishes": self.h6.is_zero},
            },
            "torsors": {
                "H3(G,A+A^)": {"group": self.h3.literal(), "size": self.h3.order},
                "H5(G,C^x)": {"group": self.h5.literal(), "size": self.h5.order},
            },
            "witt_orders": list(self.witt_orders),
            "sigma_torsor_size": self.sigma_torsor_size,
            "labels": self.labels,
            "note": self.note,
        }


def _group_cohomology(module: GModule, degree: int) -> CohomologyGroup:
    canon = canonicalize(module.G)
    if module.G.rank == 1 or (canon.rank == 1 and module.G == canon):
        return cohomology_cyclic(module.G.order, module, degree)
    return cohomology_bar(module, degree, representatives=False)


def _element_labels(H: FinAbGroup) -> list[str]:
    if H.rank == 0:
        return ["0"]
    return ["(" + ",".join(map(str, x)) + ")" if H.rank > 1 else str(x[0]) for x in H.elements()]


def classify_extension(
    G, A, action="swap", witt_orders: Sequence[int] = (1,), label_cap: int = 4096
) -> ExtensionReport:
    G = parse_group(G) if isinstance(G, str) else G
    A = parse_group(A) if isinstance(A, str) else A
    if canonicalize(G).rank > 1 and G.order > 8:
        raise CapExceeded(f"G of order {G.order} is neither cyclic nor of order <= 8", size=G.order, cap=8)
    name, rho = parse_center_action(A, action)
    if not preserves(rho, center_alt(A)):
        raise NotSymplectic(f"action {name!r} does not preserve the canonical alternating form on A + A^ for A = {format_group(A)}")
    Z = center_group(A)
    try:
        module = GModule(G, Z, tuple(rho for _ in G.factors), name)
    except ActionInvalid:
        raise
    h3 = _group_cohomology(module, 3)
    h4 = _group_cohomology(module, 4)
    h5 = cohomology_torus(G, 5)
    h6 = cohomology_torus(G, 6)
    quads = enumerate_quadratic_forms(A)
    sigma_size = len(quads)
    total = len(witt_orders) * h5.order * sigma_size
    if total > label_cap:
        raise CapExceeded(f"{total} labels exceed cap {label_cap}", size=total, cap=label_cap)
    labels = []
    for w in witt_orders:
        for tau in _element_labels(h5.group):
            for p in quads:
                sig = ",".join(str(v) for v in p.gen_values + p.offdiag)
                labels.append(f"3TY^{w}_{{{tau};[{sig}]}}")
    return ExtensionReport(G, A, name, "coordinate evaluation pairing A x A^ -> Q/Z", h3, h4, h5, h6, tuple(witt_orders), sigma_size, labels)


# ---------------------------------------------------------------------------
# fusion table

SYMBOLS = ("C0", "D1", "D2", "D3")
DEGREE = {"C0": 0, "D1": 1, "D2": 2, "D3": 3}
VECT = "Vect(A[0])"


@dataclass(frozen=True)
class FusionRow:
    left: str
    right: str
    result: str
    coefficient: str

    def to_json(self) -> dict:
        return {"left": self.left, "right": self.right, "result": self.result, "coefficient": self.coefficient}


@dataclass
class FusionTable:
    A: FinAbGroup
    phi_quad: QuadraticForm
    phi_aut: GroupHom
    rows: list[FusionRow]
    coefficients: tuple[str, ...]

    def lookup(self, left: str, right: str) -> FusionRow:
        for r in self.rows:
            if r.left == left and r.right == right:
                return r
        raise KeyError((left, right))

    def is_closed(self) -> bool:
        pairs = {(r.left, r.right) for r in self.rows}
        return pairs == set(itertools.product(SYMBOLS, SYMBOLS)) and all(r.result in SYMBOLS for r in self.rows)

    def grading_ok(self) -> bool:
        return all((DEGREE[r.left] + DEGREE[r.right] - DEGREE[r.result]) % 4 == 0 for r in self.rows)

    def coefficients_ok(self) -> bool:
        return all(r.coefficient in self.coefficients for r in self.rows)

    def to_json(self) -> dict:
        return {"A": format_group(self.A), "rows": [r.to_json() for r in self.rows], "coefficients": list(self.coefficients)}

    def render(self) -> str:
        w = max(len(r.coefficient) for r in self.rows)
        lines = [f"{'left':<5} {'right':<5} {'result':<6} coefficient"]
        for r in self.rows:
            lines.append(f"{r.left:<5} {r.right:<5} {r.result:<6} {r.coefficient:<{w}}".rstrip())
        return "\n".join(lines)


def _twisted_label(p: QuadraticForm) -> str:
    if all(v == 0 for v in p.gen_values + p.offdiag):
        return VECT
    vals = ",".join(str(v) for v in p.gen_values + p.offdiag)
    return f"Vect^{{[{vals}]}}(A[0])"


def parse_phi(A: FinAbGroup, text: str) -> tuple[QuadraticForm, GroupHom]:
    """``"trivial"`` or ``"q:1/4;aut:neg"`` (q lists generator values then off-diagonal values; aut is id, neg or a unit k)."""
    text = (text or "trivial").strip()
    p = QuadraticForm.zero(A)
    al = GroupHom.identity(A)
    if text in ("trivial", "0", ""):
        return p, al
    for part in text.split(";"):
        if ":" not in part:
            raise ParseError(f"bad phi component {part!r}")
        key, val = (s.strip() for s in part.split(":", 1))
        if key == "q":
            vals = [QZ(v) for v in val.split(",") if v.strip()] if val else []
            r = A.rank
            npairs = r * (r - 1) // 2
            if len(vals) not in (r, r + npairs):
                raise ParseError(f"q needs {r} or {r + npairs} values")
            try:
                p = QuadraticForm(A, tuple(vals[:r]), tuple(vals[r:]))
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        elif key == "aut":
            if val in ("id", "identity"):
                al = GroupHom.identity(A)
            elif val == "neg":
                al = GroupHom.from_images(A, A, [A.neg(e) for e in A.basis()])
            else:
                try:
                    k = int(val)
                except ValueError as exc:
                    raise ParseError(f"bad automorphism {val!r}") from exc
                al = GroupHom.from_images(A, A, [A.scale(k, e) for e in A.basis()])
                if not al.is_bijective():
                    raise ParseError(f"multiplication by {k} is not an automorphism of {format_group(A)}")
        else:
            raise ParseError(f"unknown phi key {key!r}")
    return p, al


def generalized_ty_fusion_table(A, phi=None) -> FusionTable:
    """Symbolic fusion rules of the four graded pieces C0, D1, D2, D3 (degrees 0..3 mod 4)."""
    A = parse_group(A) if isinstance(A, str) else A
    if phi is None or isinstance(phi, str):
        p, al = parse_phi(A, phi or "trivial")
    else:
        p, al = phi
    t1 = _twisted_label(p)
    t2 = _twisted_label(p.pullback(al))
    special = {
        ("C0", "C0"): ("C0", VECT),
        ("D2", "D2"): ("C0", VECT),
        ("C0", "D2"): ("D2", t1),
        ("D2", "C0"): ("D2", t2),
    }
    rows = []
    for left, right in itertools.product(SYMBOLS, SYMBOLS):
        if (left, right) in special:
            res, coeff = special[(left, right)]
        else:
            res = SYMBOLS[(DEGREE[left] + DEGREE[right]) % 4]
            coeff = VECT
        rows.append(FusionRow(left, right, res, coeff))
    coeffs = tuple(dict.fromkeys([VECT, t1, t2]))
    return FusionTable(A, p, al, rows, coeffs)
