"""Named objects in the context A = Z2+Z2 with s(a, b) = 1/2 and all other generator values 0."""
from __future__ import annotations

from .abelian import FinAbGroup, parse_group
from .errors import ParseError
from .forms import Bicharacter
from .qz import QZ
from .witt import GradedPremetricGroup, SyllepticContext, make_element, product, unit

A_KLEIN = parse_group("Z2+Z2")
Z2 = parse_group("Z2")
K4 = parse_group("Z2+Z2")

A_ELEM = (1, 0)
B_ELEM = (0, 1)
AB_ELEM = (1, 1)


def klein_context(convention: str = "forward") -> SyllepticContext:
    s = Bicharacter.on(A_KLEIN, ((QZ(0), QZ(1, 2)), (QZ(0), QZ(0))))
    return SyllepticContext(A_KLEIN, s, convention)


def semion_a(ctx: SyllepticContext | None = None, value: str = "1/4") -> GradedPremetricGroup:
    ctx = ctx or klein_context()
    return make_element(ctx, Z2, [A_ELEM], [value])


def semion_b(ctx: SyllepticContext | None = None, value: str = "1/4") -> GradedPremetricGroup:
    ctx = ctx or klein_context()
    return make_element(ctx, Z2, [B_ELEM], [value])


def element_c(ctx: SyllepticContext | None = None, value: str = "0") -> GradedPremetricGroup:
    ctx = ctx or klein_context()
    return make_element(ctx, Z2, [AB_ELEM], [value])


def metric_C(ctx: SyllepticContext | None = None) -> GradedPremetricGroup:
    ctx = ctx or klein_context()
    return make_element(ctx, K4, [(0, 0), (0, 0)], ["1/2", "1/2"], ["1/2"])


def metric_L(ctx: SyllepticContext | None = None) -> GradedPremetricGroup:
    ctx = ctx or klein_context()
    return make_element(ctx, K4, [(0, 0), (0, 0)], ["0", "0"], ["0"])


def preset(name: str, ctx: SyllepticContext | None = None) -> GradedPremetricGroup:
    ctx = ctx or klein_context()
    a, b = semion_a(ctx), semion_b(ctx)
    table = {
        "a": lambda: a,
        "a-": lambda: semion_a(ctx, "3/4"),
        "b": lambda: b,
        "b-": lambda: semion_b(ctx, "3/4"),
        "c": lambda: element_c(ctx, "0"),
        "c-": lambda: element_c(ctx, "1/2"),
        "ab": lambda: product(a, b),
        "ba": lambda: product(b, a),
        "a2b": lambda: product(a, a, b),
        "C": lambda: metric_C(ctx),
        "L": lambda: metric_L(ctx),
        "z": lambda: metric_C(ctx),
        "unit": lambda: unit(ctx),
        "trivial": lambda: unit(ctx),
    }
    if name not in table:
        raise ParseError(f"unknown preset {name!r}; known: {', '.join(sorted(table) + ['ab-generators'])}")
    return table[name]()


PRESET_NAMES = ("a", "a-", "b", "b-", "c", "c-", "ab", "ba", "a2b", "C", "L", "z", "unit")
GENERATOR_SETS = {"ab-generators": ("a", "b"), "a-generator": ("a",)}


def generator_set(name: str, ctx: SyllepticContext | None = None) -> list[GradedPremetricGroup]:
    if name not in GENERATOR_SETS:
        raise ParseError(f"unknown generator set {name!r}")
    return [preset(p, ctx) for p in GENERATOR_SETS[name]]
