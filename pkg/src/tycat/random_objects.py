"""Seeded random small objects for property sweeps."""
from __future__ import annotations

import random
from typing import Optional

from .abelian import FinAbGroup, GroupHom, Subgroup, _closure, parse_group
from .forms import QuadraticForm, gen_value_modulus
from .qz import QZ
from .witt import GradedPremetricGroup, SyllepticContext

SMALL_GROUPS = ("Z2", "Z4", "Z2+Z2", "Z3", "Z2+Z4", "Z8", "Z2+Z2+Z2")


def random_group(rng: random.Random, choices=SMALL_GROUPS) -> FinAbGroup:
    return parse_group(rng.choice(choices))


def random_form(rng: random.Random, G: FinAbGroup) -> QuadraticForm:
    gv = [QZ(rng.randrange(gen_value_modulus(n)), gen_value_modulus(n)) for n in G.factors]
    od = []
    for i in range(G.rank):
        for j in range(i + 1, G.rank):
            g = _gcd(G.factors[i], G.factors[j])
            od.append(QZ(rng.randrange(g), g))
    return QuadraticForm(G, tuple(gv), tuple(od))


def random_hom(rng: random.Random, G: FinAbGroup, A: FinAbGroup) -> GroupHom:
    imgs = []
    for n in G.factors:
        allowed = [x for x in A.elements() if A.scale(n, x) == A.zero]
        imgs.append(rng.choice(allowed))
    return GroupHom.from_images(G, A, imgs)


def random_object(rng: random.Random, ctx: SyllepticContext, choices=SMALL_GROUPS) -> GradedPremetricGroup:
    G = random_group(rng, choices)
    return GradedPremetricGroup(ctx, G, random_hom(rng, G, ctx.A), random_form(rng, G))


def random_isotropic(rng: random.Random, X: GradedPremetricGroup) -> Optional[Subgroup]:
    """A random isotropic subgroup of G0 meeting the radical trivially (None if only the trivial one)."""
    q = X.q
    rad = frozenset(X.radical)
    pool = [x for x in X.G0.elements if q.value_num(x) == 0 and x not in rad]
    rng.shuffle(pool)
    span = frozenset({X.G.zero})
    chosen = []
    for x in pool:
        if x in span or any(q.bil_num(x, c) for c in chosen):
            continue
        new = _closure(X.G, [x], span)
        if len(new & rad) != 1 or any(q.value_num(z) for z in new):
            continue
        chosen.append(x)
        span = new
        if rng.random() < 0.4:
            break
    if len(span) == 1:
        return None
    return Subgroup.from_elements(X.G, span, check=False)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
