"""Hypothesis strategies for small groups, forms and graded objects."""
from hypothesis import strategies as st

from tycat.abelian import FinAbGroup, GroupHom
from tycat.forms import QuadraticForm, gen_value_modulus
from tycat.presets import klein_context
from tycat.qz import QZ
from tycat.witt import GradedPremetricGroup

factor_lists = st.lists(st.sampled_from([2, 3, 4, 6, 8]), min_size=0, max_size=3)
groups = factor_lists.map(lambda fs: FinAbGroup(tuple(fs)))
small_groups = st.lists(st.sampled_from([2, 3, 4]), min_size=1, max_size=2).map(lambda fs: FinAbGroup(tuple(fs)))


@st.composite
def elements(draw, G):
    return tuple(draw(st.integers(0, n - 1)) for n in G.factors)


@st.composite
def groups_with_element(draw, strategy=groups):
    G = draw(strategy)
    return G, draw(elements(G))


@st.composite
def forms(draw, G):
    gv = [QZ(draw(st.integers(0, gen_value_modulus(n) - 1)), gen_value_modulus(n)) for n in G.factors]
    od = []
    for i in range(G.rank):
        for j in range(i + 1, G.rank):
            from math import gcd

            g = gcd(G.factors[i], G.factors[j])
            od.append(QZ(draw(st.integers(0, g - 1)), g))
    return QuadraticForm(G, tuple(gv), tuple(od))


@st.composite
def group_and_form(draw, strategy=groups):
    G = draw(strategy)
    return G, draw(forms(G))


@st.composite
def graded_objects(draw, strategy=small_groups):
    ctx = klein_context()
    G = draw(strategy)
    A = ctx.A
    imgs = []
    for n in G.factors:
        allowed = [x for x in A.elements() if A.scale(n, x) == A.zero]
        imgs.append(draw(st.sampled_from(allowed)))
    f = GroupHom.from_images(G, A, imgs)
    return GradedPremetricGroup(ctx, G, f, draw(forms(G)))
