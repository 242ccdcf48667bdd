import cmath

import pytest
from hypothesis import given, strategies as st

from tycat.abelian import enumerate_subgroups, parse_group
from tycat.forms import (
    QuadraticForm,
    enumerate_alternating_forms,
    enumerate_quadratic_forms,
    gauss_sum,
    orthogonal_complement,
    orthogonal_sum,
    quadratic_form_count,
    radical,
)
from tycat.qz import QZ

from .strategies import group_and_form, groups, small_groups


@pytest.mark.parametrize("text,count", [("Z2", 4), ("Z2+Z2", 32), ("Z3", 3), ("Z4", 8)])
def test_form_counts(text, count):
    G = parse_group(text)
    assert quadratic_form_count(G) == count
    assert len(enumerate_quadratic_forms(G)) == count


def test_alternating_counts():
    assert len(enumerate_alternating_forms(parse_group("Z2+Z2"))) == 2
    assert len(enumerate_alternating_forms(parse_group("Z4"))) == 1


@given(group_and_form(), st.integers(-5, 5))
def test_homogeneity(gq, k):
    G, q = gq
    for g in G.elements():
        assert q(G.scale(k, g)) == q(g) * (k * k)


@given(group_and_form())
def test_polarization_is_bicharacter(gq):
    G, q = gq
    b = q.bil
    els = list(G.elements())
    for x in els[:6]:
        for y in els[:6]:
            assert b(x, y) == q(G.add(x, y)) - q(x) - q(y)
            assert b(x, y) == b(y, x)
            for z in els[:3]:
                assert b(G.add(x, z), y) == b(x, y) + b(z, y)


@given(group_and_form(small_groups), group_and_form(small_groups))
def test_orthogonal_sum_gauss_multiplicative(p, r):
    _, q1 = p
    _, q2 = r
    s = orthogonal_sum(q1, q2)
    assert cmath.isclose(gauss_sum(s), gauss_sum(q1) * gauss_sum(q2), abs_tol=1e-9)


@given(group_and_form(small_groups))
def test_perp_of_perp_nondegenerate(gq):
    G, q = gq
    if radical(q) != [G.zero]:
        return
    for H in enumerate_subgroups(G):
        P = orthogonal_complement(q, H)
        assert P.order * H.order == G.order
        assert orthogonal_complement(q, P).elements == H.elements


def test_json_round_trip():
    G = parse_group("Z2+Z4")
    for q in enumerate_quadratic_forms(G)[:20]:
        assert QuadraticForm.from_json(G, q.to_json()) == q
