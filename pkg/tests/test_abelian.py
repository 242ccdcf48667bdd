import pytest
from hypothesis import given

from tycat.abelian import (
    FinAbGroup,
    GroupHom,
    Subgroup,
    automorphisms,
    canonicalize,
    enumerate_subgroups,
    format_group,
    parse_element,
    parse_group,
    quotient,
)
from tycat.errors import ParseError

from .strategies import groups, groups_with_element


def test_parse_and_format_round_trip():
    for text in ["Z2", "Z2+Z4", "Z3+Z3"]:
        assert format_group(parse_group(text)) == text
    assert parse_group("0").order == 1
    with pytest.raises(ParseError):
        parse_group("Q8")
    assert parse_element("(1,0)", parse_group("Z2+Z2")) == (1, 0)


def test_canonical_form():
    assert canonicalize(parse_group("Z2+Z3")).factors == (6,)
    assert canonicalize(parse_group("Z4+Z2")).factors == (2, 4)


@given(groups_with_element())
def test_element_order_divides_exponent(ge):
    G, x = ge
    assert G.exponent % G.element_order(x) == 0
    assert G.scale(G.element_order(x), x) == G.zero


def test_subgroup_counts():
    # Z2+Z2 has 5 subgroups, Z4 has 3, Z2+Z4 has 8
    assert len(enumerate_subgroups(parse_group("Z2+Z2"))) == 5
    assert len(enumerate_subgroups(parse_group("Z4"))) == 3
    assert len(enumerate_subgroups(parse_group("Z2+Z4"))) == 8


def test_automorphism_counts():
    assert len(automorphisms(parse_group("Z2+Z2"))) == 6
    assert len(automorphisms(parse_group("Z8"))) == 4
    assert len(automorphisms(parse_group("Z2+Z4"))) == 8


def test_quotient_orders():
    G = parse_group("Z2+Z4")
    for H in enumerate_subgroups(G):
        Q = quotient(G, H)
        assert Q.group.order * H.order == G.order


def test_hom_well_definedness():
    G, H = parse_group("Z2"), parse_group("Z4")
    with pytest.raises(ValueError):
        GroupHom.from_images(G, H, [(1,)])
    h = GroupHom.from_images(G, H, [(2,)])
    assert h((1,)) == (2,)
    assert h.is_injective()


@given(groups)
def test_identity_inverse(G):
    ident = GroupHom.identity(G)
    assert ident.inverse() == ident
    assert ident.is_bijective()
