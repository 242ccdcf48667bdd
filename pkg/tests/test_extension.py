import pytest
from hypothesis import given, strategies as st

from tycat.abelian import automorphisms, parse_group
from tycat.errors import HypothesisViolated, NotSymplectic, ParseError
from tycat.extension import (
    SYMBOLS,
    bimodule_form_count,
    center_alt,
    classify_extension,
    enumerate_bimodule_forms,
    filter_order_four,
    filter_order_four_literal,
    filter_order_two,
    filter_viable,
    full_orbit,
    generalized_ty_fusion_table,
    induced_center_action,
    parse_phi,
    preserves,
    twist,
    twist_group,
    twist_orbits,
)
from tycat.forms import enumerate_quadratic_forms

COUNTS = {
    "Z2": (32, 16, 4, 0, 1),
    "Z3": (27, 18, 6, 2, 0),
    "Z4": (256, 128, 16, 2, 0),
}


@pytest.mark.parametrize("A", sorted(COUNTS))
def test_filter_counts(A):
    G = parse_group(A)
    forms = enumerate_bimodule_forms(G)
    viable = filter_viable(forms)
    got = (
        len(forms),
        len(viable),
        len(filter_order_two(viable)),
        len(filter_order_four(viable)),
        len(filter_order_four_literal(viable)),
    )
    assert got == COUNTS[A]
    assert bimodule_form_count(G) == len(forms)


@pytest.mark.parametrize("A", ["Z2", "Z3", "Z4"])
def test_filters_are_nested(A):
    viable = filter_viable(enumerate_bimodule_forms(parse_group(A)))
    keys = {f.key() for f in viable}
    assert {f.key() for f in filter_order_two(viable)} <= keys
    assert {f.key() for f in filter_order_four(viable)} <= keys


def test_z3_orbits():
    A = parse_group("Z3")
    orbits = twist_orbits(filter_order_two(filter_viable(enumerate_bimodule_forms(A))), A)
    assert sorted(len(o) for o in orbits) == [3, 3]
    group_order = len(enumerate_quadratic_forms(A)) * len(automorphisms(A))
    for o in orbits:
        assert group_order % len(full_orbit(o[0])) == 0


@pytest.mark.parametrize("A", ["Z2", "Z3"])
def test_twist_identity_and_composition(A):
    G = parse_group(A)
    forms = enumerate_bimodule_forms(G)[:8]
    group = twist_group(G)
    p0, id_ = group[0]
    assert all(v == 0 for v in p0.gen_values)
    for f in forms:
        assert twist(f, p0, id_).key() == f.key()
        for p, al in group[:6]:
            for p2, al2 in group[:6]:
                lhs = twist(twist(f, p, al), p2, al2)
                # (p2, al2)(p, al) = (p2 + p o al2^-1, al2 al)
                comp = p2 + p.pullback(al2.inverse())
                rhs = twist(f, comp, al2.compose(al))
                assert lhs.key() == rhs.key()


@pytest.mark.parametrize("A", ["Z3", "Z4"])
def test_induced_action_order_four(A):
    G = parse_group(A)
    for f in filter_order_four(filter_viable(enumerate_bimodule_forms(G))):
        act = induced_center_action(f, order4_case=True)
        assert act.order == 4
        assert act.square_is_minus_identity
        assert act.preserves_alt


def test_induced_action_requires_viable():
    G = parse_group("Z2")
    bad = [f for f in enumerate_bimodule_forms(G) if f not in filter_viable([f])][0]
    with pytest.raises(HypothesisViolated):
        induced_center_action(bad)


def test_classify_z2_swap():
    rep = classify_extension("Z2", "Z2", "swap", witt_orders=(1, 2))
    assert rep.obstructions_vanish
    assert rep.h3.is_zero
    assert rep.h5.literal() == "Z2"
    assert len(rep.labels) == 16
    assert len(set(rep.labels)) == 16


def test_classify_z4_smatrix():
    rep = classify_extension("Z4", "Z2", "smatrix")
    assert rep.h4.literal() == "Z2"
    assert rep.h6.is_zero
    assert rep.h3.literal() == "Z2"
    assert rep.h5.literal() == "Z4"
    assert not rep.obstructions_vanish


def test_not_symplectic():
    with pytest.raises(NotSymplectic):
        classify_extension("Z4", "Z4", "swap")


def test_fusion_table_trivial():
    t = generalized_ty_fusion_table("Z2")
    assert t.is_closed()
    assert t.grading_ok()
    assert t.coefficients_ok()
    assert len(t.rows) == len(SYMBOLS) ** 2
    assert t.lookup("D1", "D3").result == "C0"
    assert t.lookup("D2", "D2").result == "C0"


@given(st.sampled_from(["trivial", "q:1/4", "q:3/4;aut:id", "q:1/2"]))
def test_fusion_table_twisted(phi):
    t = generalized_ty_fusion_table("Z2", phi)
    assert t.is_closed() and t.grading_ok() and t.coefficients_ok()


def test_fusion_twist_tags():
    t = generalized_ty_fusion_table("Z3", "q:1/3;aut:neg")
    assert t.lookup("C0", "D2").coefficient == "Vect^{[1/3]}(A[0])"
    assert t.lookup("D2", "C0").coefficient == "Vect^{[1/3]}(A[0])"
    with pytest.raises(ParseError):
        parse_phi(parse_group("Z4"), "aut:2")
    with pytest.raises(ParseError):
        parse_phi(parse_group("Z2"), "bogus")


def test_center_alt_preserved_by_swap_only_when_symplectic():
    from tycat.cohomology import named_action
    from tycat.extension import center_group

    Z = center_group(parse_group("Z2"))
    assert preserves(named_action(Z, "swap"), center_alt(parse_group("Z2")))
