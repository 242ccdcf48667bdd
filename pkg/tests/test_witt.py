import pytest
from hypothesis import assume, given

from tycat.presets import klein_context, preset
from tycat.witt import (
    classes_equal_mod_witt,
    find_graded_isometry,
    group_structure,
    is_s_invertible,
    is_trivial_mod_witt,
    order_details,
    order_mod_witt,
    order_raw,
    power,
    product,
    reduce_mod_witt,
    s_opposite,
    twisted_product,
    unit,
    verify_trace,
)

from .strategies import graded_objects


@pytest.mark.parametrize("name,order", [("a", 4), ("b", 4), ("c", 4), ("ab", 3), ("a2b", 2), ("unit", 1)])
def test_mod_witt_orders(name, order):
    assert order_mod_witt(preset(name)) == order


@pytest.mark.parametrize("name,order", [("ab", 6), ("a2b", 4)])
def test_raw_orders(name, order):
    assert order_raw(preset(name)) == order


def test_traces_replay():
    for name in ["a", "ab", "a2b"]:
        res = order_details(preset(name))
        assert res.trace is not None
        assert verify_trace(res.trace)


def test_twisted_values():
    ab = preset("ab")
    # Q((1,1)) = q(a) + q(b) + s(a, b) = 1/4 + 1/4 + 1/2
    assert str(ab.q((1, 1))) == "0"
    ba = preset("ba")
    assert str(ba.q((1, 1))) == "1/2"


def test_s_opposite_inverts():
    for name in ["a", "b", "c", "ab"]:
        X = preset(name)
        assert is_trivial_mod_witt(twisted_product(X, s_opposite(X))) is not None


@given(graded_objects())
def test_unit_is_neutral(X):
    assume(is_s_invertible(X)[0])
    ctx = X.context
    assert classes_equal_mod_witt(twisted_product(X, unit(ctx)), X)


@given(graded_objects(), graded_objects())
def test_product_order_is_additive(X, Y):
    Z = twisted_product(X, Y)
    assert Z.order == X.order * Y.order
    assert Z.f(Z.G.zero) == Z.context.A.zero


@given(graded_objects())
def test_power_matches_repeated_product(X):
    assert find_graded_isometry(power(X, 2), twisted_product(X, X)) is not None


def test_s4_closure():
    gs = group_structure([preset("a"), preset("b")], names=["a", "b"])
    assert gs.order == 24
    assert gs.label == "S4"
    assert gs.histogram == {1: 1, 2: 9, 3: 8, 4: 6}
    assert not gs.abelian
    assert gs.center_order == 1


def test_reduce_idempotent():
    for name in ["a2b", "ab", "C"]:
        R = reduce_mod_witt(preset(name))
        assert reduce_mod_witt(R).order == R.order
