import numpy as np
import pytest
from hypothesis import given, strategies as st

from tycat.abelian import parse_group
from tycat.cohomology import (
    bar_differential,
    cohomology_bar,
    cohomology_cyclic,
    cohomology_torus,
    cup_square,
    is_cocycle,
    parse_module,
    random_cocycle,
    torus_bar,
)
from tycat.errors import NotACocycle, ParseError, PairingNotInvariant
from tycat.forms import Bicharacter
from tycat.qz import QZ

CASES = [
    ("Z2", "Z2"),
    ("Z2", "Z4:neg"),
    ("Z2", "Z2+Z2:swap"),
    ("Z3", "Z3"),
    ("Z2", "Z3:neg"),
    ("Z4", "Z4:neg"),
    ("Z4", "Z2+Z2:swap"),
    ("Z4", "Z2+Z2:smatrix"),
]


@pytest.mark.parametrize("g,m", CASES)
def test_periodic_agrees_with_bar(g, m):
    G = parse_group(g)
    mod = parse_module(m, G)
    for d in range(0, 4):
        per = cohomology_cyclic(G.order, mod, d)
        bar = cohomology_bar(mod, d, representatives=False)
        assert per.group.factors == bar.group.factors, (d, per.literal(), bar.literal())


@pytest.mark.parametrize("g,m", CASES)
def test_periodicity(g, m):
    G = parse_group(g)
    mod = parse_module(m, G)
    for d in range(1, 4):
        assert cohomology_cyclic(G.order, mod, d).group == cohomology_cyclic(G.order, mod, d + 2).group


def test_trivial_coefficients_known_values():
    G = parse_group("Z4")
    mod = parse_module("Z2", G)
    assert [cohomology_cyclic(4, mod, d).literal() for d in range(4)] == ["Z2", "Z2", "Z2", "Z2"]
    mod = parse_module("Z4:neg", G)
    assert cohomology_cyclic(4, mod, 0).literal() == "Z2"


@pytest.mark.parametrize("g", ["Z2", "Z3", "Z4", "Z2+Z2"])
def test_differential_squares_to_zero(g):
    G = parse_group(g)
    mod = parse_module("Z2+Z2:swap" if G.rank == 1 and G.order % 2 == 0 else "Z2", G)
    for d in range(0, 3):
        d0 = bar_differential(mod, d)
        d1 = bar_differential(mod, d + 1)
        n = mod.M.exponent
        assert not np.any((d1 @ d0) % n)


def test_torus_coefficients():
    G = parse_group("Z4")
    assert [cohomology_torus(G, d).literal() for d in range(1, 7)] == ["Z4", "0", "Z4", "0", "Z4", "0"]
    assert torus_bar(G, 3).literal() == "Z4"
    assert cohomology_torus(parse_group("Z2+Z2"), 2).literal() == "Z2"
    with pytest.raises(ValueError):
        cohomology_torus(G, 0)


def test_torus_routes_agree():
    for g in ["Z2", "Z3", "Z4"]:
        G = parse_group(g)
        for d in range(1, 5):
            assert cohomology_torus(G, d, "periodic").group == torus_bar(G, d).group


def test_invalid_modules():
    G = parse_group("Z3")
    with pytest.raises(ParseError):
        parse_module("Z2+Z2:swap", G)
    with pytest.raises(ParseError):
        parse_module("Z2:nonsense", G)


@given(st.integers(0, 2**31 - 1))
def test_random_cocycles_are_cocycles(seed):
    G = parse_group("Z2")
    mod = parse_module("Z2+Z2:swap", G)
    alpha = random_cocycle(mod, 3, np.random.default_rng(seed))
    assert is_cocycle(mod, 3, alpha)


def test_cup_square_zero_class():
    G = parse_group("Z2")
    mod = parse_module("Z2", G)
    alpha = np.zeros(((G.order - 1) ** 3, 1), dtype=np.int64)
    res = cup_square(mod, alpha, evaluation_pairing_z2())
    assert res.vanishes
    assert res.class_order == 1


def evaluation_pairing_z2():
    M = parse_group("Z2")
    return Bicharacter.on(M, ((QZ(1, 2),),))


def test_cup_square_witness_checks():
    G = parse_group("Z2")
    mod = parse_module("Z2+Z2:swap", G)
    pairing = Bicharacter.on(mod.M, ((QZ(0), QZ(1, 2)), (QZ(1, 2), QZ(0))))
    for seed in range(4):
        alpha = random_cocycle(mod, 3, np.random.default_rng(seed))
        res = cup_square(mod, alpha, pairing)
        assert res.class_order in (1, 2)
        assert res.vanishes == (res.class_order == 1)
        if res.vanishes:
            assert res.witness is not None


def test_cup_square_rejects_bad_input():
    G = parse_group("Z2")
    mod = parse_module("Z4:neg", parse_group("Z4"))
    alpha = np.zeros((27, 1), dtype=np.int64)
    alpha[5] = 1
    with pytest.raises(NotACocycle):
        cup_square(mod, alpha, Bicharacter.on(mod.M, ((QZ(1, 4),),)))
    sw = parse_module("Z2+Z2:swap", G)
    bad = Bicharacter.on(sw.M, ((QZ(1, 2), QZ(0)), (QZ(0), QZ(0))))
    with pytest.raises(PairingNotInvariant):
        cup_square(sw, np.zeros((1, 2), dtype=np.int64), bad)


def test_cup_square_z4_random_cocycle():
    G = parse_group("Z4")
    mod = parse_module("Z2+Z2:smatrix", G)
    pairing = Bicharacter.on(mod.M, ((QZ(0), QZ(1, 2)), (QZ(1, 2), QZ(0))))
    alpha = random_cocycle(mod, 3, np.random.default_rng(7))
    res = cup_square(mod, alpha, pairing)
    assert 4 % res.class_order == 0
    assert res.values.shape == (3**6,)
