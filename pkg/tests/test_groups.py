import pytest

from tycat.groups import identify, reference_fingerprints


def test_reference_labels_cover_small_orders():
    labels = {l for ls in reference_fingerprints().values() for l in ls}
    for name in ["S3", "S4", "A4", "D4", "Q8", "Z2xZ2"]:
        assert name in labels


def test_identify_s4():
    assert identify(24, {1: 1, 2: 9, 3: 8, 4: 6}, False, 1, 12) == "S4"


def test_identify_abelian():
    assert identify(4, {1: 1, 2: 3}, True, 4, 1) == "Z2xZ2"
    assert identify(6, {1: 1, 2: 1, 3: 2, 6: 2}, True, 6, 1) == "Z6"
