from fractions import Fraction

import pytest

from confalg.liedata import LieSuperData, abelian, sl2


def test_sl2_validates():
    assert sl2().validate().passed()


def test_abelian_validates():
    assert abelian(["a"]).validate().passed()
    assert abelian(["a", "b", "c"]).validate().passed()


def test_mutated_sl2_fails_with_jacobi_witness():
    one = Fraction(1)
    g = LieSuperData(
        basis=[("e", 0), ("h", 0), ("f", 0)],
        bracket={
            ("e", "f"): {"h": one, "e": one},  # [e,f] = h + e
            ("f", "e"): {"h": -one, "e": -one},
            ("h", "e"): {"e": 2 * one},
            ("e", "h"): {"e": -2 * one},
            ("h", "f"): {"f": -2 * one},
            ("f", "h"): {"f": 2 * one},
        },
    )
    report = g.validate()
    assert not report.passed()
    assert any("jacobi" in v.location for v in report.violations)
    witnesses = {v.location for v in report.violations}
    assert any("(e,f,h)" in w or "(f,e,h)" in w or "(e,h,f)" in w for w in witnesses)


def test_skew_violation_detected():
    one = Fraction(1)
    g = LieSuperData(
        basis=[("a", 0), ("b", 0)],
        bracket={("a", "b"): {"a": one}},  # [b,a] missing
    )
    report = g.validate()
    assert any("skew" in v.location for v in report.violations)


def test_unknown_names_rejected():
    with pytest.raises(ValueError):
        LieSuperData(basis=[("a", 0)], bracket={("a", "z"): {"a": Fraction(1)}})
    with pytest.raises(ValueError):
        LieSuperData(basis=[("a", 0)], bracket={("a", "a"): {"z": Fraction(1)}})


def test_parity_homogeneity_checked():
    one = Fraction(1)
    g = LieSuperData(
        basis=[("x", 1), ("b", 0)],
        bracket={("x", "x"): {"x": one}},  # odd bracket must land even
    )
    report = g.validate()
    assert any("parity" in v.location for v in report.violations)
