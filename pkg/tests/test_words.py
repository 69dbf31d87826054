from fractions import Fraction

import pytest

from bifree import (
    Letter,
    ScalarWordSum,
    canonical_word,
    chi_of,
    eps_of,
    shifted_product_expansion,
    subword,
    word_text,
)

XL = Letter("x", "a", "l")
YR = Letter("y", "b", "r")
ZL = Letter("z", "b", "l")


def test_letter_validation():
    with pytest.raises(ValueError):
        Letter("q", "a", "left")


def test_projections():
    w = (XL, YR)
    assert chi_of(w) == "lr"
    assert eps_of(w) == ("a", "b")
    assert chi_of(()) == ""
    assert eps_of(()) == ()
    assert word_text(w) == "x y"
    assert word_text(()) == "1"


def test_subword():
    w = (XL, YR, ZL)
    assert subword(w, set()) == ()
    assert subword(w, {1, 2, 3}) == w
    assert subword(w, {3, 1}) == (XL, ZL)
    with pytest.raises(IndexError):
        subword(w, {4})


def test_canonical_word_commutation():
    # opposite sides, different pairs: commute; x < y so x moves left
    assert canonical_word((YR, XL)) == (XL, YR)
    assert canonical_word((XL, YR)) == (XL, YR)
    # same side letters never swap
    assert canonical_word((ZL, XL)) == (ZL, XL)
    # same pair letters never swap
    assert canonical_word((YR, ZL)) == (YR, ZL)
    # canonical form is a class invariant
    assert canonical_word((YR, XL, ZL)) == canonical_word((XL, YR, ZL))


def test_scalar_word_sum():
    s = ScalarWordSum()
    s.add((XL,), Fraction(1, 2)).add((XL,), Fraction(1, 2))
    assert s.terms == {(XL,): Fraction(1)}
    s.add((XL,), -1)
    assert s.terms == {}
    t = ScalarWordSum.word((YR,), 3) + ScalarWordSum.word((YR,), -1)
    assert t.terms == {(YR,): Fraction(2)}
    assert t.scaled(0).terms == {}


def test_shifted_product_expansion():
    w = (XL, YR)
    shifts = {1: Fraction(2), 2: Fraction(3)}
    s = shifted_product_expansion(w, shifts)
    # (x - 2)(y - 3) = xy - 3x - 2y + 6
    assert s.terms == {
        (XL, YR): Fraction(1),
        (XL,): Fraction(-3),
        (YR,): Fraction(-2),
        (): Fraction(6),
    }
    # zero shift prunes the subsets dropping that letter
    s0 = shifted_product_expansion(w, {2: Fraction(3)})
    assert s0.terms == {(XL, YR): Fraction(1), (XL,): Fraction(-3)}
