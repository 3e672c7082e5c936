"""Witt classes over R and C and the fundamental-ideal filtration."""

from fractions import Fraction as F
from random import Random

import pytest

from symgeo.linalg import Matrix, SymmetricForm, sym_signature
from symgeo.witt import (WittComplex, WittReal, ideal_power_member_real,
                         witt_of_form_complex, witt_of_form_real,
                         witt_of_signature)


def _diag(entries):
    size = len(entries)
    return Matrix.exact([[F(entries[r]) if r == c else F(0)
                          for c in range(size)] for r in range(size)])


def test_real_anchors():
    assert int(witt_of_form_real(_diag([1, 1, -1]))) == 1
    assert int(witt_of_form_real(_diag([1, -1]))) == 0      # hyperbolic plane
    assert int(witt_of_form_real(_diag([1, 1, 0]))) == 2    # radical drops out
    assert int(witt_of_form_real(_diag([-3]))) == -1        # scale is irrelevant


def test_real_additivity():
    rng = Random(0)
    for _ in range(40):
        d1 = [rng.choice([-2, -1, 1, 2]) for _ in range(rng.randint(1, 4))]
        d2 = [rng.choice([-2, -1, 1, 2]) for _ in range(rng.randint(1, 4))]
        total = witt_of_form_real(_diag(d1 + d2))
        assert int(total) == int(witt_of_form_real(_diag(d1))) + \
            int(witt_of_form_real(_diag(d2)))


def test_real_group_ops():
    a, b = WittReal(3), WittReal(-1)
    assert int(a + b) == 2
    assert int(a - b) == 4
    assert int(-a) == -3


def test_complex_parity():
    assert witt_of_form_complex(_diag([1, -1, 2])).parity == 1
    assert witt_of_form_complex(_diag([1, 1])).parity == 0
    # only the anisotropic dimension mod 2 survives
    assert witt_of_form_complex(_diag([5, 0, 0])).parity == 1


def test_ideal_filtration_is_powers_of_two():
    for value in range(-8, 9):
        w = WittReal(value)
        for k in range(5):
            assert ideal_power_member_real(w, k) == (value % (2 ** k) == 0)


def test_ideal_rejects_negative_power():
    with pytest.raises(ValueError):
        ideal_power_member_real(WittReal(2), -1)


def test_of_signature_consistent():
    rng = Random(1)
    for _ in range(25):
        d = [rng.choice([-1, 1, 0]) for _ in range(rng.randint(1, 5))]
        w = witt_of_form_real(_diag(d))
        sig = sym_signature(SymmetricForm(len(d), _diag(d)))
        assert int(w) == int(witt_of_signature(sig))
