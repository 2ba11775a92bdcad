from fractions import Fraction

import pytest

from flowalg.errors import InputError
from flowalg.series import QSeries, psi_series

F = Fraction


def test_psi_alpha_zero():
    s = psi_series(0, 1, 4)
    assert s.terms == ((F(0), 1), (F(1), 2), (F(4), 2))


def test_psi_half():
    s = psi_series(F(1, 2), 1, 3)
    assert s.terms == ((F(1, 4), 2), (F(9, 4), 2))


def test_psi_integer_alpha_shifts_away():
    for w in (1, 2, 5):
        assert psi_series(3, w, 20) == psi_series(0, w, 20)
        assert psi_series(-2, w, 20) == psi_series(0, w, 20)


def test_psi_rejects_bad_weight():
    with pytest.raises(InputError):
        psi_series(0, 0, 4)


def test_qseries_arithmetic():
    a = QSeries.from_dict({F(0): 1, F(2): 3}, 10)
    b = QSeries.from_dict({F(1): 2}, 10)
    assert (a + b).terms == ((F(0), 1), (F(1), 2), (F(2), 3))
    prod = a * b
    assert prod.terms == ((F(1), 2), (F(3), 6))
    assert (a * QSeries.one(10)) == a


def test_qseries_truncation_is_exact():
    a = QSeries.from_dict({F(0): 1, F(9): 1}, 10)
    b = QSeries.from_dict({F(0): 1, F(9): 1}, 10)
    prod = a * b
    # the 18 term falls outside the bound; everything else is exact
    assert prod.coefficient(0) == 1
    assert prod.coefficient(9) == 2
    assert prod.coefficient(18) == 0
    assert all(e <= 10 for e, _ in prod.terms)


def test_qseries_drops_zero_coefficients():
    s = QSeries.from_dict({F(1): 5, F(2): 0}, 9)
    assert s.terms == ((F(1), 5),)


def test_qseries_rejects_negative_exponent():
    with pytest.raises(InputError):
        QSeries.from_dict({F(-1): 1}, 4)


def test_first_difference():
    a = QSeries.from_dict({F(0): 1, F(2): 4, F(3): 1}, 10)
    b = QSeries.from_dict({F(0): 1, F(2): 4, F(3): 2}, 10)
    assert a.first_difference(b) == 3
    assert a.first_difference(a) is None
