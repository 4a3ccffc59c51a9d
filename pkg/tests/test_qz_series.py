from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from spectral_paths.qz_series import (
    BivariateSeries,
    NotInvertible,
    QSeries,
    TruncationMismatch,
    WindowExceeded,
    ZLaurent,
    chi,
    q_binomial,
    q_pochhammer,
    series_invert,
)

from . import oracles

D = 6


def q(coeffs, order=D):
    return QSeries(coeffs, order)


series = st.dictionaries(
    st.integers(0, D), st.integers(-5, 5), max_size=5
).map(lambda c: QSeries(c, D))
laurents = st.dictionaries(st.integers(-4, 4), st.integers(-4, 4), max_size=4).map(ZLaurent)


def test_pochhammer_values():
    assert q_pochhammer(0, 10) == q({0: 1}, 10)
    assert q_pochhammer(2, 10) == q({0: 1, 1: -1, 2: -1, 3: 1}, 10)
    assert q_pochhammer(1, 0) == q({0: 1}, 0)


@pytest.mark.parametrize("n", range(8))
def test_pochhammer_matches_oracle(n):
    assert q_pochhammer(n) == QSeries(oracles.as_dict(oracles.poch(n)))


def test_binomial_values():
    assert q_binomial(2, 1, 10) == q({0: 1, 1: 1}, 10)
    assert q_binomial(5, 0, 10) == q({0: 1}, 10)
    assert q_binomial(3, -1, 10).is_zero()
    assert q_binomial(3, 4).is_zero()


def test_binomial_half_integer_is_zero_unless_strict():
    assert q_binomial(4, Fraction(3, 2)).is_zero()
    with pytest.raises(ValueError):
        q_binomial(4, Fraction(3, 2), strict=True)
    assert q_binomial(4, Fraction(4, 2)) == q_binomial(4, 2)


@pytest.mark.parametrize("N", range(9))
def test_binomial_oracle_symmetry_and_q_equals_one(N):
    for n in range(N + 1):
        b = q_binomial(N, n)
        assert b == QSeries(oracles.as_dict(oracles.gauss(N, n)))
        assert b == q_binomial(N, N - n)
        assert b.at_one() == comb(N, n)


def test_invert_examples():
    assert series_invert(q({0: 1}, 3)) == q({0: 1}, 3)
    assert series_invert(q({0: 1, 1: -1}, 3)) == q({0: 1, 1: 1, 2: 1, 3: 1}, 3)
    assert series_invert(q({0: 1, 1: -1, 2: -1, 3: 1}, 2)) == q({0: 1, 1: 1, 2: 2}, 2)


def test_invert_rejects_non_units():
    with pytest.raises(NotInvertible):
        series_invert(q({0: 2, 1: 1}))
    with pytest.raises(NotInvertible):
        series_invert(q({1: 1}))
    with pytest.raises(NotInvertible):
        series_invert(QSeries({0: 1, 1: 1}))


@given(series)
def test_invert_is_inverse(s):
    c0 = s.coeff(0)
    s = s - c0 + 1 if c0 not in (1, -1) else s
    assert s * series_invert(s) == q({0: 1})


def test_invert_matches_oracle():
    poly = oracles.poch(4)
    want = oracles.series_inverse(poly, 9)
    assert series_invert(QSeries(oracles.as_dict(poly), 9)) == QSeries(oracles.as_dict(want), 9)


@settings(max_examples=60)
@given(series, series, series)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == q({})


@settings(max_examples=60)
@given(laurents, laurents, laurents)
def test_laurent_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b).invert_z() == a.invert_z() * b.invert_z()


def test_truncation_is_applied_and_mixing_orders_fails():
    x = q({0: 1, 1: 1})
    assert (x ** 10).degree() == D
    with pytest.raises(TruncationMismatch):
        x + QSeries({0: 1}, D + 1)
    assert QSeries({0: 1, 9: 4}, 3) == QSeries({0: 1}, 3)
    with pytest.raises(TruncationMismatch):
        x.truncate(D + 2)


def test_canonical_form_has_no_zero_coefficients():
    s = QSeries({0: 0, 2: 3, 5: 0})
    assert s.items() == [(2, 3)]
    assert (s - s).items() == []
    assert ZLaurent({3: 0}).is_zero()


def test_big_coefficients_do_not_wrap():
    big = QSeries({0: 2 ** 70})
    assert (big * big).coeff(0) == 2 ** 140


@pytest.mark.parametrize("b", range(7))
def test_chi(b):
    x = chi(b)
    assert x.at_one() == b + 1
    assert x == x.invert_z()
    assert dict(x.items()) == oracles.chi(b)


def test_chi_examples():
    assert chi(0) == ZLaurent({0: 1})
    assert chi(1) == ZLaurent({1: 1, -1: 1})
    assert chi(2) == ZLaurent({2: 1, 0: 1, -2: 1})


def test_bivariate_text_and_json_are_deterministic():
    s = BivariateSeries.from_terms([(1, 1, 1), (3, 2, 2), (3, 0, 1)], order=4, delta=Fraction(3, 20))
    assert s.to_text() == "z^3*(1 + 2q^2) + z^1*(q)"
    d = s.to_dict()
    assert d["delta_prefactor"] == [3, 20]
    assert d["terms"] == [{"z": 3, "q": 0, "c": 1}, {"z": 3, "q": 2, "c": 2}, {"z": 1, "q": 1, "c": 1}]
    assert BivariateSeries.from_dict(d) == s
    assert s.to_json() == BivariateSeries.from_dict(d).to_json()


def test_bivariate_prefactor_rules():
    a = BivariateSeries.from_parts(chi(1), q({0: 1}), Fraction(1, 4))
    b = BivariateSeries.from_parts(chi(1), q({1: 1}), Fraction(0))
    with pytest.raises(ValueError):
        a + b
    assert (a * b).delta == Fraction(1, 4)
    assert (a * chi(1)).coeff(0) == q({0: 2})


def test_z_window_is_checked_not_clipped():
    s = BivariateSeries.from_parts(chi(3), q({0: 1}))
    assert s.check_z_window(-3, 3) is s
    with pytest.raises(WindowExceeded):
        s.check_z_window(-1, 1)


def test_mixed_products():
    s = chi(1) * q({1: 1})
    assert isinstance(s, BivariateSeries)
    assert s.terms() == [(1, 1, 1), (-1, 1, 1)]
    assert s.at_z_one() == q({1: 2})
    assert s.invert_z() == s
    assert s.shift_q(2).terms() == [(1, 3, 1), (-1, 3, 1)]


def test_format():
    assert str(QSeries({0: 1, 2: 2, 3: -1})) == "1 + 2q^2 - q^3"
    assert str(ZLaurent({3: 1, 1: 2, -1: 2, -3: 1})) == "z^3 + 2z + 2z^-1 + z^-3"
