"""Truncated power series arithmetic over exact rationals."""

import pytest
from hypothesis import given, strategies as st

from qcfrac.errors import NonUnitSeries
from qcfrac.rationals import rational
from qcfrac.series import QMonomial, QSeries, geometric_inverse

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
).map(lambda f: rational(f.numerator, f.denominator))


def series(order=12):
    return st.lists(rationals, min_size=1, max_size=order + 1).map(
        lambda cs: QSeries(order, cs)
    )


def test_constructors_and_indexing():
    s = QSeries.from_monomials([(1, 0), (-2, 3)], 6)
    assert s[0] == 1
    assert s[3] == -2
    assert s[1] == s[6] == 0
    assert s.order == 6
    with pytest.raises(IndexError):
        s[7]


def test_monomial_rejects_negative_power():
    with pytest.raises(ValueError):
        QMonomial(1, -1)


def test_mul_truncates_at_order():
    # (1 + q)^2 at order 1 keeps only 1 + 2q
    s = QSeries.from_monomials([(1, 0), (1, 1)], 1)
    assert (s * s).coeffs == (rational(1), rational(2))


def test_known_inverse():
    """1/(2 - q) = sum_k q^k / 2^(k+1)."""
    s = QSeries.from_monomials([(2, 0), (-1, 1)], 8)
    inv = s.inverse()
    for k in range(9):
        assert inv[k] == rational(1, 2 ** (k + 1))


def test_geometric_inverse_is_geometric_series():
    g = geometric_inverse(rational(1, 3), 2, 12)
    for k in range(13):
        assert g[k] == (rational(1, 3 ** (k // 2)) if k % 2 == 0 else 0)


def test_geometric_inverse_requires_positive_power():
    with pytest.raises(ValueError):
        geometric_inverse(1, 0, 10)


def test_inverse_needs_nonzero_constant():
    with pytest.raises(NonUnitSeries):
        QSeries.monomial(1, 1, 5).inverse()


def test_shift_down():
    s = QSeries.from_monomials([(3, 2), (5, 4)], 6)
    t = s.shift_down(2)
    assert t.order == 4
    assert t[0] == 3 and t[2] == 5


def test_shift_down_below_valuation():
    s = QSeries.from_monomials([(1, 1)], 5)
    with pytest.raises(ValueError):
        s.shift_down(2)


def test_first_mismatch_and_agreement():
    a = QSeries.from_monomials([(1, 0), (1, 5)], 10)
    b = QSeries.from_monomials([(1, 0), (2, 5)], 10)
    assert a.first_mismatch(b) == 5
    assert a.agrees_to(b, 4)
    assert not a.agrees_to(b, 5)
    assert a.first_mismatch(a) is None


def test_evaluate_exact():
    s = QSeries.from_monomials([(1, 0), (-1, 2)], 4)
    assert s.evaluate(rational(1, 2)) == rational(3, 4)


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert (a + b).coeffs == (b + a).coeffs
    assert (a * b).coeffs == (b * a).coeffs
    assert ((a + b) + c).coeffs == (a + (b + c)).coeffs
    assert (a * (b + c)).coeffs == (a * b + a * c).coeffs


@given(series())
def test_sub_is_add_negation(a):
    z = a - a
    assert all(c == 0 for c in z.coeffs)


@given(series())
def test_inverse_round_trips(a):
    """inv(inv(s)) = s whenever the constant term is nonzero."""
    if a[0] == 0:
        with pytest.raises(NonUnitSeries):
            a.inverse()
        return
    assert a.inverse().inverse().first_mismatch(a) is None
    prod = a * a.inverse()
    assert prod[0] == 1
    assert all(prod[k] == 0 for k in range(1, prod.order + 1))


@given(series(), st.integers(min_value=0, max_value=12))
def test_truncate_is_prefix(a, n):
    t = a.truncate(min(n, a.order))
    assert t.coeffs == a.coeffs[: t.order + 1]


def test_valuation():
    assert QSeries.zero(5).valuation() is None
    assert QSeries.from_monomials([(2, 3)], 5).valuation() == 3
    assert QSeries.one(5).valuation() == 0


def test_render_uses_caret_powers():
    s = QSeries.from_monomials([(1, 0), (-1, 1), (rational(1, 2), 3)], 4)
    text = s.render()
    assert "q^3" in text and "1/2" in text
