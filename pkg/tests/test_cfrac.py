"""Continued fractions with polynomial partial quotients: convergents,
tails, the equivalence transform, and numeric evaluation."""

import math

import pytest

from qcfrac.cfrac import (
    CFrac,
    Convergents,
    NumericCF,
    approximant,
    equivalence_unit_denominators,
    modified_approximant,
    numeric_cf,
    numeric_value,
    render_cfrac,
    tail,
    worpitzky_index,
)
from qcfrac.errors import HorizonExceeded, NonUnitDenominator, NumericBlowup
from qcfrac.families import ParamPoint, rr_sum
from qcfrac.catalog import lookup
from qcfrac.rationals import rational
from qcfrac.series import QSeries, geometric_inverse

A = rational(2, 3)
POINT = ParamPoint(A, rational(1, 2), rational(1, 3))


def rr_cf(order, a=A):
    return lookup("RR_CF").make_cf(ParamPoint(a, 1, 1), order, 8)


def test_element_indexing():
    cf = rr_cf(10)
    with pytest.raises(IndexError):
        cf.element(0)
    an, bn = cf.element(4)
    assert an == QSeries.monomial(A, 3, 10)


def test_determinant_formula():
    """A_n B_(n-1) - A_(n-1) B_n = (-1)^(n-1) a_1 a_2 ... a_n."""
    cf = rr_cf(60)
    walk = Convergents(cf)
    prod = QSeries.one(60)
    for n in range(1, 21):
        walk.advance()
        prod = prod * cf.element(n)[0]
        det = walk.num * walk.den_prev - walk.num_prev * walk.den
        expect = prod if n % 2 == 1 else prod.scale(-1)
        assert det.first_mismatch(expect) is None


def test_depth_two_approximant_is_reciprocal():
    # 1/(1 + aq) exactly
    cf = rr_cf(16)
    got = approximant(cf, 2)
    assert got.first_mismatch(geometric_inverse(-A, 1, 16)) is None


def test_contact_grows_triangularly():
    """The depth-n approximant of the Rogers-Ramanujan fraction agrees with
    the series ratio exactly through q^(n(n+1)/2 - 1)."""
    cf = rr_cf(60)
    ratio = rr_sum(A, 1, 60) * rr_sum(A, 0, 60).inverse()
    for n in range(1, 9):
        fm = approximant(cf, n).first_mismatch(ratio)
        assert fm == n * (n + 1) // 2


def test_modified_approximant_with_true_tail_is_exact():
    """S_n(w_n) with the exact tail value w_n = a q^n R(n+1)/R(n) equals the
    full ratio at every depth, not just in the limit."""
    order = 40
    cf = rr_cf(order)
    ratio = rr_sum(A, 1, order) * rr_sum(A, 0, order).inverse()
    for n in range(1, 7):
        wn = (QSeries.monomial(A, n, order)
              * rr_sum(A, n + 1, order)
              * rr_sum(A, n, order).inverse())
        assert modified_approximant(cf, n, wn).first_mismatch(ratio) is None


def test_plain_approximant_is_not_exact():
    cf = rr_cf(40)
    ratio = rr_sum(A, 1, 40) * rr_sum(A, 0, 40).inverse()
    assert approximant(cf, 4).first_mismatch(ratio) is not None


def test_tail_reindexes_elements():
    cf = rr_cf(12)
    t = tail(cf, 3)
    assert t.element(1) == cf.element(4)
    assert t.b0 == QSeries.zero(12)


def test_tail_composition():
    """S_(m+k)(0) = S_m(depth-k approximant of the m-th tail)."""
    cf = rr_cf(50)
    for m, k in ((1, 3), (2, 2), (3, 4)):
        inner = approximant(tail(cf, m), k)
        assert (approximant(cf, m + k).first_mismatch(
            modified_approximant(cf, m, inner))) is None


def test_equivalence_preserves_approximants():
    cf = lookup("G_CFRAC_g2").make_cf(POINT, 40, 8)
    eq = equivalence_unit_denominators(cf)
    for n in range(1, 16):
        assert approximant(cf, n).first_mismatch(approximant(eq, n)) is None
        assert eq.element(n)[1] == QSeries.one(40)


def test_equivalence_element_formula():
    # the third element picks up 1/((1+bq)(1+bq^2))
    b, lam = POINT.b, POINT.lam
    eq = equivalence_unit_denominators(lookup("G_CFRAC_g2").make_cf(POINT, 30, 8))
    expect = (QSeries.monomial(lam, 2, 30)
              * geometric_inverse(-b, 1, 30)
              * geometric_inverse(-b, 2, 30))
    assert eq.element(3)[0].first_mismatch(expect) is None


def test_equivalence_needs_unit_denominators():
    bad = CFrac(QSeries.zero(10),
                lambda n: (QSeries.one(10), QSeries.monomial(1, 1, 10)))
    with pytest.raises(NonUnitDenominator):
        equivalence_unit_denominators(bad).element(1)


def test_approximant_non_unit_denominator():
    # b1 = -a1 = -1 makes B_2 = 1 - 1 = 0
    bad = CFrac(QSeries.zero(10),
                lambda n: (QSeries.constant(-1, 10), QSeries.one(10)))
    with pytest.raises(NonUnitDenominator):
        approximant(bad, 2)


def test_worpitzky_index_of_rr_tail():
    cf = rr_cf(40, a=1)
    t = tail(cf, 1)
    assert worpitzky_index(numeric_cf(t, rational(1, 2))) == 2
    assert worpitzky_index(numeric_cf(t, rational(9, 10))) == 14


def test_worpitzky_horizon():
    flat = NumericCF(0.0, lambda n: (1.0, 1.0))
    with pytest.raises(HorizonExceeded):
        worpitzky_index(flat)


def test_golden_ratio():
    phi = NumericCF(1.0, lambda n: (1.0, 1.0))
    assert math.isclose(numeric_value(phi, 50), (1 + 5 ** 0.5) / 2, rel_tol=1e-12)


def test_numeric_matches_exact_convergents():
    cf = rr_cf(60)
    q0 = rational(1, 3)
    ncf = numeric_cf(cf, q0)
    walk = Convergents(cf)
    for n in range(1, 9):
        walk.advance()
        exact = walk.num.evaluate(q0) / walk.den.evaluate(q0)
        assert abs(numeric_value(ncf, n) - float(exact)) < 1e-12


def test_numeric_blowup():
    zero_den = NumericCF(0.0, lambda n: (1.0, 0.0))
    with pytest.raises(NumericBlowup):
        numeric_value(zero_den, 1)


def test_render_cfrac():
    text = render_cfrac(rr_cf(10), count=2)
    assert text.startswith("1/(1 +)")
    assert text.endswith("...")
