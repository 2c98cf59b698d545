"""Continued fractions with truncated power-series elements.

A continued fraction here is  b0 + K_{n>=1}(a_n / b_n)  with every part an
exact :class:`~qcfrac.series.QSeries`.  Approximants come from the classical
three-term recurrence for the convergent numerators and denominators; a
modified approximant replaces the terminating 0 with a supplied tail value,
which is how tail identities are checked exactly.

The numeric side evaluates the polynomial elements at an exact rational q0
and only then drops to floating point, iterating backward; the Worpitzky
index reports from which element onward the partial numerators sit inside
the classical |a_n| <= 1/4 convergence region.
"""

from __future__ import annotations

from typing import Callable, Tuple, Optional

from .errors import HorizonExceeded, NonUnitDenominator, NumericBlowup
from .rationals import rational
from .series import QSeries, series_inv

ElementFn = Callable[[int], Tuple[QSeries, QSeries]]


class CFrac:
    """b0 + a1/(b1 + a2/(b2 + ...)) with memoized series elements.

    ``elements`` maps n >= 1 to the pair (a_n, b_n); results are cached per
    instance.  The working truncation order is taken from ``b0``.
    ``depth_hint`` records a depth at which the fraction is usually compared
    against its target (entries override it per identity).
    """

    def __init__(self, b0: QSeries, elements: ElementFn, depth_hint: int = 8):
        self.b0 = b0
        self.order = b0.order
        self.depth_hint = depth_hint
        self._fn = elements
        self._memo = {}

    def element(self, n: int) -> Tuple[QSeries, QSeries]:
        if n < 1:
            raise IndexError("partial quotients are indexed from 1")
        if n not in self._memo:
            self._memo[n] = self._fn(n)
        return self._memo[n]


class Convergents:
    """Incremental walk of the convergents A_n / B_n.

    Seeded with A_{-1} = 1, B_{-1} = 0, A_0 = b0, B_0 = 1 and advanced by
    A_n = b_n A_{n-1} + a_n A_{n-2} (same for B), so after n calls to
    :meth:`advance` the state holds the depth-n convergent.
    """

    def __init__(self, cf: CFrac):
        self.cf = cf
        self.n = 0
        self.num_prev = QSeries.one(cf.order)
        self.den_prev = QSeries.zero(cf.order)
        self.num = cf.b0
        self.den = QSeries.one(cf.order)

    def advance(self) -> None:
        self.n += 1
        an, bn = self.cf.element(self.n)
        self.num_prev, self.num = self.num, bn * self.num + an * self.num_prev
        self.den_prev, self.den = self.den, bn * self.den + an * self.den_prev

    def approximant(self) -> QSeries:
        if not self.den.is_unit():
            raise NonUnitDenominator(f"B_{self.n} has zero constant term")
        return self.num * series_inv(self.den)

    def modified(self, w: QSeries) -> QSeries:
        """S_n(w) = (A_n + A_{n-1} w) / (B_n + B_{n-1} w)."""
        den = self.den + self.den_prev * w
        if not den.is_unit():
            raise NonUnitDenominator(f"modified B_{self.n} has zero constant term")
        return (self.num + self.num_prev * w) * series_inv(den)


def approximant(cf: CFrac, n: int, order: Optional[int] = None) -> QSeries:
    """The depth-n approximant A_n / B_n (depth 0 is just b0).

    ``order`` truncates the result, for comparing against series of a
    different working precision.
    """
    walk = Convergents(cf)
    for _ in range(n):
        walk.advance()
    out = walk.approximant()
    return out if order is None else out.truncate(min(order, out.order))


def modified_approximant(
    cf: CFrac, n: int, w: QSeries, order: Optional[int] = None
) -> QSeries:
    """Depth-n approximant with tail value w in place of the terminating 0."""
    walk = Convergents(cf)
    for _ in range(n):
        walk.advance()
    out = walk.modified(w)
    return out if order is None else out.truncate(min(order, out.order))


def tail(cf: CFrac, m: int) -> CFrac:
    """The m-th tail K_{n>m}(a_n / b_n) as its own fraction (leading term 0).

    Its value is exactly what :func:`modified_approximant` at depth m expects
    as w.
    """
    if m < 0:
        raise ValueError("tail index must be nonnegative")
    return CFrac(QSeries.zero(cf.order), lambda n: cf.element(n + m), cf.depth_hint)


def equivalence_unit_denominators(cf: CFrac, depth: Optional[int] = None) -> CFrac:
    """The equivalent fraction with every partial denominator scaled to 1.

    Uses the scaling r_n = 1/b_n (r_0 = 1, so b0 is untouched), which sends
    a_n to a_n / (b_{n-1} b_n) and leaves every approximant unchanged.
    Raises NonUnitDenominator when some b_n is not invertible.
    """
    one = QSeries.one(cf.order)

    def scaled(n: int) -> Tuple[QSeries, QSeries]:
        an, bn = cf.element(n)
        if not bn.is_unit():
            raise NonUnitDenominator(f"b_{n} has zero constant term")
        new_a = an * series_inv(bn)
        if n > 1:
            prev = cf.element(n - 1)[1]
            if not prev.is_unit():
                raise NonUnitDenominator(f"b_{n - 1} has zero constant term")
            new_a = new_a * series_inv(prev)
        return new_a, one

    return CFrac(cf.b0, scaled, cf.depth_hint if depth is None else depth)


# ---------------------------------------------------------------------------
# Numeric evaluation


class NumericCF:
    """A continued fraction whose parts are plain floats."""

    def __init__(self, b0: float, elements: Callable[[int], Tuple[float, float]]):
        self.b0 = b0
        self._fn = elements
        self._memo = {}

    def element(self, n: int) -> Tuple[float, float]:
        if n < 1:
            raise IndexError("partial quotients are indexed from 1")
        if n not in self._memo:
            self._memo[n] = self._fn(n)
        return self._memo[n]


def numeric_cf(cf: CFrac, q0) -> NumericCF:
    """Evaluate every element of cf at the exact rational q0, then float.

    Horner evaluation happens on the exact coefficients; only the final value
    is rounded.  Elements are faithful as long as their polynomial degree
    stays within cf's truncation order.
    """
    x = rational(q0)

    def elem(n: int) -> Tuple[float, float]:
        an, bn = cf.element(n)
        return float(an.evaluate(x)), float(bn.evaluate(x))

    return NumericCF(float(cf.b0.evaluate(x)), elem)


def numeric_value(ncf: NumericCF, depth: int) -> float:
    """Backward evaluation b0 + a_1/(b_1 + ... a_depth/b_depth).

    Raises NumericBlowup on a (near-)vanishing intermediate denominator.
    """
    t = 0.0
    for k in range(depth, 0, -1):
        a, b = ncf.element(k)
        d = b + t
        if abs(d) < 1e-280:
            raise NumericBlowup(f"vanishing denominator at element {k}")
        t = a / d
    return ncf.b0 + t


def worpitzky_index(ncf: NumericCF, bound: float = 0.25, horizon: int = 100) -> int:
    """Smallest N with |a_n| <= bound for every observed n >= N.

    Scans the partial numerators up to the horizon.  If even the last one
    violates the bound there is no certified convergence window within reach
    and HorizonExceeded is raised.
    """
    if horizon < 1:
        raise ValueError("horizon must be positive")
    last_violation = 0
    for n in range(1, horizon + 1):
        if abs(ncf.element(n)[0]) > bound:
            last_violation = n
    if last_violation >= horizon:
        raise HorizonExceeded(
            f"partial numerators still exceed {bound} at n = {horizon}"
        )
    return last_violation + 1


# ---------------------------------------------------------------------------
# Rendering


def _poly_str(s: QSeries) -> str:
    parts = []
    for i, c in enumerate(s.coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*q")
        else:
            parts.append(f"{c}*q^{i}")
    return " + ".join(parts) if parts else "0"


def render_cfrac(cf: CFrac, count: int = 3) -> str:
    """Flat display "b0 + a1/(b1 +) a2/(b2 +) ..." of the first few elements.

    A zero leading term is omitted, so a pure fraction reads "a1/(b1 +) ...".
    """
    parts = []
    if any(c != 0 for c in cf.b0.coeffs):
        parts.append(_poly_str(cf.b0) + " +")
    for n in range(1, count + 1):
        an, bn = cf.element(n)
        num = _poly_str(an)
        if " " in num:
            num = f"({num})"
        parts.append(f"{num}/({_poly_str(bn)} +)")
    return " ".join(parts) + " ..."
