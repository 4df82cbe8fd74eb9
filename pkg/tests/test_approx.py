from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfrob.approx import ApproxPadic, consistent
from qfrob.valuation import INDETERMINATE, INF, PrimeContext, val_p

CTX = PrimeContext(3)


def test_exact_values_have_infinite_error():
    x = ApproxPadic.exact(CTX, Fraction(5, 2))
    assert x.is_exact()
    assert x.err is INF
    assert x.certified_val() == 0


def test_certified_val_needs_margin():
    # val(approx) < err certifies; otherwise the true value may vanish
    a = ApproxPadic.of(CTX, Fraction(1, 3), Fraction(4))
    assert a.certified_val() == -1
    b = ApproxPadic.of(CTX, Fraction(81), Fraction(4))
    assert b.certified_val() is INDETERMINATE
    z = ApproxPadic.of(CTX, Fraction(0), Fraction(4))
    assert z.certified_val() is INDETERMINATE


def test_product_error_tracking():
    # worked example: (1/3 +- err 4) * (3 +- err 5) carries err 4
    a = ApproxPadic.of(CTX, Fraction(1, 3), Fraction(4))
    b = ApproxPadic.of(CTX, Fraction(3), Fraction(5))
    c = a * b
    assert c.approx == 1 or val_p(CTX, c.approx - 1) >= c.err
    assert c.err == Fraction(4)
    assert c.certified_val() == 0


def test_sum_error_is_min():
    a = ApproxPadic.of(CTX, Fraction(1), Fraction(4))
    b = ApproxPadic.of(CTX, Fraction(1), Fraction(7))
    assert (a + b).err == Fraction(4)
    assert (a + ApproxPadic.exact(CTX, Fraction(2))).err == Fraction(4)


def test_bool_is_exact_zero_only():
    assert not ApproxPadic.exact(CTX, 0)
    assert ApproxPadic.of(CTX, Fraction(0), Fraction(10))  # may hide a tiny true value
    assert ApproxPadic.exact(CTX, Fraction(1, 9))


def test_division_by_certified_unit():
    a = ApproxPadic.of(CTX, Fraction(2), Fraction(6))
    b = ApproxPadic.of(CTX, Fraction(5), Fraction(6))
    q = a / b
    assert val_p(CTX, q.approx - Fraction(2, 5)) >= q.err
    assert q.err > 0


def test_division_by_uncertified_raises():
    from qfrob.errors import PrecisionError

    z = ApproxPadic.of(CTX, Fraction(81), Fraction(2))
    with pytest.raises(PrecisionError):
        ApproxPadic.exact(CTX, 1) / z
    with pytest.raises(ZeroDivisionError):
        ApproxPadic.exact(CTX, 1) / ApproxPadic.exact(CTX, 0)


def test_mixed_arithmetic_with_fractions():
    a = ApproxPadic.of(CTX, Fraction(1, 3), Fraction(4))
    assert (Fraction(1) + a).approx == Fraction(4, 3)
    assert (Fraction(2) * a).err == Fraction(4)
    assert (a - Fraction(1, 3)).approx == 0
    # scaling by p shifts the error window
    assert (Fraction(3) * a).err == Fraction(5)
    assert (a / Fraction(3)).err == Fraction(3)


def test_power():
    a = ApproxPadic.of(CTX, Fraction(2), Fraction(5))
    assert (a**3).approx == 8 or val_p(CTX, (a**3).approx - 8) >= (a**3).err
    assert (a**0).approx == 1


small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=40)
errs = st.integers(min_value=1, max_value=8)
noise = st.integers(min_value=-5, max_value=5)


@given(small_fracs, small_fracs, errs, errs, noise, noise)
def test_soundness_under_ring_ops(x, y, ex, ey, nx, ny):
    """If val(true - approx) >= err holds for the inputs it holds for results."""
    ax = ApproxPadic.of(CTX, x + nx * Fraction(3) ** ex, Fraction(ex))
    ay = ApproxPadic.of(CTX, y + ny * Fraction(3) ** ey, Fraction(ey))
    for true, approx in (
        (x + y, ax + ay),
        (x - y, ax - ay),
        (x * y, ax * ay),
    ):
        assert val_p(CTX, true - approx.approx) >= approx.err


@given(small_fracs, errs, noise)
def test_consistency_with_self(x, e, n):
    a = ApproxPadic.of(CTX, x, Fraction(e))
    b = ApproxPadic.of(CTX, x + n * Fraction(3) ** e, Fraction(e))
    assert consistent(a, b)
