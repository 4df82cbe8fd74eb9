from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from qfrob.matrixops import (
    ScalarSeries,
    mat,
    mat_add,
    mat_identity,
    mat_is_zero,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_trace,
    mat_zeros,
    matrix_min_val,
    mseries_inverse,
    mseries_mul,
    mseries_pullback,
    sseries_add,
    sseries_mul,
)
from qfrob.valuation import INF, PrimeContext

F = Fraction
CTX = PrimeContext(3)


def test_identity_and_zero():
    i2 = mat_identity(2)
    z = mat_zeros(2, 2)
    a = mat([[F(1), F(2)], [F(3), F(4)]])
    assert mat_mul(i2, a) == a
    assert mat_mul(a, i2) == a
    assert mat_add(a, z) == a
    assert mat_is_zero(mat_sub(a, a))


def test_mul_matches_hand_product():
    a = mat([[F(1), F(2)], [F(0), F(1)]])
    b = mat([[F(1), F(0)], [F(5), F(1)]])
    assert mat_mul(a, b) == mat([[F(11), F(2)], [F(5), F(1)]])
    assert mat_trace(mat_mul(a, b)) == F(12)


def test_scale_and_min_val():
    a = mat([[F(9), F(0)], [F(1, 3), F(27)]])
    assert matrix_min_val(CTX, a) == F(-1)
    assert matrix_min_val(CTX, mat_scale(F(3), a)) == F(0)
    assert matrix_min_val(CTX, mat_zeros(2, 2)) is INF


fracmat = st.lists(
    st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=12), min_size=2, max_size=2),
    min_size=2,
    max_size=2,
).map(mat)


@given(fracmat, fracmat, fracmat)
def test_mul_is_associative_and_distributes(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
    assert mat_mul(a, mat_add(b, c)) == mat_add(mat_mul(a, b), mat_mul(a, c))


def _series(coeffs):
    return [mat([[x]]) for x in coeffs]


def test_mseries_mul_is_cauchy_product():
    a = _series([F(1), F(2), F(3)])
    b = _series([F(1), F(1)])
    out = mseries_mul(a, b, 3)
    assert [m[0][0] for m in out] == [F(1), F(3), F(5), F(3)]


def test_mseries_inverse():
    a = _series([F(1), F(4), F(-2), F(7)])
    inv = mseries_inverse(a, 3)
    prod = mseries_mul(a, inv, 3)
    assert prod[0] == mat([[F(1)]])
    assert all(mat_is_zero(m) for m in prod[1:])


def test_mseries_pullback_substitutes_minus_qp_over_p():
    # f(q) = q  ->  f(-q^p / p) = -q^p / p
    a = _series([F(0), F(1)])
    out = mseries_pullback(a, CTX, 4)
    assert [m[0][0] for m in out] == [F(0), F(0), F(0), F(-1, 3), F(0)]
    # constant terms pass through
    b = _series([F(5)])
    assert [m[0][0] for m in mseries_pullback(b, CTX, 2)] == [F(5), F(0), F(0)]


def test_mseries_pullback_composes_powers():
    # f(q) = q^2 -> (q^p/p)^2 with sign (-1)^2
    a = _series([F(0), F(0), F(1)])
    out = mseries_pullback(a, CTX, 6)
    assert out[6][0][0] == F(1, 9)
    assert all(mat_is_zero(out[m]) for m in range(6) if m != 6)


def test_scalar_series_helpers():
    s = ScalarSeries((F(1), F(2)), complete=True)
    assert s.order == 1
    assert s.coeff(0) == F(1)
    assert s.coeff(5) == F(0)
    assert sseries_mul([F(1), F(1)], [F(1), F(1)], 2) == [F(1), F(2), F(1)]
    assert sseries_add([F(1)], [F(0), F(3)], 1) == [F(1), F(3)]
