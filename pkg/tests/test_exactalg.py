import random

import pytest

from tmfkit.exactalg import (
    ZZ,
    QQ,
    DomainMismatchError,
    ExactnessError,
    PolynomialRing,
    PrecisionError,
    PrimeField,
    TruncSeries,
    series_inverse,
    series_mul,
    series_reversion,
)


def rand_poly(rng, ring, nterms=4, maxexp=3, maxc=9):
    terms = {}
    for _ in range(nterms):
        exp = tuple(rng.randint(0, maxexp) for _ in range(ring.nvars))
        terms[exp] = rng.randint(-maxc, maxc)
    return ring.from_terms(terms)


def test_mpoly_ring_axioms():
    rng = random.Random(11)
    for ring in (PolynomialRing(("x", "y")), PolynomialRing(("x", "y", "z"), PrimeField(5))):
        for _ in range(25):
            a, b, c = (rand_poly(rng, ring) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a + b == b + a
            assert a - a == ring.zero


def test_mpoly_reduction_commutes_with_operations():
    rng = random.Random(5)
    ring = PolynomialRing(("u", "v"))
    for p in (2, 3, 5):
        for _ in range(20):
            a, b = rand_poly(rng, ring), rand_poly(rng, ring)
            assert (a + b).reduce_mod(p) == a.reduce_mod(p) + b.reduce_mod(p)
            assert (a * b).reduce_mod(p) == a.reduce_mod(p) * b.reduce_mod(p)
            assert (-a).reduce_mod(p) == -(a.reduce_mod(p))


def test_mpoly_no_zero_terms_and_exponent_length():
    ring = PolynomialRing(("x",))
    p = ring.from_terms({(1,): 2, (0,): 0})
    assert (0,) not in p.terms
    with pytest.raises(ValueError):
        ring.from_terms({(1, 2): 1})


def test_mpoly_domain_mismatch():
    a = PolynomialRing(("x",)).gen("x")
    b = PolynomialRing(("y",)).gen("y")
    with pytest.raises(DomainMismatchError):
        a + b


def test_mpoly_substitute_and_str():
    ring = PolynomialRing(("a1", "a3"))
    a1, a3 = ring.gens()
    p = a1 ** 3 * a3 ** 3 - 27 * a3 ** 4
    assert str(p) == "a1^3*a3^3 - 27*a3^4"
    assert p.substitute_scalars({"a1": 2, "a3": 1}) == 8 - 27


def test_series_mul_examples():
    one_plus = TruncSeries(ZZ, [1, 1], 20)
    one_minus = TruncSeries(ZZ, [1, -1], 20)
    prod = series_mul(one_plus, one_minus)
    assert prod.coeffs == [1, 0, -1]

    f = TruncSeries(ZZ, [3, 1, 4, 1, 5], 12)
    assert series_mul(f, TruncSeries.one(ZZ, 12)).same_to(f)

    geometric = TruncSeries(ZZ, [1] * 20, 20)
    assert series_mul(geometric, one_minus).same_to(TruncSeries.one(ZZ, 20))


def test_series_mul_precision_law():
    f = TruncSeries(ZZ, [0, 0, 1, 1], 5)   # valuation 2, precision 5
    g = TruncSeries(ZZ, [1, 1], 7)         # valuation 0, precision 7
    assert series_mul(f, g).prec == 5      # min(5 + 0, 7 + 2)
    assert (f + g).prec == 5


def test_series_inverse():
    geom = series_inverse(TruncSeries(ZZ, [1, -1], 10))
    assert geom.coeffs == [1] * 10
    assert series_inverse(TruncSeries.one(ZZ, 6)).same_to(TruncSeries.one(ZZ, 6))
    with pytest.raises(ExactnessError):
        series_inverse(TruncSeries(ZZ, [2, 1], 5))
    with pytest.raises(ExactnessError):
        series_inverse(TruncSeries(ZZ, [0, 1], 5))


def test_series_inverse_round_trip_on_eisenstein():
    from tmfkit import qseries

    c4 = qseries.eisenstein(4, 30)
    f = TruncSeries(ZZ, c4.coeffs, 30)
    assert series_mul(series_inverse(f), f).same_to(TruncSeries.one(ZZ, 30))


def test_series_reversion_examples():
    z = TruncSeries.identity(ZZ, 8)
    assert series_reversion(z).same_to(z)

    f = TruncSeries(ZZ, [0, 1, 1], 8)  # z + z^2
    rev = series_reversion(f)
    assert rev.coeffs == [0, 1, -1, 2, -5, 14, -42, 132]
    assert f.compose(rev).same_to(z)
    assert rev.compose(f).same_to(z)


def test_series_reversion_random_round_trip():
    rng = random.Random(17)
    z = TruncSeries.identity(ZZ, 15)
    for _ in range(10):
        coeffs = [0, rng.choice([1, -1])] + [rng.randint(-6, 6) for _ in range(13)]
        f = TruncSeries(ZZ, coeffs, 15)
        g = series_reversion(f)
        assert f.compose(g).same_to(z)
        assert g.compose(f).same_to(z)


def test_series_reversion_preconditions():
    with pytest.raises(ValueError):
        series_reversion(TruncSeries(ZZ, [1, 1], 5))
    with pytest.raises(ValueError):
        series_reversion(TruncSeries(ZZ, [0, 2], 5))


def test_series_coeff_beyond_precision_raises():
    f = TruncSeries(ZZ, [1, 2], 4)
    assert f.coeff(3) == 0
    with pytest.raises(PrecisionError):
        f.coeff(4)


def test_series_ring_axioms_random():
    rng = random.Random(23)
    ring = PolynomialRing(("t",))
    for _ in range(15):
        fs = []
        for _ in range(3):
            coeffs = [rand_poly(rng, ring, nterms=2, maxexp=2, maxc=4) for _ in range(6)]
            fs.append(TruncSeries(ring, coeffs, 6))
        a, b, c = fs
        assert series_mul(series_mul(a, b), c).same_to(series_mul(a, series_mul(b, c)))
        assert series_mul(a + b, c).same_to(series_mul(a, c) + series_mul(b, c))


def test_series_over_prime_field():
    gf = PrimeField(3)
    f = TruncSeries(gf, [1, 2, 2], 6)
    g = series_inverse(f)
    assert series_mul(f, g).same_to(TruncSeries.one(gf, 6))


def test_series_domain_mismatch():
    with pytest.raises(DomainMismatchError):
        series_mul(TruncSeries.one(ZZ, 4), TruncSeries.one(QQ, 4))


def test_exact_division_checks():
    with pytest.raises(ExactnessError):
        ZZ.exact_div(7, 2)
    assert ZZ.exact_div(-12, 4) == -3
    ring = PolynomialRing(("x",))
    x = ring.gen("x")
    assert ring.exact_div(6 * x, ring.const(3)) == 2 * x
    with pytest.raises(ExactnessError):
        ring.exact_div(x, ring.const(2))
