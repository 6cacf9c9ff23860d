import random

import pytest

from tmfkit import qseries
from tmfkit.exactalg import ExactnessError, PrecisionError
from tmfkit.qseries import QExpansion


def brute_sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def test_sigma_examples():
    assert qseries.sigma(3, 1) == 1
    assert qseries.sigma(3, 2) == 1 + 8
    assert qseries.sigma(5, 2) == 1 + 32


def test_sigma_against_enumeration():
    rng = random.Random(2)
    for _ in range(50):
        k = rng.randint(1, 6)
        n = rng.randint(1, 400)
        assert qseries.sigma(k, n) == brute_sigma(k, n)


def test_sigma_rejects_bad_arguments():
    with pytest.raises(ValueError):
        qseries.sigma(3, 0)
    with pytest.raises(ValueError):
        qseries.sigma(0, 5)


def test_eisenstein_values():
    e4 = qseries.eisenstein(4, 4)
    assert e4.coeffs == [1, 240 * 1, 240 * 9, 240 * 28]
    e6 = qseries.eisenstein(6, 3)
    assert e6.coeffs == [1, -504, -504 * 33]


def test_eisenstein_divisibility_by_24():
    for weight in (4, 6):
        f = qseries.eisenstein(weight, 200)
        assert all(f.coeff(n) % 24 == 0 for n in range(1, 200))


def test_eisenstein_rejects_other_weights():
    with pytest.raises(ValueError):
        qseries.eisenstein(8, 5)


def test_discriminant_prefix():
    d = qseries.discriminant_qexp(4)
    assert d.val == 1 and d.coeffs == [1, -24, 252]
    assert d.coeff(1) == 1  # normalized cusp form


def test_discriminant_dual_route():
    a = qseries.discriminant_qexp(50)
    b = qseries.discriminant_eta_product(50)
    assert a == b


def test_exact_scalar_division_guard():
    f = QExpansion(0, [3, 6], 4)
    assert f.exact_scalar_div(3).coeffs == [1, 2]
    with pytest.raises(ExactnessError):
        f.exact_scalar_div(2)


def test_j_invariant():
    j = qseries.j_qexp(4)
    assert j.val == -1
    assert j.coeff(-1) == 1
    assert j.coeff(0) == 744
    assert j.coeff(1) == 196884
    assert j.coeff(2) == 21493760
    assert j.coeff(3) == 864299970
    assert (j - 744).coeff(0) == 0


def test_j_times_delta_is_c4_cubed():
    N = 30
    j = qseries.j_qexp(N)
    delta = qseries.discriminant_qexp(N + 1)
    c4 = qseries.eisenstein(4, N)
    assert (j * delta).agrees_with(c4 ** 3, N)


def test_c_relation_is_exactly_zero():
    N = 40
    c4 = qseries.eisenstein(4, N)
    c6 = qseries.eisenstein(6, N)
    delta = qseries.discriminant_qexp(N)
    assert (c4 ** 3 - c6 ** 2 - delta * 1728).is_zero()


def test_qexpansion_precision_tracking():
    f = QExpansion(1, [1, -24], 8)   # valuation 1
    g = QExpansion(0, [1, 7], 5)
    assert (f * g).prec == 6         # min(8 + 0, 5 + 1)
    assert (f + g).prec == 5
    with pytest.raises(PrecisionError):
        (f * g).coeff(6)


def test_qexpansion_laurent_division():
    N = 20
    c4 = qseries.eisenstein(4, N)
    q = (c4 ** 3).exact_div(qseries.discriminant_qexp(N))
    assert q.val == -1 and q.coeff(0) == 744


def test_qexpansion_division_exactness_guard():
    num = QExpansion(0, [1], 6)
    den = QExpansion(0, [2, 1], 6)
    with pytest.raises(ExactnessError):
        num.exact_div(den)


def test_qexpansion_theta():
    j = qseries.j_qexp(4)
    t = j.theta()
    assert t.coeff(-1) == -1 and t.coeff(0) == 0 and t.coeff(1) == 196884


def test_qexpansion_serialization_round_trip():
    f = qseries.j_qexp(6)
    assert QExpansion.from_dict(f.to_dict()) == f
