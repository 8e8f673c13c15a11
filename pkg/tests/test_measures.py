import math

import numpy as np
import pytest

from orthopoly import measures as M
from orthopoly import recurrence as R
from orthopoly.discrete import charlier, family_measure as charlier_measure
from orthopoly.families import (family_measure, hermite, jacobi,
                                jacobi_monic_c, legendre)


def legendre_half():
    return family_measure(legendre(), normalized=True)


def test_inner_product_legendre_unit_mass():
    assert M.inner_product(lambda x: 1.0, lambda x: 1.0,
                           legendre_half()) == pytest.approx(1.0)


def test_inner_product_odd_integrand_vanishes():
    val = M.inner_product(lambda x: 1.0, lambda x: x, legendre_half())
    assert abs(val) < 1e-13


def test_inner_product_hermite_second_moment():
    m = family_measure(hermite(), normalized=True)
    assert M.inner_product(lambda x: x, lambda x: x, m) == pytest.approx(0.5)


def test_self_adjointness():
    m = family_measure(jacobi(0.5, 1.5))
    f = lambda x: 1 + x - x ** 2
    g = lambda x: 0.5 - 2 * x ** 3
    lhs = M.inner_product(lambda x: x * f(x), g, m)
    rhs = M.inner_product(f, lambda x: x * g(x), m)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_moments_hermite_gamma():
    m = family_measure(hermite())
    ms = M.moments(m, 8)
    for n in range(5):
        assert ms.mu[2 * n] == pytest.approx(math.gamma(n + 0.5), rel=1e-11)
    assert np.all(np.abs(ms.mu[1::2]) < 1e-12)


def test_moments_legendre():
    ms = M.moments(family_measure(legendre()), 4)
    assert ms.mu[2] == pytest.approx(2.0 / 3.0)
    assert ms.mu[4] == pytest.approx(2.0 / 5.0)


def test_moment_sequence_rejects_nonpositive_mu0():
    with pytest.raises(ValueError):
        M.MomentSequence(mu=np.array([0.0, 1.0]))


def test_hankel_minors_legendre():
    ms = M.MomentSequence(mu=np.array([1.0, 0.0, 1.0 / 3.0]))
    rep = M.hankel_minors(ms, 1)
    assert rep.minors[0] == 1.0
    assert rep.minors[1] == pytest.approx(1.0 / 3.0)
    assert rep.all_positive


def test_hankel_needs_enough_moments():
    ms = M.MomentSequence(mu=np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        M.hankel_minors(ms, 1)


def test_hankel_lognormal_family_positive():
    # mu_n = e^{n(n+2)/4}
    mu = np.array([math.exp(n * (n + 2) / 4.0) for n in range(5)])
    rep = M.hankel_minors(M.MomentSequence(mu=mu), 2)
    assert rep.all_positive


def test_stieltjes_procedure_legendre():
    sys, norms = M.recurrence_from_measure(family_measure(legendre()), 6)
    for n in range(7):
        assert abs(sys.coeffs(n)[1]) < 1e-13
    assert sys.coeffs(1)[2] == pytest.approx(1.0 / 3.0, rel=1e-10)
    assert sys.coeffs(2)[2] == pytest.approx(4.0 / 15.0, rel=1e-10)
    # cross-check against the closed monic Jacobi chain
    for n in range(1, 7):
        assert sys.coeffs(n)[2] == pytest.approx(
            jacobi_monic_c(n, 0.0, 0.0), rel=1e-9)
    assert R.validate_favard(sys, 5).passed


def test_stieltjes_procedure_hermite_even():
    sys, _ = M.recurrence_from_measure(family_measure(hermite()), 5)
    for n in range(6):
        assert abs(sys.coeffs(n)[1]) < 1e-12


def test_stieltjes_procedure_charlier_norms():
    m = charlier_measure(charlier(1.0), normalized=True)
    sys, norms = M.recurrence_from_measure(m, 5)
    for n in range(6):
        assert norms.h[n] == pytest.approx(math.factorial(n), rel=1e-9)


def test_gram_schmidt_projector_property():
    m = family_measure(jacobi(0.5, 1.5))
    sys, norms = M.recurrence_from_measure(m, 5)
    for n in range(1, 6):
        for j in range(n):
            val = M.inner_product(lambda x, n=n: R.eval_poly(sys, n, x),
                                  lambda x, j=j: x ** j, m)
            assert abs(val) <= 1e-9 * math.sqrt(norms.h[n])


def test_discrete_measure_validation():
    with pytest.raises(ValueError):
        M.discrete_measure([0.0, 1.0], [1.0])
    with pytest.raises(ValueError):
        M.discrete_measure([0.0, 1.0], [1.0, -1.0])


def test_discrete_finite_integrate():
    m = M.discrete_measure([0.0, 1.0, 2.0], [0.5, 1.0, 0.25])
    assert M.integrate(m, lambda x: x) == pytest.approx(1.5)


def test_infinite_sum_truncates_by_tail_bound():
    # geometric weights 2^{-k}
    m = M.discrete_infinite_measure(float, lambda k: 2.0 ** -k,
                                    lambda k: 2.0 ** -k)
    assert M.integrate(m, lambda x: 1.0) == pytest.approx(2.0)


def test_continuous_support_validation():
    with pytest.raises(ValueError):
        M.continuous_measure(lambda x: 1.0, (1.0, 1.0))
