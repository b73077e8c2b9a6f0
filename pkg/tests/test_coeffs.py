import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import gamma as scipy_gamma

from mcjacobi.coeffs import (
    _dim_dm_gamma,
    c0_tilde,
    dim_dm,
    expected_norm,
    gamma_k_partition,
    gamma_omega_log,
    gen_binom,
    gen_pochhammer,
    jack_at_ones,
    jack_norm_torus,
    spherical_taylor_residual,
)
from mcjacobi.errors import GammaPoleError, ParameterError
from mcjacobi.params import ParamSet
from mcjacobi.partitions import contains, enumerate_partitions, weight
from mcjacobi.sympoly import jack_mono, schur

P22 = ParamSet(r=2, d=2, alpha=3, nu=0.5)
PR1 = ParamSet(r=1, d=2)


def test_paramset_derived():
    p = ParamSet(r=3, d=Fraction(5, 2))
    assert p.n == 3 + Fraction(5, 4) * 3 * 2
    assert p.n == p.r + (p.d / 2) * p.r * (p.r - 1)
    assert p.n_over_r * p.r == p.n
    assert p.delta == (2, 1, 0)
    assert p.rho == (-Fraction(5, 4), Fraction(0), Fraction(5, 4))
    with pytest.raises(ValueError):
        ParamSet(r=0, d=1)
    with pytest.raises(ValueError):
        ParamSet(r=1, d=0)


def test_gen_pochhammer_examples():
    assert gen_pochhammer(3, (2,), ParamSet(r=1, d=1)) == 12
    assert gen_pochhammer(3, (1, 1), P22) == 6
    assert gen_pochhammer(5, (), P22) == 1
    # exactness
    v = gen_pochhammer(Fraction(7, 3), (2, 1), ParamSet(r=2, d=Fraction(1, 2)))
    assert isinstance(v, Fraction)


def test_pochhammer_gamma_consistency():
    rng = np.random.Generator(np.random.Philox(key=7))
    p = ParamSet(r=3, d=Fraction(5, 2))
    for _ in range(20):
        s = [complex(rng.uniform(1.5, 6), rng.uniform(-2, 2)) for _ in range(3)]
        for m in [(2, 1, 0), (3, 3, 1), (1, 0, 0)]:
            lhs = cmath.exp(
                gamma_omega_log([s[j] + m[j] for j in range(3)], p)
                - gamma_omega_log(s, p)
            )
            rhs = gen_pochhammer(s, m, p)
            assert abs(lhs - rhs) <= 1e-11 * abs(rhs)


def test_gamma_omega_examples():
    assert gamma_omega_log(5, ParamSet(r=1, d=1)) == pytest.approx(math.log(24), abs=1e-13)
    assert gamma_omega_log([2, 2], P22) == pytest.approx(math.log(2 * math.pi), abs=1e-13)
    s = [2.2 + 0.9j, 3.1 - 0.4j]
    a = gamma_omega_log([x.conjugate() for x in s], P22)
    b = gamma_omega_log(s, P22).conjugate()
    assert abs(a - b) < 1e-13
    with pytest.raises(GammaPoleError):
        gamma_omega_log([1, 1], P22)  # second argument hits 1 - 1 = 0


def test_dim_dm():
    assert dim_dm((5,), ParamSet(r=1, d=1)) == 1
    assert dim_dm((1, 0), P22) == 4
    assert dim_dm((), P22) == 1
    # d = 2 dimension is the squared Schur value at ones
    for m in enumerate_partitions(4, 3):
        p = ParamSet(r=3, d=2)
        assert dim_dm(m, p) == schur(m, 3).eval_at_ones() ** 2
    # floating Gamma-product cross-check at non-classical d
    p = ParamSet(r=3, d=Fraction(5, 2))
    for m in enumerate_partitions(4, 3):
        assert float(dim_dm(m, p)) == pytest.approx(_dim_dm_gamma(m, p), rel=1e-12)


def test_c0_tilde_examples():
    assert c0_tilde(ParamSet(r=1, d=7)).value() == 1.0
    assert c0_tilde(P22).value() == pytest.approx(math.pi, rel=1e-15)
    expect = math.sqrt(2 * math.pi) * math.gamma(1.5) / math.gamma(2)
    assert c0_tilde(ParamSet(r=2, d=1)).value() == pytest.approx(expect, rel=1e-13)
    c = c0_tilde(P22)
    assert c.exact and c.factor == Fraction(1, 2) and c.two_pi_power == 1


def test_gen_binom_examples():
    assert gen_binom((3,), (2,), PR1) == 3
    assert gen_binom((3,), (3,), PR1) == 1
    assert gen_binom((1, 0), (0, 0), P22) == 1
    assert gen_binom((1, 0), (1, 0), P22) == 1


@pytest.mark.parametrize("r,d", [(1, Fraction(2)), (2, Fraction(5, 2)), (3, Fraction(1, 2))])
def test_binom_row_sums_and_vanishing(r, d):
    p = ParamSet(r=r, d=d)
    for m in enumerate_partitions(5 if r < 3 else 4, r):
        total = Fraction(0)
        for k in enumerate_partitions(weight(m), r):
            b = gen_binom(m, k, p)
            if not contains(m, k):
                assert b == 0
            total += b
        assert total == 2 ** weight(m)


def test_gamma_k_partition():
    assert gamma_k_partition((), (3, 1), P22) == 1
    assert gamma_k_partition((1,), (1,), PR1) == 1
    # rank one: gamma_k(x) is the falling factorial x (x-1) ... (x-k+1)
    for x in range(6):
        for k in range(6):
            expect = Fraction(1)
            for t in range(k):
                expect *= x - t
            assert gamma_k_partition((k,), (x,), PR1) == expect
    # positivity across multiplicities
    for d in (Fraction(1, 2), Fraction(5, 2)):
        p = ParamSet(r=2, d=d)
        for x in enumerate_partitions(4, 2):
            for k in enumerate_partitions(4, 2):
                assert gamma_k_partition(k, x, p) >= 0


def test_jack_at_ones_closed_form():
    for r in (1, 2, 3):
        for d in (Fraction(1, 2), 1, 2, 3, Fraction(5, 2)):
            p = ParamSet(r=r, d=d)
            for m in enumerate_partitions(5, r):
                assert jack_at_ones(m, p) == jack_mono(m, d, r).eval_at_ones()


def test_jack_norm_examples():
    assert jack_norm_torus((4,), ParamSet(r=1, d=1)) == 1.0
    assert jack_norm_torus((0, 0), P22) == pytest.approx(1.0, rel=1e-14)


def test_jack_norm_quadrature_cross_check():
    # (1/(2 pi)^2)(1/2!) int |P_(1,0)|^2 |e^{i a}-e^{i b}|^2 da db on a periodic grid
    n = 256
    th = 2 * math.pi * (np.arange(n) + 0.5) / n
    a, b = np.meshgrid(th, th, indexing="ij")
    za, zb = np.exp(1j * a), np.exp(1j * b)
    vals = np.abs(za + zb) ** 2 * np.abs(za - zb) ** 2  # |P_(1,0)|^2 |Delta|^2
    integral = vals.mean()  # already divided by (2 pi)^2 via the mean
    assert integral / 2 == pytest.approx(jack_norm_torus((1, 0), P22), abs=1e-10)


def test_expected_norm_examples():
    p = ParamSet(r=1, d=2, alpha=1, nu=0)
    for m in range(5):
        assert expected_norm((m,), p) == pytest.approx(1.0, rel=1e-13)
    p2 = ParamSet(r=1, d=2, alpha=2, nu=0)
    assert expected_norm((0,), p2) == pytest.approx(4 / math.pi, rel=1e-13)
    # rank-one closed form with nu
    alpha, nu = 3.5, 0.7
    p3 = ParamSet(r=1, d=2, alpha=alpha, nu=nu)
    for m in range(6):
        gam = (
            math.gamma(alpha + m)
            / math.factorial(m)
            / abs(scipy_gamma((alpha + 1) / 2 + 1j * nu)) ** 2
        )
        assert expected_norm((m,), p3) == pytest.approx(gam, rel=1e-12)
    with pytest.raises(ParameterError):
        expected_norm((0, 0), ParamSet(r=2, d=2, alpha=0.5, nu=0))


@pytest.mark.parametrize("alpha", [2.5, None])
def test_spherical_taylor_residual(alpha):
    rng = np.random.Generator(np.random.Philox(key=11))
    worst = 0.0
    for r, d in [(1, Fraction(2)), (2, Fraction(5, 2))]:
        p = ParamSet(r=r, d=d)
        for k in enumerate_partitions(2, r):
            w_pt = [complex(rng.uniform(-0.12, 0.12), rng.uniform(-0.05, 0.05)) for _ in range(r)]
            worst = max(worst, spherical_taylor_residual(k, p, w_pt, 14, alpha=alpha))
    assert worst <= 1e-8
