"""Scalar combinatorial constants for the circular-Jacobi families.

Everything with Gamma-ratio structure at integer shifts is reduced
symbolically to rising factorials and evaluated in exact rational
arithmetic; floating Gamma functions only enter where a value is genuinely
transcendental (cone gamma function, torus norms).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from scipy.special import loggamma

from .errors import GammaPoleError, ParameterError
from .params import ParamSet
from .partitions import contains, enumerate_partitions, pad, weight
from .sympoly import affine_substitute, jack_at_ones_exact, spherical_poly

TWO_PI = 2.0 * math.pi


def rising(x, k: int):
    """Rising factorial x (x+1) ... (x+k-1); exact for exact x."""
    out = x * 0 + 1 if not isinstance(x, (int, Fraction)) else Fraction(1)
    for t in range(k):
        out = out * (x + t)
    return out


def _broadcast(s, r: int) -> list:
    if isinstance(s, (list, tuple)):
        if len(s) != r:
            raise ParameterError(f"argument vector has length {len(s)}, expected {r}")
        return list(s)
    return [s] * r


def gen_pochhammer(s, m: Sequence[int], params: ParamSet):
    """Generalized shifted factorial (s)_m = prod_j (s_j - (d/2)(j-1))_{m_j}.

    Scalar s broadcasts to (s, ..., s).  Exact when every input is rational.
    """
    mm = pad(m, params.r)
    sv = _broadcast(s, params.r)
    exact = all(isinstance(x, (int, Fraction)) for x in sv)
    out = Fraction(1) if exact else 1.0 + 0j
    for j in range(params.r):
        shift = params.d / 2 * j
        base = sv[j] - (shift if exact else float(shift))
        out = out * rising(base, mm[j])
    return out


def gamma_omega_log(s, params: ParamSet) -> complex:
    """Principal log of the cone gamma function.

    Gamma_Omega(s) = (2 pi)^{(n-r)/2} prod_j Gamma(s_j - (d/2)(j-1)); the
    squared modulus |Gamma_Omega(x+iy)|^2 is exp(2 Re log Gamma_Omega).
    """
    sv = _broadcast(s, params.r)
    total = float((params.n - params.r) / 2) * math.log(TWO_PI) + 0j
    for j in range(params.r):
        a = complex(sv[j]) - float(params.d) / 2 * j
        if a.imag == 0.0 and a.real <= 0.0 and a.real == round(a.real):
            raise GammaPoleError(f"gamma pole at argument {a.real} (axis {j + 1})")
        total += loggamma(a)
    return total


def dim_dm(m: Sequence[int], params: ParamSet) -> Fraction:
    """Dimension d_m of the degree-m component, as an exact rational.

    Gamma-product form reduced to rising factorials:
        d_m = prod_{p<q} (k + (d/2)(q-p)) / ((d/2)(q-p))
              * ((d/2)(q-p+1))_k / ((d/2)(q-p-1) + 1)_k,   k = m_p - m_q.
    Well defined for every partition (including repeated parts) and every
    rational d > 0.
    """
    mm = pad(m, params.r)
    d2 = params.d / 2
    out = Fraction(1)
    for p in range(params.r):
        for q in range(p + 1, params.r):
            g = q - p
            k = mm[p] - mm[q]
            out *= (k + d2 * g) / (d2 * g)
            out *= rising(d2 * (g + 1), k)
            out /= rising(d2 * (g - 1) + 1, k)
    return out


def _dim_dm_gamma(m: Sequence[int], params: ParamSet) -> float:
    """Floating cross-check of dim_dm via the explicit Gamma-product form."""
    mm = pad(m, params.r)
    d2 = float(params.d) / 2
    lg = math.lgamma
    acc = 0.0
    for j in range(1, params.r + 1):
        acc += lg(d2) - lg(d2 * j) - lg(d2 * (j - 1) + 1)
    val = math.exp(acc)
    for p in range(params.r):
        for q in range(p + 1, params.r):
            g = q - p
            k = mm[p] - mm[q]
            val *= (k + d2 * g) * math.exp(
                lg(k + d2 * (g + 1)) - lg(k + d2 * (g - 1) + 1)
            )
    return val


@dataclass(frozen=True)
class C0Tilde:
    """Normalization constant in factored form: factor * (2 pi)^power.

    The factor is an exact rational whenever the Gamma ratios reduce
    (d even, or r = 1); otherwise it is a float Gamma product.
    """

    factor: Union[Fraction, float]
    two_pi_power: Fraction
    exact: bool

    def value(self) -> float:
        return float(self.factor) * TWO_PI ** float(self.two_pi_power)


def c0_tilde(params: ParamSet) -> C0Tilde:
    """(2 pi)^{(n-r)/2} prod_j Gamma(d/2 + 1) / Gamma((d/2) j + 1)."""
    power = (params.n - params.r) / 2
    d2 = params.d / 2
    exact = params.r == 1 or d2.denominator == 1
    if exact:
        factor = Fraction(1)
        for j in range(1, params.r + 1):
            # Gamma(d/2+1)/Gamma((d/2)j+1) = 1 / (d/2+1)_{(d/2)(j-1)}
            shift = d2 * (j - 1)
            factor /= rising(d2 + 1, int(shift))
        return C0Tilde(factor, power, True)
    acc = 0.0
    for j in range(1, params.r + 1):
        acc += math.lgamma(float(d2) + 1) - math.lgamma(float(d2) * j + 1)
    return C0Tilde(math.exp(acc), power, False)


# ---------------------------------------------------------------------------
# generalized binomial coefficients and the spherical-basis change
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _binom_row(m: tuple, d: Fraction, r: int) -> dict:
    """Coefficients of Phi_k in the expansion of Phi_m(1 + x), all k."""
    shifted = affine_substitute(spherical_poly(m, d, r), 1, 1)
    row: dict = {}
    remaining = dict(shifted.terms)
    w_top = weight(m)
    for w in range(w_top, -1, -1):
        for kappa in enumerate_partitions(w, r):
            if weight(kappa) != w:
                continue
            c = remaining.get(kappa)
            if not c:
                continue
            b = c * jack_at_ones_exact(kappa, d, r)
            row[kappa] = b
            phi = spherical_poly(kappa, d, r)
            for lam, v in phi.terms.items():
                nv = remaining.get(lam, Fraction(0)) - b * v
                if nv == 0:
                    remaining.pop(lam, None)
                else:
                    remaining[lam] = nv
    assert not remaining, "spherical basis change left residual terms"
    return row


def gen_binom(m: Sequence[int], k: Sequence[int], params: ParamSet) -> Fraction:
    """Generalized binomial coefficient: coefficient of Phi_k in Phi_m(1+x).

    Vanishes whenever k is not contained in m.
    """
    mm, kk = pad(m, params.r), pad(k, params.r)
    if not contains(mm, kk):
        return Fraction(0)
    return _binom_row(mm, params.d, params.r).get(kk, Fraction(0))


def gamma_k_partition(k: Sequence[int], x: Sequence[int], params: ParamSet) -> Fraction:
    """Shifted-Jack eigenvalue gamma_k at the partition argument x - rho.

    Recovered exactly from the binomial coefficients through
    binom(x, k) = d_k gamma_k(x - rho) / (n/r)_k.
    """
    nr_poch = gen_pochhammer(params.n_over_r, k, params)
    return gen_binom(x, k, params) * nr_poch / dim_dm(k, params)


# ---------------------------------------------------------------------------
# closed-form Jack evaluations and norms
# ---------------------------------------------------------------------------


def jack_at_ones(m: Sequence[int], params: ParamSet) -> Fraction:
    """Closed form for P_m^(2/d)(1,...,1), reduced to an exact rational.

    The Gamma-product form telescopes to
        prod_{p<q} ((d/2)(q-p+1))_{m_p - m_q} / ((d/2)(q-p))_{m_p - m_q}.
    Must agree with direct evaluation of the monomial expansion at ones.
    """
    mm = pad(m, params.r)
    d2 = params.d / 2
    out = Fraction(1)
    for p in range(params.r):
        for q in range(p + 1, params.r):
            k = mm[p] - mm[q]
            g = q - p
            out *= rising(d2 * (g + 1), k) / rising(d2 * g, k)
    return out


def jack_norm_torus(m: Sequence[int], params: ParamSet) -> float:
    """Squared torus norm of the Jack polynomial against the |Delta|^d weight."""
    mm = pad(m, params.r)
    d2 = float(params.d) / 2
    lg = math.lgamma
    acc = 0.0
    for p in range(params.r):
        for q in range(p + 1, params.r):
            k = mm[p] - mm[q]
            g = q - p
            acc += lg(k + d2 * (g + 1)) + lg(k + d2 * (g - 1) + 1)
            acc -= lg(k + d2 * g) + lg(k + d2 * g + 1)
    return math.exp(acc)


def expected_norm(m: Sequence[int], params: ParamSet) -> float:
    """Norm constant of the circular-Jacobi family member indexed by m:

        d_m Gamma_Omega(alpha + m) / (n/r)_m / |Gamma_Omega((alpha + n/r)/2 + i nu)|^2

    computed through log-gamma to avoid overflow.
    """
    if not params.orthogonality_ok():
        raise ParameterError(
            f"need alpha > (d/2)(r-1) = {float(params.d) / 2 * (params.r - 1)}, "
            f"got alpha = {params.alpha}"
        )
    mm = pad(m, params.r)
    alpha = float(params.alpha)
    lg_num = gamma_omega_log([alpha + mj for mj in mm], params)
    beta = 0.5 * (alpha + float(params.n_over_r)) + 1j * float(params.nu)
    lg_den = gamma_omega_log(beta, params)
    nr_poch = float(gen_pochhammer(params.n_over_r, mm, params))
    return (
        float(dim_dm(mm, params))
        / nr_poch
        * math.exp(lg_num.real - 2.0 * lg_den.real)
    )


def delta_factorial(r: int) -> int:
    """delta! = (r-1)! (r-2)! ... 1! 0!"""
    out = 1
    for i in range(r):
        out *= math.factorial(i)
    return out


# ---------------------------------------------------------------------------
# spherical Taylor expansions (truncation residuals)
# ---------------------------------------------------------------------------


def spherical_taylor_residual(
    k: Sequence[int],
    params: ParamSet,
    w_point: Sequence[complex],
    N: int,
    alpha: Optional[complex] = None,
) -> float:
    """Truncation residual of the two spherical Taylor expansions.

    With alpha given:
        (alpha)_k prod_j (1-w_j)^{-alpha} Phi_k(w/(1-w))
            = sum_{|x| <= N} d_x (alpha)_x / (n/r)_x gamma_k(x - rho) Phi_x(w) + tail.
    With alpha None (the exponential limit):
        exp(sum w_j) Phi_k(w)
            = sum_{|x| <= N} d_x / (n/r)_x gamma_k(x - rho) Phi_x(w) + tail.

    Returns |tail| at the given point.
    """
    r = params.r
    kk = pad(k, r)
    wv = [complex(x) for x in w_point]
    if len(wv) != r:
        raise ParameterError("point length must equal rank")

    def phi_at(x, point):
        return spherical_poly(x, params.d, r).evaluate(point)

    rhs = 0j
    for x in enumerate_partitions(N, r):
        gk = gamma_k_partition(kk, x, params)
        if gk == 0:
            continue
        coef = complex(dim_dm(x, params) * gk) / complex(
            gen_pochhammer(params.n_over_r, x, params)
        )
        if alpha is not None:
            coef *= _poch_complex(alpha, x, params)
        rhs += coef * phi_at(x, wv)

    if alpha is not None:
        pref = _poch_complex(alpha, kk, params)
        for wj in wv:
            pref *= (1 - wj) ** (-alpha)
        lhs = pref * phi_at(kk, [wj / (1 - wj) for wj in wv])
    else:
        lhs = cmath.exp(sum(wv)) * phi_at(kk, wv)
    return abs(lhs - rhs)


def _poch_complex(s: complex, m: Sequence[int], params: ParamSet) -> complex:
    mm = pad(m, params.r)
    out = 1.0 + 0j
    for j in range(params.r):
        base = complex(s) - float(params.d) / 2 * j
        for t in range(mm[j]):
            out *= base + t
    return out
