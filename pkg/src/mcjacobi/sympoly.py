"""Exact symmetric-polynomial algebra in r variables, monomial basis.

``SymPoly`` carries exact rational coefficients (``fractions.Fraction``);
``CSymPoly`` carries complex doubles.  Promotion is one-way, exact -> complex.
A polynomial is a finite sum  sum_lambda c_lambda m_lambda  where m_lambda is
the monomial symmetric polynomial over the orbit of the exponent vector
lambda (zero-padded to the arity).

The module also provides the three polynomial families everything else is
built from:

* ``jack_mono``   -- Jack polynomial P_m^(alpha), alpha = 2/d, monic in m_m,
  constructed as the dominance-triangular eigenvector of the alpha-deformed
  Laplace-Beltrami operator, all in exact rational arithmetic;
* ``schur``       -- Schur polynomial via the Jacobi-Trudi determinant;
* ``spherical``   -- Jack normalized to take the value 1 at (1,...,1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Sequence, Union

import numpy as np

from .errors import ArityMismatchError
from .partitions import _parts_desc, pad, trim, weight

AnyCoef = Union[int, Fraction, float, complex]


@lru_cache(maxsize=None)
def _orbit_cached(lam: tuple) -> tuple:
    """Distinct permutations of the exponent vector, in lexicographic order."""
    return tuple(sorted(set(permutations(lam))))


def _sort_key(lam: tuple):
    # (weight, reverse-lexicographic): the fixed deterministic term order.
    return (sum(lam), tuple(-p for p in lam))


class _BasePoly:
    """Common machinery for SymPoly / CSymPoly."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        self.terms = {pad(k, arity): v for k, v in terms.items() if v != 0}

    # -- ring operations ---------------------------------------------------

    def _check_arity(self, other):
        if self.arity != other.arity:
            raise ArityMismatchError(f"arity {self.arity} != {other.arity}")

    def __add__(self, other):
        self._check_arity(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, 0) + v
            if w == 0:
                out.pop(k, None)
            else:
                out[k] = w
        return self._make(self.arity, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if c == 0:
            return self._make(self.arity, {})
        return self._make(self.arity, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((type(self).__name__, self.arity, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((weight(k) for k in self.terms), default=0)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Numeric value at a point; deterministic summation order."""
        if len(point) != self.arity:
            raise ArityMismatchError(
                f"point length {len(point)} != arity {self.arity}"
            )
        z = [complex(p) for p in point]
        total = 0j
        for lam, c in self.sorted_terms():
            s = 0j
            for perm in _orbit_cached(lam):
                prod = 1.0 + 0j
                for zj, e in zip(z, perm):
                    if e:
                        prod *= zj ** e
                s += prod
            total += complex(c) * s
        return total

    def evaluate_points(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at an (N, arity) array of complex points."""
        pts = np.asarray(pts, dtype=complex)
        if pts.ndim == 1:
            pts = pts[None, :]
        if pts.shape[1] != self.arity:
            raise ArityMismatchError(
                f"points have {pts.shape[1]} coordinates, arity is {self.arity}"
            )
        total = np.zeros(pts.shape[0], dtype=complex)
        for lam, c in self.sorted_terms():
            s = np.zeros(pts.shape[0], dtype=complex)
            for perm in _orbit_cached(lam):
                prod = np.ones(pts.shape[0], dtype=complex)
                for j, e in enumerate(perm):
                    if e:
                        prod = prod * pts[:, j] ** e
                s += prod
            total += complex(c) * s
        return total

    # -- rendering ----------------------------------------------------------

    def render(self) -> str:
        """Text form "c * m[2,1] + ..." in the fixed term order."""
        if not self.terms:
            return "0"
        chunks = []
        for lam, c in self.sorted_terms():
            mono = "m[" + ",".join(str(p) for p in trim(lam)) + "]"
            cs = self._fmt_coef(c)
            chunks.append(cs if lam == (0,) * self.arity else f"{cs} * {mono}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"{type(self).__name__}(r={self.arity}, {self.render()})"

    @staticmethod
    def _fmt_coef(c) -> str:
        return str(c)


class SymPoly(_BasePoly):
    """Symmetric polynomial with exact rational coefficients."""

    @classmethod
    def _make(cls, arity, terms):
        return cls(arity, terms)

    def __init__(self, arity: int, terms: dict):
        super().__init__(arity, {k: Fraction(v) for k, v in terms.items()})

    @classmethod
    def zero(cls, r: int) -> "SymPoly":
        return cls(r, {})

    @classmethod
    def one(cls, r: int) -> "SymPoly":
        return cls(r, {(0,) * r: Fraction(1)})

    @classmethod
    def msym(cls, lam: Sequence[int], r: int) -> "SymPoly":
        """The monomial symmetric polynomial m_lambda."""
        return cls(r, {pad(lam, r): Fraction(1)})

    def to_complex(self) -> "CSymPoly":
        return CSymPoly(self.arity, {k: complex(v) for k, v in self.terms.items()})

    def eval_at_ones(self) -> Fraction:
        """Exact value at (1,...,1) = sum of coefficients times orbit sizes."""
        return sum(
            (c * len(_orbit_cached(lam)) for lam, c in self.terms.items()),
            start=Fraction(0),
        )


class CSymPoly(_BasePoly):
    """Symmetric polynomial with complex double coefficients."""

    @classmethod
    def _make(cls, arity, terms):
        return cls(arity, terms)

    def __init__(self, arity: int, terms: dict):
        super().__init__(arity, {k: complex(v) for k, v in terms.items()})

    @classmethod
    def zero(cls, r: int) -> "CSymPoly":
        return cls(r, {})

    @staticmethod
    def _fmt_coef(c) -> str:
        return f"({c.real:.12g}{c.imag:+.12g}j)"

    def conjugate_coeffs(self) -> "CSymPoly":
        return CSymPoly(self.arity, {k: v.conjugate() for k, v in self.terms.items()})


AnyPoly = Union[SymPoly, CSymPoly]


# ---------------------------------------------------------------------------
# plain (non-symmetric) exponent-dict helpers, used by multiplication,
# substitution and the Jack construction
# ---------------------------------------------------------------------------


def _expand_plain(poly: _BasePoly) -> dict:
    out: dict = {}
    for lam, c in poly.terms.items():
        for perm in _orbit_cached(lam):
            out[perm] = out.get(perm, 0) + c
    return out


def _collect(plain: dict, arity: int, cls) -> AnyPoly:
    """Read off monomial-basis coefficients from a symmetric plain dict."""
    terms = {}
    for e, c in plain.items():
        lam = tuple(sorted(e, reverse=True))
        if e == lam and c != 0:
            terms[lam] = c
    return cls(arity, terms)


def _plain_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
    return out


def msym_mul(a: AnyPoly, b: AnyPoly) -> AnyPoly:
    """Exact product in the monomial basis.

    Each factor is expanded into its orbit of plain monomials, multiplied
    densely, and re-symmetrized; correct over exact coefficients at the
    small degrees this package works with.
    """
    if a.arity != b.arity:
        raise ArityMismatchError(f"arity {a.arity} != {b.arity}")
    cls = SymPoly if isinstance(a, SymPoly) and isinstance(b, SymPoly) else CSymPoly
    return _collect(_plain_mul(_expand_plain(a), _expand_plain(b)), a.arity, cls)


def affine_substitute(p: AnyPoly, a: AnyCoef, b: AnyCoef) -> AnyPoly:
    """Replace every variable x_j by a + b*x_j.

    Exact for rational inputs on a SymPoly; otherwise the result is complex.
    Implemented by binomial expansion per plain monomial, then
    re-symmetrization.
    """
    exact = isinstance(p, SymPoly) and isinstance(a, (int, Fraction)) and isinstance(
        b, (int, Fraction)
    )
    cls = SymPoly if exact else CSymPoly
    if exact:
        a, b = Fraction(a), Fraction(b)
    else:
        a, b = complex(a), complex(b)
    r = p.arity
    zero_exp = (0,) * r
    out: dict = {}
    for lam, c in p.terms.items():
        for perm in _orbit_cached(lam):
            # expand prod_j (a + b x_j)^{e_j} axis by axis
            acc = {zero_exp: c}
            for j, e in enumerate(perm):
                if e == 0:
                    continue
                factor = {}
                for t in range(e + 1):
                    coef = comb(e, t) * a ** (e - t) * b**t
                    if coef != 0:
                        exp = list(zero_exp)
                        exp[j] = t
                        factor[tuple(exp)] = coef
                acc = _plain_mul(acc, factor)
            for e, v in acc.items():
                w = out.get(e, 0) + v
                if w == 0:
                    out.pop(e, None)
                else:
                    out[e] = w
    return _collect(out, r, cls)


# ---------------------------------------------------------------------------
# Jack polynomials
# ---------------------------------------------------------------------------


def _shift(d: dict, j: int) -> dict:
    """Multiply a plain dict by x_j."""
    out = {}
    for e, c in d.items():
        ee = list(e)
        ee[j] += 1
        out[tuple(ee)] = c
    return out


def _divide_diff(g: dict, i: int, j: int) -> dict:
    """Exact synthetic division of a plain dict by (x_i - x_j)."""
    if not g:
        return {}
    by_p: dict = {}
    for e, c in g.items():
        p = e[i]
        ee = list(e)
        ee[i] = 0
        by_p.setdefault(p, {})[tuple(ee)] = c
    pmax = max(by_p)
    q_rows: dict = {}
    carry: dict = {}  # q_p for the current p
    for p in range(pmax, 0, -1):
        row = dict(_shift(carry, j)) if carry else {}
        for e, c in by_p.get(p, {}).items():
            v = row.get(e, 0) + c
            if v == 0:
                row.pop(e, None)
            else:
                row[e] = v
        q_rows[p - 1] = row
        carry = row
    # remainder must vanish: g_0 + x_j * q_0 == 0
    rem = dict(by_p.get(0, {}))
    for e, c in _shift(q_rows.get(0, {}), j).items():
        v = rem.get(e, 0) + c
        if v == 0:
            rem.pop(e, None)
        else:
            rem[e] = v
    assert not rem, "division by (x_i - x_j) left a remainder"
    out: dict = {}
    for p, row in q_rows.items():
        for e, c in row.items():
            ee = list(e)
            ee[i] = p
            out[tuple(ee)] = out.get(tuple(ee), 0) + c
    return {e: c for e, c in out.items() if c != 0}


def _lb_apply(plain: dict, alpha: Fraction, r: int) -> dict:
    """alpha-deformed Laplace-Beltrami operator on a symmetric plain dict.

    D = (alpha/2) sum_i x_i^2 d_i^2 + sum_{i<j} (x_i^2 d_i - x_j^2 d_j)/(x_i - x_j)
    """
    out: dict = {}
    half = alpha / 2
    for e, c in plain.items():
        v = c * half * sum(ei * (ei - 1) for ei in e)
        if v:
            out[e] = out.get(e, 0) + v
    for i in range(r):
        for j in range(i + 1, r):
            g: dict = {}
            for e, c in plain.items():
                if e[i]:
                    ee = list(e)
                    ee[i] += 1
                    key = tuple(ee)
                    g[key] = g.get(key, 0) + c * e[i]
                if e[j]:
                    ee = list(e)
                    ee[j] += 1
                    key = tuple(ee)
                    g[key] = g.get(key, 0) - c * e[j]
            for e, c in _divide_diff(g, i, j).items():
                v = out.get(e, 0) + c
                if v == 0:
                    out.pop(e, None)
                else:
                    out[e] = v
    return {e: c for e, c in out.items() if c != 0}


def _lb_eigenvalue(lam: tuple, alpha: Fraction, r: int) -> Fraction:
    return sum(
        (Fraction(li) * (alpha * (li - 1) / 2 + (r - 1 - idx)) for idx, li in enumerate(lam)),
        start=Fraction(0),
    )


@lru_cache(maxsize=None)
def _lb_table(w: int, alpha: Fraction, r: int) -> tuple:
    """Action of the deformed Laplace-Beltrami operator on the weight-w
    monomial basis; returns (class order, {nu: {mu: coef}})."""
    klass = [pad(p, r) for p in _parts_desc(w, w, r)]
    table = {}
    for nu in klass:
        plain = {perm: Fraction(1) for perm in _orbit_cached(nu)}
        applied = _lb_apply(plain, alpha, r)
        row = {}
        for mu in klass:
            c = applied.get(mu, 0)
            if c:
                row[mu] = c
        table[nu] = row
    return tuple(klass), table


@lru_cache(maxsize=None)
def _jack_terms(m: tuple, alpha: Fraction, r: int) -> tuple:
    """Monomial expansion of P_m^(alpha) as ((lambda, coef), ...)."""
    w = weight(m)
    klass, table = _lb_table(w, alpha, r)
    e_m = _lb_eigenvalue(m, alpha, r)
    coefs = {m: Fraction(1)}
    started = False
    for lam in klass:
        if lam == m:
            started = True
            continue
        if not started:
            continue
        num = Fraction(0)
        for mu, c_mu in coefs.items():
            num += table[mu].get(lam, 0) * c_mu
        if num:
            coefs[lam] = num / (e_m - _lb_eigenvalue(lam, alpha, r))
    return tuple(sorted(coefs.items(), key=lambda kv: _sort_key(kv[0])))


def jack_mono(m: Sequence[int], d, r: int) -> SymPoly:
    """Jack polynomial P_m with parameter alpha = 2/d, monic in m_m.

    Exact; the support is contained in {lambda : lambda dominated by m}.
    """
    d = Fraction(d)
    if d <= 0:
        raise ValueError("multiplicity d must be > 0")
    mm = pad(m, r)
    return SymPoly(r, dict(_jack_terms(mm, Fraction(2, 1) / d, r)))


# ---------------------------------------------------------------------------
# Schur polynomials (Jacobi-Trudi) -- the d = 2 oracle
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _complete_homogeneous(k: int, r: int) -> SymPoly:
    if k < 0:
        return SymPoly.zero(r)
    if k == 0:
        return SymPoly.one(r)
    terms = {pad(p, r): Fraction(1) for p in _parts_desc(k, k, r)}
    return SymPoly(r, terms)


@lru_cache(maxsize=None)
def _schur_cached(m: tuple, r: int) -> SymPoly:
    n = len(m)
    total = SymPoly.zero(r)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        prod = SymPoly.one(r)
        ok = True
        for i in range(n):
            h = _complete_homogeneous(m[i] - i + perm[i], r)
            if h.is_zero():
                ok = False
                break
            prod = msym_mul(prod, h)
        if ok:
            total = total + prod.scale(sign)
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def schur(m: Sequence[int], r: int) -> SymPoly:
    """Schur polynomial via the Jacobi-Trudi determinant over the h basis."""
    return _schur_cached(pad(m, r), r)


# ---------------------------------------------------------------------------
# spherical normalization
# ---------------------------------------------------------------------------


def jack_at_ones_exact(m: Sequence[int], d, r: int) -> Fraction:
    """Exact P_m^(2/d)(1,...,1) obtained by summing the monomial expansion."""
    return jack_mono(m, d, r).eval_at_ones()


def spherical(m: Sequence[int], params) -> SymPoly:
    """Spherical polynomial: Jack rescaled so the value at (1,...,1) is 1."""
    return spherical_poly(m, params.d, params.r)


@lru_cache(maxsize=None)
def _spherical_cached(m: tuple, d: Fraction, r: int) -> SymPoly:
    p = jack_mono(m, d, r)
    return p.scale(Fraction(1) / p.eval_at_ones())


def spherical_poly(m: Sequence[int], d, r: int) -> SymPoly:
    return _spherical_cached(pad(m, r), Fraction(d), r)
