"""Singular-weight quadrature on the r-torus and Gram-matrix certification.

The orthogonality measure per axis is (2 sin(theta/2))^{2s} e^{-nu (theta-pi)}
with s = (alpha - n/r)/2, coupled across axes by prod_{p<q} |e^{i theta_p} -
e^{i theta_q}|^d.  Per-axis rules fold the algebraic endpoint factor into the
weights:

* ``tanh_sinh``        -- double-exponential transform of (0, 2 pi); handles
  any integrable endpoint exponent and the non-periodic e^{-nu theta} factor
  with double-exponential convergence;
* ``gauss_gegenbauer`` -- Gauss-Jacobi nodes in x = cos(theta/2); by symmetry
  of the nodes this integrates trigonometric-polynomial integrands exactly,
  which makes it the sharp choice for nu = 0.

For even integer d the pair coupling is a trigonometric polynomial and a
tensor rule applies.  For non-even d the inner axes are subdivided at the
current outer angles and each segment gets a Gauss-Jacobi rule whose
exponents match the algebraic factors at the segment ends exactly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy.special import roots_jacobi

from . import coeffs
from .errors import ParameterError, SingularPointError
from .mcj import mcj_build
from .params import ParamSet
from .partitions import enumerate_partitions, format_partition

TWO_PI = 2.0 * math.pi


def _axis_exponent(params: ParamSet) -> float:
    """s = (alpha - n/r)/2; the per-axis factor is (2 sin(theta/2))^{2s}."""
    return 0.5 * (float(params.alpha) - float(params.n_over_r))


def weight_eval(theta: Sequence[float], params: ParamSet) -> float:
    """Orthogonality weight at a point of (0, 2 pi)^r.

    Uses 1 - e^{i theta} = 2 sin(theta/2) e^{i (theta - pi)/2}, so the
    squared modulus of (1 - e^{i theta})^{s + i nu} is
    (2 sin(theta/2))^{2 s} e^{-nu (theta - pi)}.
    """
    if len(theta) != params.r:
        raise ParameterError("theta must have length r")
    s2 = 2.0 * _axis_exponent(params)
    nu = float(params.nu)
    d = float(params.d)
    out = 1.0
    for th in theta:
        if not 0.0 < th < TWO_PI:
            raise SingularPointError(f"theta = {th} outside (0, 2*pi)")
        out *= (2.0 * math.sin(th / 2)) ** s2 * math.exp(-nu * (th - math.pi))
    for p in range(params.r):
        for q in range(p + 1, params.r):
            out *= abs(2.0 * math.sin((theta[p] - theta[q]) / 2)) ** d
    return out


# ---------------------------------------------------------------------------
# per-axis rules
# ---------------------------------------------------------------------------


@dataclass
class QuadratureRule:
    """Per-axis nodes/weights on (0, 2 pi) with the singular factor folded in.

    Contract: sum_i weights[i] g(nodes[i]) ~ int_0^{2pi} (2 sin(t/2))^{2s} g(t) dt
    for g smooth on the closed interval.
    """

    kind: str
    points_per_axis: int
    s: float
    nodes: np.ndarray
    weights: np.ndarray
    meta: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)


def _tanh_sinh_axis(n: int, s: float) -> tuple:
    """Double-exponential rule for int_0^{2pi} (2 sin(t/2))^{2s} g(t) dt."""
    one_plus = 1.0 + 2.0 * s  # endpoint integrability exponent, > 0
    if one_plus <= 0:
        raise ParameterError("axis exponent must satisfy alpha - n/r > -1")
    # truncation point: contribution beyond theta(T) is ~ theta^{1+2s}
    x_max = (16 * math.log(10) + one_plus * math.log(TWO_PI)) / (2 * one_plus)
    x_max = min(max(x_max, 19.0), 320.0)
    T = math.asinh(2.0 * x_max / math.pi)
    h = 2.0 * T / (n - 1)
    ts = -T + h * np.arange(n)
    x = 0.5 * math.pi * np.sinh(ts)
    ax = np.abs(x)
    u = TWO_PI / (1.0 + np.exp(2.0 * ax))  # distance to the nearer endpoint
    theta = np.where(ts < 0, u, TWO_PI - u)
    dtheta = 0.5 * math.pi**2 * np.cosh(ts) / np.cosh(ax) ** 2
    sinhalf = np.sin(u / 2.0)
    w = h * dtheta * (2.0 * sinhalf) ** (2.0 * s)
    good = (w > 0) & np.isfinite(w)
    # keep nodes strictly inside (0, 2 pi); extreme nodes round onto the
    # boundary but their mass is real, so nudge instead of dropping
    theta = np.clip(theta[good], np.nextafter(0.0, 1.0), np.nextafter(TWO_PI, 0.0))
    return theta, w[good], {"T": T, "h": h}


def _gegenbauer_axis(n: int, s: float) -> tuple:
    """Gauss-Jacobi in x = cos(theta/2): weight (1-x^2)^{s-1/2} after folding."""
    if s <= -0.5:
        raise ParameterError("gauss_gegenbauer needs alpha - n/r > -1")
    x, w = roots_jacobi(n, s - 0.5, s - 0.5)
    theta = 2.0 * np.arccos(x[::-1])
    weights = 2.0 ** (2.0 * s + 1.0) * w[::-1]
    return theta, weights, {}


def resolve_rule_kind(params: ParamSet, kind: str = "auto") -> str:
    """Pick the per-axis rule.

    The half-angle map behind gauss_gegenbauer has square-root branch points
    at the endpoints, so exactness only survives for trig-polynomial
    integrands; that means nu = 0 and either r = 1 or even d.  Everything
    else goes to tanh_sinh.
    """
    if kind != "auto":
        return kind
    d = params.d
    even_d = d.denominator == 1 and d.numerator % 2 == 0
    if params.nu == 0 and (params.r == 1 or even_d):
        return "gauss_gegenbauer"
    return "tanh_sinh"


def build_rule(points_per_axis: int, kind: str, params: ParamSet) -> QuadratureRule:
    """Per-axis rule with the (2 sin(theta/2))^{2s} factor folded in."""
    if points_per_axis < 4:
        raise ParameterError("points_per_axis must be >= 4")
    kind = resolve_rule_kind(params, kind)
    s = _axis_exponent(params)
    if kind == "tanh_sinh":
        nodes, weights, meta = _tanh_sinh_axis(points_per_axis, s)
    elif kind == "gauss_gegenbauer":
        nodes, weights, meta = _gegenbauer_axis(points_per_axis, s)
    else:
        raise ParameterError(f"unknown rule kind: {kind}")
    return QuadratureRule(kind, points_per_axis, s, nodes, weights, meta)


# ---------------------------------------------------------------------------
# multivariate point assembly
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _jacobi_base(n: int, a: float, b: float) -> tuple:
    if min(a, b) <= -1:
        raise ParameterError("segment exponent fell below -1")
    x, w = roots_jacobi(n, a, b)
    return x, w


def _sc(y):
    """2 sin(y/2) / y, smooth and positive on [0, 2 pi)."""
    return np.sinc(np.asarray(y) / TWO_PI)


def _is_even_d(d: Fraction) -> bool:
    return d.denominator == 1 and d.numerator % 2 == 0


def _segment(n, a_exp, b_exp, lo, hi):
    """Gauss-Jacobi points on (lo, hi) for weight (hi-t)^{a_exp} (t-lo)^{b_exp}.

    Returns (t, w) with the pure power factors folded into w.
    """
    x, w = _jacobi_base(n, float(a_exp), float(b_exp))
    half = 0.5 * (hi - lo)
    t = lo + half * (1.0 + x)
    scale = half ** (a_exp + b_exp + 1.0)
    return t, scale * w


def _points_weights(params: ParamSet, rule: QuadratureRule) -> tuple:
    """Full node set on (0, 2 pi)^r with total measure weights.

    Weights include the per-axis singular factors, the e^{-nu (theta - pi)}
    factors and the pair coupling; the polynomials are the only thing left
    for the integrand.
    """
    key = (params.r, params.d, float(params.alpha), float(params.nu))
    if key in rule._cache:
        return rule._cache[key]
    s = _axis_exponent(params)
    if abs(rule.s - s) > 1e-12:
        raise ParameterError("rule was built for different parameters")
    r = params.r
    if r > 3:
        raise ParameterError("quadrature supports r <= 3 (cost grows as n^r)")
    nu = float(params.nu)
    d = float(params.d)

    def nu_fac(th):
        return np.exp(-nu * (th - math.pi))

    if r == 1:
        pts = rule.nodes[:, None]
        w = rule.weights * nu_fac(rule.nodes)
    elif _is_even_d(params.d):
        axes_t = [rule.nodes] * r
        axes_w = [rule.weights * nu_fac(rule.nodes)] * r
        grids = np.meshgrid(*axes_t, indexing="ij")
        wgrid = np.ones_like(grids[0])
        for j, aw in enumerate(axes_w):
            shape = [1] * r
            shape[j] = -1
            wgrid = wgrid * aw.reshape(shape)
        for p in range(r):
            for q in range(p + 1, r):
                wgrid = wgrid * (
                    2.0 * np.abs(np.sin((grids[p] - grids[q]) / 2.0))
                ) ** d
        pts = np.stack([g.ravel() for g in grids], axis=1)
        w = wgrid.ravel()
    elif r == 2:
        n = rule.points_per_axis
        two_s = 2.0 * s
        pts_list, w_list = [], []
        outer_w = rule.weights * nu_fac(rule.nodes)
        for t1, w1 in zip(rule.nodes, outer_w):
            # (0, t1): endpoint exponents 2s at 0, d at t1
            t2, wseg = _segment(n, d, two_s, 0.0, t1)
            extra = _sc(t2) ** two_s * _sc(t1 - t2) ** d * nu_fac(t2)
            pts_list.append(np.column_stack([np.full_like(t2, t1), t2]))
            w_list.append(w1 * wseg * extra)
            # (t1, 2 pi): d at t1, 2s at 2 pi
            t2, wseg = _segment(n, two_s, d, t1, TWO_PI)
            extra = _sc(TWO_PI - t2) ** two_s * _sc(t2 - t1) ** d * nu_fac(t2)
            pts_list.append(np.column_stack([np.full_like(t2, t1), t2]))
            w_list.append(w1 * wseg * extra)
        pts = np.vstack(pts_list)
        w = np.concatenate(w_list)
    else:  # r == 3, non-even d
        n = rule.points_per_axis
        two_s = 2.0 * s
        pts_list, w_list = [], []
        outer_w = rule.weights * nu_fac(rule.nodes)
        for t1, w1 in zip(rule.nodes, outer_w):
            middle = []
            t2, wseg = _segment(n, d, two_s, 0.0, t1)
            middle.append((t2, wseg * _sc(t2) ** two_s * _sc(t1 - t2) ** d))
            t2, wseg = _segment(n, two_s, d, t1, TWO_PI)
            middle.append((t2, wseg * _sc(TWO_PI - t2) ** two_s * _sc(t2 - t1) ** d))
            for t2_arr, w2_arr in middle:
                for t2, w2 in zip(t2_arr, w2_arr * nu_fac(t2_arr)):
                    lo, hi = min(t1, t2), max(t1, t2)
                    segs = []
                    if hi - lo < 1e-12:
                        # outer angles effectively coincide: treat them as
                        # equal at the midpoint and fold the doubled exponent
                        mid = 0.5 * (lo + hi)
                        t3, ws = _segment(n, 2 * d, two_s, 0.0, mid)
                        ex = _sc(t3) ** two_s * _sc(mid - t3) ** (2 * d)
                        segs.append((t3, ws * ex))
                        t3, ws = _segment(n, two_s, 2 * d, mid, TWO_PI)
                        ex = _sc(TWO_PI - t3) ** two_s * _sc(t3 - mid) ** (2 * d)
                        segs.append((t3, ws * ex))
                    else:
                        t3, ws = _segment(n, d, two_s, 0.0, lo)
                        ex = (
                            _sc(t3) ** two_s
                            * _sc(lo - t3) ** d
                            * (2.0 * np.sin((hi - t3) / 2.0)) ** d
                        )
                        segs.append((t3, ws * ex))
                        t3, ws = _segment(n, d, d, lo, hi)
                        ex = (
                            (2.0 * np.sin(t3 / 2.0)) ** two_s
                            * _sc(t3 - lo) ** d
                            * _sc(hi - t3) ** d
                        )
                        segs.append((t3, ws * ex))
                        t3, ws = _segment(n, two_s, d, hi, TWO_PI)
                        ex = (
                            _sc(TWO_PI - t3) ** two_s
                            * _sc(t3 - hi) ** d
                            * (2.0 * np.sin((t3 - lo) / 2.0)) ** d
                        )
                        segs.append((t3, ws * ex))
                    for t3_arr, w3_arr in segs:
                        w3_arr = w3_arr * nu_fac(t3_arr)
                        block = np.column_stack(
                            [
                                np.full_like(t3_arr, t1),
                                np.full_like(t3_arr, t2),
                                t3_arr,
                            ]
                        )
                        pts_list.append(block)
                        w_list.append(w1 * w2 * w3_arr)
        pts = np.vstack(pts_list)
        w = np.concatenate(w_list)

    if not np.all(np.isfinite(w)):
        raise ParameterError("quadrature weight assembly produced non-finite values")
    rule._cache[key] = (pts, w)
    return pts, w


def _compensated_csum(arr: np.ndarray) -> complex:
    """Deterministic compensated sum of a complex array."""
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))


def _prefactor(params: ParamSet) -> float:
    return coeffs.c0_tilde(params).value() / TWO_PI ** float(params.n)


def inner_product(
    m: Sequence[int], n: Sequence[int], params: ParamSet, rule: QuadratureRule
) -> complex:
    """Quadrature value of (c0~/(2 pi)^n) int phi_m conj(phi_n) d(weight)."""
    pts, w = _points_weights(params, rule)
    z = np.exp(1j * pts)
    vm = mcj_build(tuple(m), params).evaluate_points(z)
    vn = mcj_build(tuple(n), params).evaluate_points(z)
    return _prefactor(params) * _compensated_csum(w * vm * np.conj(vn))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class OrthReport:
    params: ParamSet
    max_weight: int
    partitions: list
    gram: np.ndarray
    expected: list
    rule_info: dict
    off_diag_max_scaled: float
    diag_rel_max: float
    hermiticity: float
    tol_off: float
    tol_diag: float
    passed: bool
    flag: Optional[str] = None
    diagnostics: Optional[dict] = None
    notes: list = field(default_factory=list)
    wall_clock_s: float = 0.0

    def one_line(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        flag = f" [{self.flag}]" if self.flag else ""
        return (
            f"{verdict}{flag} r={self.params.r} d={self.params.d} "
            f"alpha={float(self.params.alpha):g} nu={float(self.params.nu):g} "
            f"w<={self.max_weight}: off={self.off_diag_max_scaled:.3e} "
            f"diag={self.diag_rel_max:.3e} ({self.wall_clock_s:.2f}s)"
        )

    def to_json_dict(self) -> dict:
        # wall clock is intentionally omitted: identical configurations must
        # serialize to byte-identical reports
        doc = {
            "schema": "mcjacobi-orth-report-v1",
            "params": self.params.describe(),
            "max_weight": self.max_weight,
            "partitions": [format_partition(p) for p in self.partitions],
            "rule": self.rule_info,
            "tolerances": {"off_diag": self.tol_off, "diag_rel": self.tol_diag},
            "gram": [
                [[z.real, z.imag] for z in row] for row in np.asarray(self.gram)
            ],
            "expected": list(self.expected),
            "residuals": {
                "off_diag_max_scaled": self.off_diag_max_scaled,
                "diag_rel_max": self.diag_rel_max,
                "hermiticity": self.hermiticity,
            },
            "verdict": "pass" if self.passed else "fail",
        }
        if self.flag is not None:
            doc["flag"] = self.flag
        if self.diagnostics is not None:
            doc["diagnostics"] = self.diagnostics
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc

    def gram_modulus_csv(self) -> str:
        lines = [",".join(["partition"] + [format_partition(p) for p in self.partitions])]
        for i, p in enumerate(self.partitions):
            row = [format_partition(p)] + [
                f"{abs(self.gram[i, j]):.17g}" for j in range(len(self.partitions))
            ]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _gram(params: ParamSet, parts: list, rule: QuadratureRule) -> np.ndarray:
    pts, w = _points_weights(params, rule)
    z = np.exp(1j * pts)
    vals = [mcj_build(m, params).evaluate_points(z) for m in parts]
    pref = _prefactor(params)
    P = len(parts)
    G = np.empty((P, P), dtype=complex)
    for i in range(P):
        for j in range(P):
            G[i, j] = pref * _compensated_csum(w * vals[i] * np.conj(vals[j]))
    return G


def verify_orthogonality(
    params: ParamSet,
    max_weight: int,
    rule: QuadratureRule,
    tol_off: float,
    tol_diag: float,
) -> OrthReport:
    """Assemble the Gram matrix over all partitions of weight <= max_weight
    and compare with the predicted diagonal norms."""
    t0 = time.perf_counter()
    parts = enumerate_partitions(max_weight, params.r)
    G = _gram(params, parts, rule)
    expected = [coeffs.expected_norm(m, params) for m in parts]
    P = len(parts)
    off = 0.0
    herm = 0.0
    diag = 0.0
    for i in range(P):
        diag = max(diag, abs(G[i, i].real - expected[i]) / expected[i])
        for j in range(P):
            if i == j:
                continue
            scale = math.sqrt(expected[i] * expected[j])
            off = max(off, abs(G[i, j]) / scale)
            herm = max(herm, abs(G[i, j] - G[j, i].conjugate()) / scale)
    off, diag, herm = float(off), float(diag), float(herm)
    passed = off <= tol_off and diag <= tol_diag
    info = {
        "kind": rule.kind,
        "points_per_axis": rule.points_per_axis,
        "axis_exponent": rule.s,
    }
    return OrthReport(
        params=params,
        max_weight=max_weight,
        partitions=parts,
        gram=G,
        expected=expected,
        rule_info=info,
        off_diag_max_scaled=off,
        diag_rel_max=diag,
        hermiticity=herm,
        tol_off=tol_off,
        tol_diag=tol_diag,
        passed=passed,
        wall_clock_s=time.perf_counter() - t0,
    )


def _theorem_covered(params: ParamSet) -> bool:
    d = params.d
    if d in (1, 2, 4):
        return True
    if params.r == 2 and d.denominator == 1:
        return True
    if params.r == 3 and d == 8:
        return True
    if params.nu == 0 and Fraction(params.alpha) == params.n_over_r:
        return True
    return False


def conjecture_sweep(
    d_values: Sequence,
    alpha_values: Sequence[float],
    nu_values: Sequence[float],
    r: int,
    max_weight: int,
    points_per_axis: int = 48,
    kind: str = "auto",
    tol_off: float = 1e-4,
    tol_diag: float = 1e-4,
    oracle_tol: float = 1e-6,
) -> list:
    """Orthogonality evidence over a parameter grid.

    Theorem-covered parameter points are flagged "oracle" and held to the
    tighter tolerance; the rest are "evidence" rows.  Each report carries a
    two-resolution convergence diagnostic; an evidence row that converges to
    a nonzero residual is a finding, not a numerical artifact.
    """
    reports = []
    for d in d_values:
        for alpha in alpha_values:
            for nu in nu_values:
                params = ParamSet(r=r, d=d, alpha=alpha, nu=nu)
                if not params.orthogonality_ok():
                    print(
                        f"notice: skipping d={d} alpha={alpha} nu={nu}: "
                        f"requires alpha > (d/2)(r-1)"
                    )
                    continue
                t0 = time.perf_counter()
                oracle = _theorem_covered(params)
                t_off = oracle_tol if oracle else tol_off
                t_diag = oracle_tol if oracle else tol_diag
                coarse = build_rule(points_per_axis, kind, params)
                fine = build_rule(2 * points_per_axis, kind, params)
                rep_c = verify_orthogonality(params, max_weight, coarse, t_off, t_diag)
                rep = verify_orthogonality(params, max_weight, fine, t_off, t_diag)
                floor = 1e-12
                err_c = max(rep_c.diag_rel_max, rep_c.off_diag_max_scaled)
                err_f = max(rep.diag_rel_max, rep.off_diag_max_scaled)
                ratio = err_c / max(err_f, floor)
                if rep.passed:
                    # tolerance met; trustworthy if refinement behaved like
                    # quadrature error (shrank, hit the floor, or was already
                    # below tolerance at the coarse rule)
                    converged = ratio >= 4.0 or err_f <= 10 * floor or err_c <= min(t_off, t_diag)
                    stable_residual = False
                else:
                    # tolerance failed; the failure is reportable only when
                    # the residual survives refinement unchanged
                    stable_residual = ratio < 4.0 and err_f > floor
                    converged = stable_residual
                rep.flag = "oracle" if oracle else "evidence"
                rep.diagnostics = {
                    "points_per_axis": [points_per_axis, 2 * points_per_axis],
                    "diag_rel": [float(rep_c.diag_rel_max), float(rep.diag_rel_max)],
                    "off_scaled": [
                        float(rep_c.off_diag_max_scaled),
                        float(rep.off_diag_max_scaled),
                    ],
                    "refinement_ratio": float(ratio),
                    "converged": bool(converged),
                }
                rep.passed = rep.passed and converged
                if stable_residual:
                    where = "non-classical d" if not oracle else "a theorem-covered point (numerical defect?)"
                    rep.notes.append(
                        f"residual stable under refinement at {where}: "
                        "reproducible, not a quadrature artifact"
                    )
                elif not rep.passed:
                    rep.notes.append(
                        "quadrature-limited: residual still shrinking, "
                        "increase points_per_axis before drawing conclusions"
                    )
                rep.wall_clock_s = time.perf_counter() - t0
                reports.append(rep)
    return reports
