"""Global parameter context (r, d, alpha, nu) and derived quantities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]
Number = Union[int, float, Fraction]


def as_fraction(x) -> Fraction:
    """Exact coercion; floats are lifted to their exact binary value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


@dataclass(frozen=True)
class ParamSet:
    """Rank r, multiplicity d > 0 and the deformation parameters (alpha, nu).

    Derived data: the ambient dimension n = r + (d/2) r (r-1), the half-sum
    vector rho_j = (d/4)(2j - r - 1) and the staircase delta = (r-1, ..., 1, 0).
    Exact rational arithmetic is used for everything derived from (r, d).
    """

    r: int
    d: Fraction
    alpha: Number = 0
    nu: Number = 0.0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rank r must be >= 1")
        object.__setattr__(self, "d", as_fraction(self.d))
        if self.d <= 0:
            raise ValueError("multiplicity d must be > 0")
        if isinstance(self.alpha, Fraction) and self.alpha.denominator == 1:
            object.__setattr__(self, "alpha", int(self.alpha))

    @property
    def n(self) -> Fraction:
        return self.r + (self.d / 2) * self.r * (self.r - 1)

    @property
    def n_over_r(self) -> Fraction:
        return 1 + (self.d / 2) * (self.r - 1)

    @property
    def rho(self) -> tuple:
        return tuple((self.d / 4) * (2 * j - self.r - 1) for j in range(1, self.r + 1))

    @property
    def delta(self) -> tuple:
        return tuple(range(self.r - 1, -1, -1))

    @property
    def alpha_is_exact(self) -> bool:
        return isinstance(self.alpha, (int, Fraction))

    @property
    def nu_is_zero(self) -> bool:
        return self.nu == 0

    def orthogonality_ok(self) -> bool:
        """The standing assumption alpha > n/r - 1 = (d/2)(r-1)."""
        return self.alpha > float((self.d / 2) * (self.r - 1))

    def with_(self, **kw) -> "ParamSet":
        data = {"r": self.r, "d": self.d, "alpha": self.alpha, "nu": self.nu}
        data.update(kw)
        return ParamSet(**data)

    def describe(self) -> dict:
        return {
            "r": self.r,
            "d": str(self.d),
            "alpha": float(self.alpha),
            "nu": float(self.nu),
            "n": float(self.n),
        }
