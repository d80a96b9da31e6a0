"""Expressions of the form P / beta^k with P a polynomial.

Everything the derivation engine produces lives here: the connection
coefficient kappa_1 has an explicit 1/beta, and frame derivatives of
beta-denominated quantities keep the denominator a pure beta power.
Normalization cancels beta eagerly so the parity check in the omega
rewrite sees a canonical denominator.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import CANONICAL, AlgebraError, Coeff, MPoly, VarTable

BETA = "b"


def _beta_valuation(poly: MPoly) -> int:
    """Largest j with beta^j dividing the polynomial (inf for zero)."""
    i = poly.vars.index(BETA)
    if poly.is_zero():
        return 1 << 30
    return min(mono[i] for mono in poly.terms)


def _shift_beta(poly: MPoly, delta: int) -> MPoly:
    """Multiply by beta^delta (delta may be negative when exact)."""
    if delta == 0 or poly.is_zero():
        return poly
    i = poly.vars.index(BETA)
    out = {}
    for mono, c in poly.terms.items():
        e = mono[i] + delta
        if e < 0:
            raise AlgebraError("beta shift would create a negative exponent")
        out[mono[:i] + (e,) + mono[i + 1 :]] = c
    return MPoly._raw(out, poly.vars)


class LaurentElement:
    """Pair (numerator, beta_power) meaning numerator / beta^beta_power."""

    __slots__ = ("numerator", "beta_power")

    def __init__(self, numerator: MPoly, beta_power: int = 0):
        if beta_power < 0:
            raise AlgebraError("beta_power must be non-negative")
        if numerator.is_zero():
            numerator, beta_power = MPoly.zero(numerator.vars), 0
        elif beta_power:
            cancel = min(beta_power, _beta_valuation(numerator))
            if cancel:
                numerator = _shift_beta(numerator, -cancel)
                beta_power -= cancel
        self.numerator = numerator
        self.beta_power = beta_power

    @classmethod
    def from_poly(cls, poly: MPoly) -> "LaurentElement":
        return cls(poly, 0)

    @classmethod
    def constant(cls, c: Coeff, vars: VarTable = CANONICAL) -> "LaurentElement":
        return cls(MPoly.constant(c, vars), 0)

    @property
    def vars(self) -> VarTable:
        return self.numerator.vars

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return self.beta_power == 0

    def as_poly(self) -> MPoly:
        if self.beta_power:
            raise AlgebraError(
                f"element still carries denominator beta^{self.beta_power}"
            )
        return self.numerator

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return (
            self.beta_power == other.beta_power
            and self.numerator == other.numerator
        )

    def __hash__(self) -> int:
        return hash((self.numerator, self.beta_power))

    def __add__(self, other: "LaurentElement | MPoly | Coeff") -> "LaurentElement":
        other = _coerce(other, self.vars)
        k = max(self.beta_power, other.beta_power)
        num = _shift_beta(self.numerator, k - self.beta_power) + _shift_beta(
            other.numerator, k - other.beta_power
        )
        return LaurentElement(num, k)

    __radd__ = __add__

    def __neg__(self) -> "LaurentElement":
        return LaurentElement(-self.numerator, self.beta_power)

    def __sub__(self, other: "LaurentElement | MPoly | Coeff") -> "LaurentElement":
        return self + (-_coerce(other, self.vars))

    def __mul__(self, other: "LaurentElement | MPoly | Coeff") -> "LaurentElement":
        other = _coerce(other, self.vars)
        return LaurentElement(
            self.numerator * other.numerator, self.beta_power + other.beta_power
        )

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> "LaurentElement":
        return LaurentElement(self.numerator.scale(c), self.beta_power)

    def __repr__(self) -> str:
        if self.beta_power == 0:
            return f"Laurent({self.numerator})"
        return f"Laurent(({self.numerator}) / b^{self.beta_power})"


def _coerce(value, vars: VarTable) -> LaurentElement:
    if isinstance(value, LaurentElement):
        return value
    if isinstance(value, MPoly):
        return LaurentElement(value, 0)
    if isinstance(value, (int, Fraction)):
        return LaurentElement(MPoly.constant(value, vars), 0)
    raise TypeError(f"cannot coerce {type(value).__name__} to LaurentElement")


def substitute(poly: MPoly, symbol: str, value: LaurentElement) -> LaurentElement:
    """Replace one variable by a beta-denominated value, exactly.

    Horner evaluation in the substituted variable; the result is
    normalized so spare beta powers cancel.
    """
    coeffs = poly.coeffs_in(symbol)
    result = LaurentElement(MPoly.zero(poly.vars), 0)
    for c in reversed(coeffs):
        result = result * value + LaurentElement(c, 0)
    return result
