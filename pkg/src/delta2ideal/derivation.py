"""Formal frame-derivative engine for the Case (b) elimination chain.

A :class:`DerivationTable` holds, for each generator variable, its image
under the two frame derivations (along e3, the direction transverse to
the integrable leaves, and along the Reeb direction xi).  The engine
applies the chain rule to arbitrary beta-denominated expressions, removes
kappa_1 through its defining relation, and rewrites even beta powers in
terms of omega = beta^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .exact import CANONICAL, AlgebraError, LaurentElement, MPoly, parse_poly
from .exact.laurent import substitute

E3 = "e3"
XI = "xi"
DIRECTIONS = (E3, XI)


class MissingRule(AlgebraError):
    """A variable in the expression has no rule for the requested direction."""


class MixedParity(AlgebraError):
    """Cleared expression mixes even and odd beta powers; upstream derivation bug."""


def kappa1_numerator(vars=CANONICAL) -> MPoly:
    """The polynomial N with kappa_1 = N / beta."""
    b = MPoly.variable("b", vars)
    g = MPoly.variable("g", vars)
    m = MPoly.variable("m", vars)
    return b**2 + 2 * g**2 - m * g - 1


def kappa1_value(vars=CANONICAL) -> LaurentElement:
    return LaurentElement(kappa1_numerator(vars), 1)


def kappa1_relation(vars=CANONICAL) -> MPoly:
    """beta*kappa_1 - N = 0, the defining relation of kappa_1."""
    b = MPoly.variable("b", vars)
    k = MPoly.variable("k", vars)
    return b * k - kappa1_numerator(vars)


@dataclass(frozen=True)
class Relation:
    """A polynomial equation lhs = 0 with a provenance label."""

    lhs: MPoly
    label: str

    def __post_init__(self):
        if self.lhs.is_zero():
            raise AlgebraError(f"relation {self.label!r} has zero left-hand side")


class DerivationTable:
    """Per-variable images under the e3 and xi derivations."""

    def __init__(self, rules: dict[tuple[str, str], LaurentElement]):
        self._rules = dict(rules)

    def rule(self, symbol: str, direction: str) -> LaurentElement:
        try:
            return self._rules[(symbol, direction)]
        except KeyError:
            raise MissingRule(
                f"no {direction} rule for variable {symbol!r}"
            ) from None

    def has_rule(self, symbol: str, direction: str) -> bool:
        return (symbol, direction) in self._rules

    def items(self):
        return self._rules.items()

    @classmethod
    def parse(cls, text: str, vars=CANONICAL) -> "DerivationTable":
        """Read the fixture format: one `<var> <direction>: <poly>` per line."""
        rules: dict[tuple[str, str], LaurentElement] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, body = line.partition(":")
            parts = head.split()
            if len(parts) != 2 or parts[1] not in DIRECTIONS or not body.strip():
                raise AlgebraError(
                    f"bad derivation rule on line {lineno}: {raw!r}"
                )
            symbol, direction = parts
            vars.index(symbol)  # validates the symbol
            rules[(symbol, direction)] = LaurentElement(
                parse_poly(body, vars), 0
            )
        return cls(rules)


def differentiate_along(
    expr: LaurentElement, direction: str, table: DerivationTable
) -> LaurentElement:
    """Chain rule along one frame direction, exact in the beta-Laurent ring.

    D(P / beta^k) = D(P)/beta^k - k * D(beta) * P / beta^(k+1).
    """
    if direction not in DIRECTIONS:
        raise AlgebraError(f"unknown direction {direction!r}")
    num = expr.numerator
    vars = num.vars
    dnum = LaurentElement(MPoly.zero(vars), 0)
    for symbol in num.variables_present():
        dnum = dnum + LaurentElement(num.derivative(symbol), 0) * table.rule(
            symbol, direction
        )
    k = expr.beta_power
    if k == 0:
        return dnum
    result = dnum * LaurentElement(MPoly.constant(1, vars), k)
    dbeta = table.rule("b", direction)
    correction = dbeta * LaurentElement(num, k + 1)
    return result - correction.scale(k)


def eliminate_kappa1(expr: LaurentElement) -> LaurentElement:
    """Replace kappa_1 by its beta-denominated defining value."""
    num = expr.numerator
    if num.degree("k") < 1:
        return expr
    replaced = substitute(num, "k", kappa1_value(num.vars))
    return LaurentElement(replaced.numerator, replaced.beta_power + expr.beta_power)


class OmegaForm(NamedTuple):
    """Result of the omega rewrite: polynomial plus the beta power cleared."""

    poly: MPoly
    beta_cleared: int


def to_omega(expr: LaurentElement) -> OmegaForm:
    """Rewrite even beta powers as omega after clearing the denominator.

    Clearing multiplies the underlying relation by beta^beta_power; if
    every surviving monomial then has odd beta degree, one extra beta
    multiplication (recorded) restores evenness.  Mixed parity signals a
    derivation mistake upstream and raises.
    """
    num = expr.numerator
    vars = num.vars
    if num.degree("w") > 0:
        raise AlgebraError("expression already mentions omega")
    cleared = expr.beta_power
    bi = vars.index("b")
    parities = {mono[bi] & 1 for mono in num.terms}
    if parities == {0, 1}:
        raise MixedParity(
            "cleared expression mixes even and odd beta powers"
        )
    if parities == {1}:
        b = MPoly.variable("b", vars)
        num = num * b
        cleared += 1
    wi = vars.index("w")
    out = {}
    for mono, c in num.terms.items():
        e = list(mono)
        e[wi] = e[wi] + e[bi] // 2
        e[bi] = 0
        out[tuple(e)] = c
    return OmegaForm(MPoly(out, vars), cleared)


def from_omega(poly: MPoly) -> MPoly:
    """Substitute omega back to beta^2 (round-trip check helper)."""
    b = MPoly.variable("b", poly.vars)
    return poly.substitute_poly("w", b * b)


@dataclass
class ConsistencyReport:
    """Residual of deriving the kappa_1 relation along e3, then eliminating."""

    residual: MPoly
    consistent: bool = field(init=False)

    def __post_init__(self):
        self.consistent = self.residual.is_zero()


def check_derivation_consistency(table: DerivationTable) -> ConsistencyReport:
    """The e3 image of (beta*kappa_1 - N) must vanish modulo kappa_1 = N/beta.

    Equivalently: the e3 rule for kappa_1 agrees with the quotient-rule
    derivative of its defining value.  A nonzero residual is reported,
    not raised.
    """
    rel = LaurentElement(kappa1_relation(), 0)
    derived = differentiate_along(rel, E3, table)
    reduced = eliminate_kappa1(derived)
    return ConsistencyReport(residual=reduced.numerator)
