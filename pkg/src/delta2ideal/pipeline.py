"""Certificate pipeline: replay of the elimination chain, step by step.

Each step computes one displayed polynomial with the derivation engine
and compares it, exactly and up to one recorded nonzero rational scalar,
against a golden fixture transcribed from the reference derivation.  The
ordered results form a machine-readable certificate.

Known text anomalies (both surfaced in the certificate, never silently
patched):

* the kappa_1-linear condition as printed starts ``12*b^4 - 12*b^4*m``;
  the computed coefficient starts ``12*b^4*g - 12*b^4*m`` (confirmed by
  its divisibility by ``g - m``).  Fixture ``kappa1_cond`` stores the
  computed reading, ``kappa1_cond_literal`` the printed one.
* the printed omega-linear equation of step S11 repeats the pair
  ``444*g^3*m^3 + 664*g^3*m``; fixture ``eq9`` stores the engine-computed
  polynomial (normalized), ``eq9_literal`` the printed text, and the step
  reports whether the difference is exactly the duplicated pair.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .derivation import (
    E3,
    XI,
    DerivationTable,
    MixedParity,
    check_derivation_consistency,
    differentiate_along,
    eliminate_kappa1,
    kappa1_relation,
    to_omega,
    from_omega,
)
from .exact import (
    CANONICAL,
    AlgebraError,
    LaurentElement,
    MPoly,
    NonDivisible,
    STRATEGY_INTERP,
    STRATEGY_SYLVESTER,
    VarTable,
    format_poly,
    parse_poly,
    resultant,
)

EXTENDED = CANONICAL.extend("k3")

#: fixtures whose text mentions the symbolic connection coefficient k3
EXTENDED_FIXTURES = {"cd6", "cd8_rhs"}

STEP_IDS = [f"S{i}" for i in range(1, 14)]

STEP_DEPS: dict[str, tuple[str, ...]] = {
    "S1": (),
    "S2": ("S1",),
    "S3": ("S1",),
    "S4": (),
    "S5": ("S4",),
    "S6": ("S4", "S5"),
    "S7": ("S6",),
    "S8": ("S6", "S7"),
    "S9": (),
    "S10": (),
    "S11": ("S8",),
    "S12": ("S6", "S11"),
    "S13": ("S8", "S12"),
}


class FixtureError(Exception):
    """A golden fixture is missing or unreadable."""


class PipelineAbort(Exception):
    """A step hit a structural error (parity, divisibility) and cannot continue."""


# ---------------------------------------------------------------------------
# result containers
# ---------------------------------------------------------------------------


@dataclass
class PartCheck:
    name: str
    verdict: str
    scalar: Fraction | None = None
    computed: str = ""
    golden: str | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "scalar": _scalar_str(self.scalar),
            "computed": self.computed,
            "golden": self.golden,
        }


@dataclass
class PipelineStep:
    id: str
    description: str
    anchor: str
    computed: MPoly | None = None
    golden: MPoly | None = None
    scalar: Fraction | None = None
    verdict: str = "no-golden"
    runtime_ms: float = 0.0
    parts: list[PartCheck] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "anchor": self.anchor,
            "verdict": self.verdict,
            "scalar": _scalar_str(self.scalar),
            "computed": format_poly(self.computed) if self.computed else None,
            "golden": format_poly(self.golden) if self.golden else None,
            "runtime_ms": round(self.runtime_ms, 3),
            "parts": [p.to_json() for p in self.parts],
            "notes": self.notes,
        }


@dataclass
class Certificate:
    steps: list[PipelineStep]
    overall: str
    k_mu_coefficients: list[str]
    engine_version: str
    strategy: str
    fixture_hashes: dict[str, str]
    notes: list[str]
    total_runtime_ms: float
    generated_at: str

    def to_json(self) -> dict:
        return {
            "engine_version": self.engine_version,
            "strategy": self.strategy,
            "overall": self.overall,
            "steps": [s.to_json() for s in self.steps],
            "k_mu_coefficients": self.k_mu_coefficients,
            "fixture_hashes": self.fixture_hashes,
            "notes": self.notes,
            "total_runtime_ms": round(self.total_runtime_ms, 3),
            "generated_at": self.generated_at,
        }

    def write(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


def _scalar_str(s: Fraction | None) -> str | None:
    if s is None:
        return None
    return str(s)


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def default_fixture_dir() -> Path:
    return Path(resources.files("delta2ideal") / "fixtures")


class FixtureSet:
    """Golden polynomials keyed by fixture stem, plus raw bytes for hashing."""

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory else default_fixture_dir()
        if not self.directory.is_dir():
            raise FixtureError(f"fixture directory not found: {self.directory}")
        self.raw: dict[str, str] = {}
        self.polys: dict[str, MPoly] = {}
        self.table: DerivationTable | None = None
        for path in sorted(self.directory.glob("*.txt")):
            text = path.read_text()
            stem = path.stem
            self.raw[stem] = text
            if stem == "derivation_table":
                self.table = DerivationTable.parse(text)
            else:
                vars = EXTENDED if stem in EXTENDED_FIXTURES else CANONICAL
                try:
                    self.polys[stem] = parse_poly(text, vars)
                except AlgebraError as exc:
                    raise FixtureError(f"fixture {stem!r} unreadable: {exc}") from exc
        if self.table is None:
            raise FixtureError("derivation_table fixture missing")

    def poly(self, stem: str) -> MPoly:
        try:
            return self.polys[stem]
        except KeyError:
            raise FixtureError(f"missing golden fixture {stem!r}") from None

    def hashes(self) -> dict[str, str]:
        return {
            stem: hashlib.sha256(text.encode()).hexdigest()
            for stem, text in sorted(self.raw.items())
        }


# ---------------------------------------------------------------------------
# comparison helpers
# ---------------------------------------------------------------------------


def _compare(step: PipelineStep, computed: MPoly, golden: MPoly) -> None:
    step.computed = computed
    step.golden = golden
    scalar = computed.content_free_equal(golden)
    if scalar is None:
        step.verdict = "mismatch"
        step.scalar = None
    else:
        step.verdict = "match"
        step.scalar = scalar


def _part(
    step: PipelineStep,
    name: str,
    computed: MPoly,
    golden: MPoly,
    scalar: Fraction,
) -> None:
    """Record a sub-comparison that must match with the step's scalar."""
    ok = computed == golden.scale(scalar)
    step.parts.append(
        PartCheck(
            name=name,
            verdict="match" if ok else "mismatch",
            scalar=scalar,
            computed=format_poly(computed),
            golden=format_poly(golden),
        )
    )
    if not ok:
        step.verdict = "mismatch"


def _beta_valuation(poly: MPoly) -> int:
    bi = poly.vars.index("b")
    return min((mono[bi] for mono in poly.terms), default=0)


def _divide_out(poly: MPoly, factor: MPoly, power: int = 1) -> MPoly:
    for _ in range(power):
        poly = poly.exact_divide(factor)
    return poly


# ---------------------------------------------------------------------------
# the pipeline
# ---------------------------------------------------------------------------


class Pipeline:
    """Runs steps S1 to S13, caching intermediate products between steps."""

    def __init__(
        self,
        fixtures: FixtureSet | None = None,
        strategy: str = "both",
    ):
        self.fixtures = fixtures or FixtureSet()
        if strategy not in ("sylvester", "interp", "both"):
            raise AlgebraError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self.table = self.fixtures.table
        self.cache: dict[str, object] = {}

    # -- shared machinery ---------------------------------------------------

    def _resultant(self, step: PipelineStep, a: MPoly, b: MPoly, symbol: str) -> MPoly:
        if self.strategy == "sylvester":
            return resultant(a, b, symbol, STRATEGY_SYLVESTER)
        if self.strategy == "interp":
            return resultant(a, b, symbol, STRATEGY_INTERP)
        r1 = resultant(a, b, symbol, STRATEGY_SYLVESTER)
        r2 = resultant(a, b, symbol, STRATEGY_INTERP)
        if r1 != r2:
            step.notes.append("resultant strategies disagree")
            step.verdict = "mismatch"
        else:
            step.notes.append("resultant strategies agree")
        return r1

    def _require(self, key: str, step_id: str):
        if key not in self.cache:
            raise PipelineAbort(f"missing product {key!r}; run {step_id} first")
        return self.cache[key]

    # -- steps ----------------------------------------------------------------

    def step_s1(self) -> PipelineStep:
        """Specialize the symbolic connection relation to k3 = g."""
        step = PipelineStep(
            id="S1",
            description="kappa_1 defining relation from the connection identity at k3=g",
            anchor="eq2: b*k = b^2 + 2*g^2 - m*g - 1",
        )
        cd6 = self.fixtures.poly("cd6")
        g_ext = MPoly.variable("g", EXTENDED)
        specialized = cd6.substitute_poly("k3", g_ext).with_vars(CANONICAL)
        golden = self.fixtures.poly("eq2")
        _compare(step, specialized, golden)
        step.notes.append("cd6 carries symbolic k3; specialized via Case (b) k3 = g")
        if specialized == kappa1_relation():
            step.notes.append("matches the engine's built-in kappa_1 relation")
        else:
            step.verdict = "mismatch"
            step.notes.append("engine built-in kappa_1 relation differs")
        self.cache["eq2"] = golden
        return step

    def step_s2(self) -> PipelineStep:
        """e3(mu) from the two gamma-derivative relations."""
        step = PipelineStep(
            id="S2",
            description="e3(mu) by eliminating e3(gamma) between cd2 and cd8 at k3=g",
            anchor="eq2.1: e3(mu) = (g - m)*k + b*g",
        )
        cd2 = self.fixtures.poly("cd2")
        cd8 = self.fixtures.poly("cd8_rhs")
        g_ext = MPoly.variable("g", EXTENDED)
        diff = cd8.substitute_poly("k3", g_ext).with_vars(CANONICAL)
        # cd8 gives e3(mu) - e3(gamma); add e3(gamma) from cd2
        computed = cd2 + diff
        _compare(step, computed, self.fixtures.poly("eq2_1"))
        b = MPoly.variable("b")
        m = MPoly.variable("m")
        ok = diff == -2 * b * m
        step.parts.append(
            PartCheck(
                name="e3(mu) - e3(gamma) at k3=g",
                verdict="match" if ok else "mismatch",
                scalar=Fraction(1),
                computed=format_poly(diff),
                golden=format_poly(-2 * b * m),
            )
        )
        if not ok:
            step.verdict = "mismatch"
        self.cache["e3mu"] = computed
        return step

    def step_s3(self) -> PipelineStep:
        """e3(beta) after removing kappa_1 from the general rule."""
        step = PipelineStep(
            id="S3",
            description="e3(beta) by eliminating kappa_1 from cd3",
            anchor="eq3: e3(beta) = b^2 + g^2 - 3*g*m + m^2 + 1",
        )
        cd3 = self.fixtures.poly("cd3_rhs")
        reduced = eliminate_kappa1(LaurentElement(cd3, 0))
        if not reduced.is_polynomial():
            raise PipelineAbort("kappa_1 elimination left a beta denominator")
        _compare(step, reduced.as_poly(), self.fixtures.poly("eq3"))
        return step

    def step_s4(self) -> PipelineStep:
        """xi-derivative of the kappa_1 relation."""
        step = PipelineStep(
            id="S4",
            description="xi-derivative of the kappa_1 relation",
            anchor="eq4: (k - 3*b)*xb + (m - 4*g)*xg = 0",
        )
        rel = LaurentElement(kappa1_relation(), 0)
        derived = differentiate_along(rel, XI, self.table)
        if not derived.is_polynomial():
            raise PipelineAbort("xi-derivative left a beta denominator")
        computed = derived.as_poly()
        _compare(step, computed, self.fixtures.poly("eq4"))
        a11 = computed.derivative("xb")
        a12 = computed.derivative("xg")
        scalar = step.scalar if step.scalar is not None else Fraction(1)
        _part(step, "a11 (xb coefficient)", a11, self.fixtures.poly("a11"), scalar)
        _part(step, "a12 (xg coefficient)", a12, self.fixtures.poly("a12"), scalar)
        self.cache["a11"] = a11
        self.cache["a12"] = a12
        self.cache["eq4"] = computed
        return step

    def step_s5(self) -> PipelineStep:
        """e3-derivative of eq4, collected in xb and xg."""
        step = PipelineStep(
            id="S5",
            description="e3-derivative of eq4 with all table rules substituted",
            anchor="eq5: a21*xb + a22*xg = 0",
        )
        eq4: MPoly = self._require("eq4", "S4")
        derived = differentiate_along(LaurentElement(eq4, 0), E3, self.table)
        if not derived.is_polynomial():
            raise PipelineAbort("e3-derivative left a beta denominator")
        computed = derived.as_poly()
        a21 = computed.coeffs_in("xb")[1]
        a22 = computed.coeffs_in("xg")[1]
        cross_free = (
            computed == a21 * MPoly.variable("xb") + a22 * MPoly.variable("xg")
            and a21.degree("xg") < 1
            and a22.degree("xb") < 1
        )
        golden = (
            self.fixtures.poly("a21") * MPoly.variable("xb")
            + self.fixtures.poly("a22") * MPoly.variable("xg")
        )
        _compare(step, computed, golden)
        scalar = step.scalar if step.scalar is not None else Fraction(1)
        _part(step, "a21 (xb coefficient)", a21, self.fixtures.poly("a21"), scalar)
        _part(step, "a22 (xg coefficient)", a22, self.fixtures.poly("a22"), scalar)
        if not cross_free:
            step.verdict = "mismatch"
            step.notes.append("expected no monomial containing both xb and xg")
        else:
            step.notes.append("no monomial contains both xb and xg")
        self.cache["a21"] = a21
        self.cache["a22"] = a22
        return step

    def step_s6(self) -> PipelineStep:
        """Vanishing determinant of the xi-gradient system, in omega form."""
        step = PipelineStep(
            id="S6",
            description="determinant a11*a22 - a21*a12 with kappa_1 eliminated, in omega",
            anchor="eq7: p1*w^2 + p2*w + p3 = 0",
        )
        a11: MPoly = self._require("a11", "S4")
        a12: MPoly = self._require("a12", "S4")
        a21: MPoly = self._require("a21", "S5")
        a22: MPoly = self._require("a22", "S5")
        det = a11 * a22 - a21 * a12
        omega = to_omega(eliminate_kappa1(LaurentElement(det, 0)))
        computed = omega.poly
        p = [self.fixtures.poly(f"p{i}") for i in (1, 2, 3)]
        w = MPoly.variable("w")
        golden = p[0] * w**2 + p[1] * w + p[2]
        _compare(step, computed, golden)
        if computed.degree("w") != 2:
            step.verdict = "mismatch"
            step.notes.append(f"omega degree {computed.degree('w')}, expected 2")
        scalar = step.scalar if step.scalar is not None else Fraction(1)
        coeffs = computed.coeffs_in("w")
        for i, name in ((2, "p1"), (1, "p2"), (0, "p3")):
            _part(
                step,
                f"{name} (w^{i} coefficient)",
                coeffs[i] if i < len(coeffs) else MPoly.zero(),
                self.fixtures.poly(name),
                scalar,
            )
        step.notes.append(f"beta power cleared: {omega.beta_cleared}")
        self.cache["eq7"] = computed
        return step

    def step_s7(self) -> PipelineStep:
        """e3-derivative of eq7; kappa_1-linear condition; omega rewrite."""
        step = PipelineStep(
            id="S7",
            description="e3-derivative of eq7, kappa_1-linear condition, then eq8",
            anchor="eq8: q1*w^3 + q2*w^2 + q3*w + q4 = 0",
        )
        eq7: MPoly = self._require("eq7", "S6")
        beta_form = from_omega(eq7)
        derived = differentiate_along(LaurentElement(beta_form, 0), E3, self.table)
        if not derived.is_polynomial():
            raise PipelineAbort("e3-derivative left a beta denominator")
        cond = derived.as_poly()
        if cond.degree("k") != 1:
            raise PipelineAbort(
                f"kappa_1-linear condition has kappa_1 degree {cond.degree('k')}"
            )
        kfix = self.fixtures.poly("kappa1_cond")
        kscalar = cond.content_free_equal(kfix)
        _part(
            step,
            "kappa_1-linear condition",
            cond,
            kfix,
            kscalar if kscalar is not None else Fraction(1),
        )
        if kscalar is None:
            step.verdict = "mismatch"
        literal = self.fixtures.poly("kappa1_cond_literal")
        delta = literal - kfix
        k = MPoly.variable("k")
        b = MPoly.variable("b")
        g = MPoly.variable("g")
        expected_delta = 12 * k * b**4 - 12 * k * b**4 * g
        step.notes.append(
            "printed condition minus computed condition = "
            + format_poly(delta)
            + (
                " (exactly the 12*b^4 term missing its g factor)"
                if delta == expected_delta
                else " (UNEXPECTED literal deviation)"
            )
        )
        omega = to_omega(eliminate_kappa1(LaurentElement(cond, 0)))
        computed = omega.poly
        q = [self.fixtures.poly(f"q{i}") for i in (1, 2, 3, 4)]
        w = MPoly.variable("w")
        golden = q[0] * w**3 + q[1] * w**2 + q[2] * w + q[3]
        _compare(step, computed, golden)
        if computed.degree("w") != 3:
            step.verdict = "mismatch"
            step.notes.append(f"omega degree {computed.degree('w')}, expected 3")
        scalar = step.scalar if step.scalar is not None else Fraction(1)
        coeffs = computed.coeffs_in("w")
        for i, name in ((3, "q1"), (2, "q2"), (1, "q3"), (0, "q4")):
            _part(
                step,
                f"{name} (w^{i} coefficient)",
                coeffs[i] if i < len(coeffs) else MPoly.zero(),
                self.fixtures.poly(name),
                scalar,
            )
        self.cache["eq8"] = computed
        return step

    def step_s8(self) -> PipelineStep:
        """First resultant: eliminate omega between eq7 and eq8."""
        step = PipelineStep(
            id="S8",
            description="resultant of eq7 and eq8 in omega; stated factors divided out",
            anchor="R1 = 32*(4*g - m)*(2*g^2 - g*m - 1)^3*f, f = 1536*g^8 + sum g_i*g^i",
        )
        eq7: MPoly = self._require("eq7", "S6")
        eq8: MPoly = self._require("eq8", "S7")
        res = self._resultant(step, eq7, eq8, "w")
        lin = self.fixtures.poly("factor_linear")
        quad = self.fixtures.poly("factor_quadratic")
        try:
            cof = _divide_out(res, lin)
            cof = _divide_out(cof, quad, power=3)
        except NonDivisible as exc:
            step.verdict = "mismatch"
            step.notes.append(
                "stated factor does not divide: remainder "
                + format_poly(exc.remainder)
            )
            return step
        golden = self.fixtures.poly("f_octic")
        _compare(step, cof, golden)
        step.notes.append(
            "factors divided out exactly: (4*g - m) and (2*g^2 - g*m - 1)^3"
        )
        scalar = step.scalar if step.scalar is not None else Fraction(1)
        normalized = cof.scale(1 / scalar)
        lead = normalized.coeffs_in("g")[8] if normalized.degree("g") == 8 else MPoly.zero()
        if lead == MPoly.constant(1536):
            step.notes.append("octic leading coefficient 1536 confirmed")
        else:
            step.verdict = "mismatch"
            step.notes.append("octic leading coefficient differs from 1536")
        gcoeffs = normalized.coeffs_in("g")
        for i in range(8):
            _part(
                step,
                f"g{i} (gamma^{i} coefficient)",
                gcoeffs[i] if i < len(gcoeffs) else MPoly.zero(),
                self.fixtures.poly(f"g{i}"),
                Fraction(1),
            )
        self.cache["f_octic"] = normalized
        return step

    def step_s9(self) -> PipelineStep:
        """Case (b.2.i): the locus 4*g - m = 0 forces mu = g = 0."""
        step = PipelineStep(
            id="S9",
            description="e3-derivative of 4*g - m on its zero locus",
            anchor="b2i: m*(9*m^2 + 208*b^2 + 72) = 0",
        )
        g = MPoly.variable("g")
        m = MPoly.variable("m")
        derived = differentiate_along(
            LaurentElement(4 * g - m, 0), E3, self.table
        )
        reduced = eliminate_kappa1(derived)
        intermediate = reduced.numerator
        scalar0 = intermediate.content_free_equal(
            self.fixtures.poly("b2i_intermediate")
        )
        _part(
            step,
            "intermediate cubic",
            intermediate,
            self.fixtures.poly("b2i_intermediate"),
            scalar0 if scalar0 is not None else Fraction(1),
        )
        final = intermediate.substitute_poly("g", m.scale(Fraction(1, 4)))
        _compare(step, final, self.fixtures.poly("b2i_final"))
        step.notes.append("conclusion: mu = gamma = 0, minimal ruled")
        return step

    def step_s10(self) -> PipelineStep:
        """Case (b.2.ii): the locus 2*g^2 - g*m - 1 = 0 is empty."""
        step = PipelineStep(
            id="S10",
            description="e3-derivative of 2*g^2 - g*m - 1 on its zero locus",
            anchor="b2ii: b^2*(2*m^4 + 15*m^2 - 9) = 0",
        )
        quad = self.fixtures.poly("factor_quadratic")
        derived = differentiate_along(LaurentElement(quad, 0), E3, self.table)
        reduced = eliminate_kappa1(derived)
        intermediate = reduced.numerator
        scalar0 = intermediate.content_free_equal(
            self.fixtures.poly("b2ii_intermediate")
        )
        _part(
            step,
            "intermediate quartic",
            intermediate,
            self.fixtures.poly("b2ii_intermediate"),
            scalar0 if scalar0 is not None else Fraction(1),
        )
        res = self._resultant(step, intermediate, quad, "g")
        golden = self.fixtures.poly("b2ii_final")
        excess = _beta_valuation(res) - _beta_valuation(golden)
        if excess > 0:
            b = MPoly.variable("b")
            res = _divide_out(res, b, power=excess)
            step.notes.append(
                f"resultant carries an extra beta^{excess} factor (beta is nowhere zero)"
            )
        _compare(step, res, golden)
        step.notes.append(
            "conclusion: contradiction with constant mean curvature; empty set"
        )
        return step

    def step_s11(self) -> PipelineStep:
        """Case (b.2.iii): e3-derivative of the octic, omega-linear condition."""
        step = PipelineStep(
            id="S11",
            description="e3-derivative of the octic f, kappa_1 eliminated, in omega",
            anchor="eq9: omega-linear condition on the f = 0 locus",
        )
        f: MPoly = self._require("f_octic", "S8")
        derived = differentiate_along(LaurentElement(f, 0), E3, self.table)
        reduced = eliminate_kappa1(derived)
        omega = to_omega(reduced)
        computed = omega.poly
        golden = self.fixtures.poly("eq9")
        _compare(step, computed, golden)
        if computed.degree("w") != 1:
            step.verdict = "mismatch"
            step.notes.append(f"omega degree {computed.degree('w')}, expected 1")
        literal = self.fixtures.poly("eq9_literal")
        delta = literal - golden
        dup = parse_poly("444*g^3*m^3*w + 664*g^3*m*w")
        if delta == dup:
            step.notes.append(
                "printed text minus golden is exactly the duplicated pair "
                "444*g^3*m^3 + 664*g^3*m (in the omega coefficient)"
            )
        else:
            step.verdict = "mismatch"
            step.notes.append(
                "literal text deviates beyond the duplicated pair: "
                + format_poly(delta)
            )
        scalar = step.scalar if step.scalar is not None else Fraction(1)
        normalized = computed.scale(1 / scalar)
        wcoeffs = normalized.coeffs_in("w")
        g = MPoly.variable("g")
        checks = [
            ("omega coefficient leading gamma^8 term", wcoeffs[1].coeffs_in("g")[8]
             if len(wcoeffs) > 1 and wcoeffs[1].degree("g") == 8 else MPoly.zero(),
             MPoly.constant(7808)),
            ("omega-free leading gamma^10 term", wcoeffs[0].coeffs_in("g")[10]
             if wcoeffs[0].degree("g") == 10 else MPoly.zero(),
             MPoly.constant(7808)),
        ]
        for name, got, want in checks:
            ok = got == want
            step.parts.append(
                PartCheck(
                    name=name,
                    verdict="match" if ok else "mismatch",
                    scalar=Fraction(1),
                    computed=format_poly(got),
                    golden=format_poly(want),
                )
            )
            if not ok:
                step.verdict = "mismatch"
        self.cache["eq9"] = computed
        return step

    def step_s12(self) -> PipelineStep:
        """Second resultant: eliminate omega between eq7 and eq9."""
        step = PipelineStep(
            id="S12",
            description="resultant of eq7 and eq9 in omega; quadratic factor divided out",
            anchor="(2*g^2 - g*m - 1) * sum h_i(m)*g^i = 0",
        )
        eq7: MPoly = self._require("eq7", "S6")
        eq9: MPoly = self._require("eq9", "S11")
        res = self._resultant(step, eq7, eq9, "w")
        quad = self.fixtures.poly("factor_quadratic")
        try:
            cof = _divide_out(res, quad)
        except NonDivisible as exc:
            step.verdict = "mismatch"
            step.notes.append(
                "quadratic factor does not divide: remainder "
                + format_poly(exc.remainder)
            )
            return step
        golden = self.fixtures.poly("h_sum")
        _compare(step, cof, golden)
        scalar = step.scalar if step.scalar is not None else Fraction(1)
        normalized = cof.scale(1 / scalar)
        hcoeffs = normalized.coeffs_in("g")
        for i in range(19):
            _part(
                step,
                f"h{i} (gamma^{i} coefficient)",
                hcoeffs[i] if i < len(hcoeffs) else MPoly.zero(),
                self.fixtures.poly(f"h{i}"),
                Fraction(1),
            )
        self.cache["h_sum"] = normalized
        return step

    def step_s13(self) -> PipelineStep:
        """Final resultant in gamma; mu-adic valuation and cofactor degree."""
        step = PipelineStep(
            id="S13",
            description="resultant of f and the h-sum in gamma: mu^36 times a degree-116 cofactor",
            anchor="R2(m) = m^36 * k(m), deg k = 116",
        )
        f: MPoly = self._require("f_octic", "S8")
        h: MPoly = self._require("h_sum", "S12")
        res = self._resultant(step, f, h, "g")
        step.computed = res
        mi = res.vars.index("m")
        if res.is_zero():
            step.verdict = "mismatch"
            step.notes.append("resultant vanished identically")
            return step
        valuation = min(mono[mi] for mono in res.terms)
        degree = res.degree("m")
        cof_degree = degree - valuation
        ok = valuation == 36 and cof_degree == 116
        step.verdict = "match" if ok else "mismatch"
        step.notes.append(f"mu-adic valuation {valuation} (expected 36)")
        step.notes.append(f"cofactor degree {cof_degree} (expected 116)")
        coeff_map = {mono[mi]: c for mono, c in res.terms.items()}
        k0 = coeff_map.get(valuation, Fraction(0))
        if k0 == 0:
            step.verdict = "mismatch"
        step.notes.append(f"cofactor constant term nonzero: {k0 != 0}")
        # ascending coefficients of the cofactor k; exact integers expected
        ks = []
        for power in range(valuation, degree + 1):
            c = coeff_map.get(power, Fraction(0))
            ks.append(str(c))
        self.cache["k_mu_coefficients"] = ks
        step.notes.append("cofactor coefficients recorded; no golden listing exists")
        return step

    # -- driver ------------------------------------------------------------------

    STEP_METHODS = {
        "S1": step_s1,
        "S2": step_s2,
        "S3": step_s3,
        "S4": step_s4,
        "S5": step_s5,
        "S6": step_s6,
        "S7": step_s7,
        "S8": step_s8,
        "S9": step_s9,
        "S10": step_s10,
        "S11": step_s11,
        "S12": step_s12,
        "S13": step_s13,
    }

    def run(self, selected: list[str] | None = None) -> Certificate:
        wanted = _closure(selected) if selected else list(STEP_IDS)
        t_start = time.perf_counter()
        steps: list[PipelineStep] = []
        aborted: str | None = None
        for step_id in STEP_IDS:
            if step_id not in wanted:
                continue
            method = self.STEP_METHODS[step_id]
            t0 = time.perf_counter()
            if aborted is not None:
                step = PipelineStep(
                    id=step_id,
                    description="skipped",
                    anchor="",
                    verdict="mismatch",
                    notes=[f"skipped: pipeline aborted at {aborted}"],
                )
                steps.append(step)
                continue
            try:
                step = method(self)
            except (PipelineAbort, MixedParity) as exc:
                step = PipelineStep(
                    id=step_id,
                    description="aborted",
                    anchor="",
                    verdict="mismatch",
                    notes=[f"aborted: {exc}"],
                )
                aborted = step_id
            step.runtime_ms = (time.perf_counter() - t0) * 1000.0
            steps.append(step)
        overall = "match"
        for step in steps:
            if step.verdict == "mismatch":
                overall = "mismatch"
                break
        consistency = check_derivation_consistency(self.table)
        notes = [
            "derivation-table consistency residual is "
            + ("identically zero" if consistency.consistent else "NONZERO"),
            "mean curvature convention: the trace of the shape operator is 2*m, "
            "so H = 2*m/3 under the trace/3 definition while the derivation "
            "states H = m/3; only xi(m) = 0 is used, which holds either way",
        ]
        if not consistency.consistent:
            overall = "mismatch"
        return Certificate(
            steps=steps,
            overall=overall,
            k_mu_coefficients=list(self.cache.get("k_mu_coefficients", [])),
            engine_version=__version__,
            strategy=self.strategy,
            fixture_hashes=self.fixtures.hashes(),
            notes=notes,
            total_runtime_ms=(time.perf_counter() - t_start) * 1000.0,
            generated_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        )


def _closure(selected: list[str]) -> list[str]:
    seen: set[str] = set()

    def visit(sid: str):
        if sid in seen:
            return
        if sid not in STEP_DEPS:
            raise AlgebraError(f"unknown step id {sid!r}")
        for dep in STEP_DEPS[sid]:
            visit(dep)
        seen.add(sid)

    for sid in selected:
        visit(sid.strip().upper())
    return [s for s in STEP_IDS if s in seen]


def run_pipeline(
    fixtures_dir: str | Path | None = None,
    strategy: str = "both",
    steps: list[str] | None = None,
) -> Certificate:
    """Build and run the pipeline; the main library entry point."""
    pipeline = Pipeline(FixtureSet(fixtures_dir), strategy)
    return pipeline.run(steps)
