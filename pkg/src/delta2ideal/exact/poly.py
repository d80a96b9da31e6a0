"""Sparse multivariate polynomials over exact rationals.

Coefficients are ``fractions.Fraction`` throughout (always reduced,
denominator >= 1, zero is 0/1), monomials are exponent tuples against a
shared :class:`VarTable`, and the term order is graded reverse
lexicographic with the table's precedence.  No floating point enters this
module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator

Monomial = tuple[int, ...]
Coeff = Fraction | int


class AlgebraError(Exception):
    """Base class for structural errors in the exact kernel."""


class VariableMismatch(AlgebraError):
    """Operands reference different variable tables, or an unknown symbol."""


class NonDivisible(AlgebraError):
    """Exact division failed; carries the nonzero remainder for diagnostics."""

    def __init__(self, message: str, remainder: "MPoly"):
        super().__init__(message)
        self.remainder = remainder


class PolyParseError(AlgebraError):
    """Fixture text did not conform to the polynomial grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class VarTable:
    """Ordered, immutable list of variable symbols.

    The canonical table used by the certificate pipeline is
    ``b g m w k xb xg`` (in that precedence).  Polynomials only combine
    when they reference the same table instance or an equal symbol list.
    """

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[str]):
        syms = tuple(symbols)
        if len(set(syms)) != len(syms):
            raise VariableMismatch(f"duplicate symbols in {syms}")
        self.symbols = syms
        self._index = {s: i for i, s in enumerate(syms)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VarTable) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"VarTable({', '.join(self.symbols)})"

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise VariableMismatch(
                f"unknown variable {symbol!r}; table has {self.symbols}"
            ) from None

    def extend(self, *extra: str) -> "VarTable":
        return VarTable(self.symbols + extra)


#: beta, gamma, mu, omega (= beta^2), kappa_1, xi(beta), xi(gamma)
CANONICAL = VarTable(("b", "g", "m", "w", "k", "xb", "xg"))


def grevlex_key(mono: Monomial) -> tuple:
    """Sort key; larger key = larger monomial in graded reverse lex."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


class MPoly:
    """Immutable sparse polynomial: map from exponent tuple to Fraction.

    Zero coefficients are never stored; the zero polynomial has an empty
    term map.  All arithmetic is exact and returns new objects.
    """

    __slots__ = ("terms", "vars")

    def __init__(self, terms: dict[Monomial, Coeff], vars: VarTable):
        n = len(vars)
        clean: dict[Monomial, Fraction] = {}
        for mono, c in terms.items():
            if len(mono) != n:
                raise VariableMismatch(
                    f"monomial {mono} has wrong arity for {vars}"
                )
            frac = c if isinstance(c, Fraction) else Fraction(c)
            if frac:
                clean[mono] = frac
        self.terms = clean
        self.vars = vars

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction], vars: VarTable) -> "MPoly":
        # internal: caller guarantees clean terms (no zeros, right arity)
        obj = object.__new__(cls)
        obj.terms = terms
        obj.vars = vars
        return obj

    @classmethod
    def zero(cls, vars: VarTable = CANONICAL) -> "MPoly":
        return cls._raw({}, vars)

    @classmethod
    def constant(cls, c: Coeff, vars: VarTable = CANONICAL) -> "MPoly":
        frac = Fraction(c)
        if not frac:
            return cls._raw({}, vars)
        return cls._raw({(0,) * len(vars): frac}, vars)

    @classmethod
    def variable(cls, symbol: str, vars: VarTable = CANONICAL) -> "MPoly":
        i = vars.index(symbol)
        mono = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls._raw({mono: Fraction(1)}, vars)

    # -- basic queries -------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.constant(other, self.vars)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def degree(self, symbol: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self.vars.index(symbol)
        if not self.terms:
            return -1
        return max(mono[i] for mono in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(mono) for mono in self.terms)

    def variables_present(self) -> list[str]:
        present = [False] * len(self.vars)
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    present[i] = True
        return [s for s, p in zip(self.vars.symbols, present) if p]

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded reverse lex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading(self) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        mono = max(self.terms, key=grevlex_key)
        return mono, self.terms[mono]

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    # -- ring operations -------------------------------------------------

    def _check(self, other: "MPoly") -> None:
        if self.vars != other.vars:
            raise VariableMismatch(
                f"cannot combine polynomials over {self.vars} and {other.vars}"
            )

    def __add__(self, other: "MPoly | Coeff") -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other, self.vars)
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return MPoly._raw(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self.terms.items()}, self.vars)

    def __sub__(self, other: "MPoly | Coeff") -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other, self.vars)
        return self + (-other)

    def __rsub__(self, other: Coeff) -> "MPoly":
        return (-self) + other

    def __mul__(self, other: "MPoly | Coeff") -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):  # iterate the smaller map outside
            a, b = b, a
        out: dict[Monomial, Fraction] = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                mono = tuple(x + y for x, y in zip(m1, m2))
                s = get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return MPoly._raw(out, self.vars)

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> "MPoly":
        frac = Fraction(c)
        if not frac:
            return MPoly.zero(self.vars)
        return MPoly._raw({m: v * frac for m, v in self.terms.items()}, self.vars)

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise AlgebraError("negative polynomial power")
        result = MPoly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and substitution ----------------------------------------

    def derivative(self, symbol: str) -> "MPoly":
        """Formal partial derivative in one table variable."""
        i = self.vars.index(symbol)
        out: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e:
                lowered = mono[:i] + (e - 1,) + mono[i + 1 :]
                s = out.get(lowered, 0) + c * e
                if s:
                    out[lowered] = s
                else:
                    out.pop(lowered, None)
        return MPoly._raw(out, self.vars)

    def coeffs_in(self, symbol: str) -> list["MPoly"]:
        """Coefficients by ascending power of one variable.

        Entry ``i`` has the variable's exponent zeroed out; the list has
        ``degree+1`` entries (a single zero polynomial for input zero).
        """
        i = self.vars.index(symbol)
        d = self.degree(symbol)
        if d < 0:
            return [MPoly.zero(self.vars)]
        buckets: list[dict[Monomial, Fraction]] = [{} for _ in range(d + 1)]
        for mono, c in self.terms.items():
            stripped = mono[:i] + (0,) + mono[i + 1 :]
            buckets[mono[i]][stripped] = c
        return [MPoly._raw(b, self.vars) for b in buckets]

    def substitute_poly(self, symbol: str, value: "MPoly") -> "MPoly":
        """Replace a variable by a polynomial (Horner evaluation)."""
        self._check(value)
        coeffs = self.coeffs_in(symbol)
        result = MPoly.zero(self.vars)
        for c in reversed(coeffs):
            result = result * value + c
        return result

    def eval_at(self, assignment: dict[str, Coeff]) -> "MPoly":
        """Substitute scalars for some variables; others stay symbolic."""
        out = self
        for symbol, value in assignment.items():
            out = out.substitute_poly(symbol, MPoly.constant(value, self.vars))
        return out

    def eval_scalar(self, assignment: dict[str, Coeff]) -> Fraction:
        """Full evaluation; every present variable must be assigned."""
        out = self.eval_at(assignment)
        if out.total_degree() > 0:
            missing = out.variables_present()
            raise AlgebraError(f"evaluation left free variables {missing}")
        return out.constant_term()

    # -- division ---------------------------------------------------------

    def divmod_by(self, divisor: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Single-divisor division against the graded reverse lex order."""
        self._check(divisor)
        if divisor.is_zero():
            raise AlgebraError("division by the zero polynomial")
        div_mono, div_coeff = divisor.leading()
        quotient: dict[Monomial, Fraction] = {}
        rem: dict[Monomial, Fraction] = {}
        work = dict(self.terms)
        while work:
            mono = max(work, key=grevlex_key)
            shift = tuple(a - b for a, b in zip(mono, div_mono))
            if any(e < 0 for e in shift):
                rem[mono] = work.pop(mono)
                continue
            factor = work[mono] / div_coeff
            quotient[shift] = factor
            # the leading target cancels exactly, shrinking the work set
            for m2, c2 in divisor.terms.items():
                target = tuple(x + y for x, y in zip(shift, m2))
                s = work.get(target, 0) - factor * c2
                if s:
                    work[target] = s
                else:
                    work.pop(target, None)
        return MPoly._raw(quotient, self.vars), MPoly._raw(rem, self.vars)

    def exact_divide(self, divisor: "MPoly") -> "MPoly":
        """Quotient when the division is exact; NonDivisible otherwise."""
        q, r = self.divmod_by(divisor)
        if r:
            raise NonDivisible("division left a nonzero remainder", r)
        return q

    # -- normal form --------------------------------------------------------

    def normalize_primitive(self) -> tuple["MPoly", Fraction]:
        """Split into (primitive part, content scalar).

        The primitive part has integer coefficients with gcd 1 and a
        positive leading coefficient; ``self == scalar * primitive``.
        """
        if not self.terms:
            raise AlgebraError("cannot normalize the zero polynomial")
        denom_lcm = 1
        for c in self.terms.values():
            denom_lcm = lcm(denom_lcm, c.denominator)
        num_gcd = 0
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, c.numerator * (denom_lcm // c.denominator))
        scalar = Fraction(num_gcd, denom_lcm)
        if self.leading()[1] < 0:
            scalar = -scalar
        return self.scale(1 / scalar), scalar

    def content_free_equal(self, other: "MPoly") -> Fraction | None:
        """Scalar c with ``self == c * other``, or None if no such c."""
        self._check(other)
        if self.is_zero() or other.is_zero():
            return None
        p1, c1 = self.normalize_primitive()
        p2, c2 = other.normalize_primitive()
        if p1 == p2:
            return c1 / c2
        return None

    # -- variable table surgery ----------------------------------------------

    def with_vars(self, table: VarTable) -> "MPoly":
        """Re-express over another table holding all present variables."""
        positions = []
        for i, s in enumerate(self.vars.symbols):
            if s in table._index:
                positions.append((i, table.index(s)))
            else:
                positions.append((i, None))
        n = len(table)
        out: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            fresh = [0] * n
            for src, dst in positions:
                if mono[src] == 0:
                    continue
                if dst is None:
                    raise VariableMismatch(
                        f"variable {self.vars.symbols[src]!r} not in target table"
                    )
                fresh[dst] = mono[src]
            out[tuple(fresh)] = c
        return MPoly._raw(out, table)

    # -- text form --------------------------------------------------------------

    def __repr__(self) -> str:
        return f"MPoly({format_poly(self)})"

    def __str__(self) -> str:
        return format_poly(self)


# --------------------------------------------------------------------------
# fixture text grammar
#
#   poly    := [sign] term ((`+`|`-`) term)*
#   term    := coeff [`*` factors] | factors
#   coeff   := int [`/` int]
#   factors := var [`^` int] (`*` var [`^` int])*
#
# `#` starts a comment until end of line; whitespace is insignificant.
# --------------------------------------------------------------------------


def _tokenize(text: str) -> Iterator[tuple[str, str, int, int]]:
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "+-*/^()":
            yield ("op", ch, line, col)
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("int", text[i:j], line, col)
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("name", text[i:j], line, col)
            col += j - i
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r}", line, col)


def parse_poly(text: str, vars: VarTable = CANONICAL) -> MPoly:
    """Parse fixture text into a polynomial over the given table."""
    tokens = list(_tokenize(text))
    if not tokens:
        raise PolyParseError("empty polynomial text", 1, 1)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        if tok is None:
            last = tokens[-1]
            raise PolyParseError("unexpected end of input", last[2], last[3])
        pos += 1
        return tok

    def parse_int() -> int:
        kind, val, line, col = take()
        if kind != "int":
            raise PolyParseError(f"expected integer, got {val!r}", line, col)
        return int(val)

    n = len(vars)
    total: dict[Monomial, Fraction] = {}

    def parse_term(sign: int) -> None:
        coeff = Fraction(sign)
        expo = [0] * n
        saw_factor = False
        expect_factor = True
        while True:
            tok = peek()
            if tok is None:
                break
            kind, val, line, col = tok
            if expect_factor:
                if kind == "int":
                    take()
                    num = int(val)
                    if peek() and peek()[1] == "/" and peek()[0] == "op":
                        take()
                        den = parse_int()
                        if den == 0:
                            raise PolyParseError("zero denominator", line, col)
                        coeff *= Fraction(num, den)
                    else:
                        coeff *= num
                    saw_factor = True
                elif kind == "name":
                    take()
                    idx = vars._index.get(val)
                    if idx is None:
                        raise PolyParseError(f"unknown variable {val!r}", line, col)
                    power = 1
                    if peek() and peek()[:2] == ("op", "^"):
                        take()
                        power = parse_int()
                        if power < 0:
                            raise PolyParseError("negative exponent", line, col)
                    expo[idx] += power
                    saw_factor = True
                else:
                    raise PolyParseError(f"expected term, got {val!r}", line, col)
                expect_factor = False
            else:
                if kind == "op" and val == "*":
                    take()
                    expect_factor = True
                else:
                    break
        if expect_factor or not saw_factor:
            last = tokens[min(pos, len(tokens) - 1)]
            raise PolyParseError("dangling operator", last[2], last[3])
        mono = tuple(expo)
        s = total.get(mono, Fraction(0)) + coeff
        if s:
            total[mono] = s
        else:
            total.pop(mono, None)

    # leading sign
    first = peek()
    sign = 1
    if first[0] == "op" and first[1] in "+-":
        take()
        sign = -1 if first[1] == "-" else 1
    parse_term(sign)
    while peek() is not None:
        kind, val, line, col = take()
        if kind != "op" or val not in "+-":
            raise PolyParseError(f"expected + or -, got {val!r}", line, col)
        parse_term(-1 if val == "-" else 1)
    return MPoly._raw(total, vars)


def format_poly(poly: MPoly) -> str:
    """Canonical text: descending graded reverse lex, sign absorbed.

    Round-trips exactly through :func:`parse_poly` (coefficients are kept
    verbatim; content normalization is the caller's business).
    """
    if poly.is_zero():
        return "0"
    pieces: list[str] = []
    for idx, (mono, coeff) in enumerate(poly.sorted_terms()):
        factors = [
            sym if e == 1 else f"{sym}^{e}"
            for sym, e in zip(poly.vars.symbols, mono)
            if e
        ]
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if idx == 0:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)
