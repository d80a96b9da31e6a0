"""Resultants by two independent strategies.

* ``sylvester-bareiss``: the Sylvester matrix over the polynomial ring,
  reduced by fraction-free Bareiss elimination.  Entries that are
  univariate (the large final elimination) run on a dense integer
  coefficient representation instead of the sparse maps.
* ``eval-interpolate``: every variable except the eliminated one is
  evaluated on an integer grid sized by the resultant degree bound
  deg_v(res) <= deg_v(a) * deg_u(b) + deg_v(b) * deg_u(a); each grid point
  yields an integer Sylvester determinant, and the polynomial is rebuilt
  by Newton interpolation.

Both strategies compute the same determinant, so they must agree
coefficient for coefficient; the certificate pipeline runs them against
each other.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm

from .poly import AlgebraError, MPoly, NonDivisible, VarTable

STRATEGY_SYLVESTER = "sylvester-bareiss"
STRATEGY_INTERP = "eval-interpolate"
STRATEGIES = (STRATEGY_SYLVESTER, STRATEGY_INTERP)


def sylvester_matrix(a: MPoly, b: MPoly, symbol: str) -> list[list[MPoly]]:
    """The (da+db) square Sylvester matrix; entries do not contain symbol."""
    da, db = a.degree(symbol), b.degree(symbol)
    ca = a.coeffs_in(symbol)[::-1]  # descending
    cb = b.coeffs_in(symbol)[::-1]
    n = da + db
    zero = MPoly.zero(a.vars)
    rows: list[list[MPoly]] = []
    for i in range(db):
        rows.append([zero] * i + ca + [zero] * (db - 1 - i))
    for i in range(da):
        rows.append([zero] * i + cb + [zero] * (da - 1 - i))
    return rows


# -- fraction-free determinants ------------------------------------------------


def det_bareiss_poly(matrix: list[list[MPoly]], vars: VarTable) -> MPoly:
    """Fraction-free Bareiss determinant over the polynomial ring."""
    n = len(matrix)
    if n == 0:
        return MPoly.constant(1, vars)
    m = [row[:] for row in matrix]
    sign = 1
    prev: MPoly | None = None
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero(vars)
        piv = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            head = row_i[k]
            for j in range(k + 1, n):
                num = piv * row_i[j] - head * m[k][j]
                row_i[j] = num.exact_divide(prev) if prev is not None else num
        prev = piv
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _det_bareiss_int(matrix: list[list[int]]) -> int:
    """Bareiss over plain integers (the interpolation grid points)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            head = row_i[k]
            for j in range(k + 1, n):
                num = piv * row_i[j] - head * m[k][j]
                q, r = divmod(num, prev)
                if r:
                    raise AlgebraError("Bareiss integer division not exact")
                row_i[j] = q
        prev = piv
    return sign * m[n - 1][n - 1]


# -- dense univariate arithmetic (ascending integer coefficient lists) ---------


def _dtrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _dmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                if x:
                    out[i + j] += x * y
    return _dtrim(out)


def _dsub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] -= y
    return _dtrim(out)


def _dexact_div(a: list[int], b: list[int]) -> list[int]:
    """Exact division in Z[x]; raises if any step leaves a remainder."""
    if not b:
        raise AlgebraError("dense division by zero polynomial")
    if not a:
        return []
    if len(b) == 1:
        d = b[0]
        out = []
        for c in a:
            q, r = divmod(c, d)
            if r:
                raise AlgebraError("dense division not exact")
            out.append(q)
        return _dtrim(out)
    work = a[:]
    db = len(b) - 1
    lead = b[-1]
    if len(work) - 1 < db:
        raise AlgebraError("dense division not exact")
    out = [0] * (len(work) - db)
    for i in range(len(out) - 1, -1, -1):
        c = work[i + db]
        q, r = divmod(c, lead)
        if r:
            raise AlgebraError("dense division not exact")
        out[i] = q
        if q:
            for j, y in enumerate(b):
                work[i + j] -= q * y
    if any(work):
        raise AlgebraError("dense division not exact")
    return _dtrim(out)


def _det_bareiss_dense(matrix: list[list[list[int]]]) -> tuple[int, list[int]]:
    """Bareiss over Z[x] with dense coefficient lists; returns (sign, det)."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    prev: list[int] | None = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 1, []
        piv = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            head = row_i[k]
            for j in range(k + 1, n):
                num = _dsub(_dmul(piv, row_i[j]), _dmul(head, m[k][j]))
                row_i[j] = _dexact_div(num, prev) if prev is not None else num
        prev = piv
    return sign, m[n - 1][n - 1]


# -- strategy drivers -----------------------------------------------------------


def _clear_denominators(p: MPoly) -> tuple[MPoly, int]:
    scale = 1
    for c in p.terms.values():
        scale = lcm(scale, c.denominator)
    return (p.scale(scale) if scale != 1 else p), scale


def _single_other_variable(entries: list[MPoly], skip: str) -> str | None:
    seen: set[str] = set()
    for e in entries:
        seen.update(e.variables_present())
    seen.discard(skip)
    if len(seen) == 1:
        return seen.pop()
    return None


def _resultant_sylvester(a: MPoly, b: MPoly, symbol: str) -> MPoly:
    matrix = sylvester_matrix(a, b, symbol)
    flat = [e for row in matrix for e in row]
    single = _single_other_variable(flat, symbol)
    if single is not None:
        # dense univariate fast path: entries live in Z[single variable]
        dense = [
            [_dense_int_list(e, single) for e in row] for row in matrix
        ]
        sign, det = _det_bareiss_dense(dense)
        idx = a.vars.index(single)
        terms = {}
        for power, coeff in enumerate(det):
            if coeff:
                mono = tuple(
                    power if j == idx else 0 for j in range(len(a.vars))
                )
                terms[mono] = Fraction(sign * coeff)
        return MPoly(terms, a.vars)
    return det_bareiss_poly(matrix, a.vars)


def _dense_int_list(p: MPoly, symbol: str) -> list[int]:
    out = []
    for c in _fraction_list_in(p, symbol):
        if c.denominator != 1:
            raise AlgebraError("dense path expects integer coefficients")
        out.append(c.numerator)
    return out


def _choose_grids(
    a: MPoly, b: MPoly, symbol: str, others: list[str], bounds: dict[str, int]
) -> dict[str, list[int]]:
    lca = a.coeffs_in(symbol)[a.degree(symbol)]
    lcb = b.coeffs_in(symbol)[b.degree(symbol)]
    for shift in range(200):
        grids = {
            u: [shift + 1 + (37 * pos + 1) * t for t in range(bounds[u] + 1)]
            for pos, u in enumerate(others)
        }
        ok = True
        for point in product(*(grids[u] for u in others)):
            assign = dict(zip(others, point))
            if lca.eval_scalar(assign) == 0 or lcb.eval_scalar(assign) == 0:
                ok = False
                break
        if ok:
            return grids
    raise AlgebraError("could not find a degenerate-free interpolation grid")


def _univariate_resultant_int(av: list[Fraction], bv: list[Fraction]) -> Fraction:
    """Resultant of two univariate polynomials given by coefficient lists."""
    da, db = len(av) - 1, len(bv) - 1
    n = da + db
    matrix: list[list[int]] = []
    scale = 1
    for c in av + bv:
        scale = lcm(scale, c.denominator)
    ai = [int(c * scale) for c in av][::-1]
    bi = [int(c * scale) for c in bv][::-1]
    for i in range(db):
        matrix.append([0] * i + ai + [0] * (db - 1 - i))
    for i in range(da):
        matrix.append([0] * i + bi + [0] * (da - 1 - i))
    det = _det_bareiss_int(matrix)
    return Fraction(det, scale**db * scale**da)


def _interp_tree(
    a: MPoly,
    b: MPoly,
    symbol: str,
    others: list[str],
    grids: dict[str, list[int]],
) -> MPoly:
    if not others:
        av = _fraction_list_in(a, symbol)
        bv = _fraction_list_in(b, symbol)
        return MPoly.constant(_univariate_resultant_int(av, bv), a.vars)
    u, rest = others[0], others[1:]
    ts = grids[u]
    values = [
        _interp_tree(
            a.eval_at({u: t}), b.eval_at({u: t}), symbol, rest, grids
        )
        for t in ts
    ]
    return _newton_interpolate(ts, values, u)


def _fraction_list_in(p: MPoly, symbol: str) -> list[Fraction]:
    coeffs = p.coeffs_in(symbol)
    out = []
    for c in coeffs:
        if c.total_degree() > 0:
            raise AlgebraError("expected a univariate polynomial at grid leaf")
        out.append(c.constant_term())
    while out and not out[-1]:
        out.pop()
    return out


def _newton_interpolate(ts: list[int], values: list[MPoly], symbol: str) -> MPoly:
    vars = values[0].vars
    dd = list(values)
    n = len(ts)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]).scale(Fraction(1, ts[i] - ts[i - level]))
    var_u = MPoly.variable(symbol, vars)
    acc = MPoly.zero(vars)
    for i in range(n - 1, -1, -1):
        acc = acc * (var_u - ts[i]) + dd[i]
    return acc


def _resultant_interpolate(a: MPoly, b: MPoly, symbol: str) -> MPoly:
    da, db = a.degree(symbol), b.degree(symbol)
    table_order = {s: i for i, s in enumerate(a.vars.symbols)}
    others = sorted(
        (set(a.variables_present()) | set(b.variables_present())) - {symbol},
        key=table_order.__getitem__,
    )
    bounds = {
        u: da * max(b.degree(u), 0) + db * max(a.degree(u), 0) for u in others
    }
    grids = _choose_grids(a, b, symbol, others, bounds)
    return _interp_tree(a, b, symbol, others, grids)


def resultant(
    a: MPoly, b: MPoly, symbol: str, strategy: str = STRATEGY_SYLVESTER
) -> MPoly:
    """Resultant of a and b with respect to one variable.

    Both inputs need positive degree in the eliminated variable.  The
    result follows the standard Sylvester determinant convention, so
    res(a, b) = (-1)^(deg a * deg b) res(b, a).
    """
    if a.vars != b.vars:
        raise AlgebraError("resultant operands must share a variable table")
    da, db = a.degree(symbol), b.degree(symbol)
    if da < 1 or db < 1:
        raise AlgebraError(
            f"resultant needs positive degree in {symbol!r} (got {da} and {db})"
        )
    ai, sa = _clear_denominators(a)
    bi, sb = _clear_denominators(b)
    if strategy == STRATEGY_SYLVESTER:
        res = _resultant_sylvester(ai, bi, symbol)
    elif strategy == STRATEGY_INTERP:
        res = _resultant_interpolate(ai, bi, symbol)
    else:
        raise AlgebraError(f"unknown resultant strategy {strategy!r}")
    back = Fraction(1, sa**db * sb**da)
    return res.scale(back) if back != 1 else res
