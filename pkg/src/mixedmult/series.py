"""Multigraded Hilbert series of monomial quotients.

A series is stored unreduced as N(t) / prod_i (1 - t_i)^{k_i}: an integer
numerator polynomial over the series variables plus one denominator
exponent per variable.  Numerators come out of the pivot recursion
N(M) = N(M + p) + t^deg(p) * N(M : p) on minimal monomial generators; the
pivot is the most frequent variable raised to the median power among its
occurrences, which keeps the recursion tree shallow.

The top-coefficient evaluator reads Hilbert-polynomial coefficients from
the reduced numerator by a binomial shift: the k-th derivative of N at 1
equals k! times the coefficient of u^k in N(1+u), so no symbolic
differentiation is ever performed.
"""

from __future__ import annotations

from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotPrimaryError, NotZeroDimensionalError, ValidationError
from .ideals import (
    Ideal,
    MonomialIdeal,
    count_standard_monomials,
    minimalize_monomials,
)

Exps = Tuple[int, ...]
NumTerms = Dict[Exps, int]


class MultigradedSeries:
    """N(t)/prod (1-t_i)^{k_i}; the representation need not be reduced."""

    __slots__ = ("numerator", "denom_exponents")

    def __init__(self, numerator: NumTerms, denom_exponents: Sequence[int]):
        self.numerator = {e: int(c) for e, c in numerator.items() if c}
        self.denom_exponents = tuple(int(k) for k in denom_exponents)
        for e in self.numerator:
            if len(e) != len(self.denom_exponents):
                raise ValidationError("numerator arity mismatch")

    @property
    def rank(self) -> int:
        return len(self.denom_exponents)

    def numerator_terms(self) -> List[Tuple[Exps, int]]:
        return sorted(self.numerator.items())

    def numerator_str(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.numerator:
            return "0"
        if names is None:
            names = ["t%d" % i for i in range(self.rank)]
        parts = []
        for e, c in self.numerator_terms():
            factors = []
            for n, k in zip(names, e):
                if k == 1:
                    factors.append(n)
                elif k > 1:
                    factors.append("%s^%d" % (n, k))
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = str(abs(c)) + "*" + "*".join(factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, MultigradedSeries)
            and self.numerator == other.numerator
            and self.denom_exponents == other.denom_exponents
        )

    def __repr__(self):
        denom = "*".join(
            "(1-t%d)^%d" % (i, k)
            for i, k in enumerate(self.denom_exponents)
            if k
        )
        return "(%s)/(%s)" % (self.numerator_str(), denom or "1")


# -- K-polynomial ------------------------------------------------------------


def series_variable_of_row(row: Sequence[int]) -> int:
    """Index i when the row is the i-th unit vector; error otherwise."""
    nz = [i for i, w in enumerate(row) if w]
    if not nz:
        raise ValidationError("variable with all-zero degree")
    if len(nz) != 1 or row[nz[0]] != 1:
        raise ValidationError("only unit-vector variable degrees are supported")
    return nz[0]


def k_polynomial(M, grading) -> MultigradedSeries:
    """Hilbert series numerator of k[vars]/M for a monomial ideal M.

    `grading` assigns each ring variable a unit-vector degree; variable v
    then contributes a factor (1 - t_{i(v)}) to the denominator.
    """
    gens = tuple(M.gens) if isinstance(M, MonomialIdeal) else tuple(M)
    rows = [tuple(r) for r in grading]
    if gens and len(rows) != len(gens[0]):
        raise ValidationError("one grading row per variable required")
    var_series = [series_variable_of_row(r) for r in rows]
    rank = len(rows[0]) if rows else 0
    denom = [0] * rank
    for i in var_series:
        denom[i] += 1
    num = _krec(minimalize_monomials(gens), var_series, rank)
    return MultigradedSeries(num, denom)


def _sdeg(exps: Exps, var_series, rank: int) -> Exps:
    d = [0] * rank
    for v, e in enumerate(exps):
        if e:
            d[var_series[v]] += e
    return tuple(d)


def _padd(a: NumTerms, b: NumTerms) -> NumTerms:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pshift(a: NumTerms, d: Exps) -> NumTerms:
    return {tuple(x + y for x, y in zip(e, d)): c for e, c in a.items()}


def _krec(gens: Tuple[Exps, ...], var_series, rank: int) -> NumTerms:
    zero = (0,) * rank
    if not gens:
        return {zero: 1}
    if any(not any(g) for g in gens):
        return {}
    # disjoint supports: the series factors as a product of binomials
    seen = 0
    disjoint = True
    for g in gens:
        m = 0
        for i, e in enumerate(g):
            if e:
                m |= 1 << i
        if m & seen:
            disjoint = False
            break
        seen |= m
    if disjoint:
        num: NumTerms = {zero: 1}
        for g in gens:
            d = _sdeg(g, var_series, rank)
            num = _padd(num, {tuple(x + y for x, y in zip(e, d)): -c for e, c in num.items()})
        return num
    # pivot: most frequent variable at its median occurring power
    nvars = len(gens[0])
    counts = [0] * nvars
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    v = max(range(nvars), key=lambda i: counts[i])
    powers = sorted(g[v] for g in gens if g[v])
    k = powers[(len(powers) - 1) // 2]
    pure = [g[v] for g in gens if g[v] and all(e == 0 for i, e in enumerate(g) if i != v)]
    if pure and pure[0] <= k:
        k = pure[0] - 1
    pivot = tuple(k if i == v else 0 for i in range(nvars))
    left = minimalize_monomials(gens + (pivot,))
    right = minimalize_monomials(
        tuple(g[:v] + (max(g[v] - k, 0),) + g[v + 1:] for g in gens)
    )
    shifted = _pshift(
        _krec(right, var_series, rank), _sdeg(pivot, var_series, rank)
    )
    return _padd(_krec(left, var_series, rank), shifted)


# -- reduction and coefficient extraction -------------------------------------


def divide_out_exact(series: MultigradedSeries, i: int):
    """Cancel one factor (1 - t_i) if it divides the numerator exactly.

    Returns (series, True) on success and (series, False) when the
    numerator is not divisible; the input is never modified.
    """
    if series.denom_exponents[i] < 1:
        raise ValidationError("denominator has no (1-t_%d) factor left" % i)
    groups: Dict[Exps, Dict[int, int]] = {}
    for e, c in series.numerator.items():
        rest = e[:i] + (0,) + e[i + 1:]
        groups.setdefault(rest, {})[e[i]] = c
    for coeffs in groups.values():
        if sum(coeffs.values()) != 0:
            return series, False
    num: NumTerms = {}
    for rest, coeffs in groups.items():
        top = max(coeffs)
        acc = 0
        for j in range(top):
            acc += coeffs.get(j, 0)
            if acc:
                num[rest[:i] + (j,) + rest[i + 1:]] = acc
    denom = list(series.denom_exponents)
    denom[i] -= 1
    return MultigradedSeries(num, denom), True


def reduce_series(series: MultigradedSeries) -> MultigradedSeries:
    """Divide out (1 - t_i) factors per variable until not divisible."""
    for i in range(series.rank):
        while series.denom_exponents[i] >= 1:
            series, ok = divide_out_exact(series, i)
            if not ok:
                break
    return series


def drop_variable(series: MultigradedSeries, i: int) -> MultigradedSeries:
    """Set t_i = 1 and remove the variable; its denominator exponent must be 0."""
    if series.denom_exponents[i] != 0:
        raise ValidationError("cannot set t_%d = 1 under a surviving pole" % i)
    num: NumTerms = {}
    for e, c in series.numerator.items():
        ne = e[:i] + e[i + 1:]
        v = num.get(ne, 0) + c
        if v:
            num[ne] = v
        else:
            num.pop(ne, None)
    denom = series.denom_exponents[:i] + series.denom_exponents[i + 1:]
    return MultigradedSeries(num, denom)


def polynomial_coefficient(series: MultigradedSeries, alpha: Sequence[int]) -> Optional[int]:
    """Coefficient c_alpha of the Hilbert polynomial in the binomial basis.

    For a reduced series with denominator exponents s_i + 1, the Hilbert
    polynomial is sum c_alpha * prod binom(u_i + alpha_i, alpha_i) and
    c_alpha = (-1)^{|s-alpha|} [u^{s-alpha}] N(1+u).  Returns None when
    some alpha_i exceeds s_i (no such term in the representation).
    """
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != series.rank:
        raise ValidationError("index length does not match the series rank")
    s = [k - 1 for k in series.denom_exponents]
    if any(a > si for a, si in zip(alpha, s)):
        return None
    target = [si - a for si, a in zip(s, alpha)]
    total = 0
    for e, c in series.numerator.items():
        f = c
        for x, k in zip(e, target):
            f *= comb(x, k)
            if not f:
                break
        total += f
    sign = -1 if sum(target) % 2 else 1
    return sign * total


def series_coefficient(series: MultigradedSeries, u: Sequence[int]) -> int:
    """Exact power-series coefficient of t^u (valid for every u >= 0)."""
    u = tuple(int(x) for x in u)
    if len(u) != series.rank:
        raise ValidationError("degree length does not match the series rank")
    ks = series.denom_exponents
    total = 0
    for e, c in series.numerator.items():
        f = c
        for a, ui, k in zip(e, u, ks):
            if a > ui:
                f = 0
                break
            if k == 0:
                if a != ui:
                    f = 0
                    break
            else:
                f *= comb(ui - a + k - 1, k - 1)
        total += f
    return total


# -- brute-force slice counting (independent oracle) ---------------------------


def _weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def hilbert_function_value(J: Ideal, t_rows, u: Sequence[int]) -> int:
    """Slice dimension of (ring of J)/J in multidegree u, counted directly.

    `t_rows` assigns each ring variable either a unit vector in N^len(u)
    or the zero row; zero-row variables are counted freely inside each
    slice (their contribution must be finite, else the primary hypothesis
    on the degree-zero part fails and an error is raised).

    The count enumerates the finitely many graded-part monomials of degree
    u and, for each, the standard monomials of the colon of the initial
    ideal; this never looks at the series machinery, so it serves as an
    independent check of it.
    """
    u = tuple(int(x) for x in u)
    rows = [tuple(r) for r in t_rows]
    if len(rows) != J.ctx.nvars:
        raise ValidationError("one grading row per variable required")
    rank = len(u)
    yvars: List[int] = []
    xvars: List[int] = []
    block_of: Dict[int, int] = {}
    for v, row in enumerate(rows):
        if len(row) != rank:
            raise ValidationError("grading row length mismatch")
        if not any(row):
            xvars.append(v)
        else:
            block_of[v] = series_variable_of_row(row)
            yvars.append(v)
    blocks: List[List[int]] = [[] for _ in range(rank)]
    for v in yvars:
        blocks[block_of[v]].append(v)

    gens = J.initial_ideal().gens
    split = [
        (tuple(g[v] for v in yvars), tuple(g[v] for v in xvars)) for g in gens
    ]
    caps = [max([yp[j] for yp, _ in split] or [0]) for j in range(len(yvars))]

    memo: Dict[Exps, int] = {}

    def count_for(clamp: Exps) -> int:
        got = memo.get(clamp)
        if got is None:
            xgens = [
                xp
                for yp, xp in split
                if all(a <= b for a, b in zip(yp, clamp))
            ]
            try:
                got = count_standard_monomials(xgens, len(xvars))
            except NotZeroDimensionalError:
                raise NotPrimaryError(
                    "a graded slice is infinite; the degree-zero ideal is "
                    "not primary to the maximal ideal"
                ) from None
            memo[clamp] = got
        return got

    # aggregate each block's compositions by their clamped pattern
    pos_in_y = {v: j for j, v in enumerate(yvars)}
    block_patterns: List[Dict[Exps, int]] = []
    for i in range(rank):
        pat: Dict[Exps, int] = {}
        idx = [pos_in_y[v] for v in blocks[i]]
        for comp in _weak_compositions(u[i], len(blocks[i])):
            clamped = tuple(
                min(c, caps[j]) for c, j in zip(comp, idx)
            )
            pat[clamped] = pat.get(clamped, 0) + 1
        block_patterns.append(pat)

    total = 0

    def combine(i: int, clamp: List[int], weight: int):
        nonlocal total
        if i == rank:
            total += weight * count_for(tuple(clamp))
            return
        idx = [pos_in_y[v] for v in blocks[i]]
        for pattern, count in block_patterns[i].items():
            for p, j in zip(pattern, idx):
                clamp[j] = p
            combine(i + 1, clamp, weight * count)
            for j in idx:
                clamp[j] = 0

    combine(0, [0] * len(yvars), 1)
    return total
