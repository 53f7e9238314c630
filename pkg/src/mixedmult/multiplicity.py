"""Mixed multiplicities, mixed volumes, and sectional Milnor numbers.

The central pipeline computes e_a(I_0 | I_1, ..., I_r) for an ideal I_0
primary to the maximal ideal and ideals I_j of positive grade:

  1. present the multi-Rees algebra of (I_0, ..., I_r);
  2. add I_0 to the presentation ideal and take its initial ideal;
  3. grade the ambient variables by (t_0, ..., t_r; z) with each blowup
     variable of block i in degree (e_i; 0) and each base variable in
     degree (0; 1), and form the Hilbert-series numerator;
  4. cancel the full (1 - z) power (failure here means I_0 is not primary
     to the maximal ideal), set z = 1, and reduce the t poles;
  5. read the requested coefficient of the Hilbert polynomial from the
     reduced numerator.

Mixed volumes of lattice polytopes ride on the same pipeline through the
polytope-to-homogeneous-ideal translation, with index (0, 1, ..., 1); the
sectional Milnor numbers of a hypersurface singularity are the mixed
multiplicities of the maximal ideal and the Jacobian ideal, all read from
one series.
"""

from __future__ import annotations

from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import (
    HypothesisError,
    IndexSumError,
    NotIsolatedError,
    NotPrimaryError,
    ValidationError,
)
from .ideals import Ideal
from .orders import block_order
from .poly import Polynomial, RingContext
from .rees import ReesResult, multi_rees_ideal
from .series import (
    MultigradedSeries,
    divide_out_exact,
    drop_variable,
    k_polynomial,
    polynomial_coefficient,
    reduce_series,
)

Point = Tuple[int, ...]
LatticePolytope = Sequence[Sequence[int]]


class FiberSeries:
    """Reduced Hilbert series of a mixed-multiplicity pipeline, with its
    intermediate objects kept for cross-checking."""

    def __init__(self, series, rees, graded_ideal, t_rows):
        self.series: MultigradedSeries = series
        self.rees: ReesResult = rees
        self.graded_ideal: Ideal = graded_ideal
        self.t_rows = t_rows

    def coefficient(self, index: Sequence[int]) -> int:
        c = polynomial_coefficient(self.series, index)
        return 0 if c is None else c


def fiber_series(ideals: Sequence[Ideal], nzds=None) -> FiberSeries:
    """Steps 1-4 of the pipeline for the family (I_0, ..., I_r)."""
    rees = multi_rees_ideal(ideals, nzds)
    ext = rees.extended_ctx
    nbase = rees.base_ctx.nvars
    s = rees.s
    lifted = [ext.lift_poly(g) for g in ideals[0].nonzero_gens()]
    graded = Ideal(ext, list(rees.defining_ideal.gens) + lifted)
    block_of = {}
    for i, block in enumerate(rees.blocks):
        for v in block:
            block_of[v] = i
    rows: List[Tuple[int, ...]] = []
    for v in range(ext.nvars):
        if v < nbase:
            rows.append((0,) * s + (1,))
        else:
            i = block_of[v]
            rows.append(tuple(1 if k == i else 0 for k in range(s)) + (0,))
    tower = block_order(range(nbase, ext.nvars))
    series = k_polynomial(graded.initial_ideal(tower).gens, rows)
    for _ in range(nbase):
        series, ok = divide_out_exact(series, s)
        if not ok:
            raise NotPrimaryError(
                "the degree-zero ideal is not primary to the maximal ideal "
                "(a graded slice of the fiber is infinite-dimensional)"
            )
    series = drop_variable(series, s)
    series = reduce_series(series)
    return FiberSeries(series, rees, graded, rows)


def _validate_family(ideals: Sequence[Ideal], index: Sequence[int]) -> int:
    """Shared hypothesis checks; returns the base-ring dimension."""
    if not ideals:
        raise ValidationError("need at least one ideal")
    ctx = ideals[0].ctx
    for I in ideals:
        if not isinstance(I, Ideal) or I.ctx != ctx:
            raise ValidationError("all ideals must live in one ring")
    index = tuple(index)
    if len(index) != len(ideals):
        raise ValidationError(
            "index length %d does not match the number of ideals %d"
            % (len(index), len(ideals))
        )
    if any(int(a) < 0 for a in index):
        raise ValidationError("index entries must be nonnegative")
    for I in ideals:
        if not I.has_positive_grade():
            raise HypothesisError(
                "an input ideal has grade zero; replace the inputs by their "
                "images in the quotient by (0 : I^infinity) and rerun"
            )
    d = Ideal(ctx, []).krull_dimension()
    if d < 1:
        raise HypothesisError("the base ring must have dimension at least 1")
    if sum(int(a) for a in index) != d - 1:
        raise IndexSumError(
            "index entries must sum to dim - 1 = %d" % (d - 1)
        )
    if not ideals[0].is_primary_to_max():
        raise NotPrimaryError(
            "the first ideal must be primary to the maximal ideal"
        )
    return d


def mixed_multiplicity(ideals: Sequence[Ideal], index: Sequence[int], nzds=None) -> int:
    """e_index(I_0 | I_1, ..., I_r), an exact nonnegative integer.

    `index` must sum to dim(base ring) - 1; over a quotient base ring pass
    `nzds`, one nonzerodivisor inside each ideal.
    """
    _validate_family(ideals, index)
    fs = fiber_series(ideals, nzds)
    return fs.coefficient(tuple(int(a) for a in index))


# -- polytopes to ideals -------------------------------------------------------


def hom_ideal_polytope(points: LatticePolytope, ctx: Optional[RingContext] = None) -> Ideal:
    """Homogeneous monomial ideal whose dehomogenized generators span the
    given lattice points.

    Point p of maximal total degree D maps to x^p, the rest are padded by
    powers of the last variable x_{n+1}.
    """
    pts = [tuple(int(c) for c in p) for p in points]
    if not pts:
        raise ValidationError("a polytope needs at least one point")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValidationError("points of mixed dimensions")
    if any(c < 0 for p in pts for c in p):
        raise ValidationError("polytope points must have nonnegative coordinates")
    if ctx is None:
        ctx = RingContext(["x%d" % (i + 1) for i in range(n + 1)])
    elif ctx.nvars != n + 1:
        raise ValidationError("ring has %d variables, need %d" % (ctx.nvars, n + 1))
    D = max(sum(p) for p in pts)
    gens = []
    seen = set()
    for p in pts:
        e = p + (D - sum(p),)
        if e not in seen:
            seen.add(e)
            gens.append(ctx.monomial(e))
    return Ideal(ctx, gens)


def mixed_volume(items: Sequence[Union[Ideal, LatticePolytope]], nzds=None) -> int:
    """Mixed volume of n lattice polytopes in R^n via the algebraic route.

    Accepts either n point lists or n prebuilt homogeneous ideals in a
    common (n+1)-variable ring; the maximal ideal plays I_0 and the index
    is (0, 1, ..., 1).
    """
    if not items:
        raise ValidationError("need at least one polytope")
    if all(isinstance(it, Ideal) for it in items):
        ctx = items[0].ctx
        for it in items:
            if it.ctx != ctx:
                raise ValidationError("ideals from different rings")
        n = ctx.nvars - 1
        if len(items) != n:
            raise ValidationError(
                "need exactly %d ideals for %d-variable ambient ring"
                % (n, ctx.nvars)
            )
        ideals = list(items)
    else:
        pts = [[tuple(int(c) for c in p) for p in poly] for poly in items]
        dims = {len(p) for poly in pts for p in poly}
        if len(dims) != 1:
            raise ValidationError("polytopes of mixed ambient dimensions")
        n = dims.pop()
        if len(pts) != n:
            raise ValidationError(
                "need exactly %d polytopes in dimension %d" % (n, n)
            )
        ctx = RingContext(["x%d" % (i + 1) for i in range(n + 1)])
        ideals = [hom_ideal_polytope(poly, ctx) for poly in pts]
    m = Ideal(ctx, list(ctx.gens()))
    index = (0,) + (1,) * n
    return mixed_multiplicity([m] + ideals, index, nzds)


def mixed_ehrhart_leading_coeff(polytopes: Sequence[LatticePolytope]) -> int:
    """Leading coefficient n! * MV_n of the mixed Ehrhart polynomial (k = n only)."""
    pts = [[tuple(int(c) for c in p) for p in poly] for poly in polytopes]
    dims = {len(p) for poly in pts for p in poly}
    if len(dims) != 1:
        raise ValidationError("polytopes of mixed ambient dimensions")
    n = dims.pop()
    if len(pts) != n:
        raise ValidationError(
            "only the case of exactly n polytopes in R^n is supported"
        )
    return factorial(n) * mixed_volume(pts)


# -- Milnor numbers -------------------------------------------------------------


def jacobian_ideal(f: Polynomial) -> Ideal:
    return Ideal(f.ctx, [f.partial_derivative(i) for i in range(f.ctx.nvars)])


def sec_milnor_numbers(f: Polynomial) -> Dict[int, int]:
    """Sectional Milnor numbers {i: mu^(i)} for i = 0, ..., n.

    Requires the Jacobian ideal to be primary to the maximal ideal; all of
    mu^(0), ..., mu^(n-1) come from one fiber series and mu^(n) is the
    vector-space dimension of the Jacobian quotient (the Milnor number).
    """
    ctx = f.ctx
    if ctx.is_quotient:
        raise ValidationError("hypersurfaces live in a polynomial ring")
    if f.is_zero or f.is_constant:
        raise ValidationError("the polynomial must be nonconstant")
    n = ctx.nvars
    J = jacobian_ideal(f)
    if not J.is_primary_to_max():
        raise NotPrimaryError(
            "the Jacobian ideal is not primary to the maximal ideal"
        )
    m = Ideal(ctx, list(ctx.gens()))
    fs = fiber_series([m, J])
    out = {i: fs.coefficient((n - 1 - i, i)) for i in range(n)}
    out[n] = J.k_dimension()
    return out


def milnor_number_local(f: Polynomial) -> int:
    """Milnor number at the origin via the saturation colon.

    Valid whenever the singularity is isolated at the origin, whether or
    not the Jacobian ideal is primary to the maximal ideal: the length of
    the maximal-ideal-primary component (J : (J : m^infinity)).
    """
    ctx = f.ctx
    if ctx.is_quotient:
        raise ValidationError("hypersurfaces live in a polynomial ring")
    if f.is_zero or f.is_constant:
        raise ValidationError("the polynomial must be nonconstant")
    J = jacobian_ideal(f)
    m = Ideal(ctx, list(ctx.gens()))
    total = Ideal(ctx, [f]) + J
    if not total.is_primary_to_max():
        raise NotIsolatedError(
            "the singularity at the origin is not isolated"
        )
    sat = J.saturate(m)
    return J.colon(sat).k_dimension()


def support_polytope_of_partials(h: Polynomial) -> Tuple[Point, ...]:
    """Exponent vectors of all dehomogenized partial-derivative monomials.

    The first ring variable is the homogenizing one: its exponent is
    dropped.  The convex hull of the returned points is the support
    polytope used in the volume comparisons.
    """
    if h.is_zero or h.is_constant:
        raise ValidationError("the polynomial must be nonconstant")
    if h.multidegree() is None:
        raise ValidationError("the polynomial must be homogeneous")
    pts = set()
    for i in range(h.ctx.nvars):
        for e, _ in h.partial_derivative(i)._d.items():
            pts.add(e[1:])
    return tuple(sorted(pts))


def euler_characteristic_complement(h: Polynomial) -> int:
    """Alternating sum of the mixed multiplicities of (m | J(h)), the top
    term being the Milnor number."""
    if h.multidegree() is None:
        raise ValidationError("the polynomial must be homogeneous")
    mu = sec_milnor_numbers(h)
    return sum((-1) ** i * v for i, v in mu.items())


def rees_algebra_multiplicity(ideals: Sequence[Ideal], nzds=None) -> int:
    """Multiplicity of the multi-Rees algebra R(I_1, ..., I_r).

    Equals the sum of e_a(m | I_1, ..., I_r) over all indices with
    |a| = dim - 1; all summands are read off one fiber series.
    """
    if not ideals:
        raise ValidationError("need at least one ideal")
    ctx = ideals[0].ctx
    m = Ideal(ctx, list(ctx.gens()))
    family = [m] + list(ideals)
    d = Ideal(ctx, []).krull_dimension()
    probe = (d - 1,) + (0,) * (len(family) - 1) if d >= 1 else (0,) * len(family)
    _validate_family(family, probe)
    fs = fiber_series(family, nzds)
    total = 0
    for alpha in _compositions(d - 1, len(family)):
        total += fs.coefficient(alpha)
    return total


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
