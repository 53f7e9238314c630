"""Defining ideals of multi-Rees algebras R[I_1 t_1, ..., I_s t_s].

The main construction adjoins one variable Y_{i,j} per generator f_{ij},
forms the 2x2 minors Y_{ij} f_{ij'} - Y_{ij'} f_{ij} within each block,
and saturates by the product of one nonzerodivisor per ideal; the result
presents the multi-Rees algebra as R[Y]/kernel.  Over a polynomial base
ring the kernel can be computed independently by eliminating the t
variables from (Y_{ij} - f_{ij} T_i), which is kept here as an oracle.

Each Y_{i,j} carries the N^{s+1} degree (e_i; deg f_{ij}) and the base
variables carry (0, ..., 0; 1), so generators of the kernel report both
their blowup component and their internal degree.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import (
    GradeZeroError,
    InternalError,
    NonzerodivisorError,
    ValidationError,
)
from .ideals import Ideal, _drop_last_vars
from .orders import block_order
from .poly import Polynomial, RingContext


def validate_nonzerodivisor(ctx: RingContext, a: Polynomial) -> bool:
    """True iff a is a nonzerodivisor of ctx's quotient ring: (K : a) = K."""
    if a.is_zero:
        return False
    K = ctx.quotient_gens
    if not K:
        return True
    plain = ctx.without_quotient()
    kp = Ideal(plain, [Polynomial(plain, k._d) for k in K])
    col = kp.colon(Polynomial(plain, a._d))
    return col.equals(kp)


class ReesResult:
    """Presentation data for a multi-Rees algebra."""

    def __init__(self, base_ctx, extended_ctx, defining_ideal, blocks, images, nzds):
        self.base_ctx = base_ctx
        self.extended_ctx = extended_ctx
        self.defining_ideal = defining_ideal
        self.blocks = blocks          # per ideal: tuple of variable indices in extended_ctx
        self.images = images          # per Y variable index: the lifted generator f_ij
        self.nzds = nzds              # lifted nonzerodivisors, one per ideal
        self.s = len(blocks)
        nbase = base_ctx.nvars
        self.y_indices = tuple(range(nbase, extended_ctx.nvars))
        # internal degree is meaningful only when every image is homogeneous
        self.degrees_meaningful = all(
            len({sum(e) for e in img._d}) <= 1 for img in images.values()
        )
        self._assert_t_homogeneous()

    def _assert_t_homogeneous(self):
        s = self.s
        for g in self.defining_ideal.gens:
            degs = {self.extended_ctx.exps_degree(e)[:s] for e in g._d}
            if len(degs) > 1:
                raise InternalError(
                    "defining ideal generator is not homogeneous in the "
                    "blowup grading: %s" % g
                )

    def generator_degrees(self) -> Optional[List[Tuple[int, ...]]]:
        """N^{s+1} degrees of the generators; None when internal degree is void."""
        if not self.degrees_meaningful:
            return None
        out = []
        for g in self.defining_ideal.gens:
            d = g.multidegree()
            if d is None:
                return None
            out.append(d)
        return out

    def verify_kernel(self) -> bool:
        """Check every generator maps to 0 under Y_{ij} -> f_{ij} T_i mod K."""
        base = self.base_ctx
        plain = base.without_quotient()
        tnames = []
        for i in range(self.s):
            name = "T_%d" % (i + 1)
            if name in plain.var_names:
                raise ValidationError("variable name %s already in use" % name)
            tnames.append(name)
        tctx = plain.extend(tnames)
        images = [tctx.var(v) for v in plain.var_names]
        block_of = {}
        for i, block in enumerate(self.blocks):
            for v in block:
                block_of[v] = i
        for v in self.y_indices:
            f = self.images[v]
            lifted = Polynomial(tctx, {e[: base.nvars] + (0,) * self.s: c for e, c in f._d.items()})
            images.append(lifted * tctx.var(tnames[block_of[v]]))
        kid = Ideal(
            tctx,
            [Polynomial(tctx, {e + (0,) * self.s: c for e, c in k._d.items()})
             for k in base.quotient_gens],
        )
        for g in self.defining_ideal.gens:
            image = g.substitute(tctx, images)
            if not kid.contains(image):
                return False
        return True


def _compress(ideals: Sequence[Ideal]) -> List[List[Polynomial]]:
    out = []
    for I in ideals:
        gens: List[Polynomial] = []
        for g in I.gens:
            if g.is_zero:
                continue
            if all(g != h for h in gens):
                gens.append(g)
        out.append(gens)
    return out


def _validated_nzds(ctx, ideals, gen_lists, nzds):
    s = len(gen_lists)
    if nzds is None:
        if ctx.is_quotient:
            raise ValidationError(
                "the base ring is a quotient ring: pass one nonzerodivisor "
                "per ideal (the ring is not assumed to be a domain)"
            )
        return [gens[0] for gens in gen_lists]
    nzds = list(nzds)
    if len(nzds) != s:
        raise ValidationError("need exactly one nonzerodivisor per ideal")
    for a, I in zip(nzds, ideals):
        if not isinstance(a, Polynomial) or a.ctx != ctx:
            raise ValidationError("nonzerodivisor from a different ring")
        if not I.contains(a):
            raise ValidationError(
                "supplied element %s does not belong to its ideal" % a
            )
        if not validate_nonzerodivisor(ctx, a):
            raise NonzerodivisorError(
                "supplied element %s is a zerodivisor in the base ring" % a
            )
    return nzds


def _extended_context(ctx: RingContext, gen_lists) -> RingContext:
    s = len(gen_lists)
    y_names = []
    rows = []
    for i, gens in enumerate(gen_lists):
        for j, f in enumerate(gens):
            name = "Y_%d_%d" % (i + 1, j + 1)
            if name in ctx.var_names:
                raise ValidationError("variable name %s already in use" % name)
            y_names.append(name)
            e_i = tuple(1 if k == i else 0 for k in range(s))
            rows.append(e_i + (f.total_degree(),))
    base_rows = tuple((0,) * s + (1,) for _ in ctx.var_names)
    ext = ctx.extend(tuple(y_names)).with_grading(base_rows + tuple(rows))
    return ext


def _prepare(ideals, nzds):
    if not ideals:
        raise ValidationError("need at least one ideal")
    ctx = ideals[0].ctx
    for I in ideals:
        if I.ctx != ctx:
            raise ValidationError("ideals from different rings")
    gen_lists = _compress(ideals)
    for I, gens in zip(ideals, gen_lists):
        if not gens or not I.has_positive_grade():
            raise GradeZeroError(
                "every ideal must have positive grade; pass images in the "
                "quotient by the saturation of 0 for grade-zero inputs"
            )
    chosen = _validated_nzds(ctx, ideals, gen_lists, nzds)
    ext = _extended_context(ctx, gen_lists)
    blocks = []
    images = {}
    v = ctx.nvars
    for gens in gen_lists:
        idxs = []
        for f in gens:
            images[v] = ext.lift_poly(f)
            idxs.append(v)
            v += 1
        blocks.append(tuple(idxs))
    return ctx, ext, gen_lists, chosen, tuple(blocks), images


def multi_rees_ideal(ideals: Sequence[Ideal], nzds=None) -> ReesResult:
    """Defining ideal of the multi-Rees algebra, by minors and saturation.

    Over a polynomial base ring the nonzerodivisors default to the first
    generator of each ideal; over a quotient ring they must be supplied
    (one element of each ideal that is a nonzerodivisor on the quotient).
    """
    ctx, ext, gen_lists, chosen, blocks, images = _prepare(ideals, nzds)
    minors = []
    for block in blocks:
        for a in range(len(block)):
            for b in range(a + 1, len(block)):
                va, vb = block[a], block[b]
                minors.append(
                    ext.var(ext.var_names[va]) * images[vb]
                    - ext.var(ext.var_names[vb]) * images[va]
                )
    h = ext.one()
    for a in chosen:
        h = h * ext.lift_poly(a)
    L = Ideal(ext, minors)
    # tower order (tag | blowup variables | base) keeps blowup bases small
    nbase = ctx.nvars
    sat = L.saturate(
        h, order=lambda tag: block_order((tag,), range(nbase, ext.nvars))
    )
    gens = _reduce_mod_quotient(ext, sat.gens)
    result = ReesResult(ctx, ext, Ideal(ext, gens), blocks, images,
                        tuple(ext.lift_poly(a) for a in chosen))
    return result


def rees_ideal_by_elimination(ideals: Sequence[Ideal]) -> ReesResult:
    """Oracle: the same kernel via elimination of the t variables.

    Only valid over a polynomial base ring (no quotient relations).
    """
    if ideals and ideals[0].ctx.is_quotient:
        raise ValidationError(
            "the elimination oracle requires a polynomial base ring"
        )
    ctx, ext, gen_lists, chosen, blocks, images = _prepare(ideals, None)
    s = len(blocks)
    tnames = []
    for i in range(s):
        name = "T_%d" % (i + 1)
        if name in ext.var_names:
            raise ValidationError("variable name %s already in use" % name)
        tnames.append(name)
    big = ext.extend(tuple(tnames))
    gens = []
    for i, block in enumerate(blocks):
        t = big.var(tnames[i])
        for v in block:
            gens.append(big.var(big.var_names[v]) - big.lift_poly(images[v]) * t)
    tagged = Ideal(big, gens)
    kept = tagged.eliminate(
        range(ext.nvars, big.nvars),
        block_order(range(ext.nvars, big.nvars), range(ctx.nvars, ext.nvars)),
    )
    projected = _drop_last_vars(ext, kept.gens, s)
    return ReesResult(ctx, ext, Ideal(ext, projected), blocks, images,
                      tuple(ext.lift_poly(a) for a in chosen))


def _reduce_mod_quotient(ext: RingContext, gens) -> List[Polynomial]:
    """Drop quotient-relation multiples and reduce the rest modulo them."""
    K = ext.quotient_gens
    if not K:
        return list(gens)
    plain = ext.without_quotient()
    kid = Ideal(plain, [Polynomial(plain, k._d) for k in K])
    out: List[Polynomial] = []
    for g in gens:
        r = kid.normal_form(Polynomial(plain, g._d))
        if r.is_zero:
            continue
        cand = Polynomial(ext, r._d)
        if all(cand != q for q in out):
            out.append(cand)
    return out
