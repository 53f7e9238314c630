"""Ideals and ideal-level operations over Q[x...] and quotients Q[x...]/K.

Every Groebner computation silently adjoins the context's quotient
relations, so an `Ideal` always represents its image in the quotient ring.
Reduced bases are cached per monomial order; all outputs are deterministic
(monic generators, sorted by leading monomial).

Saturation by a single element is one Rabinowitsch elimination; colon
ideals go through tagged intersections; both stay inside this module so
the rest of the package never touches raw eliminations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import groebner
from .errors import (
    NotZeroDimensionalError,
    ValidationError,
)
from .orders import GREVLEX, MonomialOrder, elimination_order
from .poly import Polynomial, RingContext

Exps = Tuple[int, ...]


def _fresh_name(ctx: RingContext, stem: str) -> str:
    name = stem
    k = 0
    while name in ctx.var_names:
        k += 1
        name = "%s%d" % (stem, k)
    return name


class MonomialIdeal:
    """Minimal generating monomials, pairwise non-dividing."""

    __slots__ = ("ctx", "gens")

    def __init__(self, ctx: RingContext, gens: Iterable[Exps]):
        self.ctx = ctx
        self.gens = minimalize_monomials(gens)

    @property
    def is_unit(self) -> bool:
        return any(not any(e) for e in self.gens)

    def contains(self, exps: Exps) -> bool:
        for g in self.gens:
            for a, b in zip(g, exps):
                if a > b:
                    break
            else:
                return True
        return False

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.gens == other.gens

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(%s)" % ", ".join(
            str(self.ctx.monomial(e)) for e in self.gens
        )


def minimalize_monomials(gens: Iterable[Exps]) -> Tuple[Exps, ...]:
    out: List[Exps] = []
    for m in sorted(set(gens), key=lambda e: (sum(e), e)):
        for g in out:
            for a, b in zip(g, m):
                if a > b:
                    break
            else:
                break
        else:
            out.append(m)
    return tuple(out)


class Ideal:
    """Finitely generated ideal in a RingContext (quotient-aware)."""

    def __init__(self, ctx: RingContext, gens: Iterable):
        coerced = []
        for g in gens:
            if isinstance(g, Polynomial):
                if g.ctx != ctx:
                    raise ValidationError("generator from a different ring")
                coerced.append(g)
            else:
                coerced.append(ctx.constant(g))
        self.ctx = ctx
        self.gens: Tuple[Polynomial, ...] = tuple(coerced)
        self._gb: dict = {}
        self._engine: dict = {}

    # -- basics -------------------------------------------------------------

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.gens)

    def nonzero_gens(self) -> Tuple[Polynomial, ...]:
        return tuple(g for g in self.gens if not g.is_zero)

    def groebner_basis(self, order: MonomialOrder = GREVLEX) -> Tuple[Polynomial, ...]:
        cached = self._gb.get(order)
        if cached is None:
            dicts = [g._d for g in self.gens if not g.is_zero]
            dicts += [k._d for k in self.ctx.quotient_gens]
            raw = groebner.reduced_groebner(dicts, self.ctx.nvars, order)
            cached = tuple(Polynomial(self.ctx, d) for d in raw)
            self._gb[order] = cached
        return cached

    def _reducer(self, order: MonomialOrder) -> groebner.Reducer:
        red = self._engine.get(order)
        if red is None:
            red = groebner.Reducer(
                self.ctx.nvars, order,
                [g._d for g in self.groebner_basis(order)],
            )
            self._engine[order] = red
        return red

    def normal_form(self, p: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        """Remainder of p modulo the reduced basis (unique normal form)."""
        if p.ctx != self.ctx:
            raise ValidationError("polynomial from a different ring")
        if p.is_zero:
            return p
        return Polynomial(self.ctx, self._reducer(order).normal_form(p._d))

    def contains(self, p: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return self.normal_form(p, order).is_zero

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.nonzero_gens())

    def equals(self, other: "Ideal") -> bool:
        if self.ctx != other.ctx:
            raise ValidationError("ideals from different rings")
        return self.groebner_basis() == other.groebner_basis()

    @property
    def is_zero_ideal(self) -> bool:
        return not self.groebner_basis()

    @property
    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant and not gb[0].is_zero

    # -- sums, products, powers (with trimming) ------------------------------

    def trim(self) -> "Ideal":
        """Drop generators contained in the ideal of the remaining ones."""
        gens = [g for g in self.gens if not g.is_zero]
        uniq: List[Polynomial] = []
        for g in gens:
            if all(g != h for h in uniq):
                uniq.append(g)
        i = len(uniq) - 1
        while i >= 0 and len(uniq) > 1:
            rest = uniq[:i] + uniq[i + 1:]
            if Ideal(self.ctx, rest).contains(uniq[i]):
                uniq.pop(i)
            i -= 1
        return Ideal(self.ctx, uniq)

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ctx != other.ctx:
            raise ValidationError("ideals from different rings")
        return Ideal(self.ctx, self.gens + other.gens).trim()

    def __mul__(self, other: "Ideal") -> "Ideal":
        if self.ctx != other.ctx:
            raise ValidationError("ideals from different rings")
        prods: List[Polynomial] = []
        for a in self.nonzero_gens():
            for b in other.nonzero_gens():
                p = a * b
                if all(p != q for q in prods):
                    prods.append(p)
        return Ideal(self.ctx, prods).trim()

    def __pow__(self, k: int) -> "Ideal":
        if k < 0:
            raise ValidationError("negative ideal power")
        if k == 0:
            return Ideal(self.ctx, [self.ctx.one()])
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    # -- elimination, colon, saturation ---------------------------------------

    def eliminate(self, var_indices, order: Optional[MonomialOrder] = None) -> "Ideal":
        """Generators of the contraction to the subring without the variables.

        A custom order may be supplied as long as it makes every monomial
        touching the variables dominate the block-free ones.
        """
        idx = sorted(set(int(i) for i in var_indices))
        if order is None:
            order = elimination_order(idx)
        basis = self.groebner_basis(order)
        keep = [
            g for g in basis
            if not any(e[i] for e in g._d for i in idx)
        ]
        return Ideal(self.ctx, keep)

    def colon(self, other) -> "Ideal":
        """(self : other) computed generator by generator via tagged intersections."""
        if isinstance(other, (int, Fraction)):
            other = self.ctx.constant(other)
        if isinstance(other, Polynomial):
            other = Ideal(self.ctx, [other])
        if self.ctx != other.ctx:
            raise ValidationError("ideals from different rings")
        gens = other.nonzero_gens()
        if not gens:
            return Ideal(self.ctx, [self.ctx.one()])
        result: Optional[Ideal] = None
        for g in gens:
            cg = self._colon_single(g)
            result = cg if result is None else _intersect(result, cg)
        return result

    def _colon_single(self, g: Polynomial) -> "Ideal":
        plain = self.ctx.without_quotient()
        mine = [Polynomial(plain, p._d) for p in self.nonzero_gens()]
        mine += [Polynomial(plain, k._d) for k in self.ctx.quotient_gens]
        inter = _intersect_plain(plain, mine, [Polynomial(plain, g._d)])
        gp = Polynomial(plain, g._d)
        quots = [exact_divide(p, gp) for p in inter]
        return Ideal(self.ctx, [Polynomial(self.ctx, q._d) for q in quots])

    def saturate(self, other, order: Optional[MonomialOrder] = None) -> "Ideal":
        """self : other^infinity (Rabinowitsch for elements, intersections for ideals)."""
        if isinstance(other, (int, Fraction)):
            other = self.ctx.constant(other)
        if isinstance(other, Polynomial):
            return self._saturate_single(other, order)
        if self.ctx != other.ctx:
            raise ValidationError("ideals from different rings")
        gens = other.nonzero_gens()
        if not gens:
            return Ideal(self.ctx, [self.ctx.one()])
        current = self
        while True:
            parts = [current._saturate_single(g, order) for g in gens]
            nxt = parts[0]
            for p in parts[1:]:
                nxt = _intersect(nxt, p)
            if nxt.equals(current):
                return nxt
            current = nxt

    def _saturate_single(self, h: Polynomial, order: Optional[MonomialOrder] = None) -> "Ideal":
        """One Rabinowitsch elimination: adjoin u, add 1 - u*h, eliminate u.

        `order` may refine the tie-break below the fresh variable's block;
        it is rebuilt for the extended ring, so pass a factory taking the
        tag index when customizing (see rees).
        """
        if h.ctx != self.ctx:
            raise ValidationError("element from a different ring")
        if h.is_zero:
            return Ideal(self.ctx, [self.ctx.one()])
        if h.is_constant:
            return Ideal(self.ctx, self.gens)
        ext = self.ctx.extend((_fresh_name(self.ctx, "@u"),))
        u = ext.var(ext.var_names[-1])
        gens = [ext.lift_poly(g) for g in self.nonzero_gens()]
        gens.append(ext.one() - u * ext.lift_poly(h))
        tagged = Ideal(ext, gens)
        if callable(order):
            order = order(ext.nvars - 1)
        kept = tagged.eliminate([ext.nvars - 1], order)
        return Ideal(self.ctx, _drop_last_vars(self.ctx, kept.gens, 1))

    # -- invariants ------------------------------------------------------------

    def initial_ideal(self, order: MonomialOrder = GREVLEX) -> MonomialIdeal:
        return MonomialIdeal(
            self.ctx, (g.leading_monomial(order) for g in self.groebner_basis(order))
        )

    def krull_dimension(self, order: MonomialOrder = GREVLEX) -> int:
        """Dimension of (ambient ring)/(self + K); -1 for the zero ring."""
        M = self.initial_ideal(order)
        if M.is_unit:
            return -1
        supports = [frozenset(i for i, e in enumerate(g) if e) for g in M.gens]
        return self.ctx.nvars - _min_cover(supports)

    def is_primary_to_max(self, order: MonomialOrder = GREVLEX) -> bool:
        """True iff the initial ideal contains a pure power of every variable."""
        M = self.initial_ideal(order)
        if M.is_unit:
            return True
        covered = set()
        for g in M.gens:
            nz = [i for i, e in enumerate(g) if e]
            if len(nz) == 1:
                covered.add(nz[0])
        return len(covered) == self.ctx.nvars

    def k_dimension(self, order: MonomialOrder = GREVLEX) -> int:
        """Number of standard monomials; errors unless zero-dimensional."""
        M = self.initial_ideal(order)
        if M.is_unit:
            return 0
        return count_standard_monomials(M.gens, self.ctx.nvars)

    def has_positive_grade(self) -> bool:
        """True iff the ideal contains a nonzerodivisor of the quotient ring."""
        gens = self.nonzero_gens()
        if not gens:
            return False
        K = self.ctx.quotient_gens
        if not K:
            return True
        plain = self.ctx.without_quotient()
        kp = Ideal(plain, [Polynomial(plain, k._d) for k in K])
        col = kp.colon(Ideal(plain, [Polynomial(plain, g._d) for g in gens]))
        return col.equals(kp)


# -- helpers ---------------------------------------------------------------


def _drop_last_vars(ctx: RingContext, polys: Sequence[Polynomial], k: int):
    out = []
    for p in polys:
        d = {}
        for e, c in p._d.items():
            if any(e[-k:]):
                raise ValidationError("polynomial still involves eliminated variables")
            d[e[:-k]] = c
        out.append(Polynomial(ctx, d))
    return out


def _intersect_plain(
    plain: RingContext, gens_a: Sequence[Polynomial], gens_b: Sequence[Polynomial]
) -> List[Polynomial]:
    """Intersection of two ideals of the plain polynomial ring (tag variable)."""
    ext = plain.extend((_fresh_name(plain, "@t"),))
    t = ext.var(ext.var_names[-1])
    one_minus_t = ext.one() - t
    gens = [ext.lift_poly(p) * t for p in gens_a if not p.is_zero]
    gens += [ext.lift_poly(p) * one_minus_t for p in gens_b if not p.is_zero]
    tagged = Ideal(ext, gens)
    kept = tagged.eliminate([ext.nvars - 1])
    return _drop_last_vars(plain, kept.gens, 1)


def _intersect(a: Ideal, b: Ideal) -> Ideal:
    plain = a.ctx.without_quotient()
    K = [Polynomial(plain, k._d) for k in a.ctx.quotient_gens]
    ga = [Polynomial(plain, g._d) for g in a.nonzero_gens()] + K
    gb = [Polynomial(plain, g._d) for g in b.nonzero_gens()] + K
    inter = _intersect_plain(plain, ga, gb)
    return Ideal(a.ctx, [Polynomial(a.ctx, p._d) for p in inter])


def exact_divide(p: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Quotient p/g when g divides p exactly; error otherwise."""
    if g.is_zero:
        raise ValidationError("division by the zero polynomial")
    ctx = p.ctx
    q: dict = {}
    r = p
    ge, gc = g.leading_term(order)
    while not r.is_zero:
        re, rc = r.leading_term(order)
        delta = tuple(a - b for a, b in zip(re, ge))
        if any(x < 0 for x in delta):
            raise ValidationError("polynomial is not exactly divisible")
        c = rc / gc
        q[delta] = c
        r = r - Polynomial(ctx, {delta: c}) * g
    return Polynomial(ctx, q)


def _min_cover(supports: Sequence[frozenset]) -> int:
    """Size of a minimum transversal of the support hypergraph."""
    supps = [s for s in supports if s]
    if not supps:
        return 0
    # remove supersets: a cover hitting the subset hits the superset
    supps.sort(key=len)
    reduced: List[frozenset] = []
    for s in supps:
        if not any(t <= s for t in reduced):
            reduced.append(s)
    best = [len(reduced)]  # achievable: one vertex per reduced support

    def rec(remaining: List[frozenset], picked: int):
        if not remaining:
            if picked < best[0]:
                best[0] = picked
            return
        if picked + 1 >= best[0]:
            return
        s = min(remaining, key=len)
        for v in sorted(s):
            rest = [t for t in remaining if v not in t]
            rec(rest, picked + 1)

    rec(reduced, 0)
    return best[0]


def count_standard_monomials(gens: Sequence[Exps], nvars: int) -> int:
    """Count monomials outside the monomial ideal; errors if infinite."""
    gens = minimalize_monomials(gens)
    if any(not any(e) for e in gens):
        return 0
    bounds = [None] * nvars
    for g in gens:
        nz = [i for i, e in enumerate(g) if e]
        if len(nz) == 1:
            i = nz[0]
            if bounds[i] is None or g[i] < bounds[i]:
                bounds[i] = g[i]
    if any(b is None for b in bounds):
        raise NotZeroDimensionalError(
            "quotient is not a finite-dimensional vector space"
        )
    mixed = [g for g in gens if len([e for e in g if e]) > 1]
    total = 0
    exps = [0] * nvars

    def rec(i: int):
        nonlocal total
        if i == nvars:
            e = tuple(exps)
            for g in mixed:
                for a, b in zip(g, e):
                    if a > b:
                        break
                else:
                    return
            total += 1
            return
        for v in range(bounds[i]):
            exps[i] = v
            rec(i + 1)
        exps[i] = 0

    rec(0)
    return total
