"""Sparse multivariate polynomials over the rationals.

A `RingContext` fixes an ordered variable set, a multigrading (one row of
nonnegative integers per variable) and an optional list of quotient
relations, so it models both Q[x...] and Q[x...]/K.  A `Polynomial` is an
immutable map from exponent tuples to nonzero `fractions.Fraction`
coefficients anchored to a context.  All arithmetic is exact.

Exponents are kept below 2**62; arithmetic that would cross the bound
aborts with `ExponentOverflowError` instead of silently producing huge
monomials (coefficients are unbounded by design).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import ExponentOverflowError, ValidationError
from .orders import GREVLEX, MonomialOrder

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]

EXPONENT_LIMIT = 1 << 62


class RingContext:
    """Ordered variables, a multigrading, and optional quotient relations."""

    __slots__ = ("var_names", "grading", "_quotient_raw", "_quotient", "_pos")

    def __init__(self, var_names: Sequence[str], grading=None, quotient=()):
        names = tuple(str(v) for v in var_names)
        if len(set(names)) != len(names):
            raise ValidationError("variable names must be distinct: %r" % (names,))
        if not names:
            raise ValidationError("a ring needs at least one variable")
        self.var_names = names
        n = len(names)
        if grading is None:
            grading = tuple((1,) for _ in names)
        grading = tuple(tuple(int(x) for x in row) for row in grading)
        if len(grading) != n or len(set(len(r) for r in grading)) > 1:
            raise ValidationError("grading needs one uniform-length row per variable")
        if any(x < 0 for row in grading for x in row):
            raise ValidationError("grading entries must be nonnegative")
        self.grading = grading
        raw = []
        for g in quotient:
            data = g._d if isinstance(g, Polynomial) else dict(g)
            items = tuple(sorted((tuple(e), Fraction(c)) for e, c in data.items()))
            for e, _ in items:
                if len(e) != n:
                    raise ValidationError("quotient relation has wrong arity")
            if items:
                raw.append(items)
        self._quotient_raw = tuple(raw)
        self._quotient = None
        self._pos = {v: i for i, v in enumerate(names)}

    # -- basic queries ----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @property
    def grading_rank(self) -> int:
        return len(self.grading[0])

    @property
    def quotient_gens(self) -> Tuple["Polynomial", ...]:
        if self._quotient is None:
            self._quotient = tuple(
                Polynomial(self, dict(items)) for items in self._quotient_raw
            )
        return self._quotient

    @property
    def is_quotient(self) -> bool:
        return bool(self._quotient_raw)

    def index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise ValidationError("unknown variable %r" % name) from None

    def __eq__(self, other):
        return (
            isinstance(other, RingContext)
            and self.var_names == other.var_names
            and self.grading == other.grading
            and self._quotient_raw == other._quotient_raw
        )

    def __hash__(self):
        return hash((self.var_names, self.grading, self._quotient_raw))

    def __repr__(self):
        base = "Q[%s]" % ",".join(self.var_names)
        if self._quotient_raw:
            base += "/(%s)" % ", ".join(str(g) for g in self.quotient_gens)
        return base

    # -- element constructors ---------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.var_names)

    def monomial(self, exps: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(int(x) for x in exps): Fraction(coeff)})

    # -- derived contexts ---------------------------------------------------

    def extend(self, new_names: Sequence[str], new_rows=None) -> "RingContext":
        """Append variables; existing polynomials lift via `lift_poly`."""
        new_names = tuple(str(v) for v in new_names)
        rank = self.grading_rank
        if new_rows is None:
            new_rows = tuple((0,) * rank for _ in new_names)
        grading = self.grading + tuple(tuple(r) for r in new_rows)
        pad = (0,) * len(new_names)
        quotient = [
            {e + pad: c for e, c in items} for items in self._quotient_raw
        ]
        return RingContext(self.var_names + new_names, grading, quotient)

    def with_grading(self, grading) -> "RingContext":
        return RingContext(self.var_names, grading, list(self._quotient_raw))

    def with_quotient(self, gens: Iterable["Polynomial"]) -> "RingContext":
        """Same variables, quotient relations extended by `gens`."""
        extra = []
        for g in gens:
            if isinstance(g, Polynomial) and g.ctx.var_names != self.var_names:
                raise ValidationError("quotient relation from a different ring")
            extra.append(g)
        base = [dict(items) for items in self._quotient_raw]
        return RingContext(self.var_names, self.grading, base + extra)

    def without_quotient(self) -> "RingContext":
        return RingContext(self.var_names, self.grading)

    def lift_poly(self, p: "Polynomial") -> "Polynomial":
        """Reinterpret `p` in this context (variable names must be a prefix)."""
        if p.ctx.var_names == self.var_names:
            return Polynomial(self, p._d)
        k = len(p.ctx.var_names)
        if self.var_names[:k] != p.ctx.var_names:
            raise ValidationError("cannot lift between unrelated rings")
        pad = (0,) * (self.nvars - k)
        return Polynomial(self, {e + pad: c for e, c in p._d.items()})

    def exps_degree(self, exps: Exponents) -> Tuple[int, ...]:
        """Grading-weighted degree vector of a monomial."""
        deg = [0] * self.grading_rank
        for e, row in zip(exps, self.grading):
            if e:
                for j, w in enumerate(row):
                    if w:
                        deg[j] += e * w
        return tuple(deg)


def _check_exps(e: Exponents):
    for x in e:
        if x < 0:
            raise ValidationError("negative exponent")
        if x >= EXPONENT_LIMIT:
            raise ExponentOverflowError("exponent exceeds %d" % EXPONENT_LIMIT)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ctx", "_d", "_hash")

    def __init__(self, ctx: RingContext, terms: Mapping[Exponents, Scalar]):
        d = {}
        n = ctx.nvars
        for e, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            e = tuple(e)
            if len(e) != n:
                raise ValidationError(
                    "monomial arity %d does not match ring arity %d" % (len(e), n)
                )
            _check_exps(e)
            d[e] = c
        self.ctx = ctx
        self._d = d
        self._hash = None

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._d

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self._d)

    def __len__(self):
        return len(self._d)

    def terms(self, order: MonomialOrder = GREVLEX):
        """Terms as (exponents, coefficient) pairs, decreasing in `order`."""
        nk = order.neg_key(self.ctx.nvars)
        return [(e, self._d[e]) for e in sorted(self._d, key=nk)]

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._d.get(tuple(exps), Fraction(0))

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise ValidationError("polynomial is not constant")
        return next(iter(self._d.values()))

    def leading_term(self, order: MonomialOrder = GREVLEX):
        """Maximal (exponents, coefficient) under `order`; error on zero."""
        if not self._d:
            raise ValidationError("the zero polynomial has no leading term")
        key = order.key(self.ctx.nvars)
        e = max(self._d, key=key)
        return e, self._d[e]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Exponents:
        return self.leading_term(order)[0]

    def total_degree(self) -> int:
        if not self._d:
            return -1
        return max(sum(e) for e in self._d)

    def multidegree(self) -> Optional[Tuple[int, ...]]:
        """Common grading degree of all terms, or None if inhomogeneous."""
        if not self._d:
            return (0,) * self.ctx.grading_rank
        degs = {self.ctx.exps_degree(e) for e in self._d}
        if len(degs) == 1:
            return degs.pop()
        return None

    def support_variables(self) -> Tuple[int, ...]:
        seen = set()
        for e in self._d:
            for i, x in enumerate(e):
                if x:
                    seen.add(i)
        return tuple(sorted(seen))

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ValidationError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self._d)
        for e, c in other._d.items():
            v = d.get(e)
            if v is None:
                d[e] = c
            else:
                v = v + c
                if v:
                    d[e] = v
                else:
                    del d[e]
        return Polynomial(self.ctx, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {e: -c for e, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ctx.zero()
            q = Fraction(other)
            return Polynomial(self.ctx, {e: c * q for e, c in self._d.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._d, other._d
        if len(a) > len(b):
            a, b = b, a
        d = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = d.get(e)
                d[e] = ca * cb if v is None else v + ca * cb
        for e in d:
            _check_exps(e)
        return Polynomial(self.ctx, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValidationError("negative power of a polynomial")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __bool__(self):
        return bool(self._d)

    # -- structural operations ------------------------------------------------

    def substitute_zero(self, var_indices) -> "Polynomial":
        """Delete every term that involves one of the given variables."""
        kill = set(int(i) for i in var_indices)
        d = {e: c for e, c in self._d.items() if not any(e[i] for i in kill)}
        return Polynomial(self.ctx, d)

    def homogenize(self, var_index: int, target_degree: int) -> "Polynomial":
        """Pad each term with var^(target - total degree); error if too big."""
        i = int(var_index)
        d = {}
        for e, c in self._d.items():
            rest = sum(e) - e[i]
            if e[i]:
                raise ValidationError(
                    "homogenization variable already occurs in the polynomial"
                )
            if rest > target_degree:
                raise ValidationError(
                    "term of degree %d exceeds target degree %d" % (rest, target_degree)
                )
            ne = list(e)
            ne[i] = target_degree - rest
            d[tuple(ne)] = c
        return Polynomial(self.ctx, d)

    def partial_derivative(self, var_index: int) -> "Polynomial":
        i = int(var_index)
        d = {}
        for e, c in self._d.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                d[tuple(ne)] = c * e[i]
        return Polynomial(self.ctx, d)

    def substitute(self, target: RingContext, images: Sequence["Polynomial"]):
        """Ring map sending variable i to images[i]; exact, by term."""
        if len(images) != self.ctx.nvars:
            raise ValidationError("need one image per variable")
        total = target.zero()
        cache = {}
        for e, c in self._d.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    pw = cache.get((i, k))
                    if pw is None:
                        pw = images[i] ** k
                        cache[(i, k)] = pw
                    term = term * pw
            total = total + term
        return total

    def set_variable_to_one(self, var_index: int) -> "Polynomial":
        i = int(var_index)
        d = {}
        for e, c in self._d.items():
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            v = d.get(ne)
            v = c if v is None else v + c
            if v:
                d[ne] = v
            elif ne in d:
                del d[ne]
        return Polynomial(self.ctx, d)

    # -- printing ---------------------------------------------------------

    def _term_str(self, e: Exponents, c: Fraction) -> str:
        factors = []
        for name, k in zip(self.ctx.var_names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append("%s^%d" % (name, k))
        if not factors:
            return _coeff_str(c)
        if c == 1:
            return "*".join(factors)
        if c == -1:
            return "-" + "*".join(factors)
        return _coeff_str(c) + "*" + "*".join(factors)

    def __str__(self):
        if not self._d:
            return "0"
        parts = []
        for e, c in self.terms():
            s = self._term_str(e, c)
            if not parts:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(" - " + s[1:])
            else:
                parts.append(" + " + s)
        return "".join(parts)

    def __repr__(self):
        return "Polynomial(%s)" % self


def _coeff_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)
