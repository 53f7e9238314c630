"""Buchberger engine on packed-integer monomials (internal).

A monomial lives in two parallel encodings, both single Python ints:

  plain key  p = sum e_j << (W j)       one W-bit field per variable,
                                        top bit of each field reserved;
  sort key   s                          field layout chosen per monomial
                                        order so that integer comparison
                                        of sort keys IS the order.

Both encodings are affine in the exponents, so a monomial product is one
integer addition per key, divisibility is a masked subtraction against the
guard bits, and the reduction heap stores plain ints.  Coefficients are
kept fraction-free: every polynomial is a primitive integer combination,
reductions are pseudo-divisions with gcd-managed scaling.

Pair management follows Gebauer-Moeller (product criterion, lcm
domination, equal-lcm collapsing, back-pruning); selection is the normal
strategy, smallest lcm in the active order.  Generators that are plain
variables are substituted away before the run: the reduced basis of
(x) + I is {x} together with the reduced basis of I at x = 0.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ExponentOverflowError

Exps = Tuple[int, ...]
IntTerms = Dict[Exps, int]

_W = 24
_CAP = 1 << (_W - 1)  # exponents must stay below this
_PACK_LIMIT = 1 << (_W - 2)  # input bound, one doubling of headroom


class Codec:
    """Packs exponent tuples into plain/sort integer keys for one order."""

    __slots__ = ("nvars", "order", "guards", "fmask", "s_one", "_segs")

    def __init__(self, nvars: int, order):
        self.nvars = nvars
        self.order = order
        self.fmask = (1 << _W) - 1
        self.guards = 0
        for j in range(nvars):
            self.guards |= 1 << (_W * j + _W - 1)
        self._segs = None if order.kind == "lex" else order.segments(nvars)
        self.s_one = self.sort_key((0,) * nvars)

    def plain(self, exps: Exps) -> int:
        p = 0
        for j, e in enumerate(exps):
            if e >= _PACK_LIMIT:
                raise ExponentOverflowError("exponent %d too large to pack" % e)
            p |= e << (_W * j)
        return p

    def unpack(self, p: int) -> Exps:
        fm = self.fmask
        return tuple((p >> (_W * j)) & fm for j in range(self.nvars))

    def sort_key(self, exps: Exps) -> int:
        if self._segs is None:  # lex
            n = self.nvars
            s = 0
            for j, e in enumerate(exps):
                s |= e << (_W * (n - 1 - j))
            return s
        # chain of grevlex segments: [deg | complemented fields] per segment
        s = 0
        for seg in self._segs:
            seg_deg = 0
            body = 0
            for k, i in enumerate(seg):
                e = exps[i]
                seg_deg += e
                body |= (_CAP - e) << (_W * k)
            s <<= 2 * _W
            s |= seg_deg
            s <<= _W * len(seg)
            s |= body
        return s

    def pack(self, exps: Exps) -> Tuple[int, int]:
        return self.sort_key(exps), self.plain(exps)

    def divides(self, p_div: int, p_mon: int) -> bool:
        g = self.guards
        return ((p_mon | g) - p_div) & g == g


STerm = Tuple[int, int, int]  # (sort key, plain key, coefficient)


class Basis:
    """Working basis: parallel arrays over packed monomials.

    `active` indices are the ones scanned during reduction; an element is
    retired when a later element's lead divides its lead (the newer one
    reduces everything the older one did).
    """

    __slots__ = (
        "codec", "lead_s", "lead_p", "lcs", "tails", "terms", "lead_exps",
        "masks", "active",
    )

    def __init__(self, codec: Codec):
        self.codec = codec
        self.lead_s: List[int] = []
        self.lead_p: List[int] = []
        self.lcs: List[int] = []
        self.tails: List[List[STerm]] = []
        self.terms: List[List[STerm]] = []
        self.lead_exps: List[Exps] = []
        self.masks: List[int] = []
        self.active: List[int] = []

    def __len__(self):
        return len(self.lead_s)

    def append(self, terms: List[STerm]):
        """terms must be sorted descending by sort key."""
        s, p, c = terms[0]
        if c < 0:
            terms = [(ts, tp, -tc) for ts, tp, tc in terms]
            c = -c
        exps = self.codec.unpack(p)
        mask = 0
        for j, e in enumerate(exps):
            if e:
                mask |= 1 << j
        t = len(self.lead_s)
        self.lead_s.append(s)
        self.lead_p.append(p)
        self.lcs.append(c)
        self.tails.append(terms[1:])
        self.terms.append(terms)
        self.lead_exps.append(exps)
        self.masks.append(mask)
        # retire older elements whose lead the new one divides
        divides = self.codec.divides
        keep = []
        for i in self.active:
            if not (mask & ~self.masks[i]) and divides(p, self.lead_p[i]):
                continue
            keep.append(i)
        keep.append(t)
        self.active = keep

    def append_int_terms(self, d: IntTerms):
        codec = self.codec
        trip = sorted(
            ((codec.sort_key(e), codec.plain(e), c) for e, c in d.items()),
            reverse=True,
        )
        self.append(trip)


def int_terms(frac_terms) -> IntTerms:
    """Clear denominators and content; {} for zero."""
    if not frac_terms:
        return {}
    den = 1
    for c in frac_terms.values():
        d = c.denominator
        den = den * d // gcd(den, d)
    out = {e: int(c * den) for e, c in frac_terms.items()}
    g = 0
    for c in out.values():
        g = gcd(g, c)
        if g == 1:
            return out
    if g > 1:
        for e in out:
            out[e] //= g
    return out


def reduce_terms(items: List[STerm], basis: Basis, track_mult=False):
    """Full normal form of the polynomial given by `items`.

    Returns (remainder as a descending STerm list, multiplier m) with
    m * input = remainder modulo the basis ideal.  Without track_mult the
    remainder is made primitive and m is meaningless.
    """
    codec = basis.codec
    guards = codec.guards
    lead_p = basis.lead_p
    lcs = basis.lcs
    tails = basis.tails
    masks = basis.masks
    active = basis.active
    unpack = codec.unpack
    work: Dict[int, int] = {}
    heap: List[Tuple[int, int]] = []
    for s, p, c in items:
        v = work.get(p)
        if v is None:
            work[p] = c
            heap.append((-s, p))
        else:
            v += c
            if v:
                work[p] = v
            else:
                del work[p]
    heapify(heap)
    mult = 1
    rem: List[Tuple[int, int, int, int]] = []  # (-s, p, coeff, mult at insert)
    while heap:
        ns, p = heappop(heap)
        c = work.get(p)
        if not c:
            work.pop(p, None)
            continue
        del work[p]
        pmask = 0
        q = p
        j = 0
        fm = codec.fmask
        while q:
            if q & fm:
                pmask |= 1 << j
            q >>= _W
            j += 1
        pg = p | guards
        hit = -1
        for i in active:
            if not (masks[i] & ~pmask) and (pg - lead_p[i]) & guards == guards:
                hit = i
                break
        if hit < 0:
            rem.append((ns, p, c, mult))
            continue
        lc = lcs[hit]
        g = gcd(lc, c)
        a = lc // g
        s_fac = c // g
        if a != 1:
            mult *= a
            for k in work:
                work[k] *= a
        dp = p - lead_p[hit]
        ds = -ns - basis.lead_s[hit] + codec.s_one
        for ts, tp, tc in tails[hit]:
            np_ = dp + tp
            v = work.get(np_)
            if v is None:
                if np_ & guards:
                    raise ExponentOverflowError("monomial exponent overflow")
                work[np_] = -s_fac * tc
                heappush(heap, (-(ds + ts - codec.s_one), np_))
            else:
                v -= s_fac * tc
                if v:
                    work[np_] = v
                else:
                    del work[np_]
    out = [(-ns, p, c * (mult // at)) for ns, p, c, at in rem]
    if not track_mult and out:
        g = 0
        for _, _, c in out:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            out = [(s, p, c // g) for s, p, c in out]
    return out, mult


def _spoly(basis: Basis, i: int, j: int) -> List[STerm]:
    codec = basis.codec
    ei, ej = basis.lead_exps[i], basis.lead_exps[j]
    L = tuple(a if a > b else b for a, b in zip(ei, ej))
    ci, cj = basis.lcs[i], basis.lcs[j]
    g = gcd(ci, cj)
    mi = cj // g
    mj = ci // g
    sL, pL = codec.pack(L)
    dsi, dpi = sL - basis.lead_s[i], pL - basis.lead_p[i]
    dsj, dpj = sL - basis.lead_s[j], pL - basis.lead_p[j]
    acc: Dict[int, Tuple[int, int]] = {}
    for ts, tp, tc in basis.terms[i]:
        acc[dpi + tp] = (dsi + ts, mi * tc)
    for ts, tp, tc in basis.terms[j]:
        p = dpj + tp
        got = acc.get(p)
        if got is None:
            acc[p] = (dsj + ts, -mj * tc)
        else:
            v = got[1] - mj * tc
            if v:
                acc[p] = (got[0], v)
            else:
                del acc[p]
    return sorted(((s, p, c) for p, (s, c) in acc.items()), reverse=True)


def _update_pairs(basis: Basis, pair_heap, alive, lcms, t: int):
    """Gebauer-Moeller update; `lcms` maps alive pairs to packed lcms."""
    codec = basis.codec
    guards = codec.guards
    leads = basis.lead_exps
    lt = leads[t]
    pt = basis.lead_p[t]
    mt = basis.masks[t]
    masks = basis.masks
    # one candidate per distinct lcm, preferring a coprime representative
    by_lcm: Dict[int, Tuple[int, int, int, bool]] = {}
    for i in range(t):
        li = leads[i]
        L = tuple(a if a > b else b for a, b in zip(li, lt))
        Lp = codec.plain(L)
        cop = not (masks[i] & mt)
        cur = by_lcm.get(Lp)
        if cur is None:
            by_lcm[Lp] = (sum(L), i, codec.sort_key(L), cop)
        elif cop and not cur[3]:
            by_lcm[Lp] = (cur[0], i, cur[2], True)
    # lcm domination (proper division), checked against kept lcms only
    kept: List[Tuple[int, int, int, int, bool]] = []
    for Lp, (deg, i, Ls, cop) in sorted(by_lcm.items(), key=lambda kv: kv[1][0]):
        Lg = Lp | guards
        dominated = False
        for kdeg, kp, _, _, _ in kept:
            if kdeg >= deg:
                break
            if (Lg - kp) & guards == guards:
                dominated = True
                break
        if not dominated:
            kept.append((deg, Lp, Ls, i, cop))
    # back-prune old pairs strictly divisible by the new lead
    for pair in list(alive):
        Lp_old = lcms[pair]
        if (Lp_old | guards) - pt & guards != guards:
            continue
        i, j = pair
        Lo = codec.unpack(Lp_old)
        if (
            tuple(a if a > b else b for a, b in zip(leads[i], lt)) != Lo
            and tuple(a if a > b else b for a, b in zip(leads[j], lt)) != Lo
        ):
            alive.discard(pair)
            del lcms[pair]
    for deg, Lp, Ls, i, cop in kept:
        if cop:
            continue
        alive.add((i, t))
        lcms[(i, t)] = Lp
        heappush(pair_heap, (Ls, i, t))


def _buchberger(seeds: List[List[STerm]], codec: Codec) -> Optional[Basis]:
    """Run Buchberger to closure; None flags the unit ideal."""
    basis = Basis(codec)
    pair_heap: list = []
    alive: set = set()
    lcms: Dict[Tuple[int, int], Exps] = {}

    def insert(items: List[STerm]) -> bool:
        rem, _ = reduce_terms(items, basis)
        if not rem:
            return False
        if len(rem) == 1 and rem[0][1] == 0:
            return True
        basis.append(rem)
        _update_pairs(basis, pair_heap, alive, lcms, len(basis) - 1)
        return False

    for items in sorted(seeds, key=lambda ts: ts[0][0]):
        if insert(items):
            return None
    while pair_heap:
        _, i, j = heappop(pair_heap)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        del lcms[(i, j)]
        if insert(_spoly(basis, i, j)):
            return None
    return basis


def _interreduce(basis: Basis) -> List[List[STerm]]:
    """Minimalize heads and tail-reduce; heads are untouched by design."""
    codec = basis.codec
    order_idx = sorted(range(len(basis)), key=lambda i: basis.lead_s[i])
    minimal = Basis(codec)
    for i in order_idx:
        lp = basis.lead_p[i]
        ok = True
        for kp in minimal.lead_p:
            if codec.divides(kp, lp):
                ok = False
                break
        if ok:
            minimal.append(basis.terms[i])
    guards = codec.guards
    out = []
    for i in range(len(minimal)):
        tail = minimal.tails[i]
        reducible = False
        for _, tp, _ in tail:
            tg = tp | guards
            for k in minimal.active:
                if (tg - minimal.lead_p[k]) & guards == guards:
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            out.append(minimal.terms[i])
            continue
        rem, mult = reduce_terms(list(tail), minimal, track_mult=True)
        items = [(minimal.lead_s[i], minimal.lead_p[i], minimal.lcs[i] * mult)]
        items.extend(rem)
        g = 0
        for _, _, c in items:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            items = [(s, p, c // g) for s, p, c in items]
        out.append(items)
    return out


def reduced_groebner(frac_dicts, nvars: int, order) -> List[Dict[Exps, Fraction]]:
    """Reduced, monic Groebner basis; ascending by leading monomial.

    Input and output are dict[exponent tuple -> Fraction]; the zero ideal
    yields [] and the unit ideal yields a single constant 1.
    """
    codec = Codec(nvars, order)
    seeds: List[IntTerms] = []
    for fd in frac_dicts:
        d = int_terms(fd)
        if d:
            seeds.append(d)
    unit = {(0,) * nvars: Fraction(1)}
    killed, seeds = _kill_variables(seeds)
    if seeds is None:
        return [unit]
    packed = []
    for d in seeds:
        packed.append(sorted(
            ((codec.sort_key(e), codec.plain(e), c) for e, c in d.items()),
            reverse=True,
        ))
    basis = _buchberger(packed, codec) if packed else Basis(codec)
    if basis is None:
        return [unit]
    for v in killed:
        e = [0] * nvars
        e[v] = 1
        e = tuple(e)
        basis.append([(codec.sort_key(e), codec.plain(e), 1)])
    final = _interreduce(basis)
    out = []
    for items in final:
        lc = items[0][2]
        out.append({codec.unpack(p): Fraction(c, lc) for _, p, c in items})
    out.sort(key=lambda d: codec.sort_key(max(d, key=codec.sort_key)))
    return out


def _kill_variables(seeds: List[IntTerms], *, _unused=None):
    """Substitute away generators that are single variables.

    Returns (killed variable indices, remaining seeds with those variables
    set to zero); (killed, None) flags the unit ideal.
    """
    killed: set = set()
    polys = [d for d in seeds if d]
    while True:
        rest = []
        new = set()
        for d in polys:
            if len(d) == 1:
                (m, _), = d.items()
                s = sum(m)
                if s == 0:
                    return sorted(killed), None
                if s == 1:
                    v = m.index(1)
                    if v not in killed:
                        new.add(v)
                    continue
            rest.append(d)
        if not new:
            return sorted(killed), rest
        killed |= new
        polys = []
        for d in rest:
            nd = {m: c for m, c in d.items() if not any(m[v] for v in killed)}
            if nd:
                polys.append(nd)


class Reducer:
    """Normal forms against a fixed reduced basis (packed once, reused)."""

    def __init__(self, nvars: int, order, basis_frac_dicts):
        self.codec = Codec(nvars, order)
        self.basis = Basis(self.codec)
        for fd in basis_frac_dicts:
            d = int_terms(fd)
            if d:
                self.basis.append_int_terms(d)

    def normal_form(self, frac_dict) -> Dict[Exps, Fraction]:
        if not frac_dict:
            return {}
        den = 1
        for c in frac_dict.values():
            d = c.denominator
            den = den * d // gcd(den, d)
        codec = self.codec
        items = sorted(
            ((codec.sort_key(e), codec.plain(e), int(c * den))
             for e, c in frac_dict.items()),
            reverse=True,
        )
        rem, mult = reduce_terms(items, self.basis, track_mult=True)
        scale = Fraction(1, den * mult)
        return {codec.unpack(p): c * scale for _, p, c in rem}
