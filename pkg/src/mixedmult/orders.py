"""Monomial orders on exponent tuples.

Public kinds: lex, grevlex (the default everywhere), and elimination
block orders (the eliminated block compared by grevlex first, ties broken
by grevlex on the rest, so any monomial touching the block dominates all
block-free monomials).

Internally every non-lex order is a chain of segments, each segment a
group of variables compared by (total degree, reversed exponents); the
two-segment chain is the elimination order and longer chains give the
tower orders used for blowup rings.  `key` sorts ascending in the order,
`neg_key` descending; both return flat tuples of ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Tuple

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    kind: str  # "lex" | "grevlex" | "elim" | "block"
    elim: Tuple[int, ...] = ()  # variable indices compared first (elim only)
    blocks: Tuple[Tuple[int, ...], ...] = ()  # leading segments (block only)

    def segments(self, nvars: int) -> Tuple[Tuple[int, ...], ...]:
        """Variable segments compared in sequence, covering all variables."""
        if self.kind == "grevlex":
            return (tuple(range(nvars)),)
        if self.kind == "elim":
            block = tuple(sorted(set(self.elim)))
            rest = tuple(i for i in range(nvars) if i not in set(block))
            return (block, rest) if rest else (block,)
        if self.kind == "block":
            used = set()
            segs = []
            for b in self.blocks:
                seg = tuple(sorted(set(b) - used))
                if seg:
                    segs.append(seg)
                    used.update(seg)
            rest = tuple(i for i in range(nvars) if i not in used)
            if rest:
                segs.append(rest)
            return tuple(segs)
        raise ValueError("lex order has no segment structure")

    def key(self, nvars: int) -> Callable[[Exponents], tuple]:
        if self.kind == "lex":
            return lambda e: e
        segs = self.segments(nvars)

        def _key(e, _segs=segs):
            out = []
            for seg in _segs:
                out.append(sum(e[i] for i in seg))
                out.append(tuple(-e[i] for i in reversed(seg)))
            return tuple(out)

        return _key

    def neg_key(self, nvars: int) -> Callable[[Exponents], tuple]:
        if self.kind == "lex":
            return lambda e: tuple(-x for x in e)
        segs = self.segments(nvars)

        def _nkey(e, _segs=segs):
            out = []
            for seg in _segs:
                out.append(-sum(e[i] for i in seg))
                out.append(tuple(e[i] for i in reversed(seg)))
            return tuple(out)

        return _nkey

    def greater(self, a: Exponents, b: Exponents) -> bool:
        k = self.key(len(a))
        return k(a) > k(b)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(indices) -> MonomialOrder:
    """Block order that eliminates the given variable indices."""
    idx = tuple(sorted(set(int(i) for i in indices)))
    if not idx:
        return GREVLEX
    return MonomialOrder("elim", idx)


def block_order(*segments) -> MonomialOrder:
    """Chain of grevlex segments; variables not mentioned form a last segment."""
    segs = tuple(tuple(sorted(set(int(i) for i in seg))) for seg in segments)
    segs = tuple(s for s in segs if s)
    if not segs:
        return GREVLEX
    return MonomialOrder("block", blocks=segs)
