"""Clause-level resolution machinery shared by CNF conversion, primes and forgetting.

Clauses are packed as ``(pos, neg)`` pairs of integer bitmasks over a
variable numbering, which makes subsumption and resolution cheap bit
operations.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import OutputSizeExceeded
from .formula import Literal

Packed = tuple[int, int]


class Codec:
    """Bijection between variable names and bit positions (sorted by name)."""

    def __init__(self, names: Iterable[str]):
        self.names = sorted(set(names))
        self.bit = {v: 1 << i for i, v in enumerate(self.names)}

    @classmethod
    def for_clauses(cls, clauses: Iterable[Iterable[Literal]], extra: Iterable[str] = ()) -> "Codec":
        names = set(extra)
        for c in clauses:
            names.update(l.var for l in c)
        return cls(names)

    def pack(self, clause: Iterable[Literal]) -> Packed:
        p = n = 0
        for l in clause:
            if l.positive:
                p |= self.bit[l.var]
            else:
                n |= self.bit[l.var]
        return p, n

    def unpack(self, packed: Packed) -> frozenset[Literal]:
        p, n = packed
        out = []
        for i, v in enumerate(self.names):
            b = 1 << i
            if p & b:
                out.append(Literal(v, True))
            if n & b:
                out.append(Literal(v, False))
        return frozenset(out)


def subsumes(a: Packed, b: Packed) -> bool:
    return not (a[0] & ~b[0]) and not (a[1] & ~b[1])


def _width(c: Packed) -> int:
    return (c[0] | c[1]).bit_count()


def _key(c: Packed) -> Packed:
    # one literal of the clause: its lowest positive bit, else its lowest negative one
    p, n = c
    return (p & -p, 0) if p else (0, n & -n)


def _bits(x: int):
    while x:
        b = x & -x
        yield b
        x ^= b


class SubsumptionIndex:
    """Clauses filed under one of their literals, for fast "is c subsumed?" queries."""

    def __init__(self, clauses: Iterable[Packed] = ()):
        self._by_key: dict[Packed, list[Packed]] = {}
        self.has_empty = False
        for c in clauses:
            self.add(c)

    def add(self, c: Packed) -> None:
        if c == (0, 0):
            self.has_empty = True
        else:
            self._by_key.setdefault(_key(c), []).append(c)

    def subsumed(self, c: Packed) -> bool:
        if self.has_empty:
            return True
        p, n = c
        for key in [(b, 0) for b in _bits(p)] + [(0, b) for b in _bits(n)]:
            for k in self._by_key.get(key, ()):
                if not (k[0] & ~p) and not (k[1] & ~n):
                    return True
        return False


def remove_subsumed(clauses: Iterable[Packed]) -> list[Packed]:
    """Drop tautologies, duplicates and every clause subsumed by another."""
    kept: list[Packed] = []
    index = SubsumptionIndex()
    for c in sorted(set(clauses), key=lambda c: (_width(c), c)):
        if c[0] & c[1] or index.subsumed(c):
            continue
        index.add(c)
        kept.append(c)
    return kept


def resolvents(pos_side: list[Packed], neg_side: list[Packed], bit: int) -> set[Packed]:
    out = set()
    for p in pos_side:
        for n in neg_side:
            rp = (p[0] | n[0]) & ~bit
            rn = (p[1] | n[1]) & ~bit
            if not rp & rn:
                out.add((rp, rn))
    return out


def eliminate(
    clauses: Iterable[Packed],
    bits: Iterable[int],
    max_clauses: Optional[int] = None,
) -> list[Packed]:
    """Davis-Putnam elimination of the given variables, with subsumption.

    Variables are eliminated cheapest first (fewest resolvent pairs, ties by
    bit position), which keeps the result identical for a given input.
    """
    current = remove_subsumed(clauses)
    todo = set(bits)
    while todo:
        def cost(b):
            np_ = sum(1 for c in current if c[0] & b)
            nn = sum(1 for c in current if c[1] & b)
            return (np_ * nn - np_ - nn, b)

        b = min(todo, key=cost)
        todo.discard(b)
        pos_side = [c for c in current if c[0] & b]
        neg_side = [c for c in current if c[1] & b]
        if not pos_side and not neg_side:
            continue
        rest = [c for c in current if not (c[0] | c[1]) & b]
        current = remove_subsumed(rest + list(resolvents(pos_side, neg_side, b)))
        if max_clauses is not None and len(current) > max_clauses:
            raise OutputSizeExceeded(
                f"variable elimination produced {len(current)} clauses (limit {max_clauses})"
            )
        if (0, 0) in current:
            return [(0, 0)]
    return current


def eliminate_vars(
    clauses: Iterable[Iterable[Literal]],
    names: Iterable[str],
    max_clauses: Optional[int] = None,
) -> frozenset[frozenset[Literal]]:
    clauses = [frozenset(c) for c in clauses]
    codec = Codec.for_clauses(clauses)
    bits = [codec.bit[v] for v in set(names) if v in codec.bit]
    out = eliminate((codec.pack(c) for c in clauses), bits, max_clauses)
    return frozenset(codec.unpack(c) for c in out)
