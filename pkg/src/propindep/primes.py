"""Prime implicates and prime implicants.

Implicates come from Tison's method: starting from an equivalent clause set,
each variable in turn contributes all resolvents on it, with forward and
backward subsumption.  After one pass over the variables the surviving
clauses are exactly the prime implicates.  Implicants are obtained by
duality from the implicates of the negation.

Degenerate ends: an inconsistent formula has the empty clause as its only
prime implicate and no prime implicant; a valid formula has no prime
implicate and the empty term as its only prime implicant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .clauses import Codec, Packed, SubsumptionIndex, remove_subsumed, resolvents, subsumes
from .errors import OutputSizeExceeded, PrimesLimitExceeded
from .formula import (
    NOT,
    Formula,
    Literal,
    canonical_order,
    clauses_to_formula,
    format_lits,
    terms_to_formula,
)
from .sat import to_equivalent_cnf

DEFAULT_LIMIT = 20000

IMPLICATES = "implicates"
IMPLICANTS = "implicants"


@dataclass(frozen=True)
class PrimeSet:
    kind: str
    members: frozenset

    def __iter__(self) -> Iterator[frozenset[Literal]]:
        return iter(canonical_order(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        return frozenset(item) in self.members

    def literals(self) -> frozenset[Literal]:
        return frozenset(l for m in self.members for l in m)

    def variables(self) -> frozenset[str]:
        return frozenset(l.var for m in self.members for l in m)

    def formula(self) -> Formula:
        if self.kind == IMPLICATES:
            return clauses_to_formula(self.members)
        return terms_to_formula(self.members)

    def lines(self) -> list[str]:
        joiner = " | " if self.kind == IMPLICATES else " & "
        empty = "false" if self.kind == IMPLICATES else "true"
        return [format_lits(m, joiner) if m else empty for m in self]


def _tison(clauses: list[Packed], nbits: int, limit: Optional[int]) -> list[Packed]:
    current = remove_subsumed(clauses)
    for i in range(nbits):
        if current == [(0, 0)]:
            break
        b = 1 << i
        pos_side = [c for c in current if c[0] & b]
        neg_side = [c for c in current if c[1] & b]
        if not pos_side or not neg_side:
            continue
        added = []
        seen = SubsumptionIndex(current)
        # narrowest first, so no later resolvent can subsume an earlier one
        for r in sorted(resolvents(pos_side, neg_side, b), key=lambda c: ((c[0] | c[1]).bit_count(), c)):
            if seen.subsumed(r):
                continue
            seen.add(r)
            added.append(r)
        if added:
            current = [k for k in current if not any(subsumes(r, k) for r in added)] + added
            if limit is not None and len(current) > limit:
                raise PrimesLimitExceeded(
                    f"prime implicate closure exceeded {limit} clauses"
                )
    return current


def prime_implicates_of_clauses(
    clauses: Iterable[Iterable[Literal]], limit: Optional[int] = DEFAULT_LIMIT
) -> PrimeSet:
    clauses = [frozenset(c) for c in clauses]
    codec = Codec.for_clauses(clauses)
    primes = _tison([codec.pack(c) for c in clauses], len(codec.names), limit)
    return PrimeSet(IMPLICATES, frozenset(codec.unpack(c) for c in primes))


def prime_implicates(f: Formula, limit: Optional[int] = DEFAULT_LIMIT) -> PrimeSet:
    """IP(f); raises :class:`PrimesLimitExceeded` rather than return a partial set."""
    try:
        cnf = to_equivalent_cnf(f, max_clauses=limit)
    except OutputSizeExceeded as exc:
        raise PrimesLimitExceeded(str(exc)) from None
    return prime_implicates_of_clauses(cnf, limit)


def prime_implicants(f: Formula, limit: Optional[int] = DEFAULT_LIMIT) -> PrimeSet:
    """PI(f), as the negated prime implicates of ~f."""
    dual = prime_implicates(Formula(NOT, (f,)), limit)
    return PrimeSet(IMPLICANTS, frozenset(frozenset(~l for l in c) for c in dual.members))


def lit_independent_primes(
    f: Formula, lits: Iterable[Literal], limit: Optional[int] = DEFAULT_LIMIT
) -> bool:
    """No prime implicate of f contains a literal of ``lits``."""
    lits = frozenset(lits)
    if not lits:
        return True
    return not (prime_implicates(f, limit).literals() & lits)


def var_independent_primes(
    f: Formula, names: Iterable[str], limit: Optional[int] = DEFAULT_LIMIT
) -> bool:
    """No prime implicate of f mentions a variable of ``names``."""
    names = frozenset(names)
    if not names:
        return True
    return not (prime_implicates(f, limit).variables() & names)
