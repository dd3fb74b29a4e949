"""Brute-force model enumeration: ground truth for every semantic notion.

Nothing here is clever on purpose.  Worlds over a variable set ``V`` are
enumerated in lexicographic order of the sorted variable names, the first
variable being the most significant bit of the world index.  Truth tables
are numpy boolean vectors indexed that way.

Every entry point refuses alphabets larger than ``cap`` (default
:data:`DEFAULT_CAP`) with :class:`OracleCapExceeded`; there is no silent
fallback to a smarter method.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Optional

import numpy as np

from .errors import InconsistentLiteralsError, OracleCapExceeded, PartitionError, UnknownVariableError
from .formula import (
    AND,
    FALSE_OP,
    IFF,
    IMP,
    NOT,
    OR,
    TRUE_OP,
    VAR,
    XOR,
    Formula,
    Literal,
    conj,
    disj,
    is_consistent,
    lit_key,
    lits_over,
    literals,
    variables,
)

DEFAULT_CAP = 20


class World(Mapping[str, bool]):
    """Total, immutable truth assignment over a declared variable set."""

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, assignment: Mapping[str, bool] | Iterable[tuple[str, bool]] = ()):
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        items = tuple(sorted((str(k), bool(v)) for k, v in items))
        self._items = items
        self._map = dict(items)
        self._hash = hash(items)

    def __getitem__(self, var: str) -> bool:
        try:
            return self._map[var]
        except KeyError:
            raise UnknownVariableError(var) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, World):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self._map == dict(other)
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={int(v)}" for k, v in self._items)
        return f"World({body})"

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self._map)

    def satisfies(self, lit: Literal) -> bool:
        return self[lit.var] == lit.positive

    def updated(self, **changes: bool) -> "World":
        m = dict(self._map)
        for k, v in changes.items():
            if k not in m:
                raise UnknownVariableError(k)
            m[k] = v
        return World(m)


# -- truth tables -----------------------------------------------------------


def _check_cap(over, cap: Optional[int]) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if len(over) > cap:
        raise OracleCapExceeded(f"{len(over)} variables exceed the brute-force cap of {cap}")


class TruthTable:
    """Column vectors for every variable of ``over``."""

    def __init__(self, over: Iterable[str], cap: Optional[int] = None):
        self.over = tuple(sorted(set(over)))
        _check_cap(self.over, cap)
        n = len(self.over)
        self.n = n
        self.index = np.arange(1 << n, dtype=np.int64)
        self.bit = {v: 1 << (n - 1 - j) for j, v in enumerate(self.over)}
        self.cols = {v: (self.index & b) != 0 for v, b in self.bit.items()}

    def __len__(self) -> int:
        return 1 << self.n

    def eval(self, f: Formula) -> np.ndarray:
        missing = variables(f) - set(self.over)
        if missing:
            raise UnknownVariableError(sorted(missing)[0])
        return self._eval(f)

    def _eval(self, f: Formula) -> np.ndarray:
        op = f.op
        if op == VAR:
            return self.cols[f.name]
        if op == TRUE_OP:
            return np.ones(len(self), dtype=bool)
        if op == FALSE_OP:
            return np.zeros(len(self), dtype=bool)
        if op == NOT:
            return ~self._eval(f.args[0])
        vals = [self._eval(a) for a in f.args]
        if op == AND:
            return np.logical_and.reduce(vals)
        if op == OR:
            return np.logical_or.reduce(vals)
        a, b = vals
        if op == IMP:
            return ~a | b
        if op == IFF:
            return a == b
        if op == XOR:
            return a != b
        raise ValueError(op)

    def lit_col(self, lit: Literal) -> np.ndarray:
        col = self.cols[lit.var]
        return col if lit.positive else ~col

    def forced_index(self, lits: Iterable[Literal]) -> np.ndarray:
        """Index of Force(w, lits) for every world index w."""
        idx = self.index
        for lit in lits:
            b = self.bit[lit.var]
            idx = (idx | b) if lit.positive else (idx & ~b)
        return idx

    def switched_index(self, var: str) -> np.ndarray:
        return self.index ^ self.bit[var]

    def world(self, i: int) -> World:
        return World((v, bool(i & b)) for v, b in self.bit.items())

    def worlds(self, mask: np.ndarray) -> frozenset[World]:
        return frozenset(self.world(int(i)) for i in np.flatnonzero(mask))

    def mask_of(self, worlds: Iterable[Mapping[str, bool]]) -> np.ndarray:
        mask = np.zeros(len(self), dtype=bool)
        for w in worlds:
            i = 0
            for v, b in self.bit.items():
                if w[v]:
                    i |= b
            mask[i] = True
        return mask


def all_worlds(over: Iterable[str], cap: Optional[int] = None) -> Iterator[World]:
    """Every world over ``over``, in lexicographic order."""
    names = tuple(sorted(set(over)))
    _check_cap(names, cap)
    for values in itertools.product((False, True), repeat=len(names)):
        yield World(zip(names, values))


# -- single-world semantics ---------------------------------------------------


def evaluate(f: Formula, w: Mapping[str, bool]) -> bool:
    """Truth value of ``f`` in world ``w`` (standard truth tables)."""
    op = f.op
    if op == VAR:
        try:
            return bool(w[f.name])
        except KeyError:
            raise UnknownVariableError(f.name) from None
    if op == TRUE_OP:
        return True
    if op == FALSE_OP:
        return False
    if op == NOT:
        return not evaluate(f.args[0], w)
    if op == AND:
        return all(evaluate(a, w) for a in f.args)
    if op == OR:
        return any(evaluate(a, w) for a in f.args)
    a = evaluate(f.args[0], w)
    b = evaluate(f.args[1], w)
    if op == IMP:
        return (not a) or b
    if op == IFF:
        return a == b
    if op == XOR:
        return a != b
    raise ValueError(op)


def force(w: World, lits: Iterable[Literal]) -> World:
    """The world closest to ``w`` satisfying every literal of ``lits``."""
    lits = list(lits)
    if not is_consistent(lits):
        raise InconsistentLiteralsError(f"cannot force an inconsistent set: {sorted(map(str, lits))}")
    m = dict(w)
    for lit in lits:
        if lit.var not in m:
            raise UnknownVariableError(lit.var)
        m[lit.var] = lit.positive
    return World(m)


def switch(w: World, var: str) -> World:
    """``w`` with exactly ``var`` flipped."""
    if var not in w:
        raise UnknownVariableError(var)
    m = dict(w)
    m[var] = not m[var]
    return World(m)


# -- model sets ---------------------------------------------------------------


def models(f: Formula, over: Optional[Iterable[str]] = None, cap: Optional[int] = None) -> frozenset[World]:
    """Mod(f) over ``over`` (default: the variables of ``f``)."""
    tt = TruthTable(variables(f) if over is None else over, cap)
    return tt.worlds(tt.eval(f))


def formula_from_models(worlds: Iterable[Mapping[str, bool]], over: Iterable[str]) -> Formula:
    """DNF with one full term per world; ``false`` for no worlds."""
    names = sorted(set(over))
    terms = []
    for w in sorted(worlds, key=lambda w: tuple(bool(w[v]) for v in names)):
        terms.append(conj(Literal(v, bool(w[v])).to_formula() for v in names))
    return disj(terms)


def entails_bf(sigma: Formula, phi: Formula, cap: Optional[int] = None) -> bool:
    tt = TruthTable(variables(sigma) | variables(phi), cap)
    return not np.any(tt.eval(sigma) & ~tt.eval(phi))


def equivalent_bf(sigma: Formula, phi: Formula, cap: Optional[int] = None) -> bool:
    tt = TruthTable(variables(sigma) | variables(phi), cap)
    return bool(np.array_equal(tt.eval(sigma), tt.eval(phi)))


def satisfiable_bf(f: Formula, cap: Optional[int] = None) -> bool:
    tt = TruthTable(variables(f), cap)
    return bool(np.any(tt.eval(f)))


# -- independence -------------------------------------------------------------


def lit_independent_bf(sigma: Formula, lit: Literal, cap: Optional[int] = None) -> bool:
    """For every model w of sigma, Force(w, ~lit) is a model too."""
    tt = TruthTable(variables(sigma) | {lit.var}, cap)
    sat = tt.eval(sigma)
    forced = sat[tt.forced_index([~lit])]
    return not np.any(sat & ~forced)


def var_independent_bf(sigma: Formula, var: str, cap: Optional[int] = None) -> bool:
    """w |= sigma iff Switch(w, var) |= sigma, for every world w."""
    tt = TruthTable(variables(sigma) | {var}, cap)
    sat = tt.eval(sigma)
    return bool(np.array_equal(sat, sat[tt.switched_index(var)]))


def dep_lit_bf(sigma: Formula, cap: Optional[int] = None) -> frozenset[Literal]:
    """Every literal over Var(sigma) that sigma depends on."""
    return frozenset(
        l for l in lits_over(variables(sigma)) if not lit_independent_bf(sigma, l, cap)
    )


def dep_var_bf(sigma: Formula, cap: Optional[int] = None) -> frozenset[str]:
    return frozenset(v for v in variables(sigma) if not var_independent_bf(sigma, v, cap))


# -- forgetting ---------------------------------------------------------------


def _consistent_subsets(lits: Iterable[Literal]) -> Iterator[tuple[Literal, ...]]:
    by_var: dict[str, list[Literal]] = {}
    for l in sorted(set(lits), key=lit_key):
        by_var.setdefault(l.var, []).append(l)
    choices = [[None] + ls for ls in by_var.values()]
    for combo in itertools.product(*choices):
        yield tuple(l for l in combo if l is not None)


def forget_lit_mask(tt: TruthTable, sigma: Formula, lits: Iterable[Literal]) -> np.ndarray:
    sat = tt.eval(sigma)
    out = np.zeros(len(tt), dtype=bool)
    for subset in _consistent_subsets(lits):
        out |= sat[tt.forced_index(subset)]
    return out


def forget_lit_models_bf(
    sigma: Formula,
    lits: Iterable[Literal],
    over: Optional[Iterable[str]] = None,
    cap: Optional[int] = None,
) -> frozenset[World]:
    """{w | Force(w, L1) |= sigma for some consistent L1 within lits}."""
    lits = frozenset(lits)
    base = variables(sigma) | {l.var for l in lits}
    tt = TruthTable(base if over is None else set(over) | base, cap)
    return tt.worlds(forget_lit_mask(tt, sigma, lits))


def _forget_var_mask(tt: TruthTable, sigma: Formula, vars_: Iterable[str]) -> np.ndarray:
    sat = tt.eval(sigma)
    for v in sorted(vars_):
        sat = sat | sat[tt.switched_index(v)]
    return sat


def forget_var_models_bf(
    sigma: Formula, vars_: Iterable[str], over: Optional[Iterable[str]] = None, cap: Optional[int] = None
) -> frozenset[World]:
    """Models of the existential projection, by switching each forgotten variable."""
    vars_ = frozenset(vars_)
    base = variables(sigma) | vars_
    tt = TruthTable(base if over is None else set(over) | base, cap)
    return tt.worlds(_forget_var_mask(tt, sigma, vars_))


# -- circumscription ------------------------------------------------------------


def _check_partition(P, Q, Z, needed) -> None:
    P, Q, Z = set(P), set(Q), set(Z)
    if P & Q or P & Z or Q & Z:
        raise PartitionError("P, Q and Z must be pairwise disjoint")
    missing = set(needed) - (P | Q | Z)
    if missing:
        raise PartitionError(f"variables outside the partition: {sorted(missing)}")


def _circ_mask(tt: TruthTable, sigma: Formula, P, Q) -> np.ndarray:
    sat = tt.eval(sigma)
    pbits = sum(tt.bit[p] for p in P)
    qbits = sum(tt.bit[q] for q in Q)
    idx = np.flatnonzero(sat)
    keep = np.zeros(len(tt), dtype=bool)
    if idx.size == 0:
        return keep
    pvals = idx & pbits
    qvals = idx & qbits
    for qv in np.unique(qvals):
        group = pvals[qvals == qv]
        members = idx[qvals == qv]
        # w is minimal unless some w' in its Q-group has P-part strictly inside w's
        sub = (group[None, :] & ~group[:, None]) == 0
        strict = sub & (group[None, :] != group[:, None])
        minimal = ~strict.any(axis=1)
        keep[members[minimal]] = True
    return keep


def circ_models_bf(
    sigma: Formula, P: Iterable[str], Q: Iterable[str] = (), Z: Iterable[str] = (), cap: Optional[int] = None
) -> frozenset[World]:
    """Models of sigma that are P-minimal among models agreeing on Q (Z varies)."""
    P, Q, Z = frozenset(P), frozenset(Q), frozenset(Z)
    _check_partition(P, Q, Z, variables(sigma))
    tt = TruthTable(P | Q | Z, cap)
    return tt.worlds(_circ_mask(tt, sigma, P, Q))


def circ_entails_bf(
    sigma: Formula, P: Iterable[str], Q: Iterable[str], Z: Iterable[str], phi: Formula, cap: Optional[int] = None
) -> bool:
    P, Q, Z = frozenset(P), frozenset(Q), frozenset(Z)
    _check_partition(P, Q, Z, variables(sigma) | variables(phi))
    tt = TruthTable(P | Q | Z, cap)
    return not np.any(_circ_mask(tt, sigma, P, Q) & ~tt.eval(phi))


# -- relevance ------------------------------------------------------------------


def influenceable_bf(sigma: Formula, vars_: Iterable[str], cap: Optional[int] = None) -> bool:
    """Some assignment outside ``vars_`` lets the ``vars_`` part decide sigma either way."""
    vars_ = frozenset(vars_)
    tt = TruthTable(variables(sigma) | vars_, cap)
    sat = tt.eval(sigma)
    vbits = sum(tt.bit[v] for v in vars_)
    outer = tt.index & ~vbits
    for key in np.unique(outer):
        vals = sat[outer == key]
        if vals.any() and not vals.all():
            return True
    return False


def _bitset(col: np.ndarray) -> int:
    return int.from_bytes(np.packbits(col, bitorder="little").tobytes(), "little")


def _prime_groups(sat: np.ndarray, tt: TruthTable, implicates: bool) -> list[frozenset[Literal]]:
    full = (1 << len(tt)) - 1
    target = _bitset(sat)
    litmask = {}
    for v in tt.over:
        m = _bitset(tt.cols[v])
        litmask[Literal(v, True)] = m
        litmask[Literal(v, False)] = full & ~m

    def holds(group: tuple[Literal, ...]) -> bool:
        if implicates:
            m = 0
            for l in group:
                m |= litmask[l]
            return target & ~m == 0
        m = full
        for l in group:
            m &= litmask[l]
        return m & ~target == 0

    out = []
    for combo in itertools.product((None, True, False), repeat=tt.n):
        group = tuple(Literal(v, s) for v, s in zip(tt.over, combo) if s is not None)
        if not holds(group):
            continue
        if any(holds(group[:i] + group[i + 1:]) for i in range(len(group))):
            continue
        out.append(frozenset(group))
    return out


def prime_implicates_bf(sigma: Formula, cap: Optional[int] = None) -> frozenset[frozenset[Literal]]:
    """Minimal entailed non-tautological clauses, by enumerating all 3^n clauses."""
    tt = TruthTable(variables(sigma), cap)
    return frozenset(_prime_groups(tt.eval(sigma), tt, True))


def prime_implicants_bf(sigma: Formula, cap: Optional[int] = None) -> frozenset[frozenset[Literal]]:
    """Maximal consistent terms implying sigma, by enumerating all 3^n terms."""
    tt = TruthTable(variables(sigma), cap)
    return frozenset(_prime_groups(tt.eval(sigma), tt, False))


def relevant_bf(sigma: Formula, vars_: Iterable[str], cap: Optional[int] = None) -> bool:
    vars_ = set(vars_)
    return any(any(l.var in vars_ for l in d) for d in prime_implicates_bf(sigma, cap))


def strictly_relevant_1995_bf(sigma: Formula, vars_: Iterable[str], cap: Optional[int] = None) -> bool:
    vars_ = set(vars_)
    ip = prime_implicates_bf(sigma, cap)
    return bool(ip) and all(any(l.var in vars_ for l in d) for d in ip)


def strictly_relevant_1997_bf(sigma: Formula, vars_: Iterable[str], cap: Optional[int] = None) -> bool:
    vars_ = set(vars_)
    ip = prime_implicates_bf(sigma, cap)
    return any(any(l.var in vars_ for l in d) for d in ip) and all(
        all(l.var in vars_ for l in d) for d in ip
    )


def natural_consequence_bf(sigma: Formula, phi: Formula, cap: Optional[int] = None) -> bool:
    if not entails_bf(sigma, phi, cap):
        return False
    return dep_lit_bf(phi, cap) <= dep_lit_bf(sigma, cap)


def lit_equivalent_bf(sigma: Formula, phi: Formula, lits: Iterable[Literal], cap: Optional[int] = None) -> bool:
    """Same models after forgetting every literal outside ``lits`` (over the union alphabet)."""
    lits = frozenset(lits)
    tt = TruthTable(variables(sigma) | variables(phi), cap)
    a = forget_lit_mask(tt, sigma, literals(sigma) - lits)
    b = forget_lit_mask(tt, phi, literals(phi) - lits)
    return bool(np.array_equal(a, b))


def var_equivalent_bf(sigma: Formula, phi: Formula, vars_: Iterable[str], cap: Optional[int] = None) -> bool:
    vars_ = frozenset(vars_)
    tt = TruthTable(variables(sigma) | variables(phi), cap)
    a = _forget_var_mask(tt, sigma, variables(sigma) - vars_)
    b = _forget_var_mask(tt, phi, variables(phi) - vars_)
    return bool(np.array_equal(a, b))
