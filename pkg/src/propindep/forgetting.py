"""Literal and variable forgetting, and the equivalence relations built on them.

Forgetting a literal ``l`` gives the strongest consequence that is
Lit-independent from ``l``:

    forget_lit(S, {l}) = S[l:=1] | (~l & S[l:=0])

and forgetting a variable is existential quantification:

    forget_var(S, {x}) = S[x:=1] | S[x:=0]

Forgetting both ``x`` and ``~x`` is the same as forgetting ``x``, and the
definitional strategy takes that shortcut.  Several strategies are offered:

definitional
    the two rewrites above, applied set member by set member;
dnf-path
    DNF input only, deletes the forgotten literals from every term;
prime-path
    keeps the prime implicates free of forgotten literals;
resolution-path
    CNF input and variables only, Davis-Putnam elimination with subsumption;
auto
    dnf-path for DNF input, resolution-path for variables on CNF input,
    definitional otherwise.

Outputs are not minimised beyond constant propagation and subsumption, and
may be exponentially larger than the input; ``max_size`` turns that into an
explicit :class:`OutputSizeExceeded`.
"""

from __future__ import annotations

import enum
from typing import Iterable, Optional

from . import sat
from .clauses import eliminate_vars
from .errors import InconsistentLiteralsError, OutputSizeExceeded, StrategyError
from .formula import (
    AND,
    OR,
    Formula,
    Literal,
    as_clauses,
    as_terms,
    clauses_to_formula,
    condition,
    is_consistent,
    literals,
    lits_over,
    restrict,
    simplify_constants,
    size,
    sorted_lits,
    terms_to_formula,
    variables,
)
from .primes import DEFAULT_LIMIT, prime_implicates


class ForgetStrategy(str, enum.Enum):
    DEFINITIONAL = "definitional"
    DNF_PATH = "dnf-path"
    PRIME_PATH = "prime-path"
    RESOLUTION_PATH = "resolution-path"
    AUTO = "auto"

    def __str__(self) -> str:
        return self.value


def _check_size(f: Formula, max_size: Optional[int]) -> Formula:
    if max_size is not None and size(f) > max_size:
        raise OutputSizeExceeded(f"forgetting result has size {size(f)} (limit {max_size})")
    return f


def _clause_size(groups) -> int:
    return sum(len(g) for g in groups)


def forget_lit_step(f: Formula, lit: Literal) -> Formula:
    """One definitional step: ``f[l:=1] | (~l & f[l:=0])``."""
    hi = condition(f, lit, True)
    lo = condition(f, lit, False)
    return simplify_constants(Formula(OR, (hi, Formula(AND, ((~lit).to_formula(), lo)))))


def forget_var_step(f: Formula, name: str) -> Formula:
    """One definitional step: ``f[x:=1] | f[x:=0]``."""
    return simplify_constants(Formula(OR, (restrict(f, {name: True}), restrict(f, {name: False}))))


def _forget_lit_definitional(f: Formula, lits: frozenset[Literal], max_size: Optional[int]) -> Formula:
    cur = simplify_constants(f)
    by_var: dict[str, set[bool]] = {}
    for l in lits:
        by_var.setdefault(l.var, set()).add(l.positive)
    present = variables(cur)
    for v in sorted(by_var):
        if v not in present:
            continue
        signs = by_var[v]
        if len(signs) == 2:
            cur = forget_var_step(cur, v)
        else:
            cur = forget_lit_step(cur, Literal(v, signs.pop()))
        _check_size(cur, max_size)
        if cur.is_constant:
            break
    return cur


def forget_lit_in_order(f: Formula, sequence: Iterable[Literal]) -> Formula:
    """Forget the literals one at a time, in the given order, with no shortcut."""
    cur = simplify_constants(f)
    for l in sequence:
        cur = forget_lit_step(cur, l)
    return cur


def forget_lit_dnf(terms: Iterable[Iterable[Literal]], lits: Iterable[Literal]) -> frozenset[frozenset[Literal]]:
    """Forget literals from a DNF given as a set of terms.

    Each term loses its literals of ``lits``; a term left empty makes the
    whole disjunction valid, returned as the single empty term.
    """
    lits = frozenset(lits)
    out = set()
    for t in terms:
        t = frozenset(t)
        if not is_consistent(t):
            raise InconsistentLiteralsError(f"inconsistent term: {sorted_lits(t)}")
        kept = t - lits
        if not kept:
            return frozenset({frozenset()})
        out.add(kept)
    return frozenset(out)


def forget_via_primes(
    f: Formula, lits: Iterable[Literal], limit: Optional[int] = DEFAULT_LIMIT
) -> frozenset[frozenset[Literal]]:
    """The prime implicates of ``f`` containing no literal of ``lits``.

    They are exactly the prime implicates of the forgetting result.
    """
    lits = frozenset(lits)
    return frozenset(c for c in prime_implicates(f, limit).members if not (c & lits))


def forget_var_resolution(
    clauses: Iterable[Iterable[Literal]],
    names: Iterable[str],
    max_clauses: Optional[int] = None,
) -> frozenset[frozenset[Literal]]:
    """Eliminate ``names`` from a clause set by resolution.

    Clauses mentioning a variable are replaced by their non-tautological
    resolvents on it, then subsumed clauses are removed.
    """
    return eliminate_vars(clauses, names, max_clauses)


def _as_dnf(f: Formula):
    terms = as_terms(simplify_constants(f))
    if terms is None:
        return None
    return [t for t in terms if is_consistent(t)]


def _as_cnf(f: Formula):
    return as_clauses(simplify_constants(f))


def _resolve_auto(f: Formula, for_vars: bool) -> ForgetStrategy:
    if for_vars and _as_cnf(f) is not None:
        return ForgetStrategy.RESOLUTION_PATH
    if _as_dnf(f) is not None:
        return ForgetStrategy.DNF_PATH
    return ForgetStrategy.DEFINITIONAL


def forget_lit(
    f: Formula,
    lits: Iterable[Literal],
    strategy: ForgetStrategy | str = ForgetStrategy.AUTO,
    max_size: Optional[int] = None,
) -> Formula:
    """ForgetLit(f, lits)."""
    lits = frozenset(lits)
    strategy = ForgetStrategy(strategy)
    if not lits:
        return f
    if strategy is ForgetStrategy.AUTO:
        strategy = _resolve_auto(f, for_vars=False)
    if strategy is ForgetStrategy.DEFINITIONAL:
        return _forget_lit_definitional(f, lits, max_size)
    if strategy is ForgetStrategy.DNF_PATH:
        terms = _as_dnf(f)
        if terms is None:
            raise StrategyError("dnf-path needs a formula in disjunctive normal form")
        return _check_size(terms_to_formula(forget_lit_dnf(terms, lits)), max_size)
    if strategy is ForgetStrategy.PRIME_PATH:
        return _check_size(clauses_to_formula(forget_via_primes(f, lits)), max_size)
    if all(~l in lits for l in lits):
        return forget_var(f, {l.var for l in lits}, strategy, max_size)
    raise StrategyError("resolution-path forgets variables (complete literal pairs) only")


def forget_var(
    f: Formula,
    names: Iterable[str],
    strategy: ForgetStrategy | str = ForgetStrategy.AUTO,
    max_size: Optional[int] = None,
) -> Formula:
    """ForgetVar(f, names): existential quantification of ``names``."""
    names = frozenset(names)
    strategy = ForgetStrategy(strategy)
    if not names:
        return f
    if strategy is ForgetStrategy.AUTO:
        strategy = _resolve_auto(f, for_vars=True)
    if strategy is ForgetStrategy.DEFINITIONAL:
        cur = simplify_constants(f)
        for v in sorted(names & variables(cur)):
            cur = _check_size(forget_var_step(cur, v), max_size)
        return cur
    if strategy is ForgetStrategy.RESOLUTION_PATH:
        clauses = _as_cnf(f)
        if clauses is None:
            raise StrategyError("resolution-path needs a formula in conjunctive normal form")
        clauses = [c for c in clauses if not sat.is_tautology(c)]
        out = forget_var_resolution(clauses, names, max_clauses=max_size)
        if max_size is not None and _clause_size(out) > max_size:
            raise OutputSizeExceeded(f"forgetting result has size {_clause_size(out)} (limit {max_size})")
        return clauses_to_formula(out)
    return forget_lit(f, lits_over(names), strategy, max_size)


def lit_equivalent(f: Formula, g: Formula, lits: Iterable[Literal], max_size: Optional[int] = None) -> bool:
    """Whether f and g agree once every literal outside ``lits`` is forgotten.

    Each formula forgets its own literals outside ``lits``; the results are
    compared over the union of their variables.
    """
    lits = frozenset(lits)
    left = forget_lit(f, literals(f) - lits, max_size=max_size)
    right = forget_lit(g, literals(g) - lits, max_size=max_size)
    return sat.equivalent(left, right)


def var_equivalent(f: Formula, g: Formula, names: Iterable[str], max_size: Optional[int] = None) -> bool:
    """Whether f and g agree once every variable outside ``names`` is forgotten."""
    names = frozenset(names)
    left = forget_var(f, variables(f) - names, max_size=max_size)
    right = forget_var(g, variables(g) - names, max_size=max_size)
    return sat.equivalent(left, right)
