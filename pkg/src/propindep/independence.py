"""Semantic literal and variable (in)dependence, and the simplifiers built on it.

A formula is independent from a literal ``l`` when some equivalent formula
has no occurrence of ``l`` in negation normal form; it is independent from a
variable when some equivalent formula does not mention it at all.

Decision procedures, all reduced to the SAT engine:

* literal: ``sigma |= sigma[l:=0]`` (the default), or the two alternative
  forms ``sigma[l:=1] |= sigma[l:=0]`` and ``sigma[l:=1] |= sigma``;
* variable: ``sigma[x:=0] == sigma[x:=1]``.

For clause sets in a tractable fragment (Horn, renamable Horn, Krom) the
literal test is answered clause by clause with the polynomial fragment
entailment, since conditioning keeps the clause set inside the fragment.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import sat
from .errors import ResourceLimitError
from .formula import (
    AND,
    FALSE,
    IFF,
    IMP,
    NOT,
    OR,
    TRUE,
    VAR,
    XOR,
    Formula,
    Literal,
    as_clauses,
    condition,
    flatten,
    literals,
    restrict,
    simplify_constants,
    size,
    sorted_lits,
    variables,
)

log = logging.getLogger(__name__)

# the three equivalent conditioning-based literal tests
SIGMA_ENTAILS_LOWERED = "sigma-entails-lowered"
RAISED_ENTAILS_LOWERED = "raised-entails-lowered"
RAISED_ENTAILS_SIGMA = "raised-entails-sigma"
LIT_TESTS = (SIGMA_ENTAILS_LOWERED, RAISED_ENTAILS_LOWERED, RAISED_ENTAILS_SIGMA)


def _lowered(f: Formula, lit: Literal) -> Formula:
    return condition(f, lit, False)


def _raised(f: Formula, lit: Literal) -> Formula:
    return condition(f, lit, True)


def _fragment_lit_independent(clauses, lit: Literal) -> Optional[bool]:
    clauses = [c for c in clauses if not sat.is_tautology(c)]
    tag = sat.classify(clauses)
    if tag is sat.FragmentTag.GENERAL:
        return None
    lowered = [c - {lit} for c in clauses if ~lit not in c]
    # conditioning keeps Horn, Krom and renamable Horn sets in their fragment
    assert sat.in_fragment(lowered, tag), "fragment not stable under conditioning"
    for c in clauses:
        if lit in c and not sat.fragment_entails(clauses, tag, c - {lit}):
            return False
    return True


def lit_independent(f: Formula, lit: Literal, method: str = SIGMA_ENTAILS_LOWERED) -> bool:
    """Whether ``f`` is Lit-independent from ``lit``."""
    if method == SIGMA_ENTAILS_LOWERED:
        if lit.var not in variables(f):
            return True
        clauses = as_clauses(f)
        if clauses is not None:
            fast = _fragment_lit_independent(clauses, lit)
            if fast is not None:
                return fast
        return sat.entails(f, _lowered(f, lit))
    if method == RAISED_ENTAILS_LOWERED:
        return sat.entails(_raised(f, lit), _lowered(f, lit))
    if method == RAISED_ENTAILS_SIGMA:
        return sat.entails(_raised(f, lit), f)
    raise ValueError(f"unknown literal test {method!r}")


def lit_independent_set(f: Formula, lits: Iterable[Literal]) -> bool:
    """Independent from every literal of ``lits``; literals absent from Lit(f) are skipped."""
    present = literals(f)
    return all(lit_independent(f, l) for l in sorted_lits(set(lits) & present))


def var_independent_one(f: Formula, name: str) -> bool:
    if name not in variables(f):
        return True
    lo = restrict(f, {name: False})
    hi = restrict(f, {name: True})
    return sat.equivalent(lo, hi)


def var_independent(f: Formula, names: Iterable[str]) -> bool:
    """Independent from every variable of ``names``."""
    return all(var_independent_one(f, v) for v in sorted(set(names)))


def dep_lit(f: Formula) -> frozenset[Literal]:
    return frozenset(l for l in sorted_lits(literals(f)) if not lit_independent(f, l))


def dep_var(f: Formula) -> frozenset[str]:
    return frozenset(v for v in sorted(variables(f)) if not var_independent_one(f, v))


def fully_lit_dependent(f: Formula, lits: Iterable[Literal]) -> bool:
    return frozenset(lits) <= dep_lit(f)


def fully_var_dependent(f: Formula, names: Iterable[str]) -> bool:
    return frozenset(names) <= dep_var(f)


def is_lit_simplified(f: Formula) -> bool:
    return literals(f) == dep_lit(f)


def is_var_simplified(f: Formula) -> bool:
    return variables(f) == dep_var(f)


# -- dependence report --------------------------------------------------------


@dataclass(frozen=True)
class DependenceReport:
    """Dependence sets with one witness world per dependent literal/variable.

    For a dependent literal ``l`` the witness is a model of the formula that
    stops being a model once ``l`` is forced false; for a variable it is a
    model that stops being one when the variable is flipped.
    """

    dep_lit: frozenset
    dep_var: frozenset
    lit_witness: dict = field(default_factory=dict)
    var_witness: dict = field(default_factory=dict)


def dependence_report(f: Formula) -> DependenceReport:
    from .oracle import World

    names = sorted(variables(f))
    lit_witness = {}
    for l in sorted_lits(literals(f)):
        model = sat.countermodel(f, _lowered(f, l))
        if model is not None:
            lit_witness[l] = World({v: model.get(v, False) for v in names})
    var_witness = {}
    for l, w in lit_witness.items():
        var_witness.setdefault(l.var, w)
    return DependenceReport(
        dep_lit=frozenset(lit_witness),
        dep_var=frozenset(var_witness),
        lit_witness=lit_witness,
        var_witness=var_witness,
    )


# -- simplification -----------------------------------------------------------


def var_simplify(f: Formula) -> Formula:
    """Condition away (to false) every variable ``f`` is Var-independent from.

    Variables are visited in lexicographic order and re-tested on the current
    formula.  Each step preserves equivalence, so the result is equivalent to
    ``f``, mentions exactly DepVar(f) and is never larger.
    """
    cur = f
    for v in sorted(variables(f)):
        if v in variables(cur) and var_independent_one(cur, v):
            cur = restrict(cur, {v: False})
    return cur


def _occurrence_paths(f: Formula, lit: Literal, positive: bool = True, path=()):
    """Positions of atom occurrences that contribute ``lit`` to Lit(f).

    Polarity is tracked through negation and the left side of an
    implication; under ``<->`` and ``^`` an atom contributes both signs.
    """
    op = f.op
    if op == VAR:
        if f.name == lit.var and (positive is None or positive == lit.positive):
            yield path
    elif op == NOT:
        flipped = None if positive is None else not positive
        yield from _occurrence_paths(f.args[0], lit, flipped, path + (0,))
    elif op in (AND, OR):
        for i, a in enumerate(f.args):
            yield from _occurrence_paths(a, lit, positive, path + (i,))
    elif op == IMP:
        flipped = None if positive is None else not positive
        yield from _occurrence_paths(f.args[0], lit, flipped, path + (0,))
        yield from _occurrence_paths(f.args[1], lit, positive, path + (1,))
    elif op in (IFF, XOR):
        for i, a in enumerate(f.args):
            yield from _occurrence_paths(a, lit, None, path + (i,))


def _replace_at(f: Formula, path: tuple, value: Formula) -> Formula:
    if not path:
        return value
    i = path[0]
    args = list(f.args)
    args[i] = _replace_at(args[i], path[1:], value)
    return Formula(f.op, tuple(args))


def _drop_literal(cur: Formula, lit: Literal) -> Formula:
    """Equivalent formula without ``lit`` in Lit, given independence from it.

    Occurrences are removed one at a time (replaced by false, else by true)
    whenever the solver confirms equivalence.  If some remain, the rewrite
    ``cur[l:=1] | (~l & cur[l:=0])`` is used; it is equivalent under
    independence and has no occurrence of ``lit``.
    """
    while lit in literals(cur):
        for p in _occurrence_paths(cur, lit):
            cand = next(
                (
                    c
                    for c in (simplify_constants(_replace_at(cur, p, k)) for k in (FALSE, TRUE))
                    if sat.equivalent(c, cur)
                ),
                None,
            )
            if cand is not None:
                cur = cand
                break
        else:
            # cur[l:=1] | (~l & cur[l:=0]) and cur[l:=0] & (~l | cur[l:=1])
            # are both free of lit and equivalent to cur under independence
            neg = (~lit).to_formula()
            hi, lo = _raised(cur, lit), _lowered(cur, lit)
            forms = [
                simplify_constants(Formula(OR, (hi, Formula(AND, (neg, lo))))),
                simplify_constants(Formula(AND, (lo, Formula(OR, (neg, hi))))),
            ]
            return min(forms, key=size)
    return cur


def lit_simplify(f: Formula) -> Formula:
    """Equivalent formula whose literals are exactly DepLit(f).

    Literals are visited in lexicographic order (positive first) and each
    independent literal ``l`` of the current formula is removed:

    * if the complement of ``l`` does not occur, or is independent too, the
      variable is conditioned away (to the value falsifying ``l``);
    * otherwise its occurrences are removed individually, under solver
      control, so that only occurrences of the same sign are touched.

    Every step keeps the formula equivalent and strictly shrinks its literal
    set.  A formula that is already Lit-simplified is returned as is.  If
    the result is larger than the input, the prime implicate CNF and prime
    implicant DNF (both Lit-simplified) are considered and the smallest of
    the candidates wins.
    """
    if is_lit_simplified(f):
        return f
    cur = simplify_constants(f)
    while True:
        target = None
        for l in sorted_lits(literals(cur)):
            if lit_independent(cur, l):
                target = l
                break
        if target is None:
            break
        if ~target not in literals(cur) or lit_independent(cur, ~target):
            cur = restrict(cur, {target.var: not target.positive})
        else:
            cur = _drop_literal(cur, target)
    cur = flatten(cur)
    if size(cur) > size(f):
        from .primes import prime_implicants, prime_implicates

        candidates = [cur]
        for build in (prime_implicates, prime_implicants):
            try:
                candidates.append(flatten(build(f).formula()))
            except ResourceLimitError as exc:
                log.debug("prime form unavailable: %s", exc)
        cur = min(candidates, key=size)
    return cur
