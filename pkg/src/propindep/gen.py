"""Seeded random generators for formulas, clause sets and literal sets.

Used by the test suite, the acceptance runner and the benchmark.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .formula import (
    AND,
    FALSE,
    IFF,
    IMP,
    NOT,
    OR,
    TRUE,
    XOR,
    Formula,
    Literal,
    Var,
)

BASIC_OPS = (AND, OR, NOT, IMP)
ALL_OPS = BASIC_OPS + (IFF, XOR)


def var_names(n: int) -> list[str]:
    """``n`` short variable names: a, b, ..., z, then x26, x27, ..."""
    letters = "abcdefghijklmnopqrstuvwxyz"
    return [letters[i] if i < 26 else f"x{i}" for i in range(n)]


def random_formula(
    rng: random.Random,
    names: Sequence[str],
    depth: int = 4,
    ops: Sequence[str] = ALL_OPS,
    constants: float = 0.0,
    leaf_prob: float = 0.25,
) -> Formula:
    """Random formula tree of depth at most ``depth`` over ``names``."""
    if depth <= 0 or rng.random() < leaf_prob:
        if constants and rng.random() < constants:
            return rng.choice((TRUE, FALSE))
        return Var(rng.choice(names))
    op = rng.choice(ops)
    if op == NOT:
        return Formula(NOT, (random_formula(rng, names, depth - 1, ops, constants, leaf_prob),))
    arity = rng.choice((2, 2, 3)) if op in (AND, OR) else 2
    return Formula(op, tuple(random_formula(rng, names, depth - 1, ops, constants, leaf_prob) for _ in range(arity)))


def random_clause(rng: random.Random, names: Sequence[str], width: int) -> frozenset[Literal]:
    chosen = rng.sample(list(names), min(width, len(names)))
    return frozenset(Literal(v, rng.random() < 0.5) for v in chosen)


def random_cnf(
    rng: random.Random,
    names: Sequence[str],
    nclauses: int,
    min_width: int = 1,
    max_width: int = 3,
) -> list[frozenset[Literal]]:
    return [random_clause(rng, names, rng.randint(min_width, max_width)) for _ in range(nclauses)]


def random_horn(
    rng: random.Random,
    names: Sequence[str],
    nclauses: int,
    max_width: int = 3,
) -> list[frozenset[Literal]]:
    """Clauses with at most one positive literal."""
    out = []
    for _ in range(nclauses):
        chosen = rng.sample(list(names), min(rng.randint(1, max_width), len(names)))
        head = rng.randrange(len(chosen) + 1)
        out.append(frozenset(Literal(v, i == head) for i, v in enumerate(chosen)))
    return out


def random_krom(rng: random.Random, names: Sequence[str], nclauses: int) -> list[frozenset[Literal]]:
    return random_cnf(rng, names, nclauses, 1, 2)


def random_renamable_horn(
    rng: random.Random, names: Sequence[str], nclauses: int, max_width: int = 3
) -> list[frozenset[Literal]]:
    """A Horn set with a random subset of variables flipped."""
    flips = {v for v in names if rng.random() < 0.5}
    return [frozenset(~l if l.var in flips else l for l in c) for c in random_horn(rng, names, nclauses, max_width)]


def random_lits(
    rng: random.Random, names: Sequence[str], k: int, consistent: Optional[bool] = None
) -> frozenset[Literal]:
    """``k`` random literals over ``names`` (consistent when asked)."""
    pool = [Literal(v, s) for v in names for s in (True, False)]
    if consistent:
        chosen = rng.sample(list(names), min(k, len(names)))
        return frozenset(Literal(v, rng.random() < 0.5) for v in chosen)
    return frozenset(rng.sample(pool, min(k, len(pool))))
