"""Reasoning services expressed through dependence and forgetting.

* circumscription entailment by literal forgetting;
* influenceability, relevance and the two strict relevance notions;
* natural consequence (entailment that introduces no new dependent literal);
* forget-and-expand belief update, with a literal variant that spares
  persistent literals.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from . import sat
from .errors import PartitionError
from .forgetting import forget_lit, forget_var
from .formula import NOT, Formula, Literal, conj, lits_over, simplify_constants, variables
from .independence import dep_lit, dep_var, var_independent
from .primes import DEFAULT_LIMIT, prime_implicates

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CircPartition:
    """Minimised (P), fixed (Q) and varying (Z) variables."""

    P: frozenset = frozenset()
    Q: frozenset = frozenset()
    Z: frozenset = frozenset()

    def __post_init__(self):
        for name in ("P", "Q", "Z"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.P & self.Q or self.P & self.Z or self.Q & self.Z:
            raise PartitionError("P, Q and Z must be pairwise disjoint")

    def check_covers(self, names: Iterable[str]) -> None:
        missing = frozenset(names) - (self.P | self.Q | self.Z)
        if missing:
            raise PartitionError(f"variables outside the partition: {' '.join(sorted(missing))}")

    @property
    def forget_set(self) -> frozenset[Literal]:
        """Negative P-literals plus both literals of every Z-variable."""
        return lits_over(self.P, positive=False) | lits_over(self.Z)


def _neg(f: Formula) -> Formula:
    return Formula(NOT, (f,))


def circ_entails(
    sigma: Formula,
    part: CircPartition,
    phi: Formula,
    branch: str = "auto",
    max_size: Optional[int] = None,
) -> bool:
    """Whether every minimal model of sigma (P minimised, Q fixed, Z varying) satisfies phi.

    ``branch`` selects the characterisation: ``"z-free"`` (only for a query
    mentioning no Z-variable), ``"general"``, or ``"auto"`` which picks the
    former whenever it applies.
    """
    part.check_covers(variables(sigma) | variables(phi))
    L = part.forget_set
    z_free = not (variables(phi) & part.Z)
    if branch == "auto":
        branch = "z-free" if z_free else "general"
    if branch == "z-free":
        if not z_free:
            raise PartitionError("the z-free branch needs a query without Z-variables")
        return sat.entails(sigma, forget_lit(conj([sigma, phi]), L, max_size=max_size))
    if branch == "general":
        inner = forget_lit(conj([sigma, _neg(phi)]), L, max_size=max_size)
        outer = forget_lit(conj([sigma, _neg(inner)]), L, max_size=max_size)
        return sat.entails(sigma, outer)
    raise ValueError(f"unknown branch {branch!r}")


def influenceable(sigma: Formula, names: Iterable[str]) -> bool:
    """Some choice for ``names`` can make sigma true and another false, all else fixed."""
    return not var_independent(sigma, names)


def relevant_to(sigma: Formula, names: Iterable[str]) -> bool:
    """Some prime implicate of sigma mentions a variable of ``names``."""
    return not var_independent(sigma, names)


def relevant_to_primes(sigma: Formula, names: Iterable[str], limit: Optional[int] = DEFAULT_LIMIT) -> bool:
    names = frozenset(names)
    return bool(prime_implicates(sigma, limit).variables() & names)


def strictly_relevant_1995(sigma: Formula, names: Iterable[str], limit: Optional[int] = DEFAULT_LIMIT) -> bool:
    """Sigma has prime implicates and every one of them mentions ``names``."""
    names = frozenset(names)
    ip = prime_implicates(sigma, limit)
    return len(ip) > 0 and all(any(l.var in names for l in c) for c in ip.members)


def strictly_relevant_1997(sigma: Formula, names: Iterable[str]) -> bool:
    """Dependent on ``names`` and independent from every other variable."""
    names = frozenset(names)
    return not var_independent(sigma, names) and var_independent(sigma, variables(sigma) - names)


def strictly_relevant_1997_primes(
    sigma: Formula, names: Iterable[str], limit: Optional[int] = DEFAULT_LIMIT
) -> bool:
    """Prime-implicate reading: some member mentions ``names`` and none mentions anything else."""
    names = frozenset(names)
    mentioned = prime_implicates(sigma, limit).variables()
    return bool(mentioned & names) and mentioned <= names


def natural_consequence(sigma: Formula, phi: Formula) -> bool:
    """phi follows from sigma and depends on no literal sigma is independent from."""
    return sat.entails(sigma, phi) and dep_lit(phi) <= dep_lit(sigma)


def _finish_update(result: Formula, phi: Formula) -> Formula:
    result = simplify_constants(result)
    if not sat.is_satisfiable(result):
        log.warning("update by %s gives an inconsistent result", phi)
    return result


def update(sigma: Formula, phi: Formula, max_size: Optional[int] = None) -> Formula:
    """Forget-and-expand: forget the variables phi depends on, then add phi."""
    forgotten = forget_var(sigma, dep_var(phi), max_size=max_size)
    return _finish_update(conj([forgotten, phi]), phi)


def update_lit(
    sigma: Formula,
    phi: Formula,
    persistent: Iterable[Literal] = (),
    max_size: Optional[int] = None,
) -> Formula:
    """Update that forgets literals instead of variables, sparing ``persistent`` ones.

    Both literals of every variable phi depends on are forgotten except the
    persistent ones, so a persistent fact of sigma survives unless phi
    itself contradicts it (then the result is unsatisfiable and a warning is
    logged).
    """
    forget = lits_over(dep_var(phi)) - frozenset(persistent)
    forgotten = forget_lit(sigma, forget, max_size=max_size)
    return _finish_update(conj([forgotten, phi]), phi)
