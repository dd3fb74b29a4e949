"""Formula-literal and formula-variable independence for propositional logic.

Semantic dependence tests, forgetting, simplification and the reasoning
services built on them, backed by a DPLL solver (compiled kernel when
available) and checked against a brute-force truth-table oracle.
"""

from .applications import (
    CircPartition,
    circ_entails,
    influenceable,
    natural_consequence,
    relevant_to,
    strictly_relevant_1995,
    strictly_relevant_1997,
    update,
    update_lit,
)
from .errors import (
    FragmentError,
    InconsistentLiteralsError,
    OracleCapExceeded,
    OutputSizeExceeded,
    ParseError,
    PartitionError,
    PrimesLimitExceeded,
    PropIndepError,
    ResourceLimitError,
    StrategyError,
    UnknownVariableError,
)
from .forgetting import (
    ForgetStrategy,
    forget_lit,
    forget_lit_dnf,
    forget_var,
    forget_var_resolution,
    forget_via_primes,
    lit_equivalent,
    var_equivalent,
)
from .formula import (
    FALSE,
    TRUE,
    Formula,
    Literal,
    condition,
    expand_equivalences,
    literals,
    nnf,
    parse,
    render,
    simplify_constants,
    size,
    variables,
)
from .independence import (
    DependenceReport,
    dep_lit,
    dep_var,
    dependence_report,
    fully_lit_dependent,
    fully_var_dependent,
    is_lit_simplified,
    is_var_simplified,
    lit_independent,
    lit_independent_set,
    lit_simplify,
    var_independent,
    var_simplify,
)
from .kernels import BACKEND
from .primes import PrimeSet, prime_implicants, prime_implicates
from .sat import FragmentTag, classify, entails, equivalent, is_satisfiable, solve, to_cnf

__version__ = "0.1.0"
