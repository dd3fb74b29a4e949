"""Satisfiability, entailment and equivalence, plus tractable CNF fragments.

Formulas are turned into clause sets (distribution for small formulas,
a polarity-aware definitional transform otherwise) and handed to the DPLL
kernel selected in :mod:`propindep.kernels`.  Auxiliary variables from the
definitional transform are named ``%t<k>``, which no parsed formula can
contain, and never escape this module.

Horn, renamable Horn and Krom clause sets get polynomial clausal entailment
(unit propagation, resp. implication-graph 2-SAT).
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, Optional

from . import kernels
from .clauses import eliminate_vars
from .errors import FragmentError, ParseError
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
    lit_key,
    nnf,
    simplify_constants,
    size,
    sorted_lits,
    variables,
)

Clause = frozenset  # of Literal
ClauseSet = frozenset  # of Clause

AUX_PREFIX = "%t"
DISTRIBUTION_FACTOR = 2


def is_aux(name: str) -> bool:
    return name.startswith(AUX_PREFIX)


def is_tautology(clause: Iterable[Literal]) -> bool:
    s = set(clause)
    return any(~l in s for l in s)


# -- CNF conversion -----------------------------------------------------------


class _TooBig(Exception):
    pass


def _distribute(f: Formula, budget: int) -> set:
    op = f.op
    if op == VAR:
        return {frozenset((Literal(f.name, True),))}
    if op == NOT:
        return {frozenset((Literal(f.args[0].name, False),))}
    if op == TRUE_OP:
        return set()
    if op == FALSE_OP:
        return {frozenset()}
    if op == AND:
        out = set()
        for a in f.args:
            out |= _distribute(a, budget)
            if sum(map(len, out)) > budget:
                raise _TooBig
        return out
    acc = {frozenset()}
    for a in f.args:
        part = _distribute(a, budget)
        nxt = set()
        for c in acc:
            for d in part:
                u = c | d
                if not is_tautology(u):
                    nxt.add(u)
        acc = nxt
        if sum(map(len, acc)) > budget:
            raise _TooBig
    return acc


# polarity of a subformula occurrence: implied by its label, implying it, or both
POS, NEG, BOTH = 1, -1, 0


class _Definitions:
    """Polarity-aware definitional encoding over the original connectives.

    ``<->`` and ``^`` get gate clauses directly, so nesting them costs
    linear rather than exponential size.  Identical subformulas share a label.
    """

    def __init__(self):
        self.count = 0
        self.clauses: list = []
        self.cache: dict = {}

    def fresh(self) -> Literal:
        self.count += 1
        return Literal(f"{AUX_PREFIX}{self.count}", True)

    def _add(self, *lits: Literal) -> None:
        self.clauses.append(frozenset(lits))

    def encode(self, f: Formula, pol: int = POS) -> Literal:
        op = f.op
        if op == VAR:
            return Literal(f.name, True)
        if op == NOT:
            return ~self.encode(f.args[0], -pol)
        key = (f, pol)
        if key in self.cache:
            return self.cache[key]
        t = self.fresh()
        if op in (AND, OR, IMP):
            if op == IMP:
                kids = [~self.encode(f.args[0], -pol), self.encode(f.args[1], pol)]
            else:
                kids = [self.encode(a, pol) for a in f.args]
            if op == AND:
                if pol != NEG:
                    for k in kids:
                        self._add(~t, k)
                if pol != POS:
                    self._add(t, *(~k for k in kids))
            else:
                if pol != NEG:
                    self._add(~t, *kids)
                if pol != POS:
                    for k in kids:
                        self._add(t, ~k)
        elif op in (IFF, XOR):
            a, b = (self.encode(x, BOTH) for x in f.args)
            if op == XOR:
                b = ~b
            if pol != NEG:
                self._add(~t, ~a, b)
                self._add(~t, a, ~b)
            if pol != POS:
                self._add(t, a, b)
                self._add(t, ~a, ~b)
        else:
            raise ValueError(f"constant {op} inside a constant-free formula")
        self.cache[key] = t
        return t


def _signed_conjuncts(f: Formula, positive: bool = True) -> list[tuple[Formula, bool]]:
    """Top-level conjuncts of ``f`` (or of its negation), without expanding anything."""
    op = f.op
    if op == NOT:
        return _signed_conjuncts(f.args[0], not positive)
    if (op == AND and positive) or (op == OR and not positive):
        return [x for a in f.args for x in _signed_conjuncts(a, positive)]
    if op == IMP and not positive:
        return _signed_conjuncts(f.args[0], True) + _signed_conjuncts(f.args[1], False)
    return [(f, positive)]


def _expanded_size(f: Formula) -> int:
    """Size of the formula once ``<->`` and ``^`` are rewritten away."""
    if f.op == VAR:
        return 1
    sizes = [_expanded_size(a) for a in f.args]
    if f.op in (IFF, XOR):
        return 2 * sum(sizes)
    return sum(sizes)


def to_cnf(f: Formula, factor: int = DISTRIBUTION_FACTOR) -> ClauseSet:
    """Equisatisfiable clause set.

    Each top-level conjunct is distributed (from its NNF) when the result
    stays within ``factor`` times its size, and encoded definitionally
    otherwise.  Restricted to ``variables(f)``, every model of the result
    satisfies ``f`` and every model of ``f`` extends to one.
    """
    g = simplify_constants(f)
    if g.op == TRUE_OP:
        return frozenset()
    if g.op == FALSE_OP:
        return frozenset({frozenset()})
    defs = _Definitions()
    out = set()
    for part, positive in _signed_conjuncts(g):
        n = _expanded_size(part)
        if n <= 64:
            try:
                out |= _distribute(nnf(part if positive else Formula(NOT, (part,))), factor * n)
                continue
            except _TooBig:
                pass
        root = defs.encode(part, POS if positive else NEG)
        out.add(frozenset((root if positive else ~root,)))
    out.update(defs.clauses)
    return frozenset(out)


def to_equivalent_cnf(f: Formula, max_clauses: Optional[int] = None) -> ClauseSet:
    """Clause set logically equivalent to ``f`` over ``variables(f)``.

    Distributes when cheap; otherwise encodes definitionally and eliminates
    the auxiliaries again by resolution.
    """
    cnf = to_cnf(f)
    aux = {l.var for c in cnf for l in c if is_aux(l.var)}
    # with no auxiliaries this only drops subsumed clauses
    return eliminate_vars(cnf, aux, max_clauses=max_clauses)


def clauses_formula(clauses: Iterable[Iterable[Literal]]) -> Formula:
    from .formula import clauses_to_formula

    return clauses_to_formula(clauses)


# -- solving ------------------------------------------------------------------


def _number(clauses: Iterable[Iterable[Literal]]):
    names = sorted({l.var for c in clauses for l in c})
    index = {v: i + 1 for i, v in enumerate(names)}
    ints = [[index[l.var] if l.positive else -index[l.var] for l in sorted_lits(c)] for c in clauses]
    return names, ints


def solve_clauses(clauses: Iterable[Iterable[Literal]]) -> Optional[dict[str, bool]]:
    """Model (over the clause variables, free ones set false) or ``None``."""
    clauses = list(clauses)
    names, ints = _number(clauses)
    val = kernels.solve(len(names), ints)
    if val is None:
        return None
    return {v: val[i + 1] > 0 for i, v in enumerate(names)}


def solve(f: Formula) -> Optional[dict[str, bool]]:
    """A model of ``f`` over ``variables(f)``, or ``None`` when unsatisfiable."""
    g = simplify_constants(f)
    names = variables(f)
    if g.op == TRUE_OP:
        return {v: False for v in sorted(names)}
    if g.op == FALSE_OP:
        return None
    cnf = to_cnf(g)
    # sorted clause order keeps the search deterministic
    model = solve_clauses(sorted(cnf, key=lambda c: [lit_key(l) for l in sorted_lits(c)]))
    if model is None:
        return None
    return {v: model.get(v, False) for v in sorted(names)}


def is_satisfiable(f: Formula) -> bool:
    return solve(f) is not None


def entails(sigma: Formula, phi: Formula) -> bool:
    """sigma |= phi, decided as unsatisfiability of sigma & ~phi."""
    phi_s = simplify_constants(phi)
    if phi_s.op == TRUE_OP:
        return True
    sigma_s = simplify_constants(sigma)
    if sigma_s.op == FALSE_OP:
        return True
    return not is_satisfiable(conj([sigma_s, Formula(NOT, (phi_s,))]))


def equivalent(sigma: Formula, phi: Formula) -> bool:
    return entails(sigma, phi) and entails(phi, sigma)


def countermodel(sigma: Formula, phi: Formula) -> Optional[dict[str, bool]]:
    """A model of sigma falsifying phi, or ``None`` if sigma |= phi."""
    return solve(conj([sigma, Formula(NOT, (phi,))]))


# -- tractable fragments ------------------------------------------------------


class FragmentTag(str, enum.Enum):
    HORN = "horn"
    RENAMABLE_HORN = "renamable-horn"
    KROM = "krom"
    GENERAL = "general"

    def __str__(self) -> str:
        return self.value


def is_horn(clauses: Iterable[Iterable[Literal]]) -> bool:
    return all(sum(1 for l in c if l.positive) <= 1 for c in clauses)


def is_krom(clauses: Iterable[Iterable[Literal]]) -> bool:
    return all(len(c) <= 2 for c in clauses)


def two_sat(clauses: Iterable[Iterable[Literal]]) -> Optional[dict[str, bool]]:
    """Model of a set of clauses of length <= 2, via the implication graph."""
    clauses = [tuple(c) for c in clauses]
    names = sorted({l.var for c in clauses for l in c})
    index = {v: i for i, v in enumerate(names)}
    n = len(names)

    def node(l: Literal) -> int:
        return 2 * index[l.var] + (0 if l.positive else 1)

    graph = [[] for _ in range(2 * n)]
    for c in clauses:
        if not c:
            return None
        if len(c) == 1:
            a = b = c[0]
        elif len(c) == 2:
            a, b = c
        else:
            raise FragmentError("two_sat needs clauses of length <= 2")
        graph[node(~a)].append(node(b))
        graph[node(~b)].append(node(a))
    comp = _tarjan(graph)
    model = {}
    for v, i in index.items():
        if comp[2 * i] == comp[2 * i + 1]:
            return None
        # Tarjan numbers components in reverse topological order
        model[v] = comp[2 * i] < comp[2 * i + 1]
    return model


def _tarjan(graph: list[list[int]]) -> list[int]:
    n = len(graph)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(graph[v]):
                work[-1] = (v, i + 1)
                w = graph[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def horn_renaming(clauses: Iterable[Iterable[Literal]]) -> Optional[frozenset[str]]:
    """Variables whose flip turns ``clauses`` into Horn clauses, or ``None``.

    Decided as 2-SAT over "rename x" variables: every pair of literals in a
    clause may not both end up positive.
    """
    pairs = []
    for c in clauses:
        lits = sorted_lits(c)
        for i in range(len(lits)):
            for j in range(i + 1, len(lits)):
                pairs.append((lits[i], lits[j]))
    model = two_sat(pairs)
    if model is None:
        return None
    return frozenset(v for v, flip in model.items() if flip)


def rename(clauses: Iterable[Iterable[Literal]], flips: Iterable[str]) -> list[frozenset[Literal]]:
    flips = frozenset(flips)
    return [frozenset(~l if l.var in flips else l for l in c) for c in clauses]


def classify(clauses: Iterable[Iterable[Literal]]) -> FragmentTag:
    clauses = [frozenset(c) for c in clauses]
    if is_horn(clauses):
        return FragmentTag.HORN
    if is_krom(clauses):
        return FragmentTag.KROM
    if horn_renaming(clauses) is not None:
        return FragmentTag.RENAMABLE_HORN
    return FragmentTag.GENERAL


def in_fragment(clauses: Iterable[Iterable[Literal]], tag: FragmentTag) -> bool:
    clauses = [frozenset(c) for c in clauses]
    tag = FragmentTag(tag)
    if tag is FragmentTag.HORN:
        return is_horn(clauses)
    if tag is FragmentTag.KROM:
        return is_krom(clauses)
    if tag is FragmentTag.RENAMABLE_HORN:
        return horn_renaming(clauses) is not None
    return True


def unit_propagate(clauses: Iterable[Iterable[Literal]]) -> Optional[dict[str, bool]]:
    """Closure under unit resolution: forced values, or ``None`` on conflict.

    Linear in the total clause length (counter based).
    """
    clauses = [tuple(set(c)) for c in clauses]
    occ: dict[Literal, list[int]] = {}
    for i, c in enumerate(clauses):
        for l in c:
            occ.setdefault(l, []).append(i)
    remaining = [len(c) for c in clauses]
    satisfied = [False] * len(clauses)
    value: dict[str, bool] = {}
    queue = []
    for i, c in enumerate(clauses):
        if not c:
            return None
        if len(c) == 1:
            queue.append(c[0])
    while queue:
        lit = queue.pop()
        known = value.get(lit.var)
        if known is not None:
            if known != lit.positive:
                return None
            continue
        value[lit.var] = lit.positive
        for i in occ.get(lit, ()):
            satisfied[i] = True
        for i in occ.get(~lit, ()):
            if satisfied[i]:
                continue
            remaining[i] -= 1
            if remaining[i] == 0:
                return None
            if remaining[i] == 1:
                for l in clauses[i]:
                    v = value.get(l.var)
                    if v is None:
                        queue.append(l)
                        break
                    if v == l.positive:
                        satisfied[i] = True
                        break
    return value


def horn_satisfiable(clauses: Iterable[Iterable[Literal]]) -> bool:
    """Horn-SAT: unit propagation, then everything unassigned false."""
    return unit_propagate(clauses) is not None


def fragment_entails(clauses: Iterable[Iterable[Literal]], tag: FragmentTag, query: Iterable[Literal]) -> bool:
    """clauses |= query in polynomial time for a Horn, renamable Horn or Krom set."""
    clauses = [frozenset(c) for c in clauses]
    query = frozenset(query)
    tag = FragmentTag(tag)
    if tag is FragmentTag.GENERAL:
        raise FragmentError("no polynomial path for general clause sets")
    if is_tautology(query):
        return True
    negated = [frozenset((~l,)) for l in query]
    if tag is FragmentTag.KROM:
        if not is_krom(clauses):
            raise FragmentError("clause set is not Krom")
        return two_sat(clauses + negated) is None
    if tag is FragmentTag.HORN:
        if not is_horn(clauses):
            raise FragmentError("clause set is not Horn")
        return not horn_satisfiable(clauses + negated)
    flips = horn_renaming(clauses)
    if flips is None:
        raise FragmentError("clause set is not renamable Horn")
    return not horn_satisfiable(rename(clauses + negated, flips))


def clauses_entail(clauses: Iterable[Iterable[Literal]], query: Iterable[Literal], tag: Optional[FragmentTag] = None) -> bool:
    """Clausal entailment, through the fragment fast path when one applies."""
    clauses = [frozenset(c) for c in clauses]
    query = frozenset(query)
    if tag is None:
        tag = classify(clauses)
    if tag is not FragmentTag.GENERAL:
        return fragment_entails(clauses, tag, query)
    if is_tautology(query):
        return True
    return solve_clauses(clauses + [frozenset((~l,)) for l in query]) is None


# -- DIMACS -------------------------------------------------------------------


def write_dimacs(clauses: Iterable[Iterable[Literal]], comment: Optional[str] = None) -> str:
    """DIMACS CNF text with a ``c varname <id> <name>`` line per variable."""
    clauses = [frozenset(c) for c in clauses]
    names = sorted({l.var for c in clauses for l in c})
    index = {v: i + 1 for i, v in enumerate(names)}
    lines = []
    if comment:
        lines.extend(f"c {line}" for line in comment.splitlines())
    lines.extend(f"c varname {index[v]} {v}" for v in names)
    lines.append(f"p cnf {len(names)} {len(clauses)}")
    ordered = sorted(clauses, key=lambda c: (len(c), [lit_key(l) for l in sorted_lits(c)]))
    for c in ordered:
        body = " ".join(str(index[l.var] if l.positive else -index[l.var]) for l in sorted_lits(c))
        lines.append(f"{body} 0" if body else "0")
    return "\n".join(lines) + "\n"


_VARNAME_RE = re.compile(r"c\s+varname\s+(\d+)\s+(\S+)")


def read_dimacs(text: str) -> ClauseSet:
    """Parse DIMACS CNF; variables without a name map entry become ``x<id>``."""
    names: dict[int, str] = {}
    header = None
    ints: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            m = _VARNAME_RE.match(line)
            if m:
                names[int(m.group(1))] = m.group(2)
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or not all(p.isdigit() for p in parts[2:]):
                raise ParseError(f"line {lineno}: bad problem line", 0, raw)
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise ParseError(f"line {lineno}: clause before 'p cnf' header", 0, raw)
        try:
            ints.extend(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer token", 0, raw) from None
    if header is None:
        raise ParseError("missing 'p cnf' header", 0, text)
    nvars, nclauses = header
    clauses = []
    cur: list[Literal] = []
    for x in ints:
        if x == 0:
            clauses.append(frozenset(cur))
            cur = []
            continue
        v = abs(x)
        if v > nvars:
            raise ParseError(f"variable {v} exceeds declared count {nvars}", 0, text)
        cur.append(Literal(names.get(v, f"x{v}"), x > 0))
    if cur:
        raise ParseError("last clause is not 0-terminated", 0, text)
    if len(clauses) != nclauses:
        raise ParseError(f"header declares {nclauses} clauses, found {len(clauses)}", 0, text)
    return frozenset(clauses)
