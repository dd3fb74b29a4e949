"""Formula trees, literals, parsing/printing and the syntactic toolbox.

Formulas are immutable and hashable.  Conjunction and disjunction are
n-ary (at least two children); negation is unary; implication,
biconditional and exclusive-or are binary.

Text grammar, loosest binding first::

    <->   left-associative
    ->    right-associative
    ^     left-associative
    |     n-ary
    &     n-ary
    ~     prefix

Identifiers match ``[A-Za-z_][A-Za-z0-9_]*``; ``true`` and ``false`` are
the constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .errors import ParseError, UnknownVariableError

TRUE_OP = "true"
FALSE_OP = "false"
VAR = "var"
NOT = "not"
AND = "and"
OR = "or"
IMP = "imp"
IFF = "iff"
XOR = "xor"

_ARITY = {TRUE_OP: 0, FALSE_OP: 0, VAR: 0, NOT: 1, IMP: 2, IFF: 2, XOR: 2}

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"true", "false"})


class Formula:
    """A node of a propositional formula tree."""

    __slots__ = ("op", "args", "name", "_hash")

    def __init__(self, op: str, args: Sequence["Formula"] = (), name: Optional[str] = None):
        args = tuple(args)
        if op in (AND, OR):
            if len(args) < 2:
                raise ValueError(f"{op} needs at least two children, got {len(args)}")
        elif op in _ARITY:
            if len(args) != _ARITY[op]:
                raise ValueError(f"{op} takes {_ARITY[op]} children, got {len(args)}")
        else:
            raise ValueError(f"unknown connective {op!r}")
        if (op == VAR) != (name is not None):
            raise ValueError("exactly the atoms carry a name")
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash((op, args, name)))

    def __setattr__(self, key, value):
        raise AttributeError("Formula is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.op == other.op
            and self.name == other.name
            and self.args == other.args
        )

    def __reduce__(self):
        return (Formula, (self.op, self.args, self.name))

    def __and__(self, other: "Formula") -> "Formula":
        return Formula(AND, (self, other))

    def __or__(self, other: "Formula") -> "Formula":
        return Formula(OR, (self, other))

    def __invert__(self) -> "Formula":
        return Formula(NOT, (self,))

    def __rshift__(self, other: "Formula") -> "Formula":
        return Formula(IMP, (self, other))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Formula({render(self)!r})"

    @property
    def is_constant(self) -> bool:
        return self.op in (TRUE_OP, FALSE_OP)


TRUE = Formula(TRUE_OP)
FALSE = Formula(FALSE_OP)


def Var(name: str) -> Formula:
    return Formula(VAR, (), name)


def Not(f: Formula) -> Formula:
    return Formula(NOT, (f,))


def Implies(a: Formula, b: Formula) -> Formula:
    return Formula(IMP, (a, b))


def Iff(a: Formula, b: Formula) -> Formula:
    return Formula(IFF, (a, b))


def Xor(a: Formula, b: Formula) -> Formula:
    return Formula(XOR, (a, b))


def conj(fs: Iterable[Formula]) -> Formula:
    """Conjunction of any number of formulas (``true`` for none)."""
    fs = tuple(fs)
    if not fs:
        return TRUE
    if len(fs) == 1:
        return fs[0]
    return Formula(AND, fs)


def disj(fs: Iterable[Formula]) -> Formula:
    """Disjunction of any number of formulas (``false`` for none)."""
    fs = tuple(fs)
    if not fs:
        return FALSE
    if len(fs) == 1:
        return fs[0]
    return Formula(OR, fs)


def const(value: bool) -> Formula:
    return TRUE if value else FALSE


# -- literals ---------------------------------------------------------------


class Literal(NamedTuple):
    """A signed reference to a variable."""

    var: str
    positive: bool = True

    def __invert__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return self.var if self.positive else "~" + self.var

    def __repr__(self) -> str:
        return f"Literal({str(self)!r})"

    def to_formula(self) -> Formula:
        atom = Var(self.var)
        return atom if self.positive else Not(atom)

    @classmethod
    def parse(cls, text: str) -> "Literal":
        text = text.strip()
        positive = True
        while text[:1] in ("~", "!", "-", "¬"):
            positive = not positive
            text = text[1:].strip()
        if not IDENT_RE.match(text) or text in KEYWORDS:
            raise ParseError(f"not a literal: {text!r}", 0, text)
        return cls(text, positive)


def lit_key(lit: Literal) -> tuple[str, bool]:
    """Sort key: by variable name, positive literal before negative."""
    return (lit.var, not lit.positive)


def sorted_lits(lits: Iterable[Literal]) -> list[Literal]:
    return sorted(lits, key=lit_key)


def lits_over(variables_: Iterable[str], positive: Optional[bool] = None) -> frozenset[Literal]:
    """L_V, or only its positive / negative half when ``positive`` is given."""
    signs = (True, False) if positive is None else (positive,)
    return frozenset(Literal(v, s) for v in variables_ for s in signs)


def is_consistent(lits: Iterable[Literal]) -> bool:
    seen = set(lits)
    return not any(~l in seen for l in seen)


def parse_lits(text: str) -> frozenset[Literal]:
    """Parse a whitespace/comma separated literal list such as ``"a ~b"``."""
    return frozenset(Literal.parse(tok) for tok in re.split(r"[\s,]+", text.strip()) if tok)


def parse_vars(text: str) -> frozenset[str]:
    out = set()
    for tok in re.split(r"[\s,]+", text.strip()):
        if not tok:
            continue
        if not IDENT_RE.match(tok) or tok in KEYWORDS:
            raise ParseError(f"not a variable: {tok!r}", 0, text)
        out.add(tok)
    return frozenset(out)


def format_lits(lits: Iterable[Literal], sep: str = " ") -> str:
    return sep.join(str(l) for l in sorted_lits(lits))


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><->|->|[~!&|^()¬∧∨⇒→⇔↔⊕]))"
)
_OP_ALIASES = {"!": "~", "¬": "~", "∧": "&", "∨": "|", "⇒": "->", "→": "->", "⇔": "<->", "↔": "<->", "⊕": "^"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start("ident") if m.group("ident") else m.start("op")
        if m.group("ident"):
            tokens.append(("ident", m.group("ident"), start))
        else:
            op = m.group("op")
            tokens.append(("op", _OP_ALIASES.get(op, op), start))
        pos = m.end()
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: Optional[frozenset[str]]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def accept(self, op: str) -> bool:
        kind, val, _ = self.tokens[self.i]
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def fail(self, what: str):
        kind, val, pos = self.peek()
        found = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"expected {what}, found {found}", pos, self.text)

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek()[0] != "eof":
            self.fail("end of input")
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.accept("<->"):
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.xor()
        if self.accept("->"):
            return Implies(f, self.imp())
        return f

    def xor(self) -> Formula:
        f = self.or_()
        while self.accept("^"):
            f = Xor(f, self.or_())
        return f

    def or_(self) -> Formula:
        parts = [self.and_()]
        while self.accept("|"):
            parts.append(self.and_())
        return disj(parts)

    def and_(self) -> Formula:
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return conj(parts)

    def unary(self) -> Formula:
        if self.accept("~"):
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "ident":
            self.i += 1
            if val == "true":
                return TRUE
            if val == "false":
                return FALSE
            if self.alphabet is not None and val not in self.alphabet:
                raise UnknownVariableError(val)
            return Var(val)
        if self.accept("("):
            f = self.iff()
            if not self.accept(")"):
                self.fail("')'")
            return f
        self.fail("a formula")


def parse(text: str, alphabet: Optional[Iterable[str]] = None) -> Formula:
    """Parse formula text.

    When ``alphabet`` is given, any other variable name raises
    :class:`UnknownVariableError`.
    """
    return _Parser(text, None if alphabet is None else frozenset(alphabet)).parse()


# -- rendering --------------------------------------------------------------

_PREC = {IFF: 1, IMP: 2, XOR: 3, OR: 4, AND: 5, NOT: 6, VAR: 7, TRUE_OP: 7, FALSE_OP: 7}
_SYMBOL = {IFF: " <-> ", IMP: " -> ", XOR: " ^ ", OR: " | ", AND: " & "}


def render(f: Formula) -> str:
    """Print ``f`` so that :func:`parse` gives back the identical tree."""
    op = f.op
    if op == VAR:
        return f.name
    if op == TRUE_OP:
        return "true"
    if op == FALSE_OP:
        return "false"
    if op == NOT:
        inner = render(f.args[0])
        if _PREC[f.args[0].op] < _PREC[NOT]:
            inner = f"({inner})"
        return "~" + inner
    prec = _PREC[op]
    parts = []
    for child in f.args:
        s = render(child)
        # equal precedence is parenthesised too: keeps nesting exact
        if _PREC[child.op] <= prec:
            s = f"({s})"
        parts.append(s)
    return _SYMBOL[op].join(parts)


# -- formula files ----------------------------------------------------------


@dataclass(frozen=True)
class FormulaFile:
    formulas: tuple[Formula, ...]
    alphabet: Optional[frozenset[str]] = None

    @property
    def formula(self) -> Formula:
        """The conjunction of every formula in the file."""
        return conj(self.formulas)


def parse_file(text: str) -> FormulaFile:
    """Parse the line-oriented formula file format.

    One formula per line, ``#`` starts a comment, and an optional
    ``vars: a b c`` header fixes the alphabet.
    """
    alphabet = None
    formulas = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            if alphabet is not None or formulas:
                raise ParseError("'vars:' header must come first and only once", 0, raw)
            alphabet = parse_vars(line[len("vars:"):])
            continue
        try:
            formulas.append(parse(line, alphabet))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.args[0]}", exc.position, raw) from None
    return FormulaFile(tuple(formulas), alphabet)


def load(path) -> FormulaFile:
    return parse_file(Path(path).read_text())


# -- syntactic inventories --------------------------------------------------


def iter_nodes(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.args))


def variables(f: Formula) -> frozenset[str]:
    """Var(f): the variables occurring in ``f``."""
    return frozenset(n.name for n in iter_nodes(f) if n.op == VAR)


def size(f: Formula) -> int:
    """Number of variable occurrences."""
    return sum(1 for n in iter_nodes(f) if n.op == VAR)


def expand_equivalences(f: Formula) -> Formula:
    """Rewrite ``<->`` and ``^`` in terms of ``->``, ``&`` and ``~``."""
    if f.op in (VAR, TRUE_OP, FALSE_OP):
        return f
    args = tuple(expand_equivalences(a) for a in f.args)
    if f.op == IFF:
        a, b = args
        return Formula(AND, (Implies(a, b), Implies(b, a)))
    if f.op == XOR:
        a, b = args
        return Not(Formula(AND, (Implies(a, b), Implies(b, a))))
    if args == f.args:
        return f
    return Formula(f.op, args)


def _has_equivalences(f: Formula) -> bool:
    return any(n.op in (IFF, XOR) for n in iter_nodes(f))


def nnf(f: Formula) -> Formula:
    """Negation normal form: negations only on atoms.

    ``<->``/``^`` are expanded first.  Constants are kept (``~true`` becomes
    ``false``).  Linear in the size of the expanded formula.
    """
    if _has_equivalences(f):
        f = expand_equivalences(f)
    return _nnf(f, True)


def _nnf(f: Formula, pos: bool) -> Formula:
    op = f.op
    if op == VAR:
        return f if pos else Not(f)
    if op == TRUE_OP:
        return TRUE if pos else FALSE
    if op == FALSE_OP:
        return FALSE if pos else TRUE
    if op == NOT:
        return _nnf(f.args[0], not pos)
    if op == AND:
        return Formula(AND if pos else OR, tuple(_nnf(a, pos) for a in f.args))
    if op == OR:
        return Formula(OR if pos else AND, tuple(_nnf(a, pos) for a in f.args))
    if op == IMP:
        a, b = f.args
        if pos:
            return Formula(OR, (_nnf(a, False), _nnf(b, True)))
        return Formula(AND, (_nnf(a, True), _nnf(b, False)))
    raise ValueError(f"nnf: unexpected connective {op}")


def is_nnf(f: Formula) -> bool:
    for n in iter_nodes(f):
        if n.op in (IMP, IFF, XOR):
            return False
        if n.op == NOT and n.args[0].op != VAR:
            return False
    return True


def literals(f: Formula) -> frozenset[Literal]:
    """Lit(f): literals occurring in the NNF of ``f``.

    Syntax dependent: equivalent formulas can have different literal sets.
    """
    out = set()
    stack = [nnf(f)]
    while stack:
        n = stack.pop()
        if n.op == VAR:
            out.add(Literal(n.name, True))
        elif n.op == NOT:
            out.add(Literal(n.args[0].name, False))
        else:
            stack.extend(n.args)
    return frozenset(out)


# -- constant propagation and conditioning ----------------------------------


def _build(op: str, args: tuple[Formula, ...]) -> Formula:
    """Rebuild a node from already simplified children, absorbing constants."""
    if op == NOT:
        a = args[0]
        if a.op == TRUE_OP:
            return FALSE
        if a.op == FALSE_OP:
            return TRUE
        return Formula(NOT, args)
    if op == AND:
        kept = []
        for a in args:
            if a.op == FALSE_OP:
                return FALSE
            if a.op != TRUE_OP:
                kept.append(a)
        return conj(kept)
    if op == OR:
        kept = []
        for a in args:
            if a.op == TRUE_OP:
                return TRUE
            if a.op != FALSE_OP:
                kept.append(a)
        return disj(kept)
    a, b = args
    if op == IMP:
        if a.op == TRUE_OP:
            return b
        if a.op == FALSE_OP or b.op == TRUE_OP:
            return TRUE
        if b.op == FALSE_OP:
            return _build(NOT, (a,))
        return Formula(IMP, args)
    if op in (IFF, XOR):
        flip = op == XOR
        for c, other in ((a, b), (b, a)):
            if c.is_constant:
                keep = (c.op == TRUE_OP) != flip
                return other if keep else _build(NOT, (other,))
        return Formula(op, args)
    raise ValueError(op)


def restrict(f: Formula, assignment: Mapping[str, bool]) -> Formula:
    """Substitute truth constants for variables, then propagate constants."""
    op = f.op
    if op == VAR:
        if f.name in assignment:
            return TRUE if assignment[f.name] else FALSE
        return f
    if op in (TRUE_OP, FALSE_OP):
        return f
    args = tuple(restrict(a, assignment) for a in f.args)
    if all(x is y for x, y in zip(args, f.args)) and not any(a.is_constant for a in args):
        return f
    return _build(op, args)


def simplify_constants(f: Formula) -> Formula:
    """Equivalent formula in which no constant occurs below a connective."""
    return restrict(f, {})


def condition(f: Formula, lit: Literal, value: bool) -> Formula:
    """f_{l<-1} (``value`` true) or f_{l<-0}, sign-aware, with constant propagation."""
    return restrict(f, {lit.var: value if lit.positive else not value})


def replace_literal(f: Formula, lit: Literal, value: bool) -> Formula:
    """Replace only the same-sign occurrences of ``lit`` in an NNF formula.

    ``~x`` atoms are untouched when ``lit`` is ``x`` and vice versa.
    """
    repl = const(value)

    def go(n: Formula) -> Formula:
        if n.op == VAR:
            return repl if lit.positive and n.name == lit.var else n
        if n.op == NOT and n.args[0].op == VAR:
            return repl if not lit.positive and n.args[0].name == lit.var else n
        if not n.args:
            return n
        return _build(n.op, tuple(go(a) for a in n.args))

    return go(f)


def flatten(f: Formula) -> Formula:
    """Merge nested ``&``/``|`` into their parent and drop repeated children.

    Equivalence preserving, never increases size.
    """
    if not f.args:
        return f
    args = [flatten(a) for a in f.args]
    if f.op in (AND, OR):
        merged = []
        seen = set()
        for a in args:
            for c in (a.args if a.op == f.op else (a,)):
                if c not in seen:
                    seen.add(c)
                    merged.append(c)
        return conj(merged) if f.op == AND else disj(merged)
    return Formula(f.op, args)


# -- clause / term views ----------------------------------------------------


def as_literal(f: Formula) -> Optional[Literal]:
    if f.op == VAR:
        return Literal(f.name, True)
    if f.op == NOT and f.args[0].op == VAR:
        return Literal(f.args[0].name, False)
    return None


def _flat_children(f: Formula, op: str) -> list[Formula]:
    if f.op != op:
        return [f]
    out = []
    for a in f.args:
        out.extend(_flat_children(a, op))
    return out


def _as_two_level(f: Formula, outer: str, inner: str, unit: str, zero: str):
    if f.op == unit:
        return []
    if f.op == zero:
        return [frozenset()]
    groups = []
    for part in _flat_children(f, outer):
        if part.op == unit:
            continue
        if part.op == zero:
            groups.append(frozenset())
            continue
        lits = []
        for leaf in _flat_children(part, inner):
            lit = as_literal(leaf)
            if lit is None:
                return None
            lits.append(lit)
        groups.append(frozenset(lits))
    return groups


def as_clauses(f: Formula) -> Optional[list[frozenset[Literal]]]:
    """Clause list when ``f`` is syntactically a CNF, else ``None``."""
    return _as_two_level(f, AND, OR, TRUE_OP, FALSE_OP)


def as_terms(f: Formula) -> Optional[list[frozenset[Literal]]]:
    """Term list when ``f`` is syntactically a DNF, else ``None``."""
    return _as_two_level(f, OR, AND, FALSE_OP, TRUE_OP)


def _group_key(group: Iterable[Literal]):
    lits = sorted_lits(group)
    return (len(lits), [lit_key(l) for l in lits])


def clause_formula(clause: Iterable[Literal]) -> Formula:
    return disj(l.to_formula() for l in sorted_lits(clause))


def term_formula(term: Iterable[Literal]) -> Formula:
    return conj(l.to_formula() for l in sorted_lits(term))


def clauses_to_formula(clauses: Iterable[Iterable[Literal]]) -> Formula:
    """CNF formula with clauses and literals in canonical order."""
    return conj(clause_formula(c) for c in sorted(clauses, key=_group_key))


def terms_to_formula(terms: Iterable[Iterable[Literal]]) -> Formula:
    return disj(term_formula(t) for t in sorted(terms, key=_group_key))


def canonical_order(groups: Iterable[Iterable[Literal]]) -> list[frozenset[Literal]]:
    return [frozenset(g) for g in sorted(groups, key=_group_key)]
