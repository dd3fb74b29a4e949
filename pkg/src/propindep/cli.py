"""Command-line interface.

Every subcommand reads a formula file (one formula per line, ``#``
comments, optional ``vars:`` header; DIMACS CNF is accepted too) and prints
its result on standard output.  Decision subcommands report their verdict in
the exit code as well:

    0  success / verdict true
    1  verdict false
    2  usage or input error
    3  resource limit exceeded

``propindep oracle <subcommand> ...`` runs the brute-force twin of a
subcommand, for cross-checking.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from . import applications as app
from . import forgetting as fg
from . import independence as ind
from . import oracle as orc
from . import primes as pr
from . import sat
from .errors import OutputSizeExceeded, PropIndepError, ResourceLimitError
from .formula import (
    Formula,
    Literal,
    clauses_to_formula,
    condition,
    format_lits,
    literals,
    lits_over,
    nnf,
    parse,
    parse_file,
    parse_lits,
    parse_vars,
    render,
    size,
    variables,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    """Outcome of one invocation.

    ``kind`` tells how to read ``payload``: verdict (bool), formula
    (Formula), literals, variables, groups (a PrimeSet), records (dict of
    str) or message (str).
    """

    status: str
    kind: str
    payload: Any
    timing_ms: float = 0.0
    command: str = ""
    exit_code: int = EXIT_OK
    extra: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers ------------------------------------------------------------


def _looks_dimacs(text: str) -> bool:
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("c"):
            continue
        return s.startswith("p ")
    return False


class _Input:
    def __init__(self, formula: Formula, alphabet):
        self.formula = formula
        self.alphabet = alphabet

    def query(self, text: str) -> Formula:
        return parse(text, self.alphabet)


def _load(path: str) -> _Input:
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if _looks_dimacs(text):
        return _Input(clauses_to_formula(sat.read_dimacs(text)), None)
    ff = parse_file(text)
    return _Input(ff.formula, ff.alphabet)


def _lits(text: Optional[str]) -> frozenset[Literal]:
    return parse_lits(text or "")


def _vars(text: Optional[str]) -> frozenset[str]:
    return parse_vars(text or "")


def _cap(args) -> Optional[int]:
    return args.max_bf


# -- subcommands --------------------------------------------------------------
# each handler returns (kind, payload) for the main path and the oracle path


def _target(args):
    if (args.lits is None) == (args.vars is None):
        raise UsageError("give exactly one of --lits or --vars")
    if args.lits is not None:
        return "lits", _lits(args.lits)
    return "vars", _vars(args.vars)


def cmd_deplit(args, use_oracle):
    f = _load(args.file).formula
    return "literals", (orc.dep_lit_bf(f, _cap(args)) if use_oracle else ind.dep_lit(f))


def cmd_depvar(args, use_oracle):
    f = _load(args.file).formula
    return "variables", (orc.dep_var_bf(f, _cap(args)) if use_oracle else ind.dep_var(f))


def cmd_indep(args, use_oracle):
    f = _load(args.file).formula
    what, items = _target(args)
    if what == "lits":
        if use_oracle:
            ok = all(orc.lit_independent_bf(f, l, _cap(args)) for l in items)
        else:
            ok = ind.lit_independent_set(f, items)
    elif use_oracle:
        ok = all(orc.var_independent_bf(f, v, _cap(args)) for v in items)
    else:
        ok = ind.var_independent(f, items)
    return "verdict", ok


def cmd_fulldep(args, use_oracle):
    f = _load(args.file).formula
    what, items = _target(args)
    if what == "lits":
        dep = orc.dep_lit_bf(f, _cap(args)) if use_oracle else ind.dep_lit(f)
    else:
        dep = orc.dep_var_bf(f, _cap(args)) if use_oracle else ind.dep_var(f)
    return "verdict", items <= dep


def cmd_simplified(args, use_oracle):
    f = _load(args.file).formula
    if args.mode == "lit":
        dep = orc.dep_lit_bf(f, _cap(args)) if use_oracle else ind.dep_lit(f)
        return "verdict", literals(f) == dep
    dep = orc.dep_var_bf(f, _cap(args)) if use_oracle else ind.dep_var(f)
    return "verdict", variables(f) == dep


def cmd_simplify(args, use_oracle):
    f = _load(args.file).formula
    out = ind.lit_simplify(f) if args.mode == "lit" else ind.var_simplify(f)
    if args.max_size is not None and size(out) > args.max_size:
        raise OutputSizeExceeded(f"result has size {size(out)} (limit {args.max_size})")
    return "formula", out


def cmd_condition(args, use_oracle):
    f = _load(args.file).formula
    lit = Literal.parse(args.lit)
    return "formula", condition(f, lit, args.value == "1")


def cmd_inventory(args, use_oracle):
    f = _load(args.file).formula
    return "records", {
        "nnf": render(nnf(f)),
        "vars": " ".join(sorted(variables(f))),
        "lits": format_lits(literals(f)),
        "size": str(size(f)),
    }


def cmd_sat(args, use_oracle):
    f = _load(args.file).formula
    if use_oracle:
        names = sorted(variables(f))
        worlds = orc.models(f, cap=_cap(args))
        first = min(worlds, key=lambda w: tuple(w[v] for v in names), default=None)
        model = dict(first) if first is not None else None
    else:
        model = sat.solve(f)
    return "verdict", model is not None, {"model": model}


def cmd_forget(args, use_oracle):
    f = _load(args.file).formula
    what, items = _target(args)
    if use_oracle:
        if what == "lits":
            worlds = orc.forget_lit_models_bf(f, items, cap=_cap(args))
        else:
            worlds = orc.forget_var_models_bf(f, items, cap=_cap(args))
        names = sorted(variables(f))
        return "formula", orc.formula_from_models(worlds, names)
    if what == "lits":
        return "formula", fg.forget_lit(f, items, args.strategy, args.max_size)
    return "formula", fg.forget_var(f, items, args.strategy, args.max_size)


def cmd_equiv(args, use_oracle):
    a = _load(args.file).formula
    b = _load(args.other).formula
    what, items = _target(args)
    if use_oracle:
        fn = orc.lit_equivalent_bf if what == "lits" else orc.var_equivalent_bf
        return "verdict", fn(a, b, items, _cap(args))
    fn = fg.lit_equivalent if what == "lits" else fg.var_equivalent
    return "verdict", fn(a, b, items, args.max_size)


def cmd_primes(args, use_oracle):
    f = _load(args.file).formula
    kind = pr.IMPLICATES if args.kind == "ip" else pr.IMPLICANTS
    if use_oracle:
        fn = orc.prime_implicates_bf if args.kind == "ip" else orc.prime_implicants_bf
        ps = pr.PrimeSet(kind, fn(f, _cap(args)))
    else:
        limit = args.max_size if args.max_size is not None else pr.DEFAULT_LIMIT
        fn = pr.prime_implicates if args.kind == "ip" else pr.prime_implicants
        ps = fn(f, limit)
    return "groups", ps


def cmd_circ(args, use_oracle):
    inp = _load(args.file)
    phi = inp.query(args.query)
    P, Q, Z = _vars(args.p), _vars(args.q), _vars(args.z)
    if use_oracle:
        return "verdict", orc.circ_entails_bf(inp.formula, P, Q, Z, phi, _cap(args))
    part = app.CircPartition(P, Q, Z)
    return "verdict", app.circ_entails(inp.formula, part, phi, args.branch, args.max_size)


def cmd_update(args, use_oracle):
    inp = _load(args.file)
    phi = inp.query(args.with_)
    persist = _lits(args.persist)
    if use_oracle:
        names = sorted(variables(inp.formula) | variables(phi))
        dep = orc.dep_var_bf(phi, _cap(args))
        if persist:
            forget = lits_over(dep) - persist
            worlds = orc.forget_lit_models_bf(inp.formula, forget, over=names, cap=_cap(args))
        else:
            worlds = orc.forget_var_models_bf(inp.formula, dep, over=names, cap=_cap(args))
        kept = [w for w in worlds if orc.evaluate(phi, w)]
        return "formula", orc.formula_from_models(kept, names)
    if persist:
        return "formula", app.update_lit(inp.formula, phi, persist, args.max_size)
    return "formula", app.update(inp.formula, phi, args.max_size)


def cmd_relevance(args, use_oracle):
    f = _load(args.file).formula
    V = _vars(args.vars)
    notion = args.notion
    if use_oracle:
        fn = {
            "influence": orc.influenceable_bf,
            "relevant": orc.relevant_bf,
            "strict95": orc.strictly_relevant_1995_bf,
            "strict97": orc.strictly_relevant_1997_bf,
        }[notion]
        return "verdict", fn(f, V, _cap(args))
    fn = {
        "influence": app.influenceable,
        "relevant": app.relevant_to,
        "strict95": app.strictly_relevant_1995,
        "strict97": app.strictly_relevant_1997,
    }[notion]
    return "verdict", fn(f, V)


def cmd_natural(args, use_oracle):
    inp = _load(args.file)
    phi = inp.query(args.query)
    if use_oracle:
        return "verdict", orc.natural_consequence_bf(inp.formula, phi, _cap(args))
    return "verdict", app.natural_consequence(inp.formula, phi)


# -- parser -------------------------------------------------------------------

ORACLE_TWINS = {
    "deplit", "depvar", "indep", "fulldep", "is-simplified", "sat",
    "forget", "equiv", "primes", "circ", "update", "relevance", "natural",
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-bf", type=int, default=orc.DEFAULT_CAP, metavar="N",
                   help="variable cap for brute-force enumeration (default %(default)s)")
    p.add_argument("--max-size", type=int, default=None, metavar="N",
                   help="abort when a computed formula or clause set exceeds this size")
    p.add_argument("--format", choices=("text", "records", "json", "dimacs"), default="text")
    p.add_argument("--timing", action="store_true", help="report wall-clock time")


def _target_args(p) -> None:
    p.add_argument("--lits", metavar="L", help='literals, e.g. "a ~b"')
    p.add_argument("--vars", metavar="V", help='variables, e.g. "a b"')


def _add_commands(sub, oracle: bool) -> None:
    def add(name, handler, help_, decision):
        if oracle and name not in ORACLE_TWINS:
            return None
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.set_defaults(handler=handler, decision=decision, oracle_mode=oracle)
        return p

    p = add("deplit", cmd_deplit, "literals the formula depends on", False)
    if p:
        p.add_argument("file")
    p = add("depvar", cmd_depvar, "variables the formula depends on", False)
    if p:
        p.add_argument("file")
    p = add("indep", cmd_indep, "independence from literals or variables", True)
    if p:
        p.add_argument("file")
        _target_args(p)
    p = add("fulldep", cmd_fulldep, "full dependence on literals or variables", True)
    if p:
        p.add_argument("file")
        _target_args(p)
    p = add("is-simplified", cmd_simplified, "whether the formula is Lit-/Var-simplified", True)
    if p:
        p.add_argument("file")
        p.add_argument("--mode", choices=("lit", "var"), required=True)
    p = add("simplify", cmd_simplify, "equivalent Lit-/Var-simplified formula", False)
    if p:
        p.add_argument("file")
        p.add_argument("--mode", choices=("lit", "var"), required=True)
    p = add("condition", cmd_condition, "condition on a literal", False)
    if p:
        p.add_argument("file")
        p.add_argument("--lit", required=True)
        p.add_argument("--value", choices=("0", "1"), required=True)
    p = add("inventory", cmd_inventory, "NNF, variables, literals and size", False)
    if p:
        p.add_argument("file")
    p = add("sat", cmd_sat, "satisfiability, with a model", True)
    if p:
        p.add_argument("file")
    p = add("forget", cmd_forget, "forget literals or variables", False)
    if p:
        p.add_argument("file")
        _target_args(p)
        p.add_argument("--strategy", choices=[s.value for s in fg.ForgetStrategy], default="auto")
    p = add("equiv", cmd_equiv, "Lit-/Var-equivalence of two formulas", True)
    if p:
        p.add_argument("file")
        p.add_argument("other")
        _target_args(p)
    p = add("primes", cmd_primes, "prime implicates or implicants", False)
    if p:
        p.add_argument("file")
        p.add_argument("--kind", choices=("ip", "pi"), default="ip")
    p = add("circ", cmd_circ, "circumscriptive entailment", True)
    if p:
        p.add_argument("file")
        p.add_argument("--p", default="", help="minimised variables")
        p.add_argument("--q", default="", help="fixed variables")
        p.add_argument("--z", default="", help="varying variables")
        p.add_argument("--query", required=True)
        p.add_argument("--branch", choices=("auto", "z-free", "general"), default="auto")
    p = add("update", cmd_update, "forget-and-expand update", False)
    if p:
        p.add_argument("file")
        p.add_argument("--with", dest="with_", required=True, metavar="G")
        p.add_argument("--persist", metavar="L", help="persistent literals (literal update)")
    p = add("relevance", cmd_relevance, "relevance of the formula to variables", True)
    if p:
        p.add_argument("file")
        p.add_argument("--vars", required=True)
        p.add_argument("--notion", choices=("influence", "relevant", "strict95", "strict97"), default="relevant")
    p = add("natural", cmd_natural, "natural consequence", True)
    if p:
        p.add_argument("file")
        p.add_argument("--query", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="propindep", description="Literal/variable independence and forgetting.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    _add_commands(sub, oracle=False)
    op = sub.add_parser("oracle", help="brute-force twin of a subcommand")
    osub = op.add_subparsers(dest="oracle_command", parser_class=_Parser)
    osub.required = True
    _add_commands(osub, oracle=True)
    return parser


def run(argv: list[str]) -> CommandResult:
    """Execute one invocation without printing; never raises for user errors."""
    start = time.perf_counter()
    name = argv[0] if argv else ""
    try:
        args = build_parser().parse_args(argv)
        use_oracle = args.oracle_mode
        name = f"oracle {args.oracle_command}" if use_oracle else args.command
        out = args.handler(args, use_oracle)
        kind, payload = out[0], out[1]
        extra = out[2] if len(out) > 2 else {}
        code = EXIT_OK
        if kind == "verdict" and args.decision and not payload:
            code = EXIT_FALSE
        res = CommandResult("ok", kind, payload, command=name, exit_code=code, extra=extra)
        res.extra.setdefault("format", args.format)
        res.extra.setdefault("timing", args.timing)
    except UsageError as exc:
        res = CommandResult("error", "message", f"usage: {exc}", command=name, exit_code=EXIT_USAGE)
    except ResourceLimitError as exc:
        res = CommandResult("error", "message", f"resource limit: {exc}", command=name, exit_code=EXIT_LIMIT)
    except (PropIndepError, ValueError) as exc:
        res = CommandResult("error", "message", f"error: {exc}", command=name, exit_code=EXIT_USAGE)
    res.timing_ms = (time.perf_counter() - start) * 1000.0
    return res


# -- output -------------------------------------------------------------------


def _payload_lines(res: CommandResult) -> list[str]:
    k, p = res.kind, res.payload
    if k == "verdict":
        return ["true" if p else "false"]
    if k == "formula":
        return [render(p)]
    if k == "literals":
        return [format_lits(p)]
    if k == "variables":
        return [" ".join(sorted(p))]
    if k == "groups":
        return p.lines()
    if k == "records":
        return [f"{key}={val}" for key, val in p.items()]
    return [str(p)]


def _jsonable(res: CommandResult) -> dict:
    doc = {"command": res.command, "status": res.status, "kind": res.kind}
    k, p = res.kind, res.payload
    if k == "verdict":
        doc["result"] = bool(p)
    elif k == "groups":
        doc["result"] = p.lines()
    elif k == "records":
        doc["result"] = dict(p)
    elif k == "literals":
        doc["result"] = [str(l) for l in sorted(p, key=lambda l: (l.var, not l.positive))]
    elif k == "variables":
        doc["result"] = sorted(p)
    else:
        doc["result"] = _payload_lines(res)[0]
    if res.extra.get("model") is not None:
        doc["model"] = {v: int(b) for v, b in sorted(res.extra["model"].items())}
    return doc


def format_result(res: CommandResult) -> str:
    fmt = res.extra.get("format", "text")
    timing = res.extra.get("timing", False)
    if res.status != "ok":
        return ""
    if fmt == "json":
        doc = _jsonable(res)
        if timing:
            doc["timing_ms"] = round(res.timing_ms, 3)
        return json.dumps(doc, sort_keys=True) + "\n"
    if fmt == "records":
        lines = [f"command={res.command}", f"status={res.status}", f"kind={res.kind}"]
        body = _payload_lines(res)
        if res.kind in ("groups", "records"):
            lines.append(f"count={len(body)}")
            lines.extend(body if res.kind == "records" else [f"item={b}" for b in body])
        else:
            lines.append(f"result={body[0]}")
        if res.extra.get("model") is not None:
            lines.append("model=" + " ".join(f"{v}={int(b)}" for v, b in sorted(res.extra["model"].items())))
        if timing:
            lines.append(f"timing_ms={res.timing_ms:.3f}")
        lines.append("end")
        return "\n".join(lines) + "\n"
    if fmt == "dimacs":
        if res.kind == "formula":
            return sat.write_dimacs(sat.to_equivalent_cnf(res.payload))
        if res.kind == "groups" and res.payload.kind == pr.IMPLICATES:
            return sat.write_dimacs(res.payload.members)
        raise UsageError("--format dimacs applies to formula and prime implicate results only")
    lines = _payload_lines(res)
    if res.extra.get("model") is not None:
        lines.append(" ".join(f"{v}={int(b)}" for v, b in sorted(res.extra["model"].items())))
    if timing:
        lines.append(f"# {res.timing_ms:.3f} ms")
    return "\n".join(lines) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    if res.status != "ok":
        print(res.payload, file=sys.stderr)
        return res.exit_code
    try:
        sys.stdout.write(format_result(res))
    except UsageError as exc:
        print(f"usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
