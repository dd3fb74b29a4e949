"""Backend selection for the DPLL kernel.

The compiled extension is used when it imports; otherwise (or when the
environment variable ``PROPINDEP_PURE_PYTHON`` is set to a non-empty
value) the pure-Python twin is used.  Both return identical answers.
"""

import os

from . import _dpll_py

if os.environ.get("PROPINDEP_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _dpll as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_solve = _compiled.solve if _compiled is not None else _dpll_py.solve


def flatten_clauses(clauses):
    """Flatten int clauses into ``(lits, starts)``.

    Returns ``None`` when an empty clause makes the set trivially unsatisfiable.
    Tautological clauses are dropped and duplicate literals merged.
    """
    lits = []
    starts = [0]
    for clause in clauses:
        seen = set()
        taut = False
        row = []
        for l in clause:
            if -l in seen:
                taut = True
                break
            if l not in seen:
                seen.add(l)
                row.append(l)
        if taut:
            continue
        if not row:
            return None
        lits.extend(row)
        starts.append(len(lits))
    return lits, starts


def solve(nvars, clauses, backend=None):
    """Satisfying assignment for int clauses over ``1..nvars``, or ``None``.

    The result is indexed by variable (slot 0 unused) with values 1, -1, or
    0 for variables left free.
    """
    flat = flatten_clauses(clauses)
    if flat is None:
        return None
    lits, starts = flat
    fn = _solve
    if backend == "python":
        fn = _dpll_py.solve
    elif backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled DPLL kernel is not available")
        fn = _compiled.solve
    return fn(nvars, lits, starts)
