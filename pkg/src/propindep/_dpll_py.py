"""Pure-Python DPLL kernel (fallback for the compiled ``_dpll`` extension).

Both implementations take the same flattened clause arrays and explore the
search tree in exactly the same order, so they return identical models.

Clauses arrive as ``lits[starts[c]:starts[c + 1]]`` with DIMACS-style signed
variable indices in ``1..nvars``.  Callers must already have removed
tautologies and duplicate literals and rejected empty clauses.
"""


def _idx(lit):
    return 2 * lit if lit > 0 else -2 * lit + 1


def solve(nvars, lits, starts):
    """Return ``val`` (index 1..nvars in {1, -1, 0}) for a model, or None.

    0 means the variable was never needed; any value completes the model.
    """
    nclauses = len(starts) - 1
    nl = 2 * nvars + 2
    occ = [[] for _ in range(nl)]
    clen = [0] * nclauses
    for c in range(nclauses):
        s, e = starts[c], starts[c + 1]
        clen[c] = e - s
        for k in range(s, e):
            occ[_idx(lits[k])].append(c)

    val = [0] * (nvars + 1)
    nsat = [0] * nclauses
    nfalse = [0] * nclauses
    active = [len(o) for o in occ]
    trail = []
    # (trail length before the decision, decision literal, already flipped)
    levels = []
    queue = [c for c in range(nclauses) if clen[c] == 1]

    def assign(lit):
        v = lit if lit > 0 else -lit
        val[v] = 1 if lit > 0 else -1
        trail.append(lit)
        conflict = False
        for c in occ[_idx(lit)]:
            nsat[c] += 1
            if nsat[c] == 1:
                for k in range(starts[c], starts[c + 1]):
                    active[_idx(lits[k])] -= 1
        for c in occ[_idx(-lit)]:
            nfalse[c] += 1
            if nsat[c] == 0:
                if nfalse[c] == clen[c]:
                    conflict = True
                elif nfalse[c] == clen[c] - 1:
                    queue.append(c)
        return conflict

    def unassign(lit):
        v = lit if lit > 0 else -lit
        val[v] = 0
        for c in occ[_idx(lit)]:
            if nsat[c] == 1:
                for k in range(starts[c], starts[c + 1]):
                    active[_idx(lits[k])] += 1
            nsat[c] -= 1
        for c in occ[_idx(-lit)]:
            nfalse[c] -= 1

    def propagate():
        while queue:
            c = queue.pop()
            if nsat[c]:
                continue
            unit = 0
            for k in range(starts[c], starts[c + 1]):
                l = lits[k]
                if val[l if l > 0 else -l] == 0:
                    unit = l
                    break
            if unit == 0:
                queue.clear()
                return False
            if assign(unit):
                queue.clear()
                return False
        return True

    def pure_literals():
        changed = True
        while changed:
            changed = False
            for v in range(1, nvars + 1):
                if val[v]:
                    continue
                p, n = active[2 * v], active[2 * v + 1]
                if p and not n:
                    assign(v)
                    changed = True
                elif n and not p:
                    assign(-v)
                    changed = True

    def backtrack():
        queue.clear()
        while levels:
            mark, dec, flipped = levels.pop()
            while len(trail) > mark:
                unassign(trail.pop())
            if not flipped:
                levels.append((mark, -dec, True))
                if not assign(-dec) and propagate():
                    return True
                queue.clear()
        return False

    ok = propagate()
    while True:
        if not ok:
            if not backtrack():
                return None
            ok = True
            continue
        pure_literals()
        best = 0
        best_score = 0
        for v in range(1, nvars + 1):
            if val[v] == 0:
                score = active[2 * v] + active[2 * v + 1]
                if score > best_score:
                    best, best_score = v, score
        if best == 0:
            return val
        dec = best if active[2 * best] >= active[2 * best + 1] else -best
        levels.append((len(trail), dec, False))
        ok = not assign(dec) and propagate()
