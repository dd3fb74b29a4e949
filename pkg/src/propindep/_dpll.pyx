# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled DPLL kernel.

Same algorithm, data layout and search order as ``_dpll_py.solve``; see
that module for the input contract.
"""

from libc.stdlib cimport malloc, calloc, free


cdef struct State:
    int nvars
    int nclauses
    int* lits
    int* starts
    int* occ_start
    int* occ
    int* clen
    int* val
    int* nsat
    int* nfalse
    int* active
    int* trail
    int ntrail
    int* queue
    int nqueue
    int* lv_mark
    int* lv_dec
    char* lv_flipped
    int nlevels


cdef inline int lidx(int lit) nogil:
    if lit > 0:
        return 2 * lit
    return -2 * lit + 1


cdef int assign(State* s, int lit) nogil:
    cdef int v = lit if lit > 0 else -lit
    cdef int i, c, k, li
    cdef int conflict = 0
    s.val[v] = 1 if lit > 0 else -1
    s.trail[s.ntrail] = lit
    s.ntrail += 1
    li = lidx(lit)
    for i in range(s.occ_start[li], s.occ_start[li + 1]):
        c = s.occ[i]
        s.nsat[c] += 1
        if s.nsat[c] == 1:
            for k in range(s.starts[c], s.starts[c + 1]):
                s.active[lidx(s.lits[k])] -= 1
    li = lidx(-lit)
    for i in range(s.occ_start[li], s.occ_start[li + 1]):
        c = s.occ[i]
        s.nfalse[c] += 1
        if s.nsat[c] == 0:
            if s.nfalse[c] == s.clen[c]:
                conflict = 1
            elif s.nfalse[c] == s.clen[c] - 1:
                s.queue[s.nqueue] = c
                s.nqueue += 1
    return conflict


cdef void unassign(State* s, int lit) nogil:
    cdef int v = lit if lit > 0 else -lit
    cdef int i, c, k, li
    s.val[v] = 0
    li = lidx(lit)
    for i in range(s.occ_start[li], s.occ_start[li + 1]):
        c = s.occ[i]
        if s.nsat[c] == 1:
            for k in range(s.starts[c], s.starts[c + 1]):
                s.active[lidx(s.lits[k])] += 1
        s.nsat[c] -= 1
    li = lidx(-lit)
    for i in range(s.occ_start[li], s.occ_start[li + 1]):
        s.nfalse[s.occ[i]] -= 1


cdef int propagate(State* s) nogil:
    cdef int c, k, l, unit
    while s.nqueue > 0:
        s.nqueue -= 1
        c = s.queue[s.nqueue]
        if s.nsat[c]:
            continue
        unit = 0
        for k in range(s.starts[c], s.starts[c + 1]):
            l = s.lits[k]
            if s.val[l if l > 0 else -l] == 0:
                unit = l
                break
        if unit == 0:
            s.nqueue = 0
            return 0
        if assign(s, unit):
            s.nqueue = 0
            return 0
    return 1


cdef void pure_literals(State* s) nogil:
    cdef int changed = 1
    cdef int v, p, n
    while changed:
        changed = 0
        for v in range(1, s.nvars + 1):
            if s.val[v]:
                continue
            p = s.active[2 * v]
            n = s.active[2 * v + 1]
            if p and not n:
                assign(s, v)
                changed = 1
            elif n and not p:
                assign(s, -v)
                changed = 1


cdef int backtrack(State* s) nogil:
    cdef int mark, dec
    s.nqueue = 0
    while s.nlevels > 0:
        s.nlevels -= 1
        mark = s.lv_mark[s.nlevels]
        dec = s.lv_dec[s.nlevels]
        while s.ntrail > mark:
            s.ntrail -= 1
            unassign(s, s.trail[s.ntrail])
        if not s.lv_flipped[s.nlevels]:
            s.lv_mark[s.nlevels] = mark
            s.lv_dec[s.nlevels] = -dec
            s.lv_flipped[s.nlevels] = 1
            s.nlevels += 1
            if not assign(s, -dec) and propagate(s):
                return 1
            s.nqueue = 0
    return 0


cdef int search(State* s) nogil:
    cdef int ok, v, best, best_score, score, dec
    ok = propagate(s)
    while True:
        if not ok:
            if not backtrack(s):
                return 0
            ok = 1
            continue
        pure_literals(s)
        best = 0
        best_score = 0
        for v in range(1, s.nvars + 1):
            if s.val[v] == 0:
                score = s.active[2 * v] + s.active[2 * v + 1]
                if score > best_score:
                    best = v
                    best_score = score
        if best == 0:
            return 1
        dec = best if s.active[2 * best] >= s.active[2 * best + 1] else -best
        s.lv_mark[s.nlevels] = s.ntrail
        s.lv_dec[s.nlevels] = dec
        s.lv_flipped[s.nlevels] = 0
        s.nlevels += 1
        ok = (not assign(s, dec)) and propagate(s)


def solve(int nvars, lits, starts):
    """Return ``val`` (index 1..nvars in {1, -1, 0}) for a model, or None."""
    cdef State s
    cdef int nclauses = len(starts) - 1
    cdef int nlits = len(lits)
    cdef int nl = 2 * nvars + 2
    cdef int c, k, li, result, total
    cdef int* fill
    s.nvars = nvars
    s.nclauses = nclauses
    s.lits = <int*> malloc((nlits + 1) * sizeof(int))
    s.starts = <int*> malloc((nclauses + 1) * sizeof(int))
    s.occ_start = <int*> calloc(nl + 1, sizeof(int))
    s.occ = <int*> malloc((nlits + 1) * sizeof(int))
    s.clen = <int*> malloc((nclauses + 1) * sizeof(int))
    s.val = <int*> calloc(nvars + 1, sizeof(int))
    s.nsat = <int*> calloc(nclauses + 1, sizeof(int))
    s.nfalse = <int*> calloc(nclauses + 1, sizeof(int))
    s.active = <int*> calloc(nl, sizeof(int))
    s.trail = <int*> malloc((nvars + 1) * sizeof(int))
    s.queue = <int*> malloc((nclauses + 1) * sizeof(int))
    s.lv_mark = <int*> malloc((nvars + 1) * sizeof(int))
    s.lv_dec = <int*> malloc((nvars + 1) * sizeof(int))
    s.lv_flipped = <char*> malloc((nvars + 1) * sizeof(char))
    fill = <int*> calloc(nl + 1, sizeof(int))
    try:
        if (s.lits == NULL or s.starts == NULL or s.occ_start == NULL or s.occ == NULL
                or s.clen == NULL or s.val == NULL or s.nsat == NULL or s.nfalse == NULL
                or s.active == NULL or s.trail == NULL or s.queue == NULL or s.lv_mark == NULL
                or s.lv_dec == NULL or s.lv_flipped == NULL or fill == NULL):
            raise MemoryError()
        for k in range(nlits):
            s.lits[k] = lits[k]
        for c in range(nclauses + 1):
            s.starts[c] = starts[c]
        # occurrence lists in CSR form, clause ids ascending per literal
        for k in range(nlits):
            s.occ_start[lidx(s.lits[k]) + 1] += 1
        for li in range(nl):
            s.occ_start[li + 1] += s.occ_start[li]
        for c in range(nclauses):
            s.clen[c] = s.starts[c + 1] - s.starts[c]
            for k in range(s.starts[c], s.starts[c + 1]):
                li = lidx(s.lits[k])
                s.occ[s.occ_start[li] + fill[li]] = c
                fill[li] += 1
        for li in range(nl):
            s.active[li] = s.occ_start[li + 1] - s.occ_start[li]
        s.ntrail = 0
        s.nlevels = 0
        s.nqueue = 0
        for c in range(nclauses):
            if s.clen[c] == 1:
                s.queue[s.nqueue] = c
                s.nqueue += 1
        with nogil:
            result = search(&s)
        if not result:
            return None
        return [s.val[k] for k in range(nvars + 1)]
    finally:
        free(s.lits)
        free(s.starts)
        free(s.occ_start)
        free(s.occ)
        free(s.clen)
        free(s.val)
        free(s.nsat)
        free(s.nfalse)
        free(s.active)
        free(s.trail)
        free(s.queue)
        free(s.lv_mark)
        free(s.lv_dec)
        free(s.lv_flipped)
        free(fill)
