# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``: same algorithms, typed index loops.

Entries remain Python ints (arbitrary precision is non-negotiable: entry
swell during reduction overflows any fixed width), so the speedup comes
from removing interpreter overhead around the inner loops.  Keep this file
in lockstep with ``_kernels_py.py``; the tests compare the two backends on
random matrices.
"""

BACKEND = "c"


def xgcd(a, b):
    """Return (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_inplace(list a, list u):
    """Row-style HNF in place; see the pure-Python twin for the contract."""
    cdef Py_ssize_t rows = len(a)
    cdef Py_ssize_t cols = len(a[0]) if rows else 0
    cdef Py_ssize_t r = 0, c, i, k, piv
    cdef list ar, ai, ur, ui, pivots
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if (<list>a[i])[c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, rows):
            q = (<list>a[i])[c]
            if q == 0:
                continue
            p = (<list>a[r])[c]
            ar = <list>a[r]
            ai = <list>a[i]
            ur = <list>u[r]
            ui = <list>u[i]
            if q % p == 0:
                f = q // p
                for k in range(cols):
                    ai[k] = ai[k] - f * ar[k]
                for k in range(rows):
                    ui[k] = ui[k] - f * ur[k]
                continue
            g, s, t = xgcd(p, q)
            x = p // g
            y = q // g
            for k in range(cols):
                ark = ar[k]
                aik = ai[k]
                ar[k] = s * ark + t * aik
                ai[k] = x * aik - y * ark
            for k in range(rows):
                urk = ur[k]
                uik = ui[k]
                ur[k] = s * urk + t * uik
                ui[k] = x * uik - y * urk
        if (<list>a[r])[c] < 0:
            ar = <list>a[r]
            ur = <list>u[r]
            for k in range(cols):
                ar[k] = -ar[k]
            for k in range(rows):
                ur[k] = -ur[k]
        p = (<list>a[r])[c]
        for i in range(r):
            q = (<list>a[i])[c] // p
            if q == 0:
                continue
            ai = <list>a[i]
            ar = <list>a[r]
            ui = <list>u[i]
            ur = <list>u[r]
            for k in range(cols):
                ai[k] = ai[k] - q * ar[k]
            for k in range(rows):
                ui[k] = ui[k] - q * ur[k]
        pivots.append(c)
        r += 1
    return pivots


cdef void _snf_clear_col(list a, list u, Py_ssize_t rows, Py_ssize_t cols, Py_ssize_t k):
    # Divisible entries are eliminated without touching the pivot row; a 2x2
    # transform is used otherwise and strictly shrinks the pivot.  The clear
    # loops in snf_inplace rely on exactly this dichotomy to terminate.
    cdef Py_ssize_t i, c, usize
    cdef list ak, ai, uk, ui
    usize = len(<list>u[0]) if len(u) else 0
    for i in range(k + 1, rows):
        q = (<list>a[i])[k]
        if q == 0:
            continue
        p = (<list>a[k])[k]
        ak = <list>a[k]
        ai = <list>a[i]
        uk = <list>u[k]
        ui = <list>u[i]
        if q % p == 0:
            f = q // p
            for c in range(cols):
                ai[c] = ai[c] - f * ak[c]
            for c in range(usize):
                ui[c] = ui[c] - f * uk[c]
            continue
        g, s, t = xgcd(p, q)
        x = p // g
        y = q // g
        for c in range(cols):
            akc = ak[c]
            aic = ai[c]
            ak[c] = s * akc + t * aic
            ai[c] = x * aic - y * akc
        for c in range(usize):
            ukc = uk[c]
            uic = ui[c]
            uk[c] = s * ukc + t * uic
            ui[c] = x * uic - y * ukc


cdef void _snf_clear_row(list a, list v, Py_ssize_t rows, Py_ssize_t cols, Py_ssize_t k):
    cdef Py_ssize_t j, i, vsize
    cdef list ai, vi
    vsize = len(v)
    for j in range(k + 1, cols):
        q = (<list>a[k])[j]
        if q == 0:
            continue
        p = (<list>a[k])[k]
        if q % p == 0:
            f = q // p
            for i in range(rows):
                ai = <list>a[i]
                ai[j] = ai[j] - f * ai[k]
            for i in range(vsize):
                vi = <list>v[i]
                vi[j] = vi[j] - f * vi[k]
            continue
        g, s, t = xgcd(p, q)
        x = p // g
        y = q // g
        for i in range(rows):
            ai = <list>a[i]
            aik = ai[k]
            aij = ai[j]
            ai[k] = s * aik + t * aij
            ai[j] = x * aij - y * aik
        for i in range(vsize):
            vi = <list>v[i]
            vik = vi[k]
            vij = vi[j]
            vi[k] = s * vik + t * vij
            vi[j] = x * vij - y * vik


def snf_inplace(list a, list u, list v):
    """Smith normal form in place; see the pure-Python twin for the contract."""
    cdef Py_ssize_t rows = len(a)
    cdef Py_ssize_t cols = len(a[0]) if rows else 0
    cdef Py_ssize_t n = rows if rows < cols else cols
    cdef Py_ssize_t k = 0, i, j, c, pi, pj, off_i, rank, usize
    cdef bint clean
    cdef list ai, ak, ao, uk, uo, ui, vi
    usize = len(<list>u[0]) if len(u) else 0
    while k < n:
        pi = -1
        pj = -1
        for i in range(k, rows):
            ai = <list>a[i]
            for j in range(k, cols):
                if ai[j] != 0:
                    pi = i
                    pj = j
                    break
            if pi >= 0:
                break
        if pi < 0:
            break
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            u[k], u[pi] = u[pi], u[k]
        if pj != k:
            for i in range(rows):
                ai = <list>a[i]
                ai[k], ai[pj] = ai[pj], ai[k]
            for i in range(cols):
                vi = <list>v[i]
                vi[k], vi[pj] = vi[pj], vi[k]
        while True:
            _snf_clear_col(a, u, rows, cols, k)
            _snf_clear_row(a, v, rows, cols, k)
            clean = True
            for i in range(k + 1, rows):
                if (<list>a[i])[k] != 0:
                    clean = False
                    break
            if clean:
                break
        p = (<list>a[k])[k]
        off_i = -1
        for i in range(k + 1, rows):
            ai = <list>a[i]
            for j in range(k + 1, cols):
                if ai[j] % p != 0:
                    off_i = i
                    break
            if off_i >= 0:
                break
        if off_i >= 0:
            ak = <list>a[k]
            ao = <list>a[off_i]
            for c in range(cols):
                ak[c] = ak[c] + ao[c]
            uk = <list>u[k]
            uo = <list>u[off_i]
            for c in range(usize):
                uk[c] = uk[c] + uo[c]
            continue
        k += 1
    rank = 0
    for i in range(n):
        if (<list>a[i])[i] != 0:
            if (<list>a[i])[i] < 0:
                ai = <list>a[i]
                ai[i] = -ai[i]
                ui = <list>u[i]
                for c in range(usize):
                    ui[c] = -ui[c]
            rank += 1
    return rank
