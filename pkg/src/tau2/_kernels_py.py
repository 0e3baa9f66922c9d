"""Pure-Python row/column reduction kernels over exact integers.

These are the hot inner loops of the package: Hermite and Smith reduction
of small matrices with arbitrary-precision entries.  A compiled twin with
the same signatures lives in ``_kernels.pyx``; ``tau2.intlin`` picks one at
import time.  Keep both implementations in lockstep — the test suite runs
them against each other on random inputs.

All functions mutate list-of-list matrices in place.  Entries are Python
ints throughout (no fixed-width arithmetic anywhere: intermediate swell
during reduction can exceed 64 bits even for small inputs).
"""

BACKEND = "python"


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


def hnf_inplace(a, u):
    """Reduce ``a`` to row-style Hermite normal form, accumulating row ops in ``u``.

    Convention: pivots positive, entries above a pivot reduced into
    [0, pivot), zero rows at the bottom, pivot columns strictly increasing.
    ``u`` must come in as an identity matrix of size len(a); on return
    ``u * a_original == a`` and u is unimodular.  Returns the list of pivot
    column indices (its length is the rank).
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        # Bring a nonzero entry into the pivot row.
        piv = -1
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            u[r], u[piv] = u[piv], u[r]
        # Clear the column below the pivot.  Entries the pivot divides are
        # removed by plain elimination (leaves the pivot row untouched);
        # anything else goes through a 2x2 unimodular transform, which
        # strictly shrinks the pivot to a proper divisor.
        for i in range(r + 1, rows):
            q = a[i][c]
            if q == 0:
                continue
            p = a[r][c]
            ar = a[r]
            ai = a[i]
            ur = u[r]
            ui = u[i]
            if q % p == 0:
                f = q // p
                for k in range(cols):
                    ai[k] -= f * ar[k]
                for k in range(rows):
                    ui[k] -= f * ur[k]
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
        if a[r][c] < 0:
            ar = a[r]
            ur = u[r]
            for k in range(cols):
                ar[k] = -ar[k]
            for k in range(rows):
                ur[k] = -ur[k]
        # Reduce the entries above the pivot into [0, pivot).
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q == 0:
                continue
            ai = a[i]
            ar = a[r]
            ui = u[i]
            ur = u[r]
            for k in range(cols):
                ai[k] -= q * ar[k]
            for k in range(rows):
                ui[k] -= q * ur[k]
        pivots.append(c)
        r += 1
    return pivots


def _snf_clear_col(a, u, rows, cols, k):
    # Divisible entries are eliminated without touching the pivot row; a 2x2
    # transform is used otherwise and strictly shrinks the pivot.  The clear
    # loops in snf_inplace rely on exactly this dichotomy to terminate.
    for i in range(k + 1, rows):
        q = a[i][k]
        if q == 0:
            continue
        p = a[k][k]
        ak = a[k]
        ai = a[i]
        uk = u[k]
        ui = u[i]
        if q % p == 0:
            f = q // p
            for c in range(cols):
                ai[c] -= f * ak[c]
            for c in range(len(uk)):
                ui[c] -= f * uk[c]
            continue
        g, s, t = xgcd(p, q)
        x = p // g
        y = q // g
        for c in range(cols):
            akc = ak[c]
            aic = ai[c]
            ak[c] = s * akc + t * aic
            ai[c] = x * aic - y * akc
        for c in range(len(uk)):
            ukc = uk[c]
            uic = ui[c]
            uk[c] = s * ukc + t * uic
            ui[c] = x * uic - y * ukc


def _snf_clear_row(a, v, rows, cols, k):
    for j in range(k + 1, cols):
        q = a[k][j]
        if q == 0:
            continue
        p = a[k][k]
        if q % p == 0:
            f = q // p
            for i in range(rows):
                ai = a[i]
                ai[j] -= f * ai[k]
            for i in range(len(v)):
                vi = v[i]
                vi[j] -= f * vi[k]
            continue
        g, s, t = xgcd(p, q)
        x = p // g
        y = q // g
        for i in range(rows):
            ai = a[i]
            aik = ai[k]
            aij = ai[j]
            ai[k] = s * aik + t * aij
            ai[j] = x * aij - y * aik
        for i in range(len(v)):
            vi = v[i]
            vik = vi[k]
            vij = vi[j]
            vi[k] = s * vik + t * vij
            vi[j] = x * vij - y * vik


def snf_inplace(a, u, v):
    """Reduce ``a`` to Smith normal form: u * a_original * v == a on return.

    ``u`` and ``v`` must come in as identity matrices (rows x rows and
    cols x cols).  The result is diagonal with nonnegative entries in a
    divisibility chain d1 | d2 | ... .  Returns the number of nonzero
    diagonal entries (the rank).
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    n = min(rows, cols)
    k = 0
    while k < n:
        # Find a nonzero pivot in the trailing submatrix.
        pi = pj = -1
        for i in range(k, rows):
            for j in range(k, cols):
                if a[i][j] != 0:
                    pi, pj = i, j
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
                ai = a[i]
                ai[k], ai[pj] = ai[pj], ai[k]
            for i in range(cols):
                vi = v[i]
                vi[k], vi[pj] = vi[pj], vi[k]
        # Alternate row/column clearing until both stay clear.
        while True:
            _snf_clear_col(a, u, rows, cols, k)
            _snf_clear_row(a, v, rows, cols, k)
            clean = True
            for i in range(k + 1, rows):
                if a[i][k] != 0:
                    clean = False
                    break
            if clean:
                break
        # Enforce divisibility: fold any non-multiple into the pivot position.
        p = a[k][k]
        off_i = -1
        for i in range(k + 1, rows):
            ai = a[i]
            for j in range(k + 1, cols):
                if ai[j] % p != 0:
                    off_i = i
                    break
            if off_i >= 0:
                break
        if off_i >= 0:
            ak = a[k]
            ao = a[off_i]
            for c in range(cols):
                ak[c] += ao[c]
            uk = u[k]
            uo = u[off_i]
            for c in range(len(uk)):
                uk[c] += uo[c]
            continue  # redo position k
        k += 1
    rank = 0
    for i in range(n):
        if a[i][i] != 0:
            if a[i][i] < 0:
                ai = a[i]
                ai[i] = -ai[i]
                ui = u[i]
                for c in range(len(ui)):
                    ui[c] = -ui[c]
            rank += 1
    return rank
