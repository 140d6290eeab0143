# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel; same contract and float operation order as ``_enum_py``."""

from libc.math cimport ceil, floor, sqrt
from libc.stdlib cimport free, malloc


def enumerate_box(mu, bstar, double bound, long radius, emb_re, emb_im,
                  long top_lo, long top_hi, long long budget, on_leaf, double threshold):
    cdef Py_ssize_t n = len(bstar)
    if n == 0:
        return 0, False
    cdef Py_ssize_t ne = len(emb_re[0])
    cdef Py_ssize_t i, j, e
    cdef double slack = bound * 1e-9 + 1e-9
    cdef double thr = threshold
    cdef long long nodes = 0
    cdef double ctr, room, width, d, approx
    cdef long lo_v, hi_v, ci
    cdef bint descend

    cdef double *MU = <double *> malloc(n * n * sizeof(double))
    cdef double *BS = <double *> malloc(n * sizeof(double))
    cdef double *ER = <double *> malloc(n * ne * sizeof(double))
    cdef double *EI = <double *> malloc(n * ne * sizeof(double))
    cdef double *AR = <double *> malloc((n + 1) * ne * sizeof(double))
    cdef double *AI = <double *> malloc((n + 1) * ne * sizeof(double))
    cdef double *partial = <double *> malloc((n + 1) * sizeof(double))
    cdef double *centers = <double *> malloc(n * sizeof(double))
    cdef long *c = <long *> malloc(n * sizeof(long))
    cdef long *hi = <long *> malloc(n * sizeof(long))
    cdef bint *nz = <bint *> malloc((n + 1) * sizeof(bint))
    if (MU == NULL or BS == NULL or ER == NULL or EI == NULL or AR == NULL or AI == NULL
            or partial == NULL or centers == NULL or c == NULL or hi == NULL or nz == NULL):
        raise MemoryError()
    try:
        for i in range(n):
            BS[i] = bstar[i]
            c[i] = 0
            hi[i] = 0
            centers[i] = 0.0
            row = mu[i]
            for j in range(n):
                MU[i * n + j] = row[j]
            rr = emb_re[i]
            ri = emb_im[i]
            for e in range(ne):
                ER[i * ne + e] = rr[e]
                EI[i * ne + e] = ri[e]
        for i in range(n + 1):
            partial[i] = 0.0
            nz[i] = False
            for e in range(ne):
                AR[i * ne + e] = 0.0
                AI[i * ne + e] = 0.0

        i = n - 1
        if not _open_level(i, n, MU, BS, c, hi, centers, partial, nz, bound, slack,
                           radius, top_lo, top_hi):
            return 0, False
        while True:
            nodes += 1
            if nodes > budget:
                return nodes - 1, True
            ci = c[i]
            d = ci - centers[i]
            partial[i] = partial[i + 1] + BS[i] * d * d
            nz[i] = nz[i + 1] or ci != 0
            for e in range(ne):
                AR[i * ne + e] = AR[(i + 1) * ne + e] + ci * ER[i * ne + e]
                AI[i * ne + e] = AI[(i + 1) * ne + e] + ci * EI[i * ne + e]
            descend = False
            if partial[i] <= bound + slack:
                if i == 0:
                    if nz[0]:
                        approx = 1.0
                        for e in range(ne):
                            approx *= AR[e] * AR[e] + AI[e] * AI[e]
                        if approx <= thr:
                            thr = on_leaf(tuple([c[j] for j in range(n)]))
                else:
                    descend = _open_level(i - 1, n, MU, BS, c, hi, centers, partial, nz,
                                          bound, slack, radius, top_lo, top_hi)
            if descend:
                i -= 1
                continue
            while True:
                if c[i] < hi[i]:
                    c[i] += 1
                    break
                c[i] = 0
                i += 1
                if i == n:
                    return nodes, False
    finally:
        free(MU); free(BS); free(ER); free(EI); free(AR); free(AI)
        free(partial); free(centers); free(c); free(hi); free(nz)


cdef bint _open_level(Py_ssize_t i, Py_ssize_t n, double *MU, double *BS, long *c, long *hi,
                      double *centers, double *partial, bint *nz, double bound, double slack,
                      long radius, long top_lo, long top_hi):
    cdef double ctr = 0.0
    cdef Py_ssize_t j
    cdef double room, width, dlo, dhi
    cdef long lo_v, hi_v
    for j in range(i + 1, n):
        ctr -= MU[j * n + i] * c[j]
    centers[i] = ctr
    room = bound + slack - partial[i + 1]
    if room < 0.0:
        return False
    width = sqrt(room / BS[i])
    dlo = ceil(ctr - width)
    dhi = floor(ctr + width)
    # clamp in floating point before the integer cast
    if dlo > radius or dhi < -radius:
        return False
    lo_v = -radius if dlo < -radius else <long> dlo
    hi_v = radius if dhi > radius else <long> dhi
    if not nz[i + 1] and lo_v < 0:
        lo_v = 0
    if i == n - 1:
        if lo_v < top_lo:
            lo_v = top_lo
        if hi_v > top_hi:
            hi_v = top_hi
    if lo_v > hi_v:
        return False
    c[i] = lo_v
    hi[i] = hi_v
    return True
