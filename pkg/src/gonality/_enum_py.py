"""Pure-Python enumeration kernel (fallback for the compiled ``_enum_c``).

Both kernels must perform the same floating-point operations in the same
order so that node counts agree bit for bit.
"""

from math import ceil, floor, sqrt


def enumerate_box(mu, bstar, bound, radius, emb_re, emb_im, top_lo, top_hi, budget, on_leaf, threshold):
    """Depth-first enumeration of ``c`` in ``[-radius, radius]^n`` with ``Q(c) <= bound``.

    ``mu``/``bstar`` are the Gram-Schmidt data of the reduced basis, levels are
    visited from ``n - 1`` down to ``0`` and each level walks its admissible
    interval in increasing order.  The first nonzero coordinate (in visiting
    order) is kept positive, so ``c`` and ``-c`` are visited once.  The top
    coordinate is restricted to ``[top_lo, top_hi]`` to allow partitioning.

    ``emb_re[j][e]``/``emb_im[j][e]`` hold the half-embeddings of basis vector
    ``j``; a leaf whose approximate norm is ``<= threshold`` is handed to
    ``on_leaf(coeffs)``, which returns the new threshold.

    Returns ``(nodes, exhausted)``.
    """
    n = len(bstar)
    ne = len(emb_re[0]) if n else 0
    slack = bound * 1e-9 + 1e-9
    c = [0] * n
    partial = [0.0] * (n + 1)
    centers = [0.0] * n
    are = [[0.0] * ne for _ in range(n + 1)]
    aim = [[0.0] * ne for _ in range(n + 1)]
    hi = [0] * n
    nonzero_above = [False] * (n + 1)
    nodes = 0
    thr = threshold

    def open_level(i):
        # Sets c[i] to the first admissible value and hi[i]; returns False if empty.
        ctr = 0.0
        for j in range(i + 1, n):
            ctr -= mu[j][i] * c[j]
        centers[i] = ctr
        room = bound + slack - partial[i + 1]
        if room < 0.0:
            return False
        width = sqrt(room / bstar[i])
        lo_v = ceil(ctr - width)
        hi_v = floor(ctr + width)
        if lo_v < -radius:
            lo_v = -radius
        if hi_v > radius:
            hi_v = radius
        if not nonzero_above[i + 1] and lo_v < 0:
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

    if n == 0:
        return 0, False
    i = n - 1
    if not open_level(i):
        return 0, False
    while True:
        nodes += 1
        if nodes > budget:
            return nodes - 1, True
        ci = c[i]
        d = ci - centers[i]
        partial[i] = partial[i + 1] + bstar[i] * d * d
        nonzero_above[i] = nonzero_above[i + 1] or ci != 0
        rp, ip, rj, ij = are[i + 1], aim[i + 1], emb_re[i], emb_im[i]
        ra, ia = are[i], aim[i]
        for e in range(ne):
            ra[e] = rp[e] + ci * rj[e]
            ia[e] = ip[e] + ci * ij[e]
        descend = False
        if partial[i] <= bound + slack:
            if i == 0:
                if nonzero_above[0]:
                    approx = 1.0
                    for e in range(ne):
                        approx *= ra[e] * ra[e] + ia[e] * ia[e]
                    if approx <= thr:
                        thr = on_leaf(tuple(c))
            else:
                descend = open_level(i - 1)
        if descend:
            i -= 1
            continue
        # advance at this level, popping exhausted levels
        while True:
            if c[i] < hi[i]:
                c[i] += 1
                break
            c[i] = 0
            i += 1
            if i == n:
                return nodes, False

