# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: modular Laplacian determinants and short-cycle counts.

Every function here has a pure-Python twin in ``_pykernels`` with the same
signature (modulo ``laplacian_residues``, which the fallback replaces with an
exact Bareiss elimination).
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport calloc, free, malloc


cdef inline uint64_t _mulmod(uint64_t a, uint64_t b, uint64_t p, double pinv) noexcept nogil:
    # a, b < p < 2**31, so a*b fits in 62 bits; the double quotient is off by at most one
    cdef uint64_t x = a * b
    cdef uint64_t q = <uint64_t>(<double>x * pinv)
    cdef int64_t r = <int64_t>(x - q * p)
    if r < 0:
        r += <int64_t>p
    elif r >= <int64_t>p:
        r -= <int64_t>p
    return <uint64_t>r


cdef uint64_t _powmod(uint64_t a, uint64_t e, uint64_t p, double pinv) noexcept nogil:
    cdef uint64_t result = 1
    while e:
        if e & 1:
            result = _mulmod(result, a, p, pinv)
        a = _mulmod(a, a, p, pinv)
        e >>= 1
    return result


cdef uint64_t _det_mod(uint64_t* a, Py_ssize_t size, uint64_t p) noexcept nogil:
    """Determinant of the row-major ``size`` x ``size`` matrix ``a`` modulo ``p``.

    Destroys ``a``. Entries must already be reduced into [0, p).
    """
    cdef double pinv = 1.0 / <double>p
    cdef uint64_t det = 1, inv, f, t
    cdef Py_ssize_t i, j, k, piv
    cdef uint64_t* rk
    cdef uint64_t* ri
    for k in range(size):
        piv = -1
        for i in range(k, size):
            if a[i * size + k] != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != k:
            for j in range(k, size):
                t = a[k * size + j]
                a[k * size + j] = a[piv * size + j]
                a[piv * size + j] = t
            det = (p - det) % p
        rk = a + k * size
        det = _mulmod(det, rk[k], p, pinv)
        inv = _powmod(rk[k], p - 2, p, pinv)
        for i in range(k + 1, size):
            ri = a + i * size
            f = ri[k]
            if f == 0:
                continue
            f = p - _mulmod(f, inv, p, pinv)
            for j in range(k + 1, size):
                t = ri[j] + _mulmod(f, rk[j], p, pinv)
                ri[j] = t - p if t >= p else t
    return det


def det_mod(object matrix, uint64_t p):
    """Determinant of a square integer matrix (list of rows) modulo a prime ``p < 2**31``."""
    cdef Py_ssize_t size = len(matrix), i, j
    if size == 0:
        return 1 % p
    cdef uint64_t* a = <uint64_t*>malloc(size * size * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(size):
            row = matrix[i]
            for j in range(size):
                a[i * size + j] = <uint64_t>(int(row[j]) % p)
        return _det_mod(a, size, p)
    finally:
        free(a)


def laplacian_residues(Py_ssize_t n, const int64_t[::1] src, const int64_t[::1] dst,
                       Py_ssize_t root, const uint64_t[::1] primes):
    """Residues of the root-deleted out-degree Laplacian determinant modulo each prime.

    The diagonal holds non-loop out-degrees and entry (u, w) holds -mult(u, w), so the
    determinant counts in-arborescences toward ``root``.
    """
    cdef Py_ssize_t m = src.shape[0], size = n - 1, e, u, w, i, j, q
    cdef Py_ssize_t nprimes = primes.shape[0]
    out = [0] * nprimes
    if size <= 0:
        return [1 % int(primes[q]) for q in range(nprimes)]
    cdef int64_t* lap = <int64_t*>calloc(size * size, sizeof(int64_t))
    cdef uint64_t* work = <uint64_t*>malloc(size * size * sizeof(uint64_t))
    cdef uint64_t p, r
    cdef int64_t v
    if lap == NULL or work == NULL:
        free(lap)
        free(work)
        raise MemoryError()
    try:
        for e in range(m):
            u = src[e]
            w = dst[e]
            if u == w or u == root:
                continue
            i = u - 1 if u > root else u
            lap[i * size + i] += 1
            if w != root:
                j = w - 1 if w > root else w
                lap[i * size + j] -= 1
        for q in range(nprimes):
            p = primes[q]
            with nogil:
                for i in range(size * size):
                    v = lap[i] % <int64_t>p
                    if v < 0:
                        v += <int64_t>p
                    work[i] = <uint64_t>v
                r = _det_mod(work, size, p)
            out[q] = r
        return out
    finally:
        free(lap)
        free(work)


def multiplicity_stats(Py_ssize_t n, const int64_t[::1] src, const int64_t[::1] dst):
    """Return ``(loops, double_arcs)``: loop arcs and unordered parallel non-loop pairs."""
    cdef Py_ssize_t m = src.shape[0], e
    cdef int64_t loops = 0, pairs = 0, c
    cdef int64_t* mult = <int64_t*>calloc(n * n if n > 0 else 1, sizeof(int64_t))
    if mult == NULL:
        raise MemoryError()
    try:
        for e in range(m):
            if src[e] == dst[e]:
                loops += 1
            else:
                c = mult[src[e] * n + dst[e]]
                pairs += c  # the new arc pairs with each earlier parallel one
                mult[src[e] * n + dst[e]] = c + 1
        return loops, pairs
    finally:
        free(mult)


cdef struct _CycleCtx:
    Py_ssize_t n
    Py_ssize_t max_len
    Py_ssize_t start
    int64_t* mult
    Py_ssize_t* off
    Py_ssize_t* nbr
    char* seen
    int64_t* counts


cdef void _extend(_CycleCtx* ctx, Py_ssize_t u, Py_ssize_t depth, int64_t weight) noexcept nogil:
    cdef Py_ssize_t idx, v, s = ctx.start, n = ctx.n
    cdef int64_t back
    if depth >= 2:
        back = ctx.mult[u * n + s]
        if back:
            ctx.counts[depth - 1] += weight * back
    if depth == ctx.max_len:
        return
    for idx in range(ctx.off[u], ctx.off[u + 1]):
        v = ctx.nbr[idx]
        if v > s and not ctx.seen[v]:
            ctx.seen[v] = 1
            _extend(ctx, v, depth + 1, weight * ctx.mult[u * n + v])
            ctx.seen[v] = 0


def cycle_counts(Py_ssize_t n, const int64_t[::1] src, const int64_t[::1] dst, Py_ssize_t max_len):
    """Counts of directed i-cycles for i = 1..max_len, arcs distinguished by identity.

    A cycle is counted once per cyclic vertex sequence, weighted by the product of
    arc multiplicities along it; i = 1 gives the number of loop arcs.
    """
    cdef Py_ssize_t m = src.shape[0], e, u, v, k
    cdef _CycleCtx ctx
    if max_len < 1:
        return []
    ctx.n = n
    ctx.max_len = max_len
    ctx.mult = <int64_t*>calloc(n * n if n > 0 else 1, sizeof(int64_t))
    ctx.off = <Py_ssize_t*>calloc(n + 1, sizeof(Py_ssize_t))
    ctx.nbr = <Py_ssize_t*>malloc((m if m > 0 else 1) * sizeof(Py_ssize_t))
    ctx.seen = <char*>calloc(n if n > 0 else 1, sizeof(char))
    ctx.counts = <int64_t*>calloc(max_len, sizeof(int64_t))
    try:
        if not (ctx.mult and ctx.off and ctx.nbr and ctx.seen and ctx.counts):
            raise MemoryError()
        for e in range(m):
            ctx.mult[src[e] * n + dst[e]] += 1
        with nogil:
            k = 0
            for u in range(n):
                ctx.off[u] = k
                ctx.counts[0] += ctx.mult[u * n + u]
                for v in range(n):
                    if v != u and ctx.mult[u * n + v]:
                        ctx.nbr[k] = v
                        k += 1
            ctx.off[n] = k
            if max_len >= 2:
                for u in range(n):
                    ctx.start = u
                    ctx.seen[u] = 1
                    _extend(&ctx, u, 1, 1)
                    ctx.seen[u] = 0
        return [ctx.counts[k] for k in range(max_len)]
    finally:
        free(ctx.mult)
        free(ctx.off)
        free(ctx.nbr)
        free(ctx.seen)
        free(ctx.counts)
