"""Backend selection for the hot loops.

The compiled extension is used when importable; setting ``EULERTOURS_PURE=1``
forces the pure-Python fallback. Either way the results are bit-identical.

The compiled arborescence count works modulo a handful of 31-bit primes and
recombines with the Chinese remainder theorem. The number of primes comes
from the bound ``|ARBS(G, r)| <= prod_{v != r} outdeg(v)`` (every non-root
vertex picks one out-arc), so the reconstruction is exact, never rounded.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

import numpy as np

from eulertours import _pykernels

try:
    from eulertours import _kernels as _ext
except ImportError:  # pragma: no cover - exercised only without a compiler
    _ext = None

if os.environ.get("EULERTOURS_PURE", "") not in ("", "0"):
    _ext = None

BACKEND = "cython" if _ext is not None else "python"

_PRIME_CEILING = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # bases 2, 7, 61 are deterministic below 4_759_123_141
    for a in (2, 7, 61):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes(count: int) -> tuple[int, ...]:
    out: list[int] = []
    p = _PRIME_CEILING - 1
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p -= 2
    return tuple(out)


def _crt(residues, primes) -> int:
    value, modulus = 0, 1
    for r, p in zip(residues, primes):
        # lift value (mod modulus) to the unique residue mod modulus*p matching r
        t = (int(r) - value) * pow(modulus, -1, p) % p
        value += modulus * t
        modulus *= p
    return value


def _as_index_array(xs) -> np.ndarray:
    return np.ascontiguousarray(xs, dtype=np.int64)


def arborescence_bound(n: int, src, dst, root: int) -> int:
    src = _as_index_array(src)
    dst = _as_index_array(dst)
    keep = (src != dst) & (src != root)
    outdeg = np.bincount(src[keep], minlength=n)
    outdeg = np.delete(outdeg, root)
    return math.prod(int(c) for c in outdeg)


def arborescence_count(n: int, src, dst, root: int) -> int:
    """Exact number of in-arborescences toward ``root`` of the multigraph (src[e] -> dst[e])."""
    if _ext is None:
        return _pykernels.arborescence_count(n, src, dst, root)
    src = _as_index_array(src)
    dst = _as_index_array(dst)
    bound = arborescence_bound(n, src, dst, root)
    if bound == 0:
        return 0
    # each prime exceeds 2**30, so this many primes have product > bound
    primes = _primes(bound.bit_length() // 30 + 1)
    residues = _ext.laplacian_residues(n, src, dst, root, np.asarray(primes, dtype=np.uint64))
    return _crt(residues, primes)


def multiplicity_stats(n: int, src, dst) -> tuple[int, int]:
    """``(loop arcs, unordered pairs of parallel non-loop arcs)``."""
    if _ext is None:
        return _pykernels.multiplicity_stats(n, src, dst)
    return _ext.multiplicity_stats(n, _as_index_array(src), _as_index_array(dst))


def cycle_counts(n: int, src, dst, max_len: int) -> list[int]:
    """Directed i-cycle counts for i = 1..max_len (index i-1)."""
    if _ext is None:
        return _pykernels.cycle_counts(n, src, dst, max_len)
    return _ext.cycle_counts(n, _as_index_array(src), _as_index_array(dst), max_len)
