"""Pure-Python implementations of the hot loops.

Used when the compiled ``_kernels`` extension is unavailable (or disabled with
``EULERTOURS_PURE=1``). Results are identical; only speed differs.
"""

from __future__ import annotations

from collections.abc import Sequence


def det_bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination.

    Every division in the update is exact, so all intermediates stay integers.
    """
    a = [list(map(int, row)) for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = a[k]
        akk = rk[k]
        for i in range(k + 1, size):
            ri = a[i]
            aik = ri[k]
            if aik == 0:
                for j in range(k + 1, size):
                    ri[j] = ri[j] * akk // prev
            else:
                for j in range(k + 1, size):
                    ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[-1][-1]


def reduced_laplacian(n: int, src: Sequence[int], dst: Sequence[int], root: int) -> list[list[int]]:
    """Out-degree Laplacian without loops, with the root's row and column deleted."""
    index = [v - (v > root) for v in range(n)]
    size = n - 1
    lap = [[0] * size for _ in range(size)]
    for u, w in zip(map(int, src), map(int, dst)):
        if u == w or u == root:
            continue
        i = index[u]
        lap[i][i] += 1
        if w != root:
            lap[i][index[w]] -= 1
    return lap


def arborescence_count(n: int, src: Sequence[int], dst: Sequence[int], root: int) -> int:
    return det_bareiss(reduced_laplacian(n, src, dst, root))


def multiplicity_stats(n: int, src: Sequence[int], dst: Sequence[int]) -> tuple[int, int]:
    loops = 0
    pairs = 0
    seen: dict[tuple[int, int], int] = {}
    for u, w in zip(map(int, src), map(int, dst)):
        if u == w:
            loops += 1
        else:
            c = seen.get((u, w), 0)
            pairs += c
            seen[(u, w)] = c + 1
    return loops, pairs


def cycle_counts(n: int, src: Sequence[int], dst: Sequence[int], max_len: int) -> list[int]:
    if max_len < 1:
        return []
    mult = [dict() for _ in range(n)]
    for u, w in zip(map(int, src), map(int, dst)):
        mult[u][w] = mult[u].get(w, 0) + 1
    counts = [0] * max_len
    counts[0] = sum(row.get(v, 0) for v, row in enumerate(mult))
    if max_len < 2:
        return counts
    seen = [False] * n

    def extend(start: int, u: int, depth: int, weight: int) -> None:
        if depth >= 2:
            back = mult[u].get(start, 0)
            if back:
                counts[depth - 1] += weight * back
        if depth == max_len:
            return
        for v, c in mult[u].items():
            if v > start and not seen[v]:
                seen[v] = True
                extend(start, v, depth + 1, weight * c)
                seen[v] = False

    for s in range(n):
        seen[s] = True
        extend(s, s, 1, 1)
        seen[s] = False
    return counts
