"""Brute-force reference implementations used only by the tests.

Each one is written independently of the package code it checks.
"""

import itertools

import numpy as np


def gh_by_enumeration(DX, DY):
    """Half the least distortion over every relation that covers both sides."""
    n, m = len(DX), len(DY)
    cells = list(itertools.product(range(n), range(m)))
    best = np.inf
    for mask in range(1, 1 << len(cells)):
        rel = [cells[k] for k in range(len(cells)) if mask >> k & 1]
        if {i for i, _ in rel} != set(range(n)) or {j for _, j in rel} != set(range(m)):
            continue
        worst = max(abs(DX[i][k] - DY[j][l]) for (i, j) in rel for (k, l) in rel)
        best = min(best, worst)
    return best / 2


def isometric(DX, DY):
    DX, DY = np.asarray(DX), np.asarray(DY)
    if DX.shape != DY.shape:
        return False
    n = len(DX)
    return any(np.array_equal(DX[np.ix_(p, p)], DY) for p in map(list, itertools.permutations(range(n))))


def minimax_paths(D):
    """Single-linkage ultrametric: least possible largest step over all chains."""
    U = np.array(D, dtype=float)
    n = len(U)
    for k in range(n):
        U = np.minimum(U, np.maximum(U[:, k : k + 1], U[k : k + 1, :]))
    return U


def max_clique_brute(adj):
    n = len(adj)
    for size in range(n, 0, -1):
        for combo in itertools.combinations(range(n), size):
            if all(adj[a][b] for a, b in itertools.combinations(combo, 2)):
                return size
    return 0


def max_cross_clique_brute(adj, left):
    """Largest clique using at least one vertex from ``left`` and one outside it."""
    n = len(adj)
    for size in range(n, 1, -1):
        for combo in itertools.combinations(range(n), size):
            s = set(combo)
            if not (s & left) or not (s - left):
                continue
            if all(adj[a][b] for a, b in itertools.combinations(combo, 2)):
                return size
    return 0


def lance_williams(D, method):
    """Textbook pairwise agglomeration; returns the cophenetic matrix.

    Assumes no ties among the linkages that are merged.
    """
    n = len(D)
    clusters = {i: [i] for i in range(n)}
    L = {(i, j): float(D[i][j]) for i in range(n) for j in range(i + 1, n)}
    coph = np.zeros((n, n))
    nxt = n
    while len(clusters) > 1:
        (a, b), h = min(L.items(), key=lambda kv: kv[1])
        for x in clusters[a]:
            for y in clusters[b]:
                coph[x, y] = coph[y, x] = h
        merged = clusters.pop(a) + clusters.pop(b)
        new = {}
        for c in clusters:
            if method == "cl":
                new[c] = max(L[tuple(sorted((a, c)))], L[tuple(sorted((b, c)))])
            else:
                vals = [D[x][y] for x in merged for y in clusters[c]]
                new[c] = sum(vals) / len(vals)
        L = {k: v for k, v in L.items() if a not in k and b not in k}
        for c, v in new.items():
            L[(c, nxt)] = v
        clusters[nxt] = merged
        nxt += 1
    return coph
