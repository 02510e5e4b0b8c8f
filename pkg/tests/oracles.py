"""Deliberately naive reference implementations used as test oracles."""

from __future__ import annotations

import itertools
import math
from collections import deque

from widthlab.graphs import Graph


def bfs_dist(g: Graph, s: int, skip_edge=None) -> list[float]:
    dist = [math.inf] * g.n
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in g.nbrs[u]:
            if skip_edge and {u, w} == set(skip_edge):
                continue
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def girth(g: Graph) -> float:
    best = math.inf
    for u, v in g.edges:
        d = bfs_dist(g, u, skip_edge=(u, v))[v]
        best = min(best, d + 1)
    return best


def alpha(g: Graph) -> int:
    for size in range(g.n, -1, -1):
        for s in itertools.combinations(range(g.n), size):
            if not any(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)):
                return size
    return 0


def count_colorings(g: Graph, s: int, precolor=None) -> int:
    precolor = precolor or {}
    total = 0
    for col in itertools.product(range(s), repeat=g.n):
        if any(col[v] != c for v, c in precolor.items()):
            continue
        if all(col[u] != col[v] for u, v in g.edges):
            total += 1
    return total


def chromatic(g: Graph) -> int:
    s = 0
    while count_colorings(g, s) == 0:
        s += 1
    return s


def treewidth(g: Graph) -> int:
    if g.n == 0:
        return -1
    best = g.n - 1
    for order in itertools.permutations(range(g.n)):
        adj = [set(g.nbrs[v]) for v in range(g.n)]
        width = 0
        alive = set(range(g.n))
        for v in order:
            nb = adj[v] & alive
            width = max(width, len(nb))
            for a, b in itertools.combinations(nb, 2):
                adj[a].add(b)
                adj[b].add(a)
            alive.discard(v)
            if width >= best:
                break
        best = min(best, width)
    return best


def components(g: Graph, keep: set[int]) -> list[set[int]]:
    seen = set()
    out = []
    for s in keep:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.nbrs[u]:
                if w in keep and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(comp)
    return out


def separator(g: Graph) -> int:
    for size in range(g.n + 1):
        for x in itertools.combinations(range(g.n), size):
            rest = set(range(g.n)) - set(x)
            if all(2 * len(c) <= g.n for c in components(g, rest)):
                return size
    return g.n


def hom_exists(g: Graph, h: Graph) -> bool:
    for f in itertools.product(range(h.n), repeat=g.n):
        if all(h.has_edge(f[u], f[v]) for u, v in g.edges):
            return True
    return False


def pebble_duplicator_wins(g: Graph, h: Graph, k: int) -> bool:
    """Greatest fixpoint over partial maps stored as frozensets of (vertex, image)."""
    def ok(m):
        d = dict(m)
        return all(h.has_edge(d[u], d[v]) for u, v in g.edges if u in d and v in d)

    fam = set()
    for size in range(k + 1):
        for dom in itertools.combinations(range(g.n), size):
            for img in itertools.product(range(h.n), repeat=size):
                m = frozenset(zip(dom, img))
                if ok(m):
                    fam.add(m)
    changed = True
    while changed:
        changed = False
        for m in list(fam):
            if m not in fam:
                continue
            dom = {v for v, _ in m}
            bad = any(m - {pair} not in fam for pair in m)
            if not bad and len(m) < k:
                bad = any(all(m | {(v, c)} not in fam for c in range(h.n))
                          for v in range(g.n) if v not in dom)
            if bad:
                fam.discard(m)
                changed = True
    return frozenset() in fam


def coloring_game_spoiler_wins(g: Graph, colors: dict, k: int, r: int) -> bool:
    """Plain recursion over positions with arbitrary erasures (no memo, tiny inputs only)."""
    def violated(pos):
        return any(u in pos and v in pos and pos[u] == pos[v] for u, v in g.edges)

    def wins(pos, rounds):
        if violated(pos):
            return True
        if rounds == 0:
            return False
        keys = sorted(pos)
        for keep_n in range(min(len(keys), k - 1) + 1):
            for keep in itertools.combinations(keys, keep_n):
                base = {u: pos[u] for u in keep}
                for v in range(g.n):
                    if v in base:
                        continue
                    if all(wins({**base, v: c}, rounds - 1) for c in range(3)):
                        return True
        return False

    return wins(dict(colors), r)
