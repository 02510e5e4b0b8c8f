"""Canonical forms of (pre)coloured graphs and isomorphism-class catalogues.

The canonical labelling is found by individualisation-refinement: colour
refinement seeded with (precolour, degree), then a depth-first search over
the cells of the refined partition, keeping the leaf with the smallest
encoding.  Automorphisms discovered along the way prune sibling branches.
Precolours are fixed labels; the S3 action on colours is handled separately
by :func:`color_orbit`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import DEFAULT, Budgets
from .errors import ResourceCap
from .graphs import Graph, PrecoloredGraph, as_precolored, bits

COLOR_PERMUTATIONS = tuple(itertools.permutations(range(3)))


@dataclass(frozen=True, order=True)
class CanonicalForm:
    encoding: bytes

    def hex(self) -> str:
        return self.encoding.hex()

    def __repr__(self):
        return f"CanonicalForm({self.encoding.hex()})"


def _refine(adj, cells):
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups = {}
            for v in c:
                sig = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
                out.extend(groups[s] for s in sorted(groups))
            else:
                out.append(c)
        cells = out
        if not changed:
            return cells


def _encode(n, adj, labels, order):
    head = bytes([n]) + bytes(labels[v] + 1 for v in order)
    acc = 0
    nbits = 0
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            acc = (acc << 1) | (row >> order[j] & 1)
            nbits += 1
    return head + acc.to_bytes((nbits + 7) // 8, "big")


def _orbits(elements, gens):
    parent = {x: x for x in elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in elements:
            y = g[x]
            if y in parent:
                a, b = find(x), find(y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return find


def canonical_labeling(p, budgets: Budgets = DEFAULT) -> tuple[bytes, list[int]]:
    """Return ``(encoding, order)``: ``order[i]`` is the vertex placed at position i."""
    p = as_precolored(p)
    g = p.graph
    n = g.n
    if n > budgets.canonical_max_n:
        raise ResourceCap(f"canonical_form supports n <= {budgets.canonical_max_n}")
    if n == 0:
        return bytes([0]), []
    adj = g.adj
    labels = p.color_vector()
    seed = {}
    for v in range(n):
        seed.setdefault((labels[v], len(g.nbrs[v])), []).append(v)
    cells = [seed[key] for key in sorted(seed)]

    best = {"code": None, "order": None, "path": None}
    gens: list[list[int]] = []

    def leaf(order, path):
        code = _encode(n, adj, labels, order)
        if best["code"] is None or code < best["code"]:
            best.update(code=code, order=order, path=path)
            return None
        if code != best["code"]:
            return None
        gamma = [0] * n
        for a, b in zip(best["order"], order):
            gamma[a] = b
        gens.append(gamma)
        bp = best["path"]
        common = 0
        while common < min(len(bp), len(path)) and bp[common] == path[common]:
            common += 1
        mapped = 0
        while mapped < min(len(bp), len(path)) and gamma[bp[mapped]] == path[mapped]:
            mapped += 1
        # the subtree below path[:common+1] is the image of an explored one
        return common if mapped > common else None

    def search(cells, path):
        cells = _refine(adj, cells)
        if len(cells) == n:
            return leaf([c[0] for c in cells], path)
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[idx]
        tried = []
        depth = len(path)
        for v in sorted(target):
            if tried:
                fixing = [gm for gm in gens if all(gm[x] == x for x in path)]
                if fixing:
                    find = _orbits(target, fixing)
                    if any(find(v) == find(t) for t in tried):
                        continue
            tried.append(v)
            rest = [u for u in target if u != v]
            jump = search(cells[:idx] + [[v], rest] + cells[idx + 1:], path + [v])
            if jump is not None and jump < depth:
                return jump
        return None

    search(cells, [])
    return best["code"], best["order"]


def canonical_form(p, budgets: Budgets = DEFAULT) -> CanonicalForm:
    """Isomorphism-invariant encoding; colour-preserving for precoloured graphs."""
    return CanonicalForm(canonical_labeling(p, budgets)[0])


def canonical_relabel(p, budgets: Budgets = DEFAULT) -> PrecoloredGraph:
    """The canonical representative itself (vertices renumbered by position)."""
    p = as_precolored(p)
    _, order = canonical_labeling(p, budgets)
    perm = [0] * p.n
    for i, v in enumerate(order):
        perm[v] = i
    return p.relabel(perm)


def decode(form: CanonicalForm | bytes) -> PrecoloredGraph:
    """Rebuild the canonical representative from its encoding."""
    data = form.encoding if isinstance(form, CanonicalForm) else form
    n = data[0]
    labels = [b - 1 for b in data[1:1 + n]]
    nbits = n * (n - 1) // 2
    acc = int.from_bytes(data[1 + n:], "big")
    edges = []
    pos = nbits - 1
    for i in range(n):
        for j in range(i + 1, n):
            if acc >> pos & 1:
                edges.append((i, j))
            pos -= 1
    return PrecoloredGraph(Graph(n, edges), {v: c for v, c in enumerate(labels) if c >= 0})


def color_orbit(p: PrecoloredGraph) -> list[PrecoloredGraph]:
    """The (up to six) images of ``p`` under permutations of the three colours."""
    seen = {}
    for perm in COLOR_PERMUTATIONS:
        q = p.permute_colors(perm)
        seen.setdefault(canonical_form(q), q)
    return [seen[k] for k in sorted(seen)]


def color_orbit_key(p: PrecoloredGraph) -> CanonicalForm:
    """Smallest canonical form over the S3 orbit: one key per colour-permutation class."""
    return min(canonical_form(p.permute_colors(perm)) for perm in COLOR_PERMUTATIONS)


# ------------------------------------------------------------ catalogues

def graphs_up_to_iso(n: int, connected: bool = False, budgets: Budgets = DEFAULT) -> list[Graph]:
    """One canonical representative per isomorphism class of n-vertex graphs.

    Classes on n vertices are obtained from classes on n - 1 vertices by adding
    a vertex with every possible neighbourhood, deduplicated by canonical form.
    Results are ordered by canonical encoding.
    """
    if n > budgets.canonical_max_n:
        raise ResourceCap(f"graph catalogue limited to n <= {budgets.canonical_max_n}")
    level = {canonical_form(Graph(0)): Graph(0)}
    for size in range(1, n + 1):
        nxt = {}
        for base in level.values():
            for nb in range(1 << (size - 1)):
                g = Graph(size, list(base.edges) + [(v, size - 1) for v in bits(nb)])
                key = canonical_form(g)
                if key not in nxt:
                    nxt[key] = canonical_relabel(g).graph
        level = nxt
    out = [level[k] for k in sorted(level)]
    if connected:
        out = [g for g in out if g.is_connected()]
    return out


def trees_up_to_iso(n: int) -> list[Graph]:
    """Unlabelled trees on n vertices (grown leaf by leaf), ordered by encoding."""
    if n <= 0:
        return []
    level = {canonical_form(Graph(1)): Graph(1)}
    for size in range(2, n + 1):
        nxt = {}
        for t in level.values():
            for v in range(size - 1):
                g = Graph(size, list(t.edges) + [(v, size - 1)])
                key = canonical_form(g)
                if key not in nxt:
                    nxt[key] = canonical_relabel(g).graph
        level = nxt
    return [level[k] for k in sorted(level)]
