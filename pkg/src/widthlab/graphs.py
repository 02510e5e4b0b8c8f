"""Graph representation and exact invariants.

Vertices are the integers ``0..n-1``.  Adjacency is kept twice: as one
bitmask per vertex (``g.adj[v]``) for constant-time tests inside the solvers,
and as sorted neighbour tuples (``g.nbrs[v]``) for traversals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .config import DEFAULT, Budgets
from .errors import BadParams, ResourceCap

INF = math.inf


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Finite simple undirected graph on ``range(n)``."""

    __slots__ = ("n", "edges", "adj", "nbrs", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise BadParams("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise BadParams(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise BadParams(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            norm.add((u, v) if u < v else (v, u))
        adj = [0] * n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.edges = frozenset(norm)
        self.adj = tuple(adj)
        self.nbrs = tuple(tuple(bits(a)) for a in adj)
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj: Iterable[int]) -> "Graph":
        adj = list(adj)
        return cls(len(adj), ((u, v) for u, a in enumerate(adj) for v in bits(a) if u < v))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_list()})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.nbrs]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled densely; returns it with the old ids."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub = Graph(len(keep), ((index[u], index[v]) for u, v in self.edges if u in index and v in index))
        return sub, keep

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced(u for u in range(self.n) if u != v)[0]

    def delete_edge(self, u: int, v: int) -> "Graph":
        e = (u, v) if u < v else (v, u)
        return Graph(self.n, self.edges - {e})

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def disjoint_union(self, other: "Graph") -> "Graph":
        s = self.n
        return Graph(s + other.n, list(self.edges) + [(u + s, v + s) for u, v in other.edges])

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``within``, as bitmasks."""
        rest = self.full if within is None else within
        comps = []
        while rest:
            low = rest & -rest
            comp = frontier = low
            while frontier:
                reach = 0
                for v in bits(frontier):
                    reach |= self.adj[v]
                frontier = reach & rest & ~comp
                comp |= frontier
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_masks()) == 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.component_masks())

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.nbrs[v]) == 1]

    def bfs_distances(self, source: int) -> list[float]:
        dist = [INF] * self.n
        dist[source] = 0
        frontier = [source]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in self.nbrs[u]:
                    if dist[w] == INF:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        return dist


@dataclass(frozen=True)
class PrecoloredGraph:
    """A graph together with a partial 3-colouring (colours 0, 1, 2)."""

    graph: Graph
    colors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        cols = {int(v): int(c) for v, c in dict(self.colors).items()}
        for v, c in cols.items():
            if not 0 <= v < self.graph.n:
                raise BadParams(f"coloured vertex {v} outside the graph")
            if c not in (0, 1, 2):
                raise BadParams(f"colour {c} of vertex {v} not in {{0, 1, 2}}")
        object.__setattr__(self, "colors", dict(sorted(cols.items())))

    def __hash__(self):
        return hash((self.graph, tuple(self.colors.items())))

    @property
    def n(self) -> int:
        return self.graph.n

    def color_vector(self) -> list[int]:
        vec = [-1] * self.graph.n
        for v, c in self.colors.items():
            vec[v] = c
        return vec

    def is_proper(self) -> bool:
        cols = self.colors
        return not any(u in cols and v in cols and cols[u] == cols[v] for u, v in self.graph.edges)

    def uncolor(self, v: int) -> "PrecoloredGraph":
        return PrecoloredGraph(self.graph, {u: c for u, c in self.colors.items() if u != v})

    def delete_vertex(self, v: int) -> "PrecoloredGraph":
        cols = {(u if u < v else u - 1): c for u, c in self.colors.items() if u != v}
        return PrecoloredGraph(self.graph.delete_vertex(v), cols)

    def delete_edge(self, u: int, v: int) -> "PrecoloredGraph":
        return PrecoloredGraph(self.graph.delete_edge(u, v), self.colors)

    def permute_colors(self, perm) -> "PrecoloredGraph":
        return PrecoloredGraph(self.graph, {v: perm[c] for v, c in self.colors.items()})

    def relabel(self, perm: list[int]) -> "PrecoloredGraph":
        return PrecoloredGraph(self.graph.relabel(perm), {perm[v]: c for v, c in self.colors.items()})


def as_precolored(x) -> PrecoloredGraph:
    return x if isinstance(x, PrecoloredGraph) else PrecoloredGraph(x)


# ---------------------------------------------------------------- invariants

def girth(g: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    best = INF
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = [root]
        for u in queue:
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.nbrs[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def diameter(g: Graph) -> float:
    """Maximum distance between two vertices; ``math.inf`` if disconnected."""
    if g.n == 0:
        return 0
    return max(max(g.bfs_distances(v)) for v in range(g.n))


def independence_number(g: Graph, budgets: Budgets = DEFAULT) -> int:
    """Exact maximum independent set size by branch and bound."""
    adj = g.adj
    best = 0
    nodes = 0

    def grow(cand: int, size: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > budgets.search_nodes:
            raise ResourceCap("independence_number exceeded the search-node budget")
        # vertices of degree <= 1 inside cand can always be taken
        while cand:
            pick = -1
            for v in bits(cand):
                if (adj[v] & cand).bit_count() <= 1:
                    pick = v
                    break
            if pick < 0:
                break
            size += 1
            cand &= ~(adj[pick] | 1 << pick)
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        if size + _greedy_cover_bound(adj, cand) <= best:
            return
        v = max(bits(cand), key=lambda u: (adj[u] & cand).bit_count())
        grow(cand & ~(adj[v] | 1 << v), size + 1)
        grow(cand & ~(1 << v), size)

    grow(g.full, 0)
    return best


def _greedy_cover_bound(adj, cand: int) -> int:
    """Upper bound on alpha(G[cand]): number of cliques in a greedy clique cover."""
    count = 0
    rest = cand
    while rest:
        low = rest & -rest
        clique = low
        common = adj[low.bit_length() - 1] & rest
        while common:
            w = common & -common
            clique |= w
            common &= adj[w.bit_length() - 1]
        rest &= ~clique
        count += 1
    return count


def homomorphism_search(g: Graph, target_adj: list[int], domains: list[int] | None = None,
                        count: bool = False, budgets: Budgets = DEFAULT):
    """Backtracking with forward checking for edge-preserving maps ``g -> target``.

    ``target_adj[h]`` is the neighbour bitmask of target vertex ``h``; ``domains``
    optionally restricts each source vertex.  Returns the first map found (a
    list) or ``None``; with ``count=True`` returns the number of maps instead.
    """
    t = len(target_adj)
    if domains is None:
        domains = [(1 << t) - 1] * g.n
    domains = list(domains)
    nbrs = g.nbrs
    nodes = 0
    assign = [-1] * g.n
    # isolated source vertices multiply the count and never constrain anything
    isolated = [v for v in range(g.n) if not nbrs[v]]
    free_factor = 1
    for v in isolated:
        free_factor *= domains[v].bit_count()
        if domains[v]:
            assign[v] = (domains[v] & -domains[v]).bit_length() - 1
    if free_factor == 0:
        return 0 if count else None
    todo = [v for v in range(g.n) if nbrs[v]]

    def rec(doms, left):
        nonlocal nodes
        nodes += 1
        if nodes > budgets.search_nodes:
            raise ResourceCap("homomorphism search exceeded the search-node budget")
        if not left:
            return 1
        v = min(left, key=lambda u: (doms[u].bit_count(), -len(nbrs[u])))
        rest = [u for u in left if u != v]
        total = 0
        for h in bits(doms[v]):
            new = doms[:]
            new[v] = 1 << h
            ok = True
            for w in nbrs[v]:
                if assign[w] < 0:
                    nd = new[w] & target_adj[h]
                    if not nd:
                        ok = False
                        break
                    new[w] = nd
            if not ok:
                continue
            assign[v] = h
            sub = rec(new, rest)
            if sub:
                if not count:
                    return sub
                total += sub
            assign[v] = -1
        return total

    found = rec(domains, todo)
    if count:
        return found * free_factor
    if not found:
        return None
    return list(assign)


def complete_adj(s: int) -> list[int]:
    full = (1 << s) - 1
    return [full & ~(1 << i) for i in range(s)]


def find_coloring(g: Graph, s: int, precolor: Mapping[int, int] | None = None,
                  budgets: Budgets = DEFAULT):
    """A proper ``s``-colouring extending ``precolor``, or ``None``."""
    domains = [(1 << s) - 1] * g.n
    for v, c in (precolor or {}).items():
        domains[v] = 1 << c
    if precolor:
        for u, v in g.edges:
            if u in precolor and v in precolor and precolor[u] == precolor[v]:
                return None
    return homomorphism_search(g, complete_adj(s), domains, budgets=budgets)


def is_colorable(g: Graph, s: int, budgets: Budgets = DEFAULT) -> bool:
    if s <= 0:
        return g.n == 0
    # colours are interchangeable: pin a hub and one neighbour in each component
    domains = [(1 << s) - 1] * g.n
    for comp in g.component_masks():
        hub = max(bits(comp), key=lambda v: (g.degree(v), -v))
        domains[hub] = 1
        if s >= 2 and g.nbrs[hub]:
            domains[min(g.nbrs[hub])] = 2
    return homomorphism_search(g, complete_adj(s), domains, budgets=budgets) is not None


def is_3_colorable(g: Graph, budgets: Budgets = DEFAULT) -> bool:
    return is_colorable(g, 3, budgets)


def chromatic_number(g: Graph, budgets: Budgets = DEFAULT) -> int:
    if g.n == 0:
        return 0
    s = 1 if not g.edges else 2
    while not is_colorable(g, s, budgets):
        s += 1
    return s


def iter_colorings(g: Graph, s: int, precolor: Mapping[int, int] | None = None):
    """Every proper ``s``-colouring extending ``precolor``, as lists, in lexicographic order."""
    col = [-1] * g.n
    for v, c in (precolor or {}).items():
        col[v] = c
    fixed = [v for v in range(g.n) if col[v] >= 0]
    if any(col[u] == col[v] for u, v in g.edges if u in fixed and v in fixed):
        return
    free = [v for v in range(g.n) if col[v] < 0]

    def rec(i):
        if i == len(free):
            yield list(col)
            return
        v = free[i]
        for c in range(s):
            if all(col[w] != c for w in g.nbrs[v]):
                col[v] = c
                yield from rec(i + 1)
        col[v] = -1

    yield from rec(0)


def count_proper_colorings(g: Graph, s: int, budgets: Budgets = DEFAULT) -> int:
    """Exact number of proper ``s``-colourings (vertices labelled, colours labelled)."""
    if s < 1:
        raise BadParams("colour count must be at least 1")
    total = 1
    for comp in g.component_masks():
        sub, _ = g.induced(bits(comp))
        total *= homomorphism_search(sub, complete_adj(s), count=True, budgets=budgets)
        if total == 0:
            break
    return total


def treewidth_exact(g: Graph, budgets: Budgets = DEFAULT) -> int:
    """Exact treewidth by the dynamic program over vertex subsets.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v) is
    the set of vertices outside S + v reachable from v through S.
    """
    n = g.n
    if n > budgets.treewidth_max_n:
        raise ResourceCap(f"treewidth_exact supports n <= {budgets.treewidth_max_n}")
    if n == 0:
        return -1
    adj = g.adj
    full = g.full
    upper = _min_degree_width(g)

    def q_size(s: int, v: int) -> int:
        inside = s | 1 << v
        comp = frontier = 1 << v
        while frontier:
            reach = 0
            for x in bits(frontier):
                reach |= adj[x]
            frontier = reach & s & ~comp
            comp |= frontier
        reach = 0
        for x in bits(comp):
            reach |= adj[x]
        return (reach & ~inside).bit_count()

    layer = {0: -1}
    for _ in range(n):
        nxt = {}
        for s, tw in layer.items():
            for v in bits(full & ~s):
                val = max(tw, q_size(s, v))
                if val >= upper:
                    continue
                t = s | 1 << v
                if val < nxt.get(t, upper):
                    nxt[t] = val
        layer = nxt
        if not layer:
            return upper
    return min(layer.get(full, upper), upper)


def _min_degree_width(g: Graph) -> int:
    """Width of the min-degree elimination ordering (an upper bound on treewidth)."""
    adj = list(g.adj)
    alive = g.full
    width = 0
    for _ in range(g.n):
        v = min(bits(alive), key=lambda u: (adj[u] & alive).bit_count())
        nb = adj[v] & alive
        width = max(width, nb.bit_count())
        for x in bits(nb):
            adj[x] |= nb & ~(1 << x)
        alive &= ~(1 << v)
    return width


def categorical_product(g: Graph, h: Graph) -> Graph:
    """Vertices (u, i) -> u * |h| + i; adjacent iff adjacent in both factors."""
    t = h.n
    edges = []
    for u, v in g.edges:
        for i, j in h.edges:
            edges.append((u * t + i, v * t + j))
            edges.append((u * t + j, v * t + i))
    return Graph(g.n * t, edges)


def balanced_separator_number(g: Graph, budgets: Budgets = DEFAULT) -> int:
    """Least |X| such that every component of g - X has at most n/2 vertices."""
    n = g.n
    if n > budgets.separator_max_n:
        raise ResourceCap(f"balanced_separator_number supports n <= {budgets.separator_max_n}")
    full = g.full
    for size in range(n + 1):
        for xs in itertools.combinations(range(n), size):
            rest = full
            for x in xs:
                rest &= ~(1 << x)
            if all(2 * c.bit_count() <= n for c in g.component_masks(rest)):
                return size
    return n
