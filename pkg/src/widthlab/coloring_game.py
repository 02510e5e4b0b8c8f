"""The r-round k-width 3-colouring game and the minimal obstruction families.

Positions are partial 3-colourings packed into one int: bit ``v + c*n`` is set
when vertex ``v`` carries colour ``c``.  A round is one colouring request:
Spoiler may erase colours, then names an uncoloured vertex, Duplicator
colours it, and at most ``k`` vertices may be coloured afterwards.  Spoiler
wins as soon as an edge is monochromatic.

Two solvers are provided and cross-checked in the tests.  ``game_value``
searches top-down from the given position; ``min_rounds`` grows Spoiler's
winning region bottom-up one round at a time until the start position is
won or the region stops growing.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .canonical import CanonicalForm, canonical_form, color_orbit, color_orbit_key, graphs_up_to_iso, trees_up_to_iso
from .config import DEFAULT, Budgets
from .errors import NotATree, PrecolorOverCapacity, PreconditionViolated, ResourceCap
from .graphs import Graph, PrecoloredGraph, as_precolored, bits, diameter, find_coloring

ERASURE_MODES = ("single", "any")


class Winner(enum.Enum):
    SPOILER = "SpoilerWins"
    DUPLICATOR = "DuplicatorWins"

    def __str__(self):
        return self.value


class _NoWin:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NoWin"

    __str__ = __repr__


NoWin = _NoWin()


class _Board:
    def __init__(self, g: Graph):
        self.g = g
        self.n = n = g.n
        self.adj = g.adj
        self.full = (1 << n) - 1
        self.vertex_mask = [(1 | 1 << n | 1 << 2 * n) << v for v in range(n)]

    def key(self, colors) -> int:
        key = 0
        for v, c in colors.items():
            key |= 1 << (v + c * self.n)
        return key

    def dom(self, key: int) -> int:
        n, f = self.n, self.full
        return (key | key >> n | key >> 2 * n) & f

    def cls(self, key: int, c: int) -> int:
        return key >> (c * self.n) & self.full

    def clashes(self, key: int, v: int, c: int) -> bool:
        return bool(self.adj[v] & self.cls(key, c))

    def violated(self, key: int) -> bool:
        for c in range(3):
            m = self.cls(key, c)
            for v in bits(m):
                if self.adj[v] & m:
                    return True
        return False

    def restrict(self, key: int, u: int) -> int:
        return key & ~self.vertex_mask[u]

    def proper_colorings(self, max_size: int):
        """All proper partial colourings with at most ``max_size`` coloured vertices."""
        out = [0]
        layer = [(0, -1)]
        n = self.n
        for _ in range(max_size):
            nxt = []
            for key, top in layer:
                for v in range(top + 1, n):
                    for c in range(3):
                        if not self.clashes(key, v, c):
                            e = key | 1 << (v + c * n)
                            nxt.append((e, v))
            out.extend(e for e, _ in nxt)
            layer = nxt
        return out


def _check_entry(p: PrecoloredGraph, k: int):
    if k < 1:
        raise PreconditionViolated("capacity k must be at least 1")
    if len(p.colors) > k:
        raise PrecolorOverCapacity(f"{len(p.colors)} precoloured vertices exceed capacity {k}")


def _extendable(p: PrecoloredGraph, budgets: Budgets) -> bool:
    return p.is_proper() and find_coloring(p.graph, 3, p.colors, budgets=budgets) is not None


def game_value(p, k: int, r: int, erasure: str = "single", budgets: Budgets = DEFAULT) -> Winner:
    """Exact value of Game(k, r) on the precoloured graph ``p`` by top-down search.

    ``erasure="single"`` lets Spoiler erase exactly one colour, and only when
    all ``k`` slots are in use; ``"any"`` lets him erase any subset before each
    request.  The two agree (erasing only discards constraints), which the
    tests confirm on small instances.
    """
    p = as_precolored(p)
    _check_entry(p, k)
    if erasure not in ERASURE_MODES:
        raise ValueError(f"erasure must be one of {ERASURE_MODES}")
    board = _Board(p.graph)
    start = board.key(p.colors)
    if board.violated(start):
        return Winner.SPOILER
    if r <= 0 or _extendable(p, budgets):
        return Winner.DUPLICATOR
    n = board.n
    memo: dict = {}
    nodes = [0]

    def bases(key):
        dom = board.dom(key)
        size = dom.bit_count()
        if erasure == "single":
            if size < k:
                return [key]
            return [board.restrict(key, u) for u in bits(dom)]
        out = []
        colored = list(bits(dom))
        for keep in range(len(colored) + 1):
            if keep > k - 1:
                break
            for sub in itertools.combinations(colored, keep):
                b = key
                for u in colored:
                    if u not in sub:
                        b = board.restrict(b, u)
                out.append(b)
        return out

    def wins(key, rounds):
        if rounds == 0:
            return False
        hit = memo.get((key, rounds))
        if hit is not None:
            return hit
        nodes[0] += 1
        if nodes[0] > budgets.game_positions:
            raise ResourceCap(f"game search exceeds {budgets.game_positions} positions")
        result = False
        for base in bases(key):
            free = board.full & ~board.dom(base)
            for v in bits(free):
                if all(board.clashes(base, v, c) or wins(base | 1 << (v + c * n), rounds - 1)
                       for c in range(3)):
                    result = True
                    break
            if result:
                break
        memo[(key, rounds)] = result
        return result

    return Winner.SPOILER if wins(start, r) else Winner.DUPLICATOR


def _win_ranks(board: _Board, k: int, target, max_rounds, budgets: Budgets):
    """Rounds-to-win for positions with at most ``k - 1`` coloured vertices.

    Grows the winning region round by round (each sweep reads only the
    previous region).  Stops once ``target(rank)`` is decided or the region
    stabilises.  Returns ``(rank, stabilised)``.
    """
    universe = board.proper_colorings(k - 1)
    if len(universe) > budgets.game_positions:
        raise ResourceCap(f"game state space exceeds {budgets.game_positions} positions")
    n = board.n
    rank: dict[int, int] = {}
    pending = universe
    r = 0
    while max_rounds is None or r < max_rounds:
        r += 1
        new = []
        for key in pending:
            dom = board.dom(key)
            full_after = dom.bit_count() + 1 == k
            for v in bits(board.full & ~dom):
                ok = True
                for c in range(3):
                    if board.clashes(key, v, c):
                        continue
                    child = key | 1 << (v + c * n)
                    if full_after:
                        if not any(board.restrict(child, u) in rank for u in bits(dom)):
                            ok = False
                            break
                    elif child not in rank:
                        ok = False
                        break
                if ok:
                    new.append(key)
                    break
        if not new:
            return rank, True
        for key in new:
            rank[key] = r
        if target(rank):
            return rank, False
        pending = [key for key in pending if key not in rank]
    return rank, False


def _rank_of(board: _Board, rank: dict, key: int, k: int):
    dom = board.dom(key)
    if dom.bit_count() < k:
        return rank.get(key)
    got = [rank[b] for b in (board.restrict(key, u) for u in bits(dom)) if b in rank]
    return min(got) if got else None


def min_rounds(p, k: int, max_rounds: int | None = None, budgets: Budgets = DEFAULT):
    """Least r with Spoiler winning Game(k, r) on ``p``; ``NoWin`` if none exists.

    With ``max_rounds`` set, returns ``NoWin`` when no win within that many
    rounds is found (the answer is then only a lower bound).
    """
    p = as_precolored(p)
    _check_entry(p, k)
    board = _Board(p.graph)
    start = board.key(p.colors)
    if board.violated(start):
        return 0
    if _extendable(p, budgets):
        return NoWin
    rank, _ = _win_ranks(board, k, lambda rk: _rank_of(board, rk, start, k) is not None,
                         max_rounds, budgets)
    got = _rank_of(board, rank, start, k)
    return NoWin if got is None else got


def min_capacity(p, budgets: Budgets = DEFAULT) -> int | None:
    """Least k at which Spoiler wins the k-width game on ``p`` for some r (None if never)."""
    p = as_precolored(p)
    if _extendable(p, budgets):
        return None
    for k in range(max(1, len(p.colors)), max(p.n, 1) + 1):
        if min_rounds(p, k, budgets=budgets) is not NoWin:
            return k
    return None


# ------------------------------------------------------------ minimal members

def weakenings(p: PrecoloredGraph):
    """One-step proper subgraphs: delete a vertex, delete an edge, or uncolour a vertex."""
    for v in range(p.n):
        yield p.delete_vertex(v)
    for u, v in sorted(p.graph.edges):
        yield p.delete_edge(u, v)
    for v in sorted(p.colors):
        yield p.uncolor(v)


def is_minimal_member(p, k: int, r: int, budgets: Budgets = DEFAULT) -> bool:
    """Spoiler wins Game(k, r) on ``p`` and loses it on every one-step weakening."""
    p = as_precolored(p)
    _check_entry(p, k)
    if game_value(p, k, r, budgets=budgets) is not Winner.SPOILER:
        return False
    return all(game_value(q, k, r, budgets=budgets) is Winner.DUPLICATOR for q in weakenings(p))


@dataclass(frozen=True)
class MkrMember:
    precolored: PrecoloredGraph
    k: int
    r: int
    canonical: CanonicalForm

    def to_json(self) -> dict:
        p = self.precolored
        return {
            "n": p.n,
            "edges": [list(e) for e in p.graph.edge_list()],
            "colors": {str(v): c for v, c in p.colors.items()},
            "canonical": self.canonical.hex(),
        }


def _normalised_colorings(size: int):
    """Colour vectors of length ``size`` in which colours first appear in order 0, 1, 2."""
    def rec(prefix, used):
        if len(prefix) == size:
            yield tuple(prefix)
            return
        for c in range(min(used + 1, 3)):
            yield from rec(prefix + [c], max(used, c + 1))
    yield from rec([], 0)


def _foldable(g: Graph, colored: int) -> bool:
    """Some uncoloured vertex has its neighbourhood inside another vertex's."""
    for v in range(g.n):
        if colored >> v & 1:
            continue
        nv = g.adj[v]
        for w in range(g.n):
            if w != v and nv & ~g.adj[w] == 0:
                return True
    return False


def _candidates(g: Graph, k: int, prune: bool, budgets: Budgets):
    n = g.n
    for size in range(0, min(k, n) + 1):
        for subset in itertools.combinations(range(n), size):
            mask = sum(1 << v for v in subset)
            if prune and n > 2 and _foldable(g, mask):
                continue
            for vec in _normalised_colorings(size):
                p = PrecoloredGraph(g, dict(zip(subset, vec)))
                if prune:
                    proper = p.is_proper()
                    if not proper and n > 2:
                        continue
                    if proper and _extendable(p, budgets):
                        continue
                yield p


def enumerate_Mkr(k: int, r: int, n_max: int, trees_only: bool = False, prune: bool = True,
                  budgets: Budgets = DEFAULT) -> list[MkrMember]:
    """All members of M^k_r with at most ``n_max`` vertices.

    One representative per colour-preserving isomorphism class, ordered by
    canonical encoding.  With ``prune`` the search skips candidates that
    provably cannot be minimal: disconnected graphs, improper precolourings
    other than a single edge, precolourings that extend to the whole graph,
    and graphs with an uncoloured vertex whose neighbourhood lies inside
    another vertex's (folding it away is a homomorphism onto a proper
    subgraph).
    """
    cap = budgets.enumerate_max_n if trees_only else budgets.survey_max_n
    if n_max > cap:
        raise ResourceCap(f"enumeration limited to n_max <= {cap}"
                          + (" for trees" if trees_only else " for general graphs"))
    found: dict[CanonicalForm, PrecoloredGraph] = {}
    seen_keys = set()
    for n in range(1, n_max + 1):
        if trees_only:
            graphs = trees_up_to_iso(n)
        else:
            graphs = graphs_up_to_iso(n, connected=prune)
        for g in graphs:
            for p in _candidates(g, k, prune, budgets):
                key = color_orbit_key(p)
                if key in seen_keys:
                    continue
                seen_keys.add(key)
                if is_minimal_member(p, k, r, budgets):
                    for q in color_orbit(p):
                        found.setdefault(canonical_form(q), q)
    return [MkrMember(found[c], k, r, c) for c in sorted(found)]


def group_by_color_orbit(members: list[MkrMember]) -> list[list[MkrMember]]:
    """Members grouped by orbit under permutations of the three colours."""
    groups: dict[CanonicalForm, list[MkrMember]] = {}
    for m in members:
        groups.setdefault(color_orbit_key(m.precolored), []).append(m)
    return [groups[key] for key in sorted(groups)]


# ------------------------------------------------------------ tree lemmas

@dataclass
class TreeLemmaReport:
    leaves_only_colored: bool
    internal_degree_three: bool
    fewer_than_k_leaves: bool
    fewer_than_k_leaves_applies: bool
    diameter_ok: bool
    leaves: int
    diameter: int

    @property
    def ok(self) -> bool:
        leaves = self.fewer_than_k_leaves or not self.fewer_than_k_leaves_applies
        return self.leaves_only_colored and self.internal_degree_three and leaves and self.diameter_ok

    @property
    def failures(self) -> list[str]:
        out = [name for name in ("leaves_only_colored", "internal_degree_three", "diameter_ok")
               if not getattr(self, name)]
        if self.fewer_than_k_leaves_applies and not self.fewer_than_k_leaves:
            out.append("fewer_than_k_leaves")
        return out

    @property
    def flags(self) -> list[str]:
        out = []
        if not self.fewer_than_k_leaves and not self.fewer_than_k_leaves_applies:
            out.append(f"{self.leaves} leaves with r = 0: leaf bound not asserted")
        return out


def check_tree_lemmas(t: MkrMember) -> TreeLemmaReport:
    """Check the structural lemmas for a tree member of M^k_r.

    The leaf-count bound is only asserted for ``r >= 1``; at ``r = 0`` a
    violated edge has exactly ``k = 2`` leaves and is reported as a flag.
    """
    p = t.precolored
    g = p.graph
    if not g.is_tree():
        raise NotATree("check_tree_lemmas needs a tree")
    leaves = set(g.leaves())
    internal = [v for v in range(g.n) if v not in leaves]
    diam = diameter(g)
    return TreeLemmaReport(
        leaves_only_colored=set(p.colors) == leaves,
        internal_degree_three=all(g.degree(v) == 3 for v in internal),
        fewer_than_k_leaves=len(leaves) < t.k,
        fewer_than_k_leaves_applies=t.r >= 1,
        diameter_ok=diam <= 2 ** t.r,
        leaves=len(leaves),
        diameter=diam,
    )


@dataclass
class SeparatorCheck:
    holds: bool
    extendable: bool

    def __bool__(self):
        return self.holds


def separator_strategy_check(t, k: int, r: int, budgets: Budgets = DEFAULT) -> SeparatorCheck:
    """Spoiler wins Game(k, r) on a small tree whose leaf colouring does not extend.

    Preconditions: ``t`` is a tree with at most ``2**r + 2`` vertices, exactly
    its leaves are coloured, and fewer than ``k`` of them.  An extendable leaf
    colouring makes the check vacuous.
    """
    t = as_precolored(t)
    g = t.graph
    if not g.is_tree():
        raise PreconditionViolated("separator check needs a tree")
    if g.n > 2 ** r + 2:
        raise PreconditionViolated(f"tree has {g.n} > 2^r + 2 vertices")
    if set(t.colors) != set(g.leaves()):
        raise PreconditionViolated("exactly the leaves must be coloured")
    if len(t.colors) >= k:
        raise PreconditionViolated("needs fewer than k coloured leaves")
    extendable = _brute_force_extends(t)
    if extendable:
        return SeparatorCheck(True, True)
    return SeparatorCheck(game_value(t, k, r, budgets=budgets) is Winner.SPOILER, False)


def _brute_force_extends(p: PrecoloredGraph) -> bool:
    free = [v for v in range(p.n) if v not in p.colors]
    for vec in itertools.product(range(3), repeat=len(free)):
        col = dict(p.colors)
        col.update(zip(free, vec))
        if all(col[u] != col[v] for u, v in p.graph.edges):
            return True
    return False

