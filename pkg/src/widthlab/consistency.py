"""Existential k-pebble game / k-consistency on graphs.

The solver starts from every edge-preserving partial map of at most ``k``
source vertices and deletes, round by round, the maps of size ``< k`` that
fail to extend to some further vertex, together with every map that contains
a deleted one.  What survives is the greatest k-consistent family; Duplicator
wins iff the empty map survives.

Deletions are done in synchronous rounds, so the round in which a map is
deleted is exactly the number of moves Spoiler needs from it.  Those ranks are
the certificate: from a deleted position of rank r, Spoiler can always move so
that every Duplicator reply lands on rank < r (or on a violation).

A partial map is an int: the low ``n`` bits are the domain, and vertex ``v``
holds ``image + 1`` in the four bits at offset ``n + 4 v``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Mapping

from .config import DEFAULT, Budgets
from .errors import NoRefutation, ResourceCap, UnreachablePosition
from .graphs import Graph, bits, homomorphism_search

MAX_TARGET = 15


def homomorphism_exists(g: Graph, h: Graph, budgets: Budgets = DEFAULT) -> dict[int, int] | None:
    """A total edge-preserving map ``g -> h`` as a dict, or ``None``."""
    found = homomorphism_search(g, list(h.adj), budgets=budgets)
    return None if found is None else dict(enumerate(found))


class _Codec:
    def __init__(self, n: int):
        self.n = n
        self.full = (1 << n) - 1

    def size(self, key: int) -> int:
        return (key & self.full).bit_count()

    def image(self, key: int, v: int) -> int:
        return (key >> (self.n + 4 * v) & 15) - 1

    def extend(self, key: int, v: int, h: int) -> int:
        return key | 1 << v | (h + 1) << (self.n + 4 * v)

    def restrict(self, key: int, v: int) -> int:
        return key & ~(1 << v) & ~(15 << (self.n + 4 * v))

    def encode(self, assignment: Mapping[int, int]) -> int:
        key = 0
        for v, h in assignment.items():
            key = self.extend(key, v, h)
        return key

    def decode(self, key: int) -> dict[int, int]:
        return {v: self.image(key, v) for v in bits(key & self.full)}


@dataclass
class ConsistencyResult:
    """Outcome of the k-consistency fixpoint for one (g, h, k)."""

    g: Graph
    h: Graph
    k: int
    duplicator_wins: bool
    family: set = field(repr=False)
    rank: dict = field(repr=False)
    rounds: int | None
    states: int

    @property
    def spoiler_wins(self) -> bool:
        return not self.duplicator_wins

    @property
    def strategy(self) -> "SpoilerStrategy | None":
        return None if self.duplicator_wins else self.strategy_from()

    def strategy_from(self, position: Mapping[int, int] | None = None) -> "SpoilerStrategy | None":
        """Spoiler's strategy if he wins from ``position`` (default: the empty one)."""
        s = SpoilerStrategy(self.g, self.h, self.k, self.rank)
        return s if s.rank_of(position or {}) is not None else None

    def _key(self, position):
        codec = _Codec(self.g.n)
        return codec.encode(position)

    def contains(self, position: Mapping[int, int]) -> bool:
        """Whether ``position`` belongs to the surviving k-consistent family."""
        return self._key(position) in self.family

    def spoiler_rounds_from(self, position: Mapping[int, int]) -> int | None:
        """Rounds Spoiler needs from ``position`` (0 if already violated), or None."""
        if not _edge_preserving(self.g, self.h, position):
            return 0
        return self.rank.get(self._key(position))

    def duplicator_reply(self, position: Mapping[int, int], v: int) -> int | None:
        """Smallest image for ``v`` keeping ``position + {v: image}`` in the family."""
        codec = _Codec(self.g.n)
        key = codec.encode(position)
        for h in range(self.h.n):
            if codec.extend(key, v, h) in self.family:
                return h
        return None


def _edge_preserving(g: Graph, h: Graph, position: Mapping[int, int]) -> bool:
    return all(h.has_edge(position[u], position[v])
               for u, v in g.edges if u in position and v in position)


def k_consistent(g: Graph, h: Graph, k: int, budgets: Budgets = DEFAULT) -> ConsistencyResult:
    """Solve the existential k-pebble game on (g, h)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if h.n > MAX_TARGET:
        raise ResourceCap(f"target graphs are limited to {MAX_TARGET} vertices")
    k = min(k, max(g.n, 1))
    n = g.n
    codec = _Codec(n)
    hadj = h.adj
    hall = (1 << h.n) - 1
    gnb = g.nbrs
    shift = [n + 4 * v for v in range(n)]

    def allowed(key: int, v: int) -> int:
        mask = hall
        for u in gnb[v]:
            if key >> u & 1:
                mask &= hadj[(key >> shift[u] & 15) - 1]
        return mask

    # all edge-preserving maps of size <= k, generated in increasing vertex order
    alive = {0}
    layer = [(0, -1)]
    small = [0]
    for size in range(k):
        nxt = []
        for key, top in layer:
            for v in range(top + 1, n):
                for hv in bits(allowed(key, v)):
                    e = key | 1 << v | (hv + 1) << shift[v]
                    alive.add(e)
                    nxt.append((e, v))
        if len(alive) > budgets.consistency_states:
            raise ResourceCap(f"k-consistency state space exceeds {budgets.consistency_states} maps")
        layer = nxt
        if size + 1 < k:
            small.extend(e for e, _ in nxt)
    states = len(alive)
    full = codec.full

    rank: dict[int, int] = {}
    candidates = small
    rnd = 0
    while candidates:
        rnd += 1
        dead = []
        for key in candidates:
            if key not in alive:
                continue
            free = full & ~key
            for v in bits(free):
                base = key | 1 << v
                sv = shift[v]
                if not any(base | (hv + 1) << sv in alive for hv in bits(allowed(key, v))):
                    dead.append(key)
                    break
        if not dead:
            break
        removed = []
        for key in dead:
            if key in alive:
                alive.discard(key)
                rank[key] = rnd
                removed.append(key)
        # upward closure: every alive extension of a deleted map goes too
        i = 0
        while i < len(removed):
            key = removed[i]
            i += 1
            if (key & full).bit_count() >= k:
                continue
            for v in bits(full & ~key):
                base = key | 1 << v
                for hv in range(h.n):
                    e = base | (hv + 1) << shift[v]
                    if e in alive:
                        alive.discard(e)
                        rank[e] = rnd
                        removed.append(e)
        nxt = set()
        for key in removed:
            for u in bits(key & full):
                r = codec.restrict(key, u)
                if r in alive:
                    nxt.add(r)
        candidates = sorted(nxt)

    wins = 0 in alive
    return ConsistencyResult(g, h, k, wins, alive, rank, None if wins else rank[0], states)


class SpoilerStrategy:
    """Spoiler's winning strategy read off the deletion ranks.

    From a deleted position of size ``< k`` Spoiler pebbles the smallest vertex
    all of whose images land on strictly smaller rank; from a full position he
    first lifts the smallest pebble whose removal keeps the rank.
    """

    def __init__(self, g: Graph, h: Graph, k: int, rank: dict):
        self.g, self.h, self.k = g, h, k
        self._rank = rank
        self._codec = _Codec(g.n)

    @property
    def rounds(self) -> int | None:
        """Rounds Spoiler needs from the empty position (None if he cannot win there)."""
        return self._rank.get(0)

    def rank_of(self, position: Mapping[int, int]) -> int | None:
        if not _edge_preserving(self.g, self.h, position):
            return 0
        return self._rank.get(self._codec.encode(position))

    def _witness(self, key: int, r: int) -> int:
        codec = self._codec
        for v in range(self.g.n):
            if key >> v & 1:
                continue
            if all(self._below(codec.extend(key, v, hv), r) for hv in range(self.h.n)):
                return v
        raise AssertionError("deleted map without a witness vertex")

    def _below(self, key: int, r: int) -> bool:
        pos = self._codec.decode(key)
        if not _edge_preserving(self.g, self.h, pos):
            return True
        got = self._rank.get(key)
        return got is not None and got < r

    def next_move(self, position: Mapping[int, int]) -> tuple[int | None, int]:
        """``(pebble to lift or None, vertex to pebble)`` from ``position``."""
        position = dict(position)
        if len(position) > self.k:
            raise UnreachablePosition(f"position uses more than k={self.k} pebbles")
        if not _edge_preserving(self.g, self.h, position):
            raise UnreachablePosition("Duplicator has already lost in this position")
        codec = self._codec
        key = codec.encode(position)
        r = self._rank.get(key)
        if r is None:
            raise UnreachablePosition("position lies in the surviving k-consistent family")
        if len(position) < self.k:
            return None, self._witness(key, r)
        for u in sorted(position):
            sub = codec.restrict(key, u)
            rs = self._rank.get(sub)
            if rs is not None and rs <= r:
                return u, self._witness(sub, rs)
        raise AssertionError("full deleted map without a deleted restriction")

    def play(self, position, move, image):
        """Apply Spoiler's ``move`` and Duplicator's ``image`` to ``position``."""
        lift, v = move
        nxt = {u: c for u, c in position.items() if u != lift}
        nxt[v] = image
        return nxt

    def table(self, start: Mapping[int, int] | None = None, max_positions: int = 100_000) -> dict:
        """Materialise the strategy on every position reachable against any Duplicator."""
        out = {}
        stack = [dict(start or {})]
        while stack:
            pos = stack.pop()
            key = tuple(sorted(pos.items()))
            if key in out or not _edge_preserving(self.g, self.h, pos):
                continue
            move = self.next_move(pos)
            out[key] = move
            if len(out) > max_positions:
                raise ResourceCap(f"strategy table exceeds {max_positions} positions")
            for hv in range(self.h.n):
                stack.append(self.play(pos, move, hv))
        return out

    def replay_exhaustive(self, start: Mapping[int, int] | None = None,
                          max_positions: int = 100_000) -> dict:
        """Play the strategy against every Duplicator reply sequence.

        Returns counts of explored positions and the longest line of play;
        raises ``AssertionError`` if some line fails to reach a violation
        within the certified number of rounds.
        """
        start = dict(start or {})
        bound = self.rank_of(start)
        if bound is None:
            raise UnreachablePosition("start position is not a Spoiler win")
        seen = set()
        longest = 0
        lines = 0
        stack = [(start, 0)]
        while stack:
            pos, depth = stack.pop()
            if not _edge_preserving(self.g, self.h, pos):
                longest = max(longest, depth)
                lines += 1
                continue
            if depth >= bound:
                raise AssertionError(f"no violation after {depth} rounds from {start}")
            key = tuple(sorted(pos.items()))
            if (key, depth) in seen:
                continue
            seen.add((key, depth))
            if len(seen) > max_positions:
                raise ResourceCap(f"replay exceeds {max_positions} positions")
            move = self.next_move(pos)
            for hv in range(self.h.n):
                stack.append((self.play(pos, move, hv), depth + 1))
        return {"positions": len(seen), "terminal_lines": lines, "longest": longest, "bound": bound}

    def replay_random(self, rng: random.Random, start=None) -> int:
        """One game against a uniformly random Duplicator; returns rounds to violation."""
        pos = dict(start or {})
        bound = self.rank_of(pos)
        if bound is None:
            raise UnreachablePosition("start position is not a Spoiler win")
        rounds = 0
        while _edge_preserving(self.g, self.h, pos):
            if rounds > bound:
                raise AssertionError("random replay did not terminate")
            pos = self.play(pos, self.next_move(pos), rng.randrange(self.h.n))
            rounds += 1
        return rounds

    def to_json(self, start: Mapping[int, int] | None = None, max_positions: int = 100_000) -> dict:
        table = self.table(start, max_positions=max_positions)
        return {
            "k": self.k,
            "rounds": self.rank_of(start or {}),
            "start": {str(v): c for v, c in sorted((start or {}).items())},
            "moves": [
                {"position": {str(v): c for v, c in pos}, "lift": lift, "pebble": v}
                for pos, (lift, v) in sorted(table.items())
            ],
        }


def next_spoiler_move(strategy: SpoilerStrategy, position: Mapping[int, int]):
    return strategy.next_move(position)


@dataclass
class WidthReport:
    width: int
    rounds: int
    rounds_source: str
    certificate: SpoilerStrategy = field(repr=False)
    elapsed: float
    levels: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {"width": self.width, "rounds": self.rounds, "rounds_source": self.rounds_source,
                "elapsed_ms": int(self.elapsed * 1000)}


def _is_k3(h: Graph) -> bool:
    return h.n == 3 and h.m == 3


def width(g: Graph, h: Graph, max_k: int | None = None, budgets: Budgets = DEFAULT) -> WidthReport:
    """Least k at which Spoiler wins the existential k-pebble game on (g, h)."""
    start = time.perf_counter()
    hom = homomorphism_exists(g, h, budgets)
    if hom is not None:
        raise NoRefutation(f"{g!r} maps to the target; no width is defined", hom)
    levels = []
    top = max(g.n, 1) if max_k is None else min(max_k, max(g.n, 1))
    for k in range(1, top + 1):
        res = k_consistent(g, h, k, budgets)
        levels.append((k, res.duplicator_wins))
        if res.spoiler_wins:
            rounds, source = res.rounds, "fixpoint"
            if _is_k3(h):
                from .coloring_game import min_rounds
                from .graphs import PrecoloredGraph

                rounds = min_rounds(PrecoloredGraph(g), k, budgets=budgets)
                source = "coloring_game"
                if rounds != res.rounds:
                    raise AssertionError(f"solvers disagree on rounds: {rounds} vs {res.rounds}")
            return WidthReport(k, rounds, source, res.strategy, time.perf_counter() - start, levels)
    raise ResourceCap(f"no Spoiler win up to k={top}")


def width_via_game_crosscheck(g: Graph, budgets: Budgets = DEFAULT) -> tuple[int, int]:
    """Width against K3 from the pebble game and from the colouring game; must agree."""
    from .coloring_game import min_capacity
    from .generators import complete

    w = width(g, complete(3), budgets=budgets).width
    c = min_capacity(g, budgets=budgets)
    if w != c:
        raise AssertionError(f"k-consistency width {w} differs from colouring-game capacity {c}")
    return w, c
