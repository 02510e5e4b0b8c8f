"""Resource budgets.

Every exhaustive search in the package counts its work against one of these
caps and raises :class:`~widthlab.errors.ResourceCap` instead of silently
truncating.  Each value can be overridden through the matching
``WIDTHLAB_*`` environment variable.
"""

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Budgets:
    search_nodes: int = 20_000_000      # backtracking nodes (colorings, alpha, homs)
    consistency_states: int = 4_000_000  # partial maps kept by the k-consistency solver
    game_positions: int = 4_000_000      # positions memoized by the coloring-game solvers
    canonical_max_n: int = 16
    treewidth_max_n: int = 18
    separator_max_n: int = 20
    enumerate_max_n: int = 10
    survey_max_n: int = 7

    @classmethod
    def from_env(cls, **overrides):
        values = {}
        for f in fields(cls):
            env = os.environ.get("WIDTHLAB_" + f.name.upper())
            if env is not None:
                values[f.name] = int(env)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_(self, **changes):
        return replace(self, **changes)


DEFAULT = Budgets()
