"""Command-line front end: ``widthlab <command> [flags]``.

Every command prints a JSON run report (or writes it to ``--out``).  Exit
codes: 0 success, 2 parse error, 3 precondition violated, 4 resource cap.
Each global flag can also be set through ``WIDTHLAB_<FLAG>`` (for example
``WIDTHLAB_CACHE_DIR``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .bounds import obstruction_search, survey_Wn, verify_bounds
from .cache import DEFAULT_CACHE_DIR, Cache, digest
from .canonical import canonical_form
from .coloring_game import (NoWin, check_tree_lemmas, enumerate_Mkr, game_value, group_by_color_orbit,
                            min_rounds)
from .config import Budgets
from .consistency import _edge_preserving, k_consistent, width
from .errors import NoRefutation, ParseError, ResourceCap, WidthLabError
from .formats import parse_instance, to_dimacs, to_json_instance
from .generators import (FAMILIES, complete, crossover_gadget, gadget_pattern_extensions, planarize,
                         random_regular, standard_graph, triple_cover)
from .graphs import Graph, PrecoloredGraph, is_3_colorable

COLOR_NAMES = "rbg"
CERTIFICATE_CAP = 100_000

GLOBAL_FLAGS = {
    # flag: (type, default, help)
    "seed": (int, 0, "random seed"),
    "workers": (int, 1, "worker count (results never depend on it)"),
    "max_k": (int, None, "largest pebble count to try"),
    "max_rounds": (int, None, "round cap for game searches and play"),
    "budget_nodes": (int, None, "cap on search nodes, consistency states and game positions"),
    "format": (str, "json", "output format: json, or dimacs for generate"),
    "out": (str, None, "write the report here instead of stdout"),
    "cache_dir": (str, DEFAULT_CACHE_DIR, "result cache directory ('' disables)"),
}


def _env_default(name, typ, default):
    raw = os.environ.get("WIDTHLAB_" + name.upper())
    if raw is None:
        return default
    return typ(raw)


def _add_globals(p: argparse.ArgumentParser):
    for name, (typ, default, hlp) in GLOBAL_FLAGS.items():
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=typ,
                       default=_env_default(name, typ, default), help=hlp)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="widthlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, hlp):
        p = sub.add_parser(name, help=hlp)
        _add_globals(p)
        return p

    p = cmd("width", "least k at which Spoiler wins the existential k-pebble game")
    p.add_argument("instance")
    p.add_argument("--target", default="k3")

    p = cmd("consistency", "solve the existential k-pebble game at one k")
    p.add_argument("instance")
    p.add_argument("--target", default="k3")
    p.add_argument("--k", type=int, required=True)

    p = cmd("game", "value or minimum rounds of the k-width 3-colouring game")
    p.add_argument("instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rounds", type=int, help="decide Game(k, rounds); default: minimum rounds")
    p.add_argument("--erasure", choices=("single", "any"), default="single")

    p = cmd("enumerate", "list the minimal obstruction family M^k_r")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--trees", action="store_true", help="trees only")
    p.add_argument("--orbits", action="store_true", help="group by colour permutation")
    p.add_argument("--no-prune", action="store_true")

    p = cmd("generate", "emit a named instance")
    p.add_argument("family", help=f"one of {sorted(FAMILIES)}, mycielski, random-regular, "
                                  "triple-cover, gadget")
    p.add_argument("params", nargs="*")

    p = cmd("planarize", "replace crossings of a straight-line drawing by gadgets")
    p.add_argument("instance")
    p.add_argument("--identify", choices=("smaller", "larger"), default="smaller")
    p.add_argument("--swap-axes", action="store_true")

    p = cmd("verify", "width against K3 with every bound it must satisfy")
    p.add_argument("instance")

    p = cmd("survey", "W(n) over all non-3-colourable n-vertex graphs")
    p.add_argument("--n", type=int, required=True)

    p = cmd("obstruction", "bounded search for a low-treewidth obstruction")
    p.add_argument("instance")
    p.add_argument("--target", default="k3")
    p.add_argument("--max-vertices", type=int, default=5)
    p.add_argument("--max-tw", type=int, default=3)

    p = cmd("play", "play Duplicator against the optimal Spoiler")
    p.add_argument("instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--self-play", action="store_true",
                   help="replay Spoiler's certificate against every Duplicator reply")
    p.add_argument("--swap", action="store_true", help="play Spoiler against the Duplicator bot")
    return parser


# ------------------------------------------------------------ instances

def load_instance(arg: str) -> PrecoloredGraph:
    """A file path, or a family spec such as ``complete:4`` or ``grotzsch``."""
    if arg == "-":
        return parse_instance(sys.stdin)
    if Path(arg).exists():
        return parse_instance(arg)
    name, _, params = arg.partition(":")
    if name in FAMILIES or name == "mycielski":
        args = [x for x in params.split(",") if x]
        if name == "mycielski":
            return PrecoloredGraph(standard_graph("mycielski", *_family_args(args)))
        return PrecoloredGraph(standard_graph(name, *args))
    raise ParseError(f"no such file or graph family: {arg}")


def _family_args(args):
    # mycielski:cycle,5 -> ("cycle", "5")
    return args if args else ["cycle", "5"]


def load_target(arg: str) -> Graph:
    low = arg.lower()
    if low.startswith("k") and low[1:].isdigit():
        return complete(int(low[1:]))
    return load_instance(arg).graph


def instance_digest(p: PrecoloredGraph, budgets: Budgets) -> str:
    if p.n <= budgets.canonical_max_n:
        return "canon:" + digest(canonical_form(p, budgets).encoding)[:32]
    return "raw:" + digest(to_json_instance(p))[:32]


# ------------------------------------------------------------ commands

def _budgets(args) -> Budgets:
    b = Budgets.from_env()
    if args.budget_nodes:
        b = b.with_(search_nodes=args.budget_nodes, consistency_states=args.budget_nodes,
                    game_positions=args.budget_nodes)
    return b


def _config(args, budgets) -> dict:
    cfg = {k: getattr(args, k) for k in ("seed", "workers", "max_k", "max_rounds", "budget_nodes")}
    cfg["budgets"] = asdict(budgets)
    return cfg


def _certificate(strategy, start=None):
    try:
        return strategy.to_json(start, max_positions=CERTIFICATE_CAP)
    except ResourceCap:
        return {"omitted": f"strategy table exceeds {CERTIFICATE_CAP} positions"}


def run_width(args, budgets, out):
    p = load_instance(args.instance)
    h = load_target(args.target)
    try:
        rep = width(p.graph, h, max_k=args.max_k, budgets=budgets)
    except NoRefutation as exc:
        out["result"] = {"error": "NoRefutation", "message": str(exc),
                         "homomorphism": {str(v): c for v, c in sorted(exc.homomorphism.items())}}
        return 3
    out["result"] = {"width": rep.width, "rounds": rep.rounds, "rounds_source": rep.rounds_source,
                     "levels": [{"k": k, "outcome": "DuplicatorWins" if d else "SpoilerWins"}
                                for k, d in rep.levels]}
    out["certificate"] = _certificate(rep.certificate)
    return 0


def run_consistency(args, budgets, out):
    p = load_instance(args.instance)
    h = load_target(args.target)
    res = k_consistent(p.graph, h, args.k, budgets)
    out["result"] = {"k": res.k, "outcome": "DuplicatorWins" if res.duplicator_wins else "SpoilerWins",
                     "rounds": res.rounds, "family_size": len(res.family), "states": res.states}
    if res.spoiler_wins:
        out["certificate"] = _certificate(res.strategy)
    return 0


def run_game(args, budgets, out):
    p = load_instance(args.instance)
    if args.rounds is not None:
        val = game_value(p, args.k, args.rounds, erasure=args.erasure, budgets=budgets)
        out["result"] = {"k": args.k, "rounds": args.rounds, "value": str(val)}
    else:
        r = min_rounds(p, args.k, max_rounds=args.max_rounds, budgets=budgets)
        out["result"] = {"k": args.k, "min_rounds": "NoWin" if r is NoWin else r,
                         "round_cap": args.max_rounds}
    return 0


def run_enumerate(args, budgets, out):
    members = enumerate_Mkr(args.k, args.r, args.n_max, trees_only=args.trees,
                            prune=not args.no_prune, budgets=budgets)
    res = {"k": args.k, "r": args.r, "n_max": args.n_max, "trees_only": args.trees,
           "count": len(members), "members": [m.to_json() for m in members]}
    if args.orbits:
        index = {m.canonical: i for i, m in enumerate(members)}
        res["orbits"] = [[index[m.canonical] for m in grp] for grp in group_by_color_orbit(members)]
    trees = [m for m in members if m.precolored.graph.is_tree()]
    if trees:
        reports = [check_tree_lemmas(m) for m in trees]
        res["tree_lemmas"] = {"trees": len(trees), "violations": sum(not r.ok for r in reports),
                              "flags": sorted({f for r in reports for f in r.flags})}
    out["result"] = res
    return 0


def _generate(args, budgets) -> Graph:
    fam, params = args.family, args.params
    if fam == "random-regular":
        if len(params) != 2:
            raise ParseError("random-regular takes n d")
        return random_regular(int(params[0]), int(params[1]), args.seed)
    if fam == "triple-cover":
        if not params:
            raise ParseError("triple-cover takes a base instance")
        return triple_cover(load_instance(params[0]).graph, budgets).graph
    if fam == "gadget":
        return crossover_gadget().graph
    if fam == "mycielski":
        return standard_graph("mycielski", *_family_args(params))
    return standard_graph(fam, *params)


def run_generate(args, budgets, out):
    g = _generate(args, budgets)
    out["result"] = {"instance": json.loads(to_json_instance(g))}
    if args.family == "gadget":
        gd = crossover_gadget()
        out["result"]["corners"] = dict(zip(("left", "right", "top", "bottom"), gd.corners))
        out["result"]["pattern_extensions"] = {"".join(map(str, k)): v
                                               for k, v in gadget_pattern_extensions(gd).items() if v}
    out["_raw"] = to_dimacs(g)
    return 0


def run_planarize(args, budgets, out):
    p = load_instance(args.instance)
    res = planarize(p.graph, seed=args.seed, identify=args.identify, swap_axes=args.swap_axes)
    before = is_3_colorable(p.graph, budgets)
    after = is_3_colorable(res.g_prime, budgets)
    body = res.to_json()
    body.update({"n_original": p.n, "expected_vertex_count": res.expected_vertex_count(p.n),
                 "three_colorable_before": before, "three_colorable_after": after,
                 "crossing_free": res.drawing.is_crossing_free()})
    out["result"] = body
    out["_raw"] = to_dimacs(res.g_prime)
    return 0


def run_verify(args, budgets, out):
    p = load_instance(args.instance)
    rep = verify_bounds(p.graph, fatal=False, budgets=budgets)
    body = rep.to_json()
    out["bounds"] = {b["name"]: b for b in body.pop("bounds")}
    out["result"] = body
    return 0 if not rep.violations else 1


def run_survey(args, budgets, out):
    cache = Cache(args.cache_dir or None)
    res = survey_Wn(args.n, cache=cache, budgets=budgets)
    out["result"] = res.to_json()
    out["bounds"] = {"corollary": {"value": 3 * args.n // 4 + 1, "holds": res.W <= 3 * args.n // 4 + 1},
                     "floor": {"value": 4, "holds": res.W >= 4}}
    return 0


def run_obstruction(args, budgets, out):
    p = load_instance(args.instance)
    h = load_target(args.target)
    res = obstruction_search(p.graph, h, args.max_vertices, args.max_tw, budgets)
    out["result"] = res.to_json()
    return 0


# ------------------------------------------------------------ play

def _say(msg):
    print(msg, file=sys.stderr, flush=True)


def _ask(prompt):
    _say(prompt)
    line = sys.stdin.readline()
    if not line:
        raise EOFError
    return line.strip()


def _color_of(text):
    text = text.lower()
    if text in COLOR_NAMES:
        return COLOR_NAMES.index(text)
    if text in ("0", "1", "2"):
        return int(text)
    return None


def _violation(g, pos):
    for u, v in g.edge_list():
        if u in pos and v in pos and pos[u] == pos[v]:
            return (u, v)
    return None


def run_play(args, budgets, out):
    p = load_instance(args.instance)
    g = p.graph
    start = dict(p.colors)
    if len(start) > args.k:
        raise ParseError(f"{len(start)} precoloured vertices exceed k = {args.k}")
    res = k_consistent(g, complete(3), args.k, budgets)
    strategy = None if not _edge_preserving(g, complete(3), start) else res.strategy_from(start)
    transcript = []
    out["result"] = {"k": args.k, "start": {str(v): c for v, c in start.items()}, "transcript": transcript}
    body = out["result"]

    if _violation(g, start):
        body.update(spoiler_wins=True, outcome="violation", violation=list(_violation(g, start)))
        return 0
    if strategy is None:
        body["spoiler_wins"] = False
        body["message"] = "Spoiler has no winning strategy at this k; the Duplicator bot is available (--swap)"
        if args.self_play:
            return 0
        if not args.swap:
            _say(body["message"])
            try:
                if _ask("Play Spoiler against the Duplicator bot? [y/N]").lower() not in ("y", "yes"):
                    return 0
            except EOFError:
                body["aborted"] = True
                return 0
        return _play_spoiler(g, res, start, args, body)

    body["spoiler_wins"] = True
    body["rounds_bound"] = strategy.rank_of(start)
    if args.self_play:
        body["self_play"] = strategy.replay_exhaustive(start, max_positions=CERTIFICATE_CAP)
        return 0
    pos = dict(start)
    _say(f"You are Duplicator. Colour each named vertex r, b or g (or 0, 1, 2). k = {args.k}.")
    while True:
        lift, v = strategy.next_move(pos)
        if lift is not None:
            _say(f"Spoiler erases vertex {lift}.")
        while True:
            try:
                text = _ask(f"Spoiler names vertex {v}. Colour?")
            except EOFError:
                body["aborted"] = True
                return 0
            c = _color_of(text)
            if c is not None:
                break
            _say("Please answer r, b, g, 0, 1 or 2.")
        pos = strategy.play(pos, (lift, v), c)
        transcript.append({"lift": lift, "vertex": v, "color": c})
        bad = _violation(g, pos)
        if bad:
            _say(f"Edge {bad[0]}-{bad[1]} is monochromatic. Spoiler wins after {len(transcript)} rounds.")
            body.update(outcome="violation", violation=list(bad))
            return 0


def _play_spoiler(g, res, start, args, body):
    pos = dict(start)
    limit = args.max_rounds or 50
    transcript = body["transcript"]
    body["role"] = "spoiler"
    _say(f"You are Spoiler. Enter 'v' to name vertex v, or 'u v' to erase u first. k = {args.k}.")
    while len(transcript) < limit:
        try:
            text = _ask(f"Position {pos}. Move?")
        except EOFError:
            body["aborted"] = True
            return 0
        try:
            nums = [int(x) for x in text.split()]
        except ValueError:
            nums = []
        if len(nums) not in (1, 2) or any(not 0 <= x < g.n for x in nums):
            _say("Enter one or two vertex numbers.")
            continue
        lift, v = (None, nums[0]) if len(nums) == 1 else nums
        base = {u: c for u, c in pos.items() if u != lift}
        if v in base or len(base) >= args.k:
            _say("Name an uncoloured vertex and keep at most k colours (erase one first).")
            continue
        c = res.duplicator_reply(base, v)
        _say(f"Duplicator colours {v} {COLOR_NAMES[c]}.")
        base[v] = c
        pos = base
        transcript.append({"lift": lift, "vertex": v, "color": c})
    body["outcome"] = "duplicator_survived"
    return 0


# ------------------------------------------------------------ entry point

COMMANDS = {
    "width": run_width, "consistency": run_consistency, "game": run_game,
    "enumerate": run_enumerate, "generate": run_generate, "planarize": run_planarize,
    "verify": run_verify, "survey": run_survey, "obstruction": run_obstruction, "play": run_play,
}
CACHED = {"width", "consistency", "game", "verify", "obstruction"}


def run(argv=None) -> tuple[int, dict, str | None]:
    """Execute one command; returns ``(exit code, report, raw text or None)``."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    out: dict = {"command": args.command, "version": __version__}
    code = 0
    try:
        budgets = _budgets(args)
        out["config"] = _config(args, budgets)
        inst = getattr(args, "instance", None)
        key = None
        if inst is not None:
            p = load_instance(inst)
            out["instance_digest"] = instance_digest(p, budgets)
            if args.command in CACHED and args.cache_dir:
                params = {k: v for k, v in vars(args).items()
                          if k not in ("out", "format", "cache_dir", "workers", "instance")}
                key = digest(to_json_instance(p), args.command, params, out["config"]["budgets"])
        else:
            out["instance_digest"] = "none"
        hit = Cache(args.cache_dir).get(key) if key else None
        if hit is not None:
            out.update(hit["payload"])
            code = hit["code"]
        else:
            code = COMMANDS[args.command](args, budgets, out)
            if key and "result" in out:
                payload = {k: out[k] for k in ("result", "bounds", "certificate") if k in out}
                Cache(args.cache_dir).put(key, {"payload": payload, "code": code})
    except WidthLabError as exc:
        code = exc.exit_code
        out.setdefault("config", {})
        out.setdefault("instance_digest", "none")
        out["result"] = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            out["result"].update(line=exc.line, column=exc.column)
    out["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
    raw = out.pop("_raw", None)
    return code, out, raw if getattr(args, "format", "json") == "dimacs" else None


def main(argv=None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    code, report, raw = run(args_list)
    text = raw if raw is not None else json.dumps(report, indent=2, sort_keys=True) + "\n"
    dest = _out_path(args_list)
    if dest:
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)
    if code and "error" in report.get("result", {}):
        _say(f"error: {report['result']['message']}")
    return code


def _out_path(argv):
    ns, _ = build_parser().parse_known_args(argv)
    return getattr(ns, "out", None)


if __name__ == "__main__":
    sys.exit(main())
