"""Command line: ``movechains bench|match|dump-tables|uci``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import uci
from .chains import ChainStore
from .harness import (bench, bundled_game, dump_tables, load_game, load_openings, parse_config,
                      run_match)
from .search import search_root
from .tables import MoveTableSet

DEFAULT_CONFIGS = "standard;chains;beam1;beam2;beam4"


def _global_overrides(args) -> dict:
    kw = {}
    if getattr(args, "persist_chains", False):
        kw["persist_chains"] = True
    if getattr(args, "rank_by", None):
        kw["rank_by"] = args.rank_by
    if getattr(args, "chains_on", None):
        kw["chains_on"] = args.chains_on
    return kw


def _split_configs(text: str) -> list[str]:
    # presets may be listed with commas ("standard,chains") while key=value
    # specs use ';' between configs ("chains=on,beam=1;chains=on,beam=2")
    if ";" in text:
        return [t for t in text.split(";") if t.strip()]
    parts = [p for p in text.split(",") if p.strip()]
    if all("=" not in p for p in parts):
        return parts
    return [text]


def cmd_bench(args) -> int:
    record = load_game(args.game) if args.game else bundled_game()
    kw = _global_overrides(args)
    configs = [parse_config(s, **kw) for s in _split_configs(args.configs)]

    def progress(row):
        if args.verbose:
            print(f"{row['config']:>12} #{row['position']:3d} nodes={row['negamax_nodes']}",
                  file=sys.stderr)

    report = bench(record, args.depth, configs, reset_per_position=args.reset_per_position,
                   progress=progress)
    if args.rows:
        Path(args.rows).write_text(report.rows_csv())
    print(report.summary_csv(), end="")
    return 0


def cmd_match(args) -> int:
    kw = _global_overrides(args)
    white, black = parse_config(args.white, **kw), parse_config(args.black, **kw)
    openings = load_openings(args.openings)

    def progress(i, g):
        print(f"game {i + 1}: {g.white} vs {g.black} {g.result} ({g.reason}, {len(g.moves)} plies)",
              file=sys.stderr)

    report = run_match(white, black, args.games, args.tc, openings, progress=progress)
    print(report.table_csv(), end="")
    print(f"score {white.name}: {report.score(report.games[0].white)}  "
          f"{black.name}: {report.score(report.games[0].black)}  illegal: {report.illegal_moves}")
    if args.pgn:
        Path(args.pgn).write_text(report.pgn())
    return 1 if report.illegal_moves else 0


def cmd_dump(args) -> int:
    """Fill tables by searching a game's positions, then write them out."""
    record = load_game(args.game) if args.game else bundled_game()
    cfg = parse_config(args.config, **_global_overrides(args)).with_(max_depth=args.depth)
    chains, tables = ChainStore(max_length=cfg.max_chain_length), MoveTableSet()
    positions = record.positions()
    if args.positions is not None:
        positions = positions[:args.positions]
    for pos in positions:
        search_root(pos, chains, tables, cfg)
    for p in dump_tables(tables, args.out):
        print(p)
    if args.chains:
        Path(args.out, "chains.txt").write_text(chains.dump() + "\n")
    return 0


def cmd_uci(args) -> int:
    uci.run(cfg=parse_config(args.config, **_global_overrides(args)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="movechains", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    # also accepted after the subcommand; SUPPRESS keeps the top-level value otherwise
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--persist-chains", action="store_true",
                        help="keep chains between root searches")
    common.add_argument("--rank-by", choices=("weight", "eval"))
    common.add_argument("--chains-on", choices=("cutoff", "window"))
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", parents=[common], help="node counts over a recorded game")
    b.add_argument("--game", help="game record file (default: bundled game)")
    b.add_argument("--depth", type=int, default=5)
    b.add_argument("--configs", default=DEFAULT_CONFIGS,
                   help="presets separated by ',' or config specs separated by ';'")
    b.add_argument("--reset-per-position", action="store_true")
    b.add_argument("--rows", help="write per-position CSV here")
    b.set_defaults(func=cmd_bench)

    m = sub.add_parser("match", parents=[common], help="self-play match")
    m.add_argument("--white", default="beam4")
    m.add_argument("--black", default="standard+tt")
    m.add_argument("--games", type=int, default=10)
    m.add_argument("--tc", type=int, default=60000, help="milliseconds per side per game")
    m.add_argument("--openings", help="openings file (default: bundled)")
    m.add_argument("--pgn", help="write PGN-style game logs here")
    m.set_defaults(func=cmd_match)

    d = sub.add_parser("dump-tables", parents=[common], help="write move tables as CSV")
    d.add_argument("--out", required=True)
    d.add_argument("--game")
    d.add_argument("--config", default="beam4")
    d.add_argument("--depth", type=int, default=4)
    d.add_argument("--positions", type=int, help="only the first N positions")
    d.add_argument("--chains", action="store_true", help="also dump the final chain store")
    d.set_defaults(func=cmd_dump)

    u = sub.add_parser("uci", parents=[common], help="text protocol on stdin/stdout")
    u.add_argument("--config", default="beam4")
    u.set_defaults(func=cmd_uci)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
