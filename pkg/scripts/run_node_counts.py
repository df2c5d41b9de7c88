"""Node-count comparison over the bundled game, for chains and tables.

Runs the standard reference, chains only, and chains + tables at beam
1/2/4, with table moves either searched in full or replayed.  Writes the
per-position rows and prints the summary.

    python scripts/run_node_counts.py --depth 5 --rows node_rows.csv
"""
import argparse
import sys
import time

from movechains.harness import bench, bundled_game, load_game, parse_config

SEARCHED = ["standard", "chains", "beam1,table_search=search", "beam2,table_search=search",
            "beam4,table_search=search"]
REPLAYED = ["beam1,name=beam1-replay", "beam2,name=beam2-replay", "beam4,name=beam4-replay"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--game")
    ap.add_argument("--depth", type=int, default=5)
    ap.add_argument("--window", type=int, default=50)
    ap.add_argument("--positions", type=int, help="first N positions only")
    ap.add_argument("--no-replay", action="store_true", help="skip the replay variants")
    ap.add_argument("--rows")
    args = ap.parse_args()

    game = load_game(args.game) if args.game else bundled_game()
    if args.positions:
        game.moves = game.moves[:args.positions]
    specs = SEARCHED + ([] if args.no_replay else REPLAYED)
    configs = [parse_config(s, reliability_window=args.window) for s in specs]
    t = time.perf_counter()
    rep = bench(game, args.depth, configs,
                progress=lambda r: print(f"{r['config']:>14} {r['position']:3d} {r['negamax_nodes']}",
                                         file=sys.stderr))
    print(rep.summary_csv(), end="")
    std, ch = rep.mean("standard"), rep.mean("chains")
    print(f"chains/standard {ch / std:.3f}  beam1/chains {rep.mean('beam1') / ch:.2f}  "
          f"beam2/beam1 {rep.mean('beam2') / rep.mean('beam1'):.2f}  "
          f"beam4/beam1 {rep.mean('beam4') / rep.mean('beam1'):.2f}  "
          f"({(time.perf_counter() - t) / 60:.1f} min)")
    if args.rows:
        with open(args.rows, "w") as f:
            f.write(rep.rows_csv())


if __name__ == "__main__":
    main()
