"""Timed self-play match between two configs, PGN-style log included.

    python scripts/run_match.py --a beam4 --b standard+tt --games 10 --tc 60000 --pgn games.pgn
"""
import argparse

from movechains.harness import load_openings, parse_config, run_match


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", default="beam4")
    ap.add_argument("--b", default="standard+tt")
    ap.add_argument("--games", type=int, default=10)
    ap.add_argument("--tc", type=int, default=60000, help="ms per side per game")
    ap.add_argument("--openings")
    ap.add_argument("--pgn")
    args = ap.parse_args()

    a, b = parse_config(args.a), parse_config(args.b)
    rep = run_match(a, b, args.games, args.tc, load_openings(args.openings),
                    progress=lambda i, g: print(f"game {i + 1}: {g.white}-{g.black} {g.result} "
                                                f"{g.reason} {len(g.moves)} plies", flush=True))
    print(rep.table_csv(), end="")
    first = rep.games[0]           # names carry #A/#B when both configs share one
    print(f"{first.white} {rep.score(first.white)}  {first.black} {rep.score(first.black)}  "
          f"illegal {rep.illegal_moves}")
    if args.pgn:
        with open(args.pgn, "w") as f:
            f.write(rep.pgn())


if __name__ == "__main__":
    main()
