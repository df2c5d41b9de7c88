"""Regenerate the bundled benchmark game by deterministic self-play.

Standard alpha-beta (no chains, no tables) plays both sides from a book
opening.  A candidate move that would repeat an earlier position is
skipped in favour of the next legal move in the engine's order, so the
game does not collapse into a draw by repetition before it is long enough.

    python scripts/make_bench_game.py --plies 98 --depth 4 --out src/movechains/data/bench_game.txt
"""
import argparse

from movechains.core import apply_move, legal_moves, parse_uci, initial_position, START_FEN
from movechains.evaluation import order_moves
from movechains.harness import GameRecord, load_openings
from movechains.search import SearchConfig, search_root


def generate(plies: int, depth: int, opening: list[str]) -> GameRecord:
    pos = initial_position()
    moves = []
    seen = {pos.key()}
    for tok in opening:
        mv = parse_uci(pos, tok)
        apply_move(pos, mv)
        moves.append(mv)
        seen.add(pos.key())
    cfg = SearchConfig.standard(max_depth=depth)
    while len(moves) < plies:
        legal = legal_moves(pos)
        if not legal:
            break
        best = search_root(pos, cfg=cfg).best_move
        for mv in [best] + order_moves(pos, legal):
            apply_move(pos, mv)
            if pos.key() not in seen or mv is legal[-1]:
                break
            pos.pop()
        seen.add(pos.key())
        moves.append(mv)
    meta = {"White": f"standard depth {depth}", "Black": f"standard depth {depth}",
            "Source": "deterministic self-play stand-in", "Opening": " ".join(opening)}
    return GameRecord(START_FEN, moves, meta)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plies", type=int, default=98)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--opening", type=int, default=0, help="index into the bundled openings")
    ap.add_argument("--out", default="src/movechains/data/bench_game.txt")
    args = ap.parse_args()
    rec = generate(args.plies, args.depth, load_openings()[args.opening])
    with open(args.out, "w") as fh:
        fh.write(rec.to_text())
    print(f"wrote {len(rec.moves)} moves to {args.out}")


if __name__ == "__main__":
    main()
