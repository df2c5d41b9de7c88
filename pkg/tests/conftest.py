import random

import chess
import pytest

from movechains.core import apply_move, initial_position, legal_moves, parse_fen
from movechains.search import SearchConfig, Searcher

PERFT_SUITE = [
    # (fen, {depth: nodes}) -- standard public perft positions
    ("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1", {1: 20, 2: 400, 3: 8902}),
    ("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", {1: 48, 2: 2039, 3: 97862}),
    ("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", {1: 14, 2: 191, 3: 2812, 4: 43238}),
    ("r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1", {1: 6, 2: 264, 3: 9467}),
    ("rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8", {1: 44, 2: 1486, 3: 62379}),
]


def random_fens(n, seed, min_plies=6, max_plies=60):
    """Positions reached by seeded random play with python-chess.

    Game-over positions are skipped, so every result has a legal move.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        b = chess.Board()
        for _ in range(rng.randint(min_plies, max_plies)):
            moves = list(b.legal_moves)
            if not moves:
                break
            b.push(rng.choice(moves))
        if not b.is_game_over(claim_draw=False):
            out.append(b.fen())
    return out


def played_fens(n, seed, plies=(8, 50), slack=20):
    """Positions from noisy play: each move is drawn at random from the moves
    whose one-ply quiescence value is within ``slack`` of the best.

    Pure random walks hang pieces everywhere, which makes full-width
    quiescence explode; these look more like games.
    """
    rng = random.Random(seed)
    cfg = SearchConfig.standard()
    out = []
    while len(out) < n:
        pos = initial_position()
        for _ in range(rng.randint(*plies)):
            moves = legal_moves(pos)
            if not moves:
                break
            scored = []
            for m in moves:
                apply_move(pos, m)
                scored.append((-Searcher(pos, None, None, cfg).quiescence(), m))
                pos.pop()
            top = max(v for v, _ in scored)
            apply_move(pos, rng.choice([m for v, m in scored if v >= top - slack]))
        if legal_moves(pos):
            out.append(pos.fen())
    return out


@pytest.fixture
def start():
    return parse_fen(chess.STARTING_FEN)


@pytest.fixture(scope="session")
def fens50():
    return random_fens(50, seed=1234)


# one line per acceptance criterion, repeated at the end of the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def report(n: int, ok: bool, detail: str) -> bool:
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
