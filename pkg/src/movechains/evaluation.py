"""Static evaluation built on square control.

Control formula: every piece adds its control weight to each square it
attacks (pawn 5, knight 3, bishop 3, rook 2, queen 1, king 1 -- cheaper
attackers weigh more; sliders stop at the first occupied square, which
they do attack).  ``net[sq] = white[sq] - black[sq]``.

``evaluate`` = material (P100 N320 B330 R500 Q900) + clamp(sum(net), +-150),
seen from the side to move.

Safety, used by ordering and quiescence:

* a capture is *safe* when victim value minus (mover value if the enemy
  attacks the target square) is >= 0;
* a piece is *en prise* when attacked by a cheaper enemy piece, or
  attacked and not defended;
* a destination is *safe* for a piece when the enemy does not attack it,
  or attacks it only with pieces worth at least as much and we defend it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernel as K
from .core import (BISHOP, KING, KNIGHT, PAWN, QUEEN, ROOK, Move, Position, code_of,
                   decode)

PIECE_VALUES = {PAWN: 100, KNIGHT: 320, BISHOP: 330, ROOK: 500, QUEEN: 900, KING: 0}
CONTROL_WEIGHTS = {PAWN: 5, KNIGHT: 3, BISHOP: 3, ROOK: 2, QUEEN: 1, KING: 1}
CONTROL_CAP = K.CONTROL_CAP


@dataclass(frozen=True)
class ControlMap:
    white: tuple[int, ...]
    black: tuple[int, ...]
    white_min: tuple[int, ...]     # cheapest white attacker value, K.NO_ATTACKER if none
    black_min: tuple[int, ...]

    @property
    def net(self) -> tuple[int, ...]:
        return tuple(w - b for w, b in zip(self.white, self.black))

    def grid(self) -> str:
        """8x8 signed net-control grid, rank 8 on top."""
        net = self.net
        return "\n".join(" ".join(f"{net[r * 8 + f]:4d}" for f in range(8))
                         for r in range(7, -1, -1))


class Scratch:
    """Reusable kernel buffers for one search session."""

    def __init__(self, plies: int = 16):
        self.acc = np.zeros((2, 64), dtype=np.int64)
        self.cheapest = np.zeros((2, 64), dtype=np.int64)
        self.keys = np.zeros(K.MAX_MOVES, dtype=np.int64)
        self.tmp = np.zeros(K.MAX_MOVES, dtype=np.int64)
        self.bufs = np.zeros((plies, K.MAX_MOVES), dtype=np.int64)
        self.counter = np.zeros(1, dtype=np.int64)


def square_control(pos: Position) -> ControlMap:
    acc = np.zeros((2, 64), dtype=np.int64)
    cheapest = np.zeros((2, 64), dtype=np.int64)
    K.control(pos.a, acc, cheapest)
    return ControlMap(tuple(acc[0].tolist()), tuple(acc[1].tolist()),
                      tuple(cheapest[0].tolist()), tuple(cheapest[1].tolist()))


def white_score(pos: Position) -> int:
    return int(K.white_score(pos.a))


def evaluate(pos: Position) -> int:
    """Centipawns for the side to move (negamax convention)."""
    return int(K.evaluate(pos.a))


def order_codes(pos: Position, codes: np.ndarray, scratch: Scratch | None = None) -> np.ndarray:
    s = scratch or Scratch(1)
    codes = np.array(codes, dtype=np.int64)
    K.control(pos.a, s.acc, s.cheapest)
    K.order(pos.a, codes, len(codes), s.acc, s.keys, s.tmp)
    return codes


def order_moves(pos: Position, moves: Iterable[Move]) -> list[Move]:
    """Non-losing captures (largest gain first) and promotions, then quiet
    moves onto squares the mover controls, then the rest; ties by
    (from, to, promotion)."""
    moves = list(moves)
    if len(moves) < 2:
        return moves
    codes = np.array([code_of(pos, m) for m in moves], dtype=np.int64)
    if np.any(codes < 0):
        raise ValueError("order_moves expects legal moves")
    by_code = {int(c): m for c, m in zip(codes, moves)}
    return [by_code[int(c)] for c in order_codes(pos, codes)]


def quiescence_codes(pos: Position, checks: bool = True) -> np.ndarray:
    s = Scratch(1)
    moves = s.bufs[0]
    n = K.gen_legal(pos.a, pos.st, moves)
    K.control(pos.a, s.acc, s.cheapest)
    n = K.classify_quiescence(pos.a, pos.st, moves, n, s.acc, s.cheapest, checks)
    return moves[:n].copy()


def quiescence_moves(pos: Position, checks: bool = True) -> list[Move]:
    """Safe captures, safe queen promotions, safe retreats of en-prise
    pieces and checking moves.  In check, every legal evasion."""
    return [decode(pos, c) for c in quiescence_codes(pos, checks)]
