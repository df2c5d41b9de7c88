"""Long-term memory: twelve 64-cell weight tables plus the stored move paths.

Each stored path is the link structure between tables: move ``i`` lives in
the table of its (colour, piece) and points, through the path, at move
``i + 1`` in the next table.  Tables are never reset during a game.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (BLACK, PIECE_LETTERS, PIECE_TYPES, WHITE, Move, Position, legal_moves,
                   push_sequence, square_name)

BUCKETS = ("dark-blue", "light-blue", "green", "yellow", "orange", "red")
NOT_CONSIDERED = "not-considered"


def path_id(moves: Iterable[Move]) -> tuple:
    return tuple(m.key for m in moves)


def _encoding(moves: Sequence[Move]) -> tuple:
    return tuple((m.from_sq, m.to_sq, m.promotion or 0) for m in moves)


@dataclass
class TablePath:
    moves: tuple[Move, ...]
    weight: int = 0
    eval_sum: int = 0
    eval_count: int = 0
    last_update_move: int = 0

    @property
    def id(self) -> tuple:
        return path_id(self.moves)

    @property
    def avg_eval(self) -> float:
        return self.eval_sum / self.eval_count

    @property
    def first(self) -> Move:
        return self.moves[0]

    def __str__(self) -> str:
        moves = " ".join(m.display() for m in self.moves)
        return f"{moves} weight={self.weight} avg_eval={self.avg_eval:.2f} last={self.last_update_move}"


@dataclass
class ImportanceMap:
    weights: list[int]        # absolute accumulated weight per square
    buckets: list[str]

    def grid(self) -> str:
        short = {"red": "R", "orange": "O", "yellow": "Y", "green": "G",
                 "light-blue": "L", "dark-blue": "D", NOT_CONSIDERED: "."}
        rows = []
        for rank in range(7, -1, -1):
            rows.append(" ".join(short[self.buckets[rank * 8 + f]] for f in range(8)))
        return "\n".join(rows)


class MoveTableSet:
    """Weight tables for the 6 piece types x 2 colours, and their paths.

    Update magnitudes are unit steps.  ``floor`` is the removal floor for
    penalised paths (removed once weight <= floor).
    """

    def __init__(self, floor: int = 0):
        self.floor = floor
        self.tables: dict[tuple[bool, int], list[int]] = {
            (c, p): [0] * 64 for c in (WHITE, BLACK) for p in PIECE_TYPES}
        self.paths: dict[tuple, TablePath] = {}
        self._by_first: dict[int, set] = {}
        self._by_origin: dict[tuple, set] = {}

    def __len__(self) -> int:
        return len(self.paths)

    def table(self, color: bool, piece: int) -> list[int]:
        return self.tables[(color, piece)]

    # ------------------------------------------------------------ updates

    def _bump(self, moves: Sequence[Move], delta: int) -> None:
        tables = self.tables
        for m in moves:
            t = tables[(m.color, m.piece)]
            t[m.from_sq] += delta
            t[m.to_sq] += delta

    def _index(self, pid: tuple, path: TablePath) -> None:
        first = path.moves[0]
        self._by_first.setdefault(first.key, set()).add(pid)
        self._by_origin.setdefault((first.color, first.piece, first.from_sq), set()).add(pid)

    def _delete(self, pid: tuple) -> TablePath:
        path = self.paths.pop(pid)
        first = path.moves[0]
        bucket = self._by_first[first.key]
        bucket.discard(pid)
        if not bucket:
            del self._by_first[first.key]
        origin = (first.color, first.piece, first.from_sq)
        bucket = self._by_origin[origin]
        bucket.discard(pid)
        if not bucket:
            del self._by_origin[origin]
        return path

    def reinforce_path(self, moves: Sequence[Move], eval: int, move_no: int) -> TablePath:
        """Store/strengthen ``moves``; weaken the paths competing with it.

        Competitors are the other stored paths leaving the same square with
        the same piece of the same colour.
        """
        if not moves:
            raise ValueError("cannot reinforce an empty path")
        moves = tuple(moves)
        pid = path_id(moves)
        self._bump(moves, 1)
        first = moves[0]
        for other in self._by_origin.get((first.color, first.piece, first.from_sq), ()):
            if other != pid:
                sib = self.paths[other]
                sib.weight -= 1
                self._bump(sib.moves, -1)
        path = self.paths.get(pid)
        if path is None:
            path = self.paths[pid] = TablePath(moves)
            self._index(pid, path)
        path.weight += 1
        path.eval_sum += eval
        path.eval_count += 1
        path.last_update_move = move_no
        return path

    def penalize_path(self, pid) -> None:
        if isinstance(pid, TablePath):
            pid = pid.id
        path = self.paths.get(pid)
        if path is None:
            return
        path.weight -= 1
        self._bump(path.moves, -1)
        if path.weight <= self.floor:
            self._delete(pid)

    def tidy(self, current_move_no: int, move_range: int) -> int:
        """Drop paths last updated before ``current_move_no - move_range``.

        Each dropped path takes its remaining weight out of the tables.
        Returns the number removed.
        """
        if move_range < 1:
            raise ValueError("move_range must be >= 1")
        cutoff = current_move_no - move_range
        stale = [pid for pid, p in self.paths.items() if p.last_update_move < cutoff]
        for pid in stale:
            path = self._delete(pid)
            if path.weight:
                self._bump(path.moves, -path.weight)
        return len(stale)

    # ---------------------------------------------------------- retrieval

    def candidates(self, keys: Iterable[int], threshold: int) -> list[TablePath]:
        paths = self.paths
        out = []
        for k in keys:
            for pid in self._by_first.get(k, ()):
                p = paths[pid]
                if p.weight > threshold:
                    out.append(p)
        return out

    @staticmethod
    def rank(paths: list[TablePath], rank_by: str = "eval") -> list[TablePath]:
        if rank_by == "eval":
            key = lambda p: (-p.avg_eval, -p.weight, _encoding(p.moves))
        elif rank_by == "weight":
            key = lambda p: (-p.weight, -p.avg_eval, _encoding(p.moves))
        else:
            raise ValueError(f"unknown rank mode {rank_by!r}")
        return sorted(paths, key=key)

    def select(self, pos: Position, keys: Iterable[int], beam_x: int,
               threshold: int = 0, rank_by: str = "eval") -> list[TablePath]:
        """Top ``beam_x`` paths above ``threshold`` that are fully legal in ``pos``."""
        if beam_x <= 0 or not self.paths:
            return []
        out = []
        for p in self.rank(self.candidates(keys, threshold), rank_by):
            n = push_sequence(pos, p.moves)
            for _ in range(n):
                pos.pop()
            if n == len(p.moves):
                out.append(p)
                if len(out) == beam_x:
                    break
        return out

    def get_paths(self, pos: Position, beam_x: int, threshold: int = 0,
                  rank_by: str = "eval") -> list[TablePath]:
        if beam_x < 0:
            raise ValueError("beam_x must be >= 0")
        keys = {m.key for m in legal_moves(pos)}
        return self.select(pos, keys, beam_x, threshold, rank_by)

    # ----------------------------------------------------------- analysis

    def best_squares(self, color: bool, piece: int) -> set[int]:
        t = self.tables[(color, piece)]
        top = max(t)
        if top <= 0:
            return set()
        return {sq for sq, w in enumerate(t) if w == top}

    def importance_map(self, color: bool, piece: int) -> ImportanceMap:
        absw = [abs(w) for w in self.tables[(color, piece)]]
        top = max(absw)
        buckets = []
        for a in absw:
            if a == 0:
                buckets.append(NOT_CONSIDERED)
            else:
                # six equal-width bands over [1, top]; top always lands in red
                buckets.append(BUCKETS[min(5, (a - 1) * 6 // (top - 1))] if top > 1 else BUCKETS[5])
        return ImportanceMap(absw, buckets)

    # -------------------------------------------------------------- dumps

    def table_csv(self, color: bool, piece: int) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["square", "weight"])
        for sq, v in enumerate(self.tables[(color, piece)]):
            w.writerow([square_name(sq), v])
        return buf.getvalue()

    def importance_csv(self, color: bool, piece: int) -> str:
        imp = self.importance_map(color, piece)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["square", "abs_weight", "bucket"])
        for sq in range(64):
            w.writerow([square_name(sq), imp.weights[sq], imp.buckets[sq]])
        return buf.getvalue()

    def paths_dump(self) -> str:
        return "\n".join(str(p) for p in self.paths.values())


def table_name(color: bool, piece: int) -> str:
    return ("W" if color else "B") + PIECE_LETTERS[piece]
