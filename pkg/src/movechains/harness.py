"""Benchmarks over recorded games, self-play matches and move-table dumps.

Game record file: first non-comment line is a FEN (or ``startpos``), the
rest are whitespace-separated long-algebraic moves (``e2e4``, ``e7e8q``).
``# key: value`` lines carry metadata.

Frozen CSV columns:

* bench rows: ``BENCH_ROW_COLUMNS``
* bench aggregates: ``BENCH_SUMMARY_COLUMNS``
* match results: ``MATCH_COLUMNS``
"""
from __future__ import annotations

import csv
import io
import logging
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from statistics import fmean
from typing import Sequence

from .chains import ChainStore
from .core import (BLACK, PIECE_TYPES, START_FEN, WHITE, IllegalMoveError, Move, Position,
                   apply_move, code_of, in_check, legal_moves, parse_fen, parse_uci,
                   serialize_fen, square_name)
from .search import NoLegalMoves, SearchConfig, TranspositionTable, search_root
from .tables import MoveTableSet, table_name

log = logging.getLogger(__name__)

BENCH_ROW_COLUMNS = ("position", "config", "negamax_nodes", "quiescence_nodes", "chain_hits",
                     "chain_failures", "table_paths_tried", "table_paths_rejected",
                     "table_usage_fraction", "value", "best_move")
BENCH_SUMMARY_COLUMNS = ("config", "positions", "mean_negamax_nodes", "mean_quiescence_nodes",
                         "times_less", "mean_table_usage_fraction")
MATCH_COLUMNS = ("game", "white", "black", "result", "reason", "plies", "opening")

REFERENCE = "standard"


# ------------------------------------------------------------ game records

@dataclass
class GameRecord:
    fen: str = START_FEN
    moves: list[Move] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)

    def positions(self) -> list[Position]:
        """Position before each move (so one per move)."""
        pos = parse_fen(self.fen)
        out = []
        for i, mv in enumerate(self.moves):
            out.append(pos.copy())
            if code_of(pos, mv) < 0:
                raise IllegalMoveError(f"record move {i} ({mv.uci()}) is illegal")
            apply_move(pos, mv)
        return out

    def to_text(self) -> str:
        lines = [f"# {k}: {v}" for k, v in self.metadata.items()]
        lines.append(self.fen)
        ucis = [m.uci() for m in self.moves]
        lines += [" ".join(ucis[i:i + 16]) for i in range(0, len(ucis), 16)]
        return "\n".join(lines) + "\n"


def parse_game(text: str) -> GameRecord:
    meta: dict[str, str] = {}
    body: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            k, _, v = line[1:].partition(":")
            meta[k.strip()] = v.strip()
        else:
            body.append(line)
    if not body:
        raise ValueError("game record has no position line")
    fen = START_FEN if body[0] == "startpos" else body[0]
    pos = parse_fen(fen)
    moves = []
    for i, tok in enumerate(" ".join(body[1:]).split()):
        try:
            mv = parse_uci(pos, tok)
        except ValueError as e:
            raise IllegalMoveError(f"record move {i} ({tok}): {e}") from None
        apply_move(pos, mv)
        moves.append(mv)
    return GameRecord(fen, moves, meta)


def load_game(path: str | Path) -> GameRecord:
    return parse_game(Path(path).read_text())


def bundled_game() -> GameRecord:
    """The shipped benchmark game (self-play stand-in, 98 positions)."""
    return parse_game(resources.files("movechains.data").joinpath("bench_game.txt").read_text())


def load_openings(path: str | Path | None = None) -> list[list[str]]:
    """One opening per line as long-algebraic moves; ``#`` starts a comment."""
    if path is None:
        text = resources.files("movechains.data").joinpath("openings.txt").read_text()
    else:
        text = Path(path).read_text()
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    if not out:
        raise ValueError("no openings found")
    return out


# ----------------------------------------------------------------- configs

_BOOL = {"on": True, "off": False, "true": True, "false": False, "1": True, "0": False,
         "yes": True, "no": False}
_ALIASES = {"chains": "use_chains", "tables": "use_tables", "tt": "use_transposition_table",
            "beam": "beam_x", "window": "reliability_window", "depth": "max_depth",
            "threshold": "threshold", "range": "move_range", "rank": "rank_by",
            "rank_by": "rank_by", "chains_on": "chains_on", "table_search": "table_search", "persist": "persist_chains",
            "persist_chains": "persist_chains", "aspiration": "aspiration",
            "qcap": "quiescence_cap", "name": "name", "time": "time_limit"}
PRESETS = {
    "standard": dict(use_chains=False, use_tables=False, beam_x=0),
    "standard+tt": dict(use_chains=False, use_tables=False, beam_x=0, use_transposition_table=True),
    "chains": dict(use_chains=True, use_tables=False, beam_x=0),
    "beam1": dict(use_chains=True, use_tables=True, beam_x=1),
    "beam2": dict(use_chains=True, use_tables=True, beam_x=2),
    "beam4": dict(use_chains=True, use_tables=True, beam_x=4),
}


def parse_config(spec: str, **defaults) -> SearchConfig:
    """``standard``, ``beam4`` or ``chains=on,tables=on,beam=4,window=50``.

    A preset name may lead a key=value list: ``beam4,window=80``.
    """
    kw = dict(defaults)
    parts = [p.strip() for p in spec.split(",") if p.strip()]
    name = None
    for part in parts:
        if "=" not in part:
            if part not in PRESETS:
                raise ValueError(f"unknown config preset {part!r}")
            kw.update(PRESETS[part])
            name = name or part
            continue
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in _ALIASES:
            raise ValueError(f"unknown config key {k!r}")
        attr = _ALIASES[k]
        if attr.startswith("use_") or attr == "persist_chains":
            if v.lower() not in _BOOL:
                raise ValueError(f"{k} expects on/off, got {v!r}")
            kw[attr] = _BOOL[v.lower()]
        elif attr in ("rank_by", "chains_on", "table_search", "name"):
            kw[attr] = v
        else:
            kw[attr] = int(v)
    if not kw.get("use_tables", True):
        kw.setdefault("beam_x", 0)
    kw.setdefault("name", name or spec)
    return SearchConfig(**kw)


# ------------------------------------------------------------------ bench

@dataclass
class BenchReport:
    rows: list[dict]
    reference: str = REFERENCE

    def configs(self) -> list[str]:
        return list(dict.fromkeys(r["config"] for r in self.rows))

    def mean(self, config: str, column: str = "negamax_nodes") -> float:
        return fmean(r[column] for r in self.rows if r["config"] == config)

    def summary(self) -> list[dict]:
        ref = self.mean(self.reference) if self.reference in self.configs() else None
        out = []
        for c in self.configs():
            m = self.mean(c)
            out.append({
                "config": c,
                "positions": sum(r["config"] == c for r in self.rows),
                "mean_negamax_nodes": m,
                "mean_quiescence_nodes": self.mean(c, "quiescence_nodes"),
                "times_less": (ref / m if m else float("inf")) if ref is not None else "",
                "mean_table_usage_fraction": self.mean(c, "table_usage_fraction"),
            })
        return out

    def rows_csv(self) -> str:
        return _csv(BENCH_ROW_COLUMNS, self.rows)

    def summary_csv(self) -> str:
        return _csv(BENCH_SUMMARY_COLUMNS, self.summary())


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: (f"{v:.4f}" if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def bench(record: GameRecord, depth: int, configs: Sequence[SearchConfig],
          reset_per_position: bool = False, progress=None) -> BenchReport:
    """Search every record position at ``depth`` under each config.

    Stores are fresh per config and carried across the game's positions
    unless ``reset_per_position``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    positions = record.positions()
    rows = []
    for cfg in configs:
        cfg = cfg.with_(max_depth=depth, time_limit=None)
        chains = ChainStore(max_length=cfg.max_chain_length)
        tables = MoveTableSet()
        tt = TranspositionTable(cfg.tt_size) if cfg.use_transposition_table else None
        for i, pos in enumerate(positions):
            if reset_per_position:
                chains, tables = ChainStore(max_length=cfg.max_chain_length), MoveTableSet()
                tt = TranspositionTable(cfg.tt_size) if tt is not None else None
            r = search_root(pos, chains, tables, cfg, tt)
            s = r.stats
            rows.append({
                "position": i, "config": cfg.name,
                "negamax_nodes": s.negamax_nodes, "quiescence_nodes": s.quiescence_nodes,
                "chain_hits": s.chain_hits, "chain_failures": s.chain_failures,
                "table_paths_tried": s.table_paths_tried,
                "table_paths_rejected": s.table_paths_rejected,
                "table_usage_fraction": s.table_usage_fraction,
                "value": r.value, "best_move": r.best_move.uci(),
            })
            if progress:
                progress(rows[-1])
    return BenchReport(rows)


# ------------------------------------------------------------------ match

class Engine:
    """One player: a config plus the stores it keeps for a whole game."""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.new_game()

    def new_game(self) -> None:
        self.chains = ChainStore(max_length=self.cfg.max_chain_length)
        self.tables = MoveTableSet()
        self.tt = TranspositionTable(self.cfg.tt_size) if self.cfg.use_transposition_table else None

    def think(self, pos: Position, budget_ms: int | None):
        cfg = self.cfg if budget_ms is None else self.cfg.with_(time_limit=max(1, budget_ms))
        return search_root(pos, self.chains, self.tables, cfg, self.tt)


@dataclass
class GameResult:
    white: str
    black: str
    result: str                  # "1-0", "0-1", "1/2-1/2"
    reason: str
    moves: list[Move]
    opening: list[str]
    fen: str = START_FEN
    illegal: bool = False

    def pgn(self, index: int = 1) -> str:
        pos = parse_fen(self.fen)
        parts = []
        for i, mv in enumerate(self.moves):
            if pos.turn == WHITE:
                parts.append(f"{pos.fullmove_number}.")
            parts.append(mv.uci())
            apply_move(pos, mv)
        head = [f'[Round "{index}"]', f'[White "{self.white}"]', f'[Black "{self.black}"]',
                f'[Result "{self.result}"]', f'[Termination "{self.reason}"]']
        if self.fen != START_FEN:
            head.append(f'[FEN "{self.fen}"]')
        return "\n".join(head) + "\n\n" + " ".join(parts + [self.result]) + "\n"


def play_game(white: Engine, black: Engine, time_per_game: int, opening: Sequence[str] = (),
              fen: str = START_FEN, max_plies: int = 600) -> GameResult:
    """One game; each side's per-move budget is its remaining time / 30."""
    pos = parse_fen(fen)
    white.new_game()
    black.new_game()
    moves: list[Move] = []
    for tok in opening:
        mv = parse_uci(pos, tok)
        apply_move(pos, mv)
        moves.append(mv)
    clock = {WHITE: float(time_per_game), BLACK: float(time_per_game)}
    seen: dict[bytes, int] = {}
    names = (white.cfg.name, black.cfg.name)

    def done(result, reason, illegal=False):
        return GameResult(names[0], names[1], result, reason, moves, list(opening), fen, illegal)

    while True:
        key = pos.key()
        seen[key] = seen.get(key, 0) + 1
        if not legal_moves(pos):
            if in_check(pos):
                return done("0-1" if pos.turn == WHITE else "1-0", "checkmate")
            return done("1/2-1/2", "stalemate")
        if seen[key] >= 3:
            return done("1/2-1/2", "repetition")
        if pos.halfmove_clock >= 100:
            return done("1/2-1/2", "fifty-move")
        if _insufficient(pos):
            return done("1/2-1/2", "insufficient-material")
        if len(moves) >= max_plies:
            return done("1/2-1/2", "move-limit")
        side = pos.turn
        engine = white if side == WHITE else black
        budget = int(clock[side] / 30)
        t0 = time.perf_counter()
        try:
            r = engine.think(pos, budget)
        except NoLegalMoves:           # covered above; kept as a guard
            return done("1/2-1/2", "no-moves")
        clock[side] -= (time.perf_counter() - t0) * 1000
        if clock[side] <= 0:
            return done("0-1" if side == WHITE else "1-0", "time-forfeit")
        mv = r.best_move
        if code_of(pos, mv) < 0:
            log.error("illegal move %s from %s in %s", mv.uci(), engine.cfg.name, serialize_fen(pos))
            return done("0-1" if side == WHITE else "1-0", "illegal-move", illegal=True)
        apply_move(pos, mv)
        moves.append(mv)


def _insufficient(pos: Position) -> bool:
    minors = 0
    for sq in range(64):
        p = pos.piece_at(sq)
        if p is None or p[1] == 6:
            continue
        if p[1] in (1, 4, 5):
            return False
        minors += 1
    return minors <= 1


@dataclass
class MatchReport:
    games: list[GameResult]

    def score(self, name: str) -> float:
        total = 0.0
        for g in self.games:
            pts = {"1-0": (1.0, 0.0), "0-1": (0.0, 1.0), "1/2-1/2": (0.5, 0.5)}[g.result]
            if g.white == name:
                total += pts[0]
            if g.black == name:
                total += pts[1]
        return total

    @property
    def illegal_moves(self) -> int:
        return sum(g.illegal for g in self.games)

    def table_csv(self) -> str:
        rows = [{"game": i + 1, "white": g.white, "black": g.black, "result": g.result,
                 "reason": g.reason, "plies": len(g.moves), "opening": " ".join(g.opening)}
                for i, g in enumerate(self.games)]
        return _csv(MATCH_COLUMNS, rows)

    def pgn(self) -> str:
        return "\n".join(g.pgn(i + 1) for i, g in enumerate(self.games))


def run_match(cfg_a: SearchConfig, cfg_b: SearchConfig, games: int, time_per_game: int,
              openings: Sequence[Sequence[str]], progress=None) -> MatchReport:
    """Colours alternate (A is White in odd games); openings cycle in order."""
    if games < 1:
        raise ValueError("games must be >= 1")
    if not openings:
        raise ValueError("openings must be non-empty")
    if cfg_a.name == cfg_b.name:
        cfg_a, cfg_b = cfg_a.with_(name=cfg_a.name + "#A"), cfg_b.with_(name=cfg_b.name + "#B")
    a, b = Engine(cfg_a), Engine(cfg_b)
    out = []
    for g in range(games):
        white, black = (a, b) if g % 2 == 0 else (b, a)
        res = play_game(white, black, time_per_game, openings[(g // 2) % len(openings)])
        out.append(res)
        if progress:
            progress(g, res)
    return MatchReport(out)


# ------------------------------------------------------------------ dumps

def dump_tables(tables: MoveTableSet, out_dir: str | Path) -> list[Path]:
    """Per-piece weight CSVs, importance maps, best squares and the path list."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    best_rows = []
    for color in (WHITE, BLACK):
        for piece in PIECE_TYPES:
            name = table_name(color, piece)
            p = out / f"table_{name}.csv"
            p.write_text(tables.table_csv(color, piece))
            q = out / f"importance_{name}.csv"
            q.write_text(tables.importance_csv(color, piece))
            g = out / f"importance_{name}.txt"
            g.write_text(tables.importance_map(color, piece).grid() + "\n")
            written += [p, q, g]
            best = sorted(tables.best_squares(color, piece))
            best_rows.append({"table": name, "best_squares": " ".join(square_name(s) for s in best)})
    p = out / "best_squares.csv"
    p.write_text(_csv(("table", "best_squares"), best_rows))
    q = out / "paths.txt"
    q.write_text(tables.paths_dump() + "\n" if len(tables) else "")
    return written + [p, q]
