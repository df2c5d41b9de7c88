"""Negamax alpha-beta with move-table paths and dynamic move chains.

Per interior node:

1. the top ``beam_x`` legal table paths are replayed (at most the remaining
   depth) and finished with quiescence.  A replay whose value strays more
   than ``reliability_window`` from the path's averaged evaluation is
   penalised and its first move goes back to the move list for a full
   search; otherwise the value competes for the node's best value;
2. remaining moves are visited in order.  A move with a stored chain is
   answered by replaying the chain (same reliability test; failed chains
   are invalidated and the move searched normally); other moves get the
   ordinary recursive search;
3. each time the best value raises alpha, the current best line reinforces
   the move tables and is recorded as a chain; beta cut-offs record the
   refuting line as a chain.

With chains and tables switched off this is a textbook fail-soft alpha-beta.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, fields, replace

import numpy as np

from . import _kernel as K
from .chains import ChainStore
from .core import Move, Position, decode, push_sequence
from .evaluation import Scratch
from .tables import MoveTableSet

INF = K.INF
MATE = K.MATE
MATE_BOUND = MATE - 1000
MAX_PLY = 64


class NoLegalMoves(Exception):
    """Root position is checkmate or stalemate."""


class SearchTimeout(Exception):
    pass


@dataclass
class SearchConfig:
    max_depth: int = 5
    beam_x: int = 4
    reliability_window: int = 50
    use_chains: bool = True
    use_tables: bool = True
    use_transposition_table: bool = False
    threshold: int = 0
    move_range: int = 10
    rank_by: str = "eval"
    time_limit: int | None = None      # milliseconds
    chains_on: str = "window"          # or "cutoff"
    table_search: str = "replay"       # or "search": table moves get a full search
    persist_chains: bool = False
    aspiration: int = 25
    quiescence_cap: int = 8
    quiescence_check_plies: int = 1     # quiescence plies that may add checking moves
    max_chain_length: int = 8
    tt_size: int = 1 << 18
    name: str = ""

    def __post_init__(self):
        if self.max_depth < 1 or self.max_depth >= MAX_PLY:
            raise ValueError(f"max_depth must be in 1..{MAX_PLY - 1}")
        if self.beam_x < 0:
            raise ValueError("beam_x must be >= 0")
        if self.reliability_window < 0:
            raise ValueError("reliability_window must be >= 0")
        if self.chains_on not in ("window", "cutoff"):
            raise ValueError("chains_on must be 'window' or 'cutoff'")
        if self.table_search not in ("replay", "search"):
            raise ValueError("table_search must be 'replay' or 'search'")
        if self.rank_by not in ("eval", "weight"):
            raise ValueError("rank_by must be 'eval' or 'weight'")
        if self.move_range < 1:
            raise ValueError("move_range must be >= 1")
        if self.quiescence_cap < 0:
            raise ValueError("quiescence_cap must be >= 0")

    def with_(self, **kw) -> "SearchConfig":
        return replace(self, **kw)

    @classmethod
    def standard(cls, **kw) -> "SearchConfig":
        kw.setdefault("name", "standard")
        return cls(use_chains=False, use_tables=False, beam_x=0, **kw)


@dataclass
class SearchStats:
    negamax_nodes: int = 0
    quiescence_nodes: int = 0
    chain_hits: int = 0
    chain_failures: int = 0
    table_paths_tried: int = 0
    table_paths_rejected: int = 0
    table_nodes: int = 0       # interior nodes where at least one table path was tried
    replay_plies: int = 0
    tt_hits: int = 0
    depth_reached: int = 0

    @property
    def table_usage_fraction(self) -> float:
        return self.table_nodes / self.negamax_nodes if self.negamax_nodes else 0.0

    def as_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["table_usage_fraction"] = self.table_usage_fraction
        return d


@dataclass
class SearchResult:
    best_move: Move
    value: int
    principal_path: list[Move]
    stats: SearchStats


# ------------------------------------------------------------------ TT

EXACT, LOWER, UPPER = 0, 1, 2


class TranspositionTable:
    """Fixed-size depth-preferred position cache, verified on the full key.

    Entries are (key, depth, flag, value, line); mate values are stored
    relative to the node.
    """

    def __init__(self, size: int = 1 << 18):
        self.size = size
        self.slots: list[tuple | None] = [None] * size

    def lookup(self, pos: Position, depth: int, key: bytes | None = None):
        e = self.slots[pos.hash % self.size]
        if e is None or e[1] < depth or e[0] != (key or pos.key()):
            return None
        return e

    def store(self, pos: Position, depth: int, flag: int, value: int, line: list,
              key: bytes | None = None) -> None:
        i = pos.hash % self.size
        key = key or pos.key()
        e = self.slots[i]
        if e is None or e[0] == key or depth >= e[1]:
            self.slots[i] = (key, depth, flag, value, line)

    def clear(self) -> None:
        self.slots = [None] * self.size


def _to_tt(v: int, ply: int) -> int:
    if v > MATE_BOUND:
        return v + ply
    if v < -MATE_BOUND:
        return v - ply
    return v


def _from_tt(v: int, ply: int) -> int:
    if v > MATE_BOUND:
        return v - ply
    if v < -MATE_BOUND:
        return v + ply
    return v


# -------------------------------------------------------------- search

class Searcher:
    """One search session: owns its position handle, stores and statistics."""

    def __init__(self, pos: Position, chains: ChainStore | None, tables: MoveTableSet | None,
                 cfg: SearchConfig, tt: TranspositionTable | None = None, trace: bool = False):
        self.pos = pos.copy()
        self.cfg = cfg
        self.chains = chains if chains is not None else ChainStore(max_length=cfg.max_chain_length)
        self.tables = tables if tables is not None else MoveTableSet()
        if cfg.use_transposition_table and tt is None:
            tt = TranspositionTable(cfg.tt_size)
        self.tt = tt if cfg.use_transposition_table else None
        self.stats = SearchStats()
        self.events: list[str] | None = [] if trace else None
        self.deadline: float | None = None
        self.move_no = pos.fullmove_number
        self._ticks = 0
        self._s = Scratch(cfg.quiescence_cap + 2)
        self._moves = np.zeros((MAX_PLY, K.MAX_MOVES), dtype=np.int64)
        self._keys = np.zeros((MAX_PLY, K.MAX_MOVES), dtype=np.int64)

    # ---------------------------------------------------------- helpers

    def _log(self, kind: str, ply: int, move, *values) -> None:
        text = move.display() if isinstance(move, Move) else str(move)
        self.events.append(" ".join([kind, f"ply={ply}", text, *map(str, values)]))

    def _quiesce(self, alpha: int, beta: int, ply: int) -> int:
        s = self._s
        return int(K.quiesce(self.pos.a, self.pos.st, alpha, beta, ply, 0, self.cfg.quiescence_cap,
                             self.cfg.quiescence_check_plies, s.bufs, s.acc, s.cheapest,
                             s.keys, s.tmp, s.counter))

    def quiescence(self, alpha: int = -INF, beta: int = INF) -> int:
        """Quiescence value of the session position, side-to-move view."""
        return self._quiesce(alpha, beta, 0)

    def path_then_quiescence(self, moves, depth: int, ply: int = 0, alpha: int = -INF, beta: int = INF):
        """Replay up to ``depth`` plies of ``moves`` and resolve with quiescence.

        Returns (value for the side to move here, replayed moves), or
        (None, []) when the path is not legal here.
        """
        moves = moves[:depth]
        pos = self.pos
        n = push_sequence(pos, moves)
        if n < len(moves):
            for _ in range(n):
                pos.pop()
            return None, []
        self.stats.replay_plies += n
        try:
            if n % 2:
                alpha, beta = -beta, -alpha
            v = self._quiesce(alpha, beta, ply + n)
        finally:
            for _ in range(n):
                pos.pop()
        return (v if n % 2 == 0 else -v), list(moves)

    def _store(self, line, value: int, depth: int, ply: int) -> None:
        # alpha moved: reinforce tables; chains too in "window" mode
        if self.cfg.use_tables:
            self.tables.reinforce_path(line, value, self.move_no)
        if self.cfg.use_chains and self.cfg.chains_on == "window":
            self.chains.record_cutoff(line, value, depth)
            if self.events is not None:
                self._log("CHAIN_STORE", ply, line[0], "alpha", value)

    def _cutoff(self, line, value: int, depth: int, ply: int) -> None:
        if self.events is not None:
            self._log("CUTOFF", ply, line[0], value)
        if self.cfg.use_chains and self.cfg.chains_on == "cutoff":
            self.chains.record_cutoff(line, value, depth)
            if self.events is not None:
                self._log("CHAIN_STORE", ply, line[0], "cutoff", value)

    # ---------------------------------------------------------- negamax

    def negamax(self, depth: int, alpha: int, beta: int, ply: int = 0):
        """(value, best line) of the current position, side-to-move view."""
        pos = self.pos
        if depth <= 0:
            return self._quiesce(alpha, beta, ply), []
        st = self.stats
        cfg = self.cfg
        st.negamax_nodes += 1
        self._ticks += 1
        if self.deadline is not None and not self._ticks & 63 and time.perf_counter() > self.deadline:
            raise SearchTimeout

        a, stack = pos.a, pos.st
        s = self._s
        buf = self._moves[ply]
        kbuf = self._keys[ply]
        n = K.node_moves(a, stack, buf, kbuf, s.acc, s.cheapest, s.keys, s.tmp)
        if n == 0:
            return (-(MATE - ply) if K.in_check(a) else 0), []
        codes = buf[:n].tolist()
        keys = kbuf[:n].tolist()

        tt = self.tt
        alpha0 = alpha
        if tt is not None and ply > 0:
            tkey = pos.key()
            e = tt.lookup(pos, 0, tkey)
            if e is not None:
                if e[1] >= depth:
                    v = _from_tt(e[3], ply)
                    flag = e[2]
                    if flag == EXACT or (flag == LOWER and v >= beta) or (flag == UPPER and v <= alpha):
                        st.tt_hits += 1
                        return v, list(e[4])
                if e[4]:
                    k0 = e[4][0].key
                    if k0 in keys:
                        i = keys.index(k0)
                        codes.insert(0, codes.pop(i))
                        keys.insert(0, keys.pop(i))

        best, best_line = -INF, []
        skip: set[int] = set()
        full: set[int] = set()
        window = cfg.reliability_window
        events = self.events

        if cfg.use_tables and cfg.beam_x > 0:
            paths = self.tables.select(pos, keys, cfg.beam_x, cfg.threshold, cfg.rank_by)
            if paths:
                st.table_nodes += 1
                index = {k: i for i, k in enumerate(keys)}
                for path in paths:
                    i = index[path.moves[0].key]
                    st.table_paths_tried += 1
                    stored = path.avg_eval
                    if cfg.table_search == "search":
                        if i in skip:
                            continue
                        skip.add(i)
                        code = codes[i]
                        K.make(a, stack, code)
                        try:
                            cv, cline = self.negamax(depth - 1, -beta, -max(alpha, best), ply + 1)
                        finally:
                            K.unmake(a, stack)
                        v, line = -cv, [decode(pos, code)] + cline
                        if abs(v - stored) > window:
                            st.table_paths_rejected += 1
                            self.tables.penalize_path(path.id)
                        if v > best:
                            best, best_line = v, line
                        continue
                    v, line = self.path_then_quiescence(path.moves, depth, ply, alpha, beta)
                    if v is None or abs(v - stored) > window:
                        st.table_paths_rejected += 1
                        self.tables.penalize_path(path.id)
                        full.add(i)
                        if events is not None:
                            self._log("PATH_REJECT", ply, path.moves[0], stored, v)
                        continue
                    skip.add(i)
                    if events is not None:
                        self._log("PATH_TRY", ply, path.moves[0], stored, v)
                    if v > best:
                        best, best_line = v, line
                if best > alpha:
                    alpha = best
                    self._store(best_line, best, depth, ply)
                    if alpha >= beta:
                        self._cutoff(best_line, best, depth, ply)
                        if tt is not None and ply > 0:
                            tt.store(pos, depth, LOWER, _to_tt(best, ply), best_line, tkey)
                        return best, best_line

        use_chains = cfg.use_chains
        chains = self.chains
        for i in range(n):
            if i in skip and i not in full:
                continue
            v = None
            if use_chains and i not in full:
                chain = chains.get_chain(keys[i])
                if chain is not None:
                    v, line = self.path_then_quiescence(chain.moves, depth, ply, alpha, beta)
                    if v is None or abs(v - chain.eval) > window:
                        st.chain_failures += 1
                        chains.invalidate(keys[i])
                        if events is not None:
                            self._log("CHAIN_FAIL", ply, chain.moves[0], chain.eval, v)
                        v = None
                    else:
                        st.chain_hits += 1
                        if events is not None:
                            self._log("CHAIN_HIT", ply, chain.moves[0], chain.eval, v)
            if v is None:
                code = codes[i]
                K.make(a, stack, code)
                try:
                    cv, cline = self.negamax(depth - 1, -beta, -alpha, ply + 1)
                finally:
                    K.unmake(a, stack)
                v = -cv
                if v > best:
                    line = [decode(pos, code)] + cline
            if v > best:
                best, best_line = v, line
                if best > alpha:
                    alpha = best
                    self._store(best_line, best, depth, ply)
                    if alpha >= beta:
                        self._cutoff(best_line, best, depth, ply)
                        break

        if tt is not None and ply > 0:
            flag = UPPER if best <= alpha0 else LOWER if best >= beta else EXACT
            tt.store(pos, depth, flag, _to_tt(best, ply), best_line, tkey)
        return best, best_line

    # ------------------------------------------------------------ root

    def search(self) -> SearchResult:
        pos = self.pos
        cfg = self.cfg
        if not K.has_legal(pos.a, pos.st, self._moves[0]):
            raise NoLegalMoves(pos.fen())
        if not cfg.persist_chains:
            self.chains.clear()
        if cfg.use_tables:
            self.tables.tidy(pos.fullmove_number, cfg.move_range)
        start = time.perf_counter()
        result = None
        value = 0
        try:
            for depth in range(1, cfg.max_depth + 1):
                if depth > 1 and cfg.time_limit is not None:
                    self.deadline = start + cfg.time_limit / 1000.0
                try:
                    if depth == 1:
                        value, line = self.negamax(depth, -INF, INF)
                    else:
                        a, b = value - cfg.aspiration, value + cfg.aspiration
                        value, line = self.negamax(depth, a, b)
                        if value <= a or value >= b:
                            value, line = self.negamax(depth, -INF, INF)
                except SearchTimeout:
                    break
                self.stats.depth_reached = depth
                result = (value, line)
                if cfg.time_limit is not None and (time.perf_counter() - start) * 1000 > cfg.time_limit / 2:
                    break
        finally:
            self.deadline = None
            self.stats.quiescence_nodes = int(self._s.counter[0])
        value, line = result
        return SearchResult(line[0], value, line, self.stats)


def search_root(pos: Position, chains: ChainStore | None = None,
                tables: MoveTableSet | None = None, cfg: SearchConfig | None = None,
                tt: TranspositionTable | None = None, trace: bool = False) -> SearchResult:
    """Iterative deepening from depth 1 with an aspiration window around
    the previous iteration's value (full-window re-search on failure)."""
    return Searcher(pos, chains, tables, cfg or SearchConfig(), tt, trace).search()
