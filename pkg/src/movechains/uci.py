"""Minimal UCI-style text loop.

Understands ``uci``, ``isready``, ``ucinewgame``, ``position``, ``go``,
``setoption`` and ``quit``.  Anything else is ignored with a warning on
stderr.  Chains and tables live for the whole session (one game).
"""
from __future__ import annotations

import sys
from dataclasses import fields
from typing import IO

from .chains import ChainStore
from .core import START_FEN, FenError, apply_move, parse_fen, parse_uci
from .search import NoLegalMoves, SearchConfig, TranspositionTable, search_root
from .tables import MoveTableSet

MAX_TIMED_DEPTH = 32

_OPTION_ALIASES = {"beam": "beam_x", "window": "reliability_window", "depth": "max_depth",
                   "chains": "use_chains", "tables": "use_tables", "tt": "use_transposition_table"}


class UciSession:
    def __init__(self, cfg: SearchConfig | None = None, out: IO[str] | None = None,
                 err: IO[str] | None = None):
        self.cfg = cfg or SearchConfig()
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.pos = parse_fen(START_FEN)
        self.new_game()

    def new_game(self) -> None:
        self.chains = ChainStore(max_length=self.cfg.max_chain_length)
        self.tables = MoveTableSet()
        self.tt = TranspositionTable(self.cfg.tt_size) if self.cfg.use_transposition_table else None

    def send(self, line: str) -> None:
        print(line, file=self.out, flush=True)

    def warn(self, line: str) -> None:
        print(f"info string {line}", file=self.err, flush=True)

    def handle(self, line: str) -> bool:
        """Process one command; False means quit."""
        tokens = line.split()
        if not tokens:
            return True
        cmd, args = tokens[0], tokens[1:]
        if cmd == "quit":
            return False
        if cmd == "uci":
            self.send("id name movechains")
            for f in fields(SearchConfig):
                self.send(f"option name {f.name} type string default {getattr(self.cfg, f.name)}")
            self.send("uciok")
        elif cmd == "isready":
            self.send("readyok")
        elif cmd == "ucinewgame":
            self.new_game()
        elif cmd == "position":
            self._position(args)
        elif cmd == "go":
            self._go(args)
        elif cmd == "setoption":
            self._setoption(args)
        else:
            self.warn(f"unknown command ignored: {cmd}")
        return True

    def _position(self, args: list[str]) -> None:
        try:
            if args[:1] == ["startpos"]:
                fen, rest = START_FEN, args[1:]
            elif args[:1] == ["fen"]:
                cut = args.index("moves") if "moves" in args else len(args)
                fen, rest = " ".join(args[1:cut]), args[cut:]
            else:
                raise ValueError("expected 'startpos' or 'fen'")
            pos = parse_fen(fen)
            if rest[:1] == ["moves"]:
                for tok in rest[1:]:
                    apply_move(pos, parse_uci(pos, tok))
        except (FenError, ValueError, IndexError) as e:
            self.send(f"info string error: {e}")
            return
        self.pos = pos

    def _go(self, args: list[str]) -> None:
        cfg = self.cfg
        opts = dict(zip(args[::2], args[1::2]))
        try:
            depth = int(opts["depth"]) if "depth" in opts else None
            if "movetime" in opts:
                cfg = cfg.with_(time_limit=int(opts["movetime"]), max_depth=depth or MAX_TIMED_DEPTH)
            elif depth is not None:
                cfg = cfg.with_(max_depth=depth, time_limit=None)
        except ValueError as e:
            self.send(f"info string error: {e}")
            return
        try:
            r = search_root(self.pos, self.chains, self.tables, cfg, self.tt)
        except NoLegalMoves:
            self.send("bestmove 0000")
            return
        s = r.stats
        self.send(f"info depth {s.depth_reached} score cp {r.value} nodes {s.negamax_nodes} "
                  f"pv {' '.join(m.uci() for m in r.principal_path)}")
        self.send(f"bestmove {r.best_move.uci()}")

    def _setoption(self, args: list[str]) -> None:
        # setoption name <id> value <x>
        if "name" not in args or "value" not in args:
            self.send("info string error: setoption needs name and value")
            return
        i, j = args.index("name"), args.index("value")
        name = _OPTION_ALIASES.get(" ".join(args[i + 1:j]), " ".join(args[i + 1:j]))
        value = " ".join(args[j + 1:])
        types = {f.name: f.type for f in fields(SearchConfig)}
        if name not in types:
            self.warn(f"unknown option ignored: {name}")
            return
        current = getattr(self.cfg, name)
        try:
            if isinstance(current, bool):
                v = value.lower() in ("true", "on", "1", "yes")
            elif isinstance(current, int) or name == "time_limit":
                v = int(value)
            else:
                v = value
            self.cfg = self.cfg.with_(**{name: v})
        except ValueError as e:
            self.send(f"info string error: {e}")
            return
        if name in ("use_transposition_table", "tt_size", "max_chain_length"):
            self.new_game()


def run(inp: IO[str] | None = None, out: IO[str] | None = None, err: IO[str] | None = None,
        cfg: SearchConfig | None = None) -> None:
    session = UciSession(cfg, out, err)
    for line in (inp or sys.stdin):
        if not session.handle(line):
            break
