"""Full-width minimax without pruning, used only as a test oracle.

Walks every legal move to the requested depth and resolves each leaf with
a full-window quiescence search, so its value is the exact minimax value
of the same leaf definition the engine uses.  No ordering, no windows, no
chains or tables.  Leaf values are cached by exact position identity (all
leaves sit at the same ply, so mate distances agree).
"""
import numpy as np

from movechains import _kernel as K
from movechains.core import Position
from movechains.evaluation import Scratch
from movechains.search import INF, MATE, SearchConfig


def minimax(pos: Position, depth: int, cfg: SearchConfig | None = None) -> int:
    cfg = cfg or SearchConfig.standard()
    p = pos.copy()
    a, st = p.a, p.st
    s = Scratch(cfg.quiescence_cap + 2)
    bufs = np.zeros((depth + 1, K.MAX_MOVES), dtype=np.int64)
    qargs = (cfg.quiescence_cap, cfg.quiescence_check_plies, s.bufs, s.acc, s.cheapest, s.keys,
             s.tmp, s.counter)
    make, unmake, quiesce = K.make, K.unmake, K.quiesce
    leaves: dict[bytes, int] = {}

    def rec(d, ply):
        if d == 0:
            k = p.key()
            v = leaves.get(k)
            if v is None:
                v = leaves[k] = int(quiesce(a, st, -INF, INF, ply, 0, *qargs))
            return v
        n = K.gen_legal(a, st, bufs[d])
        if n == 0:
            return -(MATE - ply) if K.in_check(a) else 0
        best = -INF
        for c in bufs[d, :n].tolist():
            make(a, st, c)
            v = -rec(d - 1, ply + 1)
            unmake(a, st)
            if v > best:
                best = v
        return best

    return rec(depth, 0)
