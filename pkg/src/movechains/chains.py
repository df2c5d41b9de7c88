"""Short-term memory: the latest cut-off line for each first move."""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import Sequence

from .core import Move

DEFAULT_MAX_LENGTH = 8
DEFAULT_CAPACITY = 100_000


def alternates(moves: Sequence[Move]) -> bool:
    return all(a.color != b.color for a, b in zip(moves, moves[1:]))


@dataclass(frozen=True)
class MoveChain:
    moves: tuple[Move, ...]
    eval: int
    depth_created: int = 0

    @property
    def first(self) -> Move:
        return self.moves[0]

    def __str__(self) -> str:
        return f"{self.first.display()}: {' '.join(m.display() for m in self.moves)} eval={self.eval}"


class ChainStore:
    """At most one chain per first-move key; latest write wins.

    Over capacity, the least recently written key is evicted.
    """

    def __init__(self, capacity: int = DEFAULT_CAPACITY, max_length: int = DEFAULT_MAX_LENGTH):
        if capacity < 1 or max_length < 1:
            raise ValueError("capacity and max_length must be positive")
        self.capacity = capacity
        self.max_length = max_length
        self._chains: OrderedDict[int, MoveChain] = OrderedDict()

    def __len__(self) -> int:
        return len(self._chains)

    def __iter__(self):
        return iter(self._chains.values())

    def __contains__(self, first) -> bool:
        return _key(first) in self._chains

    def record_cutoff(self, path: Sequence[Move], eval: int, depth: int = 0) -> MoveChain:
        if not path:
            raise ValueError("cannot record an empty chain")
        if not alternates(path):
            raise ValueError("chain moves must alternate colours")
        chain = MoveChain(tuple(path[: self.max_length]), eval, depth)
        key = chain.first.key
        chains = self._chains
        if key in chains:
            del chains[key]
        elif len(chains) >= self.capacity:
            chains.popitem(last=False)
        chains[key] = chain
        return chain

    def get_chain(self, first) -> MoveChain | None:
        """Stored chain for ``first`` (a Move or its key).  Legality unchecked."""
        return self._chains.get(_key(first))

    def invalidate(self, first) -> None:
        self._chains.pop(_key(first), None)

    def clear(self) -> None:
        self._chains.clear()

    def dump(self) -> str:
        return "\n".join(str(c) for c in self._chains.values())


def _key(first) -> int:
    return first.key if isinstance(first, Move) else first
