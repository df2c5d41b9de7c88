"""Chess rules: positions, moves, FEN, legality.

Squares: a1 = 0, b1 = 1, ..., h1 = 7, a2 = 8, ..., h8 = 63
(``index = rank * 8 + file``).  Colours are booleans, ``True`` = White.
The heavy lifting lives in the compiled ``_kernel``; a ``Position`` is a
thin handle on its state vector and undo stack with push/pop discipline.
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from . import _kernel as K

WHITE, BLACK = True, False
PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = 1, 2, 3, 4, 5, 6
PIECE_TYPES = (PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING)
PIECE_LETTERS = {PAWN: "P", KNIGHT: "N", BISHOP: "B", ROOK: "R", QUEEN: "Q", KING: "K"}
LETTER_PIECES = {v: k for k, v in PIECE_LETTERS.items()}
FILES = "abcdefgh"
START_FEN = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"


def square_name(sq: int) -> str:
    return FILES[sq & 7] + str((sq >> 3) + 1)


def parse_square(text: str) -> int:
    if len(text) != 2 or text[0] not in FILES or text[1] not in "12345678":
        raise ValueError(f"bad square {text!r}")
    return FILES.index(text[0]) + 8 * (int(text[1]) - 1)


class FenError(ValueError):
    """Malformed or invalid FEN; ``field`` names the offending part."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class IllegalMoveError(ValueError):
    pass


def move_key(color: bool, piece: int, frm: int, to: int, promo: int | None) -> int:
    """Integer form of the (colour, piece, from, to, promotion) identity."""
    return (((((0 if color else 1) * 8 + piece) * 64 + frm) * 64 + to) * 8) + (promo or 0)


class Move(NamedTuple):
    """One piece displacement.  Equality/hashing for chains and tables go
    through ``key``; castling is the king's two-square move."""

    color: bool
    piece: int
    from_sq: int
    to_sq: int
    promotion: int | None = None
    capture: bool = False
    castle: bool = False
    en_passant: bool = False

    @property
    def key(self) -> int:
        return move_key(self.color, self.piece, self.from_sq, self.to_sq, self.promotion)

    def uci(self) -> str:
        s = square_name(self.from_sq) + square_name(self.to_sq)
        if self.promotion:
            s += PIECE_LETTERS[self.promotion].lower()
        return s

    def display(self) -> str:
        """Log form, e.g. ``WPe2-e4``."""
        s = ("W" if self.color else "B") + PIECE_LETTERS[self.piece]
        s += square_name(self.from_sq) + "-" + square_name(self.to_sq)
        if self.promotion:
            s += "=" + PIECE_LETTERS[self.promotion]
        return s

    def __str__(self) -> str:
        return self.display()


class Position:
    """Game state plus undo stack.  Not shareable between threads."""

    __slots__ = ("a", "st", "buf")

    def __init__(self, a: np.ndarray | None = None, st: np.ndarray | None = None):
        self.a = a if a is not None else np.zeros(K.STATE_LEN, dtype=np.int64)
        self.st = st if st is not None else np.zeros((K.MAX_STACK, K.STACK_COLS), dtype=np.int64)
        self.buf = np.zeros(K.MAX_MOVES, dtype=np.int64)

    # -- state
    @property
    def turn(self) -> bool:
        return self.a[K.SIDE] == 0

    @property
    def fullmove_number(self) -> int:
        return int(self.a[K.FULL])

    @property
    def halfmove_clock(self) -> int:
        return int(self.a[K.HALF])

    @property
    def ep_square(self) -> int | None:
        ep = int(self.a[K.EP])
        return None if ep < 0 else ep

    @property
    def castling(self) -> int:
        return int(self.a[K.CASTLE])

    @property
    def hash(self) -> int:
        return int(self.a[K.HASH])

    @property
    def ply(self) -> int:
        """Moves pushed since this handle was created or copied."""
        return int(self.a[K.SP])

    def key(self) -> bytes:
        """Exact identity for repetition / transposition checks."""
        a = self.a
        ep = a[K.EP] if a[K.EPH] else -1
        return a[:66].tobytes() + int(ep).to_bytes(2, "little", signed=True)

    def piece_at(self, sq: int) -> tuple[bool, int] | None:
        p = int(self.a[sq])
        if not p:
            return None
        return (p >> 3) == 0, p & 7

    def piece_type_at(self, sq: int) -> int | None:
        p = int(self.a[sq])
        return (p & 7) or None

    def king(self, color: bool) -> int:
        return int(self.a[K.WK if color else K.BK])

    def pieces(self, color: bool, piece: int) -> list[int]:
        code = (0 if color else 8) + piece
        return [int(s) for s in np.flatnonzero(self.a[:64] == code)]

    # -- moves
    def legal_codes(self) -> np.ndarray:
        n = K.gen_legal(self.a, self.st, self.buf)
        return self.buf[:n].copy()

    def is_check(self) -> bool:
        return bool(K.in_check(self.a))

    def push_code(self, code: int) -> None:
        K.make(self.a, self.st, code)

    def pop(self) -> None:
        if self.a[K.SP] == 0:
            raise IndexError("pop from a position with no pushed moves")
        K.unmake(self.a, self.st)

    def find(self, frm: int, to: int, promo: int | None) -> int:
        """Legal move code for (from, to, promotion), or -1."""
        return int(K.find_legal(self.a, self.st, frm, to, promo or 0, self.buf))

    def copy(self) -> "Position":
        """Same state, empty undo stack."""
        a = self.a.copy()
        a[K.SP] = 0
        return Position(a)

    def fen(self) -> str:
        return serialize_fen(self)

    def __repr__(self) -> str:
        return f"Position({serialize_fen(self)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Position) and np.array_equal(self.a[:72], other.a[:72]) \
            and self.a[K.EPH] == other.a[K.EPH]

    __hash__ = None


def decode(pos: Position, code: int) -> Move:
    """Move object for a legal move code in ``pos``."""
    code = int(code)
    frm, to = code & 63, (code >> 6) & 63
    promo = (code >> 12) & 7
    flag = (code >> 15) & 3
    p = int(pos.a[frm])
    return Move((p >> 3) == 0, p & 7, frm, to, promo or None,
                capture=flag == K.F_EP or pos.a[to] != 0,
                castle=flag == K.F_CASTLE, en_passant=flag == K.F_EP)


def parse_display(text: str) -> Move:
    """Parse the ``WPe2-e4`` log form (capture/castle flags are not recoverable)."""
    t = text.strip()
    try:
        color = {"W": WHITE, "B": BLACK}[t[0]]
        piece = LETTER_PIECES[t[1]]
        frm, rest = t[2:].split("-")
        promo = None
        if "=" in rest:
            rest, p = rest.split("=")
            promo = LETTER_PIECES[p]
        return Move(color, piece, parse_square(frm), parse_square(rest), promo)
    except (KeyError, ValueError, IndexError) as exc:
        raise ValueError(f"bad move text {text!r}") from exc


def parse_uci(pos: Position, text: str) -> Move:
    """Long algebraic ``e2e4`` / ``e7e8q``, resolved against ``pos``."""
    t = text.strip().lower()
    try:
        frm, to = parse_square(t[0:2]), parse_square(t[2:4])
        promo = LETTER_PIECES[t[4].upper()] if len(t) == 5 else None
        if len(t) not in (4, 5):
            raise ValueError
    except (ValueError, KeyError, IndexError):
        raise IllegalMoveError(f"bad move text {text!r}") from None
    code = pos.find(frm, to, promo)
    if code < 0:
        raise IllegalMoveError(f"illegal move {text} in {serialize_fen(pos)}")
    return decode(pos, code)


# --------------------------------------------------------------------- FEN

_CODE = {"P": 1, "N": 2, "B": 3, "R": 4, "Q": 5, "K": 6,
         "p": 9, "n": 10, "b": 11, "r": 12, "q": 13, "k": 14}
_SYMBOL = {v: k for k, v in _CODE.items()}
_CASTLE_BITS = {"K": 1, "Q": 2, "k": 4, "q": 8}


def parse_fen(text: str) -> Position:
    fields = text.split()
    if len(fields) != 6:
        raise FenError("fen", f"expected 6 fields, got {len(fields)}")
    placement, turn, castling, ep, half, full = fields
    a = np.zeros(K.STATE_LEN, dtype=np.int64)
    rows = placement.split("/")
    if len(rows) != 8:
        raise FenError("placement", "expected 8 ranks")
    for r, row in enumerate(rows):
        f = 0
        for ch in row:
            if ch in "12345678":
                f += int(ch)
            elif ch in _CODE:
                if f > 7:
                    break
                a[(7 - r) * 8 + f] = _CODE[ch]
                f += 1
            else:
                raise FenError("placement", f"bad character {ch!r}")
        if f != 8:
            raise FenError("placement", f"rank {row!r} does not span 8 files")

    kings = (int(np.sum(a[:64] == 6)), int(np.sum(a[:64] == 14)))
    if kings == (0, 0):
        raise FenError("placement", "both kings missing")
    if kings != (1, 1):
        raise FenError("placement", f"need exactly one king per side, got {kings}")
    if np.any(np.isin(a[0:8], (1, 9))) or np.any(np.isin(a[56:64], (1, 9))):
        raise FenError("placement", "pawn on the first or last rank")
    for code in (1, 9):
        if np.sum(a[:64] == code) > 8:
            raise FenError("placement", "more than 8 pawns for one side")
    for c in (0, 8):
        if np.sum((a[:64] >= c + 1) & (a[:64] <= c + 6)) > 16:
            raise FenError("placement", "more than 16 pieces for one side")

    if turn not in ("w", "b"):
        raise FenError("side_to_move", f"expected w or b, got {turn!r}")
    a[K.SIDE] = 0 if turn == "w" else 1

    bits = 0
    if castling != "-":
        if not set(castling) <= set("KQkq") or len(set(castling)) != len(castling):
            raise FenError("castling", f"bad castling field {castling!r}")
        for ch in castling:
            bits |= _CASTLE_BITS[ch]
    for bit, king_sq, rook_sq, k, r in ((1, 4, 7, 6, 4), (2, 4, 0, 6, 4),
                                        (4, 60, 63, 14, 12), (8, 60, 56, 14, 12)):
        if bits & bit and (a[king_sq] != k or a[rook_sq] != r):
            raise FenError("castling", "castling right without king and rook on home squares")
    a[K.CASTLE] = bits

    a[K.EP] = -1
    if ep != "-":
        try:
            sq = parse_square(ep)
        except ValueError:
            raise FenError("en_passant", f"bad square {ep!r}") from None
        white_to_move = a[K.SIDE] == 0
        want_rank = 5 if white_to_move else 2
        pawn_sq = sq - 8 if white_to_move else sq + 8
        behind = sq + 8 if white_to_move else sq - 8
        pawn = 9 if white_to_move else 1
        if sq >> 3 != want_rank or a[pawn_sq] != pawn or a[sq] or a[behind]:
            raise FenError("en_passant", f"{ep} is not behind a just-pushed pawn")
        a[K.EP] = sq

    if not half.isdigit():
        raise FenError("halfmove_clock", f"not a non-negative integer: {half!r}")
    if not full.isdigit() or int(full) < 1:
        raise FenError("fullmove_number", f"not a positive integer: {full!r}")
    a[K.HALF] = int(half)
    a[K.FULL] = int(full)
    a[K.WK] = int(np.flatnonzero(a[:64] == 6)[0])
    a[K.BK] = int(np.flatnonzero(a[:64] == 14)[0])
    side = int(a[K.SIDE])
    if K.attacked(a, a[K.WK + 1 - side], side):
        raise FenError("side_to_move", "side not to move is in check")
    if a[K.EP] >= 0 and K.ep_capturable(a, a[K.EP]):
        a[K.EPH] = 1
    a[K.HASH] = K.compute_hash(a)
    return Position(a)


def serialize_fen(pos: Position) -> str:
    a = pos.a
    rows = []
    for r in range(7, -1, -1):
        row, empty = "", 0
        for f in range(8):
            p = int(a[r * 8 + f])
            if p:
                if empty:
                    row += str(empty)
                    empty = 0
                row += _SYMBOL[p]
            else:
                empty += 1
        if empty:
            row += str(empty)
        rows.append(row)
    castling = "".join(ch for ch, bit in _CASTLE_BITS.items() if a[K.CASTLE] & bit) or "-"
    ep = square_name(int(a[K.EP])) if a[K.EP] >= 0 else "-"
    return (f"{'/'.join(rows)} {'w' if a[K.SIDE] == 0 else 'b'} {castling} {ep} "
            f"{int(a[K.HALF])} {int(a[K.FULL])}")


def initial_position() -> Position:
    return parse_fen(START_FEN)


# ----------------------------------------------------------------- moves

def legal_moves(pos: Position) -> list[Move]:
    """Legal moves for the side to move, in generation order (deterministic)."""
    return [decode(pos, c) for c in pos.legal_codes()]


def code_of(pos: Position, move: Move) -> int:
    """Legal move code for ``move`` in ``pos``, or -1 (piece/colour checked)."""
    p = int(pos.a[move.from_sq])
    if p == 0 or (p >> 3 == 0) != move.color or (p & 7) != move.piece:
        return -1
    if move.color != pos.turn:
        return -1
    return pos.find(move.from_sq, move.to_sq, move.promotion)


def is_legal(pos: Position, move: Move) -> bool:
    return code_of(pos, move) >= 0


def apply_move(pos: Position, move: Move) -> Position:
    """Push ``move`` in place; raises (leaving ``pos`` untouched) if illegal."""
    code = code_of(pos, move)
    if code < 0:
        raise IllegalMoveError(f"{move.display()} is illegal in {serialize_fen(pos)}")
    pos.push_code(code)
    return pos


def undo_move(pos: Position) -> None:
    pos.pop()


def play_sequence(pos: Position, moves: Sequence[Move]) -> Position | int:
    """Position after ``moves``, or the index of the first illegal move.

    ``pos`` itself is never modified.
    """
    p = pos.copy()
    for i, mv in enumerate(moves):
        code = code_of(p, mv)
        if code < 0:
            return i
        p.push_code(code)
    return p


def push_sequence(pos: Position, moves: Sequence[Move]) -> int:
    """Push moves in place while they stay legal; returns how many were pushed."""
    n = 0
    for mv in moves:
        code = code_of(pos, mv)
        if code < 0:
            break
        pos.push_code(code)
        n += 1
    return n


def perft(pos: Position, depth: int) -> int:
    if depth == 0:
        return 1
    bufs = np.zeros((depth + 1, K.MAX_MOVES), dtype=np.int64)
    return int(K.perft(pos.a, pos.st, depth, bufs))


def mirror(pos: Position) -> Position:
    """Colour-flipped position: ranks mirrored, colours and side to move swapped."""
    a = np.zeros(K.STATE_LEN, dtype=np.int64)
    src = pos.a
    for sq in range(64):
        p = int(src[sq])
        if p:
            a[sq ^ 56] = p ^ 8
    a[K.SIDE] = 1 - src[K.SIDE]
    c = int(src[K.CASTLE])
    a[K.CASTLE] = ((c & 3) << 2) | ((c >> 2) & 3)
    a[K.EP] = src[K.EP] ^ 56 if src[K.EP] >= 0 else -1
    a[K.HALF] = src[K.HALF]
    a[K.FULL] = src[K.FULL]
    a[K.WK] = src[K.BK] ^ 56
    a[K.BK] = src[K.WK] ^ 56
    a[K.EPH] = src[K.EPH]
    a[K.HASH] = K.compute_hash(a)
    return Position(a)


def in_check(pos: Position) -> bool:
    return pos.is_check()


def is_checkmate(pos: Position) -> bool:
    return pos.is_check() and not K.has_legal(pos.a, pos.st, pos.buf)


def is_stalemate(pos: Position) -> bool:
    return not pos.is_check() and not K.has_legal(pos.a, pos.st, pos.buf)
