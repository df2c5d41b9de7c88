"""Compiled (numba) board kernel.

Board state is one int64 vector:

    [0:64]  piece code per square (0 empty, 1..6 white P N B R Q K, 9..14 black)
    [64]    side to move (0 white, 1 black)
    [65]    castling bits (1 K, 2 Q, 4 k, 8 q)
    [66]    en-passant target square or -1 (set after every double push)
    [67]    halfmove clock
    [68]    fullmove number
    [69,70] white / black king square
    [71]    zobrist hash
    [72]    undo stack pointer
    [73]    1 if the en-passant file is folded into the hash

Move code: from | to << 6 | promo << 12 | flag << 15, with flag
0 normal, 1 double push, 2 en passant, 3 castle.  Square a1 = 0, h8 = 63.
"""
import numpy as np
from numba import njit

SIDE, CASTLE, EP, HALF, FULL, WK, BK, HASH, SP, EPH = 64, 65, 66, 67, 68, 69, 70, 71, 72, 73
STATE_LEN = 80
MAX_STACK = 4096
STACK_COLS = 7
MAX_MOVES = 256

F_NORMAL, F_DOUBLE, F_EP, F_CASTLE = 0, 1, 2, 3
PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = 1, 2, 3, 4, 5, 6

INF = 10**9
MATE = 100_000

# material, control weight, and "cheapness" rank by piece type (index 0 unused)
VALUE = np.array([0, 100, 320, 330, 500, 900, 0], dtype=np.int64)
RANK_VALUE = np.array([0, 100, 320, 330, 500, 900, 20000], dtype=np.int64)
CONTROL_W = np.array([0, 5, 3, 3, 2, 1, 1], dtype=np.int64)
CONTROL_CAP = 150
NO_ATTACKER = 1 << 30


def _tables():
    knight = -np.ones((64, 8), dtype=np.int64)
    king = -np.ones((64, 8), dtype=np.int64)
    rays = -np.ones((64, 8, 8), dtype=np.int64)
    pawn_att = -np.ones((2, 64, 2), dtype=np.int64)    # targets of a pawn of colour c on sq
    pawn_from = -np.ones((2, 64, 2), dtype=np.int64)   # where a colour-c pawn attacking sq stands
    dirs = [(0, 1), (0, -1), (1, 0), (-1, 0), (1, 1), (-1, 1), (1, -1), (-1, -1)]
    kn = [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)]
    for sq in range(64):
        f, r = sq % 8, sq // 8
        for i, (df, dr) in enumerate(kn):
            if 0 <= f + df < 8 and 0 <= r + dr < 8:
                knight[sq, i] = (r + dr) * 8 + f + df
        for i, (df, dr) in enumerate(dirs):
            if 0 <= f + df < 8 and 0 <= r + dr < 8:
                king[sq, i] = (r + dr) * 8 + f + df
            k = 0
            ff, rr = f + df, r + dr
            while 0 <= ff < 8 and 0 <= rr < 8:
                rays[sq, i, k] = rr * 8 + ff
                k += 1
                ff += df
                rr += dr
        for c, dr in ((0, 1), (1, -1)):
            for j, df in enumerate((-1, 1)):
                if 0 <= f + df < 8 and 0 <= r + dr < 8:
                    pawn_att[c, sq, j] = (r + dr) * 8 + f + df
                if 0 <= f + df < 8 and 0 <= r - dr < 8:
                    pawn_from[c, sq, j] = (r - dr) * 8 + f + df
    cmask = np.full(64, 15, dtype=np.int64)
    cmask[4] = 15 & ~3
    cmask[7] = 15 & ~1
    cmask[0] = 15 & ~2
    cmask[60] = 15 & ~12
    cmask[63] = 15 & ~4
    cmask[56] = 15 & ~8
    rng = np.random.default_rng(20150630)
    zp = rng.integers(-(2**62), 2**62, size=(16, 64), dtype=np.int64)
    zc = rng.integers(-(2**62), 2**62, size=16, dtype=np.int64)
    ze = rng.integers(-(2**62), 2**62, size=8, dtype=np.int64)
    zs = int(rng.integers(-(2**62), 2**62, dtype=np.int64))
    return knight, king, rays, pawn_att, pawn_from, cmask, zp, zc, ze, zs


KNIGHT_T, KING_T, RAYS, PAWN_ATT, PAWN_FROM, CASTLE_MASK, Z_PIECE, Z_CASTLE, Z_EP, Z_SIDE = _tables()


def _reach():
    # REACH[k, sq]: sq shares a line or a knight jump with k (a check can
    # only involve such squares, so anything else skips the exact test)
    reach = np.zeros((64, 64), dtype=np.bool_)
    for k in range(64):
        for s in KNIGHT_T[k]:
            if s >= 0:
                reach[k, s] = True
        for s in RAYS[k].ravel():
            if s >= 0:
                reach[k, s] = True
    return reach


REACH = _reach()


# ------------------------------------------------------------------ basics

@njit(cache=True)
def move_code(frm, to, promo, flag):
    return frm | (to << 6) | (promo << 12) | (flag << 15)


@njit(cache=True, inline="always")
def attacked(a, sq, by):
    """Is ``sq`` attacked by any piece of colour ``by``."""
    base = by * 8
    for j in range(2):
        s = PAWN_FROM[by, sq, j]
        if s >= 0 and a[s] == base + PAWN:
            return True
    for j in range(8):
        s = KNIGHT_T[sq, j]
        if s >= 0 and a[s] == base + KNIGHT:
            return True
        s = KING_T[sq, j]
        if s >= 0 and a[s] == base + KING:
            return True
    for d in range(8):
        for k in range(7):
            s = RAYS[sq, d, k]
            if s < 0:
                break
            p = a[s]
            if p != 0:
                if (p >> 3) == by:
                    t = p & 7
                    if t == QUEEN or (d < 4 and t == ROOK) or (d >= 4 and t == BISHOP):
                        return True
                break
    return False


@njit(cache=True, inline="always")
def in_check(a):
    side = a[SIDE]
    return attacked(a, a[WK + side], 1 - side)


@njit(cache=True)
def compute_hash(a):
    h = 0
    for sq in range(64):
        p = a[sq]
        if p:
            h ^= Z_PIECE[p, sq]
    h ^= Z_CASTLE[a[CASTLE]]
    if a[SIDE] == 1:
        h ^= Z_SIDE
    if a[EP] >= 0 and ep_capturable(a, a[EP]):
        h ^= Z_EP[a[EP] & 7]
    return h


@njit(cache=True)
def ep_capturable(a, ep):
    # some side-to-move pawn stands where it could capture onto ep
    side = a[SIDE]
    for j in range(2):
        s = PAWN_FROM[side, ep, j]
        if s >= 0 and a[s] == side * 8 + PAWN:
            return True
    return False


@njit(cache=True, inline="always")
def make(a, st, m):
    sp = a[SP]
    st[sp, 0] = m
    frm = m & 63
    to = (m >> 6) & 63
    promo = (m >> 12) & 7
    flag = (m >> 15) & 3
    piece = a[frm]
    side = a[SIDE]
    h = a[HASH]
    captured = a[to]
    capsq = to
    if flag == F_EP:
        capsq = to - 8 if side == 0 else to + 8
        captured = a[capsq]
    st[sp, 1] = captured
    st[sp, 2] = a[CASTLE]
    st[sp, 3] = a[EP]
    st[sp, 4] = a[HALF]
    st[sp, 5] = h
    st[sp, 6] = a[EPH]
    a[SP] = sp + 1

    if a[EPH]:
        h ^= Z_EP[a[EP] & 7]
    h ^= Z_PIECE[piece, frm]
    if captured:
        h ^= Z_PIECE[captured, capsq]
        a[capsq] = 0
    newp = piece
    if promo:
        newp = side * 8 + promo
    a[frm] = 0
    a[to] = newp
    h ^= Z_PIECE[newp, to]
    if flag == F_CASTLE:
        if to == 6:
            rf, rt = 7, 5
        elif to == 2:
            rf, rt = 0, 3
        elif to == 62:
            rf, rt = 63, 61
        else:
            rf, rt = 56, 59
        rook = a[rf]
        a[rf] = 0
        a[rt] = rook
        h ^= Z_PIECE[rook, rf] ^ Z_PIECE[rook, rt]
    if (piece & 7) == KING:
        a[WK + side] = to
    oc = a[CASTLE]
    nc = oc & CASTLE_MASK[frm] & CASTLE_MASK[to]
    if nc != oc:
        h ^= Z_CASTLE[oc] ^ Z_CASTLE[nc]
        a[CASTLE] = nc
    if (piece & 7) == PAWN or captured:
        a[HALF] = 0
    else:
        a[HALF] += 1
    if side == 1:
        a[FULL] += 1
    a[SIDE] = 1 - side
    h ^= Z_SIDE
    a[EPH] = 0
    if flag == F_DOUBLE:
        ep = (frm + to) >> 1
        a[EP] = ep
        if ep_capturable(a, ep):
            a[EPH] = 1
            h ^= Z_EP[ep & 7]
    else:
        a[EP] = -1
    a[HASH] = h


@njit(cache=True, inline="always")
def unmake(a, st):
    sp = a[SP] - 1
    a[SP] = sp
    m = st[sp, 0]
    frm = m & 63
    to = (m >> 6) & 63
    promo = (m >> 12) & 7
    flag = (m >> 15) & 3
    side = 1 - a[SIDE]
    a[SIDE] = side
    piece = a[to]
    if promo:
        piece = side * 8 + PAWN
    a[frm] = piece
    a[to] = 0
    captured = st[sp, 1]
    if flag == F_EP:
        a[to - 8 if side == 0 else to + 8] = captured
    else:
        a[to] = captured
    if flag == F_CASTLE:
        if to == 6:
            rf, rt = 7, 5
        elif to == 2:
            rf, rt = 0, 3
        elif to == 62:
            rf, rt = 63, 61
        else:
            rf, rt = 56, 59
        a[rf] = a[rt]
        a[rt] = 0
    if (piece & 7) == KING:
        a[WK + side] = frm
    if side == 1:
        a[FULL] -= 1
    a[CASTLE] = st[sp, 2]
    a[EP] = st[sp, 3]
    a[HALF] = st[sp, 4]
    a[HASH] = st[sp, 5]
    a[EPH] = st[sp, 6]


# -------------------------------------------------------------- movegen

@njit(cache=True)
def _add_pawn(out, n, frm, to, promo_rank, flag):
    if to // 8 == promo_rank:
        for pr in (QUEEN, ROOK, BISHOP, KNIGHT):
            out[n] = move_code(frm, to, pr, flag)
            n += 1
    else:
        out[n] = move_code(frm, to, 0, flag)
        n += 1
    return n


@njit(cache=True)
def gen_pseudo(a, out):
    side = a[SIDE]
    them = 1 - side
    n = 0
    fwd = 8 if side == 0 else -8
    start_rank = 1 if side == 0 else 6
    promo_rank = 7 if side == 0 else 0
    ep = a[EP]
    for frm in range(64):
        p = a[frm]
        if p == 0 or (p >> 3) != side:
            continue
        t = p & 7
        if t == PAWN:
            to = frm + fwd
            if a[to] == 0:
                n = _add_pawn(out, n, frm, to, promo_rank, F_NORMAL)
                if frm // 8 == start_rank and a[to + fwd] == 0:
                    out[n] = move_code(frm, to + fwd, 0, F_DOUBLE)
                    n += 1
            for j in range(2):
                to = PAWN_ATT[side, frm, j]
                if to < 0:
                    continue
                q = a[to]
                if q != 0 and (q >> 3) == them:
                    n = _add_pawn(out, n, frm, to, promo_rank, F_NORMAL)
                elif to == ep and q == 0:
                    out[n] = move_code(frm, to, 0, F_EP)
                    n += 1
        elif t == KNIGHT or t == KING:
            for j in range(8):
                to = KNIGHT_T[frm, j] if t == KNIGHT else KING_T[frm, j]
                if to < 0:
                    continue
                q = a[to]
                if q == 0 or (q >> 3) == them:
                    out[n] = move_code(frm, to, 0, F_NORMAL)
                    n += 1
        else:
            d0 = 4 if t == BISHOP else 0
            d1 = 4 if t == ROOK else 8
            for d in range(d0, d1):
                for k in range(7):
                    to = RAYS[frm, d, k]
                    if to < 0:
                        break
                    q = a[to]
                    if q == 0:
                        out[n] = move_code(frm, to, 0, F_NORMAL)
                        n += 1
                    else:
                        if (q >> 3) == them:
                            out[n] = move_code(frm, to, 0, F_NORMAL)
                            n += 1
                        break
    # castling
    c = a[CASTLE]
    base = 0 if side == 0 else 56
    kbit = 1 if side == 0 else 4
    qbit = 2 if side == 0 else 8
    king = side * 8 + KING
    rook = side * 8 + ROOK
    if (c & (kbit | qbit)) and a[base + 4] == king and not attacked(a, base + 4, them):
        if (c & kbit) and a[base + 7] == rook and a[base + 5] == 0 and a[base + 6] == 0:
            if not attacked(a, base + 5, them) and not attacked(a, base + 6, them):
                out[n] = move_code(base + 4, base + 6, 0, F_CASTLE)
                n += 1
        if (c & qbit) and a[base] == rook and a[base + 1] == 0 and a[base + 2] == 0 \
                and a[base + 3] == 0:
            if not attacked(a, base + 3, them) and not attacked(a, base + 2, them):
                out[n] = move_code(base + 4, base + 2, 0, F_CASTLE)
                n += 1
    return n


@njit(cache=True)
def gen_legal(a, st, out):
    return keep_legal(a, st, out, gen_pseudo(a, out))


@njit(cache=True, inline="always")
def is_legal_pseudo(a, st, m):
    """Does pseudo-legal ``m`` leave the mover's king safe."""
    side = a[SIDE]
    if ((m >> 15) & 3) >= F_EP:
        make(a, st, m)
        ok = not attacked(a, a[WK + side], 1 - side)
        unmake(a, st)
        return ok
    frm = m & 63
    to = (m >> 6) & 63
    piece = a[frm]
    captured = a[to]
    a[to] = piece
    a[frm] = 0
    king = to if (piece & 7) == KING else a[WK + side]
    ok = not attacked(a, king, 1 - side)
    a[frm] = piece
    a[to] = captured
    return ok


@njit(cache=True, inline="always")
def keep_legal(a, st, moves, n):
    """Compact the first ``n`` pseudo-legal moves down to the legal ones."""
    side = a[SIDE]
    them = 1 - side
    own_king = a[WK + side]
    k = 0
    for i in range(n):
        m = moves[i]
        if ((m >> 15) & 3) >= F_EP:
            ok = is_legal_pseudo(a, st, m)
        else:
            # is_legal_pseudo written out (see classify_quiescence)
            frm = m & 63
            to = (m >> 6) & 63
            piece = a[frm]
            captured = a[to]
            a[to] = piece
            a[frm] = 0
            ok = not attacked(a, to if (piece & 7) == KING else own_king, them)
            a[frm] = piece
            a[to] = captured
        if ok:
            moves[k] = m
            k += 1
    return k


@njit(cache=True)
def has_legal(a, st, out):
    n = gen_pseudo(a, out)
    side = a[SIDE]
    for i in range(n):
        make(a, st, out[i])
        ok = not attacked(a, a[WK + side], 1 - side)
        unmake(a, st)
        if ok:
            return True
    return False


@njit(cache=True)
def find_legal(a, st, frm, to, promo, buf):
    """Legal move code matching (from, to, promotion), or -1."""
    n = gen_legal(a, st, buf)
    for i in range(n):
        m = buf[i]
        if (m & 63) == frm and ((m >> 6) & 63) == to and ((m >> 12) & 7) == promo:
            return m
    return -1


@njit(cache=True)
def move_keys(a, moves, n, out):
    """Identity keys ((((colour*8 + piece)*64 + from)*64 + to)*8 + promo)."""
    side = a[SIDE]
    for i in range(n):
        m = moves[i]
        frm = m & 63
        out[i] = (((side * 8 + (a[frm] & 7)) * 64 + frm) * 64 + ((m >> 6) & 63)) * 8 \
            + ((m >> 12) & 7)


@njit(cache=True)
def perft(a, st, depth, bufs):
    n = gen_legal(a, st, bufs[depth])
    if depth == 1:
        return n
    total = 0
    for i in range(n):
        make(a, st, bufs[depth, i])
        total += perft(a, st, depth - 1, bufs)
        unmake(a, st)
    return total


# ------------------------------------------------------------- control

@njit(cache=True)
def control(a, acc, cheapest):
    """acc[c, sq]: summed control weights of colour c on sq;
    cheapest[c, sq]: rank value of the cheapest attacker (NO_ATTACKER if none)."""
    for c in range(2):
        for sq in range(64):
            acc[c, sq] = 0
            cheapest[c, sq] = NO_ATTACKER
    for sq in range(64):
        p = a[sq]
        if p == 0:
            continue
        c = p >> 3
        t = p & 7
        w = CONTROL_W[t]
        v = RANK_VALUE[t]
        if t == PAWN:
            for j in range(2):
                s = PAWN_ATT[c, sq, j]
                if s >= 0:
                    acc[c, s] += w
                    if v < cheapest[c, s]:
                        cheapest[c, s] = v
        elif t == KNIGHT or t == KING:
            for j in range(8):
                s = KNIGHT_T[sq, j] if t == KNIGHT else KING_T[sq, j]
                if s >= 0:
                    acc[c, s] += w
                    if v < cheapest[c, s]:
                        cheapest[c, s] = v
        else:
            d0 = 4 if t == BISHOP else 0
            d1 = 4 if t == ROOK else 8
            for d in range(d0, d1):
                for k in range(7):
                    s = RAYS[sq, d, k]
                    if s < 0:
                        break
                    acc[c, s] += w
                    if v < cheapest[c, s]:
                        cheapest[c, s] = v
                    if a[s] != 0:
                        break


@njit(cache=True, inline="always")
def control_sum(a):
    """Sum over squares of net control (White positive)."""
    total = 0
    for sq in range(64):
        p = a[sq]
        if p == 0:
            continue
        c = p >> 3
        t = p & 7
        cnt = 0
        if t == PAWN:
            for j in range(2):
                if PAWN_ATT[c, sq, j] >= 0:
                    cnt += 1
        elif t == KNIGHT or t == KING:
            for j in range(8):
                s = KNIGHT_T[sq, j] if t == KNIGHT else KING_T[sq, j]
                if s >= 0:
                    cnt += 1
        else:
            d0 = 4 if t == BISHOP else 0
            d1 = 4 if t == ROOK else 8
            for d in range(d0, d1):
                for k in range(7):
                    s = RAYS[sq, d, k]
                    if s < 0:
                        break
                    cnt += 1
                    if a[s] != 0:
                        break
        if c == 0:
            total += CONTROL_W[t] * cnt
        else:
            total -= CONTROL_W[t] * cnt
    return total


@njit(cache=True, inline="always")
def white_score(a):
    mat = 0
    for sq in range(64):
        p = a[sq]
        if p:
            if p >> 3:
                mat -= VALUE[p & 7]
            else:
                mat += VALUE[p & 7]
    c = control_sum(a)
    if c > CONTROL_CAP:
        c = CONTROL_CAP
    elif c < -CONTROL_CAP:
        c = -CONTROL_CAP
    return mat + c


@njit(cache=True, inline="always")
def evaluate(a):
    s = white_score(a)
    return s if a[SIDE] == 0 else -s


# ---------------------------------------------------- safety & ordering

@njit(cache=True, inline="always")
def is_capture(a, m):
    return a[(m >> 6) & 63] != 0 or ((m >> 15) & 3) == F_EP


@njit(cache=True, inline="always")
def capture_estimate(a, m, acc):
    """Victim value, minus the mover's value when the target is defended."""
    frm = m & 63
    to = (m >> 6) & 63
    promo = (m >> 12) & 7
    if ((m >> 15) & 3) == F_EP:
        victim = VALUE[PAWN]
    else:
        victim = VALUE[a[to] & 7]
    if promo:
        victim += VALUE[promo] - VALUE[PAWN]
    them = 1 - a[SIDE]
    if acc[them, to] > 0:
        return victim - RANK_VALUE[a[frm] & 7]
    return victim


@njit(cache=True, inline="always")
def is_en_prise(a, sq, acc, cheapest):
    p = a[sq]
    c = p >> 3
    them = 1 - c
    if acc[them, sq] == 0:
        return False
    return cheapest[them, sq] < RANK_VALUE[p & 7] or acc[c, sq] == 0


@njit(cache=True, inline="always")
def is_safe_square(a, t, sq, acc, cheapest):
    side = a[SIDE]
    them = 1 - side
    if acc[them, sq] == 0:
        return True
    if cheapest[them, sq] < RANK_VALUE[t]:
        return False
    return acc[side, sq] > 0


@njit(cache=True, inline="always")
def gives_check(a, st, m):
    side = a[SIDE]
    if ((m >> 15) & 3) >= F_EP:
        # en passant and castling move two pieces: use the full make
        make(a, st, m)
        chk = attacked(a, a[WK + 1 - side], side)
        unmake(a, st)
        return chk
    frm = m & 63
    to = (m >> 6) & 63
    king = a[WK + 1 - side]
    if not (REACH[king, to] or REACH[king, frm]):
        return False
    promo = (m >> 12) & 7
    piece = a[frm]
    captured = a[to]
    a[to] = side * 8 + promo if promo else piece
    a[frm] = 0
    chk = attacked(a, a[WK + 1 - side], side)
    a[frm] = piece
    a[to] = captured
    return chk


@njit(cache=True)
def classify_quiescence(a, st, moves, n, acc, cheapest, checks):
    """Filter legal ``moves`` in place down to quiescence candidates; returns count.

    Safe captures, safe queen promotions, safe retreats of en-prise pieces,
    and (when ``checks``) checking moves.  In check every evasion is kept.
    """
    if in_check(a):
        return n
    # helper bodies are written out here: calls passing several arrays are
    # not inlined by numba and cost more than the tests themselves
    side = a[SIDE]
    them = 1 - side
    king = a[WK + them]
    k = 0
    for i in range(n):
        m = moves[i]
        frm = m & 63
        to = (m >> 6) & 63
        promo = (m >> 12) & 7
        flag = (m >> 15) & 3
        piece = a[frm]
        t = piece & 7
        target = a[to]
        keep = False
        if target != 0 or flag == F_EP:
            # capture_estimate >= 0
            victim = VALUE[PAWN] if flag == F_EP else VALUE[target & 7]
            if promo:
                victim += VALUE[promo] - VALUE[PAWN]
            keep = acc[them, to] == 0 or victim - RANK_VALUE[t] >= 0
        elif promo == QUEEN:
            keep = (acc[them, to] == 0
                    or (cheapest[them, to] >= RANK_VALUE[QUEEN] and acc[side, to] > 0))
        if not keep and acc[them, frm] != 0:
            # en-prise piece moving to a safe square
            if cheapest[them, frm] < RANK_VALUE[t] or acc[side, frm] == 0:
                keep = (acc[them, to] == 0
                        or (cheapest[them, to] >= RANK_VALUE[t] and acc[side, to] > 0))
        if not keep and checks:
            if flag >= F_EP:
                keep = gives_check(a, st, m)
            elif REACH[king, to] or REACH[king, frm]:
                a[to] = side * 8 + promo if promo else piece
                a[frm] = 0
                keep = attacked(a, king, side)
                a[frm] = piece
                a[to] = target
        if keep:
            moves[k] = m
            k += 1
    return k


@njit(cache=True)
def order_keys(a, moves, n, acc, keys):
    """Ascending sort keys: class, then gain / control, then encoding.

    class 0 = non-losing captures and promotions, 1 = quiet moves onto
    squares the mover controls (net > 0), 2 = everything else.
    """
    side = a[SIDE]
    them = 1 - side
    for i in range(n):
        m = moves[i]
        frm = m & 63
        to = (m >> 6) & 63
        promo = (m >> 12) & 7
        enc = (frm << 9) | (to << 3) | promo
        cls = 2
        sec = 50000
        third = 0
        flag = (m >> 15) & 3
        target = a[to]
        if target != 0 or flag == F_EP:
            # capture_estimate, written out (see classify_quiescence)
            gain = VALUE[PAWN] if flag == F_EP else VALUE[target & 7]
            if promo:
                gain += VALUE[promo] - VALUE[PAWN]
            if acc[them, to] > 0:
                gain -= RANK_VALUE[a[frm] & 7]
            sec = 50000 - gain
            if gain >= 0:
                cls = 0
                third = RANK_VALUE[a[frm] & 7]
        elif promo:
            cls = 0
            sec = 50000 - VALUE[promo]
        else:
            net = acc[side, to] - acc[them, to]
            if net > 0:
                cls = 1
                sec = 50000 - net
        keys[i] = (cls << 50) | (sec << 32) | (third << 16) | enc


@njit(cache=True)
def order(a, moves, n, acc, keys, tmp):
    order_keys(a, moves, n, acc, keys)
    # insertion sort: lists are short and this avoids an allocation per node
    for i in range(1, n):
        k = keys[i]
        m = moves[i]
        j = i - 1
        while j >= 0 and keys[j] > k:
            keys[j + 1] = keys[j]
            moves[j + 1] = moves[j]
            j -= 1
        keys[j + 1] = k
        moves[j + 1] = m


# ----------------------------------------------------------- quiescence

@njit(cache=True)
def quiesce(a, st, alpha, beta, ply, qply, cap, check_plies, bufs, acc, cheapest,
            keys, tmp, counter):
    counter[0] += 1
    moves = bufs[qply]
    if in_check(a):
        n = gen_legal(a, st, moves)
        if n == 0:
            return -(MATE - ply)
        if qply >= cap:
            return evaluate(a)
        best = -INF
        control(a, acc, cheapest)
        order(a, moves, n, acc, keys, tmp)
    else:
        best = evaluate(a)
        if qply >= cap or best >= beta:
            return best
        if best > alpha:
            alpha = best
        # filter first, then test legality of the few survivors
        n = gen_pseudo(a, moves)
        control(a, acc, cheapest)
        n = classify_quiescence(a, st, moves, n, acc, cheapest, qply < check_plies)
        n = keep_legal(a, st, moves, n)
        if n == 0:
            return best
        order(a, moves, n, acc, keys, tmp)
    for i in range(n):
        make(a, st, moves[i])
        v = -quiesce(a, st, -beta, -alpha, ply + 1, qply + 1, cap, check_plies, bufs,
                     acc, cheapest, keys, tmp, counter)
        unmake(a, st)
        if v > best:
            best = v
            if v > alpha:
                alpha = v
                if alpha >= beta:
                    break
    return best


@njit(cache=True)
def node_moves(a, st, moves, keyout, acc, cheapest, skeys, tmp):
    """Legal moves of an interior node, ordered, with their identity keys."""
    n = gen_legal(a, st, moves)
    if n > 1:
        control(a, acc, cheapest)
        order(a, moves, n, acc, skeys, tmp)
    move_keys(a, moves, n, keyout)
    return n
