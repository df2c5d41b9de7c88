"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The slow ones (the depth-5 game benchmark and the timed match) are marked
``slow``; ``pytest -m "not slow"`` skips them.
"""
import random
import time

import chess
import pytest

from conftest import played_fens, random_fens
from movechains import _kernel as K
from movechains.chains import ChainStore
from movechains.core import apply_move, decode, initial_position, legal_moves, parse_fen, perft
from movechains.harness import bench, bundled_game, load_openings, parse_config, run_match
from movechains.search import SearchConfig, Searcher, search_root
from movechains.tables import NOT_CONSIDERED, MoveTableSet
from oracle_minimax import minimax
import oracle_movegen
from test_tables import EXAMPLE, assert_same, nonzero, run_conservation


def test_criterion_1_perft(acceptance):
    expected = {1: 20, 2: 400, 3: 8902, 4: 197281}
    t = time.perf_counter()
    got = {d: perft(initial_position(), d) for d in expected}
    dt = time.perf_counter() - t
    start = oracle_movegen.State(chess.STARTING_FEN)
    brute = {d: oracle_movegen.perft(start, d) for d in expected}
    ok = got == expected == brute and dt < 10
    acceptance(1, ok, f"perft 1-4 {list(got.values())}, brute-force oracle {list(brute.values())}, "
                      f"engine {dt:.2f}s (< 10s)")
    assert ok


def test_criterion_2_minimax_equivalence(acceptance):
    t = time.perf_counter()
    fens = played_fens(50, seed=99)
    cfg = SearchConfig.standard(max_depth=3)
    bad = []
    for fen in fens:
        pos = parse_fen(fen)
        if search_root(pos, cfg=cfg).value != minimax(pos, 3, cfg):
            bad.append(fen)
    dt = time.perf_counter() - t
    ok = not bad and dt < 120
    acceptance(2, ok, f"{len(fens) - len(bad)}/{len(fens)} root values equal depth-3 minimax "
                      f"in {dt:.0f}s (< 120s)")
    assert ok


NODE_CONFIGS = ("standard", "chains", "beam1,table_search=search",
                  "beam2,table_search=search", "beam4,table_search=search")
NODE_REPLAY = ("beam1,name=beam1-replay", "beam2,name=beam2-replay", "beam4,name=beam4-replay")


@pytest.mark.slow
def test_criterion_3_node_counts(acceptance):
    # table moves are searched in full ahead of the rest; the replay
    # variants are reported alongside for reference
    game = bundled_game()
    t = time.perf_counter()
    rep = bench(game, 5, [parse_config(s) for s in NODE_CONFIGS])
    dt = time.perf_counter() - t
    std, ch = rep.mean("standard"), rep.mean("chains")
    b1, b2, b4 = rep.mean("beam1"), rep.mean("beam2"), rep.mean("beam4")
    a_ok = ch <= 0.20 * std
    b_ok = b1 >= 5 * ch
    c_ok = all(0.5 * b1 <= b <= 1.5 * b1 for b in (b2, b4))
    t_ok = dt < 30 * 60
    print(rep.summary_csv())
    replay = bench(game, 5, [parse_config(s) for s in NODE_REPLAY])
    print(replay.summary_csv())
    ok = a_ok and b_ok and c_ok and t_ok
    acceptance(3, ok, f"{len(game.moves)} positions, depth 5: standard {std:.0f}, chains {ch:.0f} "
                      f"({ch / std:.1%}, (a) <= 20% {'ok' if a_ok else 'no'}); beam1 {b1:.0f} "
                      f"({b1 / ch:.2f}x chains, (b) >= 5x {'ok' if b_ok else 'no'}); beam2 {b2:.0f} "
                      f"({b2 / b1:.2f}x), beam4 {b4:.0f} ({b4 / b1:.2f}x) "
                      f"((c) 0.5-1.5x {'ok' if c_ok else 'no'}); {dt / 60:.1f} min; replay variant "
                      + ", ".join(f"{c} {replay.mean(c):.0f}" for c in replay.configs()))
    assert ok


def _first_ordered(pos):
    s = Searcher(pos, None, None, SearchConfig.standard())
    sc = s._s
    K.node_moves(s.pos.a, s.pos.st, s._moves[0], s._keys[0], sc.acc, sc.cheapest, sc.keys, sc.tmp)
    return decode(s.pos, int(s._moves[0, 0]))


def _continuation(pos, first, rng):
    p = pos.copy()
    line = [first]
    apply_move(p, first)
    for _ in range(rng.randint(0, 2)):
        moves = legal_moves(p)
        if not moves:
            break
        line.append(rng.choice(moves))
        apply_move(p, line[-1])
    return line


def test_criterion_4_reliability_fuzz(acceptance):
    rng = random.Random(4)
    fens = random_fens(1000, seed=44)
    window = 50
    perturbed = rejected = failed = adopted = 0
    for i, fen in enumerate(fens):
        pos = parse_fen(fen)
        ref = search_root(pos, cfg=SearchConfig.standard(max_depth=1)).value
        probe = Searcher(pos, None, None, SearchConfig.standard())
        if i % 2 == 0:
            # table kind: up to four stored paths, every one perturbed
            tables = MoveTableSet()
            for first in rng.sample(legal_moves(pos), min(4, len(legal_moves(pos)))):
                line = _continuation(pos, first, rng)
                true, _ = probe.path_then_quiescence(line, 1)
                delta = (window + rng.randint(1, 400)) * rng.choice((-1, 1))
                tables.reinforce_path(line, true + delta, pos.fullmove_number)
            k = len(tables.get_paths(pos, 4))
            cfg = SearchConfig(max_depth=1, beam_x=4, use_chains=False, reliability_window=window)
            r = search_root(pos, None, tables, cfg)
            perturbed += k
            rejected += r.stats.table_paths_rejected
            ok = r.stats.table_paths_tried == r.stats.table_paths_rejected == k
        else:
            # chain kind: a stale chain on the move searched first
            first = _first_ordered(pos)
            line = _continuation(pos, first, rng)
            true, _ = probe.path_then_quiescence(line, 1)
            chains = ChainStore()
            chains.record_cutoff(line, true + (window + rng.randint(1, 400)) * rng.choice((-1, 1)))
            cfg = SearchConfig(max_depth=1, use_tables=False, persist_chains=True,
                               reliability_window=window)
            r = search_root(pos, chains, None, cfg)
            perturbed += 1
            failed += r.stats.chain_failures
            ok = r.stats.chain_failures == 1 and r.stats.chain_hits == 0
        if not ok or r.value != ref:
            adopted += 1
    good = adopted == 0 and perturbed == rejected + failed
    acceptance(4, good, f"{len(fens)} pairs, {perturbed} perturbed stores: {rejected} paths "
                        f"rejected + {failed} chains failed; {adopted} pairs kept a stale value")
    assert good


def test_criterion_5_table_semantics(acceptance):
    ts = MoveTableSet()
    ts.reinforce_path(EXAMPLE, 0, 1)
    cells = nonzero(ts)
    tables = {(c, p) for c, p, _ in cells}
    example_ok = len(cells) == 6 and len(tables) == 3 and set(cells.values()) == {1}
    ts, ref = run_conservation(10_000, seed=5)
    try:
        assert_same(ts, ref)
        cons_ok = True
    except AssertionError:
        cons_ok = False
    ok = example_ok and cons_ok
    acceptance(5, ok, f"example: {len(cells)} cells in {len(tables)} tables; "
                      f"10000-op conservation {'exact' if cons_ok else 'MISMATCH'}")
    assert ok


def test_criterion_6_importance_partition(acceptance):
    rng = random.Random(6)
    bad = 0
    for trial in range(500):
        ts = MoveTableSet()
        t = ts.table(True, rng.randint(1, 6))
        for sq in range(64):
            t[sq] = rng.choice([0, 0, 0, rng.randint(-40, 40)])
        imp = ts.importance_map(*next((c, p) for (c, p), v in ts.tables.items() if v is t))
        zero = {sq for sq in range(64) if t[sq] == 0}
        nc = {sq for sq in range(64) if imp.buckets[sq] == NOT_CONSIDERED}
        if len(imp.buckets) != 64 or nc != zero:
            bad += 1
    ok = bad == 0
    acceptance(6, ok, f"500 random tables: 64-square partition with not-considered == zero "
                      f"weight, {bad} violations")
    assert ok


@pytest.mark.slow
def test_criterion_7_match(acceptance):
    a, b = parse_config("beam4"), parse_config("standard+tt")
    t = time.perf_counter()
    rep = run_match(a, b, 10, 60_000, load_openings())
    dt = time.perf_counter() - t
    ok = len(rep.games) == 10 and rep.illegal_moves == 0
    reasons = ", ".join(sorted({g.reason for g in rep.games}))
    acceptance(7, ok, f"10 games at 60s/game: beam4 {rep.score('beam4')} - standard+tt "
                      f"{rep.score('standard+tt')}, {rep.illegal_moves} illegal moves "
                      f"({reasons}; {dt / 60:.1f} min)")
    assert ok


def test_criterion_8_table_usage_logged(acceptance):
    game = bundled_game()
    rec = type(game)(game.fen, game.moves[:20], {})
    rep = bench(rec, 4, [parse_config("beam4")])
    fractions = [r["table_usage_fraction"] for r in rep.rows]
    ok = len(fractions) == 20 and all(0.0 <= f <= 1.0 for f in fractions)
    acceptance(8, ok, f"table_usage_fraction logged per position (informational): mean "
                      f"{rep.mean('beam4', 'table_usage_fraction'):.2f} over 20 positions at depth 4")
    assert ok
