import csv
import io

import chess
import pytest

from movechains.harness import (BENCH_ROW_COLUMNS, BENCH_SUMMARY_COLUMNS, MATCH_COLUMNS,
                                BenchReport, Engine, GameRecord, bench, bundled_game, dump_tables,
                                load_openings, parse_config, parse_game, play_game, run_match)
from movechains.search import SearchConfig, search_root
from movechains.tables import NOT_CONSIDERED, MoveTableSet

QUEEN = 5


@pytest.fixture(scope="module")
def short_game():
    g = bundled_game()
    return GameRecord(g.fen, g.moves[:8], {})


def test_bundled_game_is_long_and_legal():
    g = bundled_game()
    assert len(g.positions()) >= 90
    b = chess.Board(g.fen)
    for m in g.moves:
        b.push_uci(m.uci())


def test_game_record_roundtrip():
    g = bundled_game()
    again = parse_game(g.to_text())
    assert again.fen == g.fen and again.moves == g.moves


def test_game_record_rejects_illegal_move():
    with pytest.raises(ValueError):
        parse_game("startpos\ne2e5\n").positions()


def test_parse_config_presets_and_specs():
    assert parse_config("standard").use_chains is False
    c = parse_config("chains=on,tables=on,beam=4,window=50")
    assert (c.use_chains, c.use_tables, c.beam_x, c.reliability_window) == (True, True, 4, 50)
    c = parse_config("beam2,window=80,table_search=search")
    assert (c.beam_x, c.reliability_window, c.table_search, c.name) == (2, 80, "search", "beam2")
    assert parse_config("tables=off").beam_x == 0
    for bad in ("nonsense", "beam=x", "chains=maybe", "colour=red"):
        with pytest.raises(ValueError):
            parse_config(bad)


def test_bench_deterministic_and_aggregates(short_game):
    configs = [parse_config(s) for s in ("standard", "chains", "beam2")]
    a = bench(short_game, 3, configs)
    b = bench(short_game, 3, configs)
    assert a.rows == b.rows
    assert len(a.rows) == 3 * 8
    for row in a.summary():
        mine = [r for r in a.rows if r["config"] == row["config"]]
        assert row["positions"] == len(mine)
        assert row["mean_negamax_nodes"] == sum(r["negamax_nodes"] for r in mine) / len(mine)
    ref = a.mean("standard")
    assert a.summary()[1]["times_less"] == ref / a.mean("chains")


def test_bench_single_position_aggregate_equals_row(short_game):
    rec = GameRecord(short_game.fen, short_game.moves[:1], {})
    rep = bench(rec, 2, [parse_config("standard")])
    (row,), (summ,) = rep.rows, rep.summary()
    assert summ["mean_negamax_nodes"] == row["negamax_nodes"]
    assert summ["times_less"] == 1.0


def test_bench_csv_columns(short_game):
    rep = bench(GameRecord(short_game.fen, short_game.moves[:2], {}), 2,
                [parse_config("standard"), parse_config("beam1")])
    rows = list(csv.reader(io.StringIO(rep.rows_csv())))
    assert tuple(rows[0]) == BENCH_ROW_COLUMNS and len(rows) == 5
    summ = list(csv.reader(io.StringIO(rep.summary_csv())))
    assert tuple(summ[0]) == BENCH_SUMMARY_COLUMNS and len(summ) == 3


def test_bench_reset_per_position_differs_only_in_memory(short_game):
    cfg = [parse_config("beam1")]
    kept = bench(short_game, 3, cfg)
    reset = bench(short_game, 3, cfg, reset_per_position=True)
    assert kept.rows[0] == reset.rows[0]


def test_empty_report_summary_without_reference():
    rep = BenchReport([{"config": "x", "negamax_nodes": 4, "quiescence_nodes": 1,
                        "table_usage_fraction": 0.0}])
    assert rep.summary()[0]["times_less"] == ""


def test_openings_bundled():
    ops = load_openings()
    assert len(ops) >= 5
    for line in ops:
        b = chess.Board()
        for tok in line:
            b.push_uci(tok)


def test_self_match_scores_sum_to_games():
    cfg = SearchConfig.standard(max_depth=2, name="d2")
    rep = run_match(cfg, cfg, 2, 4000, load_openings())
    assert len(rep.games) == 2
    names = {rep.games[0].white, rep.games[0].black}
    assert names == {"d2#A", "d2#B"}
    assert sum(rep.score(n) for n in names) == 2.0
    assert rep.illegal_moves == 0
    for g in rep.games:
        b = chess.Board()
        for m in g.moves:
            mv = chess.Move.from_uci(m.uci())
            assert mv in b.legal_moves
            b.push(mv)
    rows = list(csv.reader(io.StringIO(rep.table_csv())))
    assert tuple(rows[0]) == MATCH_COLUMNS
    assert rep.pgn().count("[Result") == 2


def test_game_ends_on_checkmate():
    # black to move is already mated
    g = play_game(Engine(SearchConfig(max_depth=1)), Engine(SearchConfig(max_depth=1)), 1000,
                  fen="R5k1/5ppp/8/8/8/8/8/6K1 b - - 1 1")
    assert (g.result, g.reason) == ("1-0", "checkmate")


def test_game_ends_on_insufficient_material():
    g = play_game(Engine(SearchConfig(max_depth=1)), Engine(SearchConfig(max_depth=1)), 1000,
                  fen="8/8/4k3/8/8/3NK3/8/8 w - - 0 1")
    assert g.reason == "insufficient-material" and g.result == "1/2-1/2"


def test_dump_tables_fresh(tmp_path):
    files = dump_tables(MoveTableSet(), tmp_path)
    assert len(files) == 12 * 3 + 2
    grid = (tmp_path / "table_WQ.csv").read_text().splitlines()
    assert len(grid) == 65 and all(line.endswith(",0") for line in grid[1:])
    best = list(csv.DictReader(io.StringIO((tmp_path / "best_squares.csv").read_text())))
    assert all(r["best_squares"] == "" for r in best)


def test_queen_importance_after_bench():
    g = bundled_game()
    tables = MoveTableSet()
    cfg = parse_config("beam4").with_(max_depth=3)
    for pos in g.positions()[:30]:
        search_root(pos, None, tables, cfg)
    found = False
    for color in (True, False):
        imp = tables.importance_map(color, QUEEN)
        assert len(imp.buckets) == 64
        stored = any(m.piece == QUEEN and m.color == color for p in tables.paths.values()
                     for m in p.moves)
        if stored:
            found = True
            assert any(b != NOT_CONSIDERED for b in imp.buckets)
    assert found
