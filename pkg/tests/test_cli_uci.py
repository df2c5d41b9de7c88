import csv
import io

import chess

from movechains import uci
from movechains.cli import main
from movechains.harness import BENCH_SUMMARY_COLUMNS
from movechains.search import SearchConfig


def run_uci(lines, cfg=None):
    out, err = io.StringIO(), io.StringIO()
    uci.run(io.StringIO("\n".join(lines) + "\n"), out, err, cfg)
    return out.getvalue().splitlines(), err.getvalue()


def bestmove(lines):
    return [l.split()[1] for l in lines if l.startswith("bestmove")]


def test_handshake():
    out, _ = run_uci(["uci", "isready", "quit"])
    assert out[0] == "id name movechains"
    assert "uciok" in out and out[-1] == "readyok"


def test_startpos_depth_one_is_legal():
    out, _ = run_uci(["position startpos", "go depth 1"])
    (mv,) = bestmove(out)
    assert chess.Move.from_uci(mv) in chess.Board().legal_moves


def test_position_with_moves():
    out, _ = run_uci(["position startpos moves e2e4 e7e5", "go depth 2"])
    b = chess.Board()
    b.push_uci("e2e4")
    b.push_uci("e7e5")
    assert chess.Move.from_uci(bestmove(out)[0]) in b.legal_moves


def test_mate_in_one():
    out, _ = run_uci(["position fen 6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1", "go depth 2"])
    assert bestmove(out) == ["a1a8"]


def test_malformed_fen_keeps_state():
    out, _ = run_uci(["position startpos moves e2e4", "position fen not/a/fen w - - 0 1",
                      "go depth 1"])
    assert any(l.startswith("info string error") for l in out)
    b = chess.Board()
    b.push_uci("e2e4")
    assert chess.Move.from_uci(bestmove(out)[0]) in b.legal_moves


def test_illegal_move_in_position_keeps_state():
    out, _ = run_uci(["position startpos moves e2e5", "go depth 1"])
    assert any(l.startswith("info string error") for l in out)
    assert chess.Move.from_uci(bestmove(out)[0]) in chess.Board().legal_moves


def test_unknown_command_warns_and_continues():
    out, err = run_uci(["xyzzy", "isready"])
    assert "unknown command" in err and out == ["readyok"]


def test_setoption_maps_to_config():
    s = uci.UciSession(SearchConfig(), io.StringIO(), io.StringIO())
    s.handle("setoption name beam value 2")
    s.handle("setoption name use_chains value false")
    s.handle("setoption name reliability_window value 80")
    assert (s.cfg.beam_x, s.cfg.use_chains, s.cfg.reliability_window) == (2, False, 80)
    s.handle("setoption name beam value -3")
    assert s.cfg.beam_x == 2


def test_go_movetime():
    out, _ = run_uci(["position startpos", "go movetime 100"])
    assert len(bestmove(out)) == 1


def test_mated_position_reports_null_move():
    out, _ = run_uci(["position fen R5k1/5ppp/8/8/8/8/8/6K1 b - - 1 1", "go depth 1"])
    assert bestmove(out) == ["0000"]


def test_quit_stops_reading():
    out, _ = run_uci(["quit", "isready"])
    assert out == []


def test_cli_bench(tmp_path, capsys):
    game = tmp_path / "g.txt"
    game.write_text("startpos\ne2e4 e7e5 g1f3\n")
    rows = tmp_path / "rows.csv"
    assert main(["bench", "--game", str(game), "--depth", "2", "--configs", "standard,chains",
                 "--rows", str(rows)]) == 0
    summary = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert tuple(summary[0]) == BENCH_SUMMARY_COLUMNS
    assert [r[0] for r in summary[1:]] == ["standard", "chains"]
    assert len(rows.read_text().splitlines()) == 1 + 2 * 3


def test_cli_bench_specs(tmp_path, capsys):
    game = tmp_path / "g.txt"
    game.write_text("startpos\ne2e4\n")
    main(["bench", "--game", str(game), "--depth", "2",
          "--configs", "chains=on,tables=on,beam=1;chains=on,tables=on,beam=2,name=b2"])
    summary = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(summary) == 3 and summary[2][0] == "b2"


def test_cli_dump_tables(tmp_path, capsys):
    out = tmp_path / "tables"
    assert main(["dump-tables", "--out", str(out), "--depth", "2", "--positions", "4",
                 "--chains"]) == 0
    assert (out / "table_WQ.csv").exists() and (out / "chains.txt").exists()
    assert (out / "paths.txt").read_text().strip()


def test_cli_match(tmp_path, capsys):
    pgn = tmp_path / "games.pgn"
    code = main(["match", "--white", "standard,depth=1", "--black", "chains,depth=1",
                 "--games", "2", "--tc", "2000", "--pgn", str(pgn)])
    out = capsys.readouterr().out
    assert code == 0
    assert "illegal: 0" in out and pgn.read_text().count("[Result") == 2
