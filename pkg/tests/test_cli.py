import io
import json
import sys
from pathlib import Path

from brauer_kit.cli import main

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "brauer_kit" / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_ciphertext(capsys):
    code, out, err = run(
        capsys, "analyze", "--ciphertext", "OOPAELRIXFGGBWDODDEPK", "--keylen", "4"
    )
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "1"
    assert (data["dimLambda"], data["dimCenter"], data["loops"]) == (35, 14, 9)
    assert list(data) == [
        "schema", "dimLambda", "dimCenter", "loops", "polygons", "vertices",
        "valencyHistogram",
    ]


def test_analyze_is_deterministic(capsys):
    _, first, _ = run(capsys, "analyze", "--ciphertext", "OOPAELRIXFGGBWDODDEPK", "--keylen", "4")
    _, second, _ = run(capsys, "analyze", "--ciphertext", "OOPAELRIXFGGBWDODDEPK", "--keylen", "4")
    assert first == second


def test_analyze_score_fixture(capsys):
    code, out, _ = run(capsys, "analyze", "--score", str(FIXTURES / "canon_a6.bsc"))
    assert code == 0
    data = json.loads(out)
    assert (data["dimLambda"], data["dimCenter"], data["loops"]) == (109, 22, 12)


def test_analyze_config_file(capsys, tmp_path):
    path = tmp_path / "vig.cfg"
    path.write_text("O E X B D K\nO L F W D\nP R G D E\nA I G O P\n")
    code, out, _ = run(capsys, "analyze", "--config", str(path))
    assert code == 0
    assert json.loads(out)["dimLambda"] == 35


def test_analyze_requires_exactly_one_source(capsys):
    code, _, err = run(
        capsys, "analyze", "--ciphertext", "AB", "--keylen", "1",
        "--score", str(FIXTURES / "slym.bsc"),
    )
    assert code == 2
    assert "error[E_CONFIG]" in err


def test_analyze_ciphertext_needs_keylen(capsys):
    code, _, err = run(capsys, "analyze", "--ciphertext", "ABCD")
    assert code == 2
    assert "error[E_CONFIG]" in err


def test_analyze_bad_ciphertext_character(capsys):
    code, _, err = run(capsys, "analyze", "--ciphertext", "AB3D", "--keylen", "2")
    assert code == 2
    assert "error[E_CIPHER]" in err


def test_analyze_verify_passes(capsys, monkeypatch):
    monkeypatch.setenv("BRAUER_KIT_COLOR", "never")
    code, out, _ = run(capsys, "analyze", "--verify")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8
    assert all(line.startswith("PASS") for line in lines)


def test_encrypt_vigenere(capsys, tmp_path):
    src = tmp_path / "plain.txt"
    src.write_text("classicalcryptography")
    code, out, _ = run(
        capsys, "encrypt", "--system", "vigenere", "--key", "MDPI", "--in", str(src)
    )
    assert code == 0
    assert out.strip() == "OOPAELRIXFGGBWDODDEPK"


def test_decrypt_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("OOPAELRIXFGGBWDODDEPK"))
    code, out, _ = run(capsys, "decrypt", "--system", "vigenere", "--key", "MDPI")
    assert code == 0
    assert out.strip() == "CLASSICALCRYPTOGRAPHY"


def test_encrypt_transposition(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("CRYPTOGRAPHY"))
    code, out, _ = run(capsys, "encrypt", "--system", "transposition", "--key", "3 4 1 2")
    assert code == 0
    assert out.strip() == "YPCRGRTOHYAP"


def test_transposition_round_trip_via_cli(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("YPCRGRTOHYAP"))
    code, out, _ = run(capsys, "decrypt", "--system", "transposition", "--key", "3 4 1 2")
    assert code == 0
    assert out.strip() == "CRYPTOGRAPHY"


def test_transposition_partition_mismatch(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("CRYPTO"))
    code, _, err = run(capsys, "encrypt", "--system", "transposition", "--key", "3 4 1 2")
    assert code == 2
    assert "error[E_CIPHER]" in err


def test_attack_report_schema(capsys, tmp_path):
    import random
    sys.path.insert(0, str(Path(__file__).parent))
    from textgen import sample_english
    from brauer_kit.cipher import VigenereKey, vigenere_encrypt

    rng = random.Random(123)
    cipher = vigenere_encrypt(sample_english(rng, 600), VigenereKey.from_text("LEO"))
    out_path = tmp_path / "report.json"
    code, _, _ = run(
        capsys, "attack", "--ciphertext", cipher, "--max-keylen", "6",
        "--out", str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["schema"] == "1"
    assert report["keylengthCandidates"][0]["m"] == 3
    assert len(report["keylengthCandidates"][0]["perListIoC"]) == 3
    assert report["keyCandidates"][0]["key"] == "LEO"
    assert set(report["brauer"]) == {"dimLambda", "dimCenter", "loops"}


def test_attack_rejects_short_input(capsys):
    code, _, err = run(capsys, "attack", "--ciphertext", "ABCD", "--max-keylen", "8")
    assert code == 2
    assert "error[E_CIPHER]" in err


def test_score_check_strict_failure(capsys):
    code, _, err = run(capsys, "score-check", str(FIXTURES / "canon_crab.bsc"))
    assert code == 2
    assert "error[E_SCORE_PARSE]" in err
    assert "measure 18" in err


def test_score_check_lax(capsys):
    code, out, _ = run(capsys, "score-check", str(FIXTURES / "canon_crab.bsc"), "--lax")
    assert code == 0
    assert "warning: measure 18" in out
    assert "OK: 18 measures" in out


def test_score_check_clean_fixture(capsys):
    code, out, _ = run(capsys, "score-check", str(FIXTURES / "canon_a6.bsc"))
    assert code == 0
    assert "OK: 9 measures" in out
    assert "time 4/4" in out


def test_graph_outputs(capsys, tmp_path):
    svg_path = tmp_path / "a6.svg"
    json_path = tmp_path / "a6.json"
    code, out, _ = run(
        capsys, "graph", str(FIXTURES / "canon_a6.bsc"),
        "--svg", str(svg_path), "--json", str(json_path),
    )
    assert code == 0
    assert out == ""
    data = json.loads(json_path.read_text())
    assert len(data["points"]) == 16
    svg = svg_path.read_text()
    assert svg.startswith("<?xml") and "<polyline" in svg


def test_graph_stdout_and_orientation(capsys):
    code, out, _ = run(
        capsys, "graph", str(FIXTURES / "canon_a6.bsc"), "--orientation", "reversed"
    )
    assert code == 0
    data = json.loads(out)
    point = next(p for p in data["points"] if p["label"] == "a16")
    assert point["y"] == -4


def test_graph_edges_sidecar(capsys, tmp_path):
    edges = tmp_path / "edges.txt"
    edges.write_text("1 3\n")
    code, out, _ = run(
        capsys, "graph", str(FIXTURES / "canon_a6.bsc"), "--edges", str(edges)
    )
    assert code == 0
    assert [1, 3] in json.loads(out)["edges"]


def test_graph_connect_equal_y_flag(capsys):
    _, plain_out, _ = run(capsys, "graph", str(FIXTURES / "canon_a6.bsc"))
    _, joined_out, _ = run(
        capsys, "graph", str(FIXTURES / "canon_a6.bsc"), "--connect-equal-y"
    )
    plain = json.loads(plain_out)["edges"]
    joined = json.loads(joined_out)["edges"]
    assert [9, 10] not in plain and [9, 10] in joined


def test_graph_bad_edge_rejected(capsys, tmp_path):
    edges = tmp_path / "edges.txt"
    edges.write_text("0 99\n")
    code, _, err = run(
        capsys, "graph", str(FIXTURES / "canon_a6.bsc"), "--edges", str(edges)
    )
    assert code == 2
    assert "error[E_DIAGRAM]" in err


def test_graph_lax_required_for_crab(capsys):
    code, _, err = run(capsys, "graph", str(FIXTURES / "canon_crab.bsc"))
    assert code == 2
    code, out, _ = run(capsys, "graph", str(FIXTURES / "canon_crab.bsc"), "--lax")
    assert code == 0
    assert len(json.loads(out)["points"]) == 28


def test_missing_file_is_io_error(capsys):
    code, _, err = run(capsys, "score-check", "no-such-file.bsc")
    assert code == 2
    assert "error[E_IO]" in err
