"""CLI surface: round trips, reports, exit codes."""

import json

from tensorcert.cli import main


def _run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_mult_and_ar(tmp_path, capsys):
    tensor_path = tmp_path / "mult.json"
    code, _ = _run(capsys, "mult", "--q", "2", "--n", "2", "--d", "3",
                   "--json", str(tensor_path))
    assert code == 0
    code, out = _run(capsys, "ar", "--tensor", str(tensor_path), "--method", "both")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 7 and payload["exponent"] == 4 and payload["q"] == 2
    assert abs(payload["bias_char"] - 0.4375) < 1e-9


def test_tensor_roundtrip(tmp_path, capsys):
    src = tmp_path / "t.json"
    dst = tmp_path / "u.json"
    code, _ = _run(capsys, "mult", "--q", "3", "--n", "2", "--d", "2", "--json", str(src))
    assert code == 0
    code, _ = _run(capsys, "tensor", "convert", "--tensor", str(src), "--out", str(dst))
    assert code == 0
    a = json.dumps(json.loads(src.read_text()), sort_keys=True)
    b = json.dumps(json.loads(dst.read_text()), sort_keys=True)
    assert a == b


def test_qmon_and_verify_cert(tmp_path, capsys):
    cert_path = tmp_path / "qmon.json"
    code, _ = _run(capsys, "qmon", "--q", "2", "--m", "2", "--n", "3", "--d", "3",
                   "--json", str(cert_path))
    assert code == 0
    code, out = _run(capsys, "verify-cert", "--cert", str(cert_path))
    assert code == 0
    assert json.loads(out)["verified"]


def test_verify_cert_corrupted_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "restriction-certificate"}')
    code, _ = _run(capsys, "verify-cert", "--cert", str(bad))
    assert code == 2


def test_verify_cert_tampered_exits_2(tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    code, _ = _run(capsys, "subrank-cert", "--d", "3", "--n", "5", "--q", "4",
                   "--N", "3", "--json", str(cert_path))
    assert code == 0
    # flip an entry so the exact verification fails
    flipped = json.loads(cert_path.read_text())
    first = flipped["maps"][0][0][0]
    flipped["maps"][0][0][0] = 1 if first == 0 else 0
    cert_path.write_text(json.dumps(flipped))
    code, _ = _run(capsys, "verify-cert", "--cert", str(cert_path))
    assert code == 2


def test_rank_decomp_and_places(tmp_path, capsys):
    code, out = _run(capsys, "rank-decomp", "--d", "3", "--n", "2", "--q", "2")
    assert code == 0
    assert len(json.loads(out)["terms"]) == 3
    code, out = _run(capsys, "places", "--q", "3", "--n", "3")
    assert code == 0
    assert json.loads(out)["places"] == 8


def test_verify_fact(capsys):
    code, out = _run(capsys, "verify", "fact", "--a", "1", "--b", "5",
                     "--x", "23/10", "--y", "34/10")
    assert code == 0
    assert json.loads(out)["witness"] == 3


def test_verify_prop_r_violation_exits_2(capsys):
    code, _ = _run(capsys, "verify", "prop-r", "--d", "3", "--l", "8", "--n", "5")
    assert code == 2


def test_verify_constants(capsys):
    code, out = _run(capsys, "verify", "constants", "--d", "3", "--q", "2", "--n", "10")
    assert code == 0
    payload = json.loads(out)
    assert payload["r"] == 10 and payload["m"] == 2


def test_verify_stability(capsys):
    code, out = _run(capsys, "verify", "stability", "--q", "2", "--n", "2", "--d", "3",
                     "--format", "2x2x2", "--samples", "5", "--seed", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_hold"]


def test_verify_suite_with_toml_config(tmp_path, capsys):
    config = tmp_path / "suite.toml"
    config.write_text(
        "\n".join(
            [
                "[fact]",
                "samples = 200",
                "seed = 1",
                "[constants]",
                "d_values = [2]",
                "q_values = [2]",
                "n_window = 2",
                "[[expect_violation]]",
                'check = "prop_q"',
                "d = 3",
                "l = 2",
                "n = 11",
            ]
        )
    )
    json_out = tmp_path / "report.json"
    csv_out = tmp_path / "report.csv"
    code, _ = _run(capsys, "verify", "suite", "--config", str(config),
                   "--json", str(json_out), "--csv", str(csv_out))
    assert code == 0
    report = json.loads(json_out.read_text())
    assert report["summary"]["status"] == "pass"
    assert csv_out.read_text().startswith("section,key,value")


def test_suite_rerun_byte_identical(tmp_path, capsys):
    config = tmp_path / "suite.toml"
    config.write_text("[fact]\nsamples = 300\nseed = 17\n")
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert _run(capsys, "verify", "suite", "--config", str(config), "--json", str(out1))[0] == 0
    assert _run(capsys, "verify", "suite", "--config", str(config), "--json", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
