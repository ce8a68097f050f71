"""Proof-arithmetic harness: fact, proposition witnesses, chain, suite."""

import json
from fractions import Fraction

import pytest

from tensorcert import (
    HypothesisViolated,
    check_interval_fact,
    default_config,
    fact_random_check,
    prop_q_witness,
    prop_r_witness,
    run_suite,
    stability_experiment,
    theorem_chain,
)
from tensorcert.harness import report_to_csv_rows


def test_interval_fact_examples():
    assert check_interval_fact(1, 5, Fraction(23, 10), Fraction(34, 10)).witness == 3
    assert check_interval_fact(2, 2, Fraction(3, 2), Fraction(5, 2)).witness == 2


def test_interval_fact_failed_hypothesis_reported():
    result = check_interval_fact(5, 1, Fraction(0), Fraction(10))
    assert not result.hypotheses["a<=b"]
    assert result.witness is None


def test_fact_randomized():
    assert fact_random_check(5000, 7) == 0


def test_prop_r_examples():
    w = prop_r_witness(3, 25, 2)
    assert (w.i, w.size) == (0, 12)
    assert w.all_hold
    w = prop_r_witness(2, 16, 2)
    assert w.i == 0 and w.all_hold
    with pytest.raises(HypothesisViolated):
        prop_r_witness(3, 8, 5)  # l < 8d
    with pytest.raises(HypothesisViolated):
        prop_r_witness(3, 24, 2)  # 24 is not a prime power


def test_prop_q_examples():
    w = prop_q_witness(3, 2, 16)
    assert (w.i, w.size) == (1, 2)
    assert w.all_hold
    assert 4 * 3 * w.size >= 16
    w = prop_q_witness(2, 3, 8)
    assert w.i == 0 and w.size == 1 and w.all_hold
    with pytest.raises(HypothesisViolated):
        prop_q_witness(3, 2, 11)  # n < 4d


def test_theorem_chain_examples():
    report = theorem_chain(3, 2)
    assert report.r == 10  # 2^8 = 256 < 576 <= 2^10
    assert report.checks["r_exponent_exact"]  # 2^2 = 4 <= 9
    assert report.all_hold
    assert theorem_chain(2, 64).r == 2
    rep = theorem_chain(3, 2, 10)
    assert rep.m == 2 and rep.all_hold  # (d-1)(2m-1) = 6 <= 9, 2dm = 12 >= 10
    assert rep.c_d == Fraction(1, 72)
    trivial = theorem_chain(3, 2, 9)
    assert trivial.trivial_n


def test_stability_small_run():
    report = stability_experiment(q=2, n=2, d=3, dims=(2, 2, 2), samples=10, seed=5)
    assert report.r_hat == 3 and report.q_hat == 1
    assert report.all_hold
    assert len(report.rows) == 10


def test_stability_zero_tensor_equality():
    # a zero tensor gives AR 0 on both sides; the exact inequalities
    # degenerate to equalities
    from tensorcert import Tensor, bias, extend, make_prime_field

    F2 = make_prime_field(2)
    K = extend(F2, 2)
    Z = Tensor.zero(F2, (2, 2, 2))
    b_small = bias(Z)
    b_big = bias(Z.base_change(K))
    N = b_small.exponent
    q_hat, r_hat, n = 1, 3, 2
    assert b_big.count == 2 ** ((n - q_hat) * N) * b_small.count**q_hat
    assert b_small.count**r_hat == 2 ** ((r_hat - n) * N) * b_big.count


def test_stability_d2_matrices():
    report = stability_experiment(q=2, n=4, d=2, dims=(3, 3), samples=15, seed=6)
    assert report.all_hold
    for row in report.rows:
        assert row["ar"] == row["ar_ext"]  # matrix rank is basis independent


def _small_config():
    return {
        "fact": {"samples": 500, "seed": 3},
        "prop_r": {
            "d_values": [2],
            "l_max": 17,
            "n_exhaustive_max": 8,
            "n_max": 1000,
            "random_samples": 3,
            "seed": 4,
        },
        "constants": {"d_values": [2], "q_values": [2, 3], "n_window": 3},
        "qmon": {"q_values": [2], "m_max": 2, "n_max": 3, "d_max": 3},
        "chudnovsky": {"d_max": 3, "n_max": 2, "q_values": [2, 3]},
        "places": {"q_values": [2], "n_max": 3},
        "stability": [
            {"q": 2, "n": 2, "d": 3, "format": [2, 2, 2], "samples": 5, "seed": 9}
        ],
        "expect_violation": [{"check": "prop_r", "d": 3, "l": 8, "n": 5}],
    }


def test_run_suite_small_passes():
    report, code = run_suite(_small_config())
    assert code == 0
    assert report["summary"]["status"] == "pass"
    assert report["sections"]["expect_violation"]["entries"][0]["status"] == "expected-violation"


def test_run_suite_deterministic():
    a, _ = run_suite(_small_config())
    b, _ = run_suite(_small_config())
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_run_suite_corrupt_certificate_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "rank-decomposition", "broken": true}')
    config = {"certificates": {"files": [str(bad)]}}
    report, code = run_suite(config)
    assert code == 2
    entry = report["sections"]["certificates"]["entries"][0]
    assert entry["status"] == "invalid"
    assert "CertificateInvalid" in entry["error"]


def test_run_suite_good_certificate(tmp_path):
    from tensorcert import chudnovsky_rank, make_prime_field

    deco = chudnovsky_rank(3, 2, make_prime_field(2))
    path = tmp_path / "good.json"
    path.write_text(json.dumps(deco.to_json()))
    report, code = run_suite({"certificates": {"files": [str(path)]}})
    assert code == 0


def test_csv_rows_deterministic():
    report, _ = run_suite({"fact": {"samples": 100, "seed": 1}})
    rows1 = report_to_csv_rows(report)
    rows2 = report_to_csv_rows(report)
    assert rows1 == rows2
    assert rows1[0] == ["section", "key", "value"]


def test_default_config_shape():
    config = default_config()
    assert {"fact", "prop_r", "prop_q", "constants", "qmon", "chudnovsky",
            "places", "stability"} <= set(config)
