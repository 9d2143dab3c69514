import clemens_lab as cl
import pytest


def test_exact_rank():
    assert cl.exact_rank([["1", "0"], ["0", "1"]]) == 2
    assert cl.exact_rank([["1/2", "1"], ["1", "2"]]) == 1
    with pytest.raises(cl.ClemensError):
        cl.exact_rank([["1", "2"], ["3"]])


def test_sample_invariants():
    s = cl.sample(2, 5)
    assert s["curve"]["d"] == 2
    assert cl.ladder_ranks(s) == (11, 10, 9)
    assert cl.splitting_type_tx(s) == [2, -1, -1]
    assert cl.normal_splitting(s) == [-1, -1]
    profile = cl.h0_profile(s)
    assert profile[0] == 3 and profile[-4] == 0


def test_verify_is_deterministic():
    a, code = cl.verify(degrees=[1], trials=2, suites="ladder,clemens")
    b, _ = cl.verify(degrees=[1], trials=2, suites="ladder,clemens", jobs=2)
    assert code == 0
    assert a == b
    assert all(t["ladder"]["tangent_dims"] == [4, 5, 6] for t in a["trials"])
    lines = cl.report_csv(a).strip().splitlines()
    assert len(lines) == 3


def test_specialization_on_incidence_reports_collapse():
    report, code = cl.verify(degrees=[1], trials=1, suites="specialization")
    assert code == 2
    assert report["trials"][0]["specialization"]["failed_predicate"] == "delta_collapse"


def test_verify_stored_sample():
    s = cl.sample(1, 3, special=True)
    report = cl.verify_sample(s)
    assert report["trials"][0]["pass"]


def test_invalid_config():
    with pytest.raises(cl.ClemensError):
        cl.verify(degrees=[9], trials=1)
