import pytest

from grzcert import certify
from grzcert.errors import InvalidParameterError, ResourceLimitError
from grzcert.grz import BlockId, theorem_block_coefficients
from grzcert.report import dumps, ReportDocument
from grzcert.series import multi_inverse_grz


def test_desk_grz_examples():
    m = certify.run_desk_grz(4, 16)
    assert m.status == "pass"
    m = certify.run_desk_grz(2, 3)
    [rep] = m.reports
    assert m.status == "fail" and rep.witness == (2, 1) and rep.value == -1
    assert "expected-fail" in rep.notes and m.violations == 0
    m = certify.run_desk_grz(3, 6)
    assert m.status == "fail" and m.reports[0].value < 0


def test_desk_grz_cap():
    with pytest.raises(ResourceLimitError):
        certify.run_desk_grz(6, 10, max_monomials=1000)
    with pytest.raises(InvalidParameterError):
        certify.run_desk_grz(1, 3)


def test_desk_grz_prefix_property():
    for r, D in [(4, 12), (5, 9)]:
        assert certify.run_desk_grz(r, D).status == "pass"
        for d in range(D):
            assert certify.run_desk_grz(r, d).status == "pass"
    # a failing truncation stays failing when extended
    assert all(certify.run_desk_grz(3, d).status == "fail" for d in range(5, 9))


def test_lemma3_grid_examples():
    m = certify.run_lemma3_grid(2, 10)
    assert m.status == "pass" and len(m.reports) == 20
    m = certify.run_lemma3_grid(2, 1)
    rep = next(r for r in m.reports if r.params["l"] == 0)
    [iv] = rep.witness
    assert iv.exact and iv.lo == 1
    keys = [(r.params["n"], r.params["l"]) for r in certify.run_lemma3_grid(3, 3).reports]
    assert keys == sorted(keys)


def test_theorem_blocks_examples():
    m = certify.run_theorem_blocks(4, 12)
    assert m.status == "pass" and m.grid["cross_checked"]
    m = certify.run_theorem_blocks(2, 3)
    failing = [r for r in m.reports if r.status == "fail"]
    assert [(r.params["n"], r.params["l"]) for r in failing] == [(1, 1)]
    assert failing[0].witness == (2, 1)


def test_theorem_block_r8_degree8_boundary_zero():
    m = certify.run_theorem_blocks(8, 8, cross_check_cap=0)
    assert m.status == "pass" and not m.grid["cross_checked"]
    rep = next(r for r in m.reports if (r.params["n"], r.params["l"]) == (1, 0))
    assert rep.value == 0 and rep.witness == (1,) * 8


def test_theorem_blocks_cross_oracle_agrees():
    r, d_max = 3, 12
    oracle = multi_inverse_grz(r, d_max)
    for d in range(d_max + 1):
        for beta, v in theorem_block_coefficients(BlockId.from_degree(r, d)).items():
            assert oracle.coefficient(beta) == v


def test_lemma4_suite():
    m = certify.run_lemma4(9)
    assert m.status == "pass"
    m = certify.run_lemma4(4)
    assert m.status == "fail" and m.violations == 0


def test_lemma4_suite_r8_reports_the_cubic_violation():
    m = certify.run_lemma4(8)
    failing = [(r.params["k"], r.params["l"]) for r in m.reports if r.status == "fail"]
    assert failing == [(3, 0)] and m.violations == 1


def test_remark_threshold_r2_has_no_threshold():
    m = certify.run_remark_threshold(2, 2)
    scans = [r for r in m.reports if r.check_name == "lemma4_scan"]
    assert all(r.status == "fail" for r in scans if r.params["k"] >= 1)
    assert all(r.status == "pass" for r in scans if r.params["k"] == 0)
    assert m.reports[-1].status == "fail" and m.status == "fail"


def test_remark_threshold_r8():
    m = certify.run_remark_threshold(8, 5)
    summary = m.reports[-1]
    assert summary.params["threshold"] == 4 and m.status == "pass"
    flagged = sorted((r.params["k"], r.params["l"]) for r in m.reports if r.status == "flagged")
    assert flagged == [(1, 0), (3, 0)]
    by_kl = {(r.params["k"], r.params["l"]): r.status for r in m.reports if r.check_name == "lemma4_scan"}
    assert by_kl[(1, 1)] == by_kl[(2, 0)] == "pass"


def test_remark_threshold_r4_exploration():
    m = certify.run_remark_threshold(4, 4)
    assert m.expectation == "exploratory" and m.violations == 0
    assert m.reports[-1].check_name == "remark_threshold"


def test_lemma2_suite():
    m = certify.run_lemma2(3, [4], 200)
    assert m.status == "pass"
    m = certify.run_lemma2(2)
    assert m.status == "pass"
    m = certify.run_lemma2(3, [5])
    assert m.status == "pass" and any(r.status == "flagged" for r in m.reports)


def test_lemma5_suite_is_seeded():
    a = certify.default_lemma5_alphas(8, seed=3)
    b = certify.default_lemma5_alphas(8, seed=3)
    c = certify.default_lemma5_alphas(8, seed=4)
    assert a == b and a != c


def test_parallel_and_serial_manifests_identical():
    serial = [certify.run_lemma3_grid(3, 6), certify.run_remark_threshold(4, 3)]
    parallel = [certify.run_lemma3_grid(3, 6, jobs=3), certify.run_remark_threshold(4, 3, jobs=3)]
    cmd = {"subcommand": "test"}
    assert dumps(ReportDocument(cmd, serial)) == dumps(ReportDocument(cmd, parallel))


def test_unknown_suite():
    with pytest.raises(InvalidParameterError):
        certify.run_suite("lemma9", 4)
