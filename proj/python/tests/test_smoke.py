import math

import pytest

import unruhent as ue


def params(n, aL=0.0):
    p = ue.PhysicalParams()
    p.n_char = n
    return ue.with_aL(p, aL)


def test_closed_forms():
    assert ue.conformal_length(params(6, 2.0)) == pytest.approx(math.asinh(1.0), rel=1e-14)
    assert ue.beta_estimate(params(100, 0.04)) == pytest.approx(2 ** -0.25, rel=1e-14)
    p = params(6, 0.7)
    assert ue.bose_einstein_occupation(0.7 * math.log(2) / (2 * math.pi), p) == pytest.approx(1.0, rel=1e-12)


def test_covariance_round_trip():
    for s in (0.25, 0.5, 1.0, 2.0):
        sigma = ue.build_covariance(1, 1, 0, 0.0, s)
        assert ue.log_negativity(sigma) == pytest.approx(2 * s, abs=1e-12)
        ok, eig = ue.physicality_check(sigma)
        assert ok and eig > -1e-9
    ok, eig = ue.physicality_check([[0.5, 0, 0, 0], [0, 0.5, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert not ok and eig == pytest.approx(-0.5)


def test_point_and_sweep():
    row = ue.evaluate_point(params(6), "gaussian")
    assert row["e_n"] == pytest.approx(2.0, rel=1e-6)
    rows = ue.sweep(n_char=6, k_min_detector=0.5, aL_values=[0.05, 1.0], s_values=[1],
                    models=["gaussian", "optimized"])
    assert len(rows) == 4
    by = {(r["detector_model"], r["aL_over_c2"]): r["e_n"] for r in rows}
    for aL in (0.05, 1.0):
        assert by[("optimized", aL)] >= by[("gaussian", aL)] - 1e-6
    assert ue.csv_header.split(",")[0] == "aL_over_c2"


def test_errors():
    with pytest.raises(ue.ConfigError):
        ue.sweep(bogus=1)
    with pytest.raises(ue.DomainError):
        ue.bose_einstein_occupation(0.0, params(6, 1.0))


def test_checks_pass_at_a_point():
    res = ue.run_checks(n_char=6, a_over_c2_times_L=0.5)
    assert res and all(r["status"] == "pass" or r["status"].startswith("skipped") for r in res)
