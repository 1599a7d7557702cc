"""Smoke test for the madkit_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
then run:
    python python/smoke_test.py
"""

import math

import madkit_py as mk


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    assert close(mk.asymptotic_factor(), 1.4826022185056, 1e-12)
    assert close(mk.normal_quantile(0.75), 0.674489750196082, 1e-12)
    assert close(mk.normal_cdf(0.0), 0.5, 1e-15)
    assert close(mk.reg_inc_beta(0.5, 3.0, 3.0), 0.5, 1e-15)

    for est in ("sm", "hd", "thd-sqrt"):
        assert mk.correction_factor(2, est) == math.sqrt(math.pi)
    assert mk.correction_factor(3, "sm") == 2.2049
    assert mk.correction_factor(10, "hd") == 1.5529
    assert mk.correction_factor(20, "thd-sqrt") == 1.5449

    v = mk.mad([0.0, 1.0], estimator="sm")
    assert v.uncorrected == 0.5 and v.n == 2 and v.estimator == "SM"
    assert close(v.corrected, 0.886226925452758, 1e-12)
    assert mk.mad([1.0, 2.0, 4.0], estimator="sm").corrected == 2.2049
    assert mk.mad_uncorrected([3.0] * 5, "hd") == 0.0
    hayes = mk.mad(list(range(12)), estimator="sm", model="hayes")
    assert hayes.factor > 1.48
    fitted = mk.correction_factor(50, "sm", alpha=0.0, beta=0.0)
    assert close(fitted, mk.asymptotic_factor(), 1e-14)

    assert close(sum(mk.hd_weights(7, 0.3)), 1.0, 1e-12)
    assert close(sum(mk.thd_weights(10, 0.5)), 1.0, 1e-12)
    assert mk.beta_hdi(1.0, 1.0, 0.5) is None
    left, right = mk.beta_hdi(2.5, 2.5, 0.5)
    assert close(left, 0.25, 1e-12) and close(right, 0.75, 1e-12)
    assert mk.median([0.0, 1.0, 2.0], "hd") == 1.0
    assert close(mk.quantile([1.0, 2.0, 3.0, 4.0], 0.5, "sm"), 2.5, 1e-15)

    try:
        mk.mad([1.0])
    except ValueError:
        pass
    else:
        raise AssertionError("n = 1 must be rejected")
    try:
        mk.correction_factor(8, "sm", model="hayes")
    except ValueError:
        pass
    else:
        raise AssertionError("Hayes below n = 9 must be rejected")

    x = mk.draw("normal(m=0,sd=1)", 1000, seed=7)
    assert x == mk.draw("normal(m=0,sd=1)", 1000, seed=7)
    assert len(mk.sensitivity_distributions()) == 20

    rows = mk.estimate_factors([2], 20000, 42, estimators=["sm"])
    assert close(rows[0]["c_n"], math.sqrt(math.pi), 0.03), rows
    eff = mk.efficiency([2, 4], 1000, 42)
    assert eff[0]["e_hd"] == 1.0 and eff[1]["e_thd"] == 1.0
    sens = mk.sensitivity(["pointmass(value=1)"], [5], 200, 1, estimators=["hd"])
    assert all(r["dispersion"] == 0.0 for r in sens)
    fit = mk.fit_prediction("sm")
    assert close(fit["alpha"], -0.7668, 0.02), fit
    assert mk.factor_tables_csv().startswith("n,c_sm,c_hd,c_thd_sqrt,c_park\n")

    print(f"madkit_py {mk.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
