"""Acceptance suite: one check per release criterion, with a PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
report. Two checks (the 220 km nonorthogonal target and full curve
dominance) encode headline figures that conservative photon-number bounds
cannot reach; they fail by design and their messages explain the gap.
"""

import math
import time

import numpy as np
import pytest

from decoyqkd import (
    GYS,
    IntensityConstraintError,
    IntensitySet,
    construct_intensity_set,
    estimate_photon_bounds,
    exact_stats,
    honest_gain,
    honest_qber,
    max_secure_distance,
    optimal_mu_sarg04,
    rate_at,
    reconstruct_gain,
    synthesize_tallies,
    validate_intensities,
    verify_bound_inequalities,
)

MU_GRID = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]
DISTANCE_GRID = list(range(0, 151, 10))


def check(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def fig1_distances():
    start = time.perf_counter()
    distances = {
        "bb84": max_secure_distance("bb84-decoy", 0.48, GYS),
        "sarg04": max_secure_distance("sarg04-no-decoy", "optimal", GYS),
        "nonorth_030": max_secure_distance("nonorthogonal-decoy", 0.30, GYS),
        "nonorth_048": max_secure_distance("nonorthogonal-decoy", 0.48, GYS),
    }
    distances["elapsed_s"] = time.perf_counter() - start
    return distances


class TestCriterion1MaximalDistances:
    def test_bb84_decoy_distance(self, fig1_distances):
        d = fig1_distances["bb84"]
        check("criterion 1: bb84-decoy mu=0.48 cutoff", abs(d - 142) <= 5, f"{d:.1f} km vs 142 +/- 5 km")

    def test_sarg04_no_decoy_distance(self, fig1_distances):
        d = fig1_distances["sarg04"]
        check(
            "criterion 1: sarg04-no-decoy optimal-mu cutoff",
            abs(d - 97) <= 5,
            f"{d:.1f} km vs 97 +/- 5 km",
        )

    def test_nonorthogonal_mu030_distance(self, fig1_distances):
        d = fig1_distances["nonorth_030"]
        check(
            "criterion 1: nonorthogonal-decoy mu=0.30 cutoff",
            abs(d - 220) <= 10,
            f"{d:.1f} km vs 220 +/- 10 km. Unreachable with conservative bounds: even "
            "substituting the exact single- and two-photon statistics for their bounds "
            "caps this curve near 159 km; the 220 km figure requires a single-photon "
            "yield estimate inflated by 1/mu, which criterion 3 forbids.",
        )

    def test_nonorthogonal_mu048_exceeds_bb84_target(self, fig1_distances):
        d = fig1_distances["nonorth_048"]
        check(
            "criterion 1: nonorthogonal-decoy mu=0.48 beyond 142 km",
            d > 142,
            f"{d:.1f} km vs > 142 km",
        )

    def test_runtime_budget(self, fig1_distances):
        elapsed = fig1_distances["elapsed_s"]
        check("criterion 1: runtime", elapsed < 10, f"{elapsed:.2f} s vs < 10 s")


class TestCriterion2CurveDominance:
    def test_nonorthogonal_dominates_bb84_at_mu048(self):
        violations = []
        for d in range(0, 251):
            bb84 = rate_at("bb84-decoy", 0.48, GYS, d).rate
            nonorth = rate_at("nonorthogonal-decoy", 0.48, GYS, d).rate
            if (bb84 > 0 or nonorth > 0) and nonorth < bb84:
                violations.append((d, bb84, nonorth))
        detail = "no violations on 0-250 km"
        if violations:
            d, bb84, nonorth = violations[0]
            detail = (
                f"{len(violations)} of 251 grid points violated, first at {d} km "
                f"(bb84 {bb84:.3e} > nonorthogonal {nonorth:.3e}). With one shared "
                "conservative bound pipeline, the 1/2 sifting factor of bb84-decoy "
                "necessarily beats the 1/4 of the nonorthogonal protocol at short "
                "distance; dominance at every distance only emerges if the "
                "nonorthogonal curve uses a non-conservative yield estimate."
            )
        check("criterion 2: curve dominance at mu=0.48", not violations, detail)


class TestCriterion3Conservativeness:
    def test_bounds_bracket_exact_values_on_grid(self):
        worst = {"y1": -np.inf, "e1": -np.inf, "y2": -np.inf, "e2": -np.inf}
        for d in DISTANCE_GRID:
            params = GYS.at_distance(d)
            for mu in MU_GRID:
                s = construct_intensity_set(mu)
                bounds = estimate_photon_bounds(synthesize_tallies(s, params), s)
                one = exact_stats(1, mu, params)
                two = exact_stats(2, mu, params)
                worst["y1"] = max(worst["y1"], bounds.y1_lower - one.detection_yield)
                worst["e1"] = max(worst["e1"], one.error_rate - bounds.e1_upper)
                worst["y2"] = max(worst["y2"], bounds.y2_lower - two.detection_yield)
                worst["e2"] = max(worst["e2"], two.error_rate - bounds.e2_upper)
        ok = all(v <= 1e-12 for v in worst.values())
        check(
            "criterion 3: bound conservativeness",
            ok,
            "max excess over exact values " + ", ".join(f"{k}={v:.2e}" for k, v in worst.items()),
        )


class TestCriterion4OptimalMuAsymptotics:
    def test_root_matches_asymptotic_and_residual(self):
        details = []
        ok = True
        for eta in (1e-5, 1e-4, 1e-3):
            mu = optimal_mu_sarg04(eta)
            approx = math.sqrt(2 * eta)
            rel_err = abs(mu - approx) / approx
            residual = abs(eta * math.exp(-eta * mu) - 0.5 * mu**2 * math.exp(-mu))
            ok = ok and rel_err < 0.05 and residual < 1e-10
            details.append(f"eta={eta:g}: rel_err={rel_err:.2%}, residual={residual:.1e}")
        check("criterion 4: optimal-mu asymptotics", ok, "; ".join(details))


class TestCriterion5InequalityLemmas:
    def test_lemmas_and_counterexample(self):
        report = verify_bound_inequalities()
        ok = (
            report.lemma1_max_excess <= 0
            and report.lemma2_max_excess <= 0
            and report.counterexample_excess > 0
        )
        check(
            "criterion 5: inequality lemmas",
            ok,
            f"lemma1 max excess {report.lemma1_max_excess:.2e}, "
            f"lemma2 max excess {report.lemma2_max_excess:.2e}, "
            f"out-of-domain counterexample excess {report.counterexample_excess:.2e}",
        )


class TestCriterion6OracleConsistency:
    def test_series_matches_closed_forms(self):
        worst = 0.0
        for d in DISTANCE_GRID:
            params = GYS.at_distance(d)
            for mu in MU_GRID:
                gain, qber = reconstruct_gain(mu, params)
                worst = max(
                    worst,
                    abs(gain - honest_gain(mu, params)),
                    abs(qber - honest_qber(mu, params)),
                )
        check("criterion 6: series vs closed form", worst < 1e-9, f"max |difference| {worst:.2e}")


class TestCriterion7ConstraintEnforcement:
    PASSING = [
        IntensitySet(0.30, 0.225, 0.11560359488618324, 0.05),
        IntensitySet(0.48, 0.36, 0.18496575181789318, 0.05),
    ]
    FAILING = [
        IntensitySet(0.30, 0.225, 0.11560359488618324, 0.0),  # nu3 > 0
        IntensitySet(0.30, 0.225, 0.11560359488618324, 0.2),  # nu3 < nu2
        IntensitySet(0.30, 0.225, 0.25, 0.05),  # nu2 <= 2mu/3
        IntensitySet(0.30, 0.19, 0.11560359488618324, 0.05),  # 2mu/3 < nu1
        IntensitySet(0.30, 0.24, 0.11560359488618324, 0.05),  # nu1 <= 3mu/4
        IntensitySet(0.60, 0.45, 0.14, 0.05),  # nu1 + nu2 > mu
        IntensitySet(0.30, 0.225, 0.19, 0.12),  # nu2 + nu3 < mu
        IntensitySet(0.30, 0.225, 0.11560359488618324 + 1e-6, 0.05),  # balance residual
    ]

    def test_passing_and_failing_cases(self):
        passed = sum(1 for s in self.PASSING if validate_intensities(s))
        rejected = 0
        for s in self.FAILING:
            with pytest.raises(IntensityConstraintError):
                validate_intensities(s)
            rejected += 1
        # construction-level enforcement as well
        construct_intensity_set(0.30, nu3=0.05)
        with pytest.raises(IntensityConstraintError):
            construct_intensity_set(0.30, nu3=0.2)
        check(
            "criterion 7: constraint enforcement",
            passed == len(self.PASSING) and rejected == len(self.FAILING),
            f"{passed} valid sets accepted, {rejected} invalid sets rejected individually",
        )
