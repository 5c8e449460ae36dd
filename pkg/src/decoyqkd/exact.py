"""Brute-force per-photon-number statistics of the honest channel.

Independent of the estimation pipeline: yields and error rates are
computed photon number by photon number and Poisson-summed, so the decoy
bounds can be checked against the exact values they are supposed to
bracket.

Model: background and transmission are independent, so an n-photon pulse
is detected with probability Y_n = Y0 + 1 - (1 - eta)^n (capped at 1),
and its error weight is e_n Y_n = Y0/2 + e_det [1 - (1 - eta)^n]. The
Poisson average of this model reproduces the closed-form channel gain
and QBER exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, E_VACUUM, ParameterError, poisson_weight, transmittance

#: Series truncation; for mu <= 1 the dropped Poisson tail is far below
#: every tolerance used in this package.
DEFAULT_N_MAX = 50


@dataclass(frozen=True)
class ExactPhotonStats:
    """Exact yield, error rate, and gain of the n-photon pulse fraction."""

    n: int
    detection_yield: float
    error_rate: float
    gain: float


def exact_stats(n: int, mu: float, params: ChannelParams) -> ExactPhotonStats:
    """Exact statistics for n-photon pulses out of a source of mean ``mu``."""
    if n < 0:
        raise ParameterError("photon number must be >= 0")
    eta = transmittance(params)
    hit = 1.0 - (1.0 - eta) ** n
    y_raw = params.y0 + hit
    if n == 0:
        error_rate = E_VACUUM
    else:
        error_rate = (E_VACUUM * params.y0 + params.e_det * hit) / y_raw
    detection_yield = min(y_raw, 1.0)
    return ExactPhotonStats(
        n=n,
        detection_yield=detection_yield,
        error_rate=error_rate,
        gain=detection_yield * poisson_weight(mu, n),
    )


def reconstruct_gain(
    mu: float, params: ChannelParams, n_max: int = DEFAULT_N_MAX
) -> tuple[float, float]:
    """Gain and QBER rebuilt from the per-photon-number series.

    Q = sum_n P_n(mu) Y_n,  E = sum_n P_n(mu) Y_n e_n / Q.

    Must agree with the closed-form channel model to within numerical
    round-off.
    """
    gain = 0.0
    error_weight = 0.0
    for n in range(n_max + 1):
        stats = exact_stats(n, mu, params)
        gain += stats.gain
        error_weight += stats.gain * stats.error_rate
    return gain, error_weight / gain


@dataclass(frozen=True)
class InequalityReport:
    """Grid-check results for the two power-difference lemmas."""

    lemma1_max_excess: float
    lemma2_max_excess: float
    counterexample_excess: float
    grid_size: int
    i_max: int

    @property
    def all_hold(self) -> bool:
        return self.lemma1_max_excess <= 0 and self.lemma2_max_excess <= 0


def verify_bound_inequalities(grid_size: int = 100, i_max: int = 10) -> InequalityReport:
    """Grid-check the inequalities the yield estimates rest on.

    Lemma 1: a^i - b^i <= a^2 - b^2 for 0 < b < a <= 2/3 and i in {2..i_max}.
    Lemma 2: a^i - b^i <= a^3 - b^3 for 0 < b < a <= 3/4 and i in {3..i_max}.

    Reports the largest value of (a^i - b^i) - (a^p - b^p) seen on each
    grid (non-positive means the lemma holds), together with the excess
    for the out-of-domain point a=0.9, b=0.89, i=3, which violates the
    quadratic comparison and shows the domain cap is load-bearing.
    """

    def max_excess(limit: float, power: int, i_lo: int) -> float:
        a = np.linspace(limit / grid_size, limit, grid_size)
        b = a.copy()
        aa, bb = np.meshgrid(a, b, indexing="ij")
        mask = bb < aa
        worst = -np.inf
        base = aa**power - bb**power
        for i in range(i_lo, i_max + 1):
            excess = (aa**i - bb**i) - base
            worst = max(worst, float(excess[mask].max()))
        return worst

    a, b = 0.9, 0.89
    counterexample = (a**3 - b**3) - (a**2 - b**2)
    return InequalityReport(
        lemma1_max_excess=max_excess(2.0 / 3.0, 2, 2),
        lemma2_max_excess=max_excess(0.75, 3, 3),
        counterexample_excess=counterexample,
        grid_size=grid_size,
        i_max=i_max,
    )
