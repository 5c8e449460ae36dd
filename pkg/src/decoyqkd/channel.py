"""Honest fiber-channel model for weak-coherent-pulse QKD.

All observables used by the estimation and rate modules come from this
model: a Poisson photon-number source, exponential fiber loss, a constant
misalignment error, and random dark counts (error rate 1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


class ParameterError(ValueError):
    """A physical parameter is outside its allowed range."""


class UndefinedQberError(ValueError):
    """QBER requested for a pulse class with zero gain."""


@dataclass(frozen=True)
class ChannelParams:
    """Fiber link, detector, and post-processing parameters.

    Attributes:
        alpha_db_per_km: fiber attenuation in dB/km.
        distance_km: fiber length in km.
        eta_bob: receiver detection efficiency, in (0, 1].
        y0: background (dark-count) yield per pulse.
        e_det: misalignment error probability, in [0, 0.5].
        f_ec: error-correction inefficiency factor, >= 1.
    """

    alpha_db_per_km: float
    distance_km: float
    eta_bob: float
    y0: float
    e_det: float
    f_ec: float

    def __post_init__(self):
        if self.alpha_db_per_km < 0:
            raise ParameterError("alpha_db_per_km must be >= 0")
        if self.distance_km < 0:
            raise ParameterError("distance_km must be >= 0")
        if not 0 < self.eta_bob <= 1:
            raise ParameterError("eta_bob must be in (0, 1]")
        if not 0 <= self.y0 < 1:
            raise ParameterError("y0 must be in [0, 1)")
        if not 0 <= self.e_det <= 0.5:
            raise ParameterError("e_det must be in [0, 0.5]")
        if self.f_ec < 1:
            raise ParameterError("f_ec must be >= 1")

    def at_distance(self, distance_km: float) -> "ChannelParams":
        """Same link evaluated at a different fiber length."""
        return replace(self, distance_km=distance_km)


#: Experimental parameter set used for all numeric comparisons
#: (0.21 dB/km fiber, 3.3% misalignment, 1.7e-6 dark-count yield,
#: 4.5% receiver efficiency, error-correction inefficiency 1.22).
GYS = ChannelParams(
    alpha_db_per_km=0.21,
    distance_km=0.0,
    eta_bob=0.045,
    y0=1.7e-6,
    e_det=0.033,
    f_ec=1.22,
)

#: Dark counts are random, so the vacuum error rate is exactly 1/2.
E_VACUUM = 0.5


@dataclass(frozen=True)
class IntensitySet:
    """Signal and decoy mean photon numbers.

    Construction is permissive; use ``bounds.validate_intensities`` to
    enforce the ordering constraints the estimation formulas rely on.
    """

    mu: float
    nu1: float
    nu2: float
    nu3: float


@dataclass(frozen=True)
class ObservedTally:
    """Measured gain and QBER for one pulse class.

    ``gain`` is the probability per sent pulse that Bob registers a
    detection; ``qber`` is the error fraction among those detections.
    """

    intensity: float
    gain: float
    qber: float

    def __post_init__(self):
        if self.intensity < 0:
            raise ParameterError("intensity must be >= 0")
        if not 0 <= self.gain <= 1:
            raise ParameterError("gain must be in [0, 1]")
        if not 0 <= self.qber <= 1:
            raise ParameterError("qber must be in [0, 1]")


def poisson_weight(mu: float, n: int) -> float:
    """Probability that a pulse of mean photon number ``mu`` carries ``n`` photons.

    P_n(mu) = mu^n e^(-mu) / n!
    """
    if mu < 0:
        raise ParameterError("mean photon number must be >= 0")
    if n < 0 or n != int(n):
        raise ParameterError("photon count must be a non-negative integer")
    n = int(n)
    if mu == 0:
        return 1.0 if n == 0 else 0.0
    # log form avoids overflow in mu**n / n! for large n
    return math.exp(n * math.log(mu) - mu - math.lgamma(n + 1))


def transmittance(params: ChannelParams) -> float:
    """Overall single-photon transmission probability.

    eta = eta_bob * 10^(-alpha * distance / 10)
    """
    return params.eta_bob * 10.0 ** (-params.alpha_db_per_km * params.distance_km / 10.0)


def honest_gain(intensity: float, params: ChannelParams) -> float:
    """Gain of a pulse class in the absence of an eavesdropper.

    Q = Y0 + 1 - e^(-eta * intensity)
    """
    if intensity < 0:
        raise ParameterError("intensity must be >= 0")
    eta = transmittance(params)
    # expm1 keeps the vacuum limit exact: Y0 + (1 - e^0) must be Y0, not
    # the round-off of (Y0 + 1) - 1
    return min(params.y0 - math.expm1(-eta * intensity), 1.0)


def honest_qber(intensity: float, params: ChannelParams) -> float:
    """QBER of a pulse class in the absence of an eavesdropper.

    E = [Y0/2 + e_det (1 - e^(-eta * intensity))] / Q

    Dark counts contribute at error rate 1/2; detected photons err with
    probability e_det.
    """
    gain = honest_gain(intensity, params)
    if gain <= 0:
        raise UndefinedQberError("QBER is undefined at zero gain")
    eta = transmittance(params)
    errors = E_VACUUM * params.y0 + params.e_det * (1.0 - math.exp(-eta * intensity))
    return errors / gain


def synthesize_tallies(intensities: IntensitySet, params: ChannelParams) -> list[ObservedTally]:
    """Honest-channel observables for vacuum, the three decoys, and the signal.

    Returned in ascending intensity: vacuum, nu3, nu2, nu1, mu.
    """
    tallies = [ObservedTally(0.0, honest_gain(0.0, params), E_VACUUM)]
    for intensity in (intensities.nu3, intensities.nu2, intensities.nu1, intensities.mu):
        tallies.append(
            ObservedTally(intensity, honest_gain(intensity, params), honest_qber(intensity, params))
        )
    return tallies
