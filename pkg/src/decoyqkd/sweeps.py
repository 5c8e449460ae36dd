"""Rate-vs-distance sweeps, maximal secure distance, and intensity construction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .bounds import IntensityConstraintError, estimate_photon_bounds, validate_intensities
from .channel import (
    ChannelParams,
    IntensitySet,
    ObservedTally,
    honest_gain,
    honest_qber,
    synthesize_tallies,
    transmittance,
)
from .rates import (
    KeyRatePoint,
    PROTOCOL_BB84_DECOY,
    PROTOCOL_NONORTHOGONAL_DECOY,
    PROTOCOL_SARG04_NO_DECOY,
    PROTOCOLS,
    optimal_mu_sarg04,
    rate_bb84_decoy,
    rate_nonorthogonal_decoy,
    rate_sarg04_worst,
    untagged_fraction,
)

#: Default weakest decoy intensity. Small enough that the single-photon
#: error bound stays tight in the asymptotic regime and that nu3 < nu2
#: holds down to mu = 0.1 with the auto-constructed set.
DEFAULT_NU3 = 0.01

#: Sentinel for per-distance optimization of the signal intensity
#: (sarg04-no-decoy only).
OPTIMAL_MU = "optimal"


class NeverSecureError(ValueError):
    """The requested protocol has no positive rate even at zero distance."""


def construct_intensity_set(mu: float, nu3: float = DEFAULT_NU3) -> IntensitySet:
    """Build a valid intensity set for a given signal intensity.

    Pins nu1 at its upper limit 3mu/4 (maximizing the nu1 - nu2 gap) and
    takes nu2 as the positive root of nu2^2 + nu1 nu2 + (nu1^2 - mu^2) = 0,
    which satisfies the cubic balance condition exactly. The result is
    fully validated.
    """
    if mu <= 0:
        raise IntensityConstraintError(f"mu must be > 0, got {mu}")
    if nu3 <= 0:
        raise IntensityConstraintError(f"nu3 must be > 0, got {nu3}")
    nu1 = 0.75 * mu
    nu2 = 0.5 * (-nu1 + math.sqrt(4.0 * mu**2 - 3.0 * nu1**2))
    return validate_intensities(IntensitySet(mu=mu, nu1=nu1, nu2=nu2, nu3=nu3))


@dataclass(frozen=True)
class SweepSpec:
    """A rate-vs-distance sweep request.

    ``mu`` is either a fixed signal intensity or ``"optimal"`` to re-solve
    the optimal intensity at every distance (sarg04-no-decoy only).
    ``intensities`` overrides the auto-constructed decoy set; ``nu3`` feeds
    the auto-construction when no explicit set is given.
    """

    protocol: str
    start_km: float
    stop_km: float
    step_km: float
    mu: Union[float, str]
    channel: ChannelParams
    intensities: IntensitySet | None = None
    nu3: float = DEFAULT_NU3

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"unknown protocol {self.protocol!r}; expected one of {PROTOCOLS}")
        if self.step_km <= 0:
            raise ValueError("step_km must be > 0")
        if self.start_km > self.stop_km:
            raise ValueError("start_km must be <= stop_km")
        if isinstance(self.mu, str):
            if self.mu != OPTIMAL_MU:
                raise ValueError(f"mu must be a number or {OPTIMAL_MU!r}, got {self.mu!r}")
            if self.protocol != PROTOCOL_SARG04_NO_DECOY:
                raise ValueError("per-distance optimal mu is only defined for sarg04-no-decoy")
        elif self.mu <= 0:
            raise ValueError("mu must be > 0")


def rate_at(
    protocol: str,
    mu: Union[float, str],
    channel: ChannelParams,
    distance_km: float,
    intensities: IntensitySet | None = None,
    nu3: float = DEFAULT_NU3,
) -> KeyRatePoint:
    """Secure key rate of one protocol at one distance."""
    params = channel.at_distance(distance_km)
    if protocol == PROTOCOL_SARG04_NO_DECOY:
        if mu == OPTIMAL_MU:
            mu = optimal_mu_sarg04(transmittance(params))
        signal = ObservedTally(mu, honest_gain(mu, params), honest_qber(mu, params))
        q0 = params.y0 * math.exp(-mu)
        omega = untagged_fraction(signal, mu)
        rate = rate_sarg04_worst(signal, q0, omega)
        return KeyRatePoint(protocol, distance_km, mu, rate)

    if intensities is None:
        intensities = construct_intensity_set(mu, nu3)
    tallies = synthesize_tallies(intensities, params)
    bounds = estimate_photon_bounds(tallies, intensities)
    signal = tallies[-1]
    if protocol == PROTOCOL_BB84_DECOY:
        rate = rate_bb84_decoy(signal, bounds, params.f_ec)
    elif protocol == PROTOCOL_NONORTHOGONAL_DECOY:
        rate = rate_nonorthogonal_decoy(signal, bounds, params.f_ec)
    else:
        raise ValueError(f"unknown protocol {protocol!r}")
    return KeyRatePoint(protocol, distance_km, intensities.mu, rate)


def sweep(spec: SweepSpec) -> list[KeyRatePoint]:
    """Evaluate the rate on the requested distance grid, in distance order.

    Points are independent of each other; callers may evaluate them
    concurrently and merge by distance, which reproduces this output.
    """
    count = int(math.floor((spec.stop_km - spec.start_km) / spec.step_km + 1e-9)) + 1
    points = []
    for i in range(count):
        d = spec.start_km + i * spec.step_km
        points.append(
            rate_at(spec.protocol, spec.mu, spec.channel, d, spec.intensities, spec.nu3)
        )
    return points


def max_secure_distance(
    protocol: str,
    mu: Union[float, str],
    channel: ChannelParams,
    intensities: IntensitySet | None = None,
    nu3: float = DEFAULT_NU3,
    coarse_step_km: float = 5.0,
    resolution_km: float = 0.1,
    scan_limit_km: float = 1000.0,
) -> float:
    """Largest distance with a strictly positive rate.

    Coarse 5 km scan from zero until the rate goes non-positive, then
    bisection of the last bracket down to 0.1 km.
    """

    def rate(d: float) -> float:
        return rate_at(protocol, mu, channel, d, intensities, nu3).rate

    if rate(0.0) <= 0:
        raise NeverSecureError(f"{protocol} has no positive rate even at zero distance")
    d = coarse_step_km
    while rate(d) > 0:
        d += coarse_step_km
        if d > scan_limit_km:
            raise ValueError(f"rate still positive at the {scan_limit_km} km scan limit")
    lo, hi = d - coarse_step_km, d
    while hi - lo > resolution_km:
        mid = 0.5 * (lo + hi)
        if rate(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
