"""Finite-scale l_p diagnostics: partial-sum profiles, growth slopes, verdicts."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .config import DEFAULT, Config

Verdict = Literal["bounded", "log-divergent", "power-divergent"]


@dataclass(frozen=True)
class GrowthProfile:
    """Partial sums ``S(N_i) = sum_{n < N_i} |c_n|^p`` at increasing checkpoints."""

    checkpoints: tuple[int, ...]
    sums: tuple[float, ...]
    p: float

    def __post_init__(self):
        if len(self.checkpoints) != len(self.sums) or not self.checkpoints:
            raise ValueError("checkpoints and sums must be nonempty and of equal length")
        if any(b <= a for a, b in zip(self.checkpoints, self.checkpoints[1:])):
            raise ValueError("checkpoints must be strictly increasing")
        if any(b < a for a, b in zip(self.sums, self.sums[1:])):
            raise ValueError("partial sums must be nondecreasing")

    def rows(self):
        return [(n, s, self.p) for n, s in zip(self.checkpoints, self.sums)]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["N", "S", "p"])
            writer.writerows(self.rows())


def dyadic_checkpoints(n: int, octaves: int = DEFAULT.profile_octaves) -> list[int]:
    """Powers of two ending at ``n`` (itself a power of two), spanning ``octaves`` doublings."""
    top = int(round(math.log2(n)))
    if 2**top != n:
        raise ValueError(f"{n} is not a power of two")
    return [2**k for k in range(max(0, top - octaves), top + 1)]


def lp_partial_profile(c, p: float, checkpoints) -> GrowthProfile:
    """Partial sums of ``|c_n|^p`` at each checkpoint.

    Each prefix is summed in descending order of magnitude with ``math.fsum``.
    """
    if not p > 0:
        raise ValueError(f"exponent must be positive, got {p}")
    mags = np.abs(np.asarray(c, dtype=complex).ravel())
    cps = [int(n) for n in checkpoints]
    if not cps:
        raise ValueError("at least one checkpoint is required")
    if cps[0] < 1 or cps[-1] > mags.size:
        raise ValueError(f"checkpoints must lie in [1, {mags.size}]")
    powered = mags**p
    sums = [math.fsum(np.sort(powered[:n])[::-1]) for n in cps]
    return GrowthProfile(tuple(cps), tuple(sums), float(p))


class GrowthFit(NamedTuple):
    slope: float
    intercept: float
    residual: float


def growth_exponent_fit(g: GrowthProfile) -> GrowthFit:
    """Least-squares slope of log S against log N; residual is the RMS misfit."""
    if len(g.checkpoints) < 3:
        raise ValueError("at least three checkpoints are needed for a fit")
    s = np.asarray(g.sums)
    if np.any(s <= 0):
        raise ValueError("partial sums must be positive to take logarithms")
    x = np.log(np.asarray(g.checkpoints, dtype=float))
    y = np.log(s)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return GrowthFit(float(slope), float(intercept), float(np.sqrt(np.mean(resid**2))))


def membership_verdict(g: GrowthProfile, config: Config = DEFAULT) -> Verdict:
    """Heuristic reading of a finite profile.

    ``bounded`` below ``config.bounded_slope``; ``log-divergent`` below
    ``config.power_slope`` provided the sum grew by less than
    ``config.log_ratio`` across the profile; ``power-divergent`` otherwise.
    """
    slope = growth_exponent_fit(g).slope
    if slope < config.bounded_slope:
        return "bounded"
    if slope < config.power_slope and g.sums[-1] / g.sums[0] < config.log_ratio:
        return "log-divergent"
    return "power-divergent"
