"""Utilities of the two-player power-control game used by the bundled example.

Each transmitter i picks a power p_i; its signal-to-interference-plus-noise
ratio is SINR_i = p_i|g_i|^2 / (p_j|g_j|^2 / N + σ²) and its energy
efficiency is u_i = f(SINR_i) / p_i bits per joule with f(x) = (1 - e^{-x})^M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Payoffs quoted for the two power levels (C = operating point, D = Nash).
# The power levels themselves are not given, so these are shown verbatim and
# never recomputed.
REPORTED_PAYOFFS = {
    "CC": (0.23, 0.23),
    "CD": (0.10, 0.34),
    "DC": (0.34, 0.10),
    "DD": (0.15, 0.15),
}


@dataclass(frozen=True)
class PowerGame:
    M: int = 2
    N: float = 2.0
    gain1: float = 1.0
    gain2: float = 1.0
    sigma2: float = 1.0

    def sinr(self, p1: float, p2: float) -> tuple[float, float]:
        if p1 < 0 or p2 < 0:
            raise ValueError("powers must be non-negative")
        r1 = p1 * self.gain1 / (p2 * self.gain2 / self.N + self.sigma2)
        r2 = p2 * self.gain2 / (p1 * self.gain1 / self.N + self.sigma2)
        return r1, r2

    def efficiency(self, sinr: float) -> float:
        return (1.0 - math.exp(-sinr)) ** self.M

    def utilities(self, p1: float, p2: float) -> tuple[float, float]:
        if p1 <= 0 or p2 <= 0:
            raise ValueError("utility is undefined at zero power")
        s1, s2 = self.sinr(p1, p2)
        return self.efficiency(s1) / p1, self.efficiency(s2) / p2
