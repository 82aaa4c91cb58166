"""Tunable parameters with their defaults."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class FitConfig:
    n_max: int = 48  # saturation verification window
    k_max: int = 4  # saturated generators are harvested up to n = c * k_max
    offset_kmax: int = 8  # offsets k * (midpoint slope, 1), k = 0..offset_kmax
    degree: Optional[int] = None  # override of the fitted degree (default d - 1)
    width: Fraction = Fraction(2)  # slope width validated beyond the last breakpoint
    diag_terms: int = 60  # terms of n -> l((I^{qn})_{pn}) used by diagonal fits
    direct_n_max: Optional[int] = None  # direct saturations past the window (None: memory budget, 0: off)
    threads: int = 1

    def offsets(self) -> range:
        return range(0, self.offset_kmax + 1)

    def echo(self) -> dict:
        """Parameters that can change results (thread count cannot)."""
        out = asdict(self)
        out.pop("threads")
        out["width"] = str(self.width)
        return out


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("EPSDENS_THREADS", "1")))
    except ValueError:
        return 1
