"""Exact limits of sample sequences taken along a shrinking width schedule.

Every functional and set function in the catalog produces samples that are
eventually affine in the width, so the limit at width 0 is either the settled
constant or the affine extrapolation through the last three samples.  A
non-zero residual means the affine model did not hold and is reported, never
hidden.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union


@dataclass(frozen=True)
class Stabilized:
    width: Fraction

    def to_json(self) -> dict:
        return {"kind": "stabilized", "width": str(self.width)}


@dataclass(frozen=True)
class Extrapolated:
    slope: Fraction
    residual: Fraction

    @property
    def exact(self) -> bool:
        return self.residual == 0

    def to_json(self) -> dict:
        return {"kind": "extrapolated", "slope": str(self.slope), "residual": str(self.residual)}


Certificate = Union[Stabilized, Extrapolated]


def settle(samples: Sequence[tuple]) -> tuple:
    """Limit of ``(width, value)`` samples as width -> 0; widths must be strictly decreasing."""
    if len(samples) < 3:
        raise ValueError("need at least three samples")
    widths = [w for w, _ in samples]
    if any(b >= a for a, b in zip(widths, widths[1:])):
        raise ValueError("widths must be strictly decreasing")
    values = [v for _, v in samples]
    last = values[-1]
    if values[-2] == last:
        k = len(values) - 1
        while k > 0 and values[k - 1] == last:
            k -= 1
        return last, Stabilized(widths[k])
    (w1, v1), (w2, v2), (w3, v3) = samples[-3:]
    s_old = (v2 - v1) / (w2 - w1)
    s_new = (v3 - v2) / (w3 - w2)
    return v3 - s_new * w3, Extrapolated(s_new, s_new - s_old)


def is_exact(certificate: Certificate) -> bool:
    return isinstance(certificate, Stabilized) or certificate.exact
