"""Channel gains eta = hA/hB, either finite or a directed infinity."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .gaussint import GInt, ONE


@dataclass(frozen=True)
class ChannelGain:
    """A channel-gain ratio.

    ``value`` is None for the point at infinity, in which case
    ``unit_direction`` records the unit epsilon of ``eta = epsilon * inf``.
    When the gain is a Gaussian rational (every zero-l_min gain is one),
    ``exact`` holds ``(num, den)`` with ``eta = num/den``; equality of two exact
    gains is decided by cross-multiplication.
    """

    value: complex | None
    unit_direction: GInt = ONE
    exact: tuple[GInt, GInt] | None = None

    @classmethod
    def finite(cls, value: complex) -> "ChannelGain":
        v = complex(value)
        if not (cmath.isfinite(v)):
            raise ValueError("finite gain must have a finite value")
        return cls(v)

    @classmethod
    def infinity(cls, direction: GInt = ONE) -> "ChannelGain":
        return cls(None, direction)

    @classmethod
    def ratio(cls, num: GInt, den: GInt) -> "ChannelGain":
        num, den = GInt.of(num), GInt.of(den)
        if not den:
            if not num:
                raise ValueError("0/0 is not a channel gain")
            return cls(None, ONE, (num, den))
        return cls(complex(num) / complex(den), ONE, (num, den))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def same_point(self, other: "ChannelGain") -> bool:
        if self.exact and other.exact:
            (n1, d1), (n2, d2) = self.exact, other.exact
            return n1 * d2 == n2 * d1
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        return self.value == other.value

    def to_json(self):
        if self.is_infinite:
            return "inf"
        return [self.value.real, self.value.imag]


def as_complex(eta) -> complex:
    """Finite gain as a Python complex; raises on infinity."""
    if isinstance(eta, ChannelGain):
        if eta.is_infinite:
            raise ValueError("operation requires a finite channel gain")
        return eta.value
    return complex(eta)
