"""Disks and their conformal maps onto the unit disk."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InputError

__all__ = ["Domain", "UNIT_DISK", "ConformalMap", "Location", "affine_map", "contains", "GUARD"]

GUARD = 1e-8


@dataclass(frozen=True)
class Domain:
    """The open disk ``|z - center| < radius``."""

    center: complex = 0j
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0 or not np.isfinite(self.radius):
            raise InputError("radius must be a positive finite number")
        if not np.isfinite(self.center):
            raise InputError("center must be finite")

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def boundary_points(self, n: int) -> np.ndarray:
        t = 2 * np.pi * np.arange(n) / n
        return self.center + self.radius * np.exp(1j * t)

    def to_json(self) -> dict:
        return {"center": [self.center.real, self.center.imag], "radius": self.radius}

    @classmethod
    def from_json(cls, obj: dict) -> "Domain":
        try:
            re, im = obj["center"]
            return cls(complex(re, im), obj["radius"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad domain description: {obj!r}") from exc


UNIT_DISK = Domain(0j, 1.0)


@dataclass(frozen=True)
class ConformalMap:
    """A conformal map ``phi`` of a domain onto the unit disk.

    ``forward`` is ``phi``, ``inverse`` is ``phi^{-1}`` and ``derivative``
    is ``phi'``; all three act elementwise on complex arrays.  Only the
    affine maps of disks ship (:func:`affine_map`); anything satisfying
    this contract can be plugged into :class:`~abc_analytica.blaschke.BlaschkeProduct`.
    """

    forward: Callable[[np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]


def affine_map(domain: Domain) -> ConformalMap:
    """``phi(z) = (z - c) / R``: sends the center to 0 with ``phi' > 0``."""
    c, r = domain.center, domain.radius
    return ConformalMap(
        forward=lambda z: (np.asarray(z) - c) / r,
        inverse=lambda w: c + r * np.asarray(w),
        derivative=lambda z: np.full(np.shape(z), 1.0 / r, dtype=complex),
    )


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY_BAND = "boundary_band"
    OUTSIDE = "outside"


def contains(domain: Domain, z: complex, guard: float = GUARD) -> Location:
    """Classify ``z`` against the disk with a relative guard band of width ``guard``."""
    rho = abs(complex(z) - domain.center) / domain.radius
    if rho < 1.0 - guard:
        return Location.INSIDE
    if rho <= 1.0 + guard:
        return Location.BOUNDARY_BAND
    return Location.OUTSIDE
