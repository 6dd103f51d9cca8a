"""
Data models for reduced-metric geodesics of the Otsuki tori.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np


@dataclass(frozen=True)
class ReducedMetricPoint:
    """
    A point of the orbit space in spherical coordinates.

    Attributes:
        phi: Latitude, 0 < phi < pi/2
        theta: Longitude in radians (taken mod 2*pi when compared)

    Raises:
        ValueError: If phi leaves the open interval.
    """
    phi: float
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.phi < math.pi / 2:
            raise ValueError(f"phi must lie in (0, pi/2), got: {self.phi}")


@dataclass
class GeodesicTrace:
    """
    Sampled polyline of a reduced-metric geodesic.

    Attributes:
        a: Minimal latitude of the geodesic
        s: Accumulated arc length at each sample
        phi: Latitude at each sample
        theta: Unwrapped longitude at each sample
        arcs: Number of monotone phi-arcs covered
        closed: Whether the endpoints coincide within tolerance
        mismatch: Endpoint mismatch in (phi, theta mod 2*pi)
        arc_lengths: Length of each monotone arc
    """
    a: float
    s: np.ndarray
    phi: np.ndarray
    theta: np.ndarray
    arcs: int = 0
    closed: bool = False
    mismatch: float = math.inf
    arc_lengths: List[float] = field(default_factory=list)

    @property
    def length(self) -> float:
        """Total reduced-metric length; 0 for an empty trace."""
        if len(self.s) == 0:
            return 0.0
        return float(self.s[-1] - self.s[0])

    @property
    def total_theta(self) -> float:
        if len(self.theta) == 0:
            return 0.0
        return float(self.theta[-1] - self.theta[0])

    def __len__(self) -> int:
        return len(self.s)

    def point(self, i: int) -> ReducedMetricPoint:
        return ReducedMetricPoint(float(self.phi[i]), float(self.theta[i]))

    @classmethod
    def empty(cls, a: Optional[float] = None) -> 'GeodesicTrace':
        return cls(
            a=math.nan if a is None else a,
            s=np.empty(0), phi=np.empty(0), theta=np.empty(0)
        )

    def __repr__(self) -> str:
        return (f"GeodesicTrace(a={self.a:.6f}, {len(self)} samples, "
                f"length={self.length:.6f}, closed={self.closed})")
