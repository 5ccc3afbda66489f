"""Minkowski metric, RMS/spacelike charts and the two-body split.

The metric signature is fixed to (-, +, +, +).  All coordinate maps accept
scalars or broadcastable arrays; the dataclass front ends validate single
points.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NotInRMS

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
ETA.flags.writeable = False

DEFAULT_BOUNDARY_TOL = 1e-12


class FourVector(NamedTuple):
    x0: float
    x1: float
    x2: float
    x3: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


@dataclass(frozen=True)
class RMSPoint:
    rho: float
    theta: float
    beta: float
    phi: float

    def __post_init__(self):
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise DomainError(f"rho must be positive, got {self.rho}")
        if not 0.0 < self.theta < math.pi:
            raise DomainError(f"theta must lie in (0, pi), got {self.theta}")
        if not math.isfinite(self.beta):
            raise DomainError("beta must be finite")
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))


class RegionTag(enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE_OUTSIDE_RMS = "spacelike_outside_rms"
    RMS = "rms"
    LIGHTLIKE_BOUNDARY = "lightlike_boundary"


@dataclass(frozen=True)
class TwoBodyMasses:
    M1: float
    M2: float

    def __post_init__(self):
        if not (self.M1 > 0 and self.M2 > 0):
            raise DomainError("particle masses must be positive")

    @property
    def M(self) -> float:
        return self.M1 + self.M2

    @property
    def m(self) -> float:
        return self.M1 * self.M2 / (self.M1 + self.M2)


def minkowski_dot(a, b):
    """Return -a0*b0 + a1*b1 + a2*b2 + a3*b3 over the last axis."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = -a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2] + a[..., 3] * b[..., 3]
    return float(out) if out.ndim == 0 else out


def rms_coords_to_cartesian(rho, theta, beta, phi) -> np.ndarray:
    """Vectorised RMS chart; returns an array with a trailing axis of 4."""
    rho, theta, beta, phi = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (rho, theta, beta, phi)))
    r = rho * np.sin(theta)
    return np.stack(
        [r * np.sinh(beta), r * np.cosh(beta) * np.cos(phi), r * np.cosh(beta) * np.sin(phi), rho * np.cos(theta)],
        axis=-1,
    )


def cartesian_to_rms_coords(x):
    """Inverse of :func:`rms_coords_to_cartesian` without region checks.

    Returns ``(rho, theta, beta, phi)`` with phi in [0, 2*pi).  Points outside
    the RMS give nan entries.
    """
    x = np.asarray(x, dtype=float)
    x0, x1, x2, x3 = (x[..., i] for i in range(4))
    transverse = x1 * x1 + x2 * x2 - x0 * x0
    with np.errstate(invalid="ignore", divide="ignore"):
        rho = np.sqrt(transverse + x3 * x3)
        theta = np.arccos(np.clip(x3 / rho, -1.0, 1.0))
        beta = np.arcsinh(x0 / np.sqrt(transverse))
    phi = np.mod(np.arctan2(x2, x1), 2 * np.pi)
    bad = ~(transverse > 0)
    if np.any(bad):
        rho, theta, beta = (np.where(bad, np.nan, v) for v in (rho, theta, beta))
    return rho, theta, beta, phi


def rms_to_cartesian(p: RMSPoint) -> FourVector:
    x = rms_coords_to_cartesian(p.rho, p.theta, p.beta, p.phi)
    return FourVector(*(float(v) for v in x))


def classify_region(x, tol: float = DEFAULT_BOUNDARY_TOL) -> RegionTag:
    """Tag a single point; ``tol`` is relative to the squared Euclidean norm."""
    x = np.asarray(x, dtype=float)
    scale = float(np.dot(x, x))
    interval = minkowski_dot(x, x)
    transverse = x[1] ** 2 + x[2] ** 2 - x[0] ** 2
    if abs(interval) <= tol * scale:
        return RegionTag.LIGHTLIKE_BOUNDARY
    if interval < 0:
        return RegionTag.TIMELIKE
    if abs(transverse) <= tol * scale:
        return RegionTag.LIGHTLIKE_BOUNDARY
    return RegionTag.RMS if transverse > 0 else RegionTag.SPACELIKE_OUTSIDE_RMS


def cartesian_to_rms(x, tol: float = DEFAULT_BOUNDARY_TOL) -> RMSPoint:
    tag = classify_region(x, tol)
    if tag is not RegionTag.RMS:
        raise NotInRMS(f"{tuple(np.asarray(x, dtype=float))} classifies as {tag.value}")
    rho, theta, beta, phi = cartesian_to_rms_coords(x)
    return RMSPoint(float(rho), float(theta), float(beta), float(phi))


def spacelike_to_cartesian(rho, beta, theta, phi) -> FourVector:
    """Full-spacelike chart: x0 = rho sinh(beta), spatial part rho cosh(beta) n(theta, phi)."""
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    ch = math.cosh(beta)
    return FourVector(
        rho * math.sinh(beta),
        rho * ch * math.cos(phi) * math.sin(theta),
        rho * ch * math.sin(phi) * math.sin(theta),
        rho * ch * math.cos(theta),
    )


def measure_weight(p: RMSPoint) -> float:
    """Invariant volume density rho^3 sin^2(theta) cosh(beta) of the RMS chart."""
    return p.rho ** 3 * math.sin(p.theta) ** 2 * math.cosh(p.beta)


def cm_split(x1, x2, p1, p2, masses: TwoBodyMasses):
    """Centre-of-mass/relative decomposition ``(X, P, x, p)``."""
    x1, x2, p1, p2 = (np.asarray(v, dtype=float) for v in (x1, x2, p1, p2))
    M1, M2, M = masses.M1, masses.M2, masses.M
    X = (M1 * x1 + M2 * x2) / M
    P = p1 + p2
    x = x1 - x2
    p = (M2 * p1 - M1 * p2) / M
    return X, P, x, p


def cm_join(X, P, x, p, masses: TwoBodyMasses):
    """Inverse of :func:`cm_split`, returning ``(x1, x2, p1, p2)``."""
    X, P, x, p = (np.asarray(v, dtype=float) for v in (X, P, x, p))
    M1, M2, M = masses.M1, masses.M2, masses.M
    return X + (M2 / M) * x, X - (M1 / M) * x, (M1 / M) * P + p, (M2 / M) * P - p


def two_body_kinetic(p1, p2, masses: TwoBodyMasses) -> float:
    """Free part of the two-body evolution generator, p1^2/2M1 + p2^2/2M2."""
    return minkowski_dot(p1, p1) / (2 * masses.M1) + minkowski_dot(p2, p2) / (2 * masses.M2)


def split_kinetic(P, p, masses: TwoBodyMasses) -> tuple[float, float]:
    """Return ``(K_cm, K_rel)`` kinetic parts P^2/2M and p^2/2m."""
    return minkowski_dot(P, P) / (2 * masses.M), minkowski_dot(p, p) / (2 * masses.m)
