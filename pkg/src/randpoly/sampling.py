"""Seeded samplers for the harness distributions and analytic depth helpers.

Streams are counter-based (Philox) and split explicitly by (seed, stream_id),
so any trial can be reproduced in isolation and results do not depend on how
trials are scheduled across workers.  The adversarial mixture places mass
eps_d = 1/sqrt(d) on a uniform ball of radius eps_d around the origin and the
rest on a standard Gaussian; eps_d is always recomputed from d, never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

KINDS = ("gaussian", "ball", "mixture", "cube")


@dataclass(frozen=True)
class DistributionSpec:
    kind: str
    d: int
    radius: Optional[float] = None  # ball only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if self.d < 1:
            raise ValueError("need d >= 1")
        if self.kind == "ball":
            if self.radius is None or self.radius <= 0:
                raise ValueError("ball requires a positive radius")
        elif self.radius is not None:
            raise ValueError("radius only applies to ball")

    @property
    def epsilon(self) -> float:
        """Mixture weight and ball radius 1/sqrt(d); derived, never stored."""
        if self.kind != "mixture":
            raise ValueError("epsilon is defined for the mixture only")
        return 1.0 / math.sqrt(self.d)

    @classmethod
    def parse(cls, text: str, d: int) -> "DistributionSpec":
        """Parse CLI strings: 'gaussian', 'ball:<radius>', 'mixture', 'cube'."""
        text = text.strip()
        if text.startswith("ball:"):
            return cls(kind="ball", d=d, radius=float(text.split(":", 1)[1]))
        if text == "ball":
            raise ValueError("ball requires a radius, e.g. 'ball:1'")
        return cls(kind=text, d=d)

    def describe(self) -> str:
        if self.kind == "ball":
            return f"ball:{self.radius:g}"
        return self.kind


@dataclass(frozen=True)
class SeededStream:
    """Reproducible stream handle: identical (seed, stream_id) produce
    identical draws on any worker layout."""

    seed: int
    stream_id: int

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed % (1 << 64), self.stream_id % (1 << 64)],
                       dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def _ball_points(rng: np.random.Generator, n: int, d: int, radius: float) -> np.ndarray:
    """Uniform in the d-ball: uniform direction, radius r*U^(1/d)."""
    out = np.empty((n, d))
    need = np.arange(n)
    while need.size:
        g = rng.standard_normal((need.size, d))
        norms = np.linalg.norm(g, axis=1)
        ok = norms > 0.0
        out[need[ok]] = g[ok] / norms[ok, None]
        need = need[~ok]  # astronomically rare; redraw the zero vectors
    u = rng.random(n)
    return out * (radius * u[:, None] ** (1.0 / d))


def sample_cloud(spec: DistributionSpec, n: int, stream) -> tuple:
    """Draw n points; returns (points (n, d), ball_mask or None).

    For the mixture, ball_mask marks the rows drawn from the ball part.  The
    draw order is fixed (branch uniforms, then the Gaussian block, then the
    ball block) so a (seed, stream_id) pair pins the cloud exactly.
    """
    rng = stream.generator() if isinstance(stream, SeededStream) else stream
    d = spec.d
    if spec.kind == "gaussian":
        return rng.standard_normal((n, d)), None
    if spec.kind == "ball":
        return _ball_points(rng, n, d, spec.radius), None
    if spec.kind == "cube":
        return rng.random((n, d)) - 0.5, None
    eps = spec.epsilon
    ball_mask = rng.random(n) < eps
    pts = rng.standard_normal((n, d))
    nb = int(ball_mask.sum())
    if nb:
        pts[ball_mask] = _ball_points(rng, nb, d, eps)
    return pts, ball_mask


def sample_point(spec: DistributionSpec, stream) -> np.ndarray:
    """Single draw; the mixture branch taken is recoverable by redrawing the
    same stream through sample_cloud."""
    return sample_cloud(spec, 1, stream)[0][0]


def gaussian_halfspace_mass(r: float) -> float:
    """Standard normal mass of the far halfspace whose boundary hyperplane is
    at distance r from the origin: Phi(-r).  Satisfies the linearization
    Phi(-r) >= 1/2 - r/sqrt(2*pi) for all r >= 0."""
    if r < 0:
        raise ValueError("need r >= 0")
    return 0.5 * math.erfc(r / math.sqrt(2.0))


def depth_of_point(spec: DistributionSpec, p) -> float:
    """Analytic depth (minimum halfspace mass over closed halfspaces
    containing p).  For the standard Gaussian the minimizing halfspace is
    bounded by the hyperplane through p orthogonal to p, so the depth is
    Phi(-|p|).  Other kinds have no analytic form here and are rejected."""
    if spec.kind != "gaussian":
        raise ValueError(f"analytic depth unsupported for kind {spec.kind!r}")
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (spec.d,):
        raise ValueError("point dimension mismatch")
    return gaussian_halfspace_mass(float(np.linalg.norm(p)))
