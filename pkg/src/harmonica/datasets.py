"""Seeded point cloud generators.

The samplers emit coordinates rounded to six decimal places, so a seed
fully determines the cloud and the exact-arithmetic pipeline downstream
is deterministic end to end.
"""

from __future__ import annotations

import math
import random

from .complexes import PointCloud


def _round6(x: float) -> str:
    return f"{x:.6f}"


def lemniscate_cloud(n: int = 50, noise: float = 0.02, scale: float = 2.0,
                     seed: int = 0) -> PointCloud:
    """n points near a lemniscate (a figure eight in the plane) with
    Gaussian noise of the given standard deviation.

    Parameter values are spread evenly with seeded jitter, so the curve
    is covered without large gaps even for modest n."""
    rng = random.Random(seed)
    pts = []
    for i in range(n):
        t = (i + rng.uniform(-0.4, 0.4)) * 2.0 * math.pi / n
        denom = 1.0 + math.sin(t) ** 2
        x = scale * math.cos(t) / denom
        y = scale * math.sin(t) * math.cos(t) / denom
        pts.append((_round6(x + rng.gauss(0.0, noise)),
                    _round6(y + rng.gauss(0.0, noise))))
    return PointCloud(pts)


def wedge_cloud(n_sphere: int = 70, n_circle: int = 30, noise: float = 0.02,
                seed: int = 0) -> PointCloud:
    """Points near a unit sphere with a circle attached at each of two
    antipodal points (n_sphere + 2 * n_circle points in R^3)."""
    rng = random.Random(seed)
    pts = []
    for _ in range(n_sphere):
        # uniform on the sphere via the normalized Gaussian
        v = [rng.gauss(0.0, 1.0) for _ in range(3)]
        norm = math.sqrt(sum(c * c for c in v)) or 1.0
        v = [c / norm for c in v]
        pts.append(tuple(_round6(c + rng.gauss(0.0, noise)) for c in v))
    for side in (1.0, -1.0):
        for _ in range(n_circle):
            t = rng.uniform(0.0, 2.0 * math.pi)
            x = side * (2.0 + math.cos(t))
            z = math.sin(t)
            pts.append((_round6(x + rng.gauss(0.0, noise)),
                        _round6(rng.gauss(0.0, noise)),
                        _round6(z + rng.gauss(0.0, noise))))
    return PointCloud(pts)


def random_cloud(n: int, dim: int = 2, seed: int = 0,
                 box: float = 1.0) -> PointCloud:
    """n uniform points in a box, for randomized property corpora."""
    rng = random.Random(seed)
    return PointCloud([
        tuple(_round6(rng.uniform(0.0, box)) for _ in range(dim))
        for _ in range(n)])
