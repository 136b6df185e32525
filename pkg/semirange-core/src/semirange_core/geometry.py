"""Planar convex geometry on support-function grids.

Sets in the complex plane are compared through their support functions
h(theta) = max Re(exp(-i theta) p) sampled on a shared uniform angle grid.
"""

import numpy as np

_CHUNK = 4096


def angle_grid(n_angles: int) -> np.ndarray:
    return np.linspace(0.0, 2.0 * np.pi, n_angles, endpoint=False)


def support_of_disks(
    centers: np.ndarray,
    radii: np.ndarray,
    angles: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Support function of a union of disks and, per angle, the index of the supporting disk."""
    centers = np.asarray(centers, dtype=complex).ravel()
    radii = np.asarray(radii, dtype=float).ravel()
    cos, sin = np.cos(angles), np.sin(angles)

    best = np.full(angles.shape, -np.inf)
    arg = np.zeros(angles.shape, dtype=int)
    for start in range(0, centers.size, _CHUNK):
        c = centers[start : start + _CHUNK]
        values = np.outer(c.real, cos) + np.outer(c.imag, sin) + radii[start : start + _CHUNK, None]
        local = np.argmax(values, axis=0)
        local_best = values[local, np.arange(angles.size)]
        better = local_best > best
        best = np.where(better, local_best, best)
        arg = np.where(better, local + start, arg)
    return best, arg


def support_of_points(points: np.ndarray, angles: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=complex).ravel()
    return support_of_disks(points, np.zeros(points.shape), angles)[0]


def supporting_points(
    centers: np.ndarray,
    radii: np.ndarray,
    angles: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Support values and the extreme point of the union touching each support line."""
    support, arg = support_of_disks(centers, radii, angles)
    points = np.asarray(centers, dtype=complex)[arg] + np.asarray(radii)[arg] * np.exp(1j * angles)
    return support, points


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def monotone_chain(points: np.ndarray, atol: float = 0.0) -> np.ndarray:
    """Convex hull of planar points, counter-clockwise, without the closing repeat.

    Collinear and duplicate points are dropped. Degenerate inputs return one or two vertices.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size == 0:
        return pts
    order = np.lexsort((pts.imag, pts.real))
    ordered = [complex(p) for p in pts[order]]

    lower: list[complex] = []
    for p in ordered:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= atol:
            lower.pop()
        lower.append(p)
    upper: list[complex] = []
    for p in reversed(ordered):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= atol:
            upper.pop()
        upper.append(p)

    hull = lower[:-1] + upper[:-1]
    if len(hull) <= 2 and all(p == ordered[0] for p in hull):
        hull = [ordered[0]]
    return np.array(hull, dtype=complex)


def hausdorff_from_support(support_a: np.ndarray, support_b: np.ndarray) -> float:
    """Hausdorff distance of two convex sets from their support functions on the same grid."""
    return float(np.max(np.abs(np.asarray(support_a) - np.asarray(support_b))))


def outside_slack(points: np.ndarray, support: np.ndarray, angles: np.ndarray) -> float:
    """How far the points stick out of the convex set with the given support function.

    A value at most ``delta`` means every point lies in the set inflated by ``delta``.
    """
    points = np.asarray(points, dtype=complex).ravel()
    if points.size == 0:
        return float("-inf")
    return float(np.max(support_of_points(points, angles) - support))
