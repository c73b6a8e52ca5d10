"""Independent scalar oracles.

Plain complex arithmetic on Python numbers, sharing no code with the matrix
path, used to cross-check every evaluator on 1x1 inputs.  For a scalar ``a``
the operator objects are ``|a| = abs(a)``, ``U = a/|a|`` (``0`` when
``a == 0``) and ``|a|**alpha`` with ``0**alpha = 0`` for ``alpha > 0`` and
``x**0 = 1``.

Also holds the vector-norm forms of the angular-distance bounds.
"""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np


def phase(z: complex) -> complex:
    return z / abs(z) if z != 0 else 0j


def mpow(x: float, alpha: float) -> float:
    if alpha == 0:
        return 1.0
    if x == 0:
        if alpha < 0:
            raise ZeroDivisionError("negative power of zero")
        return 0.0
    return x ** alpha


class Sides(NamedTuple):
    lhs: float
    rhs: float
    equality_residual: float


def gpl(a: complex, b: complex, t: float) -> float:
    lhs = abs(a - b) ** 2 + abs(t * a + b) ** 2 / t
    rhs = (1 + t) * abs(a) ** 2 + (1 + 1 / t) * abs(b) ** 2
    return abs(lhs - rhs)


def difference(a: complex, b: complex, t: float) -> Sides:
    return Sides(abs(a - b) ** 2,
                 (1 + t) * abs(a) ** 2 + (1 + 1 / t) * abs(b) ** 2,
                 abs(t * a + b))


def polar_power(a: complex, b: complex, p: float, t: float) -> Sides:
    ma, mb = abs(a), abs(b)
    u, v = phase(a), phase(b)
    lhs = abs((u * mpow(ma, p) - v * mpow(mb, p)) * mpow(ma, 1 - p)) ** 2
    middle = mpow(mb, p) * mpow(ma, 1 - p) - mb
    rhs = (1 + t) * abs(a - b) ** 2 + (1 + 1 / t) * middle ** 2
    return Sides(lhs, rhs, abs(t * (a - b) + v * middle))


def p_angular(a: complex, b: complex, p: float, r: float) -> Sides:
    s = r / (r - 1)
    ma, mb = abs(a), abs(b)
    ap, bp = ma ** (p - 1), mb ** (p - 1)
    lhs = abs(a * ap - b * bp) ** 2
    middle = mb ** p * ma ** (1 - p) - mb
    rhs = ap * (r * abs(a - b) ** 2 + s * middle ** 2) * ap
    return Sides(lhs, rhs, abs((r - 1) * (a - b) * ap - b * (ap - bp)))


def angular(a: complex, b: complex, r: float) -> Sides:
    s = r / (r - 1)
    ma, mb = abs(a), abs(b)
    lhs = abs(a / ma - b / mb) ** 2
    rhs = (r * abs(a - b) ** 2 + s * (ma - mb) ** 2) / ma ** 2
    return Sides(lhs, rhs, abs((r - 1) * (a - b) / ma - b * (1 / ma - 1 / mb)))


def equality_conditions(a: complex, b: complex, p: float, r: float) -> tuple[float, float, float, float]:
    s = r / (r - 1)
    ap, bp = abs(a) ** (p - 1), abs(b) ** (p - 1)
    x = (a - b) * ap
    y = b * (ap - bp)
    return (abs((r - 1) * x - y), abs((s - 1) * y - x), abs(r * x - s * y),
            abs(a * ap - b * bp - s * y))


def equality_consequences(a: complex, b: complex, p: float, r: float) -> tuple[float, float, float]:
    """(identity residual, Löwner gap ``sqrt(K/r + |a|^2/s) - |b|``, absolute-value residual)."""
    s = r / (r - 1)
    ma, mb = abs(a), abs(b)
    k = ma ** (1 - p) * mb ** (2 * p) * ma ** (1 - p)
    bound_sq = k / r + ma ** 2 / s
    ident = abs((r - 1) * abs(a - b) ** 2 - (bound_sq - mb ** 2))
    gap = math.sqrt(bound_sq) - mb
    absolute = abs(r * abs(a - b) - s * abs(mb ** p * ma ** (1 - p) - mb))
    return ident, gap, absolute


def polar_difference(a: complex, b: complex, t: float) -> Sides:
    ma, mb = abs(a), abs(b)
    u, v = phase(a), phase(b)
    lhs = abs((u - v) * ma) ** 2
    rhs = (t + 1) * abs(a - b) ** 2 + (1 + 1 / t) * (ma - mb) ** 2
    cond = abs(t * (a - b) - v * (mb - ma))
    support = abs(abs(v) ** 2 - abs(u) ** 2)
    return Sides(lhs, rhs, max(cond, support))


def dominance(a: complex, b: complex, t: float) -> tuple[float, float, float]:
    """Gaps of ``t|a-b|^2 <= |a|^2 - |b|^2``, ``|b| <= |a|`` and ``|v|^2 <= |u|^2``."""
    ma, mb = abs(a), abs(b)
    return (ma ** 2 - mb ** 2 - t * abs(a - b) ** 2, ma - mb,
            abs(phase(a)) ** 2 - abs(phase(b)) ** 2)


def split_residuals(a: complex, b: complex, t: float) -> tuple[float, float, float]:
    """(forward, |A| = |B| + t|A-B|, A-B = -V|A-B|) residuals."""
    v = phase(b)
    c = abs(a - b)
    return (abs(t * (a - b) - v * (abs(b) - abs(a))),
            abs(abs(a) - abs(b) - t * c),
            abs(a - b + v * c))


def anticommutator(a: complex, b: complex, t: float) -> float:
    c = abs(a - b)
    return abs(2 * abs(b) * c - (1 - t) * c ** 2)


def structural(a: complex, b: complex, t: float) -> tuple[float, float]:
    ww = abs(phase(a - b)) ** 2
    return (abs(a - b * (1 - 2 / (1 - t) * ww)),
            abs(abs(a) - abs(b) * (1 + 2 * t / (1 - t) * ww)))


# --- vector forms ----------------------------------------------------------

Norm = Callable[[np.ndarray], float]


def euclidean(x) -> float:
    return float(np.linalg.norm(x))


def p_angular_distance_vec(x, y, p: float, norm: Norm = euclidean) -> float:
    """``|| ||x||^{p-1} x - ||y||^{p-1} y ||``; ``p = 0`` is the angular distance."""
    x, y = np.asarray(x), np.asarray(y)
    return norm(norm(x) ** (p - 1) * x - norm(y) ** (p - 1) * y)


def dunkl_williams_bound(x, y, constant: float = 4.0, norm: Norm = euclidean) -> float:
    """``constant * ||x - y|| / (||x|| + ||y||)``; 4 works in any normed space, 2 in inner product spaces."""
    x, y = np.asarray(x), np.asarray(y)
    return constant * norm(x - y) / (norm(x) + norm(y))


def pecaric_rajic_bound(x, y, norm: Norm = euclidean) -> float:
    x, y = np.asarray(x), np.asarray(y)
    nx, ny = norm(x), norm(y)
    return math.sqrt(2 * norm(x - y) ** 2 + 2 * (nx - ny) ** 2) / max(nx, ny)
