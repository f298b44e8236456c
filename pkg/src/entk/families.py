"""Horodecki-type bound-entangled benchmark families."""

from __future__ import annotations

import math

import numpy as np

from .errors import OutOfRange
from .states import DensityMatrix

HOR4X2_DIMS = (2, 4)


def _check(a, lo, hi, name):
    if not lo <= a <= hi:
        raise OutOfRange(f"{name}: parameter a={a} outside [{lo}, {hi}]")


def horodecki_3x3(a: float) -> DensityMatrix:
    """3x3 ppt-entangled family, a in [0, 1]."""
    _check(a, 0.0, 1.0, "hor33")
    b = (1 + a) / 2
    g = math.sqrt(1 - a * a) / 2
    m = np.diag([a, a, a, a, a, a, b, a, b]).astype(float)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            if i != 8 or j != 8:
                m[i, j] = a
    m[6, 8] = m[8, 6] = g
    return DensityMatrix(m / (1 + 8 * a), (3, 3))


def horodecki_4x2(a: float) -> DensityMatrix:
    """8x8 ppt-entangled family, a in [0, 1].

    The printed layout is ppt only when read with the two-level factor
    first, so the factor structure is (2, 4).
    """
    _check(a, 0.0, 1.0, "hor24")
    b = (1 + a) / 2
    g = math.sqrt(1 - a * a) / 2
    m = np.diag([a, a, a, a, b, a, a, b]).astype(float)
    for i in range(3):
        m[i, i + 5] = m[i + 5, i] = a
    m[4, 7] = m[7, 4] = g
    return DensityMatrix(m / (1 + 7 * a), HOR4X2_DIMS)


def horodecki_3x3_beta(a: float) -> DensityMatrix:
    """3x3 family with ppt-entangled window a in (1/2, 3/2]; a in [-5/2, 5/2]."""
    _check(a, -2.5, 2.5, "hor3x3beta")
    bm, bp = 2.5 - a, 2.5 + a
    m = np.diag([2, bm, bp, bp, 2, bm, bm, bp, 2]).astype(float)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = 2.0
    return DensityMatrix(m / 21, (3, 3))


FAMILIES = {
    "hor33": horodecki_3x3,
    "hor24": horodecki_4x2,
    "hor3x3beta": horodecki_3x3_beta,
    "horror": horodecki_3x3_beta,
}
