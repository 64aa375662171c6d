import sys
from fractions import Fraction

import pytest

from qcert.elliptic import WeierstrassCurve, short_weierstrass_from_general


@pytest.fixture(scope="session")
def curve_11a():
    """Short model of y^2 + y = x^3 - x^2 - 10x - 20, derived by the
    standard completing-the-square/cube substitution (never hard-coded)."""
    curve, point_map = short_weierstrass_from_general(0, -1, 1, -10, -20)
    return curve, point_map


def ec_add(P, Q, A):
    """Affine group law on y^2 = x^3 + A x + B (test oracle only)."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def ec_multiply(n, P, A):
    acc = None
    for _ in range(n):
        acc = ec_add(acc, P, A)
    return acc
