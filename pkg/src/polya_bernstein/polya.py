"""Polya-Eggenberger urn distribution: validation, pmf, moments, and
truncated first moments (Kozniewska closed form plus a brute-force twin).

Parameters (n, a, b, c) describe n draws from an urn with initial white
weight a, black weight b, and replacement increment c; c = 0 is binomial,
c < 0 removes weight after each draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numeric_core import factorial_ratio

__all__ = [
    "AdmissibilityError",
    "PolyaParams",
    "validate",
    "pmf",
    "pmf_matrix",
    "moments",
    "truncated_first_moment",
]

# Slack for the boundary case where a + (n-1)c is meant to be exactly 0 but
# floating evaluation of c = -min{a,b}/(n-1) lands a few ulps below.
BOUNDARY_SLACK = 1e-14

_SUM_TOL = 1e-12
_NEG_TOL = 1e-15


class AdmissibilityError(ValueError):
    """Raised when (n, a, b, c) violate the urn admissibility hypothesis."""


@dataclass(frozen=True)
class PolyaParams:
    """Parameters (n, a, b, c) of the Polya-Eggenberger distribution."""

    n: int
    a: float
    b: float
    c: float


def validate(params: PolyaParams, slack: float = BOUNDARY_SLACK) -> None:
    """Accept iff a,b >= 0, a+b > 0 and both a+(n-1)c and b+(n-1)c are >= 0.

    Equality is accepted within -slack; the boundary is where the variance-
    minimizing replacement profile lives.  Rejections name the violated
    inequality and its numeric slack.
    """
    n, a, b, c = params.n, params.a, params.b, params.c
    if n < 1:
        raise AdmissibilityError(f"n must be a positive integer, got {n}")
    if a < 0 or b < 0:
        raise AdmissibilityError(f"initial weights must be nonnegative, got a={a}, b={b}")
    if a + b <= 0:
        raise AdmissibilityError(f"a + b must be positive, got {a + b}")
    lhs_a = a + (n - 1) * c
    if lhs_a < -slack:
        raise AdmissibilityError(
            f"a + (n-1)c = {lhs_a} < 0 (slack {-slack}) for a={a}, n={n}, c={c}"
        )
    lhs_b = b + (n - 1) * c
    if lhs_b < -slack:
        raise AdmissibilityError(
            f"b + (n-1)c = {lhs_b} < 0 (slack {-slack}) for b={b}, n={n}, c={c}"
        )


def pmf(params: PolyaParams) -> np.ndarray:
    """Probability mass function, entries k = 0..n.

    Entry k is C(n,k) * a^(k,c) * b^(n-k,c) / (a+b)^(n,c).  Parameters are
    first normalized to a+b = 1 (the pmf is homogeneous of degree 0), then
    each entry is computed by pairing numerator factor i with denominator
    factor i, as in :func:`factorial_ratio`.  Entries are clamped to [0,1];
    the sum-to-1 identity is asserted, not forced.
    """
    validate(params)
    n = params.n
    total = params.a + params.b
    a = params.a / total
    b = params.b / total
    c = params.c / total
    for i in range(n):
        if 1.0 + i * c == 0.0:
            raise ZeroDivisionError(
                f"denominator factor (a+b) + {i}*c vanishes for params {params}"
            )
    probs = np.empty(n + 1)
    for k in range(n + 1):
        num = [a + i * c for i in range(k)] + [b + j * c for j in range(n - k)]
        prod = float(math.comb(n, k))
        for i in range(n):
            prod *= num[i] / (1.0 + i * c)
        probs[k] = prod
    if probs.min() < -_NEG_TOL:
        raise ArithmeticError(
            f"pmf entry {probs.min()} below rounding tolerance {-_NEG_TOL} for {params}"
        )
    probs = np.clip(probs, 0.0, 1.0)
    drift = abs(probs.sum() - 1.0)
    if drift > _SUM_TOL:
        raise ArithmeticError(f"pmf sum drifts from 1 by {drift} for {params}")
    return probs


def pmf_matrix(n: int, x: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Vectorized pmf for parameter family (n, x, 1-x, c), shape (n+1, len(x)).

    x and c are broadcast together; every column is the pmf of
    PolyaParams(n, x_j, 1-x_j, c_j).  Used by grid sweeps where the scalar
    path would dominate the runtime; agrees with :func:`pmf` to ~1e-15.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    c = np.broadcast_to(np.asarray(c, dtype=float), x.shape).copy()
    if np.any(x < -BOUNDARY_SLACK) or np.any(x > 1 + BOUNDARY_SLACK):
        raise AdmissibilityError("x must lie in [0,1]")
    lhs = np.minimum(x, 1.0 - x) + (n - 1) * c
    if np.any(lhs < -BOUNDARY_SLACK):
        raise AdmissibilityError(
            f"min{{x,1-x}} + (n-1)c = {lhs.min()} < 0 somewhere in the sweep"
        )
    i = np.arange(n, dtype=float)[:, None]
    fa = x[None, :] + i * c[None, :]          # factor i of a^(k,c)
    fb = (1.0 - x)[None, :] + i * c[None, :]  # factor i of b^(m,c)
    fd = 1.0 + i * c[None, :]
    if np.any(fd == 0.0):
        raise ZeroDivisionError("denominator factor 1 + i*c vanishes in the sweep")
    ones = np.ones((1, x.size))
    cum_a = np.vstack([ones, np.cumprod(fa, axis=0)])  # cum_a[k] = a^(k,c)
    cum_b = np.vstack([ones, np.cumprod(fb, axis=0)])
    den = np.prod(fd, axis=0)
    binom = np.array([math.comb(n, k) for k in range(n + 1)], dtype=float)
    probs = binom[:, None] * cum_a * cum_b[::-1] / den
    if probs.min() < -_NEG_TOL:
        raise ArithmeticError(f"pmf entry {probs.min()} below rounding tolerance")
    return np.clip(probs, 0.0, 1.0)


def moments(params: PolyaParams) -> tuple[float, float]:
    """Mean na/(a+b) and variance nab/(a+b)^2 * (1 + (n-1)c/(a+b+c))."""
    validate(params)
    n, a, b, c = params.n, params.a, params.b, params.c
    total = a + b
    if total + c == 0.0:
        raise ValueError(f"variance formula is singular at a+b+c = 0 (params {params})")
    mean = n * a / total
    variance = n * a * b / total**2 * (1.0 + (n - 1) * c / (total + c))
    return mean, variance


def truncated_first_moment(
    params: PolyaParams, r: int, method: str = "closed"
) -> float:
    """Truncated first moment sum_{k=0}^{r} (a - k/n) * pmf[k], for a+b = 1.

    method="closed" uses the Kozniewska identity
    C(n-1,r) * a^(r+1,c) * (1-a)^(n-r,c) / 1^(n,c); method="brute" sums the
    literal series over the pmf.  The two agree to ~1e-15 and the brute
    route is kept as an independent oracle.
    """
    if abs(params.a + params.b - 1.0) > 1e-12:
        raise ValueError(f"truncated moment requires a+b = 1, got {params.a + params.b}")
    n = params.n
    if not 0 <= r <= n - 1:
        raise ValueError(f"r must lie in 0..n-1, got r={r}, n={n}")
    validate(params)
    if method == "closed":
        return math.comb(n - 1, r) * factorial_ratio(params.a, r, n, params.c)
    if method == "brute":
        probs = pmf(params)
        return float(sum((params.a - k / n) * probs[k] for k in range(r + 1)))
    raise ValueError(f"unknown method {method!r}")
