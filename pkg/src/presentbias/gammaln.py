"""Log-gamma via the Lanczos approximation (g = 7, nine terms).

Only positive real arguments are supported.  For ``x >= 0.5`` the series is
used directly; smaller positive arguments are shifted up with
``logG(x) = logG(x + 1) - log(x)``.
"""

import math

import numpy as np

_G = 7.0
_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _series(z):
    # z = x - 1
    acc = _COEF[0]
    for i in range(1, len(_COEF)):
        acc += _COEF[i] / (z + i)
    return acc


def log_gamma(x):
    """Natural log of the gamma function for real ``x > 0``."""
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    if math.isinf(x):
        return math.inf
    shift = 0.0
    while x < 0.5:
        shift -= math.log(x)
        x += 1.0
    z = x - 1.0
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(_series(z)) + shift


def log_gamma_ratio(x, a):
    """Return ``logG(x + a) - logG(x)`` without cancelling two large logs.

    Needs ``x >= 0.5`` and ``a >= 0``.  The Lanczos terms are differenced
    analytically so the result stays accurate for ``x`` in the millions.
    """
    x = float(x)
    a = float(a)
    if x < 0.5 or a < 0.0:
        raise ValueError(f"log_gamma_ratio requires x >= 0.5 and a >= 0, got x={x!r}, a={a!r}")
    if a == 0.0:
        return 0.0
    z = x - 1.0
    t = z + _G + 0.5
    u = a / t
    # (z + a + 1/2) log(t + a) - (z + 1/2) log t - a, with z + 1/2 = t - g
    main = a * math.log(t) + t * _log1p_minus(u) + (a - _G) * math.log1p(u)
    return main + math.log(_series(z + a) / _series(z))


def _log1p_minus(u):
    """``log1p(u) - u`` for ``u >= 0`` without cancellation at small ``u``."""
    if u > 1e-2:
        return math.log1p(u) - u
    term = u
    acc = 0.0
    for k in range(2, 12):
        term *= -u
        acc += term / k
    return acc


def log_gamma_array(xs):
    """Vectorised :func:`log_gamma` for arrays with every entry ``>= 0.5``."""
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < 0.5):
        raise ValueError("log_gamma_array requires all entries >= 0.5")
    z = xs - 1.0
    acc = np.full_like(z, _COEF[0])
    for i in range(1, len(_COEF)):
        acc += _COEF[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(acc)
