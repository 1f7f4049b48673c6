"""Independent oracles used to freeze expected values in the tests.

These deliberately avoid the package's own evaluation paths: the Bessel
oracle is a direct ascending power series in exact-ish float arithmetic via
math.fsum, and the half-integer forms come straight from the closed
trigonometric expressions.
"""

import math


def bessel_series(nu, x, terms=30):
    """J_nu(x) by the ascending power series, summed with fsum.

    Intended for modest x (the 30-term default is ample for x <= 10)."""
    contributions = []
    for k in range(terms):
        sign = -1.0 if k % 2 else 1.0
        log_num = (nu + 2 * k) * math.log(x / 2.0) if x > 0 else (0.0 if nu + 2 * k == 0 else -math.inf)
        log_den = math.lgamma(k + 1) + math.lgamma(nu + k + 1)
        contributions.append(sign * math.exp(log_num - log_den))
    return math.fsum(contributions)


def bessel_half_trig(k, x):
    """J_{k+1/2}(x) for k in {-1, 0, 1} from the closed forms."""
    amp = math.sqrt(2.0 / (math.pi * x))
    if k == -1:
        return amp * math.cos(x)
    if k == 0:
        return amp * math.sin(x)
    if k == 1:
        return amp * (math.sin(x) / x - math.cos(x))
    raise ValueError(k)
