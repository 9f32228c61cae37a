"""Inverse-CDF transforms of keyed uniforms into the distributions the samplers need."""
import numpy as np
from scipy import special, stats


def beta_1_a(u, a):
    """Beta(1, a): 1 - (1 - u)^(1/a)."""
    return -np.expm1(np.log1p(-np.asarray(u)) / a)


def beta_a_1(u, a):
    """Beta(a, 1): u^(1/a)."""
    return np.power(u, 1.0 / a)


def beta(u, a, b):
    return special.betaincinv(a, b, u)


def poisson(u, mu):
    """Smallest k with P{N <= k} >= u, by accumulating the pmf (suited to moderate means)."""
    u, mu = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(mu, dtype=float))
    if np.any(mu > 50):
        return stats.poisson.ppf(u, mu).astype(np.int64)
    k = np.zeros(u.shape, dtype=np.int64)
    pmf = np.exp(-mu)
    cdf = pmf.copy()
    active = u > cdf
    j = 0
    while active.any():
        j += 1
        pmf = pmf * mu / j
        cdf = cdf + pmf
        k[active] = j
        active &= u > cdf
        if j > 1000:  # cdf rounding stalled just below u
            break
    return k


def normal(u, mean=0.0, sd=1.0):
    return mean + sd * special.ndtri(u)


def laplace(u, scale=1.0):
    u = np.asarray(u)
    return np.where(u < 0.5, scale * np.log(2.0 * u), -scale * np.log(2.0 * (1.0 - u)))


def exponential(u, rate):
    return -np.log(u) / rate


def logistic(x):
    return special.expit(x)


def probit(x):
    return special.ndtr(x)


LINKS = {"logistic": logistic, "probit": probit}
