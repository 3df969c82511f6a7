"""Shared helpers for the test suite (no pathlift internals here)."""
import math

import numpy as np
import numpy.polynomial.polynomial as npoly


def random_disk(rng, n, radius=1.0):
    """n points uniform in the open disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def random_pd1(rng, d):
    """Monic degree-d polynomial with every lower coefficient in the unit disk."""
    return np.append(random_disk(rng, d), 1.0 + 0j)


def naive_eval(coeffs, z):
    return sum(complex(a) * complex(z) ** j for j, a in enumerate(coeffs))


def taylor_by_derivatives(coeffs, z):
    """f^(k)(z)/k! via numpy's polyder, independent of synthetic division."""
    c = np.asarray(coeffs, dtype=complex)
    out = []
    for k in range(len(c)):
        dk = npoly.polyder(c, k) if k else c
        out.append(npoly.polyval(z, dk) / math.factorial(k))
    return np.array(out)


def fourier_matrix(n):
    w = np.exp(2j * np.pi / n)
    j = np.arange(n)
    return w ** np.outer(j, j)
