"""Shared test utilities and independent oracles (kept out of the package)."""

import mpmath as mp


def rel_err(a, b):
    a, b = mp.mpmathify(a), mp.mpmathify(b)
    d = abs(a - b)
    s = max(abs(a), abs(b))
    return d / s if s > 0 else d


def bessel_j_series(nu, x, terms=1200):
    """Classical Bessel J_nu(x) by its power series; independent oracle.

    Working precision is padded by ~1.45|x| bits to absorb the series
    cancellation (peak term ~ e^|x|).
    """
    with mp.workprec(mp.mp.prec + 80 + int(1.45 * abs(float(x)))):
        x = mp.mpf(x)
        half = x / 2
        s = mp.mpf(0)
        t = half**nu / mp.gamma(nu + 1)
        for k in range(terms):
            s += t
            t = t * (-(half * half)) / ((k + 1) * (nu + k + 1))
            if abs(t) < abs(s) * mp.mpf(2) ** (-mp.mp.prec - 20) and k > 4:
                break
        return +s
