"""Complex log-gamma via a Spouge series with precision-dependent order.

The Spouge approximation
    Gamma(v) = (w+a)^(w+1/2) e^-(w+a) [ c0 + sum_k c_k/(w+k) + eps ],  w = v-1,
has relative error |eps| <= a^(-1/2) (2 pi)^(-a-1/2), so the order a is
chosen from the context's rel_tol.  Reflection handles Re(v) < 1/2; the
reflected branch is principal up to multiples of 2 pi i, and exp(log_gamma)
is exactly Gamma on every branch.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath as mp

from .errors import PoleError
from .precision import PrecisionContext, default_context

_LN_2PI = 1.8378770664093453  # float guide only, for order selection


def _spouge_order(target_bits: int) -> int:
    # (2 pi)^-(a+1/2) <= 2^-target  =>  a >= target * ln2/ln(2pi)
    return int(target_bits * 0.3771 + 4)


@lru_cache(maxsize=64)
def _spouge_coeffs(a: int, prec: int):
    """c_0..c_{a-1} computed at elevated precision (cache key includes prec)."""
    with mp.workprec(2 * prec + 40):
        cs = [mp.sqrt(2 * mp.pi)]
        fact = mp.mpf(1)
        for k in range(1, a):
            ck = ((-1) ** (k - 1)) / fact * (mp.mpf(a - k) ** (k - mp.mpf(1) / 2)) * mp.e ** (a - k)
            cs.append(ck)
            fact *= k
        return tuple(+c for c in cs)


def _near_nonpositive_integer(v: mp.mpc, tol) -> bool:
    re = v.real if isinstance(v, mp.mpc) else mp.mpf(v)
    im = v.imag if isinstance(v, mp.mpc) else mp.mpf(0)
    if re > mp.mpf(1) / 4:
        return False
    n = mp.nint(re)
    if n > 0:
        return False
    return abs(v - n) < tol * max(1, abs(v))


def _branch_estimate(v: mp.mpc) -> float:
    """Im(log Gamma(v)) on the standard branch, to O(1/|v|) accuracy.

    Float-precision Stirling after shifting Re(v) >= 10; only used to pick
    the 2 pi i multiple, so +-1 accuracy is ample.
    """
    import cmath

    z = complex(float(v.real), float(v.imag))
    shift = 0.0
    while z.real < 10:
        shift -= cmath.phase(z)
        z += 1
    st = (z - 0.5) * cmath.log(z) - z + 1 / (12 * z)
    return st.imag + shift


def log_gamma(v, ctx: PrecisionContext = None) -> mp.mpc:
    """log Gamma(v) on the standard (principal) branch: continuous off
    (-inf, 0], real on the positive reals.  Relative error <= ctx.rel_tol.

    Raises PoleError when v is within rel_tol of a non-positive integer.
    """
    ctx = ctx or default_context()
    target_bits = int(-mp.log(ctx.rel_tol, 2)) + 12
    a = _spouge_order(target_bits)
    with ctx.workprec(16):
        v = mp.mpc(v)
        if _near_nonpositive_integer(v, ctx.rel_tol):
            raise PoleError(f"log_gamma pole at {v}")
        if v.real >= mp.mpf(1) / 2:
            out = _log_gamma_spouge(v, a, target_bits)
        else:
            # reflection: log Gamma(v) = log pi - log sin(pi v) - log Gamma(1-v)
            out = mp.log(mp.pi) - mp.log(mp.sin(mp.pi * v)) - _log_gamma_spouge(1 - v, a, target_bits)
        if v.imag == 0 and v.real > 0:
            return mp.mpc(out.real)
        # the Spouge sum winds for complex arguments: snap Im to the branch
        k = mp.nint((_branch_estimate(v) - out.imag) / (2 * mp.pi))
        if k:
            out += 2j * mp.pi * k
        return out


def _log_gamma_spouge(v: mp.mpc, a: int, target_bits: int) -> mp.mpc:
    cs = _spouge_coeffs(a, target_bits)
    w = v - 1
    s = mp.mpc(cs[0])
    for k in range(1, a):
        s += cs[k] / (w + k)
    return (w + mp.mpf(1) / 2) * mp.log(w + a) - (w + a) + mp.log(s)


def gamma_fn(v, ctx: PrecisionContext = None) -> mp.mpc:
    """Gamma(v) = exp(log_gamma(v)); exact on all branches."""
    return mp.e ** log_gamma(v, ctx)


def rgamma_or_zero(x, ctx: PrecisionContext = None) -> mp.mpf:
    """1/Gamma(x) for real x, with the value 0 at non-positive integer poles.

    This is the convention the Wright-Bessel series needs: a series term
    whose Gamma argument hits a pole contributes nothing.
    """
    ctx = ctx or default_context()
    with ctx.workprec(16):
        x = mp.mpf(x)
        if _near_nonpositive_integer(mp.mpc(x), mp.mpf(2) ** (-ctx.mantissa_bits + 4)):
            return mp.mpf(0)
        if x > mp.mpf(1) / 2:
            return mp.e ** (-log_gamma(x, ctx)).real
        # reflection keeps the sign right for negative non-integer x
        return mp.sin(mp.pi * x) / mp.pi * mp.e ** (log_gamma(1 - x, ctx)).real
