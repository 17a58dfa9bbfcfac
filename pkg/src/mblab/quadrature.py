"""The three quadrature engines.

* quad_circle   -- (1/2 pi i) contour integral over |z| = R of f(z) dz/z,
                   equispaced trapezoid (spectral for analytic integrands),
                   optional breakpoint angles for piecewise-analytic f,
                   in which case Gauss-Legendre panels are used per arc.
* quad_semiaxis -- integral over (0, oo) with an x^alpha endpoint and
                   super-polynomial decay, by exp-sinh substitution.
* gauss_jacobi01 -- nodes/weights for int_0^1 u^alpha f(u) du.

All refinement policies double the node count until two successive levels
agree to ctx.rel_tol; accumulation order is fixed, so results are
bit-reproducible.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath as mp
import numpy as np

from .errors import EndpointSingularity, NonConvergence
from .precision import PrecisionContext, agree, default_context

MAX_CIRCLE_NODES = 1 << 20


def quad_circle(f, radius, ctx: PrecisionContext = None, breakpoints=None) -> mp.mpc:
    """(1/2 pi i) * oint_{|z|=radius} f(z) dz/z.

    With ``breakpoints`` (angles in (-pi, pi] where f is allowed to jump),
    the circle is split into arcs and each arc integrated by
    Gauss-Legendre; nodes are strictly interior so f is never evaluated on
    a breakpoint ray.
    """
    ctx = ctx or default_context()
    if radius <= 0:
        raise ValueError("radius must be positive")
    with ctx.workprec():
        R = mp.mpf(radius)
        if breakpoints:
            return _quad_circle_panels(f, R, ctx, breakpoints)
        n = ctx.quad_points_circle
        prev = None
        fmax = mp.mpf(0)
        while n <= MAX_CIRCLE_NODES:
            s = mp.mpc(0)
            for m in range(n):
                t = 2 * mp.pi * m / n
                fv = f(R * mp.e ** (1j * t))
                fmax = max(fmax, abs(fv))
                s += fv
            val = s / n
            if prev is not None and agree(val, prev, ctx.rel_tol, scale_floor=fmax * ctx.rel_tol):
                return +val
            prev = val
            n *= 2
        raise NonConvergence("quad_circle failed to stabilize within node cap")


def _quad_circle_panels(f, R, ctx, breakpoints) -> mp.mpc:
    angles = sorted(mp.mpf(a) for a in breakpoints)
    panels = []
    for i, a in enumerate(angles):
        b = angles[(i + 1) % len(angles)] + (2 * mp.pi if i + 1 == len(angles) else 0)
        if b - a > mp.mpf(2) ** (-ctx.mantissa_bits // 2):
            panels.append((a, b))
    n = max(24, ctx.quad_points_circle // 2)
    prev = None
    fmax = mp.mpf(0)
    for _ in range(8):
        val = mp.mpc(0)
        for a, b in panels:
            xs, ws = gauss_legendre(n, ctx.mantissa_bits)
            half = (b - a) / 2
            midp = (b + a) / 2
            s = mp.mpc(0)
            for x, w in zip(xs, ws):
                t = midp + half * x
                fv = f(R * mp.e ** (1j * t))
                fmax = max(fmax, abs(fv))
                s += w * fv
            val += s * half
        val = val / (2 * mp.pi)
        if prev is not None and agree(val, prev, ctx.rel_tol, scale_floor=fmax * ctx.rel_tol):
            return +val
        prev = val
        n *= 2
    raise NonConvergence("panelled circle quadrature failed to stabilize")


def quad_semiaxis(f, ctx: PrecisionContext = None, *, alpha=0.0, max_levels=12):
    """int_0^inf f(x) dx by exp-sinh (x = exp((pi/2) sinh t)).

    ``alpha`` is the declared endpoint exponent of f at 0 (f ~ x^alpha);
    it must exceed -1 and only enters validation, not the rule itself.
    Works for complex-valued f; the decay at +inf must beat every
    polynomial, which is the case for the e^{-nV} weights used here.
    """
    ctx = ctx or default_context()
    if mp.mpf(alpha) <= -1:
        raise EndpointSingularity(f"endpoint exponent alpha={alpha} <= -1")
    with ctx.workprec(16):
        tiny = mp.mpf(2) ** (-(ctx.mantissa_bits + 10))
        half_pi = mp.pi / 2

        def boosted(t):
            x = mp.e ** (half_pi * mp.sinh(t))
            return f(x) * x * half_pi * mp.cosh(t)

        h = mp.mpf(1) / 4
        # level 0: march both directions independently until terms are dead
        s = boosted(mp.mpf(0))
        scale = abs(s) + 1
        for sgn in (1, -1):
            m = 1
            dead = 0
            while dead < 3 and m < 20000:
                term = boosted(sgn * m * h)
                s += term
                scale = max(scale, abs(term))
                dead = dead + 1 if abs(term) < tiny * scale else 0
                m += 1
        t_span = m * h
        prev = s * h
        for lev in range(1, max_levels + 1):
            h = h / 2
            m = 1
            add = mp.mpc(0)
            dead_r = dead_l = 0
            while (dead_r < 3 or dead_l < 3) and m * h <= 2 * t_span + 4:
                if dead_r < 3:
                    term = boosted(m * h)
                    add += term
                    dead_r = dead_r + 1 if abs(term) < tiny * scale else 0
                if dead_l < 3:
                    term = boosted(-m * h)
                    add += term
                    dead_l = dead_l + 1 if abs(term) < tiny * scale else 0
                m += 2  # only odd multiples are new at the halved step
            val = prev / 2 + add * h
            if agree(val, prev, ctx.rel_tol, scale_floor=scale * ctx.rel_tol):
                out = +val
                return out.real if isinstance(out, mp.mpc) and out.imag == 0 else out
            prev = val
        raise NonConvergence("quad_semiaxis failed to stabilize")


# ---------------------------------------------------------------------------
# Gauss rules (arbitrary precision; float64 seeds, Newton polish)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=128)
def gauss_legendre(n: int, prec: int):
    """Nodes/weights on [-1, 1], precision ``prec`` bits."""
    with mp.workprec(prec + 24):
        seeds = [mp.cos(mp.pi * (i + mp.mpf(3) / 4) / (n + mp.mpf(1) / 2)) for i in range(n)]
        xs, ws = [], []
        for x in seeds:
            for _ in range(60):
                p0, p1 = mp.mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(2) ** (-prec - 8):
                    break
            p0, p1 = mp.mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
        order = sorted(range(n), key=lambda i: xs[i])
        return tuple(xs[i] for i in order), tuple(ws[i] for i in order)


def _jacobi01_recurrence(n: int, alpha, prec: int):
    """Monic recurrence (a_k, b_k) for weight (1+t)^alpha on [-1,1], a=0,b=alpha."""
    with mp.workprec(prec + 24):
        b = mp.mpf(alpha)
        a = mp.mpf(0)
        ak, bk = [], []
        mu0 = mp.mpf(2) ** (b + 1) / (b + 1)
        bk.append(mu0)
        for k in range(n + 1):
            if k == 0:
                ak.append((b - a) / (a + b + 2))
            else:
                den = (2 * k + a + b) * (2 * k + a + b + 2)
                ak.append((b * b - a * a) / den)
            if k == 1:
                bk.append(4 * (a + 1) * (b + 1) / ((a + b + 2) ** 2 * (a + b + 3)))
            elif k >= 2:
                num = 4 * k * (k + a) * (k + b) * (k + a + b)
                den = (2 * k + a + b) ** 2 * (2 * k + a + b + 1) * (2 * k + a + b - 1)
                bk.append(num / den)
        return ak, bk


@lru_cache(maxsize=64)
def gauss_jacobi01(n: int, alpha_key, prec: int):
    """Nodes/weights for int_0^1 u^alpha f(u) du, exact on degree 2n-1.

    alpha_key is the exact mpf tuple of alpha (hashable cache key)."""
    alpha = mp.mpf(alpha_key)
    ak, bk = _jacobi01_recurrence(n, alpha, prec)
    with mp.workprec(prec + 24):
        # float64 Golub-Welsch seeds
        d = np.array([float(a) for a in ak[:n]])
        e = np.array([float(mp.sqrt(b)) for b in bk[1 : n]])
        seeds = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))

        def orthonormal_chain(x):
            # p_0..p_n orthonormal at x, plus p_n' for Newton
            sb = [mp.sqrt(b) for b in bk]
            p = [mp.mpf(1) / sb[0]]
            dp = [mp.mpf(0)]
            pm1, dpm1 = mp.mpf(0), mp.mpf(0)
            for k in range(n):
                pk1 = ((x - ak[k]) * p[-1] - (sb[k] * pm1 if k > 0 else 0)) / sb[k + 1]
                dpk1 = ((x - ak[k]) * dp[-1] + p[-1] - (sb[k] * dpm1 if k > 0 else 0)) / sb[k + 1]
                pm1, dpm1 = p[-1], dp[-1]
                p.append(pk1)
                dp.append(dpk1)
            return p, dp

        xs, ws = [], []
        for s in seeds:
            x = mp.mpf(float(s))
            for _ in range(80):
                p, dp = orthonormal_chain(x)
                dx = p[-1] / dp[-1]
                x -= dx
                if abs(dx) < mp.mpf(2) ** (-prec - 8):
                    break
            p, _ = orthonormal_chain(x)
            lam = 1 / mp.fsum(pk * pk for pk in p[:-1])  # Christoffel weight
            xs.append(x)
            ws.append(lam)
        # map [-1,1], weight (1+t)^alpha  ->  [0,1], weight u^alpha
        scale = mp.mpf(2) ** (-(alpha + 1))
        nodes = tuple((1 + x) / 2 for x in xs)
        weights = tuple(w * scale for w in ws)
        return nodes, weights


def gauss_jacobi01_nodes(n: int, alpha, ctx: PrecisionContext = None):
    ctx = ctx or default_context()
    with ctx.workprec():
        key = mp.mpf(alpha)._mpf_
    return gauss_jacobi01(n, key, ctx.mantissa_bits)
