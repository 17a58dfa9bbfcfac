"""Wright's generalized Bessel function and the three Fox-H-type integrals.

The three Mellin-Barnes integrals share the argument scale
    u = (theta/(theta+1))^(theta/(theta+1)) (1/(theta+1))^(1/(theta+1)) z
and two Gamma factors with slopes theta/(theta+1) and 1/(theta+1).  Kinds
1 and 3 reduce to Wright-Bessel series; kind 2 is evaluated on a numeric
parabolic loop contour opening to +infinity, which keeps the evaluation
uniform in theta and immune to resonant pole collisions.  The residue
double series for kind 2 is retained only as a cross-check away from
resonance.

Conventions follow the hard-edge parametrix construction:
    I1(z) = (1/2 pi i) int_L Gamma(1/2 - a - A v)/Gamma(1 - a + B v) u^v dv
    I2(z) = (1/2 pi i) int_L Gamma(1/2 - a - A v) Gamma(a - B v)   u^v dv
    I3(z) = I1 with (theta, a) -> (1/theta, 1/2 - a)
with A = theta/(theta+1), B = 1/(theta+1), and L a loop from +infinity
around all (real, rightward) poles and back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath as mp

from .errors import (
    ContourNonConvergence,
    DomainError,
    NonConvergence,
    SectorError,
)
from .gammafn import log_gamma, rgamma_or_zero
from .precision import PrecisionContext, agree, default_context


@dataclass(frozen=True)
class WrightParams:
    """Parameters of J_{a1,a2}(x) = sum_j (-x)^j / (j! Gamma(a1 + j a2))."""

    a1: object
    a2: object

    def __post_init__(self):
        if mp.mpf(self.a2) <= 0:
            raise ValueError("a2 must be positive")


@dataclass(frozen=True)
class FoxIParams:
    """(theta, a) of the I-functions; u_scale is the Mellin-Barnes argument scale."""

    theta: object
    a: object

    def __post_init__(self):
        if mp.mpf(self.theta) <= 0 or not mp.isfinite(mp.mpf(self.theta)):
            raise ValueError("theta must be positive and finite")

    @property
    def u_scale(self) -> mp.mpf:
        t = mp.mpf(self.theta)
        return (t / (t + 1)) ** (t / (t + 1)) * (1 / (t + 1)) ** (1 / (t + 1))


# ---------------------------------------------------------------------------
# Wright-Bessel series
# ---------------------------------------------------------------------------

_RGAMMA_TABLES: dict = {}


def _rgamma_table(a1, a2, n_terms: int, bits: int):
    """Cached 1/Gamma(a1 + j a2), j = 0..n_terms-1, at ``bits`` precision."""
    key = (mp.nstr(mp.mpf(a1), 40), mp.nstr(mp.mpf(a2), 40), bits)
    tab = _RGAMMA_TABLES.get(key)
    if tab is None or len(tab) < n_terms:
        tab = list(tab or [])
        ctx = PrecisionContext(mantissa_bits=max(64, bits))
        with mp.workprec(bits + 16):
            for j in range(len(tab), n_terms):
                tab.append(rgamma_or_zero(mp.mpf(a1) + j * mp.mpf(a2), ctx))
        if len(_RGAMMA_TABLES) > 256:
            _RGAMMA_TABLES.clear()
        _RGAMMA_TABLES[key] = tab
    return tab


def _wright_peak_bits(a1: float, a2: float, log_abs_x: float) -> int:
    """log2 of the largest series term, float probe for precision sizing."""
    if log_abs_x <= 0:
        return 0
    best = 0.0
    j = 1
    while j < 100000:
        g = a1 + j * a2
        lg = math.lgamma(g) if g > 0.5 else 0.0
        cur = j * log_abs_x - math.lgamma(j + 1) - lg
        if cur > best:
            best = cur
        elif cur < best - 40:
            break
        j += max(1, j // 8)
    return max(0, int(best / math.log(2)))


def wright_bessel(params: WrightParams, x, ctx: PrecisionContext = None):
    """J_{a1,a2}(x), entire in x; cancellation triggers precision escalation.

    The working precision is pre-sized from a float estimate of the peak
    series term, then audited; terms are summed down to the noise floor of
    the working precision, not of the requested tolerance.
    """
    ctx = ctx or default_context()
    a1, a2 = mp.mpf(params.a1), mp.mpf(params.a2)
    ax = abs(mp.mpc(x))
    extra = _wright_peak_bits(float(a1), float(a2), float(mp.log(ax)) if ax > 0 else -1.0) + 16
    for _attempt in range(8):
        bits = ctx.mantissa_bits + 32 + extra
        with mp.workprec(bits):
            xx = mp.mpc(x)
            real_in = xx.imag == 0
            s = mp.mpc(0)
            term_pow = mp.mpc(1)  # (-x)^j / j!
            max_mag = mp.mpf(0)
            noise = mp.mpf(2) ** (-(bits - 24))
            tiny_run = 0
            j = 0
            tab = _rgamma_table(a1, a2, 64, bits)
            while j < ctx.max_series_terms:
                if j >= len(tab):
                    tab = _rgamma_table(a1, a2, len(tab) * 2, bits)
                term = term_pow * tab[j]
                s += term
                mag = abs(term)
                max_mag = max(max_mag, mag)
                tiny_run = tiny_run + 1 if mag <= noise * max_mag else 0
                if tiny_run >= 4 and j > 3:
                    break
                j += 1
                term_pow = term_pow * (-xx) / j
            else:
                raise NonConvergence("wright_bessel: max_series_terms exceeded")
            # cancellation audit: bits lost = log2(max term / result)
            if abs(s) > 0:
                lost = mp.log(max_mag / abs(s), 2)
            else:
                lost = mp.mpf(bits)
            if max_mag == 0 or lost < bits - ctx.mantissa_bits - 24:
                out = +s
                return out.real if real_in else out
            extra = int(lost) + 64
    raise NonConvergence("wright_bessel: cancellation escalation failed")


# ---------------------------------------------------------------------------
# Mellin-Barnes contour engine for I^(2)
# ---------------------------------------------------------------------------


class Fox2Contour:
    """Reusable parabola contour v(t) = x0 + mu t^2 + i t for a set of ``a`` values.

    Gamma-factor tables along the contour are shared across every z fed to
    :meth:`eval`, which is what makes parameter-grid sweeps affordable.
    The orientation (t increasing) was fixed against the split-relation
    oracle; it corresponds to the loop from +infinity below the poles and
    back above them.
    """

    MU = mp.mpf(1) / 4

    def __init__(self, theta, a_list, ctx: PrecisionContext, max_abs_z):
        self.theta = mp.mpf(theta)
        self.a_list = [mp.mpf(a) for a in a_list]
        self.ctx = ctx
        t = self.theta
        self.A = t / (t + 1)
        self.B = 1 / (t + 1)
        zmax = float(max_abs_z)
        with mp.workprec(ctx.mantissa_bits + 64):
            first_poles = []
            for a in self.a_list:
                first_poles.append((t + 1) * a)
                first_poles.append((t + 1) / t * (mp.mpf(1) / 2 - a))
            self.x0 = min(first_poles) - mp.mpf(3) / 4
        # the working precision must absorb the gap between the integrand
        # peak on the contour and an e^{-|z|}-small result; the peak is only
        # known once the geometry is probed, so iterate to a fixed point
        self.bits = ctx.mantissa_bits + 96
        for _ in range(4):
            peak_log = self._probe_geometry(zmax)
            cancel = max(0, int((peak_log + 1.05 * zmax) / math.log(2)))
            want = ctx.mantissa_bits + 32 + cancel + 48
            if want <= self.bits:
                break
            self.bits = want
        # the Gamma factors and powers need rel_tol accuracy plus the
        # cancellation budget; the full ``bits`` matter only for summation
        target_rel = int(-mp.log(ctx.rel_tol, 2)) + cancel + 32
        self._gamma_ctx = PrecisionContext(
            mantissa_bits=max(64, target_rel + 16), rel_tol=mp.mpf(2) ** (-target_rel)
        )
        self._levels = {}  # level -> (ts, {a_index: gamma*dv list})

    def _probe_geometry(self, zmax) -> float:
        """Float64 march sizing the truncation T and base step h0.

        Returns the peak of log|integrand| along the contour (worst case
        |arg u| = pi), used to size the cancellation headroom.
        """
        A, B = float(self.A), float(self.B)
        x0 = float(self.x0)
        mu = float(self.MU)
        log_u_max = math.log(max(float(FoxIParams(self.theta, 0).u_scale) * max(zmax, 1e-6), 1e-6))
        need = (self.bits + 24) * math.log(2)

        def logmag(t):
            v = complex(x0 + mu * t * t, t)
            g = -math.inf
            for a in self.a_list[: min(len(self.a_list), 3)]:
                g1 = _lgamma_abs(complex(0.5 - float(a), 0) - A * v)
                g2 = _lgamma_abs(complex(float(a), 0) - B * v)
                g = max(g, g1 + g2)
            return g + v.real * log_u_max + abs(v.imag) * math.pi

        peak = logmag(0.0)
        t_peak = 0.0
        T = 1.0
        while T < 4000:
            cur = logmag(T)
            if cur > peak:
                peak, t_peak = cur, T
            elif cur < peak - need:
                break
            T *= 1.2
        else:
            raise ContourNonConvergence("Mellin-Barnes truncation did not close")
        # bisect the crossing down to ~10% overshoot
        lo = T / 1.2
        for _ in range(8):
            mid = (lo + T) / 2
            if logmag(mid) < peak - need:
                T = mid
            else:
                lo = mid
        # resolve the oscillation where the integrand still matters
        t_res = min(T, max(t_peak * 1.5, 0.7 * T))
        rate = (2 * mu * t_res + 1) * (
            abs(log_u_max) + math.log(2 + A * abs(x0 + mu * t_res * t_res)) + math.pi
        )
        self.T = mp.mpf(T)
        self.h0 = mp.mpf(min(0.25, 6.283 / (2.2 * rate)))
        return peak

    def _level_tables(self, lev: int):
        got = self._levels.get(lev)
        if got is not None:
            return got
        with mp.workprec(self.bits):
            h = self.h0 / 2**lev
            M = int(mp.ceil(self.T / h))
            ts = [m * h for m in range(-M, M + 1)]
            prev = self._levels.get(lev - 1) if lev > 0 else None
            gctx = self._gamma_ctx
            tables = {}
            for ia, a in enumerate(self.a_list):
                row = [None] * len(ts)
                if prev is not None:
                    pts, ptab = prev
                    offset = (len(ts) - 1) // 2
                    poff = (len(pts) - 1) // 2
                    for pm in range(-poff, poff + 1):
                        idx = 2 * pm + offset
                        if 0 <= idx < len(row):
                            row[idx] = ptab[ia][pm + poff]
                # conjugate symmetry: v(-t) = conj(v(t)) and the parameters
                # are real, so row(-t) = -conj(row(t))
                mid = (len(ts) - 1) // 2
                with mp.workprec(gctx.mantissa_bits + 32):
                    for i in range(mid, len(ts)):
                        if row[i] is None:
                            t = ts[i]
                            v = self.x0 + self.MU * t * t + 1j * t
                            lg = log_gamma(mp.mpf(1) / 2 - a - self.A * v, gctx) + log_gamma(
                                a - self.B * v, gctx
                            )
                            row[i] = mp.e**lg * (2 * self.MU * t + 1j)
                    for i in range(mid):
                        if row[i] is None:
                            row[i] = -mp.conj(row[2 * mid - i])
                tables[ia] = row
            self._levels[lev] = (ts, tables)
            return self._levels[lev]


    def eval(self, z_list, a_indices=None):
        """I^(2)_{theta,a}(z) for selected a's and every z.

        Returns dict a_index -> [values]; ``a_indices`` defaults to all.
        """
        ctx = self.ctx
        sel = list(range(len(self.a_list))) if a_indices is None else list(a_indices)
        with mp.workprec(self.bits):
            uscale = FoxIParams(self.theta, 0).u_scale
            logus = []
            for z in z_list:
                zz = mp.mpc(z)
                if zz == 0 or (zz.imag == 0 and zz.real < 0):
                    raise DomainError("fox_I kind 2: z on the cut (-inf, 0]")
                logus.append(mp.log(uscale * zz))
            prev_vals = None
            for lev in range(0, 6):
                ts, tables = self._level_tables(lev)
                h = self.h0 / 2**lev
                M = (len(ts) - 1) // 2
                with mp.workprec(self._gamma_ctx.mantissa_bits + 32):
                    upows = [_parabola_powers(logu, self.x0, self.MU, h, M) for logu in logus]
                vals = {}
                for ia in sel:
                    row = tables[ia]
                    out = []
                    for up in upows:
                        s = mp.fdot(row, up)
                        out.append(s * h / (2j * mp.pi))
                    vals[ia] = out
                if prev_vals is not None:
                    ok = all(
                        agree(vals[ia][iz], prev_vals[ia][iz], ctx.rel_tol)
                        for ia in sel
                        for iz in range(len(z_list))
                    )
                    if ok:
                        return vals
                prev_vals = vals
            raise ContourNonConvergence("Mellin-Barnes refinement failed to stabilize")


def _lgamma_abs(w: complex) -> float:
    """float log|Gamma(w)| via Stirling/reflection; contour-sizing probe only."""
    if w.real < 0.5:
        if abs(w.imag) > 25:
            log_sin = math.pi * abs(w.imag) - math.log(2)
        else:
            import cmath

            log_sin = math.log(max(abs(cmath.sin(math.pi * w)), 1e-300))
        return math.log(math.pi) - log_sin - _lgamma_abs(complex(1 - w.real, -w.imag))
    z = complex(w)
    shift = 0.0
    while abs(z) < 9:
        shift -= math.log(abs(z))
        z += 1
    arg_z = math.atan2(z.imag, z.real)
    return shift + (z.real - 0.5) * math.log(abs(z)) - z.imag * arg_z - z.real + 0.5 * math.log(
        2 * math.pi
    )


def _parabola_powers(logu, x0, mu, h, M):
    """u^{v(m h)} for m = -M..M with v = x0 + mu t^2 + i t, via recursions."""
    base0 = mp.e ** (x0 * logu)
    q = mp.e ** (mu * h * h * logu)  # u^{mu h^2}
    q2 = q * q
    b = mp.e ** (1j * h * logu)  # u^{i h}
    binv = 1 / b
    out = [None] * (2 * M + 1)
    out[M] = base0
    # positive m: u^{x0} q^{m^2} b^m
    pw = base0
    r = q  # q^{2m+1} at m=0 is q
    bb = mp.mpc(1)
    for m in range(1, M + 1):
        pw = pw * r
        r = r * q2
        bb = bb * b
        out[M + m] = pw * bb
    pw = base0
    r = q
    bb = mp.mpc(1)
    for m in range(1, M + 1):
        pw = pw * r
        r = r * q2
        bb = bb * binv
        out[M - m] = pw * bb
    return out


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def _check_off_cut(z) -> mp.mpc:
    zz = mp.mpc(z)
    if zz == 0 or (zz.imag == 0 and zz.real < 0):
        raise DomainError("argument on the cut (-inf, 0]")
    return zz


def fox_I(kind: int, p: FoxIParams, z, ctx: PrecisionContext = None) -> mp.mpc:
    """I^(kind)_{theta,a}(z) for kind in {1, 2, 3}."""
    ctx = ctx or default_context()
    t = mp.mpf(p.theta)
    a = mp.mpf(p.a)
    with ctx.workprec(16):
        zz = _check_off_cut(z)
        if kind == 1:
            u = p.u_scale * zz
            expo = (1 + 1 / t) * (mp.mpf(1) / 2 - a)
            par = WrightParams((mp.mpf(1) / 2 - a) / t + 1 - a, 1 / t)
            return (1 + 1 / t) * u**expo * mp.mpc(wright_bessel(par, u ** (1 + 1 / t), ctx))
        if kind == 3:
            u = p.u_scale * zz
            par = WrightParams(t * a + mp.mpf(1) / 2 + a, t)
            return (1 + t) * u ** ((t + 1) * a) * mp.mpc(wright_bessel(par, u ** (t + 1), ctx))
        if kind == 2:
            contour = Fox2Contour(t, [a], ctx, abs(zz))
            return contour.eval([zz])[0][0]
        raise ValueError("kind must be 1, 2 or 3")


def fox_I2_residue_series(p: FoxIParams, z, ctx: PrecisionContext = None) -> mp.mpc:
    """Residue double series for I^(2); cross-check only, non-resonant params.

    Raises DomainError when the two pole families come within 1e-3 of each
    other (log terms would appear and the plain series is invalid).
    """
    ctx = ctx or default_context()
    t = mp.mpf(p.theta)
    a = mp.mpf(p.a)
    with ctx.workprec(int(2.9 * abs(mp.mpc(z))) + 64):
        zz = _check_off_cut(z)
        u = p.u_scale * zz
        n_terms = 200
        pole1 = [(t + 1) / t * (mp.mpf(1) / 2 - a + k) for k in range(n_terms)]
        pole2 = [(t + 1) * (a + m) for m in range(n_terms)]
        sep = min(abs(v1 - v2) for v1 in pole1[:40] for v2 in pole2[:40])
        if sep < mp.mpf(1) / 1000:
            raise DomainError(f"resonant parameters (pole separation {mp.nstr(sep, 3)})")
        gc = PrecisionContext(mantissa_bits=max(64, mp.mp.prec - 16))
        s = mp.mpc(0)
        fact = mp.mpf(1)
        for k in range(n_terms):
            g = _gamma_value(a - (mp.mpf(1) / 2 - a + k) / t, gc)
            term = ((-1) ** k) / (fact * (t / (t + 1))) * g * u ** pole1[k]
            s += term
            if k > 3 and abs(term) < ctx.rel_tol * (abs(s) + 1) * mp.mpf(2) ** (-16):
                break
            fact *= k + 1
        fact = mp.mpf(1)
        for m in range(n_terms):
            g = _gamma_value(mp.mpf(1) / 2 - a - t * (a + m), gc)
            term = ((-1) ** m) * (t + 1) / fact * g * u ** pole2[m]
            s += term
            if m > 3 and abs(term) < ctx.rel_tol * (abs(s) + 1) * mp.mpf(2) ** (-16):
                break
            fact *= m + 1
        return +s


def _gamma_value(x, ctx):
    return mp.e ** log_gamma(x, ctx)


def fox_I_asymptotic(kind: int, p: FoxIParams, z, ctx: PrecisionContext = None) -> mp.mpc:
    """Leading exponential behaviour of I^(kind), valid in the stated sectors.

    Kind 2: sqrt(2 pi (th+1)) th^-a e^-z,            |arg z| < pi - eps
    Kind 1: pre * e^{+-(1/2-a) pi i} e^{-z e^{+-i pi/(th+1)}},  0 < +-arg z < th pi/(th+1)
    Kind 3: pre * e^{+-a pi i} e^{-z e^{+-i th pi/(th+1)}},     0 < +-arg z < pi/(th+1)
    with pre = sqrt(th+1)/(sqrt(2 pi) th^a).
    """
    ctx = ctx or default_context()
    t = mp.mpf(p.theta)
    a = mp.mpf(p.a)
    eps_sector = mp.mpf(1) / 1000
    with ctx.workprec(16):
        zz = _check_off_cut(z)
        ph = mp.arg(zz)
        if kind == 2:
            if abs(ph) >= mp.pi - eps_sector:
                raise SectorError("kind 2 asymptotics need |arg z| < pi")
            return mp.sqrt(2 * mp.pi * (t + 1)) * t ** (-a) * mp.e ** (-zz)
        pre = mp.sqrt(t + 1) / (mp.sqrt(2 * mp.pi) * t**a)
        if kind == 1:
            lim = mp.pi * t / (t + 1)
            rot = mp.e ** (1j * mp.pi / (t + 1))
            if eps_sector < ph < lim - eps_sector:
                return pre * mp.e ** ((mp.mpf(1) / 2 - a) * mp.pi * 1j) * mp.e ** (-zz * rot)
            if -lim + eps_sector < ph < -eps_sector:
                return pre * mp.e ** (-(mp.mpf(1) / 2 - a) * mp.pi * 1j) * mp.e ** (-zz / rot)
            raise SectorError("arg z outside kind 1 sectors")
        if kind == 3:
            lim = mp.pi / (t + 1)
            rot = mp.e ** (1j * mp.pi * t / (t + 1))
            if eps_sector < ph < lim - eps_sector:
                return pre * mp.e ** (a * mp.pi * 1j) * mp.e ** (-zz * rot)
            if -lim + eps_sector < ph < -eps_sector:
                return pre * mp.e ** (-a * mp.pi * 1j) * mp.e ** (-zz / rot)
            raise SectorError("arg z outside kind 3 sectors")
        raise ValueError("kind must be 1, 2 or 3")


def asymptotic_threshold(theta) -> mp.mpf:
    """|z| beyond which fox_I_asymptotic is the preferred evaluation."""
    return 30 * (mp.mpf(theta) + 1)
