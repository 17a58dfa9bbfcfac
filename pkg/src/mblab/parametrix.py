"""Model parametrix families G/H (plain and tilde) and their biorthogonality.

The model functions live on a punctured disk cut along two rays
    plain-G / tilde-H rays:  arg z = +-(pi + theta*gamma)/(theta+1)
    plain-H / tilde-G rays:  arg z = +-(pi - theta*gamma)/(theta+1)
and are assembled piecewise from the Fox-I functions: one sector carries
the I^(2) integral, the opposite one a Wright-Bessel combination (I^(1) or
I^(3) at rotated arguments).  Indexed members attach a z^ell factor whose
fractional-part parameter comes from the index arithmetic below.

The contour inner product
    <f, H^(ell)> = (1/2 pi i) oint_{|z|=R'} H^(ell)(z) f(z) dz/z
is radius- and gamma-independent and pairs the families to delta_{jk};
``gram_matrix`` evaluates whole (j, k) blocks with shared Mellin-Barnes
tables, which is what makes the parameter-grid verification affordable.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .errors import RayError
from .precision import PrecisionContext, agree, default_context
from .quadrature import gauss_legendre
from .specfun import Fox2Contour, FoxIParams, fox_I

# ---------------------------------------------------------------------------
# index arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParametrixIndex:
    """Integer offsets and fractional parts attached to the index ell."""

    ell: int
    m_ell: int
    n_ell: int
    m_tilde_ell: int
    n_tilde_ell: int
    R_lambda: mp.mpf
    R_beta: mp.mpf
    R_tilde_lambda: mp.mpf
    R_tilde_beta: mp.mpf


def _shift_into(x, lo, hi):
    """Unique x + m in (lo, hi] with integer m (requires hi - lo = 1)."""
    m = mp.floor(hi - x)
    # guard against a value representable just below an exact integer
    if abs(hi - x - (m + 1)) < mp.mpf(2) ** (-mp.mp.prec + 8):
        m += 1
    val = x + m
    return val, int(m)


def index_for(ell: int, theta, ctx: PrecisionContext = None) -> ParametrixIndex:
    """Fractional parts R^lambda, R^beta (plain and tilde) at index ell."""
    ctx = ctx or default_context()
    with ctx.workprec():
        t = mp.mpf(theta)
        step = t / (t + 1)
        lo, hi = -t / (t + 1), 1 / (t + 1)
        r_lam, m_ell = _shift_into(step * ell, mp.mpf(0), mp.mpf(1))
        r_beta, neg_n = _shift_into(-step * ell, lo, hi)
        r_tlam, m_t = _shift_into(1 / (t + 1) + step * ell, mp.mpf(0), mp.mpf(1))
        r_tbeta, neg_nt = _shift_into(1 / (t + 1) - step * ell, lo, hi)
        return ParametrixIndex(
            ell=ell,
            m_ell=m_ell,
            n_ell=-neg_n,
            m_tilde_ell=m_t,
            n_tilde_ell=-neg_nt,
            R_lambda=r_lam,
            R_beta=r_beta,
            R_tilde_lambda=r_tlam,
            R_tilde_beta=r_tbeta,
        )


def shift_T(lam, theta, alpha):
    """T(lambda) = -(alpha + 3/2)/(theta + 1) + lambda."""
    t = mp.mpf(theta)
    return -(mp.mpf(alpha) + mp.mpf(3) / 2) / (t + 1) + mp.mpf(lam)


# ---------------------------------------------------------------------------
# model functions
# ---------------------------------------------------------------------------


def _ray_angle_G(theta, gamma):
    t = mp.mpf(theta)
    return (mp.pi + t * mp.mpf(gamma)) / (t + 1)


def _ray_angle_H(theta, gamma):
    t = mp.mpf(theta)
    return (mp.pi - t * mp.mpf(gamma)) / (t + 1)


class _GModel:
    """G^model(.; lambda): e^{-z}-normalized member built from I2 / I1."""

    i2_side = "right"

    def __init__(self, lam, theta, alpha, ctx):
        self.theta = mp.mpf(theta)
        self.alpha = mp.mpf(alpha)
        self.lam = mp.mpf(lam)
        self.ctx = ctx
        self.T = shift_T(lam, theta, alpha)
        t = self.theta
        self.pref = mp.sqrt(2 * mp.pi) * t**self.T / mp.sqrt(t + 1)
        self.a_i2 = self.T

    def ray_angle(self, gamma):
        return _ray_angle_G(self.theta, gamma)

    def i2_value(self, i2_of_z):
        # caller supplies I2_{theta, T}(z)
        return self.pref / (2 * mp.pi) * i2_of_z

    def i2_argument(self, z):
        return z

    def wright_value(self, z):
        # opposite (left) sector: two I1 branches meeting on the negative axis
        t, T = self.theta, self.T
        mz = -mp.mpc(z)
        rot = mp.e ** (1j * mp.pi * t / (t + 1))
        if mp.arg(mz) <= 0:
            return self.pref * (-1j) * mp.e ** (T * mp.pi * 1j) * fox_I(
                1, FoxIParams(t, T), mz * rot, self.ctx
            )
        return self.pref * 1j * mp.e ** (-T * mp.pi * 1j) * fox_I(
            1, FoxIParams(t, T), mz / rot, self.ctx
        )


class _HModel:
    """H^model(.; beta): e^{+z}-normalized member built from I2 / I3."""

    i2_side = "left"

    def __init__(self, beta, theta, alpha, ctx):
        self.theta = mp.mpf(theta)
        self.alpha = mp.mpf(alpha)
        self.beta = mp.mpf(beta)
        self.ctx = ctx
        self.T = shift_T(beta, theta, alpha)
        t = self.theta
        self.pref = mp.sqrt(2 * mp.pi) * t ** (-self.T) / mp.sqrt(t + 1)
        self.a_i2 = -self.T

    def ray_angle(self, gamma):
        return _ray_angle_H(self.theta, gamma)

    def i2_value(self, i2_of_minus_z):
        return self.pref / (2 * mp.pi) * i2_of_minus_z

    def i2_argument(self, z):
        return -mp.mpc(z)

    def wright_value(self, z):
        # opposite (right) sector: two I3 branches meeting on the positive axis
        t, T = self.theta, self.T
        zz = mp.mpc(z)
        rot = mp.e ** (1j * mp.pi / (t + 1))
        if mp.arg(zz) >= 0:
            return self.pref * mp.e ** (-T * mp.pi * 1j) * fox_I(
                3, FoxIParams(t, -T), zz / rot, self.ctx
            )
        return self.pref * mp.e ** (T * mp.pi * 1j) * fox_I(
            3, FoxIParams(t, -T), zz * rot, self.ctx
        )


def _model_eval(model, z, gamma, sector):
    zz = mp.mpc(z)
    phi = model.ray_angle(gamma)
    ph = abs(mp.arg(zz))
    tol = mp.mpf(2) ** (-mp.mp.prec // 2)
    if sector == "auto":
        if abs(ph - phi) <= tol:
            raise RayError(
                "evaluation on a discontinuity ray needs sector='left'/'right'"
            )
        sector = "right" if ph < phi else "left"
    inner = sector == model.i2_side
    if inner:
        p = FoxIParams(model.theta, model.a_i2)
        return model.i2_value(fox_I(2, p, model.i2_argument(zz), model.ctx))
    return model.wright_value(zz)


def G_model(z, lam, theta, alpha, ctx: PrecisionContext = None, gamma=0, sector="auto"):
    """G^model(z; lambda); ``sector`` disambiguates values on the rays."""
    ctx = ctx or default_context()
    with ctx.workprec():
        return _model_eval(_GModel(lam, theta, alpha, ctx), z, gamma, sector)


def H_model(z, beta, theta, alpha, ctx: PrecisionContext = None, gamma=0, sector="auto"):
    """H^model(z; beta); ``sector`` disambiguates values on the rays."""
    ctx = ctx or default_context()
    with ctx.workprec():
        return _model_eval(_HModel(beta, theta, alpha, ctx), z, gamma, sector)


def _indexed_model(kind: str, ell: int, theta, alpha, ctx):
    idx = index_for(ell, theta, ctx)
    if kind == "G":
        return _GModel(idx.R_lambda, theta, alpha, ctx)
    if kind == "H":
        return _HModel(idx.R_beta, theta, alpha, ctx)
    if kind == "G~":
        return _HModel(idx.R_tilde_beta, theta, alpha, ctx)
    if kind == "H~":
        return _GModel(idx.R_tilde_lambda, theta, alpha, ctx)
    raise ValueError(kind)


def _indexed_eval(kind, ell, z, theta, alpha, ctx, gamma, sector):
    with ctx.workprec():
        model = _indexed_model(kind, ell, theta, alpha, ctx)
        return _model_eval(model, z, gamma, sector) * mp.mpc(z) ** ell


def G_ell(ell, z, theta, alpha, ctx=None, gamma=0, sector="auto"):
    """G^{(ell)}(z) = G^model(z; R^lambda(ell)) z^ell."""
    return _indexed_eval("G", ell, z, theta, alpha, ctx or default_context(), gamma, sector)


def H_ell(ell, z, theta, alpha, ctx=None, gamma=0, sector="auto"):
    """H^{(ell)}(z) = H^model(z; R^beta(ell)) z^ell."""
    return _indexed_eval("H", ell, z, theta, alpha, ctx or default_context(), gamma, sector)


def G_tilde_ell(ell, z, theta, alpha, ctx=None, gamma=0, sector="auto"):
    """tilde-G^{(ell)}(z) = H^model(z; tilde-R^beta(ell)) z^ell."""
    return _indexed_eval("G~", ell, z, theta, alpha, ctx or default_context(), gamma, sector)


def H_tilde_ell(ell, z, theta, alpha, ctx=None, gamma=0, sector="auto"):
    """tilde-H^{(ell)}(z) = G^model(z; tilde-R^lambda(ell)) z^ell."""
    return _indexed_eval("H~", ell, z, theta, alpha, ctx or default_context(), gamma, sector)


def small_z_leading_exponent(kind: str, ell: int, theta, alpha, sector: str, ctx=None):
    """Leading power of the indexed model member as z -> 0, per sector.

    Exposed for the series-index verification: the exponents encode the
    starting indices 1 - m_ell (G) and ell + n_ell (H) of the expansions.
    """
    ctx = ctx or default_context()
    with ctx.workprec():
        t, al = mp.mpf(theta), mp.mpf(alpha)
        idx = index_for(ell, theta, ctx)
        if kind == "G":
            e_frac = -mp.mpf(1) / 2 + (al + 1) / t + (t + 1) / t * (1 - idx.m_ell)
            e_int = t - al - mp.mpf(1) / 2 + (t + 1) * (ell + idx.m_ell - 1)
            return e_frac if sector == "left" else min(e_frac, e_int)
        if kind == "H":
            e_int = al + mp.mpf(3) / 2 + (t + 1) * (ell + idx.n_ell)
            e_frac = mp.mpf(1) / 2 - (al + 1) / t - (t + 1) / t * idx.n_ell
            return e_int if sector == "right" else min(e_frac, e_int)
        raise ValueError(kind)


# ---------------------------------------------------------------------------
# inner products
# ---------------------------------------------------------------------------


def _breakpoints(theta, gamma):
    """Jump angles of the integrand: both families' rays, deduplicated."""
    aG = _ray_angle_G(theta, gamma)
    aH = _ray_angle_H(theta, gamma)
    angles = {aG, -aG, aH, -aH}
    return sorted(angles)


def inner_product(f, ell, radius, family="plain", *, theta, alpha,
                  ctx: PrecisionContext = None, gamma=0):
    """<f, H^(ell)> (plain) or <f, tilde-H^(ell)> (tilde) at circle radius R'.

    ``f`` is any circle-evaluable callable; the integration contour is cut
    at both families' rays so each arc sees analytic factors only.  The
    value is independent of the radius and of gamma.
    """
    ctx = ctx or default_context()
    kind = "H" if family == "plain" else "H~"
    with ctx.workprec():
        model = _indexed_model(kind, ell, theta, alpha, ctx)

        def h_side(z):
            return _model_eval(model, z, gamma, "auto") * mp.mpc(z) ** ell

        from .quadrature import quad_circle

        return quad_circle(
            lambda z: h_side(z) * f(z), radius, ctx, breakpoints=_breakpoints(theta, gamma)
        )


def gram_matrices(j_list, k_list, radii, family="plain", *, theta, alpha,
                  ctx: PrecisionContext = None, gamma=0, rtol=None):
    """<G^(j), H^(-k)> (plain) or tilde analogue, for every radius in ``radii``.

    One shared Mellin-Barnes contour serves all (j, k, radius) entries, and
    a-values that coincide (they repeat for rational theta) are deduplicated.
    Panel node counts double until every entry stabilizes to ``rtol``
    (default ctx.rel_tol); precision is escalated when the radius-driven
    dynamic range (R')^(j-k) threatens the target.
    """
    ctx = ctx or default_context()
    rtol = mp.mpf(rtol) if rtol is not None else ctx.rel_tol
    span = max(abs(j - (-k)) for j in j_list for k in k_list)
    if any(span * abs(mp.log(mp.mpf(r), 2)) > ctx.mantissa_bits / 4 for r in radii):
        ctx = ctx.escalated(2.0)
    with ctx.workprec():
        t = mp.mpf(theta)
        gk, hk = ("G", "H") if family == "plain" else ("G~", "H~")
        g_models = [_indexed_model(gk, j, theta, alpha, ctx) for j in j_list]
        h_models = [_indexed_model(hk, -k, theta, alpha, ctx) for k in k_list]
        all_models = g_models + h_models
        # dedupe a-values: for rational theta the fractional parts repeat
        slot_of, uniq = [], []
        for m in all_models:
            for si, av in enumerate(uniq):
                if av == m.a_i2:
                    slot_of.append(si)
                    break
            else:
                slot_of.append(len(uniq))
                uniq.append(m.a_i2)
        contour = Fox2Contour(t, uniq, ctx, float(max(radii)))
        angles = _breakpoints(theta, gamma)

        def group_values(models, offset, midp, zs):
            """Per-model node values on one arc: batched I2 or Wright side."""
            m0 = models[0]
            on_i2_side = (
                abs(midp) < m0.ray_angle(gamma)
                if m0.i2_side == "right"
                else abs(midp) > m0.ray_angle(gamma)
            )
            if on_i2_side:
                args = [m0.i2_argument(z) for z in zs]
                slots = sorted({slot_of[offset + im] for im in range(len(models))})
                got = contour.eval(args, a_indices=slots)
                return [
                    [m.i2_value(v) for v in got[slot_of[offset + im]]]
                    for im, m in enumerate(models)
                ]
            # models sharing a_i2 share T, hence identical wright values
            cache = {}
            out = []
            for m in models:
                if m.a_i2 not in cache:
                    cache[m.a_i2] = [m.wright_value(z) for z in zs]
                out.append(cache[m.a_i2])
            return out

        def sweep(n_nodes, R):
            total = {(ji, ki): mp.mpc(0) for ji in range(len(j_list)) for ki in range(len(k_list))}
            xs, ws = gauss_legendre(n_nodes, mp.mp.prec)
            for i, a1 in enumerate(angles):
                a2 = angles[(i + 1) % len(angles)] + (2 * mp.pi if i + 1 == len(angles) else 0)
                if a2 - a1 < mp.mpf(2) ** (-ctx.mantissa_bits // 2):
                    continue
                halfw = (a2 - a1) / 2
                midp = (a2 + a1) / 2
                if midp > mp.pi:
                    midp -= 2 * mp.pi
                zs = [R * mp.e ** (1j * (midp + halfw * x)) for x in xs]
                gvals = group_values(g_models, 0, midp, zs)
                hvals = group_values(h_models, len(g_models), midp, zs)
                zpows = {}
                for d in {j - k for j in j_list for k in k_list}:
                    zpows[d] = [z**d for z in zs]
                for ji, j in enumerate(j_list):
                    for ki, k in enumerate(k_list):
                        zp = zpows[j - k]
                        s = mp.mpc(0)
                        for zi in range(len(zs)):
                            s += ws[zi] * gvals[ji][zi] * hvals[ki][zi] * zp[zi]
                        total[(ji, ki)] += s * halfw / (2 * mp.pi)
            return total

        out = {}
        for radius in radii:
            R = mp.mpf(radius)
            n = max(16, ctx.quad_points_circle // 4)
            prev = None
            for _ in range(6):
                cur = sweep(n, R)
                if prev is not None and all(
                    agree(cur[key], prev[key], rtol, scale_floor=1) for key in cur
                ):
                    out[radius] = {
                        (j_list[ji], k_list[ki]): +cur[(ji, ki)]
                        for ji in range(len(j_list))
                        for ki in range(len(k_list))
                    }
                    break
                prev = cur
                n *= 2
            else:
                from .errors import NonConvergence

                raise NonConvergence("gram_matrices panels failed to stabilize")
        return out


def gram_matrix(j_list, k_list, radius, family="plain", *, theta, alpha,
                ctx: PrecisionContext = None, gamma=0, rtol=None):
    """Single-radius convenience wrapper around :func:`gram_matrices`."""
    return gram_matrices(
        j_list, k_list, [radius], family, theta=theta, alpha=alpha, ctx=ctx,
        gamma=gamma, rtol=rtol,
    )[radius]