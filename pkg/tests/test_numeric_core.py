"""Core layer: log_gamma and the quadrature engines against exact oracles."""

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mblab.errors import EndpointSingularity, PoleError
from mblab.gammafn import gamma_fn, log_gamma, rgamma_or_zero
from mblab.precision import PrecisionContext
from mblab.quadrature import (
    gauss_jacobi01_nodes,
    gauss_legendre,
    quad_circle,
    quad_semiaxis,
)

from helpers import rel_err

CTX = PrecisionContext(mantissa_bits=192)


class TestLogGamma:
    def test_gamma_one_is_zero(self):
        assert abs(log_gamma(1, CTX)) <= CTX.rel_tol

    def test_gamma_half(self):
        with CTX.workprec():
            want = mp.log(mp.sqrt(mp.pi))
            assert rel_err(log_gamma(mp.mpf(1) / 2, CTX), want) <= CTX.rel_tol

    def test_recurrence_complex(self):
        v = mp.mpc("2.3", "1.7")
        with CTX.workprec():
            res = log_gamma(v + 1, CTX) - log_gamma(v, CTX) - mp.log(v)
        assert abs(res) <= CTX.rel_tol

    def test_reflection_mod_2pi(self):
        # residual of log G(v) + log G(1-v) - log(pi/sin(pi v)) is a multiple of 2 pi i
        with CTX.workprec():
            for v in (mp.mpc("0.3", "0.9"), mp.mpc("-1.2", "0.4"), mp.mpc("2.7", "-1.1")):
                res = log_gamma(v, CTX) + log_gamma(1 - v, CTX) - mp.log(mp.pi / mp.sin(mp.pi * v))
                k = mp.nint(res.imag / (2 * mp.pi))
                assert abs(res - 2j * mp.pi * k) <= 8 * CTX.rel_tol

    def test_pole_rejected(self):
        with pytest.raises(PoleError):
            log_gamma(-3, CTX)
        with pytest.raises(PoleError):
            log_gamma(0, CTX)

    def test_against_library_oracle(self):
        # mpmath.loggamma uses an independent algorithm
        for v in (mp.mpc("0.25", "0"), mp.mpc("5.5", "2.5"), mp.mpc("-0.7", "1.3"),
                  mp.mpc("12.0", "-9.0")):
            with mp.workprec(CTX.mantissa_bits + 64):
                want = mp.loggamma(v)
                got = log_gamma(v, CTX)
                # compare through exp: branch-insensitive
                assert rel_err(mp.e**got, mp.e**want) <= 8 * CTX.rel_tol

    def test_rgamma_zero_at_poles(self):
        assert rgamma_or_zero(0, CTX) == 0
        assert rgamma_or_zero(-4, CTX) == 0
        with CTX.workprec():
            assert rel_err(rgamma_or_zero(mp.mpf(1) / 2, CTX), 1 / mp.sqrt(mp.pi)) <= 8 * CTX.rel_tol
            # negative non-integer: 1/Gamma(-1/2) = -1/(2 sqrt(pi))
            assert (
                rel_err(rgamma_or_zero(mp.mpf(-1) / 2, CTX), -1 / (2 * mp.sqrt(mp.pi)))
                <= 8 * CTX.rel_tol
            )


class TestQuadCircle:
    def test_residue_of_one(self):
        val = quad_circle(lambda z: mp.mpc(1), 1.0, CTX)
        assert abs(val - 1) <= 4 * CTX.rel_tol

    def test_laurent_orthogonality(self):
        val = quad_circle(lambda z: z**3, 1.0, CTX)
        assert abs(val) <= 4 * CTX.rel_tol

    def test_pole_outside(self):
        # f(z) = 1/(z-2) on |z|=1: only the z=0 pole of f(z)/z contributes, residue -1/2
        val = quad_circle(lambda z: 1 / (z - 2), 1.0, CTX)
        assert abs(val + mp.mpf(1) / 2) <= 4 * CTX.rel_tol

    @settings(max_examples=12, deadline=None)
    @given(st.integers(min_value=-10, max_value=10))
    def test_laurent_exactness(self, k):
        val = quad_circle(lambda z: z**k, mp.mpf("1.3"), CTX)
        want = 1 if k == 0 else 0
        assert abs(val - want) <= 8 * CTX.rel_tol

    def test_breakpoint_panels(self):
        # piecewise-analytic f: different analytic pieces on two arcs
        def f(z):
            return z**2 if mp.arg(z) >= 0 else mp.mpc(1)

        # (1/2pi) [ int_0^pi R^2 e^{2it} dt + int_-pi^0 dt ] = (1/2pi)(0 + pi) = 1/2... corrected:
        # int_0^pi e^{2it} dt = 0, so value = 1/2
        val = quad_circle(f, 1.0, CTX, breakpoints=[0, mp.pi])
        assert abs(val - mp.mpf(1) / 2) <= 8 * CTX.rel_tol


class TestQuadSemiaxis:
    def test_gamma_two(self):
        val = quad_semiaxis(lambda x: x * mp.e**-x, CTX)
        assert rel_err(val, 1) <= 4 * CTX.rel_tol

    def test_gamma_three_halves(self):
        with CTX.workprec():
            val = quad_semiaxis(lambda x: mp.sqrt(x) * mp.e**-x, CTX, alpha=0.5)
            assert rel_err(val, mp.gamma(mp.mpf(3) / 2)) <= 4 * CTX.rel_tol

    def test_scaled_gamma(self):
        with CTX.workprec():
            val = quad_semiaxis(lambda x: mp.sqrt(x) * mp.e ** (-2 * x), CTX, alpha=0.5)
            want = mp.gamma(mp.mpf(3) / 2) * mp.mpf(2) ** (-mp.mpf(3) / 2)
            assert rel_err(val, want) <= 4 * CTX.rel_tol

    @settings(max_examples=10, deadline=None)
    @given(
        st.integers(min_value=0, max_value=40),
        st.integers(min_value=1, max_value=40),
        st.sampled_from(["-0.5", "0", "1.3"]),
    )
    def test_gamma_family(self, j, n, alpha_s):
        # int_0^inf x^{alpha+j} e^{-n x} dx = Gamma(alpha+j+1)/n^(alpha+j+1)
        with CTX.workprec():
            al = mp.mpf(alpha_s)
            val = quad_semiaxis(lambda x: x ** (al + j) * mp.e ** (-n * x), CTX, alpha=float(al))
            want = mp.gamma(al + j + 1) / mp.mpf(n) ** (al + j + 1)
            assert rel_err(val, want) <= 8 * CTX.rel_tol

    def test_endpoint_singularity_rejected(self):
        with pytest.raises(EndpointSingularity):
            quad_semiaxis(lambda x: 1 / x * mp.e**-x, CTX, alpha=-1.0)


class TestGaussRules:
    def test_legendre_polynomial_exactness(self):
        xs, ws = gauss_legendre(12, 192)
        with mp.workprec(256):
            for k in (0, 2, 7, 15, 22):
                val = mp.fsum(w * x**k for x, w in zip(xs, ws))
                want = mp.mpf(2) / (k + 1) if k % 2 == 0 else mp.mpf(0)
                assert abs(val - want) <= mp.mpf(2) ** -180

    def test_jacobi01_moments(self):
        # nodes for weight u^alpha on [0,1]: int u^alpha u^k du = 1/(alpha+k+1)
        for alpha_s in ("-0.4", "0", "1.3"):
            with CTX.workprec():
                alpha = mp.mpf(alpha_s)
                us, ws = gauss_jacobi01_nodes(16, alpha, CTX)
                for k in (0, 1, 5, 17, 31):
                    val = mp.fsum(w * u**k for u, w in zip(us, ws))
                    want = 1 / (alpha + k + 1)
                    assert rel_err(val, want) <= mp.mpf(2) ** -150
