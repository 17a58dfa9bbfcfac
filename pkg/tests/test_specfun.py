"""Wright-Bessel and Fox-I functions: reduction identities, split relations,
asymptotics, conjugation symmetry, and the residue-series cross-check."""

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mblab.errors import DomainError, SectorError
from mblab.precision import PrecisionContext
from mblab.specfun import (
    Fox2Contour,
    FoxIParams,
    WrightParams,
    fox_I,
    fox_I2_residue_series,
    fox_I_asymptotic,
    wright_bessel,
)

from helpers import bessel_j_series, rel_err

CTX = PrecisionContext(mantissa_bits=192)


class TestWrightBessel:
    def test_at_zero(self):
        with CTX.workprec():
            for a1 in (mp.mpf(1), mp.mpf("0.7"), mp.mpf("2.5")):
                got = wright_bessel(WrightParams(a1, mp.mpf("0.5")), 0, CTX)
                assert rel_err(got, 1 / mp.gamma(a1)) <= 8 * CTX.rel_tol

    def test_classical_bessel_reduction_j0(self):
        # J_{1,1}(x) = J_0(2 sqrt(x)); at x=1 this is the classical J_0(2)
        with CTX.workprec():
            got = wright_bessel(WrightParams(1, 1), 1, CTX)
            want = bessel_j_series(mp.mpf(0), mp.mpf(2))
            assert rel_err(got, want) <= 10 * CTX.rel_tol
            assert mp.nstr(got, 11) == "0.22389077914"

    def test_classical_bessel_reduction_j1(self):
        # J_{2,1}(4) = 4^{-1/2} J_1(4)
        with CTX.workprec():
            got = wright_bessel(WrightParams(2, 1), 4, CTX)
            want = bessel_j_series(mp.mpf(1), mp.mpf(4)) / 2
            assert rel_err(got, want) <= 10 * CTX.rel_tol

    def test_large_argument_cancellation(self):
        # |x| up to 1e4: series survives by precision escalation
        with CTX.workprec():
            got = wright_bessel(WrightParams(1, 1), mp.mpf(10) ** 4, CTX)
            want = bessel_j_series(mp.mpf(0), mp.mpf(200), terms=500)
            assert rel_err(got, want) <= 10 * CTX.rel_tol

    @settings(max_examples=10, deadline=None)
    @given(st.floats(-3, 3), st.floats(-3, 3))
    def test_conjugation_symmetry(self, re, im):
        with CTX.workprec():
            p = WrightParams(mp.mpf("1.3"), mp.mpf("0.6"))
            z = mp.mpc(re, im)
            a = wright_bessel(p, mp.conj(z), CTX)
            b = mp.conj(wright_bessel(p, z, CTX))
            assert abs(a - b) <= 10 * CTX.rel_tol * (1 + abs(b))

    def test_pole_terms_dropped(self):
        # a1 = 0, a2 = 1: the j=0 term has 1/Gamma(0) = 0
        with CTX.workprec():
            got = wright_bessel(WrightParams(0, 1), mp.mpf("0.5"), CTX)
            # J_{0,1}(x) = sum_{j>=1} (-x)^j/(j! Gamma(j)) = -x * J_{2,1}'-ish; oracle by series
            want = mp.fsum(
                (-mp.mpf("0.5")) ** j / (mp.factorial(j) * mp.gamma(j)) for j in range(1, 40)
            )
            assert rel_err(got, want) <= 10 * CTX.rel_tol


class TestFoxI:
    def test_kind3_equals_kind1_dual(self):
        # I^(3)_{theta,a} = I^(1)_{1/theta, 1/2-a}
        with CTX.workprec():
            th = mp.sqrt(2)
            z = mp.mpf("1.3") * mp.e ** (mp.mpc(0, "0.2"))
            a = fox_I(3, FoxIParams(th, mp.mpf("0.1")), z, CTX)
            b = fox_I(1, FoxIParams(1 / th, mp.mpf("0.4")), z, CTX)
            assert rel_err(a, b) <= 10 * CTX.rel_tol

    def test_kind2_exponential_decay(self):
        # theta^a/sqrt(2 pi (theta+1)) I2(40) = e^-40 (1 + eps), |eps| <= 5/40
        with CTX.workprec():
            th, a = mp.mpf(2), mp.mpf("0.3")
            v = fox_I(2, FoxIParams(th, a), 40, CTX)
            ratio = th**a / mp.sqrt(2 * mp.pi * (th + 1)) * v / mp.e**-40
            assert abs(ratio - 1) <= mp.mpf(5) / 40

    def test_split_relation_first(self):
        # e^{-(a-1/2)pi i} I2(z w) + e^{(a-1/2)pi i} I2(z/w) = 2 pi I1(z), w = e^{i pi/(th+1)}
        with CTX.workprec():
            th, a, z = mp.mpf(3) / 2, mp.mpf("0.2"), mp.mpf("0.7")
            p = FoxIParams(th, a)
            w = mp.e ** (1j * mp.pi / (th + 1))
            lhs = mp.e ** (-(a - mp.mpf(1) / 2) * mp.pi * 1j) * fox_I(2, p, z * w, CTX) + mp.e ** (
                (a - mp.mpf(1) / 2) * mp.pi * 1j
            ) * fox_I(2, p, z / w, CTX)
            rhs = 2 * mp.pi * fox_I(1, p, z, CTX)
            assert rel_err(lhs, rhs) <= 10 * CTX.rel_tol

    def test_split_relation_second(self):
        # e^{a pi i} I2(z w) + e^{-a pi i} I2(z/w) = 2 pi I3(z), w = e^{i pi/(1+1/th)}
        with CTX.workprec():
            th, a, z = mp.mpf(3) / 2, mp.mpf("0.2"), mp.mpf("0.7")
            p = FoxIParams(th, a)
            w = mp.e ** (1j * mp.pi / (1 + 1 / th))
            lhs = mp.e ** (a * mp.pi * 1j) * fox_I(2, p, z * w, CTX) + mp.e ** (
                -a * mp.pi * 1j
            ) * fox_I(2, p, z / w, CTX)
            rhs = 2 * mp.pi * fox_I(3, p, z, CTX)
            assert rel_err(lhs, rhs) <= 10 * CTX.rel_tol

    def test_split_relations_parameter_grid(self):
        # radii x angles x (theta, a) grid, including irrational theta;
        # angles stay inside |arg z| < theta pi/(theta+1), where both
        # rotated arguments remain on the principal sheet
        with CTX.workprec():
            thetas = (mp.mpf(1) / 2, mp.sqrt(2), mp.mpf(2))
            avals = (mp.mpf("-0.15"), mp.mpf("0.1"), mp.mpf("0.35"))
            worst = mp.mpf(0)
            for th in thetas:
                rot = mp.e ** (1j * mp.pi / (th + 1))
                sector = mp.pi * th / (th + 1)
                for a in avals:
                    p = FoxIParams(th, a)
                    con = Fox2Contour(th, [a], CTX, 3.5)
                    pts = []
                    for r in (mp.mpf("0.3"), mp.mpf(1), mp.mpf(3)):
                        for k in range(8):
                            phi = (mp.mpf(k) - mp.mpf("3.5")) / mp.mpf("3.5") * sector * mp.mpf(
                                "0.93"
                            )
                            pts.append(r * mp.e ** (1j * phi))
                    vals = con.eval([z * rot for z in pts] + [z / rot for z in pts])[0]
                    for i, z in enumerate(pts):
                        lhs = (
                            mp.e ** (-(a - mp.mpf(1) / 2) * mp.pi * 1j) * vals[i]
                            + mp.e ** ((a - mp.mpf(1) / 2) * mp.pi * 1j) * vals[i + len(pts)]
                        )
                        rhs = 2 * mp.pi * fox_I(1, p, z, CTX)
                        err = abs(lhs - rhs) / max(abs(rhs), mp.mpf(1))
                        worst = max(worst, err)
            assert worst <= 10 * CTX.rel_tol

    def test_conjugation_symmetry_I2(self):
        with CTX.workprec():
            p = FoxIParams(mp.sqrt(2), mp.mpf("0.15"))
            z = mp.mpc("1.1", "0.8")
            a = fox_I(2, p, mp.conj(z), CTX)
            b = mp.conj(fox_I(2, p, z, CTX))
            assert rel_err(a, b) <= 10 * CTX.rel_tol

    def test_small_z_exponent_kind1(self):
        # |I1(z)| ~ C |z|^{(1+1/th)(1/2-a)}: log-log slope within 5%
        with CTX.workprec():
            th, a = mp.mpf(2), mp.mpf("0.1")
            p = FoxIParams(th, a)
            want = (1 + 1 / th) * (mp.mpf(1) / 2 - a)
            zs = [mp.mpf(10) ** e for e in (-4, -3, -2)]
            vals = [mp.log(abs(fox_I(1, p, z, CTX))) for z in zs]
            slope = (vals[-1] - vals[0]) / (mp.log(zs[-1]) - mp.log(zs[0]))
            assert abs(slope - want) <= mp.mpf("0.05") * abs(want)

    def test_residue_series_cross_check(self):
        with CTX.workprec():
            p = FoxIParams(mp.sqrt(2), mp.mpf("0.17"))
            z = mp.mpc("1.1", "0.4")
            a = fox_I(2, p, z, CTX)
            b = fox_I2_residue_series(p, z, CTX)
            assert rel_err(a, b) <= 50 * CTX.rel_tol

    def test_residue_series_rejects_resonance(self):
        # theta = 1, a = 1/4: pole families collide
        with pytest.raises(DomainError):
            fox_I2_residue_series(FoxIParams(1, mp.mpf("0.25")), mp.mpf("0.5"), CTX)

    def test_cut_rejected(self):
        with pytest.raises(DomainError):
            fox_I(2, FoxIParams(2, 0.1), -1.0, CTX)
        with pytest.raises(DomainError):
            fox_I(1, FoxIParams(2, 0.1), 0, CTX)


class TestFoxIAsymptotic:
    def test_kind2_at_100(self):
        # I2(100) ~ sqrt(2 pi * 2) e^-100 for theta=1, a=0
        with CTX.workprec():
            got = fox_I_asymptotic(2, FoxIParams(1, 0), 100, CTX)
            want = mp.sqrt(4 * mp.pi) * mp.e**-100
            assert rel_err(got, want) <= mp.mpf("1e-20")

    def test_kind1_upper_branch(self):
        with CTX.workprec():
            th = mp.mpf(2)
            p = FoxIParams(th, mp.mpf("0.05"))
            z = 80 * mp.e ** (mp.mpc(0, "0.5"))
            asy = fox_I_asymptotic(1, p, z, CTX)
            ref = fox_I(1, p, z, CTX)
            assert rel_err(asy, ref) <= mp.mpf(10) / 80

    def test_consistency_at_60(self):
        # |fox_I - fox_I_asymptotic| / |fox_I| <= 10/|z| at |z| = 60, 8 angles
        with CTX.workprec():
            th = mp.mpf(3) / 2
            p = FoxIParams(th, mp.mpf("0.2"))
            r = mp.mpf(60)
            con = Fox2Contour(th, [p.a], CTX, 61)
            for k in range(8):
                phi = -mp.pi * mp.mpf("0.8") + k * mp.pi * mp.mpf("0.225")
                z = r * mp.e ** (1j * phi)
                asy = fox_I_asymptotic(2, p, z, CTX)
                ref = con.eval([z])[0][0]
                assert rel_err(asy, ref) <= mp.mpf(10) / r
            for kind, lim in ((1, mp.pi * th / (th + 1)), (3, mp.pi / (th + 1))):
                for phi in (lim / 3, 2 * lim / 3, -lim / 3, -2 * lim / 3):
                    z = r * mp.e ** (1j * phi)
                    asy = fox_I_asymptotic(kind, p, z, CTX)
                    ref = fox_I(kind, p, z, CTX)
                    assert rel_err(asy, ref) <= mp.mpf(10) / r

    def test_sector_rejected(self):
        with pytest.raises(SectorError):
            fox_I_asymptotic(1, FoxIParams(2, 0.1), mp.mpf(50), CTX)  # arg z = 0 excluded
        with pytest.raises(SectorError):
            fox_I_asymptotic(3, FoxIParams(2, 0.1), 50 * mp.e ** (mp.mpc(0, 2)), CTX)
