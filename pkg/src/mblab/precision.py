"""Arbitrary-precision context and conversion helpers.

All high-precision arithmetic in mblab runs on mpmath mpf/mpc values under
an explicit PrecisionContext.  The context is immutable; routines enter the
working precision with ``ctx.workprec()`` and never mutate the global
mpmath state outside that window.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import mpmath as mp

from .errors import MBLabError

# extra bits carried by every routine on top of mantissa_bits, so that the
# final rounding to the context precision is clean
GUARD_BITS = 32

DEFAULT_MANTISSA_BITS = 192


@dataclass(frozen=True)
class PrecisionContext:
    """Numeric policy: precision, tolerances and quadrature sizes.

    rel_tol is the target relative error of every operation that takes the
    context; the default 2^(-mantissa_bits/2) leaves half the mantissa as
    working headroom for cancellation.
    """

    mantissa_bits: int = DEFAULT_MANTISSA_BITS
    rel_tol: mp.mpf = None
    max_series_terms: int = 6000
    quad_points_circle: int = 64
    quad_points_line: int = 600

    def __post_init__(self):
        if self.mantissa_bits < 64:
            raise MBLabError("mantissa_bits must be >= 64")
        if self.rel_tol is None:
            object.__setattr__(
                self, "rel_tol", mp.mpf(2) ** (-(self.mantissa_bits // 2))
            )
        else:
            object.__setattr__(self, "rel_tol", mp.mpf(self.rel_tol))
        if not (self.rel_tol > 0 and self.rel_tol >= mp.mpf(2) ** (-self.mantissa_bits)):
            raise MBLabError("rel_tol must satisfy 2^-mantissa_bits <= rel_tol")
        if self.max_series_terms < 16:
            raise MBLabError("max_series_terms too small")

    def workprec(self, extra_bits: int = 0):
        """mpmath context manager at mantissa_bits + guard (+ extra)."""
        return mp.workprec(self.mantissa_bits + GUARD_BITS + int(extra_bits))

    def escalated(self, factor: float = 2.0) -> "PrecisionContext":
        """A copy at ``factor`` times the mantissa, same relative targets."""
        return PrecisionContext(
            mantissa_bits=int(self.mantissa_bits * factor),
            rel_tol=self.rel_tol,
            max_series_terms=self.max_series_terms,
            quad_points_circle=self.quad_points_circle,
            quad_points_line=self.quad_points_line,
        )

    def with_bits(self, mantissa_bits: int) -> "PrecisionContext":
        return PrecisionContext(
            mantissa_bits=int(mantissa_bits),
            max_series_terms=self.max_series_terms,
            quad_points_circle=self.quad_points_circle,
            quad_points_line=self.quad_points_line,
        )

    @property
    def eps(self) -> mp.mpf:
        return mp.mpf(2) ** (-self.mantissa_bits)


def default_context() -> PrecisionContext:
    """Context from MB_PREC_BITS if set, else the library default."""
    bits = os.environ.get("MB_PREC_BITS")
    if bits:
        return PrecisionContext(mantissa_bits=int(bits))
    return PrecisionContext()


def to_mpf(x) -> mp.mpf:
    if isinstance(x, str):
        return mp.mpf(x)
    return mp.mpf(x)


def to_mpc(x) -> mp.mpc:
    return mp.mpc(x)


def ensure_finite(v):
    """Reject NaN/inf results; they are error states, never values."""
    if isinstance(v, mp.mpc):
        if not (mp.isfinite(v.real) and mp.isfinite(v.imag)):
            raise MBLabError(f"non-finite value produced: {v}")
    else:
        if not mp.isfinite(v):
            raise MBLabError(f"non-finite value produced: {v}")
    return v


def agree(a, b, tol, scale_floor=0) -> bool:
    """Agreement |a-b| <= tol * max(|a|, |b|, scale_floor).

    scale_floor should be the natural magnitude of the computation (e.g.
    the largest integrand sample), so that exact zeros converge too.
    """
    da = abs(a - b)
    scale = max(abs(a), abs(b), abs(scale_floor))
    if scale == 0:
        return da == 0
    return da <= tol * scale
