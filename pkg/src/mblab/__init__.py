"""mblab: a high-precision laboratory for hard-edge Muttalib-Borodin ensembles.

Layers, bottom up:

* precision / gammafn / quadrature -- arbitrary-precision arithmetic
  contract, complex log-gamma, and the quadrature engines.
* specfun     -- Wright-Bessel series and the Fox-H-type I-functions.
* parametrix  -- the model function families G/H (plain and tilde), index
  arithmetic, and the contour inner product with its delta_jk identities.
* equilibrium -- constrained log-energy minimization, edge constants, and
  the g-functions.
* biortho     -- biorthogonal polynomial systems from mixed moments, the
  finite-n kernel, and Cauchy-transform residual checks.
* hardedge    -- the limiting kernel and the convergence experiments that
  probe the scaling limits at desk scale.
* cli         -- command-line orchestration with caching and CSV/JSON output.
"""

from .precision import PrecisionContext, default_context

__all__ = ["PrecisionContext", "default_context"]

__version__ = "0.1.0"
