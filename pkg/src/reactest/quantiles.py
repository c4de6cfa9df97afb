"""Distribution cdf/quantile surface with backend selection.

At import time this module picks the compiled kernel (reactest._qkern_c) if
it was built, otherwise the pure-Python twin. Set REACTEST_PURE=1 in the
environment to force the pure backend. Both backends implement the same
algorithms with the same operation order, so results do not depend on which
one is active.
"""

import os

import numpy as np

if os.environ.get("REACTEST_PURE"):
    from . import _qkern_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _qkern_c as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _qkern_py as _impl

        BACKEND = "pure"

lgamma = _impl.lgamma
gammainc_p = _impl.gammainc_p
gammainc_q = _impl.gammainc_q
betainc = _impl.betainc
norm_cdf = _impl.norm_cdf
norm_sf = _impl.norm_sf
t_cdf = _impl.t_cdf
t_sf = _impl.t_sf
chi2_cdf = _impl.chi2_cdf


def norm_ppf(p: float) -> float:
    """Standard normal quantile for p in (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must lie in (0, 1), got {p}")
    return _impl.norm_ppf(p)


def t_ppf(p: float, df: float) -> float:
    """Student-t quantile for p in (0, 1) and df > 0 (fractional df allowed)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must lie in (0, 1), got {p}")
    if df <= 0.0:
        raise ValueError(f"degrees of freedom must be positive, got {df}")
    return _impl.t_ppf(p, df)


def chi2_ppf(p: float, k: float) -> float:
    """Chi-square quantile for p in (0, 1) and k > 0 degrees of freedom."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must lie in (0, 1), got {p}")
    if k <= 0.0:
        raise ValueError(f"degrees of freedom must be positive, got {k}")
    return _impl.chi2_ppf(p, k)


def t_ppf_array(p: float, dfs) -> np.ndarray:
    """Vector of Student-t quantiles at one probability, one df per entry.

    This is the hot path of the Monte Carlo harness (the Welch df changes on
    every replication); the compiled backend runs the loop in C.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must lie in (0, 1), got {p}")
    dfs = np.ascontiguousarray(dfs, dtype=np.float64)
    if dfs.ndim != 1:
        raise ValueError("dfs must be one-dimensional")
    if dfs.size and dfs.min() <= 0.0:
        raise ValueError("degrees of freedom must be positive")
    out = np.empty_like(dfs)
    _impl.t_ppf_fill(p, dfs, out)
    return out
