# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled distribution kernels.

Twin of reactest._qkern_py with identical constants, formulas, and operation
order, so both backends return bit-identical doubles on the same platform
(the build disables fp contraction for this reason). Edit the two modules as
a pair.
"""

from libc.math cimport exp, fabs, log, log1p, sin, sqrt, isnan, INFINITY, NAN

cdef double _PI = 3.141592653589793
cdef double _HALF_LOG_TWO_PI = 0.9189385332046727
cdef double _EPS = 1e-16
cdef double _FPMIN = 1e-300
cdef int _MAX_ITER = 400
cdef double _NEWTON_TOL = 1e-13

cdef double[9] _LG
_LG[0] = 0.99999999999980993
_LG[1] = 676.5203681218851
_LG[2] = -1259.1392167224028
_LG[3] = 771.32342877765313
_LG[4] = -176.61502916214059
_LG[5] = 12.507343278686905
_LG[6] = -0.13857109526572012
_LG[7] = 9.9843695780195716e-6
_LG[8] = 1.5056327351493116e-7

cdef double[6] _ACK_A
_ACK_A[0] = -3.969683028665376e+01
_ACK_A[1] = 2.209460984245205e+02
_ACK_A[2] = -2.759285104469687e+02
_ACK_A[3] = 1.383577518672690e+02
_ACK_A[4] = -3.066479806614716e+01
_ACK_A[5] = 2.506628277459239e+00

cdef double[5] _ACK_B
_ACK_B[0] = -5.447609879822406e+01
_ACK_B[1] = 1.615858368580409e+02
_ACK_B[2] = -1.556989798598866e+02
_ACK_B[3] = 6.680131188771972e+01
_ACK_B[4] = -1.328068155288572e+01

cdef double[6] _ACK_C
_ACK_C[0] = -7.784894002430293e-03
_ACK_C[1] = -3.223964580411365e-01
_ACK_C[2] = -2.400758277161838e+00
_ACK_C[3] = -2.549732539343734e+00
_ACK_C[4] = 4.374664141464968e+00
_ACK_C[5] = 2.938163982698783e+00

cdef double[4] _ACK_D
_ACK_D[0] = 7.784695709041462e-03
_ACK_D[1] = 3.224671290700398e-01
_ACK_D[2] = 2.445134137142996e+00
_ACK_D[3] = 3.754408661907416e+00

cdef double _ACK_PLOW = 0.02425


cdef double _lgamma(double x) noexcept nogil:
    cdef double z, acc, t
    cdef int i
    if isnan(x) or x <= 0.0:
        return NAN
    if x < 0.5:
        return log(_PI / sin(_PI * x)) - _lgamma(1.0 - x)
    z = x - 1.0
    acc = _LG[0]
    for i in range(1, 9):
        acc += _LG[i] / (z + i)
    t = z + 7.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * log(t) - t + log(acc)


cdef double _gamma_series(double a, double x) noexcept nogil:
    cdef double ap = a
    cdef double summ = 1.0 / a
    cdef double delt = summ
    cdef int i
    for i in range(_MAX_ITER):
        ap += 1.0
        delt *= x / ap
        summ += delt
        if fabs(delt) < fabs(summ) * _EPS:
            break
    return summ * exp(-x + a * log(x) - _lgamma(a))


cdef double _gamma_contfrac(double a, double x) noexcept nogil:
    cdef double b = x + 1.0 - a
    cdef double c = 1.0 / _FPMIN
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double an, dele
    cdef int i
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        dele = d * c
        h *= dele
        if fabs(dele - 1.0) < _EPS:
            break
    return exp(-x + a * log(x) - _lgamma(a)) * h


cdef double _gammainc_p(double a, double x) noexcept nogil:
    if a <= 0.0 or x < 0.0 or isnan(a) or isnan(x):
        return NAN
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_contfrac(a, x)


cdef double _gammainc_q(double a, double x) noexcept nogil:
    if a <= 0.0 or x < 0.0 or isnan(a) or isnan(x):
        return NAN
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_contfrac(a, x)


cdef double _beta_contfrac(double a, double b, double x) noexcept nogil:
    cdef double qab = a + b
    cdef double qap = a + 1.0
    cdef double qam = a - 1.0
    cdef double c = 1.0
    cdef double d = 1.0 - qab * x / qap
    cdef double h, aa, dele
    cdef int m, m2
    if fabs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        dele = d * c
        h *= dele
        if fabs(dele - 1.0) < _EPS:
            break
    return h


cdef double _betainc(double a, double b, double x) noexcept nogil:
    cdef double ln_bt, bt
    if a <= 0.0 or b <= 0.0 or isnan(x):
        return NAN
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = _lgamma(a + b) - _lgamma(a) - _lgamma(b) + a * log(x) + b * log(1.0 - x)
    bt = exp(ln_bt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _beta_contfrac(a, b, x) / a
    return 1.0 - bt * _beta_contfrac(b, a, 1.0 - x) / b


cdef double _norm_cdf(double x) noexcept nogil:
    if isnan(x):
        return NAN
    if x >= 0.0:
        return 1.0 - 0.5 * _gammainc_q(0.5, 0.5 * x * x)
    return 0.5 * _gammainc_q(0.5, 0.5 * x * x)


cdef double _norm_ppf(double p) noexcept nogil:
    cdef double q, r, x, e, u
    cdef int i
    if isnan(p) or p <= 0.0 or p >= 1.0:
        if p == 0.0:
            return -INFINITY
        if p == 1.0:
            return INFINITY
        return NAN
    if p < _ACK_PLOW:
        q = sqrt(-2.0 * log(p))
        x = ((((((_ACK_C[0] * q + _ACK_C[1]) * q + _ACK_C[2]) * q + _ACK_C[3]) * q
               + _ACK_C[4]) * q + _ACK_C[5])
             / ((((_ACK_D[0] * q + _ACK_D[1]) * q + _ACK_D[2]) * q + _ACK_D[3]) * q + 1.0))
    elif p <= 1.0 - _ACK_PLOW:
        q = p - 0.5
        r = q * q
        x = ((((((_ACK_A[0] * r + _ACK_A[1]) * r + _ACK_A[2]) * r + _ACK_A[3]) * r
               + _ACK_A[4]) * r + _ACK_A[5]) * q
             / (((((_ACK_B[0] * r + _ACK_B[1]) * r + _ACK_B[2]) * r + _ACK_B[3]) * r
                 + _ACK_B[4]) * r + 1.0))
    else:
        q = sqrt(-2.0 * log(1.0 - p))
        x = -((((((_ACK_C[0] * q + _ACK_C[1]) * q + _ACK_C[2]) * q + _ACK_C[3]) * q
                + _ACK_C[4]) * q + _ACK_C[5])
              / ((((_ACK_D[0] * q + _ACK_D[1]) * q + _ACK_D[2]) * q + _ACK_D[3]) * q + 1.0))
    for i in range(2):
        e = _norm_cdf(x) - p
        u = e * 2.5066282746310002 * exp(0.5 * x * x)
        x = x - u / (1.0 + 0.5 * x * u)
    return x


cdef double _chi2_cdf(double x, double k) noexcept nogil:
    if k <= 0.0 or isnan(x):
        return NAN
    if x <= 0.0:
        return 0.0
    return _gammainc_p(0.5 * k, 0.5 * x)


cdef double _chi2_ppf(double p, double k) noexcept nogil:
    cdef double z, t, u, x, hi, lo, half_k, lg_half_k, log2, f, logpdf, pdf, xn
    cdef int i
    if k <= 0.0 or isnan(p) or p < 0.0 or p >= 1.0:
        return NAN
    if p == 0.0:
        return 0.0
    z = _norm_ppf(p)
    t = 2.0 / (9.0 * k)
    u = 1.0 - t + z * sqrt(t)
    x = k * u * u * u
    if x <= 0.0 or isnan(x):
        x = 0.5 * k
    hi = x
    for i in range(200):
        if _chi2_cdf(hi, k) >= p:
            break
        hi *= 2.0
    lo = 0.0
    half_k = 0.5 * k
    lg_half_k = _lgamma(half_k)
    log2 = 0.6931471805599453
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)
    for i in range(_MAX_ITER):
        f = _gammainc_p(half_k, 0.5 * x) - p
        if f > 0.0:
            hi = x
        else:
            lo = x
        if fabs(f) < _NEWTON_TOL:
            break
        logpdf = (half_k - 1.0) * log(x) - 0.5 * x - lg_half_k - half_k * log2
        pdf = exp(logpdf)
        if pdf > 0.0:
            xn = x - f / pdf
        else:
            xn = NAN
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if fabs(xn - x) <= 1e-14 * (fabs(x) + _FPMIN):
            x = xn
            break
        x = xn
    return x


cdef double _t_cdf(double x, double df) noexcept nogil:
    cdef double ib
    if df <= 0.0 or isnan(x):
        return NAN
    ib = _betainc(0.5 * df, 0.5, df / (df + x * x))
    if x >= 0.0:
        return 1.0 - 0.5 * ib
    return 0.5 * ib


cdef double _t_ppf(double p, double df) noexcept nogil:
    cdef double z, z2, z3, z5, x, hi, lo, lg_const, f, logpdf, pdf, xn
    cdef int i
    if df <= 0.0 or isnan(p) or p <= 0.0 or p >= 1.0:
        if p == 0.0:
            return -INFINITY
        if p == 1.0:
            return INFINITY
        return NAN
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -_t_ppf(1.0 - p, df)
    z = _norm_ppf(p)
    z2 = z * z
    z3 = z2 * z
    z5 = z3 * z2
    x = z + (z3 + z) / (4.0 * df) + (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * df * df)
    if x <= 0.0 or isnan(x):
        x = z if z > 0.0 else 1.0
    hi = x
    for i in range(200):
        if _t_cdf(hi, df) >= p:
            break
        hi = hi * 2.0 + 1.0
    lo = 0.0
    lg_const = _lgamma(0.5 * (df + 1.0)) - _lgamma(0.5 * df) - 0.5 * log(df * _PI)
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)
    for i in range(_MAX_ITER):
        f = _t_cdf(x, df) - p
        if f > 0.0:
            hi = x
        else:
            lo = x
        if fabs(f) < _NEWTON_TOL:
            break
        logpdf = lg_const - 0.5 * (df + 1.0) * log1p(x * x / df)
        pdf = exp(logpdf)
        if pdf > 0.0:
            xn = x - f / pdf
        else:
            xn = NAN
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if fabs(xn - x) <= 1e-14 * (fabs(x) + _FPMIN):
            x = xn
            break
        x = xn
    return x


def lgamma(double x):
    """Natural log of the gamma function, Lanczos g=7 approximation."""
    return _lgamma(x)


def gammainc_p(double a, double x):
    """Regularized lower incomplete gamma P(a, x)."""
    return _gammainc_p(a, x)


def gammainc_q(double a, double x):
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    return _gammainc_q(a, x)


def betainc(double a, double b, double x):
    """Regularized incomplete beta I_x(a, b)."""
    return _betainc(a, b, x)


def norm_cdf(double x):
    """Standard normal cdf."""
    return _norm_cdf(x)


def norm_sf(double x):
    """Standard normal survival function 1 - cdf(x)."""
    return _norm_cdf(-x)


def norm_ppf(double p):
    """Standard normal quantile."""
    return _norm_ppf(p)


def chi2_cdf(double x, double k):
    """Chi-square cdf with k degrees of freedom (k may be fractional)."""
    return _chi2_cdf(x, k)


def chi2_ppf(double p, double k):
    """Chi-square quantile by safeguarded Newton on the cdf."""
    return _chi2_ppf(p, k)


def t_cdf(double x, double df):
    """Student-t cdf via the incomplete beta function."""
    return _t_cdf(x, df)


def t_sf(double x, double df):
    """Student-t survival function 1 - cdf(x)."""
    return _t_cdf(-x, df)


def t_ppf(double p, double df):
    """Student-t quantile by safeguarded Newton on the cdf."""
    return _t_ppf(p, df)


def t_ppf_fill(double p, double[::1] dfs, double[::1] out):
    """Fill out[i] = t_ppf(p, dfs[i]) in a C loop."""
    cdef Py_ssize_t i, n = dfs.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _t_ppf(p, dfs[i])
