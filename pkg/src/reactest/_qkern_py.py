"""Pure-Python distribution kernels.

Scalar log-gamma, regularized incomplete gamma/beta, and the normal,
chi-square, and Student-t cdf/quantile functions built on them. Quantiles
are obtained by safeguarded Newton iteration on the cdf (bisection bracket,
Newton step clipped into it), targeting well below 1e-10 absolute error in
probability.

`reactest._qkern_c` is a compiled twin of this module. The two must stay in
lockstep: same constants, same formulas, same operation order, so that both
backends produce bit-identical doubles on the same platform. Edit them as a
pair.
"""

from math import exp, inf, isnan, log, log1p, nan, sin, sqrt

_PI = 3.141592653589793
_HALF_LOG_TWO_PI = 0.9189385332046727
_EPS = 1e-16
_FPMIN = 1e-300
_MAX_ITER = 400
_NEWTON_TOL = 1e-13

_LG = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Acklam's rational approximation to the normal quantile (|rel err| < 1.15e-9),
# refined below by Halley steps to full double precision.
_ACK_A = (
    -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
    1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00,
)
_ACK_B = (
    -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
    6.680131188771972e+01, -1.328068155288572e+01,
)
_ACK_C = (
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
    -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00,
)
_ACK_D = (
    7.784695709041462e-03, 3.224671290700398e-01,
    2.445134137142996e+00, 3.754408661907416e+00,
)
_ACK_PLOW = 0.02425


def lgamma(x):
    """Natural log of the gamma function, Lanczos g=7 approximation."""
    if isnan(x) or x <= 0.0:
        return nan
    if x < 0.5:
        return log(_PI / sin(_PI * x)) - lgamma(1.0 - x)
    z = x - 1.0
    acc = _LG[0]
    for i in range(1, 9):
        acc += _LG[i] / (z + i)
    t = z + 7.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * log(t) - t + log(acc)


def _gamma_series(a, x):
    """Lower regularized incomplete gamma P(a, x) by series, for x < a + 1."""
    ap = a
    summ = 1.0 / a
    delt = summ
    for _ in range(_MAX_ITER):
        ap += 1.0
        delt *= x / ap
        summ += delt
        if abs(delt) < abs(summ) * _EPS:
            break
    return summ * exp(-x + a * log(x) - lgamma(a))


def _gamma_contfrac(a, x):
    """Upper regularized incomplete gamma Q(a, x) by continued fraction."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        dele = d * c
        h *= dele
        if abs(dele - 1.0) < _EPS:
            break
    return exp(-x + a * log(x) - lgamma(a)) * h


def gammainc_p(a, x):
    """Regularized lower incomplete gamma P(a, x)."""
    if a <= 0.0 or x < 0.0 or isnan(a) or isnan(x):
        return nan
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_contfrac(a, x)


def gammainc_q(a, x):
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if a <= 0.0 or x < 0.0 or isnan(a) or isnan(x):
        return nan
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_contfrac(a, x)


def _beta_contfrac(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        dele = d * c
        h *= dele
        if abs(dele - 1.0) < _EPS:
            break
    return h


def betainc(a, b, x):
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0.0 or b <= 0.0 or isnan(x):
        return nan
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = lgamma(a + b) - lgamma(a) - lgamma(b) + a * log(x) + b * log(1.0 - x)
    bt = exp(ln_bt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _beta_contfrac(a, b, x) / a
    return 1.0 - bt * _beta_contfrac(b, a, 1.0 - x) / b


def norm_cdf(x):
    """Standard normal cdf; tails go through Q(1/2, x*x/2) to avoid cancellation."""
    if isnan(x):
        return nan
    if x >= 0.0:
        return 1.0 - 0.5 * gammainc_q(0.5, 0.5 * x * x)
    return 0.5 * gammainc_q(0.5, 0.5 * x * x)


def norm_sf(x):
    """Standard normal survival function 1 - cdf(x)."""
    return norm_cdf(-x)


def norm_ppf(p):
    """Standard normal quantile: Acklam seed plus two Halley refinements."""
    if isnan(p) or p <= 0.0 or p >= 1.0:
        if p == 0.0:
            return -inf
        if p == 1.0:
            return inf
        return nan
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
    for _ in range(2):
        e = norm_cdf(x) - p
        u = e * 2.5066282746310002 * exp(0.5 * x * x)
        x = x - u / (1.0 + 0.5 * x * u)
    return x


def chi2_cdf(x, k):
    """Chi-square cdf with k degrees of freedom (k may be fractional)."""
    if k <= 0.0 or isnan(x):
        return nan
    if x <= 0.0:
        return 0.0
    return gammainc_p(0.5 * k, 0.5 * x)


def chi2_ppf(p, k):
    """Chi-square quantile by safeguarded Newton on the cdf."""
    if k <= 0.0 or isnan(p) or p < 0.0 or p >= 1.0:
        return nan
    if p == 0.0:
        return 0.0
    # Wilson-Hilferty starting point.
    z = norm_ppf(p)
    t = 2.0 / (9.0 * k)
    u = 1.0 - t + z * sqrt(t)
    x = k * u * u * u
    if x <= 0.0 or isnan(x):
        x = 0.5 * k
    hi = x
    for _ in range(200):
        if chi2_cdf(hi, k) >= p:
            break
        hi *= 2.0
    lo = 0.0
    half_k = 0.5 * k
    lg_half_k = lgamma(half_k)
    log2 = 0.6931471805599453
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)
    for _ in range(_MAX_ITER):
        f = gammainc_p(half_k, 0.5 * x) - p
        if f > 0.0:
            hi = x
        else:
            lo = x
        if abs(f) < _NEWTON_TOL:
            break
        logpdf = (half_k - 1.0) * log(x) - 0.5 * x - lg_half_k - half_k * log2
        pdf = exp(logpdf)
        if pdf > 0.0:
            xn = x - f / pdf
        else:
            xn = nan
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-14 * (abs(x) + _FPMIN):
            x = xn
            break
        x = xn
    return x


def t_cdf(x, df):
    """Student-t cdf via the incomplete beta function; df > 0, possibly fractional."""
    if df <= 0.0 or isnan(x):
        return nan
    ib = betainc(0.5 * df, 0.5, df / (df + x * x))
    if x >= 0.0:
        return 1.0 - 0.5 * ib
    return 0.5 * ib


def t_sf(x, df):
    """Student-t survival function 1 - cdf(x)."""
    return t_cdf(-x, df)


def t_ppf(p, df):
    """Student-t quantile by safeguarded Newton on the cdf."""
    if df <= 0.0 or isnan(p) or p <= 0.0 or p >= 1.0:
        if p == 0.0:
            return -inf
        if p == 1.0:
            return inf
        return nan
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -t_ppf(1.0 - p, df)
    # Cornish-Fisher expansion around the normal quantile as the seed.
    z = norm_ppf(p)
    z2 = z * z
    z3 = z2 * z
    z5 = z3 * z2
    x = z + (z3 + z) / (4.0 * df) + (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * df * df)
    if x <= 0.0 or isnan(x):
        x = z if z > 0.0 else 1.0
    hi = x
    for _ in range(200):
        if t_cdf(hi, df) >= p:
            break
        hi = hi * 2.0 + 1.0
    lo = 0.0
    lg_const = lgamma(0.5 * (df + 1.0)) - lgamma(0.5 * df) - 0.5 * log(df * _PI)
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)
    for _ in range(_MAX_ITER):
        f = t_cdf(x, df) - p
        if f > 0.0:
            hi = x
        else:
            lo = x
        if abs(f) < _NEWTON_TOL:
            break
        logpdf = lg_const - 0.5 * (df + 1.0) * log1p(x * x / df)
        pdf = exp(logpdf)
        if pdf > 0.0:
            xn = x - f / pdf
        else:
            xn = nan
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-14 * (abs(x) + _FPMIN):
            x = xn
            break
        x = xn
    return x


def t_ppf_fill(p, dfs, out):
    """Fill out[i] = t_ppf(p, dfs[i]); the compiled twin runs this loop in C."""
    for i in range(len(dfs)):
        out[i] = t_ppf(p, dfs[i])
