"""Scalar special functions used by the severity catalog and the approximators.

Self-contained double-precision kernels: log-gamma (Lanczos), regularized
incomplete gamma (power series / modified-Lentz continued fraction), regularized
incomplete beta (continued fraction with the usual symmetry switch), the error
function pair, and the standard normal quantile (Wichura's rational
approximations). Inverses are safeguarded Newton iterations on the forward
kernels. All functions are pure and thread-safe.
"""

from __future__ import annotations

import math

from .errors import ConvergenceError, DomainError

_EPS = 2.220446049250313e-16
_TINY = 1e-300
_MAX_ITER = 800

# Lanczos g=7, n=9 coefficients (Godfrey / Numerical Recipes form).
_LANCZOS_G = 7.0
_LANCZOS = (
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

_LN_SQRT_2PI = 0.9189385332046727417803297364056176398614    # ln sqrt(2*pi)
_SQRT2 = math.sqrt(2.0)


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"ln_gamma requires x > 0 and finite, got {x}")
    if x < 0.5:
        # reflection keeps the Lanczos argument >= 0.5
        return math.log(math.pi / math.sin(math.pi * x)) - ln_gamma(1.0 - x)
    z = x - 1.0
    series = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        series += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _LN_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(series)


def gamma(x: float) -> float:
    """Gamma function for x > 0 (via ln_gamma)."""
    return math.exp(ln_gamma(x))


def gamma_signed(x: float) -> float:
    """Gamma function on the real line excluding non-positive integers.

    Negative arguments go through the reflection formula; this is the entry
    point for factors like Gamma(1 - 2/xi) with 1 < xi < 2.
    """
    if x > 0.0:
        return gamma(x)
    if x == math.floor(x):
        raise DomainError(f"gamma pole at non-positive integer {x}")
    # Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
    return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))


# ---------------------------------------------------------------------------
# regularized incomplete gamma
# ---------------------------------------------------------------------------

def _gamma_p_series(a: float, x: float) -> float:
    """Lower regularized incomplete gamma by power series, for x <= a + 1."""
    if x == 0.0:
        return 0.0
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + a * math.log(x) - ln_gamma(a))
    raise ConvergenceError(f"incomplete gamma series stalled at a={a}, x={x}")


def _gamma_q_contfrac(a: float, x: float) -> float:
    """Upper regularized incomplete gamma by modified-Lentz continued fraction,
    for x > a + 1."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * math.exp(-x + a * math.log(x) - ln_gamma(a))
    raise ConvergenceError(f"incomplete gamma fraction stalled at a={a}, x={x}")


def reg_inc_gamma_lower(a: float, x: float) -> float:
    """P(a, x), the lower regularized incomplete gamma function."""
    if not a > 0.0:
        raise DomainError(f"reg_inc_gamma_lower requires a > 0, got {a}")
    if x < 0.0:
        raise DomainError(f"reg_inc_gamma_lower requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x <= a + 1.0:
        return _gamma_p_series(a, x)
    return 1.0 - _gamma_q_contfrac(a, x)


def reg_inc_gamma_upper(a: float, x: float) -> float:
    """Q(a, x) = 1 - P(a, x), the upper regularized incomplete gamma function.

    Continued fraction for x > a + 1, complemented power series otherwise,
    so neither tail is computed by cancellation.
    """
    if not a > 0.0:
        raise DomainError(f"reg_inc_gamma_upper requires a > 0, got {a}")
    if x < 0.0:
        raise DomainError(f"reg_inc_gamma_upper requires x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x > a + 1.0:
        return _gamma_q_contfrac(a, x)
    return 1.0 - _gamma_p_series(a, x)


def _gamma_pdf(a: float, x: float) -> float:
    """Density x^(a-1) e^-x / Gamma(a); 0 underflow-safe."""
    if x <= 0.0:
        return 0.0
    lg = (a - 1.0) * math.log(x) - x - ln_gamma(a)
    return math.exp(lg) if lg > -745.0 else 0.0


def inv_reg_inc_gamma(a: float, p: float, upper: bool = False) -> float:
    """Solve P(a, x) = p (or Q(a, x) = p when upper=True) for x >= 0.

    Safeguarded Newton on whichever orientation keeps the target below 1/2,
    with a Wilson-Hilferty starting point. Accuracy ~1e-13 relative.
    """
    if not a > 0.0:
        raise DomainError(f"inv_reg_inc_gamma requires a > 0, got {a}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"inv_reg_inc_gamma requires target in [0,1], got {p}")
    # normalize to the lower orientation for bookkeeping
    pl = 1.0 - p if upper else p
    if pl == 0.0:
        return 0.0
    if pl == 1.0:
        return math.inf
    # work with whichever tail is small
    use_upper = pl > 0.5
    target = (1.0 - pl) if use_upper else pl  # exact: pl in [0.5, 1]
    if upper and use_upper:
        target = p  # caller-provided upper target, uncontaminated
    if not upper and not use_upper:
        target = p

    def f(x: float) -> float:
        return (reg_inc_gamma_upper(a, x) if use_upper else reg_inc_gamma_lower(a, x)) - target

    # regime-aware starting point
    x = -1.0
    if a > 1.0 and 1e-3 < target:
        # Wilson-Hilferty normal approximation
        z = normal_quantile_from_sf(target) if use_upper else normal_quantile(target)
        w = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * math.sqrt(a))
        x = a * w * w * w
    if x <= 0.0:
        if use_upper:
            # right-tail asymptotic Q ~ x^(a-1) e^-x / Gamma(a)
            x = max(-math.log(target) - ln_gamma(a), 1e-8)
            x = max(-math.log(target) - ln_gamma(a) + (a - 1.0) * math.log(max(x, 2.0)), 1e-8)
        else:
            # left-tail leading series term P ~ x^a / Gamma(a+1)
            x = math.exp((math.log(target) + ln_gamma(a + 1.0)) / a)
    lo, hi = 0.0, math.inf
    for _ in range(300):
        fx = f(x)
        if fx == 0.0:
            return x
        # maintain a bracket: lower orientation is increasing, upper decreasing
        rising = not use_upper
        if (fx < 0.0) == rising:
            lo = max(lo, x)
        else:
            hi = min(hi, x)
        d = _gamma_pdf(a, x)
        if not use_upper:
            step = -fx / d if d > 0.0 else math.nan
        else:
            step = fx / d if d > 0.0 else math.nan
        xn = x + step if math.isfinite(step) else math.nan
        if not (math.isfinite(xn) and lo < xn < hi):
            # geometric bisection copes with brackets spanning many decades
            if math.isfinite(hi):
                xn = math.sqrt(lo * hi) if lo > 0.0 else 0.5 * (lo + hi)
            else:
                xn = x * 2.0
        if abs(xn - x) <= 1e-14 * max(abs(xn), _TINY):
            return xn
        x = xn
    raise ConvergenceError(f"inv_reg_inc_gamma stalled at a={a}, p={p}, upper={upper}")


# ---------------------------------------------------------------------------
# regularized incomplete beta
# ---------------------------------------------------------------------------

def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ConvergenceError(f"incomplete beta fraction stalled at a={a}, b={b}, x={x}")


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b), the regularized incomplete beta function."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"reg_inc_beta requires a, b > 0, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"reg_inc_beta requires 0 <= x <= 1, got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    lfront = (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
              + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(lfront) if lfront > -745.0 else 0.0
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _beta_pdf(x: float, a: float, b: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    lg = ((a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x)
          + ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b))
    return math.exp(lg) if lg > -745.0 else 0.0


def inv_reg_inc_beta(p: float, a: float, b: float) -> float:
    """Solve I_x(a, b) = p for x in [0, 1].

    Symmetry keeps the working target <= 1/2; bisection-safeguarded Newton.
    """
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"inv_reg_inc_beta requires a, b > 0, got a={a}, b={b}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"inv_reg_inc_beta requires p in [0,1], got {p}")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    if p > 0.5:
        # I_x(a,b) = 1 - I_{1-x}(b,a); 1-p is exact for p in [0.5, 1]
        return 1.0 - inv_reg_inc_beta(1.0 - p, b, a)

    def f(x: float) -> float:
        return reg_inc_beta(x, a, b) - p

    # moment-matched start, clipped into (0, 1)
    x = a / (a + b)
    lo, hi = 0.0, 1.0
    for _ in range(300):
        fx = f(x)
        if fx == 0.0:
            return x
        if fx < 0.0:
            lo = max(lo, x)
        else:
            hi = min(hi, x)
        d = _beta_pdf(x, a, b)
        xn = x - fx / d if d > 0.0 else math.nan
        if not (math.isfinite(xn) and lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-15 * max(abs(xn), _TINY) or xn == x:
            return xn
        x = xn
    raise ConvergenceError(f"inv_reg_inc_beta stalled at a={a}, b={b}, p={p}")


# ---------------------------------------------------------------------------
# error function family and the normal quantile
# ---------------------------------------------------------------------------

def erf(x: float) -> float:
    """Error function."""
    return math.erf(x)


def erfc(x: float) -> float:
    """Complementary error function."""
    return math.erfc(x)


# Wichura's AS 241 (PPND16) rational approximations for the normal quantile.
_A = (3.3871328727963666080, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2,
      5.3941960214247511077e3, 2.1213794301586595867e4, 3.9307895800092710610e4,
      2.8729085735721942674e4, 5.2264952788528545610e3)
_C = (1.42343711074968357734, 4.63033784615654529590, 5.76949722146069140550,
      3.64784832476320460504, 1.27045825245236838258, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187, 1.67638483018380384940,
      6.89767334985100004550e-1, 1.48103976427480074590e-1,
      1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720, 5.46378491116411436990, 1.78482653991729133580,
      2.96560571828504891230e-1, 2.65321895265761230930e-2,
      1.24266094738807843860e-3, 2.71155556874348757815e-5,
      2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4,
      1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly(c, r: float) -> float:
    s = 0.0
    for coef in reversed(c):
        s = s * r + coef
    return s


def normal_quantile(p: float) -> float:
    """Standard normal quantile for p in (0, 1), ~1e-15 relative accuracy."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal_quantile requires 0 < p < 1, got {p}")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = p if q < 0.0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        z = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        z = _poly(_E, r) / _poly(_F, r)
    return -z if q < 0.0 else z


def normal_quantile_from_sf(s: float) -> float:
    """Quantile at survival probability s: returns z with 1 - Phi(z) = s.

    Tail-stable entry (avoids forming 1 - s for tiny s).
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"normal_quantile_from_sf requires 0 < s < 1, got {s}")
    return -normal_quantile(s)


def erf_inv(p: float) -> float:
    """Inverse error function for |p| < 1."""
    if not -1.0 < p < 1.0:
        raise DomainError(f"erf_inv requires |p| < 1, got {p}")
    if p == 0.0:
        return 0.0
    if p < 0.0:
        return -erf_inv(-p)
    if p <= 0.5:
        return normal_quantile(0.5 * (1.0 + p)) / _SQRT2
    # 1 - p is exact for p in [0.5, 1): route through the complement
    return erfc_inv(1.0 - p)


def erfc_inv(q: float) -> float:
    """Inverse complementary error function for q in (0, 2)."""
    if not 0.0 < q < 2.0:
        raise DomainError(f"erfc_inv requires 0 < q < 2, got {q}")
    if q > 1.0:
        return -erfc_inv(2.0 - q)
    # erfc(x) = 2 * (1 - Phi(x * sqrt(2)))
    return normal_quantile_from_sf(0.5 * q) / _SQRT2


def z_score(p: float) -> float:
    """Standard normal quantile written as sqrt(2) * erf_inv(2p - 1)."""
    return normal_quantile(p)
