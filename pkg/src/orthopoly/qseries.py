"""q-toolkit: q-numbers, q-shifted factorials, basic hypergeometric series,
q-derivative and q-integral, Askey-Wilson polynomials and the continuous
q-ultraspherical family with its generating function."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath

from .families import FamilyError, special_case_eval, gegenbauer


class QSeriesError(RuntimeError):
    """q-series evaluation failed (pole or non-convergence)."""


@dataclass(frozen=True)
class QContext:
    """Base q with truncation controls for infinite products and series."""

    q: float
    series_tol: float = 1e-15
    max_terms: int = 10_000

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise QSeriesError("q must lie in (0, 1)")
        if self.series_tol <= 0 or self.max_terms < 1:
            raise QSeriesError("series_tol must be positive, max_terms >= 1")


def q_number(ctx: QContext, a: float) -> float:
    """[a]_q = (1 - q^a)/(1 - q)."""
    return (1.0 - ctx.q ** a) / (1.0 - ctx.q)


def q_pochhammer(ctx: QContext, a, n: int | None = None):
    """(a; q)_n, with n=None meaning the infinite product (truncated when the
    remaining factors differ from 1 by less than series_tol)."""
    q = ctx.q
    if n is not None:
        if n < 0:
            raise QSeriesError("q-shifted factorial order must be >= 0")
        out = 1.0 + 0.0j if isinstance(a, complex) else 1.0
        for k in range(n):
            out *= 1 - a * q ** k
        return out
    out = 1.0 + 0.0j if isinstance(a, complex) else 1.0
    for k in range(ctx.max_terms):
        factor = a * q ** k
        if abs(factor) < ctx.series_tol:
            return out
        out *= 1 - factor
    raise QSeriesError("infinite q-shifted factorial did not converge "
                       "within max_terms")


def q_derivative(ctx: QContext, f, x: float) -> float:
    """(D_q f)(x) = (f(x) - f(qx)) / ((1-q) x)."""
    if x == 0:
        raise QSeriesError("q-derivative undefined at x = 0")
    return (f(x) - f(ctx.q * x)) / ((1.0 - ctx.q) * x)


def q_integral(ctx: QContext, f) -> float:
    """Jackson integral of f over [0, 1]: (1-q) sum f(q^k) q^k."""
    q = ctx.q
    total = 0.0
    for k in range(ctx.max_terms):
        node = q ** k
        total += f(node) * node
        if node < ctx.series_tol:
            return (1.0 - q) * total
    raise QSeriesError("q-integral did not converge within max_terms")


def _is_q_power(ctx: QContext, a, tol: float = 1e-9) -> int | None:
    """Return m when a = q^{-m} for a non-negative integer m, else None."""
    if isinstance(a, complex):
        if abs(a.imag) > tol * max(1.0, abs(a)):
            return None
        a = a.real
    if a <= 0:
        return None
    m = -math.log(a) / math.log(ctx.q)
    m_int = round(m)
    if m_int >= 0 and abs(m - m_int) < tol:
        return m_int
    return None


def basic_hyp(ctx: QContext, upper, lower, z):
    """Basic hypergeometric series r+1 phi r (general r, s via the standard
    extra factor), summed by running term ratios.

    Terminates when some upper parameter is q^{-n}; otherwise sums until the
    running tail is below series_tol within the max_terms budget.
    """
    upper = list(upper)
    lower = list(lower)
    q = ctx.q
    n_stop = None
    for a in upper:
        m = _is_q_power(ctx, a)
        if m is not None:
            n_stop = m if n_stop is None else min(n_stop, m)
    for b in lower:
        m = _is_q_power(ctx, b)
        if m is not None and (n_stop is None or m < n_stop):
            raise QSeriesError(
                f"lower parameter {b} hits q^(-{m}) before termination")
    extra_power = 1 + len(lower) - len(upper)
    is_complex = isinstance(z, complex) or any(
        isinstance(v, complex) for v in upper + lower)
    term = 1.0 + 0.0j if is_complex else 1.0
    total = term
    limit = n_stop if n_stop is not None else ctx.max_terms
    for k in range(limit):
        ratio = z
        for a in upper:
            ratio *= 1 - a * q ** k
        for b in lower:
            denom = 1 - b * q ** k
            if denom == 0:
                raise QSeriesError(f"zero denominator from lower parameter {b}")
            ratio /= denom
        ratio /= 1 - q ** (k + 1)
        if extra_power:
            ratio *= (-(q ** k)) ** extra_power
        term = term * ratio
        total += term
        if n_stop is None and abs(term) < ctx.series_tol * max(1.0, abs(total)):
            # geometric tail: the ratio shrinks like z q^k from here on
            return total
    if n_stop is None:
        raise QSeriesError("basic hypergeometric series did not converge "
                           "within max_terms")
    return total


# ---------------------------------------------------------------------------
# Askey-Wilson and continuous q-ultraspherical

def askey_wilson_eval(ctx: QContext, n: int, a: float, b: float, c: float,
                      d: float, theta: float) -> float:
    """p_n(cos theta; a,b,c,d | q), symmetric in (a, b, c, d).

    The terminating 4phi3 is summed in 30-digit arithmetic: the parameter
    symmetry is exact in the formula but individual term orderings differ by
    permutation, and double precision leaves visible asymmetry.
    """
    if a == 0:
        raise QSeriesError("parameter a must be nonzero")
    q = ctx.q
    with mpmath.workdps(30):
        qm = mpmath.mpf(q)
        am, bm, cm, dm = (mpmath.mpf(v) for v in (a, b, c, d))
        eip = mpmath.expjpi(mpmath.mpf(theta) / mpmath.pi)
        upper = [qm ** -n, am * bm * cm * dm * qm ** (n - 1),
                 am * eip, am / eip]
        lower = [am * bm, am * cm, am * dm]
        for bp in lower:
            m = _is_q_power(ctx, float(bp))
            if m is not None and m < n:
                raise QSeriesError(
                    f"lower parameter {float(bp)} hits q^(-{m}) before "
                    f"termination at {n}")
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        for k in range(n):
            ratio = qm
            for u in upper:
                ratio *= 1 - u * qm ** k
            for bp in lower:
                ratio /= 1 - bp * qm ** k
            ratio /= 1 - qm ** (k + 1)
            term *= ratio
            total += term
        prefactor = mpmath.mpc(1)
        for bp in lower:
            for k in range(n):
                prefactor *= 1 - bp * qm ** k
        val = prefactor / am ** n * total
        if abs(val.imag) > 1e-8 * max(1.0, abs(val.real)):
            raise QSeriesError(f"unexpected imaginary part {float(val.imag)}")
        return float(val.real)


def cq_ultraspherical(ctx: QContext, n: int, beta: float,
                      theta: float) -> float:
    """C_n(cos theta; beta | q) by its explicit convolution sum."""
    if n < 0:
        raise FamilyError("degree must be non-negative")
    total = 0.0 + 0.0j
    for k in range(n + 1):
        r_k = q_pochhammer(ctx, beta, k) / q_pochhammer(ctx, ctx.q, k)
        r_nk = (q_pochhammer(ctx, beta, n - k)
                / q_pochhammer(ctx, ctx.q, n - k))
        total += r_k * r_nk * cmath.exp(1j * (n - 2 * k) * theta)
    return total.real


def cq_from_askey_wilson(ctx: QContext, n: int, beta: float,
                         theta: float) -> float:
    """C_n via the Askey-Wilson specialization a=-c=beta^{1/2},
    b=-d=(q beta)^{1/2}, with the degree constant computed, not assumed."""
    if beta <= 0:
        raise QSeriesError("specialization needs beta > 0")
    sb = math.sqrt(beta)
    sqb = math.sqrt(ctx.q * beta)

    def aw(th):
        return askey_wilson_eval(ctx, n, sb, sqb, -sb, -sqb, th)

    kappa = None
    for th_ref in (1.0, 0.7, 1.9):
        ref = cq_ultraspherical(ctx, n, beta, th_ref)
        if abs(ref) > 1e-8:
            kappa = aw(th_ref) / ref
            break
    if kappa is None:
        raise QSeriesError("could not fix the specialization constant")
    return aw(theta) / kappa


def gen_fn_check(ctx: QContext, beta: float, theta: float, t: float,
                 n_terms: int) -> tuple[float, float]:
    """(residual, tail bound) of the q-ultraspherical generating function

    sum_n C_n(cos theta; beta | q) t^n
        = (beta t e^{i theta}; q)_inf (beta t e^{-i theta}; q)_inf
          / ((t e^{i theta}; q)_inf (t e^{-i theta}; q)_inf).
    """
    if abs(t) >= 1:
        raise QSeriesError("need |t| < 1")
    eip = cmath.exp(1j * theta)
    closed = (q_pochhammer(ctx, beta * t * eip)
              * q_pochhammer(ctx, beta * t / eip)
              / (q_pochhammer(ctx, t * eip) * q_pochhammer(ctx, t / eip)))
    partial = sum(cq_ultraspherical(ctx, n, beta, theta) * t ** n
                  for n in range(n_terms + 1))
    # |C_n| <= (n+1) K with K = ((-|beta|; q)_inf / (q; q)_inf)^2
    K = (abs(q_pochhammer(ctx, -abs(beta)))
         / q_pochhammer(ctx, ctx.q)) ** 2
    N = n_terms
    at = abs(t)
    tail = K * at ** (N + 1) * ((N + 2) - (N + 1) * at) / (1 - at) ** 2
    return abs(partial - closed.real) + abs(closed.imag), tail


def cq_gegenbauer_limit(ctx: QContext, n: int, lam: float, x: float) -> float:
    """|C_n(x; q^lam | q) - C_n^lam(x)|, shrinking as q rises to 1."""
    theta = math.acos(x)
    return abs(cq_ultraspherical(ctx, n, ctx.q ** lam, theta)
               - special_case_eval(gegenbauer(lam), n, x))
