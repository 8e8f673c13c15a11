"""Jacobi, Laguerre and Hermite families with their special cases.

Series evaluation, differential equations, shift operators, Rodrigues
formulas, quadratic transformations, even-weight splitting, limit relations
and the electrostatic zero characterization.  Series sums carry a
cancellation guard that retries in higher precision when double arithmetic
loses too many digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from numpy.polynomial import polynomial as npoly

from .measures import Measure, continuous_measure
from .recurrence import NormData, RecurrenceError, RecurrenceSystem, eval_poly

_TINY = 1e-300


class FamilyError(ValueError):
    """Invalid family parameters."""


# ---------------------------------------------------------------------------
# shifted factorials and terminating hypergeometric series

def pochhammer(a: float, k: int, num=float):
    """Shifted factorial (a)_k = a (a+1) ... (a+k-1)."""
    out = num(1)
    av = num(a)
    for i in range(k):
        out *= av + i
    return out


@dataclass(frozen=True)
class HypergeometricTerm:
    """A terminating hypergeometric sum: upper/lower parameters and argument."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    argument: float
    terms: int | None = None  # termination index; derived from upper if None


def _termination_index(upper) -> int:
    candidates = [int(round(-a)) for a in upper
                  if a <= 0 and abs(a - round(a)) < 1e-12]
    if not candidates:
        raise FamilyError("series does not terminate: no non-positive "
                          "integer among the upper parameters")
    return min(candidates)


def _guarded_sum(term_fn, n_terms: int) -> float:
    """Sum term_fn(k, num) for k < n_terms, escalating precision on cancellation."""
    total, max_abs = 0.0, 0.0
    for k in range(n_terms):
        t = term_fn(k, float)
        total += t
        max_abs = max(max_abs, abs(t))
    if max_abs <= 1e3 * max(abs(total), _TINY):
        return total
    dps = 30 + int(math.log10(max_abs / max(abs(total), max_abs * 1e-200)))
    for _ in range(4):
        with mpmath.workdps(dps):
            mp_total = mpmath.fsum(term_fn(k, mpmath.mpf)
                                   for k in range(n_terms))
            ok = abs(mp_total) > max_abs * mpmath.mpf(10) ** (18 - dps)
            val = float(mp_total)
        if ok or val == 0.0:
            return val
        dps += 20
    return val


def hyp_terminating(spec: HypergeometricTerm) -> float:
    """Evaluate a terminating (generalized) hypergeometric series exactly.

    Terms are formed directly from shifted factorials, so a zero factor
    coming from an upper parameter never contaminates later terms.
    """
    n = spec.terms if spec.terms is not None else _termination_index(spec.upper)
    for b in spec.lower:
        if b <= 0 and abs(b - round(b)) < 1e-12 and int(round(-b)) < n:
            raise FamilyError(
                f"lower parameter {b} hits a pole before termination at {n}")

    def term(k, num):
        t = num(spec.argument) ** k
        for a in spec.upper:
            t *= pochhammer(a, k, num)
        for b in spec.lower:
            t /= pochhammer(b, k, num)
        return t / math.factorial(k)

    return _guarded_sum(term, n + 1)


def hyp(upper, lower, z, terms=None) -> float:
    """Convenience wrapper around hyp_terminating."""
    return hyp_terminating(HypergeometricTerm(tuple(upper), tuple(lower),
                                              float(z), terms))


# ---------------------------------------------------------------------------
# family parameter records

_FAMILIES = ("jacobi", "laguerre", "hermite", "gegenbauer", "legendre",
             "chebyshev_t", "chebyshev_u")


@dataclass(frozen=True)
class FamilySpec:
    """Tagged explicit family with parameter record."""

    family: str
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        f, p = self.family, self.parameters
        if f not in _FAMILIES:
            raise FamilyError(f"unknown family {f!r}")
        if f == "jacobi":
            if p["alpha"] <= -1 or p["beta"] <= -1:
                raise FamilyError("jacobi requires alpha > -1 and beta > -1")
        elif f == "laguerre":
            if p["alpha"] <= -1:
                raise FamilyError("laguerre requires alpha > -1")
        elif f == "gegenbauer":
            lam = p["lam"]
            if lam <= -0.5 or lam == 0.0:
                raise FamilyError(
                    "gegenbauer requires lam > -1/2 and lam != 0")

    def __getattr__(self, name):
        try:
            return self.parameters[name]
        except KeyError:
            raise AttributeError(name) from None


def jacobi(alpha: float, beta: float) -> FamilySpec:
    return FamilySpec("jacobi", {"alpha": float(alpha), "beta": float(beta)})


def laguerre(alpha: float) -> FamilySpec:
    return FamilySpec("laguerre", {"alpha": float(alpha)})


def hermite() -> FamilySpec:
    return FamilySpec("hermite")


def gegenbauer(lam: float) -> FamilySpec:
    return FamilySpec("gegenbauer", {"lam": float(lam)})


def legendre() -> FamilySpec:
    return FamilySpec("legendre")


def chebyshev_t() -> FamilySpec:
    return FamilySpec("chebyshev_t")


def chebyshev_u() -> FamilySpec:
    return FamilySpec("chebyshev_u")


# ---------------------------------------------------------------------------
# series evaluation

def jacobi_eval(n: int, alpha: float, beta: float, x: float) -> float:
    """P_n^{(alpha,beta)}(x) as a terminating Gauss hypergeometric sum."""
    if n < 0:
        raise FamilyError("degree must be non-negative")
    if x < 0:
        # reflection keeps the expansion point x=1 nearby, which conditions
        # the sum much better deep inside the interval
        return (-1) ** n * jacobi_eval(n, beta, alpha, -x)

    def term(k, num):
        # parameter sums are formed in `num` arithmetic: double rounding of
        # e.g. alpha+k+1 is amplified by the cancellation the guard fights
        return (pochhammer(num(alpha) + num(beta) + (n + 1), k, num)
                * pochhammer(num(alpha) + (k + 1), n - k, num)
                / (math.factorial(k) * math.factorial(n - k))
                * ((num(x) - 1) / 2) ** k)

    return _guarded_sum(term, n + 1)


def laguerre_eval(n: int, alpha: float, x: float) -> float:
    """L_n^{alpha}(x) as a terminating confluent hypergeometric sum."""
    if n < 0:
        raise FamilyError("degree must be non-negative")

    def term(k, num):
        return (pochhammer(num(alpha) + (k + 1), n - k, num)
                / (math.factorial(k) * math.factorial(n - k))
                * (-num(x)) ** k)

    return _guarded_sum(term, n + 1)


def hermite_eval(n: int, x: float) -> float:
    """H_n(x) with leading coefficient 2^n."""
    if n < 0:
        raise FamilyError("degree must be non-negative")

    def term(j, num):
        return ((-1) ** j * (2 * num(x)) ** (n - 2 * j)
                * math.factorial(n) / (math.factorial(j)
                                       * math.factorial(n - 2 * j)))

    return _guarded_sum(term, n // 2 + 1)


def special_case_eval(spec: FamilySpec, n: int, x: float) -> float:
    """Evaluate a family member, routing special cases through Jacobi."""
    f = spec.family
    if f == "jacobi":
        return jacobi_eval(n, spec.alpha, spec.beta, x)
    if f == "laguerre":
        return laguerre_eval(n, spec.alpha, x)
    if f == "hermite":
        return hermite_eval(n, x)
    if f == "gegenbauer":
        lam = spec.lam
        scale = pochhammer(2 * lam, n) / pochhammer(lam + 0.5, n)
        return scale * jacobi_eval(n, lam - 0.5, lam - 0.5, x)
    if f == "legendre":
        return jacobi_eval(n, 0.0, 0.0, x)
    if f == "chebyshev_t":
        scale = math.factorial(n) / pochhammer(0.5, n)
        return scale * jacobi_eval(n, -0.5, -0.5, x)
    if f == "chebyshev_u":
        scale = pochhammer(2.0, n) / pochhammer(1.5, n)
        return scale * jacobi_eval(n, 0.5, 0.5, x)
    raise FamilyError(f"unknown family {f!r}")


# ---------------------------------------------------------------------------
# monomial coefficient vectors (exact-in-coefficients derivatives)

def jacobi_coeffs(n: int, alpha: float, beta: float) -> np.ndarray:
    """Monomial coefficients of P_n^{(alpha,beta)}, ascending order."""
    out = np.zeros(n + 1)
    zpow = np.array([1.0])
    base = np.array([-0.5, 0.5])  # (x - 1)/2
    for k in range(n + 1):
        t = (pochhammer(n + alpha + beta + 1, k)
             * pochhammer(alpha + k + 1, n - k)
             / (math.factorial(k) * math.factorial(n - k)))
        out[:len(zpow)] += t * zpow
        zpow = np.convolve(zpow, base)
    return out


def laguerre_coeffs(n: int, alpha: float) -> np.ndarray:
    out = np.zeros(n + 1)
    for k in range(n + 1):
        out[k] = ((-1) ** k * pochhammer(alpha + k + 1, n - k)
                  / (math.factorial(k) * math.factorial(n - k)))
    return out


def hermite_coeffs(n: int) -> np.ndarray:
    out = np.zeros(n + 1)
    for j in range(n // 2 + 1):
        out[n - 2 * j] = ((-1) ** j * 2 ** (n - 2 * j) * math.factorial(n)
                          / (math.factorial(j) * math.factorial(n - 2 * j)))
    return out


def family_coeffs(spec: FamilySpec, n: int) -> np.ndarray:
    f = spec.family
    if f == "jacobi":
        return jacobi_coeffs(n, spec.alpha, spec.beta)
    if f == "laguerre":
        return laguerre_coeffs(n, spec.alpha)
    if f == "hermite":
        return hermite_coeffs(n)
    base, scale = _as_jacobi(spec, n)
    return scale * jacobi_coeffs(n, base.alpha, base.beta)


def _as_jacobi(spec: FamilySpec, n: int) -> tuple[FamilySpec, float]:
    """Underlying Jacobi spec and degree-n prefactor for the special cases."""
    f = spec.family
    if f == "gegenbauer":
        lam = spec.lam
        return jacobi(lam - 0.5, lam - 0.5), (pochhammer(2 * lam, n)
                                              / pochhammer(lam + 0.5, n))
    if f == "legendre":
        return jacobi(0.0, 0.0), 1.0
    if f == "chebyshev_t":
        return jacobi(-0.5, -0.5), math.factorial(n) / pochhammer(0.5, n)
    if f == "chebyshev_u":
        return jacobi(0.5, 0.5), pochhammer(2.0, n) / pochhammer(1.5, n)
    raise FamilyError(f"{f} has no Jacobi reduction")


# ---------------------------------------------------------------------------
# differential equations and shift operators

def ode_residual(spec: FamilySpec, n: int, x: float) -> float:
    """Residual of the second order ODE, scaled by the size of its terms."""
    if n == 0:
        return 0.0
    if spec.family in ("gegenbauer", "legendre", "chebyshev_t", "chebyshev_u"):
        base, _ = _as_jacobi(spec, n)
        return ode_residual(base, n, x)
    c = family_coeffs(spec, n)
    d1 = npoly.polyder(c)
    d2 = npoly.polyder(c, 2)
    p = npoly.polyval(x, c)
    dp = npoly.polyval(x, d1)
    ddp = npoly.polyval(x, d2)
    if spec.family == "jacobi":
        a, b = spec.alpha, spec.beta
        t = [(1 - x * x) * ddp, (b - a - (a + b + 2) * x) * dp,
             n * (n + a + b + 1) * p]
    elif spec.family == "laguerre":
        a = spec.alpha
        t = [x * ddp, (a + 1 - x) * dp, n * p]
    else:  # hermite
        t = [ddp, -2 * x * dp, 2 * n * p]
    scale = max(max(abs(v) for v in t), _TINY)
    return sum(t) / scale


def shift_check(spec: FamilySpec, n: int, direction: str, x: float) -> float:
    """Scaled residual of the raising/lowering shift operator relation.

    direction "raise" differentiates p_n (raising parameters, lowering
    degree); "lower" applies the weighted derivative that lowers parameters
    and raises degree.
    """
    f = spec.family
    if direction not in ("raise", "lower"):
        raise FamilyError(f"unknown direction {direction!r}")
    if n == 0 and direction == "raise":
        return 0.0
    if f == "jacobi":
        a, b = spec.alpha, spec.beta
        if direction == "raise":
            dp = npoly.polyval(x, npoly.polyder(jacobi_coeffs(n, a, b)))
            rhs = 0.5 * (n + a + b + 1) * jacobi_eval(n - 1, a + 1, b + 1, x)
            return _rel(dp - rhs, dp, rhs)
        qc = jacobi_coeffs(n - 1, a + 1, b + 1)
        q = npoly.polyval(x, qc)
        dq = npoly.polyval(x, npoly.polyder(qc))
        lhs = (1 - x * x) * dq + (b - a - (a + b + 2) * x) * q
        rhs = -2 * n * jacobi_eval(n, a, b, x)
        return _rel(lhs - rhs, lhs, rhs)
    if f == "laguerre":
        a = spec.alpha
        if direction == "raise":
            dp = npoly.polyval(x, npoly.polyder(laguerre_coeffs(n, a)))
            rhs = -laguerre_eval(n - 1, a + 1, x)
            return _rel(dp - rhs, dp, rhs)
        qc = laguerre_coeffs(n - 1, a + 1)
        q = npoly.polyval(x, qc)
        dq = npoly.polyval(x, npoly.polyder(qc))
        lhs = x * dq + (a + 1 - x) * q
        rhs = n * laguerre_eval(n, a, x)
        return _rel(lhs - rhs, lhs, rhs)
    if f == "hermite":
        if direction == "raise":
            dp = npoly.polyval(x, npoly.polyder(hermite_coeffs(n)))
            rhs = 2 * n * hermite_eval(n - 1, x)
            return _rel(dp - rhs, dp, rhs)
        qc = hermite_coeffs(n - 1)
        lhs = (npoly.polyval(x, npoly.polyder(qc))
               - 2 * x * npoly.polyval(x, qc))
        rhs = -hermite_eval(n, x)
        return _rel(lhs - rhs, lhs, rhs)
    base, _ = _as_jacobi(spec, n)
    return shift_check(base, n, direction, x)


def _rel(diff: float, *refs: float) -> float:
    return diff / max(max(abs(r) for r in refs), 1.0)


# ---------------------------------------------------------------------------
# Rodrigues formulas by exact polynomial recursion

def rodrigues_eval(spec: FamilySpec, n: int, x: float) -> float:
    """Evaluate via the Rodrigues formula, with (d/dx)^k (X^n w)/w kept
    as an explicitly recursed polynomial."""
    f = spec.family
    if f == "jacobi":
        a, b = spec.alpha, spec.beta
        r = np.array([1.0])
        one_minus_x2 = np.array([1.0, 0.0, -1.0])
        for k in range(n):
            lin = np.array([b - a, -(a + b + 2 * (n - k))])
            r = (npoly.polymul(npoly.polyder(r), one_minus_x2)
                 + npoly.polymul(r, lin))
        return ((-1) ** n / (2 ** n * math.factorial(n))
                * npoly.polyval(x, r))
    if f == "laguerre":
        a = spec.alpha
        s = np.array([1.0])
        x_poly = np.array([0.0, 1.0])
        for k in range(n):
            s = npoly.polysub(
                npoly.polyadd(npoly.polymul(npoly.polyder(s), x_poly),
                              (n + a - k) * s),
                npoly.polymul(s, x_poly))
        return npoly.polyval(x, s) / math.factorial(n)
    if f == "hermite":
        q = np.array([1.0])
        for _ in range(n):
            qd = npoly.polyder(q) if len(q) > 1 else np.array([0.0])
            q = npoly.polysub(qd, npoly.polymul(np.array([0.0, 2.0]), q))
        return (-1) ** n * npoly.polyval(x, q)
    raise FamilyError(f"Rodrigues formula implemented for jacobi, laguerre, "
                      f"hermite; got {f!r}")


# ---------------------------------------------------------------------------
# quadratic transformations and even-weight splitting

def quadratic_transform_check(n: int, alpha: float,
                              x: float) -> tuple[float, float]:
    """Residuals of the even/odd quadratic transformation identities."""
    y = 2 * x * x - 1

    def norm1(m, a, b):
        return pochhammer(a + 1, m) / math.factorial(m)

    even = (jacobi_eval(2 * n, alpha, alpha, x) / norm1(2 * n, alpha, alpha)
            - jacobi_eval(n, alpha, -0.5, y) / norm1(n, alpha, -0.5))
    odd = (jacobi_eval(2 * n + 1, alpha, alpha, x)
           / norm1(2 * n + 1, alpha, alpha)
           - x * jacobi_eval(n, alpha, 0.5, y) / norm1(n, alpha, 0.5))
    return even, odd


def split_even_system(sys: RecurrenceSystem,
                      n_max: int) -> tuple[RecurrenceSystem, RecurrenceSystem]:
    """Split an even system into monic q, r with p_2n(x) = q_n(x^2),
    p_{2n+1}(x) = x r_n(x^2) (after monic rescaling of p)."""
    for j in range(2 * n_max + 3):
        if sys.coeffs(j)[1] != 0.0:
            raise RecurrenceError(f"b_{j} != 0: measure is not even")

    def c_monic(j: int) -> float:
        if j == 0:
            return 0.0
        a_prev, _, _ = sys.coeffs(j - 1)
        _, _, c = sys.coeffs(j)
        return c * a_prev

    def q_coeff(n: int) -> tuple[float, float, float]:
        b = c_monic(2 * n) + c_monic(2 * n + 1)
        c = c_monic(2 * n - 1) * c_monic(2 * n) if n > 0 else 0.0
        return 1.0, b, c

    def r_coeff(n: int) -> tuple[float, float, float]:
        b = c_monic(2 * n + 1) + c_monic(2 * n + 2)
        c = c_monic(2 * n) * c_monic(2 * n + 1) if n > 0 else 0.0
        return 1.0, b, c

    q_sys = RecurrenceSystem(q_coeff, form="monic", p0=1.0,
                             max_index_hint=n_max)
    r_sys = RecurrenceSystem(r_coeff, form="monic", p0=1.0,
                             max_index_hint=n_max)
    return q_sys, r_sys


# ---------------------------------------------------------------------------
# recurrence systems (classical and monic normalizations)

def legendre_system() -> RecurrenceSystem:
    return RecurrenceSystem(
        lambda n: ((n + 1) / (2 * n + 1), 0.0, n / (2 * n + 1)),
        form="general", p0=1.0)


def hermite_system() -> RecurrenceSystem:
    return RecurrenceSystem(lambda n: (0.5, 0.0, float(n)),
                            form="general", p0=1.0)


def laguerre_system(alpha: float) -> RecurrenceSystem:
    return RecurrenceSystem(
        lambda n: (-(n + 1.0), 2 * n + alpha + 1, -(n + alpha)),
        form="general", p0=1.0)


def jacobi_monic_b(n: int, alpha: float, beta: float) -> float:
    if n == 0:
        return (beta - alpha) / (alpha + beta + 2)
    s = 2 * n + alpha + beta
    return (beta ** 2 - alpha ** 2) / (s * (s + 2))


def jacobi_monic_c(n: int, alpha: float, beta: float) -> float:
    if n == 0:
        return 0.0
    if n == 1:
        # the (1 + alpha + beta) factor cancels; this form stays finite
        # for alpha + beta -> -1
        return (4 * (1 + alpha) * (1 + beta)
                / ((2 + alpha + beta) ** 2 * (3 + alpha + beta)))
    s = 2 * n + alpha + beta
    return (4 * n * (n + alpha) * (n + beta) * (n + alpha + beta)
            / ((s - 1) * s ** 2 * (s + 1)))


def jacobi_monic_system(alpha: float, beta: float) -> RecurrenceSystem:
    return RecurrenceSystem(
        lambda n: (1.0, jacobi_monic_b(n, alpha, beta),
                   jacobi_monic_c(n, alpha, beta)),
        form="monic", p0=1.0)


def laguerre_monic_system(alpha: float) -> RecurrenceSystem:
    return RecurrenceSystem(
        lambda n: (1.0, 2 * n + alpha + 1, n * (n + alpha)),
        form="monic", p0=1.0)


def hermite_monic_system() -> RecurrenceSystem:
    return RecurrenceSystem(lambda n: (1.0, 0.0, n / 2.0),
                            form="monic", p0=1.0)


def jacobi_leading_coeff(n: int, alpha: float, beta: float) -> float:
    """k_n = (n+alpha+beta+1)_n / (2^n n!)."""
    return pochhammer(n + alpha + beta + 1, n) / (2 ** n * math.factorial(n))


def jacobi_system(alpha: float, beta: float) -> RecurrenceSystem:
    def coeff(n: int) -> tuple[float, float, float]:
        kn = jacobi_leading_coeff(n, alpha, beta)
        a = kn / jacobi_leading_coeff(n + 1, alpha, beta)
        b = jacobi_monic_b(n, alpha, beta)
        if n == 0:
            return a, b, 0.0
        c = (jacobi_monic_c(n, alpha, beta) * kn
             / jacobi_leading_coeff(n - 1, alpha, beta))
        return a, b, c

    return RecurrenceSystem(coeff, form="general", p0=1.0)


def family_system(spec: FamilySpec) -> RecurrenceSystem:
    """Three-term recurrence in the family's classical normalization."""
    f = spec.family
    if f == "jacobi":
        return jacobi_system(spec.alpha, spec.beta)
    if f == "laguerre":
        return laguerre_system(spec.alpha)
    if f == "hermite":
        return hermite_system()
    if f == "legendre":
        return legendre_system()
    base, _ = _as_jacobi(spec, 0)
    jac = jacobi_system(base.alpha, base.beta)

    def scale_n(n: int) -> float:
        return _as_jacobi(spec, n)[1]

    def coeff(n: int) -> tuple[float, float, float]:
        a, b, c = jac.coeffs(n)
        a *= scale_n(n) / scale_n(n + 1)
        if n > 0:
            c *= scale_n(n) / scale_n(n - 1)
        return a, b, c

    return RecurrenceSystem(coeff, form="general", p0=1.0)


def family_monic_system(spec: FamilySpec) -> RecurrenceSystem:
    f = spec.family
    if f == "laguerre":
        return laguerre_monic_system(spec.alpha)
    if f == "hermite":
        return hermite_monic_system()
    if f == "jacobi":
        return jacobi_monic_system(spec.alpha, spec.beta)
    base, _ = _as_jacobi(spec, 0)
    return jacobi_monic_system(base.alpha, base.beta)


# ---------------------------------------------------------------------------
# measures and norm seeds

def family_measure(spec: FamilySpec, normalized: bool = False) -> Measure:
    """Orthogonality measure; `normalized` applies the classical prefactor
    (1/2 for Legendre, pi^{-1/2} for Hermite, 1/pi for Chebyshev-T)."""
    f = spec.family
    if f == "hermite":
        norm = math.pi ** -0.5 if normalized else 1.0
        return continuous_measure(lambda x: math.exp(-x * x),
                                  (-math.inf, math.inf), normalizer=norm,
                                  meta={"name": "hermite"})
    if f == "legendre":
        norm = 0.5 if normalized else 1.0
        return continuous_measure(lambda x: 1.0, (-1.0, 1.0), normalizer=norm,
                                  meta={"name": "legendre"})
    if f == "laguerre":
        a = spec.alpha
        alg = (a, 0.0) if a != 0.0 else None
        return continuous_measure(lambda x: x ** a * math.exp(-x),
                                  (0.0, math.inf), alg_exponents=alg,
                                  alg_smooth=(lambda x: math.exp(-x)) if alg else None,
                                  meta={"name": "laguerre", "alpha": a})
    if f == "chebyshev_t":
        norm = 1.0 / math.pi if normalized else 1.0
        return continuous_measure(lambda x: (1 - x * x) ** -0.5, (-1.0, 1.0),
                                  normalizer=norm, alg_exponents=(-0.5, -0.5),
                                  alg_smooth=lambda x: 1.0,
                                  meta={"name": "chebyshev_t"})
    # jacobi-type weights (1-x)^alpha (1+x)^beta
    if f == "jacobi":
        a, b = spec.alpha, spec.beta
    else:
        base, _ = _as_jacobi(spec, 0)
        a, b = base.alpha, base.beta
    return continuous_measure(lambda x: (1 - x) ** a * (1 + x) ** b,
                              (-1.0, 1.0), alg_exponents=(b, a),
                              alg_smooth=lambda x: 1.0,
                              meta={"name": "jacobi", "alpha": a, "beta": b})


def family_mu0(spec: FamilySpec, normalized: bool = False) -> float:
    """Total mass of family_measure, in closed form."""
    f = spec.family
    if f == "hermite":
        return 1.0 if normalized else math.sqrt(math.pi)
    if f == "legendre":
        return 1.0 if normalized else 2.0
    if f == "laguerre":
        return math.gamma(spec.alpha + 1)
    if f == "chebyshev_t":
        return 1.0 if normalized else math.pi
    if f == "jacobi":
        a, b = spec.alpha, spec.beta
    else:
        base, _ = _as_jacobi(spec, 0)
        a, b = base.alpha, base.beta
    return (2 ** (a + b + 1) * math.gamma(a + 1) * math.gamma(b + 1)
            / math.gamma(a + b + 2))


@dataclass(frozen=True)
class FamilyBundle:
    """A family's system, measure and norm seeds, ready for the kernel and
    quadrature layers."""

    spec: FamilySpec
    system: RecurrenceSystem
    monic: RecurrenceSystem
    measure: Measure
    h0: float
    k0: float = 1.0


def family_bundle(spec: FamilySpec, normalized: bool = False) -> FamilyBundle:
    return FamilyBundle(spec=spec,
                        system=family_system(spec),
                        monic=family_monic_system(spec),
                        measure=family_measure(spec, normalized),
                        h0=family_mu0(spec, normalized))


# ---------------------------------------------------------------------------
# limit relations

def limit_check(which: int, n: int, parameter: float, x: float,
                alpha: float = 0.0) -> float:
    """Error of one of the three classical limit relations at x.

    which=26: Jacobi(a,a) -> Hermite; which=27: Jacobi(alpha,b) -> Laguerre
    (parameter is b); which=28: Laguerre(a) -> Hermite.  Monic variants.
    """
    herm = hermite_monic_system()
    if which == 26:
        a = parameter
        lhs = a ** (n / 2.0) * eval_poly(jacobi_monic_system(a, a), n,
                                         x / math.sqrt(a))
        return abs(lhs - eval_poly(herm, n, x))
    if which == 27:
        b = parameter
        lhs = (-b / 2.0) ** n * eval_poly(jacobi_monic_system(alpha, b), n,
                                          1 - 2 * x / b)
        return abs(lhs - eval_poly(laguerre_monic_system(alpha), n, x))
    if which == 28:
        a = parameter
        lhs = ((2 * a) ** (-n / 2.0)
               * eval_poly(laguerre_monic_system(a), n,
                           math.sqrt(2 * a) * x + a))
        return abs(lhs - eval_poly(herm, n, x))
    raise FamilyError(f"unknown limit relation {which}")


# ---------------------------------------------------------------------------
# electrostatics of Jacobi zeros

def electrostatic_gradient(n: int, p: float, q: float, zeros) -> np.ndarray:
    """Gradient of the logarithmic potential with charges p at 1 and q at -1."""
    if p <= 0 or q <= 0:
        raise FamilyError("charges p, q must be positive")
    xs = np.asarray(zeros, dtype=float)
    if len(xs) != n:
        raise FamilyError(f"expected {n} points, got {len(xs)}")
    if len(np.unique(xs)) != n:
        raise FamilyError("coincident points")
    grad = np.empty(n)
    for k in range(n):
        others = np.delete(xs, k)
        grad[k] = (np.sum(1.0 / (xs[k] - others))
                   + p / (xs[k] - 1.0) + q / (xs[k] + 1.0))
    return grad


# ---------------------------------------------------------------------------
# Gegenbauer generating function

def gegenbauer_genfn_check(lam: float, x: float, t: float,
                           n_terms: int) -> tuple[float, float]:
    """(residual, tail bound) of (1-2xt+t^2)^{-lam} vs its Gegenbauer sum."""
    if abs(t) >= 1:
        raise FamilyError("need |t| < 1")
    spec = gegenbauer(lam)
    partial = sum(special_case_eval(spec, n, x) * t ** n
                  for n in range(n_terms + 1))
    closed = (1 - 2 * x * t + t * t) ** -lam
    # |C_n^lam(x)| <= C_n^lam(1) = (2 lam)_n / n! for |x| <= 1, lam > 0
    m = n_terms + 1
    head = pochhammer(2 * lam, m) / math.factorial(m) * abs(t) ** m
    ratio = abs(t) * max((2 * lam + m) / (m + 1), 1.0)
    if ratio >= 1:
        raise FamilyError("tail bound not geometric; increase n_terms")
    tail = head / (1 - ratio)
    return abs(partial - closed), tail
