"""Three-term recurrence systems: evaluation, normalization, Favard checks.

A system is defined by coefficient triples (a_n, b_n, c_n) in

    x p_n(x) = a_n p_{n+1}(x) + b_n p_n(x) + c_n p_{n-1}(x),

with p_0 constant.  Forms: "general" (arbitrary a_n), "monic" (a_n = 1),
"orthonormal" (c_{n+1} = a_n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
import numpy as np

FORMS = ("general", "monic", "orthonormal")


class RecurrenceError(ValueError):
    """Invalid or inconsistent recurrence data."""


@dataclass(frozen=True)
class RecurrenceSystem:
    """Orthogonal polynomial system given by a coefficient function.

    coeff_fn(n) returns the triple (a_n, b_n, c_n); c_0 is ignored.
    """

    coeff_fn: Callable[[int], tuple[float, float, float]]
    form: str = "general"
    p0: float = 1.0
    max_index_hint: int | None = None

    def __post_init__(self):
        if self.form not in FORMS:
            raise RecurrenceError(f"unknown form {self.form!r}")

    def coeffs(self, n: int) -> tuple[float, float, float]:
        if n < 0:
            raise RecurrenceError(f"coefficient index {n} is negative")
        try:
            a, b, c = self.coeff_fn(n)
        except (IndexError, KeyError) as exc:
            raise RecurrenceError(f"coefficients undefined at index {n}") from exc
        if a == 0:
            raise RecurrenceError(f"a_{n} = 0")
        return float(a), float(b), float(c)


@dataclass(frozen=True)
class NormData:
    """Quadratic norms h_n = <p_n, p_n> and leading coefficients k_n."""

    h: np.ndarray
    k: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "h", np.asarray(self.h, dtype=float))
        object.__setattr__(self, "k", np.asarray(self.k, dtype=float))
        if np.any(self.h <= 0):
            raise RecurrenceError("norms h_n must be positive")
        if np.any(self.k == 0):
            raise RecurrenceError("leading coefficients k_n must be nonzero")


def from_tables(a: Sequence[float], b: Sequence[float], c: Sequence[float],
                form: str = "general", p0: float = 1.0) -> RecurrenceSystem:
    """Build a system from stored coefficient arrays."""
    a = list(map(float, a))
    b = list(map(float, b))
    c = list(map(float, c))

    def coeff(n: int) -> tuple[float, float, float]:
        return a[n], b[n], c[n] if n < len(c) else 0.0

    return RecurrenceSystem(coeff, form=form, p0=p0, max_index_hint=len(a) - 1)


def eval_poly(sys: RecurrenceSystem, n: int, x, precision: int | None = None):
    """Evaluate p_n(x) by the forward recurrence.

    `precision` switches to mpmath arithmetic with that many decimal digits
    (useful outside the support interval where the recurrence loses accuracy);
    the result is still returned as float/complex.
    """
    if n < 0:
        raise RecurrenceError("degree must be non-negative")
    if precision is not None:
        return _eval_poly_mp(sys, n, x, precision)
    p_prev = 0.0
    p = sys.p0 + 0.0 * x  # promotes to complex when x is complex
    for j in range(n):
        a, b, c = sys.coeffs(j)
        p, p_prev = ((x - b) * p - c * p_prev) / a, p
    return p


def _eval_poly_mp(sys: RecurrenceSystem, n: int, x, digits: int):
    with mpmath.workdps(digits):
        xm = mpmath.mpmathify(x)
        p_prev = mpmath.mpf(0)
        p = mpmath.mpmathify(sys.p0)
        for j in range(n):
            a, b, c = sys.coeffs(j)
            p, p_prev = ((xm - b) * p - c * p_prev) / a, p
        if isinstance(p, mpmath.mpc):
            return complex(p)
        return float(p)


def eval_poly_with_derivative(sys: RecurrenceSystem, n: int, x):
    """Return (p_n(x), p_n'(x)) by differentiating the recurrence."""
    p_prev, d_prev = 0.0, 0.0
    p = sys.p0 + 0.0 * x
    d = 0.0 * x
    for j in range(n):
        a, b, c = sys.coeffs(j)
        p_next = ((x - b) * p - c * p_prev) / a
        d_next = ((x - b) * d + p - c * d_prev) / a
        p, p_prev = p_next, p
        d, d_prev = d_next, d
    return p, d


def eval_all(sys: RecurrenceSystem, n: int, x) -> list:
    """Return [p_0(x), ..., p_n(x)]."""
    out = [sys.p0 + 0.0 * x]
    if n == 0:
        return out
    p_prev = 0.0
    p = out[0]
    for j in range(n):
        a, b, c = sys.coeffs(j)
        p, p_prev = ((x - b) * p - c * p_prev) / a, p
        out.append(p)
    return out


@dataclass(frozen=True)
class FavardReport:
    products: np.ndarray           # a_n * c_{n+1} for n = 0..upto-1
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def validate_favard(sys: RecurrenceSystem, upto: int) -> FavardReport:
    """Check a_n c_{n+1} > 0 for n < upto; report offending products."""
    products = np.empty(max(upto, 0))
    failures = []
    for n in range(upto):
        a, _, _ = sys.coeffs(n)
        _, _, c_next = sys.coeffs(n + 1)
        products[n] = a * c_next
        if products[n] <= 0:
            failures.append((n, products[n]))
    return FavardReport(products=products, failures=failures)


def norms_from_recurrence(sys: RecurrenceSystem, h0: float, k0: float,
                          upto: int) -> NormData:
    """Propagate h_{n+1} = h_n c_{n+1}/a_n and k_{n+1} = k_n/a_n."""
    if h0 <= 0:
        raise RecurrenceError("h0 must be positive")
    if k0 == 0:
        raise RecurrenceError("k0 must be nonzero")
    h = np.empty(upto + 1)
    k = np.empty(upto + 1)
    h[0], k[0] = h0, k0
    for n in range(upto):
        a, _, _ = sys.coeffs(n)
        _, _, c_next = sys.coeffs(n + 1)
        h[n + 1] = h[n] * c_next / a
        if h[n + 1] <= 0:
            raise RecurrenceError(
                f"Favard violation at n={n}: h_{n + 1} = {h[n + 1]} <= 0")
        k[n + 1] = k[n] / a
    return NormData(h=h, k=k)


def convert_form(sys: RecurrenceSystem, norms: NormData,
                 target: str) -> RecurrenceSystem:
    """Convert a system between general/monic/orthonormal normalizations.

    `norms` must hold the h_n, k_n of `sys` itself.  Conversions rescale
    p_n -> p_n/k_n (monic), p_n -> p_n/sqrt(h_n) (orthonormal), or restore
    the recorded k_n chain (general).
    """
    if target not in FORMS:
        raise RecurrenceError(f"unknown target form {target!r}")
    _check_norm_consistency(sys, norms)
    if target == sys.form == "monic":
        return sys

    src = sys.coeffs

    def monic_coeff(n: int) -> tuple[float, float, float]:
        a, b, c = src(n)
        if n == 0:
            return 1.0, b, 0.0
        a_prev, _, _ = src(n - 1)
        return 1.0, b, c * a_prev

    if target == "monic":
        return RecurrenceSystem(monic_coeff, form="monic", p0=1.0,
                                max_index_hint=sys.max_index_hint)

    if target == "orthonormal":
        def ortho_coeff(n: int) -> tuple[float, float, float]:
            a, b, _ = src(n)
            _, _, c_next = src(n + 1)
            prod = a * c_next
            if prod <= 0:
                raise RecurrenceError(f"Favard violation at n={n}")
            a_new = np.sqrt(prod)
            if n == 0:
                return a_new, b, 0.0
            a_prev, _, _ = src(n - 1)
            _, _, c_cur = src(n)
            return a_new, b, np.sqrt(a_prev * c_cur)

        p0 = sys.p0 / np.sqrt(norms.h[0])
        return RecurrenceSystem(ortho_coeff, form="orthonormal", p0=p0,
                                max_index_hint=sys.max_index_hint)

    # target == "general": restore the k_n chain recorded in norms
    k = norms.k

    def general_coeff(n: int) -> tuple[float, float, float]:
        if n + 1 >= len(k):
            raise RecurrenceError(
                f"norm data exhausted at index {n} (len {len(k)})")
        _, b, c_monic = monic_coeff(n)
        a = k[n] / k[n + 1]
        c = c_monic * k[n] / k[n - 1] if n > 0 else 0.0
        return a, b, c

    return RecurrenceSystem(general_coeff, form="general", p0=float(k[0]),
                            max_index_hint=len(k) - 2)


def _check_norm_consistency(sys: RecurrenceSystem, norms: NormData,
                            rtol: float = 1e-9) -> None:
    m = min(len(norms.h), len(norms.k)) - 1
    for n in range(m):
        a, _, _ = sys.coeffs(n)
        _, _, c_next = sys.coeffs(n + 1)
        if not np.isclose(norms.h[n + 1], norms.h[n] * c_next / a, rtol=rtol):
            raise RecurrenceError(f"inconsistent norms: h chain breaks at n={n}")
        if not np.isclose(norms.k[n + 1], norms.k[n] / a, rtol=rtol):
            raise RecurrenceError(f"inconsistent norms: k chain breaks at n={n}")


@dataclass(frozen=True)
class SymmetryReport:
    all_b_zero: bool
    max_deviation: float


def check_even_symmetry(sys: RecurrenceSystem, n_max: int,
                        samples: Sequence[float]) -> SymmetryReport:
    """Verify p_n(-x) = (-1)^n p_n(x) at the samples when all b_n vanish."""
    all_b_zero = all(sys.coeffs(n)[1] == 0.0 for n in range(n_max + 1))
    worst = 0.0
    if all_b_zero:
        for x in samples:
            plus = eval_all(sys, n_max, float(x))
            minus = eval_all(sys, n_max, -float(x))
            for n in range(n_max + 1):
                scale = max(1.0, abs(plus[n]))
                worst = max(worst, abs(minus[n] - (-1) ** n * plus[n]) / scale)
    return SymmetryReport(all_b_zero=all_b_zero, max_deviation=worst)
