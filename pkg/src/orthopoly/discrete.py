"""Discrete orthogonal families: Krawtchouk, Hahn, Meixner, Charlier.

Each family carries its weight on an integer lattice, a terminating
hypergeometric evaluation, and a three-point difference equation whose
coefficients are documented here per family and verified in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .families import FamilyError, hyp, pochhammer
from .measures import Measure, discrete_infinite_measure, discrete_measure
from .recurrence import RecurrenceSystem

_DISCRETE = ("krawtchouk", "hahn", "meixner", "charlier")


@dataclass(frozen=True)
class DiscreteFamily:
    """Discrete family tag with parameter record and lattice support."""

    family: str
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        f, p = self.family, self.parameters
        if f not in _DISCRETE:
            raise FamilyError(f"unknown discrete family {f!r}")
        if f == "krawtchouk":
            if not 0 < p["p"] < 1:
                raise FamilyError("krawtchouk requires 0 < p < 1")
            if p["N"] < 1 or p["N"] != int(p["N"]):
                raise FamilyError("krawtchouk requires integer N >= 1")
        elif f == "hahn":
            if p["alpha"] <= -1 or p["beta"] <= -1:
                raise FamilyError("hahn requires alpha, beta > -1")
            if p["N"] < 1 or p["N"] != int(p["N"]):
                raise FamilyError("hahn requires integer N >= 1")
        elif f == "meixner":
            if p["beta"] <= 0 or not 0 < p["c"] < 1:
                raise FamilyError("meixner requires beta > 0 and 0 < c < 1")
        elif f == "charlier":
            if p["a"] <= 0:
                raise FamilyError("charlier requires a > 0")

    def __getattr__(self, name):
        try:
            return self.parameters[name]
        except KeyError:
            raise AttributeError(name) from None

    @property
    def degree_bound(self) -> int | None:
        if self.family in ("krawtchouk", "hahn"):
            return int(self.parameters["N"])
        return None


def krawtchouk(p: float, N: int) -> DiscreteFamily:
    return DiscreteFamily("krawtchouk", {"p": float(p), "N": int(N)})


def hahn(alpha: float, beta: float, N: int) -> DiscreteFamily:
    return DiscreteFamily("hahn", {"alpha": float(alpha),
                                   "beta": float(beta), "N": int(N)})


def meixner(beta: float, c: float) -> DiscreteFamily:
    return DiscreteFamily("meixner", {"beta": float(beta), "c": float(c)})


def charlier(a: float) -> DiscreteFamily:
    return DiscreteFamily("charlier", {"a": float(a)})


# ---------------------------------------------------------------------------
# evaluation and weights

def discrete_eval(fam: DiscreteFamily, n: int, x: float) -> float:
    """Value of the degree-n family member at x (x need not be a lattice point)."""
    if n < 0:
        raise FamilyError("degree must be non-negative")
    bound = fam.degree_bound
    if bound is not None and n > bound:
        raise FamilyError(f"degree {n} exceeds family bound N={bound}")
    f = fam.family
    if f == "krawtchouk":
        return hyp([-n, -x], [-fam.N], 1.0 / fam.p, terms=n)
    if f == "hahn":
        return hyp([-n, n + fam.alpha + fam.beta + 1, -x],
                   [fam.alpha + 1, -fam.N], 1.0, terms=n)
    if f == "meixner":
        return hyp([-n, -x], [fam.beta], 1.0 - 1.0 / fam.c, terms=n)
    # charlier: 2F0(-n, -x; ; -1/a)
    return hyp([-n, -x], [], -1.0 / fam.a, terms=n)


def discrete_weight(fam: DiscreteFamily, x: int) -> float:
    """Lattice weight w_x."""
    if x != int(x) or x < 0:
        raise FamilyError(f"{x} is not in the lattice support")
    x = int(x)
    f = fam.family
    if f == "krawtchouk":
        N, p = fam.N, fam.p
        if x > N:
            raise FamilyError(f"{x} outside support 0..{N}")
        return math.comb(N, x) * p ** x * (1 - p) ** (N - x)
    if f == "hahn":
        N, a, b = fam.N, fam.alpha, fam.beta
        if x > N:
            raise FamilyError(f"{x} outside support 0..{N}")
        return (pochhammer(a + 1, x) / math.factorial(x)
                * pochhammer(b + 1, N - x) / math.factorial(N - x))
    if f == "meixner":
        return (pochhammer(fam.beta, x) * fam.c ** x / math.factorial(x))
    return fam.a ** x / math.factorial(x)


def family_measure(fam: DiscreteFamily, normalized: bool = False) -> Measure:
    """Orthogonality measure on the lattice; `normalized` applies e^{-a} for
    Charlier (the other families are left as displayed)."""
    f = fam.family
    if f in ("krawtchouk", "hahn"):
        nodes = np.arange(fam.N + 1, dtype=float)
        weights = np.array([discrete_weight(fam, k) for k in range(fam.N + 1)])
        return discrete_measure(nodes, weights, meta={"name": f,
                                                      **fam.parameters})
    if f == "charlier":
        a = fam.a

        def tail(k: int) -> float:
            # sum_{x > k} a^x/x! <= a^{k+1}/(k+1)! * 1/(1 - a/(k+2))
            if k + 2 <= a:
                return math.exp(a)
            head = a ** (k + 1) / math.factorial(k + 1)
            return head / (1 - a / (k + 2))

        norm = math.exp(-a) if normalized else 1.0
        return discrete_infinite_measure(float, lambda k: a ** k / math.factorial(k),
                                         tail, normalizer=norm,
                                         meta={"name": "charlier", "a": a})
    beta, c = fam.beta, fam.c

    def w(k: int) -> float:
        return pochhammer(beta, k) * c ** k / math.factorial(k)

    def tail(k: int) -> float:
        # ratio w_{x+1}/w_x = c (beta+x)/(x+1) is eventually < r < 1
        r = c * (beta + k + 1) / (k + 2)
        if r >= 1:
            return math.inf
        return w(k + 1) / (1 - r)

    return discrete_infinite_measure(float, w, tail,
                                     meta={"name": "meixner",
                                           "beta": beta, "c": c})


# ---------------------------------------------------------------------------
# difference equations

def difference_residual(fam: DiscreteFamily, n: int, x: float) -> float:
    """Scaled residual of A(x) p_n(x-1) + B(x) p_n(x) + C(x) p_n(x+1)
    = lambda_n p_n(x).

    Coefficient choices, verified against the series in the tests:
    charlier    A=x, C=a, B=-x-a, lambda_n=-n
    krawtchouk  A=x(1-p), C=p(N-x), B=-(A+C), lambda_n=-n
    meixner     A=x, C=c(x+beta), B=-(A+C), lambda_n=n(c-1)
    hahn        A=x(x-beta-N-1), C=(x+alpha+1)(x-N), B=-(A+C),
                lambda_n=n(n+alpha+beta+1)
    """
    f = fam.family
    if f == "charlier":
        A, C, lam = x, fam.a, -float(n)
    elif f == "krawtchouk":
        A, C, lam = x * (1 - fam.p), fam.p * (fam.N - x), -float(n)
    elif f == "meixner":
        A, C, lam = x, fam.c * (x + fam.beta), n * (fam.c - 1)
    else:  # hahn
        A = x * (x - fam.beta - fam.N - 1)
        C = (x + fam.alpha + 1) * (x - fam.N)
        lam = n * (n + fam.alpha + fam.beta + 1)
    B = -(A + C)
    terms = [A * discrete_eval(fam, n, x - 1),
             B * discrete_eval(fam, n, x),
             C * discrete_eval(fam, n, x + 1),
             -lam * discrete_eval(fam, n, x)]
    scale = max(max(abs(t) for t in terms), 1.0)
    return sum(terms) / scale


def hahn_to_jacobi_limit(n: int, alpha: float, beta: float, N: int,
                         x: float) -> float:
    """Error of Q_n(Nx) against its hypergeometric limit as N grows."""
    if not 0.0 <= x <= 1.0:
        raise FamilyError("need x in [0, 1]")
    lhs = discrete_eval(hahn(alpha, beta, N), n, N * x)
    rhs = hyp([-n, n + alpha + beta + 1], [alpha + 1], x, terms=n)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Charlier recurrence

def charlier_system(a: float) -> RecurrenceSystem:
    """Three-term recurrence of the Charlier polynomials c_n(x; a)."""
    if a <= 0:
        raise FamilyError("charlier requires a > 0")
    return RecurrenceSystem(lambda n: (-a, n + a, -float(n)),
                            form="general", p0=1.0)


def charlier_norms(a: float, n: int) -> float:
    """h_n = a^{-n} n! under the e^{-a}-normalized weight."""
    return a ** -n * math.factorial(n)
