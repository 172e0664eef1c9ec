"""Numerical verification of the determinacy machinery's lemmas and
proof-internal inequality chains.

Covers: the supremum identity sup_y (n log y - eps y) = n log n - n log(eps e)
and its integral corollary; the recursion-to-bound lemma
a_n <= c (n log n) a_{n-1} + b^n  =>  a_n <= d0 c^n (n log n)^n with
d0 = a1/c + exp(b/c); the derived constants beta, eps, c-bar, b-bar, n0;
the integral I(x-hat0) = int x^n (f(x) - f(x+phi(x))) dx with its lower
bound (1-beta) mu_n^+ - x-hat0^n and upper bound
3 C+ (n log n) mu_{n-1}^+ + C+ eps mu_n^+ + y-hat0^n; the empirical moment
recursion; and the half-line-to-full-line symmetrization f(x) = |x| g(x^2)
with its moment identity E[X^{2n}] = E[Y^n].

Anywhere the mathematics subtracts large same-sign quantities (the lower
bound above at n = 40 scales), signed log arithmetic is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .densities import SupportKind, TailDensity
from .errors import InputError, ProofCheckError
from .logspace import LOG_ZERO, SignedLog, signed_sub
from .moments import MomentTable, Side, log_abs_moment
from .phi import ConditionCertificate, PhiSpec, forward
from .quadrature import log_integral

_REL_TOL_LOG = 1e-9  # additive tolerance on log-space inequality checks


# ---------------------------------------------------------------------------
# Lemma 1: sup of n log y - eps y
# ---------------------------------------------------------------------------

def lemma1_sup(n: int, eps: float) -> tuple[float, float]:
    """(numeric_max, formula_value) for sup_{y>0} (n log y - eps y).

    The numeric side is an independent golden-section search; the formula
    side is n log n - n log(eps e).  Their agreement (to 1e-10 relative)
    and the bound numeric_max <= 2 n log n for n >= 1/(eps e) are checked
    here and raise ProofCheckError on failure.
    """
    if n < 1 or int(n) != n:
        raise InputError(f"n must be a positive integer, got {n}")
    if not eps > 0.0:
        raise InputError(f"eps must be positive, got {eps}")
    n = int(n)

    def g(y: float) -> float:
        return n * math.log(y) - eps * y

    y_bar = n / eps
    numeric = _golden_max_scalar(g, 1e-12 * y_bar, 10.0 * y_bar)
    formula = n * math.log(n) - n * (math.log(eps) + 1.0)

    if abs(numeric - formula) > 1e-10 * max(1.0, abs(formula)):
        raise ProofCheckError(
            f"sup identity failed at n={n}, eps={eps}: "
            f"numeric {numeric!r} vs formula {formula!r}")
    if n >= 1.0 / (eps * math.e) - 1e-12:
        bound = 2.0 * n * math.log(n)
        if numeric > bound + 1e-10 * max(1.0, abs(bound)):
            raise ProofCheckError(
                f"sup bound 2 n log n failed at n={n}, eps={eps}: "
                f"{numeric!r} > {bound!r}")
    return numeric, formula


def _golden_max_scalar(g, lo: float, hi: float, iters: int = 120) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = g(c), g(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = g(d)
    return g(0.5 * (a + b))


def lemma1_integral_bound(d: TailDensity, n: int, eps: float,
                          y_plus: float) -> tuple[float, float]:
    """Both sides of the integral corollary, as logs:

    lhs = n int_{y+}^inf y^{n-1} log(y) f(y) dy
    rhs = 2 n log n int_{y+}^inf y^{n-1} f dy + eps int_{y+}^inf y^n f dy

    Quadrature in log space; asserts lhs <= rhs.  Requires n >= 1/(eps e)
    (hypothesis of the lemma) and y_plus >= 1 (keeps the lhs integrand
    sign-definite in log space).
    """
    if n < 1.0 / (eps * math.e) - 1e-12:
        raise InputError(
            f"lemma hypothesis violated: n={n} < 1/(eps e)={1.0 / (eps * math.e):.6g}")
    if y_plus < 1.0 - 1e-12:
        raise InputError(f"y_plus must be >= 1, got {y_plus}")
    n = int(n)

    def lf(x):
        return np.asarray(d.log_f(x), dtype=float)

    def lhs_psi(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return (n - 1.0) * np.log(x) + np.log(np.log(x)) + lf(x)

    def mom_psi(k):
        def psi(x):
            x = np.asarray(x, dtype=float)
            with np.errstate(divide="ignore"):
                return k * np.log(x) + lf(x)
        return psi

    lhs = math.log(n) + log_integral(lhs_psi, y_plus)
    j_nm1 = log_integral(mom_psi(n - 1), y_plus)
    j_n = log_integral(mom_psi(n), y_plus)
    rhs = float(np.logaddexp(math.log(2.0 * n) + math.log(math.log(n)) + j_nm1,
                             math.log(eps) + j_n)) if n > 1 else \
        float(np.logaddexp(LOG_ZERO, math.log(eps) + j_n))
    if lhs > rhs + _REL_TOL_LOG:
        raise ProofCheckError(
            f"lemma integral bound failed for {d.label}, n={n}, eps={eps}, "
            f"y_plus={y_plus}: log lhs {lhs!r} > log rhs {rhs!r}")
    return lhs, rhs


# ---------------------------------------------------------------------------
# Lemma 2: recursion => factorial-type bound
# ---------------------------------------------------------------------------

def lemma2_extremal_log_sequence(c: float, b: float, a1: float,
                                 n_max: int) -> np.ndarray:
    """log a_n for the equality-case sequence a_n = c (n log n) a_{n-1} + b^n,
    n = 1..n_max (the worst case: any sequence satisfying the hypothesis is
    dominated by it)."""
    if not (c > 0.0 and b > 0.0 and a1 > 0.0):
        raise InputError("c, b, a1 must be positive")
    if n_max < 2:
        raise InputError("n_max must be >= 2")
    out = np.empty(n_max)
    out[0] = math.log(a1)
    lc, lb = math.log(c), math.log(b)
    for n in range(2, n_max + 1):
        grow = lc + math.log(n * math.log(n)) + out[n - 2]
        out[n - 1] = float(np.logaddexp(grow, n * lb))
    return out


def lemma2_bound_check(c: float, b: float, a1: float, n_max: int,
                       d0_log: Optional[float] = None) -> float:
    """Minimum over n = 2..n_max of log(d0 c^n (n log n)^n) - log(a_n) for
    the extremal sequence; nonnegative iff the bound holds throughout.
    d0_log overrides log(d0) for negative controls."""
    log_a = lemma2_extremal_log_sequence(c, b, a1, n_max)
    if d0_log is None:
        d0_log = float(np.logaddexp(math.log(a1) - math.log(c), b / c))
    n = np.arange(2, n_max + 1, dtype=float)
    log_bound = d0_log + n * math.log(c) + n * np.log(n * np.log(n))
    return float(np.min(log_bound - log_a[1:]))


# ---------------------------------------------------------------------------
# Constants of the Theorem 1 / Theorem 3 recursion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecursionConstants:
    beta: float
    eps: float
    c_plus: float
    x_hat0: float
    y_hat0: float
    c_bar: float
    b_bar: float
    n0: int


def recursion_constants(gamma_plus: float, cert: ConditionCertificate,
                        x_hat0: float, phi: PhiSpec) -> RecursionConstants:
    """beta = (1+gamma_+)/2, eps = half of min((1-beta)/C+, 1/(2e)),
    c-bar = 3 C+/(1-beta-C+ eps), b-bar = (x-hat0+y-hat0)/(1-beta-C+ eps),
    n0 = smallest integer >= max(2, 1/(eps e))."""
    if not gamma_plus < 1.0:
        raise InputError(
            f"gamma_+ must be < 1 for the constants to exist, got {gamma_plus}")
    if not cert.valid:
        raise InputError("condition certificate is not valid")
    y_hat0 = float(forward(phi, x_hat0))
    if y_hat0 < cert.y_star * (1.0 - 1e-12):
        raise InputError(
            f"x_hat0={x_hat0} gives y_hat0={y_hat0} below y*={cert.y_star}")
    beta = 0.5 * (1.0 + max(gamma_plus, 0.0))
    eps_cap = min((1.0 - beta) / cert.c_plus, 1.0 / (2.0 * math.e))
    eps = 0.5 * eps_cap
    denom = 1.0 - beta - cert.c_plus * eps
    if denom <= 0.0:
        raise ProofCheckError("denominator 1-beta-C+eps not positive")
    return RecursionConstants(
        beta=beta, eps=eps, c_plus=cert.c_plus, x_hat0=float(x_hat0),
        y_hat0=y_hat0, c_bar=3.0 * cert.c_plus / denom,
        b_bar=(float(x_hat0) + y_hat0) / denom,
        n0=max(2, math.ceil(1.0 / (eps * math.e) - 1e-12)))


def select_x_hat0(d: TailDensity, phi: PhiSpec, beta: float, y_star: float,
                  x_end: float = 1e6, points: int = 2000) -> Optional[float]:
    """Smallest grid point past which the empirical plus-tail ratio stays
    <= beta and whose image y(x) clears y*; None when the grid shows no
    such point (the proof-integral checks are then skipped)."""
    x_start = max(d.x0, phi.x_min)
    grid = np.geomspace(x_start, x_end, points)
    diffs = (np.asarray(d.log_f(grid + phi.phi(grid)), dtype=float)
             - np.asarray(d.log_f(grid), dtype=float))
    ok = diffs <= math.log(beta)
    suffix = np.logical_and.accumulate(ok[::-1])[::-1]
    ys = grid + phi.phi(grid)
    cand = suffix & (ys >= y_star * (1.0 - 1e-12))
    if not np.any(cand):
        return None
    return float(grid[int(np.argmax(cand))])


# ---------------------------------------------------------------------------
# The integral I(x-hat0) and its two-sided bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProofIntegralResult:
    n: int
    log_i: float
    lower: SignedLog  # (1-beta) mu_n^+ - x_hat0^n, signed log
    log_upper: float


def _log1mexp_vec(delta: np.ndarray) -> np.ndarray:
    out = np.empty_like(delta)
    big = delta > -math.log(2.0)
    with np.errstate(all="ignore"):
        out[big] = np.log(-np.expm1(delta[big]))
        out[~big] = np.log1p(-np.exp(delta[~big]))
    return out


def proof_integral_bounds(d: TailDensity, phi: PhiSpec,
                          rc: RecursionConstants, n: int
                          ) -> ProofIntegralResult:
    """Verify lower <= I(x_hat0) <= upper at order n >= n0, all three in
    log space; raises ProofCheckError with the three values on failure
    (a failure signals either a bug or a density violating the ratio
    hypothesis beyond x_hat0)."""
    if n < rc.n0:
        raise InputError(f"n={n} below n0={rc.n0} (the sup-lemma step "
                         "requires n >= 1/(eps e))")
    n = int(n)

    def psi(x):
        x = np.asarray(x, dtype=float)
        ph = phi.phi(x)
        lf_x = np.asarray(d.log_f(x), dtype=float)
        delta = np.asarray(d.log_f(x + ph), dtype=float) - lf_x
        # where the step falls within ~1000 ulps of x, the computed delta is
        # rounding noise: bound the factor 1 - e^delta by 1 there instead
        collapsed = ph < x * 2.2e-13
        if np.any(~collapsed & (delta >= -1e-15)):
            raise ProofCheckError(
                f"ratio f(x+phi)/f(x) not below 1 on the integration range "
                f"(density {d.label} violates the hypothesis past x_hat0)")
        log_factor = np.zeros_like(delta)
        good = ~collapsed
        log_factor[good] = _log1mexp_vec(delta[good])
        with np.errstate(divide="ignore"):
            return n * np.log(x) + lf_x + log_factor

    log_i = log_integral(psi, rc.x_hat0)

    log_mu_n = log_abs_moment(d, n, Side.PLUS)
    log_mu_nm1 = log_abs_moment(d, n - 1, Side.PLUS)
    lower = signed_sub(
        SignedLog.from_log(math.log(1.0 - rc.beta) + log_mu_n),
        SignedLog.from_log(n * math.log(rc.x_hat0)))
    log_upper = float(np.logaddexp.reduce([
        math.log(3.0 * rc.c_plus) + math.log(n * math.log(n)) + log_mu_nm1,
        math.log(rc.c_plus * rc.eps) + log_mu_n,
        n * math.log(rc.y_hat0)]))

    lower_ok = lower.sign <= 0 or lower.log_abs <= log_i + _REL_TOL_LOG
    upper_ok = log_i <= log_upper + _REL_TOL_LOG
    if not (lower_ok and upper_ok):
        raise ProofCheckError(
            f"integral chain failed for {d.label} at n={n}: "
            f"lower={lower!r}, log I={log_i!r}, log upper={log_upper!r}")
    return ProofIntegralResult(n=n, log_i=log_i, lower=lower,
                               log_upper=log_upper)


def empirical_recursion_check(table: MomentTable, rc: RecursionConstants,
                              n_lo: Optional[int] = None,
                              n_hi: Optional[int] = None) -> float:
    """Minimum log-slack of mu_n^+ <= c-bar (n log n) mu_{n-1}^+ + b-bar^n
    over n in [n_lo, n_hi] (defaults [n0, n_max]); negative means the
    recursion failed somewhere (expected under falsified constants)."""
    n_lo = rc.n0 if n_lo is None else max(n_lo, 2)
    n_hi = table.n_max if n_hi is None else min(n_hi, table.n_max)
    if n_hi < n_lo:
        raise InputError(f"empty order range [{n_lo}, {n_hi}]")
    worst = math.inf
    for n in range(n_lo, n_hi + 1):
        rhs = float(np.logaddexp(
            math.log(rc.c_bar) + math.log(n * math.log(n))
            + table.log_mu_plus[n - 2],
            n * math.log(rc.b_bar)))
        worst = min(worst, rhs - table.log_mu_plus[n - 1])
    return worst


# ---------------------------------------------------------------------------
# Symmetrization (half line -> full line)
# ---------------------------------------------------------------------------

def symmetrize(g: TailDensity) -> TailDensity:
    """The symmetric full-line density f(x) = |x| g(x^2) whose even raw
    moments are the half-line density's raw moments."""
    if g.support is not SupportKind.STIELTJES:
        raise InputError("symmetrize expects a half-line density")

    def log_f(x):
        ax = np.abs(np.asarray(x, dtype=float))
        with np.errstate(divide="ignore"):
            val = np.log(ax) + np.asarray(g.log_f(ax * ax), dtype=float)
        return np.where(ax == 0.0, -math.inf, val)

    return TailDensity(support=SupportKind.HAMBURGER,
                       x0=math.sqrt(g.x0), log_f=log_f,
                       label=f"symmetrized[{g.label}]")


def check_moment_identity(g: TailDensity, n_max: int) -> float:
    """Max over n <= n_max of |log E[X^{2n}] - log E[Y^n]|, with both sides
    computed independently by quadrature (X the symmetrized variable, Y the
    original).  Also asserts the odd moments of X vanish by symmetry
    (mu_k^+ == mu_k^- exactly, same quadrature on identical integrands).
    Raises ProofCheckError beyond 1e-6."""
    if n_max < 1:
        raise InputError("n_max must be >= 1")
    f = symmetrize(g)
    worst = 0.0
    for k in range(1, 2 * n_max + 1):
        plus = log_abs_moment(f, k, Side.PLUS)
        minus = log_abs_moment(f, k, Side.MINUS)
        if plus != minus:
            raise ProofCheckError(
                f"symmetrized one-sided moments differ at k={k}: "
                f"{plus!r} vs {minus!r}")
        if k % 2 == 0:
            log_even = float(np.logaddexp(plus, minus))
            log_y = log_abs_moment(g, k // 2, Side.PLUS)
            worst = max(worst, abs(log_even - log_y))
    if worst > 1e-6:
        raise ProofCheckError(
            f"moment identity E[X^2n] = E[Y^n] violated: max log "
            f"difference {worst:.3e}")
    return worst
