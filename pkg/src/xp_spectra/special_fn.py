"""Complex special-function kernel.

Everything downstream (counting functions, Jost functions, wave functions)
is built out of a small set of primitives collected here:

* the principal-branch complex log-gamma and its first two logarithmic
  derivatives (digamma / trigamma),
* the spectral phases ``theta_pm`` (the phase of the completed zeta /
  Dirichlet L functional equations) together with their classical
  asymptotic expansion,
* the split of the unimodular factor ``exp(2i*theta(E))`` into a part
  analytic in the upper half-plane (``omega_plus``) and a pole-carrying
  part with a closed 1F2 form (``omega_minus``),
* the complementary error function for complex arguments,
* a principal-value (finite Hilbert transform) quadrature with symmetric
  excision of the singularity and tail estimation for decaying or
  oscillatory integrands.

All functions are pure; there is no shared mutable state.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate
from scipy import special as sc

from .config import DEFAULT_TOL, Tolerances

__all__ = [
    "Parity",
    "PhaseValue",
    "AccuracyWarning",
    "SeriesConvergenceWarning",
    "PoleOfGammaError",
    "NonFiniteSampleError",
    "log_gamma_complex",
    "digamma_complex",
    "trigamma_complex",
    "theta_pm",
    "theta_grid",
    "theta_asymptotic",
    "theta_prime",
    "theta_double_prime",
    "exp_2i_theta",
    "hyp1f2",
    "omega_minus",
    "omega_plus",
    "erfc_complex",
    "hilbert_pv",
]

LOG_PI = math.log(math.pi)
TWO_PI = 2.0 * math.pi


class Parity(Enum):
    """Even/odd channel selector (cosine vs sine boundary pairing)."""

    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class PhaseValue:
    """A continuous-branch phase sample.

    ``theta`` is the continuous value (radians); ``branch_index`` counts how
    many full turns separate it from its principal representative in
    (-pi, pi].
    """

    theta: float
    branch_index: int


class AccuracyWarning(UserWarning):
    """Emitted when an evaluation leaves its accuracy-guaranteed region."""


class SeriesConvergenceWarning(UserWarning):
    """Emitted when a series hits its iteration cap before the term-ratio
    stopping criterion."""


class PoleOfGammaError(ValueError):
    """Raised when log-gamma is requested at a non-positive integer."""


class NonFiniteSampleError(ValueError):
    """Raised when a quadrature callback returns NaN or infinity."""


# ---------------------------------------------------------------------------
# log-gamma and polygamma
# ---------------------------------------------------------------------------


def log_gamma_complex(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Backed by the library implementation (Lanczos-class rational
    approximation with reflection); exposed behind this surface so callers
    depend on a single audited entry point.  Raises :class:`PoleOfGammaError`
    at the poles z = 0, -1, -2, ...
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleOfGammaError(f"log-gamma pole at z={z.real:g}")
    return complex(sc.loggamma(z))


def digamma_complex(z: complex) -> complex:
    """Digamma psi(z) for complex z."""
    return complex(sc.digamma(complex(z)))


# Asymptotic tail of psi'(z): 1/z + 1/(2 z^2) + sum B_{2k} / z^{2k+1}
_TRIGAMMA_BERNOULLI = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66)


def trigamma_complex(z: complex) -> complex:
    """Trigamma psi'(z) for complex z (recurrence into the asymptotic zone)."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleOfGammaError(f"trigamma pole at z={z.real:g}")
    acc = 0.0 + 0.0j
    # psi'(z) = psi'(z+1) + 1/z^2; shift until the asymptotic series is safe
    while abs(z) < 12.0 or z.real < 4.0:
        acc += 1.0 / (z * z)
        z = z + 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    tail = inv + 0.5 * inv2
    p = inv * inv2
    for b in _TRIGAMMA_BERNOULLI:
        tail += b * p
        p *= inv2
    return acc + tail


# ---------------------------------------------------------------------------
# spectral phases
# ---------------------------------------------------------------------------


def _gamma_shift(eta: Parity) -> float:
    return 0.25 if eta is Parity.PLUS else 0.75


def theta_pm(E: float, eta: Parity = Parity.PLUS) -> PhaseValue:
    """Spectral phase theta_eta(E).

    The even channel is Im log Gamma(1/4 + iE/2) - (E/2) log pi (the phase of
    the zeta functional equation); the odd channel uses Gamma(3/4 + iE/2).
    Odd in E.  The principal log-gamma is continuous on the vertical line
    Re z = 1/4 (or 3/4), so the returned value is the continuous branch.
    """
    E = float(E)
    if not math.isfinite(E):
        raise ValueError("theta_pm requires finite E")
    c = _gamma_shift(eta)
    th = sc.loggamma(complex(c, 0.5 * E)).imag - 0.5 * E * LOG_PI
    rem = math.remainder(th, TWO_PI)
    return PhaseValue(theta=th, branch_index=round((th - rem) / TWO_PI))


def theta_grid(E: np.ndarray, eta: Parity = Parity.PLUS) -> np.ndarray:
    """Vectorized continuous-branch theta_eta over an energy grid."""
    E = np.asarray(E, dtype=float)
    c = _gamma_shift(eta)
    return sc.loggamma(c + 0.5j * E).imag - 0.5 * E * LOG_PI


def theta_asymptotic(E: float) -> float:
    """Leading asymptotic form (E/2) log(E/2pi) - E/2 - pi/8 (E > 0)."""
    E = float(E)
    if E <= 0.0:
        raise ValueError("theta_asymptotic requires E > 0")
    return 0.5 * E * math.log(E / TWO_PI) - 0.5 * E - math.pi / 8.0


def theta_prime(E: float, eta: Parity = Parity.PLUS) -> float:
    """d theta_eta / dE from the exact digamma of the gamma kernel."""
    c = _gamma_shift(eta)
    return 0.5 * digamma_complex(complex(c, 0.5 * float(E))).real - 0.5 * LOG_PI


def theta_double_prime(E: float, eta: Parity = Parity.PLUS) -> float:
    """d^2 theta_eta / dE^2 from the exact trigamma of the gamma kernel."""
    c = _gamma_shift(eta)
    return -0.25 * trigamma_complex(complex(c, 0.5 * float(E))).imag


def exp_2i_theta(E: complex, eta: Parity = Parity.PLUS) -> complex:
    """exp(2i theta_eta(E)), valid for complex E.

    On the real axis this is the unimodular phase; off the axis it is the
    analytic continuation pi^(-iE) Gamma(c + iE/2) / Gamma(c - iE/2).
    """
    c = _gamma_shift(eta)
    E = complex(E)
    if E.imag == 0.0:
        return complex(np.exp(2j * theta_pm(E.real, eta).theta))
    lg = sc.loggamma(c + 0.5j * E) - sc.loggamma(c - 0.5j * E)
    return complex(np.exp(lg - 1j * E * LOG_PI))


# ---------------------------------------------------------------------------
# 1F2 and the omega split
# ---------------------------------------------------------------------------


def hyp1f2(a: complex, b1: complex, b2: complex, z: complex,
           tol: Tolerances = DEFAULT_TOL) -> complex:
    """Hypergeometric 1F2(a; b1, b2; z) by direct series.

    Terms are accumulated with Neumaier compensation; iteration stops when
    the term ratio drops below ``tol.series_ratio`` (cap
    ``tol.series_max_terms``, with a :class:`SeriesConvergenceWarning` if
    hit).  Intended for the fixed-argument regimes of this package where the
    series converges quickly.
    """
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    comp = 0.0 + 0.0j
    for k in range(tol.series_max_terms):
        term = term * (a + k) / ((b1 + k) * (b2 + k) * (k + 1)) * z
        prev = total
        total = prev + term
        # Neumaier correction keeps the tiny tail terms from being lost
        if abs(prev) >= abs(term):
            comp += (prev - total) + term
        else:
            comp += (term - total) + prev
        if abs(term) <= tol.series_ratio * abs(total):
            break
    else:
        warnings.warn("1F2 series hit its iteration cap", SeriesConvergenceWarning)
    return total + comp


def omega_minus(E: complex, tol: Tolerances = DEFAULT_TOL) -> complex:
    """Pole-carrying component of exp(2i theta(E)).

    Equals 2 * integral_0^1 x^(-1/2+iE) cos(2 pi x) dx, evaluated through its
    closed 1F2 form 4/(1+2iE) * 1F2(1/4 + iE/2; 1/2, 5/4 + iE/2; -pi^2).
    Behaves like -2i/E at large |E| on the real axis.
    """
    E = complex(E)
    a = 0.25 + 0.5j * E
    f = hyp1f2(a, 0.5, a + 1.0, -math.pi ** 2, tol)
    return 4.0 / (1.0 + 2.0j * E) * f


def omega_plus(E: complex, tol: Tolerances = DEFAULT_TOL) -> complex:
    """Upper-half-plane analytic component: exp(2i theta(E)) - omega_minus(E)."""
    return exp_2i_theta(E) - omega_minus(E, tol)


# ---------------------------------------------------------------------------
# complementary error function
# ---------------------------------------------------------------------------

#: radius of the accuracy-guaranteed disk for erfc_complex
ERFC_GUARANTEED_RADIUS = 50.0


def erfc_complex(z: complex) -> complex:
    """Complementary error function for complex z (entire).

    Accuracy is guaranteed for |z| <= 50; outside that disk the value is
    still returned but an :class:`AccuracyWarning` is emitted, since the
    function itself can overflow double precision there.
    """
    z = complex(z)
    if abs(z) > ERFC_GUARANTEED_RADIUS:
        warnings.warn(
            f"erfc_complex outside guaranteed region |z| <= {ERFC_GUARANTEED_RADIUS:g}",
            AccuracyWarning,
        )
    return complex(sc.erfc(z))


# ---------------------------------------------------------------------------
# principal-value quadrature
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


def _gl_panel(f, a: float, b: float) -> complex:
    """15-point Gauss-Legendre on [a, b] for a scalar complex integrand."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * sum(w * f(mid + half * x) for x, w in zip(_GL_NODES, _GL_WEIGHTS))


def _euler_transform(increments: list[complex]) -> complex:
    """Sum an (approximately alternating) sequence by repeated averaging."""
    rows = [np.cumsum(increments)]
    while len(rows[-1]) > 1:
        rows.append(0.5 * (rows[-1][:-1] + rows[-1][1:]))
    return complex(rows[-1][0])


def _local_angular_frequency(f, a: float) -> float:
    """Estimate |d arg f / du| at u = a from a short log-derivative stencil."""
    h = 5e-3
    for shift in (0.0, 0.37, 1.13):
        fm = f(a + shift - h)
        fp = f(a + shift + h)
        if abs(fm) > 1e-300 and abs(fp) > 1e-300:
            ratio = fp / fm
            if abs(ratio) > 0.0:
                return abs(np.log(ratio).imag) / (2.0 * h)
    return 1.0


def _advance_half_period(f, t: float) -> float:
    """Step t forward by one local half-period of f.

    Predictor-corrector: the step uses the frequency at the predicted
    midpoint, so the accumulated phase is pi + O(omega'' * delta^3) instead
    of pi + O(omega' * delta^2); the latter would de-phase binomial
    cancellation at the accuracy levels targeted here.
    """
    om0 = max(_local_angular_frequency(f, t), 5e-2)
    d0 = min(math.pi / om0, 60.0)
    om1 = max(_local_angular_frequency(f, t + 0.5 * d0), 5e-2)
    return t + min(math.pi / om1, 60.0)


def _euler_osc_sum(f, a: float, nterms: int = 24) -> complex:
    """integral_a^inf f(u) du for an oscillation with decaying envelope.

    Integrates successive half-periods and sums the resulting alternating
    increments by Euler averaging, as in classical oscillatory-tail
    accelerators.  The half-period is re-estimated from the local phase
    velocity before every step so that slow frequency drift does not
    de-phase the alternation.
    """
    t = a
    increments = []
    for _ in range(nterms):
        t_next = _advance_half_period(f, t)
        increments.append(_gl_panel(f, t, t_next))
        t = t_next
    return _euler_transform(increments)


def _half_period_ladder(f, u: float, steps: int) -> list[complex]:
    """Samples of f at +-``steps`` cumulative local half-periods around u.

    Uses plain (uncorrected) frequency steps: their placement error is
    slowly varying along the ladder, which the binomial weights cancel,
    whereas locking onto the instantaneous phase of a mixed signal would
    jitter with the smooth/oscillatory interference.
    """
    samples = [f(u)]
    t = u
    for _ in range(steps):
        t = t + math.pi / max(_local_angular_frequency(f, t), 5e-2)
        samples.append(f(t))
    t = u
    for _ in range(steps):
        t = t - math.pi / max(_local_angular_frequency(f, t), 5e-2)
        samples.insert(0, f(t))
    return samples


_BINOM6 = np.array([1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0]) / 64.0


def _deoscillate(f, u: float) -> complex:
    """Local smooth component of f near u.

    A binomial average over cumulative half-period steps cancels the
    oscillatory component to high order (each consecutive pair of samples is
    in near antiphase) while reproducing a slowly varying component at u up
    to second-order stencil error.
    """
    samples = _half_period_ladder(f, u, 3)
    return complex(np.dot(_BINOM6, samples))


def _memoized(f):
    cache: dict[float, complex] = {}

    def wrapped(u: float) -> complex:
        v = cache.get(u)
        if v is None:
            v = f(u)
            cache[u] = v
        return v

    return wrapped


def _oscillatory_tail(f, a: float, nterms: int = 24) -> complex:
    """integral_a^inf f(u) du for an oscillatory integrand.

    A purely oscillatory integrand (no smooth decaying component, as for
    phase-type spectra) is summed directly by Euler acceleration over
    half-periods.  For mixed integrands the smooth component is first
    extracted by the half-period binomial average and integrated with
    decay-aware quadrature; plain Euler summation alone would undercount
    the part of the smooth tail beyond its coverage.
    """
    f = _memoized(f)
    scale = max(abs(f(a)), abs(f(a * 1.5 + 0.71)), abs(f(2.0 * a + 1.3)), 1e-300)
    smooth_probe = max(abs(_deoscillate(f, 1.05 * a)), abs(_deoscillate(f, 1.9 * a)))
    if smooth_probe <= 1e-3 * scale:
        return _euler_osc_sum(f, a, nterms)
    sm = _memoized(lambda u: _deoscillate(f, u))

    def sm_centered(u: float) -> complex:
        # the residual leakage of the binomial average alternates with the
        # half-period of f; averaging two samples a quarter-period either
        # side cancels it without shifting the smooth component
        h = 0.5 * math.pi / max(_local_angular_frequency(f, u), 5e-2)
        return 0.5 * (sm(u - h) + sm(u + h))

    with warnings.catch_warnings():
        # residual de-oscillation leakage looks like unresolvable noise to
        # the adaptive rule; it sits below the accuracy target
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        smooth = _quad_complex(sm_centered, a, np.inf,
                               epsabs=3e-9, epsrel=1e-9, limit=200)
    residual = _euler_osc_sum(lambda u: f(u) - sm(u), a, nterms)
    return smooth + residual


def _quad_complex(f, a, b, **kw) -> complex:
    re, _ = integrate.quad(lambda u: f(u).real, a, b, **kw)
    im, _ = integrate.quad(lambda u: f(u).imag, a, b, **kw)
    return complex(re, im)


def hilbert_pv(samples, E: float, window: float = DEFAULT_TOL.pv_window,
               tail: str = "auto", tol: Tolerances = DEFAULT_TOL) -> complex:
    """Principal value of  (1/(pi i)) * P int g(t) / (t - E) dt.

    The core window [E-window, E+window] is folded into the symmetric
    difference  int_0^window (g(E+u) - g(E-u))/u du  so the odd singular part
    cancels exactly; in particular a constant integrand yields 0 to rounding.

    ``tail`` selects how the |t-E| > window remainder is estimated:

    * ``"none"``     - windowed value only,
    * ``"decay"``    - adaptive quadrature of the symmetric difference out to
      infinity (magnitude-decaying integrands),
    * ``"osc"``      - Euler-accelerated half-period summation on each side
      (bounded oscillatory integrands such as pure phases),
    * ``"auto"``     - probe the integrand and pick one of the above.
    """
    E = float(E)
    if window <= 0.0:
        raise ValueError("window must be positive")

    def sym_diff(u: float) -> complex:
        if u == 0.0:
            u = 1e-9 * max(1.0, abs(E))
        return (samples(E + u) - samples(E - u)) / u

    probes = [samples(E + window), samples(E - window),
              samples(E + 3.0 * window), samples(E - 3.0 * window)]
    if not all(np.isfinite(p) for p in probes):
        raise NonFiniteSampleError("integrand returned a non-finite sample")

    core = _quad_complex(sym_diff, 0.0, window,
                         epsabs=0.1 * tol.quad_abs, epsrel=tol.quad_rel,
                         limit=800)

    if tail == "auto":
        near = max(abs(probes[0]), abs(probes[1]))
        far = max(abs(probes[2]), abs(probes[3]))
        diff_near = abs(probes[0] - probes[1])
        diff_far = abs(probes[2] - probes[3])
        scale = max(near, far, 1e-300)
        if diff_near <= 1e-13 * scale and diff_far <= 1e-13 * scale:
            tail = "none"  # constant (or dead) tails cancel identically
        elif far <= 0.6 * near or far <= 1e-14:
            tail = "decay"
        else:
            tail = "osc"

    if tail == "none":
        tail_val = 0.0 + 0.0j
    elif tail == "decay":
        tail_val = _quad_complex(sym_diff, window, np.inf,
                                 epsabs=0.1 * tol.quad_abs, epsrel=tol.quad_rel,
                                 limit=400)
    elif tail == "osc":
        upper = _oscillatory_tail(lambda u: samples(E + u) / u, window)
        lower = _oscillatory_tail(lambda u: samples(E - u) / u, window)
        tail_val = upper - lower
    else:
        raise ValueError(f"unknown tail mode {tail!r}")

    return (core + tail_val) / (1j * math.pi)
