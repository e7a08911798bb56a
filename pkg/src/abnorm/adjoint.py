"""Independent PMP oracle for the adjoint system along an abnormal curve:
fixed-step integration cross-checked against the matrix exponential,
closed-form solutions of the second-order equation for the first covector
component, and the search for a bounded normal-witness covector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq, minimize_scalar

from .seminorm import SeminormBody
from .subspace import CanonicalBasis

try:  # compiled kernel, with pure-Python fallback selected at import
    from ._ode_kernel import rk4_trajectory

    KERNEL = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    from ._ode_python import rk4_trajectory

    KERNEL = "python"

#: coefficients below this magnitude are treated as structurally zero
ZERO_TOL = 1e-9
#: tolerance of the support identity F_U(psi1, psi2) = 1 on the time grid
SUPPORT_TOL = 1e-7


def system_matrix(c23, u2: float) -> np.ndarray:
    """Right-hand side of the adjoint system; psi2' = 0 identically."""
    c1, c2, c3 = float(c23[0]), float(c23[1]), float(c23[2])
    return u2 * np.array(
        [
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [c1, c2, c3, 0.0],
            [0.0, 0.0, c2, c3],
        ]
    )


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    psi: np.ndarray        # RK4 states, shape (n+1, 4)
    psi_exact: np.ndarray  # matrix-exponential states
    max_deviation: float


def integrate(c23, u2: float, psi0, T: float, dt: float) -> Trajectory:
    """Fixed-step RK4 plus the exact matrix-exponential solution."""
    if dt <= 0 or T <= 0:
        raise ValueError("T and dt must be positive")
    a = system_matrix(c23, u2)
    n = max(1, int(round(T / dt)))
    t = np.arange(n + 1) * dt
    psi0 = np.asarray(psi0, dtype=float)
    psi = rk4_trajectory(a, psi0, dt, n)
    step = expm(a * dt)
    exact = np.empty_like(psi)
    exact[0] = psi0
    for i in range(n):
        exact[i + 1] = step @ exact[i]
    dev = float(np.max(np.abs(psi - exact)))
    return Trajectory(t=t, psi=psi, psi_exact=exact, max_deviation=dev)


@dataclass(frozen=True)
class ClosedFormPsi1:
    case: str            # B_pos | B_zero | B_neg | C1_zero
    a1: float
    a2: float
    discriminant: float
    roots: tuple         # (lambda1, lambda2) or (rate,) or ()
    frequency: float | None
    evaluate: object

    def __call__(self, t):
        return self.evaluate(t)


def closed_form_psi1(c23, u2: float, a1: float, a2: float) -> ClosedFormPsi1:
    """General solution of psi1'' - u2 C323 psi1' + u2^2 C123 psi1 + u2 C223 = 0,
    split by the discriminant B = (C323)^2 - 4 C123 when C123 != 0."""
    c1, c2, c3 = float(c23[0]), float(c23[1]), float(c23[2])
    b = c3 * c3 - 4.0 * c1
    if abs(c1) > ZERO_TOL:
        if abs(c2) > ZERO_TOL:
            raise ValueError("closed form expects the C223 = 0 normalization when C123 != 0")
        if b > ZERO_TOL:
            lam1 = u2 * (c3 + math.sqrt(b)) / 2.0
            lam2 = u2 * (c3 - math.sqrt(b)) / 2.0
            fn = lambda t: a1 * np.exp(lam1 * t) + a2 * np.exp(lam2 * t)
            case, roots, freq = "B_pos", (lam1, lam2), None
        elif b < -ZERO_TOL:
            rate = 0.5 * c3 * u2
            omega = u2 * math.sqrt(-b) / 2.0
            fn = lambda t: np.exp(rate * t) * (a1 * np.cos(omega * t) + a2 * np.sin(omega * t))
            case, roots, freq = "B_neg", (rate,), omega
        else:
            rate = 0.5 * c3 * u2
            fn = lambda t: (a1 * np.asarray(t) + a2) * np.exp(rate * t)
            case, roots, freq = "B_zero", (rate,), None
    else:
        if abs(c3) > ZERO_TOL:
            rate = c3 * u2
            fn = lambda t: a1 * np.exp(rate * t) + (c2 / c3) * np.asarray(t) + a2
            case, roots, freq = "C1_zero", (rate,), None
        else:
            fn = lambda t: -0.5 * c2 * u2 * np.asarray(t) ** 2 + a1 * np.asarray(t) + a2
            case, roots, freq = "C1_zero", (), None
    return ClosedFormPsi1(case=case, a1=a1, a2=a2, discriminant=b,
                          roots=roots, frequency=freq, evaluate=fn)


def _solve_support_level(body: SeminormBody, height: float) -> float | None:
    """Some k with F_U(k, height) = 1, or None if the slice misses level 1."""

    def f(k):
        return body.support((k, height)) - 1.0

    if abs(f(0.0)) <= ZERO_TOL:
        return 0.0
    res = minimize_scalar(f, bounds=(-1e3, 1e3), method="bounded")
    kmin, fmin = float(res.x), float(res.fun)
    if fmin > SUPPORT_TOL:
        return None
    if fmin > -ZERO_TOL:
        # tangency: the slice touches level 1 exactly at the minimizer
        return kmin
    hi = max(abs(kmin) + 1.0, 1.0)
    while f(kmin + hi) < 0:
        hi *= 2.0
        if hi > 1e9:
            return None
    return float(brentq(f, kmin, kmin + hi, xtol=1e-12))


def _max_flat_amplitude(body: SeminormBody, height: float) -> float:
    """Largest r with F_U(x, height) = 1 for every x in [-r, r] (0 if none)."""
    if abs(body.support((0.0, height)) - 1.0) > SUPPORT_TOL:
        return 0.0

    def flat(r):
        xs = np.linspace(-r, r, 41)
        return all(abs(body.support((x, height)) - 1.0) <= SUPPORT_TOL for x in xs)

    if not flat(1e-9):
        return 0.0
    lo, hi = 0.0, 1e-6
    while flat(hi) and hi < 1e6:
        lo, hi = hi, hi * 2.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if flat(mid):
            lo = mid
        else:
            hi = mid
    # a smooth strictly convex slice passes the tolerance for
    # |x| < sqrt(2 * SUPPORT_TOL / curvature); treat that slop as zero
    if lo <= 10.0 * math.sqrt(SUPPORT_TOL):
        return 0.0
    return lo


@dataclass(frozen=True)
class Witness:
    """Constant part of a bounded normal covector certifying non-strictness."""

    s: int
    u2: float
    k: float
    phi4: float
    amplitude_max: float  # nonzero only for the oscillatory flat-slice family
    psi0: np.ndarray

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "u2": self.u2,
            "k": self.k,
            "phi4": self.phi4,
            "amplitude_max": self.amplitude_max,
        }


def default_horizon(c23, u2: float) -> float:
    c1, c3 = float(c23[0]), float(c23[2])
    b = c3 * c3 - 4.0 * c1
    if b < -ZERO_TOL:
        return 2.0 * math.pi * max(1.0, 2.0 / (abs(u2) * math.sqrt(-b)))
    return 5.0


def witness_search(
    basis: CanonicalBasis,
    body: SeminormBody,
    s: int,
    T: float | None = None,
    grid: int = 1001,
) -> Witness | None:
    """Decide existence of a bounded PMP covector with psi2 = 1/u2 and
    F_U(psi1(t), 1/u2) = 1 on [0, T].

    Boundedness is decided analytically from the characteristic roots of
    the closed-form family; bounded branches are verified on a time grid.
    """
    if s not in (1, -1):
        raise ValueError("s must be +1 or -1")
    f_se2 = body.gauge((0.0, float(s)))
    if f_se2 <= 0:
        raise ValueError("degenerate seminorm on the e2 axis")
    u2 = s / f_se2
    height = 1.0 / u2
    c23 = np.where(np.abs(basis.c23[:3]) > ZERO_TOL, basis.c23[:3], 0.0)
    c1, c2, c3 = c23
    if c1 != 0.0 and c2 != 0.0:
        raise ValueError("canonical basis must have C223 = 0 when C123 != 0")
    if T is None:
        T = default_horizon(c23, u2)

    if c1 == 0.0 and c2 == 0.0:
        # every bounded branch is a constant psi1 = k; one always exists
        k = _solve_support_level(body, height)
        if k is None or abs(body.support((k, height)) - 1.0) > SUPPORT_TOL:
            return None
        return Witness(s=s, u2=u2, k=k, phi4=1.0, amplitude_max=0.0,
                       psi0=np.array([k, height, 0.0, 1.0]))

    if c1 == 0.0:
        # C223 != 0 forces an unbounded drift (linear or parabolic) in
        # every branch of the general solution
        return None

    # C123 != 0: the only bounded branches are psi1 = 0 and, when the
    # roots are purely imaginary, oscillations around 0
    b = c3 * c3 - 4.0 * c1
    oscillatory = c3 == 0.0 and b < 0.0
    if abs(body.support((0.0, height)) - 1.0) > SUPPORT_TOL:
        return None
    amp = 0.0
    if oscillatory:
        amp = _max_flat_amplitude(body, height)
        if amp > 0.0:
            # verify the support identity along one full oscillation
            omega = abs(u2) * math.sqrt(-b) / 2.0
            ts = np.linspace(0.0, 2.0 * math.pi / omega, grid)
            psi1 = amp * np.cos(omega * ts)
            if not all(abs(body.support((x, height)) - 1.0) <= SUPPORT_TOL for x in psi1):
                amp = 0.0
    return Witness(s=s, u2=u2, k=0.0, phi4=1.0, amplitude_max=amp,
                   psi0=np.array([0.0, height, 0.0, 1.0]))
