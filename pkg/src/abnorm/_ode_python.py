"""Pure-Python (numpy) fallback for the fixed-step RK4 kernel."""

from __future__ import annotations

import numpy as np


def rk4_trajectory(a: np.ndarray, psi0: np.ndarray, dt: float, n_steps: int) -> np.ndarray:
    """Classical RK4 for psi' = a @ psi; returns (n_steps + 1, 4) states."""
    a = np.asarray(a, dtype=float)
    out = np.empty((n_steps + 1, a.shape[0]))
    psi = np.asarray(psi0, dtype=float).copy()
    out[0] = psi
    for n in range(n_steps):
        k1 = a @ psi
        k2 = a @ (psi + 0.5 * dt * k1)
        k3 = a @ (psi + 0.5 * dt * k2)
        k4 = a @ (psi + dt * k3)
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[n + 1] = psi
    return out
