"""Pure numpy kernels for the closed-form block evolution.

These are the fallback implementations of the hot loops; the compiled
module ``pdjc._kernels`` provides the same two functions with identical
signatures and semantics.  Each invariant block {|2n,+>, |2n+1,->}
rotates independently:

    c_plus(t)  = [c_plus(0) (cos + i d sin) - i k c_minus(0) sin] e^(-i Delta t / 2)
    c_minus(t) = [c_minus(0) (cos - i d sin) - i k c_plus(0) sin] e^(+i Delta t / 2)

with cos/sin of Omega_n t / 2, d = Delta / Omega_n and
k = 2 g sqrt(2n + 2 lam + 1) / Omega_n (both passed in as 0 when
Omega_n = 0, which only happens for g = 0 at resonance).
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def evolve_blocks(cp0, cm0, omega_r, dfrac, kappa, delta, times):
    """Per-block rotation of the amplitude pairs onto a time grid.

    Returns complex arrays (cp, cm) of shape (len(times), len(cp0)).
    """
    times = np.asarray(times, dtype=float)
    theta = 0.5 * np.multiply.outer(times, omega_r)
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    rot = cos_t + 1j * dfrac[None, :] * sin_t
    half = np.exp(-0.5j * delta * times)[:, None]
    cp = (cp0[None, :] * rot - 1j * kappa[None, :] * cm0[None, :] * sin_t) * half
    cm = (cm0[None, :] * np.conj(rot) - 1j * kappa[None, :] * cp0[None, :] * sin_t) * np.conj(half)
    return cp, cm


def accumulate_series(cp0, cm0, omega_r, dfrac, kappa, delta, lam, times):
    """Evolve and reduce in one pass: sector populations and field moments.

    Returns the tuple of per-time arrays

        (g_plus, g_minus, mean_n, mean_n2, mean_aad, mean_comm, a2, overlap)

    where a2 is <a^2> (complex), overlap is <state(0)|state(t)> (complex),
    mean_n/mean_n2 are the first two moments of a_dag a, mean_aad is
    <a a_dag> and mean_comm is <1 + 2 lam R>.
    """
    cp, cm = evolve_blocks(cp0, cm0, omega_r, dfrac, kappa, delta, times)
    n = np.arange(cp0.size, dtype=float)
    pp = np.abs(cp) ** 2
    pm = np.abs(cm) ** 2
    w_even = 2.0 * n
    w_odd = 2.0 * n + 1.0 + 2.0 * lam
    aad_even = 2.0 * n + 2.0 * lam + 1.0
    aad_odd = 2.0 * n + 2.0
    g_plus = pp.sum(axis=1)
    g_minus = pm.sum(axis=1)
    mean_n = pp @ w_even + pm @ w_odd
    mean_n2 = pp @ w_even**2 + pm @ w_odd**2
    mean_aad = pp @ aad_even + pm @ aad_odd
    mean_comm = (1.0 + 2.0 * lam) * g_plus + (1.0 - 2.0 * lam) * g_minus
    if cp0.size > 1:
        a2_even = np.sqrt((w_even[:-1] + 2.0) * (w_even[:-1] + 2.0 * lam + 1.0))
        a2_odd = np.sqrt((w_even[:-1] + 2.0) * (w_even[:-1] + 2.0 * lam + 3.0))
        a2 = (np.conj(cp[:, :-1]) * cp[:, 1:]) @ a2_even + (np.conj(cm[:, :-1]) * cm[:, 1:]) @ a2_odd
    else:
        a2 = np.zeros(times.size, dtype=complex)
    overlap = cp @ np.conj(cp0) + cm @ np.conj(cm0)
    return g_plus, g_minus, mean_n, mean_n2, mean_aad, mean_comm, a2, overlap
