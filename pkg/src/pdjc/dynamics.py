"""Exact interaction-picture dynamics of the coupled atom-field state.

The joint state at time t is expanded as

    Psi(t) = sum_n [ c_plus[n](t) |2n,+>  +  c_minus[n](t) |2n+1,-> ],

with the amplitudes defined in the frame rotating with the free
Hamiltonian (standard interaction picture, state rotated by e^{+i H0 t}).
Each block evolves in closed form at the generalized Rabi frequency, so
any grid point is evaluated directly with no stepping error.

Evolution is timestamp aware: ``evolve_general(state, t)`` advances the
state by the duration ``t`` starting from ``state.time``.  For a state at
time 0 this is the textbook rotation implemented by the kernels; for a
state at t0 != 0 the detuning phases e^{-/+ i Delta t0 / 2} are unwound
before and reapplied after, which is what makes composition and time
reversal hold exactly at nonzero detuning.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .algebra import FieldState
from .spectrum import ModelParams, rabi_frequency

__all__ = ["JointState", "JointTrajectory", "evolve_general", "evolve_excited", "trajectory"]

NORM_TOL = 1e-12


@dataclass(frozen=True)
class JointState:
    """Interaction-picture amplitudes of the joint state at one time.

    ``c_plus[n]`` multiplies |2n,+>, ``c_minus[n]`` multiplies |2n+1,->.
    The retained probability plus ``tail_mass`` must equal one.
    """

    time: float
    c_plus: np.ndarray
    c_minus: np.ndarray
    params: ModelParams
    tail_mass: float = 0.0

    def __post_init__(self):
        cp = np.ascontiguousarray(self.c_plus, dtype=complex)
        cm = np.ascontiguousarray(self.c_minus, dtype=complex)
        object.__setattr__(self, "c_plus", cp)
        object.__setattr__(self, "c_minus", cm)
        if cp.shape != cm.shape or cp.ndim != 1 or cp.size == 0:
            raise ValueError("c_plus and c_minus must be matching nonempty 1-d arrays")
        defect = abs(self.norm_sq() + self.tail_mass - 1.0)
        if defect > NORM_TOL:
            raise ValueError(f"state not normalized: |sum p + tail - 1| = {defect:.3e}")

    @property
    def n_blocks(self) -> int:
        return self.c_plus.size

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.c_plus) ** 2) + np.sum(np.abs(self.c_minus) ** 2))

    def block_probabilities(self) -> np.ndarray:
        """Per-block probability |c_plus[n]|^2 + |c_minus[n]|^2 (conserved in t)."""
        return np.abs(self.c_plus) ** 2 + np.abs(self.c_minus) ** 2


@dataclass(frozen=True)
class JointTrajectory:
    """Closed-form states on a strictly increasing time grid.

    Amplitudes are stored as (n_times, n_blocks) arrays; ``state(i)``
    materializes the i-th :class:`JointState`.
    """

    grid: np.ndarray
    c_plus: np.ndarray
    c_minus: np.ndarray
    params: ModelParams
    tail_mass: float = 0.0

    def __len__(self) -> int:
        return self.grid.size

    def state(self, i: int) -> JointState:
        return JointState(
            time=float(self.grid[i]),
            c_plus=self.c_plus[i],
            c_minus=self.c_minus[i],
            params=self.params,
            tail_mass=self.tail_mass,
        )

    @property
    def states(self) -> tuple:
        return tuple(self.state(i) for i in range(len(self)))

    def __iter__(self):
        return (self.state(i) for i in range(len(self)))


def block_coefficients(params: ModelParams, n_blocks: int):
    """Per-block rotation data: (Omega_n, Delta/Omega_n, 2G_n/Omega_n).

    The two fractions are set to zero for blocks with Omega_n = 0 (only
    possible when g = 0 on resonance, where nothing precesses).
    """
    n = np.arange(n_blocks, dtype=float)
    omega_r = np.array([rabi_frequency(int(k), params) for k in range(n_blocks)])
    two_g = 2.0 * params.g * np.sqrt(2.0 * n + 2.0 * params.lam + 1.0)
    safe = np.where(omega_r > 0.0, omega_r, 1.0)
    dfrac = np.where(omega_r > 0.0, params.detuning / safe, 0.0)
    kappa = np.where(omega_r > 0.0, two_g / safe, 0.0)
    return omega_r, dfrac, kappa


def _kernel_inputs(cp0, cm0, params):
    omega_r, dfrac, kappa = block_coefficients(params, cp0.size)
    return (
        np.ascontiguousarray(cp0, dtype=complex),
        np.ascontiguousarray(cm0, dtype=complex),
        omega_r,
        dfrac,
        kappa,
    )


def evolve_general(initial: JointState, t: float) -> JointState:
    """Advance a joint state by the duration ``t`` from its own timestamp."""
    params = initial.params
    delta = params.detuning
    cp0, cm0 = initial.c_plus, initial.c_minus
    t0 = initial.time
    if t0 != 0.0:
        unwind = cmath.exp(0.5j * delta * t0)
        cp0 = cp0 * unwind
        cm0 = cm0 * np.conj(unwind)
    cp0, cm0, omega_r, dfrac, kappa = _kernel_inputs(cp0, cm0, params)
    cp, cm = kernels.evolve_blocks(cp0, cm0, omega_r, dfrac, kappa, delta, np.array([float(t)]))
    cp, cm = cp[0], cm[0]
    if t0 != 0.0:
        rewind = cmath.exp(-0.5j * delta * t0)
        cp = cp * rewind
        cm = cm * np.conj(rewind)
    return JointState(
        time=t0 + t, c_plus=cp, c_minus=cm, params=params, tail_mass=initial.tail_mass
    )


def initial_excited(field: FieldState, params: ModelParams) -> JointState:
    """Joint state at t = 0 with the atom excited: c_plus = field, c_minus = 0."""
    if field.lam != params.lam:
        raise ValueError("field state and model parameters disagree on lambda")
    return JointState(
        time=0.0,
        c_plus=field.amplitudes,
        c_minus=np.zeros_like(field.amplitudes),
        params=params,
        tail_mass=field.tail_mass,
    )


def evolve_excited(field: FieldState, params: ModelParams, t: float) -> JointState:
    """Closed-form state at time t for an initially excited atom.

    Specialization of the general rotation to c_minus(0) = 0:

        c_plus[n](t)  = c[n](0) [cos + i (Delta/Omega_n) sin] e^{-i Delta t/2}
        c_minus[n](t) = -i (2 G_n / Omega_n) c[n](0) sin e^{+i Delta t/2}

    so |c_plus[n]|^2 + |c_minus[n]|^2 = |c[n](0)|^2 for every block and time.
    """
    return evolve_general(initial_excited(field, params), t)


def trajectory(field: FieldState, params: ModelParams, grid) -> JointTrajectory:
    """Evaluate the excited-atom dynamics on a strictly increasing grid."""
    grid = np.ascontiguousarray(grid, dtype=float)
    if grid.ndim != 1:
        raise ValueError("time grid must be one-dimensional")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("time grid must be strictly increasing")
    initial = initial_excited(field, params)
    if grid.size == 0:
        nb = initial.n_blocks
        return JointTrajectory(
            grid=grid,
            c_plus=np.empty((0, nb), dtype=complex),
            c_minus=np.empty((0, nb), dtype=complex),
            params=params,
            tail_mass=field.tail_mass,
        )
    cp0, cm0, omega_r, dfrac, kappa = _kernel_inputs(initial.c_plus, initial.c_minus, params)
    cp, cm = kernels.evolve_blocks(cp0, cm0, omega_r, dfrac, kappa, params.detuning, grid)
    return JointTrajectory(
        grid=grid, c_plus=cp, c_minus=cm, params=params, tail_mass=field.tail_mass
    )
