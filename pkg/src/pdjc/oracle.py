"""Brute-force validator for the closed-form dynamics.

Builds the full coupled Hamiltonian on the truncated product space
(Fock levels 0..n_trunc times the two atomic levels), evolves the exact
initial state by Hermitian eigendecomposition, rotates the result into
the interaction picture with the diagonal free Hamiltonian, and compares
componentwise against the closed-form amplitudes.  Nothing here reuses
the per-block solution, so agreement is a genuine cross-check.

Basis ordering: atom-excited block first, then atom-ground, Fock index
ascending within each, i.e. index(q,+) = q and index(q,-) = n_trunc+1+q.
The dynamically populated components are (2n,+) and (2n+1,-); everything
else (the complementary family and the truncation boundary) must stay
empty and is tracked as leakage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FieldState, FockLadder, TruncationError
from .dynamics import JointTrajectory
from .spectrum import ModelParams, _diag_entry

__all__ = [
    "FullOperator",
    "OracleRun",
    "ComparisonReport",
    "build_hamiltonian",
    "build_h0",
    "default_n_trunc",
    "embed_excited",
    "evolve_numeric",
    "evolve_numeric_grid",
    "oracle_run",
    "compare",
    "conserved_charge_diagonal",
]


@dataclass(frozen=True)
class FullOperator:
    """Hermitian operator on the truncated product space."""

    matrix: np.ndarray
    n_trunc: int

    @property
    def dim(self) -> int:
        return 2 * (self.n_trunc + 1)


def build_hamiltonian(params: ModelParams, n_trunc: int) -> FullOperator:
    """Full coupled Hamiltonian, assembled from the ladder matrices.

    H = omega (a_dag a + 1/2 + lam R) + (omega0/2) sigma_3
        + g (a_dag sigma_- + a sigma_+),

    real symmetric by construction.  Restricted to {|2n,+>, |2n+1,->} it
    reproduces the 2x2 blocks of :func:`pdjc.spectrum.block_hamiltonian`
    exactly (the same shared scalar helpers fill both).
    """
    if n_trunc < 1:
        raise ValueError(f"n_trunc must be >= 1, got {n_trunc}")
    ladder = FockLadder(lam=params.lam, n_trunc=n_trunc)
    d = ladder.dim
    h = np.zeros((2 * d, 2 * d))
    for q in range(d):
        h[q, q] = _diag_entry(q, +1.0, params)
        h[d + q, d + q] = _diag_entry(q, -1.0, params)
    coupling = params.g * ladder.creation()
    for q in range(d - 1):
        h[d + q + 1, q] = coupling[q + 1, q]
        h[q, d + q + 1] = coupling[q + 1, q]
    return FullOperator(matrix=h, n_trunc=n_trunc)


def build_h0(params: ModelParams, n_trunc: int) -> FullOperator:
    """Free (uncoupled) Hamiltonian; diagonal in the product basis."""
    if n_trunc < 1:
        raise ValueError(f"n_trunc must be >= 1, got {n_trunc}")
    d = n_trunc + 1
    diag = np.empty(2 * d)
    for q in range(d):
        diag[q] = _diag_entry(q, +1.0, params)
        diag[d + q] = _diag_entry(q, -1.0, params)
    return FullOperator(matrix=np.diag(diag), n_trunc=n_trunc)


def conserved_charge_diagonal(n_trunc: int) -> np.ndarray:
    """Diagonal of the integral of motion N + sigma_3/2.

    The photon-number-plus-inversion charge commutes with the coupling
    (each a_dag sigma_- transition raises N by one and lowers sigma_3/2 by
    one) and generates the two-dimensional block structure.  Note that
    a_dag a + sigma_3/2 differs from it by lam (1 - R), which the coupling
    does not conserve for lam != 0.
    """
    q = np.arange(n_trunc + 1, dtype=float)
    return np.concatenate([q + 0.5, q - 0.5])


def default_n_trunc(field: FieldState) -> int:
    """Smallest comfortable truncation: two levels above the top population."""
    return 2 * field.n_even_max + 2


def embed_excited(field: FieldState, n_trunc: int) -> np.ndarray:
    """Full-space vector for the excited atom with the given field state."""
    top = 2 * field.n_even_max
    if n_trunc < top + 1:
        raise TruncationError(
            f"n_trunc={n_trunc} cannot hold the populated levels (need >= {top + 1})"
        )
    d = n_trunc + 1
    psi = np.zeros(2 * d, dtype=complex)
    psi[2 * np.arange(field.amplitudes.size)] = field.amplitudes
    return psi


def evolve_numeric_grid(
    psi0: np.ndarray, h: FullOperator, h0: FullOperator, times
) -> np.ndarray:
    """Interaction-picture states e^{+i H0 t} e^{-i H t} psi0 on a grid.

    The propagator comes from one Hermitian eigendecomposition of H; the
    free rotation is a diagonal phase.  Returns shape (len(times), dim).
    """
    if h.dim != h0.dim or psi0.shape != (h.dim,):
        raise ValueError("operator/state dimensions disagree")
    times = np.asarray(times, dtype=float)
    evals, vecs = np.linalg.eigh(h.matrix)
    coeffs = vecs.conj().T @ psi0
    schroedinger = (vecs @ (np.exp(-1j * np.outer(times, evals)) * coeffs).T).T
    return schroedinger * np.exp(1j * np.outer(times, np.diag(h0.matrix)))


def evolve_numeric(psi0: np.ndarray, h: FullOperator, h0: FullOperator, t: float) -> np.ndarray:
    """Single-time version of :func:`evolve_numeric_grid`."""
    return evolve_numeric_grid(psi0, h, h0, np.array([float(t)]))[0]


@dataclass(frozen=True)
class OracleRun:
    """Projection of a numeric evolution onto the closed-form layout."""

    grid: np.ndarray
    c_plus: np.ndarray
    c_minus: np.ndarray
    leakage: np.ndarray
    norm_defect: np.ndarray
    n_trunc: int


def oracle_run(
    field: FieldState, params: ModelParams, grid, n_trunc: int | None = None
) -> OracleRun:
    """Evolve the excited-atom initial state numerically over a grid."""
    grid = np.asarray(grid, dtype=float)
    if n_trunc is None:
        n_trunc = default_n_trunc(field)
    psi0 = embed_excited(field, n_trunc)
    h = build_hamiltonian(params, n_trunc)
    h0 = build_h0(params, n_trunc)
    psis = evolve_numeric_grid(psi0, h, h0, grid)

    d = n_trunc + 1
    nb = field.amplitudes.size
    n = np.arange(nb)
    tracked = np.zeros(2 * d, dtype=bool)
    tracked[2 * n] = True
    tracked[d + 2 * n + 1] = True
    leakage = (
        np.abs(psis[:, ~tracked]).max(axis=1)
        if tracked.size > tracked.sum()
        else np.zeros(grid.size)
    )
    norm_defect = np.abs((np.abs(psis) ** 2).sum(axis=1) + field.tail_mass - 1.0)
    return OracleRun(
        grid=grid,
        c_plus=psis[:, 2 * n],
        c_minus=psis[:, d + 2 * n + 1],
        leakage=leakage,
        norm_defect=norm_defect,
        n_trunc=n_trunc,
    )


@dataclass(frozen=True)
class ComparisonReport:
    """Worst componentwise disagreement between closed form and oracle."""

    max_deviation: float
    time_at_max: float
    block_at_max: int
    sector_at_max: str
    leakage_max: float

    def __str__(self) -> str:
        return (
            f"max |closed-form - oracle| = {self.max_deviation:.3e} "
            f"at t={self.time_at_max:g}, block n={self.block_at_max} "
            f"({self.sector_at_max} sector); leakage {self.leakage_max:.3e}"
        )


def compare(trajectory: JointTrajectory, run: OracleRun) -> ComparisonReport:
    """Max amplitude deviation over (time, basis index), with its location."""
    if trajectory.grid.shape != run.grid.shape or not np.array_equal(trajectory.grid, run.grid):
        raise ValueError("trajectory and oracle run use different time grids")
    if trajectory.c_plus.shape != run.c_plus.shape:
        raise ValueError("trajectory and oracle run use different truncations")
    diff_plus = np.abs(trajectory.c_plus - run.c_plus)
    diff_minus = np.abs(trajectory.c_minus - run.c_minus)
    if trajectory.grid.size == 0:
        return ComparisonReport(0.0, 0.0, 0, "plus", 0.0)
    ip = np.unravel_index(np.argmax(diff_plus), diff_plus.shape)
    im = np.unravel_index(np.argmax(diff_minus), diff_minus.shape)
    if diff_plus[ip] >= diff_minus[im]:
        worst, sector = ip, "plus"
        value = diff_plus[ip]
    else:
        worst, sector = im, "minus"
        value = diff_minus[im]
    return ComparisonReport(
        max_deviation=float(value),
        time_at_max=float(trajectory.grid[worst[0]]),
        block_at_max=int(worst[1]),
        sector_at_max=sector,
        leakage_max=float(run.leakage.max(initial=0.0)),
    )
