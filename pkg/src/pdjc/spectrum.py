"""Dressed spectrum of the parity-deformed atom-field Hamiltonian.

The coupled Hamiltonian is block diagonal over the two-dimensional
invariant subspaces spanned by {|2n,+>, |2n+1,->}.  Each block is a real
symmetric 2x2 matrix whose eigenvalues split symmetrically about the
center (2n + lam + 1)*omega by half the generalized Rabi frequency

    Omega_n = sqrt(Delta^2 + 4 g^2 (2n + 2 lam + 1)),   Delta = omega - omega0.

Eigenvectors are constructed in closed form and verified against the
block matrix; the global sign convention makes the first nonzero
component positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import ladder_coefficient, number_operator_eigenvalue, parity_sign, validate_deformation

__all__ = [
    "ModelParams",
    "DressedPair",
    "rabi_frequency",
    "block_hamiltonian",
    "dressed_pair",
    "spectrum_scan",
]


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of one run: field frequency, atomic frequency,
    coupling and deformation.  The detuning is omega - omega0."""

    omega: float
    omega0: float
    g: float
    lam: float

    def __post_init__(self):
        validate_deformation(self.lam)
        for name in ("omega", "omega0", "g"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.omega <= 0:
            raise ValueError(f"omega must be > 0, got {self.omega}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")
        if self.g < 0:
            raise ValueError(f"g must be >= 0, got {self.g}")

    @property
    def detuning(self) -> float:
        return self.omega - self.omega0


@dataclass(frozen=True)
class DressedPair:
    """Eigenpair of one invariant block, in the {|2n,+>, |2n+1,->} basis."""

    n: int
    rabi: float
    e_plus: float
    e_minus: float
    v_plus: np.ndarray
    v_minus: np.ndarray


def _rabi_from_detuning(n: int, delta: float, g: float, lam: float) -> float:
    return math.sqrt(delta * delta + 4.0 * g * g * (2.0 * n + 2.0 * lam + 1.0))


def rabi_frequency(n: int, params: ModelParams) -> float:
    """Generalized Rabi frequency sqrt(Delta^2 + 4 g^2 (2n + 2 lam + 1))."""
    if n < 0:
        raise ValueError(f"block index must be >= 0, got {n}")
    return _rabi_from_detuning(n, params.detuning, params.g, params.lam)


def _diag_entry(q: int, atom_sign: float, params: ModelParams) -> float:
    # Free energy of |q, +/-  >: field term omega*(a_dag a + 1/2 + lam*R)
    # plus the atomic term.  Shared by the 2x2 blocks and the full oracle
    # matrix so that both agree bit for bit.
    field = params.omega * (
        number_operator_eigenvalue(q, params.lam) + 0.5 + params.lam * parity_sign(q)
    )
    return field + 0.5 * params.omega0 * atom_sign


def block_hamiltonian(n: int, params: ModelParams) -> np.ndarray:
    """Real symmetric 2x2 block on {|2n,+>, |2n+1,->}."""
    if n < 0:
        raise ValueError(f"block index must be >= 0, got {n}")
    coupling = params.g * ladder_coefficient("raise", 2 * n, params.lam)
    return np.array(
        [
            [_diag_entry(2 * n, +1.0, params), coupling],
            [coupling, _diag_entry(2 * n + 1, -1.0, params)],
        ]
    )


def _sign_fixed(v: np.ndarray) -> np.ndarray:
    for x in v:
        if x != 0.0:
            return v if x > 0 else -v
    return v


def dressed_pair(n: int, params: ModelParams) -> DressedPair:
    """Eigenvalues and eigenvectors of the n-th invariant block.

    Energies are (2n + lam + 1)*omega +/- Omega_n/2.  The two closed-form
    eigenvector expressions (2G, Omega+Delta) and (Omega-Delta, 2G) are
    proportional; the better-conditioned one is used for each branch, so
    the degenerate g=0 crossings are handled without special cases.
    """
    if n < 0:
        raise ValueError(f"block index must be >= 0, got {n}")
    delta = params.detuning
    omega_r = rabi_frequency(n, params)
    center = (2.0 * n + params.lam + 1.0) * params.omega
    e_plus = center + 0.5 * omega_r
    e_minus = center - 0.5 * omega_r

    two_g = 2.0 * params.g * ladder_coefficient("raise", 2 * n, params.lam)
    if omega_r == 0.0:
        v_plus = np.array([1.0, 0.0])
        v_minus = np.array([0.0, 1.0])
    else:
        # +branch: (2G, Omega + Delta) or the equivalent (Omega - Delta, 2G).
        if omega_r + delta >= omega_r - delta:
            v_plus = np.array([two_g, omega_r + delta])
        else:
            v_plus = np.array([omega_r - delta, two_g])
        v_plus = v_plus / np.linalg.norm(v_plus)
        v_minus = np.array([-v_plus[1], v_plus[0]])
    return DressedPair(
        n=n,
        rabi=omega_r,
        e_plus=e_plus,
        e_minus=e_minus,
        v_plus=_sign_fixed(v_plus),
        v_minus=_sign_fixed(v_minus),
    )


def spectrum_scan(
    n_list,
    omega: float,
    g: float,
    lam: float,
    delta_start: float,
    delta_stop: float,
    delta_step: float,
) -> np.ndarray:
    """Dressed energies on a detuning grid, for level-repulsion plots.

    Returns a structured array with fields ``n, delta, e_plus, e_minus``,
    ordered by block index then detuning.  An empty detuning interval
    yields an empty table.  The minimum of e_plus - e_minus over the grid
    sits at delta = 0 (when included) with value 2 g sqrt(2n + 2 lam + 1).
    """
    if delta_step <= 0:
        raise ValueError(f"delta_step must be > 0, got {delta_step}")
    validate_deformation(lam)
    if delta_stop >= delta_start:
        count = int(math.floor((delta_stop - delta_start) / delta_step + 1e-9)) + 1
        deltas = delta_start + delta_step * np.arange(count)
    else:
        deltas = np.empty(0)
    rows = np.empty(
        len(n_list) * deltas.size,
        dtype=[("n", int), ("delta", float), ("e_plus", float), ("e_minus", float)],
    )
    i = 0
    for n in n_list:
        if n < 0:
            raise ValueError(f"block index must be >= 0, got {n}")
        center = (2.0 * n + lam + 1.0) * omega
        for d in deltas:
            omega_r = _rabi_from_detuning(n, d, g, lam)
            rows[i] = (n, d, center + 0.5 * omega_r, center - 0.5 * omega_r)
            i += 1
    return rows
