"""Parity-deformed Jaynes-Cummings model.

Exact spectra and closed-form dynamics of a two-level atom coupled to a
reflection-deformed oscillator mode, the nonclassicality observables of
the joint state, and a brute-force matrix-evolution oracle that validates
the closed forms on a truncated Hilbert space.
"""

from ._backend import BACKEND
from .algebra import (
    CatStateParams,
    FieldState,
    FockLadder,
    TruncationError,
    bessel_i,
    ladder_coefficient,
    ln_bessel_i,
    ln_gamma,
    number_operator_eigenvalue,
    wcs_build,
    wcs_eigenstate_residual,
)
from .dynamics import JointState, JointTrajectory, evolve_excited, evolve_general, trajectory
from .observables import (
    EntanglementReport,
    ObservableSeries,
    SqueezingReport,
    StatisticsReport,
    UndefinedStatisticsError,
    WhaMoments,
    atomic_inversion,
    entanglement,
    fidelity,
    field_moment,
    inversion_closed_form,
    mandel_q,
    observable_series,
    squeezing,
    wha_moments,
)
from .oracle import (
    ComparisonReport,
    FullOperator,
    OracleRun,
    build_h0,
    build_hamiltonian,
    compare,
    evolve_numeric,
    evolve_numeric_grid,
    oracle_run,
)
from .spectrum import DressedPair, ModelParams, block_hamiltonian, dressed_pair, rabi_frequency, spectrum_scan

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "CatStateParams",
    "FieldState",
    "FockLadder",
    "TruncationError",
    "bessel_i",
    "ladder_coefficient",
    "ln_bessel_i",
    "ln_gamma",
    "number_operator_eigenvalue",
    "wcs_build",
    "wcs_eigenstate_residual",
    "JointState",
    "JointTrajectory",
    "evolve_excited",
    "evolve_general",
    "trajectory",
    "EntanglementReport",
    "ObservableSeries",
    "SqueezingReport",
    "StatisticsReport",
    "UndefinedStatisticsError",
    "WhaMoments",
    "atomic_inversion",
    "entanglement",
    "fidelity",
    "field_moment",
    "inversion_closed_form",
    "mandel_q",
    "observable_series",
    "squeezing",
    "wha_moments",
    "ComparisonReport",
    "FullOperator",
    "OracleRun",
    "build_h0",
    "build_hamiltonian",
    "compare",
    "evolve_numeric",
    "evolve_numeric_grid",
    "oracle_run",
    "DressedPair",
    "ModelParams",
    "block_hamiltonian",
    "dressed_pair",
    "rabi_frequency",
    "spectrum_scan",
]
