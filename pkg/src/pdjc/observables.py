"""Physical observables of the joint atom-field state.

Everything here is a function of the interaction-picture amplitudes: the
atomic inversion, overlap fidelity with the initial state, reduced-atom
entropy, photon statistics (Mandel Q), the mean values of the deformed
algebra generators, and quadrature variances with the deformation-aware
uncertainty bound |<1 + 2 lam R>| / 2.  Quadratures are x = (a + a_dag)/sqrt(2)
and p = (a - a_dag)/(i sqrt(2)), evaluated in the interaction picture.

Single-state functions operate on a :class:`~pdjc.dynamics.JointState`;
:func:`observable_series` evaluates a whole time grid through the
selected kernel backend in one pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .algebra import FieldState
from .dynamics import JointState, block_coefficients, initial_excited
from .spectrum import ModelParams

__all__ = [
    "UndefinedStatisticsError",
    "EntanglementReport",
    "SqueezingReport",
    "StatisticsReport",
    "WhaMoments",
    "ObservableSeries",
    "atomic_inversion",
    "inversion_closed_form",
    "fidelity",
    "entanglement",
    "field_moment",
    "mandel_q",
    "wha_moments",
    "squeezing",
    "observable_series",
]

UNCERTAINTY_SLACK = 1e-10


class UndefinedStatisticsError(ValueError):
    """Mandel Q is undefined when the mean photon number vanishes."""


@dataclass(frozen=True)
class EntanglementReport:
    g_plus: float
    g_minus: float
    entropy: float


@dataclass(frozen=True)
class SqueezingReport:
    sigma_xx: float
    sigma_pp: float
    bound: float
    s_x: float
    s_p: float
    uncertainty_ok: bool


@dataclass(frozen=True)
class StatisticsReport:
    mean_n: float
    mean_n2: float
    mandel_q: float


@dataclass(frozen=True)
class WhaMoments:
    """Mean values of the algebra generators over the joint state."""

    m_a: complex
    m_a2: complex
    m_n: float
    m_aad: float
    m_comm: float


def _sector_eigenvalues(state: JointState):
    n = np.arange(state.n_blocks, dtype=float)
    lam = state.params.lam
    return 2.0 * n, 2.0 * n + 1.0 + 2.0 * lam


def atomic_inversion(state: JointState) -> float:
    """Population difference <sigma_z> = sum |c_plus|^2 - |c_minus|^2."""
    return float(np.sum(np.abs(state.c_plus) ** 2) - np.sum(np.abs(state.c_minus) ** 2))


def inversion_closed_form(field: FieldState, params: ModelParams, times) -> np.ndarray:
    """Atomic inversion for an excited-atom start, without amplitudes.

    Independent closed form, summed directly over the initial photon
    distribution:

        <sigma_z>(t) = sum_n p_n [ (Delta/Omega_n)^2
                                   + 4 g^2 (2n+2lam+1)/Omega_n^2 cos(Omega_n t) ].

    Blocks with Omega_n = 0 do not precess and contribute p_n.
    """
    times = np.asarray(times, dtype=float)
    probs = field.probabilities()
    omega_r, dfrac, kappa = block_coefficients(params, probs.size)
    static = np.where(omega_r > 0.0, dfrac**2, 1.0)
    osc = kappa**2
    return probs @ (static[:, None] + osc[:, None] * np.cos(np.outer(omega_r, times)))


def fidelity(initial: JointState, state: JointState) -> float:
    """Squared overlap |<initial|state>|^2."""
    if initial.n_blocks != state.n_blocks:
        raise ValueError(
            f"truncation mismatch: {initial.n_blocks} vs {state.n_blocks} blocks"
        )
    overlap = np.vdot(initial.c_plus, state.c_plus) + np.vdot(initial.c_minus, state.c_minus)
    return float(abs(overlap) ** 2)


def _binary_entropy(g_plus: float, g_minus: float) -> float:
    # von Neumann entropy of diag(g_plus, g_minus), with 0 ln 0 = 0.
    s = 0.0
    for p in (g_plus, g_minus):
        if p > 0.0:
            s -= p * math.log(p)
    return s


def entanglement(state: JointState) -> EntanglementReport:
    """Reduced-atom eigenvalues and von Neumann entropy.

    The reduced atomic density matrix is diagonal in the bare basis with
    eigenvalues g_plus = sum |c_plus|^2 and g_minus = sum |c_minus|^2, so
    S = -g_plus ln g_plus - g_minus ln g_minus (at most ln 2).
    """
    g_plus = float(np.sum(np.abs(state.c_plus) ** 2))
    g_minus = float(np.sum(np.abs(state.c_minus) ** 2))
    return EntanglementReport(g_plus, g_minus, _binary_entropy(g_plus, g_minus))


def field_moment(state: JointState, k: int) -> float:
    """<(a_dag a)^k>: diagonal, with eigenvalue 2n on |2n> and 2n+1+2lam on |2n+1>."""
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    even, odd = _sector_eigenvalues(state)
    return float(
        np.sum(even**k * np.abs(state.c_plus) ** 2)
        + np.sum(odd**k * np.abs(state.c_minus) ** 2)
    )


def mandel_q(state: JointState) -> StatisticsReport:
    """Mandel Q = (<n^2> - <n>^2)/<n> - 1 for the deformed number operator.

    Negative values flag sub-Poissonian statistics, positive
    super-Poissonian; raises for states with no excitation.
    """
    mean_n = field_moment(state, 1)
    mean_n2 = field_moment(state, 2)
    if mean_n == 0.0:
        raise UndefinedStatisticsError("Mandel Q undefined: <a_dag a> = 0")
    return StatisticsReport(mean_n, mean_n2, (mean_n2 - mean_n**2) / mean_n - 1.0)


def wha_moments(state: JointState) -> WhaMoments:
    """Mean values of a, a^2, a_dag a, a a_dag and 1 + 2 lam R.

    <a> vanishes identically: a moves weight between the even-excited and
    odd-ground sectors, which never overlap in the expansion.  The second
    moment couples next-neighbor blocks in each sector.
    """
    lam = state.params.lam
    cp, cm = state.c_plus, state.c_minus
    pp = np.abs(cp) ** 2
    pm = np.abs(cm) ** 2
    even, odd = _sector_eigenvalues(state)
    m_n = float(pp @ even + pm @ odd)
    m_aad = float(pp @ (even + 2.0 * lam + 1.0) + pm @ (odd - 2.0 * lam + 1.0))
    m_comm = float((1.0 + 2.0 * lam) * pp.sum() + (1.0 - 2.0 * lam) * pm.sum())
    if state.n_blocks > 1:
        w_plus = np.sqrt((even[:-1] + 2.0) * (even[:-1] + 2.0 * lam + 1.0))
        w_minus = np.sqrt((even[:-1] + 2.0) * (even[:-1] + 2.0 * lam + 3.0))
        m_a2 = complex(
            np.sum(np.conj(cp[:-1]) * cp[1:] * w_plus)
            + np.sum(np.conj(cm[:-1]) * cm[1:] * w_minus)
        )
    else:
        m_a2 = 0.0 + 0.0j
    return WhaMoments(m_a=0.0 + 0.0j, m_a2=m_a2, m_n=m_n, m_aad=m_aad, m_comm=m_comm)


def _squeezing_from_moments(m_n, m_aad, m_comm, a2_real):
    sigma_xx = 0.5 * (m_n + m_aad) + a2_real
    sigma_pp = 0.5 * (m_n + m_aad) - a2_real
    bound = 0.5 * abs(m_comm)
    return sigma_xx, sigma_pp, bound


def squeezing(state: JointState) -> SqueezingReport:
    """Quadrature variances, squeezing factors and the uncertainty check.

    With <a> = 0 the variances reduce to
    sigma_xx/pp = (<a_dag a> + <a a_dag>)/2 +/- Re <a^2>, and the
    normalized factors are s = (sigma - bound)/bound against the deformed
    bound |<1 + 2 lam R>|/2; s < 0 means squeezing in that quadrature.
    """
    m = wha_moments(state)
    sigma_xx, sigma_pp, bound = _squeezing_from_moments(m.m_n, m.m_aad, m.m_comm, m.m_a2.real)
    return SqueezingReport(
        sigma_xx=sigma_xx,
        sigma_pp=sigma_pp,
        bound=bound,
        s_x=(sigma_xx - bound) / bound,
        s_p=(sigma_pp - bound) / bound,
        uncertainty_ok=bool(sigma_xx * sigma_pp >= bound**2 * (1.0 - UNCERTAINTY_SLACK)),
    )


@dataclass(frozen=True)
class ObservableSeries:
    """Per-time observables for an excited-atom run on a time grid.

    ``mandel_q`` is NaN at grid points where the mean photon number
    vanishes (there the statistic is undefined).
    """

    times: np.ndarray
    g_plus: np.ndarray
    g_minus: np.ndarray
    inversion: np.ndarray
    fidelity: np.ndarray
    entropy: np.ndarray
    mean_n: np.ndarray
    mean_n2: np.ndarray
    mean_aad: np.ndarray
    mean_comm: np.ndarray
    a2: np.ndarray
    sigma_xx: np.ndarray
    sigma_pp: np.ndarray
    bound: np.ndarray
    s_x: np.ndarray
    s_p: np.ndarray
    mandel_q: np.ndarray
    norm_defect: np.ndarray


def observable_series(field: FieldState, params: ModelParams, times) -> ObservableSeries:
    """Evaluate all observables over a time grid via the kernel backend."""
    times = np.ascontiguousarray(times, dtype=float)
    initial = initial_excited(field, params)
    omega_r, dfrac, kappa = block_coefficients(params, initial.n_blocks)
    g_plus, g_minus, mean_n, mean_n2, mean_aad, mean_comm, a2, overlap = (
        kernels.accumulate_series(
            initial.c_plus,
            initial.c_minus,
            omega_r,
            dfrac,
            kappa,
            params.detuning,
            params.lam,
            times,
        )
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        entropy = -np.where(g_plus > 0, g_plus * np.log(np.where(g_plus > 0, g_plus, 1.0)), 0.0)
        entropy -= np.where(g_minus > 0, g_minus * np.log(np.where(g_minus > 0, g_minus, 1.0)), 0.0)
        q = np.where(mean_n > 0, (mean_n2 - mean_n**2) / np.where(mean_n > 0, mean_n, 1.0) - 1.0, np.nan)
    sigma_xx, sigma_pp, bound = _squeezing_from_moments(mean_n, mean_aad, mean_comm, a2.real)
    return ObservableSeries(
        times=times,
        g_plus=g_plus,
        g_minus=g_minus,
        inversion=g_plus - g_minus,
        fidelity=np.abs(overlap) ** 2,
        entropy=entropy,
        mean_n=mean_n,
        mean_n2=mean_n2,
        mean_aad=mean_aad,
        mean_comm=mean_comm,
        a2=a2,
        sigma_xx=sigma_xx,
        sigma_pp=sigma_pp,
        bound=bound,
        s_x=(sigma_xx - bound) / bound,
        s_p=(sigma_pp - bound) / bound,
        mandel_q=q,
        norm_defect=np.abs(g_plus + g_minus + field.tail_mass - 1.0),
    )
