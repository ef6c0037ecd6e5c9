"""Parity-deformed oscillator algebra on a truncated Fock space.

The single-mode algebra used throughout this package is generated by
ladder operators ``a``, ``a_dag``, the parity (reflection) operator ``R``
and the number operator ``N``, subject to

    [a, a_dag] = 1 + 2*lam*R,    {R, a} = {R, a_dag} = 0,
    a_dag a   = N + lam*(1 - R),

where ``lam`` is the real deformation parameter.  On Fock states the
nonzero matrix elements are

    a |2m>   = sqrt(2m)           |2m-1>
    a |2m+1> = sqrt(2m + 2lam + 1)|2m>
    a_dag |2m>   = sqrt(2m + 2lam + 1)|2m+1>
    a_dag |2m+1> = sqrt(2m + 2)       |2m+2>

which reduce to the ordinary boson ladder at ``lam = 0``.  The module also
provides the special functions (log-gamma, modified Bessel I) needed to
normalize the deformed even cat states, and the cat-state constructor
itself.  Everything is a pure function of immutable inputs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TruncationError",
    "validate_deformation",
    "ln_gamma",
    "ln_bessel_i",
    "bessel_i",
    "ladder_coefficient",
    "number_operator_eigenvalue",
    "parity_sign",
    "FockLadder",
    "CatStateParams",
    "FieldState",
    "wcs_build",
    "wcs_eigenstate_residual",
]

# Deformed cat states exist for lam > -1/2 only.
LAMBDA_MIN = -0.5

# Highest even-sector index the cat-state builder will ever retain.
DEFAULT_LEVEL_CAP = 2000


class TruncationError(RuntimeError):
    """A truncated Fock space is too small for the requested operation."""


def validate_deformation(lam: float) -> float:
    """Check that the deformation parameter lies in the allowed domain."""
    lam = float(lam)
    if not math.isfinite(lam) or lam <= LAMBDA_MIN:
        raise ValueError(f"deformation parameter must satisfy lambda > -1/2, got {lam}")
    return lam


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for positive real arguments.

    Parameters
    ----------
    x : float
        Argument, must be > 0.

    Returns
    -------
    float
        ln(Gamma(x)), relative error below 1e-13.
    """
    if not x > 0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def ln_bessel_i(nu: float, x: float) -> float:
    """Log of the modified Bessel function of the first kind, ln I_nu(x).

    Uses the ascending series

        I_nu(x) = sum_k (x/2)^(2k+nu) / (k! Gamma(k+nu+1)),

    with the leading term taken in log space so the result never
    overflows even when ``(x/2)**nu`` would; the remaining terms are
    accumulated through their (well-scaled) ratios.  The sum stops when a
    term drops below 1e-16 of the running partial sum.

    Parameters
    ----------
    nu : float
        Order, must be > -1.
    x : float
        Argument, must be >= 0.

    Returns
    -------
    float
        ln(I_nu(x)).  For x = 0 this is -inf when nu > 0, 0 when nu = 0
        and +inf when -1 < nu < 0.
    """
    if not nu > -1:
        raise ValueError(f"ln_bessel_i requires nu > -1, got {nu}")
    if not x >= 0:
        raise ValueError(f"ln_bessel_i requires x >= 0, got {x}")
    if x == 0.0:
        if nu == 0.0:
            return 0.0
        return -math.inf if nu > 0 else math.inf
    half_sq = (0.5 * x) ** 2
    ln_lead = nu * math.log(0.5 * x) - ln_gamma(nu + 1.0)
    total = 1.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= half_sq / (k * (k + nu))
        total += term
        if term < 1e-16 * total:
            break
    return ln_lead + math.log(total)


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function of the first kind, I_nu(x).

    Thin exponential wrapper over :func:`ln_bessel_i`; overflows to
    ``inf`` only if the function value itself exceeds double range.
    """
    lv = ln_bessel_i(nu, x)
    if lv == -math.inf:
        return 0.0
    try:
        return math.exp(lv)
    except OverflowError:
        return math.inf


def ladder_coefficient(direction: str, n: int, lam: float) -> float:
    """Matrix element of the deformed ladder operators.

    ``direction='lower'`` returns the coefficient of |n-1> in a|n>,
    ``direction='raise'`` the coefficient of |n+1> in a_dag|n>.
    Lowering the vacuum gives 0.
    """
    if n < 0:
        raise ValueError(f"Fock index must be >= 0, got {n}")
    lam = validate_deformation(lam)
    even = n % 2 == 0
    if direction == "lower":
        if even:
            return math.sqrt(n)
        return math.sqrt(n + 2.0 * lam)
    if direction == "raise":
        if even:
            return math.sqrt(n + 2.0 * lam + 1.0)
        return math.sqrt(n + 1.0)
    raise ValueError(f"direction must be 'lower' or 'raise', got {direction!r}")


def number_operator_eigenvalue(n: int, lam: float) -> float:
    """Eigenvalue of a_dag a on Fock state |n>: n for even n, n + 2*lam for odd."""
    if n < 0:
        raise ValueError(f"Fock index must be >= 0, got {n}")
    if n % 2 == 0:
        return float(n)
    return n + 2.0 * lam


def parity_sign(n: int) -> float:
    """Eigenvalue of the reflection operator R on |n>, i.e. (-1)**n."""
    return 1.0 if n % 2 == 0 else -1.0


@dataclass(frozen=True)
class FockLadder:
    """Matrix representation of the deformed algebra on levels 0..n_trunc.

    All operators are dense real matrices; ``n_trunc`` is the highest Fock
    index retained (inclusive).  Matrices are rebuilt on each call, so
    instances carry no mutable state.
    """

    lam: float
    n_trunc: int

    def __post_init__(self):
        validate_deformation(self.lam)
        if self.n_trunc < 1:
            raise ValueError(f"n_trunc must be >= 1, got {self.n_trunc}")

    @property
    def dim(self) -> int:
        return self.n_trunc + 1

    def annihilation(self) -> np.ndarray:
        coeffs = [ladder_coefficient("lower", q, self.lam) for q in range(1, self.dim)]
        return np.diag(np.asarray(coeffs), k=1)

    def creation(self) -> np.ndarray:
        return self.annihilation().T.copy()

    def parity(self) -> np.ndarray:
        return np.diag(np.asarray([parity_sign(q) for q in range(self.dim)]))

    def number(self) -> np.ndarray:
        return np.diag(np.arange(self.dim, dtype=float))

    def number_deformed(self) -> np.ndarray:
        """Diagonal matrix of a_dag a (equals N + lam*(1 - R) on each level)."""
        vals = [number_operator_eigenvalue(q, self.lam) for q in range(self.dim)]
        return np.diag(np.asarray(vals))


@dataclass(frozen=True)
class CatStateParams:
    """Complex cat-state amplitude w = |w| e^{i phi}, stored as (|w|^2, phi)."""

    modulus_sq: float
    phase: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.modulus_sq) and self.modulus_sq >= 0):
            raise ValueError(f"modulus_sq must be finite and >= 0, got {self.modulus_sq}")
        if not math.isfinite(self.phase):
            raise ValueError("phase must be finite")

    @property
    def w(self) -> complex:
        return math.sqrt(self.modulus_sq) * cmath.exp(1j * self.phase)


@dataclass(frozen=True)
class FieldState:
    """Initial field amplitudes on the even Fock sector.

    ``amplitudes[n]`` is the amplitude on level |2n>; ``tail_mass`` is the
    probability discarded by the truncation, so the retained probability
    plus the tail equals one.
    """

    lam: float
    amplitudes: np.ndarray
    tail_mass: float

    def __post_init__(self):
        validate_deformation(self.lam)
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amplitudes must be a nonempty 1-d array")
        defect = abs(float(np.sum(np.abs(amps) ** 2)) + self.tail_mass - 1.0)
        if not (0.0 <= self.tail_mass < 1.0) or defect > 1e-12:
            raise ValueError(f"state not normalized: |sum p + tail - 1| = {defect:.3e}")

    @classmethod
    def from_amplitudes(cls, lam: float, amplitudes) -> "FieldState":
        """Wrap user-supplied even-sector amplitudes; they must be normalized."""
        amps = np.asarray(amplitudes, dtype=complex)
        tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
        if tail < -1e-12:
            raise ValueError("amplitudes exceed unit norm")
        return cls(lam=lam, amplitudes=amps, tail_mass=max(tail, 0.0))

    @property
    def n_even_max(self) -> int:
        return self.amplitudes.size - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _wcs_log_probability(n: int, lam: float, mod_sq: float, ln_norm: float) -> float:
    # ln |c_2n|^2 for the deformed even cat state, all factors in log space.
    return (
        (2 * n + lam - 0.5) * math.log(0.5 * mod_sq)
        - ln_gamma(n + 1.0)
        - ln_gamma(n + lam + 0.5)
        - ln_norm
    )


def wcs_build(
    params: CatStateParams,
    lam: float,
    tail_tol: float = 1e-12,
    level_cap: int = DEFAULT_LEVEL_CAP,
) -> FieldState:
    """Construct the deformed even cat state |w> on the even Fock sector.

    The state is the even-sector eigenstate of the squared annihilation
    operator, a^2 |w> = w^2 |w>, with amplitudes

        c_2n = sqrt(prefactor) * w^(2n) / sqrt(2^(2n) n! Gamma(n+lam+1/2)),

    normalized through a modified Bessel function of order lam - 1/2.  All
    magnitudes are evaluated in log space, so large |w|^2 and lam do not
    overflow.  Levels are retained until the discarded probability falls
    below ``tail_tol`` AND the truncation-induced eigenstate residual
    bound (|w|^4 times the last retained probability) does too; the second
    condition keeps ||a^2|w> - w^2|w>|| at the sqrt(tail_tol) scale.

    Parameters
    ----------
    params : CatStateParams
        Cat amplitude |w|^2 and phase phi; the phase enters as exp(2*i*n*phi).
    lam : float
        Deformation parameter, > -1/2.
    tail_tol : float
        Truncation budget, in (0, 1e-6].
    level_cap : int
        Hard cap on the retained even index; exceeding it raises
        :class:`TruncationError` (signals |w|^2 too large for the budget).
    """
    lam = validate_deformation(lam)
    if not (0.0 < tail_tol <= 1e-6):
        raise ValueError(f"tail_tol must lie in (0, 1e-6], got {tail_tol}")
    mod_sq = params.modulus_sq
    if mod_sq == 0.0:
        return FieldState(lam=lam, amplitudes=np.array([1.0 + 0.0j]), tail_mass=0.0)

    ln_norm = ln_bessel_i(lam - 0.5, mod_sq)
    residual_scale = 1.0 + mod_sq * mod_sq
    probs = []
    cumulative = 0.0
    n = 0
    while True:
        p = math.exp(_wcs_log_probability(n, lam, mod_sq, ln_norm))
        probs.append(p)
        cumulative += p
        tail = 1.0 - cumulative
        if tail < tail_tol and p * residual_scale < tail_tol:
            break
        n += 1
        if n > level_cap:
            raise TruncationError(
                f"cat state with |w|^2={mod_sq} needs more than {level_cap} even levels"
            )
    tail_mass = max(1.0 - cumulative, 0.0)
    amps = np.sqrt(np.asarray(probs)) * np.exp(2j * params.phase * np.arange(len(probs)))
    return FieldState(lam=lam, amplitudes=amps, tail_mass=tail_mass)


def wcs_eigenstate_residual(
    state: FieldState, params: CatStateParams, ladder: FockLadder
) -> float:
    """Norm of (a^2 - w^2) applied to the truncated cat state.

    For the exact state this vanishes; the truncated expansion leaves a
    residual dominated by the last retained level, of order
    |w|^2 * sqrt(p_last).  The ladder must keep at least two levels above
    the highest populated one so the matrix action is faithful.
    """
    if ladder.lam != state.lam:
        raise ValueError("ladder and state carry different deformation parameters")
    highest = 2 * state.n_even_max
    if ladder.n_trunc < highest + 2:
        raise TruncationError(
            f"ladder keeps levels up to {ladder.n_trunc}, need at least {highest + 2}"
        )
    vec = np.zeros(ladder.dim, dtype=complex)
    vec[2 * np.arange(state.amplitudes.size)] = state.amplitudes
    a = ladder.annihilation()
    w_sq = params.modulus_sq * cmath.exp(2j * params.phase)
    return float(np.linalg.norm(a @ (a @ vec) - w_sq * vec))
