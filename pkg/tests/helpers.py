"""Shared construction helpers for the test suite."""

import numpy as np

from pdjc import CatStateParams, ModelParams, wcs_build


def make_params(lam=0.0, delta=0.0, g=0.01, omega=1.0) -> ModelParams:
    """Model parameters from the (detuning, coupling, deformation) triple."""
    return ModelParams(omega=omega, omega0=omega - delta, g=g, lam=lam)


def make_field(mod_sq, lam, phase=0.0, tail_tol=1e-12):
    return wcs_build(CatStateParams(modulus_sq=mod_sq, phase=phase), lam, tail_tol=tail_tol)


def scaled_grid(g, gt_max=200.0, n_points=401) -> np.ndarray:
    """Absolute times whose scaled axis g*t spans [0, gt_max]."""
    return np.linspace(0.0, gt_max, n_points) / g
