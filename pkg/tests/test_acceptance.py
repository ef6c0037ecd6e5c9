"""Acceptance suite: every release criterion, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they print.  Tolerances are fixed here, not tuned elsewhere.
"""

import math

import numpy as np
import pytest

from pdjc import (
    CatStateParams,
    FockLadder,
    block_hamiltonian,
    compare,
    dressed_pair,
    evolve_excited,
    field_moment,
    observable_series,
    oracle_run,
    spectrum_scan,
    trajectory,
    wcs_build,
    wcs_eigenstate_residual,
)

from helpers import make_field, make_params, scaled_grid

LN2 = math.log(2.0)

# (tag, lam, |w|^2, delta): the collapse-revival, inhibited-decay,
# return-fidelity and photon-statistics parameter families, g = 0.01.
PARAMETER_SETS = [
    ("x30_lam0_d0", 0.0, 30.0, 0.0),
    ("x30_lam0_d001", 0.0, 30.0, 0.01),
    ("x30_lam50_d001", 50.0, 30.0, 0.01),
    ("x30_lam0_d05", 0.0, 30.0, 0.5),
    ("x30_lam30_d05", 30.0, 30.0, 0.5),
    ("x30_lam100_d05", 100.0, 30.0, 0.5),
    ("x9_lamneg025_d01", -0.25, 9.0, 0.1),
    ("x9_lam0_d01", 0.0, 9.0, 0.1),
    ("x9_lam10_d01", 10.0, 9.0, 0.1),
    ("x9_lam100_d01", 100.0, 9.0, 0.1),
    ("x20_lamneg025_d001", -0.25, 20.0, 0.01),
    ("x20_lam0_d001", 0.0, 20.0, 0.01),
    ("x20_lam2_d001", 2.0, 20.0, 0.01),
    ("x20_lam10_d001", 10.0, 20.0, 0.01),
]


def report(criterion, ok, detail):
    print(f"[criterion {criterion:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"criterion {criterion}: {detail}"


@pytest.fixture(scope="module")
def standard_runs():
    runs = {}
    for tag, lam, mod_sq, delta in PARAMETER_SETS:
        params = make_params(lam=lam, delta=delta)
        field = make_field(mod_sq, lam)
        times = scaled_grid(params.g, gt_max=200.0, n_points=401)
        runs[tag] = {
            "params": params,
            "field": field,
            "times": times,
            "trajectory": trajectory(field, params, times),
            "oracle": oracle_run(field, params, times),
            "series": observable_series(field, params, times),
        }
    return runs


def test_criterion_01_oracle_equivalence(standard_runs):
    worst = 0.0
    for tag, run in standard_runs.items():
        deviation = compare(run["trajectory"], run["oracle"]).max_deviation
        worst = max(worst, deviation)
    report(1, worst <= 1e-8, f"max closed-form vs oracle deviation {worst:.3e} (<= 1e-8)")


def test_criterion_02_unitarity(standard_runs):
    worst = 0.0
    for run in standard_runs.values():
        traj, field = run["trajectory"], run["field"]
        closed = (np.abs(traj.c_plus) ** 2 + np.abs(traj.c_minus) ** 2).sum(axis=1)
        worst = max(worst, float(np.abs(closed + field.tail_mass - 1.0).max()))
        worst = max(worst, float(run["oracle"].norm_defect.max()))
    report(2, worst <= 1e-12, f"max norm defect {worst:.3e} (<= 1e-12)")


def test_criterion_03_spectrum():
    worst_residual = 0.0
    worst_gap = 0.0
    for lam in (-0.25, 0.0, 5.0, 50.0, 100.0):
        params = make_params(lam=lam, delta=0.1, g=0.01)
        for n in range(0, 201, 5):
            pair = dressed_pair(n, params)
            block = block_hamiltonian(n, params)
            worst_residual = max(
                worst_residual,
                float(np.linalg.norm(block @ pair.v_plus - pair.e_plus * pair.v_plus)),
                float(np.linalg.norm(block @ pair.v_minus - pair.e_minus * pair.v_minus)),
            )
        table = spectrum_scan(range(0, 201, 20), 1.0, 0.01, lam, -0.5, 0.5, 0.01)
        for n in range(0, 201, 20):
            rows = table[table["n"] == n]
            gap = float((rows["e_plus"] - rows["e_minus"]).min())
            expected = 2 * 0.01 * math.sqrt(2 * n + 2 * lam + 1.0)
            worst_gap = max(worst_gap, abs(gap - expected))
    ok = worst_residual <= 1e-10 and worst_gap <= 1e-12
    report(3, ok, f"eigen-residual {worst_residual:.3e} (<= 1e-10), min-gap error {worst_gap:.3e} (<= 1e-12)")


def test_criterion_04_undeformed_reduction(standard_runs):
    # independent oracle built from the plain boson ladder sqrt(n)
    run = standard_runs["x30_lam0_d0"]
    field, params, times = run["field"], run["params"], run["times"]
    nb = field.amplitudes.size
    d = 2 * (nb - 1) + 3
    lowering = np.diag(np.sqrt(np.arange(1.0, d)), k=1)
    number = np.diag(np.arange(float(d)))
    sz = np.diag([1.0, -1.0])
    s_minus = np.array([[0.0, 0.0], [1.0, 0.0]])
    h = (
        np.kron(np.eye(2), params.omega * (number + 0.5 * np.eye(d)))
        + 0.5 * params.omega0 * np.kron(sz, np.eye(d))
        + params.g * (np.kron(s_minus, lowering.T) + np.kron(s_minus.T, lowering))
    )
    h0_diag = np.concatenate(
        [
            params.omega * (np.arange(d) + 0.5) + 0.5 * params.omega0,
            params.omega * (np.arange(d) + 0.5) - 0.5 * params.omega0,
        ]
    )
    psi0 = np.zeros(2 * d, dtype=complex)
    psi0[2 * np.arange(nb)] = field.amplitudes
    evals, vecs = np.linalg.eigh(h)
    coeffs = vecs.conj().T @ psi0
    psis = (vecs @ (np.exp(-1j * np.outer(times, evals)) * coeffs).T).T
    psis *= np.exp(1j * np.outer(times, h0_diag))
    traj = run["trajectory"]
    deviation = max(
        float(np.abs(psis[:, 2 * np.arange(nb)] - traj.c_plus).max()),
        float(np.abs(psis[:, d + 2 * np.arange(nb) + 1] - traj.c_minus).max()),
    )
    report(4, deviation <= 1e-10, f"plain-boson oracle deviation {deviation:.3e} (<= 1e-10)")


def test_criterion_05_per_block_probability(standard_runs):
    worst = 0.0
    for tag in ("x30_lam0_d0", "x30_lam50_d001", "x9_lam100_d01"):
        run = standard_runs[tag]
        traj = run["trajectory"]
        probs0 = run["field"].probabilities()
        per_block = np.abs(traj.c_plus) ** 2 + np.abs(traj.c_minus) ** 2
        worst = max(worst, float(np.abs(per_block - probs0[None, :]).max()))
    report(5, worst <= 1e-14, f"per-block probability drift {worst:.3e} (<= 1e-14)")


def test_criterion_06_entropy_fidelity_anchors():
    params = make_params(lam=50.0, delta=0.1)
    field = make_field(9.0, 50.0)
    series = observable_series(field, params, scaled_grid(params.g, n_points=2001))
    start_entropy = series.entropy[0]
    fidelity_defect = abs(series.fidelity[0] - (1.0 - field.tail_mass))
    bounded = bool(np.all(series.entropy >= 0.0) and np.all(series.entropy <= LN2 + 1e-12))
    max_entropy = float(series.entropy.max())
    ok = (
        start_entropy <= 1e-12
        and fidelity_defect <= 1e-12
        and bounded
        and max_entropy >= 0.99 * LN2
    )
    report(
        6,
        ok,
        f"S(0)={start_entropy:.2e}, |F(0)-(1-tail)|={fidelity_defect:.2e}, "
        f"S in [0, ln2], max S={max_entropy:.6f} (>= {0.99 * LN2:.6f})",
    )


def test_criterion_07_uncertainty_relation(standard_runs):
    worst = math.inf
    for run in standard_runs.values():
        series = run["series"]
        margin = series.sigma_xx * series.sigma_pp - series.bound**2 * (1.0 - 1e-10)
        worst = min(worst, float(margin.min()))
    report(7, worst >= 0.0, f"min uncertainty margin {worst:.3e} (>= 0)")


def test_criterion_08_mandel_anchor():
    field = make_field(1.0, 0.0)
    state = evolve_excited(field, make_params(), 0.0)
    mean_n = field_moment(state, 1)
    mean_n2 = field_moment(state, 2)
    q = (mean_n2 - mean_n**2) / mean_n - 1.0
    expected = 1.0 / math.tanh(1.0) - math.tanh(1.0)
    deviation = abs(q - expected)
    report(8, deviation <= 1e-10, f"|Q(0) - (coth 1 - tanh 1)| = {deviation:.3e} (<= 1e-10)")


def test_criterion_09_quadrature_phase_exchange():
    params = make_params(lam=5.0, delta=0.1)
    times = scaled_grid(params.g, n_points=2001)
    flat = observable_series(make_field(9.0, 5.0, phase=0.0), params, times)
    turned = observable_series(make_field(9.0, 5.0, phase=math.pi / 2), params, times)
    exchange = float(np.abs(turned.s_x - flat.s_p).max())
    min_sp = float(flat.s_p.min())
    ok = exchange <= 1e-10 and min_sp < 0.0
    report(9, ok, f"max |s_x(pi/2) - s_p(0)| = {exchange:.3e} (<= 1e-10), min s_p = {min_sp:.4f} (< 0)")


def test_criterion_10_collapse_and_revival():
    params = make_params(lam=0.0, delta=0.0)
    field = make_field(30.0, 0.0)
    series = observable_series(field, params, scaled_grid(params.g, n_points=2001))
    window = 50  # 5 units of scaled time on the 0.1-spaced grid
    rms = np.sqrt(np.convolve(series.inversion**2, np.ones(window) / window, mode="valid"))
    i_min = int(np.argmin(rms))
    collapsed = float(rms[i_min])
    revived = float(rms[i_min:].max())
    ok = collapsed < 0.1 and revived > 0.3
    report(10, ok, f"envelope collapses to {collapsed:.3e} (< 0.1) then revives to {revived:.3f} (> 0.3)")


def test_criterion_11_cat_eigenstate_residual():
    worst = 0.0
    for mod_sq, lam in ((1.0, 0.0), (9.0, 10.0), (30.0, 50.0)):
        cat = CatStateParams(mod_sq)
        state = wcs_build(cat, lam, tail_tol=1e-12)
        ladder = FockLadder(lam=lam, n_trunc=2 * state.n_even_max + 2)
        worst = max(worst, wcs_eigenstate_residual(state, cat, ladder))
    report(11, worst < 1e-5, f"max ||a^2 w - w^2 w|| = {worst:.3e} (< 1e-5)")


def test_criterion_12_moment_identity(standard_runs):
    worst = 0.0
    for run in standard_runs.values():
        series = run["series"]
        worst = max(worst, float(np.abs(series.mean_aad - series.mean_n - series.mean_comm).max()))
    report(12, worst <= 1e-12, f"max |<a a+> - <a+ a> - <1+2 lam R>| = {worst:.3e} (<= 1e-12)")
