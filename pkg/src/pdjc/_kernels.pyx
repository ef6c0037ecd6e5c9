# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the closed-form block evolution.

Same contract as ``pdjc._kernels_py``; see that module for the formulas.
The fused reduction avoids materializing the (n_times, n_blocks)
amplitude arrays.
"""

import numpy as np

from libc.math cimport cos, sin, sqrt

BACKEND_NAME = "compiled"


def evolve_blocks(const double complex[::1] cp0, const double complex[::1] cm0,
                  const double[::1] omega_r, const double[::1] dfrac,
                  const double[::1] kappa, double delta, const double[::1] times):
    """Per-block rotation of the amplitude pairs onto a time grid."""
    cdef Py_ssize_t nt = times.shape[0]
    cdef Py_ssize_t nb = cp0.shape[0]
    cp_arr = np.empty((nt, nb), dtype=np.complex128)
    cm_arr = np.empty((nt, nb), dtype=np.complex128)
    cdef double complex[:, ::1] cp = cp_arr
    cdef double complex[:, ::1] cm = cm_arr
    cdef Py_ssize_t i, n
    cdef double t, th, c, s, hc, hs, ks
    cdef double complex half_m, half_p
    for i in range(nt):
        t = times[i]
        hc = cos(0.5 * delta * t)
        hs = sin(0.5 * delta * t)
        half_m = hc - 1j * hs
        half_p = hc + 1j * hs
        for n in range(nb):
            th = 0.5 * omega_r[n] * t
            c = cos(th)
            s = sin(th)
            ks = kappa[n] * s
            cp[i, n] = (cp0[n] * (c + 1j * (dfrac[n] * s)) - 1j * ks * cm0[n]) * half_m
            cm[i, n] = (cm0[n] * (c - 1j * (dfrac[n] * s)) - 1j * ks * cp0[n]) * half_p
    return cp_arr, cm_arr


def accumulate_series(const double complex[::1] cp0, const double complex[::1] cm0,
                      const double[::1] omega_r, const double[::1] dfrac,
                      const double[::1] kappa, double delta, double lam,
                      const double[::1] times):
    """Evolve and reduce in one pass; see the python backend docstring."""
    cdef Py_ssize_t nt = times.shape[0]
    cdef Py_ssize_t nb = cp0.shape[0]
    gp_arr = np.empty(nt)
    gm_arr = np.empty(nt)
    n1_arr = np.empty(nt)
    n2_arr = np.empty(nt)
    aad_arr = np.empty(nt)
    comm_arr = np.empty(nt)
    a2_arr = np.empty(nt, dtype=np.complex128)
    ov_arr = np.empty(nt, dtype=np.complex128)
    cdef double[::1] gp = gp_arr
    cdef double[::1] gm = gm_arr
    cdef double[::1] n1 = n1_arr
    cdef double[::1] n2 = n2_arr
    cdef double[::1] aad = aad_arr
    cdef double[::1] comm = comm_arr
    cdef double complex[::1] a2 = a2_arr
    cdef double complex[::1] ov = ov_arr

    scratch_p = np.empty(nb, dtype=np.complex128)
    scratch_m = np.empty(nb, dtype=np.complex128)
    cdef double complex[::1] bp = scratch_p
    cdef double complex[::1] bm = scratch_m

    cdef Py_ssize_t i, n
    cdef double t, th, c, s, hc, hs, ks
    cdef double pp, pm, w_even, w_odd
    cdef double sum_gp, sum_gm, sum_n1, sum_n2, sum_aad
    cdef double complex half_m, half_p, sum_a2, sum_ov
    for i in range(nt):
        t = times[i]
        hc = cos(0.5 * delta * t)
        hs = sin(0.5 * delta * t)
        half_m = hc - 1j * hs
        half_p = hc + 1j * hs
        sum_gp = 0.0
        sum_gm = 0.0
        sum_n1 = 0.0
        sum_n2 = 0.0
        sum_aad = 0.0
        sum_a2 = 0.0
        sum_ov = 0.0
        for n in range(nb):
            th = 0.5 * omega_r[n] * t
            c = cos(th)
            s = sin(th)
            ks = kappa[n] * s
            bp[n] = (cp0[n] * (c + 1j * (dfrac[n] * s)) - 1j * ks * cm0[n]) * half_m
            bm[n] = (cm0[n] * (c - 1j * (dfrac[n] * s)) - 1j * ks * cp0[n]) * half_p
            pp = bp[n].real * bp[n].real + bp[n].imag * bp[n].imag
            pm = bm[n].real * bm[n].real + bm[n].imag * bm[n].imag
            w_even = 2.0 * n
            w_odd = 2.0 * n + 1.0 + 2.0 * lam
            sum_gp += pp
            sum_gm += pm
            sum_n1 += pp * w_even + pm * w_odd
            sum_n2 += pp * w_even * w_even + pm * w_odd * w_odd
            sum_aad += pp * (2.0 * n + 2.0 * lam + 1.0) + pm * (2.0 * n + 2.0)
            sum_ov += cp0[n].conjugate() * bp[n] + cm0[n].conjugate() * bm[n]
            if n > 0:
                sum_a2 += bp[n - 1].conjugate() * bp[n] * sqrt(
                    (2.0 * (n - 1) + 2.0) * (2.0 * (n - 1) + 2.0 * lam + 1.0))
                sum_a2 += bm[n - 1].conjugate() * bm[n] * sqrt(
                    (2.0 * (n - 1) + 2.0) * (2.0 * (n - 1) + 2.0 * lam + 3.0))
        gp[i] = sum_gp
        gm[i] = sum_gm
        n1[i] = sum_n1
        n2[i] = sum_n2
        aad[i] = sum_aad
        comm[i] = (1.0 + 2.0 * lam) * sum_gp + (1.0 - 2.0 * lam) * sum_gm
        a2[i] = sum_a2
        ov[i] = sum_ov
    return gp_arr, gm_arr, n1_arr, n2_arr, aad_arr, comm_arr, a2_arr, ov_arr
