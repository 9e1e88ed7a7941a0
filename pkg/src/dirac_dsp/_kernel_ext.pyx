# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel; same contract as ``_kernel_py.scaled_t11``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot, NAN, isfinite

cdef extern from "complex.h" nogil:
    double complex cexp(double complex z)
    double creal(double complex z)
    double cimag(double complex z)
    double cabs(double complex z)

cnp.import_array()

cdef enum:
    DIRAC = 0

cdef inline double complex _sqrt_branch(double z) noexcept nogil:
    if z >= 0.0:
        return sqrt(z) + 0j
    return 1j * sqrt(-z)


cdef inline void _interface(double complex k1, double complex r1,
                            double complex k2, double complex r2, double x,
                            double o1, double o2, double complex* out) noexcept nogil:
    # o1, o2: points each medium's phases are measured from
    cdef double complex rho = r2 / r1
    cdef double complex u1 = k1 * (x - o1)
    cdef double complex u2 = k2 * (x - o2)
    cdef double complex z11 = 1j * (u2 - u1)
    cdef double complex z12 = -1j * (u1 + u2)
    cdef double complex z21 = -z12
    cdef double complex z22 = -z11
    cdef double shift = creal(z11)
    if creal(z12) > shift:
        shift = creal(z12)
    if creal(z21) > shift:
        shift = creal(z21)
    if creal(z22) > shift:
        shift = creal(z22)
    cdef double complex plus = 0.5 * (1.0 + rho)
    cdef double complex minus = 0.5 * (1.0 - rho)
    out[0] = plus * cexp(z11 - shift)
    out[1] = minus * cexp(z12 - shift)
    out[2] = minus * cexp(z21 - shift)
    out[3] = plus * cexp(z22 - shift)


cdef inline void _mul(double complex* A, double complex* B) noexcept nogil:
    # A <- A @ B, rescaled to unit max-modulus
    cdef double complex c11 = A[0] * B[0] + A[1] * B[2]
    cdef double complex c12 = A[0] * B[1] + A[1] * B[3]
    cdef double complex c21 = A[2] * B[0] + A[3] * B[2]
    cdef double complex c22 = A[2] * B[1] + A[3] * B[3]
    cdef double peak = cabs(c11)
    if cabs(c12) > peak:
        peak = cabs(c12)
    if cabs(c21) > peak:
        peak = cabs(c21)
    if cabs(c22) > peak:
        peak = cabs(c22)
    A[0] = c11 / peak
    A[1] = c12 / peak
    A[2] = c21 / peak
    A[3] = c22 / peak


cdef double _scaled_one(double E, int model, double Va, double Vb, double Sa, double Sb,
                        double a, double b, double m, double hbar, double c) noexcept nogil:
    cdef double mc2, hc, d_alpha, d_beta, d_gamma, value
    cdef double complex k, p, q, alpha, beta, gamma, u, w
    cdef double complex T[4]
    cdef double complex M[4]
    if model == DIRAC:
        mc2 = m * c * c
        hc = hbar * c
        d_alpha = E + mc2
        d_beta = E + mc2 - Vb + Sb
        d_gamma = E + mc2 - Va + Sa
        if d_alpha == 0.0 or d_beta == 0.0 or d_gamma == 0.0:
            return NAN
        k = _sqrt_branch(E * E - mc2 * mc2) / hc
        p = _sqrt_branch(d_gamma * (E - mc2 - Va - Sa)) / hc
        q = _sqrt_branch(d_beta * (E - mc2 - Vb - Sb)) / hc
        alpha = hc * k / d_alpha
        beta = hc * q / d_beta
        gamma = hc * p / d_gamma
    else:
        k = _sqrt_branch(2.0 * m * E) / hbar
        p = _sqrt_branch(2.0 * m * (E - Va)) / hbar
        q = _sqrt_branch(2.0 * m * (E - Vb)) / hbar
        alpha = k
        beta = q
        gamma = p
    if alpha == 0 or beta == 0 or gamma == 0:
        return NAN
    # regions I and V are measured from x = -b and x = b
    _interface(q, beta, k, alpha, -b, -b, 0.0, T)
    _interface(k, alpha, p, gamma, -a, 0.0, 0.0, M)
    _mul(T, M)
    _interface(p, gamma, k, alpha, a, 0.0, 0.0, M)
    _mul(T, M)
    _interface(k, alpha, q, beta, b, 0.0, b, M)
    _mul(T, M)
    u = T[0]
    w = T[2]
    value = creal(u) / hypot(cabs(u), cabs(w))
    if not isfinite(value):
        return NAN
    return value


def scaled_t11(E, int model, double Va, double Vb, double Sa, double Sb,
               double a, double b, double m, double hbar, double c):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] energies = np.ascontiguousarray(E, dtype=np.float64).ravel()
    cdef Py_ssize_t n = energies.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] ev = energies
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            ov[i] = _scaled_one(ev[i], model, Va, Vb, Sa, Sb, a, b, m, hbar, c)
    return out.reshape(np.shape(E))
