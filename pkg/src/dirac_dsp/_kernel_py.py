"""Pure numpy scan kernel; the reference for the compiled ``_kernel_ext``.

Both backends expose ``scaled_t11(E, model, Va, Vb, Sa, Sb, a, b, m, hbar, c)``
returning the bounded, phase-removed T11 on an energy array (NaN where a
spinor ratio or wave number makes an interface singular).
"""

from __future__ import annotations

import numpy as np

DIRAC = 0
SCHRODINGER = 1


def _sqrt_branch(z):
    root = np.sqrt(np.abs(z))
    return np.where(z >= 0.0, root + 0j, 1j * root)


def _waves(E, model, Va, Vb, Sa, Sb, m, hbar, c):
    if model == DIRAC:
        mc2 = m * c * c
        hc = hbar * c
        d_alpha = E + mc2
        d_beta = E + mc2 - Vb + Sb
        d_gamma = E + mc2 - Va + Sa
        k = _sqrt_branch(E * E - mc2 * mc2) / hc
        p = _sqrt_branch(d_gamma * (E - mc2 - Va - Sa)) / hc
        q = _sqrt_branch(d_beta * (E - mc2 - Vb - Sb)) / hc
        alpha = hc * k / d_alpha
        beta = hc * q / d_beta
        gamma = hc * p / d_gamma
        return (q, beta), (k, alpha), (p, gamma)
    k = _sqrt_branch(2.0 * m * E) / hbar
    p = _sqrt_branch(2.0 * m * (E - Va)) / hbar
    q = _sqrt_branch(2.0 * m * (E - Vb)) / hbar
    return (q, q), (k, k), (p, p)


def _interface(k1, r1, k2, r2, x, o1=0.0, o2=0.0):
    # o1, o2: points each medium's phases are measured from
    rho = r2 / r1
    u1 = k1 * (x - o1)
    u2 = k2 * (x - o2)
    z11 = 1j * (u2 - u1)
    z12 = -1j * (u1 + u2)
    z21 = -z12
    z22 = -z11
    shift = np.maximum(np.maximum(z11.real, z12.real), np.maximum(z21.real, z22.real))
    plus = 0.5 * (1.0 + rho)
    minus = 0.5 * (1.0 - rho)
    return (plus * np.exp(z11 - shift), minus * np.exp(z12 - shift),
            minus * np.exp(z21 - shift), plus * np.exp(z22 - shift))


def _mul(A, B):
    a11, a12, a21, a22 = A
    b11, b12, b21, b22 = B
    c11 = a11 * b11 + a12 * b21
    c12 = a11 * b12 + a12 * b22
    c21 = a21 * b11 + a22 * b21
    c22 = a21 * b12 + a22 * b22
    peak = np.maximum(np.maximum(np.abs(c11), np.abs(c12)), np.maximum(np.abs(c21), np.abs(c22)))
    return c11 / peak, c12 / peak, c21 / peak, c22 / peak


def scaled_t11(E, model, Va, Vb, Sa, Sb, a, b, m, hbar, c):
    E = np.ascontiguousarray(E, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        (q, beta), (k, alpha), (p, gamma) = _waves(E, model, Va, Vb, Sa, Sb, m, hbar, c)
        # regions I and V are measured from x = -b and x = b
        T = _interface(q, beta, k, alpha, -b, -b, 0.0)
        T = _mul(T, _interface(k, alpha, p, gamma, -a))
        T = _mul(T, _interface(p, gamma, k, alpha, a))
        T = _mul(T, _interface(k, alpha, q, beta, b, 0.0, b))
        u, w = T[0], T[2]
        out = u.real / np.hypot(np.abs(u), np.abs(w))
    bad = ~np.isfinite(out) | (beta == 0) | (alpha == 0) | (gamma == 0)
    out[bad] = np.nan
    return out
