"""Pure-numpy recall kernels, the fallback behind assocmem._kernels."""

from __future__ import annotations

import numpy as np


def sign_iterate(weights, q0, max_iters, tol, tie_eps=1e-12):
    """Synchronous sign-activation recall to a fixed point.

    Each step applies the weight matrix, takes elementwise signs (net inputs
    within tie_eps of zero keep the previous sign), and renormalizes to unit
    norm. Stops when the state moves less than tol between steps.

    Returns (state, iterations, converged).
    """
    q = np.array(q0, dtype=np.float64)
    for iteration in range(1, max_iters + 1):
        h = weights @ q
        s = np.where(h > tie_eps, 1.0, np.where(h < -tie_eps, -1.0, np.sign(q)))
        nrm = np.linalg.norm(s)
        q_next = s / nrm if nrm > 0.0 else s
        moved = np.linalg.norm(q_next - q)
        q = q_next
        if moved < tol:
            return q, iteration, True
    return q, max_iters, False


def async_sign_descent(weights, q0, site_order, tie_eps=1e-12):
    """Asynchronous single-site sign updates along an explicit site order.

    ``weights`` must be symmetric. Each visited site is set to the sign of
    its net input (ties keep the current value), preserving the site's
    magnitude. Local fields and the quadratic energy -q.W.q/2 are maintained
    incrementally, which makes the recorded energy trace non-increasing by
    construction whenever the diagonal of ``weights`` is non-negative.

    Returns (state, energies) with len(energies) == len(site_order) + 1.
    """
    q = np.array(q0, dtype=np.float64)
    mags = np.abs(q)
    h = weights @ q
    energy = -0.5 * float(q @ h)
    energies = np.empty(len(site_order) + 1)
    energies[0] = energy
    for t, i in enumerate(site_order):
        hi = h[i]
        if hi > tie_eps:
            target = mags[i]
        elif hi < -tie_eps:
            target = -mags[i]
        else:
            target = q[i]
        delta = target - q[i]
        if delta != 0.0:
            energy += -delta * hi - 0.5 * delta * delta * weights[i, i]
            q[i] = target
            h += delta * weights[i]
        energies[t + 1] = energy
    return q, energies
