"""Hot numeric kernels: Aberth-Ehrlich simultaneous root iteration.

Two implementations of each kernel are kept in sync: a numba ``@njit``
version and a pure-numpy fallback. The environment variable
``SPECPICK_NO_JIT=1`` forces the numpy path (useful for debugging and for
the benchmark in ``benchmarks/bench_roots.py``, which times both).
"""

import os

import numpy as np

_NO_JIT = os.environ.get("SPECPICK_NO_JIT", "").lower() in ("1", "true", "yes")

try:
    if _NO_JIT:
        raise ImportError
    from numba import njit

    JIT_ENABLED = True
except ImportError:
    JIT_ENABLED = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda func: func


def initial_ring(coeffs):
    """Deterministic starting points: a ring at the Cauchy root bound.

    ``coeffs`` is monic, lowest degree first. The small angular offset
    breaks the symmetry of polynomials with symmetric root sets.
    """
    d = coeffs.shape[0] - 1
    radius = 1.0 + np.max(np.abs(coeffs[:-1])) if d > 0 else 1.0
    angles = 2.0 * np.pi * (np.arange(d) + 0.25) / d + 0.4 / d
    return radius * np.exp(1j * angles)


def _aberth_numpy(coeffs, z, max_iter, step_tol, resid_tol):
    """Vectorized Aberth-Ehrlich sweep. Same contract as the jit kernel."""
    d = z.shape[0]
    dcoeffs = coeffs[1:] * np.arange(1, d + 1)
    iters = 0
    for iters in range(1, max_iter + 1):
        p = np.full(d, coeffs[-1], dtype=np.complex128)
        for k in range(d - 1, -1, -1):
            p = p * z + coeffs[k]
        dp = np.full(d, dcoeffs[-1], dtype=np.complex128)
        for k in range(d - 2, -1, -1):
            dp = dp * z + dcoeffs[k]
        if np.all(np.abs(p) <= resid_tol):
            break
        safe = np.abs(dp) > 0.0
        newton = np.zeros(d, dtype=np.complex128)
        newton[safe] = p[safe] / dp[safe]
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        sums = inv.sum(axis=1)
        denom = 1.0 - newton * sums
        step = np.where(np.abs(denom) > 1e-30, newton / denom, newton)
        step[~safe] = 0.0
        z = z - step
        if np.all(np.abs(step) <= step_tol * (1.0 + np.abs(z))):
            break
    return z, iters


@njit(cache=True)
def _aberth_jit(coeffs, z, max_iter, step_tol, resid_tol):
    d = z.shape[0]
    dcoeffs = np.empty(d, dtype=np.complex128)
    for k in range(d):
        dcoeffs[k] = coeffs[k + 1] * (k + 1)
    z = z.copy()
    iters = 0
    for it in range(1, max_iter + 1):
        iters = it
        all_resid_ok = True
        all_steps_ok = True
        znew = np.empty(d, dtype=np.complex128)
        for i in range(d):
            zi = z[i]
            p = coeffs[d]
            for k in range(d - 1, -1, -1):
                p = p * zi + coeffs[k]
            dp = dcoeffs[d - 1]
            for k in range(d - 2, -1, -1):
                dp = dp * zi + dcoeffs[k]
            if abs(p) > resid_tol:
                all_resid_ok = False
            if dp == 0.0:
                znew[i] = zi
                continue
            newton = p / dp
            s = 0.0 + 0.0j
            for j in range(d):
                if j != i:
                    dz = zi - z[j]
                    if dz != 0.0:
                        s += 1.0 / dz
            denom = 1.0 - newton * s
            if abs(denom) > 1e-30:
                step = newton / denom
            else:
                step = newton
            znew[i] = zi - step
            if abs(step) > step_tol * (1.0 + abs(znew[i])):
                all_steps_ok = False
        if all_resid_ok:
            break
        z = znew
        if all_steps_ok:
            break
    return z, iters


def _aberth_batch_numpy(coeff_rows, z0, max_iter, step_tol, resid_tol):
    """Aberth on a batch of same-degree monic polynomials.

    ``coeff_rows`` has shape (B, d+1), ``z0`` shape (B, d). Converged rows
    are frozen so a few stragglers do not perturb the rest.
    """
    B, d = z0.shape
    z = z0.copy()
    powers = np.arange(1, d + 1)
    dcoeffs = coeff_rows[:, 1:] * powers
    active = np.ones(B, dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        za = z[active]
        ca = coeff_rows[active]
        da = dcoeffs[active]
        p = np.broadcast_to(ca[:, -1:], za.shape).copy()
        for k in range(d - 1, -1, -1):
            p = p * za + ca[:, k : k + 1]
        dp = np.broadcast_to(da[:, -1:], za.shape).copy()
        for k in range(d - 2, -1, -1):
            dp = dp * za + da[:, k : k + 1]
        dp = np.where(np.abs(dp) > 0.0, dp, 1.0)
        newton = p / dp
        diff = za[:, :, None] - za[:, None, :]
        eye = np.eye(d, dtype=bool)
        diff[:, eye] = 1.0
        inv = 1.0 / diff
        inv[:, eye] = 0.0
        sums = inv.sum(axis=2)
        denom = 1.0 - newton * sums
        step = np.where(np.abs(denom) > 1e-30, newton / denom, newton)
        za = za - step
        z[active] = za
        done = np.all(np.abs(p) <= resid_tol, axis=1) | np.all(
            np.abs(step) <= step_tol * (1.0 + np.abs(za)), axis=1
        )
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    return z


@njit(cache=True)
def _aberth_batch_jit(coeff_rows, z0, max_iter, step_tol, resid_tol):
    B, d = z0.shape
    z = z0.copy()
    for b in range(B):
        coeffs = coeff_rows[b]
        dcoeffs = np.empty(d, dtype=np.complex128)
        for k in range(d):
            dcoeffs[k] = coeffs[k + 1] * (k + 1)
        for _ in range(max_iter):
            all_resid_ok = True
            all_steps_ok = True
            znew = np.empty(d, dtype=np.complex128)
            for i in range(d):
                zi = z[b, i]
                p = coeffs[d]
                for k in range(d - 1, -1, -1):
                    p = p * zi + coeffs[k]
                dp = dcoeffs[d - 1]
                for k in range(d - 2, -1, -1):
                    dp = dp * zi + dcoeffs[k]
                if abs(p) > resid_tol:
                    all_resid_ok = False
                if dp == 0.0:
                    znew[i] = zi
                    continue
                newton = p / dp
                s = 0.0 + 0.0j
                for j in range(d):
                    if j != i:
                        dz = zi - z[b, j]
                        if dz != 0.0:
                            s += 1.0 / dz
                denom = 1.0 - newton * s
                if abs(denom) > 1e-30:
                    step = newton / denom
                else:
                    step = newton
                znew[i] = zi - step
                if abs(step) > step_tol * (1.0 + abs(znew[i])):
                    all_steps_ok = False
            if all_resid_ok:
                break
            for i in range(d):
                z[b, i] = znew[i]
            if all_steps_ok:
                break
    return z


if JIT_ENABLED:
    aberth = _aberth_jit
    aberth_batch = _aberth_batch_jit
else:
    aberth = _aberth_numpy
    aberth_batch = _aberth_batch_numpy
