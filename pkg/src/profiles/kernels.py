"""
Numba kernels for exact matrix-profile joins.

The join walks rows of the (A windows x B windows) distance matrix. Each row
of centered covariances is derived from the previous one with the streaming
update

    C[i, j] = C[i-1, j-1] + df_a[i] * dg_b[j] + df_b[j] * dg_a[i]

which is the QT recurrence rewritten on mean-centered products. Rows are
split into fixed-size blocks that run in parallel; every block seeds its
first row directly, so results depend on the block size but never on the
number of threads.
"""

import math

import numba
import numpy as np
from numba import njit, prange


# Distances below this are re-checked for bitwise-identical windows.
IDENTITY_CHECK = 1e-4


@njit(cache=True)
def streaming_terms(values, means, m):
    """df / dg terms of the centered-covariance update."""
    l = means.shape[0]
    df = np.zeros(l)
    dg = np.zeros(l)
    for i in range(1, l):
        x_in = values[i + m - 1]
        x_out = values[i - 1]
        df[i] = (x_in - x_out) * 0.5
        dg[i] = (x_in - means[i]) + (x_out - means[i - 1])
    return df, dg


@njit(cache=True)
def _centered_dot(a, a_start, a_mean, b, b_start, b_mean, m):
    acc = 0.0
    for t in range(m):
        acc += (a[a_start + t] - a_mean) * (b[b_start + t] - b_mean)
    return acc


@njit(cache=True)
def _same_window(a, a_start, b, b_start, m):
    for t in range(m):
        if a[a_start + t] != b[b_start + t]:
            return False
    return True


@njit(cache=True)
def _pair_distance(cov, inv_a, inv_b, const_a, const_b, two_m, sqrt_2m):
    if const_a:
        if const_b:
            return 0.0
        return sqrt_2m
    if const_b:
        return sqrt_2m
    rho = cov * inv_a * inv_b
    if rho > 1.0:
        rho = 1.0
    elif rho < -1.0:
        rho = -1.0
    d2 = two_m * (1.0 - rho)
    if d2 < 0.0:
        d2 = 0.0
    return math.sqrt(d2)


@njit(parallel=True, cache=True)
def join_kernel(
    a, mu_a, inv_a, const_a, df_a, dg_a,
    b, mu_b, inv_b, const_b, df_b, dg_b,
    m, exclusion, row_block
):
    """
    Nearest neighbor in B for every window of A.

    ``exclusion < 0`` disables the trivial-match zone; otherwise candidates
    with |i - j| <= exclusion are skipped. Ties resolve to the lowest j.
    """
    la = mu_a.shape[0]
    lb = mu_b.shape[0]
    profile = np.full(la, np.inf)
    index = np.full(la, -1, dtype=np.int64)
    two_m = 2.0 * m
    sqrt_2m = math.sqrt(two_m)
    max_distance = 2.0 * math.sqrt(m)
    n_blocks = (la + row_block - 1) // row_block

    for blk in prange(n_blocks):
        start = blk * row_block
        stop = min(start + row_block, la)
        cov = np.empty(lb)
        for j in range(lb):
            cov[j] = _centered_dot(a, start, mu_a[start], b, j, mu_b[j], m)

        for i in range(start, stop):
            best = np.inf
            best_j = -1
            for j in range(lb - 1, -1, -1):
                if i > start:
                    if j > 0:
                        cov[j] = cov[j - 1] + df_a[i] * dg_b[j] + df_b[j] * dg_a[i]
                    else:
                        cov[0] = _centered_dot(a, i, mu_a[i], b, 0, mu_b[0], m)
                if exclusion >= 0 and abs(i - j) <= exclusion:
                    continue
                d = _pair_distance(
                    cov[j], inv_a[i], inv_b[j], const_a[i], const_b[j], two_m, sqrt_2m
                )
                if d > max_distance:
                    d = max_distance
                elif d < IDENTITY_CHECK and _same_window(a, i, b, j, m):
                    d = 0.0
                # descending scan: <= keeps the lowest index among ties
                if d <= best:
                    best = d
                    best_j = j
            profile[i] = best
            index[i] = best_j

    return profile, index


def apply_thread_count(threads: int) -> int:
    """Set numba's worker count (0 = all launched threads); returns the count in use."""
    available = numba.config.NUMBA_NUM_THREADS
    count = available if threads <= 0 else min(threads, available)
    numba.set_num_threads(count)
    return count
