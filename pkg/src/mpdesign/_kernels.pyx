# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo hot loop; see _kernels_py.py for the reference.

Operation order matches the NumPy fallback exactly so both backends produce
bit-identical results.
"""

from libc.math cimport floor

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def l2_star_batch(counts, double budget_area, double total_area,
                  double count_ratio, double categorize_ratio,
                  double gamma_total):
    """Expected composition variance ratio per predictive count draw."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] n = np.ascontiguousarray(
        counts, dtype=np.float64)
    cdef Py_ssize_t size = n.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(size, dtype=np.float64)
    cdef Py_ssize_t i
    cdef double ni, safe, q, n_bar
    for i in range(size):
        ni = n[i]
        if ni > 0.0:
            safe = ni if ni > 1.0 else 1.0
            q = (budget_area - (total_area + ni * count_ratio)) / (categorize_ratio * safe)
            if q < 0.0:
                q = 0.0
            elif q > 1.0:
                q = 1.0
            n_bar = floor(ni * q)
            out[i] = (gamma_total + 1.0 - n_bar / (gamma_total + n_bar)) / (
                gamma_total + 1.0 + n_bar)
        else:
            out[i] = 1.0
    return out
