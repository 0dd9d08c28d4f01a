"""Kernel backend selection: compiled extension if available, NumPy otherwise.

``BACKEND`` reports which implementation is active. Both backends are
bit-identical (asserted in the test suite), so the choice only affects speed;
``benchmarks/bench_kernels.py`` compares them.
"""

from __future__ import annotations

try:
    from ._kernels import BACKEND, l2_star_batch
except ImportError:  # extension not built
    from ._kernels_py import BACKEND, l2_star_batch

__all__ = ["BACKEND", "l2_star_batch"]
