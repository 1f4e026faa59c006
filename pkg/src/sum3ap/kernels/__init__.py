"""Hot counting and congruence-solving kernels.

The numba implementations in ``jit`` are used by default. Setting the
environment variable ``SUM3AP_DISABLE_NUMBA=1`` before import selects the
pure-numpy twins in ``vec`` instead (same results, slower). ``BACKEND``
names the active one.
"""

import os

from . import vec

if os.environ.get("SUM3AP_DISABLE_NUMBA", "").strip() not in ("", "0"):
    _impl = vec
    BACKEND = "numpy"
else:
    try:
        from . import jit as _impl
    except ImportError:  # numba missing
        _impl = vec
        BACKEND = "numpy"
    else:
        BACKEND = "numba"

r2_table = _impl.r2_table
r3_two_loop = _impl.r3_two_loop
r3_sieve = _impl.r3_sieve
r4_mitm = _impl.r4_mitm
ball_sum = _impl.ball_sum
r3_progression = _impl.r3_progression
bucket_counts_dense = _impl.bucket_counts_dense
reps_in_class = _impl.reps_in_class
reduced_forms = _impl.reduced_forms
solve_prime_power = _impl.solve_prime_power

__all__ = [
    "BACKEND",
    "r2_table",
    "r3_two_loop",
    "r3_sieve",
    "r4_mitm",
    "ball_sum",
    "r3_progression",
    "bucket_counts_dense",
    "reps_in_class",
    "reduced_forms",
    "solve_prime_power",
]
