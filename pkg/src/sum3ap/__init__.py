"""Sums of three squares in arithmetic progressions.

Exact representation counts (r3, r4), Hurwitz class numbers, a solver for
the congruences y·y ≡ 1, x·y ≡ 0 (mod m), and a pipeline that produces a
certified n ≡ a (mod m) together with a lower bound on r3(n).
"""

__version__ = "0.1.0"

from .arith import Factorization, crt_combine, factorize, mod_inverse, nu_p, primes_upto, squarefree_decompose
from .chowla import (
    ChowlaWitness,
    build_N,
    euler_transform,
    extract_witness,
    hurwitz_witness,
    lower_bound_report,
    select_bucket,
)
from .classnum import (
    HurwitzValue,
    ReducedForm,
    gauss_relation_check,
    hurwitz_for_r3,
    hurwitz_twelve,
    reduced_forms,
)
from .congsolve import (
    CongruenceSolution,
    solve_binary_form,
    solve_mod_2e,
    solve_mod_m,
    solve_mod_pe_odd,
    verify_solution,
)
from .errors import (
    EmptyBuckets,
    InternalContradiction,
    ModuliNotCoprime,
    ModulusMismatch,
    ModulusTooLargeForPipeline,
    NotADiscriminant,
    NotCoprime,
    NotRepresentable,
    PreconditionViolation,
    Sum3Error,
    TooLarge,
)
from .reduction import ReductionCertificate, reduce_full, squarefree_shift, t_multiplier
from .repcount import (
    BucketTable,
    ResidueVec4,
    c_am,
    c_am_local,
    is_local_sum3,
    legendre_is_sum3,
    r3_along_progression,
    r3_bruteforce,
    r3_exact,
    r3_sieved,
    r4_bruteforce,
    r4_buckets,
    r4_buckets_sparse,
    r4_jacobi,
    sigma_star,
    sphere_main_term,
    sum_r3_upto,
)
