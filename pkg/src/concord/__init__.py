"""Concordance signatures: attainability, completion, estimation, sampling.

The even concordance signature of a d-dimensional copula (concordance
probabilities over even-cardinality index sets) pins down a unique mixture
of the 2^(d-1) extremal copulas through an invertible 0/1 linear system.
This package builds that system, decides whether partially specified
signatures or Kendall rank correlation matrices are attainable, bounds and
encloses the missing entries, estimates attainable signatures from data,
evaluates elliptical signatures and their heavy-tail limits, and samples
from extremal mixtures.
"""

from .amatrix import build_A_matrix
from .attainability import (
    BoundsReport,
    FeasibilityCertificate,
    PartialSignature,
    WeightPolytope,
    bound_missing,
    check_attainable,
    check_cut_polytope,
    enumerate_vertices,
    hull_contains,
    project_vertices,
)
from .coding import ExtremalCode, binary_code, canonical_index
from .elliptical import (
    EllipticalSignatureResult,
    McConfig,
    OrthantEstimate,
    TLimitResult,
    arcsin_tau_matrix,
    bivariate_kappa,
    elliptical_attainable,
    elliptical_signature,
    rank_deficient_support,
    sin_transform,
    t_limit_weights,
    trivariate_kappa,
)
from .equiconcordant import (
    ComonotonicProfile,
    SkeletalSignature,
    SkeletalSolution,
    build_B_matrix,
    b_matrix_fractions,
    comonotonic_profile,
    expand_skeletal,
    is_equiconcordant,
    skeletal_from_even,
    skeletal_solve,
)
from .errors import ConcordError
from .estimation import (
    EmpiricalSignature,
    SampleMatrix,
    bootstrap_standard_errors,
    empirical_signature,
    empirical_signature_ties,
    ingest_csv,
)
from .sampler import (
    DiagnosticReport,
    MixtureSample,
    extremal_cdf,
    mixture_cdf,
    sample_dependent_bernoulli_counterexample,
    sample_mixture,
    validate_mixture,
)
from .signatures import (
    EvenSignature,
    FullSignature,
    MixtureWeights,
    extend_to_full,
    kappa_to_tau,
    kendall_matrix_from_even,
    signature_from_weights,
    tau_kappa_convert,
    tau_to_kappa,
    weights_from_signature,
)

__version__ = "0.1.0"
