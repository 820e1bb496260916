"""Margin and angle behaviour of linear classifiers under random projection.

The package measures normalised and unnormalised margins before and after
dense Gaussian (or sign-coin) random projection, evaluates the matching
closed-form concentration bounds, and runs seeded Monte Carlo experiments
estimating how often projection distorts angles, inner products, norms
and margins beyond a tolerance band.
"""

from .bounds import (
    Chi2Tails,
    Interval,
    ProjectedMargin,
    TailBound,
    angle_distortion_interval,
    balcan_min_dim,
    chi2_tails,
    min_dim_binary,
    min_dim_multiclass,
    min_dim_oneparam,
    projected_margin_binary,
    projected_margin_multiclass,
    projected_margin_oneparam,
    tail_success_prob,
)
from .data import LabeledDataset, LinearWitness
from .datasets import (
    GeneratedMulticlass,
    GeneratedPair,
    binary_from_two_class,
    counterexample_square,
    mc_separability_1d,
    parallel_hyperplanes,
    random_pair_with_cosine,
    separability_probability_1d,
)
from .margin import (
    OptimizeResult,
    SweepResult,
    binary_margin,
    cosine,
    multiclass_margin,
    multiclass_margin_unnormalised,
    one_param_projected_margin,
    optimize_binary_margin,
    sweep_margin_2d,
)
from .montecarlo import (
    MeanEstimate,
    RejectionCurve,
    TrialConfig,
    mix_seed,
    reject_angle,
    reject_inner,
    reject_margin,
    verify_angle_interval,
    verify_mean,
    verify_norm_tail,
    wilson_interval,
)
from .projection import (
    GAUSSIAN,
    SIGN_COIN,
    BlockProjection,
    ProjectionMatrix,
    block_project,
    new_projection,
    project,
    project_dataset,
    tensor_embed,
)

__version__ = "0.1.0"

__all__ = [
    "BlockProjection",
    "Chi2Tails",
    "GAUSSIAN",
    "GeneratedMulticlass",
    "GeneratedPair",
    "Interval",
    "LabeledDataset",
    "LinearWitness",
    "MeanEstimate",
    "OptimizeResult",
    "ProjectedMargin",
    "ProjectionMatrix",
    "RejectionCurve",
    "SIGN_COIN",
    "SweepResult",
    "TailBound",
    "TrialConfig",
    "angle_distortion_interval",
    "balcan_min_dim",
    "binary_from_two_class",
    "binary_margin",
    "block_project",
    "chi2_tails",
    "cosine",
    "counterexample_square",
    "mc_separability_1d",
    "min_dim_binary",
    "min_dim_multiclass",
    "min_dim_oneparam",
    "mix_seed",
    "multiclass_margin",
    "multiclass_margin_unnormalised",
    "new_projection",
    "one_param_projected_margin",
    "optimize_binary_margin",
    "parallel_hyperplanes",
    "project",
    "project_dataset",
    "projected_margin_binary",
    "projected_margin_multiclass",
    "projected_margin_oneparam",
    "random_pair_with_cosine",
    "reject_angle",
    "reject_inner",
    "reject_margin",
    "separability_probability_1d",
    "sweep_margin_2d",
    "tail_success_prob",
    "tensor_embed",
    "verify_angle_interval",
    "verify_mean",
    "verify_norm_tail",
    "wilson_interval",
]
