"""Kernel-based stochastic collocation for forward uncertainty propagation.

Samples a parameter box with a low-discrepancy sequence, interpolates
model outputs with radial kernels, and integrates the interpolant against
the uniform parameter density to estimate first stochastic moments.  A
file-protocol adapter drives external solvers non-intrusively, and a
study harness sweeps kernels and sample counts to measure convergence.
"""
from .param_space import (
    CollocationSet,
    MAX_DIM,
    ParameterDomain,
    halton_points,
    radical_inverse,
)
from .kernels import (
    FAMILIES,
    KernelSpec,
    NormSpec,
    kernel_eval,
    kernel_matrix,
    quadratic_form,
)
from .collocation import (
    ConditionReport,
    GramMatrix,
    Interpolant,
    Regularization,
    SingularGramError,
    Tikhonov,
    TSVD,
    assemble_gram,
    condition_report,
    lagrange_values,
    solve,
)
from .quadrature import (
    MomentWeights,
    TensorRule,
    cc_nodes_weights,
    cc_rule,
    estimate_mean,
    kernel_moments,
    moment_weights,
)
from .models import (
    CampaignResult,
    External,
    ExternalCommandError,
    ExternalError,
    ExternalTimeoutError,
    GFunction,
    GridField,
    GridSpec,
    KLField,
    OutputFormatError,
    OutputValueError,
    PoissonExact,
    center_of_mass,
    external_evaluate,
    g_function,
    kl_eigenvalue,
    kl_log_field,
    poisson_default_grid,
    poisson_exact_field,
    poisson_exact_mean,
    read_qoi,
    run_campaign,
    write_qoi,
)
from .study import (
    KernelSetting,
    NORM_TAGS,
    ReferenceSpec,
    StudyConfig,
    StudyError,
    StudyReport,
    error_norm,
    evaluate_samples,
    fit_order,
    kernel_reference,
    mc_baseline,
    run_study,
    write_report,
)
from .config import ConfigError, RunConfig, load_config, parse_config

__version__ = "0.1.0"

__all__ = [
    "CollocationSet",
    "MAX_DIM",
    "ParameterDomain",
    "halton_points",
    "radical_inverse",
    "FAMILIES",
    "KernelSpec",
    "NormSpec",
    "kernel_eval",
    "kernel_matrix",
    "quadratic_form",
    "ConditionReport",
    "GramMatrix",
    "Interpolant",
    "Regularization",
    "SingularGramError",
    "Tikhonov",
    "TSVD",
    "assemble_gram",
    "condition_report",
    "lagrange_values",
    "solve",
    "MomentWeights",
    "TensorRule",
    "cc_nodes_weights",
    "cc_rule",
    "estimate_mean",
    "kernel_moments",
    "moment_weights",
    "CampaignResult",
    "External",
    "ExternalCommandError",
    "ExternalError",
    "ExternalTimeoutError",
    "GFunction",
    "GridField",
    "GridSpec",
    "KLField",
    "OutputFormatError",
    "OutputValueError",
    "PoissonExact",
    "center_of_mass",
    "external_evaluate",
    "g_function",
    "kl_eigenvalue",
    "kl_log_field",
    "poisson_default_grid",
    "poisson_exact_field",
    "poisson_exact_mean",
    "read_qoi",
    "run_campaign",
    "write_qoi",
    "KernelSetting",
    "NORM_TAGS",
    "ReferenceSpec",
    "StudyConfig",
    "StudyError",
    "StudyReport",
    "error_norm",
    "evaluate_samples",
    "fit_order",
    "kernel_reference",
    "mc_baseline",
    "run_study",
    "write_report",
    "ConfigError",
    "RunConfig",
    "load_config",
    "parse_config",
    "__version__",
]
