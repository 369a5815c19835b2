"""Test models: analytic benchmark problems and the external-solver adapter."""
from .grid import GridField, GridSpec, center_of_mass
from .analytic import (
    GFunction,
    KLField,
    PoissonExact,
    g_function,
    kl_eigenvalue,
    kl_log_field,
    poisson_default_grid,
    poisson_exact_field,
    poisson_exact_mean,
)
from .external import (
    CampaignResult,
    External,
    ExternalCommandError,
    ExternalError,
    ExternalTimeoutError,
    OutputFormatError,
    OutputValueError,
    external_evaluate,
    read_qoi,
    run_campaign,
    write_qoi,
)

__all__ = [
    "GridField",
    "GridSpec",
    "center_of_mass",
    "GFunction",
    "KLField",
    "PoissonExact",
    "g_function",
    "kl_eigenvalue",
    "kl_log_field",
    "poisson_default_grid",
    "poisson_exact_field",
    "poisson_exact_mean",
    "CampaignResult",
    "External",
    "ExternalCommandError",
    "ExternalError",
    "ExternalTimeoutError",
    "OutputFormatError",
    "OutputValueError",
    "external_evaluate",
    "read_qoi",
    "write_qoi",
    "run_campaign",
]
