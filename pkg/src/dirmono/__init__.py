"""Copula families and grid-based classification of directional monotonicity."""

from .checker import (
    Counterexample,
    DirectionVerdict,
    GridSpec,
    METHOD_BOTH,
    METHOD_INEQUALITY,
    METHOD_ORACLE,
    PASS_AT_RESOLUTION,
    REFUTED,
    UNSUPPORTED,
    UnsupportedDirectionError,
    check_direction_inequality,
    check_direction_oracle,
    check_pair_mixed,
    check_pair_pure,
    recheck_counterexample,
    scan_all_directions,
    scan_direction,
)
from .core import (
    Box,
    DimensionError,
    Direction,
    DirectionError,
    Notion,
    all_directions,
    as_point,
    box_volume,
    direction_from_token,
    frechet_lower,
    frechet_upper,
    join_direction,
    make_direction,
)
from .families import CopulaSpec, ParameterError, cdf, survival_cdf, validate
from .orthant import conditional_prob, marginal_cdf, orthant_prob
from .report import (
    RunConfig,
    ScanReport,
    TOOL_VERSION,
    exit_code,
    format_report,
    report_from_json,
    report_to_json,
)

__version__ = TOOL_VERSION

__all__ = [
    "Box",
    "CopulaSpec",
    "Counterexample",
    "DimensionError",
    "Direction",
    "DirectionError",
    "DirectionVerdict",
    "GridSpec",
    "METHOD_BOTH",
    "METHOD_INEQUALITY",
    "METHOD_ORACLE",
    "Notion",
    "PASS_AT_RESOLUTION",
    "ParameterError",
    "REFUTED",
    "RunConfig",
    "ScanReport",
    "TOOL_VERSION",
    "UNSUPPORTED",
    "UnsupportedDirectionError",
    "all_directions",
    "as_point",
    "box_volume",
    "cdf",
    "check_direction_inequality",
    "check_direction_oracle",
    "check_pair_mixed",
    "check_pair_pure",
    "conditional_prob",
    "direction_from_token",
    "exit_code",
    "format_report",
    "frechet_lower",
    "frechet_upper",
    "join_direction",
    "make_direction",
    "marginal_cdf",
    "orthant_prob",
    "recheck_counterexample",
    "report_from_json",
    "report_to_json",
    "scan_all_directions",
    "scan_direction",
    "survival_cdf",
    "validate",
]
