"""Decision-curve analytics for binary risk prediction models.

Net benefit, PPV curves, threshold-calibration diagnostics, feasible
PPV bounds, pairwise model comparison, and percentile bootstrap bands,
with the algebraic identities that connect them verified at runtime.
"""

__version__ = "0.1.0"

from .calibration import (
    CalibrationSummary,
    nb_decomposition,
    nb_gap_treat_all,
    nb_via_calibration,
    prevalence_identity_residual,
    threshold_calibration,
)
from .comparison import ComparisonVerdict, compare_models, ppv_superiority_reference
from .curves import (
    DEFAULT_GRID,
    CurvePoint,
    SyntheticSpec,
    ThresholdGrid,
    decision_curve,
    generate_synthetic,
    ppv_curve,
)
from .equivalences import (
    DefaultsVerdict,
    PpvInterval,
    ppv_bounds_given_nb,
    ppv_from_nb,
    treat_all_reference_ppv,
    treat_none_reference,
    verdict_vs_defaults,
)
from .errors import (
    DataError,
    InfeasibleNetBenefitError,
    IngestionError,
    RouteDisagreementError,
    ThresholdError,
    UndefinedAtThresholdError,
    UsageError,
)
from .metrics import (
    PredictionRecord,
    PredictionSet,
    ThresholdConfusion,
    UtilityWeights,
    classify_at_threshold,
    intervention_utility,
    nb_equality_gap,
    net_benefit,
    net_benefit_treat_all,
    net_benefit_treat_none,
    ppv,
)
from .report import (
    ComparisonSection,
    IngestionSpec,
    ModelCurve,
    ReportDocument,
    emit_report,
    file_digest,
    ingest,
    parse_report,
)
from .resampling import BandSpec, CurveBand, bootstrap_bands
from .svg import render_svg

__all__ = [
    "__version__",
    "BandSpec",
    "CalibrationSummary",
    "ComparisonSection",
    "ComparisonVerdict",
    "CurveBand",
    "CurvePoint",
    "DataError",
    "DEFAULT_GRID",
    "DefaultsVerdict",
    "InfeasibleNetBenefitError",
    "IngestionError",
    "IngestionSpec",
    "ModelCurve",
    "PpvInterval",
    "PredictionRecord",
    "PredictionSet",
    "ReportDocument",
    "RouteDisagreementError",
    "SyntheticSpec",
    "ThresholdConfusion",
    "ThresholdError",
    "ThresholdGrid",
    "UndefinedAtThresholdError",
    "UsageError",
    "UtilityWeights",
    "bootstrap_bands",
    "classify_at_threshold",
    "compare_models",
    "decision_curve",
    "emit_report",
    "file_digest",
    "generate_synthetic",
    "ingest",
    "intervention_utility",
    "nb_decomposition",
    "nb_equality_gap",
    "nb_gap_treat_all",
    "nb_via_calibration",
    "net_benefit",
    "net_benefit_treat_all",
    "net_benefit_treat_none",
    "parse_report",
    "ppv",
    "ppv_bounds_given_nb",
    "ppv_curve",
    "ppv_from_nb",
    "ppv_superiority_reference",
    "prevalence_identity_residual",
    "render_svg",
    "threshold_calibration",
    "treat_all_reference_ppv",
    "treat_none_reference",
    "verdict_vs_defaults",
]
