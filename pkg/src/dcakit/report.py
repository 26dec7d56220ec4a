"""Data ingestion and report serialization.

Input files are delimited UTF-8 text with a header row by default: one
binary outcome column (literal 0/1) and one or more risk columns with
decimal values in [0, 1]. Reports serialize to JSON (self-describing,
lossless round trip) or CSV (flat, one row per model and threshold);
CSV numbers are rendered with 17 significant digits so parsed values
are bit-identical to the JSON ones.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .calibration import CalibrationSummary
from .comparison import ComparisonVerdict
from .curves import CurvePoint
from .errors import DataError, IngestionError, UsageError
from .metrics import PredictionSet
from .resampling import BandSpec, CurveBand

__all__ = [
    "IngestionSpec",
    "ModelCurve",
    "ComparisonSection",
    "ReportDocument",
    "ingest",
    "file_digest",
    "emit_report",
    "parse_report",
]

FORMATS = ("json", "csv")

_CURVE_COLUMNS = (
    "model",
    "t",
    "nb_model",
    "nb_all",
    "nb_none",
    "s_t",
    "ppv",
    "ppv_none_ref",
    "ppv_all_ref",
    "y_above",
    "y_below",
    "p_above",
    "p_below",
    "delta_t",
    "enrichment",
    "calibration_term",
)
_BAND_COLUMNS = ("nb_lower", "nb_upper", "ppv_lower", "ppv_upper", "ppv_replicates")
_COMPARISON_COLUMNS = (
    "model1",
    "model2",
    "t",
    "nb1",
    "nb2",
    "winner",
    "ppv1",
    "ppv_superiority_ref",
    "margin_above_1",
    "margin_above_2",
    "margin_below_1",
    "margin_below_2",
)


@dataclass(frozen=True)
class IngestionSpec:
    """Where and how to read predictions.

    With ``header=False`` columns are addressed by 0-based index given
    as strings ("0", "1", ...).
    """

    path: str
    outcome_column: str
    model_columns: tuple[str, ...]
    delimiter: str = ","
    header: bool = True

    def __post_init__(self):
        object.__setattr__(self, "model_columns", tuple(self.model_columns))
        if not self.model_columns:
            raise DataError("at least one model column is required")
        if len(self.delimiter) != 1:
            raise DataError(f"delimiter must be a single character, got {self.delimiter!r}")


def file_digest(path: str) -> str:
    """SHA-256 of the raw file bytes; changes iff the bytes change."""
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        digest.update(handle.read())
    return digest.hexdigest()


def _parse_outcome(text: str, row: int, column: str) -> int:
    value = text.strip()
    if value == "0":
        return 0
    if value == "1":
        return 1
    if value == "":
        raise IngestionError("missing outcome value", row=row, column=column)
    raise IngestionError(f"outcome must be literal 0 or 1, got {text!r}", row=row, column=column)


def _parse_risk(text: str, row: int, column: str) -> float:
    value = text.strip()
    if value == "":
        raise IngestionError("missing risk value", row=row, column=column)
    try:
        risk = float(value)
    except ValueError:
        raise IngestionError(f"risk is not a number: {text!r}", row=row, column=column) from None
    if not 0.0 <= risk <= 1.0:
        raise IngestionError(f"risk outside [0, 1]: {text!r}", row=row, column=column)
    return risk


def ingest(spec: IngestionSpec) -> list[PredictionSet]:
    """Read one PredictionSet per model column, all sharing the outcome vector.

    Row order is preserved; rows are numbered from 1 (header excluded)
    in error messages.
    """
    try:
        with open(spec.path, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle, delimiter=spec.delimiter))
    except OSError as exc:
        raise IngestionError(f"cannot read {spec.path!r}: {exc}") from exc
    if not rows:
        raise IngestionError(f"{spec.path!r} is empty")

    if spec.header:
        names = [name.strip() for name in rows[0]]
        data_rows = rows[1:]
    else:
        names = [str(i) for i in range(len(rows[0]))]
        data_rows = rows
    if not data_rows:
        raise IngestionError(f"{spec.path!r} has no data rows")

    index = {}
    for i, name in enumerate(names):
        index.setdefault(name, i)
    wanted = (spec.outcome_column, *spec.model_columns)
    for name in wanted:
        if name not in index:
            raise IngestionError(
                f"column {name!r} not found; available: {', '.join(map(repr, names))}"
            )

    outcomes = []
    risks = {name: [] for name in spec.model_columns}
    for row_number, row in enumerate(data_rows, start=1):
        if len(row) != len(names):
            raise IngestionError(
                f"expected {len(names)} fields, found {len(row)}", row=row_number
            )
        outcomes.append(_parse_outcome(row[index[spec.outcome_column]], row_number,
                                       spec.outcome_column))
        for name in spec.model_columns:
            risks[name].append(_parse_risk(row[index[name]], row_number, name))

    outcome_array = np.array(outcomes, dtype=np.int64)
    return [
        PredictionSet(risks=np.array(risks[name], dtype=np.float64),
                      outcomes=outcome_array, name=name)
        for name in spec.model_columns
    ]


@dataclass(frozen=True)
class ModelCurve:
    """One model's curve points, in grid order."""

    name: str
    points: tuple[CurvePoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))


@dataclass(frozen=True)
class ComparisonSection:
    """Pairwise verdicts for one ordered model pair."""

    model1: str
    model2: str
    verdicts: tuple[ComparisonVerdict, ...]

    def __post_init__(self):
        object.__setattr__(self, "verdicts", tuple(self.verdicts))


@dataclass(frozen=True)
class ReportDocument:
    """Self-describing analysis report: metadata, curves, bands, comparisons."""

    metadata: dict
    models: tuple[ModelCurve, ...] = ()
    bands: dict = field(default_factory=dict)  # model name -> CurveBand
    comparisons: tuple[ComparisonSection, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))
        object.__setattr__(self, "comparisons", tuple(self.comparisons))


def _point_to_dict(point: CurvePoint) -> dict:
    cal = point.calibration
    return {
        "t": point.t,
        "nb_model": point.nb_model,
        "nb_all": point.nb_all,
        "nb_none": point.nb_none,
        "s_t": point.s_t,
        "ppv": point.ppv,
        "ppv_none_ref": point.ppv_none_ref,
        "ppv_all_ref": point.ppv_all_ref,
        "calibration": {
            "t": cal.t,
            "s_t": cal.s_t,
            "y_above": cal.y_above,
            "y_below": cal.y_below,
            "p_above": cal.p_above,
            "p_below": cal.p_below,
            "delta_t": cal.delta_t,
            "enrichment": cal.enrichment,
            "calibration_term": cal.calibration_term,
        },
    }


def _point_from_dict(data: dict) -> CurvePoint:
    return CurvePoint(
        t=data["t"],
        nb_model=data["nb_model"],
        nb_all=data["nb_all"],
        nb_none=data["nb_none"],
        s_t=data["s_t"],
        ppv=data["ppv"],
        ppv_none_ref=data["ppv_none_ref"],
        ppv_all_ref=data["ppv_all_ref"],
        calibration=CalibrationSummary(**data["calibration"]),
    )


def _band_to_dict(band: CurveBand) -> dict:
    return {
        "spec": {
            "replicates": band.spec.replicates,
            "seed": band.spec.seed,
            "level": band.spec.level,
            "method": band.spec.method,
        },
        "thresholds": list(band.thresholds),
        "nb_lower": list(band.nb_lower),
        "nb_upper": list(band.nb_upper),
        "ppv_lower": list(band.ppv_lower),
        "ppv_upper": list(band.ppv_upper),
        "ppv_replicates": list(band.ppv_replicates),
    }


def _band_from_dict(data: dict) -> CurveBand:
    return CurveBand(
        spec=BandSpec(**data["spec"]),
        thresholds=tuple(data["thresholds"]),
        nb_lower=tuple(data["nb_lower"]),
        nb_upper=tuple(data["nb_upper"]),
        ppv_lower=tuple(data["ppv_lower"]),
        ppv_upper=tuple(data["ppv_upper"]),
        ppv_replicates=tuple(data["ppv_replicates"]),
    )


def _verdict_to_dict(v: ComparisonVerdict) -> dict:
    return {
        "t": v.t,
        "nb1": v.nb1,
        "nb2": v.nb2,
        "winner": v.winner,
        "ppv1": v.ppv1,
        "ppv_superiority_ref": v.ppv_superiority_ref,
        "ppv_route_available": v.ppv_route_available,
        "margin_above_1": v.margin_above_1,
        "margin_above_2": v.margin_above_2,
        "margin_below_1": v.margin_below_1,
        "margin_below_2": v.margin_below_2,
    }


def _document_to_dict(doc: ReportDocument) -> dict:
    payload = {
        "metadata": doc.metadata,
        "models": [
            {"name": model.name, "points": [_point_to_dict(p) for p in model.points]}
            for model in doc.models
        ],
    }
    if doc.bands:
        payload["bands"] = {name: _band_to_dict(b) for name, b in doc.bands.items()}
    if doc.comparisons:
        payload["comparisons"] = [
            {
                "model1": section.model1,
                "model2": section.model2,
                "verdicts": [_verdict_to_dict(v) for v in section.verdicts],
            }
            for section in doc.comparisons
        ]
    return payload


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit_csv(doc: ReportDocument) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if doc.models:
        columns = _CURVE_COLUMNS + (_BAND_COLUMNS if doc.bands else ())
        writer.writerow(columns)
        for model in doc.models:
            band = doc.bands.get(model.name) if doc.bands else None
            for j, point in enumerate(model.points):
                cal = point.calibration
                row = [
                    model.name, point.t, point.nb_model, point.nb_all, point.nb_none,
                    point.s_t, point.ppv, point.ppv_none_ref, point.ppv_all_ref,
                    cal.y_above, cal.y_below, cal.p_above, cal.p_below,
                    cal.delta_t, cal.enrichment, cal.calibration_term,
                ]
                if doc.bands:
                    if band is not None:
                        row += [band.nb_lower[j], band.nb_upper[j], band.ppv_lower[j],
                                band.ppv_upper[j], band.ppv_replicates[j]]
                    else:
                        row += [None] * len(_BAND_COLUMNS)
                writer.writerow([_fmt(v) for v in row])
    elif doc.comparisons:
        writer.writerow(_COMPARISON_COLUMNS)
        for section in doc.comparisons:
            for v in section.verdicts:
                writer.writerow([
                    _fmt(x)
                    for x in (
                        section.model1, section.model2, v.t, v.nb1, v.nb2, v.winner,
                        v.ppv1, v.ppv_superiority_ref, v.margin_above_1,
                        v.margin_above_2, v.margin_below_1, v.margin_below_2,
                    )
                ])
    return out.getvalue()


def emit_report(doc: ReportDocument, format: str = "json") -> bytes:
    """Serialize a report; JSON is lossless, CSV is the flat per-row export."""
    if format == "json":
        return (json.dumps(_document_to_dict(doc), indent=2) + "\n").encode("utf-8")
    if format == "csv":
        return _emit_csv(doc).encode("utf-8")
    raise UsageError(f"unknown report format {format!r}; expected one of {FORMATS}")


def parse_report(data: bytes) -> ReportDocument:
    """Rebuild a ReportDocument from its JSON serialization."""
    try:
        payload = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DataError(f"not a valid JSON report: {exc}") from exc
    models = tuple(
        ModelCurve(name=m["name"], points=tuple(_point_from_dict(p) for p in m["points"]))
        for m in payload.get("models", [])
    )
    bands = {
        name: _band_from_dict(b) for name, b in payload.get("bands", {}).items()
    }
    comparisons = tuple(
        ComparisonSection(
            model1=c["model1"],
            model2=c["model2"],
            verdicts=tuple(
                ComparisonVerdict(**v) for v in c["verdicts"]
            ),
        )
        for c in payload.get("comparisons", [])
    )
    return ReportDocument(
        metadata=payload["metadata"], models=models, bands=bands, comparisons=comparisons
    )
