"""Run configuration, scan reports and their serializations.

The json form is the canonical one: it is versioned, lossless (floats
survive a round trip bit-exactly via repr) and deterministic apart from
the timing block.  Text is a human table, csv one row per direction.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

from .checker import (
    Counterexample,
    DirectionVerdict,
    PASS_AT_RESOLUTION,
    REFUTED,
    UNSUPPORTED,
)
from .core import Direction, Notion, direction_from_token
from .families import CopulaSpec

TOOL_VERSION = "0.1.0"
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    """Everything a scan needs; echoed verbatim into the report."""

    spec: CopulaSpec
    directions: tuple[Direction, ...] | None  # None means all 2^n
    grid: int
    method: str
    notion: Notion
    tol: float
    eps_den: float
    fmt: str = "text"
    out: str | None = None
    allow_conjectural_pure: bool = False


@dataclass(frozen=True)
class ScanReport:
    config: RunConfig
    verdicts: tuple[DirectionVerdict, ...]
    disagreements: tuple[str, ...]
    elapsed_seconds: float
    schema_version: int = SCHEMA_VERSION
    tool_version: str = TOOL_VERSION


def exit_code(report: ScanReport) -> int:
    """0 all passed, 1 any refuted or not fully supported, 3 disagreement."""
    if report.disagreements:
        return 3
    outcomes = [v.outcome for v in report.verdicts]
    if any(o == REFUTED for o in outcomes):
        return 1
    if all(o == PASS_AT_RESOLUTION for o in outcomes):
        return 0
    # unsupported verdicts: a pass cannot be claimed
    return 1


# ---------------------------------------------------------------- dict forms


def _spec_to_dict(spec: CopulaSpec) -> dict[str, Any]:
    return {
        "family": spec.family,
        "dim": spec.dim,
        "params": {k: float(v) for k, v in sorted(spec.params.items())},
        "inner": _spec_to_dict(spec.inner) if spec.inner is not None else None,
    }


def _spec_from_dict(data: dict[str, Any]) -> CopulaSpec:
    inner = data.get("inner")
    return CopulaSpec(
        family=data["family"],
        dim=int(data["dim"]),
        params={k: float(v) for k, v in data.get("params", {}).items()},
        inner=_spec_from_dict(inner) if inner else None,
    )


def _cex_to_dict(cex: Counterexample | None) -> dict[str, Any] | None:
    if cex is None:
        return None
    return {
        "kind": cex.kind,
        "direction": cex.direction.token(),
        "u_low": [float(x) for x in cex.u_low],
        "u_high": [float(x) for x in cex.u_high],
        "lhs": float(cex.lhs),
        "rhs": float(cex.rhs),
        "violation": float(cex.violation),
        "target": [float(x) for x in cex.target] if cex.target is not None else None,
        # axes are 1-based in serialized reports
        "axis": cex.axis + 1 if cex.axis is not None else None,
    }


def _cex_from_dict(data: dict[str, Any] | None) -> Counterexample | None:
    if data is None:
        return None
    return Counterexample(
        direction=direction_from_token(data["direction"]),
        u_low=tuple(float(x) for x in data["u_low"]),
        u_high=tuple(float(x) for x in data["u_high"]),
        lhs=float(data["lhs"]),
        rhs=float(data["rhs"]),
        violation=float(data["violation"]),
        kind=data["kind"],
        target=tuple(float(x) for x in data["target"]) if data.get("target") else None,
        axis=data["axis"] - 1 if data.get("axis") is not None else None,
    )


def _verdict_to_dict(v: DirectionVerdict) -> dict[str, Any]:
    return {
        "direction": v.direction.token(),
        "outcome": v.outcome,
        "method": v.method,
        "pairs_tested": v.pairs_tested,
        "max_slack": float(v.max_slack) if v.max_slack is not None else None,
        "counterexample": _cex_to_dict(v.counterexample),
        "inequality_outcome": v.inequality_outcome,
        "oracle_outcome": v.oracle_outcome,
        "methods_agree": v.methods_agree,
        "conjectural_outcome": v.conjectural_outcome,
    }


def _verdict_from_dict(data: dict[str, Any]) -> DirectionVerdict:
    return DirectionVerdict(
        direction=direction_from_token(data["direction"]),
        method=data["method"],
        outcome=data["outcome"],
        pairs_tested=int(data["pairs_tested"]),
        max_slack=float(data["max_slack"]) if data["max_slack"] is not None else None,
        counterexample=_cex_from_dict(data.get("counterexample")),
        inequality_outcome=data.get("inequality_outcome"),
        oracle_outcome=data.get("oracle_outcome"),
        methods_agree=data.get("methods_agree"),
        conjectural_outcome=data.get("conjectural_outcome"),
    )


def _config_to_dict(cfg: RunConfig) -> dict[str, Any]:
    return {
        "family": _spec_to_dict(cfg.spec),
        "directions": (
            "all" if cfg.directions is None else [d.token() for d in cfg.directions]
        ),
        "grid": cfg.grid,
        "method": cfg.method,
        "notion": cfg.notion.value,
        "derived_by_duality": cfg.notion is Notion.DECREASING,
        "tol": float(cfg.tol),
        "eps_den": float(cfg.eps_den),
        "format": cfg.fmt,
        "out": cfg.out,
        "allow_conjectural_pure": cfg.allow_conjectural_pure,
    }


def _config_from_dict(data: dict[str, Any]) -> RunConfig:
    directions = data["directions"]
    return RunConfig(
        spec=_spec_from_dict(data["family"]),
        directions=(
            None
            if directions == "all"
            else tuple(direction_from_token(t) for t in directions)
        ),
        grid=int(data["grid"]),
        method=data["method"],
        notion=Notion(data["notion"]),
        tol=float(data["tol"]),
        eps_den=float(data["eps_den"]),
        fmt=data.get("format", "text"),
        out=data.get("out"),
        allow_conjectural_pure=bool(data.get("allow_conjectural_pure", False)),
    )


def report_to_dict(report: ScanReport) -> dict[str, Any]:
    return {
        "schema_version": report.schema_version,
        "tool_version": report.tool_version,
        "config": _config_to_dict(report.config),
        "verdicts": [_verdict_to_dict(v) for v in report.verdicts],
        "disagreements": list(report.disagreements),
        "timing": {"elapsed_seconds": float(report.elapsed_seconds)},
    }


def report_from_dict(data: dict[str, Any]) -> ScanReport:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {data.get('schema_version')!r}")
    return ScanReport(
        config=_config_from_dict(data["config"]),
        verdicts=tuple(_verdict_from_dict(v) for v in data["verdicts"]),
        disagreements=tuple(data.get("disagreements", [])),
        elapsed_seconds=float(data["timing"]["elapsed_seconds"]),
        schema_version=int(data["schema_version"]),
        tool_version=data["tool_version"],
    )


def report_to_json(report: ScanReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_from_json(text: str) -> ScanReport:
    return report_from_dict(json.loads(text))


# ------------------------------------------------------------- text and csv


def _point(p) -> str:
    return "(" + ",".join(repr(float(x)) for x in p) + ")"


def _outcome_label(v: DirectionVerdict, grid: int) -> str:
    if v.outcome == PASS_AT_RESOLUTION:
        return f"PASS@g={grid}"
    if v.outcome == REFUTED:
        return f"REFUTED@g={grid}"
    return "UNSUPPORTED"


def format_text(report: ScanReport) -> str:
    cfg = report.config
    lines = [
        f"# dirmono scan report (schema {report.schema_version}, tool {report.tool_version})",
        f"# copula: {cfg.spec.describe()}  grid: g={cfg.grid}  method: {cfg.method}"
        f"  notion: {cfg.notion.value}  tol: {cfg.tol:g}  eps_den: {cfg.eps_den:g}",
    ]
    if cfg.notion is Notion.DECREASING:
        lines.append("# decreasing notion: checks derived-by-duality from the increasing ones")
    for v in report.verdicts:
        slack = "n/a" if v.max_slack is None else f"{v.max_slack:.6e}"
        lines.append(
            f"{v.direction.pretty():<14} {_outcome_label(v, cfg.grid):<14} "
            f"{v.method:<11} pairs={v.pairs_tested} slack={slack}"
        )
        cex = v.counterexample
        if cex is not None:
            detail = (
                f"    counterexample[{cex.kind}]: u={_point(cex.u_low)} u'={_point(cex.u_high)} "
                f"lhs={cex.lhs!r} rhs={cex.rhs!r} violation={cex.violation!r}"
            )
            if cex.target is not None:
                detail += f" target={_point(cex.target)} axis={cex.axis + 1}"
            lines.append(detail)
        if v.conjectural_outcome is not None:
            lines.append(f"    conjectural single-swap inequality: {v.conjectural_outcome}")
    if report.disagreements:
        lines.append("# METHOD DISAGREEMENT on: " + ", ".join(report.disagreements))
    lines.append(f"# elapsed: {report.elapsed_seconds:.3f} s")
    return "\n".join(lines) + "\n"


_CSV_FIELDS = [
    "direction",
    "outcome",
    "method",
    "pairs_tested",
    "max_slack",
    "inequality_outcome",
    "oracle_outcome",
    "methods_agree",
    "conjectural_outcome",
    "cex_kind",
    "cex_u_low",
    "cex_u_high",
    "cex_lhs",
    "cex_rhs",
    "cex_violation",
    "cex_target",
    "cex_axis",
]


def format_csv(report: ScanReport) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for v in report.verdicts:
        cex = v.counterexample
        row = {
            "direction": v.direction.token(),
            "outcome": v.outcome,
            "method": v.method,
            "pairs_tested": v.pairs_tested,
            "max_slack": repr(v.max_slack) if v.max_slack is not None else "",
            "inequality_outcome": v.inequality_outcome or "",
            "oracle_outcome": v.oracle_outcome or "",
            "methods_agree": "" if v.methods_agree is None else str(v.methods_agree).lower(),
            "conjectural_outcome": v.conjectural_outcome or "",
            "cex_kind": cex.kind if cex else "",
            "cex_u_low": ";".join(repr(float(x)) for x in cex.u_low) if cex else "",
            "cex_u_high": ";".join(repr(float(x)) for x in cex.u_high) if cex else "",
            "cex_lhs": repr(cex.lhs) if cex else "",
            "cex_rhs": repr(cex.rhs) if cex else "",
            "cex_violation": repr(cex.violation) if cex else "",
            "cex_target": (
                ";".join(repr(float(x)) for x in cex.target)
                if cex and cex.target is not None
                else ""
            ),
            "cex_axis": cex.axis + 1 if cex and cex.axis is not None else "",
        }
        writer.writerow(row)
    return buf.getvalue()


def format_report(report: ScanReport, fmt: str) -> str:
    if fmt == "json":
        return report_to_json(report)
    if fmt == "csv":
        return format_csv(report)
    if fmt == "text":
        return format_text(report)
    raise ValueError(f"unknown report format {fmt!r}")
