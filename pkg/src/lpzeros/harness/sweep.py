"""Config files, report serialization and the (optionally parallel) sweep."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import yaml

from .cases import (
    DEFAULT_DIGITS,
    DEFAULT_R,
    CaseReport,
    Theorem,
    TheoremCase,
    Verdict,
    run_case,
)


@dataclass(frozen=True)
class ConfigEntry:
    """One config record: a parsed case, or the reason it could not be parsed."""
    index: int
    case: TheoremCase | None
    raw: dict
    error: str | None = None

    @property
    def case_id(self) -> str:
        if self.case is not None and self.case.case_id:
            return self.case.case_id
        return str(self.raw.get("id", f"case-{self.index}"))


def _number(v):
    if isinstance(v, str) and "/" in v:
        return Fraction(v)
    return v


def _params(raw: dict) -> dict:
    out = {}
    for k, v in (raw or {}).items():
        out[k] = [_number(x) for x in v] if isinstance(v, list) else _number(v)
    return out


def parse_config(data) -> list[ConfigEntry]:
    """Turn a loaded YAML document into config entries (order preserved)."""
    if data is None:
        return []
    if isinstance(data, list):
        data = {"cases": data}
    defaults = data.get("defaults", {}) or {}
    entries = []
    for i, raw in enumerate(data.get("cases", []) or []):
        try:
            theorem = Theorem(raw["theorem"])
            case = TheoremCase(
                theorem=theorem,
                params=_params(raw.get("params", {})),
                region_radius=float(raw.get("R", defaults.get("R", DEFAULT_R))),
                digits=int(raw.get("digits", defaults.get("digits", DEFAULT_DIGITS))),
                case_id=str(raw.get("id", f"case-{i}")),
                allow_integer=bool(raw.get("allow_integer", defaults.get("allow_integer", False))),
            )
            entries.append(ConfigEntry(i, case, raw))
        except (KeyError, ValueError, TypeError) as exc:
            entries.append(ConfigEntry(i, None, raw if isinstance(raw, dict) else {}, f"bad config record: {exc!r}"))
    return entries


def load_config(path) -> list[ConfigEntry]:
    with open(path) as fh:
        return parse_config(yaml.safe_load(fh))


def _run_entry(entry: ConfigEntry) -> CaseReport | dict:
    if entry.case is None:
        return {"error": entry.error, "raw": entry.raw}
    return run_case(entry.case)


def sweep(entries: list[ConfigEntry], workers: int = 1) -> list:
    """Run every entry; results follow config order whatever the worker count.

    Invalid records yield a rejected report instead of aborting the sweep.
    """
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_entry, entries))
    else:
        results = [_run_entry(e) for e in entries]
    return [res if isinstance(res, CaseReport) else _rejected(entry, res["error"])
            for entry, res in zip(entries, results)]


def _rejected(entry: ConfigEntry, error: str) -> CaseReport:
    placeholder = TheoremCase(Theorem.HURWITZ, {}, case_id=entry.case_id)
    return CaseReport(placeholder, None, verdict=Verdict.REJECTED, error=error)


def _s(v):
    if v is None:
        return None
    if isinstance(v, (list, tuple)):
        return [_s(x) for x in v]
    return str(v)


def report_to_dict(report: CaseReport) -> dict:
    case = report.case
    return {
        "case_id": case.case_id,
        "theorem": case.theorem.value if report.verdict is not Verdict.REJECTED or case.params else None,
        "params": {k: _s(v) for k, v in case.params.items()},
        "region_radius": _s(case.region_radius),
        "digits": _s(case.digits),
        "prediction_kind": case.prediction_kind.value,
        "predicted": _s(report.predicted),
        "observed_total_in_box": _s(report.observed_total_in_box),
        "observed_positive_real": _s(report.observed_positive_real),
        "observed_real_nonpositive": _s(report.observed_real_nonpositive),
        "observed_nonreal": _s(report.observed_nonreal),
        "observed_nonpositive": _s(report.observed_nonpositive),
        "verdict": report.verdict.value,
        "claims": {k: bool(v) for k, v in report.claims.items()},
        "diagnostics": dict(report.diagnostics),
        "error": report.error,
    }


def report_json(report: CaseReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


SUMMARY_FIELDS = ["case_id", "theorem", "predicted", "observed", "verdict"]


def summary_csv(reports: list[CaseReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_FIELDS)
    for r in reports:
        d = report_to_dict(r)
        writer.writerow([d["case_id"], d["theorem"] or "", d["predicted"] or "",
                         _s(r.primary_observed) if r.observed_total_in_box is not None else "",
                         d["verdict"]])
    return buf.getvalue()


def _safe_name(case_id: str, index: int) -> str:
    keep = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in case_id)
    return f"{index:03d}_{keep}.json"


def write_reports(reports: list[CaseReport], out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, r in enumerate(reports):
        (out / _safe_name(r.case.case_id, i)).write_text(report_json(r))
    (out / "summary.csv").write_text(summary_csv(reports))
    return out


def exit_code(reports: list[CaseReport]) -> int:
    """0 iff no Violation and no Inconclusive verdict."""
    bad = {Verdict.VIOLATION, Verdict.INCONCLUSIVE}
    return 1 if any(r.verdict in bad for r in reports) else 0
