"""Check reports: the uniform result record for every bounded verification,
plus deterministic serialization (JSON, TSV) and a timing figure.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class CheckReport:
    name: str
    params: Mapping[str, object]
    verdict: str
    millis: float
    counterexample: str | None = None

    def __post_init__(self) -> None:
        if self.verdict not in (PASS, FAIL):
            raise ValueError(f"verdict must be pass or fail, got {self.verdict!r}")
        if (self.counterexample is not None) != (self.verdict == FAIL):
            raise ValueError("counterexample must be present exactly on failure")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


@contextmanager
def stopwatch():
    """Yields a zero-argument callable returning elapsed milliseconds."""
    t0 = time.perf_counter()
    yield lambda: (time.perf_counter() - t0) * 1000.0


def make_report(
    name: str,
    params: Mapping[str, object],
    millis: float,
    counterexample: str | None,
) -> CheckReport:
    verdict = FAIL if counterexample is not None else PASS
    return CheckReport(
        name=name,
        params=dict(params),
        verdict=verdict,
        millis=round(millis, 3),
        counterexample=counterexample,
    )


def _param_key(params: Mapping[str, object]) -> str:
    return ",".join(f"{k}={params[k]}" for k in sorted(params))


def sort_reports(reports: Iterable[CheckReport]) -> list[CheckReport]:
    """Deterministic aggregation order: by check name, then parameters."""
    return sorted(reports, key=lambda r: (r.name, _param_key(r.params)))


def reports_to_json(reports: Iterable[CheckReport]) -> str:
    rows = []
    for r in sort_reports(reports):
        row: dict[str, object] = {
            "name": r.name,
            "params": dict(sorted(r.params.items())),
            "verdict": r.verdict,
            "millis": r.millis,
        }
        if r.counterexample is not None:
            row["counterexample"] = r.counterexample
        rows.append(row)
    return json.dumps(rows, indent=2, sort_keys=False) + "\n"


def reports_to_tsv(reports: Iterable[CheckReport]) -> str:
    lines = ["name\tparams\tverdict\tmillis\tcounterexample"]
    for r in sort_reports(reports):
        cex = r.counterexample if r.counterexample is not None else ""
        lines.append(f"{r.name}\t{_param_key(r.params)}\t{r.verdict}\t{r.millis}\t{cex}")
    return "\n".join(lines) + "\n"


def format_lines(reports: Iterable[CheckReport]) -> str:
    lines = []
    for r in sort_reports(reports):
        head = f"[{r.verdict.upper():4s}] {r.name}"
        if r.params:
            head += f" ({_param_key(r.params)})"
        head += f" [{r.millis:.1f} ms]"
        if r.counterexample is not None:
            head += f"\n       counterexample: {r.counterexample}"
        lines.append(head)
    return "\n".join(lines) + "\n"


def write_timing_figure(reports: Iterable[CheckReport], path: Path) -> None:
    """Horizontal bar chart of check wall times, colored by verdict."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ordered = sort_reports(reports)
    labels = [r.name for r in ordered]
    values = [max(r.millis, 0.01) for r in ordered]
    colors = ["#2a9d8f" if r.passed else "#e76f51" for r in ordered]
    height = max(2.0, 0.35 * len(ordered) + 1.2)
    fig, ax = plt.subplots(figsize=(8.0, height))
    ax.barh(range(len(ordered)), values, color=colors)
    ax.set_yticks(range(len(ordered)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("milliseconds")
    ax.set_xscale("log")
    ax.set_title("check wall times")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report_files(
    reports: Iterable[CheckReport], outdir: Path, stem: str = "report"
) -> list[Path]:
    """Write the delimited report, the JSON report, and the timing figure."""
    outdir.mkdir(parents=True, exist_ok=True)
    ordered = sort_reports(reports)
    tsv = outdir / f"{stem}.tsv"
    tsv.write_text(reports_to_tsv(ordered))
    js = outdir / f"{stem}.json"
    js.write_text(reports_to_json(ordered))
    png = outdir / "timings.png"
    write_timing_figure(ordered, png)
    return [tsv, js, png]
