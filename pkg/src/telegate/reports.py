"""Report rendering and machine-readable export.

Text renderings are byte-stable for a fixed seed and flags: floats are
printed with ``repr`` (shortest round-trip form), collections in fixed
order. JSON documents round-trip: parsing one back reproduces the pass
flag and the minimum fidelity bit-exactly.
"""
from __future__ import annotations

import json
import math

from .oracle import (
    LossReport,
    ParityResult,
    TableDiff,
    VerificationReport,
    format_key,
)


def _f(x: float) -> str:
    return repr(float(x))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True)


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------

def verification_to_doc(report: VerificationReport, include_grid: bool = True) -> dict:
    doc = {
        "kind": "verification",
        "pattern": report.pattern,
        "variant": report.variant,
        "seed": report.seed,
        "passed": report.passed,
        "loss_demo": report.loss_demo,
        "min_fidelity": float(report.min_fidelity),
        "worst_outcome": format_key(report.worst_outcome) if report.worst_outcome else None,
        "worst_input": report.worst_input,
        "zero_probability_outcomes": [format_key(k) for k in report.zero_probability_outcomes],
        "suspicious_outcomes": [format_key(k) for k in report.suspicious_outcomes],
        "probability_sums": [float(x) for x in report.probability_sums],
        "outcome_probability_range": [float(x) for x in report.outcome_probability_range],
        "input_labels": list(report.input_labels),
        "notes": list(report.notes),
    }
    if report.table_diff is not None:
        doc["table_diff"] = table_diff_to_doc(report.table_diff)
    if include_grid:
        doc["outcomes"] = [
            {
                "labels": format_key(key),
                "probabilities": [float(p) for p in report.probabilities[i]],
                "fidelities": [
                    None if math.isnan(f) else float(f) for f in report.fidelities[i]
                ],
            }
            for i, key in enumerate(report.outcome_keys)
        ]
    return doc


def verification_from_doc(doc: dict) -> dict:
    """Parse a verification document back to its headline fields."""
    if doc.get("kind") != "verification":
        raise ValueError("not a verification document")
    return {
        "pattern": doc["pattern"],
        "passed": bool(doc["passed"]),
        "min_fidelity": float(doc["min_fidelity"]),
        "seed": int(doc["seed"]),
    }


def table_diff_to_doc(diff: TableDiff) -> dict:
    return {
        "total": diff.total,
        "mismatch_count": diff.mismatch_count,
        "mismatches": [
            {"outcome": format_key(key), "derived": derived, "printed": printed}
            for key, derived, printed in diff.mismatches
        ],
    }


def render_verification(report: VerificationReport, max_listed: int = 8) -> str:
    lines = [
        f"pattern: {report.pattern}"
        + (f" [variant: {report.variant}]" if report.variant else ""),
        f"seed: {report.seed}",
        f"outcomes: {len(report.outcome_keys)}  inputs: {len(report.input_labels)}",
        f"min fidelity: {_f(report.min_fidelity)}"
        + (
            f" (outcome {format_key(report.worst_outcome)}, input {report.worst_input})"
            if report.worst_outcome
            else ""
        ),
        "probability sums per input: "
        f"[{_f(report.probability_sums.min())}, {_f(report.probability_sums.max())}]",
        "outcome probability range (generic input): "
        f"[{_f(report.outcome_probability_range[0])}, {_f(report.outcome_probability_range[1])}]",
    ]
    zk = report.zero_probability_outcomes
    lines.append(
        "zero-probability outcomes: "
        + ("none" if not zk else _listed([format_key(k) for k in zk], max_listed))
    )
    if report.suspicious_outcomes:
        lines.append(
            "suspicious (near-zero) outcomes: "
            + _listed([format_key(k) for k in report.suspicious_outcomes], max_listed)
        )
    if report.table_diff is not None:
        lines.append(render_table_diff(report.table_diff, max_listed))
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append(f"verdict: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)


def _listed(items: list[str], max_listed: int) -> str:
    if len(items) <= max_listed:
        return ", ".join(items)
    shown = ", ".join(items[:max_listed])
    return f"{shown} ... and {len(items) - max_listed} more"


def render_table_diff(diff: TableDiff, max_listed: int = 8) -> str:
    head = f"reference-table diff: {diff.mismatch_count}/{diff.total} cells differ"
    if not diff.mismatches:
        return head
    cells = [
        f"{format_key(key)}: derived {derived} vs printed {printed}"
        for key, derived, printed in diff.mismatches[:max_listed]
    ]
    more = (
        f" ... and {diff.mismatch_count - max_listed} more"
        if diff.mismatch_count > max_listed
        else ""
    )
    return head + "\n  " + "\n  ".join(cells) + more


def verification_to_csv(report: VerificationReport) -> str:
    lines = ["outcome,input,probability,fidelity"]
    for i, key in enumerate(report.outcome_keys):
        for j, label in enumerate(report.input_labels):
            fid = report.fidelities[i, j]
            fid_s = "" if math.isnan(fid) else _f(fid)
            lines.append(
                f"\"{format_key(key)}\",{label},{_f(report.probabilities[i, j])},{fid_s}"
            )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Loss reports
# ---------------------------------------------------------------------------

def loss_to_doc(report: LossReport) -> dict:
    return {
        "kind": "loss",
        "pattern": report.pattern,
        "seed": report.seed,
        "lossy": report.lossy,
        "annihilated_components": report.component_names(),
        "zero_probability_outcomes": [
            format_key(k) for k in report.zero_probability_outcomes
        ],
        "outcomes": [
            {
                "labels": format_key(o.key),
                "probability": float(o.probability),
                "rank": o.rank,
                "annihilated": list(o.annihilated),
            }
            for o in report.outcomes
        ],
    }


def render_loss(report: LossReport, max_listed: int = 8) -> str:
    lines = [
        f"pattern: {report.pattern}",
        f"seed: {report.seed}",
        f"verdict: {'LOSSY' if report.lossy else 'not lossy'}",
    ]
    if report.annihilated_components:
        lines.append(
            "annihilated input components: " + ", ".join(report.component_names())
        )
    if report.zero_probability_outcomes:
        lines.append(
            "zero-probability outcomes: "
            + _listed(
                [format_key(k) for k in report.zero_probability_outcomes], max_listed
            )
        )
    if report.outcomes:
        lines.append(f"degraded outcomes ({len(report.outcomes)}):")
        for o in report.outcomes[:max_listed]:
            ann = ",".join(f"c{i}" for i in o.annihilated) or "-"
            lines.append(
                f"  {format_key(o.key)}: probability {_f(o.probability)}, "
                f"rank {o.rank}, annihilated {ann}"
            )
        if len(report.outcomes) > max_listed:
            lines.append(f"  ... and {len(report.outcomes) - max_listed} more")
    else:
        lines.append("degraded outcomes: none")
    return "\n".join(lines)


def loss_to_csv(report: LossReport) -> str:
    lines = ["outcome,probability,rank,annihilated"]
    for o in report.outcomes:
        ann = ";".join(f"c{i}" for i in o.annihilated)
        lines.append(f"\"{format_key(o.key)}\",{_f(o.probability)},{o.rank},{ann}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Parity experiment
# ---------------------------------------------------------------------------

def parity_to_doc(results: list[ParityResult]) -> dict:
    return {
        "kind": "parity",
        "results": [
            {"n": r.n, "passed": r.passed, "note": r.note} for r in results
        ],
    }


def render_parity(results: list[ParityResult]) -> str:
    lines = ["chain length | verdict vs controlled-Z"]
    for r in results:
        lines.append(f"  n={r.n}: {'PASS' if r.passed else 'FAIL'} ({r.note})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Correction tables
# ---------------------------------------------------------------------------

def table_to_doc(
    name: str,
    keys: list,
    rendered: dict,
    diff_docs: dict | None = None,
    footer: str = "",
) -> dict:
    doc = {
        "kind": "correction-table",
        "name": name,
        "entries": [
            {"labels": format_key(key), "op": rendered[key]} for key in keys
        ],
    }
    if diff_docs:
        doc["diffs"] = diff_docs
    if footer:
        doc["footer"] = footer
    return doc


def render_grid(
    title: str,
    row_labels: list,
    col_labels: list,
    cell: dict,
    footer: str = "",
) -> str:
    """Render a correction table with one row per first-group outcome."""

    def label_str(label) -> str:
        return "(" + ",".join(str(x) for x in label) + ")"

    rows = [label_str(r) for r in row_labels]
    cols = [label_str(c) for c in col_labels]
    grid = [[cell[(r, c)] for c in col_labels] for r in row_labels]
    widths = [
        max(len(cols[j]), max(len(grid[i][j]) for i in range(len(rows))))
        for j in range(len(cols))
    ]
    row_w = max(len(r) for r in rows)
    lines = [title]
    lines.append(
        " " * row_w + " | " + " | ".join(c.ljust(w) for c, w in zip(cols, widths))
    )
    for i, r in enumerate(rows):
        lines.append(
            r.ljust(row_w)
            + " | "
            + " | ".join(grid[i][j].ljust(widths[j]) for j in range(len(cols)))
        )
    if footer:
        lines.append(footer)
    return "\n".join(lines)


def grid_to_csv(row_labels: list, col_labels: list, cell: dict) -> str:
    def label_str(label) -> str:
        return "(" + ",".join(str(x) for x in label) + ")"

    lines = ["," + ",".join(f"\"{label_str(c)}\"" for c in col_labels)]
    for r in row_labels:
        lines.append(
            f"\"{label_str(r)}\","
            + ",".join(f"\"{cell[(r, c)]}\"" for c in col_labels)
        )
    return "\n".join(lines) + "\n"
