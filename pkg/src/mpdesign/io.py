"""File I/O: atomic writes, CSV/JSON serialization, campaign data parsing.

Campaign data CSV (schema version 1): optional ``#`` comment lines, then a
``quadrant_id,suspected_count`` section, then optionally a
``class_name,categorized_count`` section with the spectroscopy results:

    # schema_version: 1
    quadrant_id,suspected_count
    1,12
    2,9
    class_name,categorized_count
    PE,8
    PP,5

All CSV output uses '.' decimal separator, newline-terminated rows, and a
stable column order, so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from dataclasses import dataclass

from .posterior import CategorizationCounts, FieldObservations

__all__ = [
    "CampaignDataError",
    "CampaignData",
    "parse_campaign_data",
    "atomic_write_text",
    "format_value",
    "render_csv",
    "render_json",
]

SCHEMA_VERSION = 1
FIELD_HEADER = ["quadrant_id", "suspected_count"]
CLASS_HEADER = ["class_name", "categorized_count"]


class CampaignDataError(ValueError):
    """Invalid campaign data file."""


@dataclass(frozen=True)
class CampaignData:
    observations: FieldObservations
    class_counts: dict[str, int] | None

    def categorization(self, class_names: tuple[str, ...]) -> CategorizationCounts | None:
        if self.class_counts is None:
            return None
        return CategorizationCounts(
            tuple(self.class_counts.get(name, 0) for name in class_names)
        )


def parse_campaign_data(path, quadrant_area: float, class_names: tuple[str, ...]) -> CampaignData:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = [
                row
                for row in csv.reader(fh)
                if row and not row[0].lstrip().startswith("#")
            ]
    except OSError as exc:
        raise CampaignDataError(f"cannot read {path}: {exc}") from exc

    if not rows or rows[0] != FIELD_HEADER:
        raise CampaignDataError(
            f"first header must be {','.join(FIELD_HEADER)!r}"
        )
    try:
        split = next(i for i, row in enumerate(rows) if row == CLASS_HEADER)
    except StopIteration:
        split = len(rows)

    counts = []
    seen_ids = set()
    for row in rows[1:split]:
        if len(row) != 2:
            raise CampaignDataError(f"malformed quadrant row {row!r}")
        qid, value = row
        if qid in seen_ids:
            raise CampaignDataError(f"duplicate quadrant_id {qid!r}")
        seen_ids.add(qid)
        counts.append(_nonneg_int(value, f"suspected_count for quadrant {qid!r}"))
    if not counts:
        raise CampaignDataError("no quadrant rows")
    obs = FieldObservations(quadrant_area, tuple(counts))

    class_counts = None
    if split < len(rows):
        class_counts = {}
        for row in rows[split + 1 :]:
            if len(row) != 2:
                raise CampaignDataError(f"malformed class row {row!r}")
            name, value = row
            if name not in class_names:
                raise CampaignDataError(
                    f"unknown class_name {name!r}; configured classes: {', '.join(class_names)}"
                )
            if name in class_counts:
                raise CampaignDataError(f"duplicate class_name {name!r}")
            class_counts[name] = _nonneg_int(value, f"categorized_count for {name!r}")
        total_cat = sum(class_counts.values())
        if total_cat > obs.total_count:
            raise CampaignDataError(
                f"categorized total {total_cat} exceeds suspected total {obs.total_count}"
            )
    return CampaignData(observations=obs, class_counts=class_counts)


def _nonneg_int(text: str, where: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise CampaignDataError(f"{where} must be an integer, got {text!r}") from exc
    if value < 0:
        raise CampaignDataError(f"{where} must be nonnegative, got {value}")
    return value


def atomic_write_text(path, text: str):
    """Write via a temp file in the same directory plus rename."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_value(value) -> str:
    """Stable text form: integers plainly, floats with shortest round-trip repr."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(header, rows) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
