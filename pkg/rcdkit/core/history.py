"""Campaign report store: one LawReport per line in a rotating JSONL file."""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ValidationError

from rcdkit.models import LawReport

logger = logging.getLogger(__name__)


class RecordedReport(BaseModel):
    """A stored campaign with the time it was recorded."""

    timestamp: str
    report: LawReport


class ReportStore:
    """Appends falsification reports and reads them back newest-first."""

    MAX_REPORTS_SIZE_MB = 10  # rotate reports.jsonl beyond this

    def __init__(self, store_dir: Optional[Path] = None, keep: Optional[int] = None):
        self.store_dir = store_dir or Path.home() / ".rcdkit"
        self.reports_file = self.store_dir / "reports.jsonl"
        self.keep = keep

        self.store_dir.mkdir(parents=True, exist_ok=True)
        self._rotate_if_needed()

    def _archive(self, lines: List[str], keep_from: int):
        archive_file = (
            self.store_dir / f"reports.{datetime.now().strftime('%Y%m%d_%H%M%S')}.jsonl"
        )
        with open(archive_file, "a") as f:
            f.writelines(lines[:keep_from])
        with open(self.reports_file, "w") as f:
            f.writelines(lines[keep_from:])

    def _rotate_if_needed(self):
        """Archive the older half when the file is too large or holds too many reports."""
        if not self.reports_file.exists():
            return
        try:
            size_mb = self.reports_file.stat().st_size / (1024 * 1024)
            with open(self.reports_file, "r") as f:
                lines = f.readlines()
            if size_mb > self.MAX_REPORTS_SIZE_MB:
                self._archive(lines, len(lines) // 2)
            elif self.keep is not None and len(lines) > self.keep:
                self._archive(lines, len(lines) - self.keep)
        except OSError as e:
            logger.warning("report rotation failed: %s", e)

    def add_report(self, report: LawReport) -> RecordedReport:
        """Append a report."""
        entry = RecordedReport(timestamp=datetime.now().isoformat(), report=report)
        with open(self.reports_file, "a") as f:
            f.write(entry.model_dump_json() + "\n")
        self._rotate_if_needed()
        return entry

    def get_reports(self, limit: int = 10) -> List[RecordedReport]:
        """Most recent reports first; unreadable lines are skipped."""
        if not self.reports_file.exists() or limit < 1:
            return []

        entries = []
        with open(self.reports_file, "r") as f:
            lines = f.readlines()
        for line in reversed(lines[-limit:]):
            try:
                entries.append(RecordedReport(**json.loads(line)))
            except (json.JSONDecodeError, TypeError, ValidationError):
                logger.debug("skipping unreadable report line")
                continue
        return entries

    def get_last_report(self) -> Optional[RecordedReport]:
        entries = self.get_reports(limit=1)
        return entries[0] if entries else None
