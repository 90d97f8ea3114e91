"""
Report Persistence Service.

Saves classification tables and verdicts as JSON or CSV files.
"""

import csv
import json
import logging
import re
from datetime import datetime
from pathlib import Path
from typing import List

from ..models.catalog_entry import Table2Result
from ..models.verdict import ENVerdict


class ReportPersistenceService:
    """
    Service for persisting reports in the output folder.
    """

    def __init__(self, output_folder: Path):
        """
        Initialize the persistence service.

        Args:
            output_folder: Path to the output directory
        """
        self.output_folder = Path(output_folder)
        self.logger = logging.getLogger(__name__)

        self.output_folder.mkdir(parents=True, exist_ok=True)

    def save_table2(self, results: List[Table2Result], output_format: str = "json") -> Path:
        """
        Save a classification run in the given format.

        Raises:
            ValueError: If the format is not json or csv
        """
        fmt = output_format.lower()
        if fmt == "json":
            return self.save_table2_json(results)
        if fmt == "csv":
            return self.save_table2_csv(results)
        raise ValueError(f"Unsupported report format: {output_format}")

    def save_table2_json(self, results: List[Table2Result]) -> Path:
        filepath = self.output_folder / f"table2_{self._timestamp()}.json"
        data = {
            "metadata": {
                "generated_at": datetime.now().isoformat(),
                "total_rows": len(results),
                "mismatches": sum(1 for r in results if not r.matches),
            },
            "rows": [result.model_dump(mode="json") for result in results],
        }
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, ensure_ascii=False)

        self.logger.info(f"Saved {len(results)} table rows to JSON: {filepath}")
        return filepath

    def save_table2_csv(self, results: List[Table2Result]) -> Path:
        filepath = self.output_folder / f"table2_{self._timestamp()}.csv"
        headers = ["algebra", "slug", "samples", "expected", "computed", "expected_type", "computed_types", "match"]

        with open(filepath, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(headers)
            for result in results:
                row = result.row
                writer.writerow([
                    row.label,
                    row.slug,
                    ";".join(",".join(f"{k}={v}" for k, v in s.items()) for s in row.samples),
                    row.expected_status.value,
                    ";".join(s.value for s in result.statuses),
                    row.expected_type or "",
                    ";".join(t or "" for t in result.types),
                    "yes" if result.matches else "no",
                ])

        self.logger.info(f"Saved {len(results)} table rows to CSV: {filepath}")
        return filepath

    def save_verdict(self, verdict: ENVerdict) -> Path:
        """Save a verdict in its JSON envelope."""
        filepath = self.output_folder / f"{self._sanitize_filename(verdict.name or 'algebra')}_verdict.json"
        filepath.write_text(verdict.to_json() + "\n", encoding="utf-8")
        self.logger.info(f"Saved verdict for '{verdict.name}' to {filepath}")
        return filepath

    def _timestamp(self) -> str:
        return datetime.now().strftime("%Y%m%d_%H%M%S")

    def _sanitize_filename(self, name: str) -> str:
        safe = re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("_")
        return safe or "algebra"
