"""
Classification Service.

Reproduces the classification table of 8-dimensional filiform Einstein
nilradicals by running the Einstein-nilradical test on every catalog
row and comparing verdicts and eigenvalue types with the recorded ones.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from ..config.settings import AppConfig
from ..models.catalog_entry import Table2Result, Table2Row
from ..models.derivation import format_eigenvalue_type
from .catalog_service import CatalogService
from .einstein_nilradical_service import EinsteinNilradicalService


class ClassificationService:
    """
    Service for evaluating the classification table.

    Rows are independent, so they are evaluated on a thread pool; results
    keep the table order.
    """

    def __init__(
        self,
        config: AppConfig,
        catalog: Optional[CatalogService] = None,
        en_service: Optional[EinsteinNilradicalService] = None,
    ):
        """
        Initialize the service with dependencies.

        Args:
            config: Application configuration (samples and worker count)
            catalog: Catalog access (created if not provided)
            en_service: Einstein-nilradical test (created if not provided)
        """
        self.config = config
        self.catalog = catalog or CatalogService()
        self.en_service = en_service or EinsteinNilradicalService()
        self.logger = logging.getLogger(__name__)

    def rows(self) -> List[Table2Row]:
        return self.catalog.table2_rows(self.config.alpha_samples, self.config.t_samples)

    def evaluate_row(self, row: Table2Row) -> Table2Result:
        """Run the test on every sample of one row."""
        statuses = []
        types = []
        for sample in row.samples:
            algebra = self.catalog.get(row.slug, sample or None)
            verdict = self.en_service.en_test(algebra)
            statuses.append(verdict.status)
            types.append(
                format_eigenvalue_type(verdict.eigenvalue_type) if verdict.eigenvalue_type else None
            )
        result = Table2Result(row=row, statuses=statuses, types=types)
        if not result.matches:
            self.logger.error(
                f"Row '{row.label}' expected {row.expected_status.value} {row.expected_type or ''} "
                f"but computed {[s.value for s in statuses]} {types}"
            )
        return result

    def run_table2(self) -> List[Table2Result]:
        """
        Evaluate all thirteen rows.

        Returns:
            List of Table2Result in table order
        """
        rows = self.rows()
        self.logger.info(f"Evaluating {len(rows)} table rows with {self.config.max_workers} workers")
        with ThreadPoolExecutor(max_workers=self.config.max_workers) as pool:
            results = list(pool.map(self.evaluate_row, rows))
        mismatches = sum(1 for r in results if not r.matches)
        self.logger.info(f"Table reproduced with {mismatches} mismatching row(s)")
        return results

    @staticmethod
    def render(results: List[Table2Result]) -> str:
        """Plain text table, one line per row."""
        header = f"{'Algebra':<24} {'Expected':<9} {'Computed':<9} {'Eigenvalue type':<32} Match"
        lines = [header, "-" * len(header)]
        for result in results:
            computed = sorted({s.value for s in result.statuses})
            distinct_types = sorted({t for t in result.types if t})
            type_text = distinct_types[0] if len(distinct_types) == 1 else ("varies" if distinct_types else "-")
            mark = "✓" if result.matches else "✗"
            lines.append(
                f"{result.row.label:<24} {result.row.expected_status.value:<9} "
                f"{'/'.join(computed):<9} {type_text:<32} {mark}"
            )
        return "\n".join(lines)
