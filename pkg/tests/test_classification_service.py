"""
Test module for reproducing the classification table.
"""

import pytest


class TestClassificationService:
    """
    Every row of the recorded table is recomputed with exact arithmetic.
    """

    @pytest.fixture
    def service(self, config, catalog):
        from src.services.classification_service import ClassificationService

        return ClassificationService(config, catalog=catalog)

    def test_all_rows_match(self, service):
        results = service.run_table2()

        assert len(results) == 13
        mismatched = [r.row.label for r in results if not r.matches]
        assert mismatched == []

    def test_results_keep_table_order(self, service):
        results = service.run_table2()

        assert [r.row.slug for r in results] == [
            "m0_8", "m1_8", "m2_8", "g8", "g8", "a8", "a8", "c_1_0_8", "d1_8", "h1_8", "b8", "k1_8", "s1_8",
        ]

    def test_family_row_evaluates_every_sample(self, service):
        from src.models.verdict import VerdictStatus

        row = service.rows()[5]
        result = service.evaluate_row(row)

        assert row.label == "𝔞_t(8), t ≠ -1"
        assert result.statuses == [VerdictStatus.YES] * 3
        assert result.types == ["1<3<4<5<6<7<8<9"] * 3

    def test_mismatch_is_detected(self, service, caplog):
        """
        A row recording the wrong verdict is flagged and logged.
        """
        import logging
        from src.models.catalog_entry import Table2Row
        from src.models.verdict import VerdictStatus

        row = Table2Row(label="wrong", slug="c_1_0_8", expected_status=VerdictStatus.YES)

        with caplog.at_level(logging.ERROR):
            result = service.evaluate_row(row)

        assert result.matches is False
        assert "wrong" in caplog.text

    def test_render_marks_rows(self, service):
        text = service.render(service.run_table2())
        lines = text.splitlines()

        assert len(lines) == 15
        assert "1<26<27<28<29<30<31<32" in text
        assert "10<123<133<143<153<163<173<296" in text
        assert all(line.endswith("✓") for line in lines[2:])

    def test_run_is_deterministic(self, service):
        first = service.render(service.run_table2())
        second = service.render(service.run_table2())

        assert first == second

    def test_custom_samples_from_config(self, tmp_path, catalog):
        from src.config.settings import AppConfig
        from src.services.classification_service import ClassificationService

        config = AppConfig(output_folder=str(tmp_path), table2_alpha_samples="5", table2_t_samples="-1,2")
        rows = ClassificationService(config, catalog=catalog).rows()

        assert rows[3].samples == [{"alpha": 5}]
        assert rows[5].samples == [{"t": 2}]
