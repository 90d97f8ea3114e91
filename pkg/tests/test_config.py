"""
Test module for configuration management.

Covers the settings the toolkit reads: output location, report format,
soliton flow controls and the classification table samples.
"""

import pytest
from fractions import Fraction
from pathlib import Path
from pydantic import ValidationError


class TestAppConfig:
    """
    Configuration settings using pydantic-settings with environment
    variable overrides and validation.
    """

    def test_default_config_creation(self, tmp_path):
        """
        Testing that configuration can be created with sensible defaults.
        """
        from src.config.settings import AppConfig

        config = AppConfig(output_folder=str(tmp_path / "out"))

        assert config.debug_mode is False
        assert config.report_output_format == "json"
        assert config.flow_step == 0.01
        assert config.flow_max_iter == 50000
        assert config.flow_tol == 1e-8
        assert config.rank_profile_random_samples == 20
        assert config.max_workers == 4

    def test_default_table_samples(self, tmp_path):
        """
        The default samples are α ∈ {-2, -1, 0, 1/2, 3} and t ∈ {-1, 0, 1, 5/2}.
        """
        from src.config.settings import AppConfig

        config = AppConfig(output_folder=str(tmp_path / "out"))

        assert config.alpha_samples == [Fraction(-2), Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(3)]
        assert config.t_samples == [Fraction(-1), Fraction(0), Fraction(1), Fraction(5, 2)]

    def test_config_with_custom_values(self, tmp_path):
        """
        Testing configuration with custom values provided.
        """
        from src.config.settings import AppConfig

        config = AppConfig(
            output_folder=str(tmp_path / "custom"),
            report_output_format="CSV",
            flow_tol=1e-6,
            table2_alpha_samples="1, 2/3",
            debug_mode=True,
        )

        assert config.output_folder == tmp_path / "custom"
        assert config.report_output_format == "csv"
        assert config.flow_tol == 1e-6
        assert config.alpha_samples == [Fraction(1), Fraction(2, 3)]
        assert config.debug_mode is True

    def test_config_creates_output_folder_if_missing(self, tmp_path):
        """
        Testing that output folder is created if it doesn't exist.
        """
        from src.config.settings import AppConfig

        output_path = tmp_path / "new_output"
        config = AppConfig(output_folder=str(output_path))

        assert config.output_folder.exists()
        assert config.output_folder.is_dir()

    def test_config_rejects_unknown_report_format(self, tmp_path):
        from src.config.settings import AppConfig

        with pytest.raises(ValidationError) as exc_info:
            AppConfig(output_folder=str(tmp_path), report_output_format="xml")

        assert "Unsupported report format" in str(exc_info.value)

    @pytest.mark.parametrize("field", ["flow_step", "flow_tol", "flow_fd_step", "flow_max_step"])
    def test_config_rejects_nonpositive_flow_floats(self, tmp_path, field):
        from src.config.settings import AppConfig

        with pytest.raises(ValidationError):
            AppConfig(output_folder=str(tmp_path), **{field: 0})

    def test_config_rejects_zero_workers(self, tmp_path):
        from src.config.settings import AppConfig

        with pytest.raises(ValidationError):
            AppConfig(output_folder=str(tmp_path), max_workers=0)

    def test_config_rejects_malformed_samples(self, tmp_path):
        """
        Sample lists must contain rational literals only.
        """
        from src.config.settings import AppConfig

        with pytest.raises(ValidationError) as exc_info:
            AppConfig(output_folder=str(tmp_path), table2_t_samples="1,x")

        assert "x" in str(exc_info.value)

    def test_config_from_environment_variables(self, tmp_path):
        """
        Testing that configuration can be loaded from environment variables.
        """
        import os
        from src.config.settings import AppConfig

        os.environ["OUTPUT_FOLDER"] = str(tmp_path / "env_output")
        os.environ["DEBUG_MODE"] = "true"
        os.environ["FLOW_MAX_ITER"] = "500"

        try:
            config = AppConfig()

            assert config.output_folder == Path(tmp_path / "env_output")
            assert config.debug_mode is True
            assert config.flow_max_iter == 500
        finally:
            for key in ["OUTPUT_FOLDER", "DEBUG_MODE", "FLOW_MAX_ITER"]:
                os.environ.pop(key, None)
