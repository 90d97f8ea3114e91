"""
Application configuration settings.

Uses pydantic-settings for clean configuration management with
environment variable support and validation.
"""

from pathlib import Path
from typing import List
from fractions import Fraction

from pydantic import Field, field_validator, ConfigDict
from pydantic_settings import BaseSettings

from ..models.rational import RationalParsingError, parse_rational


class AppConfig(BaseSettings):
    """
    Application configuration with environment variable support.

    Environment variables can override defaults by using the same name
    in uppercase (e.g., OUTPUT_FOLDER, FLOW_TOL).
    """

    model_config = ConfigDict(env_file=".env", env_file_encoding="utf-8")

    output_folder: Path = Field(
        default=Path("./output"), description="Path to the folder for saved reports"
    )

    debug_mode: bool = Field(
        default=False, description="Enable debug mode for additional logging"
    )

    report_output_format: str = Field(
        default="json", description="Output format for saved classification reports (json, csv)"
    )

    # Soliton flow settings
    flow_step: float = Field(default=0.01, description="Initial gradient descent step")

    flow_max_iter: int = Field(default=50000, description="Maximum flow iterations")

    flow_tol: float = Field(default=1e-8, description="Soliton residual tolerance")

    flow_fd_step: float = Field(
        default=1e-6, description="Step h of the central finite differences"
    )

    flow_check_every: int = Field(
        default=10, description="Iterations between residual checks"
    )

    flow_max_step: float = Field(default=0.5, description="Ceiling for the adaptive step")

    # Rank profile sampling
    rank_profile_random_samples: int = Field(
        default=20, description="Pseudo-random vectors in the default sample set"
    )

    rank_profile_seed: int = Field(default=8, description="Seed of the pseudo-random samples")

    # Classification table parameter samples
    table2_alpha_samples: str = Field(
        default="-2,-1,0,1/2,3", description="Comma separated α samples for g_α(8)"
    )

    table2_t_samples: str = Field(
        default="-1,0,1,5/2", description="Comma separated t samples for a_t(8)"
    )

    max_workers: int = Field(default=4, description="Worker threads for the table2 run")

    @field_validator("output_folder")
    @classmethod
    def create_output_folder(cls, v: Path) -> Path:
        """Ensure output folder exists, create if it doesn't."""
        output_path = Path(v)
        output_path.mkdir(parents=True, exist_ok=True)
        return output_path

    @field_validator("report_output_format")
    @classmethod
    def check_report_format(cls, v: str) -> str:
        fmt = v.lower()
        if fmt not in ("json", "csv"):
            raise ValueError(f"Unsupported report format: {v}")
        return fmt

    @field_validator("flow_step", "flow_tol", "flow_fd_step", "flow_max_step")
    @classmethod
    def check_positive_float(cls, v: float) -> float:
        if not v > 0:
            raise ValueError(f"Must be positive, got {v}")
        return v

    @field_validator("flow_max_iter", "flow_check_every", "max_workers")
    @classmethod
    def check_positive_int(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"Must be at least 1, got {v}")
        return v

    @field_validator("rank_profile_random_samples")
    @classmethod
    def check_sample_count(cls, v: int) -> int:
        if v < 0:
            raise ValueError(f"Sample count cannot be negative, got {v}")
        return v

    @field_validator("table2_alpha_samples", "table2_t_samples")
    @classmethod
    def check_samples(cls, v: str) -> str:
        """Every comma separated item must be a rational literal."""
        try:
            [parse_rational(item) for item in v.split(",")]
        except RationalParsingError as e:
            raise ValueError(str(e)) from e
        return v

    @property
    def alpha_samples(self) -> List[Fraction]:
        return [parse_rational(item) for item in self.table2_alpha_samples.split(",")]

    @property
    def t_samples(self) -> List[Fraction]:
        return [parse_rational(item) for item in self.table2_t_samples.split(",")]
