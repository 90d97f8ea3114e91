"""
Shared fixtures for the test suite.
"""

import pytest

from src.config.settings import AppConfig
from src.models.lie_algebra import LieAlgebra
from src.services.catalog_service import CatalogService


@pytest.fixture(scope="session")
def catalog():
    """One catalog for the whole run; entries are immutable."""
    return CatalogService()


@pytest.fixture
def heisenberg():
    """3-dimensional Heisenberg algebra [e1, e2] = e3."""
    return LieAlgebra(dim=3, name="heisenberg", brackets={(1, 2): {3: 1}})


@pytest.fixture
def abelian():
    return LieAlgebra(dim=3, name="abelian")


@pytest.fixture
def config(tmp_path):
    """Configuration writing into a temporary output folder."""
    return AppConfig(output_folder=str(tmp_path / "output"))
