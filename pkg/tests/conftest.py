"""
Pytest configuration and shared fixtures for all tests.
"""

import pytest
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.algebra.models import EngelConstants
from src.classify.families import FamilyTag, build_family
from src.flow.models import IntegratorConfig


@pytest.fixture(scope="session")
def project_root():
    """Return the project root directory."""
    return Path(__file__).parent.parent


@pytest.fixture(scope="session")
def fixtures_dir():
    """Return the shared test fixtures directory."""
    return Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def default_tolerance(monkeypatch):
    """Run every test with the default global tolerance."""
    monkeypatch.delenv("ENGEL_TOL", raising=False)


@pytest.fixture(scope="session")
def family_members():
    """One representative member per family."""
    return {
        FamilyTag.I: build_family(FamilyTag.I, {"T1": 1, "T3": 1, "T5": 1}),
        FamilyTag.II: build_family(FamilyTag.II, {"T1": 0.5, "T2": 1, "T3": -2}),
        FamilyTag.III: build_family(FamilyTag.III, {"T3": 1, "T4": 1, "T6": 1}),
        FamilyTag.IV: build_family(FamilyTag.IV, {"T2": 1.5, "T6": -0.5}),
        FamilyTag.V: build_family(FamilyTag.V, {"T1": 2, "T2": 1, "T3": 0}),
    }


@pytest.fixture(scope="session")
def type3_constants():
    """Type-III structure T3 = T4 = T6 = 1."""
    return EngelConstants(t3=1, t4=1, t6=1)


@pytest.fixture
def rk4_config():
    """Fixed-step rk4 on [0, 10] with step 1e-3."""
    return IntegratorConfig(method="rk4", step=1e-3, t_max=10.0)
