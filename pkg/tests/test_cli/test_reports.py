"""
Tests for report helpers.
"""

import json

import numpy as np
import pytest

from src.classify.families import FamilyTag
from src.algebra.models import EngelConstants
from src.cli.reports import (
    TRAJECTORY_COLUMNS,
    dumps,
    frame_to_csv,
    parse_float_list,
    parse_params,
    to_jsonable,
    trajectory_frame,
)
from src.errors import InvalidParams
from src.flow.hamiltonian import integrate
from src.flow.models import IntegratorConfig, VerticalState


class TestParsing:
    """Tests for command-line value parsing."""

    def test_float_list(self):
        """Test a comma-separated list with spaces."""
        assert parse_float_list("1, -2.5 ,3e-1") == [1.0, -2.5, 0.3]

    def test_float_list_count(self):
        """Test that the expected count is enforced."""
        with pytest.raises(InvalidParams):
            parse_float_list("1,2,3", expected=4, name="h0")

    def test_float_list_non_numeric(self):
        """Test that words are rejected."""
        with pytest.raises(InvalidParams):
            parse_float_list("1,two")

    def test_params(self):
        """Test NAME=VALUE pairs with lowercase names."""
        assert parse_params("t1=2, T2=1,T3=0") == {"T1": 2.0, "T2": 1.0, "T3": 0.0}

    def test_params_empty(self):
        """Test that no parameters give an empty dict."""
        assert parse_params("") == {}

    def test_params_missing_equals(self):
        """Test that a bare name is rejected."""
        with pytest.raises(InvalidParams):
            parse_params("T1")


class TestSerialization:
    """Tests for JSON conversion."""

    def test_to_jsonable(self):
        """Test numpy values, enums, tuples and NaN."""
        converted = to_jsonable({
            "array": np.array([1.0, 2.0]),
            "int": np.int64(3),
            "flag": np.bool_(True),
            "tag": FamilyTag.III,
            "pair": (1, 2),
            "nan": float("nan"),
        })

        assert converted == {"array": [1.0, 2.0], "int": 3, "flag": True, "tag": "III", "pair": [1, 2], "nan": None}

    def test_round_trip_precision(self):
        """Test that floats survive serialization exactly."""
        value = np.pi / 3

        assert json.loads(dumps({"x": value}))["x"] == value


class TestTrajectoryFrame:
    """Tests for tabulated trajectories."""

    @pytest.fixture
    def config(self):
        return IntegratorConfig(method="rk4", step=0.01, t_max=0.5)

    def test_type3_columns(self, type3_constants, config):
        """Test column order and that G and h4p are filled for type III."""
        traj = integrate(type3_constants, VerticalState(1.0, 0.5, 0.2, 0.1), config)
        df = trajectory_frame(type3_constants, traj)

        assert list(df.columns) == TRAJECTORY_COLUMNS
        assert len(df) == len(traj)
        assert not df["G"].isna().any()
        assert df["r1"].iloc[0] == pytest.approx(-1.0)
        assert df["H"].iloc[0] == pytest.approx(0.625)

    def test_non_type3_blank_columns(self, config):
        """Test that G and h4p are blank in CSV outside type III."""
        T = EngelConstants(t5=1)
        traj = integrate(T, VerticalState(1.0, 0.0, 1.0, 0.0), config)
        df = trajectory_frame(T, traj)

        assert df["G"].isna().all()
        first_row = frame_to_csv(df).splitlines()[1].split(",")
        assert first_row[6] == "" and first_row[7] == ""
