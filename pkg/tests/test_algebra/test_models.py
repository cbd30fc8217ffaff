"""
Unit tests for algebra data models.
"""

import numpy as np
import pytest

from src.algebra.models import BracketTable, DistributionData, EngelConstants
from src.errors import InvalidDistribution, InvalidParams


class TestBracketTable:
    """Test BracketTable construction."""

    def test_from_brackets_completes_antisymmetry(self):
        """Test that listed brackets get their antisymmetric partner."""
        table = BracketTable.from_brackets({(1, 2): (0, 0, 1, 0)})

        assert table.c[0, 1, 2] == 1
        assert table.c[1, 0, 2] == -1
        assert table.nonzero_entries() == {(1, 2, 3): 1.0}

    def test_rejects_non_antisymmetric(self):
        """Test that a table with c_ij != -c_ji is rejected."""
        c = np.zeros((4, 4, 4))
        c[0, 1, 2] = 1

        with pytest.raises(InvalidParams):
            BracketTable(c)

    def test_rejects_wrong_shape(self):
        """Test that a non 4x4x4 table is rejected."""
        with pytest.raises(InvalidParams):
            BracketTable(np.zeros((3, 3, 3)))

    def test_rejects_diagonal_pair(self):
        """Test that [e_i, e_i] cannot be assigned."""
        with pytest.raises(InvalidParams):
            BracketTable.from_brackets({(2, 2): (1, 0, 0, 0)})

    def test_table_is_read_only(self):
        """Test that the stored tensor cannot be mutated."""
        table = BracketTable.from_brackets({(1, 2): (0, 0, 1, 0)})

        with pytest.raises(ValueError):
            table.c[0, 1, 2] = 5


class TestDistributionData:
    """Test DistributionData validation."""

    def test_standard(self):
        """Test the default distribution span(e1, e2)."""
        dist = DistributionData.standard()

        assert np.array_equal(dist.basis, np.eye(4)[:, :2])
        assert np.array_equal(dist.metric, np.eye(2))
        assert dist.orient_M == 1
        assert dist.orient_D == 1

    def test_dependent_vectors(self):
        """Test that parallel d1, d2 are rejected."""
        with pytest.raises(InvalidDistribution):
            DistributionData(d1=[1, 0, 0, 0], d2=[2, 0, 0, 0])

    def test_metric_not_positive_definite(self):
        """Test that an indefinite metric is rejected."""
        with pytest.raises(InvalidDistribution):
            DistributionData(d1=[1, 0, 0, 0], d2=[0, 1, 0, 0], metric=[[1, 0], [0, -1]])

    def test_metric_not_symmetric(self):
        """Test that a non-symmetric metric is rejected."""
        with pytest.raises(InvalidDistribution):
            DistributionData(d1=[1, 0, 0, 0], d2=[0, 1, 0, 0], metric=[[1, 0.5], [0, 1]])

    def test_bad_orientation(self):
        """Test that orientations other than +1/-1 are rejected."""
        with pytest.raises(InvalidDistribution):
            DistributionData(d1=[1, 0, 0, 0], d2=[0, 1, 0, 0], orient_M=0)

    def test_wrong_vector_length(self):
        """Test that 3-vectors are rejected."""
        with pytest.raises(InvalidDistribution):
            DistributionData(d1=[1, 0, 0], d2=[0, 1, 0])


class TestEngelConstants:
    """Test EngelConstants."""

    def test_defaults_are_zero(self):
        """Test that omitted invariants default to 0."""
        assert EngelConstants().as_array().tolist() == [0.0] * 6

    def test_from_sequence(self):
        """Test building from T1..T6 in order."""
        T = EngelConstants.from_sequence([1, 2, 3, 4, 5, 6])

        assert T.t1 == 1.0
        assert T.t6 == 6.0
        assert T.as_dict() == {"T1": 1.0, "T2": 2.0, "T3": 3.0, "T4": 4.0, "T5": 5.0, "T6": 6.0}

    def test_from_sequence_wrong_length(self):
        """Test that five values are rejected."""
        with pytest.raises(InvalidParams):
            EngelConstants.from_sequence([1, 2, 3, 4, 5])

    def test_from_mapping_case_insensitive(self):
        """Test that lowercase keys are accepted and missing keys are zero."""
        T = EngelConstants.from_mapping({"t3": 1, "T4": 2})

        assert T == EngelConstants(t3=1, t4=2)

    def test_from_mapping_unknown_key(self):
        """Test that keys other than T1..T6 are rejected."""
        with pytest.raises(InvalidParams):
            EngelConstants.from_mapping({"T7": 1})

    def test_non_finite(self):
        """Test that NaN invariants are rejected."""
        with pytest.raises(InvalidParams):
            EngelConstants(t1=float("nan"))

    def test_left_invariant_valid(self):
        """Test the Jacobi validity shortcut."""
        assert EngelConstants(t3=1, t4=1, t6=1).left_invariant_valid()
        assert not EngelConstants(t1=1, t4=1).left_invariant_valid()
