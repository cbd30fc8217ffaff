"""
Unit tests for bracket arithmetic and the constant structure equations.
"""

import numpy as np
import pytest

from src.algebra.brackets import (
    ad_matrix,
    bracket,
    coadjoint_matrix,
    derived_constants,
    jacobi_residual,
    nilpotent_engel_table,
    structure_constants_from_T,
)
from src.algebra.models import BracketTable, EngelConstants, FrameDerivatives
from src.classify.families import FamilyTag
from src.errors import JacobiViolated

E = np.eye(4)


class TestBracket:
    """Test the bracket of two vectors."""

    def test_nilpotent_defining_bracket(self):
        """Test [e1, e2] = e3 in the nilpotent Engel algebra."""
        assert np.array_equal(bracket(nilpotent_engel_table(), E[0], E[1]), E[2])

    def test_antisymmetry(self):
        """Test [v, v] = 0 for an arbitrary vector."""
        table = structure_constants_from_T(EngelConstants(t3=1, t4=1, t6=1))
        v = np.array([0.3, -1.2, 2.0, 0.7])

        assert np.allclose(bracket(table, v, v), 0.0, atol=1e-15)

    def test_type3_e3_e4(self):
        """Test [e3, e4] = -e1 - e2 + e4 for T3 = T4 = T6 = 1."""
        table = structure_constants_from_T(EngelConstants(t3=1, t4=1, t6=1))

        assert np.allclose(bracket(table, E[2], E[3]), [-1, -1, 0, 1])

    def test_ad_and_coadjoint_matrices(self):
        """Test that ad_u columns are brackets and the coadjoint matrix is its transpose."""
        table = structure_constants_from_T(EngelConstants(t3=1, t4=1, t6=1))
        u = np.array([0.6, 0.8, 0.0, 0.0])
        ad = ad_matrix(table, u)

        for j in range(4):
            assert np.allclose(ad[:, j], bracket(table, u, E[j]))
        assert np.array_equal(coadjoint_matrix(table, u), ad.T)


class TestJacobiResidual:
    """Test the Jacobi identity check."""

    def test_nilpotent_is_lie_algebra(self):
        """Test that the nilpotent Engel algebra has zero residual."""
        assert jacobi_residual(nilpotent_engel_table()) == 0.0

    def test_family_tables_are_lie_algebras(self, family_members):
        """Test that every family representative yields a Lie algebra."""
        for T in family_members.values():
            assert jacobi_residual(structure_constants_from_T(T)) < 1e-12

    def test_violating_table(self):
        """Test [e1,e2]=e3, [e1,e3]=e4, [e2,e3]=e3 which breaks Jacobi on (e1, e2, e3)."""
        table = BracketTable.from_brackets({
            (1, 2): (0, 0, 1, 0),
            (1, 3): (0, 0, 0, 1),
            (2, 3): (0, 0, 1, 0),
        })

        assert jacobi_residual(table) == pytest.approx(1.0)

    def test_two_step_chain_is_lie_algebra(self):
        """Test that [e1,e2]=e3, [e2,e3]=e4 alone satisfies Jacobi."""
        table = BracketTable.from_brackets({(1, 2): (0, 0, 1, 0), (2, 3): (0, 0, 0, 1)})

        assert jacobi_residual(table) == 0.0


class TestStructureConstantsFromT:
    """Test the canonical bracket table built from T1..T6."""

    def test_zero_gives_nilpotent(self):
        """Test that T = 0 reproduces the nilpotent Engel algebra."""
        table = structure_constants_from_T(EngelConstants())

        assert np.array_equal(table.c, nilpotent_engel_table().c)

    def test_t2_only(self):
        """Test the nonzero entries for T2 = 1."""
        table = structure_constants_from_T(EngelConstants(t2=1))

        assert table.nonzero_entries() == {
            (1, 2, 3): 1.0,
            (1, 3, 4): 1.0,
            (2, 3, 3): 1.0,
            (2, 4, 4): 1.0,
        }

    def test_jacobi_violation(self):
        """Test that T1 = T4 = 1 is rejected with its residual vector."""
        with pytest.raises(JacobiViolated) as exc_info:
            structure_constants_from_T(EngelConstants(t1=1, t4=1))

        assert exc_info.value.residuals == [0, 1, 0, 1, 1, 0]
        assert exc_info.value.code == "JacobiViolated"

    def test_family_v_residual(self, family_members):
        """Test that a family-V member is accepted."""
        table = structure_constants_from_T(family_members[FamilyTag.V])

        assert jacobi_residual(table) < 1e-12


class TestDerivedConstants:
    """Test the derived structure constants."""

    def test_zero(self):
        """Test that T = 0 gives all zeros."""
        assert derived_constants(EngelConstants()) == (0, 0, 0, 0, 0, 0)

    def test_c14_1(self):
        """Test C^1_14 = T1 T4 / 2."""
        assert derived_constants(EngelConstants(t1=2, t4=3)).c14_1 == pytest.approx(3.0)

    def test_type3(self):
        """Test C^2_34 = -T3 T4 and C^1_34 = -T6 T3 for T3 = T4 = T6 = 1."""
        derived = derived_constants(EngelConstants(t3=1, t4=1, t6=1))

        assert derived.c34_2 == pytest.approx(-1.0)
        assert derived.c34_1 == pytest.approx(-1.0)

    def test_matches_bracket_table(self, family_members):
        """Test that left-invariant values agree with the bracket table entries."""
        for T in family_members.values():
            c = structure_constants_from_T(T).c
            d = derived_constants(T)

            assert d.c14_1 == pytest.approx(c[0, 3, 0])
            assert d.c34_1 == pytest.approx(c[2, 3, 0])
            assert d.c34_2 == pytest.approx(c[2, 3, 1])
            assert d.c34_3 == pytest.approx(c[2, 3, 2])
            assert d.c34_4 == pytest.approx(c[2, 3, 3])
            assert d.c24_3 == pytest.approx(c[1, 3, 2])

    def test_frame_derivatives_enter(self):
        """Test that X1(T2) shifts C^3_24 and C^4_34."""
        derived = derived_constants(EngelConstants(), FrameDerivatives(x1_t2=1.0))

        assert derived.c24_3 == pytest.approx(1.0)
        assert derived.c34_4 == pytest.approx(2.0)
