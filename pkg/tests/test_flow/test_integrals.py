"""
Unit tests for first integrals and the super-integrability checks.
"""

import numpy as np
import pytest

from src.algebra.models import EngelConstants
from src.classify.families import FamilyTag, classify
from src.errors import InvalidParams, NotTypeIII
from src.flow.hamiltonian import integrate, normal_rhs
from src.flow.integrals import (
    MINOR_COLUMNS,
    center_momentum,
    conservation_report,
    first_integral_drift,
    hamiltonian,
    independence_matrix,
    integral_G,
    right_momenta,
    type1_constants,
    type1_integrals,
)
from src.flow.models import IntegratorConfig

H0 = (0.6, 0.8, 0.1, 0.2)
TYPE3_CASES = [(1, 1, 1), (-1, 0, 1), (1, 1, -1)]
TYPE1_INDICES = [(0, 1), (1, 2), (2, 3)]


@pytest.fixture(scope="module", params=TYPE3_CASES, ids=["T3=1,T4=1,T6=1", "T3=-1,T4=0,T6=1", "T3=1,T4=1,T6=-1"])
def type3_trajectory(request):
    """rk4 trajectory on [0, 10] with step 1e-3 for a type-III structure."""
    t3, t4, t6 = request.param
    T = EngelConstants(t3=t3, t4=t4, t6=t6)
    return T, integrate(T, H0, IntegratorConfig(step=1e-3, t_max=10.0))


class TestHamiltonian:
    """Test H = (h1^2 + h2^2) / 2."""

    @pytest.mark.parametrize("h,expected", [((0, 0, 5, 7), 0.0), ((1, 0, 0, 0), 0.5), ((3, 4, 0, 0), 12.5)])
    def test_values(self, h, expected):
        """Test the formula on sample covectors."""
        assert hamiltonian(h) == expected


class TestCenterMomentum:
    """Test the center momentum h4'."""

    def test_reduces_to_h4(self):
        """Test T3 = T4 = 0."""
        assert center_momentum(EngelConstants(), (1, 2, 3, 5)) == 5.0

    def test_cancellation(self):
        """Test T3 = T4 = 1 at h = (1, 1, 0, 0)."""
        assert center_momentum(EngelConstants(t3=1, t4=1), (1, 1, 0, 0)) == 0.0

    def test_t4_shift(self):
        """Test T4 = 1 at h = (2, 0, 0, 3)."""
        assert center_momentum(EngelConstants(t4=1), (2, 0, 0, 3)) == 5.0

    def test_not_type3(self):
        """Test that a family-I structure is refused."""
        with pytest.raises(NotTypeIII):
            center_momentum(EngelConstants(t1=1, t5=1), (1, 0, 0, 0))


class TestIntegralG:
    """Test the quartic integral G."""

    def test_zero_covector(self, type3_constants):
        """Test G(0) = 0."""
        assert integral_G(type3_constants, (0, 0, 0, 0)) == 0.0

    def test_example(self):
        """Test T4 = 1 at h = (1, 1, 1, 0)."""
        assert integral_G(EngelConstants(t4=1), (1, 1, 1, 0)) == pytest.approx(0.5)

    def test_not_type3(self):
        """Test that a family-II structure is refused."""
        with pytest.raises(NotTypeIII):
            integral_G(EngelConstants(t1=1, t2=1), (1, 0, 0, 0))

    def test_derivative_vanishes(self):
        """Test that G has zero derivative along the vector field."""
        rng = np.random.default_rng(7)
        eps = 1e-6
        for _ in range(10):
            t3, t4, t6 = rng.uniform(-2, 2, size=3)
            T = EngelConstants(t3=t3, t4=t4, t6=t6)
            h = rng.uniform(-1, 1, size=4)
            dh = normal_rhs(T, h).as_array()
            derivative = (integral_G(T, h + eps * dh) - integral_G(T, h - eps * dh)) / (2 * eps)

            assert derivative == pytest.approx(0.0, abs=1e-8)


class TestSuperIntegrability:
    """Test conservation of H, G, h4' and the right momenta for type III."""

    def test_drifts(self, type3_trajectory):
        """Test that every normalized drift stays below 1e-7."""
        T, traj = type3_trajectory
        report = conservation_report(T, traj)

        assert set(report) == {"H", "r1", "r2", "r3", "r4", "G", "h4p"}
        for name, drift in report.items():
            assert drift < 1e-7, name

    def test_hamiltonian_drift(self, type3_trajectory):
        """Test that H drifts less than 1e-9."""
        _, traj = type3_trajectory
        H = 0.5 * (traj.states[:, 0] ** 2 + traj.states[:, 1] ** 2)

        assert np.max(np.abs(H - H[0])) < 1e-9

    def test_richardson(self, type3_constants):
        """Test that halving the rk4 step shrinks the H drift at least 12 times."""
        def drift(step):
            traj = integrate(type3_constants, H0, IntegratorConfig(step=step, t_max=10.0))
            return conservation_report(type3_constants, traj)["H"]

        assert drift(0.05) / drift(0.025) >= 12

    def test_right_momenta_start(self, type3_trajectory):
        """Test r(0) = -h(0)."""
        _, traj = type3_trajectory

        assert np.array_equal(right_momenta(traj)[0], -traj.states[0])

    def test_non_type3_report(self):
        """Test that only H and the right momenta are reported outside family III."""
        T = EngelConstants(t1=1, t5=1)
        traj = integrate(T, H0, IntegratorConfig(step=0.01, t_max=1.0))

        assert set(conservation_report(T, traj)) == {"H", "r1", "r2", "r3", "r4"}


class TestIndependenceMatrix:
    """Test the independence witness at the identity."""

    @pytest.mark.parametrize("h,expected", [((1, 0.3, 1, -0.2), 1.0), ((2, 0.5, 3, 1.0), 54.0), ((0, 0.7, 2, 0.1), 0.0)])
    def test_minor_examples(self, type3_constants, h, expected):
        """Test the minor determinant against h1 h3^3."""
        witness = independence_matrix(type3_constants, h, 0.4)

        assert witness.matrix.shape == (5, 8)
        assert witness.minor_det == pytest.approx(expected, abs=1e-12)

    def test_random_samples(self):
        """Test minor = h1 h3^3 on 100 random samples."""
        rng = np.random.default_rng(11)
        for _ in range(100):
            t3, t4, t6 = rng.uniform(-2, 2, size=3)
            h = rng.uniform(-1, 1, size=4)
            witness = independence_matrix(EngelConstants(t3=t3, t4=t4, t6=t6), h, rng.uniform(-1, 1))

            assert abs(witness.minor_det - h[0] * h[2] ** 3) < 1e-12

    def test_minor_columns(self):
        """Test the selected columns: dh1, dh3, dh4 and the first two group coordinates."""
        assert MINOR_COLUMNS == (0, 2, 3, 4, 5)

    def test_not_type3(self):
        """Test that non-type-III constants are refused."""
        with pytest.raises(NotTypeIII):
            independence_matrix(EngelConstants(t2=1), (1, 0, 1, 0), 0.0)


class TestTypeOneIntegrals:
    """Test the polynomial integrals of family I."""

    def test_constants(self):
        """Test the family-I invariants attached to (n, m)."""
        T = type1_constants(1, 2)

        assert T.as_array().tolist() == [2, 0, 1, 0, -2, 0]
        assert FamilyTag.I in classify(T)

    def test_closed_form_n0_m1(self):
        """Test F1 = (h3+h4)(h4-h3)/4 and F2 = h2 - h4 for n = 0, m = 1."""
        h = (0.3, -0.7, 0.4, 1.1)
        f1, f2 = type1_integrals(0, 1, h)

        assert f1 == pytest.approx((0.4 + 1.1) * (1.1 - 0.4) / 4)
        assert f2 == pytest.approx(-0.7 - 1.1)

    def test_zero_example(self):
        """Test h = (0, 1, 1, 1) for n = 0, m = 1."""
        assert type1_integrals(0, 1, (0, 1, 1, 1)) == (0.0, 0.0)

    @pytest.mark.parametrize("n,m", [(1, 1), (-1, 2), (0.5, 2)])
    def test_invalid_indices(self, n, m):
        """Test that indices outside m > n >= 0 are rejected."""
        with pytest.raises(InvalidParams):
            type1_integrals(n, m, (0, 0, 0, 0))

    @pytest.mark.parametrize("n,m", TYPE1_INDICES)
    def test_derivative_vanishes(self, n, m):
        """Test that F1, F2 have zero derivative along the vector field."""
        T = type1_constants(n, m)
        rng = np.random.default_rng(13)
        eps = 1e-6
        for _ in range(10):
            h = rng.uniform(-1, 1, size=4)
            dh = normal_rhs(T, h).as_array()
            plus = np.array(type1_integrals(n, m, h + eps * dh))
            minus = np.array(type1_integrals(n, m, h - eps * dh))

            assert np.allclose((plus - minus) / (2 * eps), 0.0, atol=1e-8)

    @pytest.mark.parametrize("n,m", TYPE1_INDICES)
    def test_drift_along_flow(self, n, m):
        """Test F1, F2 drift below 1e-8 on [0, 10]."""
        T = type1_constants(n, m)
        traj = integrate(T, H0, IntegratorConfig(step=1e-3, t_max=10.0))
        report = conservation_report(T, traj, type1=(n, m))

        assert report["F1"] < 1e-8
        assert report["F2"] < 1e-8


class TestFirstIntegralDrift:
    """Test drift normalization."""

    def test_normalized(self):
        """Test max |F - F(0)| / (1 + |F(0)|)."""
        assert first_integral_drift([1.0, 1.5, 0.0]) == pytest.approx(0.5)

    def test_empty(self):
        """Test that an empty series has zero drift."""
        assert first_integral_drift([]) == 0.0
