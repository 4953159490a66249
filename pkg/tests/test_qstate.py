"""Tests for two-qubit states and X-state parameterizations."""
import numpy as np
import pytest

from src.core.errors import InvalidArgumentError, NotXStateError
from src.quantum.qstate import (
    BlochXParams,
    DensityMatrix4,
    XStateParams,
    basis_state,
    bloch_from_x,
    bloch_matrix,
    ensure_valid,
    maximally_mixed,
    to_x_params,
    validate,
    werner,
    x_from_bloch,
    x_matrix,
)


def test_werner_entries():
    """Werner state populations and singlet coherence."""
    x = to_x_params(werner(0.6))
    assert x.rho11 == pytest.approx(0.1)
    assert x.rho22 == pytest.approx(0.4)
    assert x.rho33 == pytest.approx(0.4)
    assert x.rho44 == pytest.approx(0.1)
    assert x.rho14 == 0.0
    assert x.rho23 == pytest.approx(-0.3)


@pytest.mark.parametrize("p", [-0.1, 1.1])
def test_werner_out_of_range(p):
    """Test that p outside [0, 1] raises."""
    with pytest.raises(InvalidArgumentError):
        werner(p)


def test_werner_bloch_parameters():
    """Werner(p) has c1 = c2 = c3 = -p and no local polarization."""
    b = bloch_from_x(to_x_params(werner(0.7)))
    assert (b.c1, b.c2, b.c3) == pytest.approx((-0.7, -0.7, -0.7))
    assert (b.r, b.s) == pytest.approx((0.0, 0.0))


def test_x_params_round_trip(random_x_states):
    """Matrix and Bloch views describe the same state."""
    for x in random_x_states(20):
        assert to_x_params(x_matrix(x)).as_tuple() == pytest.approx(x.as_tuple(), abs=1e-15)
        assert x_from_bloch(bloch_from_x(x)).as_tuple() == pytest.approx(x.as_tuple(), abs=1e-14)


def test_bloch_matrix_is_valid_state(random_x_states):
    """Bloch-built matrices are valid states."""
    for x in random_x_states(20):
        b = bloch_from_x(x)
        assert b.is_valid()
        assert validate(bloch_matrix(b)).ok()


def test_to_x_params_rejects_off_pattern_entry():
    """Weight outside the X pattern is reported with a 1-based index."""
    mat = np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex)
    mat[0, 1] = mat[1, 0] = 0.1
    with pytest.raises(NotXStateError) as excinfo:
        to_x_params(DensityMatrix4(mat))
    assert excinfo.value.index == (1, 2)
    assert excinfo.value.magnitude == pytest.approx(0.1)


def test_validate_reports_negative_eigenvalue():
    """validate() describes defects without raising."""
    report = validate(np.diag([1.2, -0.2, 0.0, 0.0]))
    assert not report.ok()
    assert report.min_eigenvalue == pytest.approx(-0.2)
    with pytest.raises(InvalidArgumentError):
        ensure_valid(DensityMatrix4(np.diag([1.2, -0.2, 0.0, 0.0])))


def test_maximally_mixed_and_basis_states_are_valid():
    """Test that the helper states are valid."""
    assert validate(maximally_mixed()).ok()
    rho = basis_state("01")
    assert rho.mat[1, 1] == 1.0
    assert validate(rho).ok()


@pytest.mark.parametrize("label", ["2", "012", "ab"])
def test_basis_state_rejects_bad_label(label):
    """Test that bad basis labels raise."""
    with pytest.raises(InvalidArgumentError):
        basis_state(label)


def test_density_matrix_is_read_only():
    """The wrapped array cannot be modified in place."""
    rho = werner(0.5)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1.0


def test_density_matrix_requires_4x4():
    """Test that a non-4x4 matrix is rejected."""
    with pytest.raises(InvalidArgumentError):
        DensityMatrix4(np.eye(2))


def test_x_params_validity():
    """A coherence beyond sqrt(rho22 rho33) is unphysical."""
    assert XStateParams(0.25, 0.25, 0.25, 0.25, 0.0, 0.25).is_valid()
    assert not XStateParams(0.25, 0.25, 0.25, 0.25, 0.0, 0.3).is_valid()
    assert not XStateParams(0.5, 0.5, 0.5, 0.5, 0.0, 0.0).is_valid()


def test_bloch_validity_flags_negative_diagonal():
    """A negative diagonal weight makes the Bloch parameters invalid."""
    assert not BlochXParams(c1=0.0, c2=0.0, c3=-1.0, r=0.5, s=0.5).is_valid()
