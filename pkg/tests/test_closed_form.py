import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vbsent.closed_form import (
    branch_points,
    branch_residual,
    decay_factor,
    open_entropy,
    open_renyi,
    open_spectrum,
    periodic_entropy,
    periodic_renyi,
    periodic_spectrum,
    renyi_power_sum,
    transfer_diagonalizer,
    transfer_matrix,
    transfer_spectrum,
)
from vbsent.errors import BranchPointCondition, DegenerateSpectrumError
from vbsent.oracle import jacobi_eigvalsh, renyi, spectrum_report, von_neumann


def test_decay_factor_values():
    assert decay_factor(2, 1) == Fraction(-1, 3)
    assert decay_factor(3, 2) == Fraction(1, 64)
    assert decay_factor(5, 0) == 1
    with pytest.raises(ValueError):
        decay_factor(2, -1)


def test_open_spectrum_values():
    one = open_spectrum(2, 1)
    assert (one.singlet, one.adjoint) == (0, Fraction(1, 3))
    two = open_spectrum(2, 2)
    assert (two.singlet, two.adjoint) == (Fraction(1, 3), Fraction(2, 9))
    far = open_spectrum(2, 60)
    assert abs(float(far.singlet) - 0.25) < 1e-15
    assert abs(float(far.adjoint) - 0.25) < 1e-15


@given(st.integers(2, 6), st.integers(1, 80))
def test_open_trace_identity_exact(n, L):
    spec = open_spectrum(n, L)
    assert spec.singlet + (n * n - 1) * spec.adjoint == 1
    assert spec.singlet >= 0 and spec.adjoint > 0


def test_open_nonzero_multiset():
    assert open_spectrum(2, 1).nonzero() == [Fraction(1, 3)] * 3
    assert open_spectrum(2, 2).nonzero() == [Fraction(1, 3)] + [Fraction(2, 9)] * 3


def test_open_entropy_values():
    assert abs(open_entropy(2, 1) - math.log(3)) < 1e-14
    expected = -(1 / 3) * math.log(1 / 3) - 3 * (2 / 9) * math.log(2 / 9)
    assert abs(open_entropy(2, 2) - expected) < 1e-13
    assert abs(expected - 1.3689223607402194) < 1e-12


@pytest.mark.parametrize("n", (2, 3, 4))
def test_open_entropy_matches_weight_sum(n):
    for L in range(1, 12):
        singlet, adjoint = open_spectrum(n, L).floats()
        eigs = [singlet] + [adjoint] * (n * n - 1) if singlet > 0 else [adjoint] * (n * n - 1)
        assert abs(open_entropy(n, L) - von_neumann(spectrum_report(eigs))) < 1e-13


@pytest.mark.parametrize("n", (2, 3, 4))
def test_entropy_saturation(n):
    assert abs(open_entropy(n, 30) - 2 * math.log(n)) < 1e-12


def test_open_renyi_values():
    assert abs(open_renyi(2, 2, 2.0) - math.log(27 / 7)) < 1e-13
    assert abs(open_renyi(2, 1, 2.0) - math.log(3)) < 1e-14
    with pytest.raises(ValueError):
        open_renyi(2, 2, 1.0)
    with pytest.raises(ValueError):
        open_renyi(2, 2, -0.5)


def test_open_renyi_matches_oracle_renyi():
    report = spectrum_report([1 / 3, 2 / 9, 2 / 9, 2 / 9])
    for alpha in (0.5, 2.0, 3.5, complex(2.0, 1.0)):
        a = open_renyi(2, 2, alpha)
        b = renyi(report, alpha)
        assert abs(a - b) < 1e-12


@pytest.mark.parametrize("n", (2, 3))
def test_renyi_flatness_at_saturation(n):
    for alpha in (0.5, 0.9, 1.1, 2.0, 5.0, 10.0):
        assert abs(open_renyi(n, 40, alpha) - 2 * math.log(n)) < 1e-10


@pytest.mark.parametrize("n,L", [(2, 1), (2, 2), (2, 5), (3, 2), (4, 3)])
def test_renyi_von_neumann_limit(n, L):
    s = open_entropy(n, L)
    for alpha in (1.0 + 1e-6, 1.0 - 1e-6):
        assert abs(open_renyi(n, L, alpha) - s) < 1e-5


def test_periodic_spectrum_values():
    spec = periodic_spectrum(2, 4, 2)
    assert (spec.singlet, spec.adjoint) == (Fraction(3, 7), Fraction(4, 21))
    whole = periodic_spectrum(3, 5, 5)
    assert (whole.singlet, whole.adjoint) == (1, 0)


@given(st.integers(2, 5), st.integers(2, 30), st.data())
def test_periodic_trace_and_reflection(n, N, data):
    L = data.draw(st.integers(1, N))
    spec = periodic_spectrum(n, N, L)
    assert spec.singlet + (n * n - 1) * spec.adjoint == 1
    mirror = periodic_spectrum(n, N, N - L) if L < N else None
    if mirror is not None:
        assert (spec.singlet, spec.adjoint) == (mirror.singlet, mirror.adjoint)


def test_periodic_reduces_to_open():
    ring = periodic_spectrum(2, 40, 2)
    line = open_spectrum(2, 2)
    assert abs(float(ring.singlet - line.singlet)) < 1e-10
    assert abs(float(ring.adjoint - line.adjoint)) < 1e-10


def test_periodic_entropy_values():
    assert periodic_entropy(2, 4, 4) == 0.0
    expected = -(3 / 7) * math.log(3 / 7) - 3 * (4 / 21) * math.log(4 / 21)
    assert abs(periodic_entropy(2, 4, 2) - expected) < 1e-13
    assert abs(expected - 1.310686555367963) < 1e-12
    assert abs(periodic_entropy(2, 60, 30) - 2 * math.log(2)) < 1e-10


def test_periodic_renyi_and_limit():
    s = periodic_entropy(2, 6, 3)
    for alpha in (1.0 + 1e-6, 1.0 - 1e-6):
        assert abs(periodic_renyi(2, 6, 3, alpha) - s) < 1e-5
    assert abs(periodic_renyi(2, 4, 4, 2.0)) < 1e-14  # pure block


def test_periodic_validation():
    with pytest.raises(ValueError):
        periodic_spectrum(2, 3, 4)
    with pytest.raises(ValueError):
        periodic_spectrum(2, 3, 0)


# -------------------------------------------------------------- branch points

def test_branch_point_frozen_value():
    point = branch_points(2, 2, [0])[0]
    expected = complex(math.log(3), math.pi) / math.log(1.5)
    assert abs(point.alpha - expected) < 1e-12
    assert point.residual < 1e-8
    assert abs(renyi_power_sum(2, 2, point.alpha)) < 1e-8
    assert point.even_block


@pytest.mark.parametrize("n", (2, 3))
@pytest.mark.parametrize("L", range(2, 7))
def test_branch_point_grid(n, L):
    points = branch_points(n, L, range(3))
    assert len(points) == 6
    for point in points:
        assert point.residual < 1e-8
        assert point.residual == branch_residual(n, L, point.alpha)
        if L % 2 == 0:
            # small positive real part: the raw power sum itself cancels
            assert point.alpha.real > 0
            assert abs(renyi_power_sum(n, L, point.alpha)) < 1e-8
        else:
            assert point.alpha.real < 0
        conj = [
            q for q in points
            if q.m == point.m and q.sign == -point.sign
        ]
        assert len(conj) == 1 and abs(conj[0].alpha - point.alpha.conjugate()) < 1e-12


def test_branch_point_rejections():
    with pytest.raises(ValueError):
        branch_points(2, 1, [0])  # singlet weight exactly zero
    with pytest.raises(DegenerateSpectrumError):
        branch_points(2, 50, [0])  # weights numerically degenerate
    with pytest.raises(ValueError):
        branch_points(2, 2, [-1])


def test_closed_form_branch_condition():
    point = branch_points(2, 2, [0])[0]
    with pytest.raises(BranchPointCondition):
        open_renyi(2, 2, point.alpha)


# ------------------------------------------------------------ transfer matrix

def test_transfer_spectrum_values():
    first = transfer_spectrum(2, 1)
    assert (first.singlet, first.adjoint) == (0, Fraction(1, 3))
    assert transfer_spectrum(3, 4) == open_spectrum(3, 4)


@pytest.mark.parametrize("n", (2, 3, 4))
def test_transfer_route_agrees_everywhere(n):
    for L in range(1, 21):
        via = transfer_spectrum(n, L)
        direct = open_spectrum(n, L)
        assert via.singlet == direct.singlet
        assert via.adjoint == direct.adjoint


def test_transfer_matrix_spectrum():
    eigs = jacobi_eigvalsh(transfer_matrix(2))
    assert np.abs(eigs - np.array([3.0, -1.0, -1.0, -1.0])).max() < 1e-12


@pytest.mark.parametrize("n", (2, 3, 4))
def test_transfer_diagonalizer(n):
    nn = n * n
    uc = transfer_diagonalizer(n)
    assert np.linalg.norm(uc.conj().T @ uc - np.eye(nn)) < 1e-12
    diag = np.diag([nn - 1.0] + [-1.0] * (nn - 1))
    assert np.linalg.norm(uc @ diag @ uc.conj().T - transfer_matrix(n)) < 1e-12
