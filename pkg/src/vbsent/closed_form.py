"""Analytic block spectra, entropies and branch points for the chain states.

A block of L bulk sites has exactly two distinct eigenvalue branches: a
non-degenerate singlet weight and an (n^2-1)-fold degenerate adjoint weight.
With d = n^2 - 1 and the signed decay factor r(L) = (-1/d)**L:

    open chain:   singlet = (1 + d*r(L)) / n^2,   adjoint = (1 - r(L)) / n^2
    ring (N, L):  the same pair of products over both arcs,
                  singlet = (1 + d*r(N-L))(1 + d*r(L)) / (n^2 (1 + d*r(N)))
                  adjoint = (1 - r(N-L))(1 - r(L))     / (n^2 (1 + d*r(N)))

Weights are kept as exact rationals (fractions.Fraction) and converted to
floating point only when an entropy is evaluated, so trace identities and
spectrum comparisons carry no rounding slack.  Both entropies saturate at
2 log n as the block grows; all logarithms here are natural.

The same weights arise from an L-fold application of the n^2 x n^2
"all ones minus identity" transfer matrix to the singlet slot
(`transfer_spectrum`), evaluated in exact integer arithmetic, which gives an
independent route to the open-chain branch values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

import numpy as np

from .errors import BranchPointCondition, DegenerateSpectrumError
from .weyl import _check_dimension

Order = Union[float, complex]

#: Power sums smaller than this (complex order only) count as a branch point.
BRANCH_SUM_TOL = 1e-14

#: Residual contract for returned branch points.
BRANCH_RESIDUAL_TOL = 1e-8

#: Weight splittings below this make the branch-point ratio meaningless.
DEGENERACY_TOL = 1e-15


def decay_factor(n: int, L: int) -> Fraction:
    """Signed decay factor (-1/(n^2-1))**L as an exact rational; equals 1 at L=0."""
    _check_dimension(n)
    if L < 0:
        raise ValueError(f"block length must be >= 0, got {L}")
    return Fraction(-1, n * n - 1) ** L


def _check_length(L: int) -> None:
    if not isinstance(L, int) or L < 1:
        raise ValueError(f"block length must be an integer >= 1, got {L!r}")


@dataclass(frozen=True)
class OpenSpectrum:
    """Block weights for the open chain: singlet plus (n^2-1)-fold adjoint."""

    n: int
    L: int
    singlet: Fraction
    adjoint: Fraction

    @property
    def multiplicity(self) -> int:
        return self.n * self.n - 1

    def nonzero(self) -> List[Fraction]:
        """Nonzero weights with multiplicity, descending."""
        vals = [self.adjoint] * self.multiplicity
        if self.singlet != 0:
            vals.append(self.singlet)
        return sorted(vals, reverse=True)

    def floats(self) -> Tuple[float, float]:
        return float(self.singlet), float(self.adjoint)


@dataclass(frozen=True)
class PeriodicSpectrum:
    """Block weights for the ring; symmetric under L <-> N - L."""

    n: int
    N: int
    L: int
    singlet: Fraction
    adjoint: Fraction

    @property
    def multiplicity(self) -> int:
        return self.n * self.n - 1

    def nonzero(self) -> List[Fraction]:
        vals = [self.adjoint] * self.multiplicity if self.adjoint != 0 else []
        if self.singlet != 0:
            vals.append(self.singlet)
        return sorted(vals, reverse=True)

    def floats(self) -> Tuple[float, float]:
        return float(self.singlet), float(self.adjoint)


def open_spectrum(n: int, L: int) -> OpenSpectrum:
    """Exact open-chain block weights for a block of L bulk sites."""
    _check_dimension(n)
    _check_length(L)
    d = n * n - 1
    r = decay_factor(n, L)
    return OpenSpectrum(n, L, (1 + d * r) / (n * n), (1 - r) / (n * n))


def periodic_spectrum(n: int, N: int, L: int) -> PeriodicSpectrum:
    """Exact ring block weights for a block of L out of N bulk sites."""
    _check_dimension(n)
    _check_length(L)
    if not isinstance(N, int) or N < L:
        raise ValueError(f"need 1 <= L <= N, got L={L!r}, N={N!r}")
    d = n * n - 1
    rL, rC, rN = decay_factor(n, L), decay_factor(n, N - L), decay_factor(n, N)
    denom = (n * n) * (1 + d * rN)
    return PeriodicSpectrum(
        n, N, L,
        (1 + d * rC) * (1 + d * rL) / denom,
        (1 - rC) * (1 - rL) / denom,
    )


def _xlogx(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log(x)


def open_entropy(n: int, L: int) -> float:
    """Block entropy of the open chain, in nats.

    Evaluated in the saturation-centred form
        2 log n - singlet*log(1 + d*r) - d*adjoint*log(1 - r)
    (log1p keeps the exponentially small tail exact to working precision),
    which agrees with -sum(w log w) over the weights to 1e-13.
    """
    spec = open_spectrum(n, L)
    d = n * n - 1
    r = float(decay_factor(n, L))
    singlet, adjoint = spec.floats()
    head = -singlet * math.log1p(d * r) if singlet > 0.0 else 0.0
    return 2.0 * math.log(n) + head - d * adjoint * math.log1p(-r)


def periodic_entropy(n: int, N: int, L: int) -> float:
    """Block entropy of the ring, -sum(w log w) over the exact weights."""
    singlet, adjoint = periodic_spectrum(n, N, L).floats()
    return -_xlogx(singlet) - (n * n - 1) * _xlogx(adjoint)


def _validate_order(alpha: Order) -> Order:
    if isinstance(alpha, complex) and alpha.imag == 0.0:
        alpha = alpha.real
    if alpha == 1.0:
        raise ValueError("order 1 is the von Neumann limit")
    if isinstance(alpha, complex):
        if alpha.real <= 0.0:
            raise ValueError(f"complex order must have positive real part, got {alpha!r}")
    elif alpha <= 0.0:
        raise ValueError(f"order must be positive, got {alpha!r}")
    return alpha


def _power_sum(singlet: float, adjoint: float, mult: int, alpha: Order) -> complex:
    def term(w: float) -> complex:
        if w == 0.0:
            return 0.0
        if isinstance(alpha, complex):
            return cmath.exp(alpha * math.log(w))
        return w ** alpha
    return term(singlet) + mult * term(adjoint)


def _renyi_from_weights(singlet: float, adjoint: float, mult: int, alpha: Order) -> Order:
    alpha = _validate_order(alpha)
    total = _power_sum(singlet, adjoint, mult, alpha)
    if isinstance(alpha, complex):
        if abs(total) < BRANCH_SUM_TOL:
            raise BranchPointCondition(f"power sum vanished at order {alpha!r}")
        return cmath.log(total) / (1.0 - alpha)
    return math.log(total.real) / (1.0 - alpha)


def renyi_power_sum(n: int, L: int, alpha: Order) -> complex:
    """singlet**alpha + (n^2-1) * adjoint**alpha for the open-chain weights."""
    singlet, adjoint = open_spectrum(n, L).floats()
    return _power_sum(singlet, adjoint, n * n - 1, alpha)


def open_renyi(n: int, L: int, alpha: Order) -> Order:
    """Renyi block entropy of the open chain at real or complex order."""
    singlet, adjoint = open_spectrum(n, L).floats()
    return _renyi_from_weights(singlet, adjoint, n * n - 1, alpha)


def periodic_renyi(n: int, N: int, L: int, alpha: Order) -> Order:
    """Renyi block entropy of the ring at real or complex order."""
    singlet, adjoint = periodic_spectrum(n, N, L).floats()
    return _renyi_from_weights(singlet, adjoint, n * n - 1, alpha)


@dataclass(frozen=True)
class BranchPoint:
    """A complex order where the Renyi power sum vanishes.

    `residual` is the power-sum residual with the adjoint branch factored
    out, |(singlet/adjoint)**alpha + (n^2-1)|; see `branch_residual`.
    """

    alpha: complex
    m: int
    sign: int
    residual: float
    even_block: bool


def branch_residual(n: int, L: int, alpha: complex) -> float:
    """Scale-free measure of how well alpha annihilates the power sum.

    The power sum factors as adjoint**alpha * ((singlet/adjoint)**alpha +
    (n^2-1)); the prefactor is astronomically large at the negative real
    parts odd lengths produce (|adjoint**alpha| ~ 1e40 already at n=2,
    L=5), so only the bracketed factor can meaningfully vanish in floating
    point.  Returns its modulus; at a true branch point this sits at
    rounding level regardless of scale.
    """
    singlet, adjoint = open_spectrum(n, L).floats()
    return abs(cmath.exp(alpha * math.log(singlet / adjoint)) + (n * n - 1))


def branch_points(n: int, L: int, ms: Iterable[int] = range(3)) -> List[BranchPoint]:
    """Branch points of the open-chain Renyi entropy on the complex order plane.

    Solutions of singlet**alpha + (n^2-1)*adjoint**alpha = 0:

        alpha = (log(n^2-1) +/- (2m+1) pi i) / log(singlet/adjoint),  m >= 0,

    one point per (m, sign); the two signs give conjugate points.  The real
    part is positive for even L and negative for odd L, since the weight
    ratio crosses 1 with the sign of the decay factor.  Each returned point
    is checked to annihilate the factored power sum within 1e-8
    (`branch_residual`).

    L = 1 is rejected (the singlet weight is exactly zero there) and so are
    lengths where the two weights agree within 1e-15.
    """
    spec = open_spectrum(n, L)
    singlet, adjoint = spec.floats()
    if spec.singlet == 0:
        raise ValueError(f"block length {L} has singlet weight exactly 0; the weight ratio is undefined")
    if abs(singlet - adjoint) < DEGENERACY_TOL:
        raise DegenerateSpectrumError(
            f"weights differ by {abs(singlet - adjoint):.3e} at L={L}; branch points diverge"
        )
    denom = math.log(singlet / adjoint)
    points = []
    for m in ms:
        if not isinstance(m, int) or m < 0:
            raise ValueError(f"branch integer must be >= 0 (signs are enumerated), got {m!r}")
        for sign in (1, -1):
            alpha = complex(math.log(n * n - 1), sign * (2 * m + 1) * math.pi) / denom
            residual = branch_residual(n, L, alpha)
            if residual >= BRANCH_RESIDUAL_TOL:
                raise ArithmeticError(
                    f"branch point {alpha!r} left residual {residual:.3e}; formula/arithmetic broken"
                )
            points.append(BranchPoint(alpha, m, sign, residual, L % 2 == 0))
    return points


def transfer_matrix(n: int) -> np.ndarray:
    """The n^2 x n^2 hopping matrix on pair labels: all ones minus identity."""
    _check_dimension(n)
    nn = n * n
    return np.ones((nn, nn)) - np.eye(nn)


def transfer_diagonalizer(n: int) -> np.ndarray:
    """Unitary Fourier matrix over the n^2 labels; diagonalizes the transfer matrix
    to diag(n^2-1, -1, ..., -1)."""
    _check_dimension(n)
    nn = n * n
    zeta = np.exp(2j * np.pi / nn)
    j, k = np.meshgrid(np.arange(nn), np.arange(nn), indexing="ij")
    return zeta ** (j * k) / n


def transfer_spectrum(n: int, L: int) -> OpenSpectrum:
    """Open-chain block weights via L exact integer transfer-matrix steps.

    Starts from the unit vector on the singlet label, applies the hopping
    matrix L times in Python integer arithmetic, and normalizes by
    (n^2-1)**L.  Independent of `open_spectrum` but must agree with it.
    """
    _check_dimension(n)
    _check_length(L)
    nn = n * n
    vec = [1] + [0] * (nn - 1)
    for _ in range(L):
        total = sum(vec)
        vec = [total - v for v in vec]
    rest = set(vec[1:])
    if len(rest) != 1:
        raise ArithmeticError(f"transfer iteration broke label symmetry: {vec}")
    denom = (nn - 1) ** L
    return OpenSpectrum(n, L, Fraction(vec[0], denom), Fraction(vec[1], denom))
