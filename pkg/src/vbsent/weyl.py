"""Generalized Pauli (clock/shift) algebra for n-level systems.

Conventions, fixed package-wide:

* Computational basis |0>, ..., |n-1>; omega = exp(2*pi*i/n).
* Shift X|j> = |j+1 mod n>, clock Z|j> = omega**j |j>, so Z X = omega X Z.
* The unitary family U[l,m] = X**l Z**m with (l, m) in Z_n x Z_n.  Products
  stay inside the family up to an integer power of omega, and that exponent
  is tracked exactly in integer arithmetic (`compose`, `phase_fold`);
  floating point enters only when matrices or state vectors are built.
* A conjugate ("barred") qudit is an n-level system whose basis we write
  |0bar>, ..., |(n-1)bar>; an operator "acting on the barred slot" means the
  same n x n matrix applied in that basis.  The antisymmetric-tensor
  realization of |jbar> inside n-1 plain qudits is provided only as a
  self-test (`conjugate_embedding`) -- nothing else depends on it.
* Entangled pair basis on an ordered (first, second) pair of qudits:

      phi[0,0] = sum_j |j>|jbar> / sqrt(n)
      phi[l,m] = (U[l,m] tensor I) phi[0,0]

  which is orthonormal over all n^2 labels.  Pair labels are linearized as
  (l, m) -> l*n + m everywhere in this package (vector slots, matrix rows,
  CSV columns).

All functions are pure and all returned values may be shared freely across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Tuple, Union

import numpy as np

#: Largest n for which the exponentially sized self-tests (antisymmetric
#: embedding, four-qudit pair swap) are built by default.
MAX_EMBED_DIMENSION = 4

IndexLike = Union["BellIndex", Tuple[int, int]]


def _check_dimension(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"qudit dimension must be an integer >= 2, got {n!r}")


@dataclass(frozen=True, order=True)
class BellIndex:
    """Pair label (l, m) in Z_n x Z_n, reduced mod n on construction."""

    n: int
    l: int
    m: int

    def __post_init__(self) -> None:
        _check_dimension(self.n)
        object.__setattr__(self, "l", int(self.l) % self.n)
        object.__setattr__(self, "m", int(self.m) % self.n)

    def __neg__(self) -> "BellIndex":
        return BellIndex(self.n, -self.l, -self.m)

    def __add__(self, other: IndexLike) -> "BellIndex":
        other = as_index(self.n, other)
        return BellIndex(self.n, self.l + other.l, self.m + other.m)

    @property
    def is_singlet(self) -> bool:
        return self.l == 0 and self.m == 0

    @property
    def linear(self) -> int:
        """Fixed linearization (l, m) -> l*n + m."""
        return self.l * self.n + self.m


def as_index(n: int, a: IndexLike) -> BellIndex:
    """Coerce a (l, m) pair or BellIndex to a BellIndex for dimension n."""
    if isinstance(a, BellIndex):
        if a.n != n:
            raise ValueError(f"index is for dimension {a.n}, expected {n}")
        return a
    l, m = a
    return BellIndex(n, l, m)


@dataclass(frozen=True)
class PhasedIndex:
    """A pair label together with an exact integer power of omega."""

    index: BellIndex
    phase_exp: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase_exp", int(self.phase_exp) % self.index.n)

    @property
    def phase(self) -> complex:
        return complex(omega_powers(self.index.n)[self.phase_exp])


@lru_cache(maxsize=None)
def omega(n: int) -> complex:
    """Primitive n-th root of unity, evaluated once per n."""
    _check_dimension(n)
    return complex(np.exp(2j * np.pi / n))


@lru_cache(maxsize=None)
def omega_powers(n: int) -> np.ndarray:
    """omega**k for k = 0..n-1 (read-only table derived from `omega`)."""
    table = omega(n) ** np.arange(n)
    table.flags.writeable = False
    return table


def pauli_x(n: int) -> np.ndarray:
    """Cyclic shift: X|j> = |j+1 mod n>; X**n = I."""
    _check_dimension(n)
    x = np.zeros((n, n), dtype=complex)
    x[(np.arange(n) + 1) % n, np.arange(n)] = 1.0
    return x


def pauli_z(n: int) -> np.ndarray:
    """Clock operator diag(1, omega, ..., omega**(n-1)); Z**n = I."""
    _check_dimension(n)
    return np.diag(omega_powers(n))


def u_lm(n: int, a: IndexLike) -> np.ndarray:
    """U[l,m] = X**l Z**m."""
    a = as_index(n, a)
    x = np.linalg.matrix_power(pauli_x(n), a.l)
    z = np.linalg.matrix_power(pauli_z(n), a.m)
    return x @ z


def compose(n: int, a: IndexLike, b: IndexLike) -> PhasedIndex:
    """Exact product law U[a] U[b] = omega**(m_a * l_b) U[a+b]."""
    a = as_index(n, a)
    b = as_index(n, b)
    return PhasedIndex(a + b, a.m * b.l)


def phase_fold(n: int, factors: Iterable[IndexLike]) -> PhasedIndex:
    """Left-to-right product of U factors as (total label, omega exponent).

    The empty product is the identity, ((0, 0), 0).
    """
    total = BellIndex(n, 0, 0)
    exp = 0
    for f in factors:
        f = as_index(n, f)
        exp += total.m * f.l
        total = total + f
    return PhasedIndex(total, exp)


def bell_vector(n: int, a: IndexLike) -> np.ndarray:
    """phi[a] as a unit vector on the flattened ordered pair, slot i*n + j."""
    return u_lm(n, a).reshape(-1) / math.sqrt(n)


def _permutation_sign(seq: Tuple[int, ...]) -> int:
    sign = 1
    for i in range(len(seq)):
        for k in range(i + 1, len(seq)):
            if seq[i] > seq[k]:
                sign = -sign
    return sign


def conjugate_embedding(n: int, j: int, max_dimension: int = MAX_EMBED_DIMENSION) -> np.ndarray:
    """|jbar> realized inside n-1 plain qudits via the rank-n antisymmetric tensor.

    Returns a unit vector of dimension n**(n-1); the n vectors are mutually
    orthonormal.  Exponential in n, hence guarded by `max_dimension`.
    """
    _check_dimension(n)
    if n > max_dimension:
        raise ValueError(f"embedding dimension n**(n-1) too large for n={n} (max n={max_dimension})")
    if not 0 <= j < n:
        raise ValueError(f"basis label {j} out of range for dimension {n}")
    vec = np.zeros(n ** (n - 1), dtype=complex)
    rest = [v for v in range(n) if v != j]
    norm = math.sqrt(math.factorial(n - 1))
    for perm in permutations(rest):
        slot = 0
        for v in perm:
            slot = slot * n + v
        vec[slot] = _permutation_sign((j,) + perm) / norm
    return vec


def swap_identity_residual(n: int, max_dimension: int = MAX_EMBED_DIMENSION) -> float:
    """Residual of the pair-swap identity on four qudits ordered (0, 1bar, 1, 2bar).

    Two adjacent singlet pairs on (0,1bar) and (1,2bar) equal the Bell sum
    (1/n) sum_{l,m} phi[l,m] on (0,2bar) tensor phi[l,-m] on (1bar,1).
    The identity is exact; the return value is the floating-point residual
    of assembling both sides.
    """
    _check_dimension(n)
    if n > max_dimension:
        raise ValueError(f"four-qudit space too large for n={n} (max n={max_dimension})")
    pair0 = u_lm(n, (0, 0)) / math.sqrt(n)
    lhs = np.einsum("ab,cd->abcd", pair0, pair0)
    rhs = np.zeros_like(lhs)
    for l in range(n):
        for m in range(n):
            outer = u_lm(n, (l, m)) / math.sqrt(n)     # pair (0, 2bar)
            inner = u_lm(n, (l, -m)) / math.sqrt(n)    # pair (1bar, 1)
            rhs += np.einsum("ad,bc->abcd", outer, inner)
    rhs /= n
    return float(np.linalg.norm(lhs - rhs))
