"""Coordinate models of the Fourier and Hilbert transforms with their
commuting conjugation families, plus a sampled-grid Hermite cross-check.

The transform models live in eigencoordinates, where both operators are
diagonal with four (respectively two) eigenvalue classes; the families are
block antilinear matrices gated by the class pairing.  The analytic side is
represented only through the quadrature cross-check, which verifies that
sampled Hermite functions are approximate (-i)^n eigenvectors of a centered
discrete Fourier operator with residuals that shrink under grid refinement.
"""

from dataclasses import dataclass

import numpy as np

from .antilinear import AntilinearOperator
from .errors import InputError
from .linalg import Tolerance, unitarity_defect


@dataclass(frozen=True)
class FourBlockModel:
    """Diagonal model of the Fourier transform: e_n is an eigenvector for
    (-i)^n, classes indexed by n mod 4, each of size N/4."""

    size: int

    def __post_init__(self):
        if self.size % 4 != 0 or self.size == 0:
            raise InputError("four-block model size must be a positive multiple of 4")

    def matrix(self):
        return np.diag((-1j) ** np.arange(self.size))

    def class_indices(self, k):
        return np.arange(self.size)[np.arange(self.size) % 4 == k]


@dataclass(frozen=True)
class TwoBlockModel:
    """Diagonal model of the Hilbert transform: i on the first half of the
    basis, -i on the second."""

    size: int

    def __post_init__(self):
        if self.size % 2 != 0 or self.size == 0:
            raise InputError("two-block model size must be a positive even number")

    def matrix(self):
        half = self.size // 2
        return np.diag(np.concatenate([np.full(half, 1j), np.full(half, -1j)]))


def _require_real_symmetric_orthogonal(O, m, name, tol):
    O = np.asarray(O, dtype=complex)
    if O.shape != (m, m):
        raise InputError(f"{name} must be {m}x{m}, got {O.shape}")
    if m == 0:
        return O.real
    thr = tol.threshold(np.sqrt(m))
    if np.max(np.abs(O.imag)) > thr:
        raise InputError(f"{name} must have real entries")
    O = O.real
    if unitarity_defect(O) > thr:
        raise InputError(f"{name} must be orthogonal")
    # the involution C^2 = I forces symmetry on the real blocks; a plain
    # rotation is orthogonal with real entries yet squares to a rotation
    if np.linalg.norm(O - O.T) > thr:
        raise InputError(f"{name} must be symmetric (an orthogonal reflection)")
    return O


def _require_unitary_block(Ui, m, name, tol):
    Ui = np.asarray(Ui, dtype=complex)
    if Ui.shape != (m, m):
        raise InputError(f"{name} must be {m}x{m}, got {Ui.shape}")
    if m and unitarity_defect(Ui) > tol.threshold(np.sqrt(m)):
        raise InputError(f"{name} must be unitary")
    return Ui


def fourier_conjugation(N, O1, O2, Ui, tol=None):
    """Commuting conjugation of the diagonal Fourier model.

    In class order (1, -i, -1, i) the matrix of the antilinear part is

        [ O1  0   0   0    ]
        [ 0   0   0   Ui^t ]
        [ 0   0   O2  0    ]
        [ 0   Ui  0   0    ]

    with O1, O2 real symmetric orthogonal on the real eigenvalue classes and
    Ui an arbitrary unitary pairing the -i class with the i class.
    """
    tol = tol or Tolerance()
    model = FourBlockModel(N)
    m = N // 4
    O1 = _require_real_symmetric_orthogonal(O1, m, "O1", tol)
    O2 = _require_real_symmetric_orthogonal(O2, m, "O2", tol)
    Ui = _require_unitary_block(Ui, m, "Ui", tol)
    A = np.zeros((N, N), dtype=complex)
    c0, c1, c2, c3 = (model.class_indices(k) for k in range(4))
    A[np.ix_(c0, c0)] = O1
    A[np.ix_(c1, c3)] = derive_pairing_rule(Ui)
    A[np.ix_(c2, c2)] = O2
    A[np.ix_(c3, c1)] = Ui
    return AntilinearOperator(A)


def hilbert_conjugation(N, Ui, tol=None):
    """Commuting conjugation of the diagonal Hilbert model.

    Block antidiagonal [[0, Ui^t], [Ui, 0]] in front of entrywise
    conjugation; Ui is an arbitrary unitary on the half space.
    """
    tol = tol or Tolerance()
    TwoBlockModel(N)
    m = N // 2
    Ui = _require_unitary_block(Ui, m, "Ui", tol)
    A = np.zeros((N, N), dtype=complex)
    A[:m, m:] = derive_pairing_rule(Ui)
    A[m:, :m] = Ui
    return AntilinearOperator(A)


def derive_pairing_rule(Ui):
    """The block paired with Ui across conjugate eigenvalue classes.

    Reading the defining inner products entrywise reduces the pairing to the
    plain matrix transpose; the entrywise computation is kept as a test
    oracle and the transpose is asserted here.
    """
    return np.asarray(Ui, dtype=complex).T


def real_symmetric_orthogonal(n, seed):
    """Random real symmetric orthogonal matrix (a random reflection).

    Built as Q diag(+-1) Q^t with Q Haar real orthogonal; these are exactly
    the real orthogonal matrices that square to the identity.
    """
    if n < 1:
        raise InputError("real_symmetric_orthogonal needs n >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diagonal(r))
    signs = rng.integers(0, 2, size=n) * 2.0 - 1.0
    s = (q * signs) @ q.T
    return (s + s.T) / 2


def require_centered_grid(grid):
    """Validate a uniform grid symmetric about zero and return (x, dx)."""
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise InputError("grid must be a 1-d array with at least two points")
    dx = np.diff(x)
    if np.max(np.abs(dx - dx[0])) > 1e-9 * abs(dx[0]):
        raise InputError("grid must be uniform")
    if np.max(np.abs(x + x[::-1])) > 1e-9 * abs(dx[0]):
        raise InputError("grid must be symmetric about zero")
    return x, float(dx[0])


def hermite_samples(n_max, grid):
    """Sampled orthonormal Hermite functions h_0..h_n_max with support flags.

    The three-term recurrence on the weighted functions
    h_{n+1} = x sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1} is stable because
    the Gaussian weight is carried along.  A function whose mass has not
    decayed at the grid boundary gets its flag cleared instead of raising;
    its samples are still returned.
    """
    if n_max < 0:
        raise InputError("n_max must be nonnegative")
    x, _ = require_centered_grid(grid)
    h = np.zeros((n_max + 1, x.size))
    h[0] = np.pi ** -0.25 * np.exp(-x * x / 2)
    if n_max >= 1:
        h[1] = np.sqrt(2.0) * x * h[0]
    for n in range(1, n_max):
        h[n + 1] = np.sqrt(2.0 / (n + 1)) * x * h[n] - np.sqrt(n / (n + 1)) * h[n - 1]
    peak = np.max(np.abs(h), axis=1)
    edge = np.maximum(np.abs(h[:, 0]), np.abs(h[:, -1]))
    # two decades of decay before the boundary; oscillation spilling over the
    # edge (turning point beyond the grid) lands at ratios near one
    supported = edge <= 1e-2 * np.where(peak > 0, peak, 1.0)
    return h, supported


def fourier_quadrature(grid):
    """Centered discrete Fourier operator: the transform integral by quadrature.

    G[k, j] = dx / sqrt(2 pi) * exp(-i x_k x_j), the Riemann sum for the
    Fourier-Plancherel integral evaluated back on the same grid.
    """
    x, dx = require_centered_grid(grid)
    return (dx / np.sqrt(2 * np.pi)) * np.exp(-1j * np.outer(x, x))


@dataclass(frozen=True)
class EigenCheckResult:
    residual: float
    grid_supported: bool


def dft_eigen_check(n, grid):
    """Relative residual of the sampled h_n as a (-i)^n eigenvector.

    residual = ||G h_n - (-i)^n h_n|| / ||h_n|| for the quadrature operator
    G on the grid.  No fixed tolerance is promised; the meaningful property
    is that the residual shrinks as the grid is refined, until roundoff.
    """
    h, supported = hermite_samples(n, grid)
    G = fourier_quadrature(grid)
    hn = h[n]
    residual = float(np.linalg.norm(G @ hn - (-1j) ** n * hn) / np.linalg.norm(hn))
    return EigenCheckResult(residual=residual, grid_supported=bool(supported[n]))


def calibration_grid(N):
    """Refinement family for the eigen check: extent 1.8 N^(1/4), N points.

    Growing the extent like N^(1/4) keeps the truncation error visible and
    strictly shrinking over practical grid sizes; the self-dual spacing
    sqrt(2 pi / N) would hit the roundoff floor before N = 128 and turn the
    refinement property into noise.
    """
    if N < 2:
        raise InputError("calibration grid needs at least two points")
    L = 1.8 * N ** 0.25
    return np.linspace(-L, L, N)
