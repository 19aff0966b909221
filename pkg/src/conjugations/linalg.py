"""Dense complex matrix utilities: unitarity defects, structured random
sampling, Hermitian PSD square roots, and the four-unitary decomposition."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .errors import InputError


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair used by the verification predicates."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise InputError("tolerances must be nonnegative")

    def threshold(self, scale=1.0):
        return self.abs_tol + self.rel_tol * scale


def as_square_matrix(M, name="matrix"):
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"{name} must be square, got shape {A.shape}")
    if A.size and not np.all(np.isfinite(A)):
        raise InputError(f"{name} contains non-finite entries")
    return A


def unitarity_defect(M):
    """Frobenius distance of M*M from the identity."""
    A = as_square_matrix(M)
    return float(np.linalg.norm(A.conj().T @ A - np.eye(A.shape[0])))


def require_unitary(M, tol=None, name="matrix"):
    """Return M as a complex array after checking it is unitary within tol."""
    tol = tol or Tolerance()
    A = as_square_matrix(M, name)
    n = A.shape[0]
    defect = unitarity_defect(A) if n else 0.0
    if defect > tol.threshold(np.sqrt(max(n, 1))):
        raise InputError(f"{name} is not unitary: defect {defect:.3e}")
    return A


def operator_norm(M):
    """Largest singular value."""
    A = np.asarray(M, dtype=complex)
    if A.size == 0:
        return 0.0
    return float(np.linalg.svd(A, compute_uv=False)[0])


def haar_unitary(n, seed):
    """Haar-distributed n x n unitary, deterministic per seed.

    QR of a complex Ginibre matrix, with the phases of the R diagonal folded
    back into Q.  The phase correction removes the sign ambiguity of QR and
    makes the distribution exactly Haar.  ``seed`` may be an integer or an
    existing ``numpy.random.Generator``.
    """
    if n < 1:
        raise InputError("haar_unitary needs n >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def symmetric_unitary(n, seed):
    """Random unitary Q with Q^t = Q, built as V V^t for Haar V."""
    if n < 1:
        raise InputError("symmetric_unitary needs n >= 1")
    v = haar_unitary(n, seed)
    q = v @ v.T
    # exact symmetry regardless of how the BLAS accumulates the product
    return (q + q.T) / 2


def hermitian_sqrt_psd(H, tol=None):
    """Hermitian PSD square root through the spectral decomposition.

    Eigenvalues in [-abs_tol, 0) are clamped to zero; anything below
    -abs_tol is rejected.  The clamping absorbs roundoff when the input sits
    on the PSD boundary, e.g. I - H^2 for a Hermitian contraction H.
    Recovering S from S * S is accurate to roughly the eigenvalue gaps of S;
    clustered spectra lose digits to the eigenvector mixing.
    """
    tol = tol or Tolerance()
    A = as_square_matrix(H, "H")
    scale = float(np.linalg.norm(A))
    if np.linalg.norm(A - A.conj().T) > tol.threshold(1.0 + scale):
        raise InputError("matrix is not Hermitian within tolerance")
    w, V = eigh((A + A.conj().T) / 2)
    if w.size and w[0] < -tol.abs_tol:
        raise InputError(f"matrix has eigenvalue {w[0]:.3e} below -abs_tol")
    S = (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T
    return (S + S.conj().T) / 2


def _unitary_pair(M, rotate):
    """Unitary pair from a Hermitian contraction M.

    rotate=True gives M +- i sqrt(I - M^2); rotate=False gives
    iM +- sqrt(I - M^2).  Both are computed on the eigenvalues so each
    factor is unitary up to the accuracy of one Hermitian diagonalization.
    """
    w, V = eigh(M)
    w = np.clip(w, -1.0, 1.0)
    s = np.sqrt(1.0 - w * w)
    if rotate:
        d1, d2 = w + 1j * s, w - 1j * s
    else:
        d1, d2 = 1j * w + s, 1j * w - s
    return (V * d1) @ V.conj().T, (V * d2) @ V.conj().T


def four_unitary_split(A):
    """Write A = scale * (U1 + U2 + U3 + U4) with every factor unitary.

    scale is ||A||/2 in operator norm.  H = (A + A*)/(2||A||) and
    K = (A - A*)/(2i||A||) are Hermitian contractions, and the factors are
    U_{1,2} = H +- i sqrt(I - H^2) and U_{3,4} = iK +- sqrt(I - K^2).
    The zero matrix gets scale 0 with the canceling quadruple (I, I, I, -I).
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    norm = operator_norm(A)
    eye = np.eye(n)
    if norm == 0.0:
        return 0.0, (eye.copy(), eye.copy(), eye.copy(), -eye)
    H = ((A + A.conj().T) / (2 * norm) + ((A + A.conj().T) / (2 * norm)).conj().T) / 2
    K = ((A - A.conj().T) / (2j * norm) + ((A - A.conj().T) / (2j * norm)).conj().T) / 2
    U1, U2 = _unitary_pair(H, rotate=True)
    U3, U4 = _unitary_pair(K, rotate=False)
    return norm / 2, (U1, U2, U3, U4)
