"""Antilinear operators x -> A conj(x): conjugation predicates, composition,
unitary transport, and the commuting/symmetric defects against a unitary.

Storing only the matrix A of the linear part keeps every identity in plain
matrix algebra: the composite C U C acts as A conj(U) conj(A), so defects are
Frobenius norms of small matrix expressions instead of real 2n x 2n
embeddings.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .linalg import Tolerance, as_square_matrix, require_unitary, unitarity_defect


@dataclass(frozen=True)
class AntilinearOperator:
    """The antilinear map x -> A conj(x) on coordinate space."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_square_matrix(self.matrix, "A"))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __call__(self, x):
        return apply(self, x)


def plain_conjugation(n):
    """J x = conj(x), entrywise conjugation (A = I)."""
    return AntilinearOperator(np.eye(n))


@dataclass(frozen=True)
class ConjugationReport:
    """Defect aggregate; fields not measured by a given check stay NaN."""

    isometry_defect: float
    involution_defect: float
    commutation_defect: float = math.nan
    symmetry_defect: float = math.nan

    def as_dict(self):
        return {
            "isometry_defect": self.isometry_defect,
            "involution_defect": self.involution_defect,
            "commutation_defect": self.commutation_defect,
            "symmetry_defect": self.symmetry_defect,
        }


def apply(C, x):
    x = np.asarray(x, dtype=complex)
    if x.shape[0] != C.dim:
        raise InputError(f"vector of length {x.shape[0]} fed to a dim-{C.dim} operator")
    return C.matrix @ np.conj(x)


def is_conjugation(C, tol=None):
    """Whether C is antilinear-isometric-involutive: A unitary with A^t = A.

    Returns (verdict, report).  The report carries the isometry defect
    ||A*A - I|| and the involution defect ||A conj(A) - I||; the verdict also
    requires the matrix symmetry ||A - A^t|| to sit inside the tolerance.
    """
    tol = tol or Tolerance()
    A = C.matrix
    n = A.shape[0]
    iso = unitarity_defect(A)
    inv = float(np.linalg.norm(A @ np.conj(A) - np.eye(n)))
    sym = float(np.linalg.norm(A - A.T))
    thr = tol.threshold(np.sqrt(max(n, 1)))
    report = ConjugationReport(isometry_defect=iso, involution_defect=inv)
    return bool(iso <= thr and sym <= thr), report


def compose(left, right):
    """Composite left after right.

    antilinear o antilinear is linear with matrix A conj(B); a linear matrix
    M composes as M A (linear first) or A conj(M) (antilinear first).
    """
    left_anti = isinstance(left, AntilinearOperator)
    right_anti = isinstance(right, AntilinearOperator)
    L = left.matrix if left_anti else as_square_matrix(left, "left")
    R = right.matrix if right_anti else as_square_matrix(right, "right")
    if L.shape != R.shape:
        raise InputError(f"dimension mismatch in compose: {L.shape} vs {R.shape}")
    if left_anti and right_anti:
        return L @ np.conj(R)
    if left_anti:
        return AntilinearOperator(L @ np.conj(R))
    if right_anti:
        return AntilinearOperator(L @ R)
    return L @ R


def transport(C, W, tol=None):
    """Move C to the W-coordinates: W C W* has matrix W A W^t."""
    W = require_unitary(W, tol, "W")
    if W.shape[0] != C.dim:
        raise InputError("transport dimension mismatch")
    return AntilinearOperator(W @ C.matrix @ W.T)


def commutation_defect(C, U, tol=None):
    """||C U C - U|| as ||A conj(U) conj(A) - U|| in Frobenius norm."""
    U = require_unitary(U, tol, "U")
    if U.shape[0] != C.dim:
        raise InputError("commutation_defect dimension mismatch")
    return float(np.linalg.norm(C.matrix @ np.conj(U) @ np.conj(C.matrix) - U))


def symmetry_defect(C, U, tol=None):
    """||C U C - U*|| as ||A conj(U) conj(A) - U*|| in Frobenius norm."""
    U = require_unitary(U, tol, "U")
    if U.shape[0] != C.dim:
        raise InputError("symmetry_defect dimension mismatch")
    return float(np.linalg.norm(C.matrix @ np.conj(U) @ np.conj(C.matrix) - U.conj().T))
