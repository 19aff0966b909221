"""The family of commuting conjugations of a unitary matrix.

A unitary U has a commuting conjugation exactly when every eigenvalue and its
conjugate carry the same multiplicity.  In the conjugate-pair basis the whole
family is parametrized by one unitary block per conjugate pair and one
symmetric unitary block per real eigenvalue, applied in front of entrywise
conjugation.  Construction, sampling, verification, and parameter recovery
all round-trip through that normal form.

Parameters are relative to the basis returned by canonical_form: the gauge
freedom inside degenerate eigenspaces makes the blocks basis-dependent, while
the operator the parameters assemble to is not.
"""

from dataclasses import dataclass

import numpy as np

from .antilinear import (
    AntilinearOperator,
    ConjugationReport,
    commutation_defect,
    is_conjugation,
    symmetry_defect,
    transport,
)
from .errors import InputError, MembershipError
from .linalg import Tolerance, haar_unitary, require_unitary, symmetric_unitary, unitarity_defect
from .spectral import canonical_form


@dataclass(frozen=True)
class ConjugationParams:
    """Free parameters: one unitary per conjugate pair, one symmetric unitary
    per real eigenvalue block (empty matrices when a block is absent)."""

    v_blocks: tuple
    q_plus: np.ndarray
    q_minus: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "v_blocks", tuple(np.asarray(v, dtype=complex) for v in self.v_blocks)
        )
        object.__setattr__(self, "q_plus", np.asarray(self.q_plus, dtype=complex))
        object.__setattr__(self, "q_minus", np.asarray(self.q_minus, dtype=complex))


def _empty_block():
    return np.zeros((0, 0), dtype=complex)


def identity_params(layout):
    return ConjugationParams(
        v_blocks=tuple(np.eye(m, dtype=complex) for _, m in layout.pairs),
        q_plus=np.eye(layout.ell, dtype=complex),
        q_minus=np.eye(layout.kay, dtype=complex),
    )


def _validate_params(layout, params, tol):
    if len(params.v_blocks) != len(layout.pairs):
        raise InputError(
            f"expected {len(layout.pairs)} pair blocks, got {len(params.v_blocks)}"
        )
    for j, ((_, m), v) in enumerate(zip(layout.pairs, params.v_blocks)):
        if v.shape != (m, m):
            raise InputError(f"pair block {j} must be {m}x{m}, got {v.shape}")
        if unitarity_defect(v) > tol.threshold(np.sqrt(m)):
            raise InputError(f"pair block {j} is not unitary")
    for name, q, size in (("q_plus", params.q_plus, layout.ell), ("q_minus", params.q_minus, layout.kay)):
        if q.shape != (size, size):
            raise InputError(f"{name} must be {size}x{size}, got {q.shape}")
        if size == 0:
            continue
        if unitarity_defect(q) > tol.threshold(np.sqrt(size)):
            raise InputError(f"{name} is not unitary")
        if np.linalg.norm(q - q.T) > tol.threshold(np.sqrt(size)):
            raise InputError(f"{name} is not symmetric")


def _assemble_block_matrix(layout, params):
    n = layout.dim
    V = np.zeros((n, n), dtype=complex)
    pos = 0
    for (_, m), v in zip(layout.pairs, params.v_blocks):
        V[pos : pos + m, pos + m : pos + 2 * m] = v
        V[pos + m : pos + 2 * m, pos : pos + m] = v.T
        pos += 2 * m
    if layout.ell:
        V[pos : pos + layout.ell, pos : pos + layout.ell] = params.q_plus
        pos += layout.ell
    if layout.kay:
        V[pos : pos + layout.kay, pos : pos + layout.kay] = params.q_minus
    return V


def from_params(layout, W, params, tol=None):
    """Assemble the conjugation with the given block parameters in basis W.

    The pair blocks enter as the off-diagonal pair (V_j, V_j^t), which makes
    the assembled matrix symmetric for any unitary V_j; the real blocks must
    be symmetric unitaries themselves.
    """
    tol = tol or Tolerance()
    _validate_params(layout, params, tol)
    W = require_unitary(W, tol, "W")
    if W.shape[0] != layout.dim:
        raise InputError("basis size does not match the layout")
    V = _assemble_block_matrix(layout, params)
    return transport(AntilinearOperator(V), W, tol)


def canonical_conjugation(U, tol=None):
    """The all-identity member of the family.

    Raises NotSelfDualError when the family is empty.
    """
    tol = tol or Tolerance()
    W, layout = canonical_form(U, tol)
    return from_params(layout, W, identity_params(layout), tol)


def sample(U, seed, tol=None):
    """Draw a random member of the family, deterministically per seed.

    Pair blocks are Haar unitary; real blocks are symmetric unitaries.  The
    draw order is fixed (pairs in layout order, then the +1 block, then the
    -1 block) so identical seeds give identical operators.
    """
    tol = tol or Tolerance()
    W, layout = canonical_form(U, tol)
    rng = np.random.default_rng(seed)
    v_blocks = tuple(haar_unitary(m, rng) for _, m in layout.pairs)
    q_plus = symmetric_unitary(layout.ell, rng) if layout.ell else _empty_block()
    q_minus = symmetric_unitary(layout.kay, rng) if layout.kay else _empty_block()
    return from_params(layout, W, ConjugationParams(v_blocks, q_plus, q_minus), tol)


def membership_threshold(n):
    return 1e-8 * max(n, 1)


def verify_membership(U, C, tol=None, threshold=None):
    """Defect report for C against U with a boolean verdict.

    The verdict requires the isometry, involution, and commutation defects to
    sit below the threshold (1e-8 * n by default).
    """
    tol = tol or Tolerance()
    U = require_unitary(U, tol, "U")
    if U.shape[0] != C.dim:
        raise InputError("operator dimensions do not match")
    n = U.shape[0]
    thr = membership_threshold(n) if threshold is None else threshold
    A = C.matrix
    report = ConjugationReport(
        isometry_defect=unitarity_defect(A),
        involution_defect=float(np.linalg.norm(A @ np.conj(A) - np.eye(n))),
        commutation_defect=commutation_defect(C, U, tol),
        symmetry_defect=symmetry_defect(C, U, tol),
    )
    passed = (
        report.isometry_defect <= thr
        and report.involution_defect <= thr
        and report.commutation_defect <= thr
    )
    return passed, report


def _block_slices(layout):
    slices, pos, labels = [], 0, []
    for j, (xi, m) in enumerate(layout.pairs):
        slices.append(slice(pos, pos + m))
        labels.append(f"pair {j} ({xi:.6g})")
        slices.append(slice(pos + m, pos + 2 * m))
        labels.append(f"pair {j} (conj)")
        pos += 2 * m
    if layout.ell:
        slices.append(slice(pos, pos + layout.ell))
        labels.append("+1 block")
        pos += layout.ell
    if layout.kay:
        slices.append(slice(pos, pos + layout.kay))
        labels.append("-1 block")
    return slices, labels


def decompose(U, C, tol=None, threshold=None):
    """Recover the block parameters of a member of the family.

    Transports C to the canonical basis, checks that the matrix of the
    transported operator has the pair/real block structure (everything off
    structure below the membership threshold), and reads the blocks off.
    The parameters are relative to the same basis canonical_form returns, so
    from_params with that basis reproduces C.
    """
    tol = tol or Tolerance()
    U = require_unitary(U, tol, "U")
    n = U.shape[0]
    thr = membership_threshold(n) if threshold is None else threshold
    ok, _ = is_conjugation(C, tol)
    if not ok:
        raise InputError("C is not a conjugation")
    W, layout = canonical_form(U, tol)
    V = W.conj().T @ C.matrix @ np.conj(W)

    npairs = len(layout.pairs)
    slices, labels = _block_slices(layout)
    nblocks = len(slices)
    allowed = np.zeros((nblocks, nblocks), dtype=bool)
    for j in range(npairs):
        allowed[2 * j, 2 * j + 1] = True
        allowed[2 * j + 1, 2 * j] = True
    for d in range(2 * npairs, nblocks):
        allowed[d, d] = True

    worst, worst_pair, off_energy = 0.0, None, 0.0
    for a in range(nblocks):
        for b in range(nblocks):
            if allowed[a, b]:
                continue
            e = float(np.linalg.norm(V[slices[a], slices[b]]))
            off_energy += e * e
            if e > worst:
                worst, worst_pair = e, (labels[a], labels[b])
    off_energy = float(np.sqrt(off_energy))
    if off_energy > thr:
        raise MembershipError(
            f"C does not commute with U: off-structure energy {off_energy:.3e} "
            f"(first violated structural zero: rows {worst_pair[0]}, cols {worst_pair[1]})"
        )
    if unitarity_defect(V) > thr or np.linalg.norm(V - V.T) > thr:
        raise MembershipError("transported matrix is not symmetric unitary")

    v_blocks = []
    for j, (_, m) in enumerate(layout.pairs):
        top, bot = slices[2 * j], slices[2 * j + 1]
        block = V[top, bot]
        if np.linalg.norm(V[bot, top] - block.T) > thr:
            raise MembershipError(f"pair {j}: lower block is not the transpose of the upper")
        if unitarity_defect(block) > thr:
            raise MembershipError(f"pair {j}: block is not unitary")
        v_blocks.append(block.copy())
    idx = 2 * npairs
    q_plus = V[slices[idx], slices[idx]].copy() if layout.ell else _empty_block()
    if layout.ell:
        idx += 1
    q_minus = V[slices[idx], slices[idx]].copy() if layout.kay else _empty_block()
    params = ConjugationParams(tuple(v_blocks), q_plus, q_minus)
    _validate_params(layout, params, Tolerance(abs_tol=thr, rel_tol=tol.rel_tol))
    return params
