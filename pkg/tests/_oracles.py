"""Independent brute-force oracles.

Nothing here shares code with the library paths under test: membership is
searched by gridding or minimizing over explicitly parametrized symmetric
unitaries, and the transform pairing rule is evaluated straight from its
defining inner products.
"""

import numpy as np
from scipy.optimize import minimize


def brute_force_2x2_members(u1, u2, thresh=1e-6, n_r=91, n_phase=360):
    """All symmetric unitary A on the grid with ||A conj(U) conj(A) - U|| <= thresh.

    U = diag(u1, u2).  A 2x2 symmetric unitary is a = cos(r) e^{i alpha},
    b = sin(r) e^{i beta}, c = -cos(r) e^{i(2 beta - alpha)}; the two free
    phases run over n_phase points each and the modulus angle r over an
    inclusive grid in [0, pi/2].
    """
    alphas = 2 * np.pi * np.arange(n_phase) / n_phase
    betas = 2 * np.pi * np.arange(n_phase) / n_phase
    found = []
    for r in np.linspace(0.0, np.pi / 2, n_r):
        a = np.cos(r) * np.exp(1j * alphas)[:, None]
        b = np.sin(r) * np.exp(1j * betas)[None, :]
        c = -np.cos(r) * np.exp(1j * (2 * betas[None, :] - alphas[:, None]))
        b2 = np.abs(b) ** 2
        m11 = np.abs(a) ** 2 * np.conj(u1) + b2 * np.conj(u2)
        m12 = a * np.conj(u1) * np.conj(b) + b * np.conj(u2) * np.conj(c)
        m21 = b * np.conj(u1) * np.conj(a) + c * np.conj(u2) * np.conj(b)
        m22 = b2 * np.conj(u1) + np.abs(c) ** 2 * np.conj(u2)
        defect2 = (
            np.abs(m11 - u1) ** 2
            + np.abs(m12) ** 2
            + np.abs(m21) ** 2
            + np.abs(m22 - u2) ** 2
        )
        hits = np.argwhere(defect2 <= thresh * thresh)
        for i, j in hits:
            aa = a[i, 0]
            bb = b[0, j]
            cc = c[i, j]
            found.append(np.array([[aa, bb], [bb, cc]]))
    return found


def _rot_z(t):
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_y(t):
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def symmetric_unitary_3x3(params):
    """Q = O diag(e^{i phi}) O^t with O from Euler angles; covers all 3x3
    symmetric unitaries (they are real-orthogonal congruences of unimodular
    diagonals)."""
    t1, t2, t3, p1, p2, p3 = params
    O = _rot_z(t1) @ _rot_y(t2) @ _rot_z(t3)
    return (O * np.exp(1j * np.array([p1, p2, p3]))) @ O.T


def min_commutation_defect_3x3(U, seed, n_starts=30):
    """Smallest ||A conj(U) conj(A) - U|| found over symmetric unitaries A."""
    rng = np.random.default_rng(seed)
    Ub = np.conj(U)

    def objective(params):
        A = symmetric_unitary_3x3(params)
        return float(np.linalg.norm(A @ Ub @ np.conj(A) - U) ** 2)

    best = np.inf
    for _ in range(n_starts):
        x0 = rng.uniform(-np.pi, np.pi, size=6)
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxiter": 4000, "xatol": 1e-12, "fatol": 1e-24})
        best = min(best, res.fun)
    return float(np.sqrt(max(best, 0.0)))


def pairing_rule_entrywise(U):
    """The paired block from its defining inner products, one entry at a time.

    entry[n, m] = conj(<U* e_m, e_n>) with <x, y> = y^H x.
    """
    U = np.asarray(U, dtype=complex)
    n = U.shape[0]
    basis = np.eye(n, dtype=complex)
    out = np.empty((n, n), dtype=complex)
    for m in range(n):
        for k in range(n):
            inner = np.vdot(basis[:, k], U.conj().T @ basis[:, m])
            out[k, m] = np.conj(inner)
    return out


def apply_cuc_on_basis(C, U):
    """Matrix of the composite C U C evaluated column by column through apply."""
    from conjugations.antilinear import apply

    n = U.shape[0]
    cols = []
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = 1.0
        cols.append(apply(C, U @ apply(C, e)))
    return np.stack(cols, axis=1)
