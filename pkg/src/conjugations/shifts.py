"""Exact function models on the M-th roots of unity.

Truncating the bilateral shift to finitely many Fourier modes destroys
unitarity, but multiplication by the coordinate on the roots-of-unity grid is
exactly unitary and every identity used here is pointwise, so it holds on the
grid without discretization error.  The grid point j is e^{2 pi i j / M}, and
the grid is closed under complex conjugation via j -> (M - j) mod M.

For a divisor d of M, a grid function splits uniquely as
f(xi) = sum_j xi^j f_j(xi^d) with the components living on the order-M/d
grid; analyze/synthesize implement the two directions through length-d DFTs
across the fibers of xi -> xi^d.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .linalg import unitarity_defect

SYMBOL_TOL = 1e-12


@dataclass(frozen=True)
class GridModel:
    """Complex values on the order-M roots-of-unity grid, index j at angle 2 pi j / M."""

    order: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if self.order < 1:
            raise InputError("grid order must be at least 1")
        if values.shape != (self.order,):
            raise InputError(f"expected {self.order} grid values, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def points(self):
        return grid_points(self.order)

    def to_dict(self):
        return {
            "order": self.order,
            "values": [[float(v.real), float(v.imag)] for v in self.values],
        }

    @classmethod
    def from_dict(cls, obj, where="grid"):
        if not isinstance(obj, dict) or "order" not in obj or "values" not in obj:
            raise InputError(f"{where}: expected an object with 'order' and 'values'")
        try:
            order = int(obj["order"])
        except (TypeError, ValueError):
            raise InputError(f"{where}: order must be an integer") from None
        vals = obj["values"]
        if not isinstance(vals, list) or len(vals) != order:
            raise InputError(f"{where}: values must be a list of length {order}")
        out = np.empty(order, dtype=complex)
        for i, v in enumerate(vals):
            if not isinstance(v, list) or len(v) != 2:
                raise InputError(f"{where}: values[{i}] must be a [re, im] pair")
            try:
                out[i] = float(v[0]) + 1j * float(v[1])
            except (TypeError, ValueError):
                raise InputError(f"{where}: values[{i}] has non-numeric parts") from None
        return cls(order, out)


def grid_points(order):
    return np.exp(2j * np.pi * np.arange(order) / order)


def grid_arguments(order):
    """Arguments of the grid points in (-pi, pi]."""
    t = 2 * np.pi * np.arange(order) / order
    return np.where(t > np.pi, t - 2 * np.pi, t)


def conjugate_indices(order):
    return (-np.arange(order)) % order


def grid_norm(f):
    """Normalized grid norm, the counting measure divided by the order."""
    return float(np.sqrt(np.mean(np.abs(f.values) ** 2)))


def _analyze_batch(values, d):
    """Component arrays of shape (d, ..., M/d) for a batch with grid axis last."""
    M = values.shape[-1]
    Md = M // d
    fibers = values.reshape(values.shape[:-1] + (d, Md))
    g = np.fft.fft(fibers, axis=-2) / d
    j = np.arange(d)[:, None]
    p = np.arange(Md)[None, :]
    twiddle = np.exp(-2j * np.pi * (j * p) / M)
    return np.moveaxis(g * twiddle, -2, 0)


def _synthesize_batch(components, M):
    d = components.shape[0]
    Md = M // d
    j = np.arange(d)[:, None]
    p = np.arange(Md)[None, :]
    twiddle = np.exp(2j * np.pi * (j * p) / M)
    tw = twiddle.reshape((d,) + (1,) * (components.ndim - 2) + (Md,))
    g = np.moveaxis(components * tw, 0, -2)
    fibers = np.fft.ifft(g, axis=-2) * d
    return fibers.reshape(fibers.shape[:-2] + (M,))


def analyze(f, d):
    """Split f into the d model components: f(xi) = sum_j xi^j f_j(xi^d)."""
    if d < 1 or f.order % d != 0:
        raise InputError(f"degree {d} must divide the grid order {f.order}")
    comps = _analyze_batch(f.values, d)
    return [GridModel(f.order // d, comps[j]) for j in range(d)]


def synthesize(components, d):
    """Inverse of analyze; exact on the grid and norm preserving."""
    if len(components) != d:
        raise InputError(f"expected {d} components, got {len(components)}")
    Md = components[0].order
    for c in components:
        if c.order != Md:
            raise InputError("components must share one grid order")
    stack = np.stack([c.values for c in components], axis=0)
    return GridModel(Md * d, _synthesize_batch(stack, Md * d))


class UMultiplierConjugation:
    """C f(xi) = u(xi) conj(f(conj xi)) for a unimodular, conjugation-symmetric u.

    Commutes with multiplication by the coordinate; defects are available in
    closed form because the operator permutes and scales grid coordinates.
    """

    def __init__(self, u):
        if not isinstance(u, GridModel):
            u = GridModel(len(u), np.asarray(u))
        M = u.order
        rev = conjugate_indices(M)
        if np.max(np.abs(np.abs(u.values) - 1.0)) > SYMBOL_TOL:
            raise InputError("u must be unimodular on the grid")
        if np.max(np.abs(u.values - u.values[rev])) > SYMBOL_TOL:
            raise InputError("u must satisfy u(xi) = u(conj xi) on the grid")
        self.order = M
        self.u = u.values
        self._rev = rev

    def apply(self, values):
        values = np.asarray(values, dtype=complex)
        if values.shape[-1] != self.order:
            raise InputError("grid size mismatch")
        return self.u * np.conj(values[..., self._rev])

    def matrix(self):
        A = np.zeros((self.order, self.order), dtype=complex)
        A[np.arange(self.order), self._rev] = self.u
        return A

    def isometry_defect(self):
        return float(np.sqrt(np.sum((np.abs(self.u) ** 2 - 1.0) ** 2)))

    def involution_defect(self):
        return float(np.linalg.norm(self.u * np.conj(self.u[self._rev]) - 1.0))

    def commutation_defect(self):
        # C M_xi C is diagonal with entries u_j conj(u_{rev j}) xi_j
        xi = grid_points(self.order)
        return float(np.linalg.norm(self.u * np.conj(self.u[self._rev]) * xi - xi))


def shift_conjugation(u):
    """Conjugation commuting with the coordinate multiplier on the grid."""
    return UMultiplierConjugation(u)


@dataclass(frozen=True)
class SymbolParams:
    """Modulus/phase samples (s, alpha, beta, gamma) on an order-L grid.

    Only the values at nonnegative arguments matter: the symbol is built from
    the samples at |t|, which bakes in the conjugation symmetry.
    """

    s: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        arrays = {}
        for name in ("s", "alpha", "beta", "gamma"):
            a = np.asarray(getattr(self, name), dtype=float)
            if a.ndim != 1:
                raise InputError(f"{name} must be a 1-d array")
            arrays[name] = a
        L = arrays["s"].shape[0]
        if any(a.shape[0] != L for a in arrays.values()):
            raise InputError("parameter arrays must share one length")
        if L and (arrays["s"].min() < 0.0 or arrays["s"].max() > 1.0):
            raise InputError("s must take values in [0, 1]")
        for name, a in arrays.items():
            object.__setattr__(self, name, a)

    @property
    def order(self):
        return self.s.shape[0]


def symbol_field(params):
    """Pointwise 2x2 unitary field on the grid, reflection compatible.

    At nonnegative arguments t the entries read

        [ e^{i alpha} s          e^{i beta} c        ]
        [ e^{i gamma} c         -e^{i(beta+gamma-alpha)} s ]

    with c = sqrt(1 - s^2), all four functions sampled at |t|.  The involution
    of the assembled operator forces the transpose relation
    phi(conj z) = phi(z)^t, so the off-diagonal phases trade places on the
    lower semicircle and average at the fixed points +-1 (where the value
    must be a symmetric unitary).  When beta = gamma the field is the plain
    |t|-symmetrized template at every point.
    """
    L = params.order
    ar = np.arange(L)
    idx = np.minimum(ar, (L - ar) % L)
    s = params.s[idx]
    c = np.sqrt(np.clip(1.0 - s * s, 0.0, None))
    a, b, g = params.alpha[idx], params.beta[idx], params.gamma[idx]
    fixed = (ar == 0) | (2 * ar == L)  # conjugation fixed points: arguments 0 and pi
    lower = (~fixed) & (ar > L - ar)  # negative argument
    p12 = np.where(lower, g, b)
    p21 = np.where(lower, b, g)
    mid = (b + g) / 2
    p12 = np.where(fixed, mid, p12)
    p21 = np.where(fixed, mid, p21)
    phi = np.empty((L, 2, 2), dtype=complex)
    phi[:, 0, 0] = np.exp(1j * a) * s
    phi[:, 0, 1] = np.exp(1j * p12) * c
    phi[:, 1, 0] = np.exp(1j * p21) * c
    phi[:, 1, 1] = -np.exp(1j * (b + g - a)) * s
    return phi


def _check_symbol(phi, order):
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (order, 2, 2):
        raise InputError(f"symbol must have shape ({order}, 2, 2)")
    rev = conjugate_indices(order)
    sym = float(np.max(np.abs(phi.transpose(0, 2, 1) - phi[rev])))
    eye = np.eye(2)
    unit = float(
        np.max(np.abs(np.einsum("kji,kjl->kil", np.conj(phi), phi) - eye[None, :, :]))
    )
    if sym > 1e-10 or unit > 1e-10:
        raise InputError(
            f"symbol is not a reflection-compatible unitary field "
            f"(transpose symmetry {sym:.3e}, unitarity {unit:.3e})"
        )
    return phi


class ModelConjugation:
    """Conjugation commuting with multiplication by xi^2 on the order-M grid.

    Splits a grid function into its two model components, reflects and
    conjugates them, mixes with the 2x2 symbol on the half-order grid, and
    reassembles: C f = sum_j (f_j^# o psi) sum_k h_k (phi_{k j} o psi) with
    psi the coordinate square and h_k the wandering basis 1, xi.
    """

    def __init__(self, phi, order):
        if order % 2 != 0:
            raise InputError("grid order must be even for the squared-shift model")
        self.order = order
        self.phi = _check_symbol(phi, order // 2)
        self._rev_half = conjugate_indices(order // 2)
        self._matrix = None

    def apply(self, values):
        values = np.asarray(values, dtype=complex)
        squeeze = values.ndim == 1
        batch = values[None, :] if squeeze else values
        if batch.shape[-1] != self.order:
            raise InputError("grid size mismatch")
        comps = _analyze_batch(batch, 2)
        sharp = np.conj(comps[..., self._rev_half])
        g0 = self.phi[:, 0, 0] * sharp[0] + self.phi[:, 0, 1] * sharp[1]
        g1 = self.phi[:, 1, 0] * sharp[0] + self.phi[:, 1, 1] * sharp[1]
        out = _synthesize_batch(np.stack([g0, g1], axis=0), self.order)
        return out[0] if squeeze else out

    def matrix(self):
        if self._matrix is None:
            self._matrix = self.apply(np.eye(self.order, dtype=complex)).T
        return self._matrix

    def isometry_defect(self):
        return unitarity_defect(self.matrix())

    def involution_defect(self):
        A = self.matrix()
        return float(np.linalg.norm(A @ np.conj(A) - np.eye(self.order)))

    def commutation_defect(self):
        A = self.matrix()
        d = grid_points(self.order) ** 2
        return float(np.linalg.norm((A * np.conj(d)[None, :]) @ np.conj(A) - np.diag(d)))


def squared_shift_conjugation(params, order):
    """Model conjugation for the squared shift from modulus/phase parameters.

    The parameter grid carries one sample per point of the half-order grid,
    where the symbol lives after composing with the coordinate square.
    """
    if order % 2 != 0:
        raise InputError("grid order must be even for the squared-shift model")
    if params.order != order // 2:
        raise InputError(
            f"parameter arrays must live on the half grid: expected length "
            f"{order // 2}, got {params.order}"
        )
    return ModelConjugation(symbol_field(params), order)


def extract_symbol(apply_fn, order):
    """Read the 2x2 symbol of a grid conjugation commuting with the squared shift.

    Feeding delta functions through each model component recovers the symbol
    columns: the image of the delta at z in component j is supported at
    conj(z) with the j-th symbol column as coefficients.
    """
    if order % 2 != 0:
        raise InputError("grid order must be even")
    half = order // 2
    rev = conjugate_indices(half)
    phi = np.empty((half, 2, 2), dtype=complex)
    for j in range(2):
        comps = np.zeros((2, half, half), dtype=complex)
        comps[j] = np.eye(half)
        batch = _synthesize_batch(comps, order)  # rows: delta at each z
        images = np.vstack([np.asarray(apply_fn(batch[p])) for p in range(half)])
        out = _analyze_batch(images, 2)
        # row p (delta at z_p) lands at conj(z_p) = z_{rev[p]}
        phi[rev, 0, j] = out[0][np.arange(half), rev]
        phi[rev, 1, j] = out[1][np.arange(half), rev]
    return phi
