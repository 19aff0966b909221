"""Atomic measures on the unit circle and the weighted conjugation machinery.

Measures are finite lists of weighted atoms.  Reflection sends an atom at
angle t to -t; when every non-real atom has a reflected partner the
Radon-Nikodym weights h_k = w_{sigma(k)} / w_k exist and satisfy
h_k * h_{sigma(k)} = 1.  On the weighted sequence space built over the atoms,
the map f -> sqrt(h) * J(f o conj) is a conjugation commuting with the
coordinate multiplier, and composing it with a pointwise unitary field stays
a conjugation exactly when the field is reflection symmetric.

Elements keep their weights explicit in the inner product; nothing is
rescaled into flat coordinates, so the sqrt(h) factor stays visible in the
operator data.
"""

from dataclasses import dataclass

import numpy as np

from .antilinear import ConjugationReport, is_conjugation, plain_conjugation
from .errors import AbsoluteContinuityError, InputError
from .linalg import Tolerance

THETA_DECIMALS = 12           # canonical angle resolution
PAIR_TOL = 1e-9               # conjugate-partner lookup tolerance


def _wrap_angle(theta):
    """Wrap into (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(theta, dtype=float), 2 * np.pi)


_PI_ROUNDED = float(np.round(np.pi, THETA_DECIMALS))


def canonical_angle(theta):
    """Wrap into (-pi, pi] and round to the canonical 1e-12 grid.

    Rounded pi exceeds pi, so the boundary value is pinned to the positive
    side; otherwise wrapping a canonical angle again could flip its sign.
    """
    r = np.round(_wrap_angle(theta), THETA_DECIMALS) + 0.0
    return np.where(r <= -_PI_ROUNDED, _PI_ROUNDED, r)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many weighted atoms on the unit circle, stored as angles."""

    thetas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        thetas = np.atleast_1d(np.asarray(self.thetas, dtype=float))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if thetas.shape != weights.shape or thetas.ndim != 1:
            raise InputError("thetas and weights must be 1-d arrays of equal length")
        if thetas.size and not np.all(np.isfinite(thetas)):
            raise InputError("atom angles must be finite")
        if thetas.size and np.any(weights <= 0):
            raise InputError("atom weights must be strictly positive")
        thetas = canonical_angle(thetas) if thetas.size else thetas
        if np.unique(thetas).size != thetas.size:
            raise InputError("duplicate atoms after canonicalization")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_angles(cls, thetas, weights):
        return cls(np.asarray(thetas, dtype=float), np.asarray(weights, dtype=float))

    @classmethod
    def from_points(cls, points, weights):
        points = np.atleast_1d(np.asarray(points, dtype=complex))
        if points.size and np.any(np.abs(np.abs(points) - 1.0) > 1e-12):
            raise InputError("atoms must sit on the unit circle within 1e-12")
        return cls(np.angle(points), weights)

    @classmethod
    def zero(cls):
        return cls(np.zeros(0), np.zeros(0))

    @property
    def size(self):
        return self.thetas.size

    @property
    def points(self):
        return np.exp(1j * self.thetas)

    @property
    def total_mass(self):
        return float(np.sum(self.weights))

    def to_dict(self):
        return {
            "atoms": [
                {"theta": float(t), "weight": float(w)}
                for t, w in zip(self.thetas, self.weights)
            ]
        }

    @classmethod
    def from_dict(cls, obj, where="measure"):
        if not isinstance(obj, dict) or "atoms" not in obj:
            raise InputError(f"{where}: expected an object with an 'atoms' list")
        atoms = obj["atoms"]
        if not isinstance(atoms, list):
            raise InputError(f"{where}: atoms must be a list")
        thetas, weights = [], []
        for i, atom in enumerate(atoms):
            if not isinstance(atom, dict) or "theta" not in atom or "weight" not in atom:
                raise InputError(f"{where}: atoms[{i}] must carry 'theta' and 'weight'")
            try:
                thetas.append(float(atom["theta"]))
                weights.append(float(atom["weight"]))
            except (TypeError, ValueError):
                raise InputError(f"{where}: atoms[{i}] has non-numeric fields") from None
        return cls(np.array(thetas), np.array(weights))


def reflect(mu):
    """The reflected measure: the atom at angle t moves to -t, same weight."""
    return AtomicMeasure(canonical_angle(-mu.thetas), mu.weights.copy())


def conjugate_pairing(mu):
    """Pair each atom with the atom at the conjugate point.

    Returns (sigma, unpaired) where sigma[k] is the partner index (k itself
    for atoms at +-1) and unpaired lists the atoms without a partner within
    the 1e-9 lookup tolerance.
    """
    n = mu.size
    sigma = -np.ones(n, dtype=int)
    unpaired = []
    if n == 0:
        return sigma, unpaired
    targets = canonical_angle(-mu.thetas)
    dist = np.abs(_wrap_angle(mu.thetas[None, :] - targets[:, None]))
    best = np.argmin(dist, axis=1)
    for k in range(n):
        if dist[k, best[k]] <= PAIR_TOL:
            sigma[k] = best[k]
        else:
            unpaired.append(k)
    for k in range(n):
        if sigma[k] >= 0 and sigma[sigma[k]] != k:
            raise InputError("ambiguous conjugate pairing: atoms closer than 1e-9")
    return sigma, unpaired


def _reciprocal_pair(x):
    """(x', y) within a couple of ulps of (x, 1/x) with fl(x' * y) == 1 exactly.

    A correctly rounded quotient pair can miss 1.0 by one ulp; nudging either
    factor by at most three ulps always lands the product on 1.0 exactly.
    """
    cands = [x]
    up = down = x
    for _ in range(3):
        up = np.nextafter(up, np.inf)
        down = np.nextafter(down, -np.inf)
        cands.extend((up, down))
    for xc in cands:
        y = 1.0 / xc
        if xc * y == 1.0:
            return float(xc), float(y)
        y_up = y_down = y
        for _ in range(3):
            y_up = np.nextafter(y_up, np.inf)
            if xc * y_up == 1.0:
                return float(xc), float(y_up)
            y_down = np.nextafter(y_down, -np.inf)
            if xc * y_down == 1.0:
                return float(xc), float(y_down)
    return float(x), float(1.0 / x)


def radon_nikodym(mu):
    """Per-atom weights h of the reflected measure against the original.

    h_k = w_{sigma(k)} / w_k, with the pair (h_k, h_{sigma(k)}) adjusted by
    at most a few ulps so their product is exactly 1.  Raises
    AbsoluteContinuityError when a non-real atom lacks a partner.
    """
    sigma, unpaired = conjugate_pairing(mu)
    if unpaired:
        k = unpaired[0]
        raise AbsoluteContinuityError(
            f"reflected measure is not absolutely continuous: atom at angle "
            f"{mu.thetas[k]:.12g} has no conjugate partner"
        )
    h = np.ones(mu.size)
    for k in range(mu.size):
        s = sigma[k]
        if s <= k:
            continue
        h[k], h[s] = _reciprocal_pair(mu.weights[s] / mu.weights[k])
    return h


def lattice_join(mu, nu):
    """Atomwise weight sum over the union of the atom sets."""
    acc = {}
    for t, w in zip(mu.thetas, mu.weights):
        acc[t] = acc.get(t, 0.0) + w
    for t, w in zip(nu.thetas, nu.weights):
        acc[t] = acc.get(t, 0.0) + w
    if not acc:
        return AtomicMeasure.zero()
    ts = sorted(acc)
    return AtomicMeasure(np.array(ts), np.array([acc[t] for t in ts]))


def lattice_meet(mu, nu):
    """Atomwise minimum over the intersection of the atom sets."""
    wn = dict(zip(nu.thetas, nu.weights))
    ts, ws = [], []
    for t, w in zip(mu.thetas, mu.weights):
        if t in wn:
            ts.append(t)
            ws.append(min(w, wn[t]))
    if not ts:
        return AtomicMeasure.zero()
    order = np.argsort(ts)
    return AtomicMeasure(np.array(ts)[order], np.array(ws)[order])


@dataclass(frozen=True)
class WeightedSpaceElement:
    """A fiber-vector-valued function on the atoms of a measure."""

    measure: AtomicMeasure
    values: np.ndarray  # shape (n_atoms, fiber_dim)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim == 1:
            values = values[:, None]
        if values.shape[0] != self.measure.size:
            raise InputError("values must have one row per atom")
        object.__setattr__(self, "values", values)

    @property
    def fiber_dim(self):
        return self.values.shape[1]


def weighted_inner(f, g):
    """<f, g> = sum_k w_k <f_k, g_k>, linear in the first argument."""
    if f.measure.size != g.measure.size or f.fiber_dim != g.fiber_dim:
        raise InputError("weighted inner product dimension mismatch")
    return complex(np.sum(f.measure.weights * np.sum(f.values * np.conj(g.values), axis=1)))


def weighted_norm(f):
    return float(np.sqrt(max(weighted_inner(f, f).real, 0.0)))


@dataclass(frozen=True)
class FieldOperator:
    """Per-atom matrix field, optionally antilinear and atom-permuting.

    Acts as (F f)(k) = M_k * f(p(k)) for linear fields and
    (F f)(k) = M_k * conj(f(p(k))) for antilinear ones, where p is the
    point map (identity when None).
    """

    measure: AtomicMeasure
    matrices: np.ndarray  # (n_atoms, r, r)
    antilinear: bool = False
    point_map: np.ndarray | None = None

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=complex)
        if mats.ndim != 3 or mats.shape[0] != self.measure.size or mats.shape[1] != mats.shape[2]:
            raise InputError("matrices must have shape (n_atoms, r, r)")
        object.__setattr__(self, "matrices", mats)
        if self.point_map is not None:
            pm = np.asarray(self.point_map, dtype=int)
            if pm.shape != (self.measure.size,):
                raise InputError("point_map must index the atoms")
            object.__setattr__(self, "point_map", pm)

    @property
    def fiber_dim(self):
        return self.matrices.shape[1]

    def apply(self, f):
        if f.measure.size != self.measure.size or f.fiber_dim != self.fiber_dim:
            raise InputError("field applied to an element of mismatched shape")
        vals = f.values if self.point_map is None else f.values[self.point_map]
        if self.antilinear:
            vals = np.conj(vals)
        out = np.einsum("kij,kj->ki", self.matrices, vals)
        return WeightedSpaceElement(self.measure, out)

    def adjoint(self):
        if self.antilinear or self.point_map is not None:
            raise InputError("adjoint is provided for pointwise linear fields only")
        return FieldOperator(self.measure, np.conj(np.transpose(self.matrices, (0, 2, 1))))


def multiplier_field(mu, matrices):
    """Pointwise linear multiplication field; scalars broadcast to 1x1 fibers."""
    mats = np.asarray(matrices, dtype=complex)
    if mats.ndim == 1:
        mats = mats[:, None, None]
    return FieldOperator(mu, mats)


def coordinate_multiplier(mu, fiber_dim=1):
    """Multiplication by the atom coordinate, xi_k times the identity fiber block."""
    mats = mu.points[:, None, None] * np.eye(fiber_dim)[None, :, :]
    return FieldOperator(mu, mats)


def compose_fields(F, G):
    """The composite field F after G."""
    if F.measure.size != G.measure.size or F.fiber_dim != G.fiber_dim:
        raise InputError("field composition dimension mismatch")
    n = F.measure.size
    pF = F.point_map if F.point_map is not None else np.arange(n)
    pG = G.point_map if G.point_map is not None else np.arange(n)
    mats_inner = G.matrices[pF]
    if F.antilinear:
        mats_inner = np.conj(mats_inner)
    mats = np.einsum("kij,kjl->kil", F.matrices, mats_inner)
    point = pG[pF]
    if np.array_equal(point, np.arange(n)):
        point = None
    return FieldOperator(
        F.measure, mats, antilinear=F.antilinear != G.antilinear, point_map=point
    )


def reflection_conjugation(mu, fiber_dim, fiber_conjugation=None, tol=None):
    """The weighted conjugation f -> (k -> sqrt(h_k) * J(f_{sigma(k)})).

    J is a conjugation on the fiber (entrywise conjugation by default).  The
    sqrt(h) factors are stored as exact reciprocal pairs, so composing the
    field with itself gives the identity to the last ulp.  Commutes with the
    coordinate multiplier and is isometric for the weighted inner product.
    """
    tol = tol or Tolerance()
    J = fiber_conjugation if fiber_conjugation is not None else plain_conjugation(fiber_dim)
    if J.dim != fiber_dim:
        raise InputError("fiber conjugation has the wrong dimension")
    okJ, _ = is_conjugation(J, tol)
    if not okJ:
        raise InputError("fiber map is not a conjugation")
    sigma, unpaired = conjugate_pairing(mu)
    if unpaired:
        k = unpaired[0]
        raise AbsoluteContinuityError(
            f"reflected measure is not absolutely continuous: atom at angle "
            f"{mu.thetas[k]:.12g} has no conjugate partner"
        )
    s = np.ones(mu.size)
    for k in range(mu.size):
        p = sigma[k]
        if p <= k:
            continue
        s[k], s[p] = _reciprocal_pair(float(np.sqrt(mu.weights[p] / mu.weights[k])))
    mats = s[:, None, None] * J.matrix[None, :, :]
    return FieldOperator(mu, mats, antilinear=True, point_map=sigma)


def is_reflection_symmetric(field, fiber_conjugation=None, tol=None):
    """Whether J U_k J = U_{sigma(k)}* at every atom, for a unitary field U.

    This is the exact criterion for the composite of the multiplication field
    with the weighted reflection conjugation to be a conjugation again.
    Returns (verdict, worst_defect).
    """
    tol = tol or Tolerance()
    if field.antilinear or field.point_map is not None:
        raise InputError("expected a pointwise linear multiplication field")
    r = field.fiber_dim
    J = fiber_conjugation if fiber_conjugation is not None else plain_conjugation(r)
    eye = np.eye(r)
    for k in range(field.measure.size):
        U = field.matrices[k]
        if np.linalg.norm(U.conj().T @ U - eye) > tol.threshold(np.sqrt(r)):
            raise InputError(f"field is not unitary valued at atom {k}")
    sigma, unpaired = conjugate_pairing(field.measure)
    if unpaired:
        raise AbsoluteContinuityError(
            "field measure has an unpaired non-real atom; no reflection conjugation exists"
        )
    A = J.matrix
    worst = 0.0
    for k in range(field.measure.size):
        lhs = A @ np.conj(field.matrices[k]) @ np.conj(A)
        rhs = field.matrices[sigma[k]].conj().T
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst <= tol.threshold(np.sqrt(r)), worst


def weighted_basis(mu, fiber_dim):
    """Orthonormal basis of the weighted space: one element per (atom, fiber index)."""
    out = []
    for k in range(mu.size):
        scale = 1.0 / np.sqrt(mu.weights[k])
        for m in range(fiber_dim):
            vals = np.zeros((mu.size, fiber_dim), dtype=complex)
            vals[k, m] = scale
            out.append(WeightedSpaceElement(mu, vals))
    return out


def field_conjugation_report(field):
    """Isometry, involution, and coordinate-commutation defects of a field.

    All three are measured against the weighted inner product through the
    orthonormal atom basis, so they vanish identically for genuine
    conjugations regardless of the weights.
    """
    basis = weighted_basis(field.measure, field.fiber_dim)
    images = [field.apply(e) for e in basis]
    m = len(basis)
    gram = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            gram[i, j] = weighted_inner(images[i], images[j])
    iso = float(np.linalg.norm(gram - np.eye(m)))

    twice = compose_fields(field, field)
    inv = np.sqrt(
        sum(weighted_norm(_subtract(twice.apply(e), e)) ** 2 for e in basis)
    )

    mult = coordinate_multiplier(field.measure, field.fiber_dim)
    comm = np.sqrt(
        sum(
            weighted_norm(_subtract(field.apply(mult.apply(e)), mult.apply(field.apply(e)))) ** 2
            for e in basis
        )
    )
    return ConjugationReport(
        isometry_defect=iso, involution_defect=float(inv), commutation_defect=float(comm)
    )


def _subtract(f, g):
    return WeightedSpaceElement(f.measure, f.values - g.values)


@dataclass(frozen=True)
class DirectSumConjugation:
    """Blockwise antilinear operator over mutually singular components."""

    blocks: tuple  # FieldOperator per component, all antilinear

    def apply(self, elements):
        if len(elements) != len(self.blocks):
            raise InputError("direct sum applied to the wrong number of components")
        return [blk.apply(e) for blk, e in zip(self.blocks, elements)]

    def report(self):
        """Worst-case defect report over the blocks."""
        reports = [field_conjugation_report(blk) for blk in self.blocks]
        return ConjugationReport(
            isometry_defect=max(r.isometry_defect for r in reports),
            involution_defect=max(r.involution_defect for r in reports),
            commutation_defect=max(r.commutation_defect for r in reports),
        )


def assemble_model(model, fiber_conjugations=None, unitary_fields=None, tol=None):
    """Direct sum of weighted reflection conjugations, one per component.

    Each component of the multiplicity model must pass the absolute
    continuity test, otherwise no commuting conjugation exists and the
    assembly is refused.  Optional per-component unitary fields are composed
    in after checking reflection symmetry.
    """
    comps = model.components
    blocks = []
    for i, (mu, r) in enumerate(comps):
        J = fiber_conjugations[i] if fiber_conjugations is not None else None
        base = reflection_conjugation(mu, r, J, tol)
        if unitary_fields is not None and unitary_fields[i] is not None:
            uf = unitary_fields[i]
            ok, defect = is_reflection_symmetric(uf, J, tol)
            if not ok:
                raise InputError(
                    f"component {i}: field is not reflection symmetric (defect {defect:.3e})"
                )
            blocks.append(compose_fields(uf, base))
        else:
            blocks.append(base)
    return DirectSumConjugation(tuple(blocks))


def invariance_probe(ds, atom_points, tol=None):
    """Whether the coordinate subspace over the given atoms is mapped into itself.

    atom_points are unit-circle points; membership is matched per component
    at the conjugate-partner lookup tolerance.  True is guaranteed when the
    atom set is closed under conjugation.
    """
    tol = tol or Tolerance()
    sel_thetas = canonical_angle(np.angle(np.asarray(atom_points, dtype=complex)))
    for blk in ds.blocks:
        mu = blk.measure
        inside = np.zeros(mu.size, dtype=bool)
        for k in range(mu.size):
            if np.any(np.abs(_wrap_angle(mu.thetas[k] - sel_thetas)) <= PAIR_TOL):
                inside[k] = True
        if not inside.any():
            continue
        for k in np.nonzero(inside)[0]:
            for m in range(blk.fiber_dim):
                vals = np.zeros((mu.size, blk.fiber_dim), dtype=complex)
                vals[k, m] = 1.0
                out = blk.apply(WeightedSpaceElement(mu, vals))
                outside_mass = np.sqrt(
                    np.sum(mu.weights[~inside] * np.sum(np.abs(out.values[~inside]) ** 2, axis=1))
                )
                if outside_mass > tol.threshold(1.0) * weighted_norm(out):
                    return False
    return True


def power_law_density(xi):
    """Closed-form reflection density (5/3)^sgn(t) * t^(2 sgn t), t = Arg xi.

    sgn(0) = 0, forced by the pointwise identity h(xi) * h(conj xi) = 1 at
    the fixed points of conjugation.
    """
    t = np.angle(xi)
    s = np.sign(t)
    return (5.0 / 3.0) ** s * np.abs(t) ** (2 * s)
