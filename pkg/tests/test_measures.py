import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conjugations.antilinear import plain_conjugation
from conjugations.errors import AbsoluteContinuityError, InputError
from conjugations.linalg import haar_unitary, symmetric_unitary
from conjugations.measures import (
    AtomicMeasure,
    FieldOperator,
    WeightedSpaceElement,
    assemble_model,
    compose_fields,
    conjugate_pairing,
    coordinate_multiplier,
    field_conjugation_report,
    invariance_probe,
    is_reflection_symmetric,
    lattice_join,
    lattice_meet,
    multiplier_field,
    power_law_density,
    radon_nikodym,
    reflect,
    reflection_conjugation,
    weighted_inner,
)
from conjugations.spectral import multiplicity_model

from conftest import random_paired_measure


def delta(theta, weight=1.0):
    return AtomicMeasure.from_angles([theta], [weight])


def test_reflect_examples():
    mu = reflect(delta(np.pi / 2))
    assert np.allclose(mu.thetas, [-np.pi / 2])
    fixed = reflect(AtomicMeasure.from_angles([0.0], [2.0]))
    assert list(fixed.thetas) == [0.0] and list(fixed.weights) == [2.0]
    swapped = reflect(AtomicMeasure.from_angles([np.pi / 2, -np.pi / 2], [1.0, 3.0]))
    assert np.allclose(sorted(zip(swapped.thetas, swapped.weights)), [(-np.pi / 2, 1.0), (np.pi / 2, 3.0)])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_reflect_involution(seed):
    mu = random_paired_measure(np.random.default_rng(seed))
    back = reflect(reflect(mu))
    assert np.array_equal(back.thetas, mu.thetas)
    assert np.array_equal(back.weights, mu.weights)
    assert reflect(mu).total_mass == mu.total_mass


def test_measure_validation():
    with pytest.raises(InputError):
        AtomicMeasure.from_angles([0.0, 0.0], [1.0, 1.0])
    with pytest.raises(InputError):
        AtomicMeasure.from_angles([0.0], [0.0])
    with pytest.raises(InputError):
        AtomicMeasure.from_points([2.0], [1.0])


def test_radon_nikodym_uniform():
    mu = AtomicMeasure.from_angles([np.pi / 3, -np.pi / 3, 0.0], [2.0, 2.0, 5.0])
    assert np.array_equal(radon_nikodym(mu), np.ones(3))


def test_radon_nikodym_ratio():
    mu = AtomicMeasure.from_points([1j, -1j], [1.0, 3.0])
    h = radon_nikodym(mu)
    assert h[0] == pytest.approx(3.0)
    assert h[1] == pytest.approx(1.0 / 3.0)
    assert h[0] * h[1] == 1.0


def test_radon_nikodym_refuses_unpaired():
    with pytest.raises(AbsoluteContinuityError):
        radon_nikodym(delta(np.pi / 2))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_radon_nikodym_exact_reciprocals(seed):
    rng = np.random.default_rng(seed)
    mu = random_paired_measure(rng, weight_span=(1e-3, 1e3))
    sigma, unpaired = conjugate_pairing(mu)
    assert not unpaired
    h = radon_nikodym(mu)
    assert np.all(h * h[sigma] == 1.0)
    # values sit within a few ulps of the true weight ratios
    true = mu.weights[sigma] / mu.weights
    assert np.max(np.abs(h / true - 1.0)) < 1e-14


def test_lattice_examples():
    assert lattice_meet(delta(0.0), delta(np.pi)).size == 0
    j = lattice_join(delta(0.0, 1.0), delta(0.0, 2.0))
    assert j.size == 1 and j.weights[0] == 3.0
    m = lattice_meet(
        AtomicMeasure.from_angles([np.pi / 2, 0.0], [2.0, 1.0]), delta(np.pi / 2, 1.0)
    )
    assert m.size == 1 and m.weights[0] == 1.0 and m.thetas[0] == pytest.approx(np.pi / 2)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_lattice_order_relations(seed):
    rng = np.random.default_rng(seed)
    mu, nu = random_paired_measure(rng), random_paired_measure(rng)
    meet, join = lattice_meet(mu, nu), lattice_join(mu, nu)
    wm = dict(zip(meet.thetas, meet.weights))
    wj = dict(zip(join.thetas, join.weights))
    for t, w in wm.items():
        assert w <= dict(zip(mu.thetas, mu.weights)).get(t, np.inf)
        assert w <= dict(zip(nu.thetas, nu.weights)).get(t, np.inf)
    for t, w in zip(mu.thetas, mu.weights):
        assert wj[t] >= w
    for t, w in zip(nu.thetas, nu.weights):
        assert wj[t] >= w


def test_reflection_conjugation_uniform_grid():
    # equal weights: plain reflected conjugation, no weight factor
    mu = AtomicMeasure.from_angles([np.pi / 3, -np.pi / 3], [2.0, 2.0])
    jsh = reflection_conjugation(mu, 1)
    f = WeightedSpaceElement(mu, np.array([[1.0 + 2j], [3.0 - 1j]]))
    out = jsh.apply(f)
    assert np.allclose(out.values[:, 0], [3.0 + 1j, 1.0 - 2j])


def test_reflection_conjugation_weighted_pair():
    mu = AtomicMeasure.from_points([1j, -1j], [1.0, 3.0])
    jsh = reflection_conjugation(mu, 1)
    f = WeightedSpaceElement(mu, np.array([[1.0 + 1j], [2.0]]))
    out = jsh.apply(f)
    assert np.allclose(out.values[:, 0], [np.sqrt(3.0) * 2.0, (1.0 - 1j) / np.sqrt(3.0)])
    # exact involution thanks to the reciprocal sqrt(h) pairs
    report = field_conjugation_report(jsh)
    assert report.involution_defect == 0.0


def test_reflection_conjugation_real_atoms():
    mu = AtomicMeasure.from_angles([0.0, np.pi], [1.0, 4.0])
    jsh = reflection_conjugation(mu, 1)
    f = WeightedSpaceElement(mu, np.array([[1j], [2.0 - 1j]]))
    out = jsh.apply(f)
    assert np.allclose(out.values[:, 0], [-1j, 2.0 + 1j])


def test_reflection_conjugation_refuses_unpaired():
    with pytest.raises(AbsoluteContinuityError):
        reflection_conjugation(delta(0.3), 1)


def test_reflection_conjugation_contract(rng):
    for _ in range(15):
        mu = random_paired_measure(rng)
        r = int(rng.integers(1, 5))
        jsh = reflection_conjugation(mu, r)
        report = field_conjugation_report(jsh)
        assert report.isometry_defect <= 1e-12
        assert report.involution_defect <= 1e-12
        assert report.commutation_defect <= 1e-12


def test_multiplier_identity_and_coordinate():
    mu = AtomicMeasure.from_points([1j, -1j], [1.0, 2.0])
    f = WeightedSpaceElement(mu, np.array([[1.0], [2.0]]))
    ident = multiplier_field(mu, np.ones(2))
    assert np.allclose(ident.apply(f).values, f.values)
    coord = coordinate_multiplier(mu)
    assert np.allclose(coord.apply(f).values[:, 0], [1j, -2j])


def test_multiplier_adjoint(rng):
    mu = random_paired_measure(rng)
    r = 3
    mats = np.stack([haar_unitary(r, rng) for _ in range(mu.size)])
    field = FieldOperator(mu, mats)
    f = WeightedSpaceElement(mu, rng.normal(size=(mu.size, r)) + 1j * rng.normal(size=(mu.size, r)))
    g = WeightedSpaceElement(mu, rng.normal(size=(mu.size, r)) + 1j * rng.normal(size=(mu.size, r)))
    lhs = weighted_inner(field.apply(f), g)
    rhs = weighted_inner(f, field.adjoint().apply(g))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def _paired_unitary_field(mu, r, rng, fiber_conjugation=None):
    """Unitary field satisfying the reflection symmetry by construction."""
    J = fiber_conjugation if fiber_conjugation is not None else plain_conjugation(r)
    A = J.matrix
    sigma, unpaired = conjugate_pairing(mu)
    assert not unpaired
    mats = np.zeros((mu.size, r, r), dtype=complex)
    for k in range(mu.size):
        if sigma[k] == k:
            # J U J = U* means the block is symmetric when J is entrywise
            mats[k] = symmetric_unitary(r, rng)
        elif sigma[k] > k:
            mats[k] = haar_unitary(r, rng)
    for k in range(mu.size):
        if sigma[k] < k:
            other = mats[sigma[k]]
            mats[k] = (A @ np.conj(other) @ np.conj(A)).conj().T
    return FieldOperator(mu, mats)


def test_reflection_symmetry_criterion():
    mu = AtomicMeasure.from_points([1j, -1j], [1.0, 1.0])
    ok, defect = is_reflection_symmetric(multiplier_field(mu, np.ones(2)))
    assert ok and defect <= 1e-15
    ok, defect = is_reflection_symmetric(multiplier_field(mu, np.array([1.0, -1.0])))
    assert not ok
    assert defect == pytest.approx(2.0)


def test_reflection_symmetry_even_scalar(rng):
    mu = random_paired_measure(rng)
    sigma, _ = conjugate_pairing(mu)
    vals = np.exp(1j * rng.uniform(-np.pi, np.pi, mu.size))
    vals = vals[sigma] * 0 + (vals + vals[sigma]) / np.abs(vals + vals[sigma])  # even unimodular
    ok, defect = is_reflection_symmetric(multiplier_field(mu, vals))
    assert ok, defect


def test_reflection_symmetry_matches_conjugation_checks(rng):
    # the pointwise criterion and the operator-level defect suite agree both ways
    for trial in range(12):
        mu = random_paired_measure(rng, max_pairs=4)
        r = int(rng.integers(1, 4))
        jsh = reflection_conjugation(mu, r)
        if trial % 2 == 0:
            field = _paired_unitary_field(mu, r, rng)
        else:
            mats = np.stack([haar_unitary(r, rng) for _ in range(mu.size)])
            field = FieldOperator(mu, mats)
        ok, _ = is_reflection_symmetric(field)
        composed = compose_fields(field, jsh)
        report = field_conjugation_report(composed)
        passes = (
            report.isometry_defect <= 1e-10
            and report.involution_defect <= 1e-10
            and report.commutation_defect <= 1e-10
        )
        assert ok == passes


def test_composed_field_factors_through_adjoint(rng):
    # when the composite is a conjugation it also equals the reflection
    # conjugation followed by the adjoint field
    mu = random_paired_measure(rng, max_pairs=4)
    r = 2
    jsh = reflection_conjugation(mu, r)
    field = _paired_unitary_field(mu, r, rng)
    assert is_reflection_symmetric(field)[0]
    left = compose_fields(field, jsh)
    right = compose_fields(jsh, field.adjoint())
    basis_vals = rng.normal(size=(mu.size, r)) + 1j * rng.normal(size=(mu.size, r))
    f = WeightedSpaceElement(mu, basis_vals)
    assert np.max(np.abs(left.apply(f).values - right.apply(f).values)) <= 1e-12


def test_assemble_model_from_unitary(rng):
    model = multiplicity_model(np.diag([1j, -1j, 1.0, 1.0]))
    ds = assemble_model(model)
    report = ds.report()
    assert report.isometry_defect <= 1e-12
    assert report.involution_defect <= 1e-12
    assert report.commutation_defect <= 1e-12


def test_assemble_model_with_fields(rng):
    model = multiplicity_model(np.diag([1j, -1j, 1.0, 1.0]))
    fields = [
        _paired_unitary_field(mu, r, rng) for mu, r in model.components
    ]
    ds = assemble_model(model, unitary_fields=fields)
    report = ds.report()
    assert report.involution_defect <= 1e-12
    assert report.commutation_defect <= 1e-12


def test_assemble_model_refuses_unpaired():
    model = multiplicity_model(np.diag([1j, 1j]))
    with pytest.raises(AbsoluteContinuityError):
        assemble_model(model)


def test_assemble_single_fixed_atom_fiber():
    model = multiplicity_model(np.diag([1.0, 1.0]))
    (mu, r), = model.components
    q = symmetric_unitary(2, 4)
    field = FieldOperator(mu, q[None, :, :])
    ds = assemble_model(model, unitary_fields=[field])
    assert ds.report().involution_defect <= 1e-12


def test_invariance_probe():
    model = multiplicity_model(np.diag([1j, -1j, 1.0, 1.0]))
    ds = assemble_model(model)
    assert invariance_probe(ds, [1j, -1j])
    assert not invariance_probe(ds, [1j])
    all_atoms = [1j, -1j, 1.0]
    assert invariance_probe(ds, all_atoms)


def test_invariance_probe_many_members(rng):
    # a conjugation-closed coordinate set stays invariant for every sampled
    # member; a one-sided set already fails on the base conjugation
    mu = AtomicMeasure.from_angles(
        [0.4, -0.4, 1.1, -1.1, 0.0], [1.0, 2.0, 0.5, 0.7, 1.3]
    )
    model_points = mu.points

    class _Model:
        components = ((mu, 2),)

    closed = [np.exp(0.4j), np.exp(-0.4j), 1.0]
    open_set = [np.exp(0.4j), np.exp(1.1j)]
    for k in range(200):
        field = _paired_unitary_field(mu, 2, np.random.default_rng(k))
        ds = assemble_model(_Model, unitary_fields=[field])
        assert invariance_probe(ds, closed)
        assert invariance_probe(ds, model_points)
    base = assemble_model(_Model)
    assert not invariance_probe(base, open_set)


def test_power_law_density_values():
    t = 0.5
    assert power_law_density(np.exp(1j * t)) == pytest.approx((5.0 / 3.0) * t * t)
    assert power_law_density(1.0) == 1.0
    assert power_law_density(np.exp(-1j * t)) == pytest.approx((3.0 / 5.0) / (t * t))


def test_power_law_density_reciprocal_identity(rng):
    t = rng.uniform(-np.pi + 1e-6, np.pi - 1e-6, size=1000)
    t = t[np.abs(t) > 1e-9]
    xi = np.exp(1j * t)
    prod = power_law_density(xi) * power_law_density(np.conj(xi))
    assert np.max(np.abs(prod - 1.0)) <= 1e-14
