from math import comb

import pytest

from fatflats.errors import ValidationError
from fatflats.projective import (
    LinForm,
    Subspace,
    collinear,
    hyperplane_subspace,
    point_subspace,
    subspace_contains,
)
from fatflats.schemes import (
    FatComponent,
    FatFlatScheme,
    FatPointsP2,
    build_fat_flat,
    build_quasi_star,
    build_rational_target,
    build_theorem_a,
    build_theorem_b_family,
    scale_multiplicities,
    star_configuration,
    support_line,
    symbolic_multiplicities,
)


def test_star_configuration_component_count():
    for n, e, s in [(2, 2, 4), (3, 2, 4), (3, 3, 4), (4, 2, 5)]:
        _, scheme = star_configuration(n, e, s, seed=1)
        assert len(scheme.components) == comb(s, e)
        assert all(c.subspace.codim == e for c in scheme.components)
        assert scheme.star_core == (e, s, 1)


def test_star_configuration_rejects_bad_parameters():
    with pytest.raises(ValidationError):
        star_configuration(2, 3, 4)
    with pytest.raises(ValidationError):
        star_configuration(3, 2, 1)


def test_scheme_rejects_containment():
    h = hyperplane_subspace(LinForm([1, 0, 0, 0]))
    line = Subspace(3, [LinForm([1, 0, 0, 0]), LinForm([0, 1, 0, 0])])
    with pytest.raises(ValidationError):
        FatFlatScheme(3, (FatComponent(h, 1), FatComponent(line, 1)))


def test_scheme_rejects_duplicates_and_empty():
    p = point_subspace((1, 2, 1))
    with pytest.raises(ValidationError):
        FatFlatScheme(2, (FatComponent(p, 1), FatComponent(p, 2)))
    with pytest.raises(ValidationError):
        FatFlatScheme(2, ())


def test_scale_multiplicities():
    _, scheme = star_configuration(2, 2, 4, seed=1)
    doubled = scale_multiplicities(scheme, 3)
    assert all(c.multiplicity == 3 for c in doubled.components)
    assert doubled.star_core == (2, 4, 3)
    with pytest.raises(ValidationError):
        scale_multiplicities(scheme, 0)


def test_symbolic_multiplicities():
    _, scheme = star_configuration(2, 2, 3, seed=1)
    scheme = scale_multiplicities(scheme, 2)
    orders = symbolic_multiplicities(scheme, 3)
    assert all(kappa == 6 for _, kappa in orders)
    with pytest.raises(ValidationError):
        symbolic_multiplicities(scheme, 0)


def test_build_fat_flat_extra_validation():
    star, _ = star_configuration(3, 2, 4, seed=1)
    h0 = hyperplane_subspace(star.hyperplanes[0])
    # A point inside H_0 but off the star lines.
    import random
    from fatflats.projective import random_point_on
    rng = random.Random(3)
    avoid = [hyperplane_subspace(h) for h in star.hyperplanes[1:]]
    pt = point_subspace(random_point_on(h0, rng, avoid=avoid))

    scheme = build_fat_flat(star, 2, extras=((pt, 1),))
    assert len(scheme.components) == comb(4, 2) + 1
    assert scheme.star_core == (2, 4, 2)

    # Cap: mu <= floor(m/e) = 1 here.
    with pytest.raises(ValidationError):
        build_fat_flat(star, 2, extras=((pt, 2),))
    # Must lie in the hyperplane union.
    outside = point_subspace((1, 1, 1, 1))
    assert not any(subspace_contains(hyperplane_subspace(h), outside)
                   for h in star.hyperplanes)
    with pytest.raises(ValidationError):
        build_fat_flat(star, 2, extras=((outside, 1),))
    # Multiplicity-zero extras are dropped.
    assert len(build_fat_flat(star, 2, extras=((pt, 0),)).components) == \
        comb(4, 2)


def test_build_theorem_a_parameter_checks():
    with pytest.raises(ValidationError):
        build_theorem_a(3, 5, 4, 1, 2)  # d != s*t
    scheme = build_theorem_a(3, 4, 4, 1, 2, seed=1)
    assert scheme.predicted_alpha_multiple == 4
    assert all(c.multiplicity == 2 for c in scheme.components)


def test_build_quasi_star_shape():
    scheme = build_quasi_star(4, seed=1)
    doubles = [c for c in scheme.components if c.multiplicity == 2]
    simples = [c for c in scheme.components if c.multiplicity == 1]
    assert len(doubles) == comb(4, 2) and len(simples) == 4
    assert scheme.star_core == (2, 4, 2)
    from fatflats.projective import point_coords
    assert not collinear([point_coords(c.subspace) for c in simples])
    with pytest.raises(ValidationError):
        build_quasi_star(1)


def test_build_rational_target_prefers_scaled_star():
    w = build_rational_target(2, 5, seed=1)
    assert w.ambient_dim == 2 and w.star_core == (2, 5, 1)
    w = build_rational_target(2, 6, seed=1)
    assert w.star_core == (2, 2, 3)  # smallest s >= a with b = s*m, m >= 2
    w = build_rational_target(4, 10, seed=1)
    assert w.ambient_dim == 4 and w.star_core == (4, 5, 2)
    with pytest.raises(ValidationError):
        build_rational_target(3, 2)
    with pytest.raises(ValidationError):
        build_rational_target(3, 7, N=2)


def test_fat_points_validation():
    with pytest.raises(ValidationError):
        FatPointsP2([(1, 0, 1), (2, 0, 2)], [1, 1])  # same point twice
    with pytest.raises(ValidationError):
        FatPointsP2([(1, 0, 1)], [0])
    config = FatPointsP2([(1, 0, 1), (0, 1, 1)], [2, 1])
    scheme = config.to_scheme()
    assert scheme.ambient_dim == 2
    assert [c.multiplicity for c in scheme.components] == [2, 1]


@pytest.mark.parametrize("case_id,params,n_points,n_doubles", [
    ("a", {"r": 2, "s": 1}, 3, 2),
    ("b", {"r": 1, "s": 2}, 4, 1),
    ("c", None, 4, 1),
    ("wprime", None, 4, 1),
    ("zprime", None, 3, 2),
    ("z", {"n": 6}, 6, 1),
    ("wsecond", None, 5, 1),
    ("vprime", {"multiplicities": (2, 1, 1)}, 3, 1),
])
def test_theorem_b_families(case_id, params, n_points, n_doubles):
    config = build_theorem_b_family(case_id, params)
    assert len(config) == n_points
    assert sum(m == 2 for m in config.multiplicities) == n_doubles


def test_theorem_b_family_rejects_unknown():
    with pytest.raises(ValidationError):
        build_theorem_b_family("nope")
    with pytest.raises(ValidationError):
        build_theorem_b_family("z", {"n": 3})
    with pytest.raises(ValidationError):
        build_theorem_b_family("vprime", {"multiplicities": (1, 1)})


def test_support_line():
    config = build_theorem_b_family("a", {"r": 1, "s": 2})
    line = support_line(config)
    assert all(line.evaluate(p) == 0 for p in config.points)
    with pytest.raises(ValidationError):
        support_line(build_theorem_b_family("c"))
