"""
Tests for rational cones, duals and Hilbert bases.
"""

import pytest

from src.cones import (
    RationalCone,
    contains,
    dual_cone,
    hilbert_basis,
    interior_functional,
    is_pointed,
    lineality_space,
    nonnegative_combination,
    parallelotope_points,
    primitive,
)
from src.errors import InputError, PreconditionError


def _cone(*rays):
    return RationalCone.from_generators(len(rays[0]), rays)


def test_primitive_divides_by_gcd():
    assert primitive((4, -6)) == (2, -3)
    with pytest.raises(InputError):
        primitive((0, 0))


def test_from_generators_makes_rays_primitive_and_drops_zero():
    cone = RationalCone.from_generators(2, [(2, 0), (0, 0), (1, 2)])
    assert cone.rays == ((1, 0), (1, 2))


def test_rays_must_be_primitive():
    with pytest.raises(InputError):
        RationalCone(2, ((2, 0),))


def test_dual_of_fixed_cone():
    assert dual_cone(_cone((1, 0), (1, 2))).rays == ((0, 1), (2, -1))


def test_membership_via_dual_inequalities():
    cone = _cone((1, 0), (1, 2))
    assert contains(cone, (3, 1))
    assert contains(cone, (1, 2))
    assert not contains(cone, (0, 1))


def test_hilbert_basis_of_fixed_cone():
    """cone((1,0),(1,2)) has Hilbert basis {(1,0),(1,1),(1,2)}."""
    assert hilbert_basis(_cone((1, 0), (1, 2))) == [(1, 0), (1, 1), (1, 2)]


@pytest.mark.parametrize(
    "rays,expected",
    [
        (((1, 0), (0, 1)), [(0, 1), (1, 0)]),
        (((1, 0), (1, 3)), [(1, 0), (1, 1), (1, 2), (1, 3)]),
        (((0, 1), (2, -1)), [(0, 1), (1, 0), (2, -1)]),
        (((1,),), [(1,)]),
        (((1, 0, 0), (0, 1, 0), (1, 1, 2)), [(0, 1, 0), (1, 0, 0), (1, 1, 1), (1, 1, 2)]),
    ],
)
def test_hilbert_basis_examples(rays, expected):
    assert hilbert_basis(_cone(*rays)) == expected


def test_hilbert_basis_of_lower_dimensional_cone():
    """A ray in Z^2 spanning a line segment has just its primitive generator."""
    assert hilbert_basis(_cone((2, 4))) == [(1, 2)]


def test_hilbert_basis_needs_pointed_cone():
    with pytest.raises(PreconditionError):
        hilbert_basis(_cone((1, 0), (-1, 0), (0, 1)))


def test_zero_cone_has_empty_basis():
    assert hilbert_basis(RationalCone(2, ())) == []


def test_lineality_and_pointedness():
    half_plane = _cone((1, 0), (-1, 0), (0, 1))
    assert not is_pointed(half_plane)
    assert len(lineality_space(half_plane)) == 1
    assert is_pointed(_cone((1, 0), (1, 2)))


def test_interior_functional_is_positive_on_rays():
    cone = _cone((1, 0), (1, 2), (1, -3))
    w = interior_functional(cone)
    assert all(sum(a * b for a, b in zip(w, r)) > 0 for r in cone.rays)


def test_parallelotope_point_count_is_the_index():
    points = parallelotope_points([(1, 0), (1, 3)])
    assert points == [(0, 0), (1, 1), (1, 2)]
    with pytest.raises(InputError):
        parallelotope_points([(1, 1), (2, 2)])


def test_nonnegative_combination():
    scale, coeffs = nonnegative_combination([(1, 0), (1, 2)], (1, 1))
    assert scale * 1 == coeffs[0] * 1 + coeffs[1] * 1
    assert coeffs[1] * 2 == scale * 1
    assert nonnegative_combination([(1, 0), (1, 2)], (0, 1)) is None
    assert nonnegative_combination([(1, 0)], (0, 0)) == (1, (0,))
