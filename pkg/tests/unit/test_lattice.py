"""
Tests for exact integer linear algebra and finite abelian groups.
"""

import random

import pytest
from sympy import Matrix

from src.errors import BoundExceededError, InputError, PreconditionError
from src.lattice import (
    FinAbGroup,
    GroupHom,
    IntMatrix,
    cokernel,
    integer_kernel,
    kernel_lattice,
    rank,
    section_onto_free,
    smith_normal_form,
    solve_integer,
    subgroup_closure,
    subgroup_enumerate,
    subgroup_generated,
)


def _hom(rows):
    a = IntMatrix.from_rows(rows)
    return GroupHom(FinAbGroup.free(a.cols), FinAbGroup.free(a.rows), a)


def test_smith_normal_form_of_fixed_matrix():
    """The classic 3x3 example reduces to diag(2, 6, 12)."""
    a = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    u, d, v = smith_normal_form(a)
    assert u @ a @ v == d
    assert d.diagonal() == [2, 6, 12]


def test_smith_normal_form_random_matrices_are_certified():
    """Random matrices reduce with unimodular transforms and a dividing chain."""
    rng = random.Random(11)
    for _ in range(40):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        a = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        u, d, v = smith_normal_form(a)
        assert u @ a @ v == d
        assert abs(Matrix(u.to_rows()).det()) == 1
        assert abs(Matrix(v.to_rows()).det()) == 1
        diag = d.diagonal()
        nonzero = [x for x in diag if x]
        assert all(x > 0 for x in nonzero)
        assert diag[: len(nonzero)] == nonzero
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        assert rank(a) == Matrix(a.to_rows()).rank()


def test_cokernel_of_multiplication_by_six():
    """Z --6--> Z has cokernel Z/6."""
    group, proj = cokernel(_hom([[6]]))
    assert group == FinAbGroup(0, (6,))
    assert proj.apply((1,)) == (1,)


def test_cokernel_of_zero_matrix_is_free():
    group, _ = cokernel(_hom([[0, 0], [0, 0]]))
    assert group == FinAbGroup.free(2)


def test_cokernel_mixed_free_and_torsion():
    """Z^2 / <(2, 0)> is Z ⊕ Z/2."""
    group, proj = cokernel(_hom([[2], [0]]))
    assert group == FinAbGroup(1, (2,))
    assert proj.apply((2, 0)) == group.zero()


def test_from_orders_normalizes_to_invariant_factors():
    assert FinAbGroup.from_orders(0, [2, 3]) == FinAbGroup(0, (6,))
    assert FinAbGroup.from_orders(1, [4, 6]) == FinAbGroup(1, (2, 12))
    assert FinAbGroup.from_orders(0, [1, 1]) == FinAbGroup.trivial()


def test_fin_ab_group_rejects_non_chain():
    with pytest.raises(InputError):
        FinAbGroup(0, (3, 2))
    with pytest.raises(InputError):
        FinAbGroup(0, (1,))


def test_group_order_exponent_and_element_orders():
    group = FinAbGroup(0, (2, 4))
    assert group.order == 8
    assert group.exponent == 4
    assert group.element_order((1, 2)) == 2
    assert group.element_order((0, 1)) == 4
    assert FinAbGroup(1, (2,)).element_order((1, 0)) is None


def test_enumerating_an_infinite_group_is_refused():
    with pytest.raises(PreconditionError):
        list(FinAbGroup.free(1).elements())


def test_solve_integer_and_kernel():
    a = IntMatrix.from_rows([[2, 4], [1, 3]])
    x = solve_integer(a, (6, 4))
    assert a.apply(x) == (6, 4)
    assert solve_integer(IntMatrix.from_rows([[2]]), (3,)) is None
    kernel = integer_kernel(IntMatrix.from_rows([[1, 1, 1]]))
    assert len(kernel) == 2
    assert all(sum(v) == 0 for v in kernel)


def test_preimage_respects_target_relations():
    target = FinAbGroup(0, (4,))
    f = GroupHom.from_images(FinAbGroup.free(1), target, [(2,)])
    assert f.apply(f.preimage((2,))) == (2,)
    assert f.preimage((1,)) is None


def test_kernel_lattice_and_injectivity():
    f = GroupHom.from_images(FinAbGroup(0, (4,)), FinAbGroup(0, (2,)), [(1,)])
    assert kernel_lattice(f).columns() == [(2,)]
    assert not f.is_injective()
    assert f.is_surjective()


def test_hom_must_respect_source_relations():
    with pytest.raises(InputError):
        GroupHom.from_images(FinAbGroup(0, (2,)), FinAbGroup.free(1), [(1,)])


def test_subgroup_generated_gives_own_coordinates():
    group = FinAbGroup(0, (6,))
    sub, inclusion, coords = subgroup_generated(group, [(2,)])
    assert sub == FinAbGroup(0, (3,))
    assert inclusion.is_injective()
    assert inclusion.apply(coords[0]) == (2,)


@pytest.mark.parametrize(
    "group,count",
    [
        (FinAbGroup(0, (4,)), 3),
        (FinAbGroup(0, (2, 2)), 5),
        (FinAbGroup(0, (3, 3)), 6),
        (FinAbGroup(0, (4, 4)), 15),
        (FinAbGroup(0, (6, 6)), 30),
        (FinAbGroup.trivial(), 1),
    ],
)
def test_subgroup_counts(group, count):
    """Subgroup counts of small finite abelian groups."""
    assert len(subgroup_enumerate(group)) == count


def test_subgroup_enumeration_is_duplicate_free_and_sorted():
    subgroups = subgroup_enumerate(FinAbGroup(0, (2, 4)))
    keys = [s.generators for s in subgroups]
    assert keys == sorted(keys)
    assert len({s.elements for s in subgroups}) == len(subgroups)


def test_subgroup_enumeration_bound():
    with pytest.raises(BoundExceededError) as info:
        subgroup_enumerate(FinAbGroup(0, (10, 10)), bound=50)
    assert info.value.bound == 50
    assert info.value.requested == 100


def test_subgroup_closure_membership():
    group = FinAbGroup(0, (2, 4))
    sub = subgroup_closure(group, [(1, 2)])
    assert sub.order == 2
    assert (1, 2) in sub
    assert (0, 1) not in sub


def test_section_onto_free_of_weighted_sum():
    """(a, b) -> a + 2b has a section with f∘s = id."""
    f = _hom([[1, 2]])
    s = section_onto_free(f)
    assert s.source == FinAbGroup.free(1)
    assert s.target == FinAbGroup.free(2)
    assert f.apply(s.apply((1,))) == (1,)
    assert f.compose(s) == GroupHom.identity(FinAbGroup.free(1))


def test_section_onto_free_splits_off_torsion():
    """Z ⊕ Z/2 -> Z forgetting the torsion splits, and s(1) projects to 1."""
    source = FinAbGroup(1, (2,))
    f = GroupHom.from_images(source, FinAbGroup.free(1), [(1,), (0,)])
    s = section_onto_free(f)
    assert s.apply((1,))[0] == 1
    assert f.compose(s) == GroupHom.identity(FinAbGroup.free(1))


def test_section_onto_free_preconditions():
    """A torsion target or a non-surjective map has no section."""
    with pytest.raises(PreconditionError):
        section_onto_free(GroupHom.from_images(FinAbGroup.free(1), FinAbGroup(0, (2,)), [(1,)]))
    with pytest.raises(PreconditionError):
        section_onto_free(_hom([[2]]))
