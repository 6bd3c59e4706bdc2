"""
Tests for monoid algebras and the windowed Cech complex of a standard Kummer cover.
"""

import pytest

from src.errors import InputError, PreconditionError
from src.finite_field import Fq
from src.kummer import kummer_data
from src.monalg import (
    MonoidAlgebra,
    cech_slice,
    character_slices,
    kummer_gradings,
    slice_homology,
    verify_cech_exact,
)
from src.monoids import IntegralMonoid, MonoidHom

F3 = Fq(3)


def _multiplication(n):
    free = IntegralMonoid.free(1)
    return kummer_data(MonoidHom(free, free, ((n,),)))


def test_graded_basis_of_free_monoid():
    """Z≥0^2 graded by (1, 1) has 1 + 2 + 3 monomials up to degree 2."""
    algebra = MonoidAlgebra(IntegralMonoid.free(2), F3, weights=(1, 1))
    assert algebra.graded_basis(2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_monomial_arithmetic():
    """(1 + x)^3 = 1 + x^3 in characteristic 3."""
    algebra = MonoidAlgebra(IntegralMonoid.free(1), F3)
    f = algebra.one() + algebra.monomial((1,))
    assert (f * f * f).support == {(0,): 1, (3,): 1}


def test_coefficients_cancel():
    """2x + x = 0 over F_3."""
    algebra = MonoidAlgebra(IntegralMonoid.free(1), F3)
    assert (algebra.monomial((1,), 2) + algebra.monomial((1,))).terms == ()


def test_algebra_rejects_non_elements():
    """χ^{-1} is not in F_q[Z≥0]."""
    algebra = MonoidAlgebra(IntegralMonoid.free(1), F3)
    with pytest.raises(InputError):
        algebra.monomial((-1,))


def test_grading_needs_pointed_cone():
    """Z has no positive grading."""
    with pytest.raises(PreconditionError):
        MonoidAlgebra(IntegralMonoid.whole_group(IntegralMonoid.free(1).ambient), F3)


def test_kummer_gradings():
    """For [2] a generator of Q has weight 1 and P weight 1."""
    algebra, weights = kummer_gradings(_multiplication(2), F3)
    assert algebra.weights == (1,)
    assert weights == (1,)


def test_cech_terms_for_multiplication_by_two():
    """R[P]_{<=3}, then 7, 14, 28 basis elements in C^0..C^2."""
    cech = cech_slice(_multiplication(2), 3, 3, F3)
    assert cech.terms == (4, 7, 14, 28)
    assert len(cech.differentials) == 4


def test_cech_slice_is_exact_in_window():
    """Augmented slice homology vanishes except at the truncated end."""
    cech = cech_slice(_multiplication(2), 3, 3, F3)
    homology = slice_homology(cech)
    assert homology[:3] == (0, 0, 0)


def test_character_slices_partition_terms():
    """Slices over the two characters of Z/2 add up to the full slice."""
    data = _multiplication(2)
    slices = character_slices(data, 3, 2, F3)
    assert len(slices) == 2
    full = cech_slice(data, 3, 2, F3)
    assert tuple(sum(s.terms[i] for s in slices.values()) for i in range(3)) == full.terms


@pytest.mark.parametrize("n,q", [(2, 3), (3, 5), (2, 5), (3, 2)])
def test_verify_cech_exact(n, q):
    """Standard covers are Cech exact in the window."""
    report = verify_cech_exact(_multiplication(n), 3, 3, Fq(q))
    assert report.exact
    assert report.h0_correct
    assert report.higher_vanish
    assert report.decomposition_consistent


def test_cech_rejects_bad_window():
    """Depth must be positive and the degree bound nonnegative."""
    with pytest.raises(InputError):
        cech_slice(_multiplication(2), 3, 0, F3)
    with pytest.raises(InputError):
        cech_slice(_multiplication(2), -1, 2, F3)
