"""
Tests for F_q coefficients and the subspace helpers.
"""

import pytest

from src.errors import InputError, PreconditionError
from src.finite_field import (
    Fq,
    equal,
    intersect,
    kron,
    matrix_power,
    matrix_rank,
    null_space,
    same_subspace,
    to_int_rows,
)


@pytest.mark.parametrize("q", [0, 1, 6, 12])
def test_non_prime_powers_are_rejected(q):
    """Only prime powers define fields."""
    with pytest.raises(InputError):
        Fq(q)


def test_prime_power_field():
    """F_9 has characteristic 3 and degree 2."""
    f9 = Fq(9)
    assert f9.characteristic == 3
    assert f9.degree == 2
    assert len(f9.modulus) == 3
    with pytest.raises(InputError):
        f9.element(9)


def test_prime_field_reduces_integers():
    """F_5 reads integers modulo 5."""
    f5 = Fq(5)
    assert int(f5.element(7)) == 2
    assert int(f5.element(-1)) == 4


def test_root_of_unity_is_primitive():
    """ζ_4 in F_5 has order exactly 4."""
    f5 = Fq(5)
    zeta = f5.root_of_unity(4)
    assert zeta**4 == 1
    assert zeta**2 != 1
    with pytest.raises(PreconditionError):
        f5.root_of_unity(3)


def test_rank_and_null_space():
    """A rank-1 2x2 matrix over F_3 has a one-dimensional kernel."""
    f3 = Fq(3)
    a = f3.matrix([[1, 2], [2, 1]])
    assert matrix_rank(a) == 1
    kernel = null_space(f3, a)
    assert kernel.shape == (1, 2)
    assert not (a @ kernel[0]).any()


def test_intersection_of_coordinate_planes():
    """Two planes in F_2^3 meet in a line."""
    f2 = Fq(2)
    a = f2.matrix([[1, 0, 0], [0, 1, 0]])
    b = f2.matrix([[0, 1, 0], [0, 0, 1]])
    meet = intersect(f2, a, b)
    assert same_subspace(f2, meet, f2.matrix([[0, 1, 0]]))


def test_matrix_power_of_jordan_block():
    """J_2^3 = [[1, 3], [0, 1]] reduces to [[1, 0], [0, 1]] over F_3."""
    f3 = Fq(3)
    j = f3.matrix([[1, 1], [0, 1]])
    assert equal(matrix_power(f3, j, 3), f3.identity(2))
    assert to_int_rows(matrix_power(f3, j, 2)) == [[1, 2], [0, 1]]


def test_kronecker_layout():
    """e_i ⊗ e_k sits at index i·dim(b) + k."""
    f5 = Fq(5)
    a = f5.matrix([[2]])
    b = f5.matrix([[1, 1], [0, 1]])
    assert to_int_rows(kron(f5, a, b)) == [[2, 2], [0, 2]]
    assert kron(f5, f5.identity(2), b).shape == (4, 4)
