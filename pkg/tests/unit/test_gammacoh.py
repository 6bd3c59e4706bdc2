"""
Tests for Γ-modules, Koszul cohomology, character supports and nearby cycles.
"""

import pytest

from src.covers import LogPoint
from src.errors import BoundExceededError, InputError, PreconditionError
from src.finite_field import Fq
from src.gammacoh import (
    GammaModule,
    annihilation_check,
    binomial_dims,
    character_module,
    character_order,
    cyclic_cohomology,
    direct_sum,
    external_tensor,
    is_unipotent,
    jordan_block,
    jr_module,
    km_module,
    koszul_complex,
    koszul_cohomology,
    nearby_quasi_unipotent,
    nearby_unipotent,
    prime_to_p_parts,
    quasi_unipotent_exponent,
    restrict,
    s_chi,
    stable_invariants_match,
    tensor,
    unipotent_part,
)
from src.lattice import FinAbGroup
from src.monoids import IntegralMonoid

F2, F3, F5, F7 = Fq(2), Fq(3), Fq(5), Fq(7)


@pytest.fixture
def point1():
    return LogPoint(IntegralMonoid.free(1))


@pytest.fixture
def point2():
    return LogPoint(IntegralMonoid.free(2))


def test_module_validation():
    """Operators must be invertible and commute."""
    with pytest.raises(InputError):
        GammaModule.from_rows(F3, 1, [[[0]]])
    with pytest.raises(InputError):
        GammaModule.from_rows(F3, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_trivial_module_has_binomial_cohomology(n):
    """dim H^i of the trivial module is C(n, i)."""
    assert koszul_cohomology(GammaModule.trivial(F3, n)).dims == binomial_dims(n)


def test_koszul_term_dimensions():
    """C^i has dim(M)·C(n, i)."""
    assert koszul_complex(GammaModule.trivial(F5, 2, dim=3)).term_dims == (3, 6, 3)


def test_jordan_block_cohomology():
    """J_2 for one operator has H^0 = H^1 = 1."""
    cohomology = koszul_cohomology(jr_module(2, (1,), F3))
    assert cohomology.dims == (1, 1)
    assert cohomology.euler_characteristic == 0
    assert cohomology.dimension(5) == 0


def test_tensor_and_direct_sum_dimensions():
    """Tensor multiplies and direct sum adds dimensions."""
    j2 = jr_module(2, (1,), F5)
    k2 = km_module(2, F5)
    assert tensor(j2, k2).dim == 4
    assert direct_sum(j2, k2).dim == 4
    assert external_tensor(j2, j2).n == 2


def test_combining_modules_over_different_fields_fails():
    """Modules must share the coefficient field."""
    with pytest.raises(InputError):
        direct_sum(GammaModule.trivial(F3, 1), GammaModule.trivial(F5, 1))
    with pytest.raises(InputError):
        tensor(GammaModule.trivial(F3, 1), GammaModule.trivial(F3, 2))


def test_restrict_to_subgroup():
    """K_3 restricted to 3Ẑ is trivial."""
    restricted = restrict(km_module(3, F7), 3)
    assert koszul_cohomology(restricted).dims == (3, 3)


@pytest.mark.parametrize(
    "m,chi,expected_order",
    [(4, (1,), 4), (4, (2,), 2), (4, (0,), 1)],
)
def test_character_order(m, chi, expected_order):
    """Order of χ in Hom(P^gp, Z/m)."""
    assert character_order(m, chi) == expected_order


def test_nontrivial_character_has_no_cohomology(point2):
    """ζ − 1 is a unit, so H^* vanishes for χ ≠ 0."""
    report = annihilation_check(point2, 4, (1, 2), F5)
    assert report.applicable
    assert report.vanishes
    assert report.dims == (0, 0, 0)


def test_trivial_character_has_binomial_cohomology(point2):
    """χ = 0 gives the trivial module."""
    report = annihilation_check(point2, 4, (0, 0), F5)
    assert not report.applicable
    assert report.dims == binomial_dims(2)


def test_character_needs_root_of_unity(point1):
    """F_5 has no primitive cube root of unity."""
    with pytest.raises(PreconditionError):
        character_module(point1, 3, (1,), F5)


def test_character_support_rank_one(point1):
    """S_χ on Z≥0 at level 2 is the single minimal lift."""
    assert s_chi(point1, 2, (1,)).elements == ((1,),)
    assert s_chi(point1, 2, (0,)).elements == ((0,),)


def test_character_support_rank_two(point2):
    """On Z≥0^2 every character has one minimal lift."""
    assert s_chi(point2, 3, (1, 2)).elements == ((1, 2),)


def test_character_support_of_non_simplicial_point():
    """⟨(1,0),(1,1),(1,2)⟩ at level 2 over χ = (1, 1)."""
    point = LogPoint(IntegralMonoid(FinAbGroup.free(2), ((1, 0), (1, 1), (1, 2))))
    support = s_chi(point, 2, (1, 1))
    assert support.elements
    assert all(x[0] % 2 == 1 and x[1] % 2 == 1 for x in support.elements)


def test_unipotence():
    """Jordan blocks are unipotent; -1 is not over F_5."""
    assert is_unipotent(F5, jordan_block(F5, 3))
    assert not is_unipotent(F5, F5.matrix([[4]]))


def test_unipotent_part_of_mixed_module(point1):
    """J_2 ⊕ ζ_4 has a two-dimensional unipotent part."""
    module = direct_sum(jr_module(2, (1,), F5), character_module(point1, 4, (1,), F5))
    assert unipotent_part(module).shape[0] == 2


@pytest.mark.parametrize("fq,expected", [(F7, 3), (F3, 1)])
def test_quasi_unipotent_exponent_of_cycle(fq, expected):
    """The 3-cycle is unipotent in characteristic 3 and of exponent 3 over F_7."""
    assert quasi_unipotent_exponent(km_module(3, fq)) == expected


@pytest.mark.parametrize("r", [1, 2, 3])
def test_nearby_cycles_of_unipotent_module(r):
    """A unipotent module for one operator gives (dim M, 0)."""
    nearby = nearby_unipotent(jr_module(r, (1,), F5), (1,))
    assert nearby.dims == (r, 0)
    assert nearby.exponent == 1
    assert nearby.stabilization <= 8


def test_nearby_cycles_in_small_characteristic():
    """J_2 over F_2 with multiplicity 2 still stabilizes at (2, 0)."""
    assert nearby_unipotent(jr_module(2, (1,), F2), (2,)).dims == (2, 0)


@pytest.mark.parametrize(
    "fq,r,n",
    [
        (F2, 1, (2,)),
        (F2, 3, (4,)),
        (F3, 3, (3,)),
        (F3, 2, (6,)),
    ],
)
def test_nearby_cycles_when_p_divides_multiplicity(fq, r, n):
    """A unipotent module keeps H^0 = M even when p divides n."""
    module = jr_module(r, (1,), fq)
    assert nearby_unipotent(module, n).dims == (r, 0)
    assert nearby_unipotent(module, n).dims == nearby_unipotent(module, (1,)).dims


def test_prime_to_p_parts():
    """Factors of p are stripped and zero is kept."""
    assert prime_to_p_parts(2, (4, 6, 0, 3)) == (1, 3, 0, 3)
    assert prime_to_p_parts(3, (9, 1)) == (1, 1)


def test_nearby_cycles_kill_non_unipotent_summand(point1):
    """Only the unipotent part of J_2 ⊕ ζ_4 survives."""
    module = direct_sum(jr_module(2, (1,), F5), character_module(point1, 4, (1,), F5))
    assert nearby_unipotent(module, (1,)).dims == (2, 0)


def test_nearby_cycles_multiplicity_checks():
    """Wrong count, negative and all-zero multiplicities are rejected."""
    module = jr_module(2, (1,), F5)
    with pytest.raises(InputError):
        nearby_unipotent(module, (1, 1))
    with pytest.raises(InputError):
        nearby_unipotent(module, (-1,))
    with pytest.raises(PreconditionError):
        nearby_unipotent(module, (0,))


def test_nearby_cycles_bound():
    """With r_max = 1 the tower cannot be compared."""
    with pytest.raises(BoundExceededError):
        nearby_unipotent(jr_module(2, (1,), F5), (1,), r_max=1)


def test_stable_invariants_match_unipotent_part():
    """For r >= dim M the stable invariants are the unipotent part."""
    assert stable_invariants_match(jr_module(3, (1,), F5))


def test_quasi_unipotent_nearby_cycles(point1):
    """ζ_2 becomes trivial on 2Ẑ and the K_2 cross-check passes."""
    result = nearby_quasi_unipotent(character_module(point1, 2, (1,), F5), (1,), 2)
    assert result.dims == (1, 0)
    assert result.shapiro is not None
    assert result.shapiro.passed


def test_quasi_unipotent_needs_unipotent_power(point1):
    """ζ_4 to the first power is not unipotent."""
    with pytest.raises(PreconditionError):
        nearby_quasi_unipotent(character_module(point1, 4, (1,), F5), (1,), 1)


@pytest.mark.parametrize(
    "module,m,expected",
    [
        (GammaModule.trivial(F3, 1), 2, (1, 0, 0)),
        (GammaModule.trivial(F2, 1), 2, (1, 1, 1)),
        (km_module(3, F5), 3, (1, 0, 0)),
    ],
)
def test_cyclic_cohomology(module, m, expected):
    """Z/m cohomology from the periodic resolution."""
    assert cyclic_cohomology(m, module) == expected


def test_cyclic_cohomology_needs_order_dividing_m():
    """J_2 over F_5 has infinite order."""
    with pytest.raises(PreconditionError):
        cyclic_cohomology(2, jr_module(2, (1,), F5))
