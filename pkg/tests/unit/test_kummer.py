"""
Tests for Kummer homomorphisms, their cokernels and the log smoothness chart check.
"""

import pytest

from src.errors import BoundExceededError, InputError, PreconditionError
from src.kummer import (
    abhyankar_classify,
    cokernel_group,
    is_kummer,
    is_log_etale,
    kummer_data,
    log_differentials_module,
    log_smooth_chart_check,
    minimal_divided_factorization,
    ramification_index,
    self_product_decomposition,
)
from src.lattice import FinAbGroup
from src.monoids import IntegralMonoid, MonoidHom, predicates


def _multiplication(n, r=1):
    """[n]: Z≥0^r -> Z≥0^r."""
    free = IntegralMonoid.free(r)
    return MonoidHom(free, free, tuple(free.ambient.scale(n, g) for g in free.generators))


def test_multiplication_by_six_is_kummer():
    """[6] on Z≥0 is Kummer with cokernel Z/6."""
    u = _multiplication(6)
    assert is_kummer(u)
    assert cokernel_group(u) == FinAbGroup(0, (6,))
    data = kummer_data(u)
    assert data.exponent == 6
    assert ramification_index(data) == 6


@pytest.mark.parametrize("n", [2, 3, 4])
def test_multiplication_on_rank_two(n):
    """[n] on Z≥0^2 has cokernel (Z/n)^2 and ramification n."""
    data = kummer_data(_multiplication(n, r=2))
    assert data.cokernel_group == FinAbGroup(0, (n, n))
    assert ramification_index(data) == n


def test_diagonal_fails_finite_cokernel():
    """Z≥0 -> Z≥0^2 along the diagonal has infinite cokernel."""
    u = MonoidHom(IntegralMonoid.free(1), IntegralMonoid.free(2), ((1, 1),))
    check = is_kummer(u)
    assert not check
    assert check.clause == "finite_cokernel"
    assert check.witness is not None


def test_sum_map_fails_injectivity():
    """(a, b) -> a + b has a kernel."""
    u = MonoidHom(IntegralMonoid.free(2), IntegralMonoid.free(1), ((1,), (1,)))
    check = is_kummer(u)
    assert check.clause == "injective"


def test_shear_fails_multiples():
    """Z≥0^2 -> Z≥0^2 with image cone((1,0),(1,1)) misses multiples of e2."""
    u = MonoidHom(IntegralMonoid.free(2), IntegralMonoid.free(2), ((1, 1), (1, 0)))
    check = is_kummer(u)
    assert check.clause == "multiples"
    assert check.witness == (0, 1)


def test_kummer_data_raises_with_witness():
    """Non-Kummer maps carry their witness in the error."""
    u = MonoidHom(IntegralMonoid.free(1), IntegralMonoid.free(2), ((1, 1),))
    with pytest.raises(PreconditionError) as excinfo:
        kummer_data(u)
    assert excinfo.value.witness is not None


def test_kummer_needs_saturated_source():
    """⟨2, 3⟩ -> Z≥0 is outside the saturated setting."""
    p = IntegralMonoid(FinAbGroup.free(1), ((2,), (3,)))
    with pytest.raises(PreconditionError):
        is_kummer(MonoidHom(p, IntegralMonoid.free(1), ((2,), (3,))))


def test_self_product_decomposition():
    """(Q ⊕_P Q)^Sat ≅ Q ⊕ Z/6 for [6]."""
    data = kummer_data(_multiplication(6))
    decomposition = self_product_decomposition(data)
    assert decomposition.product.ambient == FinAbGroup(1, (6,))
    assert decomposition.amalgamated.ambient == FinAbGroup(1, (6,))
    for g in decomposition.product.generators:
        assert decomposition.forward.apply(decomposition.backward.apply(g)) == g


def test_minimal_divided_factorization():
    """[6] factors through (1/6)Z≥0 by the identity."""
    factorization = minimal_divided_factorization(kummer_data(_multiplication(6)))
    assert factorization.n == 6
    assert factorization.embedding.images == ((1,),)


def test_divided_factorization_of_rank_two():
    """[3] on Z≥0^2 gives an injective Q -> (1/3)P."""
    factorization = minimal_divided_factorization(kummer_data(_multiplication(3, r=2)))
    assert factorization.n == 3
    assert factorization.embedding.group_hom.is_injective()
    assert predicates(factorization.embedding.target).is_toric


def test_chart_check_with_invertible_primes():
    """[6] passes when 2 and 3 are invertible."""
    u = _multiplication(6)
    check = log_smooth_chart_check(u, [2, 3])
    assert check.passed
    assert check.cokernel_group == FinAbGroup(0, (6,))
    assert is_log_etale(u, [2, 3])


def test_chart_check_reports_offending_primes():
    """[6] fails when only 2 is invertible."""
    check = log_smooth_chart_check(_multiplication(6), [2])
    assert not check.passed
    assert check.offending_primes == (3,)
    assert not is_log_etale(_multiplication(6), [2])


def test_diagonal_is_smooth_but_not_etale():
    """The diagonal has free cokernel: smooth of relative dimension 1."""
    u = MonoidHom(IntegralMonoid.free(1), IntegralMonoid.free(2), ((1, 1),))
    assert log_smooth_chart_check(u, []).passed
    assert not is_log_etale(u, [])
    differentials = log_differentials_module(u, [])
    assert differentials.relative_dimension == 1
    assert differentials.torsion == ()
    assert len(differentials.basis_lifts) == 1


def test_log_differentials_of_failed_chart():
    """Differentials need the chart check to pass."""
    with pytest.raises(PreconditionError):
        log_differentials_module(_multiplication(6), [])


@pytest.mark.parametrize(
    "r,divisors,expected",
    [
        (1, [4], 3),
        (1, [6], 4),
        (2, [2, 2], 5),
        (2, [2, 3], 4),
    ],
)
def test_abhyankar_counts(r, divisors, expected):
    """One intermediate monoid per subgroup of ⊕Z/d_i."""
    assert len(abhyankar_classify(r, divisors)) == expected


def test_abhyankar_monoids_sit_between_bounds():
    """Every classified monoid contains Z≥0^r and is saturated."""
    for entry in abhyankar_classify(2, [2, 2]):
        assert predicates(entry.monoid).is_saturated
        assert all(x >= 0 for g in entry.generators for x in g)
        for v in [(2, 0), (0, 2)]:
            assert entry.embedding.preimage(v) in entry.monoid


@pytest.mark.parametrize("r,divisors", [(2, [2]), (1, [0])])
def test_abhyankar_rejects_bad_input(r, divisors):
    """Divisor count must match r and divisors must be positive."""
    with pytest.raises(InputError):
        abhyankar_classify(r, divisors)


def test_abhyankar_refuses_large_ranks():
    """Ranks beyond the classification limit raise a bound error."""
    with pytest.raises(BoundExceededError):
        abhyankar_classify(9, [2] * 9)
