"""
Tests for integral monoids: saturation, units, quotients, amalgamated sums and homomorphism properties.
"""

import pytest

from src.errors import InputError, PreconditionError
from src.lattice import FinAbGroup, GroupHom, IntMatrix
from src.monoids import (
    IntegralMonoid,
    MonoidHom,
    MonoidPresentation,
    amalgamated_quotient_comparison,
    amalgamated_sum,
    decompose,
    divide,
    enumerate_words,
    factor_through_localization,
    factor_through_saturation,
    group_completion,
    hom_properties,
    integralize,
    is_group,
    is_n_divisible,
    localize,
    markov_relations,
    predicates,
    quotient_by_submonoid,
    same_monoid,
    saturate,
    saturated_preimage,
    sharpen,
    split_sharp,
    split_units,
    submonoid_in,
    toric_embed,
    units,
    word_elements,
)

Z1 = FinAbGroup.free(1)
Z2 = FinAbGroup.free(2)


def _numerical(*gens):
    return IntegralMonoid(Z1, tuple((g,) for g in gens))


def _z_plus_n():
    """Z ⊕ Z≥0."""
    return IntegralMonoid(Z2, ((1, 0), (-1, 0), (0, 1)))


def test_saturation_of_numerical_monoid():
    """⟨2, 3⟩ saturates to Z≥0 and 1 is the missing element."""
    p = _numerical(2, 3)
    assert saturate(p).generators == ((1,),)
    assert (1,) not in p
    assert (5,) in p
    assert decompose(p, (5,)) == (1, 1)


def test_saturation_adds_torsion():
    """Torsion elements with a multiple in P join the saturation."""
    group = FinAbGroup(1, (2,))
    p = IntegralMonoid(group, ((1, 0), (1, 1)))
    assert (0, 1) not in p
    assert (0, 1) in saturate(p)
    assert not predicates(p).is_saturated


def test_predicates_of_numerical_monoid():
    """⟨2, 3⟩ is sharp but not saturated, hence not toric."""
    flags = predicates(_numerical(2, 3)).as_dict()
    assert flags == {"is_fine": True, "is_integral": True, "is_saturated": False, "is_sharp": True, "is_toric": False}


def test_free_monoid_is_toric():
    """Z≥0^2 is toric with trivial units."""
    p = IntegralMonoid.free(2)
    assert predicates(p).is_toric
    assert units(p).is_trivial


def test_units_and_sharpening():
    """Z ⊕ Z≥0 has unit group Z and sharpens to Z≥0."""
    p = _z_plus_n()
    unit_data = units(p)
    assert unit_data.group == Z1
    assert unit_data.contains((-3, 0))
    assert not unit_data.contains((0, 1))
    sharp, proj = sharpen(p)
    assert sharp.ambient == Z1
    assert len(sharp) == 1
    assert predicates(sharp).is_sharp
    assert proj.apply((5, 0)) == (0,)


def test_whole_group_is_group():
    """Whole groups, including finite ones, are groups; Z≥0 is not."""
    assert is_group(IntegralMonoid.whole_group(FinAbGroup(1, (2,))))
    assert is_group(IntegralMonoid.whole_group(FinAbGroup(0, (3,))))
    assert not is_group(IntegralMonoid.free(1))


def test_generators_must_generate_ambient():
    """⟨2⟩ does not generate Z."""
    with pytest.raises(InputError):
        _numerical(2)


def test_presentation_rejects_negative_exponents():
    """Relations are between nonnegative vectors."""
    with pytest.raises(InputError):
        MonoidPresentation(2, (((1, -1), (0, 0)),))


def test_group_completion_and_integralization():
    """⟨a, b | 2a = 2b⟩ has completion Z ⊕ Z/2."""
    pres = MonoidPresentation(2, (((2, 0), (0, 2)),))
    group, _ = group_completion(pres)
    assert group == FinAbGroup(1, (2,))
    assert integralize(pres).ambient == FinAbGroup(1, (2,))


def test_monoid_hom_rejects_image_outside_target():
    """-1 is not in Z≥0."""
    with pytest.raises(InputError):
        MonoidHom(IntegralMonoid.free(1), IntegralMonoid.free(1), ((-1,),))


def test_same_monoid_ignores_redundant_generators():
    """⟨1, 2⟩ and ⟨1⟩ are the same submonoid of Z."""
    assert same_monoid(_numerical(1, 2), IntegralMonoid.free(1))
    assert not same_monoid(_numerical(2, 3), IntegralMonoid.free(1))


def test_saturated_preimage_under_doubling():
    """The preimage of Z≥0 under [2] is Z≥0."""
    doubling = GroupHom(Z1, Z1, IntMatrix.from_rows([[2]]))
    assert saturated_preimage(doubling, IntegralMonoid.free(1)).generators == ((1,),)


def test_factor_through_saturation():
    """The inclusion ⟨2, 3⟩ ⊂ Z≥0 extends over the saturation."""
    h = MonoidHom(_numerical(2, 3), IntegralMonoid.free(1), ((2,), (3,)))
    extended = factor_through_saturation(h)
    assert extended.source.generators == ((1,),)
    assert extended.images == ((1,),)


def test_quotient_by_submonoid():
    """Z≥0^2 modulo its first factor identifies e1 with 0."""
    q = quotient_by_submonoid(IntegralMonoid.free(2), [(1, 0)])
    assert q.monoid.ambient == Z1
    assert q.are_congruent((1, 0), (0, 0))
    assert not q.are_congruent((0, 1), (0, 0))
    assert q.presentation.num_gens == 2


def test_quotient_needs_submonoid_elements():
    """Quotienting by a non-element is a precondition failure."""
    with pytest.raises(PreconditionError):
        quotient_by_submonoid(IntegralMonoid.free(2), [(-1, 0)])


def test_localization_inverts_subset():
    """Localizing Z≥0^2 at e1 makes -e1 an element."""
    loc = localize(IntegralMonoid.free(2), [(1, 0)])
    assert (-1, 0) in loc.monoid
    assert (0, -1) not in loc.monoid
    assert units(loc.monoid).group == Z1


def test_factor_through_localization():
    """Z≥0^2 -> Z, (a, b) -> a sends e1 to a unit and extends over the localization at e1."""
    loc = localize(IntegralMonoid.free(2), [(1, 0)])
    integers = IntegralMonoid(Z1, ((1,), (-1,)))
    h = MonoidHom(IntegralMonoid.free(2), integers, ((1,), (0,)))
    extended = factor_through_localization(loc, h)
    assert extended.source == loc.monoid
    assert extended.apply((-1, 0)) == (-1,)
    for g in IntegralMonoid.free(2).generators:
        assert extended.apply(loc.universal.apply(g)) == h.apply(g)


def test_factor_through_localization_needs_units():
    """The projection Z≥0^2 -> Z≥0 does not invert e1."""
    loc = localize(IntegralMonoid.free(2), [(1, 0)])
    h = MonoidHom(IntegralMonoid.free(2), IntegralMonoid.free(1), ((1,), (0,)))
    with pytest.raises(PreconditionError):
        factor_through_localization(loc, h)
    with pytest.raises(InputError):
        factor_through_localization(loc, MonoidHom.identity(IntegralMonoid.free(1)))


def test_amalgamated_sum_modes():
    """Z≥0 ⊕_{Z≥0} Z≥0 along [1] into the first factor and [2]."""
    u = MonoidHom(IntegralMonoid.free(1), IntegralMonoid.free(2), ((1, 0),))
    v = MonoidHom(IntegralMonoid.free(1), IntegralMonoid.free(1), ((2,),))
    plain = amalgamated_sum(u, v, mode="plain")
    assert plain.presentation.num_gens == 3
    assert len(plain.presentation.relations) == 1
    integral = amalgamated_sum(u, v)
    assert integral.monoid.ambient.free_rank == 2
    saturated = amalgamated_sum(u, v, mode="saturated")
    assert predicates(saturated.monoid).is_saturated


def _twisted_cubic():
    """⟨(1,0), (1,1), (1,2), (1,3)⟩ ⊂ Z^2."""
    return IntegralMonoid(Z2, ((1, 0), (1, 1), (1, 2), (1, 3)))


def _connected(relations, start, goal):
    """Whether goal is reachable from start by relation moves that keep the word short."""
    limit = max(sum(start), sum(goal)) + 1
    moves = [(lhs, rhs) for lhs, rhs in relations] + [(rhs, lhs) for lhs, rhs in relations]
    seen = {tuple(start)}
    frontier = [tuple(start)]
    while frontier:
        word = frontier.pop()
        for lhs, rhs in moves:
            if all(w >= a for w, a in zip(word, lhs, strict=True)):
                step = tuple(w - a + b for w, a, b in zip(word, lhs, rhs, strict=True))
                if sum(step) <= limit and step not in seen:
                    seen.add(step)
                    frontier.append(step)
    return tuple(goal) in seen


def test_markov_relations_of_twisted_cubic():
    """A rank-2 lattice basis misses x0·x3 = x1·x2; the complete set has three moves."""
    basis = [(1, -2, 1, 0), (0, 1, -2, 1)]
    assert not _connected([((1, 0, 1, 0), (0, 2, 0, 0)), ((0, 1, 0, 1), (0, 0, 2, 0))], (1, 0, 0, 1), (0, 1, 1, 0))
    relations = markov_relations(basis, 4)
    assert len(relations) == 3
    assert ((1, 0, 0, 1), (0, 1, 1, 0)) in relations
    assert _connected(relations, (1, 0, 0, 1), (0, 1, 1, 0))


def test_markov_relations_with_torsion_and_units():
    """2·x0 = 0 and x1 + x2 = 0 give x0^2 = 1 and x1·x2 = 1."""
    relations = markov_relations([(2, 0, 0), (0, 1, 1)], 3)
    assert sorted(relations) == [((0, 1, 1), (0, 0, 0)), ((2, 0, 0), (0, 0, 0))]
    assert markov_relations([], 3) == []


def test_plain_amalgamated_sum_is_complete():
    """Q1 ⊕_0 Q2 with Q1 the twisted cubic carries all of Q1's moves."""
    cubic = _twisted_cubic()
    u = MonoidHom(IntegralMonoid.trivial(), cubic, ())
    v = MonoidHom(IntegralMonoid.trivial(), IntegralMonoid.free(1), ())
    plain = amalgamated_sum(u, v, mode="plain")
    relations = plain.presentation.relations
    assert plain.presentation.num_gens == 5
    assert _connected(relations, (1, 0, 0, 1, 0), (0, 1, 1, 0, 0))
    assert _connected(relations, (2, 0, 0, 1, 1), (0, 3, 0, 0, 1))
    assert integralize(plain.presentation).ambient.free_rank == 3


def test_quotient_presentation_is_complete():
    """(twisted cubic) ⊕ Z≥0 modulo the Z≥0 factor keeps the move x0·x3 = x1·x2."""
    gens = ((0, 0, 1), (1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0))
    quotient = quotient_by_submonoid(IntegralMonoid(FinAbGroup.free(3), gens), [(0, 0, 1)])
    relations = quotient.presentation.relations
    assert ((1, 0, 0, 0, 0), (0, 0, 0, 0, 0)) in relations
    assert _connected(relations, (0, 1, 0, 0, 1), (0, 0, 1, 1, 0))
    assert _connected(relations, (1, 0, 0, 3, 0), (0, 0, 1, 1, 1))


def test_amalgamated_sum_rejects_unknown_mode():
    """Only the three documented modes are accepted."""
    u = MonoidHom.identity(IntegralMonoid.free(1))
    with pytest.raises(InputError):
        amalgamated_sum(u, u, mode="fancy")


def test_quotient_comparison_over_trivial_monoid():
    """Over the trivial monoid both quotients are Z≥0."""
    trivial = IntegralMonoid.trivial()
    u = MonoidHom(trivial, IntegralMonoid.free(1), ())
    v = MonoidHom(trivial, IntegralMonoid.free(1), ())
    comparison = amalgamated_quotient_comparison(u, v, word_length=4)
    assert comparison.is_isomorphism
    assert comparison.elements_checked == 5


def test_quotient_comparison_needs_a_group():
    """Without a group among P, Q1, Q2 the comparison is refused."""
    u = MonoidHom.identity(IntegralMonoid.free(1))
    with pytest.raises(PreconditionError):
        amalgamated_quotient_comparison(u, u)


def test_hom_properties_of_identity():
    """The identity has every property."""
    props = hom_properties(MonoidHom.identity(IntegralMonoid.free(2))).as_dict()
    assert all(props.values())


def test_hom_properties_of_doubling():
    """[2] on Z≥0 is injective and exact but neither surjective nor strict."""
    props = hom_properties(MonoidHom(IntegralMonoid.free(1), IntegralMonoid.free(1), ((2,),)))
    assert props.injective
    assert not props.surjective
    assert props.local
    assert props.sharp
    assert not props.strict
    assert props.exact is True


def test_sum_map_is_not_exact():
    """Z≥0^2 -> Z≥0, (a, b) -> a + b pulls Z≥0 back to a half-plane."""
    u = MonoidHom(IntegralMonoid.free(2), IntegralMonoid.free(1), ((1,), (1,)))
    props = hom_properties(u)
    assert not props.injective
    assert props.surjective
    assert props.exact is False


def test_map_into_group_is_not_local():
    """Z≥0 -> Z sends the generator to a unit that was not one."""
    u = MonoidHom(IntegralMonoid.free(1), IntegralMonoid.whole_group(Z1), ((1,),))
    props = hom_properties(u)
    assert not props.local
    assert not props.sharp


def test_split_units():
    """Z ⊕ Z≥0 splits as its sharp part plus Z."""
    p = _z_plus_n()
    splitting = split_units(p)
    assert splitting.unit_group == Z1
    assert splitting.sharp_part.rank == 1
    for g in p.generators:
        assert splitting.to_monoid.apply(splitting.from_monoid.apply(g)) == g


def test_split_units_needs_saturation():
    """⟨2, 3⟩ is not saturated."""
    with pytest.raises(PreconditionError):
        split_units(_numerical(2, 3))


def test_split_sharp_section():
    """Z ⊕ Z≥0 -> Z≥0 has a section."""
    p = _z_plus_n()
    u = MonoidHom.from_group_hom(p, IntegralMonoid.free(1), GroupHom(Z2, Z1, IntMatrix.from_rows([[0, 1]])))
    section = split_sharp(u)
    assert u.apply(section.apply((1,))) == (1,)


def test_split_sharp_needs_kernel_in_source():
    """The kernel of (a, b) -> a + b is not contained in Z≥0^2."""
    u = MonoidHom(IntegralMonoid.free(2), IntegralMonoid.free(1), ((1,), (1,)))
    with pytest.raises(PreconditionError) as excinfo:
        split_sharp(u)
    assert excinfo.value.witness is not None


def test_divide():
    """(1/3)Z≥0^2 includes Z≥0^2 by [3]."""
    divided = divide(IntegralMonoid.free(2), 3)
    assert divided.n == 3
    assert divided.inclusion.images == ((0, 3), (3, 0))


@pytest.mark.parametrize(
    "monoid,n",
    [
        (IntegralMonoid.free(1), 0),
        (IntegralMonoid(FinAbGroup(1, (2,)), ((1, 0), (0, 1))), 2),
    ],
)
def test_divide_preconditions(monoid, n):
    """Division needs n >= 1 and a torsion-free ambient."""
    with pytest.raises(PreconditionError):
        divide(monoid, n)


def test_n_divisibility():
    """Z/3 is 2-divisible; Z is not."""
    assert is_n_divisible(IntegralMonoid.whole_group(FinAbGroup(0, (3,))), 2)
    assert not is_n_divisible(IntegralMonoid.whole_group(Z1), 2)
    assert is_n_divisible(IntegralMonoid.free(1), 1)


def test_toric_embedding():
    """The saturation of cone((1,0),(1,2)) embeds into Z≥0^2."""
    p = saturate(IntegralMonoid(Z2, ((1, 0), (1, 1), (1, 2))))
    embedding = toric_embed(p)
    assert embedding.target == IntegralMonoid.free(2)
    assert embedding.group_hom.is_injective()


def test_toric_embedding_needs_toric_monoid():
    """Z ⊕ Z≥0 is not sharp."""
    with pytest.raises(PreconditionError):
        toric_embed(_z_plus_n())


def test_submonoid_in_group():
    """⟨2e1, 2e2⟩ gets its own rank-2 completion."""
    monoid, inclusion = submonoid_in(Z2, [(2, 0), (0, 2)])
    assert monoid.ambient == Z2
    assert inclusion.is_injective()
    assert not inclusion.is_surjective()


def test_word_enumeration():
    """Short words in Z≥0 and bounded combinations in Z≥0^2."""
    assert enumerate_words(IntegralMonoid.free(1), 3) == [(0,), (1,), (2,), (3,)]
    assert word_elements(IntegralMonoid.free(2), 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]
