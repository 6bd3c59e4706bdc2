"""
Finitely Generated Commutative Monoids
Group completion, integralization, saturation, units, quotients, localization,
amalgamated sums, homomorphism properties and splittings
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from sympy import Mul, Poly, Symbol, groebner, symbols

from .cones import (
    RationalCone,
    dot,
    dual_cone,
    hilbert_basis,
    interior_functional,
    lineality_space,
    nonnegative_combination,
    satisfies,
)
from .constants import DEFAULT_WORD_LENGTH, MEMBERSHIP_NODE_BUDGET
from .errors import BoundExceededError, InputError, PreconditionError, VerificationError
from .lattice import (
    FinAbGroup,
    GroupHom,
    IntMatrix,
    Vector,
    cokernel,
    induced_on_cokernel,
    kernel_lattice,
    rank,
    section_onto_free,
    subgroup_closure,
    subgroup_generated,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonoidPresentation:
    """Monoid on s generators modulo relations u = v (nonnegative integer vectors)."""

    num_gens: int
    relations: tuple[tuple[Vector, Vector], ...] = ()

    def __post_init__(self):
        rels = []
        for lhs, rhs in self.relations:
            lhs, rhs = tuple(int(x) for x in lhs), tuple(int(x) for x in rhs)
            if len(lhs) != self.num_gens or len(rhs) != self.num_gens:
                raise InputError(f"relation {lhs} = {rhs} does not have length {self.num_gens}")
            if any(x < 0 for x in lhs + rhs):
                raise InputError(f"relation {lhs} = {rhs} has negative exponents")
            rels.append((lhs, rhs))
        object.__setattr__(self, "relations", tuple(rels))

    def relation_hom(self) -> GroupHom:
        """Z^#relations -> Z^s, sending each relation to u - v."""
        cols = [tuple(a - b for a, b in zip(lhs, rhs, strict=True)) for lhs, rhs in self.relations]
        return GroupHom(
            FinAbGroup.free(len(cols)),
            FinAbGroup.free(self.num_gens),
            IntMatrix.from_columns(cols, self.num_gens),
        )


@dataclass(frozen=True)
class IntegralMonoid:
    """
    Submonoid of a FinAbGroup generated by finitely many elements that generate the group.

    The ambient group is the group completion. Generators are reduced, nonzero,
    duplicate-free and sorted; the empty list is the trivial monoid.
    """

    ambient: FinAbGroup
    generators: tuple[Vector, ...] = ()

    def __post_init__(self):
        zero = self.ambient.zero()
        gens = {self.ambient.reduce(g) for g in self.generators}
        gens.discard(zero)
        object.__setattr__(self, "generators", tuple(sorted(gens)))
        if not _generator_map(self.ambient, self.generators).is_surjective():
            raise InputError(f"generators {self.generators} do not generate {self.ambient}")

    @classmethod
    def free(cls, r: int) -> "IntegralMonoid":
        """Z≥0^r."""
        return cls(FinAbGroup.free(r), tuple(FinAbGroup.free(r).basis()))

    @classmethod
    def trivial(cls) -> "IntegralMonoid":
        return cls(FinAbGroup.trivial(), ())

    @classmethod
    def whole_group(cls, group: FinAbGroup) -> "IntegralMonoid":
        gens = list(group.basis())
        gens += [group.neg(e) for e in group.basis()[: group.free_rank]]
        return cls(group, tuple(gens))

    @property
    def rank(self) -> int:
        return self.ambient.free_rank

    def free_parts(self) -> list[Vector]:
        return [self.ambient.free_part(g) for g in self.generators]

    def cone(self) -> RationalCone:
        return RationalCone.from_generators(self.rank, self.free_parts())

    def __contains__(self, a: Sequence[int]) -> bool:
        return membership(self, a)

    def __len__(self) -> int:
        return len(self.generators)


def _generator_map(group: FinAbGroup, gens: Sequence[Vector]) -> GroupHom:
    """Z^s -> group sending e_i to the i-th generator."""
    free = FinAbGroup.free(len(gens))
    if not gens:
        return GroupHom.zero(free, group)
    return GroupHom.from_images(free, group, gens)


@dataclass(frozen=True)
class MonoidHom:
    """
    Homomorphism of integral monoids given by the images of the source generators.

    The induced map on group completions is computed at construction; construction
    fails if an image is not in the target or a relation among the source
    generators is not respected.
    """

    source: IntegralMonoid
    target: IntegralMonoid
    images: tuple[Vector, ...]
    group_hom: GroupHom = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.images) != len(self.source.generators):
            raise InputError(
                f"need {len(self.source.generators)} generator images, got {len(self.images)}"
            )
        images = tuple(self.target.ambient.reduce(x) for x in self.images)
        object.__setattr__(self, "images", images)

        oracle = MembershipOracle(self.target.ambient, self.target.generators)
        for g, x in zip(self.source.generators, images, strict=True):
            if not oracle.contains(x):
                raise InputError(f"image {x} of generator {g} is not in the target monoid")

        gen_map = _generator_map(self.source.ambient, self.source.generators)
        word_map = _generator_map(self.target.ambient, images)
        for k in kernel_lattice(gen_map).columns():
            if any(word_map.apply(k)):
                raise InputError(f"generator relation {k} is not respected")

        basis_images = []
        for e in self.source.ambient.basis():
            z = gen_map.preimage(e)
            basis_images.append(word_map.apply(z))
        hom = GroupHom.from_images(self.source.ambient, self.target.ambient, basis_images)
        object.__setattr__(self, "group_hom", hom)

    @classmethod
    def from_group_hom(cls, source: IntegralMonoid, target: IntegralMonoid, f: GroupHom) -> "MonoidHom":
        return cls(source, target, tuple(f.apply(g) for g in source.generators))

    @classmethod
    def identity(cls, monoid: IntegralMonoid) -> "MonoidHom":
        return cls(monoid, monoid, monoid.generators)

    def apply(self, a: Sequence[int]) -> Vector:
        return self.group_hom.apply(a)

    def compose(self, inner: "MonoidHom") -> "MonoidHom":
        """self ∘ inner."""
        return MonoidHom(inner.source, self.target, tuple(self.apply(x) for x in inner.images))


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


class MembershipOracle:
    """
    Decides membership in the submonoid generated by a list of group elements.

    Sharp inputs are searched along a strictly positive grading with cone pruning;
    otherwise the unit generators are split off first and the remainder is solved
    in the unit group. Memo tables live on the instance, so create one per call.
    """

    def __init__(self, ambient: FinAbGroup, generators: Sequence[Vector], node_budget: int = MEMBERSHIP_NODE_BUDGET):
        self.ambient = ambient
        self.generators = [ambient.reduce(g) for g in generators]
        self.node_budget = node_budget
        r = ambient.free_rank

        cone = RationalCone.from_generators(r, [g[:r] for g in self.generators])
        self.normals = dual_cone(cone).rays
        self.unit_index = [
            i for i, g in enumerate(self.generators) if satisfies(self.normals, [-x for x in g[:r]])
        ]
        self.rest_index = [i for i in range(len(self.generators)) if i not in self.unit_index]

        if self.unit_index:
            units = [self.generators[i] for i in self.unit_index]
            self.unit_map = _generator_map(ambient, units)
            self.quotient, self.quotient_proj = cokernel(self.unit_map)
            rest = [self.quotient_proj.apply(self.generators[i]) for i in self.rest_index]
            self._sharp = _SharpSearch(self.quotient, rest, node_budget)
            self._unit_relation = _positive_relation(ambient, units)
        else:
            self._sharp = _SharpSearch(ambient, self.generators, node_budget)

    def decompose(self, a: Sequence[int]) -> tuple[int, ...] | None:
        """Nonnegative coefficients c with Σ c_i g_i = a, or None."""
        a = self.ambient.reduce(a)
        if not satisfies(self.normals, a[: self.ambient.free_rank]):
            return None
        if not self.unit_index:
            return self._sharp.search(a)

        rest_coeffs = self._sharp.search(self.quotient_proj.apply(a))
        if rest_coeffs is None:
            return None
        remainder = a
        for i, c in zip(self.rest_index, rest_coeffs, strict=True):
            remainder = self.ambient.sub(remainder, self.ambient.scale(c, self.generators[i]))
        z = self.unit_map.preimage(remainder)
        if z is None:
            raise VerificationError(f"unit part {remainder} is not in the unit group")
        shift = max([0] + [-(zj // wj) for zj, wj in zip(z, self._unit_relation, strict=True)])
        unit_coeffs = [zj + shift * wj for zj, wj in zip(z, self._unit_relation, strict=True)]

        coeffs = [0] * len(self.generators)
        for i, c in zip(self.rest_index, rest_coeffs, strict=True):
            coeffs[i] = c
        for i, c in zip(self.unit_index, unit_coeffs, strict=True):
            coeffs[i] = c
        return tuple(coeffs)

    def contains(self, a: Sequence[int]) -> bool:
        return self.decompose(a) is not None


def _positive_relation(ambient: FinAbGroup, units: Sequence[Vector]) -> list[int]:
    """Coefficients w_i >= 1 with Σ w_i u_i = 0 for generators of a group-like monoid."""
    r = ambient.free_rank
    free = [u[:r] for u in units]
    w = [0] * len(units)
    for j, f in enumerate(free):
        if not any(f):
            w[j] += 1
            continue
        found = nonnegative_combination(free, [-x for x in f])
        if found is None:
            raise VerificationError(f"unit generator {units[j]} has no inverse in the cone")
        scale, coeffs = found
        w[j] += scale
        w = [a + b for a, b in zip(w, coeffs, strict=True)]
    total = ambient.zero()
    for c, u in zip(w, units, strict=True):
        total = ambient.add(total, ambient.scale(c, u))
    order = ambient.element_order(total)
    if order is None:
        raise VerificationError("positive unit relation has a nonzero free part")
    return [order * x for x in w]


class _SharpSearch:
    """Depth-first search along a positive grading for sharp generator lists."""

    def __init__(self, ambient: FinAbGroup, generators: Sequence[Vector], node_budget: int):
        self.ambient = ambient
        self.generators = list(generators)
        self.node_budget = node_budget
        r = ambient.free_rank
        frees = [g[:r] for g in self.generators]
        self.grading = interior_functional(RationalCone.from_generators(r, frees))
        self.degrees = [dot(self.grading, f) for f in frees]
        if any(d <= 0 for d in self.degrees):
            raise VerificationError("sharp search needs a strictly positive grading")
        self.suffix_normals = [
            dual_cone(RationalCone.from_generators(r, frees[i:])).rays for i in range(len(frees) + 1)
        ]

    def search(self, a: Vector) -> tuple[int, ...] | None:
        r = self.ambient.free_rank
        n = len(self.generators)
        failed: set[tuple[int, Vector]] = set()
        visited = 0

        def walk(i: int, rem: Vector) -> tuple[int, ...] | None:
            nonlocal visited
            if (i, rem) in failed or not satisfies(self.suffix_normals[i], rem[:r]):
                return None
            visited += 1
            if visited > self.node_budget:
                raise BoundExceededError("membership search budget exhausted", bound=self.node_budget)
            if i == n:
                return () if not any(rem) else None
            g, dg = self.generators[i], self.degrees[i]
            k, cur = 0, rem
            while dot(self.grading, cur[:r]) >= 0:
                sub = walk(i + 1, cur)
                if sub is not None:
                    return (k,) + sub
                k += 1
                cur = self.ambient.sub(cur, g)
                if dg * k > dot(self.grading, rem[:r]):
                    break
            failed.add((i, rem))
            return None

        return walk(0, self.ambient.reduce(a))


def decompose(monoid: IntegralMonoid, a: Sequence[int]) -> tuple[int, ...] | None:
    """Witness for a ∈ P: nonnegative coefficients on P's generators, or None."""
    return MembershipOracle(monoid.ambient, monoid.generators).decompose(a)


def membership(monoid: IntegralMonoid, a: Sequence[int]) -> bool:
    """Exact decision of a ∈ P for an ambient element a."""
    return decompose(monoid, a) is not None


def same_monoid(p: IntegralMonoid, q: IntegralMonoid) -> bool:
    """Equal ambient groups and mutual membership of generators."""
    if p.ambient != q.ambient:
        return False
    in_p = MembershipOracle(p.ambient, p.generators)
    in_q = MembershipOracle(q.ambient, q.generators)
    return all(in_p.contains(g) for g in q.generators) and all(in_q.contains(g) for g in p.generators)


def markov_relations(lattice_columns: Sequence[Sequence[int]], num_gens: int) -> list[tuple[Vector, Vector]]:
    """
    Complete set of relations u = v for the congruence a ~ b iff a - b ∈ L.

    A lattice basis of L does not generate the congruence in general (the
    twisted cubic needs three moves for a rank-2 lattice). The binomial ideal
    of the basis is saturated by x_1⋯x_s through an extra variable t with
    1 - t·x_1⋯x_s; the t-free part of a lex Gröbner basis is the lattice ideal,
    whose binomials are the relations.

    Args:
        lattice_columns: Basis of L ⊂ Z^num_gens
        num_gens: Number of generators s

    Returns:
        list: (lhs, rhs) pairs, leading monomial first

    Raises:
        VerificationError: If the basis contains something other than pure binomials
    """
    columns = [tuple(int(x) for x in k) for k in lattice_columns]
    if not columns or num_gens == 0:
        return []
    xs = symbols(f"x0:{num_gens}")
    t = Symbol("t")

    def monomial(exponents: Sequence[int]):
        return Mul(*(x**e for x, e in zip(xs, exponents, strict=True) if e))

    binomials = [
        monomial([max(x, 0) for x in k]) - monomial([max(-x, 0) for x in k]) for k in columns
    ]
    binomials.append(1 - t * Mul(*xs))
    basis = groebner(binomials, t, *xs, order="lex")

    relations = []
    for g in basis.exprs:
        if g.has(t):
            continue
        terms = Poly(g, *xs).terms()
        if len(terms) != 2 or sorted(c for _, c in terms) != [-1, 1]:
            raise VerificationError(f"lattice ideal element {g} is not a pure binomial")
        (lead, _), (trail, _) = terms
        relations.append((tuple(int(e) for e in lead), tuple(int(e) for e in trail)))
    logger.debug(f"lattice of rank {len(columns)} in Z^{num_gens}: {len(relations)} relations")
    return relations


# ---------------------------------------------------------------------------
# Completion, integralization, saturation
# ---------------------------------------------------------------------------


def group_completion(presentation: MonoidPresentation) -> tuple[FinAbGroup, GroupHom]:
    """
    Group completion of a presented monoid.

    Returns:
        tuple: (P^gp, map Z^s -> P^gp whose columns are the generator images)
    """
    return cokernel(presentation.relation_hom())


def integralize(presentation: MonoidPresentation) -> IntegralMonoid:
    """P^Int: image of the generators in P^gp (zero and repeated images dropped)."""
    group, proj = group_completion(presentation)
    return IntegralMonoid(group, tuple(proj.images()))


def monoid_from_cone(ambient: FinAbGroup, cone: RationalCone) -> IntegralMonoid:
    """
    All elements of the ambient group whose free part lies in the cone.

    The cone must be full-dimensional in the free part; torsion is included whole.
    """
    r = ambient.free_rank
    lineality = lineality_space(cone)
    if lineality:
        free_r = FinAbGroup.free(r)
        quotient, proj = cokernel(_generator_map(free_r, list(lineality)))
        projected = RationalCone.from_generators(quotient.free_rank, [proj.apply(ray) for ray in cone.rays])
        free_gens = [proj.preimage(h) for h in hilbert_basis(projected)]
        free_gens += list(lineality) + [tuple(-x for x in v) for v in lineality]
    else:
        free_gens = hilbert_basis(cone)
    k = len(ambient.torsion)
    gens = [tuple(f) + (0,) * k for f in free_gens]
    gens += [e for e in ambient.basis()[r:]]
    return IntegralMonoid(ambient, tuple(gens))


def saturate(monoid: IntegralMonoid) -> IntegralMonoid:
    """
    Saturation P^Sat = {a ∈ P^gp : na ∈ P for some n >= 1}.

    An element has a multiple in P exactly when its free part lies in cone(P):
    a rational combination of generators clears to an integral one, and the
    torsion left over dies after multiplying by its order.
    """
    result = monoid_from_cone(monoid.ambient, monoid.cone())
    logger.debug(f"saturation: {len(monoid)} -> {len(result)} generators")
    return result


def saturated_preimage(f: GroupHom, target: IntegralMonoid) -> IntegralMonoid:
    """
    {a ∈ source(f) : f(a) ∈ target} for a saturated target.

    The free part of f(a) only depends on the free part of a, so the preimage is
    cut out by the target's dual inequalities pulled back along the free block of f.
    """
    if f.target != target.ambient:
        raise InputError("target monoid must live in the codomain of f")
    rs, rt = f.source.free_rank, f.target.free_rank
    normals = dual_cone(target.cone()).rays
    pulled = [tuple(sum(n[i] * f.matrix[i, j] for i in range(rt)) for j in range(rs)) for n in normals]
    cone = dual_cone(RationalCone.from_generators(rs, pulled))
    return monoid_from_cone(f.source, cone)


def factor_through_saturation(h: MonoidHom) -> MonoidHom:
    """Extend h: P -> Q (Q saturated) to P^Sat -> Q; unique since both share P^gp."""
    return MonoidHom.from_group_hom(saturate(h.source), h.target, h.group_hom)


# ---------------------------------------------------------------------------
# Units, sharpening, quotients, localization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Units:
    """The unit group P* of an integral monoid, as a subgroup of P^gp."""

    monoid: IntegralMonoid
    generators: tuple[Vector, ...]
    group: FinAbGroup
    inclusion: GroupHom

    def contains(self, a: Sequence[int]) -> bool:
        return self.inclusion.preimage(a) is not None

    @property
    def is_trivial(self) -> bool:
        return self.group.is_trivial


def units(monoid: IntegralMonoid) -> Units:
    """
    P* = P ∩ (−P).

    A generator is a unit exactly when its free part lies in the lineality space of
    cone(P); units form the group generated by those generators.
    """
    oracle = MembershipOracle(monoid.ambient, monoid.generators)
    gens = tuple(oracle.generators[i] for i in oracle.unit_index)
    group, inclusion, _ = subgroup_generated(monoid.ambient, gens)
    return Units(monoid, gens, group, inclusion)


def sharpen(monoid: IntegralMonoid) -> tuple[IntegralMonoid, MonoidHom]:
    """
    P̄ = P/P*.

    Returns:
        tuple: (P̄, surjective projection P -> P̄)
    """
    unit_data = units(monoid)
    quotient, proj = cokernel(_generator_map(monoid.ambient, unit_data.generators))
    sharp = IntegralMonoid(quotient, tuple(proj.apply(g) for g in monoid.generators))
    return sharp, MonoidHom.from_group_hom(monoid, sharp, proj)


@dataclass(frozen=True)
class QuotientMonoid:
    """P/Q for integral P: presentation, image monoid and projection."""

    presentation: MonoidPresentation
    monoid: IntegralMonoid
    projection: MonoidHom

    def are_congruent(self, a: Sequence[int], b: Sequence[int]) -> bool:
        """a ~ b iff a + q1 = b + q2 for some q1, q2 in Q."""
        return self.projection.apply(a) == self.projection.apply(b)


def quotient_by_submonoid(monoid: IntegralMonoid, sub_generators: Sequence[Sequence[int]]) -> QuotientMonoid:
    """
    Quotient of an integral monoid by the submonoid generated by sub_generators.

    For integral P two elements are congruent iff their difference lies in Q^gp,
    so P/Q is the image of P in P^gp/Q^gp. The presentation lists P's generators
    with a complete set of relations (see `markov_relations`).

    Raises:
        PreconditionError: If a submonoid generator is not in P
    """
    oracle = MembershipOracle(monoid.ambient, monoid.generators)
    sub = [monoid.ambient.reduce(q) for q in sub_generators]
    for q in sub:
        if not oracle.contains(q):
            raise PreconditionError("submonoid generator is not in the monoid", witness=q)

    quotient, proj = cokernel(_generator_map(monoid.ambient, sub))
    image = IntegralMonoid(quotient, tuple(proj.apply(g) for g in monoid.generators))
    projection = MonoidHom.from_group_hom(monoid, image, proj)

    word_map = _generator_map(quotient, [proj.apply(g) for g in monoid.generators])
    relations = markov_relations(kernel_lattice(word_map).columns(), len(monoid.generators))
    presentation = MonoidPresentation(len(monoid.generators), tuple(relations))
    return QuotientMonoid(presentation, image, projection)


@dataclass(frozen=True)
class Localization:
    """S^{-1}P with its universal map λ: P -> S^{-1}P."""

    monoid: IntegralMonoid
    universal: MonoidHom
    inverted: tuple[Vector, ...]


def localize(monoid: IntegralMonoid, subset: Sequence[Sequence[int]]) -> Localization:
    """
    Localization of an integral monoid at a subset S ⊂ P.

    Raises:
        PreconditionError: If an element of S is not in P
    """
    oracle = MembershipOracle(monoid.ambient, monoid.generators)
    inverted = tuple(monoid.ambient.reduce(s) for s in subset)
    for s in inverted:
        if not oracle.contains(s):
            raise PreconditionError("localizing element is not in the monoid", witness=s)
    gens = monoid.generators + tuple(monoid.ambient.neg(s) for s in inverted)
    local = IntegralMonoid(monoid.ambient, gens)
    return Localization(local, MonoidHom.from_group_hom(monoid, local, GroupHom.identity(monoid.ambient)), inverted)


def factor_through_localization(loc: Localization, h: MonoidHom) -> MonoidHom:
    """
    The unique h̄: S^{-1}P -> Q with h̄ ∘ λ = h.

    Raises:
        PreconditionError: If some h(s) is not a unit of Q
    """
    if h.source != loc.universal.source:
        raise InputError("h must start at the localized monoid")
    target_units = units(h.target)
    for s in loc.inverted:
        if not target_units.contains(h.apply(s)):
            raise PreconditionError("h does not send the localizing set to units", witness=s)
    return MonoidHom.from_group_hom(loc.monoid, h.target, h.group_hom)


# ---------------------------------------------------------------------------
# Amalgamated sums
# ---------------------------------------------------------------------------

AMALGAMATION_MODES = ("plain", "integral", "saturated")


@dataclass(frozen=True)
class AmalgamatedSum:
    """
    Q1 ⊕_P Q2 in one of three modes.

    Plain mode fills `presentation` (generators of Q1 then Q2) and `words`
    (each Q_i generator as a word); the other modes fill `monoid` and
    `coprojections`, with the pushout group and its two maps in `group_maps`.
    """

    mode: str
    presentation: MonoidPresentation | None = None
    words: tuple[tuple[Vector, ...], ...] = ()
    monoid: IntegralMonoid | None = None
    coprojections: tuple[MonoidHom, ...] = ()
    group_maps: tuple[GroupHom, ...] = ()


def _relation_pairs(monoid: IntegralMonoid, offset: int, total: int) -> list[tuple[Vector, Vector]]:
    s = len(monoid.generators)
    kernel = kernel_lattice(_generator_map(monoid.ambient, monoid.generators)).columns()
    before, after = (0,) * offset, (0,) * (total - offset - s)
    return [(before + lhs + after, before + rhs + after) for lhs, rhs in markov_relations(kernel, s)]


def pushout_group(u: GroupHom, v: GroupHom) -> tuple[FinAbGroup, GroupHom, GroupHom]:
    """
    Q1^gp ⊕_{P^gp} Q2^gp.

    Returns:
        tuple: (H, ι1, ι2)
    """
    a1, a2 = u.target, v.target
    n1, n = a1.length, a1.length + a2.length
    cols = []
    for rel in a1.relation_columns():
        cols.append(tuple(rel) + (0,) * a2.length)
    for rel in a2.relation_columns():
        cols.append((0,) * n1 + tuple(rel))
    for e in u.source.basis():
        cols.append(u.apply(e) + tuple(-x for x in v.apply(e)))
    big = FinAbGroup.free(n)
    group, proj = cokernel(GroupHom(FinAbGroup.free(len(cols)), big, IntMatrix.from_columns(cols, n)))
    iota1 = GroupHom.from_images(a1, group, [proj.apply(tuple(e) + (0,) * a2.length) for e in a1.basis()])
    iota2 = GroupHom.from_images(a2, group, [proj.apply((0,) * n1 + tuple(e)) for e in a2.basis()])
    return group, iota1, iota2


def induced_from_pushout(iota1: GroupHom, iota2: GroupHom, f1: GroupHom, f2: GroupHom) -> GroupHom:
    """
    The map out of a pushout group restricting to f1 along ι1 and f2 along ι2.

    Raises:
        VerificationError: If f1 and f2 do not agree on the amalgamated group
    """
    h = iota1.target
    raw = FinAbGroup.free(iota1.source.length + iota2.source.length)
    spread = GroupHom.from_images(raw, h, iota1.images() + iota2.images())
    combined = GroupHom.from_images(raw, f1.target, f1.images() + f2.images())
    try:
        return induced_on_cokernel(spread, combined)
    except InputError as exc:
        raise VerificationError(f"maps do not descend to the pushout: {exc}") from exc


def amalgamated_sum(u: MonoidHom, v: MonoidHom, mode: str = "integral") -> AmalgamatedSum:
    """
    Amalgamated sum of u: P -> Q1 and v: P -> Q2.

    Args:
        u: First homomorphism
        v: Second homomorphism with the same source
        mode: "plain" (presentation), "integral" (image in the pushout group) or
            "saturated" (saturation of the integral one)

    Returns:
        AmalgamatedSum
    """
    if mode not in AMALGAMATION_MODES:
        raise InputError(f"unknown amalgamation mode {mode!r}; expected one of {AMALGAMATION_MODES}")
    if u.source != v.source:
        raise InputError("amalgamated sum needs a common source")
    q1, q2 = u.target, v.target

    if mode == "plain":
        s1, s2 = len(q1.generators), len(q2.generators)
        total = s1 + s2
        relations = _relation_pairs(q1, 0, total) + _relation_pairs(q2, s1, total)
        in_q1 = MembershipOracle(q1.ambient, q1.generators)
        in_q2 = MembershipOracle(q2.ambient, q2.generators)
        for x1, x2 in zip(u.images, v.images, strict=True):
            w1, w2 = in_q1.decompose(x1), in_q2.decompose(x2)
            relations.append((tuple(w1) + (0,) * s2, (0,) * s1 + tuple(w2)))
        words = (
            tuple(tuple(1 if j == i else 0 for j in range(total)) for i in range(s1)),
            tuple(tuple(1 if j == s1 + i else 0 for j in range(total)) for i in range(s2)),
        )
        return AmalgamatedSum("plain", presentation=MonoidPresentation(total, tuple(relations)), words=words)

    group, iota1, iota2 = pushout_group(u.group_hom, v.group_hom)
    gens = tuple(iota1.apply(g) for g in q1.generators) + tuple(iota2.apply(g) for g in q2.generators)
    result = IntegralMonoid(group, gens)
    if mode == "saturated":
        result = saturate(result)
    coprojections = (
        MonoidHom.from_group_hom(q1, result, iota1),
        MonoidHom.from_group_hom(q2, result, iota2),
    )
    logger.debug(f"{mode} amalgamated sum: ambient {group}, {len(result)} generators")
    return AmalgamatedSum(mode, monoid=result, coprojections=coprojections, group_maps=(iota1, iota2))


def is_group(monoid: IntegralMonoid) -> bool:
    """True when every element is invertible."""
    oracle = MembershipOracle(monoid.ambient, monoid.generators)
    return len(oracle.unit_index) == len(oracle.generators)


def enumerate_words(monoid: IntegralMonoid, max_length: int) -> list[Vector]:
    """Distinct elements that are sums of at most max_length generators."""
    seen = {monoid.ambient.zero()}
    frontier = {monoid.ambient.zero()}
    for _ in range(max_length):
        frontier = {monoid.ambient.add(x, g) for x in frontier for g in monoid.generators} - seen
        seen |= frontier
    return sorted(seen)


@dataclass(frozen=True)
class QuotientComparison:
    """Behaviour of Q1/P -> (Q1 ⊕_P Q2)/Q2 on the enumerated elements of Q1."""

    elements_checked: int
    source_classes: int
    target_classes: int
    well_defined: bool
    injective: bool
    surjective: bool

    @property
    def is_isomorphism(self) -> bool:
        return self.well_defined and self.injective and self.surjective


def amalgamated_quotient_comparison(
    u: MonoidHom, v: MonoidHom, word_length: int = DEFAULT_WORD_LENGTH
) -> QuotientComparison:
    """
    Compare Q1/P with (Q1 ⊕_P Q2)/Q2 on words of bounded length.

    Requires one of P, Q1, Q2 to be a group, so the plain amalgamated sum is
    integral and both congruences are decided in group completions.
    """
    if not any(is_group(m) for m in (u.source, u.target, v.target)):
        raise PreconditionError("one of P, Q1, Q2 must be a group")
    _, lhs_proj = cokernel(u.group_hom)
    group, iota1, iota2 = pushout_group(u.group_hom, v.group_hom)
    _, rhs_proj = cokernel(iota2)

    q1_words = enumerate_words(u.target, word_length)
    q2_words = enumerate_words(v.target, word_length)
    lhs = {x: lhs_proj.apply(x) for x in q1_words}
    rhs = {x: rhs_proj.apply(iota1.apply(x)) for x in q1_words}

    forward: dict[Vector, Vector] = {}
    backward: dict[Vector, Vector] = {}
    well_defined = injective = True
    for x in q1_words:
        if forward.setdefault(lhs[x], rhs[x]) != rhs[x]:
            well_defined = False
        if backward.setdefault(rhs[x], lhs[x]) != lhs[x]:
            injective = False

    reached = set(rhs.values())
    surjective = all(
        rhs_proj.apply(group.add(iota1.apply(x), iota2.apply(y))) in reached
        for x in q1_words
        for y in q2_words
    )
    return QuotientComparison(
        elements_checked=len(q1_words),
        source_classes=len(forward),
        target_classes=len(backward),
        well_defined=well_defined,
        injective=injective,
        surjective=surjective,
    )


# ---------------------------------------------------------------------------
# Homomorphism properties, splittings, division
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonoidPredicates:
    is_fine: bool
    is_integral: bool
    is_saturated: bool
    is_sharp: bool
    is_toric: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "is_fine": self.is_fine,
            "is_integral": self.is_integral,
            "is_saturated": self.is_saturated,
            "is_sharp": self.is_sharp,
            "is_toric": self.is_toric,
        }


def is_saturated(monoid: IntegralMonoid) -> bool:
    oracle = MembershipOracle(monoid.ambient, monoid.generators)
    return all(oracle.contains(g) for g in saturate(monoid).generators)


def is_sharp(monoid: IntegralMonoid) -> bool:
    return not MembershipOracle(monoid.ambient, monoid.generators).unit_index


def predicates(monoid: IntegralMonoid) -> MonoidPredicates:
    """Fine and integral hold by construction for IntegralMonoid values."""
    saturated = is_saturated(monoid)
    sharp = is_sharp(monoid)
    return MonoidPredicates(True, True, saturated, sharp, saturated and sharp)


@dataclass(frozen=True)
class HomProperties:
    injective: bool
    surjective: bool
    local: bool
    sharp: bool
    strict: bool
    exact: bool | None

    def as_dict(self) -> dict[str, bool | None]:
        return {
            "injective": self.injective,
            "surjective": self.surjective,
            "local": self.local,
            "sharp": self.sharp,
            "strict": self.strict,
            "exact": self.exact,
        }


def is_surjective(u: MonoidHom) -> tuple[bool, Vector | None]:
    """Surjectivity on monoids, with the first target generator outside the image."""
    image = MembershipOracle(u.target.ambient, u.images)
    for q in u.target.generators:
        if not image.contains(q):
            return False, q
    return True, None


def hom_properties(u: MonoidHom) -> HomProperties:
    """
    Decide injective, surjective, local, sharp, strict and exact.

    `exact` compares P with the preimage of Q in P^gp; it is decided for saturated
    targets and left as None otherwise.
    """
    source_units, target_units = units(u.source), units(u.target)

    injective = u.group_hom.is_injective()
    surjective, _ = is_surjective(u)

    local = all(
        source_units.contains(g)
        for g, x in zip(u.source.generators, u.images, strict=True)
        if target_units.contains(x)
    )

    on_units = u.group_hom.compose(source_units.inclusion)
    sharp = on_units.is_injective() and all(on_units.preimage(q) is not None for q in target_units.generators)

    p_bar, p_proj = sharpen(u.source)
    q_bar, q_proj = sharpen(u.target)
    bar_map = induced_on_cokernel(p_proj.group_hom, q_proj.group_hom.compose(u.group_hom))
    strict = False
    if bar_map.is_isomorphism():
        image = MembershipOracle(q_bar.ambient, [bar_map.apply(g) for g in p_bar.generators])
        strict = all(image.contains(q) for q in q_bar.generators)

    exact = None
    if is_saturated(u.target):
        preimage = saturated_preimage(u.group_hom, u.target)
        in_source = MembershipOracle(u.source.ambient, u.source.generators)
        exact = all(in_source.contains(g) for g in preimage.generators)
    else:
        logger.warning("exactness is only decided for saturated targets")

    return HomProperties(injective, surjective, local, sharp, strict, exact)


def split_sharp(u: MonoidHom) -> MonoidHom:
    """
    Section s: Q -> P of a surjection onto a toric monoid whose group kernel lies in P.

    Raises:
        PreconditionError: With a witness when u is not surjective, Q is not toric,
            or ker(u^gp) is not contained in P
    """
    if not predicates(u.target).is_toric:
        raise PreconditionError("target of split_sharp must be toric")
    surjective, witness = is_surjective(u)
    if not surjective:
        raise PreconditionError("split_sharp needs a surjective homomorphism", witness=witness)
    in_source = MembershipOracle(u.source.ambient, u.source.generators)
    for k in kernel_lattice(u.group_hom).columns():
        for x in (k, u.source.ambient.neg(k)):
            if not in_source.contains(x):
                raise PreconditionError("group kernel is not contained in the source", witness=x)

    s_gp = section_onto_free(u.group_hom)
    images = tuple(s_gp.apply(q) for q in u.target.generators)
    for q, x in zip(u.target.generators, images, strict=True):
        if not in_source.contains(x):
            raise VerificationError(f"section sends {q} outside the source monoid")
    section = MonoidHom(u.target, u.source, images)
    for q in u.target.generators:
        if u.apply(section.apply(q)) != q:
            raise VerificationError(f"u(s({q})) != {q}")
    return section


def direct_sum_group(a: FinAbGroup, b: FinAbGroup) -> tuple[FinAbGroup, GroupHom, GroupHom, GroupHom]:
    """
    A ⊕ B in normal form.

    Returns:
        tuple: (group, projection from the concatenated coordinates, inclusion of A, inclusion of B)
    """
    raw = FinAbGroup.free(a.length + b.length)
    cols = [tuple(r) + (0,) * b.length for r in a.relation_columns()]
    cols += [(0,) * a.length + tuple(r) for r in b.relation_columns()]
    group, proj = cokernel(GroupHom(FinAbGroup.free(len(cols)), raw, IntMatrix.from_columns(cols, raw.length)))
    inc_a = GroupHom.from_images(a, group, [proj.apply(tuple(e) + (0,) * b.length) for e in a.basis()])
    inc_b = GroupHom.from_images(b, group, [proj.apply((0,) * a.length + tuple(e)) for e in b.basis()])
    return group, proj, inc_a, inc_b


@dataclass(frozen=True)
class UnitSplitting:
    """P ≅ P̄ ⊕ P* for an fs monoid, with both directions as monoid maps."""

    sharp_part: IntegralMonoid
    unit_group: FinAbGroup
    direct_sum: IntegralMonoid
    to_monoid: MonoidHom
    from_monoid: MonoidHom


def split_units(monoid: IntegralMonoid) -> UnitSplitting:
    """Noncanonical decomposition of an fs monoid into its sharp part and units."""
    if not is_saturated(monoid):
        raise PreconditionError("split_units needs a saturated monoid")
    p_bar, proj = sharpen(monoid)
    section = split_sharp(proj)
    unit_data = units(monoid)

    group, raw_proj, inc_bar, inc_units = direct_sum_group(p_bar.ambient, unit_data.group)
    gens = [inc_bar.apply(g) for g in p_bar.generators]
    gens += [inc_units.apply(g) for g in IntegralMonoid.whole_group(unit_data.group).generators]
    total = IntegralMonoid(group, tuple(gens))

    raw_images = [section.apply(e) for e in p_bar.ambient.basis()]
    raw_images += [unit_data.inclusion.apply(e) for e in unit_data.group.basis()]
    raw_map = GroupHom.from_images(raw_proj.source, monoid.ambient, raw_images)
    forward = MonoidHom.from_group_hom(total, monoid, induced_on_cokernel(raw_proj, raw_map))

    back_images = []
    for e in monoid.ambient.basis():
        bar_coord = proj.apply(e)
        unit_coord = unit_data.inclusion.preimage(monoid.ambient.sub(e, section.apply(bar_coord)))
        if unit_coord is None:
            raise VerificationError(f"{e} minus its sharp part is not a unit")
        back_images.append(group.add(inc_bar.apply(bar_coord), inc_units.apply(unit_coord)))
    backward = MonoidHom.from_group_hom(monoid, total, GroupHom.from_images(monoid.ambient, group, back_images))

    for g in monoid.generators:
        if forward.apply(backward.apply(g)) != g:
            raise VerificationError(f"unit splitting does not restore {g}")
    for g in total.generators:
        if backward.apply(forward.apply(g)) != g:
            raise VerificationError(f"unit splitting does not restore {g}")
    return UnitSplitting(p_bar, unit_data.group, total, forward, backward)


@dataclass(frozen=True)
class DividedMonoid:
    """(1/n)P with the inclusion P -> (1/n)P, modelled on P itself with the map [n]."""

    monoid: IntegralMonoid
    inclusion: MonoidHom
    n: int


def divide(monoid: IntegralMonoid, n: int) -> DividedMonoid:
    """
    (1/n)P for a sharp fs torsion-free monoid.

    Raises:
        PreconditionError: On torsion ambients, non-toric input or n < 1
    """
    if n < 1:
        raise PreconditionError(f"division needs n >= 1, got {n}")
    if monoid.ambient.torsion:
        raise PreconditionError(f"cannot divide a monoid with torsion ambient {monoid.ambient}")
    if not predicates(monoid).is_toric:
        raise PreconditionError("division needs a sharp fs monoid")
    inclusion = MonoidHom(monoid, monoid, tuple(monoid.ambient.scale(n, g) for g in monoid.generators))
    return DividedMonoid(monoid, inclusion, n)


def is_n_divisible(monoid: IntegralMonoid, n: int) -> bool:
    """True iff [n]: P -> P is surjective."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    group = monoid.ambient
    times_n = GroupHom.from_images(group, group, [group.scale(n, e) for e in group.basis()])
    torsion = subgroup_closure(group, kernel_lattice(times_n).columns()).elements
    oracle = MembershipOracle(group, monoid.generators)
    for g in monoid.generators:
        root = times_n.preimage(g)
        if root is None:
            return False
        if not any(oracle.contains(group.add(root, t)) for t in torsion):
            return False
    return True


def submonoid_in(group: FinAbGroup, generators: Sequence[Sequence[int]]) -> tuple[IntegralMonoid, GroupHom]:
    """
    Monoid generated by elements of a group, in its own group-completion coordinates.

    Returns:
        tuple: (monoid, embedding of its ambient into the group)
    """
    _, inclusion, coords = subgroup_generated(group, generators)
    return IntegralMonoid(inclusion.source, tuple(coords)), inclusion


def toric_embed(monoid: IntegralMonoid) -> MonoidHom:
    """
    Injective map P -> Z≥0^r' for toric P.

    Coordinates are dual Hilbert basis elements, extreme rays first, added while
    they increase the rank until their common kernel is trivial.
    """
    if not predicates(monoid).is_toric:
        raise PreconditionError("toric_embed needs a toric monoid")
    r = monoid.rank
    dual = dual_cone(monoid.cone())
    extra = [h for h in hilbert_basis(dual) if h not in dual.rays]
    chosen: list[Vector] = []
    for h in list(dual.rays) + extra:
        trial = chosen + [h]
        if rank(IntMatrix.from_rows(trial, r)) > len(chosen):
            chosen = trial
        if len(chosen) == r:
            break
    target = IntegralMonoid.free(len(chosen))
    images = tuple(tuple(dot(h, g) for h in chosen) for g in monoid.generators)
    embedding = MonoidHom(monoid, target, images)
    if not embedding.group_hom.is_injective():
        raise VerificationError("toric embedding is not injective")
    return embedding


def random_words(rng, generators: Sequence[Vector], group: FinAbGroup, count: int, max_length: int) -> list[Vector]:
    """Random sums of at most max_length generators, for property tests."""
    result = []
    for _ in range(count):
        x = group.zero()
        for _ in range(rng.randint(0, max_length)):
            x = group.add(x, rng.choice(generators))
        result.append(x)
    return result


def word_elements(monoid: IntegralMonoid, coefficient_bound: int) -> list[Vector]:
    """Σ c_i g_i with 0 <= c_i <= coefficient_bound, deduplicated and sorted."""
    found = set()
    for coeffs in itertools.product(range(coefficient_bound + 1), repeat=len(monoid.generators)):
        x = monoid.ambient.zero()
        for c, g in zip(coeffs, monoid.generators, strict=True):
            x = monoid.ambient.add(x, monoid.ambient.scale(c, g))
        found.add(x)
    return sorted(found)
