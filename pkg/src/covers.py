"""
Finite Kummer Etale Covers of Log Points
Level groups, covers from subgroups, the fiber functor to finite Γ-sets, fiber products and quotients
"""

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from math import gcd, lcm

from .config import resolve_bound
from .errors import InputError, PreconditionError, VerificationError
from .lattice import (
    FinAbGroup,
    GroupHom,
    IntMatrix,
    Subgroup,
    Vector,
    cokernel,
    kernel_lattice,
    subgroup_closure,
    subgroup_enumerate,
    subgroup_generated,
)
from .monoids import (
    IntegralMonoid,
    MonoidHom,
    amalgamated_sum,
    induced_from_pushout,
    is_surjective,
    predicates,
    saturated_preimage,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LogPoint:
    """fs log point, given by its characteristic monoid (sharp fs, in its own Z^r)."""

    characteristic: IntegralMonoid

    def __post_init__(self):
        if self.characteristic.ambient.torsion:
            raise InputError(f"characteristic monoid has torsion ambient {self.characteristic.ambient}")
        if not predicates(self.characteristic).is_toric:
            raise InputError("characteristic monoid of a log point must be sharp fs")

    @property
    def rank(self) -> int:
        return self.characteristic.rank


def fundamental_group_level(point: LogPoint, m: int) -> FinAbGroup:
    """Γ_{/m} ≅ (Z/m)^r with canonical generators γ_1..γ_r."""
    if m < 1:
        raise InputError(f"level must be >= 1, got {m}")
    return level_group(point.rank, m)


def level_group(r: int, m: int) -> FinAbGroup:
    """((1/m)P)^gp / P^gp ≅ (Z/m)^r."""
    return FinAbGroup(0, (m,) * r) if m > 1 else FinAbGroup.trivial()


def _level_element(point: LogPoint, m: int, h: Sequence[int]) -> Vector:
    if len(h) != point.rank:
        raise InputError(f"subgroup element {tuple(h)} needs {point.rank} coordinates")
    return tuple(int(x) % m for x in h) if m > 1 else ()


# ---------------------------------------------------------------------------
# Covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FketCover:
    """
    Connected finite Kummer étale cover of a log point at level m.

    The monoid Q lives in its own coordinates; `embedding` sends Q^gp into
    ((1/m)P)^gp = Z^r, where x stands for x/m. `kummer` is P -> Q.
    """

    base: LogPoint
    level: int
    subgroup: Subgroup
    monoid: IntegralMonoid
    embedding: GroupHom
    kummer: MonoidHom

    @property
    def degree(self) -> int:
        return self.subgroup.order

    def generators_in_level(self) -> list[Vector]:
        """Generators of Q in ((1/m)P)^gp coordinates."""
        return [self.embedding.apply(g) for g in self.monoid.generators]


def cover_from_subgroup(point: LogPoint, m: int, generators: Sequence[Sequence[int]]) -> FketCover:
    """
    The cover Q = preimage of G in (1/m)P.

    Args:
        point: Base log point
        m: Level
        generators: Elements of (Z/m)^r generating G

    Returns:
        FketCover: With Q^gp/P^gp ≅ G verified
    """
    group = fundamental_group_level(point, m)
    r = point.rank
    sub = subgroup_closure(group, [_level_element(point, m, h) for h in generators])

    lattice = FinAbGroup.free(r)
    spanning = [tuple(m if i == j else 0 for i in range(r)) for j in range(r)]
    spanning += [tuple(h) for h in sub.generators]
    _, embedding, _ = subgroup_generated(lattice, spanning)
    monoid = saturated_preimage(embedding, point.characteristic)

    base = point.characteristic
    images = []
    for p in base.generators:
        x = embedding.preimage(lattice.scale(m, p))
        if x is None:
            raise VerificationError(f"{m}·{p} is not in the cover lattice")
        images.append(x)
    kummer = MonoidHom(base, monoid, tuple(images))

    quotient = cokernel(kummer.group_hom)[0]
    expected = subgroup_generated(group, sub.generators)[0]
    if quotient != expected:
        raise VerificationError(f"Q^gp/P^gp is {quotient}, expected {expected}")
    logger.debug(f"cover at level {m} for subgroup {sub.generators}: {len(monoid)} generators")
    return FketCover(point, m, sub, monoid, embedding, kummer)


def enumerate_connected_covers(point: LogPoint, m: int, bound: int | None = None) -> list[FketCover]:
    """One connected cover per subgroup of (Z/m)^r, in canonical subgroup order."""
    group = fundamental_group_level(point, m)
    subgroups = subgroup_enumerate(group, bound=resolve_bound(bound))
    covers = [cover_from_subgroup(point, m, _widen(point, sub.generators)) for sub in subgroups]
    logger.info(f"{len(covers)} connected covers at level {m}")
    return covers


def _widen(point: LogPoint, gens: Sequence[Vector]) -> list[Vector]:
    return [tuple(g) if g else (0,) * point.rank for g in gens]


def lift_cover(cover: FketCover, m: int) -> FketCover:
    """The same cover at a level m divisible by its own level."""
    if m % cover.level:
        raise InputError(f"cannot lift a level-{cover.level} cover to level {m}")
    factor = m // cover.level
    gens = [tuple(factor * x for x in h) for h in _widen(cover.base, cover.subgroup.generators)]
    return cover_from_subgroup(cover.base, m, gens)


def retrivialize(cover: FketCover, k: int) -> FketCover:
    """
    The cover seen through the trivialization μ_m ≅ Z/m composed with x -> k·x.

    Raises:
        PreconditionError: If k is not a unit modulo the level
    """
    m = cover.level
    if gcd(k, m) != 1:
        raise PreconditionError(f"{k} is not a unit modulo {m}")
    gens = [tuple(k * x for x in h) for h in _widen(cover.base, cover.subgroup.generators)]
    return cover_from_subgroup(cover.base, m, gens)


# ---------------------------------------------------------------------------
# Γ-sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaSet:
    """
    Finite set with an action of Γ_{/m} ≅ (Z/m)^rank.

    permutations[j][x] is the index of γ_j · x.
    """

    level: int
    rank: int
    elements: tuple[Vector, ...]
    permutations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(self.permutations) != self.rank:
            raise InputError(f"need {self.rank} generator permutations, got {len(self.permutations)}")
        for perm in self.permutations:
            if sorted(perm) != list(range(n)):
                raise InputError(f"{perm} is not a permutation of {n} elements")
        for a in self.permutations:
            for b in self.permutations:
                if any(a[b[x]] != b[a[x]] for x in range(n)):
                    raise InputError("generator permutations do not commute")
            for x in range(n):
                y = x
                for _ in range(self.level):
                    y = a[y]
                if y != x:
                    raise InputError(f"generator order does not divide {self.level}")

    def __len__(self) -> int:
        return len(self.elements)

    def act(self, j: int, x: int) -> int:
        return self.permutations[j][x]

    def is_transitive(self) -> bool:
        return len(orbits(self)) <= 1


def orbits(gamma_set: GammaSet) -> list[tuple[int, ...]]:
    """Orbit decomposition, each orbit sorted, orbits ordered by smallest element."""
    seen: set[int] = set()
    result = []
    for start in range(len(gamma_set)):
        if start in seen:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for perm in gamma_set.permutations:
                y = perm[x]
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        seen |= orbit
        result.append(tuple(sorted(orbit)))
    return result


def fiber_functor(cover: FketCover) -> GammaSet:
    """
    F(c) = Hom(Q^gp/P^gp, μ_m) with Γ_{/m} acting through restriction.

    μ_m is identified with Z/m. A character is recorded by its values on the
    canonical generators of G; γ_j adds the j-th coordinates of those generators.
    """
    m, r = cover.level, cover.base.rank
    gens = cover.subgroup.generators
    shifts = [tuple(h[j] for h in gens) for j in range(r)]

    zero = (0,) * len(gens)
    found = {zero}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for shift in shifts:
            y = tuple((a + b) % m for a, b in zip(x, shift, strict=True))
            if y not in found:
                found.add(y)
                queue.append(y)
    elements = tuple(sorted(found))
    index = {x: i for i, x in enumerate(elements)}
    permutations = tuple(
        tuple(index[tuple((a + b) % m for a, b in zip(x, shift, strict=True))] for x in elements)
        for shift in shifts
    )
    result = GammaSet(m, r, elements, permutations)
    if len(result) != cover.degree:
        raise VerificationError(f"fiber has {len(result)} elements, expected {cover.degree}")
    return result


def monodromy_rep(cover: FketCover) -> list[IntMatrix]:
    """Permutation matrices of γ_1..γ_r on F(c): column x has its 1 in row γ_j·x."""
    fiber = fiber_functor(cover)
    n = len(fiber)
    matrices = []
    for perm in fiber.permutations:
        rows = [[1 if perm[x] == y else 0 for x in range(n)] for y in range(n)]
        matrices.append(IntMatrix.from_rows(rows, n))
    return matrices


@dataclass(frozen=True)
class RestrictionMap:
    """Γ-equivariant surjection F(c1) -> F(c2) for G_2 ⊂ G_1."""

    source: GammaSet
    target: GammaSet
    mapping: tuple[int, ...]

    def fibers(self) -> list[tuple[int, ...]]:
        buckets: dict[int, list[int]] = {}
        for x, y in enumerate(self.mapping):
            buckets.setdefault(y, []).append(x)
        return [tuple(buckets[y]) for y in sorted(buckets)]


def _coefficients(group: FinAbGroup, gens: Sequence[Vector], targets: Sequence[Vector]) -> list[Vector]:
    """Integer coefficients writing each target as a combination of gens."""
    if not targets:
        return []
    free = FinAbGroup.free(len(gens))
    span = GroupHom.from_images(free, group, gens) if gens else GroupHom.zero(free, group)
    result = []
    for t in targets:
        c = span.preimage(t)
        if c is None:
            raise PreconditionError("subgroup is not contained in the cover's subgroup", witness=t)
        result.append(c)
    return result


def restriction_map(larger: FketCover, smaller: FketCover) -> RestrictionMap:
    """
    Restriction F(c1) -> F(c2) of characters from G_1 to G_2 ⊂ G_1.

    Covers at different levels are first lifted to the lcm of the levels.

    Raises:
        PreconditionError: If G_2 is not contained in G_1
        VerificationError: If the map is not equivariant or not surjective
    """
    if larger.base != smaller.base:
        raise InputError("covers must share a base")
    m = lcm(larger.level, smaller.level)
    if larger.level != m:
        larger = lift_cover(larger, m)
    if smaller.level != m:
        smaller = lift_cover(smaller, m)

    group = fundamental_group_level(larger.base, m)
    coeffs = _coefficients(group, larger.subgroup.generators, smaller.subgroup.generators)
    source, target = fiber_functor(larger), fiber_functor(smaller)
    index = {x: i for i, x in enumerate(target.elements)}

    mapping = []
    for x in source.elements:
        value = tuple(sum(c * v for c, v in zip(coeff, x, strict=True)) % m for coeff in coeffs)
        mapping.append(index[value])
    result = RestrictionMap(source, target, tuple(mapping))

    for j in range(source.rank):
        for x in range(len(source)):
            if result.mapping[source.act(j, x)] != target.act(j, result.mapping[x]):
                raise VerificationError("restriction map is not equivariant")
    if set(result.mapping) != set(range(len(target))):
        raise VerificationError("restriction map is not surjective")
    return result


# ---------------------------------------------------------------------------
# Fiber products and quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiberProduct:
    """
    c1 ×_ξ c2 as |G_1 ∩ G_2| copies of the cover for G_1 + G_2.

    `orbit_labels[k][i]` is the element of F(component) matched with the i-th
    pair of the k-th orbit of F(c1) × F(c2).
    """

    level: int
    component: FketCover
    multiplicity: int
    amalgamated: IntegralMonoid
    product_set: GammaSet
    orbits: tuple[tuple[int, ...], ...]
    orbit_labels: tuple[tuple[int, ...], ...]

    @property
    def components(self) -> tuple[FketCover, ...]:
        return (self.component,) * self.multiplicity


def product_gamma_set(first: GammaSet, second: GammaSet) -> GammaSet:
    """F1 × F2 with the diagonal action; pair (a, b) has index a·|F2| + b."""
    if (first.level, first.rank) != (second.level, second.rank):
        raise InputError("Γ-sets must share level and rank")
    n2 = len(second)
    elements = tuple(x + y for x in first.elements for y in second.elements)
    permutations = tuple(
        tuple(p1[a] * n2 + p2[b] for a in range(len(first)) for b in range(n2))
        for p1, p2 in zip(first.permutations, second.permutations, strict=True)
    )
    return GammaSet(first.level, first.rank, elements, permutations)


def _label_orbit(product: GammaSet, orbit: Sequence[int], model: GammaSet) -> tuple[int, ...]:
    """Equivariant bijection of one orbit onto a transitive Γ-set, built along generator edges."""
    labels = {orbit[0]: 0}
    queue = deque([orbit[0]])
    while queue:
        x = queue.popleft()
        for j in range(product.rank):
            y = product.act(j, x)
            expected = model.act(j, labels[x])
            if y in labels:
                if labels[y] != expected:
                    raise VerificationError("orbit is not isomorphic to the component's fiber")
            else:
                labels[y] = expected
                queue.append(y)
    result = tuple(labels[x] for x in orbit)
    if sorted(result) != list(range(len(model))):
        raise VerificationError("orbit labelling is not a bijection")
    return result


def cover_fiber_product(first: FketCover, second: FketCover) -> FiberProduct:
    """
    Fiber product of two connected covers with its certificates.

    Checks that the saturated amalgamated sum of the two monoids is the
    component monoid plus a torsion group of order |G_1 ∩ G_2|, that this
    order is the number of diagonal orbits on F(c1) × F(c2), and that each
    orbit is isomorphic to F(component).
    """
    if first.base != second.base:
        raise InputError("covers must share a base")
    m = lcm(first.level, second.level)
    c1 = first if first.level == m else lift_cover(first, m)
    c2 = second if second.level == m else lift_cover(second, m)
    point = c1.base

    component = cover_from_subgroup(
        point, m, _widen(point, c1.subgroup.generators) + _widen(point, c2.subgroup.generators)
    )
    multiplicity = len(c1.subgroup.elements & c2.subgroup.elements)

    total = amalgamated_sum(c1.kummer, c2.kummer, mode="saturated")
    s = total.monoid
    torsion_order = 1
    for d in s.ambient.torsion:
        torsion_order *= d
    if torsion_order != multiplicity or s.ambient.free_rank != point.rank:
        raise VerificationError(f"amalgamated sum has ambient {s.ambient}, expected {multiplicity} components")

    q12 = component.monoid
    maps = []
    for c in (c1, c2):
        images = [component.embedding.preimage(c.embedding.apply(e)) for e in c.monoid.ambient.basis()]
        maps.append(GroupHom.from_images(c.monoid.ambient, q12.ambient, images))
    iota1, iota2 = total.group_maps
    codiagonal = MonoidHom.from_group_hom(s, q12, induced_from_pushout(iota1, iota2, maps[0], maps[1]))
    if not is_surjective(codiagonal)[0]:
        raise VerificationError("amalgamated sum does not cover the component monoid")
    for k in kernel_lattice(codiagonal.group_hom).columns():
        if s.ambient.element_order(k) is None:
            raise VerificationError(f"codiagonal kills the non-torsion element {k}")

    product = product_gamma_set(fiber_functor(c1), fiber_functor(c2))
    model = fiber_functor(component)
    product_orbits = orbits(product)
    if len(product_orbits) != multiplicity:
        raise VerificationError(f"{len(product_orbits)} orbits but {multiplicity} components")
    labels = tuple(_label_orbit(product, orbit, model) for orbit in product_orbits)
    logger.info(f"fiber product at level {m}: {multiplicity} copies of a degree-{component.degree} cover")
    return FiberProduct(m, component, multiplicity, s, product, tuple(product_orbits), labels)


@dataclass(frozen=True)
class QuotientCover:
    """c / K where K ⊂ Aut(c) is the annihilator of the subgroup H ⊂ G_Q."""

    cover: FketCover
    kernel_order: int
    restriction: RestrictionMap


def cover_quotient(cover: FketCover, generators: Sequence[Sequence[int]]) -> QuotientCover:
    """
    Quotient of a connected cover: the cover for a subgroup H ⊂ G_Q.

    The automorphisms of c fixing the quotient are the characters of G_Q that
    vanish on H; the fibers of F(c) -> F(c') are exactly their orbits.

    Raises:
        PreconditionError: If H is not contained in G_Q
    """
    point, m = cover.base, cover.level
    group = fundamental_group_level(point, m)
    sub = subgroup_closure(group, [_level_element(point, m, h) for h in generators])
    for h in sub.generators:
        if h not in cover.subgroup:
            raise PreconditionError("quotient subgroup is not contained in G_Q", witness=h)

    quotient = cover_from_subgroup(point, m, _widen(point, sub.generators))
    restriction = restriction_map(cover, quotient)
    fiber = restriction.source

    zero_target = restriction.target.elements.index((0,) * len(quotient.subgroup.generators))
    kernel = [fiber.elements[x] for x, y in enumerate(restriction.mapping) if y == zero_target]
    if len(quotient.subgroup.elements) * len(kernel) != len(fiber):
        raise VerificationError("|F(c')|·|K| != |F(c)|")
    for block in restriction.fibers():
        base = fiber.elements[block[0]]
        translates = {tuple((a + b) % m for a, b in zip(base, k, strict=True)) for k in kernel}
        if translates != {fiber.elements[x] for x in block}:
            raise VerificationError("restriction fibers are not automorphism orbits")
    return QuotientCover(quotient, len(kernel), restriction)
