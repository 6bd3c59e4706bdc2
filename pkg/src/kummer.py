"""
Kummer Homomorphisms
Recognition, cokernel groups, ramification, self-products, chart checks and Abhyankar monoids
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from sympy import primefactors

from .cones import RationalCone, dual_cone, satisfies
from .config import resolve_bound
from .constants import ABHYANKAR_MAX_DIVISOR, ABHYANKAR_MAX_RANK
from .errors import BoundExceededError, InputError, PreconditionError, VerificationError
from .lattice import (
    FinAbGroup,
    GroupHom,
    Vector,
    cokernel,
    induced_on_cokernel,
    kernel_lattice,
    normalize_group,
    subgroup_enumerate,
    subgroup_generated,
)
from .monoids import (
    IntegralMonoid,
    MembershipOracle,
    MonoidHom,
    amalgamated_sum,
    induced_from_pushout,
    direct_sum_group,
    is_saturated,
    predicates,
    saturated_preimage,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KummerCheck:
    """Outcome of is_kummer: the first violated clause and a witness, if any."""

    is_kummer: bool
    clause: str | None = None
    witness: Vector | None = None

    def __bool__(self) -> bool:
        return self.is_kummer


@dataclass(frozen=True)
class KummerData:
    """A Kummer homomorphism with its cokernel G = Q^gp/u^gp(P^gp)."""

    hom: MonoidHom
    cokernel_group: FinAbGroup
    projection: GroupHom
    exponent: int


def _require_saturated(u: MonoidHom) -> None:
    if not is_saturated(u.source):
        raise PreconditionError("Kummer analysis needs a saturated source")
    if not is_saturated(u.target):
        raise PreconditionError("Kummer analysis needs a saturated target")


def cokernel_group(u: MonoidHom) -> FinAbGroup:
    """Q^gp / u^gp(P^gp) in normal form."""
    return cokernel(u.group_hom)[0]


def is_kummer(u: MonoidHom) -> KummerCheck:
    """
    Decide whether u is Kummer.

    Clauses are tested in order: injectivity of u^gp, finiteness of the
    cokernel, and every generator of Q having a multiple in u(P). The last
    clause is additive, so generators suffice.

    Args:
        u: Homomorphism between saturated monoids

    Returns:
        KummerCheck: Result with the first failing clause and a witness
    """
    _require_saturated(u)
    kernel = kernel_lattice(u.group_hom).columns()
    if kernel:
        return KummerCheck(False, "injective", kernel[0])

    group, proj = cokernel(u.group_hom)
    if not group.is_finite:
        for q in u.target.generators:
            if group.element_order(proj.apply(q)) is None:
                return KummerCheck(False, "finite_cokernel", q)

    image_cone = dual_cone(RationalCone.from_generators(u.target.rank, [x[: u.target.rank] for x in u.images]))
    for q in u.target.generators:
        if not satisfies(image_cone.rays, q[: u.target.rank]):
            return KummerCheck(False, "multiples", q)
    return KummerCheck(True)


def kummer_data(u: MonoidHom) -> KummerData:
    """
    Package a Kummer homomorphism with its cokernel.

    Raises:
        PreconditionError: With the is_kummer witness when u is not Kummer
    """
    check = is_kummer(u)
    if not check:
        raise PreconditionError(f"homomorphism is not Kummer ({check.clause})", witness=check.witness)
    group, proj = cokernel(u.group_hom)
    return KummerData(u, group, proj, group.exponent)


def ramification_index(data: KummerData) -> int:
    """
    Smallest n >= 1 with n·q ∈ u(P) for every generator q of Q.

    Raises:
        PreconditionError: If source or target is not sharp
        VerificationError: If the search disagrees with the cokernel exponent
    """
    u = data.hom
    if not (predicates(u.source).is_toric and predicates(u.target).is_toric):
        raise PreconditionError("ramification index needs sharp fs source and target")
    image = MembershipOracle(u.target.ambient, u.images)
    for n in range(1, data.exponent + 1):
        if all(image.contains(u.target.ambient.scale(n, q)) for q in u.target.generators):
            break
    else:
        raise VerificationError(f"no n <= {data.exponent} sends every generator into u(P)")
    if n != data.exponent:
        raise VerificationError(f"ramification index {n} differs from cokernel exponent {data.exponent}")
    return n


@dataclass(frozen=True)
class SelfProductDecomposition:
    """(Q ⊕_P Q)^Sat ≅ Q ⊕ G with both directions."""

    amalgamated: IntegralMonoid
    product: IntegralMonoid
    forward: MonoidHom
    backward: MonoidHom


def self_product_decomposition(data: KummerData) -> SelfProductDecomposition:
    """
    Decompose the saturated self-amalgamation of a Kummer homomorphism.

    The forward map sends ι1(a) + ι2(b) to (a + b, [b]); the backward map sends
    (q, 0) to ι1(q) and (0, [g]) to ι2(g) − ι1(g). Both composites are checked
    to be the identity on generators.
    """
    u = data.hom
    q = u.target
    a = q.ambient
    total = amalgamated_sum(u, u, mode="saturated")
    s = total.monoid
    iota1, iota2 = total.group_maps

    group, raw_proj, inc_q, inc_g = direct_sum_group(a, data.cokernel_group)
    gens = [inc_q.apply(x) for x in q.generators] + [inc_g.apply(e) for e in data.cokernel_group.basis()]
    product = IntegralMonoid(group, tuple(gens))

    first = GroupHom.from_images(a, group, [inc_q.apply(e) for e in a.basis()])
    second = GroupHom.from_images(
        a, group, [group.add(inc_q.apply(e), inc_g.apply(data.projection.apply(e))) for e in a.basis()]
    )
    forward_gp = induced_from_pushout(iota1, iota2, first, second)

    backward_raw = [iota1.apply(e) for e in a.basis()]
    for e in data.cokernel_group.basis():
        lift = data.projection.preimage(e)
        backward_raw.append(s.ambient.sub(iota2.apply(lift), iota1.apply(lift)))
    try:
        backward_gp = induced_on_cokernel(raw_proj, GroupHom.from_images(raw_proj.source, s.ambient, backward_raw))
    except InputError as exc:
        raise VerificationError(f"backward map is not well defined: {exc}") from exc

    forward = MonoidHom.from_group_hom(s, product, forward_gp)
    backward = MonoidHom.from_group_hom(product, s, backward_gp)
    for x in s.generators:
        if backward.apply(forward.apply(x)) != x:
            raise VerificationError(f"self-product decomposition does not restore {x}")
    for x in product.generators:
        if forward.apply(backward.apply(x)) != x:
            raise VerificationError(f"self-product decomposition does not restore {x}")
    logger.debug(f"self-product: {s.ambient} ≅ {a} + {data.cokernel_group}")
    return SelfProductDecomposition(s, product, forward, backward)


@dataclass(frozen=True)
class DividedFactorization:
    """u = j ∘ u with j: Q ↪ (1/n)P; (1/n)P is modelled on P with P ↪ (1/n)P being [n]."""

    n: int
    embedding: MonoidHom


def minimal_divided_factorization(data: KummerData) -> DividedFactorization:
    """
    Minimal n such that u factors through Q ↪ (1/n)P.

    Returns:
        DividedFactorization: n and the embedding j(q) = (u^gp)^{-1}(n·q)
    """
    u = data.hom
    if u.source.ambient.torsion or not predicates(u.source).is_toric:
        raise PreconditionError("divided factorization needs a sharp fs torsion-free source")
    n = data.exponent
    images = []
    for q in u.target.generators:
        x = u.group_hom.preimage(u.target.ambient.scale(n, q))
        if x is None:
            raise VerificationError(f"{n}·{q} is not in the image of P^gp")
        images.append(x)
    embedding = MonoidHom(u.target, u.source, tuple(images))
    if not embedding.group_hom.is_injective():
        raise VerificationError("Q -> (1/n)P is not injective")
    for p in u.source.generators:
        if embedding.apply(u.apply(p)) != u.source.ambient.scale(n, p):
            raise VerificationError(f"j(u({p})) != {n}·{p}")
    return DividedFactorization(n, embedding)


@dataclass(frozen=True)
class ChartCheck:
    """Log smoothness chart condition on kernel and cokernel torsion."""

    passed: bool
    kernel_group: FinAbGroup
    cokernel_group: FinAbGroup
    offending_primes: tuple[int, ...] = ()
    reason: str | None = None


def log_smooth_chart_check(u: MonoidHom, invertible_primes: Iterable[int]) -> ChartCheck:
    """
    Check that ker(u^gp) and the torsion of coker(u^gp) are finite of invertible order.
    """
    primes = set(invertible_primes)
    kernel_group, _, _ = subgroup_generated(u.source.ambient, kernel_lattice(u.group_hom).columns())
    coker = cokernel_group(u)

    if not kernel_group.is_finite:
        return ChartCheck(False, kernel_group, coker, reason="kernel is infinite")
    torsion_order = 1
    for d in coker.torsion:
        torsion_order *= d
    offending = sorted(
        {p for p in primefactors(kernel_group.order) + primefactors(torsion_order) if p not in primes}
    )
    if offending:
        return ChartCheck(False, kernel_group, coker, tuple(offending), "orders divisible by non-invertible primes")
    return ChartCheck(True, kernel_group, coker)


def is_log_etale(u: MonoidHom, invertible_primes: Iterable[int]) -> bool:
    """Chart check passes and the cokernel is finite."""
    check = log_smooth_chart_check(u, invertible_primes)
    return check.passed and check.cokernel_group.is_finite


@dataclass(frozen=True)
class LogDifferentials:
    """Coefficient group Q^gp/u^gp(P^gp) of the log differentials of R⟨Q⟩ over R⟨P⟩."""

    group: FinAbGroup
    relative_dimension: int
    torsion: tuple[int, ...]
    basis_lifts: tuple[Vector, ...]


def log_differentials_module(u: MonoidHom, invertible_primes: Iterable[int]) -> LogDifferentials:
    """
    Log differentials of a chart satisfying the smoothness condition.

    Each basis element of the coefficient group comes with a lift to Q^gp.

    Raises:
        PreconditionError: If the chart check fails
    """
    check = log_smooth_chart_check(u, invertible_primes)
    if not check.passed:
        raise PreconditionError(f"chart check failed: {check.reason}", witness=check.offending_primes)
    group, proj = cokernel(u.group_hom)
    lifts = tuple(proj.preimage(e) for e in group.basis())
    return LogDifferentials(group, group.free_rank, group.torsion, lifts)


@dataclass(frozen=True)
class AbhyankarMonoid:
    """Q with Z≥0^r ⊂ Q ⊂ ⊕(1/d_i)Z≥0, written in coordinates where (1/d_i)e_i is e_i."""

    subgroup: tuple[Vector, ...]
    monoid: IntegralMonoid
    embedding: GroupHom
    generators: tuple[Vector, ...]


def abhyankar_classify(r: int, divisors: Iterable[int], bound: int | None = None) -> list[AbhyankarMonoid]:
    """
    All monoids between Z≥0^r and ⊕(1/d_i)Z≥0 cut out by their group completion.

    Args:
        r: Rank
        divisors: d_1..d_r
        bound: Enumeration bound on ⊕Z/d_i (defaults to configuration)

    Returns:
        list[AbhyankarMonoid]: One entry per subgroup of ⊕Z/d_i, in subgroup order
    """
    d = [int(x) for x in divisors]
    if len(d) != r:
        raise InputError(f"need {r} divisors, got {len(d)}")
    if any(x < 1 for x in d):
        raise InputError(f"divisors must be positive, got {d}")
    if r > ABHYANKAR_MAX_RANK or any(x > ABHYANKAR_MAX_DIVISOR for x in d):
        raise BoundExceededError(
            f"Abhyankar classification limited to r <= {ABHYANKAR_MAX_RANK}, d_i <= {ABHYANKAR_MAX_DIVISOR}",
            bound=ABHYANKAR_MAX_RANK,
        )

    group, proj = normalize_group(0, d)
    raw = FinAbGroup.free(r)
    big = IntegralMonoid.free(r)
    scaled = [tuple(di if i == j else 0 for i in range(r)) for j, di in enumerate(d)]

    results = []
    for sub in subgroup_enumerate(group, bound=resolve_bound(bound)):
        lifts = [tuple(x % di for x, di in zip(proj.preimage(h), d, strict=True)) for h in sub.generators]
        _, inclusion, _ = subgroup_generated(raw, scaled + lifts)
        monoid = saturated_preimage(inclusion, big)
        gens = tuple(inclusion.apply(g) for g in monoid.generators)
        results.append(AbhyankarMonoid(tuple(lifts), monoid, inclusion, gens))
    logger.info(f"Abhyankar classification r={r}, d={d}: {len(results)} monoids")
    return results
