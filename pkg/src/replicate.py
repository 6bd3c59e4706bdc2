"""
Replication Suites
Property checks with brute-force oracles, one suite per checked property family
"""

import itertools
import logging
import random
import time
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field
from math import gcd, lcm, prod

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from .cones import RationalCone, dual_cone, hilbert_basis, interior_functional, is_pointed, satisfies
from .constants import DEFAULT_CECH_DEGREE, DEFAULT_CECH_DEPTH, DEFAULT_WORD_LENGTH
from .covers import (
    FketCover,
    LogPoint,
    cover_fiber_product,
    cover_quotient,
    enumerate_connected_covers,
    level_group,
    retrivialize,
)
from .errors import LogMonoidError
from .finite_field import Fq
from .gammacoh import (
    GammaModule,
    annihilation_check,
    binomial_dims,
    direct_sum,
    external_tensor,
    is_unipotent,
    jr_module,
    km_module,
    koszul_cohomology,
    nearby_quasi_unipotent,
    nearby_unipotent,
    quasi_unipotent_exponent,
    restrict,
    s_chi,
    stable_invariants_match,
    tensor,
    unipotent_part,
)
from .kummer import is_kummer, kummer_data, ramification_index, self_product_decomposition
from .lattice import (
    FinAbGroup,
    GroupHom,
    IntMatrix,
    Subgroup,
    cokernel,
    smith_normal_form,
    subgroup_enumerate,
)
from .monalg import verify_cech_exact
from .monoids import (
    IntegralMonoid,
    MonoidHom,
    amalgamated_quotient_comparison,
    factor_through_saturation,
    hom_properties,
    is_saturated,
    membership,
    random_words,
    same_monoid,
    saturate,
    submonoid_in,
    word_elements,
)
from .serialization import to_json_string

logger = logging.getLogger(__name__)

# Failures listed per suite in a report
MAX_REPORTED_FAILURES = 10


@dataclass
class SuiteResult:
    """Outcome of one suite: pass/fail, number of checks and the first failures."""

    name: str
    criterion: int
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, label: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(label)

    def guard(self, label: str, action: Callable[[], bool]) -> None:
        """Run one check, recording library errors as failures."""
        try:
            ok = bool(action())
        except LogMonoidError as e:
            self.checks += 1
            self.failures.append(f"{label}: {e.kind}: {e}")
            return
        self.check(ok, label)

    def as_dict(self, timing: bool = False) -> dict:
        result = {
            "criterion": self.criterion,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures[:MAX_REPORTED_FAILURES],
            "failure_count": len(self.failures),
            "details": self.details,
        }
        if timing and self.seconds is not None:
            result["seconds"] = round(self.seconds, 3)
        return result


# ---------------------------------------------------------------------------
# Lattice
# ---------------------------------------------------------------------------


def _order_histogram(group: FinAbGroup) -> dict[int, int]:
    return dict(Counter(group.element_order(e) for e in group.elements()))


def _brute_force_histogram(rows: list[list[int]], n: int) -> dict[int, int]:
    """
    Element orders of Z^k / A Z^k for square A with |det A| = n.

    n Z^k ⊂ A Z^k, so every class is hit n^(k−1) times by the box [0, n)^k;
    x has order lcm(n / gcd(n, y_i)) with y = adj(A)·x.
    """
    k = len(rows)
    adj = Matrix(rows).adjugate()
    adj_rows = [[int(adj[i, j]) for j in range(k)] for i in range(k)]
    counts: Counter = Counter()
    for x in itertools.product(range(n), repeat=k):
        order = 1
        for row in adj_rows:
            y = sum(a * b for a, b in zip(row, x, strict=True))
            order = lcm(order, n // gcd(n, y))
        counts[order] += 1
    scale = n ** (k - 1)
    return {o: c // scale for o, c in counts.items()}


def _is_divisibility_chain(diag: list[int]) -> bool:
    for a, b in itertools.pairwise(diag):
        if a == 0 and b != 0:
            return False
        if a != 0 and b % a:
            return False
    return all(x >= 0 for x in diag)


def lattice_suite(rng: random.Random) -> SuiteResult:
    """Smith forms of random matrices against sympy and a quotient-enumeration oracle."""
    result = SuiteResult("lattice", 1)
    brute_forced = 0
    for index in range(500):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        entries = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        a = IntMatrix.from_rows(entries, cols)
        u, d, v = smith_normal_form(a)
        diag = d.diagonal()
        expected = IntMatrix.from_rows(
            [[diag[i] if i == j else 0 for j in range(cols)] for i in range(rows)], cols
        )
        result.check(u @ a @ v == d and d == expected, f"matrix {index}: U·A·V != D")
        result.check(
            abs(Matrix(u.to_rows()).det()) == 1 and abs(Matrix(v.to_rows()).det()) == 1,
            f"matrix {index}: transforms are not unimodular",
        )
        result.check(_is_divisibility_chain(diag), f"matrix {index}: diagonal {diag} is not a chain")
        factors = [abs(int(x)) for x in invariant_factors(Matrix(entries), domain=ZZ) if x != 0]
        nonzero = [x for x in diag if x]
        result.check(
            len(nonzero) == len(factors) and prod(nonzero) == prod(factors),
            f"matrix {index}: diagonal {diag} disagrees with sympy {factors}",
        )

        group, _ = cokernel(GroupHom(FinAbGroup.free(cols), FinAbGroup.free(rows), a))
        result.check(group.free_rank == rows - Matrix(entries).rank(), f"matrix {index}: free rank")
        if rows == cols:
            n = abs(int(Matrix(entries).det()))
            if 0 < n <= 200 and n**rows <= 50000:
                brute_forced += 1
                result.check(
                    _order_histogram(group) == _brute_force_histogram(entries, n),
                    f"matrix {index}: cokernel {group} disagrees with enumeration",
                )
    result.details = {"matrices": 500, "brute_forced": brute_forced}
    return result


# ---------------------------------------------------------------------------
# Cones
# ---------------------------------------------------------------------------


def _irreducible_points(cone: RationalCone) -> list[tuple[int, ...]]:
    """Irreducible lattice points of a full-dimensional pointed cone, by exhaustive search."""
    d = cone.ambient_dim
    normals = dual_cone(cone).rays
    weight = interior_functional(cone)
    box = [sum(sorted((abs(r[j]) for r in cone.rays), reverse=True)[:d]) for j in range(d)]
    points = [
        x
        for x in itertools.product(*(range(-b, b + 1) for b in box))
        if any(x) and satisfies(normals, x)
    ]
    points.sort(key=lambda x: (sum(w * c for w, c in zip(weight, x, strict=True)), x))
    irreducible: list[tuple[int, ...]] = []
    for x in points:
        if not any(satisfies(normals, [a - b for a, b in zip(x, y, strict=True)]) for y in irreducible):
            irreducible.append(x)
    return sorted(irreducible)


def _random_cone(rng: random.Random) -> RationalCone:
    while True:
        d = rng.randint(1, 3)
        gens = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(rng.randint(d, d + 2))]
        cone = RationalCone.from_generators(d, gens)
        if not cone.rays or not is_pointed(cone):
            continue
        if Matrix([list(r) for r in cone.rays]).rank() == d:
            return cone


def cones_suite(rng: random.Random) -> SuiteResult:
    """Hilbert bases of random pointed cones against exhaustive search in a bounding box."""
    result = SuiteResult("cones", 2)
    fixed = RationalCone.from_generators(2, [(1, 0), (1, 2)])
    result.guard("cone((1,0),(1,2))", lambda: hilbert_basis(fixed) == [(1, 0), (1, 1), (1, 2)])
    for index in range(50):
        cone = _random_cone(rng)
        result.guard(f"cone {index} {cone.rays}", lambda c=cone: hilbert_basis(c) == _irreducible_points(c))
    result.details = {"cones": 51}
    return result


# ---------------------------------------------------------------------------
# Monoids
# ---------------------------------------------------------------------------


def _saturation_checks(result: SuiteResult, rng: random.Random, index: int) -> None:
    group = FinAbGroup(2, (2,))
    gens = [
        (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(0, 1)) for _ in range(rng.randint(1, 3))
    ]
    p, _ = submonoid_in(group, gens)
    sat = saturate(p)
    label = f"monoid {index} {gens}"
    result.check(is_saturated(sat), f"{label}: saturation is not saturated")
    result.check(same_monoid(saturate(sat), sat), f"{label}: saturation is not idempotent")
    result.check(all(membership(sat, g) for g in p.generators), f"{label}: saturation is not extensive")
    if p.generators:
        words = random_words(rng, list(p.generators), p.ambient, 10, 6)
        result.check(all(membership(sat, w) for w in words), f"{label}: a word of P is missing from P^Sat")


def _adjunction_check(result: SuiteResult, rng: random.Random, index: int) -> None:
    gens = [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if any(g)] or [(1, 1)]
    p, inclusion = submonoid_in(FinAbGroup.free(2), gens)
    q = IntegralMonoid.free(2)
    m = IntMatrix.from_rows([[rng.randint(0, 2) for _ in range(2)] for _ in range(2)], 2)
    h = MonoidHom.from_group_hom(p, q, GroupHom(q.ambient, q.ambient, m).compose(inclusion))
    h_bar = factor_through_saturation(h)
    label = f"adjunction {index} {gens}"
    result.check(all(h_bar.apply(x) == h.apply(x) for x in word_elements(p, 2)), f"{label}: h̄ does not extend h")
    result.check(
        all(membership(q, h_bar.apply(g)) for g in h_bar.source.generators), f"{label}: h̄ leaves Q"
    )


def saturation_suite(rng: random.Random) -> SuiteResult:
    """⟨2,3⟩^Sat, idempotence and extensivity of saturation, and the adjunction factorization."""
    result = SuiteResult("saturation", 3)
    numerical = IntegralMonoid(FinAbGroup.free(1), ((2,), (3,)))
    result.guard("<2,3>^Sat = Z≥0", lambda: same_monoid(saturate(numerical), IntegralMonoid.free(1)))
    for index in range(100):
        try:
            _saturation_checks(result, rng, index)
        except LogMonoidError as e:
            result.check(False, f"monoid {index}: {e.kind}: {e}")
    for index in range(20):
        try:
            _adjunction_check(result, rng, index)
        except LogMonoidError as e:
            result.check(False, f"adjunction {index}: {e.kind}: {e}")
    result.details = {"monoids": 100, "adjunctions": 20}
    return result


def _random_triple(rng: random.Random) -> tuple[MonoidHom, MonoidHom]:
    r = rng.randint(1, 2)
    p = IntegralMonoid.free(r)
    t = rng.randint(1, 2)
    columns = [tuple(rng.randint(0, 2) for _ in range(t)) for _ in range(r)]
    u = MonoidHom(p, IntegralMonoid.free(t), tuple(columns))
    if rng.random() < 0.5:
        group = FinAbGroup.free(rng.randint(1, 2))
        images = tuple(tuple(rng.randint(-2, 2) for _ in range(group.length)) for _ in range(r))
    else:
        group = FinAbGroup(0, (rng.randint(2, 6),))
        images = tuple((rng.randint(0, group.torsion[0] - 1),) for _ in range(r))
    v = MonoidHom(p, IntegralMonoid.whole_group(group), images)
    return u, v


def amalgam_suite(rng: random.Random) -> SuiteResult:
    """Q1/P ≅ (Q1 ⊕_P Q2)/Q2 on enumerated words when Q2 is a group."""
    result = SuiteResult("amalgam", 4)
    for index in range(50):
        u, v = _random_triple(rng)
        result.guard(
            f"triple {index}: u={u.images} v={v.images} in {v.target.ambient}",
            lambda u=u, v=v: amalgamated_quotient_comparison(u, v, DEFAULT_WORD_LENGTH).is_isomorphism,
        )
    result.details = {"triples": 50, "word_length": DEFAULT_WORD_LENGTH}
    return result


# ---------------------------------------------------------------------------
# Kummer homomorphisms
# ---------------------------------------------------------------------------


def _multiplication(divisors: list[int]) -> MonoidHom:
    r = len(divisors)
    images = tuple(tuple(n if i == j else 0 for i in range(r)) for j, n in enumerate(divisors))
    return MonoidHom(IntegralMonoid.free(r), IntegralMonoid.free(r), images)


def standard_suite(rng: random.Random) -> SuiteResult:
    """Certified (Q ⊕_P Q)^Sat ≅ Q ⊕ G for [n] on Z≥0 and [2]⊕[3] on Z≥0²."""
    result = SuiteResult("standard", 5)
    cases = [[n] for n in range(2, 7)] + [[2, 3]]
    for divisors in cases:
        def certify(divisors=divisors) -> bool:
            data = kummer_data(_multiplication(divisors))
            decomposition = self_product_decomposition(data)
            expected = FinAbGroup.from_orders(len(divisors), divisors)
            return decomposition.amalgamated.ambient == expected

        result.guard(f"u = {divisors}", certify)
    result.details = {"maps": [str(d) for d in cases]}
    return result


def _kummer_corpus(rng: random.Random) -> list[MonoidHom]:
    corpus = []
    while len(corpus) < 160:
        r = rng.randint(1, 2)
        columns = tuple(tuple(rng.randint(0, 3) for _ in range(r)) for _ in range(r))
        corpus.append(MonoidHom(IntegralMonoid.free(r), IntegralMonoid.free(r), columns))
    point = LogPoint(IntegralMonoid.free(2))
    levels = {m: enumerate_connected_covers(point, m) for m in (2, 3, 4)}
    while len(corpus) < 200:
        corpus.append(rng.choice(levels[rng.randint(2, 4)]).kummer)
    return corpus


def kummer_suite(rng: random.Random) -> SuiteResult:
    """Every Kummer map in a generated corpus is exact with ramification index exp(G)."""
    result = SuiteResult("kummer", 6)
    accepted = 0
    for index, u in enumerate(_kummer_corpus(rng)):
        if not is_kummer(u):
            continue
        accepted += 1
        label = f"map {index} {u.images}"
        result.guard(f"{label}: exactness", lambda u=u: hom_properties(u).exact is True)

        def ramification(u=u) -> bool:
            data = kummer_data(u)
            return ramification_index(data) == data.exponent

        result.guard(f"{label}: ramification", ramification)
    result.details = {"maps": 200, "kummer": accepted}
    return result


# ---------------------------------------------------------------------------
# Covers
# ---------------------------------------------------------------------------


def _subgroups_within(cover: FketCover, m: int) -> list[Subgroup]:
    subgroups = subgroup_enumerate(level_group(cover.base.rank, m))
    return [h for h in subgroups if h.elements <= cover.subgroup.elements]


def covers_suite(rng: random.Random) -> SuiteResult:
    """Cover counts against subgroup counts; fiber products and quotients on every pair."""
    result = SuiteResult("covers", 7)
    points = {1: LogPoint(IntegralMonoid.free(1)), 2: LogPoint(IntegralMonoid.free(2))}
    counts = {}
    for r, point in points.items():
        for m in range(1, 7):
            covers = enumerate_connected_covers(point, m)
            expected = len(subgroup_enumerate(level_group(r, m)))
            counts[f"rank{r}_m{m}"] = len(covers)
            result.check(len(covers) == expected, f"rank {r}, m={m}: {len(covers)} covers, {expected} subgroups")
    result.check(counts["rank1_m4"] == 3, "Z≥0 at level 4 should have 3 covers")
    result.check(counts["rank2_m2"] == 5, "Z≥0² at level 2 should have 5 covers")

    retrivialized = 0
    for r, point in points.items():
        for m in range(2, 7):
            units = [k for k in range(2, m) if gcd(k, m) == 1]
            for cover in enumerate_connected_covers(point, m):
                for k in units:
                    retrivialized += 1
                    result.guard(
                        f"rank {r}, m={m}: cover {cover.subgroup.generators} under k={k}",
                        lambda c=cover, k=k: retrivialize(c, k).subgroup == c.subgroup,
                    )

    pairs = quotients = 0
    for r, max_level in ((1, 6), (2, 4)):
        point = points[r]
        for m in range(2, max_level + 1):
            covers = enumerate_connected_covers(point, m)
            for i, first in enumerate(covers):
                for second in covers[i:]:
                    pairs += 1
                    result.guard(
                        f"rank {r}, m={m}: fiber product of {first.subgroup.generators} and {second.subgroup.generators}",
                        lambda a=first, b=second: cover_fiber_product(a, b).multiplicity >= 1,
                    )
                for h in _subgroups_within(first, m):
                    quotients += 1
                    result.guard(
                        f"rank {r}, m={m}: quotient of {first.subgroup.generators} by {h.generators}",
                        lambda c=first, h=h: cover_quotient(c, list(h.generators)).cover.degree == h.order,
                    )
    result.details = {
        "counts": counts,
        "fiber_products": pairs,
        "quotients": quotients,
        "retrivializations": retrivialized,
    }
    return result


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------


# Levels m and fields F_q with m | q − 1
CHARACTER_CASES = ((2, 5), (4, 5), (2, 7), (3, 7), (2, 13), (3, 13), (4, 13))


def koszul_suite(rng: random.Random) -> SuiteResult:
    """Binomial dimensions for trivial modules and vanishing for nontrivial characters."""
    result = SuiteResult("koszul", 8)
    for p in (2, 3):
        for n in range(5):
            def trivial(p=p, n=n) -> bool:
                cohomology = koszul_cohomology(GammaModule.trivial(Fq(p), n))
                return cohomology.dims == binomial_dims(n) and cohomology.dimension(n + 1) == 0

            result.guard(f"trivial F_{p}, n={n}", trivial)

    point = LogPoint(IntegralMonoid.free(2))
    vanishing = 0
    for m, q in CHARACTER_CASES:
        for chi in itertools.product(range(m), repeat=2):
            report_label = f"χ={chi} at m={m} over F_{q}"
            if any(chi):
                vanishing += 1
                result.guard(report_label, lambda m=m, chi=chi, q=q: annihilation_check(point, m, chi, Fq(q)).vanishes)
            else:
                result.guard(
                    report_label,
                    lambda m=m, chi=chi, q=q: annihilation_check(point, m, chi, Fq(q)).dims == binomial_dims(2),
                )

    toric = LogPoint(IntegralMonoid(FinAbGroup.free(2), ((1, 0), (1, 1), (1, 2))))
    for chi in itertools.product(range(2), repeat=2):
        result.guard(f"S_χ for χ={chi} on cone((1,0),(1,2))", lambda chi=chi: bool(s_chi(toric, 2, chi).elements))
    result.details = {"nontrivial_characters": vanishing}
    return result


def _scalar(fq: Fq, m: int) -> GammaModule:
    return GammaModule(fq, 1, (fq.field([[fq.root_of_unity(m)]]),))


def _nearby_corpus() -> list[tuple[str, GammaModule, tuple[int, ...]]]:
    corpus = []
    for q in (3, 5):
        fq = Fq(q)
        singles = {f"J_{r}": jr_module(r, (1,), fq) for r in range(1, 5)}
        singles["K_2"] = km_module(2, fq)
        singles["K_3"] = km_module(3, fq)
        singles["J_2⊗ζ_2"] = tensor(jr_module(2, (1,), fq), _scalar(fq, 2))
        singles["J_2⊕K_2"] = direct_sum(jr_module(2, (1,), fq), km_module(2, fq))
        for name, module in singles.items():
            corpus.append((f"{name} over F_{q}", module, (1,)))
            if module.dim <= 2:
                corpus.append((f"{name} over F_{q}", module, (2,)))
        pairs = {
            "J_2⊠J_2": external_tensor(jr_module(2, (1,), fq), jr_module(2, (1,), fq)),
            "K_2⊠J_1": external_tensor(km_module(2, fq), jr_module(1, (1,), fq)),
            "J_2⊠ζ_2": external_tensor(jr_module(2, (1,), fq), _scalar(fq, 2)),
        }
        for name, module in pairs.items():
            corpus.append((f"{name} over F_{q}", module, (1, 1)))
            corpus.append((f"{name} over F_{q}", module, (1, 2)))
    fq = Fq(2)
    for r in (1, 2):
        corpus.append((f"J_{r} over F_2", jr_module(r, (1,), fq), (2,)))
    corpus.append(("J_3 over F_3", jr_module(3, (1,), Fq(3)), (3,)))
    return corpus


def nearby_suite(rng: random.Random) -> SuiteResult:
    """Stabilization of nearby cycles, unipotent vanishing and the reduction to restrict(M, m)."""
    result = SuiteResult("nearby", 9)
    stabilizations = {}
    for name, module, multiplicities in _nearby_corpus():
        label = f"{name}, n={multiplicities}"
        try:
            nearby = nearby_unipotent(module, multiplicities)
            m = quasi_unipotent_exponent(module)
            reduced = nearby_quasi_unipotent(module, multiplicities, m)
            direct = nearby_unipotent(restrict(module, m), multiplicities)
        except LogMonoidError as e:
            result.check(False, f"{label}: {e.kind}: {e}")
            continue
        stabilizations[label] = nearby.stabilization
        result.check(nearby.stabilization <= 8, f"{label}: stabilized only at r={nearby.stabilization}")
        result.check(reduced.dims == direct.dims, f"{label}: quasi-unipotent {reduced.dims} vs {direct.dims}")
        if module.n == 1:
            fq = module.field
            if is_unipotent(fq, module.gammas[0]):
                result.check(nearby.dims == (module.dim, 0), f"{label}: unipotent nearby cycles {nearby.dims}")
            result.check(
                nearby.dims[0] == unipotent_part(module).shape[0], f"{label}: H^0 is not the unipotent part"
            )
            result.guard(f"{label}: stable invariants", lambda module=module: stable_invariants_match(module))
    result.details = {"stabilization": stabilizations}
    return result


# Kummer multiplications and fields for the Čech windows
CECH_CASES = (([2], 3), ([2], 5), ([3], 3), ([3], 5), ([2], 2), ([5], 5))


def cech_suite(rng: random.Random) -> SuiteResult:
    """Windowed Čech exactness for [2], [3] and the wild case [p] over F_p."""
    result = SuiteResult("cech", 10)
    terms = {}
    for divisors, q in CECH_CASES:
        label = f"u={divisors} over F_{q}"

        def exact(divisors=divisors, q=q, label=label) -> bool:
            report = verify_cech_exact(
                kummer_data(_multiplication(divisors)), DEFAULT_CECH_DEGREE, DEFAULT_CECH_DEPTH, Fq(q)
            )
            terms[label] = list(report.terms)
            return report.exact

        result.guard(label, exact)
    result.details = {"degree": DEFAULT_CECH_DEGREE, "depth": DEFAULT_CECH_DEPTH, "terms": terms}
    return result


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


SUITES: dict[str, Callable[[random.Random], SuiteResult]] = {
    "lattice": lattice_suite,
    "cones": cones_suite,
    "saturation": saturation_suite,
    "amalgam": amalgam_suite,
    "standard": standard_suite,
    "kummer": kummer_suite,
    "covers": covers_suite,
    "koszul": koszul_suite,
    "nearby": nearby_suite,
    "cech": cech_suite,
}

# Suites that draw random input; the determinism suite reruns them
SEEDED_SUITES = ("lattice", "cones", "saturation", "amalgam", "kummer")

SUITE_NAMES = (*SUITES, "determinism", "all")


def run_suite(name: str, seed: int) -> SuiteResult:
    """Run one named suite with a generator derived from the seed and the name."""
    rng = random.Random(f"{seed}:{name}")
    logger.info(f"replicate: running {name}")
    start = time.perf_counter()
    result = SUITES[name](rng)
    result.seconds = time.perf_counter() - start
    status = "passed" if result.passed else f"FAILED ({len(result.failures)} failures)"
    logger.info(f"replicate: {name} {status} after {result.checks} checks in {result.seconds:.2f}s")
    return result


def determinism_suite(seed: int, first: dict[str, SuiteResult] | None = None) -> SuiteResult:
    """Rerun the seeded suites and compare their rendered reports byte for byte."""
    result = SuiteResult("determinism", 11)
    first = first or {}
    for name in SEEDED_SUITES:
        before = first.get(name) or run_suite(name, seed)
        after = run_suite(name, seed)
        result.check(
            to_json_string(before.as_dict()) == to_json_string(after.as_dict()),
            f"{name}: reports differ between runs with seed {seed}",
        )
    result.details = {"seed": seed, "suites": list(SEEDED_SUITES)}
    return result


def replicate(suite: str, seed: int) -> list[SuiteResult]:
    """
    Run a named suite, or every suite for "all".

    Args:
        suite: One of SUITE_NAMES
        seed: Seed for every randomized suite

    Returns:
        list[SuiteResult]: Results in suite order
    """
    if suite == "all":
        results = {name: run_suite(name, seed) for name in SUITES}
        determinism = determinism_suite(seed, results)
        return [*results.values(), determinism]
    if suite == "determinism":
        return [determinism_suite(seed)]
    return [run_suite(suite, seed)]
