"""
Monoid Algebras and Cech Complexes of Standard Kummer Covers
F_q[Q] arithmetic and the graded, windowed Cech-exactness verifier
"""

import itertools
import logging
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import galois

from .cones import dot, interior_functional, is_pointed
from .errors import InputError, PreconditionError, VerificationError
from .finite_field import Fq, column_space, is_zero, matrix_rank, null_space, same_subspace
from .kummer import KummerData
from .lattice import Vector
from .monoids import IntegralMonoid, membership

logger = logging.getLogger(__name__)


class MonoidAlgebra:
    """
    F_q[P] with a grading by an integer functional on the free part of P^gp.

    Args:
        monoid: Integral monoid P
        field: Coefficient field
        weights: Functional w; defaults to an interior functional of P's cone
    """

    def __init__(self, monoid: IntegralMonoid, field: Fq, weights: Sequence[int] | None = None):
        self.monoid = monoid
        self.field = field
        if weights is None:
            cone = monoid.cone()
            if not is_pointed(cone):
                raise PreconditionError("grading a monoid algebra needs a pointed cone")
            weights = interior_functional(cone)
        self.weights = tuple(int(w) for w in weights)
        if len(self.weights) != monoid.rank:
            raise InputError(f"{len(self.weights)} weights for a monoid of rank {monoid.rank}")

    def degree(self, x: Sequence[int]) -> int:
        return dot(self.weights, self.monoid.ambient.free_part(x))

    def graded_basis(self, bound: int) -> list[Vector]:
        """Monomials of degree <= bound, sorted by (degree, element)."""
        group = self.monoid.ambient
        for g in self.monoid.generators:
            if self.degree(g) < 0 or (self.degree(g) == 0 and group.element_order(g) is None):
                raise PreconditionError(f"generator {g} does not have positive degree", witness=g)
        zero = group.zero()
        found = {zero}
        queue = deque([zero])
        while queue:
            x = queue.popleft()
            for g in self.monoid.generators:
                y = group.add(x, g)
                if y not in found and self.degree(y) <= bound:
                    found.add(y)
                    queue.append(y)
        return sorted(found, key=lambda x: (self.degree(x), x))

    def element(self, terms: Mapping[Sequence[int], int]) -> "MonAlgElement":
        return MonAlgElement.from_terms(self, terms)

    def one(self) -> "MonAlgElement":
        return self.element({self.monoid.ambient.zero(): 1})

    def monomial(self, x: Sequence[int], coefficient: int = 1) -> "MonAlgElement":
        return self.element({tuple(x): coefficient})


@dataclass(frozen=True)
class MonAlgElement:
    """Finite F_q-combination of monomials χ^x; terms are sorted and nonzero."""

    algebra: MonoidAlgebra
    terms: tuple[tuple[Vector, int], ...]

    @classmethod
    def from_terms(cls, algebra: MonoidAlgebra, terms: Mapping[Sequence[int], int]) -> "MonAlgElement":
        gf = algebra.field.field
        group = algebra.monoid.ambient
        collected: dict[Vector, galois.FieldArray] = {}
        for key, c in terms.items():
            x = group.reduce(key)
            if not membership(algebra.monoid, x):
                raise InputError(f"{x} is not an element of the monoid")
            collected[x] = collected.get(x, gf(0)) + algebra.field.element(c)
        return cls(algebra, tuple(sorted((x, int(c)) for x, c in collected.items() if c != 0)))

    @property
    def support(self) -> dict[Vector, int]:
        return dict(self.terms)

    def _combine(self, other: "MonAlgElement") -> None:
        if other.algebra.monoid != self.algebra.monoid or other.algebra.field != self.algebra.field:
            raise InputError("elements of different monoid algebras")

    def __add__(self, other: "MonAlgElement") -> "MonAlgElement":
        self._combine(other)
        gf = self.algebra.field.field
        total: dict[Vector, galois.FieldArray] = {x: gf(c) for x, c in self.terms}
        for x, c in other.terms:
            total[x] = total.get(x, gf(0)) + gf(c)
        return MonAlgElement(self.algebra, tuple(sorted((x, int(c)) for x, c in total.items() if c != 0)))

    def __mul__(self, other: "MonAlgElement") -> "MonAlgElement":
        return multiply(self, other)


def multiply(a: MonAlgElement, b: MonAlgElement) -> MonAlgElement:
    """Product in F_q[P]: χ^x · χ^y = χ^{x+y}."""
    a._combine(b)
    gf = a.algebra.field.field
    group = a.algebra.monoid.ambient
    product: dict[Vector, galois.FieldArray] = {}
    for (x, c), (y, e) in itertools.product(a.terms, b.terms):
        key = group.add(x, y)
        product[key] = product.get(key, gf(0)) + gf(c) * gf(e)
    return MonAlgElement(a.algebra, tuple(sorted((x, int(c)) for x, c in product.items() if c != 0)))


# ---------------------------------------------------------------------------
# Cech complexes
# ---------------------------------------------------------------------------


def kummer_gradings(data: KummerData, field: Fq) -> tuple[MonoidAlgebra, tuple[int, ...]]:
    """
    Algebra of P graded by w_P, and the induced weights on Q.

    With e the exponent of G, every e·q lies in u(P^gp); q gets degree
    w_P(y) for u(y) = e·q, so a window of e·D on Q matches degree D on P.
    """
    u = data.hom
    p_algebra = MonoidAlgebra(u.source, field)
    q_group = u.target.ambient
    e = data.exponent
    weights = []
    for i in range(q_group.free_rank):
        basis_vector = tuple(e if k == i else 0 for k in range(q_group.length))
        y = u.group_hom.preimage(q_group.reduce(basis_vector))
        if y is None:
            raise VerificationError(f"{e}·{basis_vector} is not in the image of u")
        weights.append(p_algebra.degree(y))
    return p_algebra, tuple(weights)


@dataclass(eq=False)
class CechComplexSlice:
    """
    Degree-windowed slice of R[P] -> R[Q] -> R[Q] ⊗ R[G] -> ... up to depth s.

    `terms` lists dim R[P]_{≤D} followed by dim C^j for j = 0..s−1; the basis of C^j
    is (q; g_1..g_j) over the window monomials q and g_i ∈ G. `differentials`
    holds the augmentation, d^0..d^{s−2} and the trailing map d^{s−1}: C^{s−1} -> C^s.
    """

    data: KummerData
    field: Fq
    degree_bound: int
    depth: int
    character: Vector | None
    p_monomials: tuple[Vector, ...]
    q_monomials: tuple[Vector, ...]
    terms: tuple[int, ...]
    differentials: tuple[galois.FieldArray, ...]


def _cech_basis(monomials: Sequence[Vector], elements: Sequence[Vector], j: int) -> list[tuple]:
    return [(q, *gs) for q in monomials for gs in itertools.product(elements, repeat=j)]


def cech_slice(
    data: KummerData,
    degree_bound: int,
    depth: int,
    field: Fq,
    character: Sequence[int] | None = None,
) -> CechComplexSlice:
    """
    Build the windowed Cech complex of the standard cover of a Kummer datum.

    The face maps on (q; g_1..g_j) are δ_0 = (q; [q] − Σ g_i, g_1..g_j) and,
    for k >= 1, δ_k inserting 0 at position k; d = Σ (−1)^k δ_k.

    Args:
        data: Kummer datum u: P -> Q
        degree_bound: D, in units of P
        depth: s >= 1
        field: Coefficient field
        character: Restrict to monomials q with [q] = χ

    Returns:
        CechComplexSlice: With d∘d = 0 verified

    Raises:
        VerificationError: If a composite differential is nonzero
    """
    if depth < 1:
        raise InputError(f"Cech depth must be >= 1, got {depth}")
    if degree_bound < 0:
        raise InputError(f"degree bound must be nonnegative, got {degree_bound}")
    u = data.hom
    group = data.cokernel_group
    proj = data.projection
    e = data.exponent
    chi = group.reduce(character) if character is not None else None

    p_algebra, q_weights = kummer_gradings(data, field)
    q_algebra = MonoidAlgebra(u.target, field, q_weights)
    q_monomials = [
        q for q in q_algebra.graded_basis(e * degree_bound) if chi is None or proj.apply(q) == chi
    ]
    p_monomials = []
    if chi is None or not any(chi):
        p_monomials = p_algebra.graded_basis(degree_bound)
    elements = list(group.elements())

    bases = [_cech_basis(q_monomials, elements, j) for j in range(depth + 1)]
    index = [{b: i for i, b in enumerate(basis)} for basis in bases]

    q_index = {q: i for i, q in enumerate(q_monomials)}
    aug_rows = [[0] * len(p_monomials) for _ in q_monomials]
    for col, p in enumerate(p_monomials):
        aug_rows[q_index[u.apply(p)]][col] = 1
    differentials = [field.integer_matrix(aug_rows, len(p_monomials))]

    zero = group.zero()
    for j in range(depth):
        rows = [[0] * len(bases[j]) for _ in bases[j + 1]]
        for col, (q, *gs) in enumerate(bases[j]):
            first = group.sub(proj.apply(q), _sum(group, gs))
            rows[index[j + 1][(q, first, *gs)]][col] += 1
            for k in range(1, j + 2):
                face = (q, *gs[: k - 1], zero, *gs[k - 1 :])
                rows[index[j + 1][face]][col] += (-1) ** k
        differentials.append(field.integer_matrix(rows, len(bases[j])))

    for i in range(len(differentials) - 1):
        if not is_zero(differentials[i + 1] @ differentials[i]):
            raise VerificationError(f"Cech differentials fail d∘d = 0 at position {i}")

    terms = (len(p_monomials),) + tuple(len(b) for b in bases[:depth])
    logger.debug(f"Cech slice χ={chi} D={degree_bound} s={depth}: terms {terms}")
    return CechComplexSlice(
        data, field, degree_bound, depth, chi, tuple(p_monomials), tuple(q_monomials), terms, tuple(differentials)
    )


def _sum(group, elements: Sequence[Vector]) -> Vector:
    total = group.zero()
    for g in elements:
        total = group.add(total, g)
    return total


def slice_homology(cech: CechComplexSlice) -> tuple[int, ...]:
    """dim H at every term of the augmented slice: R[P]_{≤D}, C^0, ..., C^{s−1}."""
    maps = cech.differentials
    ranks = [matrix_rank(m) for m in maps]
    dims = []
    for i, size in enumerate(cech.terms):
        incoming = ranks[i - 1] if i > 0 else 0
        dims.append(size - ranks[i] - incoming)
    return tuple(dims)


def character_slices(
    data: KummerData, degree_bound: int, depth: int, field: Fq
) -> dict[Vector, CechComplexSlice]:
    """Per-character slices, one per element of G, in element order."""
    return {
        chi: cech_slice(data, degree_bound, depth, field, character=chi) for chi in data.cokernel_group.elements()
    }


@dataclass(frozen=True)
class CechReport:
    """Outcome of a windowed exactness check."""

    terms: tuple[int, ...]
    homology: tuple[int, ...]
    h0_correct: bool
    higher_vanish: bool
    decomposition_consistent: bool
    degree_bound: int
    depth: int

    @property
    def exact(self) -> bool:
        return self.h0_correct and self.higher_vanish and self.decomposition_consistent


def verify_cech_exact(data: KummerData, degree_bound: int, depth: int, field: Fq) -> CechReport:
    """
    Check exactness of the Cech complex within the degree window.

    H^0 must equal the image of R[P]_{≤D} (the augmentation is injective onto
    ker d^0), and H^j must vanish for 1 <= j <= s−1. The per-character slices
    must add up to the full slice in every term and in homology.
    """
    full = cech_slice(data, degree_bound, depth, field)
    homology = slice_homology(full)

    augmentation, d0 = full.differentials[0], full.differentials[1]
    image = column_space(field, augmentation)
    kernel = null_space(field, d0)
    h0_correct = matrix_rank(augmentation) == full.terms[0] and same_subspace(field, image, kernel)
    higher_vanish = not any(homology[2:])

    slices = character_slices(data, degree_bound, depth, field)
    slice_terms = [sum(s.terms[i] for s in slices.values()) for i in range(len(full.terms))]
    slice_homs = [sum(slice_homology(s)[i] for s in slices.values()) for i in range(len(full.terms))]
    consistent = tuple(slice_terms) == full.terms and tuple(slice_homs) == homology

    report = CechReport(full.terms, homology, h0_correct, higher_vanish, consistent, degree_bound, depth)
    logger.info(f"Cech check D={degree_bound} s={depth} over F_{field.order}: terms {full.terms}, exact={report.exact}")
    return report
