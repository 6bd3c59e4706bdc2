"""
Rational Polyhedral Cones
Duality, exact membership, lineality spaces and Hilbert bases of lattice cones
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from math import gcd, lcm

from sympy import Matrix, ilcm

from .constants import HILBERT_CANDIDATE_LIMIT
from .errors import BoundExceededError, InputError, PreconditionError
from .lattice import IntMatrix, Vector, integer_kernel, rank, smith_normal_form

logger = logging.getLogger(__name__)


def primitive(v: Sequence[int]) -> Vector:
    """Divide a nonzero vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise InputError("the zero vector has no primitive form")
    return tuple(x // g for x in v)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


@dataclass(frozen=True)
class RationalCone:
    """
    Cone generated by finitely many primitive integer rays in Q^d.

    Rays are stored sorted; the empty ray set is the zero cone.
    """

    ambient_dim: int
    rays: tuple[Vector, ...] = ()

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        for r in rays:
            if len(r) != self.ambient_dim:
                raise InputError(f"ray {r} does not live in dimension {self.ambient_dim}")
            if primitive(r) != r:
                raise InputError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise InputError("duplicate rays")
        object.__setattr__(self, "rays", tuple(sorted(rays)))

    @classmethod
    def from_generators(cls, dim: int, generators: Sequence[Sequence[int]]) -> "RationalCone":
        """Cone spanned by arbitrary integer vectors (zeros dropped, rays made primitive)."""
        rays = {primitive(g) for g in generators if any(g)}
        return cls(dim, tuple(rays))

    def __len__(self) -> int:
        return len(self.rays)


def dual_cone(cone: RationalCone) -> RationalCone:
    """
    Dual cone {y : <y, x> >= 0 for all x in the cone}.

    Args:
        cone: Any rational cone (pointed or not, any dimension)

    Returns:
        RationalCone: Generators of the dual, lineality directions included in both signs
    """
    d = cone.ambient_dim
    rays = list(cone.rays)
    if not rays:
        units = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
        return RationalCone.from_generators(d, units + [tuple(-x for x in e) for e in units])

    orth = integer_kernel(IntMatrix.from_rows(rays, d))
    k = d - len(orth)
    gens: list[Vector] = list(orth) + [tuple(-x for x in v) for v in orth]

    for subset in itertools.combinations(rays, k - 1):
        rows = list(subset) + list(orth)
        m = IntMatrix.from_rows(rows, d) if rows else IntMatrix.zeros(0, d)
        ker = integer_kernel(m)
        if len(ker) != 1:
            continue
        y = ker[0]
        signs = [dot(y, r) for r in rays]
        if all(s >= 0 for s in signs):
            gens.append(y)
        elif all(s <= 0 for s in signs):
            gens.append(tuple(-x for x in y))

    return RationalCone.from_generators(d, gens)


def contains(cone: RationalCone, v: Sequence[int]) -> bool:
    """Exact membership of an integer vector, via the dual inequalities."""
    if len(v) != cone.ambient_dim:
        raise InputError(f"vector of length {len(v)} for a cone in dimension {cone.ambient_dim}")
    return satisfies(dual_cone(cone).rays, v)


def satisfies(normals: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """True if <n, v> >= 0 for every normal."""
    return all(dot(n, v) >= 0 for n in normals)


def lineality_space(cone: RationalCone) -> tuple[Vector, ...]:
    """Lattice basis of C ∩ (−C)."""
    normals = dual_cone(cone).rays
    if not normals:
        return tuple(tuple(1 if i == j else 0 for i in range(cone.ambient_dim)) for j in range(cone.ambient_dim))
    return tuple(integer_kernel(IntMatrix.from_rows(normals, cone.ambient_dim)))


def is_pointed(cone: RationalCone) -> bool:
    return not lineality_space(cone)


def interior_functional(cone: RationalCone) -> Vector:
    """Integer functional strictly positive on every nonzero point of a pointed cone."""
    normals = dual_cone(cone).rays
    return tuple(sum(n[i] for n in normals) for i in range(cone.ambient_dim))


def parallelotope_points(rays: Sequence[Sequence[int]]) -> list[Vector]:
    """
    Lattice points of the half-open parallelotope {Σ λ_i r_i : 0 <= λ_i < 1}.

    Args:
        rays: Linearly independent integer vectors of a common length

    Returns:
        list[Vector]: Sorted points; their number is the index of the rays' span
            in the saturated lattice
    """
    if not rays:
        return []
    d = len(rays[0])
    b = IntMatrix.from_columns([tuple(r) for r in rays], d)
    _, diag_matrix, v = smith_normal_form(b)
    deltas = diag_matrix.diagonal()
    if any(x == 0 for x in deltas):
        raise InputError("parallelotope rays must be linearly independent")

    count = 1
    for x in deltas:
        count *= x
    if count > HILBERT_CANDIDATE_LIMIT:
        raise BoundExceededError(
            "fundamental parallelotope too large", bound=HILBERT_CANDIDATE_LIMIT, requested=count
        )

    scale = lcm(*deltas)
    points = []
    for a in itertools.product(*(range(x) for x in deltas)):
        lam = [c % scale for c in v.apply([ai * (scale // x) for ai, x in zip(a, deltas, strict=True)])]
        points.append(tuple(c // scale for c in b.apply(lam)))
    return sorted(points)


def hilbert_basis(cone: RationalCone) -> list[Vector]:
    """
    Minimal generating set of the lattice points of a pointed cone.

    Covers the cone by simplicial subcones spanned by independent rays, collects
    the lattice points of their fundamental parallelotopes together with the rays,
    and keeps the candidates that are not a candidate plus a nonzero cone point.

    Args:
        cone: Pointed rational cone

    Returns:
        list[Vector]: Sorted Hilbert basis (empty for the zero cone)

    Raises:
        PreconditionError: If the cone contains a line
    """
    if not cone.rays:
        return []
    lineality = lineality_space(cone)
    if lineality:
        raise PreconditionError("hilbert_basis needs a pointed cone", witness=lineality[0])

    d = cone.ambient_dim
    normals = dual_cone(cone).rays
    k = rank(IntMatrix.from_rows(cone.rays, d))
    candidates = set(cone.rays)
    for subset in itertools.combinations(cone.rays, k):
        if rank(IntMatrix.from_rows(subset, d)) < k:
            continue
        candidates.update(p for p in parallelotope_points(subset) if any(p))
        if len(candidates) > HILBERT_CANDIDATE_LIMIT:
            raise BoundExceededError(
                "too many Hilbert basis candidates", bound=HILBERT_CANDIDATE_LIMIT
            )

    ordered = sorted(candidates)
    basis = [
        x
        for x in ordered
        if not any(y != x and satisfies(normals, [a - b for a, b in zip(x, y, strict=True)]) for y in ordered)
    ]
    logger.debug(f"Hilbert basis: {len(ordered)} candidates -> {len(basis)} elements")
    return basis


def nonnegative_combination(
    rays: Sequence[Sequence[int]], v: Sequence[int]
) -> tuple[int, tuple[int, ...]] | None:
    """
    Write a positive multiple of v as a nonnegative integer combination of rays.

    Returns:
        tuple | None: (N, c) with N >= 1 and Σ c_i r_i = N·v, or None if v is not in the cone
    """
    n = len(rays)
    if not any(v):
        return 1, (0,) * n
    if not rays:
        return None
    d = len(v)
    k = rank(IntMatrix.from_rows(rays, d))
    target = Matrix(list(v))
    for subset in itertools.combinations(range(n), k):
        b = Matrix([[rays[i][row] for i in subset] for row in range(d)])
        if b.rank() < k:
            continue
        try:
            solution, params = b.gauss_jordan_solve(target)
        except ValueError:
            continue
        if params.shape[0]:
            continue
        coeffs = list(solution)
        if any(c < 0 for c in coeffs):
            continue
        scale = 1
        for c in coeffs:
            scale = ilcm(scale, c.q)
        full = [0] * n
        for i, c in zip(subset, coeffs, strict=True):
            full[i] = int(c * scale)
        return int(scale), tuple(full)
    return None
