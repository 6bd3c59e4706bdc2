"""
Cohomology of Γ ≅ Ẑ(1)^n on Finite Modules
Koszul complexes, character and monodromy modules, unipotent and quasi-unipotent nearby cycles
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from math import comb, gcd, lcm

import galois
from sympy import divisors

from .config import resolve_r_max
from .cones import dual_cone, parallelotope_points, satisfies
from .constants import SHAPIRO_CHECK_DEPTH
from .covers import LogPoint
from .errors import BoundExceededError, InputError, PreconditionError, VerificationError
from .finite_field import (
    Fq,
    column_space,
    equal,
    intersect,
    is_zero,
    kron,
    matrix_power,
    matrix_rank,
    null_space,
    row_basis,
    same_subspace,
    stack,
)
from .lattice import IntMatrix, Vector, rank

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class GammaModule:
    """
    Finite-dimensional F_q-representation of Ẑ^n given by commuting invertible operators.

    Attributes:
        field: Coefficient field
        dim: Dimension d of the underlying vector space
        gammas: Images of the topological generators γ_1..γ_n, each d×d
    """

    field: Fq
    dim: int
    gammas: tuple[galois.FieldArray, ...] = ()

    def __post_init__(self):
        self.gammas = tuple(self.gammas)
        for j, g in enumerate(self.gammas):
            if g.shape != (self.dim, self.dim):
                raise InputError(f"γ_{j + 1} has shape {g.shape}, expected ({self.dim}, {self.dim})")
            if matrix_rank(g) != self.dim:
                raise InputError(f"γ_{j + 1} is not invertible")
        for (i, a), (j, b) in itertools.combinations(enumerate(self.gammas), 2):
            if not equal(a @ b, b @ a):
                raise InputError(f"γ_{i + 1} and γ_{j + 1} do not commute")

    @classmethod
    def from_rows(cls, field: Fq, dim: int, gammas: Sequence[Sequence[Sequence[int]]]) -> "GammaModule":
        return cls(field, dim, tuple(field.matrix(g, dim) for g in gammas))

    @classmethod
    def trivial(cls, field: Fq, n: int, dim: int = 1) -> "GammaModule":
        return cls(field, dim, tuple(field.identity(dim) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.gammas)


def _require_compatible(first: GammaModule, second: GammaModule) -> None:
    if first.field != second.field:
        raise InputError(f"modules over F_{first.field.order} and F_{second.field.order}")


def tensor(first: GammaModule, second: GammaModule) -> GammaModule:
    """M1 ⊗ M2 with the diagonal action; e_a ⊗ e_b has index a·dim(M2) + b."""
    _require_compatible(first, second)
    if first.n != second.n:
        raise InputError(f"tensor of modules for Ẑ^{first.n} and Ẑ^{second.n}")
    fq = first.field
    gammas = tuple(kron(fq, a, b) for a, b in zip(first.gammas, second.gammas, strict=True))
    return GammaModule(fq, first.dim * second.dim, gammas)


def external_tensor(first: GammaModule, second: GammaModule) -> GammaModule:
    """M1 ⊠ M2 as a module for Ẑ^{n1} × Ẑ^{n2}."""
    _require_compatible(first, second)
    fq = first.field
    left = tuple(kron(fq, g, fq.identity(second.dim)) for g in first.gammas)
    right = tuple(kron(fq, fq.identity(first.dim), g) for g in second.gammas)
    return GammaModule(fq, first.dim * second.dim, left + right)


def direct_sum(first: GammaModule, second: GammaModule) -> GammaModule:
    """M1 ⊕ M2 with block-diagonal operators."""
    _require_compatible(first, second)
    if first.n != second.n:
        raise InputError(f"direct sum of modules for Ẑ^{first.n} and Ẑ^{second.n}")
    fq = first.field
    d1, d = first.dim, first.dim + second.dim
    gammas = []
    for a, b in zip(first.gammas, second.gammas, strict=True):
        g = fq.zeros(d, d)
        g[:d1, :d1] = a
        g[d1:, d1:] = b
        gammas.append(g)
    return GammaModule(fq, d, tuple(gammas))


def restrict(module: GammaModule, m: int) -> GammaModule:
    """Restriction to the subgroup mẐ^n: γ_j ↦ γ_j^m."""
    if m < 1:
        raise InputError(f"restriction index must be >= 1, got {m}")
    fq = module.field
    return GammaModule(fq, module.dim, tuple(matrix_power(fq, g, m) for g in module.gammas))


def jordan_block(fq: Fq, r: int) -> galois.FieldArray:
    """J_r = I + N with N e_b = e_{b−1}."""
    j = fq.identity(r)
    for b in range(1, r):
        j[b - 1, b] = 1
    return j


def jr_module(r: int, multiplicities: Sequence[int], fq: Fq) -> GammaModule:
    """
    Unipotent local system J_r with γ_j acting by J_r^{n_j}.

    Args:
        r: Rank, at least 1
        multiplicities: Exponents n_1..n_n (nonnegative)
        fq: Coefficient field
    """
    if r < 1:
        raise InputError(f"J_r needs r >= 1, got {r}")
    if any(k < 0 for k in multiplicities):
        raise InputError(f"multiplicities must be nonnegative, got {tuple(multiplicities)}")
    j = jordan_block(fq, r)
    return GammaModule(fq, r, tuple(matrix_power(fq, j, k) for k in multiplicities))


def km_module(m: int, fq: Fq, exponents: Sequence[int] = (1,)) -> GammaModule:
    """K_m: γ_j acts by the e_j-th power of the m-cycle e_i ↦ e_{i+1 mod m}."""
    if m < 1:
        raise InputError(f"K_m needs m >= 1, got {m}")
    cycle = fq.zeros(m, m)
    for i in range(m):
        cycle[(i + 1) % m, i] = 1
    return GammaModule(fq, m, tuple(matrix_power(fq, cycle, k % m) for k in exponents))


def character_module(point: LogPoint, m: int, chi: Sequence[int], fq: Fq) -> GammaModule:
    """
    One-dimensional module of a character χ ∈ Hom(P^gp, Z/m).

    Args:
        point: Log point with P^gp = Z^r
        m: Level; m must divide q − 1
        chi: Values χ(e_1)..χ(e_r) modulo m
        fq: Coefficient field

    Returns:
        GammaModule: γ_j acts by ζ_m^{χ(e_j)}

    Raises:
        PreconditionError: If F_q has no primitive m-th root of unity
    """
    if len(chi) != point.rank:
        raise InputError(f"character needs {point.rank} values, got {len(chi)}")
    zeta = fq.root_of_unity(m)
    gammas = tuple(fq.field([[zeta ** (int(c) % m)]]) for c in chi)
    return GammaModule(fq, 1, gammas)


def character_order(m: int, chi: Sequence[int]) -> int:
    g = m
    for c in chi:
        g = gcd(g, int(c))
    return m // g


# ---------------------------------------------------------------------------
# Koszul complex
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class KoszulComplex:
    """
    C^i = ⊕_{|J| = i} M with d built from the operators γ_j − 1.

    The summands of C^i follow the lexicographic order of the i-subsets J;
    `differentials[i]` maps C^i to C^{i+1} acting on column vectors.
    """

    module: GammaModule
    subsets: tuple[tuple[tuple[int, ...], ...], ...]
    differentials: tuple[galois.FieldArray, ...]

    @property
    def term_dims(self) -> tuple[int, ...]:
        return tuple(self.module.dim * len(s) for s in self.subsets)


def koszul_complex(module: GammaModule) -> KoszulComplex:
    """
    Build the Koszul complex of Γ acting on M and verify d∘d = 0.

    Raises:
        VerificationError: If some composite differential is nonzero
    """
    fq, d, n = module.field, module.dim, module.n
    subsets = tuple(tuple(itertools.combinations(range(n), i)) for i in range(n + 1))
    shifted = [g - fq.identity(d) for g in module.gammas]

    differentials = []
    for i in range(n):
        source = {s: k for k, s in enumerate(subsets[i])}
        matrix = fq.zeros(d * len(subsets[i + 1]), d * len(subsets[i]))
        for row, target in enumerate(subsets[i + 1]):
            for pos, j in enumerate(target):
                col = source[target[:pos] + target[pos + 1 :]]
                block = shifted[j] if pos % 2 == 0 else -shifted[j]
                matrix[row * d : (row + 1) * d, col * d : (col + 1) * d] = block
        differentials.append(matrix)

    for i in range(n - 1):
        if not is_zero(differentials[i + 1] @ differentials[i]):
            raise VerificationError(f"Koszul differentials d^{i + 1}∘d^{i} do not vanish")
    return KoszulComplex(module, subsets, tuple(differentials))


@dataclass(eq=False)
class KoszulCohomology:
    """Dimensions and representative bases (rows, in C^i coordinates) of H^0..H^n."""

    dims: tuple[int, ...]
    bases: tuple[galois.FieldArray, ...] = field(repr=False)

    def dimension(self, i: int) -> int:
        """dim H^i, zero outside 0..n."""
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.dims))


def _cocycles(complex_: KoszulComplex, i: int) -> galois.FieldArray:
    fq = complex_.module.field
    size = complex_.term_dims[i]
    if i == len(complex_.differentials):
        return fq.identity(size)
    return null_space(fq, complex_.differentials[i])


def _coboundaries(complex_: KoszulComplex, i: int) -> galois.FieldArray:
    fq = complex_.module.field
    if i == 0:
        return fq.zeros(0, complex_.term_dims[0])
    return column_space(fq, complex_.differentials[i - 1])


def _complement(fq: Fq, base: galois.FieldArray, candidates: galois.FieldArray) -> galois.FieldArray:
    chosen = []
    current = base
    for v in candidates:
        trial = stack(fq, [current, v.reshape(1, -1)], candidates.shape[1])
        if matrix_rank(trial) > matrix_rank(current):
            chosen.append(v.reshape(1, -1))
            current = trial
    return stack(fq, chosen, candidates.shape[1])


def koszul_cohomology(module: GammaModule) -> KoszulCohomology:
    """
    H^i(Γ, M) for i = 0..n via the Koszul complex.

    Args:
        module: Module with commuting invertible operators

    Returns:
        KoszulCohomology: dim H^i = dim C^i − rank d^i − rank d^{i−1}, with
            cocycle representatives completing a basis of the coboundaries

    Raises:
        VerificationError: If d∘d ≠ 0 or the Euler characteristic is nonzero for n >= 1
    """
    complex_ = koszul_complex(module)
    fq = module.field
    dims, bases = [], []
    for i in range(module.n + 1):
        z = _cocycles(complex_, i)
        b = _coboundaries(complex_, i)
        basis = _complement(fq, b, z)
        dims.append(basis.shape[0])
        bases.append(basis)
    result = KoszulCohomology(tuple(dims), tuple(bases))
    if module.n >= 1 and result.euler_characteristic != 0:
        raise VerificationError(f"Koszul cohomology {result.dims} has nonzero Euler characteristic")
    logger.debug(f"Koszul cohomology of a {module.dim}-dim module for Ẑ^{module.n}: {result.dims}")
    return result


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnnihilationReport:
    """Vanishing of H^i for a nontrivial character: ζ − 1 is a unit, so it kills everything."""

    applicable: bool
    order: int
    dims: tuple[int, ...]

    @property
    def vanishes(self) -> bool:
        return not any(self.dims)


def annihilation_check(point: LogPoint, m: int, chi: Sequence[int], fq: Fq) -> AnnihilationReport:
    """
    Cohomology of a character module, asserting vanishing when χ is nontrivial.

    Raises:
        VerificationError: If a nontrivial character has nonzero cohomology
    """
    order = character_order(m, chi)
    dims = koszul_cohomology(character_module(point, m, chi, fq)).dims
    report = AnnihilationReport(order > 1, order, dims)
    if report.applicable and not report.vanishes:
        raise VerificationError(f"character of order {order} has cohomology {dims}")
    return report


@dataclass(frozen=True)
class CharacterSupport:
    """S_χ in level coordinates (x stands for x/m) and the verified test region."""

    level: int
    character: Vector
    elements: tuple[Vector, ...]
    region: int


def s_chi(point: LogPoint, m: int, chi: Sequence[int]) -> CharacterSupport:
    """
    Minimal elements of π⁻¹(χ) ∩ (1/m)P under divisibility by P.

    Every element of π⁻¹(χ) reduces, by subtracting m times lattice points of a
    simplicial subcone, to a point of the fundamental parallelotope of the scaled
    rays; those points are the candidates.

    Args:
        point: Log point with toric P
        m: Level
        chi: Class in ((1/m)P)^gp/P^gp ≅ (Z/m)^r

    Returns:
        CharacterSupport: With π⁻¹(χ) ∩ (1/m)P = S_χ + P checked on a box

    Raises:
        VerificationError: If the decomposition fails on the test box
    """
    r = point.rank
    if m < 1:
        raise InputError(f"level must be >= 1, got {m}")
    if len(chi) != r:
        raise InputError(f"character needs {r} coordinates, got {len(chi)}")
    target = tuple(int(c) % m for c in chi)
    base = point.characteristic
    if r == 0:
        return CharacterSupport(m, target, ((),), 0)

    cone = base.cone()
    normals = dual_cone(cone).rays
    k = rank(IntMatrix.from_rows(cone.rays, r))
    candidates = set()
    for subset in itertools.combinations(cone.rays, k):
        if rank(IntMatrix.from_rows(subset, r)) < k:
            continue
        scaled = [tuple(m * x for x in ray) for ray in subset]
        candidates.update(p for p in parallelotope_points(scaled) if _residue(p, m) == target)

    def minimal(x: Vector) -> bool:
        return not any(satisfies(normals, [a - m * b for a, b in zip(x, g, strict=True)]) for g in base.generators)

    elements = tuple(sorted(x for x in candidates if minimal(x)))
    region = m * (2 + max(abs(c) for x in elements for c in x))
    _verify_support(normals, m, target, elements, region)
    logger.debug(f"S_χ for χ={target} at level {m}: {len(elements)} elements")
    return CharacterSupport(m, target, elements, region)


def _residue(x: Sequence[int], m: int) -> Vector:
    return tuple(c % m for c in x)


def _verify_support(
    normals: Sequence[Vector], m: int, target: Vector, elements: Sequence[Vector], region: int
) -> None:
    for x in itertools.product(range(-region, region + 1), repeat=len(target)):
        if _residue(x, m) != target or not satisfies(normals, x):
            continue
        covered = any(satisfies(normals, [(a - b) // m for a, b in zip(x, s, strict=True)]) for s in elements)
        if not covered:
            raise VerificationError(f"{x}/{m} lies over χ but not in S_χ + P")


# ---------------------------------------------------------------------------
# Unipotence
# ---------------------------------------------------------------------------


def is_unipotent(fq: Fq, gamma: galois.FieldArray) -> bool:
    d = gamma.shape[0]
    return is_zero(matrix_power(fq, gamma - fq.identity(d), d)) if d else True


def unipotent_part(module: GammaModule) -> galois.FieldArray:
    """
    Largest subspace on which every γ_j − 1 is nilpotent, as basis rows.

    It is the intersection of the generalized 1-eigenspaces ker (γ_j − 1)^d.
    """
    fq, d = module.field, module.dim
    space = fq.identity(d)
    for g in module.gammas:
        space = intersect(fq, space, null_space(fq, matrix_power(fq, g - fq.identity(d), d)))
    return space


def quasi_unipotent_exponent(module: GammaModule) -> int:
    """
    Minimal m >= 1 with every γ_j^m unipotent.

    Eigenvalues live in F_{q^k} with k <= d, so m divides lcm(q^k − 1).

    Raises:
        PreconditionError: If no such m exists
    """
    fq, d = module.field, module.dim
    bound = lcm(*(fq.order**k - 1 for k in range(1, d + 1))) if d else 1
    for m in divisors(bound):
        if all(is_unipotent(fq, matrix_power(fq, g, m)) for g in module.gammas):
            return int(m)
    raise PreconditionError("module is not quasi-unipotent")


# ---------------------------------------------------------------------------
# Nearby cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NearbyCycles:
    """
    Stable dimensions of H^i(Γ, M[W]) and where they stabilized.

    `raw` records dim H^i(Γ, M ⊗ J_r) for each r visited.
    """

    dims: tuple[int, ...]
    stabilization: int
    exponent: int
    raw: tuple[tuple[int, ...], ...]


def _embed_cocycles(z: galois.FieldArray, fq: Fq, blocks: int, d: int, r: int, big: int) -> galois.FieldArray:
    """Push vectors of ⊕ (M ⊗ J_r) into ⊕ (M ⊗ J_big) along e_b ↦ e_b."""
    out = fq.zeros(z.shape[0], blocks * d * big)
    for block in range(blocks):
        for a in range(d):
            src = block * d * r + a * r
            dst = block * d * big + a * big
            out[:, dst : dst + r] = z[:, src : src + r]
    return out


class _TowerCache:
    """Koszul data of M ⊗ J_r, computed once per r within one call."""

    def __init__(self, module: GammaModule, multiplicities: Sequence[int], slack: int):
        self.module = module
        self.multiplicities = tuple(multiplicities)
        self.slack = slack
        self._complexes: dict[int, KoszulComplex] = {}

    def complex(self, r: int) -> KoszulComplex:
        if r not in self._complexes:
            twisted = tensor(self.module, jr_module(r, self.multiplicities, self.module.field))
            self._complexes[r] = koszul_complex(twisted)
        return self._complexes[r]

    def raw_dims(self, r: int) -> tuple[int, ...]:
        c = self.complex(r)
        n = self.module.n
        ranks = [matrix_rank(dm) for dm in c.differentials]
        return tuple(
            c.term_dims[i] - (ranks[i] if i < n else 0) - (ranks[i - 1] if i > 0 else 0) for i in range(n + 1)
        )

    def image_dims(self, r: int) -> tuple[int, ...]:
        """Rank of H^i(M ⊗ J_r) → H^i(M ⊗ J_R), R = 2r + slack, in every degree."""
        fq, d, n = self.module.field, self.module.dim, self.module.n
        big_r = 2 * r + self.slack
        small, big = self.complex(r), self.complex(big_r)
        dims = []
        for i in range(n + 1):
            blocks = len(small.subsets[i])
            z = _embed_cocycles(_cocycles(small, i), fq, blocks, d, r, big_r)
            b = _coboundaries(big, i)
            dims.append(matrix_rank(stack(fq, [z, b], blocks * d * big_r)) - matrix_rank(b))
        return tuple(dims)


def prime_to_p_parts(p: int, multiplicities: Sequence[int]) -> tuple[int, ...]:
    """Strip every factor of p from each multiplicity; zero stays zero."""
    parts = []
    for k in multiplicities:
        while k and k % p == 0:
            k //= p
        parts.append(k)
    return tuple(parts)


def _check_multiplicities(module: GammaModule, multiplicities: Sequence[int]) -> None:
    if len(multiplicities) != module.n:
        raise InputError(f"{len(multiplicities)} multiplicities for a module over Ẑ^{module.n}")
    if any(k < 0 for k in multiplicities):
        raise InputError(f"multiplicities must be nonnegative, got {tuple(multiplicities)}")
    if module.n and not any(multiplicities):
        raise PreconditionError("all multiplicities are zero: J_r acts trivially and the tower never stabilizes")


def nearby_unipotent(
    module: GammaModule, multiplicities: Sequence[int], r_max: int | None = None
) -> NearbyCycles:
    """
    Unipotent nearby cycles: colim_r H^i(Γ, M ⊗ J_r^{(n)}).

    The colimit is read off from the images of H^i(M ⊗ J_r) in H^i(M ⊗ J_R)
    along the inclusions J_r ⊂ J_R, with R = 2r + dim M + 1. In
    characteristic p each n_j is replaced by its prime-to-p part first: with
    p | n_j the operator on J_r splits into p Jordan chains and the colimit
    would count each of them. The colimit has stabilized once r and r + 1
    give the same image dimensions in every degree.

    Args:
        module: Quasi-unipotent module
        multiplicities: Exponents n_j of J_r
        r_max: Stabilization limit (LOGMONOID_R_MAX when omitted)

    Returns:
        NearbyCycles: Stable dimensions and the first r where they repeat

    Raises:
        PreconditionError: If some γ_j is not quasi-unipotent
        BoundExceededError: If no stabilization happens by r_max
    """
    _check_multiplicities(module, multiplicities)
    limit = resolve_r_max(r_max)
    exponent = quasi_unipotent_exponent(module)
    reduced = prime_to_p_parts(module.field.characteristic, multiplicities)
    if reduced != tuple(multiplicities):
        logger.debug(f"nearby cycles: multiplicities {tuple(multiplicities)} reduced to {reduced}")
    tower = _TowerCache(module, reduced, slack=module.dim + 1)

    r = 1
    raw = [tower.raw_dims(r)]
    previous = tower.image_dims(r)
    while r + 1 <= limit:
        current = tower.image_dims(r + 1)
        raw.append(tower.raw_dims(r + 1))
        logger.debug(f"nearby cycles: r={r} images {previous}, r={r + 1} images {current}")
        if current == previous:
            logger.info(f"nearby cycles stabilized at r={r}: {current}")
            return NearbyCycles(current, r, exponent, tuple(raw))
        previous = current
        r += 1
    raise BoundExceededError("nearby cycles did not stabilize", bound=limit)


def stable_invariants_in_module(module: GammaModule, r: int) -> galois.FieldArray:
    """
    Image of H^0(M ⊗ J_r) in M under the coefficient of e_0 (n = 1).

    An invariant Σ x_b ⊗ e_b is determined by x_0, which ranges over
    ker (γ − 1)^r; for r >= dim M this is the unipotent part.
    """
    if module.n != 1:
        raise InputError("stable invariants are defined for one operator")
    fq, d = module.field, module.dim
    kernel = null_space(fq, tensor(module, jr_module(r, (1,), fq)).gammas[0] - fq.identity(d * r))
    if kernel.shape[0] == 0:
        return fq.zeros(0, d)
    return row_basis(fq, kernel[:, [a * r for a in range(d)]])


def stable_invariants_match(module: GammaModule, r: int | None = None) -> bool:
    """Compare the stable invariants with unipotent_part as subspaces."""
    fq = module.field
    return same_subspace(fq, stable_invariants_in_module(module, r or max(module.dim, 1)), unipotent_part(module))


@dataclass(frozen=True)
class ShapiroCheck:
    """Raw Koszul dimensions of M ⊗ J_r ⊗ K_m against restrict(M ⊗ J_r, m), for r = 1..depth."""

    m: int
    induced: tuple[tuple[int, ...], ...]
    restricted: tuple[tuple[int, ...], ...]

    @property
    def passed(self) -> bool:
        return self.induced == self.restricted


def shapiro_check(module: GammaModule, m: int, depth: int = SHAPIRO_CHECK_DEPTH) -> ShapiroCheck:
    """H^i(Ẑ, X ⊗ K_m) = H^i(mẐ, X) for X = M ⊗ J_r (n = 1)."""
    if module.n != 1:
        raise InputError("the K_m cross-check needs a module for Ẑ")
    fq = module.field
    km = km_module(m, fq)
    induced, restricted = [], []
    for r in range(1, depth + 1):
        x = tensor(module, jr_module(r, (1,), fq))
        induced.append(koszul_cohomology(tensor(x, km)).dims)
        restricted.append(koszul_cohomology(restrict(x, m)).dims)
    return ShapiroCheck(m, tuple(induced), tuple(restricted))


@dataclass(frozen=True)
class QuasiUnipotentNearby:
    """Quasi-unipotent nearby cycles, with the K_m cross-check when it applies."""

    nearby: NearbyCycles
    m: int
    shapiro: ShapiroCheck | None

    @property
    def dims(self) -> tuple[int, ...]:
        return self.nearby.dims


def nearby_quasi_unipotent(
    module: GammaModule, multiplicities: Sequence[int], m: int, r_max: int | None = None
) -> QuasiUnipotentNearby:
    """
    Quasi-unipotent nearby cycles, computed as unipotent nearby cycles of restrict(M, m).

    Raises:
        PreconditionError: If some γ_j^m is not unipotent
        VerificationError: If the K_m cross-check disagrees
    """
    fq = module.field
    for j, g in enumerate(module.gammas):
        if not is_unipotent(fq, matrix_power(fq, g, m)):
            raise PreconditionError(f"γ_{j + 1}^{m} is not unipotent")
    nearby = nearby_unipotent(restrict(module, m), multiplicities, r_max=r_max)

    shapiro = None
    if module.n == 1:
        shapiro = shapiro_check(module, m)
        if not shapiro.passed:
            raise VerificationError(
                f"K_{m} cross-check failed: {shapiro.induced} vs {shapiro.restricted}"
            )
    return QuasiUnipotentNearby(nearby, m, shapiro)


# ---------------------------------------------------------------------------
# Finite cyclic groups
# ---------------------------------------------------------------------------


def cyclic_cohomology(m: int, module: GammaModule) -> tuple[int, int, int]:
    """
    H^0, H^1, H^2 of Z/m acting through g = γ_1, from the periodic resolution.

    H^0 = ker(g − 1), H^1 = ker N / im(g − 1), H^2 = ker(g − 1) / im N,
    where N = 1 + g + ... + g^{m−1}.

    Raises:
        PreconditionError: If g^m ≠ 1
    """
    if module.n != 1:
        raise InputError("cyclic cohomology needs exactly one operator")
    if m < 1:
        raise InputError(f"group order must be >= 1, got {m}")
    fq, d = module.field, module.dim
    g = module.gammas[0]
    if not equal(matrix_power(fq, g, m), fq.identity(d)):
        raise PreconditionError(f"the operator does not satisfy g^{m} = 1")

    shifted = g - fq.identity(d)
    norm = fq.zeros(d, d)
    power = fq.identity(d)
    for _ in range(m):
        norm = norm + power
        power = power @ g
    rank_shift, rank_norm = matrix_rank(shifted), matrix_rank(norm)
    h0 = d - rank_shift
    return h0, (d - rank_norm) - rank_shift, h0 - rank_norm


def binomial_dims(n: int) -> tuple[int, ...]:
    """dim H^i of the trivial one-dimensional module."""
    return tuple(comb(n, i) for i in range(n + 1))
