"""
Exact Integer Linear Algebra
Smith normal form, finitely generated abelian groups, kernels, cokernels and subgroups
"""

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .config import resolve_bound
from .errors import BoundExceededError, InputError, PreconditionError, VerificationError

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Integer matrix stored row-major; arbitrary-precision entries."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError(f"matrix shape must be nonnegative, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"matrix {self.rows}x{self.cols} needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise InputError(f"ragged matrix: expected {cols} columns, got {len(row)}")
        return cls(len(rows), cols, tuple(int(x) for row in rows for x in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        for col in columns:
            if len(col) != rows:
                raise InputError(f"column of length {len(col)} in a matrix with {rows} rows")
        return cls(rows, len(columns), tuple(int(columns[j][i]) for i in range(rows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns([self.row(i) for i in range(self.rows)], self.cols)

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise InputError(f"vector of length {len(v)} for a matrix with {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), v, strict=True)) for i in range(self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.columns()
        return IntMatrix.from_columns([self.apply(c) for c in cols], self.rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise InputError("hstack needs equal row counts")
        return IntMatrix.from_columns(self.columns() + other.columns(), self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form with smallest-absolute-value pivoting.

    Args:
        a: Matrix to reduce

    Returns:
        tuple: (U, D, V) with U·A·V = D, U and V unimodular, D diagonal with
            nonnegative entries forming a divisibility chain
    """
    m, n = a.rows, a.cols
    d = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i: int, k: int) -> None:
        d[i], d[k] = d[k], d[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in d:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(target: int, source: int, factor: int) -> None:
        d[target] = [x + factor * y for x, y in zip(d[target], d[source], strict=True)]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source], strict=True)]

    def add_col(target: int, source: int, factor: int) -> None:
        for row in d:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]

    for t in range(min(m, n)):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            p = d[t][t]
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))

            # remainders are strictly smaller than the pivot
            best = None
            for i in range(t + 1, m):
                if d[i][t] and (best is None or abs(d[i][t]) < best[0]):
                    best = (abs(d[i][t]), "row", i)
            for j in range(t + 1, n):
                if d[t][j] and (best is None or abs(d[t][j]) < best[0]):
                    best = (abs(d[t][j]), "col", j)
            if best is not None:
                if best[1] == "row":
                    swap_rows(t, best[2])
                else:
                    swap_cols(t, best[2])
                continue

            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)

        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    logger.debug(f"SNF of {m}x{n} matrix: diagonal {[d[i][i] for i in range(min(m, n))]}")
    return (
        IntMatrix.from_rows(u, m),
        IntMatrix.from_rows(d, n),
        IntMatrix.from_rows(v, n),
    )


def rank(a: IntMatrix) -> int:
    """Rank over Q."""
    _, d, _ = smith_normal_form(a)
    return sum(1 for x in d.diagonal() if x != 0)


def integer_kernel(a: IntMatrix) -> list[Vector]:
    """Z-basis of {x : A·x = 0}."""
    _, d, v = smith_normal_form(a)
    r = sum(1 for x in d.diagonal() if x != 0)
    return [v.column(j) for j in range(r, a.cols)]


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Vector | None:
    """
    Find an integer solution of A·x = b.

    Args:
        a: Coefficient matrix
        b: Right-hand side of length a.rows

    Returns:
        Vector | None: Some solution (free variables set to zero), or None if none exists
    """
    if len(b) != a.rows:
        raise InputError(f"right-hand side of length {len(b)} for {a.rows} equations")
    u, d, v = smith_normal_form(a)
    c = u.apply(b)
    diag = d.diagonal()
    y = [0] * a.cols
    for i, ci in enumerate(c):
        delta = diag[i] if i < len(diag) else 0
        if delta == 0:
            if ci != 0:
                return None
        elif ci % delta:
            return None
        else:
            y[i] = ci // delta
    return v.apply(y)


@dataclass(frozen=True)
class FinAbGroup:
    """
    Finitely generated abelian group Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k in invariant-factor form.

    Elements are integer vectors of length r + k, free coordinates first, with
    coordinate r + i reduced mod d_i.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise InputError(f"free rank must be nonnegative, got {self.free_rank}")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise InputError(f"invariant factors must be >= 2, got {d}")
            if i and d % self.torsion[i - 1]:
                raise InputError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @classmethod
    def free(cls, r: int) -> "FinAbGroup":
        return cls(r, ())

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(0, ())

    @classmethod
    def from_orders(cls, free_rank: int, orders: Sequence[int]) -> "FinAbGroup":
        """Normal form of Z^free_rank ⊕ ⊕ Z/orders[i] (orders may be arbitrary positive ints)."""
        return normalize_group(free_rank, orders)[0]

    @property
    def length(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.length == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        result = 1
        for d in self.torsion:
            result *= d
        return result

    @property
    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def zero(self) -> Vector:
        return (0,) * self.length

    def basis(self) -> list[Vector]:
        return [tuple(1 if i == j else 0 for i in range(self.length)) for j in range(self.length)]

    def reduce(self, v: Sequence[int]) -> Vector:
        if len(v) != self.length:
            raise InputError(f"element {tuple(v)} has length {len(v)}, group needs {self.length}")
        r = self.free_rank
        return tuple(int(x) if i < r else int(x) % self.torsion[i - r] for i, x in enumerate(v))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return self.reduce([x + y for x, y in zip(a, b, strict=True)])

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return self.reduce([x - y for x, y in zip(a, b, strict=True)])

    def neg(self, a: Sequence[int]) -> Vector:
        return self.reduce([-x for x in a])

    def scale(self, k: int, a: Sequence[int]) -> Vector:
        return self.reduce([k * x for x in a])

    def free_part(self, a: Sequence[int]) -> Vector:
        return tuple(a[: self.free_rank])

    def element_order(self, a: Sequence[int]) -> int | None:
        """Order of an element, None when it has infinite order."""
        a = self.reduce(a)
        if any(a[: self.free_rank]):
            return None
        result = 1
        for x, d in zip(a[self.free_rank :], self.torsion, strict=True):
            k = d // _gcd(x, d)
            result = result * k // _gcd(result, k)
        return result

    def relation_columns(self) -> list[Vector]:
        """Columns d_i · e_{r+i} spanning the relations of the presentation."""
        cols = []
        for i, d in enumerate(self.torsion):
            col = [0] * self.length
            col[self.free_rank + i] = d
            cols.append(tuple(col))
        return cols

    def elements(self) -> Iterator[Vector]:
        """All elements in lexicographic order (finite groups only)."""
        if self.free_rank:
            raise PreconditionError(f"cannot enumerate the infinite group {self}")
        yield from itertools.product(*(range(d) for d in self.torsion))

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism of FinAbGroups given by a matrix on canonical generators."""

    source: FinAbGroup
    target: FinAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.length or self.matrix.cols != self.source.length:
            raise InputError(
                f"matrix {self.matrix.rows}x{self.matrix.cols} does not fit "
                f"{self.source} -> {self.target}"
            )
        reduced = IntMatrix.from_columns(
            [self.target.reduce(c) for c in self.matrix.columns()], self.target.length
        )
        object.__setattr__(self, "matrix", reduced)
        for rel in self.source.relation_columns():
            if any(self.target.reduce(self.matrix.apply(rel))):
                raise InputError(f"matrix does not respect the source relation {rel}")

    @classmethod
    def from_images(
        cls, source: FinAbGroup, target: FinAbGroup, images: Sequence[Sequence[int]]
    ) -> "GroupHom":
        if len(images) != source.length:
            raise InputError(f"need {source.length} images, got {len(images)}")
        return cls(source, target, IntMatrix.from_columns([tuple(x) for x in images], target.length))

    @classmethod
    def identity(cls, group: FinAbGroup) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.length))

    @classmethod
    def zero(cls, source: FinAbGroup, target: FinAbGroup) -> "GroupHom":
        return cls(source, target, IntMatrix.zeros(target.length, source.length))

    def apply(self, v: Sequence[int]) -> Vector:
        return self.target.reduce(self.matrix.apply(self.source.reduce(v)))

    def images(self) -> list[Vector]:
        return self.matrix.columns()

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self ∘ inner."""
        if inner.target != self.source:
            raise InputError("composition of incompatible homomorphisms")
        return GroupHom.from_images(inner.source, self.target, [self.apply(c) for c in inner.images()])

    def _relation_matrix(self) -> IntMatrix:
        rels = self.target.relation_columns()
        if not rels:
            return self.matrix
        return self.matrix.hstack(IntMatrix.from_columns(rels, self.target.length))

    def preimage(self, y: Sequence[int]) -> Vector | None:
        """Some x with f(x) = y, or None when y is not in the image."""
        solution = solve_integer(self._relation_matrix(), self.target.reduce(y))
        if solution is None:
            return None
        return self.source.reduce(solution[: self.source.length])

    def is_injective(self) -> bool:
        return kernel_lattice(self).cols == 0

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def normalize_group(free_rank: int, orders: Sequence[int]) -> tuple[FinAbGroup, GroupHom]:
    """
    Put Z^free_rank ⊕ ⊕ Z/orders[i] into invariant-factor form.

    Returns:
        tuple: (G, proj) where proj: Z^(free_rank + len(orders)) -> G is the quotient map
    """
    for o in orders:
        if o < 1:
            raise InputError(f"cyclic orders must be positive, got {o}")
    n = free_rank + len(orders)
    cols = []
    for i, o in enumerate(orders):
        col = [0] * n
        col[free_rank + i] = o
        cols.append(tuple(col))
    rel = GroupHom(FinAbGroup.free(len(orders)), FinAbGroup.free(n), IntMatrix.from_columns(cols, n))
    return cokernel(rel)


def cokernel(f: GroupHom) -> tuple[FinAbGroup, GroupHom]:
    """
    Cokernel of a group homomorphism.

    Args:
        f: Homomorphism A -> B

    Returns:
        tuple: (G, proj) with G in invariant-factor form and proj: B -> G surjective
            with kernel equal to the image of f
    """
    target = f.target
    m = f._relation_matrix()
    u, d, _ = smith_normal_form(m)
    diag = d.diagonal()
    deltas = [diag[i] if i < len(diag) else 0 for i in range(target.length)]

    free_rows = [i for i, delta in enumerate(deltas) if delta == 0]
    torsion_rows = [i for i, delta in enumerate(deltas) if delta >= 2]
    group = FinAbGroup(len(free_rows), tuple(deltas[i] for i in torsion_rows))

    proj_rows = []
    for i in free_rows:
        row = list(u.row(i))
        lead = next((x for x in row if x != 0), 0)
        if lead < 0:
            row = [-x for x in row]
        proj_rows.append(row)
    for i in torsion_rows:
        proj_rows.append([x % deltas[i] for x in u.row(i)])

    proj = GroupHom(target, group, IntMatrix.from_rows(proj_rows, target.length))
    logger.debug(f"cokernel of {f.source} -> {target} is {group}")
    return group, proj


def kernel_lattice(f: GroupHom) -> IntMatrix:
    """
    Generators of ker(f), torsion witnesses included.

    Returns:
        IntMatrix: Columns are reduced, nonzero, distinct and sorted; zero columns
            when f is injective
    """
    basis = integer_kernel(f._relation_matrix())
    gens = {f.source.reduce(v[: f.source.length]) for v in basis}
    gens.discard(f.source.zero())
    return IntMatrix.from_columns(sorted(gens), f.source.length)


def section_onto_free(f: GroupHom) -> GroupHom:
    """
    Section of a surjection onto a free group.

    Args:
        f: Surjective homomorphism with torsion-free target

    Returns:
        GroupHom: s with f∘s = id

    Raises:
        PreconditionError: If the target has torsion or f is not surjective
    """
    if f.target.torsion:
        raise PreconditionError(f"target {f.target} has torsion; no section onto a free group")
    images = []
    for e in f.target.basis():
        x = f.preimage(e)
        if x is None:
            raise PreconditionError("homomorphism is not surjective", witness=e)
        images.append(x)
    s = GroupHom.from_images(f.target, f.source, images)
    if f.compose(s) != GroupHom.identity(f.target):
        raise VerificationError("section does not compose to the identity")
    return s


def induced_on_cokernel(proj: GroupHom, f: GroupHom) -> GroupHom:
    """
    Factor f: A -> B through a surjection proj: A -> H.

    Raises:
        InputError: If f does not vanish on ker(proj)
    """
    if proj.source != f.source:
        raise InputError("proj and f must share a source")
    for k in kernel_lattice(proj).columns():
        if any(f.apply(k)):
            raise InputError(f"map does not vanish on the kernel element {k}")
    images = []
    for e in proj.target.basis():
        x = proj.preimage(e)
        if x is None:
            raise InputError("projection is not surjective")
        images.append(f.apply(x))
    return GroupHom.from_images(proj.target, f.target, images)


def subgroup_generated(group: FinAbGroup, gens: Sequence[Sequence[int]]) -> tuple[FinAbGroup, GroupHom, list[Vector]]:
    """
    Subgroup spanned by gens, in its own normal-form coordinates.

    Returns:
        tuple: (H, inclusion H -> group, coordinates of each generator in H)
    """
    gens = [group.reduce(g) for g in gens]
    s = len(gens)
    free = FinAbGroup.free(s)
    span = GroupHom.from_images(free, group, gens) if s else GroupHom.zero(free, group)
    k = kernel_lattice(span)
    rel = GroupHom(FinAbGroup.free(k.cols), free, k)
    sub, proj = cokernel(rel)
    inclusion = induced_on_cokernel(proj, span)
    coords = [proj.apply(e) for e in free.basis()]
    return sub, inclusion, coords


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a finite group, with canonical generators and its element set."""

    ambient: FinAbGroup
    generators: tuple[Vector, ...]
    elements: frozenset = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.ambient.reduce(v) in self.elements


def _span(group: FinAbGroup, base: frozenset, g: Vector) -> frozenset:
    result = set(base)
    step = g
    while step not in base:
        result.update(group.add(h, step) for h in base)
        step = group.add(step, g)
    return frozenset(result)


def subgroup_closure(group: FinAbGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    """Subgroup of a finite group generated by gens, with canonical generators."""
    elements = frozenset([group.zero()])
    for g in gens:
        g = group.reduce(g)
        if g not in elements:
            elements = _span(group, elements, g)
    return _canonical_subgroup(group, elements)


def _canonical_subgroup(group: FinAbGroup, elements: frozenset) -> Subgroup:
    chosen: list[Vector] = []
    span = frozenset([group.zero()])
    for x in sorted(elements):
        if x not in span:
            chosen.append(x)
            span = _span(group, span, x)
    return Subgroup(group, tuple(chosen), elements)


def subgroup_enumerate(group: FinAbGroup, bound: int | None = None) -> list[Subgroup]:
    """
    All subgroups of a finite group.

    Args:
        group: Finite abelian group
        bound: Maximum group order (defaults to the configured enumeration bound)

    Returns:
        list[Subgroup]: Complete, duplicate-free, sorted by canonical generators

    Raises:
        BoundExceededError: If |group| exceeds the bound
    """
    if not group.is_finite:
        raise PreconditionError(f"subgroup enumeration needs a finite group, got {group}")
    limit = resolve_bound(bound)
    if group.order > limit:
        raise BoundExceededError(
            f"group {group} of order {group.order} exceeds the enumeration bound",
            bound=limit,
            requested=group.order,
        )

    elements = list(group.elements())
    trivial = frozenset([group.zero()])
    seen = {trivial}
    queue = [trivial]
    while queue:
        current = queue.pop()
        for g in elements:
            if g in current:
                continue
            bigger = _span(group, current, g)
            if bigger not in seen:
                seen.add(bigger)
                queue.append(bigger)

    subgroups = sorted((_canonical_subgroup(group, s) for s in seen), key=lambda s: s.generators)
    logger.debug(f"{group} has {len(subgroups)} subgroups")
    return subgroups
