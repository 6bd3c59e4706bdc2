"""
Finite Fields and Exact Linear Algebra
F_q coefficients (via galois) with rank, null space and subspace helpers
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import galois
import numpy as np
from sympy import factorint

from .errors import InputError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Fq:
    """
    The field with q = p^e elements.

    Elements are integers in [0, q) in galois' polynomial representation; the
    modulus is galois' default irreducible polynomial (a Conway polynomial when known).
    """

    order: int

    def __post_init__(self):
        factors = factorint(self.order) if self.order > 1 else {}
        if len(factors) != 1:
            raise InputError(f"q must be a prime power, got {self.order}")

    @property
    def field(self) -> type[galois.FieldArray]:
        return galois.GF(self.order)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def modulus(self) -> list[int]:
        """Coefficients of the irreducible modulus, highest degree first."""
        return [int(c) for c in self.field.irreducible_poly.coeffs]

    def root_of_unity(self, m: int) -> galois.FieldArray:
        """
        ζ_m = α^((q−1)/m) for the primitive element α.

        Raises:
            PreconditionError: If m does not divide q − 1
        """
        if m < 1 or (self.order - 1) % m:
            raise PreconditionError(f"F_{self.order} has no primitive {m}-th root of unity")
        return self.field.primitive_element ** ((self.order - 1) // m)

    def element(self, x: int) -> galois.FieldArray:
        return self.field(self._reduce(x))

    def matrix(self, rows: Sequence[Sequence[int]], cols: int | None = None) -> galois.FieldArray:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if not rows:
            return self.zeros(0, cols)
        for row in rows:
            if len(row) != cols:
                raise InputError(f"ragged matrix: expected {cols} columns, got {len(row)}")
        return self.field([[self._reduce(x) for x in row] for row in rows])

    def integer_matrix(self, rows: Sequence[Sequence[int]], cols: int) -> galois.FieldArray:
        """Image of an integer matrix under Z -> F_q."""
        if not rows or cols == 0:
            return self.zeros(len(rows), cols)
        p = self.characteristic
        return self.field([[int(x) % p for x in row] for row in rows])

    def identity(self, n: int) -> galois.FieldArray:
        return self.field.Identity(n)

    def zeros(self, rows: int, cols: int) -> galois.FieldArray:
        return self.field.Zeros((rows, cols))

    def _reduce(self, x: int) -> int:
        x = int(x)
        if self.degree == 1:
            return x % self.order
        if not 0 <= x < self.order:
            raise InputError(f"F_{self.order} elements are integers in [0, {self.order}), got {x}")
        return x


def is_zero(a: galois.FieldArray) -> bool:
    return not a.view(np.ndarray).any()


def equal(a: galois.FieldArray, b: galois.FieldArray) -> bool:
    return a.shape == b.shape and bool((a.view(np.ndarray) == b.view(np.ndarray)).all())


def to_int_rows(a: galois.FieldArray) -> list[list[int]]:
    return [[int(x) for x in row] for row in a]


def matrix_rank(a: galois.FieldArray) -> int:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return int(np.linalg.matrix_rank(a))


def null_space(field: Fq, a: galois.FieldArray) -> galois.FieldArray:
    """Basis of {x : A x = 0}, one vector per row."""
    rows, cols = a.shape
    if cols == 0:
        return field.zeros(0, 0)
    if rows == 0 or is_zero(a):
        return field.identity(cols)
    return a.null_space()


def row_basis(field: Fq, a: galois.FieldArray) -> galois.FieldArray:
    """Reduced basis of the row space."""
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return field.zeros(0, cols)
    reduced = a.row_reduce()
    keep = [i for i in range(reduced.shape[0]) if not is_zero(reduced[i])]
    return reduced[keep] if keep else field.zeros(0, cols)


def column_space(field: Fq, a: galois.FieldArray) -> galois.FieldArray:
    """Basis of the image of A, one vector per row."""
    return row_basis(field, a.T)


def stack(field: Fq, blocks: Sequence[galois.FieldArray], cols: int) -> galois.FieldArray:
    parts = [b for b in blocks if b.shape[0]]
    if not parts:
        return field.zeros(0, cols)
    return np.vstack(parts)


def intersect(field: Fq, a: galois.FieldArray, b: galois.FieldArray) -> galois.FieldArray:
    """Intersection of two row spaces of vectors of equal length."""
    n = a.shape[1]
    if a.shape[0] == 0 or b.shape[0] == 0:
        return field.zeros(0, n)
    combined = np.vstack([a, b]).T
    relations = null_space(field, combined)
    if relations.shape[0] == 0:
        return field.zeros(0, n)
    return row_basis(field, relations[:, : a.shape[0]] @ a)


def same_subspace(field: Fq, a: galois.FieldArray, b: galois.FieldArray) -> bool:
    ra, rb = matrix_rank(a), matrix_rank(b)
    if ra != rb:
        return False
    return matrix_rank(stack(field, [a, b], a.shape[1])) == ra


def matrix_power(field: Fq, a: galois.FieldArray, k: int) -> galois.FieldArray:
    result = field.identity(a.shape[0])
    base = a
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def kron(field: Fq, a: galois.FieldArray, b: galois.FieldArray) -> galois.FieldArray:
    """Kronecker product; basis e_i ⊗ e_k has index i·dim(b) + k."""
    ra, ca = a.shape
    rb, cb = b.shape
    result = field.zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            if a[i, j]:
                result[i * rb : (i + 1) * rb, j * cb : (j + 1) * cb] = a[i, j] * b
    return result
