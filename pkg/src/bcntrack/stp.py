"""Exact algebra of canonical vectors, logical matrices, and Boolean arrays.

Conventions used throughout the package:

* A discrete value out of k possibilities is a canonical basis vector: the
  i-th canonical vector of dimension k has a single 1 in position i.  All
  indices in the public API are 1-based, matching that notation.
* A logical matrix is a 0/1 matrix whose every column is a canonical vector.
  It is stored as the array of its column indices; dense expansions exist
  only for cross-checks.
* Boolean vectors and matrices hold plain 0/1 data and combine through the
  OR/AND semiring, so entries never leave {0, 1} and repeated products
  cannot overflow.
* The (left) semi-tensor product generalises the matrix product to operands
  with mismatched inner dimensions by lifting both factors to the least
  common multiple dimension with Kronecker identity factors.  ``stp`` works
  on integer arrays and is exact; the index-arithmetic helpers are the fast
  path for canonical operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "LogicalVector",
    "LogicalMatrix",
    "BooleanVector",
    "BooleanMatrix",
    "stp",
    "delta_product",
    "stp_logical",
    "encode_boolean_vector",
    "decode_boolean_vector",
]


@dataclass(frozen=True)
class LogicalVector:
    """Canonical basis vector: dimension ``dim``, single 1 in slot ``index``."""

    dim: int
    index: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        if not 1 <= self.index <= self.dim:
            raise ValueError(f"index {self.index} out of range [1, {self.dim}]")

    def to_dense(self) -> np.ndarray:
        """Dense column-vector expansion of shape (dim, 1)."""
        col = np.zeros((self.dim, 1), dtype=np.int64)
        col[self.index - 1, 0] = 1
        return col


@dataclass(frozen=True)
class LogicalMatrix:
    """0/1 matrix whose columns are canonical vectors, stored column-index-wise.

    ``col_index[j-1]`` is the (1-based) row holding the 1 in column j.
    """

    rows: int
    col_index: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1:
            raise ValueError(f"row count must be positive, got {self.rows}")
        object.__setattr__(self, "col_index", tuple(int(i) for i in self.col_index))
        if not self.col_index:
            raise ValueError("a logical matrix needs at least one column")
        for j, i in enumerate(self.col_index, start=1):
            if not 1 <= i <= self.rows:
                raise ValueError(
                    f"column {j}: row index {i} out of range [1, {self.rows}]"
                )

    @property
    def cols(self) -> int:
        return len(self.col_index)

    def column(self, j: int) -> LogicalVector:
        if not 1 <= j <= self.cols:
            raise ValueError(f"column {j} out of range [1, {self.cols}]")
        return LogicalVector(self.rows, self.col_index[j - 1])

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.rows, self.cols), dtype=np.int64)
        dense[np.array(self.col_index) - 1, np.arange(self.cols)] = 1
        return dense

    def to_boolean(self) -> "BooleanMatrix":
        return BooleanMatrix(self.to_dense())


def _as_bits(data, ndim: int) -> np.ndarray:
    arr = np.asarray(data)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    if arr.size == 0 or min(arr.shape) == 0:
        raise ValueError("zero-sized Boolean data is not allowed")
    if arr.dtype != bool:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"entries must be 0 or 1, got dtype {arr.dtype}")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
    out = arr.astype(bool)
    out.flags.writeable = False
    return out


class BooleanVector:
    """Fixed-length 0/1 vector; ``&`` is entrywise AND, ``|`` entrywise OR."""

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int] | np.ndarray):
        self.bits = _as_bits(bits, 1)

    @classmethod
    def zeros(cls, dim: int) -> "BooleanVector":
        return cls(np.zeros(dim, dtype=bool))

    @classmethod
    def ones(cls, dim: int) -> "BooleanVector":
        return cls(np.ones(dim, dtype=bool))

    @classmethod
    def from_indices(cls, dim: int, indices: Iterable[int]) -> "BooleanVector":
        """Indicator vector of a set of 1-based positions."""
        bits = np.zeros(dim, dtype=bool)
        for i in indices:
            if not 1 <= i <= dim:
                raise ValueError(f"index {i} out of range [1, {dim}]")
            bits[i - 1] = True
        return cls(bits)

    @property
    def dim(self) -> int:
        return self.bits.shape[0]

    def support(self) -> tuple[int, ...]:
        """1-based positions of the nonzero entries, ascending."""
        return tuple(int(i) + 1 for i in np.flatnonzero(self.bits))

    def count(self) -> int:
        return int(self.bits.sum())

    def any(self) -> bool:
        return bool(self.bits.any())

    def all(self) -> bool:
        return bool(self.bits.all())

    def __and__(self, other: "BooleanVector") -> "BooleanVector":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return BooleanVector(self.bits & other.bits)

    def __or__(self, other: "BooleanVector") -> "BooleanVector":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return BooleanVector(self.bits | other.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanVector):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.bits, other.bits))

    def __bool__(self) -> bool:
        raise TypeError("truth value of a BooleanVector is ambiguous; use .any() or .all()")

    def __repr__(self) -> str:
        return f"BooleanVector({self.bits.astype(int).tolist()})"


class BooleanMatrix:
    """0/1 matrix over the OR/AND semiring (products test existence, not count)."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        self.bits = _as_bits(bits, 2)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BooleanMatrix":
        return cls(np.zeros((rows, cols), dtype=bool))

    @classmethod
    def identity(cls, n: int) -> "BooleanMatrix":
        return cls(np.eye(n, dtype=bool))

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    def transpose(self) -> "BooleanMatrix":
        return BooleanMatrix(self.bits.T)

    def column(self, j: int) -> BooleanVector:
        if not 1 <= j <= self.cols:
            raise ValueError(f"column {j} out of range [1, {self.cols}]")
        return BooleanVector(self.bits[:, j - 1])

    def matvec(self, v: BooleanVector) -> BooleanVector:
        """Semiring product M v: entry j is 1 iff row j of M meets the support of v."""
        if self.cols != v.dim:
            raise ValueError(f"dimension mismatch: {self.cols} columns vs {v.dim}")
        return BooleanVector((self.bits & v.bits[np.newaxis, :]).any(axis=1))

    def matmul(self, other: "BooleanMatrix") -> "BooleanMatrix":
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.cols} vs {other.rows}")
        prod = (self.bits[:, :, np.newaxis] & other.bits[np.newaxis, :, :]).any(axis=1)
        return BooleanMatrix(prod)

    def power(self, k: int) -> "BooleanMatrix":
        """k-th semiring power, k >= 1."""
        if self.rows != self.cols:
            raise ValueError("powers need a square matrix")
        if k < 1:
            raise ValueError(f"exponent must be >= 1, got {k}")
        out = self
        for _ in range(k - 1):
            out = out.matmul(self)
        return out

    def __or__(self, other: "BooleanMatrix") -> "BooleanMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch for entrywise OR")
        return BooleanMatrix(self.bits | other.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanMatrix):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(
            np.array_equal(self.bits, other.bits)
        )

    def __bool__(self) -> bool:
        raise TypeError("truth value of a BooleanMatrix is ambiguous; use .bits")

    def __repr__(self) -> str:
        return f"BooleanMatrix({self.bits.astype(int).tolist()})"


def _as_int_matrix(data) -> np.ndarray:
    arr = np.asarray(data)
    if arr.dtype == bool:
        arr = arr.astype(np.int64)
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"stp is exact over integers only, got dtype {arr.dtype}")
    if arr.ndim != 2:
        raise ValueError(f"stp needs 2-dimensional operands, got shape {arr.shape}")
    if min(arr.shape) == 0:
        raise ValueError("stp operands must have positive dimensions")
    return arr.astype(np.int64)


def stp(a, b) -> np.ndarray:
    """Left semi-tensor product of two integer matrices.

    Both operands are lifted by Kronecker identity factors to the least
    common multiple of (columns of a, rows of b) and then multiplied, so the
    result equals the ordinary product whenever the shapes already conform.
    """
    left = _as_int_matrix(a)
    right = _as_int_matrix(b)
    n = left.shape[1]
    p = right.shape[0]
    lift = lcm(n, p)
    lifted_a = np.kron(left, np.eye(lift // n, dtype=np.int64))
    lifted_b = np.kron(right, np.eye(lift // p, dtype=np.int64))
    return lifted_a @ lifted_b


def delta_product(a: LogicalVector, b: LogicalVector) -> LogicalVector:
    """Semi-tensor product of two canonical vectors, by index arithmetic.

    Dimensions multiply and the result index is (a.index - 1) * b.dim + b.index.
    """
    return LogicalVector(a.dim * b.dim, (a.index - 1) * b.dim + b.index)


def stp_logical(mat: LogicalMatrix, u: LogicalVector, x: LogicalVector) -> LogicalVector:
    """Apply a logical matrix to the product of two canonical vectors.

    Picks the column of ``mat`` selected by ``u * x``; agrees with the dense
    ``stp`` of the expanded operands.
    """
    if mat.cols != u.dim * x.dim:
        raise ValueError(
            f"matrix has {mat.cols} columns but the vector product has "
            f"dimension {u.dim * x.dim}"
        )
    return mat.column(delta_product(u, x).index)


def encode_boolean_vector(values: Sequence[int]) -> LogicalVector:
    """Map an n-tuple of 0/1 values to its canonical vector of dimension 2^n.

    Each value X contributes the factor [X, not X]^T and the factors combine
    by semi-tensor product; the map is a bijection onto the canonical vectors.
    """
    if len(values) == 0:
        raise ValueError("need at least one Boolean value")
    result: LogicalVector | None = None
    for v in values:
        if v not in (0, 1):
            raise ValueError(f"entries must be 0 or 1, got {v!r}")
        factor = LogicalVector(2, 1 if v == 1 else 2)
        result = factor if result is None else delta_product(result, factor)
    assert result is not None
    return result


def decode_boolean_vector(vec: LogicalVector) -> tuple[int, ...]:
    """Inverse of :func:`encode_boolean_vector`; the dimension must be 2^n."""
    n = vec.dim.bit_length() - 1
    if vec.dim != 2**n or n == 0:
        raise ValueError(f"dimension {vec.dim} is not a power of two >= 2")
    offset = vec.index - 1
    return tuple(1 - ((offset >> (n - 1 - j)) & 1) for j in range(n))
