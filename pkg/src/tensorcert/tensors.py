"""Dense order-d tensors over a finite field, as multilinear forms.

A tensor is a plain coefficient array; no leg is distinguished.  The
coefficient at index (i_1, ..., i_d) multiplies x_1[i_1]...x_d[i_d] in
the associated d-linear form.  Arrays hold integer element codes
(see `fields`), row-major with leg 1 slowest, which fixes the wire
format.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, MixedFields, NotInTower, OrderMismatch
from .fields import Field, FieldElement, element_from_json, element_to_json, field_from_json

# -- vectorized field arithmetic on code arrays --------------------------------


def _prime_matmul(p: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if (p - 1) ** 2 * inner < 2**52:
        # exact in float64, and large products hit BLAS instead of the
        # slow integer matmul loop
        out = a.astype(np.float64) @ b.astype(np.float64)
        return (out % p).astype(np.int64)
    if (p - 1) ** 2 * inner < 2**62:
        return (a @ b) % p
    return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)


def fmatmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of 2-d code arrays over `field`."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"matmul {a.shape} x {b.shape}")
    if field.base is None:
        return _prime_matmul(field.p, a, b)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    tabs = field.tables()
    if tabs is not None:
        add, mul = tabs
        for k in range(a.shape[1]):
            out = add[out, mul[a[:, k][:, None], b[k, :][None, :]]]
        return out
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = 0
            for k in range(a.shape[1]):
                acc = field.add_code(acc, field.mul_code(int(a[i, k]), int(b[k, j])))
            out[i, j] = acc
    return out


def fmul(field: Field, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Elementwise (broadcast) product of code arrays."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if field.base is None:
        return (x * y) % field.p
    tabs = field.tables()
    if tabs is not None:
        return tabs[1][x, y]
    ufunc = np.frompyfunc(field.mul_code, 2, 1)
    return ufunc(x, y).astype(np.int64)


def fadd(field: Field, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Elementwise (broadcast) sum of code arrays."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if field.base is None:
        return (x + y) % field.p
    if field.p == 2:
        return x ^ y
    tabs = field.tables()
    if tabs is not None:
        return tabs[0][x, y]
    ufunc = np.frompyfunc(field.add_code, 2, 1)
    return ufunc(x, y).astype(np.int64)


def _codes_vector(field: Field, vec, length: int) -> np.ndarray:
    """Coerce a sequence of FieldElements (or raw codes) to a code array."""
    if isinstance(vec, np.ndarray):
        out = vec.astype(np.int64)
    else:
        out = np.empty(len(vec), dtype=np.int64)
        for i, v in enumerate(vec):
            if isinstance(v, FieldElement):
                if v.field != field:
                    raise MixedFields(f"vector entry in {v.field!r}, tensor over {field!r}")
                out[i] = v.code
            else:
                out[i] = int(v)
    if out.shape != (length,):
        raise DimensionMismatch(f"expected vector of length {length}, got {out.shape}")
    if out.size and (out.min() < 0 or out.max() >= field.order):
        raise ValueError("vector entry out of range for the field")
    return out


# -- linear maps ---------------------------------------------------------------


class LinearMap:
    """A rows x cols matrix over a field, acting on coordinate columns."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries):
        self.field = field
        arr = np.ascontiguousarray(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch("LinearMap entries must be 2-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.order):
            raise ValueError("matrix entry out of range for the field")
        self.entries = arr

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinearMap":
        m = np.zeros((n, n), dtype=np.int64)
        one = field.one_code
        for i in range(n):
            m[i, i] = one
        return cls(field, m)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "LinearMap":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence) -> "LinearMap":
        cols = [np.asarray(c, dtype=np.int64) for c in columns]
        return cls(field, np.stack(cols, axis=1) if cols else np.zeros((0, 0), np.int64))

    def apply(self, vec) -> np.ndarray:
        v = _codes_vector(self.field, vec, self.cols)
        return fmatmul(self.field, self.entries, v.reshape(-1, 1)).reshape(-1)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other (matrix product self * other)."""
        if self.field != other.field:
            raise MixedFields("composing maps over different fields")
        return LinearMap(self.field, fmatmul(self.field, self.entries, other.entries))

    def transpose(self) -> "LinearMap":
        return LinearMap(self.field, self.entries.T.copy())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearMap)
            and self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __repr__(self) -> str:
        return f"LinearMap({self.rows}x{self.cols} over {self.field!r})"

    def to_json(self) -> list:
        f = self.field
        return [[element_to_json(f.element(int(c))) for c in row] for row in self.entries]

    @classmethod
    def from_json(cls, field: Field, data: list) -> "LinearMap":
        rows = [[element_from_json(field, c).code for c in row] for row in data]
        arr = np.asarray(rows, dtype=np.int64) if rows else np.zeros((0, 0), np.int64)
        return cls(field, arr)


# -- tensors --------------------------------------------------------------------


class Tensor:
    """Dense order-d tensor of field elements (d >= 2, dims >= 0)."""

    __slots__ = ("field", "dims", "codes")

    def __init__(self, field: Field, dims: Sequence[int], codes: np.ndarray):
        dims = tuple(int(n) for n in dims)
        if len(dims) < 2:
            raise DimensionMismatch("tensors must have order d >= 2")
        if any(n < 0 for n in dims):
            raise DimensionMismatch(f"negative dimension in {dims}")
        arr = np.ascontiguousarray(codes, dtype=np.int64)
        if arr.shape != dims:
            raise DimensionMismatch(f"codes shape {arr.shape} does not match dims {dims}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.order):
            raise ValueError("coefficient code out of range for the field")
        self.field = field
        self.dims = dims
        self.codes = arr

    @classmethod
    def zero(cls, field: Field, dims: Sequence[int]) -> "Tensor":
        dims = tuple(int(n) for n in dims)
        return cls(field, dims, np.zeros(dims, dtype=np.int64))

    @classmethod
    def from_elements(cls, field: Field, dims: Sequence[int], elements) -> "Tensor":
        codes = np.array([e.code if isinstance(e, FieldElement) else int(e) for e in elements],
                         dtype=np.int64)
        return cls(field, dims, codes.reshape(tuple(dims)))

    @property
    def order(self) -> int:
        return len(self.dims)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.codes)

    def element(self, index: tuple[int, ...]) -> FieldElement:
        return self.field.element(int(self.codes[index]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tensor)
            and self.field == other.field
            and self.dims == other.dims
            and bool(np.array_equal(self.codes, other.codes))
        )

    def __repr__(self) -> str:
        return f"Tensor{self.dims} over {self.field!r}"

    # -- operations -------------------------------------------------------

    def evaluate(self, vectors: Sequence) -> FieldElement:
        """The d-linear form at the given coordinate vectors."""
        if len(vectors) != self.order:
            raise DimensionMismatch(f"expected {self.order} vectors, got {len(vectors)}")
        vecs = [_codes_vector(self.field, v, n) for v, n in zip(vectors, self.dims)]
        acc = self.codes
        for v in reversed(vecs):
            n = v.shape[0]
            acc = fmatmul(self.field, acc.reshape(-1, n), v.reshape(n, 1)).reshape(acc.shape[:-1])
        return self.field.element(int(acc))

    def slice_form(self, pivot: int, fixed: Sequence) -> list[FieldElement]:
        """Coefficients of the linear functional x -> T(..., x at pivot, ...)."""
        codes = self._slice_codes(pivot, fixed)
        return [self.field.element(int(c)) for c in codes]

    def _slice_codes(self, pivot: int, fixed: Sequence) -> np.ndarray:
        d = self.order
        if not 0 <= pivot < d:
            raise DimensionMismatch(f"pivot {pivot} out of range for order {d}")
        if len(fixed) != d - 1:
            raise DimensionMismatch(f"expected {d - 1} fixed vectors, got {len(fixed)}")
        others = [j for j in range(d) if j != pivot]
        vecs = [_codes_vector(self.field, v, self.dims[j]) for v, j in zip(fixed, others)]
        acc = np.moveaxis(self.codes, pivot, 0)
        for v in reversed(vecs):
            n = v.shape[0]
            acc = fmatmul(self.field, acc.reshape(-1, n), v.reshape(n, 1)).reshape(acc.shape[:-1])
        return acc.reshape(-1)

    def restrict(self, maps: Sequence[LinearMap]) -> "Tensor":
        """S(y_1, ..., y_d) = T(A_1 y_1, ..., A_d y_d)."""
        if len(maps) != self.order:
            raise DimensionMismatch(f"expected {self.order} maps, got {len(maps)}")
        for j, a in enumerate(maps):
            if a.field != self.field:
                raise MixedFields(f"map {j} lives over {a.field!r}")
            if a.rows != self.dims[j]:
                raise DimensionMismatch(
                    f"map {j} has {a.rows} rows, leg has dimension {self.dims[j]}"
                )
        codes = self.codes
        for j, a in enumerate(maps):
            moved = np.moveaxis(codes, j, -1)
            lead = moved.shape[:-1]
            flat = moved.reshape(-1, self.dims[j]) if moved.size else moved.reshape(-1, self.dims[j])
            res = fmatmul(self.field, flat, a.entries)
            codes = np.moveaxis(res.reshape(lead + (a.cols,)), -1, j)
        return Tensor(self.field, codes.shape, codes)

    def base_change(self, big: Field) -> "Tensor":
        """The same coefficient array viewed over an extension field."""
        if not big.contains_field(self.field):
            raise NotInTower(f"{self.field!r} is not in the tower of {big!r}")
        return Tensor(big, self.dims, self.codes.copy())

    def direct_sum(self, other: "Tensor") -> "Tensor":
        if not isinstance(other, Tensor):
            raise TypeError("direct_sum expects a Tensor")
        if self.field != other.field:
            raise MixedFields("direct sum over different fields")
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")
        dims = tuple(a + b for a, b in zip(self.dims, other.dims))
        out = np.zeros(dims, dtype=np.int64)
        out[tuple(slice(0, n) for n in self.dims)] = self.codes
        out[tuple(slice(n, n + m) for n, m in zip(self.dims, other.dims))] = other.codes
        return Tensor(self.field, dims, out)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        f = self.field
        return {
            "field": f.to_json(),
            "dims": list(self.dims),
            "coeffs": [element_to_json(f.element(int(c))) for c in self.codes.reshape(-1)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Tensor":
        field = field_from_json(obj["field"])
        dims = tuple(int(n) for n in obj["dims"])
        codes = np.array(
            [element_from_json(field, c).code for c in obj["coeffs"]], dtype=np.int64
        )
        return cls(field, dims, codes.reshape(dims))


def diagonal(r: int, d: int, field: Field) -> Tensor:
    """The unit tensor <r>: 1 at equal indices, 0 elsewhere; <0> is empty."""
    if r < 0:
        raise DimensionMismatch("diagonal size must be >= 0")
    if d < 2:
        raise DimensionMismatch("tensors must have order d >= 2")
    codes = np.zeros((r,) * d, dtype=np.int64)
    one = field.one_code
    for i in range(r):
        codes[(i,) * d] = one
    return Tensor(field, (r,) * d, codes)


def random_tensor(field: Field, dims: Sequence[int], rng) -> Tensor:
    """Tensor with i.i.d. uniform coefficients drawn from `rng`."""
    dims = tuple(int(n) for n in dims)
    total = 1
    for n in dims:
        total *= n
    codes = np.array([rng.randrange(field.order) for _ in range(total)], dtype=np.int64)
    return Tensor(field, dims, codes.reshape(dims))
