"""Exact analytic rank via slice-kernel counting.

For a multilinear form, averaging a nontrivial additive character over
the pivot leg gives 1 exactly when the slice functional vanishes and 0
otherwise, so the bias equals

    #{assignments to the non-pivot legs with identically zero slice} / q^N

with N the number of non-pivot coordinates.  That count is an integer,
which is what this module computes; the complex character average is
kept alongside as an independent floating-point oracle.

Normalization (recorded here because the literature leaves it open):
AR(T) = N - log_q(count) with q the order of the coefficient field, and
the character is e^(2 pi i Tr(.)/p) with Tr the absolute trace.  The
stability constants are insensitive to this choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SizeGuard
from .fields import OP_GUARD, Field
from .linalg import matrix_rank
from .tensors import Tensor, fadd, fmul

_CHUNK = 1 << 15
_CHAR_GUARD = 10**7

# d = 2 keeps honest enumeration up to this cost; beyond it the count is
# obtained as the exact kernel size via Gaussian elimination (the two
# computations agree by definition of the slice kernel).
_D2_ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class ExactBias:
    """bias = count / q**exponent, held exactly."""

    count: int
    exponent: int
    q: int

    def __post_init__(self):
        if not 0 < self.count <= self.q**self.exponent:
            raise ValueError("bias count out of range")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count, self.q**self.exponent)

    @property
    def value(self) -> float:
        return self.count / self.q**self.exponent

    def analytic_rank(self) -> float:
        """exponent - log_q(count), exact when count is a power of q."""
        c, k = self.count, 0
        while c % self.q == 0:
            c //= self.q
            k += 1
        if c == 1:
            return float(self.exponent - k)
        return self.exponent - math.log(self.count) / math.log(self.q)


@dataclass(frozen=True)
class ARValue:
    """Analytic rank with the exact pair it was derived from."""

    exact: ExactBias
    value: float

    @property
    def is_zero(self) -> bool:
        return self.exact.count == self.exact.q**self.exact.exponent


def _vector_table(q: int, length: int) -> np.ndarray:
    """Row v = coordinates of the v-th vector of GF(q)^length (base-q digits)."""
    idx = np.arange(q**length, dtype=np.int64)
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    powers = q ** np.arange(length, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def _fmul_scalar(field: Field, c: int, arr: np.ndarray) -> np.ndarray:
    if field.base is None:
        return (c * arr) % field.p
    tabs = field.tables()
    if tabs is not None:
        return tabs[1][c][arr]
    ufunc = np.frompyfunc(field.mul_code, 2, 1)
    return ufunc(c, arr).astype(np.int64)


def _slice_batches(tensor: Tensor, pivot: int):
    """Yield (batch_size, V) where V[a, k] is the pivot-slice coefficient
    vector for the a-th assignment of vectors to the non-pivot legs.
    Assignments are enumerated in mixed radix, first non-pivot leg
    slowest; the total is q**N with N the non-pivot coordinate count."""
    field = tensor.field
    q = field.order
    dims = tensor.dims
    others = [j for j in range(tensor.order) if j != pivot]
    n_piv = dims[pivot]

    moved = np.moveaxis(tensor.codes, pivot, -1)
    rows = moved.reshape(-1, n_piv)
    other_dims = tuple(dims[j] for j in others)
    row_coords = (
        np.stack(np.unravel_index(np.arange(rows.shape[0]), other_dims), axis=0)
        if rows.shape[0]
        else np.zeros((len(others), 0), dtype=np.int64)
    )

    tables = [_vector_table(q, dims[j]) for j in others]
    sizes = [q ** dims[j] for j in others]
    total = 1
    for s in sizes:
        total *= s
    strides = []
    acc = 1
    for s in reversed(sizes):
        strides.append(acc)
        acc *= s
    strides.reverse()

    nonzero_cols = [k for k in range(n_piv) if rows[:, k].any()]
    start = 0
    while start < total:
        stop = min(start + _CHUNK, total)
        a_idx = np.arange(start, stop, dtype=np.int64)
        weights = np.full((stop - start, rows.shape[0]), field.one_code, dtype=np.int64)
        for pos in range(len(others)):
            v = (a_idx // strides[pos]) % sizes[pos]
            coords = tables[pos][v]  # (chunk, n_leg)
            weights = fmul(field, weights, coords[:, row_coords[pos]])
        slices = np.zeros((stop - start, n_piv), dtype=np.int64)
        for k in nonzero_cols:
            acc_col = np.zeros(stop - start, dtype=np.int64)
            for row in range(rows.shape[0]):
                c = int(rows[row, k])
                if c == 0:
                    continue
                acc_col = fadd(field, acc_col, _fmul_scalar(field, c, weights[:, row]))
            slices[:, k] = acc_col
        yield slices
        start = stop


def _count_by_enumeration(tensor: Tensor, pivot: int) -> int:
    count = 0
    for slices in _slice_batches(tensor, pivot):
        count += int(np.count_nonzero(~slices.any(axis=1)))
    return count


def _count_by_nullity(tensor: Tensor, pivot: int) -> int:
    """d = 2 only: the zero-slice assignments form the kernel of the
    matrix, so the count is q**(n_other - rank)."""
    other = 1 - pivot
    mat = np.moveaxis(tensor.codes, pivot, 0)
    rank = matrix_rank(tensor.field, mat)
    return tensor.field.order ** (tensor.dims[other] - rank)


def _enumeration_cost(tensor: Tensor) -> int:
    q = tensor.field.order
    dims = tensor.dims
    return q ** (sum(dims) - max(dims)) * max(dims)


def bias(tensor: Tensor, pivot: int | None = None) -> ExactBias:
    """Exact bias of the d-linear form, as a zero-slice count over q**N.

    The pivot is a leg of maximum dimension; the count is asserted to be
    the same for every maximal leg.  Matrices beyond the enumeration
    guard fall back to exact kernel counting (same integer, computed by
    Gaussian elimination instead of enumeration).
    """
    field = tensor.field
    q = field.order
    dims = tensor.dims

    if any(n == 0 for n in dims):
        piv = pivot if pivot is not None else max(range(len(dims)), key=lambda j: dims[j])
        exponent = sum(dims) - dims[piv]
        return ExactBias(count=q**exponent, exponent=exponent, q=q)

    if pivot is not None:
        pivots = [pivot]
    else:
        top = max(dims)
        pivots = [j for j, n in enumerate(dims) if n == top]

    counts = []
    for piv in pivots:
        cost = _enumeration_cost(tensor)
        if tensor.order == 2 and cost > _D2_ENUMERATION_LIMIT:
            counts.append(_count_by_nullity(tensor, piv))
        else:
            if cost > OP_GUARD:
                raise SizeGuard(
                    f"bias enumeration for dims {dims} over GF({q}) exceeds the guard"
                )
            counts.append(_count_by_enumeration(tensor, piv))
    assert all(c == counts[0] for c in counts), "pivot choice changed the count"

    piv = pivots[0]
    exponent = sum(dims) - dims[piv]
    return ExactBias(count=counts[0], exponent=exponent, q=q)


def analytic_rank(tensor: Tensor, pivot: int | None = None) -> ARValue:
    """AR(T) = N - log_q(count), with the exact pair retained."""
    exact = bias(tensor, pivot=pivot)
    return ARValue(exact=exact, value=exact.analytic_rank())


def bias_via_characters(tensor: Tensor) -> float:
    """Independent oracle: average of e^(2 pi i Tr(T(x))/p) over all inputs.

    Returns the real part; the imaginary part must vanish to 1e-9 and the
    result must match the exact bias to 1e-9 (both asserted).
    """
    field = tensor.field
    q = field.order
    dims = tensor.dims
    if any(n == 0 for n in dims):
        return 1.0
    total_inputs = q ** sum(dims)
    if total_inputs > _CHAR_GUARD:
        raise SizeGuard(
            f"character sum over {total_inputs} inputs exceeds the guard"
        )

    p = field.p
    pivot = max(range(len(dims)), key=lambda j: dims[j])
    n_piv = dims[pivot]
    pivot_vectors = _vector_table(q, n_piv)  # (q**n_piv, n_piv)
    trace = field.trace_table()
    phases = np.exp(2j * math.pi * np.arange(p) / p)

    total = 0 + 0j
    for slices in _slice_batches(tensor, pivot):
        if field.base is None:
            values = (slices @ pivot_vectors.T) % p
        else:
            values = np.zeros((slices.shape[0], pivot_vectors.shape[0]), dtype=np.int64)
            for k in range(n_piv):
                values = fadd(
                    field,
                    values,
                    fmul(field, slices[:, k][:, None], pivot_vectors[None, :, k]),
                )
        total += phases[trace[values]].sum()

    mean = total / total_inputs
    assert abs(mean.imag) < 1e-9, "character sum has a nonreal mean"
    exact = bias(tensor).value
    assert abs(mean.real - exact) < 1e-9, "character oracle disagrees with exact bias"
    return float(mean.real)
