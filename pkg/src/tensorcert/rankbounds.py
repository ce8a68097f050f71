"""Constructive rank upper bounds and subrank lower bounds.

The genus-zero evaluation/interpolation constructions use the explicit
rational points of GF(q) plus the point at infinity, where "evaluation
at infinity" reads off the top coefficient of a degree-capped
polynomial (the top coefficient of a product of degree-capped
polynomials is the product of their top coefficients, which is what
both constructions need).  Everything returned here is verified exactly
before it leaves the module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from . import polys
from .certificates import (
    RankDecomposition,
    RestrictionCertificate,
    verify_decomposition,
    verify_restriction,
)
from .errors import (
    CertificateInvalid,
    HypothesisViolated,
    NotEnoughPoints,
    SizeGuard,
    TowerMismatch,
)
from .fields import OP_GUARD, Field, extend
from .linalg import flattening_rank, matrix_rank
from .multtensor import MultSpec, mult_tensor
from .tensors import LinearMap, Tensor, diagonal

#: Sentinel for the rational point at infinity.
INFINITY = "inf"


def _points(field: Field, count: int) -> list:
    """First `count` evaluation points in canonical order: the field
    elements by code, then infinity (used only when needed)."""
    q = field.order
    if count > q + 1:
        raise NotEnoughPoints(f"need {count} points, GF({q}) has only {q + 1}")
    pts: list = list(range(min(count, q)))
    if count == q + 1:
        pts.append(INFINITY)
    return pts


def _interpolation_basis(field: Field, points: Sequence) -> list[list[int]]:
    """Coefficient lists (degree <= len(points)-1) of the basis polynomials
    dual to (values at the finite points, top coefficient for infinity)."""
    r = len(points)
    finite = [p for p in points if p is not INFINITY]
    out = []
    for a in points:
        if a is INFINITY:
            # vanishes at all finite points, top coefficient 1
            poly = [field.one_code]
            for b in finite:
                poly = polys.pmul(field, poly, [field.neg_code(b), field.one_code])
        else:
            poly = [field.one_code]
            for b in finite:
                if b == a:
                    continue
                poly = polys.pmul(field, poly, [field.neg_code(b), field.one_code])
            value = polys.peval(field, poly, a)
            poly = polys.pscale(field, poly, field.inv_code(value))
        coeffs = list(poly) + [0] * (r - len(poly))
        out.append(coeffs[:r])
    return out


def _evaluation_vector(field: Field, point, length: int, infinity_slot: int) -> np.ndarray:
    """Functional reading the value at `point` off a coefficient vector of
    a polynomial of degree < length; for infinity, the coefficient at
    `infinity_slot`."""
    vec = np.zeros(length, dtype=np.int64)
    if point is INFINITY:
        vec[infinity_slot] = field.one_code
    else:
        acc = field.one_code
        for i in range(length):
            vec[i] = acc
            acc = field.mul_code(acc, point)
    return vec


def chudnovsky_rank(d: int, n: int, base: Field) -> RankDecomposition:
    """Evaluation/interpolation decomposition of Mult_d(GF(q^n)/GF(q))
    with (d-1)(n-1)+1 rank-one terms, needing that many rational points."""
    if d < 2 or n < 1:
        raise HypothesisViolated("need d >= 2 and n >= 1")
    q = base.order
    top = extend(base, n)
    spec = MultSpec(base, top, d)
    target = mult_tensor(spec)
    one = base.one_code

    if n == 1:
        terms = [tuple(np.array([one], dtype=np.int64) for _ in range(d))]
        deco = RankDecomposition(base, (1,) * d, terms, spec=spec)
    elif d == 2:
        # Mult_2 is the identity matrix; the basis terms already achieve n.
        terms = []
        for i in range(n):
            e = np.zeros(n, dtype=np.int64)
            e[i] = one
            terms.append((e.copy(), e.copy()))
        deco = RankDecomposition(base, (n, n), terms, spec=spec)
    else:
        r = (d - 1) * (n - 1) + 1
        pts = _points(base, r)
        basis = _interpolation_basis(base, pts)
        alpha = q  # code of the tower generator of top
        terms = []
        for point, poly in zip(pts, basis):
            ev = _evaluation_vector(base, point, n, infinity_slot=n - 1)
            value = polys.peval(top, poly, alpha)
            w = np.array(spec.coords(value), dtype=np.int64)
            terms.append(tuple([ev.copy() for _ in range(d - 1)] + [w]))
        deco = RankDecomposition(base, (n,) * d, terms, spec=spec)

    if not verify_decomposition(target, deco):
        raise CertificateInvalid(
            f"chudnovsky rank decomposition failed for d={d}, n={n}, q={q}"
        )  # pragma: no cover - the construction is proven exact
    return deco


def chudnovsky_subrank(d: int, n: int, base: Field, size: int) -> RestrictionCertificate:
    """Certificate <size> <= Mult_d(GF(q^n)/GF(q)) by interpolation on the
    input legs and evaluation on the output leg; the product polynomial
    has degree (d-1)(size-1) < n, so no modular reduction occurs."""
    if d < 2 or n < 1 or size < 1:
        raise HypothesisViolated("need d >= 2, n >= 1 and size >= 1")
    if (d - 1) * (size - 1) >= n:
        raise HypothesisViolated(
            f"(d-1)(N-1) = {(d - 1) * (size - 1)} >= n = {n}"
        )
    q = base.order
    pts = _points(base, size)
    top = extend(base, n)
    spec = MultSpec(base, top, d)
    source = mult_tensor(spec)

    basis = _interpolation_basis(base, pts)
    in_map = np.zeros((n, size), dtype=np.int64)
    for i, poly in enumerate(basis):
        for k, c in enumerate(poly):
            in_map[k, i] = c
    out_map = np.zeros((n, size), dtype=np.int64)
    for i, point in enumerate(pts):
        out_map[:, i] = _evaluation_vector(
            base, point, n, infinity_slot=(d - 1) * (size - 1)
        )
    maps = [LinearMap(base, in_map)] * (d - 1) + [LinearMap(base, out_map)]
    cert = RestrictionCertificate(
        source, diagonal(size, d, base), maps, source_spec=spec, diagonal_size=size
    )
    if not verify_restriction(cert):
        raise CertificateInvalid(
            f"chudnovsky subrank certificate failed for d={d}, n={n}, q={q}, N={size}"
        )  # pragma: no cover
    return cert


def schoolbook_rank(d: int, n: int, base: Field) -> RankDecomposition:
    """Universal n**(d-1)-term decomposition: expand the product over the
    basis.  Valid with no point-count condition."""
    if d < 2 or n < 1:
        raise HypothesisViolated("need d >= 2 and n >= 1")
    top = extend(base, n)
    spec = MultSpec(base, top, d)
    target = mult_tensor(spec)
    one = base.one_code
    terms = []
    for idx in itertools.product(range(n), repeat=d - 1):
        legs = []
        for i in idx:
            e = np.zeros(n, dtype=np.int64)
            e[i] = one
            legs.append(e)
        legs.append(target.codes[idx].copy())
        terms.append(tuple(legs))
    deco = RankDecomposition(base, (n,) * d, terms, spec=spec)
    if not verify_decomposition(target, deco):
        raise CertificateInvalid("schoolbook decomposition failed")  # pragma: no cover
    return deco


# -- composition (rank and subrank multiply through towers) -------------------


def _check_composable(outer_spec: MultSpec, inner_spec: MultSpec) -> None:
    if outer_spec.arity != inner_spec.arity:
        raise TowerMismatch(
            f"arities differ: {outer_spec.arity} vs {inner_spec.arity}"
        )
    if outer_spec.base != inner_spec.top:
        raise TowerMismatch(
            "outer certificate must live over the inner certificate's top field"
        )


def compose_rank(outer: RankDecomposition, inner: RankDecomposition) -> RankDecomposition:
    """From decompositions of Mult_d(top/mid) over mid and Mult_d(mid/base)
    over base, build one of Mult_d(top/base) over base with
    rank(outer) * rank(inner) terms."""
    if outer.spec is None or inner.spec is None:
        raise TowerMismatch("composition needs Mult-tensor decompositions")
    _check_composable(outer.spec, inner.spec)
    d = outer.spec.arity
    base = inner.spec.base
    mid = inner.spec.top
    top = outer.spec.top
    m = inner.spec.extension_degree
    n = outer.spec.extension_degree
    q = base.order
    mid_basis = [q**i for i in range(m)]
    spec = MultSpec(base, top, d)

    terms = []
    for oterm in outer.terms:
        # top element behind the outer last-leg vector
        top_code = sum(int(c) * mid.order**j for j, c in enumerate(oterm[d - 1]))
        for iterm in inner.terms:
            v_code = sum(int(c) * q**i for i, c in enumerate(iterm[d - 1]))
            legs = []
            for s in range(d - 1):
                phi = oterm[s]
                psi = iterm[s]
                vec = np.zeros(m * n, dtype=np.int64)
                for j in range(n):
                    pj = int(phi[j])
                    if pj == 0:
                        continue
                    for i in range(m):
                        coords = inner.spec.coords(mid.mul_code(pj, mid_basis[i]))
                        acc = 0
                        for k in range(m):
                            pk = int(psi[k])
                            if pk and coords[k]:
                                acc = base.add_code(acc, base.mul_code(pk, coords[k]))
                        vec[i + m * j] = acc
                legs.append(vec)
            prod_code = top.mul_code(v_code, top_code)
            legs.append(np.array(spec.coords(prod_code), dtype=np.int64))
            terms.append(tuple(legs))

    deco = RankDecomposition(base, (m * n,) * d, terms, spec=spec)
    target = mult_tensor(spec)
    if not verify_decomposition(target, deco):
        raise CertificateInvalid("composed rank decomposition failed")  # pragma: no cover
    return deco


def compose_subrank(
    outer: RestrictionCertificate, inner: RestrictionCertificate
) -> RestrictionCertificate:
    """From <No> <= Mult_d(top/mid) over mid and <Ni> <= Mult_d(mid/base)
    over base, build <No*Ni> <= Mult_d(top/base) over base.  The outer
    maps are mid-linear, hence base-linear after flattening."""
    if outer.source_spec is None or inner.source_spec is None:
        raise TowerMismatch("composition needs Mult-tensor certificates")
    if outer.diagonal_size is None or inner.diagonal_size is None:
        raise TowerMismatch("composition needs diagonal targets")
    _check_composable(outer.source_spec, inner.source_spec)
    d = outer.source_spec.arity
    base = inner.source_spec.base
    mid = inner.source_spec.top
    top = outer.source_spec.top
    m = inner.source_spec.extension_degree
    n = outer.source_spec.extension_degree
    no = outer.diagonal_size
    ni = inner.diagonal_size
    q = base.order
    mid_basis = [q**i for i in range(m)]
    spec = MultSpec(base, top, d)

    maps = []
    for j in range(d):
        A = outer.maps[j].entries  # n x no over mid (codes of mid elements)
        C = inner.maps[j].entries  # m x ni over base
        G = np.zeros((m * n, no * ni), dtype=np.int64)
        for a in range(no):
            if j < d - 1:
                t_code = sum(int(A[c, a]) * mid.order**c for c in range(n))
                for b in range(ni):
                    c_code = sum(int(C[i, b]) * q**i for i in range(m))
                    prod = top.mul_code(c_code, t_code)
                    G[:, a * ni + b] = spec.coords(prod)
            else:
                for b in range(ni):
                    col = np.zeros(m * n, dtype=np.int64)
                    for c in range(n):
                        ac = int(A[c, a])
                        if ac == 0:
                            continue
                        for i in range(m):
                            coords = inner.source_spec.coords(
                                mid.mul_code(ac, mid_basis[i])
                            )
                            acc = 0
                            for k in range(m):
                                ck = int(C[k, b])
                                if ck and coords[k]:
                                    acc = base.add_code(acc, base.mul_code(ck, coords[k]))
                            col[i + m * c] = acc
                    G[:, a * ni + b] = col
        maps.append(LinearMap(base, G))

    cert = RestrictionCertificate(
        mult_tensor(spec),
        diagonal(no * ni, d, base),
        maps,
        source_spec=spec,
        diagonal_size=no * ni,
    )
    if not verify_restriction(cert):
        raise CertificateInvalid("composed subrank certificate failed")  # pragma: no cover
    return cert


# -- brute-force ground-truth oracles ------------------------------------------


def _normalized_rank_one_candidates(field: Field, dims: Sequence[int]) -> list[tuple]:
    """All rank-one terms with legs 1..d-1 scaled to leading coefficient 1
    and an arbitrary nonzero final-leg vector."""
    q = field.order
    one = field.one_code

    def normalized_vectors(n: int) -> list[np.ndarray]:
        out = []
        for codes in itertools.product(range(q), repeat=n):
            arr = np.array(codes, dtype=np.int64)
            nz = [c for c in codes if c != 0]
            if not nz or nz[0] != one:
                continue
            out.append(arr)
        return out

    def nonzero_vectors(n: int) -> list[np.ndarray]:
        out = []
        for codes in itertools.product(range(q), repeat=n):
            if any(codes):
                out.append(np.array(codes, dtype=np.int64))
        return out

    pools = [normalized_vectors(n) for n in dims[:-1]] + [nonzero_vectors(dims[-1])]
    return list(itertools.product(*pools))


def brute_force_rank(tensor: Tensor, r_max: int) -> Optional[int]:
    """Smallest r <= r_max admitting an exact rank-one decomposition, by
    exhaustive search over normalized terms; None if the rank exceeds
    r_max.  Ground truth at tiny sizes only."""
    if tensor.is_zero:
        return 0
    field = tensor.field
    lower = flattening_rank(tensor.codes, field)
    if lower > r_max:
        return None

    candidates = _normalized_rank_one_candidates(field, tensor.dims)
    n_cand = len(candidates)
    entry_count = int(np.prod(tensor.dims))
    work = math.comb(n_cand + r_max - 1, r_max) * entry_count
    if work > OP_GUARD:
        raise SizeGuard(
            f"brute-force rank search over {n_cand} candidates to r={r_max} "
            f"exceeds the guard"
        )

    from .certificates import _rank_one_codes

    term_arrays = [_rank_one_codes(field, term) for term in candidates]
    neg = np.frompyfunc(field.neg_code, 1, 1)
    neg_arrays = [neg(t).astype(np.int64) for t in term_arrays]

    for r in range(max(lower, 1), r_max + 1):
        if _search_rank(tensor.codes, r, 0, field, neg_arrays, n_cand):
            return r
    return None


def _search_rank(residual, remaining, start, field, neg_arrays, n_cand) -> bool:
    from .tensors import fadd

    if not residual.any():
        return True
    if remaining == 0:
        return False
    if flattening_rank(residual, field) > remaining:
        return False
    for idx in range(start, n_cand):
        nxt = fadd(field, residual, neg_arrays[idx])
        if _search_rank(nxt, remaining - 1, idx + 1, field, neg_arrays, n_cand):
            return True
    return False


def _full_column_rank_maps(field: Field, rows: int, cols: int) -> list[np.ndarray]:
    """All rows x cols matrices of full column rank over `field`."""
    q = field.order
    out = []
    for flat in itertools.product(range(q), repeat=rows * cols):
        mat = np.array(flat, dtype=np.int64).reshape(rows, cols)
        if matrix_rank(field, mat) == cols:
            out.append(mat)
    return out


def brute_force_subrank(tensor: Tensor, r_max: int) -> int:
    """Largest r <= r_max with a verified restriction to <r>, exhaustive
    over map tuples (full-column-rank maps suffice: a diagonal needs
    injective leg maps).  Ground truth at tiny sizes only."""
    field = tensor.field
    q = field.order
    d = tensor.order
    r_max = min(r_max, min(tensor.dims)) if tensor.dims else 0
    for r in range(r_max, 0, -1):
        total = 1
        for n in tensor.dims:
            total *= q ** (n * r)
        if total * int(np.prod(tensor.dims)) > OP_GUARD:
            raise SizeGuard(
                f"brute-force subrank search at r={r} exceeds the guard"
            )
        pools = [_full_column_rank_maps(field, n, r) for n in tensor.dims]
        target = diagonal(r, d, field)
        for combo in itertools.product(*pools):
            maps = [LinearMap(field, m) for m in combo]
            if tensor.restrict(maps) == target:
                return r
    return 0


# -- places of the rational function field --------------------------------------


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def count_places_rational(q: int, n: int) -> int:
    """Number of degree-n places of the rational function field GF(q)(x):
    q+1 for n = 1 (the q finite points plus infinity), otherwise the
    number of monic irreducible polynomials of degree n, by Mobius
    inversion."""
    if n < 1:
        raise ValueError("place degree must be >= 1")
    if n == 1:
        return q + 1
    total = 0
    for m in range(1, n + 1):
        if n % m == 0:
            total += _mobius(m) * q ** (n // m)
    assert total % n == 0
    return total // n


# -- function-field condition checking at general genus -------------------------


@dataclass(frozen=True)
class FunctionFieldProfile:
    """Claimed invariants of a function field over GF(l^2) or GF(q):
    a worst-case genus bound, a lower bound on degree-1 places, and how
    degree-n places are accounted for.  Tower profiles black-box the
    recursive construction behind them, carrying only these bounds."""

    g_max: int
    n1_lower: int
    order_sqrt: Optional[int] = None  # l, when the constant field is GF(l^2)
    has_all_degrees: bool = False
    known_place_degrees: frozenset = dc_field(default_factory=frozenset)
    provenance: str = "user"

    def __post_init__(self):
        if self.g_max < 0 or self.n1_lower < 0:
            raise ValueError("profile bounds must be nonnegative")

    def degree_place(self, n: int) -> str:
        """'present', 'genus-bound' or 'unknown' for degree-n places.

        'genus-bound' means a degree-n place exists because
        2*g_max + 1 <= l**n - l**(n-1) over the declared square order l**2.
        """
        if self.has_all_degrees or n in self.known_place_degrees:
            return "present"
        l = self.order_sqrt
        if l is not None and 2 * self.g_max + 1 <= l**n - l ** (n - 1):
            return "genus-bound"
        return "unknown"


def rational_profile(q: int) -> FunctionFieldProfile:
    """The rational function field GF(q)(x): genus 0, q+1 rational points,
    places of every degree."""
    return FunctionFieldProfile(
        g_max=0,
        n1_lower=q + 1,
        order_sqrt=None,
        has_all_degrees=True,
        provenance=f"rational({q})",
    )


def tower_profile(l: int, i: int) -> FunctionFieldProfile:
    """Claimed-value profile of the i-th tower field over GF(l^2): genus
    below l**i and at least l**i (l-1) rational points.  The i = 0 case
    is folded into i = 1, whose genus is exactly zero."""
    if i < 0:
        raise ValueError("tower index must be >= 0")
    g_max = 0 if i == 0 else l**i - 1
    level = max(i, 1)
    return FunctionFieldProfile(
        g_max=g_max,
        n1_lower=l**level * (l - 1),
        order_sqrt=l,
        provenance=f"tower({l},{i})",
    )


@dataclass(frozen=True)
class FFConditionReport:
    """Exact evaluation of conditions (a)-(d) for the base bounds."""

    direction: str
    d: int
    n: int
    size: int
    g_max: int
    condition_a: bool
    condition_b: bool
    condition_c: bool
    condition_d: bool
    degree_place_status: str

    @property
    def all_hold(self) -> bool:
        return (
            self.condition_a
            and self.condition_b
            and self.condition_c
            and self.condition_d
        )

    @property
    def conclusion(self) -> str:
        rel = "R_d(n,q) <= N" if self.direction == "rank" else "Q_d(n,q) >= N"
        return rel if self.all_hold else "no conclusion"

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "d": self.d,
            "n": self.n,
            "N": self.size,
            "g_max": self.g_max,
            "a": self.condition_a,
            "b": self.condition_b,
            "c": self.condition_c,
            "d_place": self.condition_d,
            "degree_place": self.degree_place_status,
            "all_hold": self.all_hold,
            "conclusion": self.conclusion,
        }


def check_ff_conditions(
    profile: FunctionFieldProfile, direction: str, d: int, n: int, size: int
) -> FFConditionReport:
    """Evaluate the four conditions of the rank/subrank base bounds
    exactly, using the profile's worst-case genus.  `direction` is
    'rank' (needs (d-1)(n + g - 1) < N) or 'subrank' (needs
    (d-1)(N + g - 1) < n)."""
    if direction not in ("rank", "subrank"):
        raise ValueError("direction must be 'rank' or 'subrank'")
    if d <= 1 or n <= 1 or size < 1:
        raise ValueError("need d > 1, n > 1 and N >= 1")
    g = profile.g_max
    a = profile.n1_lower >= g + 1
    if direction == "rank":
        b = (d - 1) * (n + g - 1) < size
    else:
        b = (d - 1) * (size + g - 1) < n
    c = profile.n1_lower >= size
    status = profile.degree_place(n)
    dcond = status in ("present", "genus-bound")
    return FFConditionReport(
        direction=direction,
        d=d,
        n=n,
        size=size,
        g_max=g,
        condition_a=a,
        condition_b=b,
        condition_c=c,
        condition_d=dcond,
        degree_place_status=status,
    )
