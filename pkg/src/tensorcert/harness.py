"""Mechanical checks of the proof arithmetic, plus the stability experiment.

Every inequality is evaluated in exact integer or rational arithmetic;
where a logarithm is unavoidable the exact exponentiated form is checked
first and the floating-point form is kept as a second witness at a fixed
1e-9 tolerance.  Reports are deterministic given (config, seed).
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .analytic import bias
from .certificates import RankDecomposition, RestrictionCertificate
from .errors import ConfigError, HypothesisViolated, NotEnoughPoints
from .fields import extend, field_of_order
from .rankbounds import chudnovsky_rank, chudnovsky_subrank, compose_rank, schoolbook_rank
from .tensors import random_tensor

TOLERANCE = 1e-9


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        p = n
    while n % p == 0:
        n //= p
    return n == 1


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ValueError(f"expected an exact rational, got {x!r}")


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# -- Fact: two overlapping intervals contain an integer -------------------------


@dataclass(frozen=True)
class IntervalFactResult:
    a: int
    b: int
    x: Fraction
    y: Fraction
    hypotheses: dict
    witness: Optional[int]

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "x": _frac_str(self.x),
            "y": _frac_str(self.y),
            "hypotheses": dict(self.hypotheses),
            "witness": self.witness,
        }


def check_interval_fact(a: int, b: int, x, y) -> IntervalFactResult:
    """If a <= b, a <= y, x <= b and y - x >= 1, then [a,b] and [x,y]
    share an integer; returns the smallest one.  Hypotheses are evaluated,
    not assumed, and reported individually."""
    x = _fraction(x)
    y = _fraction(y)
    hypotheses = {
        "a<=b": a <= b,
        "a<=y": Fraction(a) <= y,
        "x<=b": x <= Fraction(b),
        "y-x>=1": y - x >= 1,
    }
    witness = None
    if all(hypotheses.values()):
        lo = max(a, math.ceil(x))
        hi = min(b, math.floor(y))
        if lo <= hi:
            witness = lo
    return IntervalFactResult(a=a, b=b, x=x, y=y, hypotheses=hypotheses, witness=witness)


# -- base-bound proposition witnesses -------------------------------------------


def _fits_below_power(t: int, l: int, n: int) -> bool:
    """t <= l**(n-1) * (l-1), without forming huge powers."""
    if t <= 0:
        return True
    acc = l - 1
    e = 0
    while e < n - 1 and acc < t:
        acc *= l
        e += 1
    return acc >= t


@dataclass(frozen=True)
class PropWitness:
    """Witness data for one instance of a base-bound proposition."""

    kind: str  # "rank" or "subrank"
    d: int
    l: int
    n: int
    i: int
    g_max: int
    size: int  # the chosen N
    interval_dn: tuple
    interval_tower: tuple
    conditions: dict
    bound_statement: str

    @property
    def all_hold(self) -> bool:
        return all(self.conditions.values())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "l": self.l,
            "n": self.n,
            "i": self.i,
            "g_max": self.g_max,
            "N": self.size,
            "interval_dn": [str(v) for v in self.interval_dn],
            "interval_tower": [str(v) for v in self.interval_tower],
            "conditions": dict(self.conditions),
            "bound": self.bound_statement,
            "all_hold": self.all_hold,
        }


def prop_r_witness(d: int, l: int, n: int) -> PropWitness:
    """Rank bound R_d(n, l^2) <= 8 d^2 n: choose i with l^i < 4dn <= l^(i+1),
    take the smallest N in [2dn, 8d^2n - 1] and [2d l^i, l^(i+1)/2], and
    verify conditions (a)-(d) against the claimed tower profile with
    worst-case genus.  All checks are exact big-integer arithmetic."""
    if d < 2:
        raise HypothesisViolated("need d >= 2")
    if n < 2:
        raise HypothesisViolated("need n >= 2 (n = 1 is trivial)")
    if not _is_prime_power(l):
        raise HypothesisViolated(f"l = {l} is not a prime power")
    if l < 8 * d:
        raise HypothesisViolated(f"l = {l} < 8d = {8 * d}")

    i = 0
    while l ** (i + 1) < 4 * d * n:
        i += 1
    g_max = 0 if i == 0 else l**i - 1

    fact = check_interval_fact(
        2 * d * n, 8 * d * d * n - 1, Fraction(2 * d * l**i), Fraction(l ** (i + 1), 2)
    )
    size = fact.witness if fact.witness is not None else 0
    conditions = {
        "interval": fact.hypotheses_hold and fact.witness is not None,
        "b": size >= d * n + d * l**i and d * n + d * l**i > (d - 1) * (n + g_max - 1),
        "c": l**i * (l - 1) >= size,
        "d_degree": n >= i + 2,
        "d_genus_bound": _fits_below_power(2 * g_max + 1, l, n),
        "conclusion": size <= 8 * d * d * n - 1,
    }
    return PropWitness(
        kind="rank",
        d=d,
        l=l,
        n=n,
        i=i,
        g_max=g_max,
        size=size,
        interval_dn=(2 * d * n, 8 * d * d * n - 1),
        interval_tower=(2 * d * l**i, _frac_str(Fraction(l ** (i + 1), 2))),
        conditions=conditions,
        bound_statement=f"R_{d}({n}, {l}^2) <= {8 * d * d * n} via N = {size}",
    )


def prop_q_witness(d: int, l: int, n: int) -> PropWitness:
    """Subrank bound Q_d(n, l^2) >= n/(4d): choose i with
    2d l^i <= n < 2d l^(i+1), take the smallest N in
    [l^i, ceil(l^(i+1)/2)] and [n/(4d), n/(2d)], and verify the
    conditions exactly."""
    if d < 2:
        raise HypothesisViolated("need d >= 2")
    if not _is_prime_power(l):
        raise HypothesisViolated(f"l = {l} is not a prime power")
    if n < 4 * d:
        raise HypothesisViolated(f"n = {n} < 4d = {4 * d} (trivial range)")

    i = 0
    while 2 * d * l ** (i + 1) <= n:
        i += 1
    g_max = 0 if i == 0 else l**i - 1
    half_up = (l ** (i + 1) + 1) // 2  # ceil(l^(i+1)/2)

    fact = check_interval_fact(l**i, half_up, Fraction(n, 4 * d), Fraction(n, 2 * d))
    size = fact.witness if fact.witness is not None else 0
    conditions = {
        "interval": fact.hypotheses_hold and fact.witness is not None,
        "b": (d - 1) * (size + g_max - 1) < d * (size + l**i)
        and d * (size + l**i) <= 2 * d * size
        and 2 * d * size <= n,
        "c": l**i * (l - 1) >= half_up and half_up >= size,
        "d_degree": n >= 2 * d * l**i
        and 2 * d * l**i >= 2 ** (i + 2)
        and 2 ** (i + 2) >= i + 2,
        "d_genus_bound": _fits_below_power(2 * g_max + 1, l, n),
        "conclusion": 4 * d * size >= n,
    }
    return PropWitness(
        kind="subrank",
        d=d,
        l=l,
        n=n,
        i=i,
        g_max=g_max,
        size=size,
        interval_dn=(_frac_str(Fraction(n, 4 * d)), _frac_str(Fraction(n, 2 * d))),
        interval_tower=(l**i, half_up),
        conditions=conditions,
        bound_statement=f"Q_{d}({n}, {l}^2) >= {_frac_str(Fraction(n, 4 * d))} via N = {size}",
    )


# -- the constant calculators and the lifting chain -----------------------------


@dataclass(frozen=True)
class ConstantsReport:
    d: int
    q: int
    r: int
    c_d: Fraction
    C_d: float
    checks: dict
    n: Optional[int] = None
    m: Optional[int] = None
    trivial_n: Optional[bool] = None

    @property
    def all_hold(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "q": self.q,
            "r": self.r,
            "c_d": _frac_str(self.c_d),
            "C_d": self.C_d,
            "checks": dict(self.checks),
            "all_hold": self.all_hold,
        }
        if self.n is not None:
            out["n"] = self.n
            out["m"] = self.m
            out["trivial_n"] = self.trivial_n
        return out


def theorem_chain(d: int, q: int, n: Optional[int] = None) -> ConstantsReport:
    """r = smallest even integer with q**r >= 64 d^2, the constants
    C_d = 8 d^2 (2 log2 d + 8)^(d-1) and c_d = 1/(8 d^2), and the exact
    chain checks.  The bound r <= 2 log2 d + 8 is verified through its
    exact equivalent 2**r <= 256 d^2; the float comparison is a second
    witness.  When n is supplied and n > d^2, the subrank lift via
    m = ceil(n/2d) is verified exactly."""
    if d < 2:
        raise HypothesisViolated("need d >= 2")
    if not _is_prime_power(q):
        raise HypothesisViolated(f"q = {q} is not a prime power")
    bound = 64 * d * d
    r = 2
    while q**r < bound:
        r += 2
    C_d = 8 * d * d * (2 * math.log2(d) + 8) ** (d - 1)
    c_d = Fraction(1, 8 * d * d)
    checks = {
        "r_even": r % 2 == 0,
        "r_minimal": q**r >= bound and (r == 2 or q ** (r - 2) < bound),
        "r_exponent_exact": 2**r <= 256 * d * d,  # r <= 2 log2 d + 8
        "chain_float": r ** (d - 1) * 8 * d * d <= C_d + TOLERANCE,
    }
    m = trivial = None
    if n is not None:
        trivial = n <= d * d
        if not trivial:
            m = -(-n // (2 * d))  # ceil(n / 2d)
            checks["qmon_hypothesis"] = (d - 1) * (2 * m - 1) <= n - 1
            checks["m_ratio"] = 2 * d * m >= n  # m/(4d) >= n/(8 d^2)
    return ConstantsReport(
        d=d, q=q, r=r, c_d=c_d, C_d=C_d, checks=checks, n=n, m=m, trivial_n=trivial
    )


# -- stability experiment ---------------------------------------------------------


def _certificate_id(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def best_rank_certificate(d: int, n: int, base) -> tuple[RankDecomposition, str]:
    """Cheapest certified upper bound available for Mult_d(GF(q^n)/GF(q)):
    the direct evaluation/interpolation route, else a two-step tower
    composition, else the schoolbook expansion."""
    try:
        return chudnovsky_rank(d, n, base), "chudnovsky"
    except NotEnoughPoints:
        pass
    for m in range(2, n):
        if n % m != 0:
            continue
        try:
            inner = chudnovsky_rank(d, m, base)
            outer = chudnovsky_rank(d, n // m, extend(base, m))
            return compose_rank(outer, inner), f"compose({n // m}x{m})"
        except NotEnoughPoints:
            continue
    return schoolbook_rank(d, n, base), "schoolbook"


def best_subrank_certificate(d: int, n: int, base) -> tuple[RestrictionCertificate, int]:
    """Largest N the genus-zero construction certifies:
    N = min(q+1, 1 + floor((n-1)/(d-1)))."""
    size = min(base.order + 1, 1 + (n - 1) // (d - 1))
    cert = chudnovsky_subrank(d, n, base, size)
    return cert, size


@dataclass
class StabilityReport:
    q: int
    n: int
    d: int
    dims: tuple
    samples: int
    seed: int
    r_hat: int
    r_route: str
    r_cert_id: str
    q_hat: int
    q_cert_id: str
    rows: list = dc_field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(row["lower_ok"] and row["upper_ok"] for row in self.rows)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "format": list(self.dims),
            "samples": self.samples,
            "seed": self.seed,
            "rank_bound": {"value": self.r_hat, "route": self.r_route, "certificate": self.r_cert_id},
            "subrank_bound": {"value": self.q_hat, "certificate": self.q_cert_id},
            "rows": self.rows,
            "all_hold": self.all_hold,
        }


def stability_experiment(
    q: int, n: int, d: int, dims, samples: int, seed: int
) -> StabilityReport:
    """Sample tensors T over GF(q) and check, with certified bounds,

        (Q^/n) AR(T) <= AR(T over GF(q^n)) <= (R^/n) AR(T).

    Both inequalities are checked exactly on the integer counts (after
    clearing the logarithms) and again in floating point at 1e-9."""
    dims = tuple(int(x) for x in dims)
    base = field_of_order(q)
    big = extend(base, n)

    rank_cert, route = best_rank_certificate(d, n, base)
    r_hat = rank_cert.rank
    sub_cert, q_hat = best_subrank_certificate(d, n, base)

    report = StabilityReport(
        q=q,
        n=n,
        d=d,
        dims=dims,
        samples=samples,
        seed=seed,
        r_hat=r_hat,
        r_route=route,
        r_cert_id=_certificate_id(rank_cert.to_json()),
        q_hat=q_hat,
        q_cert_id=_certificate_id(sub_cert.to_json()),
    )

    rng = random.Random(seed)
    for index in range(samples):
        tensor = random_tensor(base, dims, rng)
        b_small = bias(tensor)
        b_big = bias(tensor.base_change(big))
        assert b_small.exponent == b_big.exponent
        N = b_small.exponent
        cnt, cnt_k = b_small.count, b_big.count

        # (q_hat/n) AR(T) <= AR(T^K)  <=>  cnt_K <= q^((n - q_hat) N) cnt^q_hat
        lower_exact = cnt_k <= q ** ((n - q_hat) * N) * cnt**q_hat
        # AR(T^K) <= (r_hat/n) AR(T)  <=>  cnt^r_hat <= q^((r_hat - n) N) cnt_K
        upper_exact = cnt**r_hat <= q ** ((r_hat - n) * N) * cnt_k

        ar_small = b_small.analytic_rank()
        ar_big = b_big.analytic_rank()
        lower_margin = ar_big - (q_hat / n) * ar_small
        upper_margin = (r_hat / n) * ar_small - ar_big

        report.rows.append(
            {
                "sample": index,
                "count": cnt,
                "count_ext": cnt_k,
                "exponent": N,
                "ar": ar_small,
                "ar_ext": ar_big,
                "lower_ok": bool(lower_exact and lower_margin >= -TOLERANCE),
                "upper_ok": bool(upper_exact and upper_margin >= -TOLERANCE),
                "lower_margin": lower_margin,
                "upper_margin": upper_margin,
            }
        )
    return report


# -- suite runner ------------------------------------------------------------------


def default_config() -> dict:
    """The grid the acceptance criteria pin down, as a suite config."""
    return {
        "fact": {"samples": 100000, "seed": 20240817},
        "prop_r": {
            "d_values": [2, 3, 4, 5],
            "l_max": 64,
            "n_exhaustive_max": 1000,
            "n_max": 1000000,
            "random_samples": 120,
            "seed": 11,
        },
        "prop_q": {
            "d_values": [2, 3, 4, 5],
            "l_max": 64,
            "n_exhaustive_max": 1000,
            "n_max": 1000000,
            "random_samples": 120,
            "seed": 12,
        },
        "constants": {
            "d_values": [2, 3, 4, 5, 6],
            "q_values": [2, 3, 4, 5, 7, 8, 9, 16, 25],
            "n_window": 50,
        },
        "qmon": {"q_values": [2, 3], "m_max": 3, "n_max": 5, "d_max": 4},
        "chudnovsky": {"d_max": 4, "n_max": 4, "q_values": [2, 3, 4, 5, 7, 8, 9]},
        "places": {"q_values": [2, 3, 4], "n_max": 6},
        "stability": [
            {"q": 2, "n": 2, "d": 3, "format": [2, 2, 2], "samples": 50, "seed": 101},
            {"q": 2, "n": 3, "d": 3, "format": [2, 2, 2], "samples": 50, "seed": 102},
            {"q": 2, "n": 4, "d": 3, "format": [2, 2, 2], "samples": 50, "seed": 103},
            {"q": 3, "n": 2, "d": 3, "format": [2, 2, 2], "samples": 50, "seed": 104},
        ],
        "expect_violation": [],
        "certificates": {"files": []},
    }


def _prime_powers_up_to(limit: int) -> list[int]:
    return [v for v in range(2, limit + 1) if _is_prime_power(v)]


def _prop_grid_ns(lo: int, cfg: dict, boundaries: list[int], rng: random.Random) -> list[int]:
    n_small = int(cfg.get("n_exhaustive_max", 1000))
    n_max = int(cfg.get("n_max", 1000000))
    values = set(range(lo, min(n_small, n_max) + 1))
    for b in boundaries:
        for v in (b - 1, b, b + 1):
            if lo <= v <= n_max:
                values.add(v)
    values.add(n_max)
    for _ in range(int(cfg.get("random_samples", 120))):
        values.add(rng.randint(lo, n_max))
    return sorted(values)


def _run_prop_section(kind: str, cfg: dict) -> dict:
    rng = random.Random(cfg.get("seed", 0))
    l_values = _prime_powers_up_to(int(cfg.get("l_max", 64)))
    entries = []
    failures = 0
    checked = 0
    for d in cfg.get("d_values", [2, 3, 4, 5]):
        for l in l_values:
            if kind == "rank":
                if l < 8 * d:
                    continue
                lo = 2
                boundaries = []
                power = l
                while power // (4 * d) <= int(cfg.get("n_max", 1000000)):
                    boundaries.append(max(power // (4 * d), 2))
                    if power > 10**9:
                        break
                    power *= l
            else:
                lo = 4 * d
                boundaries = []
                power = 1
                while 2 * d * power <= int(cfg.get("n_max", 1000000)):
                    boundaries.append(2 * d * power)
                    power *= l
            for n in _prop_grid_ns(lo, cfg, boundaries, rng):
                witness = (
                    prop_r_witness(d, l, n) if kind == "rank" else prop_q_witness(d, l, n)
                )
                checked += 1
                if not witness.all_hold:
                    failures += 1
                    entries.append(witness.to_json())
    return {
        "checked": checked,
        "failures": failures,
        "failing_witnesses": entries,
        "status": "pass" if failures == 0 else "fail",
    }


def fact_random_check(samples: int, seed: int) -> int:
    """Feed `samples` hypothesis-satisfying tuples to check_interval_fact
    and cross-check each returned witness against a brute-force scan of
    the integer candidates.  Returns the number of failures (0 expected)."""
    rng = random.Random(seed)
    failures = 0
    for _ in range(samples):
        a = rng.randint(-1000, 1000)
        b = a + rng.randint(0, 40)
        # x <= b and y >= max(a, x + 1) hold by construction
        x = Fraction(b) - Fraction(rng.randint(0, 2560), rng.randint(1, 64))
        y = max(Fraction(a), x + 1) + Fraction(rng.randint(0, 256), rng.randint(1, 64))
        result = check_interval_fact(a, b, x, y)
        if not result.hypotheses_hold or result.witness is None:
            failures += 1
            continue
        scan = [
            v
            for v in range(max(a, math.ceil(x)), min(b, math.floor(y)) + 1)
            if a <= v <= b and x <= v <= y
        ]
        if not scan or result.witness != scan[0]:
            failures += 1
    return failures


def _run_fact_section(cfg: dict) -> dict:
    samples = int(cfg.get("samples", 100000))
    failures = fact_random_check(samples, int(cfg.get("seed", 0)))
    return {
        "samples": samples,
        "failures": failures,
        "status": "pass" if failures == 0 else "fail",
    }


def _run_constants_section(cfg: dict) -> dict:
    entries = []
    failures = 0
    for d in cfg.get("d_values", [2, 3, 4, 5, 6]):
        for q in cfg.get("q_values", [2, 3, 4, 5, 7, 8, 9, 16, 25]):
            report = theorem_chain(d, q)
            if not report.all_hold:
                failures += 1
                entries.append(report.to_json())
            for n in range(d * d + 1, d * d + 1 + int(cfg.get("n_window", 50))):
                rep = theorem_chain(d, q, n)
                if not rep.all_hold:
                    failures += 1
                    entries.append(rep.to_json())
    return {"failures": failures, "failing": entries, "status": "pass" if failures == 0 else "fail"}


def _run_qmon_section(cfg: dict) -> dict:
    from .multtensor import verify_qmon
    from .certificates import verify_restriction

    checked = 0
    violations = 0
    failures = 0
    for q in cfg.get("q_values", [2, 3]):
        for m in range(1, int(cfg.get("m_max", 3)) + 1):
            for n in range(1, int(cfg.get("n_max", 5)) + 1):
                for d in range(2, int(cfg.get("d_max", 4)) + 1):
                    if n - 1 >= (d - 1) * (m - 1):
                        cert = verify_qmon(q, m, n, d)
                        checked += 1
                        if not verify_restriction(cert):
                            failures += 1
                    else:
                        try:
                            verify_qmon(q, m, n, d)
                            failures += 1
                        except HypothesisViolated:
                            violations += 1
    return {
        "verified": checked,
        "hypothesis_violations": violations,
        "failures": failures,
        "status": "pass" if failures == 0 else "fail",
    }


def _run_chudnovsky_section(cfg: dict) -> dict:
    from .certificates import verify_decomposition, verify_restriction
    from .multtensor import MultSpec, mult_tensor

    ranks = 0
    subranks = 0
    failures = 0
    for d in range(2, int(cfg.get("d_max", 4)) + 1):
        for n in range(1, int(cfg.get("n_max", 4)) + 1):
            for q in cfg.get("q_values", [2, 3, 4, 5, 7, 8, 9]):
                base = field_of_order(q)
                r = (d - 1) * (n - 1) + 1
                if r <= q + 1:
                    deco = chudnovsky_rank(d, n, base)
                    target = mult_tensor(MultSpec(base, extend(base, n), d))
                    if deco.rank != r or not verify_decomposition(target, deco):
                        failures += 1
                    ranks += 1
                for size in range(1, n + 1):
                    if (d - 1) * (size - 1) < n and size <= q + 1:
                        cert = chudnovsky_subrank(d, n, base, size)
                        if not verify_restriction(cert):
                            failures += 1
                        subranks += 1
    return {
        "rank_certificates": ranks,
        "subrank_certificates": subranks,
        "failures": failures,
        "status": "pass" if failures == 0 else "fail",
    }


def _run_places_section(cfg: dict) -> dict:
    import itertools

    from . import polys
    from .rankbounds import count_places_rational

    failures = 0
    checked = 0
    for q in cfg.get("q_values", [2, 3, 4]):
        base = field_of_order(q)
        # enumeration cross-check: count monic irreducibles degree by degree
        for n in range(1, int(cfg.get("n_max", 6)) + 1):
            if n == 1:
                expected = q + 1
            else:
                expected = 0
                for tail in itertools.product(range(q), repeat=n):
                    if polys.is_irreducible(base, list(tail) + [base.one_code]):
                        expected += 1
            checked += 1
            if count_places_rational(q, n) != expected:
                failures += 1
    return {"checked": checked, "failures": failures, "status": "pass" if failures == 0 else "fail"}


def _run_stability_section(entries: list) -> tuple[list, int]:
    out = []
    failures = 0
    for entry in entries:
        report = stability_experiment(
            q=int(entry["q"]),
            n=int(entry["n"]),
            d=int(entry["d"]),
            dims=entry["format"],
            samples=int(entry.get("samples", 50)),
            seed=int(entry.get("seed", 0)),
        )
        payload = report.to_json()
        payload["status"] = "pass" if report.all_hold else "fail"
        if not report.all_hold:
            failures += 1
        # keep reports compact: only violations are listed row by row
        payload["violations"] = [
            r for r in payload.pop("rows") if not (r["lower_ok"] and r["upper_ok"])
        ]
        out.append(payload)
    return out, failures


def _run_expectations(entries: list) -> tuple[list, int]:
    out = []
    failures = 0
    runners = {"prop_r": prop_r_witness, "prop_q": prop_q_witness}
    for entry in entries:
        check = entry.get("check")
        if check not in runners:
            raise ConfigError(f"unknown expect_violation check {check!r}")
        try:
            runners[check](int(entry["d"]), int(entry["l"]), int(entry["n"]))
            status = "fail"  # expected a violation, got none
            failures += 1
        except HypothesisViolated as exc:
            status = "expected-violation"
            entry = dict(entry, message=str(exc))
        out.append(dict(entry, status=status))
    return out, failures


def _run_certificates_section(files: list) -> tuple[list, int, int]:
    """Returns entries, assertion failures, invalid-input failures."""
    from .certificates import verify_decomposition, verify_restriction
    from .errors import CertificateInvalid
    from .multtensor import mult_tensor

    out = []
    invalid = 0
    for path in files:
        entry = {"file": str(path)}
        try:
            with open(path, "r", encoding="utf-8") as handle:
                payload = json.load(handle)
            kind = payload.get("kind")
            if kind == "rank-decomposition":
                deco = RankDecomposition.from_json(payload)
                if deco.spec is None:
                    raise CertificateInvalid("decomposition lacks a target spec")
                ok = verify_decomposition(mult_tensor(deco.spec), deco)
            elif kind == "restriction-certificate":
                ok = verify_restriction(RestrictionCertificate.from_json(payload))
            else:
                raise CertificateInvalid(f"unknown certificate kind {kind!r}")
            if not ok:
                raise CertificateInvalid("exact verification failed")
            entry["status"] = "pass"
        except (OSError, ValueError, KeyError, CertificateInvalid) as exc:
            entry["status"] = "invalid"
            entry["error"] = f"CertificateInvalid: {exc}"
            invalid += 1
        out.append(entry)
    return out, 0, invalid


def run_suite(config: Optional[dict] = None) -> tuple[dict, int]:
    """Execute the configured grid of checks.  Returns (report, exit_code)
    with exit codes 0 = all pass, 1 = assertion failure,
    2 = invalid input or certificate."""
    if config is None:
        config = default_config()
    if not isinstance(config, dict):
        raise ConfigError("suite config must be a table")

    report: dict = {"schema": "tensorcert-suite/1"}
    digest_src = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    report["config_digest"] = hashlib.sha256(digest_src.encode()).hexdigest()[:16]

    failures = 0
    invalid = 0
    sections: dict = {}

    if "fact" in config:
        sections["fact"] = _run_fact_section(config["fact"])
        failures += sections["fact"]["failures"]
    if "prop_r" in config:
        sections["prop_r"] = _run_prop_section("rank", config["prop_r"])
        failures += sections["prop_r"]["failures"]
    if "prop_q" in config:
        sections["prop_q"] = _run_prop_section("subrank", config["prop_q"])
        failures += sections["prop_q"]["failures"]
    if "constants" in config:
        sections["constants"] = _run_constants_section(config["constants"])
        failures += sections["constants"]["failures"]
    if "qmon" in config:
        sections["qmon"] = _run_qmon_section(config["qmon"])
        failures += sections["qmon"]["failures"]
    if "chudnovsky" in config:
        sections["chudnovsky"] = _run_chudnovsky_section(config["chudnovsky"])
        failures += sections["chudnovsky"]["failures"]
    if "places" in config:
        sections["places"] = _run_places_section(config["places"])
        failures += sections["places"]["failures"]
    if "stability" in config:
        entries, bad = _run_stability_section(config["stability"])
        sections["stability"] = {"entries": entries, "failures": bad,
                                 "status": "pass" if bad == 0 else "fail"}
        failures += bad
    if "expect_violation" in config and config["expect_violation"]:
        entries, bad = _run_expectations(config["expect_violation"])
        sections["expect_violation"] = {"entries": entries, "failures": bad,
                                        "status": "pass" if bad == 0 else "fail"}
        failures += bad
    if "certificates" in config:
        files = config["certificates"].get("files", [])
        if files:
            entries, bad, inv = _run_certificates_section(files)
            sections["certificates"] = {
                "entries": entries,
                "failures": bad,
                "invalid": inv,
                "status": "pass" if bad == 0 and inv == 0 else "fail",
            }
            failures += bad
            invalid += inv

    report["sections"] = sections
    exit_code = 2 if invalid else (1 if failures else 0)
    report["summary"] = {
        "failures": failures,
        "invalid": invalid,
        "exit_code": exit_code,
        "status": "pass" if exit_code == 0 else "fail",
    }
    return report, exit_code


def report_to_csv_rows(report: dict) -> list[list]:
    """Flatten a suite report into (section, key, value) rows."""
    rows = [["section", "key", "value"]]
    for section, payload in sorted(report.get("sections", {}).items()):
        for key, value in sorted(payload.items()):
            if isinstance(value, (list, dict)):
                value = json.dumps(value, sort_keys=True, default=str)
            rows.append([section, key, str(value)])
    summary = report.get("summary", {})
    for key, value in sorted(summary.items()):
        rows.append(["summary", key, str(value)])
    return rows
