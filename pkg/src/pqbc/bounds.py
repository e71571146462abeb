"""Closed-form distinguishing-advantage bounds and attack-cost tradeoffs.

Every bound returns an AdvantageBound whose value is exactly the sum of its
reported terms.  Values above 1 are reported raw with a vacuous flag rather
than clamped: regime comparisons care about raw magnitudes.

Arithmetic: query counts and widths enter as exact integers; each term is
evaluated in Decimal with 50 digits before conversion to float, so 2^(m+n)
never loses integer precision on the way in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from decimal import Decimal, getcontext
from typing import Optional

getcontext().prec = 50


class RegimeError(ValueError):
    pass


class MissingParameter(ValueError):
    pass


@dataclass(frozen=True)
class BoundQuery:
    m: int = 0
    n: int = 0
    q_c: int = 0
    q_q: int = 0
    ell: Optional[int] = None      # max blocks per query
    sigma: Optional[int] = None    # total blocks across queries
    q_dec: Optional[int] = None    # decryption/verification queries
    s: Optional[int] = None        # tag bits
    eps: Optional[float] = None    # hash collision parameter
    c: Optional[int] = None        # key multiplicity for lifting

    def __post_init__(self):
        for name in ("q_c", "q_q"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    def need(self, *names: str):
        for name in names:
            if getattr(self, name) is None:
                raise MissingParameter(f"formula requires parameter {name!r}")


@dataclass(frozen=True)
class AdvantageBound:
    value: float
    formula_id: str
    terms: dict[str, float]
    extras: dict[str, float] = dc_field(default_factory=dict)

    @property
    def vacuous(self) -> bool:
        return self.value >= 1.0

    @property
    def clamped(self) -> float:
        return min(self.value, 1.0)


def _make(formula_id: str, terms: dict[str, float], **extras) -> AdvantageBound:
    return AdvantageBound(value=math.fsum(terms.values()), formula_id=formula_id,
                          terms=terms, extras=extras)


def _dsqrt(x) -> Decimal:
    return Decimal(x).sqrt()


def bound_fx_pq(q: BoundQuery) -> AdvantageBound:
    """Input/output-whitened cipher, classical construction queries plus
    quantum primitive queries:

        4 q_c sqrt(q_q) / sqrt(2^m (2^n - q_c + 1)) + 2 q_q sqrt(q_c) / 2^((m+n)/2)

    Extras carry the simplified form 8(q_c sqrt(q_q) + q_q sqrt(q_c)) /
    2^((m+n)/2) when q_c < (3/4) 2^n, and the full-codebook value q_q^2/2^m
    when q_c = 2^n.
    """
    m, n, qc, qq = q.m, q.n, q.q_c, q.q_q
    if qc > 1 << n:
        raise RegimeError(f"q_c = {qc} exceeds the codebook size 2^{n}")
    t1 = float(4 * qc * _dsqrt(qq) / _dsqrt((1 << m) * ((1 << n) - qc + 1)))
    t2 = float(2 * qq * _dsqrt(qc) / _dsqrt(1 << (m + n)))
    extras = {}
    if qc < (3 * (1 << n)) // 4:
        extras["simplified"] = float(
            8 * (qc * _dsqrt(qq) + qq * _dsqrt(qc)) / _dsqrt(1 << (m + n)))
    if qc == 1 << n:
        extras["full_codebook"] = float(Decimal(qq * qq) / (1 << m))
    return _make("fx_pq", {"reprogram_term": t1, "resample_term": t2}, **extras)


def bound_fx_classical(q_fx: int, q_e: int, m: int, n: int) -> AdvantageBound:
    """Classical-adversary product bound q_fx * q_e / 2^(m+n)."""
    return _make("fx_classical",
                 {"product_term": float(Decimal(q_fx * q_e) / (1 << (m + n)))})


def bound_lrw_pq_hybrid(q: BoundQuery) -> AdvantageBound:
    """Tweak-hash whitening, hybrid-argument route:
    6 q_c^2 / 2^n + 4 (q_c sqrt(q_q) + q_q sqrt(q_c)) / 2^((m+n)/2)."""
    m, n, qc, qq = q.m, q.n, q.q_c, q.q_q
    t1 = float(Decimal(6 * qc * qc) / (1 << n))
    t2 = float(4 * (qc * _dsqrt(qq) + qq * _dsqrt(qc)) / _dsqrt(1 << (m + n)))
    return _make("lrw_pq_hybrid", {"collision_term": t1, "hybrid_term": t2})


def bound_lrw_pq_general(q: BoundQuery) -> AdvantageBound:
    """Generic-lifting route: q_q^2 / 2^m + q_c^2 / 2^n."""
    t1 = float(Decimal(q.q_q ** 2) / (1 << q.m))
    t2 = float(Decimal(q.q_c ** 2) / (1 << q.n))
    return _make("lrw_pq_general", {"key_search_term": t1, "collision_term": t2})


def bound_xex2_pq(q: BoundQuery) -> AdvantageBound:
    """Sector-tweak variant: 2 q_q^2 / 2^m + q_c^2 / (2^n - 1); the factor 2
    accounts for the two cipher keys and the denominator for the ideal-hash
    family's eps = 1/(2^n - 1)."""
    t1 = float(Decimal(2 * q.q_q ** 2) / (1 << q.m))
    t2 = float(Decimal(q.q_c ** 2) / ((1 << q.n) - 1))
    return _make("xex2_pq", {"key_search_term": t1, "collision_term": t2})


def bound_lrw_classical(q: BoundQuery) -> AdvantageBound:
    """Adv_E(q) + q^2 * eps with eps the hash family's XOR-universality
    parameter; the cipher term is left to the caller as q_q^2/2^m here
    (information-theoretic ideal-cipher key search)."""
    q.need("eps")
    t1 = float(Decimal(q.q_q ** 2) / (1 << q.m))
    t2 = q.q_c ** 2 * q.eps
    return _make("lrw_classical", {"cipher_term": t1, "hash_term": t2})


def bound_xex2_classical(q: BoundQuery) -> AdvantageBound:
    """2 Adv_E(q) + q^2 / (2^n - 1) with the same ideal-cipher substitution."""
    t1 = float(Decimal(2 * q.q_q ** 2) / (1 << q.m))
    t2 = float(Decimal(q.q_c ** 2) / ((1 << q.n) - 1))
    return _make("xex2_classical", {"cipher_term": t1, "hash_term": t2})


def bound_resampling(n: int, q: int, eps: float) -> float:
    """Detectability of swapping two outputs after a q-query phase:
    4 sqrt(2^n q eps)."""
    return float(4 * _dsqrt(Decimal(1 << n) * q * Decimal(eps)))


def bound_reprogramming(q: int, eps: float) -> float:
    """Detectability of reprogramming hidden points hit with probability
    <= eps per input: 2 q sqrt(eps)."""
    return float(2 * q * _dsqrt(Decimal(eps)))


def bound_mode(mode_id: str, q: BoundQuery) -> AdvantageBound:
    """Per-mode lifted bounds; term breakdown matches the reference table
    row by row.  q_c counts MAC/encryption queries, q_dec decryption or
    verification queries, sigma total blocks, s tag bits."""
    m, n, qc, qq = q.m, q.n, q.q_c, q.q_q
    mode_id = mode_id.lower()
    if mode_id == "cbc":
        q.need("ell")
        return _make("mode_cbc", {
            "quantum_term": float(Decimal(qq ** 2 * q.ell ** 2) / (1 << m)),
            "classical_term": float(Decimal(qc ** 2 * q.ell ** 2) / (1 << n)),
        })
    if mode_id == "ecbc":
        q.need("ell")
        return _make("mode_ecbc", {
            "quantum_term": float(Decimal(2 * qq ** 2 * q.ell ** 2) / (1 << m)),
            "classical_term": float(Decimal(4 * qc ** 2 * q.ell ** 2) / (1 << n)),
        })
    if mode_id == "cmac":
        q.need("ell")
        # classical term uses q := q_c
        return _make("mode_cmac", {
            "quantum_term": float(Decimal((qq * q.ell + 1) ** 2) / (1 << m)),
            "classical_term": float(
                Decimal(5 * (q.ell ** 2 + 1) * qc ** 2) / (1 << n)),
        })
    if mode_id == "gcm":
        q.need("ell", "sigma", "q_dec", "s")
        tot = q.sigma + qc + q.q_dec
        return _make("mode_gcm", {
            "quantum_term": float(Decimal(qq ** 2 * q.ell ** 2) / (1 << m)),
            "hash_term": float(Decimal((tot + 1) ** 2) / (1 << (n + 1))),
            "counter_term": float(Decimal(tot) / (1 << (n - 1))),
            "forgery_term": float(Decimal(q.q_dec * (q.ell + 1)) / (1 << q.s)),
        })
    if mode_id == "gcm-sst":
        q.need("ell", "sigma", "q_dec", "s")
        tot = q.sigma + 3 * (qc + q.q_dec)
        return _make("mode_gcm_sst", {
            "quantum_term": float(Decimal(qq ** 2 * q.ell ** 2) / (1 << m)),
            "hash_term": float(Decimal(tot ** 2) / (1 << (n + 1))),
            "tag_hash_term": float(Decimal(q.q_dec * q.ell) / (1 << n)),
            "forgery_term": float(Decimal(q.q_dec) / (1 << q.s)),
        })
    if mode_id == "lrw":
        return _make("mode_lrw", dict(bound_lrw_pq_general(q).terms))
    if mode_id == "xex2":
        return _make("mode_xex2", dict(bound_xex2_pq(q).terms))
    raise MissingParameter(f"unknown mode id {mode_id!r}")


def bound_lift(adv_sprp: float, delta: float, c: int = 1) -> float:
    """Generic mode lifting: c * (primitive advantage) + information-
    theoretic mode term delta(q)."""
    return c * adv_sprp + delta


_TRADEOFF_IDS = ("classical", "grover", "grover-bht", "mitm", "offline-simon")


def attack_tradeoff(attack_id: str, m: int, n: int,
                    q_c_grid: Optional[list[int]] = None) -> list[tuple[float, float]]:
    """(q_c, q_q) cost points/curves for the catalogued key-recovery attacks.

    Point-shaped rows return a single tuple; curve-shaped rows are evaluated
    on the supplied q_c grid (default: powers of two up to the row's q_c cap),
    clamping each row's side conditions.
    """
    attack_id = attack_id.lower()
    if attack_id == "classical":
        return [(float(1 << (m + n)), 0.0)]
    if attack_id == "grover":
        return [(1.0, float(2 ** ((m + n) / 2)))]
    if attack_id == "grover-bht":
        return [(float(2 ** (n / 3)), float(2 ** (m / 2 + n / 3)))]
    if attack_id == "mitm":
        cap = min(2 ** n, 2 ** (3 * (m + n) / 7))
        grid = q_c_grid or _default_grid(cap)
        return [(float(qc), (2 ** (3 * (m + n)) / qc) ** (1 / 6))
                for qc in grid if 1 <= qc <= cap]
    if attack_id == "offline-simon":
        cap = 2 ** n
        grid = q_c_grid or _default_grid(cap)
        return [(float(qc), math.sqrt(2 ** (m + n) / qc))
                for qc in grid if 1 <= qc <= cap]
    raise MissingParameter(
        f"unknown attack id {attack_id!r}; expected one of {_TRADEOFF_IDS}")


def _default_grid(cap: float) -> list[int]:
    grid, v = [], 1
    while v <= cap:
        grid.append(v)
        v *= 2
    return grid
