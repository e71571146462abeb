"""Seeded ideal ciphers, the two-point swap, transcripts, and the
swap-chain modified cipher used by the hybrid identities.

An IdealCipher is a family of independent random permutations of {0,1}^n
indexed by m-bit keys; each key's table is a pure function of (seed, key) and
is materialized lazily.  A ModifiedCipher is the same family minimally rewired
at one target key so that a transcript of masked queries is answered exactly.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np


class ParamsOutOfRange(ValueError):
    pass


class WidthMismatch(ValueError):
    pass


class RepeatedQuery(ValueError):
    pass


_MASK64 = (1 << 64) - 1


def mix64(seed: int, k: int) -> int:
    """splitmix64 finalizer over seed+k; the documented per-key stream seed."""
    z = (seed + k * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class CipherParams:
    m: int
    n: int
    seed: int

    def __post_init__(self):
        if not 1 <= self.n <= 20:
            raise ParamsOutOfRange(f"block width n={self.n} outside [1, 20]")
        if not 1 <= self.m <= 24:
            raise ParamsOutOfRange(f"key width m={self.m} outside [1, 24]")
        if not 0 <= self.seed < (1 << 64):
            raise ParamsOutOfRange("seed must be a 64-bit value")

    def check_key(self, k: int) -> None:
        if not 0 <= k < (1 << self.m):
            raise WidthMismatch(f"key {k:#x} is not {self.m}-bit")

    def check_block(self, x: int) -> None:
        if not 0 <= x < (1 << self.n):
            raise WidthMismatch(f"block {x:#x} is not {self.n}-bit")


class IdealCipher:
    """Lazily materialized family of random permutations, one per key.

    forward/inverse bump the query counters; table()/table_inv() are the
    uncounted accessors for internal algebra (hybrid construction, tests).
    """

    # keep at most this many per-key tables resident; key-space scans would
    # otherwise materialize 2^m tables of 2^n entries
    MAX_CACHED_TABLES = 64

    def __init__(self, params: CipherParams):
        self.params = params
        self._fwd: dict[int, np.ndarray] = {}
        self._inv: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()
        self.forward_queries = 0
        self.inverse_queries = 0

    def table(self, k: int) -> np.ndarray:
        self.params.check_key(k)
        t = self._fwd.get(k)
        if t is None:
            with self._lock:
                t = self._fwd.get(k)
                if t is None:
                    rng = np.random.default_rng(mix64(self.params.seed, k))
                    t = rng.permutation(1 << self.params.n)
                    inv = np.empty_like(t)
                    inv[t] = np.arange(t.size)
                    while len(self._fwd) >= self.MAX_CACHED_TABLES:
                        # evict in insertion order; regeneration is pure
                        old = next(iter(self._fwd))
                        del self._fwd[old], self._inv[old]
                    self._fwd[k] = t
                    self._inv[k] = inv
        return t

    def table_inv(self, k: int) -> np.ndarray:
        self.table(k)
        return self._inv[k]

    def forward(self, k: int, x: int) -> int:
        self.params.check_block(x)
        self.forward_queries += 1
        return int(self.table(k)[x])

    def inverse(self, k: int, y: int) -> int:
        self.params.check_block(y)
        self.inverse_queries += 1
        return int(self.table_inv(k)[y])


def ideal_cipher_new(params: CipherParams) -> IdealCipher:
    return IdealCipher(params)


def ic_forward(E: IdealCipher, k: int, x: int) -> int:
    return E.forward(k, x)


def ic_inverse(E: IdealCipher, k: int, y: int) -> int:
    return E.inverse(k, y)


def swap_apply(a: int, b: int, x: int) -> int:
    """Transposition of a and b: swap(a,b) is an involution fixing all else."""
    if x == a:
        return b
    if x == b:
        return a
    return x


@dataclass(frozen=True)
class Transcript:
    """Ordered classical queries (tweak, x, y); tweak is None for untweaked
    use.  No (tweak, x) and no (tweak, y) repeats, checked eagerly."""

    entries: tuple[tuple[Optional[int], int, int], ...]

    def __post_init__(self):
        ins = {(t, x) for t, x, _ in self.entries}
        outs = {(t, y) for t, _, y in self.entries}
        if len(ins) != len(self.entries) or len(outs) != len(self.entries):
            raise RepeatedQuery("transcript repeats a query point")

    @classmethod
    def of(cls, entries: Sequence[tuple[Optional[int], int, int]]) -> "Transcript":
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def extended(self, tweak: Optional[int], x: int, y: int) -> "Transcript":
        return Transcript(self.entries + ((tweak, x, y),))


@dataclass(frozen=True)
class OffsetRule:
    """Per-entry input/output masks and the key the rewiring targets.

    in_offset/out_offset take the entry index (0-based) and return the n-bit
    masks u_i, v_i.  Whitening-key style: constant masks; tweak-hash style:
    the hash of the entry's tweak.
    """

    target_key: int
    in_offset: Callable[[int], int]
    out_offset: Callable[[int], int]

    @classmethod
    def whitening(cls, k0: int, k1: int, k2: int) -> "OffsetRule":
        return cls(k0, lambda i: k1, lambda i: k2)

    @classmethod
    def tweak_hash(cls, k: int, masks: Sequence[int]) -> "OffsetRule":
        masks = tuple(masks)
        return cls(k, lambda i: masks[i], lambda i: masks[i])


class ModifiedCipher:
    """E composed with the transcript's swap chain at the target key.

    Each recursion step
        E^{T_j} = swap(E^{T_{j-1}}(x_j + u_j), y_j + v_j) o E^{T_{j-1}}
    touches at most two points, so the whole chain flattens into an override
    map of <= 2j points per direction; evaluation is O(1).
    """

    def __init__(self, base: IdealCipher, rule: OffsetRule, transcript: Transcript):
        self.base = base
        self.rule = rule
        self.transcript = transcript
        self.params = base.params
        self.forward_queries = 0
        self.inverse_queries = 0
        k0 = rule.target_key
        base.params.check_key(k0)
        fwd = base.table(k0)
        inv = base.table_inv(k0)
        over_f: dict[int, int] = {}
        over_i: dict[int, int] = {}

        def cur_fwd(x: int) -> int:
            return over_f.get(x, int(fwd[x]))

        def cur_inv(y: int) -> int:
            return over_i.get(y, int(inv[y]))

        for idx, (_, xq, yq) in enumerate(transcript.entries):
            u = xq ^ rule.in_offset(idx)
            v = yq ^ rule.out_offset(idx)
            base.params.check_block(u)
            base.params.check_block(v)
            a = cur_fwd(u)          # current image of the queried point
            if a == v:
                continue            # swap(a, a) is the identity
            pb = cur_inv(v)
            over_f[u], over_f[pb] = v, a
            over_i[v], over_i[a] = u, pb
        self._over_f = over_f
        self._over_i = over_i
        self._k0 = k0

    def forward(self, k: int, x: int) -> int:
        self.params.check_block(x)
        self.forward_queries += 1
        if k == self._k0 and x in self._over_f:
            return self._over_f[x]
        return int(self.base.table(k)[x])

    def inverse(self, k: int, y: int) -> int:
        self.params.check_block(y)
        self.inverse_queries += 1
        if k == self._k0 and y in self._over_i:
            return self._over_i[y]
        return int(self.base.table_inv(k)[y])

    def table(self, k: int) -> np.ndarray:
        t = self.base.table(k).copy()
        if k == self._k0:
            for x, y in self._over_f.items():
                t[x] = y
        return t

    def table_inv(self, k: int) -> np.ndarray:
        t = self.table(k)
        inv = np.empty_like(t)
        inv[t] = np.arange(t.size)
        return inv


def modified_build(E: IdealCipher, rule: OffsetRule, T: Transcript) -> ModifiedCipher:
    return ModifiedCipher(E, rule, T)


class ResampledCipher:
    """E with one key's permutation pre-composed with swap(s0, s1):
    E'(k0, x) = E(k0, swap(s0,s1,x)); every other key untouched."""

    def __init__(self, base: IdealCipher, k0: int, s0: int, s1: int):
        base.params.check_key(k0)
        base.params.check_block(s0)
        base.params.check_block(s1)
        self.base = base
        self.params = base.params
        self.k0, self.s0, self.s1 = k0, s0, s1
        self.forward_queries = 0
        self.inverse_queries = 0

    def forward(self, k: int, x: int) -> int:
        self.params.check_block(x)
        self.forward_queries += 1
        if k == self.k0:
            x = swap_apply(self.s0, self.s1, x)
        return int(self.base.table(k)[x])

    def inverse(self, k: int, y: int) -> int:
        self.params.check_block(y)
        self.inverse_queries += 1
        x = int(self.base.table_inv(k)[y])
        if k == self.k0:
            x = swap_apply(self.s0, self.s1, x)
        return x

    def table(self, k: int) -> np.ndarray:
        t = self.base.table(k).copy()
        if k == self.k0:
            t[self.s0], t[self.s1] = t[self.s1], t[self.s0]
        return t

    def table_inv(self, k: int) -> np.ndarray:
        t = self.table(k)
        inv = np.empty_like(t)
        inv[t] = np.arange(t.size)
        return inv


def resample_swap(E: IdealCipher, k0: int, s0: int, s1: int) -> ResampledCipher:
    return ResampledCipher(E, k0, s0, s1)


class LazyTweakablePermutation:
    """Ideal tweakable cipher: an independent uniform permutation of {0,1}^n
    per tweak, sampled point-by-point (fine for query counts << 2^n)."""

    def __init__(self, n: int, seed: int):
        self.n = n
        self._rng = np.random.default_rng(seed)
        self._fwd: dict[int, dict[int, int]] = {}
        self._inv: dict[int, dict[int, int]] = {}
        self.forward_queries = 0
        self.inverse_queries = 0

    def _maps(self, tweak):
        key = tweak if isinstance(tweak, int) else tuple(tweak)
        if key not in self._fwd:
            self._fwd[key] = {}
            self._inv[key] = {}
        return self._fwd[key], self._inv[key]

    def forward(self, tweak, x: int) -> int:
        self.forward_queries += 1
        fwd, inv = self._maps(tweak)
        if x not in fwd:
            size = 1 << self.n
            while True:
                y = int(self._rng.integers(size))
                if y not in inv:
                    break
            fwd[x] = y
            inv[y] = x
        return fwd[x]

    def inverse(self, tweak, y: int) -> int:
        self.inverse_queries += 1
        fwd, inv = self._maps(tweak)
        if y not in inv:
            size = 1 << self.n
            while True:
                x = int(self._rng.integers(size))
                if x not in fwd:
                    break
            fwd[x] = y
            inv[y] = x
        return inv[y]
