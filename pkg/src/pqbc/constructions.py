"""Keyed constructions over an ideal cipher: input/output-whitened FX, its
reflection variant, tweak-hash whitening (LRW style), sector/offset tweaks
(XEX2 style), and the marked-key wrapper used by the unique-search reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .cipher_core import IdealCipher, WidthMismatch
from .gf2n import FieldSpec, field, gf_inv, gf_mul, gf_pow, hash_mul


class TweakOutOfSpace(ValueError):
    pass


class PromiseViolated(RuntimeError):
    pass


J_MAX = (1 << 20) - 1  # offset-exponent cap for sector tweaks


@dataclass(frozen=True)
class FxKey:
    k0: int  # m-bit cipher key
    k1: int  # n-bit input whitening
    k2: int  # n-bit output whitening

    def check(self, E: IdealCipher) -> None:
        E.params.check_key(self.k0)
        E.params.check_block(self.k1)
        E.params.check_block(self.k2)


@dataclass(frozen=True)
class LrwKey:
    k: int        # m-bit cipher key
    k_prime: int  # kappa-bit hash key
    kappa: int    # hash-key width, >= n for hash uniformity

    def check(self, E: IdealCipher) -> None:
        E.params.check_key(self.k)
        if self.kappa < E.params.n:
            raise ValueError(f"hash key width {self.kappa} < block width"
                             f" {E.params.n}; masks would not be uniform")
        if not 0 <= self.k_prime < (1 << self.kappa):
            raise WidthMismatch("hash key outside its declared width")


@dataclass(frozen=True)
class Xex2Key:
    k: int        # m-bit data key
    k_prime: int  # m-bit tweak key
    alpha: int    # nonzero field element generating the offsets
    single_key: bool = False

    def __post_init__(self):
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")
        if self.single_key and self.k != self.k_prime:
            raise ValueError("single-key variant requires k == k_prime")

    def check(self, E: IdealCipher) -> None:
        E.params.check_key(self.k)
        E.params.check_key(self.k_prime)
        E.params.check_block(self.alpha)


@dataclass(frozen=True)
class TweakXex:
    i: int  # n-bit sector value
    j: int  # offset index

    def __post_init__(self):
        if not 0 <= self.j <= J_MAX:
            raise TweakOutOfSpace(f"offset index {self.j} outside [0, 2^20-1]")


def fx_enc(E: IdealCipher, K: FxKey, x: int) -> int:
    K.check(E)
    return E.forward(K.k0, x ^ K.k1) ^ K.k2


def fx_dec(E: IdealCipher, K: FxKey, y: int) -> int:
    K.check(E)
    return E.inverse(K.k0, y ^ K.k2) ^ K.k1


def _reflect_alpha(E: IdealCipher) -> int:
    return 1 << (E.params.m - 1)


def fx_tilde_enc(E: IdealCipher, K: FxKey, x: int) -> int:
    """Reflection variant: encrypt forward when k0 has top bit 0, otherwise
    run the decryption direction under the alpha-shifted key, so that
    enc(k0) and dec(k0 ^ alpha) are the same map."""
    K.check(E)
    alpha = _reflect_alpha(E)
    if K.k0 & alpha == 0:
        return fx_enc(E, K, x)
    return fx_dec(E, FxKey(K.k0 ^ alpha, K.k1, K.k2), x)


def fx_tilde_dec(E: IdealCipher, K: FxKey, y: int) -> int:
    K.check(E)
    alpha = _reflect_alpha(E)
    if K.k0 & alpha == 0:
        return fx_dec(E, K, y)
    return fx_enc(E, FxKey(K.k0 ^ alpha, K.k1, K.k2), y)


class HashFamily:
    """A keyed tweak-to-mask map with an explicit tweak-space test."""

    def mask(self, k_prime: int, tweak) -> int:
        raise NotImplementedError

    def tweak_in_space(self, tweak) -> bool:
        raise NotImplementedError


class MultiplicativeHash(HashFamily):
    """h_{k'}(tau) = k' * tau over GF(2^n).  XOR-universal with eps = 2^-n;
    uniform only for tau != 0, so tweak 0 is kept out of the space.  Hash
    keys wider than n bits are reduced to their low n bits."""

    def __init__(self, f: FieldSpec):
        self.field = f

    def mask(self, k_prime: int, tweak: int) -> int:
        if not self.tweak_in_space(tweak):
            raise TweakOutOfSpace(f"tweak {tweak!r} outside the nonzero "
                                  f"{self.field.n}-bit space")
        return hash_mul(k_prime & (self.field.order - 1), tweak, self.field)

    def tweak_in_space(self, tweak) -> bool:
        return isinstance(tweak, int) and 0 < tweak < self.field.order


class ZeroHash(HashFamily):
    """Constant-zero masks; degenerate family for tests only."""

    def __init__(self, n: int):
        self.n = n

    def mask(self, k_prime: int, tweak) -> int:
        return 0

    def tweak_in_space(self, tweak) -> bool:
        return True


class XexHash(HashFamily):
    """h(i, j) = alpha^j * pi(i): the sector-tweak offset family, with pi an
    arbitrary permutation of {0,1}^n.  Ignores k_prime (the permutation
    carries the key material)."""

    def __init__(self, f: FieldSpec, pi: Callable[[int], int], alpha: int):
        if alpha == 0:
            raise ValueError("alpha must be nonzero")
        self.field = f
        self.pi = pi
        self.alpha = alpha

    def mask(self, k_prime: int, tweak) -> int:
        if not self.tweak_in_space(tweak):
            raise TweakOutOfSpace(f"bad sector tweak {tweak!r}")
        return gf_mul(gf_pow(self.alpha, tweak.j, self.field),
                      self.pi(tweak.i), self.field)

    def tweak_in_space(self, tweak) -> bool:
        return isinstance(tweak, TweakXex) and self.field.contains(tweak.i)


def lrw_enc(E: IdealCipher, h: HashFamily, K: LrwKey, tweak, x: int) -> int:
    K.check(E)
    if not h.tweak_in_space(tweak):
        raise TweakOutOfSpace(f"tweak {tweak!r} outside the configured space")
    mask = h.mask(K.k_prime, tweak)
    return E.forward(K.k, x ^ mask) ^ mask


def lrw_dec(E: IdealCipher, h: HashFamily, K: LrwKey, tweak, y: int) -> int:
    K.check(E)
    if not h.tweak_in_space(tweak):
        raise TweakOutOfSpace(f"tweak {tweak!r} outside the configured space")
    mask = h.mask(K.k_prime, tweak)
    return E.inverse(K.k, y ^ mask) ^ mask


def _xex_delta(E: IdealCipher, K: Xex2Key, t: TweakXex) -> int:
    f = field(E.params.n)
    return gf_mul(gf_pow(K.alpha, t.j, f), E.forward(K.k_prime, t.i), f)


def xex2_enc(E: IdealCipher, K: Xex2Key, t: TweakXex, x: int) -> int:
    K.check(E)
    delta = _xex_delta(E, K, t)
    return E.forward(K.k, x ^ delta) ^ delta


def xex2_dec(E: IdealCipher, K: Xex2Key, t: TweakXex, y: int) -> int:
    K.check(E)
    delta = _xex_delta(E, K, t)
    return E.inverse(K.k, y ^ delta) ^ delta


def xex2_ideal_hash_enc(E: IdealCipher, k: int, pi: Callable[[int], int],
                        alpha: int, t: TweakXex, x: int) -> int:
    """xex2_enc with the tweak-key permutation replaced by an arbitrary pi."""
    f = field(E.params.n)
    delta = gf_mul(gf_pow(alpha, t.j, f), pi(t.i), f)
    return E.forward(k, x ^ delta) ^ delta


def xex2_ideal_hash_dec(E: IdealCipher, k: int, pi: Callable[[int], int],
                        alpha: int, t: TweakXex, y: int) -> int:
    f = field(E.params.n)
    delta = gf_mul(gf_pow(alpha, t.j, f), pi(t.i), f)
    return E.inverse(k, y ^ delta) ^ delta


class UniqueSearchView:
    """Cipher view E' that answers P at keys marked by the predicate f and E
    everywhere else.  The at-most-one-marked-key promise is checked lazily:
    observing a second marked key raises."""

    def __init__(self, f: Callable[[int], int], P: Sequence[int], E: IdealCipher):
        self.f = f
        self.E = E
        self.params = E.params
        self._P = list(P)
        if len(self._P) != (1 << E.params.n):
            raise WidthMismatch("P must be a permutation table of size 2^n")
        self._P_inv = [0] * len(self._P)
        for x, y in enumerate(self._P):
            self._P_inv[y] = x
        self._marked_seen: Optional[int] = None
        self.forward_queries = 0
        self.inverse_queries = 0

    def _check_promise(self, k: int) -> bool:
        if not self.f(k):
            return False
        if self._marked_seen is None:
            self._marked_seen = k
        elif self._marked_seen != k:
            raise PromiseViolated(
                f"two marked keys observed: {self._marked_seen:#x}, {k:#x}")
        return True

    def forward(self, k: int, tau: int) -> int:
        self.params.check_key(k)
        self.params.check_block(tau)
        self.forward_queries += 1
        if self._check_promise(k):
            return self._P[tau]
        return int(self.E.table(k)[tau])

    def inverse(self, k: int, y: int) -> int:
        self.params.check_key(k)
        self.params.check_block(y)
        self.inverse_queries += 1
        if self._check_promise(k):
            return self._P_inv[y]
        return int(self.E.table_inv(k)[y])


def unique_search_wrapper(f: Callable[[int], int], P: Sequence[int],
                          E: IdealCipher) -> UniqueSearchView:
    return UniqueSearchView(f, P, E)
