import numpy as np
import pytest

from pqbc.cipher_core import CipherParams, ideal_cipher_new
from pqbc.constructions import (FxKey, LrwKey, MultiplicativeHash, PromiseViolated,
                                TweakOutOfSpace, TweakXex, Xex2Key, ZeroHash,
                                fx_dec, fx_enc, fx_tilde_dec, fx_tilde_enc,
                                lrw_dec, lrw_enc, unique_search_wrapper,
                                xex2_dec, xex2_enc)
from pqbc.gf2n import field

E = ideal_cipher_new(CipherParams(m=6, n=8, seed=77))


def test_fx_round_trip_exhaustive():
    K = FxKey(k0=13, k1=0xA7, k2=0x3C)
    for x in range(256):
        assert fx_dec(E, K, fx_enc(E, K, x)) == x


def test_fx_differs_from_bare_cipher():
    K = FxKey(k0=13, k1=0xA7, k2=0x3C)
    assert any(fx_enc(E, K, x) != E.table(13)[x] for x in range(16))


def test_fx_tilde_round_trip_and_reflection():
    alpha = 1 << (E.params.m - 1)
    for k0 in (3, 3 | alpha):
        K = FxKey(k0=k0, k1=0x11, k2=0x22)
        for x in range(0, 256, 7):
            assert fx_tilde_dec(E, K, fx_tilde_enc(E, K, x)) == x
    # reflection identity: enc under k0 equals dec under k0 xor alpha
    K = FxKey(k0=5, k1=0x11, k2=0x22)
    Kr = FxKey(k0=5 ^ alpha, k1=0x11, k2=0x22)
    for x in range(0, 256, 5):
        assert fx_tilde_enc(E, K, x) == fx_tilde_dec(E, Kr, x)
        assert fx_tilde_dec(E, K, x) == fx_tilde_enc(E, Kr, x)


def test_lrw_round_trip_and_tweak_separation():
    f = field(8)
    h = MultiplicativeHash(f)
    K = LrwKey(k=9, k_prime=0x4D, kappa=8)
    for tau in (1, 2, 0xFF):
        for x in range(0, 256, 11):
            assert lrw_dec(E, h, K, tau, lrw_enc(E, h, K, tau, x)) == x
    assert lrw_enc(E, h, K, 1, 0) != lrw_enc(E, h, K, 2, 0) or \
        lrw_enc(E, h, K, 1, 1) != lrw_enc(E, h, K, 2, 1)


def test_multiplicative_hash_rejects_zero_tweak():
    h = MultiplicativeHash(field(8))
    K = LrwKey(k=9, k_prime=0x4D, kappa=8)
    with pytest.raises(TweakOutOfSpace):
        lrw_enc(E, h, K, 0, 5)


def test_lrw_kappa_width_enforced():
    with pytest.raises(ValueError):
        LrwKey(k=1, k_prime=0, kappa=4).check(E)


def test_zero_hash_reduces_lrw_to_bare_key():
    h = ZeroHash(8)
    K = LrwKey(k=7, k_prime=0, kappa=8)
    for x in range(0, 256, 13):
        assert lrw_enc(E, h, K, 3, x) == E.table(7)[x]


def test_xex2_round_trip_and_tweak_space():
    E2 = ideal_cipher_new(CipherParams(m=8, n=8, seed=31))
    K = Xex2Key(k=5, k_prime=9, alpha=2)
    for t in (TweakXex(0, 0), TweakXex(3, 5), TweakXex(255, (1 << 20) - 1)):
        for x in range(0, 256, 17):
            assert xex2_dec(E2, K, t, xex2_enc(E2, K, t, x)) == x
    with pytest.raises(TweakOutOfSpace):
        TweakXex(0, 1 << 20)
    with pytest.raises(ValueError):
        Xex2Key(k=5, k_prime=9, alpha=0)
    with pytest.raises(ValueError):
        Xex2Key(k=5, k_prime=9, alpha=2, single_key=True)


def test_xex2_offsets_differ_across_j():
    E2 = ideal_cipher_new(CipherParams(m=8, n=8, seed=31))
    K = Xex2Key(k=5, k_prime=9, alpha=2)
    outs = {xex2_enc(E2, K, TweakXex(1, j), 0x42) for j in range(6)}
    assert len(outs) > 1


def test_unique_search_wrapper_answers_p_at_marked_key():
    P = list(range(256))  # identity permutation

    def f(k):
        return 1 if k == 21 else 0

    view = unique_search_wrapper(f, P, E)
    assert view.forward(21, 33) == 33
    assert view.inverse(21, 33) == 33
    assert view.forward(4, 33) == int(E.table(4)[33])


def test_unique_search_wrapper_promise_violation():
    P = list(range(256))
    view = unique_search_wrapper(lambda k: 1 if k in (3, 9) else 0, P, E)
    view.forward(3, 0)
    with pytest.raises(PromiseViolated):
        view.forward(9, 0)
