import numpy as np
import pytest

from pqbc.attacks import (AmbiguousKey, CountingOracle, NoKey, OfflineView,
                          RecoveryFailed, birthday_distinguisher,
                          classical_key_recovery, em_distinguisher,
                          exhaustive_key_search, make_ideal_oracle,
                          make_lrw_oracle, make_xex2_oracle)
from pqbc.cipher_core import CipherParams, ideal_cipher_new, mix64
from pqbc.constructions import LrwKey, MultiplicativeHash, Xex2Key
from pqbc.gf2n import field, hash_mul

N = 16
F = field(N)


def planted_lrw(seed, m=12):
    E = ideal_cipher_new(CipherParams(m=m, n=N, seed=mix64(seed, 0xE)))
    rng = np.random.default_rng(mix64(seed, 0xA))
    K = LrwKey(int(rng.integers(1 << m)), int(rng.integers(1, 1 << N)), N)
    return E, K, make_lrw_oracle(E, MultiplicativeHash(F), K)


def planted_xex2(seed, m=12):
    E = ideal_cipher_new(CipherParams(m=m, n=N, seed=mix64(seed, 0xE)))
    rng = np.random.default_rng(mix64(seed, 0xA))
    K = Xex2Key(int(rng.integers(1 << m)), int(rng.integers(1 << m)), alpha=2)
    return E, K, make_xex2_oracle(E, K)


def test_counting_oracle_counts():
    oracle = CountingOracle(lambda t, x: x)
    oracle.query(None, 5)
    oracle.query(None, 6)
    assert oracle.count == 2


def test_offline_view_separate_counter():
    E = ideal_cipher_new(CipherParams(m=6, n=8, seed=1))
    off = OfflineView(E)
    y = off.forward(3, 7)
    assert off.inverse(3, y) == 7
    assert off.count == 2
    assert E.forward_queries == 0  # construction counters untouched


def test_birthday_recovers_planted_hash_key():
    wins = 0
    for i in range(10):
        E, K, oracle = planted_lrw(1000 + i)
        rng = np.random.default_rng(i)
        rep = birthday_distinguisher(oracle, 512, F, rng=rng)
        if rep.verdict:
            assert rep.recovered["k_prime_mask"] == K.k_prime
            wins += 1
        assert oracle.count <= 512
    assert wins >= 7


def test_birthday_ideal_rarely_confirms():
    for i in range(10):
        oracle = make_ideal_oracle(N, seed=2000 + i)
        rep = birthday_distinguisher(oracle, 512, F,
                                     rng=np.random.default_rng(i))
        assert not rep.verdict


def test_birthday_xex2_variant():
    E, K, oracle = planted_xex2(77)
    rep = birthday_distinguisher(oracle, 512, F, hash_kind="xex2",
                                 rng=np.random.default_rng(7))
    if rep.verdict:
        # recovered mask is the tweak-key image E_{k'}(sector)
        assert rep.recovered["k_prime_mask"] == int(E.table(K.k_prime)[1])


def test_em_recovers_whitening_difference():
    wins = 0
    for i in range(10):
        E, K, oracle = planted_lrw(3000 + i)
        rep = em_distinguisher(oracle, 512, N, (1, 2),
                               rng=np.random.default_rng(i))
        if rep.verdict:
            want = hash_mul(K.k_prime, 1, F) ^ hash_mul(K.k_prime, 2, F)
            assert rep.recovered["k_tilde"] == want
            wins += 1
    assert wins >= 5


def test_em_ideal_false_positive_rare():
    fps = sum(
        em_distinguisher(make_ideal_oracle(N, seed=4000 + i), 512, N, (1, 2),
                         rng=np.random.default_rng(i)).verdict
        for i in range(10))
    assert fps == 0


def test_exhaustive_key_search_unique_and_failure():
    E = ideal_cipher_new(CipherParams(m=10, n=8, seed=5))
    k = 341
    pairs = [(x, int(E.table(k)[x])) for x in (1, 2, 3, 4)]
    assert exhaustive_key_search(E, pairs) == k
    with pytest.raises(NoKey):
        exhaustive_key_search(E, [(1, int(E.table(k)[1]) ^ 1),
                                  (2, 0), (3, 1), (4, 2)])


def test_key_recovery_lrw_within_budget():
    E, K, oracle = planted_lrw(42)
    rep = classical_key_recovery(oracle, E, q_online=8 * 256, q_offline=1 << 12,
                                 kind="multiplicative", f=F,
                                 rng=np.random.default_rng(0))
    assert rep.recovered == {"k": K.k, "k_prime": K.k_prime}
    assert rep.online_queries <= 8 * 256
    assert rep.offline_queries <= 1 << 12


def test_key_recovery_xex2_within_budget():
    E, K, oracle = planted_xex2(43)
    rep = classical_key_recovery(oracle, E, q_online=8 * 256, q_offline=1 << 12,
                                 kind="xex2", f=F,
                                 rng=np.random.default_rng(0))
    assert rep.recovered["k"] == K.k
    assert rep.recovered["k_prime"] == K.k_prime
    assert rep.online_queries <= 8 * 256
    assert rep.offline_queries <= 1 << 12


def test_key_recovery_fails_on_ideal_oracle():
    E = ideal_cipher_new(CipherParams(m=12, n=N, seed=9))
    oracle = make_ideal_oracle(N, seed=9)
    with pytest.raises(RecoveryFailed):
        classical_key_recovery(oracle, E, q_online=8 * 256, q_offline=1 << 12,
                               kind="multiplicative", f=F,
                               rng=np.random.default_rng(1))
