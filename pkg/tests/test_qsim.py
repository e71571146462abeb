import math

import numpy as np
import pytest

from pqbc.cipher_core import CipherParams, ideal_cipher_new, mix64
from pqbc.constructions import FxKey, fx_enc
from pqbc.qsim import (PromiseViolated, QueryCounter, RecoveryFailed,
                       StateVector, grover_iterations, grover_state,
                       grover_success_probability, grover_unique_search,
                       offline_simon_demo, simon_period, simon_sample)


def test_state_vector_norm_and_uniform_start():
    st = StateVector(4)
    assert st.probabilities() == pytest.approx([1 / 16] * 16)
    st.check_norm()


def test_grover_success_probability_closed_form():
    for w in (4, 6, 8):
        t = grover_iterations(w)
        theta = math.asin(2 ** (-w / 2))
        assert grover_success_probability(w, t) == \
            pytest.approx(math.sin((2 * t + 1) * theta) ** 2)


def test_grover_state_matches_closed_form():
    w, t = 6, grover_iterations(6)
    marked = np.zeros(1 << w, dtype=bool)
    marked[37] = True
    counter = QueryCounter()
    st = grover_state(marked, w, t, counter)
    assert counter.quantum_queries == t
    assert st.probabilities()[37] == \
        pytest.approx(grover_success_probability(w, t))
    st.check_norm()


def test_grover_unique_search_yes_and_no():
    rng = np.random.default_rng(2)
    found, counter = grover_unique_search(lambda x: x == 777, 10, rng=rng)
    assert found == 777
    assert counter.quantum_queries == grover_iterations(10)
    found, _ = grover_unique_search(lambda x: 0, 10, rng=rng)
    assert found is None
    with pytest.raises(PromiseViolated):
        grover_unique_search(lambda x: x < 2, 6, rng=rng)
    with pytest.raises(ValueError):
        grover_unique_search(lambda x: 0, 13, rng=rng)


def make_simon_table(u, s, rng):
    perm = rng.permutation(1 << u)
    return [int(perm[min(x, x ^ s)]) for x in range(1 << u)]


def test_simon_samples_orthogonal():
    rng = np.random.default_rng(3)
    u, s = 6, 0b101101
    table = make_simon_table(u, s, rng)
    for _ in range(100):
        y = simon_sample(table, u, rng)
        assert bin(y & s).count("1") % 2 == 0


def test_simon_period_recovery():
    rng = np.random.default_rng(4)
    for u in (4, 6, 8):
        for _ in range(10):
            s = int(rng.integers(1, 1 << u))
            table = make_simon_table(u, s, rng)
            res = simon_period(lambda x: table[x], u, rng)
            assert res.s == s
            assert res.samples <= 4 * u


def test_simon_injective_reports_zero():
    rng = np.random.default_rng(5)
    table = list(rng.permutation(16))
    res = simon_period(lambda x: int(table[x]), 4, rng)
    assert res.s == 0


def test_simon_promise_violation():
    rng = np.random.default_rng(6)
    # 4-to-1 function: two independent periods break the promise
    with pytest.raises((PromiseViolated, RecoveryFailed)):
        simon_period(lambda x: x >> 2, 4, rng, max_samples=64)


def test_offline_simon_recovers_planted_key():
    seed = 101
    E = ideal_cipher_new(CipherParams(m=6, n=8, seed=seed))
    rng = np.random.default_rng(seed)
    K = FxKey(k0=int(rng.integers(64)), k1=int(rng.integers(256)),
              k2=int(rng.integers(256)))
    rep = offline_simon_demo(E, K, u=4, rng=rng)
    assert rep.recovered == {"k0": K.k0, "k1": K.k1, "k2": K.k2}
    assert rep.online_queries <= 4 * 2 ** 4
    # sanity: the recovered key reproduces the construction
    K2 = FxKey(**rep.recovered)
    assert all(fx_enc(E, K2, x) == fx_enc(E, K, x) for x in range(16))
