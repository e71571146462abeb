"""Monte-Carlo security experiments and the exhaustive hybrid-identity
verifier.

Worlds: "real" runs the keyed construction over a fresh seeded cipher;
"ideal" runs an independent random (tweakable) permutation next to the same
kind of cipher.  Distinguishers are classical and budgeted; their measured
advantage is reported with exact binomial (Clopper-Pearson) 99% intervals
and compared against the closed-form bounds.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np
from scipy import stats

from .cipher_core import (CipherParams, IdealCipher, LazyTweakablePermutation,
                          ModifiedCipher, OffsetRule, RepeatedQuery, Transcript,
                          ideal_cipher_new, mix64, modified_build, resample_swap)
from .constructions import (FxKey, LrwKey, MultiplicativeHash, TweakXex,
                            Xex2Key, fx_enc, lrw_enc, xex2_enc)
from .gf2n import field, gf_mul, hash_mul


class BudgetExceeded(RuntimeError):
    pass


class IdentityViolation(AssertionError):
    pass


CI_LEVEL = 0.99  # harness calibration constant


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    construction: str            # fx | lrw | xex2 | none
    distinguisher: str
    m: int
    n: int
    q_c: int
    q_q: int
    trials: int
    master_seed: int
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.q_c < 0 or self.q_q < 0:
            raise ValueError("budgets must be >= 0")


@dataclass(frozen=True)
class AdvantageEstimate:
    p_real: float
    p_ideal: float
    advantage: float
    ci_low: float
    ci_high: float
    n_real: int
    n_ideal: int


def clopper_pearson(k: int, n: int, level: float = CI_LEVEL) -> tuple[float, float]:
    alpha = 1.0 - level
    lo = 0.0 if k == 0 else float(stats.beta.ppf(alpha / 2, k, n - k + 1))
    hi = 1.0 if k == n else float(stats.beta.ppf(1 - alpha / 2, k + 1, n - k))
    return lo, hi


def estimate_from_counts(k_real: int, n_real: int,
                         k_ideal: int, n_ideal: int) -> AdvantageEstimate:
    p1, p0 = k_real / n_real, k_ideal / n_ideal
    lo1, hi1 = clopper_pearson(k_real, n_real)
    lo0, hi0 = clopper_pearson(k_ideal, n_ideal)
    adv = abs(p1 - p0)
    # conservative interval differencing for |p1 - p0|
    ci_high = max(hi1 - lo0, hi0 - lo1, 0.0)
    ci_low = max(0.0, lo1 - hi0, lo0 - hi1)
    return AdvantageEstimate(p_real=p1, p_ideal=p0, advantage=adv,
                             ci_low=ci_low, ci_high=ci_high,
                             n_real=n_real, n_ideal=n_ideal)


class _Budgeted:
    def __init__(self, fn, budget: int, label: str):
        self._fn = fn
        self.budget = budget
        self.count = 0
        self.label = label

    def __call__(self, *args):
        if self.count >= self.budget:
            raise BudgetExceeded(f"{self.label} budget {self.budget} overdrawn")
        self.count += 1
        return self._fn(*args)


@dataclass
class OracleBundle:
    """What a distinguisher sees: a budgeted construction oracle and
    budgeted forward/inverse access to the public cipher."""
    m: int
    n: int
    construction: _Budgeted        # (tweak, x) -> y
    prim_forward: _Budgeted        # (k, x) -> y
    prim_inverse: _Budgeted        # (k, y) -> x


def _make_bundle(config: ExperimentConfig, world: str, seed: int) -> OracleBundle:
    m, n = config.m, config.n
    E = ideal_cipher_new(CipherParams(m=m, n=n, seed=mix64(seed, 0xE)))
    rng = np.random.default_rng(mix64(seed, 0xA))
    f = field(n)
    if world == "real":
        if config.construction == "fx":
            K = FxKey(int(rng.integers(1 << m)), int(rng.integers(1 << n)),
                      int(rng.integers(1 << n)))
            enc = lambda tweak, x: fx_enc(E, K, x)
        elif config.construction == "lrw":
            K = LrwKey(int(rng.integers(1 << m)), int(rng.integers(1 << n)), n)
            h = MultiplicativeHash(f)
            enc = lambda tweak, x: lrw_enc(E, h, K, tweak, x)
        elif config.construction == "xex2":
            K = Xex2Key(int(rng.integers(1 << m)), int(rng.integers(1 << m)),
                        alpha=2)
            enc = lambda tweak, x: xex2_enc(E, K, tweak, x)
        else:
            raise ValueError(f"unknown construction {config.construction!r}")
    else:
        perm = LazyTweakablePermutation(n, mix64(seed, 0x1D))
        enc = lambda tweak, x: perm.forward(
            0 if tweak is None else
            (tweak if isinstance(tweak, int) else (tweak.i, tweak.j)), x)
    return OracleBundle(
        m=m, n=n,
        construction=_Budgeted(enc, config.q_c, "construction"),
        prim_forward=_Budgeted(lambda k, x: E.forward(k, x), config.q_q,
                               "primitive"),
        prim_inverse=_Budgeted(lambda k, y: E.inverse(k, y), config.q_q,
                               "primitive"),
    )


def _d_constant_one(bundle, q_c, q_q, rng):
    return 1


def _d_fx_match(bundle, q_c, q_q, rng):
    """Two construction queries; spend the primitive budget guessing
    (key, whitening) pairs and checking the input-difference relation."""
    c1 = bundle.construction(None, 0)
    c2 = bundle.construction(None, 1)
    target = c1 ^ c2
    for _ in range(q_q // 2):
        k = int(rng.integers(1 << bundle.m))
        g = int(rng.integers(1 << bundle.n))
        if bundle.prim_forward(k, 0 ^ g) ^ bundle.prim_forward(k, 1 ^ g) == target:
            return 1
    return 0


def _d_tweak_collision(bundle, q_c, q_q, rng):
    """Structured-tweak collision probe: output 1 iff m xor c repeats."""
    n = bundle.n
    f = field(n)
    half = n // 2
    ws = [i << half for i in range(1, q_c // 2 + 1)] + \
        [j for j in range(1, q_c - q_c // 2 + 1)]
    seen = set()
    for w in ws[:q_c]:
        mv = gf_mul(w, w, f)
        c = bundle.construction(w, mv)
        if mv ^ c in seen:
            return 1
        seen.add(mv ^ c)
    return 0


def _d_xex_collision(bundle, q_c, q_q, rng):
    n = bundle.n
    f = field(n)
    seen = set()
    w = 2
    for j in range(1, q_c + 1):
        mv = gf_mul(w, w, f)
        c = bundle.construction(TweakXex(1, j), mv)
        if mv ^ c in seen:
            return 1
        seen.add(mv ^ c)
        w = gf_mul(w, 2, f)
    return 0


def _d_birthday(bundle, q_c, q_q, rng):
    from .attacks import CountingOracle, birthday_distinguisher
    oracle = CountingOracle(lambda tweak, x: bundle.construction(tweak, x))
    rep = birthday_distinguisher(oracle, q_c, field(bundle.n), rng=rng)
    return int(rep.verdict)


DISTINGUISHERS: dict[str, Callable] = {
    "constant-one": _d_constant_one,
    "fx-match": _d_fx_match,
    "tweak-collision": _d_tweak_collision,
    "xex-collision": _d_xex_collision,
    "birthday": _d_birthday,
}


def run_distinguishing(config: ExperimentConfig) -> AdvantageEstimate:
    d = DISTINGUISHERS[config.distinguisher]
    counts = {}
    for world, tag in (("real", 0x5EA1), ("ideal", 0x1DEA)):
        k = 0
        for i in range(config.trials):
            seed = mix64(mix64(config.master_seed, tag), i)
            bundle = _make_bundle(config, world, seed)
            rng = np.random.default_rng(mix64(seed, 0xD))
            k += 1 if d(bundle, config.q_c, config.q_q, rng) else 0
        counts[world] = k
    return estimate_from_counts(counts["real"], config.trials,
                                counts["ideal"], config.trials)


# --- resampling experiment ---------------------------------------------------

@dataclass(frozen=True)
class DistributionSpec:
    """Distribution of the (key, point, point) triple whose output pair is
    swapped; eps is its exact max point probability."""
    kind: str                       # uniform | point_mass | uniform_over_recorded
    k0: Optional[int] = None
    s0: Optional[int] = None
    s1: Optional[int] = None

    def eps(self, params: CipherParams, q: int) -> float:
        if self.kind == "uniform":
            return 2.0 ** -(params.m + 2 * params.n)
        if self.kind == "point_mass":
            return 1.0
        if self.kind == "uniform_over_recorded":
            return (1.0 / max(q, 1)) * 2.0 ** -params.n
        raise ValueError(f"unknown kind {self.kind!r}")

    def sample(self, rng: np.random.Generator, params: CipherParams,
               records: list[tuple[int, int, int]]) -> tuple[int, int, int]:
        if self.kind == "uniform":
            return (int(rng.integers(1 << params.m)),
                    int(rng.integers(1 << params.n)),
                    int(rng.integers(1 << params.n)))
        if self.kind == "point_mass":
            return (self.k0, self.s0, self.s1)
        if self.kind == "uniform_over_recorded":
            k, x, _ = records[int(rng.integers(len(records)))]
            return (k, x, int(rng.integers(1 << params.n)))
        raise ValueError(f"unknown kind {self.kind!r}")


def _phase1_record_random(E: IdealCipher, q: int, rng) -> list[tuple[int, int, int]]:
    records = []
    seen = set()
    while len(records) < q:
        k = int(rng.integers(1 << E.params.m))
        x = int(rng.integers(1 << E.params.n))
        if (k, x) in seen:
            continue
        seen.add((k, x))
        records.append((k, x, E.forward(k, x)))
    return records


def _phase3_probe_recorded(oracle, triple, records) -> int:
    """Guess 'swapped' iff a recorded point changed."""
    k0, s0, s1 = triple
    lookup = {(k, x): y for k, x, y in records}
    for s in (s0, s1):
        if (k0, s) in lookup:
            return 1 if oracle.forward(k0, s) != lookup[(k0, s)] else 0
    return 0


def _phase1_record_low(E: IdealCipher, q: int, rng) -> list[tuple[int, int, int]]:
    return [(0, x, E.forward(0, x)) for x in range(q)]


PHASE1_STRATEGIES = {"record-random": _phase1_record_random,
                     "record-low": _phase1_record_low,
                     "none": lambda E, q, rng: []}
PHASE3_STRATEGIES = {"probe-recorded": _phase3_probe_recorded}


def run_resampling(config: ExperimentConfig, d_spec: DistributionSpec,
                   phase1: str = "record-random",
                   phase3: str = "probe-recorded",
                   ) -> tuple[AdvantageEstimate, float]:
    from .bounds import bound_resampling
    p1 = PHASE1_STRATEGIES[phase1]
    p3 = PHASE3_STRATEGIES[phase3]
    q = config.q_q
    counts = {0: [0, 0], 1: [0, 0]}   # b -> [ones, trials]
    for i in range(config.trials):
        seed = mix64(config.master_seed, i)
        rng = np.random.default_rng(mix64(seed, 0xB))
        E = ideal_cipher_new(CipherParams(config.m, config.n,
                                          seed=mix64(seed, 0xE)))
        records = p1(E, q, rng)
        if len(records) > q:
            raise BudgetExceeded("phase 1 overdrew its budget")
        triple = d_spec.sample(rng, E.params, records)
        b = int(rng.integers(2))
        oracle = resample_swap(E, *triple) if b else E
        guess = p3(oracle, triple, records)
        counts[b][0] += 1 if guess else 0
        counts[b][1] += 1
    est = estimate_from_counts(counts[1][0], max(counts[1][1], 1),
                               counts[0][0], max(counts[0][1], 1))
    bound = bound_resampling(config.n, q, d_spec.eps(
        CipherParams(config.m, config.n, 0), q))
    return est, bound


# --- reprogramming experiment ------------------------------------------------

@dataclass(frozen=True)
class ReprogramSpec:
    """Blinding generator: reprogram `points` uniform domain points (0 for
    the empty generator); eps is the exact per-point inclusion probability."""
    domain_bits: int
    range_bits: int
    points: int = 1

    @property
    def eps(self) -> float:
        # union bound over the independently drawn points
        return min(1.0, self.points * 2.0 ** -self.domain_bits)


def run_reprogramming(config: ExperimentConfig, spec: ReprogramSpec,
                      ) -> tuple[AdvantageEstimate, float]:
    from .bounds import bound_reprogramming
    q = config.q_q
    dom, rng_bits = spec.domain_bits, spec.range_bits
    counts = {0: [0, 0], 1: [0, 0]}
    for i in range(config.trials):
        seed = mix64(config.master_seed, i)
        rng = np.random.default_rng(mix64(seed, 0xB))
        fvals: dict[int, int] = {}

        def F(x: int) -> int:
            if x not in fvals:
                fvals[x] = int(rng.integers(1 << rng_bits))
            return fvals[x]

        patch = {int(rng.integers(1 << dom)): int(rng.integers(1 << rng_bits))
                 for _ in range(spec.points)}
        b = int(rng.integers(2))
        oracle = (lambda x: patch.get(x, F(x))) if b else F
        # phase 2: query q known points
        recorded = {x: oracle(x) for x in range(q)}
        # phase 3: the generator's randomness is revealed, oracle gone
        guess = 0
        for x_star, y_star in patch.items():
            if x_star in recorded and recorded[x_star] == y_star:
                guess = 1
        counts[b][0] += guess
        counts[b][1] += 1
    est = estimate_from_counts(counts[1][0], max(counts[1][1], 1),
                               counts[0][0], max(counts[0][1], 1))
    return est, bound_reprogramming(q, spec.eps)


# --- hybrid identity verifier ------------------------------------------------

def _table_equal(a: ModifiedCipher, b: ModifiedCipher, k: int) -> bool:
    return bool((a.table(k) == b.table(k)).all())


def _fx_instance(params: CipherParams, j: int, rng) -> tuple:
    E = ideal_cipher_new(CipherParams(params.m, params.n,
                                      seed=int(rng.integers(1 << 63))))
    size = 1 << params.n
    K = FxKey(int(rng.integers(1 << params.m)),
              int(rng.integers(size)), int(rng.integers(size)))
    pts = rng.choice(size, size=2 * (j + 1), replace=False)
    xs = [int(v) for v in pts[:j + 1]]
    ys = [int(v) for v in rng.choice(size, size=j + 1, replace=False)]
    return E, K, xs, ys


def verify_fx_instance(params: CipherParams, j: int, rng,
                       direction: str = "both") -> None:
    E, K, xs, ys = _fx_instance(params, j, rng)
    size = 1 << params.n
    rule = OffsetRule.whitening(K.k0, K.k1, K.k2)
    T = Transcript.of([(None, x, y) for x, y in zip(xs[:j], ys[:j])])
    M = modified_build(E, rule, T)

    # transcript-consistency identity, checked pointwise
    for x, y in zip(xs[:j], ys[:j]):
        if M.forward(K.k0, x ^ K.k1) ^ K.k2 != y or \
                M.inverse(K.k0, y ^ K.k2) ^ K.k1 != x:
            raise IdentityViolation(
                f"transcript identity failed: {K}, xs={xs}, ys={ys}")

    if direction in ("forward", "both"):
        banned = {x ^ K.k1 for x in xs[:j]}
        while True:
            s = int(rng.integers(size))
            if s not in banned:
                break
        E1 = resample_swap(E, K.k0, xs[j] ^ K.k1, s)
        M1 = modified_build(E1, rule, T)
        y_next = M1.forward(K.k0, xs[j] ^ K.k1) ^ K.k2
        try:
            M2 = modified_build(E, rule, T.extended(None, xs[j], y_next))
        except RepeatedQuery as exc:
            raise IdentityViolation(f"forward answer collided: {exc}")
        if not _table_equal(M1, M2, K.k0):
            raise IdentityViolation(
                f"forward table identity failed: {K}, xs={xs}, ys={ys}, s={s}")

    if direction in ("inverse", "both"):
        banned = {y ^ K.k2 for y in ys[:j]}
        while True:
            s = int(rng.integers(size))
            if s not in banned:
                break
        y_next_target = ys[j]
        pre0 = int(E.table_inv(K.k0)[y_next_target ^ K.k2])
        pre1 = int(E.table_inv(K.k0)[s])
        E1 = resample_swap(E, K.k0, pre0, pre1)
        M1 = modified_build(E1, rule, T)
        x_next = M1.inverse(K.k0, y_next_target ^ K.k2) ^ K.k1
        try:
            M2 = modified_build(E, rule, T.extended(None, x_next, y_next_target))
        except RepeatedQuery as exc:
            raise IdentityViolation(f"inverse answer collided: {exc}")
        if not _table_equal(M1, M2, K.k0):
            raise IdentityViolation(
                f"inverse table identity failed: {K}, xs={xs}, ys={ys}, s={s}")


def _lrw_instance(params: CipherParams, j: int, rng) -> tuple:
    E = ideal_cipher_new(CipherParams(params.m, params.n,
                                      seed=int(rng.integers(1 << 63))))
    size = 1 << params.n
    k = int(rng.integers(1 << params.m))
    k_prime = int(rng.integers(size))
    taus, xs = [], []
    seen = set()
    while len(taus) < j + 1:
        tau = int(rng.integers(1, size))
        x = int(rng.integers(size))
        if (tau, x) in seen:
            continue
        seen.add((tau, x))
        taus.append(tau)
        xs.append(x)
    # ideal per-tweak permutation answers
    perm = LazyTweakablePermutation(params.n, int(rng.integers(1 << 63)))
    ys = [perm.forward(t, x) for t, x in zip(taus, xs)]
    return E, k, k_prime, taus, xs, ys


def lrw_bad_event(taus, xs, ys, k_prime, f) -> bool:
    masks = [hash_mul(k_prime, t, f) for t in taus]
    ins = [x ^ h for x, h in zip(xs, masks)]
    outs = [y ^ h for y, h in zip(ys, masks)]
    return len(set(ins)) != len(ins) or len(set(outs)) != len(outs)


def verify_lrw_instance(params: CipherParams, j: int, rng) -> bool:
    """Returns False when the masked-collision bad event fires (instance
    skipped, counted by the caller); raises IdentityViolation otherwise on
    any failed identity."""
    E, k, k_prime, taus, xs, ys = _lrw_instance(params, j, rng)
    f = field(params.n)
    size = 1 << params.n
    if lrw_bad_event(taus[:j], xs[:j], ys[:j], k_prime, f):
        return False
    masks = [hash_mul(k_prime, t, f) for t in taus]
    rule = OffsetRule.tweak_hash(k, masks[:j])
    T = Transcript.of(list(zip(taus[:j], xs[:j], ys[:j])))
    M = modified_build(E, rule, T)
    for x, y, h in zip(xs[:j], ys[:j], masks[:j]):
        if M.forward(k, x ^ h) ^ h != y:
            raise IdentityViolation(
                f"masked transcript identity failed: k'={k_prime}, "
                f"taus={taus}, xs={xs}, ys={ys}")

    banned = {x ^ h for x, h in zip(xs[:j], masks[:j])}
    if xs[j] ^ masks[j] in banned:
        return False  # conditioned out with the bad event
    while True:
        s = int(rng.integers(size))
        if s not in banned:
            break
    E1 = resample_swap(E, k, xs[j] ^ masks[j], s)
    M1 = modified_build(E1, rule, T)
    y_next = M1.forward(k, xs[j] ^ masks[j]) ^ masks[j]
    rule_next = OffsetRule.tweak_hash(k, masks)
    try:
        M2 = modified_build(E, rule_next,
                            T.extended(taus[j], xs[j], y_next))
    except RepeatedQuery as exc:
        raise IdentityViolation(f"answer collided: {exc}")
    if not _table_equal(M1, M2, k):
        raise IdentityViolation(
            f"table identity failed: k'={k_prime}, taus={taus}, xs={xs}, "
            f"ys={ys}, s={s}")
    return True


def verify_hybrids(params: CipherParams, count: int, j: int = 8,
                   variant: str = "fx", rng=None,
                   direction: str = "both") -> dict:
    """Random-instance suite for the swap-chain identities; zero tolerance.
    Returns counts; raises IdentityViolation with the counterexample."""
    if params.n > 8 or params.m > 8 or j > 16:
        raise ValueError("verifier capped at n, m <= 8 and j <= 16")
    rng = rng or np.random.default_rng()
    checked = skipped = 0
    for _ in range(count):
        if variant == "fx":
            verify_fx_instance(params, j, rng, direction)
            checked += 1
        elif variant == "lrw":
            if verify_lrw_instance(params, j, rng):
                checked += 1
            else:
                skipped += 1
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return {"variant": variant, "instances": count, "checked": checked,
            "skipped_bad": skipped, "violations": 0, "j": j}


def lrw_bad_rate(params: CipherParams, j: int, trials: int, rng=None) -> float:
    """Empirical probability of the masked-collision bad event (transcript
    skeleton only, no ciphers built)."""
    rng = rng or np.random.default_rng()
    f = field(params.n)
    size = 1 << params.n
    perm = LazyTweakablePermutation(params.n, int(rng.integers(1 << 63)))
    bad = 0
    for _ in range(trials):
        taus, xs, seen = [], [], set()
        while len(taus) < j:
            tau = int(rng.integers(1, size))
            x = int(rng.integers(size))
            if (tau, x) in seen:
                continue
            seen.add((tau, x))
            taus.append(tau)
            xs.append(x)
        perm2 = LazyTweakablePermutation(params.n, int(rng.integers(1 << 63)))
        ys = [perm2.forward(t, x) for t, x in zip(taus, xs)]
        k_prime = int(rng.integers(size))
        bad += 1 if lrw_bad_event(taus, xs, ys, k_prime, f) else 0
    return bad / trials


def fx_answer_law(params: CipherParams, j: int, draws: int, rng=None) -> dict:
    """Empirical law of the freshly answered query in the intermediate
    hybrid: fixed instance, the swap target resampled each draw.  Returns
    support-check and chi-square results."""
    rng = rng or np.random.default_rng()
    E, K, xs, ys = _fx_instance(params, j, rng)
    size = 1 << params.n
    rule = OffsetRule.whitening(K.k0, K.k1, K.k2)
    T = Transcript.of([(None, x, y) for x, y in zip(xs[:j], ys[:j])])
    banned = {x ^ K.k1 for x in xs[:j]}
    support = [y for y in range(size) if y not in set(ys[:j])]
    counts = {y: 0 for y in support}
    for _ in range(draws):
        while True:
            s = int(rng.integers(size))
            if s not in banned:
                break
        M1 = modified_build(resample_swap(E, K.k0, xs[j] ^ K.k1, s), rule, T)
        y = M1.forward(K.k0, xs[j] ^ K.k1) ^ K.k2
        if y not in counts:
            raise IdentityViolation(f"answer {y} outside the predicted support")
        counts[y] += 1
    chi, p = stats.chisquare(list(counts.values()))
    return {"support_size": len(support), "chi2": float(chi), "p_value": float(p)}


def lrw_answer_law(params: CipherParams, j: int, draws: int, rng=None,
                   repeat_tweak: bool = False) -> dict:
    """Same law check for the tweak-hash hybrid: per draw the hash key and
    swap target are resampled (conditioned on no bad event); support is all
    of {0,1}^n for a fresh tweak, minus the repeated tweak's earlier answers
    otherwise."""
    rng = rng or np.random.default_rng()
    E, k, k_prime0, taus, xs, ys = _lrw_instance(params, j, rng)
    f = field(params.n)
    size = 1 << params.n
    if repeat_tweak:
        taus[j] = taus[0]
        while (taus[j], xs[j]) in set(zip(taus[:j], xs[:j])):
            xs[j] = int(rng.integers(size))
    else:
        used = set(taus[:j])
        while taus[j] in used:
            taus[j] = int(rng.integers(1, size))
    excluded = {y for t, y in zip(taus[:j], ys[:j]) if t == taus[j]}
    support = [y for y in range(size) if y not in excluded]
    counts = {y: 0 for y in support}
    done = 0
    while done < draws:
        k_prime = int(rng.integers(size))
        if lrw_bad_event(taus[:j], xs[:j], ys[:j], k_prime, f):
            continue
        masks = [hash_mul(k_prime, t, f) for t in taus]
        banned = {x ^ h for x, h in zip(xs[:j], masks[:j])}
        if xs[j] ^ masks[j] in banned:
            continue
        s = int(rng.integers(size))
        if s in banned:
            continue
        rule = OffsetRule.tweak_hash(k, masks[:j])
        T = Transcript.of(list(zip(taus[:j], xs[:j], ys[:j])))
        M1 = modified_build(resample_swap(E, k, xs[j] ^ masks[j], s), rule, T)
        y = M1.forward(k, xs[j] ^ masks[j]) ^ masks[j]
        if y not in counts:
            raise IdentityViolation(f"answer {y} outside the predicted support")
        counts[y] += 1
        done += 1
    chi, p = stats.chisquare(list(counts.values()))
    return {"support_size": len(support), "chi2": float(chi),
            "p_value": float(p), "repeat_tweak": repeat_tweak}


# --- shipped configurations --------------------------------------------------

DEFAULT_SEED = 0x9C0FFEE

SHIPPED_CONFIGS: tuple[ExperimentConfig, ...] = (
    ExperimentConfig("fx-match", "fx", "fx-match",
                     m=12, n=12, q_c=2, q_q=16, trials=2000,
                     master_seed=DEFAULT_SEED),
    ExperimentConfig("lrw-collision", "lrw", "tweak-collision",
                     m=12, n=12, q_c=2, q_q=4, trials=6000,
                     master_seed=DEFAULT_SEED),
    ExperimentConfig("xex2-collision", "xex2", "xex-collision",
                     m=12, n=12, q_c=2, q_q=4, trials=4000,
                     master_seed=DEFAULT_SEED),
    ExperimentConfig("birthday-lrw", "lrw", "birthday",
                     m=16, n=16, q_c=512, q_q=0, trials=200,
                     master_seed=DEFAULT_SEED),
)


def shipped_bounds(config: ExperimentConfig) -> dict[str, float]:
    """Every closed-form bound applicable to a shipped config, by name."""
    from . import bounds as B
    q = B.BoundQuery(m=config.m, n=config.n, q_c=config.q_c, q_q=config.q_q)
    if config.construction == "fx":
        return {"fx_pq": B.bound_fx_pq(q).value}
    if config.construction == "lrw":
        return {"lrw_pq_hybrid": B.bound_lrw_pq_hybrid(q).value,
                "lrw_pq_general": B.bound_lrw_pq_general(q).value}
    if config.construction == "xex2":
        return {"xex2_pq": B.bound_xex2_pq(q).value}
    return {}


def shipped_config(name: str) -> ExperimentConfig:
    for cfg in SHIPPED_CONFIGS:
        if cfg.name == name:
            return cfg
    raise KeyError(f"no shipped config named {name!r}")


# --- serialization -----------------------------------------------------------

def result_to_json(config: ExperimentConfig, est: AdvantageEstimate,
                   bound: Optional[float], runtime_ms: Optional[float] = None,
                   ) -> str:
    payload = {
        "config": {
            "name": config.name,
            "construction": config.construction,
            "distinguisher": config.distinguisher,
            "m": config.m, "n": config.n,
            "q_c": config.q_c, "q_q": config.q_q,
            "trials": config.trials,
        },
        "p_real": est.p_real,
        "p_ideal": est.p_ideal,
        "advantage": est.advantage,
        "ci": [est.ci_low, est.ci_high],
        "bound": bound,
        "bound_vacuous": (bound is not None and bound >= 1.0),
        "seeds": {"master": config.master_seed},
    }
    if runtime_ms is not None:
        payload["runtime_ms"] = runtime_ms
    return json.dumps(payload, sort_keys=True)
