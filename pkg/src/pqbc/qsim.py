"""Dense statevector simulation, just big enough for unique-search
amplitude amplification and hidden-period sampling at toy widths.

Oracles act as permutation/phase maps on the amplitude vector; no gate
decomposition.  Query counters tick once per oracle-unitary application.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np


class PromiseViolated(RuntimeError):
    pass


class RecoveryFailed(RuntimeError):
    pass


NORM_TOL = 1e-9
MAX_QUBITS = 24


@dataclass
class QueryCounter:
    quantum_queries: int = 0

    def tick(self, k: int = 1) -> None:
        self.quantum_queries += k


class StateVector:
    """Complex amplitudes over w qubits, norm kept within 1e-9 of 1."""

    def __init__(self, w: int, amplitudes: Optional[np.ndarray] = None):
        if not 1 <= w <= MAX_QUBITS:
            raise ValueError(f"qubit count {w} outside [1, {MAX_QUBITS}]")
        self.w = w
        if amplitudes is None:
            self.amps = np.full(1 << w, (1 << w) ** -0.5, dtype=np.complex128)
        else:
            self.amps = np.asarray(amplitudes, dtype=np.complex128)
            if self.amps.size != 1 << w:
                raise ValueError("amplitude vector size != 2^w")
        self.check_norm()

    def check_norm(self) -> None:
        norm = float(np.vdot(self.amps, self.amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm drifted to {norm}")

    def phase_flip(self, marked: np.ndarray) -> None:
        """Oracle U_f: negate amplitudes of marked basis states."""
        self.amps[marked] = -self.amps[marked]
        self.check_norm()

    def diffuse(self) -> None:
        """Inversion about the mean (the Grover diffusion operator)."""
        self.amps = 2 * self.amps.mean() - self.amps
        self.check_norm()

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def sample(self, rng: np.random.Generator, shots: int = 1) -> np.ndarray:
        p = self.probabilities()
        p = p / p.sum()
        return rng.choice(self.amps.size, size=shots, p=p)


def grover_iterations(w: int) -> int:
    return int(math.pi / 4 * 2 ** (w / 2))


def grover_success_probability(w: int, t: int, marked: int = 1) -> float:
    if marked == 0:
        return 0.0
    theta = math.asin(math.sqrt(marked / (1 << w)))
    return math.sin((2 * t + 1) * theta) ** 2


def _marked_array(f: Callable[[int], int], w: int) -> np.ndarray:
    return np.fromiter((bool(f(x)) for x in range(1 << w)), dtype=bool,
                       count=1 << w)


def grover_state(marked: np.ndarray, w: int, iterations: int,
                 counter: Optional[QueryCounter] = None) -> StateVector:
    state = StateVector(w)
    for _ in range(iterations):
        state.phase_flip(marked)
        state.diffuse()
        if counter is not None:
            counter.tick()
    return state


def grover_unique_search(f: Callable[[int], int], w: int,
                         iterations: Optional[int] = None,
                         rng: Optional[np.random.Generator] = None,
                         ) -> tuple[Optional[int], QueryCounter]:
    """Amplitude amplification under the at-most-one-marked promise.

    Runs the standard iteration count for a single marked element, samples
    one measurement, and reports the result only when it is actually marked
    (so a NO instance comes back as None from a near-uniform state).
    """
    if not 1 <= w <= 12:
        raise ValueError(f"unique search capped at 12 qubits, got {w}")
    marked = _marked_array(f, w)
    if marked.sum() > 1:
        raise PromiseViolated(f"{int(marked.sum())} marked elements")
    rng = rng or np.random.default_rng()
    t = grover_iterations(w) if iterations is None else iterations
    counter = QueryCounter()
    state = grover_state(marked, w, t, counter)
    outcome = int(state.sample(rng)[0])
    found = outcome if marked[outcome] else None
    return found, counter


def grover_search_multi(marked: np.ndarray, w: int,
                        iterations: Optional[int] = None,
                        rng: Optional[np.random.Generator] = None,
                        counter: Optional[QueryCounter] = None) -> Optional[int]:
    """Amplitude amplification with a known marked count (no promise)."""
    count = int(marked.sum())
    if count == 0:
        return None
    rng = rng or np.random.default_rng()
    if iterations is None:
        iterations = max(0, int(math.pi / 4 * math.sqrt((1 << w) / count)))
    state = grover_state(marked, w, iterations, counter)
    outcome = int(state.sample(rng)[0])
    return outcome if marked[outcome] else None


def _fwht(v: np.ndarray) -> np.ndarray:
    """In-place Walsh-Hadamard transform (unnormalized)."""
    v = v.copy()
    h = 1
    while h < v.size:
        for start in range(0, v.size, h * 2):
            a = v[start:start + h].copy()
            b = v[start + h:start + 2 * h].copy()
            v[start:start + h] = a + b
            v[start + h:start + 2 * h] = a - b
        h *= 2
    return v


def simon_sample(table: Sequence[int], u: int, rng: np.random.Generator,
                 counter: Optional[QueryCounter] = None) -> int:
    """One round of period sampling: prepare sum_x |x>|f(x)>, measure the
    output register, Hadamard the input register, measure y.

    Implemented by collapsing on the output measurement first (the marginals
    are identical), which keeps the dense vector at 2^u amplitudes.
    """
    if counter is not None:
        counter.tick()
    x0 = int(rng.integers(1 << u))
    v = table[x0]
    pre = np.fromiter((1.0 if table[x] == v else 0.0 for x in range(1 << u)),
                      dtype=np.float64, count=1 << u)
    pre /= math.sqrt(pre.sum())
    amps = _fwht(pre) / math.sqrt(1 << u)
    p = amps ** 2
    p /= p.sum()
    return int(rng.choice(1 << u, p=p))


def _basis_insert(basis: list[int], y: int) -> bool:
    """Reduce y against the echelon basis; insert if independent."""
    for row in basis:
        y = min(y, y ^ row)
    if y == 0:
        return False
    basis.append(y)
    basis.sort(reverse=True)
    return True


def _kernel_vector(basis: list[int], u: int) -> int:
    """The unique nonzero s orthogonal to a rank u-1 basis."""
    pivots = {row.bit_length() - 1 for row in basis}
    free = next(b for b in range(u) if b not in pivots)
    s = 1 << free
    # back-substitute: highest pivots first ensures each row fixes one bit
    for row in sorted(basis):
        bit = row.bit_length() - 1
        if bin(row & s).count("1") % 2:
            s ^= 1 << bit
    return s


@dataclass
class SimonResult:
    s: int
    samples: int
    ys: list[int] = field(default_factory=list)
    counter: QueryCounter = field(default_factory=QueryCounter)


def simon_period(f: Callable[[int], int], u: int,
                 rng: Optional[np.random.Generator] = None,
                 max_samples: Optional[int] = None) -> SimonResult:
    """Hidden-period recovery: sample vectors orthogonal to the period until
    the linear system over GF(2) reaches rank u-1 (or u for an injective f,
    returning s=0 by convention).  Raises PromiseViolated if the recovered
    period fails the f(x) = f(x xor s) check, or RecoveryFailed on sample
    exhaustion.
    """
    if not 1 <= u <= 10:
        raise ValueError(f"period width {u} outside [1, 10]")
    rng = rng or np.random.default_rng()
    if max_samples is None:
        max_samples = 4 * u
    table = [f(x) for x in range(1 << u)]
    counter = QueryCounter()
    basis: list[int] = []
    ys: list[int] = []
    if u == 1:
        # rank u-1 = 0 holds vacuously; the only candidate period is 1
        if table[0] == table[1]:
            return SimonResult(s=1, samples=0, ys=ys, counter=counter)
        return SimonResult(s=0, samples=0, ys=ys, counter=counter)
    for sample_idx in range(1, max_samples + 1):
        y = simon_sample(table, u, rng, counter)
        ys.append(y)
        _basis_insert(basis, y)
        rank = len(basis)
        if rank == u:
            if len(set(table)) != len(table):
                raise PromiseViolated("full-rank samples from a non-injective f")
            return SimonResult(s=0, samples=sample_idx, ys=ys, counter=counter)
        if rank == u - 1:
            s = _kernel_vector(basis, u)
            if all(table[x] == table[x ^ s] for x in range(1 << u)):
                return SimonResult(s=s, samples=sample_idx, ys=ys, counter=counter)
            # rank can sit at u-1 transiently for an injective f; keep going
    raise RecoveryFailed(f"rank {len(basis)} after {max_samples} samples")


# ---------------------------------------------------------------------------
# Composite attack demos.  The outer amplitude-amplification layer over key
# candidates is replaced by classical enumeration at desk scale (reported in
# the AttackReport metadata); the inner quantum subroutines run for real.

def offline_simon_demo(E, K, u: int,
                       rng: Optional[np.random.Generator] = None):
    """Hidden-shift key recovery against input/output whitening.

    One batch of classical construction queries g(x) = Enc(x || 0) is
    combined with offline tables F(i||j, x) = E_i(x || j); for the correct
    (cipher key, low whitening bits) candidate, F xor g hides the high
    whitening bits as a period.  Candidates are enumerated classically and
    checked with the period sampler plus a transcript consistency test.
    """
    from .attacks import AttackReport, RecoveryFailed as AttackFailed
    from .constructions import FxKey, fx_enc

    if u > 8 or E.params.m > 10:
        raise ValueError("demo capped at u <= 8, m <= 10")
    rng = rng or np.random.default_rng()
    n, m = E.params.n, E.params.m
    low = n - u

    g = [fx_enc(E, K, x << low) for x in range(1 << u)]
    online = 1 << u
    total_counter = QueryCounter()

    for i in range(1 << m):
        tbl = E.table(i)
        for j in range(1 << low):
            def fcand(x, _t=tbl, _j=j):
                return int(_t[(x << low) | _j]) ^ g[x]
            s = None
            try:
                res = simon_period(fcand, u, rng, max_samples=u + 6)
                s = res.s
                total_counter.tick(res.counter.quantum_queries)
            except PromiseViolated:
                continue
            except RecoveryFailed:
                # stalled rank: the constant-difference case hides s = 0
                if len({fcand(x) for x in range(1 << u)}) == 1:
                    s = 0
                else:
                    continue
            k1 = (s << low) | j
            k2 = g[0] ^ int(tbl[k1])
            if all(g[x] == int(tbl[(x << low) ^ k1]) ^ k2
                   for x in range(1, min(8, 1 << u))):
                return AttackReport(
                    verdict=True,
                    recovered={"k0": i, "k1": k1, "k2": k2},
                    online_queries=online,
                    offline_queries=total_counter.quantum_queries,
                    meta={"outer_layer": "classical enumeration",
                          "quantum_queries": total_counter.quantum_queries,
                          "period": s})
    raise AttackFailed("no candidate key passed verification")


def grover_km_demo(E, lrw_oracle, tweak, s: int,
                   rng: Optional[np.random.Generator] = None,
                   retries: int = 3):
    """Whitening-mask recovery from complement-pair differences.

    Builds D = { Enc(tau, x_i) xor Enc(tau, ~x_i) } from s classical pair
    queries; for each enumerated cipher key, amplitude-amplifies the
    predicate "E_k(z) xor E_k(~z) in D", reads the mask h = x_i xor z (or
    ~x_i xor z after the disambiguation probe), and verifies at fresh
    points.
    """
    from .attacks import AttackReport, RecoveryFailed as AttackFailed

    n, m = E.params.n, E.params.m
    if n > 10 or m > 8:
        raise ValueError("demo capped at n <= 10, m <= 8")
    rng = rng or np.random.default_rng()
    size = 1 << n
    full = size - 1
    counter = QueryCounter()
    online = 0

    # s complement pairs with distinct difference values
    xs: list[int] = []
    d_of: dict[int, int] = {}
    while len(xs) < s:
        x = int(rng.integers(size >> 1))  # top bit 0 keeps pairs disjoint
        if x in xs:
            continue
        d = lrw_oracle.query(tweak, x) ^ lrw_oracle.query(tweak, x ^ full)
        online += 2
        if d in d_of:
            continue  # duplicates rejected; D must be collision-free
        xs.append(x)
        d_of[d] = x

    probes = [int(v) for v in rng.choice(size, size=4, replace=False)]
    probe_answers = {}

    for k in range(1 << m):
        tbl = E.table(k)
        diffs = np.bitwise_xor(np.asarray(tbl), np.asarray(tbl)[np.arange(size) ^ full])
        marked = np.isin(diffs, list(d_of))
        for _ in range(retries):
            z = grover_search_multi(marked, n, rng=rng, counter=counter)
            if z is None:
                break
            d = int(diffs[z])
            if d not in d_of:
                continue
            x = d_of[d]
            for h in (x ^ z, (x ^ full) ^ z):
                ok = True
                for xp in probes:
                    if xp not in probe_answers:
                        probe_answers[xp] = lrw_oracle.query(tweak, xp)
                        online += 1
                    if int(tbl[xp ^ h]) ^ h != probe_answers[xp]:
                        ok = False
                        break
                if ok:
                    return AttackReport(
                        verdict=True,
                        recovered={"k": k, "h_mask": h},
                        online_queries=online,
                        offline_queries=counter.quantum_queries,
                        meta={"outer_layer": "classical enumeration",
                              "quantum_queries": counter.quantum_queries,
                              "pairs": s})
    raise AttackFailed("no key/mask candidate survived verification")
