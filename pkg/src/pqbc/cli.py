"""Command-line front end: bounds, tradeoffs, attacks, experiments, hybrid
verification, mode operations, and quantum-simulation demos.

Conventions: every numeric flag accepts plain integers or `2^k`; the master
seed comes from --seed, then the PQBC_SEED environment variable, then a fixed
default, so identical invocations reproduce byte-identical output files.
Exit codes: 0 success, 1 verification or recovery failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import attacks, bounds, modes, qsim
from .cipher_core import CipherParams, ParamsOutOfRange, WidthMismatch, \
    ideal_cipher_new, mix64
from .constructions import LrwKey, MultiplicativeHash, Xex2Key
from .experiments import (DEFAULT_SEED, SHIPPED_CONFIGS, AdvantageEstimate,
                          DistributionSpec, ExperimentConfig, IdentityViolation,
                          ReprogramSpec, estimate_from_counts, fx_answer_law,
                          lrw_answer_law, lrw_bad_rate, result_to_json,
                          run_distinguishing, run_reprogramming,
                          run_resampling, shipped_bounds, shipped_config,
                          verify_hybrids)
from .gf2n import field


class UsageError(ValueError):
    pass


def intexpr(text: str) -> int:
    """Plain integer or `2^k` power syntax."""
    text = text.strip()
    if "^" in text:
        base, _, exp = text.partition("^")
        if base.strip() != "2":
            raise argparse.ArgumentTypeError(f"only base 2 powers: {text!r}")
        return 1 << int(exp)
    return int(text, 0)


def _seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PQBC_SEED")
    if env is not None:
        return intexpr(env)
    return DEFAULT_SEED


def _emit(payload: dict, args, runtime_ms: float) -> None:
    shown = dict(payload)
    shown["runtime_ms"] = round(runtime_ms, 3)
    print(json.dumps(shown, sort_keys=True))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(payload, sort_keys=True) + "\n")


def _emit_rows(rows: list[dict], fieldnames: list[str], args,
               x_field: str, y_fields: list[str], title: str) -> None:
    from . import plotting
    if args.out:
        plotting.write_csv(args.out, fieldnames, rows)
        png = plotting.render_sweep(args.out, rows, x_field, y_fields, title)
        print(f"wrote {args.out} and {png}")
    else:
        print(",".join(fieldnames))
        for r in rows:
            print(",".join(str(r[f]) for f in fieldnames))


# --- bounds ------------------------------------------------------------------

_FORMULAS = ("fx", "fx-classical", "lrw-hybrid", "lrw-general", "xex2",
             "lrw-classical", "xex2-classical", "resampling", "reprogramming",
             "mode")


def _eval_bound(formula: str, args, overrides: dict = {}) -> dict:
    g = {k: overrides.get(k, getattr(args, k, None)) for k in
         ("m", "n", "qc", "qq", "ell", "sigma", "qdec", "s", "eps", "q")}
    if formula == "resampling":
        if g["n"] is None or g["q"] is None or g["eps"] is None:
            raise UsageError("resampling needs --n, --q, --eps")
        return {"formula": "resampling",
                "value": bounds.bound_resampling(g["n"], g["q"], g["eps"]),
                "terms": {}}
    if formula == "reprogramming":
        if g["q"] is None or g["eps"] is None:
            raise UsageError("reprogramming needs --q, --eps")
        return {"formula": "reprogramming",
                "value": bounds.bound_reprogramming(g["q"], g["eps"]),
                "terms": {}}
    if formula == "fx-classical":
        for k in ("qc", "qq", "m", "n"):
            if g[k] is None:
                raise UsageError("fx-classical needs --qc, --qq, --m, --n")
        b = bounds.bound_fx_classical(g["qc"], g["qq"], g["m"], g["n"])
    else:
        q = bounds.BoundQuery(m=g["m"] or 0, n=g["n"] or 0,
                              q_c=g["qc"] or 0, q_q=g["qq"] or 0,
                              ell=g["ell"], sigma=g["sigma"], q_dec=g["qdec"],
                              s=g["s"], eps=g["eps"])
        fn = {"fx": bounds.bound_fx_pq,
              "lrw-hybrid": bounds.bound_lrw_pq_hybrid,
              "lrw-general": bounds.bound_lrw_pq_general,
              "xex2": bounds.bound_xex2_pq,
              "lrw-classical": bounds.bound_lrw_classical,
              "xex2-classical": bounds.bound_xex2_classical}.get(formula)
        if fn is not None:
            b = fn(q)
        elif formula == "mode":
            if not args.id:
                raise UsageError("bounds mode needs --id")
            b = bounds.bound_mode(args.id, q)
        else:
            raise UsageError(f"unknown formula {formula!r}")
    return {"formula": b.formula_id, "value": b.value, "terms": b.terms,
            "extras": b.extras, "vacuous": b.vacuous}


def cmd_bounds(args) -> int:
    if args.sweep:
        param, _, span = args.sweep.partition("=")
        lo, _, hi = span.partition(":")
        lo, hi = intexpr(lo), intexpr(hi)
        if param not in ("qc", "qq", "m", "n", "ell", "sigma"):
            raise UsageError(f"cannot sweep {param!r}")
        rows, term_names = [], None
        v = lo
        while v <= hi:
            res = _eval_bound(args.formula, args, {param: v})
            term_names = term_names or sorted(res["terms"])
            rows.append({param: v, "value": res["value"],
                         **{t: res["terms"][t] for t in term_names}})
            v *= 2
        fields = [param, "value"] + (term_names or [])
        _emit_rows(rows, fields, args, param, ["value"] + (term_names or []),
                   f"{args.formula} bound sweep")
        return 0
    res = _eval_bound(args.formula, args)
    t0 = time.perf_counter()
    _emit(res, args, (time.perf_counter() - t0) * 1e3)
    return 0


def cmd_tradeoff(args) -> int:
    pts = bounds.attack_tradeoff(args.attack, args.m, args.n)
    rows = [{"q_c": qc, "q_q": qq} for qc, qq in pts]
    _emit_rows(rows, ["q_c", "q_q"], args, "q_c", ["q_q"],
               f"{args.attack} cost tradeoff (m={args.m}, n={args.n})")
    return 0


# --- attacks -----------------------------------------------------------------

def _planted_lrw(n: int, m: int, seed: int):
    E = ideal_cipher_new(CipherParams(m=m, n=n, seed=mix64(seed, 0xE)))
    rng = np.random.default_rng(mix64(seed, 0xA))
    K = LrwKey(int(rng.integers(1 << m)), int(rng.integers(1, 1 << n)), n)
    h = MultiplicativeHash(field(n))
    return E, h, K, attacks.make_lrw_oracle(E, h, K)


def _planted_xex2(n: int, m: int, seed: int):
    E = ideal_cipher_new(CipherParams(m=m, n=n, seed=mix64(seed, 0xE)))
    rng = np.random.default_rng(mix64(seed, 0xA))
    K = Xex2Key(int(rng.integers(1 << m)), int(rng.integers(1 << m)), alpha=2)
    return E, K, attacks.make_xex2_oracle(E, K)


def cmd_attack(args) -> int:
    seed = _seed_from(args)
    n, m = args.n, args.m
    f = field(n)
    t0 = time.perf_counter()
    wins = 0
    last = None
    for i in range(args.trials):
        s_i = mix64(seed, i)
        rng = np.random.default_rng(mix64(s_i, 0xD))
        try:
            if args.name == "birthday":
                if args.world == "real":
                    _, _, K, oracle = _planted_lrw(n, m, s_i)
                else:
                    oracle = attacks.make_ideal_oracle(n, mix64(s_i, 0x1D))
                rep = attacks.birthday_distinguisher(
                    oracle, args.q, f, hash_kind=args.kind, rng=rng)
                wins += 1 if rep.verdict else 0
            elif args.name == "em":
                if args.world == "real":
                    _, _, K, oracle = _planted_lrw(n, m, s_i)
                else:
                    oracle = attacks.make_ideal_oracle(n, mix64(s_i, 0x1D))
                rep = attacks.em_distinguisher(oracle, args.q, n, (1, 2),
                                               rng=rng)
                wins += 1 if rep.verdict else 0
            elif args.name == "key-recovery":
                if args.kind == "multiplicative":
                    E, h, K, oracle = _planted_lrw(n, m, s_i)
                    want = (K.k, K.k_prime)
                else:
                    E, K, oracle = _planted_xex2(n, m, s_i)
                    want = (K.k, K.k_prime)
                q_on = args.qonline or 8 * (1 << (n // 2))
                q_off = args.qoffline or (1 << m)
                rep = attacks.classical_key_recovery(
                    oracle, E, q_on, q_off, kind=args.kind, f=f, rng=rng)
                got = (rep.recovered["k"], rep.recovered["k_prime"])
                wins += 1 if got == want else 0
            else:
                raise UsageError(f"unknown attack {args.name!r}")
            last = rep.to_dict()
        except (attacks.RecoveryFailed, attacks.NoCollisionFound,
                attacks.NoKey, attacks.AmbiguousKey) as exc:
            last = {"verdict": False, "error": str(exc)}
    payload = {"attack": args.name, "n": n, "m": m, "world": args.world,
               "trials": args.trials, "wins": wins,
               "win_rate": wins / args.trials, "last_report": last,
               "seed": seed}
    _emit(payload, args, (time.perf_counter() - t0) * 1e3)
    if args.world == "real" and wins == 0:
        return 1
    return 0


# --- experiments -------------------------------------------------------------

def _run_chunked(config: ExperimentConfig, threads: int) -> AdvantageEstimate:
    if threads <= 1 or config.trials < 2 * threads:
        return run_distinguishing(config)
    per = config.trials // threads
    sizes = [per + (1 if i < config.trials % threads else 0)
             for i in range(threads)]
    chunks = [ExperimentConfig(config.name, config.construction,
                               config.distinguisher, config.m, config.n,
                               config.q_c, config.q_q, sz,
                               mix64(config.master_seed, 0xC0 + i),
                               config.params)
              for i, sz in enumerate(sizes) if sz]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        ests = list(pool.map(run_distinguishing, chunks))
    k_r = sum(round(e.p_real * e.n_real) for e in ests)
    k_i = sum(round(e.p_ideal * e.n_ideal) for e in ests)
    return estimate_from_counts(k_r, config.trials, k_i, config.trials)


def cmd_experiment(args) -> int:
    seed = _seed_from(args)
    t0 = time.perf_counter()
    if args.kind == "distinguishing":
        if args.config:
            config = shipped_config(args.config)
            if args.seed is not None or os.environ.get("PQBC_SEED"):
                config = ExperimentConfig(
                    config.name, config.construction, config.distinguisher,
                    config.m, config.n, config.q_c, config.q_q,
                    args.trials or config.trials, seed)
        else:
            for k in ("construction", "distinguisher", "m", "n"):
                if getattr(args, k) in (None, ""):
                    raise UsageError(
                        "distinguishing needs --config or construction/"
                        "distinguisher/m/n flags")
            config = ExperimentConfig(
                "custom", args.construction, args.distinguisher, args.m,
                args.n, args.qc or 0, args.qq or 0, args.trials or 200, seed)
        est = _run_chunked(config, args.threads)
        bs = shipped_bounds(config)
        bound = min(bs.values()) if bs else None
        runtime = (time.perf_counter() - t0) * 1e3
        line = result_to_json(config, est, bound)
        shown = json.loads(line)
        shown["runtime_ms"] = round(runtime, 3)
        shown["bounds"] = bs
        print(json.dumps(shown, sort_keys=True))
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(line + "\n")
        if bound is not None and bound < 1.0 and est.ci_high > bound:
            return 1
        return 0
    if args.kind == "resampling":
        config = ExperimentConfig("resampling", "none", "probe-recorded",
                                  args.m or 8, args.n or 8, 0, args.q,
                                  args.trials or 400, seed)
        spec = DistributionSpec(args.dist.replace("-", "_"),
                                k0=args.k0, s0=args.s0, s1=args.s1)
        phase1 = args.phase1 or ("record-low" if spec.kind == "point_mass"
                                 else "record-random")
        est, bound = run_resampling(config, spec, phase1=phase1)
    elif args.kind == "reprogramming":
        config = ExperimentConfig("reprogramming", "none", "query-known",
                                  1, 1, 0, args.q, args.trials or 400, seed)
        est, bound = run_reprogramming(
            config, ReprogramSpec(args.ell, args.range_bits, args.points))
    else:
        raise UsageError(f"unknown experiment kind {args.kind!r}")
    runtime = (time.perf_counter() - t0) * 1e3
    line = result_to_json(config, est, bound)
    shown = json.loads(line)
    shown["runtime_ms"] = round(runtime, 3)
    print(json.dumps(shown, sort_keys=True))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(line + "\n")
    if bound < 1.0 and est.ci_high > bound:
        return 1
    return 0


def cmd_verify_hybrids(args) -> int:
    seed = _seed_from(args)
    params = CipherParams(m=args.m, n=args.n, seed=0)
    variants = ["fx", "lrw"] if args.variant == "both" else [args.variant]
    t0 = time.perf_counter()
    reports = []
    try:
        for v in variants:
            rng = np.random.default_rng(mix64(seed, hash(v) & 0xFFFF))
            reports.append(verify_hybrids(params, args.count, args.j, v, rng))
        if args.law:
            rng = np.random.default_rng(mix64(seed, 0x1A))
            reports.append(fx_answer_law(params, min(args.j, 8), 20000, rng))
            reports.append(lrw_answer_law(params, min(args.j, 6), 10000, rng))
            reports.append(
                {"bad_rate": lrw_bad_rate(params, args.j, 10000, rng),
                 "bad_bound": args.j ** 2 / (1 << args.n)})
    except IdentityViolation as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return 1
    _emit({"reports": reports, "seed": seed}, args,
          (time.perf_counter() - t0) * 1e3)
    return 0


# --- modes -------------------------------------------------------------------

def cmd_mode(args) -> int:
    seed = _seed_from(args)
    E = ideal_cipher_new(CipherParams(m=args.m, n=args.n,
                                      seed=mix64(seed, 0xE)))
    key = args.key if args.key is not None else 1
    t0 = time.perf_counter()
    try:
        if args.op == "mac":
            if args.mode_name == "cbc":
                blocks, rem = modes.bits_to_blocks(args.msg, args.n)
                if rem:
                    raise modes.PartialBlock("cbc needs whole blocks")
                tag = modes.cbc_mac(E, key, blocks)
            elif args.mode_name == "ecbc":
                blocks, rem = modes.bits_to_blocks(args.msg, args.n)
                if rem:
                    raise modes.PartialBlock("ecbc needs whole blocks")
                tag = modes.ecbc_mac(E, key, args.key2 or key + 1, blocks)
            elif args.mode_name == "cmac":
                tag = modes.cmac(E, key, args.msg)
            else:
                raise UsageError(f"{args.mode_name} has no mac operation")
            record = modes.format_kat_record(
                {"key": key, "msg": args.msg,
                 "tag": modes.block_to_bits(tag, args.n)})
        elif args.op == "seal":
            out = modes.gcm_seal(E, key, args.nonce, args.aad or "",
                                 args.msg, args.s)
            record = modes.format_kat_record(
                {"key": key, "nonce": args.nonce,
                 "aad": args.aad or "", "ct": out.ciphertext, "tag": out.tag})
        elif args.op == "open":
            out = modes.AeadOutput(args.ct, args.tag)
            pt = modes.gcm_open(E, key, args.nonce, args.aad or "", out)
            record = modes.format_kat_record(
                {"key": key, "nonce": args.nonce, "pt": pt})
        else:
            raise UsageError(f"unknown op {args.op!r}")
    except modes.TagMismatch as exc:
        print(f"tag mismatch: {exc}", file=sys.stderr)
        return 1
    print(record)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(record + "\n")
    return 0


# --- quantum simulations -----------------------------------------------------

def cmd_qsim(args) -> int:
    seed = _seed_from(args)
    rng = np.random.default_rng(mix64(seed, 0xA))
    t0 = time.perf_counter()
    if args.alg == "grover":
        w = args.w
        target = args.target if args.target is not None else \
            int(rng.integers(1 << w))
        t = args.iterations if args.iterations is not None else \
            qsim.grover_iterations(w)
        marked = np.zeros(1 << w, dtype=bool)
        marked[target] = True
        counter = qsim.QueryCounter()
        state = qsim.grover_state(marked, w, t, counter)
        shots = state.sample(rng, args.shots)
        freq = float(np.mean(shots == target))
        payload = {"alg": "grover", "w": w, "target": target, "iterations": t,
                   "shots": args.shots, "success_rate": freq,
                   "predicted": qsim.grover_success_probability(w, t),
                   "oracle_queries": counter.quantum_queries, "seed": seed}
        ok = True
    elif args.alg == "simon":
        u = args.u
        wins = 0
        samples = []
        for i in range(args.trials):
            tri = np.random.default_rng(mix64(seed, i))
            s = int(tri.integers(1, 1 << u))
            perm = tri.permutation(1 << u)
            table = [int(perm[min(x, x ^ s)]) for x in range(1 << u)]
            res = qsim.simon_period(lambda x: table[x], u, tri)
            wins += 1 if res.s == s else 0
            samples.append(res.samples)
        payload = {"alg": "simon", "u": u, "trials": args.trials,
                   "wins": wins, "win_rate": wins / args.trials,
                   "mean_samples": float(np.mean(samples)), "seed": seed}
        ok = wins / args.trials >= 0.9
    elif args.alg == "offline-simon":
        from .constructions import FxKey
        wins, online = 0, []
        for i in range(args.trials):
            s_i = mix64(seed, i)
            tri = np.random.default_rng(mix64(s_i, 0xD))
            E = ideal_cipher_new(CipherParams(m=args.m, n=args.n,
                                             seed=mix64(s_i, 0xE)))
            K = FxKey(int(tri.integers(1 << args.m)),
                      int(tri.integers(1 << args.n)),
                      int(tri.integers(1 << args.n)))
            try:
                rep = qsim.offline_simon_demo(E, K, args.u, tri)
                want = {"k0": K.k0, "k1": K.k1, "k2": K.k2}
                wins += 1 if rep.recovered == want else 0
                online.append(rep.online_queries)
            except (qsim.RecoveryFailed, qsim.PromiseViolated,
                    attacks.RecoveryFailed):
                pass
        payload = {"alg": "offline-simon", "m": args.m, "n": args.n,
                   "u": args.u, "trials": args.trials, "wins": wins,
                   "win_rate": wins / args.trials,
                   "max_online_queries": max(online) if online else None,
                   "seed": seed}
        ok = wins / args.trials >= 0.5
    elif args.alg == "grover-km":
        wins = 0
        for i in range(args.trials):
            s_i = mix64(seed, i)
            tri = np.random.default_rng(mix64(s_i, 0xD))
            E, h, K, oracle = _planted_lrw(args.n, args.m, s_i)
            tweak = int(tri.integers(1, 1 << args.n))
            try:
                rep = qsim.grover_km_demo(E, oracle, tweak, args.s, tri)
                wins += 1 if rep.recovered["k"] == K.k else 0
            except (qsim.RecoveryFailed, qsim.PromiseViolated,
                    attacks.RecoveryFailed):
                pass
        payload = {"alg": "grover-km", "m": args.m, "n": args.n, "s": args.s,
                   "trials": args.trials, "wins": wins,
                   "win_rate": wins / args.trials, "seed": seed}
        ok = wins / args.trials >= 0.5
    else:
        raise UsageError(f"unknown algorithm {args.alg!r}")
    _emit(payload, args, (time.perf_counter() - t0) * 1e3)
    return 0 if ok else 1


# --- parser ------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--seed", type=intexpr, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pqbc",
        description="Desk-scale block-cipher security laboratory")
    sub = top.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p.add_argument("formula", choices=_FORMULAS)
    for flag in ("m", "n", "qc", "qq", "ell", "sigma", "qdec", "s", "q"):
        p.add_argument(f"--{flag}", type=intexpr, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--id", default=None, help="mode id for `bounds mode`")
    p.add_argument("--sweep", default=None, metavar="PARAM=LO:HI")
    _add_common(p)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("tradeoff", help="attack cost tradeoff curve")
    p.add_argument("attack")
    p.add_argument("--m", type=intexpr, required=True)
    p.add_argument("--n", type=intexpr, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_tradeoff)

    p = sub.add_parser("attack", help="run a classical attack")
    p.add_argument("name", choices=("birthday", "em", "key-recovery"))
    p.add_argument("--n", type=intexpr, required=True)
    p.add_argument("--m", type=intexpr, default=12)
    p.add_argument("--q", type=intexpr, default=512)
    p.add_argument("--qonline", type=intexpr, default=None)
    p.add_argument("--qoffline", type=intexpr, default=None)
    p.add_argument("--kind", choices=("multiplicative", "xex2"),
                   default="multiplicative")
    p.add_argument("--world", choices=("real", "ideal"), default="real")
    p.add_argument("--trials", type=intexpr, default=1)
    _add_common(p)
    p.set_defaults(fn=cmd_attack)

    p = sub.add_parser("experiment", help="Monte-Carlo advantage experiment")
    p.add_argument("kind",
                   choices=("distinguishing", "resampling", "reprogramming"))
    p.add_argument("--config", default=None,
                   help=f"shipped config: {', '.join(c.name for c in SHIPPED_CONFIGS)}")
    p.add_argument("--construction", default=None)
    p.add_argument("--distinguisher", default=None)
    for flag in ("m", "n", "qc", "qq", "trials", "q", "ell", "range-bits",
                 "points", "k0", "s0", "s1"):
        p.add_argument(f"--{flag}", type=intexpr, default=None,
                       dest=flag.replace("-", "_"))
    p.set_defaults(q=64, ell=12, range_bits=12, points=1)
    p.add_argument("--dist", default="uniform",
                   choices=("uniform", "point-mass", "uniform-over-recorded"))
    p.add_argument("--phase1", default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_experiment)

    p = sub.add_parser("verify-hybrids", help="swap-chain identity suite")
    p.add_argument("--n", type=intexpr, default=8)
    p.add_argument("--m", type=intexpr, default=8)
    p.add_argument("--j", type=intexpr, default=8)
    p.add_argument("--count", type=intexpr, default=1000)
    p.add_argument("--variant", choices=("fx", "lrw", "both"), default="both")
    p.add_argument("--law", action="store_true",
                   help="also run the answer-law and bad-rate statistics")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_hybrids)

    p = sub.add_parser("mode", help="MAC/AEAD operations over the toy cipher")
    p.add_argument("mode_name", choices=("cbc", "ecbc", "cmac", "gcm"))
    p.add_argument("op", choices=("mac", "seal", "open"))
    p.add_argument("--m", type=intexpr, default=16)
    p.add_argument("--n", type=intexpr, default=16)
    p.add_argument("--key", type=intexpr, default=None)
    p.add_argument("--key2", type=intexpr, default=None)
    p.add_argument("--nonce", type=intexpr, default=0)
    p.add_argument("--aad", default="")
    p.add_argument("--msg", default="")
    p.add_argument("--ct", default="")
    p.add_argument("--tag", default="")
    p.add_argument("--s", type=intexpr, default=8, help="tag bits for seal")
    _add_common(p)
    p.set_defaults(fn=cmd_mode)

    p = sub.add_parser("qsim", help="toy quantum simulations")
    p.add_argument("alg",
                   choices=("grover", "simon", "offline-simon", "grover-km"))
    p.add_argument("--w", type=intexpr, default=8)
    p.add_argument("--u", type=intexpr, default=4)
    p.add_argument("--m", type=intexpr, default=6)
    p.add_argument("--n", type=intexpr, default=8)
    p.add_argument("--s", type=intexpr, default=8)
    p.add_argument("--target", type=intexpr, default=None)
    p.add_argument("--iterations", type=intexpr, default=None)
    p.add_argument("--shots", type=intexpr, default=1000)
    p.add_argument("--trials", type=intexpr, default=20)
    _add_common(p)
    p.set_defaults(fn=cmd_qsim)
    return top


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (UsageError, ParamsOutOfRange, WidthMismatch, ValueError,
            bounds.MissingParameter, bounds.RegimeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())
