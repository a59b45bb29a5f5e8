"""Deterministic end-to-end runs and exhaustive delivery sweeps.

A scenario fixes the instance, the placement delivery array, who is
adversarial and how, which J servers answer, and the demands.  All
sampling flows from string-derived random.Random streams keyed by the
scenario seed, so identical scenarios reproduce identical results.
A sweep replays many (J-subset, adversary set, strategy) configurations
against a single placement, checking every user's decoded output and,
optionally, whole-library recovery, against ground truth computed
directly from the raw files.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from multiprocessing import get_context

from .analysis import MscTriple
from .pda import Pda
from .protocol import (ALL_STRATEGIES, STRATEGY_NAMES, ConfigError, HonestPlusConstant,
                       Library, ProtocolError, Randomness, SystemParams, UniformRandom,
                       adversary_content, adversary_signal, build_storage, make_query,
                       params_from_json, place_user, recover_library, server_signal,
                       strategy_key, user_decode)
from .rscode import DecodingFailure


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    params: SystemParams
    pda: Pda
    demands: tuple[tuple[int, ...], ...] | None = None
    demand_samples: int = 1
    delivery: tuple[int, ...] | None = None
    adversaries: tuple[int, ...] = ()
    strategy: object = UniformRandom()
    library_mode: str = "random"
    sweep_j_subsets: bool = False
    sweep_adversary_subsets: bool = False
    sweep_strategies: bool = False
    adversary_sizes: tuple[int, ...] | None = None
    allow_excess_adversaries: bool = False
    check_recovery: bool = False
    max_configs: int = 1_000_000

    @property
    def seed(self) -> int:
        return self.params.seed

    @classmethod
    def from_json(cls, doc: dict, base_dir=None) -> "Scenario":
        if not isinstance(doc, dict) or "params" not in doc:
            raise ConfigError('scenario needs a "params" object')
        known = {"params", "demands", "delivery", "adversaries", "strategy",
                 "library", "sweep"}
        for key in doc:
            if key not in known:
                raise ConfigError(f"unknown scenario field {key!r}")
        params, arr = params_from_json(doc["params"], base_dir)
        if arr is None:
            raise ConfigError('scenario params need a "pda"')
        sc = cls(params=params, pda=arr)

        demands = doc.get("demands")
        if demands is not None:
            if isinstance(demands, dict) and set(demands) == {"samples"}:
                sc.demand_samples = int(demands["samples"])
            elif isinstance(demands, list):
                sc.demands = tuple(tuple(int(v) for v in row) for row in demands)
            else:
                raise ConfigError('"demands" must be a K x N list or {"samples": n}')
        if "delivery" in doc:
            sc.delivery = tuple(int(v) for v in doc["delivery"])
        if "adversaries" in doc:
            sc.adversaries = tuple(int(v) for v in doc["adversaries"])
        if "strategy" in doc:
            sc.strategy = _strategy_from_json(doc["strategy"])
        if "library" in doc:
            if doc["library"] not in ("random", "zeros"):
                raise ConfigError('"library" must be "random" or "zeros"')
            sc.library_mode = doc["library"]
        sweep = doc.get("sweep")
        if sweep is not None:
            if not isinstance(sweep, dict):
                raise ConfigError('"sweep" must be an object')
            sweep_known = {"j_subsets", "adversary_subsets", "strategies",
                           "demand_samples", "adversary_sizes", "check_recovery",
                           "max_configs"}
            for key in sweep:
                if key not in sweep_known:
                    raise ConfigError(f"unknown sweep field {key!r}")
            sc.sweep_j_subsets = bool(sweep.get("j_subsets", False))
            sc.sweep_adversary_subsets = bool(sweep.get("adversary_subsets", False))
            sc.sweep_strategies = bool(sweep.get("strategies", False))
            if "demand_samples" in sweep:
                sc.demand_samples = int(sweep["demand_samples"])
            if "adversary_sizes" in sweep:
                sc.adversary_sizes = tuple(int(v) for v in sweep["adversary_sizes"])
                sc.allow_excess_adversaries = True
            if "check_recovery" in sweep:
                sc.check_recovery = bool(sweep["check_recovery"])
            if "max_configs" in sweep:
                sc.max_configs = int(sweep["max_configs"])
        return sc


def _strategy_from_json(obj):
    if isinstance(obj, str):
        name, extra = obj, {}
    elif isinstance(obj, dict) and "name" in obj:
        name = obj["name"]
        extra = {k: v for k, v in obj.items() if k != "name"}
    else:
        raise ConfigError('"strategy" must be a name or {"name": ...}')
    if name not in STRATEGY_NAMES:
        raise ConfigError(f"unknown strategy {name!r}; choose from {sorted(STRATEGY_NAMES)}")
    cls = STRATEGY_NAMES[name]
    if name == "honest_plus_constant":
        args = [int(extra.pop("constant", 1))]
    elif name == "uniform_random":
        args = [int(extra.pop("seed", 0))]
    else:
        args = []
    if extra:
        raise ConfigError(f"strategy {name!r} does not take fields {sorted(extra)}")
    return cls(*args)


@dataclass(frozen=True)
class RunResult:
    ok: bool
    measured: MscTriple
    configurations: int
    per_user: tuple[bool, ...] | None
    failure_count: int
    failures: tuple[dict, ...]  # sample of witnesses, capped
    elapsed: float
    stage_counts: tuple[tuple[str, int], ...] = ()
    trace: dict | None = None


_WITNESS_CAP = 50


@dataclass
class _State:
    library: Library
    randomness: Randomness
    stores: list
    ps: list
    caches: list
    M: Fraction
    T: Fraction


def _build_state(sc: Scenario) -> _State:
    params, arr = sc.params, sc.pda
    seed = sc.seed
    if sc.library_mode == "zeros":
        library = Library.zeros(params)
    else:
        library = Library.random(params, random.Random(f"{seed}:library"))
    randomness = Randomness.sample(params, arr, random.Random(f"{seed}:randomness"))
    stores = build_storage(params, arr, library, randomness)
    prng = random.Random(f"{seed}:p")
    ps = [[prng.randrange(params.q) for _ in range(params.N)]
          for _ in range(params.K)]
    caches = [place_user(params, arr, library, randomness, k, ps[k - 1])
              for k in range(1, params.K + 1)]
    counts = {c.symbol_count() for c in caches}
    if len(counts) != 1:
        raise ScenarioError("users cache unequal symbol counts")
    store_counts = {st.symbol_count() for st in stores}
    if len(store_counts) != 1:
        raise ScenarioError("servers store unequal symbol counts")
    return _State(library=library, randomness=randomness, stores=stores, ps=ps,
                  caches=caches, M=Fraction(counts.pop(), params.B),
                  T=Fraction(store_counts.pop(), params.B))


def _demand_list(sc: Scenario):
    params = sc.params
    if sc.demands is not None:
        rows = sc.demands
        if len(rows) != params.K or any(len(r) != params.N for r in rows):
            raise ScenarioError(f"demands must be a {params.K} x {params.N} table")
        return [tuple(tuple(v % params.q for v in r) for r in rows)]
    rng = random.Random(f"{sc.seed}:demands")
    return [tuple(tuple(rng.randrange(params.q) for _ in range(params.N))
                  for _ in range(params.K))
            for _ in range(sc.demand_samples)]


def _ground_truth(library: Library, demand, q: int) -> list[int]:
    # computed straight from the raw files; shares nothing with decoding
    B = len(library.files[0])
    out = [0] * B
    for n, dn in enumerate(demand):
        if dn:
            f = library.files[n]
            for b in range(B):
                out[b] += dn * f[b]
    return [v % q for v in out]


def _delivery(sc: Scenario) -> tuple[int, ...]:
    params = sc.params
    d = sc.delivery if sc.delivery is not None else tuple(range(1, params.J + 1))
    d = tuple(sorted(d))
    if len(d) != params.J or len(set(d)) != params.J:
        raise ScenarioError(f"delivery must name {params.J} distinct servers")
    if any(not 1 <= h <= params.H for h in d):
        raise ScenarioError(f"delivery servers outside [1..{params.H}]")
    return d


def _check_adversaries(sc: Scenario, adv) -> tuple[int, ...]:
    params = sc.params
    adv = tuple(sorted(adv))
    if len(set(adv)) != len(adv) or any(not 1 <= h <= params.H for h in adv):
        raise ScenarioError(f"adversary set {adv} is not a subset of [1..{params.H}]")
    if len(adv) > params.A and not sc.allow_excess_adversaries:
        raise ScenarioError(f"{len(adv)} adversaries exceed A={params.A}")
    return adv


def run(sc: Scenario, collect_trace: bool = False) -> RunResult:
    """One placement, one delivery configuration, every user decoded."""
    t0 = time.perf_counter()
    params, arr = sc.params, sc.pda
    state = _build_state(sc)
    demand = _demand_list(sc)[0]
    adv = _check_adversaries(sc, sc.adversaries)
    delivery = _delivery(sc)
    queries = [make_query(params, demand[k - 1], state.ps[k - 1])
               for k in range(1, params.K + 1)]
    signals = []
    for st in state.stores:
        if st.h in adv:
            rng = random.Random(f"{sc.seed}:adv:0:0:{st.h}:{strategy_key(sc.strategy)}")
            signals.append(adversary_signal(params, arr, sc.strategy, st, queries, rng))
        else:
            signals.append(server_signal(params, arr, st, queries))
    R = Fraction(max(sig.payload_symbols() for sig in signals), params.B)
    measured = MscTriple(M=state.M, T=state.T, R=R,
                         subpacketization=params.L * arr.F)
    delivered = [signals[h - 1] for h in delivery]
    per_user = []
    failures = []
    decoded_all = []
    for k in range(1, params.K + 1):
        truth = _ground_truth(state.library, demand[k - 1], params.q)
        try:
            got = user_decode(params, arr, state.caches[k - 1], demand[k - 1],
                              delivered, queries)
        except (DecodingFailure, ProtocolError) as exc:
            per_user.append(False)
            failures.append({"stage": "decode", "user": k, "error": str(exc)})
            decoded_all.append(None)
            continue
        ok = got == truth
        per_user.append(ok)
        decoded_all.append(got)
        if not ok:
            failures.append({"stage": "decode", "user": k, "error": "wrong output"})
    if sc.check_recovery:
        contents = {}
        for h in delivery:
            st = state.stores[h - 1]
            if h in adv:
                rng = random.Random(f"{sc.seed}:content:0:{h}:{strategy_key(sc.strategy)}")
                st = adversary_content(params, sc.strategy, st, rng)
            contents[h] = st
        try:
            recovered = recover_library(params, contents)
            if recovered.files != state.library.files:
                failures.append({"stage": "recover", "error": "wrong library"})
        except (DecodingFailure, ProtocolError) as exc:
            failures.append({"stage": "recover", "error": str(exc)})
    trace = None
    if collect_trace:
        trace = {
            "library": [list(f) for f in state.library.files],
            "blends": [list(p) for p in state.ps],
            "demands": [list(d) for d in demand],
            "queries": [list(qr.values) for qr in queries],
            "stores": [{"h": st.h,
                        "coded_subfiles": [list(v) for v in st.coded_subfiles],
                        "coded_keys": [list(v) for v in st.coded_keys]}
                       for st in state.stores],
            "signals": [{"h": sig.h, "honest": sig.honest,
                         "payload": [list(p) for p in sig.payload]}
                        for sig in delivered],
            "decoded": [list(d) if d is not None else None for d in decoded_all],
        }
    stage_counts = tuple(sorted(Counter(w["stage"] for w in failures).items()))
    return RunResult(ok=not failures and all(per_user), measured=measured,
                     configurations=1, per_user=tuple(per_user),
                     failure_count=len(failures), failures=tuple(failures[:_WITNESS_CAP]),
                     elapsed=time.perf_counter() - t0, stage_counts=stage_counts,
                     trace=trace)


# ---------- sweeps ----------


def _config_list(sc: Scenario):
    params = sc.params
    H, J, A = params.H, params.J, params.A
    if sc.sweep_j_subsets:
        j_subsets = list(combinations(range(1, H + 1), J))
    else:
        j_subsets = [_delivery(sc)]
    if sc.sweep_adversary_subsets:
        sizes = sc.adversary_sizes if sc.adversary_sizes is not None else tuple(range(A + 1))
        adv_subsets = []
        for size in sizes:
            adv_subsets.extend(combinations(range(1, H + 1), size))
    else:
        adv_subsets = [_check_adversaries(sc, sc.adversaries)]
    strategies = list(ALL_STRATEGIES) if sc.sweep_strategies else [sc.strategy]
    configs = [(js, tuple(adv), st)
               for js in j_subsets for adv in adv_subsets for st in strategies]
    if len(configs) > sc.max_configs:
        raise ScenarioError(f"{len(configs)} configurations exceed the cap {sc.max_configs}")
    return configs


def _sweep_slice(sc: Scenario, lo: int, hi: int):
    """Process configs[lo:hi]; returns (failure_count, witness sample)."""
    params, arr = sc.params, sc.pda
    state = _build_state(sc)
    demand_list = _demand_list(sc)
    queries_list = [[make_query(params, demand[k - 1], state.ps[k - 1])
                     for k in range(1, params.K + 1)] for demand in demand_list]
    honest = [[server_signal(params, arr, st, queries) for st in state.stores]
              for queries in queries_list]
    truth_list = [[_ground_truth(state.library, demand[k - 1], params.q)
                   for k in range(1, params.K + 1)] for demand in demand_list]
    configs = _config_list(sc)
    failure_count = 0
    witnesses = []
    stage_counter: Counter = Counter()

    def note(w):
        nonlocal failure_count
        failure_count += 1
        stage_counter[w["stage"]] += 1
        if len(witnesses) < _WITNESS_CAP:
            witnesses.append(w)

    max_payload = max(sig.payload_symbols() for sig in honest[0])
    for ci in range(lo, hi):
        js, adv, strat = configs[ci]
        label = {"j_subset": js, "adversaries": adv, "strategy": strategy_key(strat)}
        if sc.check_recovery:
            contents = {}
            for h in js:
                st = state.stores[h - 1]
                if h in adv:
                    rng = random.Random(f"{sc.seed}:content:{ci}:{h}:{strategy_key(strat)}")
                    st = adversary_content(params, strat, st, rng)
                contents[h] = st
            try:
                recovered = recover_library(params, contents)
                if recovered.files != state.library.files:
                    note(dict(label, stage="recover", error="wrong library"))
            except (DecodingFailure, ProtocolError) as exc:
                note(dict(label, stage="recover", error=str(exc)))
        for di, demand in enumerate(demand_list):
            queries = queries_list[di]
            delivered = []
            for h in js:
                if h in adv:
                    rng = random.Random(
                        f"{sc.seed}:adv:{ci}:{di}:{h}:{strategy_key(strat)}")
                    delivered.append(adversary_signal(params, arr, strat,
                                                      state.stores[h - 1], queries, rng))
                else:
                    delivered.append(honest[di][h - 1])
            for k in range(1, params.K + 1):
                try:
                    got = user_decode(params, arr, state.caches[k - 1],
                                      demand[k - 1], delivered, queries)
                except (DecodingFailure, ProtocolError) as exc:
                    note(dict(label, stage="decode", demand_index=di, user=k,
                              error=str(exc)))
                    continue
                if got != truth_list[di][k - 1]:
                    note(dict(label, stage="decode", demand_index=di, user=k,
                              error="wrong output"))
    measured = MscTriple(M=state.M, T=state.T,
                         R=Fraction(max_payload, params.B),
                         subpacketization=params.L * arr.F)
    return failure_count, witnesses, measured, dict(stage_counter)


def sweep(sc: Scenario, jobs: int = 1) -> RunResult:
    """Replay every selected configuration; aggregate failures with witnesses."""
    t0 = time.perf_counter()
    configs = _config_list(sc)
    n = len(configs)
    if jobs <= 1 or n < 2:
        failure_count, witnesses, measured, stages = _sweep_slice(sc, 0, n)
    else:
        jobs = min(jobs, n)
        bounds = [(i * n) // jobs for i in range(jobs + 1)]
        args = [(sc, bounds[i], bounds[i + 1]) for i in range(jobs)]
        with get_context("fork").Pool(jobs) as pool:
            parts = pool.starmap(_sweep_slice, args)
        failure_count = sum(p[0] for p in parts)
        witnesses = [w for p in parts for w in p[1]][:_WITNESS_CAP]
        measured = parts[0][2]
        stages = Counter()
        for p in parts:
            stages.update(p[3])
        stages = dict(stages)
    return RunResult(ok=failure_count == 0, measured=measured, configurations=n,
                     per_user=None, failure_count=failure_count,
                     failures=tuple(witnesses), elapsed=time.perf_counter() - t0,
                     stage_counts=tuple(sorted(stages.items())))
