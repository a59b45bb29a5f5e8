"""Seeded scenario runs and exhaustive sweeps."""

from fractions import Fraction

import pytest

from rsplfr.analysis import msc_from_pda
from rsplfr.pda import man_pda
from rsplfr.protocol import ConfigError, HonestPlusConstant, SystemParams, UniformRandom
from rsplfr.sim import Scenario, ScenarioError, run, sweep

TOY = SystemParams(N=4, K=3, H=6, A=1, I=1, J=5, q=7, B=6)
TOY_PDA = man_pda(3, 1)
ROBUST = SystemParams(N=2, K=2, H=5, A=1, I=1, J=4, q=11, B=2)
ROBUST_PDA = man_pda(2, 1)


def toy_scenario(**kwargs):
    return Scenario(params=TOY, pda=TOY_PDA, **kwargs)


def test_single_run_with_unit_demands():
    demands = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
    result = run(toy_scenario(demands=demands))
    assert result.ok
    assert result.per_user == (True, True, True)
    assert result.configurations == 1
    assert result.failure_count == 0


def test_measured_triple_matches_the_array_formulas():
    result = run(toy_scenario())
    assert result.measured == msc_from_pda(TOY_PDA, TOY)
    assert result.measured.M == Fraction(2)
    assert result.measured.subpacketization == 6


def test_runs_are_deterministic():
    a = run(toy_scenario(), collect_trace=True)
    b = run(toy_scenario(), collect_trace=True)
    assert a.trace == b.trace
    assert (a.ok, a.per_user, a.measured) == (b.ok, b.per_user, b.measured)


def test_seed_changes_the_sampled_world():
    import dataclasses
    a = run(toy_scenario(), collect_trace=True)
    other = dataclasses.replace(TOY, seed=99)
    b = run(Scenario(params=other, pda=TOY_PDA), collect_trace=True)
    assert a.trace["library"] != b.trace["library"]
    assert b.ok


def test_trace_contains_the_full_transcript():
    result = run(toy_scenario(), collect_trace=True)
    t = result.trace
    assert set(t) == {"library", "blends", "demands", "queries", "stores",
                      "signals", "decoded"}
    assert len(t["library"]) == 4
    assert len(t["signals"]) == 5
    assert all(sig["honest"] for sig in t["signals"])


def test_full_sweep_covers_every_configuration():
    sc = toy_scenario(sweep_j_subsets=True, sweep_adversary_subsets=True,
                      sweep_strategies=True, demand_samples=2)
    result = sweep(sc)
    assert result.ok
    # 6 delivery subsets x (1 empty + 6 single adversary sets) x 4 strategies
    assert result.configurations == 168
    assert result.failure_count == 0
    assert result.per_user is None
    assert result.measured == msc_from_pda(TOY_PDA, TOY)


def test_parallel_sweep_equals_serial():
    sc = toy_scenario(sweep_j_subsets=True, sweep_adversary_subsets=True,
                      sweep_strategies=True, demand_samples=1,
                      check_recovery=True)
    serial = sweep(sc, jobs=1)
    parallel = sweep(sc, jobs=2)
    assert (serial.ok, serial.configurations, serial.failure_count,
            serial.measured, serial.stage_counts) == \
        (parallel.ok, parallel.configurations, parallel.failure_count,
         parallel.measured, parallel.stage_counts)


def test_adversary_outside_the_delivery_set_is_harmless():
    result = run(toy_scenario(delivery=(1, 2, 3, 4, 5), adversaries=(6,),
                              strategy=HonestPlusConstant(5)))
    assert result.ok


def test_recovery_check_catches_excess_corruption():
    sc = Scenario(params=ROBUST, pda=ROBUST_PDA, delivery=(1, 2, 3, 4),
                  adversaries=(1, 2), strategy=HonestPlusConstant(1),
                  allow_excess_adversaries=True, check_recovery=True)
    result = run(sc)
    assert not result.ok
    assert result.per_user == (False, False)
    stages = dict(result.stage_counts)
    assert stages["decode"] == 2
    assert stages["recover"] == 1


def test_adversary_budget_enforced_unless_waived():
    sc = toy_scenario(adversaries=(1, 2), strategy=HonestPlusConstant(1))
    with pytest.raises(ScenarioError):
        run(sc)
    sc.allow_excess_adversaries = True
    result = run(sc)  # two corruptions, radius one: must fail, not crash
    assert not result.ok


def test_scenario_shape_errors():
    with pytest.raises(ScenarioError):
        run(toy_scenario(delivery=(1, 2, 3)))
    with pytest.raises(ScenarioError):
        run(toy_scenario(delivery=(1, 2, 3, 4, 9)))
    with pytest.raises(ScenarioError):
        run(toy_scenario(demands=((1, 0, 0, 0),)))
    with pytest.raises(ScenarioError):
        run(toy_scenario(adversaries=(0,), allow_excess_adversaries=True))


def test_sweep_size_cap():
    sc = toy_scenario(sweep_j_subsets=True, sweep_strategies=True,
                      max_configs=10)
    with pytest.raises(ScenarioError):
        sweep(sc)


def test_adversary_size_override_controls_the_sweep():
    sc = Scenario(params=ROBUST, pda=ROBUST_PDA, sweep_j_subsets=True,
                  sweep_adversary_subsets=True, sweep_strategies=True,
                  adversary_sizes=(1,), check_recovery=True)
    result = sweep(sc)
    assert result.ok
    assert result.configurations == 5 * 5 * 4

    harder = Scenario(params=ROBUST, pda=ROBUST_PDA, sweep_j_subsets=True,
                      sweep_adversary_subsets=True, adversary_sizes=(2,),
                      strategy=HonestPlusConstant(1),
                      allow_excess_adversaries=True)
    over = sweep(harder)
    assert not over.ok
    assert over.configurations == 5 * 10


def test_scenario_from_json_round_trip():
    doc = {
        "params": {"N": 4, "K": 3, "H": 6, "A": 1, "I": 1, "J": 5,
                   "q": 7, "B": 6, "pda": {"man": {"k": 3, "t": 1}}},
        "demands": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
        "delivery": [1, 2, 3, 4, 5],
        "adversaries": [3],
        "strategy": {"name": "honest_plus_constant", "constant": 2},
        "library": "zeros",
    }
    sc = Scenario.from_json(doc)
    assert sc.params == TOY
    assert sc.demands == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
    assert sc.adversaries == (3,)
    assert sc.strategy == HonestPlusConstant(2)
    assert sc.library_mode == "zeros"
    result = run(sc)
    assert result.ok  # zero library decodes to zeros under any demand


def test_scenario_from_json_sweep_and_samples():
    doc = {
        "params": {"N": 4, "K": 3, "H": 6, "A": 1, "I": 1, "J": 5,
                   "q": 7, "B": 6, "pda": {"man": {"k": 3, "t": 1}}},
        "demands": {"samples": 4},
        "sweep": {"j_subsets": True, "adversary_subsets": True,
                  "strategies": True, "check_recovery": True},
    }
    sc = Scenario.from_json(doc)
    assert sc.demand_samples == 4
    assert sc.sweep_strategies and sc.check_recovery
    assert sweep(sc).ok


def test_scenario_from_json_rejects_bad_fields():
    base = {"params": {"N": 4, "K": 3, "H": 6, "A": 1, "I": 1, "J": 5,
                       "q": 7, "B": 6, "pda": {"man": {"k": 3, "t": 1}}}}
    with pytest.raises(ConfigError):
        Scenario.from_json(dict(base, bogus=1))
    with pytest.raises(ConfigError):
        Scenario.from_json(dict(base, strategy="no_such_strategy"))
    with pytest.raises(ConfigError):
        Scenario.from_json(dict(base, strategy={"name": "zero_payload",
                                                "constant": 1}))
    with pytest.raises(ConfigError):
        Scenario.from_json(dict(base, library="sparse"))
    with pytest.raises(ConfigError):
        Scenario.from_json(dict(base, sweep={"unknown": True}))
    with pytest.raises(ConfigError):
        Scenario.from_json({"params": dict(base["params"], pda=None)})


def test_uniform_adversary_rng_is_scenario_seeded():
    sc = toy_scenario(adversaries=(2,), strategy=UniformRandom())
    a = run(sc, collect_trace=True)
    b = run(sc, collect_trace=True)
    assert a.trace == b.trace
    assert a.ok and b.ok
