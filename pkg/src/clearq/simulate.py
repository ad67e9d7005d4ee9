"""Monte-Carlo oracle for the clearing chain.

Simulates the continuous-time chain under any policy and estimates the
expected total holding cost, independently of the dynamic program.  Every
completion removes exactly one job, so an episode from (i, k, l) has exactly
i + k + l events; whole replication batches therefore run in lockstep with
two uniform draws per event, which keeps streams reproducible and cheap.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import State, SystemParams, in_state_space

BATCH_SIZE = 16384


class StuckState(RuntimeError):
    """Total service rate hit zero with jobs still present (bug trap)."""


@dataclass(frozen=True)
class SimConfig:
    seed: int
    replications: int
    initial_state: State

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")


@dataclass(frozen=True)
class SimEstimate:
    mean: float
    std_error: float
    replications: int
    degenerate: bool = False  # single replication: no spread estimate

    def to_json_dict(self, seed: int | None = None) -> dict:
        data = {
            "mean": self.mean,
            "std_error": self.std_error,
            "replications": self.replications,
        }
        if self.degenerate:
            data["degenerate"] = True
        if seed is not None:
            data["seed"] = seed
        return data


def _batch_costs(
    params: SystemParams, policy, initial_state: State, n: int, rng: np.random.Generator
) -> np.ndarray:
    i0, k0, l0 = initial_state
    events = i0 + k0 + l0
    queue = np.full(n, i0, dtype=np.int64)
    at1 = np.full(n, k0, dtype=np.int64)
    at2 = np.full(n, l0, dtype=np.int64)
    cost = np.zeros(n)
    for _ in range(events):
        rate1 = at1 * params.mu1
        rate2 = np.minimum(at2, params.C2) * params.mu2
        total = rate1 + rate2
        if np.any(total <= 0.0):
            raise StuckState("zero service rate before the system cleared")
        u_time = rng.random(n)
        u_event = rng.random(n)
        cost += (queue * params.h0 + at1 * params.h1 + at2 * params.h2) * (
            -np.log(u_time) / total
        )
        station1 = u_event * total < rate1
        busy = queue >= 1
        collab = np.zeros(n, dtype=bool)
        if np.any(busy):
            q = queue[busy]
            kb = np.where(station1[busy], at1[busy] - 1, at1[busy])
            lb = np.where(station1[busy], at2[busy], at2[busy] - 1)
            station = np.where(station1[busy], 1, 2)
            collab[busy] = np.asarray(policy(q, kb, lb, station), dtype=bool)
        at1 += -station1.astype(np.int64) + (busy & ~collab)
        at2 += -(~station1).astype(np.int64) + (busy & collab)
        queue -= busy.astype(np.int64)
    return cost


def run_episode(
    params: SystemParams, policy, initial_state: State, rng: np.random.Generator
) -> float:
    """Total holding cost of one simulated clearing episode."""
    state = State(*initial_state)
    if not in_state_space(params, state):
        raise ValueError(f"initial state {state} is outside the state space")
    return float(_batch_costs(params, policy, state, 1, rng)[0])


def estimate(params: SystemParams, policy, config: SimConfig) -> SimEstimate:
    """Mean and standard error over independent replications.

    Replications run in fixed-size batches with generator streams derived
    from the seed, so results are reproducible and batches could be farmed
    out to workers without changing the estimate.
    """
    state = State(*config.initial_state)
    if not in_state_space(params, state):
        raise ValueError(f"initial state {state} is outside the state space")
    n = config.replications
    sizes = [BATCH_SIZE] * (n // BATCH_SIZE)
    if n % BATCH_SIZE:
        sizes.append(n % BATCH_SIZE)
    seeds = np.random.SeedSequence(config.seed).spawn(len(sizes))
    costs = np.concatenate([
        _batch_costs(params, policy, state, size, np.random.default_rng(seed))
        for size, seed in zip(sizes, seeds)
    ])
    mean = float(np.mean(costs))
    if n == 1:
        return SimEstimate(mean, 0.0, 1, degenerate=True)
    std_error = float(np.std(costs, ddof=1) / np.sqrt(n))
    return SimEstimate(mean, std_error, n)
