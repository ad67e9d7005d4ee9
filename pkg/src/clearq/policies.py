"""Decision rules behind one canonical context.

Every decision happens when a flexible server frees up with jobs still in
queue.  The canonical context is (q, k_busy, l_busy, station): queue length
including the job being engaged, busy counts excluding the freed server, and
which station completed.  Action a = 0 starts independent service, a = 1
collaborative.  Whether the completion was at Station 1 or 2, the optimal
comparison is the same difference D(q-1, k_busy+1, l_busy), so one rule
covers both completion types.

Rules accept scalars or numpy arrays so the simulator can evaluate whole
replication batches at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .model import State, SystemParams, ZERO_BAND
from .thresholds import Orientation, heuristic_profile

STATION1 = 1
STATION2 = 2

BENCHMARK_IDS = ("pi1", "pi2", "pi3", "pi4", "tpi1", "tpi2", "tpi3", "tpi4")
POLICY_IDS = ("optimal", "heuristic") + BENCHMARK_IDS


class DepthExceeded(LookupError):
    """Greedy policy consulted beyond the depth of its value table."""


class DecisionContext(NamedTuple):
    q: int
    k_busy: int
    l_busy: int
    completed_at: int  # STATION1 or STATION2


@dataclass(frozen=True)
class Policy:
    """Deterministic decision rule with a stable identifier."""

    id: str
    rule: Callable = field(repr=False)

    def __call__(self, q, k_busy, l_busy, station):
        return self.rule(q, k_busy, l_busy, station)

    def decide(self, ctx: DecisionContext) -> int:
        return int(bool(self.rule(ctx.q, ctx.k_busy, ctx.l_busy, ctx.completed_at)))


def optimal_greedy(value_table) -> Policy:
    """Extract the greedy rule from an optimal value table.

    Collaborative service is chosen iff it is strictly cheaper beyond the
    zero band; exact ties go independent.
    """
    params = value_table.params
    i_max = value_table.i_max
    d_arr = np.zeros((i_max + 1, params.C1 + 1))
    for i in range(0, i_max + 1):
        for k in range(1, params.C1 + 1):
            l = params.C1 - k
            d_arr[i, k] = value_table.value(i, k, l) - value_table.value(i, k - 1, l + 1)

    def rule(q, k_busy, l_busy, station):
        level = np.asarray(q) - 1
        if np.any(level > i_max):
            raise DepthExceeded(f"queue {np.max(np.asarray(q))} exceeds table depth {i_max}")
        d = d_arr[level, np.asarray(k_busy) + 1]
        return d > ZERO_BAND * (1.0 + np.abs(d))

    return Policy("optimal", rule)


def pi_prime(params: SystemParams, *, equal_cost_as: str = "lowcost") -> Policy:
    """Threshold policy built on the closed-form surrogate thresholds.

    Collaborative orientation: collaborate iff q <= threshold(k_busy+1),
    an infinite threshold meaning always.  Independent orientation: serve
    independently iff q - 1 < threshold(l_busy), infinite meaning always.
    """
    profile = heuristic_profile(params, equal_cost_as=equal_cost_as)
    if profile.orientation is Orientation.COLLABORATIVE:
        th = np.full(params.C1 + 2, math.inf)
        for k, value in profile.entries.items():
            th[k] = value

        def rule(q, k_busy, l_busy, station):
            return np.asarray(q) <= th[np.asarray(k_busy) + 1]
    else:
        th = np.full(params.C1 + 1, math.inf)
        for l, value in profile.entries.items():
            th[l] = value

        def rule(q, k_busy, l_busy, station):
            return np.asarray(q) - 1 >= th[np.asarray(l_busy)]

    return Policy("heuristic", rule)


def benchmark(params: SystemParams, which: str) -> Policy:
    """Fixed benchmark rules from the numerical study.

    pi1/tpi1 always independent; pi3/tpi3 always collaborative; pi2
    collaborates iff q <= 10 and tpi2 iff q > 10 (the constant 10 is part of
    the benchmark definition); pi4/tpi4 collaborate iff no Station 2 wait,
    which reads l_busy < C2 for either completion type.
    """
    c2 = params.C2
    rules = {
        "pi1": lambda q, kb, lb, n: np.zeros_like(np.asarray(q), dtype=bool),
        "tpi1": lambda q, kb, lb, n: np.zeros_like(np.asarray(q), dtype=bool),
        "pi3": lambda q, kb, lb, n: np.ones_like(np.asarray(q), dtype=bool),
        "tpi3": lambda q, kb, lb, n: np.ones_like(np.asarray(q), dtype=bool),
        "pi2": lambda q, kb, lb, n: np.asarray(q) <= 10,
        "tpi2": lambda q, kb, lb, n: np.asarray(q) > 10,
        "pi4": lambda q, kb, lb, n: np.asarray(lb) < c2,
        "tpi4": lambda q, kb, lb, n: np.asarray(lb) < c2,
    }
    if which not in rules:
        raise ValueError(f"unknown benchmark {which!r}; expected one of {BENCHMARK_IDS}")
    return Policy(which, rules[which])


def policy_by_id(
    params: SystemParams,
    policy_id: str,
    *,
    value_table=None,
    equal_cost_as: str = "lowcost",
) -> Policy:
    """Look up a policy by its CLI identifier."""
    if policy_id == "heuristic":
        return pi_prime(params, equal_cost_as=equal_cost_as)
    if policy_id == "optimal":
        if value_table is None:
            raise ValueError("policy 'optimal' needs a solved value table")
        return optimal_greedy(value_table)
    return benchmark(params, policy_id)
