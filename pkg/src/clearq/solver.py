"""Exact expected clearing costs by level recursion.

The value of a state is the expected total holding cost to empty the system.
With no external arrivals the queue length can only fall, so values at queue
level i depend only on level i-1 and the i = 0 boundary layer, which in turn
recurses on the total number of jobs in service.  One sweep is exact; there
is no iteration or truncation error beyond float arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .model import (
    State,
    SystemParams,
    band_sign,
    enumerate_states,
    holding_rate,
    service_rate,
)
from .thresholds import affine_pieces, probs

ActionRule = Callable[[int, int, int, int], int]


class IndexOutOfSpace(KeyError):
    """Difference requested at an index outside the admissible set."""


@dataclass(frozen=True)
class ValueTable:
    params: SystemParams
    i_max: int
    values: Mapping[State, float]
    kind: str

    def value(self, i: int, k: int, l: int) -> float:
        return self.values[State(i, k, l)]

    def __getitem__(self, state) -> float:
        return self.values[State(*state)]

    def states(self) -> list[State]:
        return enumerate_states(self.params, self.i_max)

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("i,k,l,value\n")
            for s in self.states():
                fh.write(f"{s.i},{s.k},{s.l},{self.values[s]!r}\n")


@dataclass(frozen=True)
class DiffTable:
    """D(i, k, l) = v(i, k, l) - v(i, k-1, l+1) on all admissible indices."""

    params: SystemParams
    i_max: int
    entries: Mapping[State, float]

    def d(self, i: int, k: int, l: int) -> float:
        if k < 1:
            raise IndexOutOfSpace(f"difference undefined for k = {k} < 1")
        try:
            return self.entries[State(i, k, l)]
        except KeyError:
            raise IndexOutOfSpace(f"no difference entry at {(i, k, l)}") from None

    def states(self) -> list[State]:
        return [s for s in enumerate_states(self.params, self.i_max) if s.k >= 1]

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("i,k,l,D\n")
            for s in self.states():
                fh.write(f"{s.i},{s.k},{s.l},{self.entries[s]!r}\n")


def solve_boundary(params: SystemParams) -> dict[State, float]:
    """Values of the no-decision layer i = 0, by total jobs in service.

    Terms with a zero rate coefficient are skipped, so successor states
    outside the state space are never touched.
    """
    v: dict[State, float] = {State(0, 0, 0): 0.0}
    for total in range(1, params.C1 + 1):
        for k in range(0, total + 1):
            l = total - k
            d = service_rate(params, k, l)
            acc = k * params.h1 + l * params.h2
            if k > 0:
                acc += k * params.mu1 * v[State(0, k - 1, l)]
            served = min(l, params.C2)
            if served > 0:
                acc += served * params.mu2 * v[State(0, k, l - 1)]
            v[State(0, k, l)] = acc / d
    return v


def boundary_diff_formula(params: SystemParams, k: int, l: int) -> float:
    """Closed form for D(0, k, l): h1/mu1 - max(l+1, C2)/C2 * h2/mu2."""
    return params.h1 / params.mu1 - (max(l + 1, params.C2) / params.C2) * (
        params.h2 / params.mu2
    )


def _solve(params: SystemParams, i_max: int, rule: ActionRule | None, kind: str) -> ValueTable:
    if i_max < 0:
        raise ValueError("i_max must be non-negative")
    v = solve_boundary(params)
    for i in range(1, i_max + 1):
        for k in range(0, params.C1 + 1):
            l = params.C1 - k
            d = service_rate(params, k, l)
            acc = i * params.h0 + k * params.h1 + l * params.h2
            if k > 0:
                stay = v[State(i - 1, k, l)]
                move = v[State(i - 1, k - 1, l + 1)]
                if rule is None:
                    acc += k * params.mu1 * min(stay, move)
                else:
                    acc += k * params.mu1 * (move if rule(i, k - 1, l, 1) else stay)
            served = min(l, params.C2)
            if served > 0:
                stay = v[State(i - 1, k + 1, l - 1)]
                move = v[State(i - 1, k, l)]
                if rule is None:
                    acc += served * params.mu2 * min(stay, move)
                else:
                    acc += served * params.mu2 * (move if rule(i, k, l - 1, 2) else stay)
            v[State(i, k, l)] = acc / d
    return ValueTable(params, i_max, v, kind)


def solve_optimal(params: SystemParams, i_max: int) -> ValueTable:
    """Optimal expected clearing costs up to queue depth i_max."""
    return _solve(params, i_max, None, "optimal")


def solve_under_policy(params: SystemParams, policy, i_max: int) -> ValueTable:
    """Expected clearing costs when every decision follows the given policy.

    The policy is consulted with the canonical decision context
    (q, k_busy, l_busy, station); it must be total for q up to i_max.
    """
    rule = policy if callable(policy) else policy.rule
    policy_id = getattr(policy, "id", getattr(policy, "__name__", "anonymous"))
    return _solve(params, i_max, rule, f"policy:{policy_id}")


def diff(table: ValueTable) -> DiffTable:
    """Difference table of an optimal solve."""
    if table.kind != "optimal":
        raise ValueError(f"diff requires an optimal table, got kind={table.kind!r}")
    entries: dict[State, float] = {}
    for s in enumerate_states(table.params, table.i_max):
        if s.k < 1:
            continue
        entries[s] = table.values[s] - table.values[State(s.i, s.k - 1, s.l + 1)]
    return DiffTable(table.params, table.i_max, entries)


@dataclass(frozen=True)
class RecursionReport:
    max_scaled_residual: float
    worst_state: State | None
    checked: int


def recursion_check(
    params: SystemParams, table: ValueTable, diff_table: DiffTable
) -> RecursionReport:
    """Residuals of the one-step difference recursions.

    At each fully-busy state the difference satisfies an exact three-term
    recursion whose form depends on the sign of the difference one level
    down; both forms apply at a zero.  Residuals are scaled by 1/(1 + |D|).
    """
    worst = 0.0
    worst_state = None
    checked = 0
    for i in range(1, diff_table.i_max + 1):
        for k in range(1, params.C1 + 1):
            l = params.C1 - k
            d_here = diff_table.d(i, k, l)
            d_prev = diff_table.d(i - 1, k, l)
            p, q, r = probs(params, k)
            c_k, b_k = affine_pieces(params, k)
            base = p * (i * c_k + b_k)
            sign_prev = band_sign(d_prev)
            predictions = []
            if sign_prev >= 0:
                pos = base + r * d_prev
                if k >= 2:
                    pos += q * max(0.0, diff_table.d(i - 1, k - 1, l + 1))
                predictions.append(pos)
            if sign_prev <= 0:
                neg = base + q * d_prev
                if l >= 1:
                    neg += r * min(diff_table.d(i - 1, k + 1, l - 1), 0.0)
                predictions.append(neg)
            for pred in predictions:
                checked += 1
                scaled = abs(d_here - pred) / (1.0 + abs(d_here))
                if scaled > worst:
                    worst = scaled
                    worst_state = State(i, k, l)
    return RecursionReport(worst, worst_state, checked)
