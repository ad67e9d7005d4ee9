import json

import pytest
from hypothesis import given, strategies as st

from clearq.model import (
    CostOrder,
    NonPositiveParameter,
    RateOrder,
    State,
    SystemParams,
    ZeroServers,
    enumerate_states,
    holding_rate,
    in_state_space,
    regime_tag,
    service_rate,
    validate,
)


def make(C1=2, C2=1, mu1=10, mu2=4, h0=0.01, h1=1, h2=0.1):
    return SystemParams(C1, C2, mu1, mu2, h0, h1, h2)


class TestValidate:
    def test_grid_cell_accepted(self):
        params = make()
        assert validate(params) is params

    def test_zero_servers(self):
        with pytest.raises(ZeroServers):
            SystemParams(0, 1, 10, 4, 0.01, 1, 0.1)
        with pytest.raises(ZeroServers):
            SystemParams(2, 0, 10, 4, 0.01, 1, 0.1)

    def test_negative_holding_cost(self):
        with pytest.raises(NonPositiveParameter) as exc:
            SystemParams(2, 1, 10, 4, -1, 1, 0.1)
        assert exc.value.field == "h0"

    @pytest.mark.parametrize("field", ["mu1", "mu2", "h0", "h1", "h2"])
    def test_zero_rates_and_costs_rejected(self, field):
        kwargs = dict(C1=2, C2=1, mu1=10, mu2=4, h0=0.01, h1=1, h2=0.1)
        kwargs[field] = 0
        with pytest.raises(NonPositiveParameter):
            SystemParams(**kwargs)

    def test_ratio_m(self):
        assert make(mu1=10, mu2=4).m == pytest.approx(0.4)


class TestRates:
    def test_service_rate_example(self):
        assert service_rate(make(C2=2, mu1=10, mu2=4), k=3, l=1) == 34

    def test_service_rate_empty(self):
        assert service_rate(make(), 0, 0) == 0

    def test_service_rate_clamps_at_capacity(self):
        assert service_rate(make(C2=2, mu2=4), k=0, l=5) == 8

    def test_holding_rate(self):
        params = make(h0=0.01, h1=1, h2=0.1)
        assert holding_rate(params, State(20, 1, 1)) == pytest.approx(1.3)
        assert holding_rate(params, State(0, 0, 0)) == 0
        assert holding_rate(make(h0=1, h1=1, h2=1), State(1, 0, 2)) == 3

    @given(k=st.integers(0, 6), l=st.integers(0, 6))
    def test_service_rate_monotone(self, k, l):
        params = make(C1=6, C2=2)
        base = service_rate(params, k, l)
        assert service_rate(params, k + 1, l) >= base
        assert service_rate(params, k, l + 1) >= base

    @given(k=st.integers(0, 6), l=st.integers(1, 6))
    def test_service_rate_diagonal_step(self, k, l):
        # Moving one job from Station 2 to Station 1 changes the total rate
        # by mu1 - mu2 while Station 2 stays saturated, by mu1 - [l <= C2]*mu2
        # in general.
        params = make(C1=6, C2=2)
        step = service_rate(params, k + 1, l - 1) - service_rate(params, k, l)
        want = params.mu1 - (params.mu2 if l <= params.C2 else 0.0)
        assert step == pytest.approx(want)


class TestEnumeration:
    def test_boundary_order_c1_2(self):
        states = enumerate_states(make(C1=2), 0)
        assert states == [
            State(0, 0, 0), State(0, 0, 1), State(0, 1, 0),
            State(0, 0, 2), State(0, 1, 1), State(0, 2, 0),
        ]

    def test_level_states_c1_1(self):
        states = enumerate_states(make(C1=1), 1)
        assert states[-2:] == [State(1, 0, 1), State(1, 1, 0)]

    def test_boundary_count_c1_1(self):
        assert len(enumerate_states(make(C1=1), 0)) == 3

    @given(i_max=st.integers(0, 6), c1=st.integers(1, 4), c2=st.integers(1, 4))
    def test_membership(self, i_max, c1, c2):
        params = make(C1=c1, C2=c2)
        states = enumerate_states(params, i_max)
        assert all(in_state_space(params, s) for s in states)
        assert len(states) == len(set(states))

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            enumerate_states(make(), -1)


class TestRegime:
    def test_partitions(self):
        tag = regime_tag(make(mu1=10, mu2=4, h1=1, h2=0.1))
        assert tag.cost_order is CostOrder.INDEP_COSTLIER
        assert tag.rate_order is RateOrder.MU1_GT

    def test_equality_detected(self):
        tag = regime_tag(make(mu1=10, mu2=10, h1=1, h2=1))
        assert tag.cost_order is CostOrder.EQUAL
        assert tag.rate_order is RateOrder.MU1_EQ

    @given(
        mu2=st.sampled_from([4.0, 5.0, 10.0, 12.0, 25.0]),
        h2=st.sampled_from([0.1, 0.5, 1.0, 2.0]),
    )
    def test_exactly_one_tag(self, mu2, h2):
        tag = regime_tag(make(mu2=mu2, h2=h2))
        assert tag.cost_order in CostOrder
        assert tag.rate_order in RateOrder


class TestJson:
    def test_round_trip(self):
        params = make()
        data = json.loads(json.dumps(params.to_json_dict()))
        assert SystemParams.from_json_dict(data) == params

    def test_exactly_seven_fields(self):
        assert set(make().to_json_dict()) == {"C1", "C2", "mu1", "mu2", "h0", "h1", "h2"}

    def test_unknown_key_rejected(self):
        data = make().to_json_dict()
        data["extra"] = 1
        with pytest.raises(Exception, match="unknown"):
            SystemParams.from_json_dict(data)

    def test_missing_key_rejected(self):
        data = make().to_json_dict()
        del data["mu2"]
        with pytest.raises(Exception, match="missing"):
            SystemParams.from_json_dict(data)
