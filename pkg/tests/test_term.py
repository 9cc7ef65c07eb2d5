import pytest

from funghost.core import MarketParams, TermStructure, sample


class TestTermStructure:
    def test_piecewise_sampling_is_right_continuous(self):
        ts = TermStructure(breakpoints=(0.5,), values=(0.01, 0.03))
        assert ts(0.0) == 0.01
        assert ts(0.49) == 0.01
        assert ts(0.5) == 0.03
        assert sample(ts, 10.0) == 0.03

    def test_constant(self):
        ts = TermStructure.constant(0.2)
        assert ts.is_constant
        assert ts(3.0) == 0.2

    @pytest.mark.parametrize(
        "breakpoints, values",
        [
            ((0.5,), (0.01,)),
            ((0.5, 0.5), (0.01, 0.02, 0.03)),
            ((0.7, 0.2), (0.01, 0.02, 0.03)),
            ((0.0,), (0.01, 0.02)),
        ],
    )
    def test_invalid_structures(self, breakpoints, values):
        with pytest.raises(ValueError):
            TermStructure(breakpoints=breakpoints, values=values)

    def test_negative_time(self):
        with pytest.raises(ValueError):
            sample(TermStructure.constant(0.1), -0.1)


class TestMarketParams:
    def test_floats_become_structures(self):
        market = MarketParams(spot=100.0, rate=0.02, dividend=0.01, vol=0.3)
        assert isinstance(market.rate, TermStructure)
        assert market.at(0.7) == (0.02, 0.01, 0.3)
        assert market.is_constant

    def test_time_dependent_sample(self):
        market = MarketParams(
            spot=100.0,
            rate=TermStructure((0.5,), (0.01, 0.04)),
            vol=TermStructure((0.25, 0.75), (0.1, 0.2, 0.3)),
        )
        assert market.at(0.1) == (0.01, 0.0, 0.1)
        assert market.at(0.6) == (0.04, 0.0, 0.2)
        assert market.at(0.9) == (0.04, 0.0, 0.3)
        assert not market.is_constant

    def test_negative_rate_allowed(self):
        assert MarketParams(spot=1.0, rate=-0.01).at(0.0)[0] == -0.01

    @pytest.mark.parametrize("kwargs", [{"spot": 0.0}, {"spot": 1.0, "vol": 0.0}, {"spot": 1.0, "vol": -0.2}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            MarketParams(**kwargs)
