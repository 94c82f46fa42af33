import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oblivious_ic.bounds import id_bound, ig, pam
from oblivious_ic.channel import (LOG2_4E, R2_GAP_VERY_STRONG, ChannelParams, RateRegion, Regime,
                                  UnsupportedRegimeError, achievable_region, classic_reference,
                                  classify_regime, design_n, gap_report)
from oblivious_ic.oracle import mi_exact

# 30-digit mpmath evaluations
TWO_IG_10 = 3.4594316186372973
IG_60 = 2.9653686687814431
R2_CONST = 1.2213475204444817
LOG2_4E_REF = 3.4426950408889634
STRONG_TIGHT_1E4_1E7 = 3.5443118351104170
STRONG_LOOSE_1E4_1E7 = 3.7518410268782462


class TestParams:
    @pytest.mark.parametrize("snr, inr", [(-1, 0), (0, -1), (math.inf, 1), (1, math.nan)])
    def test_rejects(self, snr, inr):
        with pytest.raises(ValueError):
            ChannelParams(snr, inr)

    def test_alpha_roundtrip(self):
        p = ChannelParams.from_alpha(1e6, 1.5)
        assert p.inr == pytest.approx(1e9)
        assert p.alpha == pytest.approx(1.5)
        with pytest.raises(ValueError):
            ChannelParams(1.0, 3.0).alpha


class TestRegime:
    @pytest.mark.parametrize("inr, regime", [
        (5, Regime.WEAK), (10, Regime.STRONG), (50, Regime.STRONG),
        (109.999, Regime.STRONG), (110, Regime.VERY_STRONG), (200, Regime.VERY_STRONG),
    ])
    def test_snr10(self, inr, regime):
        assert classify_regime(ChannelParams(10, inr)) is regime

    def test_zero(self):
        assert classify_regime(ChannelParams(0, 0)) is Regime.VERY_STRONG


class TestRegion:
    def test_silent_channel(self):
        r = achievable_region(ChannelParams(0, 0), 2)
        assert (r.r1_max, r.r2_max, r.sum_max) == (0.0, 0.0, 0.0)

    def test_no_interference_decouples(self):
        r = achievable_region(ChannelParams(100, 0), 4)
        assert r.r1_max == pytest.approx(id_bound(4, 20.0), abs=1e-15)
        assert r.r2_max == pytest.approx(ig(100), abs=1e-15)
        assert r.sum_max == pytest.approx(id_bound(4, 20.0), abs=1e-15)

    def test_r1_below_oracle(self):
        r = achievable_region(ChannelParams(100, 1e5), 10)
        mi = mi_exact(pam(10), 100)
        assert r.r1_max <= mi
        assert min(r.r2_max, r.sum_max) >= 0.0

    @given(st.floats(0, 1e9), st.floats(0, 1e12))
    def test_n1_collapse(self, snr, inr):
        r = achievable_region(ChannelParams(snr, inr), 1)
        assert (r.r1_max, r.r2_max, r.sum_max) == (0.0, ig(snr), ig(inr))

    @given(st.floats(0, 1e9), st.floats(0, 1e12), st.integers(1, 200))
    def test_nonnegative(self, snr, inr, n):
        r = achievable_region(ChannelParams(snr, inr), n)
        assert min(r.r1_max, r.r2_max, r.sum_max) >= 0.0

    def test_r1_monotone_in_snr(self):
        for n in (2, 5, 17):
            vals = [achievable_region(ChannelParams(s, 1e3), n).r1_max
                    for s in np.logspace(-2, 6, 200)]
            assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_n_validation(self):
        with pytest.raises(ValueError):
            achievable_region(ChannelParams(1, 1), 0)
        with pytest.raises(ValueError):
            achievable_region(ChannelParams(1, 1), 2.5)

    def test_pentagon(self):
        reg = RateRegion(2.0, 3.0, 4.0)
        assert reg.max_sum_rate == 4.0
        assert reg.vertices() == [(0, 0), (2, 0), (2, 2), (1, 3), (0, 3)]
        assert reg.contains(1.0, 3.0) and not reg.contains(2.0, 2.5)
        assert RateRegion(1.0, 1.0, 5.0).vertices() == [(0, 0), (1, 0), (1, 1), (0, 1)]


class TestClassicReference:
    def test_very_strong(self):
        ref = classic_reference(ChannelParams(10, 200))
        assert ref.sum == pytest.approx(TWO_IG_10, abs=1e-15)
        assert ref.r1 == ref.r2 == ig(10)

    def test_strong(self):
        ref = classic_reference(ChannelParams(10, 50))
        assert ref.sum == pytest.approx(IG_60, abs=1e-15)
        assert ref.r1 == ref.r2 == ig(10)

    def test_zero(self):
        assert classic_reference(ChannelParams(0, 0)).sum == 0.0

    def test_weak_unsupported(self):
        with pytest.raises(UnsupportedRegimeError):
            classic_reference(ChannelParams(10, 5))


class TestGapReport:
    def test_constants(self):
        assert R2_GAP_VERY_STRONG == pytest.approx(R2_CONST, abs=1e-15)
        # 1.22134 is the five-decimal truncation
        assert abs(R2_GAP_VERY_STRONG - 1.22134) < 1e-5
        assert LOG2_4E == pytest.approx(LOG2_4E_REF, abs=1e-15)

    def test_very_strong_example(self):
        r = gap_report(ChannelParams(1e5, 2e10))
        assert r.regime is Regime.VERY_STRONG
        assert r.r2_gap_bound == R2_GAP_VERY_STRONG
        assert r.n_used == design_n(ChannelParams(1e5, 2e10))[1] >= 3
        assert r.analytic_gap_bound == pytest.approx(2.6914575538774457 + R2_CONST, abs=1e-13)
        assert 0.0 <= r.realized_gap <= r.analytic_gap_bound

    def test_strong_degenerate(self):
        r = gap_report(ChannelParams(1, 1))
        assert r.regime is Regime.STRONG
        assert r.n_used == 1
        assert not r.in_proof_domain

    def test_strong_example(self):
        r = gap_report(ChannelParams(1e4, 1e7))
        assert r.regime is Regime.STRONG
        assert r.in_proof_domain
        assert r.tight_gap_bound == pytest.approx(STRONG_TIGHT_1E4_1E7, abs=1e-13)
        assert r.analytic_gap_bound == pytest.approx(STRONG_LOOSE_1E4_1E7, abs=1e-13)
        assert 0.0 <= r.realized_gap <= r.tight_gap_bound <= r.analytic_gap_bound

    def test_weak_refused(self):
        with pytest.raises(UnsupportedRegimeError):
            gap_report(ChannelParams(10, 5))

    def test_grid(self):
        for alpha in np.arange(1.0, 3.001, 0.05):
            for db in range(20, 121, 5):
                r = gap_report(ChannelParams.from_alpha(10 ** (db / 10), alpha))
                if r.regime is Regime.VERY_STRONG:
                    assert r.r2_gap_bound == R2_GAP_VERY_STRONG
                if r.in_proof_domain:
                    assert 0.0 <= r.realized_gap
                    assert r.within_bound
                    if r.tight_gap_bound is not None:
                        assert r.realized_gap <= r.tight_gap_bound + 1e-9

    def test_achievable_sum_is_pentagon_max(self):
        r = gap_report(ChannelParams.from_alpha(1e8, 1.5))
        reg = r.region
        assert r.achievable_sum == min(reg.r1_max + reg.r2_max, reg.sum_max)
