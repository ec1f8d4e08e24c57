import math

import pytest

import ntas


def test_special_functions():
    assert ntas.ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
    assert ntas.reg_lower_gamma(3.0, 3.0) == pytest.approx(0.576809918873156485, abs=1e-14)
    assert ntas.reg_lower_gamma(2.0, 1.5) + ntas.reg_upper_gamma(2.0, 1.5) == pytest.approx(1.0, abs=1e-14)
    assert ntas.binomial(64, 32) == 1832624140942590534
    with pytest.raises(ValueError):
        ntas.ln_gamma(-1.0)


def test_fading_params():
    p = ntas.fading_params(2)
    assert p["m"] == pytest.approx(1.6467)
    assert p["omega"] == pytest.approx(1.570870921874720, abs=1e-12)
    with pytest.raises(ntas.DomainError):
        ntas.fading_params(0)


def test_outage_and_diversity():
    cfg = ntas.ChannelConfig(n=2, n_t=2, n_r=3, mean_snr=10.0)
    assert cfg.omega_for(ntas.Scheme.TAS_MRC) == pytest.approx(1.176)
    assert ntas.diversity_order(ntas.Scheme.TAS_SC, cfg) == pytest.approx(4.9401)
    p10 = ntas.outage(ntas.Scheme.TAS_SC, 1.0, cfg)
    p20 = ntas.outage(ntas.Scheme.TAS_SC, 1.0, cfg.with_mean_snr(100.0))
    assert 0.0 < p20 < p10 < 1.0
    cg = ntas.coding_gain(ntas.Scheme.TAS_SC, cfg)
    assert cg["printed"] == pytest.approx(cg["extracted"])
    snr = ntas.required_snr(ntas.Scheme.TAS_SC, 1e-4, 1.0, cfg)
    assert ntas.outage(ntas.Scheme.TAS_SC, 1.0, cfg.with_mean_snr(snr)) == pytest.approx(1e-4, rel=1e-8)


def test_amount_of_fading():
    assert ntas.af_siso(2) == pytest.approx(2.88799294904602584, rel=1e-12)
    assert ntas.af_simo(2, 3) == pytest.approx(0.877855644306780278, rel=1e-12)
    cfg = ntas.ChannelConfig(n=3, n_t=2, n_r=2)
    assert ntas.af_oracle(ntas.Scheme.TAS_MRC, cfg) < ntas.af_oracle(ntas.Scheme.TAS_SC, cfg)
    with pytest.raises(ntas.CoefficientLookupError):
        ntas.amount_of_fading(ntas.Scheme.TAS_SC, ntas.ChannelConfig(n=7, n_t=2, n_r=2))
    with pytest.raises(ntas.NonPhysicalError):
        ntas.moment(ntas.Scheme.TAS_MRC, 1, ntas.ChannelConfig(n=4, n_t=2, n_r=2))


def test_monte_carlo():
    cfg = ntas.ChannelConfig(n=1, n_t=1, n_r=1, mean_snr=1.0)
    est = ntas.estimate_outage(ntas.Scheme.TAS_SC, cfg, 1.0, trials=200_000)
    assert abs(est.value - (1.0 - math.exp(-1.0))) < 4.0 * est.std_error
    again = ntas.estimate_outage(ntas.Scheme.TAS_SC, cfg, 1.0, trials=200_000, workers=2)
    assert again.value == est.value
    cdf = ntas.empirical_cdf(ntas.Scheme.TAS_SC, cfg, [0.1, 1.0, 10.0], trials=50_000)
    assert [e.value for e in cdf] == sorted(e.value for e in cdf)
