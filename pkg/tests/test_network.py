import math

import pytest

from relaylab.errors import DomainError
from relaylab.network import NetworkConfig, NormalizedNetwork, normalize
from relaylab.schemes import rate_df


def test_normalize_scaling_rule():
    config = NetworkConfig(g=[1.0], h=[1.0], p_source=2.0, p_relay=1.0, n0=0.5)
    net = normalize(config)
    assert net.g_tilde == (4.0,)
    assert net.h_tilde == (2.0,)


def test_sorting_convention_with_permutation():
    config = NetworkConfig(g=[3.0, 1.0], h=[0.5, 0.25])
    assert config.g == (1.0, 3.0)
    assert config.h == (0.25, 0.5)  # h follows its relay
    assert config.permutation == (1, 0)
    net = normalize(config)
    assert net.g_tilde == (1.0, 3.0)
    assert net.permutation == (1, 0)


def test_zero_source_power_rejected():
    with pytest.raises(DomainError):
        NetworkConfig(g=[1.0], h=[1.0], p_source=0.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(g=[-1.0], h=[1.0]),
        dict(g=[1.0], h=[-1.0]),
        dict(g=[math.nan], h=[1.0]),
        dict(g=[1.0], h=[1.0], n0=0.0),
        dict(g=[1.0], h=[1.0], p_relay=[1.0, 1.0]),
        dict(g=[1.0, 1.0], h=[1.0]),
        dict(g=[], h=[]),
    ],
)
def test_invalid_configs_rejected(kwargs):
    with pytest.raises(DomainError):
        NetworkConfig(**kwargs)


def test_normalize_idempotent_on_unit_networks():
    config = NetworkConfig(g=[0.3, 2.0], h=[1.5, 0.2])
    net = normalize(config)
    again = normalize(NetworkConfig(g=net.g_tilde, h=net.h_tilde))
    assert again.g_tilde == net.g_tilde
    assert again.h_tilde == net.h_tilde


def test_rates_agree_between_config_and_normalized_form():
    config = NetworkConfig(
        g=[0.8, 0.1], h=[0.5, 2.0], p_source=3.0, p_relay=[2.0, 0.5], n0=0.25
    )
    net = normalize(config)
    unit = normalize(NetworkConfig(g=net.g_tilde, h=net.h_tilde))
    assert rate_df(net).rate_bits == rate_df(unit).rate_bits


def test_relay_power_broadcast():
    config = NetworkConfig(g=[1.0, 2.0], h=[1.0, 1.0], p_relay=3.0)
    assert config.p_relay == (3.0, 3.0)


def test_normalized_network_sorts_when_needed():
    net = NormalizedNetwork([2.0, 1.0], [0.1, 0.2])
    assert net.g_tilde == (1.0, 2.0)
    assert net.h_tilde == (0.2, 0.1)
    assert net.permutation == (1, 0)


def test_is_symmetric():
    assert NormalizedNetwork([1.0, 1.0], [2.0, 2.0]).is_symmetric
    assert not NormalizedNetwork([1.0, 2.0], [2.0, 2.0]).is_symmetric
