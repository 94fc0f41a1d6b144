"""BPSK over AWGN with unit symbol energy."""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import CampaignConfigError


@dataclass(frozen=True)
class ChannelConfig:
    ebn0_db: float
    rate: Fraction

    def __post_init__(self):
        if not 0 < float(self.rate) <= 1:
            raise CampaignConfigError(f'code rate {self.rate} must lie in (0, 1]')

    @property
    def sigma2(self):
        return 1.0 / (2.0 * float(self.rate) * 10.0 ** (self.ebn0_db / 10.0))

    @property
    def sigma(self):
        return np.sqrt(self.sigma2)


def bpsk(bits):
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def channel_llr(received, sigma2):
    return 2.0 * np.asarray(received, dtype=np.float64) / sigma2


def modulate_and_transmit(codeword, channel, rng):
    """Received (P-VN LLRs, D1H LLRs) for one codeword or a batch of them.

    Noise is drawn with ``rng.standard_normal`` (numpy's ziggurat sampler),
    P-VN stream first, then the D1H stream.
    """
    x_pvn = bpsk(codeword.pvn)
    x_d1h = bpsk(codeword.d1h)
    y_pvn = x_pvn + channel.sigma * rng.standard_normal(x_pvn.shape)
    y_d1h = x_d1h + channel.sigma * rng.standard_normal(x_d1h.shape)
    return channel_llr(y_pvn, channel.sigma2), channel_llr(y_d1h, channel.sigma2)
