"""Arithmetic back-ends shared by the Hadamard kernel and the layered decoder.

``FloatArithmetic`` works on float64 LLRs. ``FixedPointArithmetic`` works on
raw int64 registers and applies the format of every signal category of a
``QuantSetting`` at the same points the hardware does: after each butterfly
stage, at the FHT/DFHT hand-over, and on every value written back to memory.
Both expose the same methods so the decoder is written once.
"""
from dataclasses import replace

import numpy as np

from .quantization import (
    MaxStarTable, QuantSetting, dequantize, fixed_max_star, fixed_shift_right, fixed_sub, get_setting, quantize,
    requantize, saturate,
)


def max_star(a, b):
    """Jacobian logarithm ln(e^a + e^b) = max(a, b) + ln(1 + e^-|a-b|)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.maximum(a, b) + np.log1p(np.exp(-np.abs(a - b)))


class FloatArithmetic:
    is_fixed_point = False
    dtype = np.float64

    def __init__(self, exact=True):
        self.exact = exact
        self.name = 'float' if exact else 'float-maxlog'

    # memory-side values
    def load_channel(self, llr):
        return np.asarray(llr, dtype=np.float64)

    def load_d1h(self, llr):
        return np.asarray(llr, dtype=np.float64)

    def init_app(self, channel):
        return np.array(channel, dtype=np.float64)

    def zeros_extrinsic(self, shape):
        return np.zeros(shape, dtype=np.float64)

    def extrinsic_pvn(self, app, ex):
        return app - ex

    def update_extrinsic(self, app_h, ex_pvn):
        return app_h - ex_pvn

    def update_app(self, app_h):
        return app_h

    # kernel-side values
    def fht_input(self, apriori, channel):
        return np.asarray(apriori, dtype=np.float64) + np.asarray(channel, dtype=np.float64)

    def butterfly(self, a, b):
        return a + b, a - b

    def halve(self, two_log_gamma):
        return two_log_gamma / 2.0

    def negate(self, x):
        return -x

    def dfht_entry(self, x):
        return x

    def max_star(self, a, b):
        if self.exact:
            return max_star(a, b)
        return np.maximum(a, b)

    def app_difference(self, plus, minus):
        return plus - minus

    def to_real(self, values, category=None):
        return np.asarray(values, dtype=np.float64)

    def describe(self):
        return {'arithmetic': self.name}


class FixedPointArithmetic:
    is_fixed_point = True
    dtype = np.int64

    def __init__(self, setting, lut_limit=4.0):
        self.setting = setting
        self.name = setting.name
        self.lut = MaxStarTable(setting.dfht_stage, limit=lut_limit)

    def load_channel(self, llr):
        return quantize(llr, self.setting.channel)

    def load_d1h(self, llr):
        return quantize(llr, self.setting.d1h_channel)

    def init_app(self, channel):
        return requantize(channel, self.setting.channel, self.setting.app)

    def zeros_extrinsic(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def extrinsic_pvn(self, app, ex):
        fmt = self.setting.app
        return fixed_sub(app, requantize(ex, self.setting.extrinsic, fmt), fmt)

    def update_extrinsic(self, app_h, ex_pvn):
        fmt = self.setting.extrinsic
        return fixed_sub(
            requantize(app_h, self.setting.dfht_output, fmt),
            requantize(ex_pvn, self.setting.app, fmt),
            fmt,
        )

    def update_app(self, app_h):
        return requantize(app_h, self.setting.dfht_output, self.setting.app)

    def fht_input(self, apriori, channel):
        fmt = self.setting.fht_output
        return saturate(
            requantize(apriori, self.setting.app, fmt) + requantize(channel, self.setting.d1h_channel, fmt),
            fmt,
        )

    def butterfly(self, a, b):
        fmt = self.setting.fht_output
        return saturate(a + b, fmt), saturate(a - b, fmt)

    def halve(self, two_log_gamma):
        src, dst = self.setting.fht_output, self.setting.dfht_input
        if src == dst:
            return fixed_shift_right(two_log_gamma, 1, src)
        # 2 ln γ counted in 2^-z is ln γ counted in 2^-(z+1); round that into the DFHT input
        return requantize(two_log_gamma, replace(src, frac_bits=src.frac_bits + 1), dst)

    def negate(self, x):
        return -x

    def dfht_entry(self, x):
        return requantize(x, self.setting.dfht_input, self.setting.dfht_stage)

    def max_star(self, a, b):
        return fixed_max_star(a, b, self.setting.dfht_stage, self.lut)

    def app_difference(self, plus, minus):
        stage = self.setting.dfht_stage
        return requantize(saturate(plus - minus, stage), stage, self.setting.dfht_output)

    def to_real(self, values, category='app'):
        return dequantize(values, getattr(self.setting, category))

    def describe(self):
        return {
            'arithmetic': self.name,
            'formats': {k: str(v) for k, v in self.setting.formats().items()},
            'max_star_lut': self.lut.describe(),
        }


FLOAT = FloatArithmetic()


def arithmetic_for(quant, lut_limit=4.0):
    """'float', 'float-maxlog', a QuantSetting, or a setting name/profile path."""
    if quant is None or quant == 'float':
        return FLOAT
    if quant == 'float-maxlog':
        return FloatArithmetic(exact=False)
    if isinstance(quant, (FloatArithmetic, FixedPointArithmetic)):
        return quant
    setting = quant if isinstance(quant, QuantSetting) else get_setting(quant)
    return FixedPointArithmetic(setting, lut_limit=lut_limit)
