"""Signed fixed-point formats and the S1/S2/S3 bit-width settings.

A value in format "1 sign + y int + z frac" is held as a raw integer in units
of 2^-z. Saturation is symmetric: raw values are clipped to
±(2^(y+z) − 1), so negation never overflows. Rounding is half away from zero.
"""
import logging
import re
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .exceptions import QuantizationError

logger = logging.getLogger(__name__)

_FORMAT_RE = re.compile(r'^\s*(\d+)\s*\+\s*(\d+)\s*\+\s*(\d+)\s*$')


@dataclass(frozen=True)
class QFormat:
    int_bits: int
    frac_bits: int
    sign_bits: int = 1

    def __post_init__(self):
        if self.sign_bits != 1:
            raise QuantizationError('fixed-point formats carry exactly one sign bit')
        if self.int_bits < 0 or self.frac_bits < 0:
            raise QuantizationError(f'negative field width in {self}')
        if self.width > 62:
            raise QuantizationError(f'{self} does not fit in 64-bit arithmetic')

    @classmethod
    def parse(cls, text):
        match = _FORMAT_RE.match(text)
        if not match:
            raise QuantizationError(f'cannot parse fixed-point format {text!r}, expected "1+y+z"')
        sign, int_bits, frac_bits = (int(g) for g in match.groups())
        return cls(int_bits=int_bits, frac_bits=frac_bits, sign_bits=sign)

    @property
    def width(self):
        return self.sign_bits + self.int_bits + self.frac_bits

    @property
    def max_raw(self):
        return (1 << (self.int_bits + self.frac_bits)) - 1

    @property
    def lsb(self):
        return 2.0 ** -self.frac_bits

    @property
    def max_value(self):
        return self.max_raw * self.lsb

    def __str__(self):
        return f'{self.sign_bits}+{self.int_bits}+{self.frac_bits}'


def saturate(raw, fmt):
    return np.clip(np.asarray(raw, dtype=np.int64), -fmt.max_raw, fmt.max_raw)


def _round_half_away(x):
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def quantize(x, fmt):
    """Real value(s) to raw integers of ``fmt``."""
    scaled = np.asarray(x, dtype=np.float64) * (1 << fmt.frac_bits)
    scaled = np.clip(scaled, -fmt.max_raw - 1.0, fmt.max_raw + 1.0)
    return saturate(_round_half_away(scaled).astype(np.int64), fmt)


def dequantize(raw, fmt):
    return np.asarray(raw, dtype=np.float64) * fmt.lsb


def requantize(raw, src, dst):
    """Move raw values from ``src`` to ``dst``, rounding if fraction bits are dropped."""
    raw = np.asarray(raw, dtype=np.int64)
    shift = dst.frac_bits - src.frac_bits
    if shift >= 0:
        wide = np.clip(raw, -dst.max_raw, dst.max_raw)
        return saturate(wide << shift, dst)
    drop = -shift
    magnitude = (np.abs(raw) + (1 << (drop - 1))) >> drop
    return saturate(np.sign(raw) * magnitude, dst)


def fixed_add(a, b, fmt):
    return saturate(np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64), fmt)


def fixed_sub(a, b, fmt):
    return saturate(np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64), fmt)


def fixed_shift_right(raw, k, fmt):
    """Divide by 2^k within ``fmt``, rounding half away from zero.

    A plain arithmetic shift floors, so -7 >> 1 would give -4 while 7 >> 1 gives 3.
    """
    return requantize(raw, replace(fmt, frac_bits=fmt.frac_bits + k), fmt)


class MaxStarTable:
    """Correction LUT for ln(1 + e^-x), indexed by |a − b| in raw LSB units.

    Covers x in [0, limit) with one entry per fractional LSB; beyond the table
    the correction is zero.
    """

    def __init__(self, fmt, limit=4.0):
        self.fmt = fmt
        self.limit = limit
        steps = np.arange(int(round(limit * (1 << fmt.frac_bits))))
        self.table = quantize(np.log1p(np.exp(-steps * fmt.lsb)), fmt)

    def __len__(self):
        return len(self.table)

    def lookup(self, diff_raw):
        diff_raw = np.asarray(diff_raw, dtype=np.int64)
        inside = diff_raw < len(self.table)
        return np.where(inside, self.table[np.minimum(diff_raw, len(self.table) - 1)], 0)

    def describe(self):
        return {
            'format': str(self.fmt),
            'entries': len(self.table),
            'range': [0.0, self.limit],
            'step': self.fmt.lsb,
            'max_correction': float(dequantize(self.table.max(initial=0), self.fmt)),
        }


def fixed_max_star(a, b, fmt, table):
    """max(a, b) + LUT[|a − b|], saturated; ``a`` and ``b`` share ``fmt``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return saturate(np.maximum(a, b) + table.lookup(np.abs(a - b)), fmt)


# -- bit-width settings -----------------------------------------------------------

CHANNEL_CATEGORIES = ('channel', 'd1h_channel')
KERNEL_CATEGORIES = ('fht_output', 'dfht_input', 'dfht_stage')


@dataclass(frozen=True)
class QuantSetting:
    """Per-signal-category formats used by the fixed-point decoder."""
    name: str
    channel: QFormat
    app: QFormat
    extrinsic: QFormat
    d1h_channel: QFormat
    fht_output: QFormat
    dfht_input: QFormat
    dfht_stage: QFormat
    dfht_output: QFormat

    @classmethod
    def categories(cls):
        return tuple(f.name for f in fields(cls) if f.name != 'name')

    def formats(self):
        return {category: getattr(self, category) for category in self.categories()}

    @property
    def w_ch_pvn(self):
        return self.channel.width

    @property
    def w_app_pvn(self):
        return self.app.width

    @property
    def w_ex_h(self):
        return self.extrinsic.width

    def w_ch_d1h(self, r):
        return self.w_ch_pvn * ((1 << r) - r - 2)

    def widen_integers(self, bits=1, name=None):
        """Add ``bits`` integer bits to every category except channel observations."""
        changes = {
            category: replace(fmt, int_bits=fmt.int_bits + bits)
            for category, fmt in self.formats().items()
            if category not in CHANNEL_CATEGORIES
        }
        return replace(self, name=name or self.name, **changes)

    def widen_kernel_fractions(self, bits=1, name=None):
        """Add fractional bits to FHT output, DFHT input and the DFHT stages."""
        changes = {
            category: replace(getattr(self, category), frac_bits=getattr(self, category).frac_bits + bits)
            for category in KERNEL_CATEGORIES
        }
        return replace(self, name=name or self.name, **changes)


def uniform_setting(fmt, name=None):
    if isinstance(fmt, str):
        fmt = QFormat.parse(fmt)
    return QuantSetting(name or f'uniform {fmt}', **{c: fmt for c in QuantSetting.categories()})


# S1 is a reconstruction: the channel observation formats and the deltas to
# S2/S3 are documented; the absolute widths of the other categories are not.
S1 = QuantSetting(
    name='S1',
    channel=QFormat(4, 2),
    app=QFormat(6, 2),
    extrinsic=QFormat(6, 2),
    d1h_channel=QFormat(4, 2),
    fht_output=QFormat(6, 2),
    dfht_input=QFormat(6, 2),
    dfht_stage=QFormat(6, 2),
    dfht_output=QFormat(6, 2),
)
S2 = S1.widen_integers(1, name='S2')
S3 = S2.widen_kernel_fractions(1, name='S3')

PROFILES = {setting.name: setting for setting in (S1, S2, S3)}


def load_quant_profile(path, base=S1):
    """Read "category 1+y+z" lines; unspecified categories keep ``base`` formats."""
    path = Path(path)
    try:
        text = path.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise QuantizationError(f'{path.name}: cannot read quantization profile ({type(exc).__name__})') from exc
    changes = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        parts = re.split(r'\s*[=:]\s*|\s+', line, maxsplit=1)
        if len(parts) != 2:
            raise QuantizationError(f'{path.name}:{number}: expected "category 1+y+z"')
        category, fmt_text = parts
        if category not in QuantSetting.categories():
            raise QuantizationError(f'{path.name}:{number}: unknown signal category')
        try:
            changes[category] = QFormat.parse(fmt_text)
        except QuantizationError:
            raise QuantizationError(f'{path.name}:{number}: expected a format "1+y+z"') from None
    logger.debug('quantization profile %s overrides %s', path, sorted(changes))
    return replace(base, name=path.stem, **changes)


def dump_quant_profile(setting):
    lines = [f'# bit-width setting {setting.name}']
    lines += [f'{category} {fmt}' for category, fmt in setting.formats().items()]
    return '\n'.join(lines) + '\n'


def get_setting(name):
    """Resolve 'S1'/'S2'/'S3' or a profile-file path."""
    if isinstance(name, QuantSetting):
        return name
    if name in PROFILES:
        return PROFILES[name]
    path = Path(name)
    if path.is_file():
        return load_quant_profile(path)
    raise QuantizationError(f'unknown quantization setting {name!r}')
