"""Order-r Hadamard codebook: SPC structure, encoding and symbol-MAP decoding.

Codewords are the columns ±h_j of ±H_q (q = 2^r), bit-mapped +1 → 0 and
-1 → 1, so bit i of codeword (s, j) is popcount(i & j) mod 2 XOR s. For even r
the d = r + 2 bits at ``spc_positions`` form a single-parity-check codeword.

All transforms operate on the last axis, so batches of frames of shape
(..., q) go through in one call.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .arithmetic import FLOAT
from .exceptions import HadamardError


def _parity(values, bits):
    values = np.asarray(values, dtype=np.int64)
    out = np.zeros_like(values)
    for t in range(bits):
        out ^= (values >> t) & 1
    return out


def spc_positions(r):
    """{0} ∪ {2^t : 0 <= t < r} ∪ {2^r − 1}, ascending."""
    if r < 2 or r % 2:
        raise HadamardError(f'Hadamard order r={r} must be even and >= 2')
    return tuple(sorted({0, (1 << r) - 1} | {1 << t for t in range(r)}))


def hadamard_matrix(r):
    """Sylvester ±1 matrix of size 2^r (oracle only; decoding uses butterflies)."""
    if r < 0:
        raise HadamardError(f'Hadamard order r={r} must be non-negative')
    out = np.ones((1, 1), dtype=np.int64)
    for _ in range(r):
        out = np.block([[out, out], [out, -out]])
    return out


@dataclass(frozen=True)
class HadamardContext:
    r: int

    def __post_init__(self):
        spc_positions(self.r)

    @property
    def q(self):
        return 1 << self.r

    @property
    def d(self):
        return self.r + 2

    @cached_property
    def spc_positions(self):
        return spc_positions(self.r)

    @cached_property
    def parity_positions(self):
        spc = set(self.spc_positions)
        return tuple(i for i in range(self.q) if i not in spc)

    @cached_property
    def _spc_index(self):
        return np.array(self.spc_positions, dtype=np.int64)

    @cached_property
    def _parity_index(self):
        return np.array(self.parity_positions, dtype=np.int64)

    @cached_property
    def bit_table(self):
        """(q, q) table of popcount(i & j) mod 2, row i = position, column j."""
        i = np.arange(self.q)[:, None]
        j = np.arange(self.q)[None, :]
        table = _parity(i & j, self.r).astype(np.uint8)
        table.setflags(write=False)
        return table


@dataclass(frozen=True)
class HadamardLLRFrame:
    """Channel LLRs (non-SPC support) and a-priori LLRs (SPC support), length q."""
    ctx: HadamardContext
    channel: np.ndarray
    apriori: np.ndarray

    def __post_init__(self):
        q = self.ctx.q
        if np.shape(self.channel)[-1] != q or np.shape(self.apriori)[-1] != q:
            raise HadamardError(f'frame vectors must have length {q}')
        if np.any(np.asarray(self.channel)[..., self.ctx._spc_index] != 0):
            raise HadamardError('channel LLRs must be zero at SPC positions')
        if np.any(np.asarray(self.apriori)[..., self.ctx._parity_index] != 0):
            raise HadamardError('a-priori LLRs must be zero at parity positions')


def frame_from_llrs(ctx, apriori, channel, dtype=np.float64):
    """Place d a-priori LLRs at the SPC positions and q − d channel LLRs elsewhere."""
    apriori = np.asarray(apriori)
    channel = np.asarray(channel)
    if apriori.shape[-1] != ctx.d or channel.shape[-1] != ctx.q - ctx.d:
        raise HadamardError(f'expected {ctx.d} a-priori and {ctx.q - ctx.d} channel values')
    shape = np.broadcast_shapes(apriori.shape[:-1], channel.shape[:-1]) + (ctx.q,)
    apr = np.zeros(shape, dtype=dtype)
    ch = np.zeros(shape, dtype=dtype)
    apr[..., ctx._spc_index] = apriori
    ch[..., ctx._parity_index] = channel
    return HadamardLLRFrame(ctx, ch, apr)


def hadamard_codeword(ctx, sign, j):
    """Bits of codeword +h_j (sign 0) or −h_j (sign 1)."""
    return ctx.bit_table[:, j] ^ np.uint8(sign)


def codebook(ctx):
    """All 2q codewords as a (2q, q) bit array; rows 0..q-1 are +h_j."""
    plus = ctx.bit_table.T
    return np.concatenate([plus, plus ^ 1]).astype(np.uint8)


def hadamard_encode(ctx, info_bits):
    """Parity bits (non-SPC positions, ascending) for SPC bits of even parity.

    ``info_bits`` has shape (..., d) and holds the bits at ``spc_positions``.
    """
    info = np.asarray(info_bits, dtype=np.int64)
    if info.shape[-1] != ctx.d:
        raise HadamardError(f'expected {ctx.d} SPC bits, got {info.shape[-1]}')
    if ((info != 0) & (info != 1)).any():
        raise HadamardError('SPC bits must be 0 or 1')
    if (info.sum(axis=-1) % 2).any():
        raise HadamardError('SPC bits have odd parity; no Hadamard codeword exists')
    sign = info[..., 0]
    weights = 1 << np.arange(ctx.r)
    j = ((info[..., 1:ctx.r + 1] ^ sign[..., None]) * weights).sum(axis=-1)
    bits = ctx.bit_table[:, j].T ^ sign[..., None].astype(np.uint8)
    return bits[..., ctx._parity_index].reshape(info.shape[:-1] + (ctx.q - ctx.d,))


def fht(ctx, values, arithmetic=FLOAT):
    """r butterfly stages: output j is ⟨+h_j, values⟩ = 2 ln γ(+h_j)."""
    x = np.asarray(values)
    if x.shape[-1] != ctx.q:
        raise HadamardError(f'FHT input length {x.shape[-1]} != {ctx.q}')
    lead = x.shape[:-1]
    for t in range(ctx.r):
        half = 1 << t
        blocks = x.reshape(lead + (ctx.q // (2 * half), 2, half))
        top, bottom = arithmetic.butterfly(blocks[..., 0, :], blocks[..., 1, :])
        x = np.stack([top, bottom], axis=-2).reshape(lead + (ctx.q,))
    return x


def dfht(ctx, log_gamma_plus, log_gamma_minus, arithmetic=FLOAT):
    """Dual butterfly of max* pairs, reduced to the SPC positions.

    Returns (ln Σ γ over codewords with +1 at i, ln Σ γ over codewords with
    −1 at i) for every SPC position i, each of shape (..., d).
    """
    plus = np.asarray(log_gamma_plus)
    minus = np.asarray(log_gamma_minus)
    if plus.shape[-1] != ctx.q or minus.shape != plus.shape:
        raise HadamardError(f'DFHT expects two inputs of length {ctx.q}')
    lead = plus.shape[:-1]
    for t in range(ctx.r):
        half = 1 << t
        shape = lead + (ctx.q // (2 * half), 2, half)
        p, n = plus.reshape(shape), minus.reshape(shape)
        xp, yp, xn, yn = p[..., 0, :], p[..., 1, :], n[..., 0, :], n[..., 1, :]
        plus = np.stack([arithmetic.max_star(xp, yp), arithmetic.max_star(xp, yn)], axis=-2)
        minus = np.stack([arithmetic.max_star(xn, yn), arithmetic.max_star(xn, yp)], axis=-2)
        plus = plus.reshape(lead + (ctx.q,))
        minus = minus.reshape(lead + (ctx.q,))
    return plus[..., ctx._spc_index], minus[..., ctx._spc_index]


def symbol_map_decode(ctx, frame, arithmetic=FLOAT):
    """APP LLRs at the r + 2 SPC positions via FHT → DFHT → subtract."""
    two_log_gamma = fht(ctx, arithmetic.fht_input(frame.apriori, frame.channel), arithmetic)
    log_gamma = arithmetic.halve(two_log_gamma)
    plus, minus = dfht(
        ctx,
        arithmetic.dfht_entry(log_gamma),
        arithmetic.dfht_entry(arithmetic.negate(log_gamma)),
        arithmetic,
    )
    return arithmetic.app_difference(plus, minus)


# One frame spends r FHT stages, r DFHT stages and one output cycle in a sub-decoder.
def pipeline_depth(r):
    return 2 * r + 1
