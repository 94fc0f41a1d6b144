"""Systematic encoder: GF(2) elimination on H, then Hadamard parities per H-CN."""
import logging
from dataclasses import dataclass

import galois
import numpy as np

from .exceptions import EncoderSetupError
from .hadamard import HadamardContext, hadamard_encode

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)

# dense M × N expansion allowed during setup
DEFAULT_MAX_DENSE_ENTRIES = 50_000_000


@dataclass
class Codeword:
    """P-VN bits (…, N) and D1H parity bits (…, M, 2^r − r − 2)."""
    pvn: np.ndarray
    d1h: np.ndarray

    def flat(self):
        lead = self.pvn.shape[:-1]
        return np.concatenate([self.pvn, self.d1h.reshape(lead + (-1,))], axis=-1)


class Encoder:
    """Reduced row-echelon form of H, computed once per code.

    Information bits occupy the first N − M free (non-pivot) columns in
    ascending order. If H is rank deficient the remaining free columns are
    frozen to 0, so the information length stays N − M.
    """

    def __init__(self, code, max_dense_entries=DEFAULT_MAX_DENSE_ENTRIES):
        self.code = code
        self.ctx = HadamardContext(code.r)
        if code.M * code.N > max_dense_entries:
            raise EncoderSetupError(
                f'dense parity-check matrix {code.M}×{code.N} exceeds the setup limit of '
                f'{max_dense_entries} entries; use the all-zero codeword mode'
            )
        reduced = GF2(code.parity_check_matrix().toarray()).row_reduce()
        reduced = np.asarray(reduced, dtype=np.uint8)
        nonzero = reduced.any(axis=1)
        self.rank = int(nonzero.sum())
        reduced = reduced[:self.rank]
        self.pivots = np.argmax(reduced, axis=1)
        free = np.setdiff1d(np.arange(code.N), self.pivots)
        self.rank_deficiency = code.M - self.rank
        if self.rank_deficiency:
            logger.warning(
                'parity-check matrix has rank %d < M=%d; freezing %d free columns to zero',
                self.rank, code.M, self.rank_deficiency,
            )
        self.info_positions = free[:code.N - code.M]
        self.frozen_positions = free[code.N - code.M:]
        # pivot bit i = Σ_f reduced[i, f] · x_f over the information columns
        self._generator = reduced[:, self.info_positions].T.astype(np.int64)

    @property
    def k(self):
        return len(self.info_positions)

    def encode_ldpc(self, info_bits):
        info = np.asarray(info_bits, dtype=np.int64)
        if info.shape[-1] != self.k:
            raise EncoderSetupError(f'expected {self.k} information bits, got {info.shape[-1]}')
        word = np.zeros(info.shape[:-1] + (self.code.N,), dtype=np.uint8)
        word[..., self.info_positions] = info
        word[..., self.pivots] = (info @ self._generator) % 2
        return word

    def encode(self, info_bits):
        pvn = self.encode_ldpc(info_bits)
        spc = pvn[..., self.code.pvn_neighbors]
        return Codeword(pvn=pvn, d1h=hadamard_encode(self.ctx, spc).astype(np.uint8))

    def extract_info(self, pvn_bits):
        return np.asarray(pvn_bits)[..., self.info_positions]


def all_zero_codeword(code, batch=()):
    """The all-zero codeword, valid for any linear code."""
    return Codeword(
        pvn=np.zeros(batch + (code.N,), dtype=np.uint8),
        d1h=np.zeros(batch + (code.M, code.num_d1h_per_hcn), dtype=np.uint8),
    )


def encode_frame(code, info_bits, encoder=None):
    return (encoder or Encoder(code)).encode(info_bits)
