"""Layered decoder for PLDPC-Hadamard codes.

One layer is the z2 H-CNs of a stage-1 block row. Their P-VN neighbour sets
are disjoint, so a whole layer is processed as one vectorised step; results
match processing the H-CNs one at a time in any order.

Per H-CN α and each β in 𝓟(α):

    L_ex^PVN(α, β) = L_app^PVN(β) − L_ex^H(α, β)
    L_app^H(α, ·)  = symbol-MAP decode of (L_ex^PVN(α, ·), L_ch^D1H(α))
    L_ex^H(α, β)   = L_app^H(α, β) − L_ex^PVN(α, β)
    L_app^PVN(β)   = L_app^H(α, β)

Every array carries a leading batch axis so several frames decode together.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import FLOAT
from .exceptions import DecoderError
from .hadamard import HadamardContext, frame_from_llrs, symbol_map_decode

logger = logging.getLogger(__name__)


@dataclass
class DecoderState:
    app: np.ndarray
    extrinsic: np.ndarray
    channel_pvn: np.ndarray
    channel_d1h: np.ndarray

    def copy(self):
        return DecoderState(self.app.copy(), self.extrinsic.copy(),
                            self.channel_pvn.copy(), self.channel_d1h.copy())

    def equals(self, other):
        return all(
            np.array_equal(getattr(self, name), getattr(other, name))
            for name in ('app', 'extrinsic', 'channel_pvn', 'channel_d1h')
        )


@dataclass
class DecodeResult:
    hard_bits: np.ndarray
    iterations: np.ndarray
    app: np.ndarray
    unsatisfied: list = field(default_factory=list)

    @property
    def iterations_run(self):
        return int(np.max(self.iterations, initial=0))


def hard_decision(app):
    """Bit 1 iff the LLR is negative; a zero LLR decodes to 0."""
    return (np.asarray(app) < 0).astype(np.uint8)


class LayeredDecoder:

    def __init__(self, code, arithmetic=FLOAT, early_stop=False, diagnostics=False):
        self.code = code
        self.arithmetic = arithmetic
        self.early_stop = early_stop
        self.diagnostics = diagnostics
        self.ctx = HadamardContext(code.r)
        self._neighbors = code.pvn_neighbors
        self._check_matrix = code.parity_check_matrix() if (early_stop or diagnostics) else None

    # -- Step 1 -----------------------------------------------------------------
    def init(self, channel_pvn, channel_d1h):
        code = self.code
        channel_pvn = np.asarray(channel_pvn)
        channel_d1h = np.asarray(channel_d1h)
        if channel_pvn.ndim == 1:
            channel_pvn = channel_pvn[None]
        if channel_pvn.ndim != 2 or channel_pvn.shape[1] != code.N:
            raise DecoderError(f'P-VN channel LLRs must have length N={code.N}, got shape {channel_pvn.shape}')
        batch = channel_pvn.shape[0]
        try:
            channel_d1h = channel_d1h.reshape(batch, code.M, code.num_d1h_per_hcn)
        except ValueError:
            raise DecoderError(
                f'D1H channel LLRs must hold M·(2^r − r − 2) = {code.M * code.num_d1h_per_hcn} values per frame'
            ) from None
        arith = self.arithmetic
        ch_pvn = arith.load_channel(channel_pvn)
        return DecoderState(
            app=arith.init_app(ch_pvn),
            extrinsic=arith.zeros_extrinsic((batch, code.M, code.d)),
            channel_pvn=ch_pvn,
            channel_d1h=arith.load_d1h(channel_d1h),
        )

    # -- Step 2 -----------------------------------------------------------------
    def _process(self, state, alphas):
        arith = self.arithmetic
        neighbors = self._neighbors[alphas]
        ex_pvn = arith.extrinsic_pvn(state.app[:, neighbors], state.extrinsic[:, alphas])
        frame = frame_from_llrs(self.ctx, ex_pvn, state.channel_d1h[:, alphas], dtype=arith.dtype)
        app_h = symbol_map_decode(self.ctx, frame, arith)
        state.extrinsic[:, alphas] = arith.update_extrinsic(app_h, ex_pvn)
        state.app[:, neighbors] = arith.update_app(app_h)
        return state

    def process_hcn(self, state, alpha):
        if not 0 <= alpha < self.code.M:
            raise DecoderError(f'H-CN {alpha} out of range [0, {self.code.M})')
        return self._process(state, np.array([alpha]))

    def process_layer(self, state, k, order=None):
        """All z2 H-CNs of layer k; ``order`` forces one-by-one processing."""
        z2 = self.code.z2
        if not 0 <= k < self.code.num_layers:
            raise DecoderError(f'layer {k} out of range [0, {self.code.num_layers})')
        if order is None:
            return self._process(state, np.arange(k * z2, (k + 1) * z2))
        for alpha in order:
            self.process_hcn(state, int(alpha))
        return state

    def iterate(self, state):
        for k in range(self.code.num_layers):
            self._process(state, np.arange(k * self.code.z2, (k + 1) * self.code.z2))
        return state

    # -- Step 3 -----------------------------------------------------------------
    def syndrome_weight(self, hard_bits):
        if self._check_matrix is None:
            self._check_matrix = self.code.parity_check_matrix()
        syndrome = (self._check_matrix @ hard_bits.T.astype(np.int64)) % 2
        return syndrome.sum(axis=0)

    def decode(self, channel_pvn, channel_d1h, iterations):
        if iterations < 1:
            raise DecoderError(f'iteration count must be >= 1, got {iterations}')
        single = np.ndim(channel_pvn) == 1
        state = self.init(channel_pvn, channel_d1h)
        batch = state.app.shape[0]
        hard = np.zeros((batch, self.code.N), dtype=np.uint8)
        app = np.zeros((batch, self.code.N), dtype=np.float64)
        done = np.zeros(batch, dtype=bool)
        used = np.full(batch, iterations, dtype=np.int64)
        unsatisfied = []
        for it in range(1, iterations + 1):
            self.iterate(state)
            if not (self.early_stop or self.diagnostics):
                continue
            current = hard_decision(state.app)
            weight = self.syndrome_weight(current)
            if self.diagnostics:
                unsatisfied.append(weight)
            if self.early_stop:
                newly = (weight == 0) & ~done
                hard[newly] = current[newly]
                app[newly] = self.arithmetic.to_real(state.app[newly])
                used[newly] = it
                done |= newly
                if done.all():
                    logger.debug('all %d frames converged after %d iterations', batch, it)
                    break
        pending = ~done
        hard[pending] = hard_decision(state.app[pending])
        app[pending] = self.arithmetic.to_real(state.app[pending])
        result = DecodeResult(hard, used, app, unsatisfied)
        if single:
            result.hard_bits = result.hard_bits[0]
            result.app = result.app[0]
            result.unsatisfied = [int(w[0]) for w in unsatisfied]
        return result


def decode(code, channel_pvn, channel_d1h, iterations, arithmetic=FLOAT, early_stop=False):
    return LayeredDecoder(code, arithmetic, early_stop=early_stop).decode(channel_pvn, channel_d1h, iterations)
