"""Brute-force reference computations and the self-test suite built on them."""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .construction import cpm, default_code
from .hadamard import (
    HadamardContext, codebook, fht, frame_from_llrs, hadamard_matrix, spc_positions, symbol_map_decode,
)
from .timing import (
    ArchConfig, CodeDimensions, codeword_latency_and_throughput, d1h_address, hex_address,
    layer_latency, pvn_address, shifter_permutation, simulate_schedule,
)

logger = logging.getLogger(__name__)


def codeword_log_metrics(ctx, apriori, channel):
    """ln γ(c) = ½ Σ_i (1 − 2 c_i)·L(i) for every codeword c, shape (..., 2q)."""
    signs = 1.0 - 2.0 * codebook(ctx).astype(np.float64)
    llr = np.asarray(apriori, dtype=np.float64) + np.asarray(channel, dtype=np.float64)
    return 0.5 * llr @ signs.T


def brute_force_app(ctx, frame):
    """APP LLRs at the SPC positions by log-sum-exp over the whole codebook."""
    metrics = codeword_log_metrics(ctx, frame.apriori, frame.channel)
    bits = codebook(ctx)[:, list(ctx.spc_positions)]
    out = np.empty(metrics.shape[:-1] + (ctx.d,))
    for i in range(ctx.d):
        zero = bits[:, i] == 0
        out[..., i] = logsumexp(metrics[..., zero], axis=-1) - logsumexp(metrics[..., ~zero], axis=-1)
    return out


def dense_fht(ctx, values):
    return np.asarray(values) @ hadamard_matrix(ctx.r)


def random_frames(ctx, count, rng, scale=4.0):
    apriori = rng.normal(0.0, scale, size=(count, ctx.d))
    channel = rng.normal(0.0, scale, size=(count, ctx.q - ctx.d))
    return frame_from_llrs(ctx, apriori, channel)


def cpm_permutation(p, z2):
    """Column of the one in each row of the dense CPM."""
    return np.argmax(cpm(p, z2), axis=1)


def is_bijection(values, size):
    values = np.asarray(values).ravel()
    return values.size == size and np.array_equal(np.sort(values), np.arange(size))


# -- self-test suite --------------------------------------------------------------

@dataclass(frozen=True)
class OracleOutcome:
    name: str
    passed: bool
    detail: str


def _spc_property():
    for r in (2, 4, 6):
        ctx = HadamardContext(r)
        if (codebook(ctx)[:, list(spc_positions(r))].sum(axis=1) % 2).any():
            return False, f'SPC violated for r={r}'
    return True, 'all columns of ±H_q, r in {2, 4, 6}'


def _fht_exact(rng):
    for r in (2, 4, 6):
        ctx = HadamardContext(r)
        x = rng.integers(-50, 50, size=(16, ctx.q)).astype(np.float64)
        if not np.array_equal(fht(ctx, x), dense_fht(ctx, x)):
            return False, f'FHT differs from dense products at r={r}'
    return True, 'exact against dense inner products'


def _kernel_oracle(rng, frames):
    worst = 0.0
    for r in (2, 4):
        ctx = HadamardContext(r)
        frame = random_frames(ctx, frames, rng)
        worst = max(worst, float(np.abs(symbol_map_decode(ctx, frame) - brute_force_app(ctx, frame)).max()))
    return worst <= 1e-9, f'max abs error {worst:.3e} over {frames} frames per r'


def _address_maps():
    z2, N_h = 16, 4
    G = z2 // N_h
    n, z1, m, d = 3, 2, 2, 6
    pvn = [pvn_address(g, l, G, z2) for g in range(n * z1 * G) for l in range(N_h)]
    edges = [hex_address(q, l, d, N_h) for q in range(d * G) for l in range(N_h)]
    hcns = [d1h_address(w, l, N_h) for w in range(m * z1 * G) for l in range(N_h)]
    ok = (
        is_bijection(pvn, n * z1 * z2)
        and len(set(edges)) == z2 * d
        and is_bijection(hcns, m * z1 * z2)
    )
    return ok, 'PVN, H-EX and D1H maps'


def _shifter():
    for z2, N_h in ((16, 4), (64, 8), (64, 16)):
        for p in range(z2):
            if not np.array_equal(shifter_permutation(p, z2, N_h), cpm_permutation(p, z2)):
                return False, f'p={p} fails at z2={z2}, N_h={N_h}'
    return True, 'every CPM offset at z2 in {16, 64}'


def _schedules():
    for r in (2, 4, 6, 8):
        for G in (1, 2, 4, 8, 16):
            report = simulate_schedule(CodeDimensions(2, 10, 1, 4 * G, r), ArchConfig(4 * G, 4))
            if report.conflicts or report.total_cycles != layer_latency(r, G):
                return False, f'r={r}, G={G}: {report.total_cycles} cycles, {len(report.conflicts)} conflicts'
    return True, 'r in {2, 4, 6, 8} × G in {1, 2, 4, 8, 16}'


def _reference_timing():
    dims = CodeDimensions(7, 11, 32, 512, 4)
    expected = {(128, 20): (0.896, 1.48), (64, 20): (1.72, 0.77), (128, 150): (6.72, 0.20), (64, 150): (12.92, 0.10)}
    for (N_h, iterations), (ms, gbps) in expected.items():
        latency, throughput = codeword_latency_and_throughput(dims, ArchConfig(512, N_h, iterations=iterations))
        if round(latency * 1e3, 2) != round(ms, 2) or round(throughput / 1e9, 2) != gbps:
            return False, f'N_h={N_h}, I={iterations}: {latency * 1e3:.3f} ms, {throughput / 1e9:.3f} Gbps'
    return True, 'four latency/throughput rows'


def _construction():
    code = default_code(4, 16, seed=0)
    dense = code.parity_check_matrix().toarray()
    ok = (dense.sum(axis=1) == code.d).all() and str(round(float(code.rate), 4)) == '0.0494'
    return bool(ok), f'M={code.M}, N={code.N}, rate {float(code.rate):.4f}'


def run_selftest(seed=0, frames=1000):
    rng = np.random.default_rng(seed)
    checks = (
        ('construction', _construction),
        ('spc-property', _spc_property),
        ('fht-dense', lambda: _fht_exact(rng)),
        ('symbol-map-oracle', lambda: _kernel_oracle(rng, frames)),
        ('address-maps', _address_maps),
        ('cyclic-shifter', _shifter),
        ('schedule-closed-form', _schedules),
        ('reference-timing', _reference_timing),
    )
    outcomes = []
    for name, check in checks:
        passed, detail = check()
        logger.debug('selftest %s: %s (%s)', name, passed, detail)
        outcomes.append(OracleOutcome(name, bool(passed), detail))
    return outcomes
