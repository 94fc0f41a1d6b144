"""Monte Carlo BER/FER campaigns over BPSK/AWGN.

Frame f of Eb/N0 point i draws everything from
``default_rng(SeedSequence([seed, i, f]))``, so error counts do not depend on
how frames are batched or spread over worker processes. Frames are simulated
in fixed-size blocks; blocks are aggregated in order and the stopping rule is
checked after each block.
"""
import csv
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from .arithmetic import arithmetic_for
from .channel import ChannelConfig, modulate_and_transmit
from .decoder import LayeredDecoder
from .encoder import Encoder, all_zero_codeword
from .exceptions import CampaignConfigError

logger = logging.getLogger(__name__)

CSV_HEADER = ('EbN0_dB', 'frames', 'bit_errors', 'frame_errors', 'BER', 'FER', 'iters', 'quant_setting')


def wilson_interval(errors, trials, confidence=0.95):
    if trials == 0:
        return 0.0, 1.0
    z = norm.ppf(0.5 + confidence / 2)
    p = errors / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    spread = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - spread), min(1.0, centre + spread)


@dataclass
class CampaignConfig:
    code: object
    ebn0_list: tuple
    iterations: int = 20
    max_frames: int = 1000
    target_frame_errors: int = 100
    seed: int = 0
    quant: object = 'float'
    all_zero: bool = False
    early_stop: bool = False
    workers: int = 1
    batch_size: int = 32
    max_dense_entries: int = None
    lut_limit: float = 4.0

    def __post_init__(self):
        self.ebn0_list = tuple(float(e) for e in self.ebn0_list)
        if self.iterations < 1:
            raise CampaignConfigError('iterations must be >= 1')
        if self.max_frames < 0:
            raise CampaignConfigError('max_frames must be >= 0')
        if self.target_frame_errors < 1:
            raise CampaignConfigError('target_frame_errors must be >= 1')
        if self.workers < 1 or self.batch_size < 1:
            raise CampaignConfigError('workers and batch_size must be >= 1')
        if float(self.code.rate) <= 0:
            raise CampaignConfigError('code has no information bits (n = m)')
        self.arithmetic = arithmetic_for(self.quant, self.lut_limit)

    @property
    def quant_name(self):
        return self.arithmetic.name


@dataclass
class TrialResult:
    ebn0_db: float
    frames: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    info_bits: int = 0
    iterations: int = 0
    quant_setting: str = 'float'
    seed: int = 0
    elapsed: float = 0.0
    decoder_iterations: int = 0

    @property
    def ber(self):
        return self.bit_errors / (self.frames * self.info_bits) if self.frames else 0.0

    @property
    def fer(self):
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def ber_interval(self):
        return wilson_interval(self.bit_errors, self.frames * self.info_bits)

    @property
    def fer_interval(self):
        return wilson_interval(self.frame_errors, self.frames)

    @property
    def average_iterations(self):
        return self.decoder_iterations / self.frames if self.frames else 0.0

    def csv_row(self):
        return (f'{self.ebn0_db:g}', self.frames, self.bit_errors, self.frame_errors,
                f'{self.ber:.6e}', f'{self.fer:.6e}', self.iterations, self.quant_setting)


@dataclass
class CampaignResult:
    config: CampaignConfig
    points: list = field(default_factory=list)

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(CSV_HEADER)
        for point in self.points:
            writer.writerow(point.csv_row())


class _BlockSimulator:
    """Everything a worker needs to simulate frames of one campaign."""

    def __init__(self, config):
        self.config = config
        code = config.code
        if config.all_zero:
            self.encoder = None
            self.info_positions = np.arange(code.N - code.M)
        else:
            kwargs = {} if config.max_dense_entries is None else {'max_dense_entries': config.max_dense_entries}
            self.encoder = Encoder(code, **kwargs)
            self.info_positions = self.encoder.info_positions
        self.decoder = LayeredDecoder(code, config.arithmetic, early_stop=config.early_stop)

    def run(self, point_index, first_frame, count):
        config, code = self.config, self.config.code
        channel = ChannelConfig(config.ebn0_list[point_index], code.rate)
        info = np.zeros((count, len(self.info_positions)), dtype=np.uint8)
        llr_pvn = np.empty((count, code.N))
        llr_d1h = np.empty((count, code.M, code.num_d1h_per_hcn))
        for i in range(count):
            rng = np.random.default_rng(np.random.SeedSequence([config.seed, point_index, first_frame + i]))
            if self.encoder is None:
                codeword = all_zero_codeword(code)
            else:
                info[i] = rng.integers(0, 2, size=self.encoder.k, dtype=np.uint8)
                codeword = self.encoder.encode(info[i])
            llr_pvn[i], llr_d1h[i] = modulate_and_transmit(codeword, channel, rng)
        result = self.decoder.decode(llr_pvn, llr_d1h, config.iterations)
        errors = (result.hard_bits[:, self.info_positions] != info).sum(axis=1)
        return errors, result.iterations


_worker_simulator = None


def _init_worker(config):
    global _worker_simulator
    _worker_simulator = _BlockSimulator(config)


def _run_block(task):
    return _worker_simulator.run(*task)


def _blocks(max_frames, batch_size):
    start = 0
    while start < max_frames:
        yield start, min(batch_size, max_frames - start)
        start += batch_size


def _simulate_point(config, index, map_blocks):
    point = TrialResult(
        ebn0_db=config.ebn0_list[index], info_bits=config.code.N - config.code.M,
        iterations=config.iterations, quant_setting=config.quant_name, seed=config.seed,
    )
    started = time.perf_counter()
    blocks = list(_blocks(config.max_frames, config.batch_size))
    window = max(1, config.workers)
    for offset in range(0, len(blocks), window):
        tasks = [(index, start, count) for start, count in blocks[offset:offset + window]]
        for errors, used in map_blocks(tasks):
            point.frames += len(errors)
            point.bit_errors += int(errors.sum())
            point.frame_errors += int((errors > 0).sum())
            point.decoder_iterations += int(used.sum())
            if point.frame_errors >= config.target_frame_errors:
                break
        if point.frame_errors >= config.target_frame_errors:
            break
    point.elapsed = time.perf_counter() - started
    logger.info(
        'Eb/N0 %.2f dB: %d frames, %d bit errors, %d frame errors, BER %.3e, FER %.3e',
        point.ebn0_db, point.frames, point.bit_errors, point.frame_errors, point.ber, point.fer,
    )
    return point


def run_campaign(config, progress=None):
    """Simulate every Eb/N0 point; ``progress`` is called with each finished TrialResult."""
    result = CampaignResult(config)
    if config.max_frames == 0:
        result.points = [
            TrialResult(e, info_bits=config.code.N - config.code.M, iterations=config.iterations,
                        quant_setting=config.quant_name, seed=config.seed)
            for e in config.ebn0_list
        ]
        return result
    if config.workers == 1:
        simulator = _BlockSimulator(config)
        for index in range(len(config.ebn0_list)):
            point = _simulate_point(config, index, lambda tasks: (simulator.run(*task) for task in tasks))
            result.points.append(point)
            if progress:
                progress(point)
        return result
    with ProcessPoolExecutor(config.workers, initializer=_init_worker, initargs=(config,)) as executor:
        for index in range(len(config.ebn0_list)):
            point = _simulate_point(config, index, lambda tasks: executor.map(_run_block, tasks))
            result.points.append(point)
            if progress:
                progress(point)
    return result
