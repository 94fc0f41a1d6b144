"""Memory organisation and pipeline timing of the layered decoder architecture.

N_h Hadamard sub-decoders work on one group of N_h H-CNs at a time, so a
layer of z2 H-CNs takes G = z2 / N_h groups. Each of the four RAM banks holds
N_h dual-port RAMs; in a given cycle every RAM of a bank is accessed at the
same depth address, so the schedule is tracked per bank.

Group c of a layer holds the H-CNs {l·G + c : 0 <= l < N_h}, RAM l serving
lane l. For a CPM with offset p the group reads depth address (c + p) mod G
of the block column and the cyclic shifter rotates the N_h-lane word left by
``shift_amount``.
"""
import csv
import enum
import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ArchitectureError, ScheduleConflictError
from .hadamard import pipeline_depth

logger = logging.getLogger(__name__)

PORTS_PER_RAM = 2


class Case(enum.Enum):
    I = 'I'
    II = 'II'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CodeDimensions:
    """Dimensions of a code when only the timing model needs them."""
    m: int
    n: int
    z1: int
    z2: int
    r: int

    @property
    def d(self):
        return self.r + 2

    @property
    def num_layers(self):
        return self.m * self.z1

    @property
    def codeword_length(self):
        return self.n * self.z1 * self.z2 + self.m * self.z1 * self.z2 * ((1 << self.r) - self.r - 2)

    @classmethod
    def of(cls, code):
        return cls(code.m, code.n, code.z1, code.z2, code.r)


@dataclass(frozen=True)
class ArchConfig:
    z2: int
    N_h: int
    f_c: float = 130e6
    iterations: int = 20
    t_delta: int = 2
    ports: int = PORTS_PER_RAM

    def __post_init__(self):
        if not 0 < self.N_h <= self.z2:
            raise ArchitectureError(f'N_h={self.N_h} must lie in (0, z2={self.z2}]')
        if self.z2 % self.N_h:
            raise ArchitectureError(f'z2={self.z2} is not a multiple of N_h={self.N_h}')
        if self.f_c <= 0:
            raise ArchitectureError('clock frequency must be positive')
        if self.iterations < 1:
            raise ArchitectureError('iteration count must be >= 1')
        if self.t_delta < 0:
            raise ArchitectureError('t_delta must be non-negative')

    @property
    def G(self):
        return self.z2 // self.N_h


# -- address maps -----------------------------------------------------------------

def _check_index(name, value, limit):
    if not 0 <= value < limit:
        raise ArchitectureError(f'{name}={value} out of range [0, {limit})')


def pvn_address(g, l, G, z2, depth=None):
    """P-VN index stored at depth ``g`` of PVN RAM ``l``."""
    if depth is not None:
        _check_index('depth index', g, depth)
    _check_index('RAM index', l, z2 // G)
    return (g // G) * z2 + l * G + g % G


def hex_address(q, l, d, N_h, depth=None):
    """(α, δ): edge (α, β_δ) held at depth ``q`` of H-EX RAM ``l``."""
    if depth is not None:
        _check_index('depth index', q, depth)
    _check_index('RAM index', l, N_h)
    return (q // d) * N_h + l, q % d


def d1h_address(w, l, N_h, depth=None):
    """H-CN whose D1H channel LLRs sit at depth ``w`` of D1H RAM ``l``."""
    if depth is not None:
        _check_index('depth index', w, depth)
    _check_index('RAM index', l, N_h)
    return w * N_h + l


def storage_to_code_hcn(alpha_hw, G, N_h):
    """Map the storage-order H-CN index (kG + c)·N_h + l to k·z2 + l·G + c."""
    z2 = G * N_h
    k, rest = divmod(alpha_hw, z2)
    c, l = divmod(rest, N_h)
    return k * z2 + l * G + c


def shift_amount(p, address, G, N_h):
    """Left-cyclic shift applied to the word read at ``address`` for CPM offset p."""
    _check_index('CPM offset', p, G * N_h)
    q_u, r_e = divmod(p, G)
    if address % G < r_e:
        return (q_u + 1) % N_h
    return q_u % N_h


def rotate_left(word, shift):
    return np.roll(np.asarray(word), -shift, axis=-1)


def group_read_address(c, p, G):
    return (c + p) % G


def shifter_permutation(p, z2, N_h):
    """β_local for every α_local of a CPM block, as delivered by RAMs plus shifter."""
    G = z2 // N_h
    out = np.empty(z2, dtype=np.int64)
    lanes = np.arange(N_h)
    for c in range(G):
        address = group_read_address(c, p, G)
        word = lanes * G + address
        out[lanes * G + c] = rotate_left(word, shift_amount(p, address, G, N_h))
    return out


# -- closed forms -----------------------------------------------------------------

def loading_cycles(r, G):
    return (r + 2) * G // 2


def first_output_cycle(r):
    return (r + 2) // 2 + 2 * r + 1


def classify_case(r, G):
    case = Case.I if loading_cycles(r, G) <= first_output_cycle(r) else Case.II
    logger.debug('r=%d G=%d: t_loading=%d t_1st=%d -> Case %s',
                 r, G, loading_cycles(r, G), first_output_cycle(r), case)
    return case


def layer_latency(r, G, case=None):
    case = case or classify_case(r, G)
    if case != classify_case(r, G):
        raise ArchitectureError(f'r={r}, G={G} is not a Case {case} configuration')
    if case is Case.I:
        return (r // 2 + 1) * G + 5 * r // 2 + 2
    return (r + 2) * G


def fifo_peak(r, G):
    """Output groups waiting for write-back at the worst cycle."""
    if classify_case(r, G) is Case.I:
        return 0
    return math.ceil((loading_cycles(r, G) - first_output_cycle(r)) / ((r + 2) // 2))


@dataclass(frozen=True)
class TimingFigures:
    case: Case
    G: int
    layer_cycles: int
    latency: float
    throughput: float
    codeword_length: int

    @property
    def latency_ms(self):
        return self.latency * 1e3

    @property
    def throughput_gbps(self):
        return self.throughput / 1e9


def evaluate_timing(code, arch):
    dims = CodeDimensions.of(code)
    if dims.z2 != arch.z2:
        raise ArchitectureError(f'architecture z2={arch.z2} does not match code z2={dims.z2}')
    case = classify_case(dims.r, arch.G)
    cycles = layer_latency(dims.r, arch.G, case)
    latency = arch.iterations * dims.num_layers * (cycles + arch.t_delta) / arch.f_c
    return TimingFigures(case, arch.G, cycles, latency, dims.codeword_length / latency, dims.codeword_length)


def codeword_latency_and_throughput(code, arch):
    figures = evaluate_timing(code, arch)
    return figures.latency, figures.throughput


def potential_multi_codeword_throughput(code, arch):
    """Throughput if d/2 codewords shared the pipeline; informational only."""
    return evaluate_timing(code, arch).throughput * (code.r + 2) / 2


# -- RAM banks --------------------------------------------------------------------

class Bank(enum.Enum):
    PVN_CH = 'PVN-CH'
    PVN_APP = 'PVN-APP'
    H_EX = 'H-EX'
    D1H_CH = 'D1H-CH'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RamBankModel:
    kind: Bank
    count: int
    depth: int
    width: int

    @property
    def bits(self):
        return self.count * self.depth * self.width


def ram_banks(code, arch, setting):
    """The four banks with depths and widths for a quantisation setting."""
    dims = CodeDimensions.of(code)
    G = arch.G
    layers = dims.m * dims.z1
    return {
        Bank.PVN_CH: RamBankModel(Bank.PVN_CH, arch.N_h, dims.n * dims.z1 * G, setting.w_ch_pvn),
        Bank.PVN_APP: RamBankModel(Bank.PVN_APP, arch.N_h, dims.n * dims.z1 * G, setting.w_app_pvn),
        Bank.H_EX: RamBankModel(Bank.H_EX, arch.N_h, dims.d * layers * G, setting.w_ex_h),
        Bank.D1H_CH: RamBankModel(Bank.D1H_CH, arch.N_h, 2 * layers * G, setting.w_ch_d1h(dims.r)),
    }


# -- cycle-level schedule ---------------------------------------------------------

@dataclass(frozen=True)
class Access:
    bank: Bank
    op: str
    address: int
    group: int
    column: int = -1


@dataclass
class CycleRecord:
    cycle: int
    accesses: list = field(default_factory=list)
    active_groups: tuple = ()
    fifo: int = 0


@dataclass
class ScheduleReport:
    r: int
    G: int
    N_h: int
    k: int
    synthetic_layer: bool
    case: Case
    total_cycles: int
    load_complete: list
    output_ready: list
    write_start: list
    write_end: list
    trace: list
    conflicts: list
    fifo_peak: int

    @property
    def t_loading(self):
        return self.load_complete[-1]

    @property
    def t_first_output(self):
        return self.output_ready[0]

    def group_hcns(self, g):
        """Code H-CN index handled by each sub-decoder lane in group g."""
        return [storage_to_code_hcn((self.k * self.G + g) * self.N_h + lane, self.G, self.N_h)
                for lane in range(self.N_h)]

    def check(self):
        if self.conflicts:
            raise ScheduleConflictError(self.conflicts)
        return self

    def rows(self):
        """Flat per-cycle rows for trace dumps."""
        for record in self.trace:
            for access in record.accesses:
                yield (record.cycle, str(access.bank), access.op, access.address, access.group, access.column,
                       len(record.active_groups), record.fifo)


TRACE_HEADER = ('cycle', 'bank', 'op', 'address', 'group', 'column', 'subdecoder_groups', 'fifo')


def _layer_structure(code, k):
    """Block columns and CPM offsets of layer k; synthetic for bare dimensions."""
    d = code.r + 2
    if isinstance(code, CodeDimensions):
        if code.n * code.z1 < d:
            raise ArchitectureError(f'a layer of weight {d} needs at least {d} block columns')
        return tuple(range(d)), (0,) * d, None
    view = code.layer_view(k)
    return view.columns, view.shifts, code.first_layer_of_column


def simulate_schedule(code, arch, k=0, iteration=0, incoming_d1h_writes=False):
    """Replay the read → decode → write pipeline of one layer cycle by cycle.

    Group g loads during cycles g·d/2 + 1 … (g+1)·d/2, two block columns per
    cycle, with its D1H word read in the last of those cycles. The sub-decoder
    takes ``pipeline_depth(r)`` cycles. Write-back starts after loading has
    finished and the previous group's write-back has ended; outputs waiting for
    it sit in the output FIFO.
    """
    dims = CodeDimensions.of(code)
    if dims.z2 != arch.z2:
        raise ArchitectureError(f'architecture z2={arch.z2} does not match code z2={dims.z2}')
    _check_index('layer', k, dims.num_layers)
    r, d, G = dims.r, dims.d, arch.G
    half = d // 2
    pipeline = pipeline_depth(r)
    columns, shifts, first_layer = _layer_structure(code, k)

    bank_depth = {
        Bank.PVN_CH: dims.n * dims.z1 * G,
        Bank.PVN_APP: dims.n * dims.z1 * G,
        Bank.H_EX: d * dims.num_layers * G,
        Bank.D1H_CH: 2 * dims.num_layers * G,
    }
    accesses = {}

    def record(cycle, access):
        accesses.setdefault(cycle, []).append(access)

    def pvn_source(delta):
        if iteration == 0 and first_layer is not None and first_layer[columns[delta]] == k:
            return Bank.PVN_CH
        if iteration == 0 and first_layer is None:
            return Bank.PVN_CH
        return Bank.PVN_APP

    load_complete, output_ready, write_start, write_end = [], [], [], []
    previous_end = 0
    t_loading = half * G
    for g in range(G):
        row = k * G + g
        for step in range(half):
            cycle = g * half + step + 1
            for delta in (2 * step, 2 * step + 1):
                pvn = columns[delta] * G + group_read_address(g, shifts[delta], G)
                record(cycle, Access(pvn_source(delta), 'read', pvn, g, delta))
                record(cycle, Access(Bank.H_EX, 'read', row * d + delta, g, delta))
        loaded = (g + 1) * half
        record(loaded, Access(Bank.D1H_CH, 'read', row, g))
        if incoming_d1h_writes:
            record(loaded, Access(Bank.D1H_CH, 'write', dims.num_layers * G + row, g))
        load_complete.append(loaded)
        ready = loaded + pipeline
        output_ready.append(ready)
        start = max(ready + 1, t_loading + 1, previous_end + 1)
        for step in range(half):
            cycle = start + step
            for delta in (2 * step, 2 * step + 1):
                pvn = columns[delta] * G + group_read_address(g, shifts[delta], G)
                record(cycle, Access(Bank.PVN_APP, 'write', pvn, g, delta))
                record(cycle, Access(Bank.H_EX, 'write', row * d + delta, g, delta))
        previous_end = start + half - 1
        write_start.append(start)
        write_end.append(previous_end)

    total = write_end[-1]
    trace, conflicts = [], []
    peak = 0
    for cycle in range(1, total + 1):
        active = tuple(g for g in range(G) if load_complete[g] < cycle <= output_ready[g])
        waiting = sum(1 for g in range(G) if output_ready[g] < cycle < write_start[g])
        peak = max(peak, waiting)
        cycle_accesses = accesses.get(cycle, [])
        per_bank = Counter(a.bank for a in cycle_accesses)
        for bank, count in per_bank.items():
            if count > arch.ports:
                conflicts.append((cycle, str(bank), f'{count} accesses on a {arch.ports}-port RAM'))
        for a in cycle_accesses:
            if not 0 <= a.address < bank_depth[a.bank]:
                conflicts.append((cycle, str(a.bank), f'address {a.address} outside depth {bank_depth[a.bank]}'))
        trace.append(CycleRecord(cycle, cycle_accesses, active, waiting))

    report = ScheduleReport(
        r=r, G=G, N_h=arch.N_h, k=k, synthetic_layer=first_layer is None,
        case=classify_case(r, G), total_cycles=total,
        load_complete=load_complete, output_ready=output_ready,
        write_start=write_start, write_end=write_end,
        trace=trace, conflicts=conflicts, fifo_peak=peak,
    )
    if conflicts:
        logger.warning('layer %d schedule has %d port conflicts', k, len(conflicts))
    return report


# -- tables -----------------------------------------------------------------------

TIMING_HEADER = ('name', 'N_h', 'G', 'case', 'cycles_per_layer', 'iterations', 'latency_ms', 'throughput_gbps')


def timing_row(name, arch, figures):
    return (name, arch.N_h, figures.G, str(figures.case), figures.layer_cycles, arch.iterations,
            f'{figures.latency_ms:.4g}', f'{figures.throughput_gbps:.3g}')


def write_timing_csv(stream, rows):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(TIMING_HEADER)
    writer.writerows(rows)


def write_trace_csv(stream, report):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(TRACE_HEADER)
    writer.writerows(report.rows())
