"""Double-lifted quasi-cyclic PLDPC-Hadamard code construction.

The base matrix ``B`` (m × n, entries = parallel-edge multiplicities) is lifted
twice: stage 1 replaces every ``B(i, j)`` by a superposition of ``B(i, j)``
distinct z1 × z1 circulant permutations, which removes parallel edges; stage 2
replaces every remaining "1" by a z2 × z2 circulant permutation matrix (CPM).
A CPM with offset ``p`` is the identity cyclically shifted right by ``p``
columns, i.e. row ``a`` has its one in column ``(a + p) mod z2``.

Each block row of the stage-1 matrix is one decoding layer of z2 H-CNs.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .exceptions import CodeConstructionError, CodeDescriptionError

logger = logging.getLogger(__name__)

# Base matrix of the rate-0.0494, r = 4 PLDPC-Hadamard code.
DEFAULT_BASE_MATRIX = (
    (1, 0, 0, 0, 0, 0, 1, 0, 3, 0, 1),
    (0, 1, 2, 0, 0, 0, 0, 0, 0, 2, 1),
    (2, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1),
    (0, 1, 0, 3, 0, 0, 0, 0, 0, 2, 0),
    (2, 0, 0, 0, 0, 0, 0, 1, 0, 3, 0),
    (3, 0, 0, 2, 0, 0, 1, 0, 0, 0, 0),
    (1, 0, 0, 1, 1, 0, 0, 0, 1, 2, 0),
)


def _frozen(array, dtype=np.int64):
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class BaseMatrix:
    """Protograph base matrix of H-CN rows and P-VN columns."""
    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen(self.entries)
        if entries.ndim != 2 or entries.size == 0:
            raise CodeConstructionError('base matrix must be a non-empty 2-D array')
        if (entries < 0).any():
            raise CodeConstructionError('base matrix entries must be non-negative')
        row_sums = entries.sum(axis=1)
        if (row_sums != row_sums[0]).any():
            raise CodeConstructionError(f'rows must share one weight, got {row_sums.tolist()}')
        if row_sums[0] % 2:
            raise CodeConstructionError(f'row weight d={int(row_sums[0])} is odd; only even d is supported')
        if row_sums[0] < 4:
            raise CodeConstructionError('row weight d must be at least 4 (Hadamard order r = d - 2 >= 2)')
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_rows(cls, rows):
        return cls(np.asarray(rows))

    @property
    def m(self):
        return self.entries.shape[0]

    @property
    def n(self):
        return self.entries.shape[1]

    @property
    def d(self):
        return int(self.entries[0].sum())

    @property
    def r(self):
        return self.d - 2

    @property
    def column_weights(self):
        return self.entries.sum(axis=0)

    def __eq__(self, other):
        return isinstance(other, BaseMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())


@dataclass(frozen=True, eq=False)
class Stage1Lift:
    """Result of the first lifting: a 0/1 block matrix of size (m·z1) × (n·z1)."""
    base: BaseMatrix
    z1: int
    offsets: dict
    matrix: np.ndarray

    def block(self, i, j):
        return self.matrix[i * self.z1:(i + 1) * self.z1, j * self.z1:(j + 1) * self.z1]


@dataclass(frozen=True)
class LayerView:
    k: int
    hcns: np.ndarray
    columns: tuple
    shifts: tuple
    neighbors: np.ndarray
    q: int

    @property
    def d(self):
        return len(self.columns)

    @property
    def num_hcns(self):
        return len(self.hcns)

    @property
    def num_pvns(self):
        return int(np.unique(self.neighbors).size)

    @property
    def num_d1h(self):
        return (self.q - self.d) * self.num_hcns

    def pvn_set(self, alpha):
        """𝓟(α) for a global H-CN index of this layer."""
        local = int(alpha) - int(self.hcns[0])
        if not 0 <= local < self.num_hcns:
            raise CodeConstructionError(f'H-CN {alpha} is not in layer {self.k}')
        return self.neighbors[local]


@dataclass(frozen=True, eq=False)
class LiftedCode:
    """Quasi-cyclic descriptor of the double-lifted code.

    ``block_rows``, ``block_cols`` and ``shifts`` list the stage-1 edges sorted
    by block row then ascending block column; that order fixes β_0 … β_{d-1}
    inside every layer.
    """
    base: BaseMatrix
    z1: int
    z2: int
    block_rows: np.ndarray
    block_cols: np.ndarray
    shifts: np.ndarray
    stage1: Stage1Lift = field(default=None, repr=False)

    def __post_init__(self):
        if self.z1 < 1 or self.z2 < 1:
            raise CodeConstructionError('lifting factors must be positive')
        rows, cols, shifts = (_frozen(a) for a in (self.block_rows, self.block_cols, self.shifts))
        if not rows.shape == cols.shape == shifts.shape:
            raise CodeConstructionError('edge arrays must have equal length')
        if ((shifts < 0) | (shifts >= self.z2)).any():
            raise CodeConstructionError(f'CPM shift out of range [0, {self.z2})')
        order = np.lexsort((cols, rows))
        object.__setattr__(self, 'block_rows', _frozen(rows[order]))
        object.__setattr__(self, 'block_cols', _frozen(cols[order]))
        object.__setattr__(self, 'shifts', _frozen(shifts[order]))

    # -- dimensions ----------------------------------------------------------------
    @property
    def m(self):
        return self.base.m

    @property
    def n(self):
        return self.base.n

    @property
    def d(self):
        return self.base.d

    @property
    def r(self):
        return self.base.r

    @property
    def q(self):
        return 1 << self.r

    @property
    def M(self):
        return self.m * self.z1 * self.z2

    @property
    def N(self):
        return self.n * self.z1 * self.z2

    @property
    def num_layers(self):
        return self.m * self.z1

    @property
    def num_d1h_per_hcn(self):
        return self.q - self.d

    @property
    def codeword_length(self):
        return self.N + self.M * self.num_d1h_per_hcn

    @property
    def rate(self):
        return code_rate(self.m, self.n, self.r)

    # -- layer structure -----------------------------------------------------------
    @cached_property
    def layer_columns(self):
        return _frozen(self.block_cols.reshape(self.num_layers, self.d))

    @cached_property
    def layer_shifts(self):
        return _frozen(self.shifts.reshape(self.num_layers, self.d))

    @cached_property
    def pvn_neighbors(self):
        """(M, d) array: row α lists 𝓟(α) in block-column order."""
        local = np.arange(self.z2)[None, :, None]
        cols = self.layer_columns[:, None, :]
        shifts = self.layer_shifts[:, None, :]
        beta = cols * self.z2 + (local + shifts) % self.z2
        return _frozen(beta.reshape(self.M, self.d))

    @cached_property
    def first_layer_of_column(self):
        first = np.full(self.n * self.z1, -1, dtype=np.int64)
        for k in range(self.num_layers - 1, -1, -1):
            first[self.layer_columns[k]] = k
        first.setflags(write=False)
        return first

    def layer_view(self, k):
        if not 0 <= k < self.num_layers:
            raise CodeConstructionError(f'layer {k} out of range [0, {self.num_layers})')
        return LayerView(
            k=k,
            hcns=np.arange(k * self.z2, (k + 1) * self.z2),
            columns=tuple(int(c) for c in self.layer_columns[k]),
            shifts=tuple(int(p) for p in self.layer_shifts[k]),
            neighbors=self.pvn_neighbors[k * self.z2:(k + 1) * self.z2],
            q=self.q,
        )

    def hcn_neighbors(self, beta):
        """𝓗(β): the H-CNs connected to P-VN β."""
        if not 0 <= beta < self.N:
            raise CodeConstructionError(f'P-VN {beta} out of range [0, {self.N})')
        return np.flatnonzero((self.pvn_neighbors == beta).any(axis=1))

    def parity_check_matrix(self):
        rows = np.repeat(np.arange(self.M), self.d)
        data = np.ones(self.M * self.d, dtype=np.uint8)
        return sp.csr_matrix((data, (rows, self.pvn_neighbors.ravel())), shape=(self.M, self.N))

    def validate(self):
        """Check every structural invariant; raises CodeConstructionError."""
        if len(self.block_rows) != self.num_layers * self.d:
            raise CodeConstructionError('edge count does not match m·z1·d')
        per_row = np.bincount(self.block_rows, minlength=self.num_layers)
        if (per_row != self.d).any():
            bad = int(np.flatnonzero(per_row != self.d)[0])
            raise CodeConstructionError(f'layer {bad} holds {per_row[bad]} CPMs, expected {self.d}')
        keys = self.block_rows * (self.n * self.z1) + self.block_cols
        if np.unique(keys).size != keys.size:
            raise CodeConstructionError('stage-1 matrix has a parallel edge')
        for k in range(self.num_layers):
            if np.unique(self.layer_columns[k]).size != self.d:
                raise CodeConstructionError(f'layer {k} reuses a block column')
        base_counts = np.zeros((self.m, self.n), dtype=np.int64)
        np.add.at(base_counts, (self.block_rows // self.z1, self.block_cols // self.z1), 1)
        if not np.array_equal(base_counts, self.base.entries * self.z1):
            raise CodeConstructionError('stage-1 edges do not match the base matrix multiplicities')
        layer_of_edge = np.repeat(np.arange(self.num_layers), self.z2)
        for k in range(self.num_layers):
            beta = self.pvn_neighbors[layer_of_edge == k]
            if np.unique(beta).size != beta.size:
                raise CodeConstructionError(f'P-VN repeated inside layer {k}')
        return self


def code_rate(m, n, r):
    """R = (n − m) / (m(2^r − r − 2) + n) as an exact fraction."""
    if r < 2 or r % 2:
        raise CodeConstructionError(f'Hadamard order r={r} must be even and >= 2')
    if n < m or m < 1:
        raise CodeConstructionError(f'need n >= m >= 1, got m={m}, n={n}')
    return Fraction(n - m, m * ((1 << r) - r - 2) + n)


def lift_stage1(base, z1, seed=None, assignment=None):
    """Replace each B(i, j) by B(i, j) distinct z1 × z1 circulants.

    ``assignment`` maps (i, j) to an explicit sequence of circulant offsets;
    otherwise offsets are drawn without replacement from ``seed``.
    """
    max_entry = int(base.entries.max())
    if z1 < 1 or z1 < max_entry:
        raise CodeConstructionError(f'z1={z1} is smaller than the largest multiplicity {max_entry}')
    rng = np.random.default_rng(seed)
    offsets = {}
    matrix = np.zeros((base.m * z1, base.n * z1), dtype=np.uint8)
    rows = np.arange(z1)
    for i in range(base.m):
        for j in range(base.n):
            count = int(base.entries[i, j])
            if assignment is not None:
                chosen = tuple(int(o) for o in assignment.get((i, j), ()))
                if len(chosen) != count:
                    raise CodeConstructionError(f'entry ({i}, {j}) needs {count} offsets, got {len(chosen)}')
                if len(set(chosen)) != len(chosen):
                    raise CodeConstructionError(f'duplicate offsets {chosen} at ({i}, {j})')
                if any(not 0 <= o < z1 for o in chosen):
                    raise CodeConstructionError(f'offset out of range [0, {z1}) at ({i}, {j})')
            elif count:
                chosen = tuple(sorted(int(o) for o in rng.choice(z1, size=count, replace=False)))
            else:
                chosen = ()
            if not chosen:
                continue
            offsets[(i, j)] = chosen
            for o in chosen:
                matrix[i * z1 + rows, j * z1 + (rows + o) % z1] = 1
    matrix.setflags(write=False)
    return Stage1Lift(base=base, z1=z1, offsets=offsets, matrix=matrix)


def lift_stage2(stage1, z2, seed=None, shifts=None):
    """Replace every stage-1 "1" with a z2 × z2 CPM and return the code."""
    if z2 < 1:
        raise CodeConstructionError(f'z2={z2} must be positive')
    rows, cols = np.nonzero(stage1.matrix)
    if shifts is None:
        values = np.random.default_rng(seed).integers(0, z2, size=rows.size)
    else:
        missing = [(int(a), int(b)) for a, b in zip(rows, cols) if (a, b) not in shifts]
        if missing:
            raise CodeConstructionError(f'no CPM shift given for block {missing[0]}')
        values = np.array([shifts[(int(a), int(b))] for a, b in zip(rows, cols)], dtype=np.int64)
        if ((values < 0) | (values >= z2)).any():
            raise CodeConstructionError(f'CPM shift out of range [0, {z2})')
    code = LiftedCode(stage1.base, stage1.z1, z2, rows, cols, values, stage1=stage1).validate()
    logger.debug('lifted code: M=%d N=%d layers=%d', code.M, code.N, code.num_layers)
    return code


def build_code(base, z1, z2, seed=0):
    """Both lifting stages from one seed (independent child streams)."""
    first, second = np.random.SeedSequence(seed).spawn(2)
    return lift_stage2(lift_stage1(base, z1, seed=first), z2, seed=second)


def default_code(z1, z2, seed=0):
    return build_code(BaseMatrix.from_rows(DEFAULT_BASE_MATRIX), z1, z2, seed=seed)


def layer_view(code, k):
    return code.layer_view(k)


def cpm(p, z2):
    """Dense z2 × z2 CPM with offset p."""
    if not 0 <= p < z2:
        raise CodeConstructionError(f'shift {p} out of range [0, {z2})')
    return np.roll(np.eye(z2, dtype=np.uint8), p, axis=1)


# -- code-description files -------------------------------------------------------

def save_code_description(code, path):
    lines = [f'{code.m} {code.n} {code.z1} {code.z2} {code.r}']
    lines += [f'{a} {b} {p}' for a, b, p in zip(code.block_rows, code.block_cols, code.shifts)]
    Path(path).write_text('\n'.join(lines) + '\n')


def load_code_description(path):
    path = Path(path)
    name = path.name
    try:
        text = path.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise CodeDescriptionError(f'{name}: cannot read code description ({type(exc).__name__})') from exc
    rows = [line.split('#', 1)[0].split() for line in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise CodeDescriptionError(f'{name}: empty code description')
    try:
        m, n, z1, z2, r = (int(v) for v in rows[0])
        edges = np.array([[int(v) for v in row] for row in rows[1:]], dtype=np.int64).reshape(-1, 3)
    except ValueError:
        raise CodeDescriptionError(
            f'{name}: expected an integer header "m n z1 z2 r" and integer "row column shift" edge lines'
        ) from None
    if min(m, n, z1, z2) < 1:
        raise CodeDescriptionError(f'{name}: header values must be positive')
    br, bc, shifts = edges.T
    if ((br < 0) | (br >= m * z1)).any() or ((bc < 0) | (bc >= n * z1)).any():
        raise CodeDescriptionError(f'{name}: block index outside the {m * z1}×{n * z1} stage-1 matrix')
    if ((shifts < 0) | (shifts >= z2)).any():
        raise CodeDescriptionError(f'{name}: shift out of range [0, {z2})')
    stage1 = np.zeros((m * z1, n * z1), dtype=np.int64)
    np.add.at(stage1, (br, bc), 1)
    if (stage1 > 1).any():
        raise CodeDescriptionError(f'{name}: duplicate stage-1 edge')
    entries = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            block = stage1[i * z1:(i + 1) * z1, j * z1:(j + 1) * z1]
            weights = np.concatenate([block.sum(axis=0), block.sum(axis=1)])
            if (weights != weights[0]).any():
                raise CodeDescriptionError(f'{name}: sub-block ({i}, {j}) is not a superposition of permutations')
            entries[i, j] = weights[0]
    try:
        base = BaseMatrix(entries)
        if base.r != r:
            raise CodeDescriptionError(f'{name}: header r={r} but row weight gives r={base.r}')
        return LiftedCode(base, z1, z2, br, bc, shifts).validate()
    except CodeDescriptionError:
        raise
    except CodeConstructionError as exc:
        raise CodeDescriptionError(f'{name}: {exc}') from exc
