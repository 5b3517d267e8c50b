"""
Dense GF(2) linear algebra and the matrix model of F2-linear generators.

An F2-linear generator advances its state as x_i = A x_{i-1} over GF(2).
This module extracts A from a generator treated as a black box (one
probe per unit state vector), checks that the implementation matches
its matrix, and provides the products and powers needed to do so.

Matrices are stored row-major with each row packed into bytes, bit j of
a row being column j (little bit order).
"""

import logging

import numpy as np

from config import settings
from generators.base import WorkbenchError, GeneratorId
from generators.registry import GeneratorRegistry


logger = logging.getLogger(__name__)


class DimensionMismatch(WorkbenchError):
    """Raised when operand dimensions do not agree."""
    pass


class NotF2Linear(WorkbenchError):
    """Raised when a generator's transition is not a linear map over GF(2)."""
    pass


class MatrixTooLarge(WorkbenchError):
    """Raised when extraction would exceed the default memory gate."""
    pass


# Parity of every byte value
_PARITY = (np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1) & 1).astype(np.uint8)


def _row_bytes(cols):
    return (cols + 7) // 8


def _int_to_bits(value, dim):
    raw = np.frombuffer(value.to_bytes(_row_bytes(dim), 'little'), dtype=np.uint8)
    return np.unpackbits(raw, bitorder='little')[:dim]


class F2Vector:
    """Bit vector over GF(2); component i is bit i."""

    def __init__(self, bits, dim):
        if dim < 1:
            raise ValueError("F2Vector dimension must be at least 1")
        self.dim = dim
        self.bits = np.array(bits, dtype=np.uint8)
        if self.bits.size != _row_bytes(dim):
            raise DimensionMismatch(f"Packed vector has {self.bits.size} bytes, expected {_row_bytes(dim)}")
        tail = dim % 8
        if tail:
            self.bits[-1] &= (1 << tail) - 1

    @classmethod
    def from_int(cls, value, dim):
        value &= (1 << dim) - 1
        return cls(np.frombuffer(value.to_bytes(_row_bytes(dim), "little"), dtype=np.uint8), dim)

    @classmethod
    def from_bits(cls, bits):
        arr = np.asarray(bits, dtype=np.uint8) & 1
        return cls(np.packbits(arr, bitorder='little'), int(arr.size))

    @classmethod
    def zero(cls, dim):
        return cls(np.zeros(_row_bytes(dim), dtype=np.uint8), dim)

    def to_int(self):
        return int.from_bytes(self.bits.tobytes(), 'little')

    def to_bits(self):
        return np.unpackbits(self.bits, bitorder='little')[:self.dim]

    def __getitem__(self, i):
        if not 0 <= i < self.dim:
            raise IndexError(i)
        return int((self.bits[i >> 3] >> (i & 7)) & 1)

    def __eq__(self, other):
        if not isinstance(other, F2Vector):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.bits, other.bits)

    def __xor__(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"Cannot add vectors of dimension {self.dim} and {other.dim}")
        return F2Vector(self.bits ^ other.bits, self.dim)

    def __repr__(self):
        return f"<F2Vector dim={self.dim} weight={int(self.to_bits().sum())}>"


class F2Matrix:
    """
    rows x cols matrix over GF(2).

    data has shape (rows, ceil(cols / 8)); bits past cols in each row are zero.
    """

    def __init__(self, data, rows, cols):
        if rows < 1 or cols < 1:
            raise ValueError("F2Matrix needs rows * cols > 0")
        self.rows = rows
        self.cols = cols
        self.data = np.asarray(data, dtype=np.uint8).reshape(rows, _row_bytes(cols))
        tail = cols % 8
        if tail:
            self.data[:, -1] &= (1 << tail) - 1

    @classmethod
    def from_dense(cls, dense):
        arr = np.atleast_2d(np.asarray(dense, dtype=np.uint8) & 1)
        rows, cols = arr.shape
        return cls(np.packbits(arr, axis=1, bitorder='little'), rows, cols)

    @classmethod
    def from_columns(cls, columns, rows):
        """
        Build a matrix from column values given as integers.

        Args:
            columns (list): Column j as an int whose bit i is entry (i, j)
            rows (int): Number of rows

        Returns:
            F2Matrix: Assembled matrix
        """
        cols = len(columns)
        data = np.zeros((rows, _row_bytes(cols)), dtype=np.uint8)
        # eight columns at a time keeps the unpacked block small
        for start in range(0, cols, 8):
            block = np.zeros((rows, 8), dtype=np.uint8)
            for offset, value in enumerate(columns[start:start + 8]):
                block[:, offset] = _int_to_bits(value, rows)
            data[:, start // 8] = np.packbits(block, axis=1, bitorder='little')[:, 0]
        return cls(data, rows, cols)

    def to_dense(self):
        return np.unpackbits(self.data, axis=1, bitorder='little')[:, :self.cols]

    def column(self, j):
        return int.from_bytes(np.packbits((self.data[:, j >> 3] >> (j & 7)) & 1, bitorder='little').tobytes(), 'little')

    def copy(self):
        return F2Matrix(self.data.copy(), self.rows, self.cols)

    def flip(self, i, j):
        """Toggle entry (i, j) in place."""
        self.data[i, j >> 3] ^= np.uint8(1 << (j & 7))

    @property
    def shape(self):
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"<F2Matrix {self.rows}x{self.cols}>"

    def to_text(self):
        """Render as 'rows cols' then one line of 0/1 characters per row."""
        lines = [f"{self.rows} {self.cols}"]
        for row in self.to_dense():
            lines.append(row.astype(np.uint8).tobytes().translate(bytes.maketrans(b'\x00\x01', b'01')).decode('ascii'))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        """Parse the format written by to_text."""
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines:
            raise ValueError("Empty matrix text")
        try:
            rows, cols = (int(v) for v in lines[0].split())
        except ValueError:
            raise ValueError(f"Bad matrix header: {lines[0]!r}") from None
        body = lines[1:]
        if len(body) != rows or any(len(line) != cols for line in body):
            raise DimensionMismatch(f"Matrix text does not match header {rows} {cols}")
        dense = np.frombuffer("".join(body).encode('ascii'), dtype=np.uint8).reshape(rows, cols) - ord('0')
        if np.any(dense > 1):
            raise ValueError("Matrix text may only contain '0' and '1'")
        return cls.from_dense(dense)


def identity(dim):
    """dim x dim identity matrix."""
    return F2Matrix.from_dense(np.eye(dim, dtype=np.uint8))


def zero(rows, cols=None):
    """All-zero matrix."""
    cols = rows if cols is None else cols
    return F2Matrix(np.zeros((rows, _row_bytes(cols)), dtype=np.uint8), rows, cols)


def mat_vec(A, x):
    """
    Matrix-vector product over GF(2).

    Args:
        A (F2Matrix): rows x cols matrix
        x (F2Vector): Vector of dimension cols

    Returns:
        F2Vector: A x, dimension rows

    Raises:
        DimensionMismatch: If A.cols != x.dim
    """
    if A.cols != x.dim:
        raise DimensionMismatch(f"Cannot multiply {A.rows}x{A.cols} matrix by vector of dimension {x.dim}")
    out = np.empty(A.rows, dtype=np.uint8)
    chunk = settings.MATRIX_CHUNK_ROWS
    for start in range(0, A.rows, chunk):
        block = A.data[start:start + chunk] & x.bits
        out[start:start + chunk] = _PARITY[np.bitwise_xor.reduce(block, axis=1)]
    return F2Vector(np.packbits(out, bitorder='little'), A.rows)


def mat_mul(A, B):
    """
    Matrix product over GF(2).

    Args:
        A (F2Matrix): m x k matrix
        B (F2Matrix): k x n matrix

    Returns:
        F2Matrix: A B

    Raises:
        DimensionMismatch: If A.cols != B.rows
    """
    if A.cols != B.rows:
        raise DimensionMismatch(f"Cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    # float32 sums are exact up to 2^24 terms
    left = A.to_dense().astype(np.float32)
    right = B.to_dense().astype(np.float32)
    product = (left @ right).astype(np.int64) & 1
    return F2Matrix.from_dense(product)


def mat_pow(A, e):
    """
    A^e by square-and-multiply.

    Args:
        A (F2Matrix): Square matrix
        e (int): Non-negative exponent (may be very large)

    Returns:
        F2Matrix: A^e (identity for e = 0)

    Raises:
        DimensionMismatch: If A is not square
    """
    if A.rows != A.cols:
        raise DimensionMismatch(f"Cannot raise {A.rows}x{A.cols} matrix to a power")
    if e < 0:
        raise ValueError("Exponent must be non-negative")
    result = identity(A.rows)
    base = A
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def rank(A):
    """
    Rank over GF(2) by Gaussian elimination on integer rows.

    Args:
        A (F2Matrix): Any matrix

    Returns:
        int: Rank
    """
    rows = [int.from_bytes(row.tobytes(), 'little') for row in A.data]
    r = 0
    for col in range(A.cols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        r += 1
        if r == len(rows):
            break
    return r


def coordinate_sequence(A, x, n, coordinates=(0,)):
    """
    Follow a linear form of the state through iterated mat_vec.

    Args:
        A (F2Matrix): Square transition matrix
        x (F2Vector): Initial state
        n (int): Number of steps
        coordinates (tuple): State bits whose XOR is recorded

    Returns:
        list: XOR of the chosen bits of A^t x for t = 1..n
    """
    out = []
    for _ in range(n):
        x = mat_vec(A, x)
        bit = 0
        for c in coordinates:
            bit ^= x[c]
        out.append(bit)
    return out


def _step(gen, value):
    gen.set_state_int(value)
    gen.next()
    return gen.get_state_int()


def _random_state(rng, dim):
    return int.from_bytes(rng.bytes(_row_bytes(dim)), 'little') & ((1 << dim) - 1)


def check_linearity(gen_id, probes=None, seed=0):
    """
    Affine-superposition test on the transition of a generator.

    Requires step(0) = 0 and step(a) ^ step(b) = step(a ^ b) on random pairs.

    Args:
        gen_id (GeneratorId|str): Generator id
        probes (int): Number of probe pairs (default: from settings)
        seed (int): Seed of the probe stream

    Raises:
        NotF2Linear: On the first violation
    """
    gen_id = GeneratorId.parse(gen_id)
    probes = probes or settings.EXTRACTION_PROBE_PAIRS
    gen = GeneratorRegistry.create(gen_id)
    dim = gen.descriptor.state_bits
    rng = np.random.default_rng(seed)

    offset = _step(gen, 0)
    if offset:
        raise NotF2Linear(f"{gen_id.value}: zero state does not map to zero")
    for i in range(probes):
        a = _random_state(rng, dim)
        b = _random_state(rng, dim)
        if _step(gen, a) ^ _step(gen, b) != _step(gen, a ^ b):
            raise NotF2Linear(f"{gen_id.value}: superposition fails on probe pair {i}")
    logger.debug(f"{gen_id.value}: {probes} superposition probes passed")


def extract_transition_matrix(gen_id, allow_large=False):
    """
    Extract the transition matrix A of an F2-linear generator.

    Column j is step(e_j) for the j-th unit state vector.

    Args:
        gen_id (GeneratorId|str): Generator id
        allow_large (bool): Permit state_bits above the memory gate

    Returns:
        F2Matrix: state_bits x state_bits transition matrix

    Raises:
        NotF2Linear: If the generator fails the superposition probes
        MatrixTooLarge: If state_bits exceeds the gate and allow_large is False
    """
    gen_id = GeneratorId.parse(gen_id)
    descriptor = GeneratorRegistry.get_descriptor(gen_id)
    check_linearity(gen_id)
    if not descriptor.is_f2_linear_transition:
        logger.warning(f"{gen_id.value} passed the linearity probes but is not flagged F2-linear")

    dim = descriptor.state_bits
    if dim > settings.MATRIX_MAX_STATE_BITS and not allow_large:
        raise MatrixTooLarge(
            f"{gen_id.value} has {dim} state bits (gate {settings.MATRIX_MAX_STATE_BITS}); "
            f"pass allow_large to extract"
        )

    gen = GeneratorRegistry.create(gen_id)
    logger.info(f"Extracting {dim}x{dim} transition matrix of {gen_id.value}")
    columns = [_step(gen, 1 << j) for j in range(dim)]
    return F2Matrix.from_columns(columns, dim)


def verify_matrix_model(gen_id, A, n_steps, trials, seed=0, initial_states=None):
    """
    Check a generator against its matrix model.

    Args:
        gen_id (GeneratorId|str): Generator id
        A (F2Matrix): Transition matrix for the generator
        n_steps (int): Steps per trial
        trials (int): Number of random initial states
        seed (int): Seed for the random initial states
        initial_states (list): Explicit initial states, used instead of random ones

    Returns:
        bool: True iff every step of every trial matches exactly

    Raises:
        DimensionMismatch: If A is not state_bits x state_bits
    """
    gen_id = GeneratorId.parse(gen_id)
    gen = GeneratorRegistry.create(gen_id)
    dim = gen.descriptor.state_bits
    if A.shape != (dim, dim):
        raise DimensionMismatch(f"{gen_id.value} needs a {dim}x{dim} matrix, got {A.rows}x{A.cols}")

    if initial_states is None:
        rng = np.random.default_rng(seed)
        initial_states = [_random_state(rng, dim) for _ in range(trials)]

    for trial, state in enumerate(initial_states):
        gen.set_state_int(state)
        x = F2Vector.from_int(state, dim)
        for step in range(1, n_steps + 1):
            gen.next()
            x = mat_vec(A, x)
            if gen.get_state_int() != x.to_int():
                logger.debug(f"{gen_id.value}: model diverges at trial {trial}, step {step}")
                return False
    return True
