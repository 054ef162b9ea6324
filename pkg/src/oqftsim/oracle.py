"""Dense-statevector verification of the quantum identities the models rely on.

Desk-scale only: states up to 14 qubits, full unitaries up to 12. Bit
ordering is fixed once for every circuit builder here: index bit q-1 is the
most significant. Modular additions are implemented as index permutations,
which keeps the catalysis and decomposition checks exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_STATE_QUBITS = 14
MAX_UNITARY_QUBITS = 12

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass
class StateVector:
    """Dense amplitudes over 2^q basis states; bit q-1 is most significant."""

    amplitudes: np.ndarray
    q: int

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass
class DenseUnitary:
    matrix: np.ndarray
    q: int


def _check_qubits(q: int, cap: int, what: str) -> None:
    if q > cap:
        raise ValueError(f"{what} capped at {cap} qubits, got {q}")
    if q < 1:
        raise ValueError(f"need at least one qubit, got {q}")


def basis_state(q: int, x: int = 0) -> StateVector:
    _check_qubits(q, MAX_STATE_QUBITS, "statevector")
    amp = np.zeros(2**q, dtype=complex)
    amp[x] = 1.0
    return StateVector(amp, q)


def _bit_values(q: int, bit: int) -> np.ndarray:
    """0/1 value of ``bit`` for every basis index."""
    idx = np.arange(2**q)
    return (idx >> bit) & 1


def _apply_h(mat: np.ndarray, q: int, bit: int) -> np.ndarray:
    """Hadamard on one bit; ``mat`` is (2^q,) or (2^q, ncols)."""
    cols = 1 if mat.ndim == 1 else mat.shape[1]
    axis = q - 1 - bit  # axis 0 is the most significant bit
    work = mat.reshape([2] * q + ([cols] if mat.ndim > 1 else []))
    lo = np.take(work, 0, axis=axis)
    hi = np.take(work, 1, axis=axis)
    out = np.stack(((lo + hi) * _INV_SQRT2, (lo - hi) * _INV_SQRT2), axis=axis)
    return out.reshape(mat.shape)


def _apply_cp(mat: np.ndarray, q: int, theta: float, bit_a: int, bit_b: int) -> np.ndarray:
    """Controlled phase e^{i theta} on the |11> component of two bits."""
    both = (_bit_values(q, bit_a) & _bit_values(q, bit_b)).astype(bool)
    phase = np.ones(2**q, dtype=complex)
    phase[both] = np.exp(1j * theta)
    return mat * (phase if mat.ndim == 1 else phase[:, None])


def _apply_perm(mat: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """Apply |x> -> |perm[x]>."""
    out = np.empty_like(mat)
    out[perm] = mat
    return out


def _bit_reversal_perm(q: int) -> np.ndarray:
    idx = np.arange(2**q)
    out = np.zeros_like(idx)
    for b in range(q):
        out |= ((idx >> b) & 1) << (q - 1 - b)
    return out


def _apply_qft_circuit(mat: np.ndarray, q: int, cutoff_k: int | None) -> np.ndarray:
    """Textbook QFT circuit: Hadamards, controlled phases, final bit reversal.

    A cutoff c omits every rotation between bits at significance distance
    >= c (exponent convention: distance-d pairs carry angle 2*pi/2^{d+1}).
    """
    window = q if cutoff_k is None else cutoff_k - 1
    for j in range(q - 1, -1, -1):  # most significant target first
        mat = _apply_h(mat, q, j)
        for d in range(1, min(j, window) + 1):
            mat = _apply_cp(mat, q, 2.0 * math.pi / 2 ** (d + 1), j, j - d)
    return _apply_perm(mat, _bit_reversal_perm(q))


def apply_qft(s: StateVector, cutoff_k: int | None = None) -> StateVector:
    """Apply the (possibly truncated) textbook QFT to a state."""
    _check_qubits(s.q, MAX_STATE_QUBITS, "statevector QFT")
    return StateVector(_apply_qft_circuit(s.amplitudes.copy(), s.q, cutoff_k), s.q)


def qft_unitary(q: int, cutoff_k: int | None = None) -> DenseUnitary:
    _check_qubits(q, MAX_UNITARY_QUBITS, "dense unitary")
    mat = np.eye(2**q, dtype=complex)
    return DenseUnitary(_apply_qft_circuit(mat, q, cutoff_k), q)


def dft_matrix(q: int) -> DenseUnitary:
    """Independent oracle for the exact QFT: the plain DFT matrix."""
    _check_qubits(q, MAX_UNITARY_QUBITS, "dense unitary")
    dim = 2**q
    x = np.arange(dim)
    mat = np.exp(2j * math.pi * np.outer(x, x) / dim) / math.sqrt(dim)
    return DenseUnitary(mat, q)


def frobenius_distance(u: DenseUnitary, v: DenseUnitary) -> float:
    """Dimension-normalized Frobenius distance ||U - V||_F / 2^{q/2}.

    Identical unitaries give 0, Haar-random pairs O(1), a global sign flip 2.
    """
    if u.matrix.shape != v.matrix.shape:
        raise ValueError("dimension mismatch")
    return float(np.linalg.norm(u.matrix - v.matrix) / math.sqrt(u.matrix.shape[0]))


# -- block decomposition ----------------------------------------------------

def _block_values(q: int, block_bits: tuple[int, ...]) -> np.ndarray:
    """Integer content of a block for every basis index; block_bits MSB first."""
    idx = np.arange(2**q)
    val = np.zeros_like(idx)
    for b in block_bits:
        val = (val << 1) | ((idx >> b) & 1)
    return val


def _block_bits(n: int, m: int, blk: int) -> tuple[int, ...]:
    """Significance bits of block ``blk`` (block 0 most significant), MSB first."""
    b = n // m
    top = (b - blk) * m - 1
    return tuple(range(top, top - m, -1))


def _apply_small_dft(mat: np.ndarray, q: int, block_bits: tuple[int, ...]) -> np.ndarray:
    """Full DFT on one m-bit block, other bits untouched."""
    m = len(block_bits)
    dim = 2**q
    sub = dft_matrix(m).matrix
    # Gather block value and the residual index, apply the DFT along the block.
    blkval = _block_values(q, block_bits)
    mask = 0
    for b in block_bits:
        mask |= 1 << b
    rest = np.arange(dim) & ~mask
    # scatter positions: for each (rest, blockval) pair the basis index
    pos = np.zeros((dim >> m, 2**m), dtype=np.int64)
    rest_ids = np.unique(rest)
    lookup = {r: i for i, r in enumerate(rest_ids)}
    rows = np.fromiter((lookup[r] for r in rest), count=dim, dtype=np.int64)
    pos[rows, blkval] = np.arange(dim)
    if mat.ndim == 1:
        gathered = mat[pos]                      # (rest, blk)
        mixed = gathered @ sub.T
        out = np.empty_like(mat)
        out[pos] = mixed
    else:
        gathered = mat[pos]                      # (rest, blk, cols)
        mixed = np.einsum("ab,rbc->rac", sub, gathered)
        out = np.empty_like(mat)
        out[pos] = mixed
    return out


def _apply_bpr(mat: np.ndarray, q: int, n: int, m: int, blk_a: int, blk_c: int) -> np.ndarray:
    """Diagonal block-phased rotation e^{2 pi i X_a X_c / 2^{(c-a+1) m}}."""
    xa = _block_values(q, _block_bits(n, m, blk_a))
    xc = _block_values(q, _block_bits(n, m, blk_c))
    phase = np.exp(2j * math.pi * (xa * xc).astype(float) / 2 ** ((blk_c - blk_a + 1) * m))
    return mat * (phase if mat.ndim == 1 else phase[:, None])


def _block_reversal_perm(n: int, m: int) -> np.ndarray:
    b = n // m
    idx = np.arange(2**n)
    out = np.zeros_like(idx)
    for blk in range(b):
        shift_in = (b - 1 - blk) * m
        shift_out = blk * m
        out |= ((idx >> shift_in) & (2**m - 1)) << shift_out
    return out


def block_decomposition_unitary(n: int, m: int) -> DenseUnitary:
    """QFT_n rebuilt from per-block DFTs and pairwise BPR phases.

    Blocks are processed most significant first: DFT the block, then phase it
    against every not-yet-transformed block, and finish with a block-order
    reversal. Untruncated, this is an exact identity with the plain QFT.
    """
    _check_qubits(n, MAX_UNITARY_QUBITS, "dense unitary")
    if n % m != 0:
        raise ValueError(f"block size {m} must divide {n}")
    b = n // m
    mat = np.eye(2**n, dtype=complex)
    for blk in range(b):
        mat = _apply_small_dft(mat, n, _block_bits(n, m, blk))
        for other in range(blk + 1, b):
            mat = _apply_bpr(mat, n, n, m, blk, other)
    mat = _apply_perm(mat, _block_reversal_perm(n, m))
    return DenseUnitary(mat, n)


def check_block_decomposition(n: int, m: int) -> float:
    """Max element-wise deviation between QFT_n and its block/BPR rebuild."""
    direct = dft_matrix(n).matrix
    composed = block_decomposition_unitary(n, m).matrix
    return float(np.max(np.abs(direct - composed)))


# -- phase-gradient catalysis -----------------------------------------------

def phase_gradient_state(k: int) -> StateVector:
    """|grad_k> = 2^{-k/2} sum_x e^{2 pi i x / 2^k} |x>."""
    _check_qubits(k, MAX_STATE_QUBITS, "phase-gradient state")
    x = np.arange(2**k)
    amp = np.exp(2j * math.pi * x / 2**k) / math.sqrt(2**k)
    return StateVector(amp, k)


def modular_add_perm(k: int, a: int) -> np.ndarray:
    """Permutation of |x> -> |x + a mod 2^k>."""
    return (np.arange(2**k) + a) % 2**k


def pg_catalysis_phase(k: int, a: int) -> tuple[complex, float]:
    """Add ``a`` into |grad_k>; return (measured global phase, L2 deviation).

    The catalytic identity predicts phase e^{-2 pi i a / 2^k} with the state
    left intact.
    """
    if not 0 <= a < 2**k:
        raise ValueError(f"addend must lie in [0, 2^{k}), got {a}")
    grad = phase_gradient_state(k)
    after = _apply_perm(grad.amplitudes.copy(), modular_add_perm(k, a))
    ref = int(np.argmax(np.abs(after)))
    phase = after[ref] / grad.amplitudes[ref]
    phase /= abs(phase)
    deviation = float(np.linalg.norm(after - phase * grad.amplitudes))
    return complex(phase), deviation


# -- the phase-gradient QFT circuit ------------------------------------------

def _pg_qft_matrix(n: int, cutoff_k: int, reflected: bool) -> np.ndarray:
    """Evolve |x>_data (x) |grad> columns through the PG-QFT construction.

    Data register sits on the high bits, the cutoff_k-bit PG ancilla on the
    low bits. Each data target takes a Hadamard followed by one controlled
    subtraction of its rotation window into the PG register. The reflected
    form realizes the same addition through bitwise negation of the window
    plus subtractions and a unit increment (two's complement identity).
    """
    q = n + cutoff_k
    _check_qubits(q, MAX_STATE_QUBITS, "PG circuit register")
    dim_data, dim_pg = 2**n, 2**cutoff_k
    grad = phase_gradient_state(cutoff_k).amplitudes
    # columns indexed by data basis state
    mat = np.zeros((2**q, dim_data), dtype=complex)
    data_idx = np.arange(dim_data)
    for x in range(dim_data):
        mat[x * dim_pg: (x + 1) * dim_pg, x] = grad

    idx = np.arange(2**q)
    pg_val = idx & (dim_pg - 1)
    window = cutoff_k - 1

    for j in range(n - 1, -1, -1):
        gbit = cutoff_k + j
        mat = _apply_h(mat, q, j + cutoff_k)
        d_max = min(j, window)
        if d_max == 0:
            continue
        ctrl = ((idx >> gbit) & 1).astype(bool)
        lval = np.zeros(2**q, dtype=np.int64)
        for d in range(1, d_max + 1):
            lval |= ((idx >> (gbit - d)) & 1) << (d_max - d)
        scale = 2 ** (cutoff_k - d_max - 1)
        if not reflected:
            delta = -lval * scale
        else:
            # sub(s*L) == add(s*~L) . add(s*2^D) . add(s): negate the window,
            # add, and increment (two's complement), composed here
            neg = (2**d_max - 1) - lval
            delta = neg * scale + scale * 2**d_max + scale
        new_pg = np.where(ctrl, (pg_val + delta) % dim_pg, pg_val)
        perm = (idx & ~(dim_pg - 1)) | new_pg
        mat = _apply_perm(mat, perm)

    # final bit reversal on the data register only
    data_rev = _bit_reversal_perm(n)
    full_perm = (data_rev[idx >> cutoff_k] << cutoff_k) | pg_val
    return _apply_perm(mat, full_perm)


def check_pg_qft_circuit(n: int, cutoff_k: int) -> float:
    """Deviation of the PG-QFT construction from truncated QFT (x) untouched PG."""
    dim_pg = 2**cutoff_k
    got = _pg_qft_matrix(n, cutoff_k, reflected=False)
    expect_data = _apply_qft_circuit(np.eye(2**n, dtype=complex), n, cutoff_k)
    grad = phase_gradient_state(cutoff_k).amplitudes
    expected = np.einsum("dx,p->dpx", expect_data, grad).reshape(2**n * dim_pg, 2**n)
    return float(np.max(np.linalg.norm(got - expected, axis=0)))


def reflected_pg_qft_deviation(n: int, cutoff_k: int) -> float:
    """Max deviation between the direct and reflected PG-QFT constructions."""
    direct = _pg_qft_matrix(n, cutoff_k, reflected=False)
    refl = _pg_qft_matrix(n, cutoff_k, reflected=True)
    return float(np.max(np.abs(direct - refl)))
