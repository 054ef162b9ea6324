"""Rotation and non-Clifford gate census for QFT variants.

Counts Z-rotations by exponent k (angle pi/2^k, i.e. Z^{1/2^k}) between
qubit pairs at significance distance k, builds the structural five-layer
block plan for the log-depth variant, and converts censuses to T-counts
either by direct synthesis or through phase-gradient catalysis, where only
addition widths matter.

Truncation convention used throughout: a cutoff of c keeps exponents
k <= c - 1, so the finest surviving rotation angle is 2*pi / 2^c. This is
the convention under which the truncated 256-bit census at cutoff 32 comes
out to exactly 7440 rotations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

# Synthesis cost model: T gates per arbitrary Z-rotation at accuracy eps,
# ceil(A + B*log2(1/eps)). Calibrated so eps = 1e-5/2048 gives ~40.
SYNTHESIS_A = 9.2
SYNTHESIS_B = 1.15

# Fast phase-based multiplier budget per invocation (n=2048 scale).
MULTIPLIER_TOFFOLIS = 0.9e6
MULTIPLIER_ROTATIONS = 0.1e6
T_PER_TOFFOLI = 4

QFT_KIND = "SmallQFT"
QFT_REFLECTED_KIND = "SmallQFTReflected"
BPR_KIND = "BPR"


@dataclass
class RotationSpectrum:
    """Histogram of rotation exponents k for one circuit variant."""

    counts: dict[int, int]
    n_bits: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def scaled(self, factor: int) -> "RotationSpectrum":
        return RotationSpectrum({k: c * factor for k, c in self.counts.items()}, self.n_bits)


@dataclass
class BlockOp:
    """One block-level operation: a small QFT on one block or a BPR on two.

    ``addition_list`` holds (controlled, width) descriptors for the
    phase-gradient additions the op expands into. Closing-layer ops carry an
    empty list: their rotations are the ones already counted in the opening
    and inserted layers, and only alignment work remains.
    """

    kind: str
    blocks: tuple[int, ...]
    addition_list: list[tuple[bool, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.kind == BPR_KIND and len(self.blocks) != 2:
            raise ValueError("BPR involves exactly two blocks")
        if self.kind == BPR_KIND and abs(self.blocks[0] - self.blocks[1]) != 1:
            raise ValueError("truncated BPRs couple adjacent blocks only")


def _qft_additions(m: int) -> list[tuple[bool, int]]:
    """Controlled additions of one phase-gradient small QFT: widths m-1 .. 1."""
    return [(True, wd) for wd in range(m - 1, 0, -1)]


@dataclass
class OqftPlan:
    """Five-layer structural plan for the log-depth QFT variant.

    Layers: opening small QFTs on every block; intra-pair BPRs; inserted
    small QFTs (one per approximate commutation, reflected variants
    alternating); inter-pair BPRs; a closing alignment layer across all
    blocks (zero fresh rotations).
    """

    n: int
    m: int
    num_blocks: int
    layers: list[list[BlockOp]]
    inserted_qft_count: int
    cutoff_k: int

    def spectrum(self) -> RotationSpectrum:
        """Rotation census: truncated textbook census plus inserted-QFT rotations."""
        base = qft_spectrum(self.n, cutoff_k=self.cutoff_k)
        small = qft_spectrum(self.m)
        counts = dict(base.counts)
        for k, c in small.counts.items():
            counts[k] = counts.get(k, 0) + c * self.inserted_qft_count
        return RotationSpectrum(counts, self.n)

    def all_ops(self):
        for layer in self.layers:
            yield from layer


@dataclass
class TCount:
    t_gates: int
    toffolis: int
    rotations_synthesized: int


@dataclass
class BudgetReport:
    n: int
    total_t: int
    per_t_error_target: float
    eps_rotation: float


def qft_spectrum(n: int, cutoff_k: int | None = None) -> RotationSpectrum:
    """Textbook QFT rotation census for an n-bit register.

    counts(k) = n - k for k = 1 .. n-1; a cutoff c drops every exponent
    k >= c. Total without cutoff is n(n-1)/2.
    """
    if n < 1:
        raise ValueError(f"register size must be >= 1, got {n}")
    kmax = n - 1 if cutoff_k is None else min(n - 1, cutoff_k - 1)
    counts = {k: n - k for k in range(1, kmax + 1)}
    return RotationSpectrum(counts, n)


def oqft_plan(n: int, m: int, cutoff_k: int | None = None) -> OqftPlan:
    """Build the five-layer block plan for an n-bit register in m-bit blocks.

    Block sizes must divide n (no ragged tail) and at least two blocks are
    required. The truncation cutoff equals the block size, which is what
    confines surviving BPRs to adjacent blocks.
    """
    if m < 2:
        raise ValueError(f"block size must be >= 2, got {m}")
    if n % m != 0:
        raise ValueError(f"block size {m} must divide register size {n}")
    b = n // m
    if b < 2:
        raise ValueError(f"need at least two blocks, got n/m = {b}")
    if cutoff_k is None:
        cutoff_k = m
    if cutoff_k != m:
        raise ValueError("truncation cutoff must equal the block size")

    adds = _qft_additions(m)
    opening = [BlockOp(QFT_KIND, (blk,), list(adds)) for blk in range(b)]
    intra = [BlockOp(BPR_KIND, (i, i + 1), list(adds)) for i in range(0, b - 1, 2)]
    inserted = [
        BlockOp(QFT_REFLECTED_KIND if j % 2 else QFT_KIND, (j % b,), list(adds))
        for j in range(b - 2)
    ]
    inter = [BlockOp(BPR_KIND, (i, i + 1), list(adds)) for i in range(1, b - 1, 2)]
    closing = [
        BlockOp(QFT_REFLECTED_KIND if blk % 2 else QFT_KIND, (blk,), [])
        for blk in range(b)
    ]
    layers = [opening, intra, inserted, inter, closing]
    return OqftPlan(n=n, m=m, num_blocks=b, layers=layers,
                    inserted_qft_count=b - 2, cutoff_k=cutoff_k)


def t_per_rotation(eps: float, a: float = SYNTHESIS_A, b: float = SYNTHESIS_B) -> int:
    """T gates to synthesize one Z-rotation to accuracy eps."""
    if not 0 < eps < 1:
        raise ValueError(f"synthesis accuracy must lie in (0, 1), got {eps}")
    return math.ceil(a + b * math.log2(1.0 / eps))


def tcount_synthesis(spec: RotationSpectrum, eps: float) -> TCount:
    """T-count when every rotation is synthesized directly."""
    rot = spec.total
    return TCount(t_gates=rot * t_per_rotation(eps), toffolis=0, rotations_synthesized=rot)


def _additions_for_spectrum(spec: RotationSpectrum) -> list[tuple[bool, int]]:
    """Reconstruct per-target controlled-addition widths of a textbook-shaped census.

    A (possibly truncated) textbook census has counts(k) = n - k up to some
    window size D; target i then takes one controlled addition of width
    min(D, n - 1 - i).
    """
    n = spec.n_bits
    if not spec.counts:
        return []
    window = max(k for k, c in spec.counts.items() if c > 0)
    for k in range(1, window + 1):
        if spec.counts.get(k, 0) != n - k:
            raise ValueError("spectrum is not textbook-shaped; cannot derive addition widths")
    return [(True, min(window, n - 1 - i)) for i in range(n - 1)]


def tcount_pg(plan_or_spectrum, mode: str) -> TCount:
    """T-count through phase-gradient catalysis.

    Rotation angles are irrelevant here: a controlled addition of width w
    costs w Toffolis (logical-AND ripple with controlled semantics), an
    uncontrolled one w - 1, and each Toffoli costs 4 T.
    """
    if mode == "oqft_plan":
        additions = [ad for op in plan_or_spectrum.all_ops() for ad in op.addition_list]
    elif mode == "truncated_qft":
        additions = _additions_for_spectrum(plan_or_spectrum)
    else:
        raise ValueError(f"unknown tcount_pg mode: {mode!r}")
    toffolis = sum((wd if ctrl else wd - 1) for ctrl, wd in additions)
    return TCount(t_gates=T_PER_TOFFOLI * toffolis, toffolis=toffolis,
                  rotations_synthesized=0)


def shor_budget(n: int) -> BudgetReport:
    """Non-Clifford budget of the standard factoring pipeline at register size n.

    2n controlled modular multiplications, each a pair of fast phase-based
    multiplier invocations once the controlled-operation overhead (a factor
    of two in non-Clifford cost) is included.
    """
    if n < 8:
        raise ValueError(f"budget model needs n >= 8, got {n}")
    eps_rotation = 1e-5 / n
    per_mult = MULTIPLIER_TOFFOLIS * T_PER_TOFFOLI + MULTIPLIER_ROTATIONS * t_per_rotation(eps_rotation)
    total_t = int(2 * n * 2 * per_mult)
    return BudgetReport(n=n, total_t=total_t,
                        per_t_error_target=1.0 / total_t,
                        eps_rotation=eps_rotation)


def spectrum_rows(variant: str, spec: RotationSpectrum) -> list[dict]:
    """CSV rows (variant, n, k, count) for one census."""
    return [
        {"variant": variant, "n": spec.n_bits, "k": k, "count": spec.counts[k]}
        for k in sorted(spec.counts)
    ]


def tcount_rows(variant: str, n: int, tc: TCount) -> list[dict]:
    return [{"variant": variant, "n": n, "t_gates": tc.t_gates, "toffolis": tc.toffolis}]
