"""Seeded generators for random pure-state ensembles.

Every generator is a pure function of its parameters and the stream it is
handed: calling it twice with equal arguments reproduces the state bit for
bit.  Distinct sample indices, ensemble names, etc. should therefore use
distinct child streams rather than sharing one generator object.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .config import check_dense
from .states import PureState, SymmetricState, zeros

__all__ = [
    "RngStream",
    "random_two_qubit_unitary",
    "random_physical_state",
    "random_linear_chain",
    "haar_random_state",
    "random_symmetric_state",
]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """A named, seeded source of randomness.

    The label is hashed into the second Philox key word, so streams with the
    same seed but different labels are statistically independent while staying
    reproducible across runs and platforms.
    """

    seed: int
    label: str = "root"

    def child(self, suffix) -> "RngStream":
        return RngStream(self.seed, f"{self.label}/{suffix}")

    def key_word(self) -> int:
        """The label's 64-bit hash — the second word of the Philox key."""
        tag = hashlib.sha256(self.label.encode()).digest()[:8]
        return int.from_bytes(tag, "little")

    def generator(self) -> np.random.Generator:
        key = [self.seed & _MASK64, self.key_word()]
        return np.random.Generator(np.random.Philox(key=np.array(key, dtype=np.uint64)))


def _as_generator(rng):
    return rng.generator() if isinstance(rng, RngStream) else rng


def _haar_unitary(gen, dim):
    # Ginibre matrix -> QR, then fix the phases of R's diagonal so the
    # factorization is unique and Q is Haar distributed
    g = gen.normal(size=(dim, dim)) + 1j * gen.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_two_qubit_unitary(rng) -> np.ndarray:
    """Haar-distributed 4x4 unitary."""
    return _haar_unitary(_as_generator(rng), 4)


def _apply_two_qubit(amps, n, site_a, site_b, u):
    """Apply a 4x4 unitary to 1-based qubits (site_a, site_b)."""
    psi = amps.reshape((2,) * n)
    out = np.tensordot(u.reshape(2, 2, 2, 2), psi, axes=[(2, 3), (site_a - 1, site_b - 1)])
    return np.moveaxis(out, (0, 1), (site_a - 1, site_b - 1)).reshape(-1)


def random_physical_state(n, k, rng) -> PureState:
    """k random two-qubit gates at random adjacent pairs on a ring.

    Starts from |0...0>; the pair (n, 1) closes the ring.  For each gate the
    pair is drawn first, then the unitary.
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    if k < 0:
        raise ValueError("gate count k must be nonnegative")
    check_dense(n)
    gen = _as_generator(rng)
    amps = zeros(n).amplitudes.copy()
    for _ in range(k):
        i = int(gen.integers(1, n + 1))
        j = i % n + 1
        amps = _apply_two_qubit(amps, n, i, j, _haar_unitary(gen, 4))
    return PureState(n, amps)


def random_linear_chain(n, k, rng) -> PureState:
    """Random gates on the first k nearest-neighbour pairs of an open chain.

    Gates act in order on (1,2), (2,3), ..., (k, k+1), so k = n-1 couples
    every qubit and smaller k leaves the tail in |0>.
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    if not 0 <= k <= n - 1:
        raise ValueError(f"chain prefix k must be in [0, {n - 1}], got {k}")
    check_dense(n)
    gen = _as_generator(rng)
    amps = zeros(n).amplitudes.copy()
    for j in range(1, k + 1):
        amps = _apply_two_qubit(amps, n, j, j + 1, _haar_unitary(gen, 4))
    return PureState(n, amps)


def haar_random_state(n, rng) -> PureState:
    """Haar-random pure state: normalized complex Gaussian amplitudes."""
    check_dense(n)
    gen = _as_generator(rng)
    v = gen.normal(size=2**n) + 1j * gen.normal(size=2**n)
    return PureState(n, v)


def random_symmetric_state(n, rng) -> SymmetricState:
    """Normalized complex Gaussian Dicke coefficients."""
    if n < 2:
        raise ValueError("need at least two qubits")
    gen = _as_generator(rng)
    c = gen.normal(size=n + 1) + 1j * gen.normal(size=n + 1)
    return SymmetricState(n, c)
