"""Pure N-qubit states, dense and permutation-symmetric.

Conventions used throughout the package:

* qubit 1 is the most significant bit of the basis index, so the amplitude
  of |b_1 b_2 ... b_n> sits at index sum_j b_j * 2**(n-j);
* sigma_z |0> = +|0>, i.e. bit value 0 carries eigenvalue +1;
* symmetric states are stored as length n+1 coefficient vectors over the
  Dicke basis |D_j> (j excitations), to_dense() expands them.

Majorana representation: a symmetric state factorizes into n points on the
Bloch sphere, obtained as roots of

    P(z) = sum_j (-1)^j c_j binom(n, j)^(1/2) z^(n-j)

with a root z mapping to the single-qubit state (cos x, e^(iy) sin x) through
z = e^(iy) tan x.  A degree deficit d (leading coefficients c_0..c_{d-1}
vanishing) contributes d points fixed at |1>.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .config import check_dense

_NORM_EPS = 1e-12


def root_binomials(n: int) -> np.ndarray:
    """sqrt(binom(n, j)) for j = 0..n as float64 (exact comb, then sqrt)."""
    return np.sqrt(np.array([comb(n, j) for j in range(n + 1)], dtype=np.float64))


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=np.complex128)
    norm = np.linalg.norm(out)
    if norm < _NORM_EPS:
        raise ValueError("state vector has vanishing norm")
    out = out / norm
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class PureState:
    """Dense pure state of n_qubits qubits; amplitudes are kept unit-norm."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = self.n_qubits
        if n < 1:
            raise ValueError("need at least one qubit")
        amps = np.asarray(self.amplitudes)
        if amps.shape != (2**n,):
            raise ValueError(f"expected {2**n} amplitudes for {n} qubits, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", _freeze(amps))

    def fingerprint(self) -> str:
        """Short stable digest of the amplitude bytes."""
        import hashlib

        return hashlib.sha1(self.amplitudes.tobytes()).hexdigest()[:16]


@dataclass(frozen=True)
class SymmetricState:
    """Permutation-symmetric state given by Dicke coefficients c_0..c_n."""

    n_qubits: int
    coefficients: np.ndarray

    def __post_init__(self):
        n = self.n_qubits
        if n < 1:
            raise ValueError("need at least one qubit")
        c = np.asarray(self.coefficients)
        if c.shape != (n + 1,):
            raise ValueError(f"expected {n + 1} Dicke coefficients, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coefficients", _freeze(c))

    def fingerprint(self) -> str:
        import hashlib

        return hashlib.sha1(self.coefficients.tobytes()).hexdigest()[:16]


@dataclass(frozen=True)
class MajoranaPoints:
    """Bloch-sphere factorization of a symmetric state.

    points holds one unit 2-vector per qubit; the first pole_count of them
    were placed at |1> by the degree-deficit rule rather than by root finding.
    """

    points: np.ndarray
    pole_count: int

    @property
    def n_qubits(self) -> int:
        return len(self.points)


def zeros(n: int) -> PureState:
    """|0...0> on n qubits."""
    amps = np.zeros(2**n)
    amps[0] = 1.0
    check_dense(n)
    return PureState(n, amps)


def ones(n: int) -> PureState:
    """|1...1> on n qubits."""
    amps = np.zeros(2**n)
    amps[-1] = 1.0
    check_dense(n)
    return PureState(n, amps)


_BELLS = {
    "phi+": (0, 3, 1.0),
    "phi-": (0, 3, -1.0),
    "psi+": (1, 2, 1.0),
    "psi-": (1, 2, -1.0),
}


def bell(kind: str = "psi-") -> PureState:
    """Two-qubit Bell state; kind is one of phi+/phi-/psi+/psi-."""
    if kind not in _BELLS:
        raise ValueError(f"unknown Bell state {kind!r}")
    i, j, sign = _BELLS[kind]
    amps = np.zeros(4)
    amps[i] = 1.0
    amps[j] = sign
    return PureState(2, amps)


def ghz(n: int) -> SymmetricState:
    """(|0...0> + |1...1>)/sqrt(2) as a symmetric state."""
    if n < 2:
        raise ValueError("ghz needs n >= 2")
    c = np.zeros(n + 1)
    c[0] = c[n] = 1.0
    return SymmetricState(n, c)


def dicke(n: int, j: int) -> SymmetricState:
    """Dicke state with j excitations among n qubits."""
    if not 0 <= j <= n:
        raise ValueError(f"excitation number {j} outside 0..{n}")
    c = np.zeros(n + 1)
    c[j] = 1.0
    return SymmetricState(n, c)


def xi_state(n: int, theta: float, epsilon: float) -> SymmetricState:
    """Superposition of |0>^n with a rotated product state.

    The unnormalized vector is cos(theta) |0>^n + sin(theta) |e>^n where
    |e> = cos(epsilon)|0> + sin(epsilon)|1>; interpolates from a product
    state at theta = 0 to GHZ at (pi/4, pi/2).
    """
    theta = float(theta)
    epsilon = float(epsilon)
    if not (np.isfinite(theta) and np.isfinite(epsilon)):
        raise ValueError("theta and epsilon must be finite")
    if not -1e-9 <= theta <= np.pi / 4 + 1e-9:
        raise ValueError("theta outside [0, pi/4]")
    if not -1e-9 <= epsilon <= np.pi + 1e-9:
        raise ValueError("epsilon outside [0, pi]")
    j = np.arange(n + 1)
    root_binom = root_binomials(n)
    # integer exponents keep cos(epsilon)**(n-j) well defined for epsilon > pi/2
    c = np.sin(theta) * root_binom * np.power(np.cos(epsilon), n - j) * np.power(np.sin(epsilon), j)
    c[0] += np.cos(theta)
    if np.linalg.norm(c) < _NORM_EPS:
        raise ValueError("xi parameters give a vanishing state vector")
    return SymmetricState(n, c)


def tensor(a: PureState, b: PureState) -> PureState:
    """Tensor product, qubits of a before (more significant than) b."""
    n = a.n_qubits + b.n_qubits
    check_dense(n)
    return PureState(n, np.kron(a.amplitudes, b.amplitudes))


def ghz_ones(n1: int, n2: int) -> PureState:
    """GHZ on the first n1 qubits tensored with |1>^n2."""
    g = to_dense(ghz(n1))
    if n2 == 0:
        return g
    return tensor(g, ones(n2))


def bell_product(n: int) -> PureState:
    """n/2 singlet pairs side by side; n must be even."""
    if n < 2 or n % 2:
        raise ValueError("bell_product needs an even n >= 2")
    out = bell("psi-")
    for _ in range(n // 2 - 1):
        out = tensor(out, bell("psi-"))
    return out


def to_dense(s) -> PureState:
    """Expand Dicke coefficients into the full 2**n amplitude vector.

    Dense states pass through unchanged.
    """
    if isinstance(s, PureState):
        return s
    n = s.n_qubits
    check_dense(n)
    factor = s.coefficients / root_binomials(n)
    pops = np.bitwise_count(np.arange(2**n, dtype=np.uint64)).astype(np.intp)
    return PureState(n, factor[pops])


def majorana_points(s: SymmetricState) -> MajoranaPoints:
    """Factor a symmetric state into its n Bloch-sphere points."""
    n = s.n_qubits
    c = s.coefficients
    j = np.arange(n + 1)
    # descending powers of z: entry j multiplies z**(n-j)
    poly = ((-1.0) ** j) * c * root_binomials(n)
    cut = 1e-12 * np.max(np.abs(poly))
    deficit = 0
    while deficit <= n and abs(poly[deficit]) <= cut:
        deficit += 1
    points = np.zeros((n, 2), dtype=np.complex128)
    points[:deficit, 1] = 1.0
    if deficit <= n - 1:
        roots = np.roots(poly[deficit:])
        x = np.arctan(np.abs(roots))
        y = np.angle(roots)
        points[deficit:, 0] = np.cos(x)
        points[deficit:, 1] = np.exp(1j * y) * np.sin(x)
    pts = points  # one row per qubit, unit rows
    pts.flags.writeable = False
    return MajoranaPoints(pts, deficit)


def from_majorana(points) -> SymmetricState:
    """Rebuild the symmetric state whose Majorana points are given.

    Accepts a MajoranaPoints instance or an (n, 2) array of unit 2-vectors.
    Inverse of majorana_points up to global phase.
    """
    pts = np.asarray(points.points if isinstance(points, MajoranaPoints) else points, dtype=np.complex128)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("expected an (n, 2) array of single-qubit states")
    n = len(pts)
    poly = np.ones(1, dtype=np.complex128)
    for a, b in pts:
        poly = np.convolve(poly, [a, -b])
    j = np.arange(n + 1)
    c = ((-1.0) ** j) * poly / root_binomials(n)
    return SymmetricState(n, c)
