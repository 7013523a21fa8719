"""Additive spin observables and their fluctuation covariance matrices.

For an orientation field alpha (one 3-vector per qubit) the observable is
S(alpha) = sum_j alpha_j . sigma_j.  Its variance is the quadratic form
alpha^T V alpha where V is the 3N x 3N covariance matrix of single-site
Pauli fluctuations, V[(k,gamma),(j,beta)] = <d sigma^gamma_k d sigma^beta_j>.
V is Hermitian; only its real symmetric part enters the quadratic form for
real alpha, so that part is what gets stored (the raw matrix is kept too).

Layout: row/column index 3*(site-1) + axis with axes ordered x, y, z.

Symmetric states admit an O(n) route: by permutation symmetry V consists of
a same-site 3x3 block A and a cross-site block B, and the variance of a
uniform orientation is governed by v_sym = A + (n-1)B.  A and B follow from
single-site and two-site Pauli expectations evaluated with collective spin
operators in the Dicke basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

AXES = "xyz"

# memory budget for caching all 3n applied vectors during build_vcm
_CACHE_BYTES = 256 * 2**20

# (gamma, beta) -> (sign, delta) with sigma^gamma sigma^beta = delta_gb + i*sign*sigma^delta
_EPS = {(0, 1): (1, 2), (1, 0): (-1, 2), (1, 2): (1, 0), (2, 1): (-1, 0), (2, 0): (1, 1), (0, 2): (-1, 1)}


def _axis(a) -> int:
    if isinstance(a, str):
        a = a.lower()
        if a in AXES:
            return AXES.index(a)
        raise ValueError(f"unknown axis {a!r}")
    a = int(a)
    if a not in (0, 1, 2):
        raise ValueError(f"axis index {a} outside 0..2")
    return a


@dataclass(frozen=True)
class SpinOrientation:
    """Per-qubit orientation vectors alpha_j.

    mode 'strict' requires unit rows (|alpha_j| = 1); mode 'relaxed' only
    constrains the total weight sum_j |alpha_j|^2 = n.
    """

    vectors: np.ndarray
    mode: str = "strict"

    def __post_init__(self):
        v = np.ascontiguousarray(self.vectors, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != 3:
            raise ValueError(f"expected an (n, 3) array, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("orientation vectors must be finite")
        if self.mode == "strict":
            norms = np.linalg.norm(v, axis=1)
            if np.max(np.abs(norms - 1.0)) > 1e-12:
                raise ValueError("strict mode needs unit rows within 1e-12")
        elif self.mode == "relaxed":
            if abs(np.sum(v * v) - len(v)) > 1e-9:
                raise ValueError("relaxed mode needs total weight n within 1e-9")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)

    @property
    def n_qubits(self) -> int:
        return len(self.vectors)

    @classmethod
    def uniform(cls, n: int, direction=(0.0, 0.0, 1.0)) -> "SpinOrientation":
        d = np.asarray(direction, dtype=np.float64)
        d = d / np.linalg.norm(d)
        return cls(np.tile(d, (n, 1)))

    @classmethod
    def all_z(cls, n: int) -> "SpinOrientation":
        return cls.uniform(n, (0.0, 0.0, 1.0))

    @classmethod
    def all_x(cls, n: int) -> "SpinOrientation":
        return cls.uniform(n, (1.0, 0.0, 0.0))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "SpinOrientation":
        v = rng.normal(size=(n, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        return cls(v)


@dataclass(frozen=True)
class Vcm:
    """Covariance matrix of Pauli fluctuations for a dense state."""

    matrix: np.ndarray          # real symmetric part, 3n x 3n
    raw: np.ndarray = field(repr=False, default=None)  # Hermitian original
    built_from: str = ""

    @property
    def n_qubits(self) -> int:
        return self.matrix.shape[0] // 3


@dataclass(frozen=True)
class SymmetricVcm:
    """Same-site block A, cross-site block B and v_sym = A + (n-1) B."""

    n_qubits: int
    a_block: np.ndarray
    b_block: np.ndarray
    v_sym: np.ndarray


def _apply_pauli(amps: np.ndarray, n: int, site: int, axis: int) -> np.ndarray:
    """sigma^axis on qubit `site` (1-based, MSB first), O(2^n)."""
    view = amps.reshape(2 ** (site - 1), 2, -1)
    out = np.empty_like(view)
    if axis == 0:
        out[:, 0] = view[:, 1]
        out[:, 1] = view[:, 0]
    elif axis == 1:
        out[:, 0] = -1j * view[:, 1]
        out[:, 1] = 1j * view[:, 0]
    else:
        out[:, 0] = view[:, 0]
        out[:, 1] = -view[:, 1]
    return out.reshape(-1)


def _check_site(n: int, site: int) -> None:
    if not 1 <= site <= n:
        raise ValueError(f"site {site} outside 1..{n}")


def pauli_expectation(state, site: int, axis) -> float:
    """<sigma^axis_site> for a dense PureState."""
    n = state.n_qubits
    _check_site(n, site)
    a = _axis(axis)
    view = state.amplitudes.reshape(2 ** (site - 1), 2, -1)
    a0, a1 = view[:, 0], view[:, 1]
    if a == 2:
        return float(np.sum(np.abs(a0) ** 2) - np.sum(np.abs(a1) ** 2))
    inner = np.sum(np.conj(a0) * a1)
    return float(2 * inner.real) if a == 0 else float(2 * inner.imag)


def pauli_correlation(state, site_k: int, site_j: int, gamma, beta) -> complex:
    """Covariance <d sigma^gamma_k d sigma^beta_j>; complex on equal sites."""
    n = state.n_qubits
    _check_site(n, site_k)
    _check_site(n, site_j)
    g, b = _axis(gamma), _axis(beta)
    mk = pauli_expectation(state, site_k, g)
    mj = pauli_expectation(state, site_j, b)
    if site_k == site_j:
        if g == b:
            prod = 1.0 + 0j
        else:
            sign, delta = _EPS[(g, b)]
            prod = 1j * sign * pauli_expectation(state, site_k, delta)
    else:
        wk = _apply_pauli(state.amplitudes, n, site_k, g)
        wj = _apply_pauli(state.amplitudes, n, site_j, b)
        prod = np.vdot(wk, wj)
    return complex(prod - mk * mj)


def additive_variance(state, alpha) -> float:
    """Variance of S(alpha) on a dense state, O(n 2^n)."""
    vecs = alpha.vectors if isinstance(alpha, SpinOrientation) else np.asarray(alpha, dtype=np.float64)
    n = state.n_qubits
    if vecs.shape != (n, 3):
        raise ValueError(f"orientation shape {vecs.shape} does not match {n} qubits")
    psi = state.amplitudes
    phi = np.zeros_like(psi)
    for j in range(n):
        for ax in range(3):
            w = vecs[j, ax]
            if w != 0.0:
                phi += w * _apply_pauli(psi, n, j + 1, ax)
    mean = np.vdot(psi, phi).real
    return float(np.vdot(phi, phi).real - mean * mean)


def build_vcm(state) -> Vcm:
    """Full 3n x 3n covariance matrix of a dense state, O(n^2 2^n)."""
    n = state.n_qubits
    psi = state.amplitudes
    dim = 3 * n
    if dim * psi.size * 16 <= _CACHE_BYTES:
        w = np.empty((dim, psi.size), dtype=np.complex128)
        for j in range(n):
            for ax in range(3):
                w[3 * j + ax] = _apply_pauli(psi, n, j + 1, ax)
        means = (w @ np.conj(psi)).real
        gram = np.conj(w) @ w.T
    else:
        means = np.empty(dim)
        for j in range(n):
            for ax in range(3):
                means[3 * j + ax] = pauli_expectation(state, j + 1, ax)
        gram = np.empty((dim, dim), dtype=np.complex128)
        for k in range(n):
            wk = np.stack([_apply_pauli(psi, n, k + 1, ax) for ax in range(3)])
            for j in range(k, n):
                wj = wk if j == k else np.stack([_apply_pauli(psi, n, j + 1, ax) for ax in range(3)])
                block = np.conj(wk) @ wj.T
                gram[3 * k : 3 * k + 3, 3 * j : 3 * j + 3] = block
                if j != k:
                    gram[3 * j : 3 * j + 3, 3 * k : 3 * k + 3] = block.conj().T
    raw = gram - np.outer(means, means)
    sym = raw.real.copy()
    sym = (sym + sym.T) / 2.0
    return Vcm(matrix=sym, raw=raw, built_from=state.fingerprint())


def _collective_vectors(c: np.ndarray):
    """Jx c, Jy c, Jz c in the Dicke basis (j = excitation count)."""
    n = len(c) - 1
    j = np.arange(n + 1, dtype=np.float64)
    jz = (n - 2 * j) / 2.0 * c
    jp = np.zeros_like(c)
    jm = np.zeros_like(c)
    jp[:-1] = np.sqrt(j[1:] * (n - j[1:] + 1)) * c[1:]
    jm[1:] = np.sqrt((n - j[:-1]) * (j[:-1] + 1)) * c[:-1]
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    return jx, jy, jz


def symmetric_site_expectations(state) -> np.ndarray:
    """(<sigma^x_1>, <sigma^y_1>, <sigma^z_1>) of a SymmetricState."""
    c = state.coefficients
    n = state.n_qubits
    vecs = _collective_vectors(c)
    return np.array([2.0 * np.vdot(c, v).real / n for v in vecs])


def symmetric_pair_correlations(state) -> np.ndarray:
    """3x3 matrix of <sigma^gamma_1 sigma^beta_2> for a SymmetricState."""
    n = state.n_qubits
    if n < 2:
        return np.zeros((3, 3))
    vecs = _collective_vectors(state.coefficients)
    e = np.empty((3, 3))
    for g in range(3):
        for b in range(3):
            e[g, b] = np.vdot(vecs[g], vecs[b]).real
    return (4.0 * e - n * np.eye(3)) / (n * (n - 1))


def build_symmetric_vcm(state) -> SymmetricVcm:
    """A, B and v_sym for a SymmetricState in O(n)."""
    n = state.n_qubits
    m = symmetric_site_expectations(state)
    a_block = np.eye(3) - np.outer(m, m)
    b_block = symmetric_pair_correlations(state) - np.outer(m, m)
    v = a_block + (n - 1) * b_block
    v = (v + v.T) / 2.0
    for arr in (a_block, b_block, v):
        arr.flags.writeable = False
    return SymmetricVcm(n_qubits=n, a_block=a_block, b_block=b_block, v_sym=v)
