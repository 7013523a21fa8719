"""Geometric entanglement: distance to the closest separable product state.

E_G = -log2 eta with eta = sup over products |<phi_1 ... phi_n | psi>|^2.
The workhorse is alternating maximization: with all sites but j frozen, the
optimal local state is the normalized partial inner product at site j, so a
sweep over sites never decreases the overlap.  Multi-start with random
product seeds (plus the dominant basis state) and keep the best.

Symmetric states cut the problem to a single Bloch sphere: the closest
product is itself symmetric, phi^n with phi = (cos x, e^(iy) sin x), so the
search runs over two angles.  The default engine is a vectorized adaptive
gradient ascent over many starts; a fixed-point engine driven by the
Majorana points is available as an alternative.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import OrthogonalStartError
from .states import PureState, SymmetricState, majorana_points, root_binomials


@dataclass(frozen=True)
class SeparableProduct:
    """One unit 2-vector per site; rows are normalized on construction."""

    locals_: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.locals_, dtype=np.complex128)
        if v.ndim != 2 or v.shape[1] != 2:
            raise ValueError(f"expected an (n, 2) array, got shape {v.shape}")
        norms = np.linalg.norm(v, axis=1)
        if np.any(norms < 1e-12):
            raise ValueError("local states must be nonzero")
        v = v / norms[:, None]
        v.flags.writeable = False
        object.__setattr__(self, "locals_", v)

    @property
    def n_qubits(self) -> int:
        return len(self.locals_)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "SeparableProduct":
        v = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
        return cls(v)


@dataclass(frozen=True)
class GeomResult:
    eta: float
    e_g: float
    witness: SeparableProduct
    restarts_used: int
    converged: bool


def product_overlap(state: PureState, product: SeparableProduct) -> complex:
    """<product|state> by sequential contraction, O(2^n)."""
    t = state.amplitudes.reshape((2,) * state.n_qubits)
    for local in product.locals_:
        t = np.tensordot(np.conj(local), t, axes=([0], [0]))
    return complex(t)


def _sweep(psi_t: np.ndarray, locs: np.ndarray) -> tuple[np.ndarray, float]:
    """One alternating-maximization pass over all sites.

    Returns updated locals and the (real, nonnegative) overlap afterwards.
    """
    n = psi_t.ndim
    out = np.empty_like(locs)
    g = psi_t  # state with conj of already-updated sites folded in
    for j in range(n):
        t = g
        for k in range(n - 1, j, -1):
            t = t @ np.conj(locs[k])
        nrm = np.linalg.norm(t)
        if nrm < 1e-300:
            raise OrthogonalStartError("partial inner product vanished; restart from a new seed")
        out[j] = t / nrm
        g = np.tensordot(np.conj(out[j]), g, axes=([0], [0]))
    return out, float(np.real(g))


def closest_separable_step(state: PureState, current: SeparableProduct) -> SeparableProduct:
    """One full update sweep; overlap never decreases."""
    if abs(product_overlap(state, current)) <= 1e-14:
        raise OrthogonalStartError("seed product is orthogonal to the state")
    psi_t = state.amplitudes.reshape((2,) * state.n_qubits)
    new, _ = _sweep(psi_t, np.array(current.locals_))
    return SeparableProduct(new)


def _basis_product(state: PureState) -> np.ndarray:
    """Product seed aligned with the largest-amplitude basis state."""
    n = state.n_qubits
    b = int(np.argmax(np.abs(state.amplitudes)))
    locs = np.zeros((n, 2), dtype=np.complex128)
    for j in range(n):
        locs[j, (b >> (n - 1 - j)) & 1] = 1.0
    return locs


def geometric_entanglement(
    state: PureState,
    restarts: int | None = None,
    tol: float = 1e-12,
    seed: int = 0,
    max_iter: int = 500,
) -> GeomResult:
    """Best separable overlap over multi-start alternating maximization."""
    if not isinstance(state, PureState):
        raise ValueError("geometric_entanglement needs a dense PureState; "
                         "use geometric_entanglement_symmetric for SymmetricState inputs")
    n = state.n_qubits
    if restarts is None:
        restarts = 4 + n
    rng = np.random.default_rng(seed)
    psi_t = state.amplitudes.reshape((2,) * n)

    def draw() -> np.ndarray:
        v = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
        return v / np.linalg.norm(v, axis=1)[:, None]

    best = None
    used = 0
    for s in range(restarts + 1):
        locs = _basis_product(state) if s == 0 else draw()
        for _ in range(20):
            t = psi_t
            for local in locs:
                t = np.tensordot(np.conj(local), t, axes=([0], [0]))
            if abs(t) > 1e-14:
                break
            locs = draw()
        used += 1
        eta_prev = -1.0
        ok = False
        for _ in range(max_iter):
            locs, ov = _sweep(psi_t, locs)
            eta = ov * ov
            if eta - eta_prev < tol:
                ok = True
                break
            eta_prev = eta
        if best is None or eta > best[0]:
            best = (eta, locs, ok)
    eta, locs, ok = best
    witness = SeparableProduct(locs)
    eta = abs(product_overlap(state, witness)) ** 2
    return GeomResult(eta=float(eta), e_g=float(-np.log2(eta)), witness=witness, restarts_used=used, converged=ok)


def symmetric_overlap(state: SymmetricState, phi) -> float:
    """|<phi^n|state>|^2 for a single-qubit state phi, O(n)."""
    phi = np.asarray(phi, dtype=np.complex128).reshape(2)
    phi = phi / np.linalg.norm(phi)
    n = state.n_qubits
    j = np.arange(n + 1)
    root_binom = root_binomials(n)
    terms = np.conj(state.coefficients) * root_binom * phi[0] ** (n - j) * phi[1] ** j
    return float(abs(terms.sum()) ** 2)


def _overlap_and_grad(a: np.ndarray, n: int, x: np.ndarray, y: np.ndarray):
    """Vectorized |h|^2 and its (x, y) gradient for K angle pairs.

    a holds conj(c_j) * binom^(1/2); h = sum_j a_j e^(ijy) cos(x)^(n-j) sin(x)^j.
    """
    j = np.arange(n + 1)
    p = np.cos(x)[:, None]
    s = np.sin(x)[:, None]
    phase = np.exp(1j * np.outer(y, j))
    pj = p ** (n - j)
    sj = s**j
    terms = a * phase * pj * sj
    h = terms.sum(axis=1)
    # d/dx of p^(n-j) s^j = j p^(n-j+1) s^(j-1) - (n-j) p^(n-j-1) s^(j+1)
    up = j * p ** (n - j + 1) * s ** np.maximum(j - 1, 0)
    down = (n - j) * p ** np.maximum(n - j - 1, 0) * s ** (j + 1)
    hx = (a * phase * (up - down)).sum(axis=1)
    hy = (terms * (1j * j)).sum(axis=1)
    g = np.abs(h) ** 2
    gx = 2.0 * np.real(np.conj(h) * hx)
    gy = 2.0 * np.real(np.conj(h) * hy)
    return g, gx, gy


def _angles_from_vector(v: np.ndarray) -> tuple[float, float]:
    x = float(np.arctan2(abs(v[1]), abs(v[0])))
    y = float(np.angle(v[1]) - np.angle(v[0]))
    return x, y


def _ascent_engine(state: SymmetricState, restarts: int, tol: float, max_iter: int, seed: int):
    n = state.n_qubits
    j = np.arange(n + 1)
    a = np.conj(state.coefficients) * root_binomials(n)

    grid_x = np.array([0.0, np.pi / 6, np.pi / 3, np.pi / 2])
    grid_y = np.array([0.0, np.pi / 2, np.pi, 3 * np.pi / 2])
    xs = [gx for gx in grid_x for _ in grid_y]
    ys = [gy for _ in grid_x for gy in grid_y]
    try:
        for pt in majorana_points(state).points:
            px, py = _angles_from_vector(pt)
            xs.append(px)
            ys.append(py)
    except np.linalg.LinAlgError:  # root finding failed; grid and random starts remain
        pass
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        px, py = _angles_from_vector(v)
        xs.append(px)
        ys.append(py)

    x = np.asarray(xs)
    y = np.asarray(ys)
    k = len(x)
    step = np.full(k, 0.1)
    g, gx, gy = _overlap_and_grad(a, n, x, y)
    done = np.zeros(k, dtype=bool)
    for _ in range(max_iter):
        act = ~done
        if not act.any():
            break
        nx = x[act] + step[act] * gx[act]
        ny = y[act] + step[act] * gy[act]
        ng, ngx, ngy = _overlap_and_grad(a, n, nx, ny)
        gain = ng - g[act]
        accept = gain >= 0.0
        idx = np.flatnonzero(act)
        ia = idx[accept]
        x[ia] = nx[accept]
        y[ia] = ny[accept]
        g[ia] = ng[accept]
        gx[ia] = ngx[accept]
        gy[ia] = ngy[accept]
        step[ia] *= 1.2
        done[ia] = gain[accept] < tol
        ir = idx[~accept]
        step[ir] *= 0.5
        done[ir] = step[ir] < 1e-14
    best = int(np.argmax(g))
    phi = np.array([np.cos(x[best]), np.exp(1j * y[best]) * np.sin(x[best])])
    return phi, bool(done[best]), k


def _majorana_engine(state: SymmetricState, restarts: int, tol: float, max_iter: int, seed: int):
    """Fixed-point engine phi <- sum_j eps_j / <phi|eps_j> over Majorana points."""
    pts = majorana_points(state).points
    rng = np.random.default_rng(seed)
    starts = [np.array([1.0, 0.0], dtype=np.complex128), np.array([0.0, 1.0], dtype=np.complex128)]
    starts += [p.copy() for p in pts]
    for _ in range(restarts):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        starts.append(v / np.linalg.norm(v))
    best_phi, best_val, best_ok = None, -1.0, False
    # the map converges only linearly (slowly for repeated points), but each
    # step is O(n), so allow many more iterations than the ascent engine gets
    limit = 10 * max_iter
    for phi in starts:
        phi = phi / np.linalg.norm(phi)
        prev = symmetric_overlap(state, phi)
        ok = False
        for _ in range(limit):
            dots = pts @ np.conj(phi)
            if np.min(np.abs(dots)) < 1e-12:
                break
            new = (pts / dots[:, None]).sum(axis=0)
            nrm = np.linalg.norm(new)
            if nrm < 1e-300:
                break
            # damped step: <phi|new> = n > 0, so averaging cannot cancel and it
            # kills the 2-cycles the raw map falls into around repeated points
            phi = phi + new / nrm
            phi = phi / np.linalg.norm(phi)
            cur = symmetric_overlap(state, phi)
            if abs(cur - prev) < tol:
                ok = True
                break
            prev = cur
        val = symmetric_overlap(state, phi)
        if val > best_val:
            best_phi, best_val, best_ok = phi, val, ok
    return best_phi, best_ok, len(starts)


def geometric_entanglement_symmetric(
    state: SymmetricState,
    restarts: int = 8,
    tol: float = 1e-12,
    seed: int = 0,
    engine: str = "ascent",
    max_iter: int = 500,
) -> GeomResult:
    """Geometric entanglement of a symmetric state over the (x, y) sphere."""
    if not isinstance(state, SymmetricState):
        raise ValueError("geometric_entanglement_symmetric needs a SymmetricState")
    if engine == "ascent":
        phi, ok, used = _ascent_engine(state, restarts, tol, max_iter, seed)
    elif engine == "majorana":
        phi, ok, used = _majorana_engine(state, restarts, tol, max_iter, seed)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    eta = symmetric_overlap(state, phi)
    witness = SeparableProduct(np.tile(phi / np.linalg.norm(phi), (state.n_qubits, 1)))
    return GeomResult(eta=float(eta), e_g=float(-np.log2(eta)), witness=witness, restarts_used=used, converged=ok)
