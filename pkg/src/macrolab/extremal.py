"""Closed-form extremal results.

Two groups live here: analytic macroscopicity / entanglement values along the
two special lines of the xi(theta, epsilon) interpolation family, and the
greedy spin-pair construction bounding how macroscopic a state can be when its
best product overlap is capped at eta.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .macroscopicity import normalize
from .observables import build_symmetric_vcm
from .states import SymmetricState, xi_state

__all__ = [
    "EtaMaxSpec",
    "eta_max_spec",
    "eta_max_bound",
    "realize_symmetric",
    "xi_macroscopicity_analytic",
    "xi_geometric_analytic",
]

_MODES = ("general", "symmetric")
_MAX_SLOTS = 1 << 22


@dataclass(frozen=True)
class EtaMaxSpec:
    """Explicit slot filling for the overlap-capped variance maximizer.

    filled_pairs lists one entry per occupied component: the label names a
    spin sector ("S=+4") in general mode or a Dicke level ("k=0") in symmetric
    mode, and the weight is that component's probability (at most eta).
    Opposite-spin components are filled in equal pairs so the mean spin
    vanishes and the variance is just the weighted sum of S**2.
    """

    n: int
    eta: float
    mode: str
    filled_pairs: tuple


def _slot_value(n, mode, label):
    kind, num = label.split("=")
    if kind == "S":
        return int(num)
    return n - 2 * int(num)


def eta_max_spec(n, eta, mode="general") -> EtaMaxSpec:
    """Greedy plan: fill (S, -S) pairs from the largest |S| down.

    Each component may carry at most eta of probability; sectors hold one slot
    per Dicke level in symmetric mode and binom(n, (n+S)/2) slots in general
    mode.  Any remainder below a full pair lands on the next unfilled pair (or
    on an S = 0 slot once the paired sectors are exhausted).
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}")
    if not 0.0 < eta <= 0.5 + 1e-12:
        raise ValueError("eta must lie in (0, 1/2]")
    floor_eta = 1.0 / (n + 1) if mode == "symmetric" else 0.5**n
    if eta < floor_eta * (1.0 - 1e-12):
        raise ValueError(
            f"eta={eta:g} is infeasible for n={n} {mode} states: "
            f"every component is capped at eta, so eta >= {floor_eta:g} is required"
        )
    if 1.0 / eta > _MAX_SLOTS:
        raise RuntimeError(f"explicit slot listing needs more than {_MAX_SLOTS} entries")

    entries = []
    remaining = 1.0
    # sectors in decreasing |S|; each tuple is (positive label, mirror label,
    # number of slot pairs in the sector)
    sectors = []
    if mode == "symmetric":
        for k in range((n + 1) // 2):
            sectors.append((f"k={k}", f"k={n - k}", 1))
        zero_cap = 1 if n % 2 == 0 else 0
        zero_label = f"k={n // 2}"
    else:
        for s in range(n, 0, -2):
            sectors.append((f"S=+{s}", f"S=-{s}", comb(n, (n + s) // 2)))
        zero_cap = comb(n, n // 2) if n % 2 == 0 else 0
        zero_label = "S=0"

    for pos, neg, cap in sectors:
        if remaining <= 1e-15:
            break
        pairs = min(cap, int((remaining + 1e-12) // (2.0 * eta)))
        for _ in range(pairs):
            entries.append((pos, eta))
            entries.append((neg, eta))
        remaining -= 2.0 * eta * pairs
        if remaining > 1e-15 and pairs < cap:
            entries.append((pos, remaining / 2.0))
            entries.append((neg, remaining / 2.0))
            remaining = 0.0
            break
    if remaining > 1e-15:
        # only the unpaired S = 0 sector is left; it cannot add variance
        slots = min(zero_cap, int((remaining + 1e-12) // eta))
        for _ in range(slots):
            entries.append((zero_label, eta))
        remaining -= eta * slots
        if remaining > 1e-15:
            entries.append((zero_label, remaining))
    return EtaMaxSpec(n, float(eta), mode, tuple(entries))


def eta_max_bound(spec: EtaMaxSpec):
    """(m_tilde, m_norm) of the planned filling: variance of the spin sum."""
    m_tilde = 0.0
    for label, w in spec.filled_pairs:
        m_tilde += w * _slot_value(spec.n, spec.mode, label) ** 2
    return m_tilde, normalize(m_tilde, spec.n)


def realize_symmetric(spec: EtaMaxSpec) -> SymmetricState:
    """Build the symmetric-mode plan as an explicit state (phases set to 0)."""
    if spec.mode != "symmetric":
        raise ValueError("only symmetric-mode plans correspond to Dicke states")
    w = np.zeros(spec.n + 1)
    for label, weight in spec.filled_pairs:
        w[int(label.split("=")[1])] += weight
    return SymmetricState(spec.n, np.sqrt(w))


def xi_macroscopicity_analytic(n, theta, epsilon):
    """Normalized macroscopicity of xi_state(n, theta, epsilon).

    The two studied lines have closed forms; elsewhere the value comes from
    the largest eigenvalue of the 3x3 collective covariance block.
    """
    if abs(epsilon - np.pi / 2.0) < 1e-12:
        return np.sqrt((max(1.0, n * np.sin(2.0 * theta) ** 2) - 1.0) / (n - 1.0))
    if abs(theta - np.pi / 4.0) < 1e-12:
        return np.sqrt(np.sin(epsilon) ** 2 / (1.0 + np.cos(epsilon) ** n))
    v = build_symmetric_vcm(xi_state(n, theta, epsilon)).v_sym
    lam = float(np.linalg.eigvalsh(v)[-1])
    return normalize(n * lam, n)


def xi_geometric_analytic(n, theta):
    """Geometric entanglement -log2(cos^2 theta) on the epsilon = pi/2 line."""
    if not -1e-12 <= theta <= np.pi / 4.0 + 1e-12:
        raise ValueError("theta must lie in [0, pi/4]")
    return -np.log2(np.cos(theta) ** 2)
