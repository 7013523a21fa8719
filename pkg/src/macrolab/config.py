"""Resource limits and shared error types.

Dense state vectors hold 2**n complex amplitudes, so every entry point that
allocates one checks n against a configurable cap (default 20).  The cap can
be raised or lowered per process via set_dense_cap(), or from the outside
through the MACROLAB_DENSE_CAP environment variable.
"""
from __future__ import annotations

import os

DEFAULT_DENSE_CAP = 20
ENV_DENSE_CAP = "MACROLAB_DENSE_CAP"

_cap_override: int | None = None


class DenseCapExceeded(RuntimeError):
    """Raised when an operation would allocate a dense vector above the cap."""


class OrthogonalStartError(RuntimeError):
    """Raised when a separable seed is orthogonal to the target state."""


def dense_cap() -> int:
    """Current dense-size cap in qubits."""
    if _cap_override is not None:
        return _cap_override
    raw = os.environ.get(ENV_DENSE_CAP)
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise ValueError(f"{ENV_DENSE_CAP} must be an integer, got {raw!r}") from exc
    return DEFAULT_DENSE_CAP


def set_dense_cap(n: int | None) -> None:
    """Override the cap for this process; None restores the default/env value."""
    global _cap_override
    if n is not None:
        n = int(n)
        if n < 1:
            raise ValueError("dense cap must be a positive qubit count")
    _cap_override = n


def check_dense(n: int) -> None:
    """Reject dense allocations beyond the cap with a clear diagnostic."""
    cap = dense_cap()
    if n > cap:
        raise DenseCapExceeded(
            f"dense representation of {n} qubits exceeds the cap of {cap} "
            f"(override with set_dense_cap or {ENV_DENSE_CAP})"
        )
