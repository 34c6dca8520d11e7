"""Exponential of small dense complex matrices."""
from __future__ import annotations

import math

import numpy as np

_TERM_RTOL = 1e-16
_MAX_TERMS = 60


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by truncated Taylor series with scaling and squaring.

    The argument is scaled by ``2**-j`` until its 1-norm is at most 1/2; the
    series is summed until the next term is below 1e-16 of the running sum,
    and the result is squared ``j`` times.
    """
    a = np.asarray(a, dtype=complex)
    norm = np.linalg.norm(a, 1)
    j = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    x = a / 2.0**j

    n = x.shape[0]
    total = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, _MAX_TERMS):
        term = term @ x / k
        total = total + term
        if np.abs(term).max() <= _TERM_RTOL * np.abs(total).max():
            break
    for _ in range(j):
        total = total @ total
    return total
