"""Dense real matrix kernels.

Matrices follow the ‖A‖^i_j convention: row index = upper index, column index = lower index.
"""
import logging

import numpy as np
import scipy.linalg

from .errors import InvalidInputError

log = logging.getLogger(__name__)

RANK_RCOND = 1e-10


def as_square(A, name: str = "matrix") -> np.ndarray:
    """Returns A as a finite float square matrix or raises InvalidInputError."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise InvalidInputError(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return A


def as_vector(v, dim: int = None, name: str = "vector") -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if dim is not None and v.shape[0] != dim:
        raise InvalidInputError(f"{name} must have {dim} components, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError(f"{name} has non-finite components")
    return v


def mat_exp(A) -> np.ndarray:
    """exp(A) by Padé scaling-and-squaring."""
    return scipy.linalg.expm(as_square(A))


def omega_of(A) -> np.ndarray:
    """Ω(A) = (I − exp(−A))·A⁻¹ without inverting A.

    The top-right block of exp([[−A, I], [0, 0]]) equals ∫₀¹ exp(−sA) ds.
    """
    A = as_square(A)
    n = A.shape[0]
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = -A
    block[:n, n:] = np.eye(n)
    return scipy.linalg.expm(block)[:n, n:]


def nullspace(M, rcond: float = RANK_RCOND) -> np.ndarray:
    """Orthonormal basis of ker M as columns.

    Singular values below rcond × (largest singular value) count as zero; a zero map
    has the whole space as kernel.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise InvalidInputError(f"nullspace expects a 2-d map, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInputError("nullspace input has non-finite entries")
    if not np.any(M):
        return np.eye(M.shape[1])
    return scipy.linalg.null_space(M, rcond=rcond)


def ordered_product(factors) -> np.ndarray:
    """F_N···F_1 for factors given as [F_1, …, F_N] (descending exponential order)."""
    factors = list(factors)
    if not factors:
        raise InvalidInputError("ordered_product needs at least one factor")
    out = np.array(factors[-1], dtype=float)
    for F in reversed(factors[:-1]):
        out = out @ F
    return out


def smallest_singular_ratio(J) -> float:
    """σ_min/σ_max of J (0 for a zero matrix)."""
    s = np.linalg.svd(np.asarray(J, dtype=float), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0.0
    return float(s[-1] / s[0])
