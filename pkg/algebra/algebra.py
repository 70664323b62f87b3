import logging
from dataclasses import replace
from typing import List, Sequence, Tuple

import numpy as np

from numerics.errors import AlgebraValidationError, InvalidInputError
from numerics.numerics import as_square, as_vector, nullspace
from .models import LieAlgebra, StructureConstants, ValidationReport, Violation

log = logging.getLogger(__name__)

JACOBI_TOL = 1e-12
MAX_CONDITION = 1e12
MAX_REPORTED = 10


def _scale(tensor: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(tensor))) if tensor.size else 1.0)


def validate(constants) -> ValidationReport:
    """Checks exact antisymmetry and the Jacobi identity."""
    if not isinstance(constants, StructureConstants):
        constants = StructureConstants(constants)
    C = constants.tensor
    n = constants.dim
    violations: List[Violation] = []
    total = 0

    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                if C[k, i, j] != -C[k, j, i]:
                    total += 1
                    if len(violations) < MAX_REPORTED:
                        violations.append(Violation("antisymmetry", (k + 1, i + 1, j + 1),
                                                    float(abs(C[k, i, j] + C[k, j, i]))))

    jacobi = (np.einsum("mij,lmk->lijk", C, C)
              + np.einsum("mjk,lmi->lijk", C, C)
              + np.einsum("mki,lmj->lijk", C, C))
    tol = JACOBI_TOL * _scale(C) ** 2
    worst = np.max(np.abs(jacobi), axis=0)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if worst[i, j, k] > tol:
                    total += 1
                    if len(violations) < MAX_REPORTED:
                        violations.append(Violation("jacobi", (i + 1, j + 1, k + 1), float(worst[i, j, k])))

    report = ValidationReport(violations, total)
    if not report.ok:
        log.debug("Validation failed: %s", report.summary())
    return report


def make_algebra(constants, labels: Sequence[str] = (), name: str = "") -> LieAlgebra:
    """Validated LieAlgebra; raises AlgebraValidationError with the report."""
    if not isinstance(constants, StructureConstants):
        constants = StructureConstants(constants)
    report = validate(constants)
    if not report.ok:
        raise AlgebraValidationError(report)
    return LieAlgebra(constants, tuple(labels), name=name)


def ad_of(alg: LieAlgebra, v) -> np.ndarray:
    """Matrix of ad_v = v^k ad e_k."""
    v = as_vector(v, alg.dim, "algebra vector")
    return np.tensordot(v, alg.ad_basis, axes=1)


def bracket(alg: LieAlgebra, u, v) -> np.ndarray:
    """[u, v]^k = C^k_ij u^i v^j."""
    u = as_vector(u, alg.dim, "algebra vector")
    v = as_vector(v, alg.dim, "algebra vector")
    return np.einsum("kij,i,j->k", alg.tensor, u, v)


def stacked_ad_map(alg: LieAlgebra) -> np.ndarray:
    """The n·n × n matrix whose column i is vec(ad e_i)."""
    n = alg.dim
    return alg.ad_basis.reshape(n, n * n).T


def _normalize_sign(v: np.ndarray) -> np.ndarray:
    pivot = np.argmax(np.abs(v))
    return -v if v[pivot] < 0 else v


def center(alg: LieAlgebra) -> List[np.ndarray]:
    """Orthonormal basis of the center ker ad."""
    Z = nullspace(stacked_ad_map(alg))
    return [_normalize_sign(Z[:, i]) for i in range(Z.shape[1])]


def central_basis_indices(alg: LieAlgebra) -> List[int]:
    """Basis vectors whose ad matrix vanishes."""
    tol = JACOBI_TOL * _scale(alg.tensor)
    return [k for k in range(alg.dim) if np.max(np.abs(alg.ad_basis[k]), initial=0.0) <= tol]


def split_indices(alg: LieAlgebra) -> Tuple[List[int], List[int]]:
    """(non-central, central) basis indices.

    Requires the center to be spanned by basis vectors, as it is after center_adapted
    or adapted_basis.
    """
    central = list(alg.center_indices) or central_basis_indices(alg)
    if len(central) != len(center(alg)):
        raise InvalidInputError("the center is not spanned by basis vectors; use center_adapted first")
    central_set = set(central)
    return [i for i in range(alg.dim) if i not in central_set], sorted(central)


def _label(alg: LieAlgebra, column: np.ndarray) -> str:
    nonzero = np.flatnonzero(column)
    if len(nonzero) == 1 and column[nonzero[0]] == 1.0:
        return alg.labels[nonzero[0]]
    terms = []
    for i in nonzero:
        c = column[i]
        terms.append(alg.labels[i] if c == 1.0 else f"{c:g}*{alg.labels[i]}")
    return " + ".join(terms)


def change_basis(alg: LieAlgebra, A) -> LieAlgebra:
    """New basis f_i = A^j_i e_j; C'^k_ij = (A⁻¹)^k_m C^m_pq A^p_i A^q_j."""
    A = as_square(A, "basis change")
    if A.shape[0] != alg.dim:
        raise InvalidInputError(f"basis change must be {alg.dim}×{alg.dim}, got {A.shape}")
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise InvalidInputError(f"basis change is singular (condition number {cond:.3e})")
    A_inv = np.linalg.inv(A)
    C = np.einsum("km,mpq,pi,qj->kij", A_inv, alg.tensor, A, A)
    C = 0.5 * (C - np.transpose(C, (0, 2, 1)))
    C[np.abs(C) < 1e-15 * _scale(C)] = 0.0
    new = make_algebra(C, [_label(alg, A[:, i]) for i in range(alg.dim)], alg.name)
    return replace(new, provenance=alg.source_basis @ A)


def reorder(alg: LieAlgebra, order: Sequence[int]) -> LieAlgebra:
    """Permutes the basis: f_i = e_{order[i]} (0-based)."""
    order = list(order)
    if sorted(order) != list(range(alg.dim)):
        raise InvalidInputError(f"{order} is not a permutation of 0..{alg.dim - 1}")
    return change_basis(alg, np.eye(alg.dim)[:, order])


def is_independent(columns: List[np.ndarray], candidate: np.ndarray) -> bool:
    if not columns:
        return bool(np.any(candidate))
    M = np.column_stack(columns + [candidate])
    return np.linalg.matrix_rank(M, tol=1e-10 * max(1.0, np.linalg.norm(M))) == len(columns) + 1


def center_adapted(alg: LieAlgebra) -> LieAlgebra:
    """Moves a basis of the center to the highest indices; idempotent."""
    n = alg.dim
    Z = center(alg)
    k = len(Z)
    if k == 0:
        return replace(alg, center_indices=())
    zero_ad = central_basis_indices(alg)
    if zero_ad == list(range(n - k, n)):
        return replace(alg, center_indices=tuple(range(n - k, n)))

    identity = np.eye(n)
    central = [identity[:, i] for i in zero_ad]
    for v in Z:
        if len(central) == k:
            break
        if is_independent(central, v):
            central.append(v)
    complement: List[np.ndarray] = []
    for i in range(n):
        if len(complement) == n - k:
            break
        if is_independent(central + complement, identity[:, i]):
            complement.append(identity[:, i])
    A = np.column_stack(complement + central)
    log.info("Center-adapting %s: center dimension %d", alg.name or "algebra", k)
    return replace(change_basis(alg, A), center_indices=tuple(range(n - k, n)))
