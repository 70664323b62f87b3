"""Isotropy subalgebras and the transitive action on the coset space H\\G.

In the adapted basis the coset coordinates q occupy indices 0..m-1 and the
subalgebra the remaining ones, so g_{(q, y)} = Π exp(y^β f_β)·Π exp(q^a f_a).
"""
import logging
from dataclasses import dataclass, replace
from typing import List, Sequence

import numpy as np

from algebra.algebra import bracket, center, central_basis_indices, change_basis, is_independent
from algebra.models import LieAlgebra
from composition.composition import compose
from coords.coords import to_second
from frames.frames import Chart, GroupPoint, xi_second
from numerics.config import SolverConfig
from numerics.errors import InvalidInputError, InvalidSubalgebraError
from numerics.numerics import as_vector, nullspace

log = logging.getLogger(__name__)

CLOSURE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Subalgebra:
    span: np.ndarray            # columns span 𝔥
    closure_residual: float

    @property
    def dim(self) -> int:
        return self.span.shape[1]

    def vectors(self) -> List[np.ndarray]:
        return [self.span[:, i] for i in range(self.dim)]


@dataclass(frozen=True, eq=False)
class HomogeneousModel:
    source: LieAlgebra
    adapted: LieAlgebra
    m: int
    transform: np.ndarray       # columns: adapted basis in the source basis
    subalgebra: Subalgebra


@dataclass(frozen=True, eq=False)
class ActionResult:
    psi: np.ndarray             # Ψ(q, z)
    factor: np.ndarray          # coordinates of h(q, z) ∈ H
    residual: float

    def as_dict(self) -> dict:
        return {"psi": self.psi.tolist(), "factor": self.factor.tolist(), "residual": self.residual}


def subalgebra(alg: LieAlgebra, vectors: Sequence) -> Subalgebra:
    """Checks that vectors are independent and their span is closed under the bracket."""
    n = alg.dim
    vectors = [as_vector(v, n, "subalgebra vector") for v in vectors]
    if not vectors:
        return Subalgebra(np.zeros((n, 0)), 0.0)
    V = np.column_stack(vectors)
    if np.linalg.matrix_rank(V, tol=1e-10 * max(1.0, np.linalg.norm(V))) != len(vectors):
        raise InvalidSubalgebraError("subalgebra vectors are linearly dependent")
    if len(vectors) >= n:
        raise InvalidSubalgebraError(f"isotropy subalgebra must be proper, got dimension {len(vectors)} of {n}")

    worst = 0.0
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            b = bracket(alg, vectors[i], vectors[j])
            coefficients = np.linalg.lstsq(V, b, rcond=None)[0]
            worst = max(worst, float(np.linalg.norm(V @ coefficients - b)))
    if worst > CLOSURE_TOL * max(1.0, float(np.max(np.abs(V))) ** 2):
        raise InvalidSubalgebraError(f"span is not closed under the bracket (residual {worst:.3e})")
    return Subalgebra(V, worst)


def _center_part(alg: LieAlgebra, h: Subalgebra) -> List[np.ndarray]:
    """Basis of 𝔥 ∩ 𝔷 expressed in the source basis."""
    Z = center(alg)
    if not Z:
        return []
    Zm = np.column_stack(Z)
    kernel = nullspace(np.hstack([h.span, -Zm]))
    out = []
    for c in kernel.T:
        v = Zm @ c[h.dim:]
        pivot = np.argmax(np.abs(v))
        out.append(v / v[pivot])
    return out


def adapted_basis(alg: LieAlgebra, h: Subalgebra) -> HomogeneousModel:
    """Basis (coset complement, 𝔥) with 𝔥 ∩ 𝔷 last; central directions outside 𝔥 stay in the complement."""
    n = alg.dim
    if h.span.shape[0] != n:
        raise InvalidInputError(f"subalgebra vectors have {h.span.shape[0]} components, algebra has dimension {n}")
    if h.dim == 0:
        return HomogeneousModel(alg, alg, n, np.eye(n), h)

    central_part = _center_part(alg, h)
    h_basis: List[np.ndarray] = []
    for v in h.vectors():
        if is_independent(h_basis + central_part, v):
            h_basis.append(v)
    h_basis += central_part

    identity = np.eye(n)
    zero_ad = central_basis_indices(alg)
    chosen: List[int] = []
    for i in zero_ad + [i for i in range(n) if i not in zero_ad]:
        if len(chosen) == n - h.dim:
            break
        if is_independent(h_basis + [identity[:, k] for k in chosen], identity[:, i]):
            chosen.append(i)
    complement = [identity[:, i] for i in sorted(chosen)]

    A = np.column_stack(complement + h_basis)
    adapted = change_basis(alg, A)
    adapted = replace(adapted, center_indices=tuple(central_basis_indices(adapted)))
    m = len(complement)
    log.info("Adapted basis for %s: coset dimension %d, isotropy dimension %d", alg.name or "algebra", m, h.dim)
    return HomogeneousModel(alg, adapted, m, A, h)


def _coset_point(model: HomogeneousModel, q) -> np.ndarray:
    q = as_vector(q, model.m, "coset point")
    return np.concatenate([q, np.zeros(model.adapted.dim - model.m)])


def generators(model: HomogeneousModel, q, cfg: SolverConfig) -> np.ndarray:
    """m×n matrix; column i holds the components of X_i for source basis vector e_i."""
    xi = xi_second(model.adapted, GroupPoint.second(_coset_point(model, q)))
    return xi[:model.m, :] @ np.linalg.inv(model.transform)


def action(model: HomogeneousModel, q, z: GroupPoint, cfg: SolverConfig) -> ActionResult:
    """Ψ(q, z): the first m components of Φ((q, 0), z) in the adapted algebra; z is in the adapted chart."""
    result = compose(model.adapted, GroupPoint.second(_coset_point(model, q)), z, cfg)
    coords = result.z.coords
    return ActionResult(coords[:model.m].copy(), coords[model.m:].copy(), result.residual)


def lift_point(model: HomogeneousModel, z: GroupPoint, cfg: SolverConfig) -> GroupPoint:
    """Adapted-chart coordinates of exp(z^n e_n)···exp(z^1 e_1) given in the source basis."""
    zs = z.expect(Chart.SECOND, model.source)
    if np.array_equal(model.transform, np.eye(model.source.dim)):
        return GroupPoint.second(zs)
    columns = np.linalg.inv(model.transform)
    acc = GroupPoint.second(np.zeros(model.adapted.dim))
    for i in np.flatnonzero(zs):
        factor = to_second(model.adapted, GroupPoint.first(zs[i] * columns[:, i]), cfg).point
        acc = compose(model.adapted, factor, acc, cfg).z
    return acc
