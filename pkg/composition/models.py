from dataclasses import dataclass

import numpy as np

from algebra.models import LieAlgebra
from frames.frames import GroupPoint
from numerics.errors import InvalidInputError
from numerics.numerics import RANK_RCOND, smallest_singular_ratio

HOMOMORPHISM_TOL = 1e-12

METHOD_ADJOINT = "adjoint-quadrature"
METHOD_ODE = "ode"
METHOD_REP = "representation"


@dataclass(frozen=True, eq=False)
class CompositionResult:
    z: GroupPoint
    method: str
    residual: float

    def as_dict(self) -> dict:
        return {"z": self.z.coords.tolist(), "method": self.method, "residual": self.residual}


@dataclass(frozen=True, eq=False)
class MatrixRepresentation:
    """Images τ(e_i) of the basis, images[i] is m×m."""

    images: np.ndarray

    def __post_init__(self):
        images = np.asarray(self.images, dtype=float)
        if images.ndim != 3 or images.shape[1] != images.shape[2] or images.shape[1] < 1:
            raise InvalidInputError(f"representation images must have shape n×m×m, got {images.shape}")
        if not np.all(np.isfinite(images)):
            raise InvalidInputError("representation images have non-finite entries")
        images = images.copy()
        images.setflags(write=False)
        object.__setattr__(self, "images", images)

    @property
    def m(self) -> int:
        return self.images.shape[1]

    @property
    def dim(self) -> int:
        return self.images.shape[0]

    def check(self, alg: LieAlgebra) -> "MatrixRepresentation":
        """Verifies the homomorphism property and faithfulness against alg; returns self."""
        if self.dim != alg.dim:
            raise InvalidInputError(f"representation has {self.dim} images, algebra has dimension {alg.dim}")
        tau = self.images
        scale = max(1.0, float(np.max(np.abs(tau))))
        commutators = np.einsum("iab,jbc->ijac", tau, tau) - np.einsum("jab,ibc->ijac", tau, tau)
        images_of_brackets = np.einsum("kij,kac->ijac", alg.tensor, tau)
        worst = float(np.max(np.abs(commutators - images_of_brackets)))
        if worst > HOMOMORPHISM_TOL * scale ** 2:
            raise InvalidInputError(f"matrices do not represent the algebra (bracket mismatch {worst:.3e})")
        ratio = smallest_singular_ratio(tau.reshape(self.dim, -1).T)
        if ratio <= RANK_RCOND:
            raise InvalidInputError(f"representation is not faithful (σmin/σmax = {ratio:.3e})")
        return self
