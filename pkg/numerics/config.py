import os
import logging
from dataclasses import dataclass, fields, replace

from .errors import InvalidInputError

log = logging.getLogger(__name__)

_COUNT_FIELDS = ("max_iter", "quadrature_order", "quadrature_panels", "homotopy_steps")


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and iteration controls shared by every iterative operation."""

    residual_tol: float = 1e-12
    max_iter: int = 100
    quadrature_order: int = 16
    quadrature_panels: int = 8
    ode_rel_tol: float = 1e-10
    ode_abs_tol: float = 1e-12
    homotopy_steps: int = 8
    fd_step: float = 1e-5

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in _COUNT_FIELDS:
                if int(value) != value or value < 1:
                    raise InvalidInputError(f"{f.name} must be an integer >= 1, got {value!r}")
            elif not (value > 0):
                raise InvalidInputError(f"{f.name} must be strictly positive, got {value!r}")

    @classmethod
    def from_env(cls, **overrides) -> "SolverConfig":
        """Builds a config from LIEFORGE_* environment variables (call load_dotenv() first)."""
        values = {}
        tol = os.getenv("LIEFORGE_TOL")
        if tol:
            try:
                values["residual_tol"] = float(tol)
            except ValueError:
                raise InvalidInputError(f"LIEFORGE_TOL is not a number: {tol!r}")
        max_iter = os.getenv("LIEFORGE_MAX_ITER")
        if max_iter:
            try:
                values["max_iter"] = int(max_iter)
            except ValueError:
                raise InvalidInputError(f"LIEFORGE_MAX_ITER is not an integer: {max_iter!r}")
        values.update(overrides)
        if values:
            log.info("Solver overrides from environment: %s", values)
        return cls(**values)

    def coarse(self) -> "SolverConfig":
        """Relaxed ODE tolerances, used to seed Newton-type solves."""
        return replace(self, ode_rel_tol=max(self.ode_rel_tol, 1e-6), ode_abs_tol=max(self.ode_abs_tol, 1e-8))
