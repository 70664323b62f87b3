from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from numerics.errors import InvalidInputError


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """C^k_ij stored as tensor[k, i, j] (0-based)."""

    tensor: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.tensor, dtype=float)
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]) or t.shape[0] < 1:
            raise InvalidInputError(f"structure constants must have shape n×n×n, got {t.shape}")
        if not np.all(np.isfinite(t)):
            raise InvalidInputError("structure constants have non-finite entries")
        object.__setattr__(self, "tensor", _frozen(t))

    @property
    def dim(self) -> int:
        return self.tensor.shape[0]

    @classmethod
    def from_brackets(cls, dim: int, brackets: Iterable[Tuple[int, int, Dict[int, float]]]) -> "StructureConstants":
        """Builds constants from 1-based (i, j, {k: c}) records with i < j, antisymmetrizing."""
        if dim < 1:
            raise InvalidInputError(f"dimension must be positive, got {dim}")
        t = np.zeros((dim, dim, dim))
        for i, j, coefficients in brackets:
            if not (1 <= i < j <= dim):
                raise InvalidInputError(f"bracket pair ({i}, {j}) must satisfy 1 <= i < j <= {dim}")
            for k, c in coefficients.items():
                if not 1 <= k <= dim:
                    raise InvalidInputError(f"bracket [{i},{j}] has coefficient index {k} outside 1..{dim}")
                t[k - 1, i - 1, j - 1] = c
                t[k - 1, j - 1, i - 1] = -c
        return cls(t)

    def brackets(self) -> List[Tuple[int, int, Dict[int, float]]]:
        """Non-zero i < j records, 1-based; inverse of from_brackets."""
        out = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                coefficients = {k + 1: float(self.tensor[k, i, j]) for k in range(n) if self.tensor[k, i, j] != 0.0}
                if coefficients:
                    out.append((i + 1, j + 1, coefficients))
        return out


@dataclass(frozen=True)
class Violation:
    kind: str                    # "antisymmetry" | "jacobi"
    indices: Tuple[int, ...]     # 1-based
    residual: float

    def as_dict(self) -> dict:
        return {"kind": self.kind, "indices": list(self.indices), "residual": self.residual}


@dataclass(frozen=True)
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)
    total: int = 0

    @property
    def ok(self) -> bool:
        return self.total == 0

    def summary(self) -> str:
        if self.ok:
            return "structure constants are valid"
        shown = ", ".join(f"{v.kind} at {v.indices} (residual {v.residual:.3g})" for v in self.violations)
        return f"{self.total} violation(s): {shown}"


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    constants: StructureConstants
    labels: Tuple[str, ...] = ()
    center_indices: Tuple[int, ...] = ()      # 0-based; set by center_adapted
    provenance: Optional[np.ndarray] = None   # columns: current basis in the originally loaded basis
    name: str = ""

    def __post_init__(self):
        n = self.constants.dim
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(n)))
        elif len(self.labels) != n:
            raise InvalidInputError(f"expected {n} labels, got {len(self.labels)}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "center_indices", tuple(int(i) for i in self.center_indices))
        if self.provenance is not None:
            object.__setattr__(self, "provenance", _frozen(self.provenance))

    @property
    def dim(self) -> int:
        return self.constants.dim

    @property
    def tensor(self) -> np.ndarray:
        return self.constants.tensor

    @cached_property
    def ad_basis(self) -> np.ndarray:
        """ad_basis[k] is the matrix of ad e_k, (ad e_k)^j_i = C^j_ki."""
        return _frozen(np.transpose(self.tensor, (1, 0, 2)))

    @property
    def source_basis(self) -> np.ndarray:
        return np.eye(self.dim) if self.provenance is None else self.provenance
