"""Built-in algebras addressable by key, e.g. `heisenberg3`, `abelian:4`, `poincare-sub(alpha=0.5)`."""
import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from algebra.models import StructureConstants
from numerics.errors import InvalidInputError

log = logging.getLogger(__name__)

_KEY = re.compile(r"^(?P<name>[a-z][a-z0-9-]*)(?::(?P<dim>\d+))?(?:\((?P<params>[^)]*)\))?$")


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    description: str
    builder: Callable[..., StructureConstants]
    parameters: Dict[str, float] = field(default_factory=dict)

    def build(self, bindings: Dict[str, float]) -> StructureConstants:
        unknown = set(bindings) - set(self.parameters)
        if unknown:
            raise InvalidInputError(f"{self.key} has no parameter(s) {sorted(unknown)}; known: {sorted(self.parameters)}")
        return self.builder(**{**self.parameters, **bindings})


def _abelian(n: float) -> StructureConstants:
    if int(n) != n or n < 1:
        raise InvalidInputError(f"abelian dimension must be a positive integer, got {n}")
    n = int(n)
    return StructureConstants(np.zeros((n, n, n)))


def _heisenberg3() -> StructureConstants:
    return StructureConstants.from_brackets(3, [(1, 2, {3: 1.0})])


def _so3() -> StructureConstants:
    return StructureConstants.from_brackets(3, [(1, 2, {3: 1.0}), (2, 3, {1: 1.0}), (1, 3, {2: -1.0})])


def _six_dimensional() -> StructureConstants:
    return StructureConstants.from_brackets(6, [
        (1, 2, {6: 1.0}),
        (1, 4, {1: -1.0}),
        (1, 5, {2: 1.0}),
        (2, 3, {1: 1.0}),
        (2, 4, {2: 1.0}),
        (3, 4, {3: -2.0}),
        (3, 5, {4: 1.0}),
        (4, 5, {5: -2.0}),
    ])


def _poincare_sub(alpha: float) -> StructureConstants:
    return StructureConstants.from_brackets(4, [(1, 3, {2: 1.0}), (2, 3, {1: -1.0}), (3, 4, {4: -alpha})])


CATALOG: Dict[str, CatalogEntry] = {
    entry.key: entry for entry in [
        CatalogEntry("abelian", "abelian algebra of dimension n (key abelian:n)", _abelian, {"n": 3.0}),
        CatalogEntry("heisenberg3", "Heisenberg algebra, [e1,e2]=e3", _heisenberg3),
        CatalogEntry("so3", "rotation algebra, [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2", _so3),
        CatalogEntry("paper6", "six-dimensional non-solvable algebra: sl(2) acting on a "
                               "three-dimensional nilpotent ideal, center e6", _six_dimensional),
        CatalogEntry("poincare-sub", "four-dimensional subalgebra of the Poincaré algebra, "
                                     "[e1,e3]=e2, [e2,e3]=-e1, [e3,e4]=-alpha*e4", _poincare_sub, {"alpha": 1.0}),
    ]
}

# older names that still resolve
ALIASES: Dict[str, str] = {"nil3-so12": "paper6"}


def _parse_params(text: str, entry: CatalogEntry) -> Dict[str, float]:
    out: Dict[str, float] = {}
    names = list(entry.parameters)
    for position, item in enumerate(p.strip() for p in text.split(",") if p.strip()):
        name, _, value = item.rpartition("=")
        if not name:
            if position >= len(names):
                raise InvalidInputError(f"too many parameters for {entry.key}")
            name = names[position]
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise InvalidInputError(f"parameter {name.strip()!r} of {entry.key} is not a number: {value!r}")
    return out


def parse_key(key: str) -> Tuple[CatalogEntry, Dict[str, float]]:
    """Splits `name[:dim][(params)]` into the entry and its explicit parameter bindings."""
    match = _KEY.match(key.strip())
    name = ALIASES.get(match.group("name"), match.group("name")) if match else None
    if name not in CATALOG:
        raise InvalidInputError(f"unknown catalog key {key!r}; known: {', '.join(sorted(CATALOG))}")
    entry = CATALOG[name]
    bindings = _parse_params(match.group("params") or "", entry)
    if match.group("dim") is not None:
        if "n" not in entry.parameters:
            raise InvalidInputError(f"{entry.key} does not take a dimension suffix")
        bindings["n"] = float(match.group("dim"))
    return entry, bindings


def build(key: str, bindings: Optional[Dict[str, float]] = None) -> Tuple[StructureConstants, str]:
    """Structure constants and display name for a catalog key.

    Bindings for names the entry does not declare are ignored; they belong to other arguments.
    """
    entry, parsed = parse_key(key)
    for name, value in (bindings or {}).items():
        if name in entry.parameters:
            parsed[name] = value
    log.debug("Building catalog algebra %s with %s", entry.key, parsed)
    return entry.build(parsed), key.strip()


def entries() -> List[dict]:
    return [{"key": e.key, "description": e.description, "parameters": dict(e.parameters)}
            for e in sorted(CATALOG.values(), key=lambda e: e.key)]
