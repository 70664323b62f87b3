"""Algebra files, representation files, points and subalgebra specs."""
import json
import logging
import os
from typing import Dict, List, Optional

import numpy as np

from algebra.algebra import center_adapted, make_algebra
from algebra.models import LieAlgebra, StructureConstants
from composition.models import MatrixRepresentation
from numerics.errors import InvalidInputError
from numerics.numerics import as_vector
from . import catalog

log = logging.getLogger(__name__)


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InvalidInputError(f"{what} must be an integer, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise InvalidInputError(f"{what} must be an integer, got {value!r}")


def constants_from_document(doc) -> StructureConstants:
    """Parses {dim, brackets: [{i, j, coefficients: {k: c}}]} without validating the algebra."""
    if not isinstance(doc, dict):
        raise InvalidInputError("algebra file must contain a JSON object")
    if "dim" not in doc:
        raise InvalidInputError("algebra file is missing 'dim'")
    dim = _int(doc["dim"], "dim")
    records, explicit = [], []
    for n, record in enumerate(doc.get("brackets", [])):
        try:
            i, j, coefficients = record["i"], record["j"], record["coefficients"]
        except (KeyError, TypeError):
            raise InvalidInputError(f"bracket record #{n + 1} needs 'i', 'j' and 'coefficients'")
        if not isinstance(coefficients, dict):
            raise InvalidInputError(f"bracket record #{n + 1}: 'coefficients' must be an object")
        try:
            values = {_int(k, "coefficient index"): float(c) for k, c in coefficients.items()}
        except (TypeError, ValueError):
            raise InvalidInputError(f"bracket record #{n + 1} has a non-numeric coefficient")
        i, j = _int(i, "bracket index i"), _int(j, "bracket index j")
        (records if i < j else explicit).append((i, j, values))
    constants = StructureConstants.from_brackets(dim, records)
    if not explicit:
        return constants
    # i >= j records are stored as written so that validate reports any conflict
    tensor = constants.tensor.copy()
    for i, j, values in explicit:
        for k, c in values.items():
            if not all(1 <= index <= dim for index in (i, j, k)):
                raise InvalidInputError(f"bracket [{i},{j}] has an index outside 1..{dim}")
            tensor[k - 1, i - 1, j - 1] = c
    return StructureConstants(tensor)


def algebra_from_document(doc) -> LieAlgebra:
    constants = constants_from_document(doc)
    labels = doc.get("labels") or ()
    return make_algebra(constants, [str(label) for label in labels], str(doc.get("name", "")))


def algebra_document(alg: LieAlgebra, metadata: Optional[dict] = None) -> dict:
    """Inverse of algebra_from_document."""
    return {
        "name": alg.name,
        "dim": alg.dim,
        "labels": list(alg.labels),
        "brackets": [{"i": i, "j": j, "coefficients": {str(k): c for k, c in coefficients.items()}}
                     for i, j, coefficients in alg.constants.brackets()],
        "metadata": metadata or {},
    }


def save_algebra(alg: LieAlgebra, path: str, metadata: Optional[dict] = None):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_document(alg, metadata), fh, indent=2, sort_keys=True)
        fh.write("\n")


def is_file_source(source: str) -> bool:
    return source.endswith(".json") or os.path.sep in source or os.path.exists(source)


def load_constants(source: str, bindings: Optional[Dict[str, float]] = None):
    """(constants, name, labels) from a file path or catalog key, unvalidated."""
    if is_file_source(source):
        doc = _read_json(source)
        return constants_from_document(doc), str(doc.get("name", "")), [str(x) for x in doc.get("labels") or ()]
    constants, name = catalog.build(source, bindings)
    return constants, name, []


def load_algebra(source: str, bindings: Optional[Dict[str, float]] = None) -> LieAlgebra:
    """Validated, center-adapted algebra from a file path or catalog key."""
    constants, name, labels = load_constants(source, bindings)
    alg = center_adapted(make_algebra(constants, labels, name))
    log.info("Loaded %s (dimension %d, center dimension %d)", name or source, alg.dim, len(alg.center_indices))
    return alg


def load_representation(path: str) -> MatrixRepresentation:
    """Reads {dim, m, images: [m×m, ...]}; dim and m are optional cross-checks."""
    doc = _read_json(path)
    if not isinstance(doc, dict) or "images" not in doc:
        raise InvalidInputError(f"{path}: representation file needs an 'images' list")
    try:
        images = np.array(doc["images"], dtype=float)
    except (TypeError, ValueError):
        raise InvalidInputError(f"{path}: representation images must be numeric matrices")
    rep = MatrixRepresentation(images)
    if "dim" in doc and _int(doc["dim"], "dim") != rep.dim:
        raise InvalidInputError(f"{path}: 'dim' is {doc['dim']} but {rep.dim} images are given")
    if "m" in doc and _int(doc["m"], "m") != rep.m:
        raise InvalidInputError(f"{path}: 'm' is {doc['m']} but the images are {rep.m}×{rep.m}")
    return rep


def _number(token: str, bindings: Dict[str, float]) -> float:
    token = token.strip()
    sign = 1.0
    if token.startswith("-") and token[1:] in bindings:
        sign, token = -1.0, token[1:]
    if token in bindings:
        return sign * bindings[token]
    try:
        return float(token)
    except ValueError:
        raise InvalidInputError(f"{token!r} is neither a number nor a bound parameter")


def parse_point(text: str, dim: int, name: str = "point", bindings: Optional[Dict[str, float]] = None) -> np.ndarray:
    """Comma-separated components, e.g. `0,0,1,0`."""
    tokens = [t for t in text.split(",") if t.strip()]
    return as_vector([_number(t, bindings or {}) for t in tokens], dim, name)


def parse_subalgebra(spec: str, dim: int, bindings: Optional[Dict[str, float]] = None) -> List[np.ndarray]:
    """Subalgebra vectors from a SPEC.

    `4,5` selects basis vectors (1-based); rows separated by `;` are explicit vectors,
    and a single list with `dim` entries is one vector. Entries may name a bound parameter.
    `none` or an empty SPEC is the zero subalgebra.
    """
    spec = spec.strip()
    if spec in ("", "none", "{}"):
        return []
    bindings = bindings or {}
    rows = [r for r in spec.split(";") if r.strip()]
    if len(rows) > 1 or len(rows[0].split(",")) == dim:
        return [parse_point(r, dim, "subalgebra vector", bindings) for r in rows]
    identity = np.eye(dim)
    out = []
    for token in rows[0].split(","):
        k = _int(token.strip(), "basis index")
        if not 1 <= k <= dim:
            raise InvalidInputError(f"basis index {k} outside 1..{dim}")
        out.append(identity[:, k - 1])
    return out


def parse_bindings(items: Optional[List[str]]) -> Dict[str, float]:
    """`NAME=VALUE` pairs from repeated --param options."""
    out: Dict[str, float] = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise InvalidInputError(f"--param expects NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise InvalidInputError(f"--param {name.strip()} is not a number: {value!r}")
    return out
