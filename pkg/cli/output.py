"""Structured output: one JSON document, or flat CSV rows."""
import csv
import json
import math
from typing import IO

import numpy as np


def plain(value):
    """Converts numpy containers and scalars to JSON-native types."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def float_text(value: float) -> str:
    """17 significant digits; integral values keep a trailing `.0`."""
    if not math.isfinite(value):
        raise ValueError(f"cannot write non-finite value {value!r}")
    text = format(value, ".17g")
    return text if "." in text or "e" in text else text + ".0"


class DigitsEncoder(json.JSONEncoder):
    """JSONEncoder whose floats go through float_text."""

    def iterencode(self, o, _one_shot=False):
        indent = " " * self.indent if isinstance(self.indent, int) else self.indent
        string = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        encode = json.encoder._make_iterencode(
            {} if self.check_circular else None, self.default, string, indent, float_text,
            self.key_separator, self.item_separator, self.sort_keys, self.skipkeys, _one_shot)
        return encode(o, 0)


def write_json(payload: dict, stream: IO[str]):
    json.dump(plain(payload), stream, cls=DigitsEncoder, indent=2, sort_keys=True)
    stream.write("\n")


def _rows(key: str, value):
    if isinstance(value, dict):
        for sub in sorted(value):
            yield from _rows(f"{key}.{sub}", value[sub])
    elif isinstance(value, list) and value and isinstance(value[0], list):
        for i, row in enumerate(value):
            if row and isinstance(row[0], (list, dict)):
                yield from _rows(f"{key}[{i}]", row)
            else:
                yield [key, i, *row]
    elif isinstance(value, list):
        if value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                yield from _rows(f"{key}[{i}]", item)
        else:
            yield [key, "", *value]
    else:
        yield [key, "", value]


def write_csv(payload: dict, stream: IO[str]):
    """Rows of `field, row-index, values...`; matrices give one row per matrix row."""
    writer = csv.writer(stream, lineterminator="\n")
    data = plain(payload)
    for key in sorted(data):
        for row in _rows(key, data[key]):
            writer.writerow([float_text(v) if isinstance(v, float) else v for v in row])


def emit(payload: dict, fmt: str, stream: IO[str]):
    if fmt == "csv":
        write_csv(payload, stream)
    else:
        write_json(payload, stream)
