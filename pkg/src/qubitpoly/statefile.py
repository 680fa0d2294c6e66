"""JSON state files.

Layout::

    {"num_sites": 2, "local_dim": 2, "label": "bell",
     "amplitudes": [[1, 0], [0, 0], [0, 0], [1, 0]]}

``amplitudes`` is either a dense list of ``[re, im]`` pairs (length
``local_dim**num_sites``) or a sparse map ``{"index": [re, im]}``. Index ``i``
decomposes as ``sum_j i_j * local_dim**j``: site 0 is the least-significant
digit.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .state import MAX_SITES, PureState


class StateFileError(ValueError):
    """Malformed state file; the message names the offending field or line."""


def _pair(value, where: str) -> complex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise StateFileError(f"{where}: expected an [re, im] pair of numbers, got {value!r}")
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise StateFileError(f"{where}: amplitude must be finite")
    return complex(re, im)


def _int_field(doc: dict, name: str, default=None) -> int:
    if name not in doc:
        if default is None:
            raise StateFileError(f"field '{name}': missing")
        return default
    value = doc[name]
    if not isinstance(value, int) or isinstance(value, bool):
        raise StateFileError(f"field '{name}': expected an integer, got {value!r}")
    return value


def parse_state(text: str, max_sites: int = MAX_SITES) -> tuple[PureState, str | None]:
    """Parse a state file body into ``(state, label)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise StateFileError("top level: expected a JSON object")
    n = _int_field(doc, "num_sites")
    h = _int_field(doc, "local_dim", 2)
    if n < 1:
        raise StateFileError(f"field 'num_sites': must be >= 1, got {n}")
    if n > max_sites:
        raise StateFileError(f"field 'num_sites': {n} exceeds the limit of {max_sites} (see --max-sites)")
    if h < 2:
        raise StateFileError(f"field 'local_dim': must be >= 2, got {h}")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise StateFileError("field 'label': expected a string")
    dim = h**n
    if dim > 2**max_sites:
        raise StateFileError(f"fields 'num_sites'/'local_dim': {h}**{n} amplitudes exceed the 2**{max_sites} limit")
    if "amplitudes" not in doc:
        raise StateFileError("field 'amplitudes': missing")
    raw = doc["amplitudes"]
    amps = np.zeros(dim, dtype=np.complex128)
    if isinstance(raw, list):
        if len(raw) != dim:
            raise StateFileError(
                f"field 'amplitudes': dense list has {len(raw)} entries, expected {dim} = {h}**{n}"
            )
        for i, v in enumerate(raw):
            amps[i] = _pair(v, f"field 'amplitudes[{i}]'")
    elif isinstance(raw, dict):
        for key, v in raw.items():
            try:
                i = int(key)
            except ValueError:
                raise StateFileError(f"field 'amplitudes': sparse key {key!r} is not an integer") from None
            if not 0 <= i < dim:
                raise StateFileError(f"field 'amplitudes': sparse index {i} outside 0..{dim - 1}")
            amps[i] = _pair(v, f"field 'amplitudes[{key}]'")
    else:
        raise StateFileError("field 'amplitudes': expected a list or an object")
    if not np.any(amps):
        raise StateFileError("field 'amplitudes': all entries are zero")
    return PureState(amps, n, h, max_sites=max_sites), label


def load_state(path, max_sites: int = MAX_SITES) -> tuple[PureState, str | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_state(text, max_sites)


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def state_document(state: PureState, label: str | None = None, sparse: bool = False) -> dict:
    doc: dict = {"num_sites": state.num_sites, "local_dim": state.local_dim}
    if label is not None:
        doc["label"] = label
    if sparse:
        doc["amplitudes"] = {
            str(i): complex_pair(state.amplitudes[i]) for i in np.flatnonzero(state.amplitudes)
        }
    else:
        doc["amplitudes"] = [complex_pair(a) for a in state.amplitudes]
    return doc


def dump_state(state: PureState, label: str | None = None, sparse: bool = False) -> str:
    return json.dumps(state_document(state, label, sparse)) + "\n"
