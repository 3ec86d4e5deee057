"""JSON file formats for fans, divisors and configurations.

Fan file::

    {
      "lattice_rank": 3,
      "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
      "max_cones": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
      "ample": [0, 0, 0, 1]
    }

``ample`` is optional.  A divisor file has ``fan`` (a path relative to the
divisor file, or ``fixture:NAME``) and ``coeffs``.  A configuration file has
``D`` and ``E`` (a list); each entry is a divisor file path, an inline divisor
object, or a bare coefficient list when the configuration has a ``fan`` key.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import FanError, InputError
from .fixtures import get as get_fixture
from .toric import Fan, ToricDivisor


def _load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _int_list(value, where: str, length: int | None = None) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise InputError(f"{where}: expected a list of integers")
    if length is not None and len(value) != length:
        raise InputError(f"{where}: expected {length} entries, got {len(value)}")
    return value


def fan_from_dict(data: Any, where: str = "fan") -> Fan:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    unknown = set(data) - {"lattice_rank", "rays", "max_cones", "ample"}
    if unknown:
        raise InputError(f"{where}: unknown field(s) {', '.join(sorted(unknown))}")
    for key in ("lattice_rank", "rays", "max_cones"):
        if key not in data:
            raise InputError(f"{where}: missing field '{key}'")
    n = data["lattice_rank"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"{where}: field 'lattice_rank' must be a positive integer")
    rays = data["rays"]
    if not isinstance(rays, list) or not rays:
        raise InputError(f"{where}: field 'rays' must be a nonempty list")
    rays = [_int_list(r, f"{where}: field 'rays'[{k}]", n) for k, r in enumerate(rays)]
    cones = data["max_cones"]
    if not isinstance(cones, list) or not cones:
        raise InputError(f"{where}: field 'max_cones' must be a nonempty list")
    cones = [_int_list(c, f"{where}: field 'max_cones'[{k}]") for k, c in enumerate(cones)]
    ample = data.get("ample")
    if ample is not None:
        ample = _int_list(ample, f"{where}: field 'ample'", len(rays))
    try:
        return Fan(n, tuple(map(tuple, rays)), tuple(map(tuple, cones)), None if ample is None else tuple(ample))
    except FanError as exc:
        raise FanError(f"{where}: {exc}") from None


def load_fan(ref: str | Path, base: Path | None = None) -> Fan:
    """A fan from a file path or ``fixture:NAME``."""
    ref = str(ref)
    if ref.startswith("fixture:"):
        return get_fixture(ref[len("fixture:"):]).fan
    path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
    return fan_from_dict(_load_json(path), str(path))


def fan_to_text(fan: Fan) -> str:
    """Canonical serialization (stable key order, one field per line)."""
    lines = [
        "{",
        f'  "lattice_rank": {fan.lattice_rank},',
        f'  "rays": {json.dumps([list(r) for r in fan.rays])},',
        f'  "max_cones": {json.dumps([list(c) for c in fan.max_cones])}' + ("," if fan.ample_reference else ""),
    ]
    if fan.ample_reference:
        lines.append(f'  "ample": {json.dumps(list(fan.ample_reference))}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def divisor_from_dict(data: Any, where: str, base: Path | None, fan: Fan | None = None) -> ToricDivisor:
    if isinstance(data, list):
        if fan is None:
            raise InputError(f"{where}: bare coefficient list needs a 'fan' field")
        return ToricDivisor(fan, tuple(_int_list(data, where, fan.num_rays)))
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    unknown = set(data) - {"fan", "coeffs"}
    if unknown:
        raise InputError(f"{where}: unknown field(s) {', '.join(sorted(unknown))}")
    if "fan" in data:
        if not isinstance(data["fan"], str):
            raise InputError(f"{where}: field 'fan' must be a path or fixture:NAME")
        fan = load_fan(data["fan"], base)
    elif fan is None:
        raise InputError(f"{where}: missing field 'fan'")
    if "coeffs" not in data:
        raise InputError(f"{where}: missing field 'coeffs'")
    return ToricDivisor(fan, tuple(_int_list(data["coeffs"], f"{where}: field 'coeffs'", fan.num_rays)))


def load_divisor(ref: str | Path, base: Path | None = None, fan: Fan | None = None) -> ToricDivisor:
    path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
    return divisor_from_dict(_load_json(path), str(path), path.parent, fan)


def divisor_to_text(D: ToricDivisor, fan_ref: str) -> str:
    return "{\n" f'  "fan": {json.dumps(fan_ref)},\n' f'  "coeffs": {json.dumps(list(D.coeffs))}\n' "}\n"


def load_config(ref: str | Path) -> tuple[ToricDivisor, list[ToricDivisor]]:
    path = Path(ref)
    data = _load_json(path)
    where = str(path)
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    unknown = set(data) - {"fan", "D", "E"}
    if unknown:
        raise InputError(f"{where}: unknown field(s) {', '.join(sorted(unknown))}")
    fan = load_fan(data["fan"], path.parent) if "fan" in data else None

    def one(entry, label):
        if isinstance(entry, str):
            return load_divisor(entry, path.parent, fan)
        return divisor_from_dict(entry, f"{where}: field {label}", path.parent, fan)

    if "D" not in data:
        raise InputError(f"{where}: missing field 'D'")
    if "E" not in data or not isinstance(data["E"], list) or not data["E"]:
        raise InputError(f"{where}: field 'E' must be a nonempty list")
    D = one(data["D"], "'D'")
    Es = [one(e, f"'E'[{k}]") for k, e in enumerate(data["E"])]
    for k, E in enumerate(Es):
        if E.fan != D.fan:
            raise InputError(f"{where}: 'E'[{k}] lives on a different fan than 'D'")
    return D, Es
