"""Job configuration: TOML ingestion and validation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .equivariance import GroupAction, compose_actions
from .errors import AzextError, ParseError, ValidationError
from .expr import parse_bipoly, parse_unipoly
from .funcfield import CurvePoly
from .local import DEFAULT_CAP, DEFAULT_PRECISION
from .scalars import UniPoly
from .tautological import ClosedPoint, make_point, parse_word

PRESET_PACKAGE = "azext.presets"


@dataclass
class ActionSpec:
    action: GroupAction
    helper: bool = False


@dataclass
class JobConfig:
    name: str
    names: tuple[str, str]
    curve_text: str
    curve: CurvePoly
    Ih_text: str | None
    conjugate_generators: bool
    actions: list[ActionSpec]
    points: str | list[ClosedPoint]
    precision: int = DEFAULT_PRECISION
    cap: int = DEFAULT_CAP
    description: str = ""
    source: str = field(default="", repr=False)

    @property
    def reported_actions(self) -> list[GroupAction]:
        return [a.action for a in self.actions if not a.helper]


_LOC = re.compile(r"line (\d+), column (\d+)")


def _load_toml(text: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        col = getattr(exc, "colno", None)
        if line is None:
            m = _LOC.search(str(exc))
            if m:
                line, col = int(m.group(1)), int(m.group(2))
        msg = getattr(exc, "msg", None) or str(exc)
        raise ParseError(f"invalid config: {msg}", line, col) from None


def _sub_parse(what: str, fn, *args):
    try:
        return fn(*args)
    except ParseError as exc:
        raise ParseError(f"{what}: {exc}") from None


def _rational(v, where: str) -> Fraction:
    if isinstance(v, bool):
        raise ValidationError(f"{where}: expected a rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except ValueError:
            pass
    raise ValidationError(f"{where}: expected an integer or 'p/q' string, got {v!r}")


def _expect(table: dict, key: str, kind, where: str, default=...):
    if key not in table:
        if default is ...:
            raise ValidationError(f"{where}: missing required key {key!r}")
        return default
    value = table[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ValidationError(f"{where}: key {key!r} has the wrong type")
    return value


def parse_points(entries: list, curve: CurvePoly, where: str = "points") -> list[ClosedPoint]:
    xname = curve.names[0]
    points = []
    for k, entry in enumerate(entries):
        loc = f"{where}[{k}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{loc}: expected a table")
        raw = entry.get("x_min_poly")
        if isinstance(raw, list):
            poly = UniPoly([_rational(c, f"{loc}.x_min_poly") for c in raw])
        elif isinstance(raw, str):
            poly = _sub_parse(f"{loc}.x_min_poly", parse_unipoly, raw, xname)
        else:
            raise ValidationError(f"{loc}: x_min_poly must be a coefficient list or polynomial text")
        if poly.degree < 1:
            raise ValidationError(f"{loc}: x_min_poly must have positive degree")
        label = _expect(entry, "root", str, loc, "plus")
        yv = entry.get("y_value")
        if isinstance(yv, (int, str)) and not isinstance(yv, bool):
            ypoly = _sub_parse(f"{loc}.y_value", parse_unipoly, str(yv), xname)
        elif isinstance(yv, list):
            ypoly = UniPoly([_rational(c, f"{loc}.y_value") for c in yv])
        else:
            raise ValidationError(f"{loc}: y_value must be a polynomial in {xname}")
        try:
            points.append(make_point(curve, poly, ypoly, label))
        except AzextError as exc:
            raise ValidationError(f"{loc}: {exc}") from None
    return points


def parse_config(text: str) -> JobConfig:
    data = _load_toml(text)
    coords = data.get("coordinates", {"x": "x", "y": "y"})
    if not isinstance(coords, dict):
        raise ValidationError("coordinates must be a table")
    names = (_expect(coords, "x", str, "coordinates"), _expect(coords, "y", str, "coordinates"))
    if names[0] == names[1]:
        raise ValidationError("coordinate names must differ")

    curve_text = _expect(data, "curve", str, "config")
    f = _sub_parse("curve", parse_bipoly, curve_text, names)
    curve = CurvePoly(f, names)

    Ih_text = _expect(data, "Ih", str, "config", None)
    conjugate = _expect(data, "conjugate_generators", bool, "config", True)
    if Ih_text is not None:
        # validated for syntax here; semantics checked when the symbol is built
        _sub_parse("Ih", parse_bipoly, Ih_text, names)

    actions: list[ActionSpec] = []
    by_name: dict[str, GroupAction] = {}
    raw_actions = _expect(data, "actions", list, "config")
    if not raw_actions:
        raise ValidationError("config needs at least one action")
    for k, entry in enumerate(raw_actions):
        loc = f"actions[{k}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{loc}: expected a table")
        name = _expect(entry, "name", str, loc)
        if name in by_name:
            raise ValidationError(f"{loc}: duplicate action name {name!r}")
        if "compose" in entry:
            parts = _expect(entry, "compose", list, loc)
            if not parts or any(p not in by_name for p in parts):
                raise ValidationError(f"{loc}: compose must list previously defined actions")
            act = by_name[parts[0]]
            for p in parts[1:]:
                act = compose_actions(act, by_name[p])
            act = GroupAction(name, act.img_g, act.img_h)
        else:
            img_g = _sub_parse(f"{loc}.img_g", parse_word, _expect(entry, "img_g", str, loc))
            img_h = _sub_parse(f"{loc}.img_h", parse_word, _expect(entry, "img_h", str, loc))
            act = GroupAction(name, img_g, img_h)
        by_name[name] = act
        actions.append(ActionSpec(act, _expect(entry, "helper", bool, loc, False)))
    if all(a.helper for a in actions):
        raise ValidationError("every action is marked helper; nothing to report")

    raw_points = data.get("points", "auto")
    if raw_points == "auto":
        points: str | list[ClosedPoint] = "auto"
    elif isinstance(raw_points, list):
        points = parse_points(raw_points, curve)
    else:
        raise ValidationError("points must be \"auto\" or an array of tables")

    prec = data.get("precision", {})
    initial = _expect(prec, "initial", int, "precision", DEFAULT_PRECISION)
    cap = _expect(prec, "cap", int, "precision", DEFAULT_CAP)
    if initial < 1 or cap < initial:
        raise ValidationError("precision must satisfy 1 <= initial <= cap")

    return JobConfig(
        name=_expect(data, "name", str, "config", "job"),
        names=names,
        curve_text=curve_text,
        curve=curve,
        Ih_text=Ih_text,
        conjugate_generators=conjugate,
        actions=actions,
        points=points,
        precision=initial,
        cap=cap,
        description=_expect(data, "description", str, "config", ""),
        source=text,
    )


def load_points_file(path: str | Path, curve: CurvePoly) -> list[ClosedPoint]:
    data = _load_toml(Path(path).read_text())
    return parse_points(_expect(data, "points", list, str(path)), curve)


def preset_names() -> list[str]:
    files = resources.files(PRESET_PACKAGE).iterdir()
    return sorted(p.name[:-5] for p in files if p.name.endswith(".toml"))


def preset_text(name: str) -> str:
    res = resources.files(PRESET_PACKAGE).joinpath(f"{name}.toml")
    if not res.is_file():
        raise ValidationError(f"no bundled preset named {name!r}")
    return res.read_text()


def load_config(source: str) -> JobConfig:
    """Read a config from a file path, or from a bundled preset name."""
    path = Path(source)
    if path.is_file():
        return parse_config(path.read_text())
    if source in preset_names():
        return parse_config(preset_text(source))
    raise ValidationError(f"{source!r} is neither a config file nor a bundled preset")
