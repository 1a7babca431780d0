"""End-to-end job: build the symbol, check each action, solve its
conjugator and decide extension at every excluded point."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass

from .config import JobConfig
from .equivariance import (
    check_character_trivial,
    check_order_two,
    nrd_of_conjugator,
    solve_conjugator,
)
from .errors import AzextError, ComputationError
from .expr import parse_ff
from .local import PointVerdict, global_verdict
from .tautological import ClosedPoint, TautSetup, build_symbol, reducible_locus

log = logging.getLogger(__name__)

SCHEMA = "azext-report/1"
EXTENDS = "EXTENDS"
DOES_NOT_EXTEND = "DOES NOT EXTEND"
OBSTRUCTED = "ALGEBRA EXTENDS, ACTION OBSTRUCTED"


class StageError(AzextError):
    """A failure inside one pipeline stage; wraps the original error."""

    def __init__(self, stage: str, error: AzextError):
        self.stage = stage
        self.error = error
        super().__init__(f"[{stage}] {type(error).__name__}: {error}")


class _stage:
    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        self.t0 = time.perf_counter()
        log.info("stage %s: start", self.name)

    def __exit__(self, exc_type, exc, tb):
        log.info("stage %s: %.3fs", self.name, time.perf_counter() - self.t0)
        if exc is not None and isinstance(exc, AzextError) and not isinstance(exc, StageError):
            raise StageError(self.name, exc) from exc
        return False


def _field_text(v) -> str:
    return str(v)


def _residue_field(point: ClosedPoint) -> str:
    return "Q" if point.residue_d is None else f"Q(sqrt({point.residue_d}))"


def _point_dict(point: ClosedPoint, names) -> dict:
    return {
        "x_min_poly": point.x_min_poly.to_text(names[0]),
        "root": point.root_label or "rational",
        "residue_field": _residue_field(point),
        names[0]: _field_text(point.x_image),
        names[1]: _field_text(point.y_image),
    }


def _verdict_dict(index: int, v: PointVerdict, names) -> dict:
    coord = names[0] if v.uniformizer == "x" else names[1]
    center = v.point.x_image if v.uniformizer == "x" else v.point.y_image
    return {
        "point": index,
        "uniformizer": f"{coord} - ({center})",
        "v_a": v.v_a,
        "v_b": v.v_b,
        "residue_class": _field_text(v.residue_class),
        "residue_trivial": v.residue_trivial,
        "v_nrd_c": v.v_nrd_c,
        "nrd_c_leading": _field_text(v.nrd_leading),
        "nrd_even": v.nrd_even,
        "extends_with_action": v.extends_with_action,
    }


def summary_label(extends: bool, algebra_extends: bool) -> str:
    if extends:
        return EXTENDS
    if algebra_extends:
        return OBSTRUCTED
    return DOES_NOT_EXTEND


@dataclass
class Report:
    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, ensure_ascii=True) + "\n"

    def to_text(self) -> str:
        return render_text(self.data)


def make_setup(config: JobConfig) -> TautSetup:
    Ih = parse_ff(config.Ih_text, config.curve) if config.Ih_text is not None else None
    return build_symbol(config.curve, Ih, config.conjugate_generators)


def run_job(config: JobConfig, points: list[ClosedPoint] | None = None) -> Report:
    """Run the whole pipeline; ``points`` overrides the config's point list."""
    names = config.names
    with _stage("build_symbol"):
        setup = make_setup(config)
    source = "override" if points is not None else ("auto" if config.points == "auto" else "explicit")
    with _stage("locate_points"):
        if points is None:
            points = reducible_locus(setup) if config.points == "auto" else list(config.points)
    data = {
        "schema": SCHEMA,
        "name": config.name,
        "coordinates": {"x": names[0], "y": names[1]},
        "curve": config.curve.f.to_text(*names),
        "setup": {
            "conjugate_generators": setup.conjugate,
            "Ih": setup.Ih.to_text(),
            "a": setup.a.to_text(),
            "b": setup.b.to_text(),
        },
        "points_source": source,
        "points": [_point_dict(p, names) for p in points],
        "actions": [],
    }
    for action in config.reported_actions:
        entry = {"name": action.name, "img_g": str(action.img_g), "img_h": str(action.img_h)}
        with _stage(f"check_action:{action.name}"):
            entry["character_trivial"] = check_character_trivial(setup, action)
            entry["order_two"] = check_order_two(setup, action)
            if not entry["character_trivial"]:
                raise ComputationError(f"action {action.name} moves characters; unsupported")
            if not entry["order_two"]:
                raise ComputationError(f"action {action.name} does not have order 2 on the algebra")
        with _stage(f"solve_conjugator:{action.name}"):
            conj = solve_conjugator(setup, action)
            nrd = nrd_of_conjugator(setup, conj)
        entry["conjugator"] = {f"c{k}": c.to_text() for k, c in enumerate(conj.c.coeffs)}
        entry["normalization"] = conj.normalization
        entry["nrd_c"] = nrd.to_text()
        with _stage(f"verdict:{action.name}"):
            gv = global_verdict(setup, conj, points, config.precision, config.cap)
        entry["point_verdicts"] = [_verdict_dict(k, v, names) for k, v in enumerate(gv.per_point)]
        entry["verdict"] = EXTENDS if gv.extends else DOES_NOT_EXTEND
        entry["algebra_alone"] = EXTENDS if gv.algebra_extends else DOES_NOT_EXTEND
        entry["summary"] = summary_label(gv.extends, gv.algebra_extends)
        data["actions"].append(entry)
    return Report(data)


def render_text(data: dict) -> str:
    """Human-readable report; every line is drawn from the machine-readable dict."""
    x, y = data["coordinates"]["x"], data["coordinates"]["y"]
    s = data["setup"]
    lines = [
        f"job: {data['name']}  ({data['schema']})",
        f"curve: {data['curve']} = 0   [x = {x}, y = {y}]",
        f"I_h = {s['Ih']}   conjugate generators: {s['conjugate_generators']}",
        f"symbol algebra (a, b): a = {s['a']}",
        f"                       b = {s['b']}",
        f"excluded points ({data['points_source']}): {len(data['points'])}",
    ]
    for k, p in enumerate(data["points"]):
        lines.append(
            f"  [{k}] {p['x_min_poly']} = 0 ({p['root']} root), {x} = {p[x]}, {y} = {p[y]}, residue field {p['residue_field']}"
        )
    for a in data["actions"]:
        lines += [
            "",
            f"action {a['name']}: g -> {a['img_g']}, h -> {a['img_h']}",
            f"  trivial on characters: {a['character_trivial']}   order two on algebra: {a['order_two']}",
            f"  conjugator ({a['normalization']}):",
        ]
        basis = {"c0": "1", "c1": "i", "c2": "j", "c3": "ij"}
        for key, val in a["conjugator"].items():
            lines.append(f"    {basis[key]:>2}: {val}")
        lines.append(f"  Nrd(c) = {a['nrd_c']}")
        for v in a["point_verdicts"]:
            lines.append(
                f"  point [{v['point']}] t = {v['uniformizer']}: v(a) = {v['v_a']}, v(b) = {v['v_b']}, "
                f"residue {v['residue_class']} ({'trivial' if v['residue_trivial'] else 'nontrivial'}), "
                f"v(Nrd c) = {v['v_nrd_c']} ({'even' if v['nrd_even'] else 'odd'}, leading {v['nrd_c_leading']}), "
                f"extends with action: {v['extends_with_action']}"
            )
        lines.append(f"  verdict: {a['verdict']}")
        lines.append(f"  algebra alone: {a['algebra_alone']}")
        lines.append(f"  summary: {a['summary']}")
    return "\n".join(lines) + "\n"

