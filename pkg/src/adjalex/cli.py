"""Command-line front end.

Five commands: `analyze` runs the whole pipeline on one curve and prints
Newton data, the resolution ledger, the per-level quotient table, the
cokernel vector and the assembled Alexander polynomial; `tables`
regenerates every embedded reference table and diffs it cell by cell;
`ideal` prints level-k adjunction ideals of one input; `subdivide` prints
the canonical regular subdivision of a fan; `pluecker` runs the splitting
feasibility search.

Exit codes: 0 success, 2 bad configuration, 3 truncation exhausted,
4 internal inconsistency, 5 reference-table mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction as Frac

from . import fixtures
from .adjunction import Analyzer, ideal_to_json_dict
from .alexander import (
    GlobalCurve,
    LocalPoint,
    assemble,
    ell_values,
    poly_translate,
)
from .curves import (
    family_instance,
    family_names,
    five_conic_configuration,
    global_curve,
    local_model,
    model_to_json_dict,
    spec_to_json_dict,
    torus_compose,
)
from .exactpoly import (
    DEFAULT_TRUNC,
    AdjalexError,
    BiPoly,
    InconsistencyError,
    ParseError,
    TruncSeries,
    TruncationError,
    poly_parse,
    poly_str,
    substitute_shift,
)
from .newton import E1, E2, WeightVector, canonical_subdivision, newton_boundary
from .toric import resolution_to_json
from .pluecker import (
    BranchSpec,
    SingularityRecord,
    enumerate_splittings,
    hypothesis_to_dict,
    survivors,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TRUNCATION = 3
EXIT_INCONSISTENT = 4
EXIT_MISMATCH = 5

UV = ("u", "v")


class ConfigError(ValueError):
    pass


# -- configuration ------------------------------------------------------


@dataclass
class JobConfig:
    """Everything one run depends on.  The input is exactly one of: a
    named family with parameters, a builtin configuration, an inline
    projective polynomial (f, or f2 and f5 to compose), or a bare local
    germ with its projective degree."""

    command: str
    family: str | None = None
    params: dict[str, Frac] = field(default_factory=dict)
    configuration: str | None = None
    ts: tuple[Frac, ...] | None = None
    f: str | None = None
    f2: str | None = None
    f5: str | None = None
    germ: str | None = None
    degree: int | None = None
    points: tuple[dict, ...] | None = None
    phi: dict[int, Frac] | None = None
    r: int | None = None
    irreducible: bool = False
    k_range: tuple[int, int] | None = None
    trunc: int = DEFAULT_TRUNC
    seed: int = 0  # reserved for generic-combination sampling
    fmt: str = "text"
    parallel: bool = False
    rays: tuple[tuple[int, int], ...] = ()
    records: tuple[dict, ...] = ()
    corrupt: str | None = None


def _parse_fraction(text, what: str) -> Frac:
    try:
        return Frac(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad {what} {text!r}: {exc}") from None


def _parse_int(text, what: str) -> int:
    try:
        return int(text)
    except (TypeError, ValueError):
        raise ConfigError(f"bad {what} {text!r}: expected an integer") from None


def _parse_k_range(text: str) -> tuple[int, int]:
    raw = str(text).strip()
    if ".." in raw:
        lo, hi = raw.split("..", 1)
    else:
        lo = hi = raw
    pair = (_parse_int(lo, "k"), _parse_int(hi, "k"))
    if pair[0] > pair[1] or pair[0] < 1:
        raise ConfigError(f"empty or negative k range {text!r}")
    return pair


def _parse_phi(raw: dict) -> dict[int, Frac]:
    out = {}
    for key, val in raw.items():
        e = _parse_int(key, "phi exponent")
        if e < 1:
            raise ConfigError("phi exponents must be positive")
        out[e] = _parse_fraction(val, "phi coefficient")
    return out


def _parse_rays(items) -> tuple[tuple[int, int], ...]:
    out = []
    for item in items:
        parts = item.replace(",", " ").split() if isinstance(item, str) else list(item)
        if len(parts) != 2:
            raise ConfigError(f"bad ray {item!r}; expected P,Q")
        out.append((_parse_int(parts[0], "ray"), _parse_int(parts[1], "ray")))
    return tuple(out)


CONFIG_FIELDS = {
    "family",
    "params",
    "configuration",
    "ts",
    "f",
    "f2",
    "f5",
    "germ",
    "degree",
    "points",
    "phi",
    "r",
    "irreducible",
    "k",
    "trunc",
    "seed",
    "format",
    "rays",
    "records",
}


def load_config(args: argparse.Namespace) -> JobConfig:
    """Merge defaults, the ADJALEX_TRUNC environment, the input file and
    the flags, in that order of increasing precedence."""
    cfg = JobConfig(command=args.command)

    env_trunc = os.environ.get("ADJALEX_TRUNC")
    if env_trunc is not None:
        cfg.trunc = _parse_int(env_trunc, "ADJALEX_TRUNC")

    if getattr(args, "input", None):
        try:
            with open(args.input) as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read {args.input}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.input} is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("the input file must hold a JSON object")
        for key in raw:
            if key not in CONFIG_FIELDS:
                raise ConfigError(f"unknown config field {key!r}")
        cfg.family = raw.get("family")
        for key, val in (raw.get("params") or {}).items():
            cfg.params[key] = _parse_fraction(val, f"parameter {key}")
        cfg.configuration = raw.get("configuration")
        if raw.get("ts") is not None:
            cfg.ts = tuple(
                _parse_fraction(t, "conic parameter") for t in raw["ts"]
            )
        cfg.f = raw.get("f")
        cfg.f2 = raw.get("f2")
        cfg.f5 = raw.get("f5")
        cfg.germ = raw.get("germ")
        if raw.get("degree") is not None:
            cfg.degree = _parse_int(raw["degree"], "degree")
        if raw.get("points") is not None:
            cfg.points = tuple(raw["points"])
        if raw.get("phi") is not None:
            cfg.phi = _parse_phi(raw["phi"])
        if raw.get("r") is not None:
            cfg.r = _parse_int(raw["r"], "r")
        cfg.irreducible = bool(raw.get("irreducible", False))
        if raw.get("k") is not None:
            cfg.k_range = _parse_k_range(raw["k"])
        if raw.get("trunc") is not None:
            cfg.trunc = _parse_int(raw["trunc"], "trunc")
        if raw.get("seed") is not None:
            cfg.seed = _parse_int(raw["seed"], "seed")
        if raw.get("format") is not None:
            cfg.fmt = str(raw["format"])
        if raw.get("rays") is not None:
            cfg.rays = _parse_rays(raw["rays"])
        if raw.get("records") is not None:
            cfg.records = tuple(raw["records"])

    if getattr(args, "family", None):
        cfg.family = args.family
    for item in getattr(args, "param", None) or []:
        if "=" not in item:
            raise ConfigError(f"--param wants key=value, got {item!r}")
        key, val = item.split("=", 1)
        cfg.params[key] = _parse_fraction(val, f"parameter {key}")
    if getattr(args, "k", None) is not None:
        cfg.k_range = _parse_k_range(args.k)
    if getattr(args, "trunc", None) is not None:
        cfg.trunc = args.trunc
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "format", None) is not None:
        cfg.fmt = args.format
    cfg.parallel = bool(getattr(args, "parallel", False))
    if getattr(args, "r", None) is not None:
        cfg.r = args.r
    if getattr(args, "irreducible", False):
        cfg.irreducible = True
    if getattr(args, "rays", None):
        cfg.rays = _parse_rays(args.rays)
    if getattr(args, "corrupt", None):
        cfg.corrupt = args.corrupt

    if cfg.trunc < 8:
        raise ConfigError("truncation below 8 cannot certify any boundary")
    if cfg.fmt not in ("text", "json"):
        raise ConfigError(f"format must be text or json, not {cfg.fmt!r}")
    if cfg.r is not None and cfg.r < 1:
        raise ConfigError("component count r must be at least 1")
    return cfg


# -- curve construction -------------------------------------------------


def _parse_poly(text: str, names: tuple[str, str] = ("x", "y")) -> BiPoly:
    try:
        return poly_parse(text, names=names)
    except ParseError as exc:
        raise ConfigError(str(exc)) from None


def _build_curve(cfg: JobConfig) -> tuple[GlobalCurve, dict, list[str]]:
    """Returns the curve, the input block of the report, and any input
    warnings."""
    sources = [
        cfg.family is not None,
        cfg.configuration is not None,
        cfg.f is not None or cfg.f2 is not None,
        cfg.germ is not None,
    ]
    if sum(sources) != 1:
        raise ConfigError(
            "give exactly one input: family, configuration, f (or f2+f5), "
            "or germ"
        )

    if cfg.family is not None:
        try:
            spec = family_instance(cfg.family, cfg.params)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        phi = (
            TruncSeries.from_map(cfg.phi, cfg.trunc)
            if cfg.phi is not None
            else None
        )
        model = local_model(spec, phi=phi, order=cfg.trunc)
        curve = global_curve(model, r=cfg.r, irreducible=cfg.irreducible)
        info = {
            "input": spec_to_json_dict(spec),
            "model": model_to_json_dict(model),
        }
        return curve, info, []

    if cfg.configuration is not None:
        if cfg.configuration != "five_conics":
            raise ConfigError(
                f"unknown configuration {cfg.configuration!r}; "
                "the only builtin is five_conics"
            )
        try:
            curve = five_conic_configuration(
                ts=cfg.ts or (1, 2, 3, 4, 5), order=cfg.trunc
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if cfg.r is not None and cfg.r != curve.r:
            raise ConfigError(f"five_conics has r = {curve.r}, not {cfg.r}")
        info = {
            "input": {
                "configuration": "five_conics",
                "f": poly_str(curve.f),
                "r": curve.r,
            }
        }
        return curve, info, []

    if cfg.f is not None or cfg.f2 is not None:
        return _build_inline_curve(cfg)

    if cfg.degree is None:
        raise ConfigError("germ input needs an explicit degree")
    g = _parse_poly(cfg.germ, UV)
    point = LocalPoint(Analyzer(g, cfg.degree), (Frac(0), Frac(0)), None)
    curve = GlobalCurve(
        d=cfg.degree,
        points=(point,),
        r=cfg.r,
        f=g,
        irreducible=cfg.irreducible,
    )
    info = {"input": {"germ": poly_str(g, names=UV), "degree": cfg.degree}}
    return curve, info, []


def _build_inline_curve(cfg: JobConfig) -> tuple[GlobalCurve, dict, list[str]]:
    """Inline projective curve: f (or f2 and f5 to compose), singular
    points with optional coordinate changes.  Smooth points are reported
    and skipped rather than rejected."""
    if cfg.f2 is not None or cfg.f5 is not None:
        if cfg.f2 is None or cfg.f5 is None or cfg.f is not None:
            raise ConfigError("give either f, or f2 and f5 together")
        try:
            f = torus_compose(_parse_poly(cfg.f2), _parse_poly(cfg.f5))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    else:
        f = _parse_poly(cfg.f)
    d = f.total_degree()
    if d < 1:
        raise ConfigError("the curve polynomial must be nonconstant")

    raw_points = cfg.points or ({"location": ["0", "0"]},)
    points = []
    warnings: list[str] = []
    for i, entry in enumerate(raw_points):
        if not isinstance(entry, dict):
            raise ConfigError(f"point #{i} must be an object")
        loc_raw = entry.get("location", ["0", "0"])
        if len(loc_raw) != 2:
            raise ConfigError(f"point #{i} location must be a pair")
        loc = (
            _parse_fraction(loc_raw[0], "location"),
            _parse_fraction(loc_raw[1], "location"),
        )
        phi_map = entry.get("phi")
        if phi_map is not None:
            phi = TruncSeries.from_map(_parse_phi(phi_map), cfg.trunc)
        elif i == 0 and cfg.phi is not None:
            phi = TruncSeries.from_map(cfg.phi, cfg.trunc)
        else:
            phi = None
        local = poly_translate(f, *loc)
        mult = min(a + b for a, b in local.terms)
        if mult == 0:
            raise ConfigError(
                f"point #{i} at ({loc[0]}, {loc[1]}) does not lie on the curve"
            )
        if mult == 1:
            warnings.append(
                f"point #{i} at ({loc[0]}, {loc[1]}) is a smooth point of "
                "the curve; skipped"
            )
            continue
        germ = substitute_shift(local, phi) if phi is not None else local
        points.append(LocalPoint(Analyzer(germ, d), loc, phi))

    if not points:
        warnings.append("no singular points: the curve is smooth there")
    curve = GlobalCurve(
        d=d,
        points=tuple(points),
        r=cfg.r,
        f=f,
        irreducible=cfg.irreducible,
    )
    return curve, {"input": {"f": poly_str(f), "degree": d}}, warnings


# -- report rendering ---------------------------------------------------


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines: list[str] = []
    _render_text(report, lines, 0)
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines) + "\n"


def _flat(val) -> bool:
    if not isinstance(val, list):
        return False
    return all(
        not isinstance(x, (dict, list))
        and not (isinstance(x, str) and (" " in x or len(x) > 24))
        for x in val
    )


def _join(val: list) -> str:
    return ", ".join(_scalar(x) for x in val) if val else "none"


def _render_text(node, lines: list[str], depth: int) -> None:
    pad = "  " * depth
    if isinstance(node, dict):
        for key, val in node.items():
            if _flat(val):
                lines.append(f"{pad}{key}: {_join(val)}")
            elif isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                _render_text(val, lines, depth + 1)
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(node, list):
        for val in node:
            if _flat(val):
                lines.append(f"{pad}{_join(val)}")
            elif isinstance(val, (dict, list)):
                _render_text(val, lines, depth)
                lines.append("")
            else:
                lines.append(f"{pad}{_scalar(val)}")
    else:
        lines.append(f"{pad}{_scalar(node)}")


def _scalar(val) -> str:
    if isinstance(val, bool):
        return "yes" if val else "no"
    if val is None:
        return "-"
    if isinstance(val, (list, dict)) and not val:
        return "none"
    return str(val)


# -- commands -----------------------------------------------------------


def _ideal_row(analyzer: Analyzer, k: int) -> dict:
    ideal = analyzer.ideal(k)
    row = ideal_to_json_dict(ideal)
    row["iota"] = analyzer.iota(ideal)
    return row


def _point_block(pt: LocalPoint) -> dict:
    nd = newton_boundary(pt.analyzer.f)
    return {
        "location": [str(pt.location[0]), str(pt.location[1])],
        "boundary": {
            "vertices": [list(v) for v in nd.vertices],
            "face_weights": [list(w.as_pair()) for w in nd.weights()],
        },
        "resolution": json.loads(resolution_to_json(pt.analyzer.res)),
    }


def cmd_analyze(cfg: JobConfig, out) -> int:
    curve, info, warnings = _build_curve(cfg)
    lo, hi = cfg.k_range or (1, curve.d - 1)
    if hi > curve.d - 1:
        raise ConfigError(
            f"k range ends at {hi} but a degree-{curve.d} curve only has "
            f"levels up to {curve.d - 1}"
        )

    report: dict = {"command": "analyze", "seed": cfg.seed, **info}
    report["points"] = [_point_block(pt) for pt in curve.points]

    ks = list(range(max(lo, 3), hi + 1))

    def level_rows(pt: LocalPoint) -> list[dict]:
        return [_ideal_row(pt.analyzer, k) for k in ks]

    if cfg.parallel and curve.points:
        with ThreadPoolExecutor() as pool:
            tables = list(pool.map(level_rows, curve.points))
    else:
        tables = [level_rows(pt) for pt in curve.points]
    for block, rows in zip(report["points"], tables):
        block["levels"] = rows

    r = curve.r
    if not curve.points and r is None:
        # a smooth plane curve is irreducible
        r = 1
        warnings.append("smooth curve: component count forced to r = 1")
    data = ell_values(curve)
    if cfg.germ is not None and any(
        rec.path == "matrix" for rec in data.records
    ):
        # trivial and shortcut levels depend only on the local quotients,
        # but matrix levels rank the point against the global linear
        # systems, and a bare germ placed literally at the origin with its
        # tangent along an axis is not in general position for that
        report["ell"] = None
        report["alexander"] = None
        report["warnings"] = warnings + [
            "a bare germ does not position the point for the cokernel "
            "matrices; give the full curve, or add irreducible: true to "
            "use the placement-free contact-order bound"
        ]
        out.write(_render(report, cfg.fmt))
        return EXIT_OK
    warnings.extend(data.warnings)
    report["ell"] = {
        "records": [
            {
                "k": rec.k,
                "rho": rec.rho,
                "rho_tilde": rec.rho_tilde,
                "path": rec.path,
                "kernel_dim": rec.kernel_dim,
                "ell": rec.ell,
            }
            for rec in data.records
            if lo <= rec.k <= hi
        ],
        "vector": list(data.vector()),
    }
    if r is None:
        report["alexander"] = None
        warnings.append(
            "component count r not given; levels were computed but the "
            "polynomial cannot be assembled"
        )
    else:
        alex = assemble(data.vector(), curve.d, r)
        report["alexander"] = {
            "r": r,
            "reduced": alex.reduced_text(),
            "factored": alex.factored_text(),
            "full": alex.full_text(),
        }
    report["warnings"] = _collapse_level_warnings(warnings)
    out.write(_render(report, cfg.fmt))
    return EXIT_OK


def _collapse_level_warnings(warnings: list[str]) -> list[str]:
    """Per-level warnings usually repeat the same sentence for a run of
    levels; fold those into one line with the level range."""
    groups: dict[str, list[int]] = {}
    out: list[str] = []
    for w in warnings:
        m = re.match(r"level (\d+): (.*)", w, re.DOTALL)
        if m:
            groups.setdefault(m.group(2), []).append(int(m.group(1)))
        else:
            out.append(w)
    for text, levels in groups.items():
        if len(levels) == 1:
            out.append(f"level {levels[0]}: {text}")
        else:
            out.append(f"levels {min(levels)}..{max(levels)}: {text}")
    return out


def _corrupted(rows: dict, corrupt: str, table: str) -> dict:
    """Test hook: 'table:k:field=value' overrides one expected cell so
    the diff path can be exercised end to end."""
    try:
        where, value = corrupt.split("=", 1)
        name, k_text, fld = where.split(":")
    except ValueError:
        raise ConfigError(
            f"bad corruption spec {corrupt!r}; use table:k:field=value"
        ) from None
    k = _parse_int(k_text, "corruption level")
    if name != table or k not in rows:
        return rows
    if fld not in ("rho", "iota"):
        raise ConfigError("only rho and iota cells can be corrupted")
    out = dict(rows)
    row = list(out[k])
    row[-2 if fld == "rho" else -1] = _parse_int(value, "corruption value")
    out[k] = tuple(row)
    return out


def cmd_tables(cfg: JobConfig, out) -> int:
    lo, hi = cfg.k_range or (3, 9)
    report: dict = {"command": "tables", "tables": []}
    diffs: list[str] = []

    def germ_job(table: fixtures.GermTable):
        rows = {k: v for k, v in table.rows.items() if lo <= k <= hi}
        if cfg.corrupt:
            rows = _corrupted(rows, cfg.corrupt, table.name)
        trimmed = fixtures.GermTable(table.name, table.germ, table.degree, rows)
        return table.name, fixtures.check_germ_table(trimmed), len(rows)

    def family_job(table: fixtures.FamilyIdealTable):
        rows = {k: v for k, v in table.rows.items() if lo <= k <= hi}
        if cfg.corrupt:
            rows = _corrupted(rows, cfg.corrupt, table.family)
        trimmed = fixtures.FamilyIdealTable(table.family, rows)
        return table.family, fixtures.check_family_table(trimmed), len(rows)

    jobs = [lambda t=t: germ_job(t) for t in fixtures.GERM_TABLES]
    jobs += [lambda t=t: family_job(t) for t in fixtures.FAMILY_IDEAL_TABLES]
    if cfg.parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda job: job(), jobs))
    else:
        results = [job() for job in jobs]
    for name, table_diffs, nrows in results:
        report["tables"].append(
            {"name": name, "rows": nrows, "differences": table_diffs}
        )
        diffs.extend(table_diffs)

    for name, check in (
        ("subdivisions", fixtures.check_subdivisions),
        ("splittings", fixtures.check_pluecker),
    ):
        extra = check()
        report["tables"].append(
            {"name": name, "rows": None, "differences": extra}
        )
        diffs.extend(extra)

    report["clean"] = not diffs
    out.write(_render(report, cfg.fmt))
    return EXIT_OK if not diffs else EXIT_MISMATCH


def cmd_ideal(cfg: JobConfig, out) -> int:
    if cfg.k_range is None:
        raise ConfigError("ideal needs --k (a level or a range)")
    lo, hi = cfg.k_range
    curve, info, warnings = _build_curve(cfg)
    if not curve.points:
        raise ConfigError("the input has no singular point to take ideals at")
    report: dict = {"command": "ideal", **info, "points": []}
    for pt in curve.points:
        rows = [_ideal_row(pt.analyzer, k) for k in range(max(lo, 3), hi + 1)]
        report["points"].append(
            {
                "location": [str(pt.location[0]), str(pt.location[1])],
                "levels": rows,
            }
        )
    if warnings:
        report["warnings"] = warnings
    out.write(_render(report, cfg.fmt))
    return EXIT_OK


def cmd_subdivide(cfg: JobConfig, out) -> int:
    if not cfg.rays:
        raise ConfigError("subdivide needs at least one ray (P,Q ...)")
    vectors = [E1, E2]
    for p, q in cfg.rays:
        if p < 0 or q < 0 or (p, q) == (0, 0):
            raise ConfigError(f"ray ({p}, {q}) is outside the first quadrant")
        vectors.append(WeightVector(p, q))
    fan = canonical_subdivision(vectors)
    report = {
        "command": "subdivide",
        "input": [list(r) for r in cfg.rays],
        "rays": [
            {"ray": list(w.as_pair()), "mark": mark}
            for w, mark in zip(fan.vectors, fan.marks)
        ],
        "regular": fan.is_regular(),
    }
    out.write(_render(report, cfg.fmt))
    return EXIT_OK


def _record_from_dict(i: int, raw: dict) -> SingularityRecord:
    if not isinstance(raw, dict):
        raise ConfigError(f"record #{i} must be an object")
    if "name" in raw:
        try:
            _, rec = fixtures.pluecker_config(raw["name"])
        except (KeyError, ValueError):
            raise ConfigError(
                f"record #{i}: unknown builtin {raw['name']!r}; choose from "
                f"{', '.join(sorted(fixtures.PLUECKER_FIXTURES))}"
            ) from None
        return rec
    try:
        branches = tuple(
            BranchSpec(
                label=str(b.get("label", "smooth")),
                delta=int(b.get("delta", 0)),
                min_degree=int(b.get("min_degree", 1)),
            )
            for b in raw.get("branches", ())
        )
        meets = tuple(
            tuple(int(x) for x in row) for row in raw.get("meets", ())
        )
        return SingularityRecord(
            label=str(raw.get("label", f"point{i}")),
            mu=int(raw["mu"]),
            r_loc=int(raw["r_loc"]),
            branches=branches,
            meets=meets,
        )
    except KeyError as exc:
        raise ConfigError(f"record #{i} is missing {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"record #{i} is malformed: {exc}") from None


def cmd_pluecker(cfg: JobConfig, out) -> int:
    if cfg.degree is None:
        raise ConfigError("pluecker needs the curve degree in the config")
    records = [_record_from_dict(i, r) for i, r in enumerate(cfg.records)]
    hyps = enumerate_splittings(cfg.degree, records)
    # one verdict row per degree partition; the assignment detail stays in
    # the library
    partitions: dict[tuple, dict] = {}
    for h in hyps:
        d = hypothesis_to_dict(h)
        key = tuple(d["degrees"])
        row = partitions.setdefault(
            key,
            {
                "degrees": list(key),
                "assignments": 0,
                "feasible": 0,
                "reason": None,
            },
        )
        row["assignments"] += 1
        if d["feasible"]:
            row["feasible"] += 1
            row["reason"] = None
        elif row["feasible"] == 0:
            row["reason"] = d["reason"]
    report = {
        "command": "pluecker",
        "degree": cfg.degree,
        "records": [rec.label for rec in records],
        "partitions": list(partitions.values()),
        "survivors": [list(p) for p in survivors(hyps)],
    }
    out.write(_render(report, cfg.fmt))
    return EXIT_OK


# -- entry point --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adjalex",
        description="Alexander polynomials of plane curve configurations "
        "through adjunction ideals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("--input", help="JSON config file")
        p.add_argument("--k", help="level or range LO..HI")
        p.add_argument("--trunc", type=int, help="series truncation bound")
        p.add_argument("--seed", type=int, help="seed for generic sampling")
        p.add_argument("--format", choices=("text", "json"))
        p.add_argument("--parallel", action="store_true")

    p = sub.add_parser("analyze", help="full pipeline on one curve")
    p.add_argument("--family", help=f"one of: {', '.join(family_names())}")
    p.add_argument("--param", action="append", metavar="KEY=VAL")
    p.add_argument("--r", type=int, help="number of irreducible components")
    p.add_argument(
        "--irreducible", action="store_true", help="assert an irreducible curve"
    )
    common(p)

    p = sub.add_parser("tables", help="regenerate and diff reference tables")
    p.add_argument("--corrupt", help=argparse.SUPPRESS)  # test hook
    common(p, with_input=False)

    p = sub.add_parser("ideal", help="print level-k adjunction ideals")
    p.add_argument("--family", help=f"one of: {', '.join(family_names())}")
    p.add_argument("--param", action="append", metavar="KEY=VAL")
    common(p)

    p = sub.add_parser("subdivide", help="canonical regular fan subdivision")
    p.add_argument("rays", nargs="*", metavar="P,Q")
    common(p)

    p = sub.add_parser("pluecker", help="splitting feasibility search")
    common(p)

    return parser


HANDLERS = {
    "analyze": cmd_analyze,
    "tables": cmd_tables,
    "ideal": cmd_ideal,
    "subdivide": cmd_subdivide,
    "pluecker": cmd_pluecker,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        return HANDLERS[args.command](cfg, out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TruncationError as exc:
        print(f"truncation exhausted: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except AdjalexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
