"""Batch experiment driver: flat key=value configs in, CSV and SVG out.

One config file describes one experiment.  Runs are deterministic: a fixed
seed reproduces every output byte for byte.  Exit codes: 0 on success, 2 when
a structural invariant fails while running, 3 for configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path
from random import Random

import numpy as np

from .groups import DEFAULT_BALL_CAP, BallCapError, group_from_name
from .group_ring import (
    RingElement,
    class_sum,
    conjugacy_class,
    format_ring_element,
    parse_ring_element,
)
from .resolutions import (
    catalog_presentation,
    evaluate_word,
    fox_derivative,
    resolution_from_name,
    validate,
)
from .lp_complex import (
    ChainVector,
    CochainVector,
    TruncatedSpace,
    assemble_boundary,
    pairing,
    vector_from_ring_parts,
)
from .homotopy import class_sum_homotopy_residual, homotopy_residual, random_cochain
from .vanishing import (
    DecayCurve,
    InvariantViolation,
    boundary_distance_curve,
    central_catalog,
    finite_group_homology_ranks,
    finite_index_compare,
    translation_pairing_decay,
)
from . import checks

EXIT_OK = 0
EXIT_INVARIANT = 2
EXIT_CONFIG = 3

DECAY_HEADER = ["experiment", "group", "resolution", "degree", "p", "index_kind",
                "index", "value", "iterations", "converged"]
HOMOTOPY_HEADER = ["group", "h_or_class", "degree", "R", "residual_num",
                   "residual_den"]
RESOLUTION_HEADER = ["resolution", "group", "check", "index", "ok", "detail"]
ADJOINTNESS_HEADER = ["group", "resolution", "degree", "R", "p", "draws",
                      "max_adjoint_gap", "max_holder_excess"]
FINITE_HOMOLOGY_HEADER = ["group", "n", "N", "p", "degree", "dimension"]
FINITE_INDEX_HEADER = ["n", "m", "p", "degree", "dim_full", "dim_subgroup",
                       "equal"]

EXPERIMENTS = ("verify-resolutions", "verify-homotopy", "class-sum-homotopy",
               "pairing-adjointness", "distance-curve", "translation-decay",
               "finite-homology", "finite-index")

VERIFY_RESOLUTION_NAMES = tuple(checks.CATALOG_RESOLUTIONS)

_SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                "#8c564b")


class ConfigError(ValueError):
    """A config file names something unknown or inconsistent."""


def fmt_float(value: float) -> str:
    return f"{float(value):.17g}"


def fmt_bool(value: bool) -> str:
    return "true" if value else "false"


# -- config parsing ---------------------------------------------------------------

_KNOWN_KEYS = {
    "experiment", "group", "resolution", "degree", "p", "R", "indices", "x",
    "y", "h", "class", "n", "m", "N", "count", "seed", "output", "max_ball",
    "max_iter", "radius", "cap",
}


def parse_config(path: str | Path) -> dict[str, str]:
    cfg: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        cfg[key] = value.strip()
    if "experiment" not in cfg:
        raise ConfigError(f"{path}: missing required key 'experiment'")
    return cfg


def _int_list(text: str, field: str) -> list[int]:
    """Parse "1..8" or "1,2,3" (ranges are inclusive)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, _, hi = text.partition("..")
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError
            values = list(range(lo_i, hi_i + 1))
        else:
            values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"field {field}: cannot parse integer list {text!r}") \
            from None
    if not values:
        raise ConfigError(f"field {field}: empty list")
    return values


def _float_list(text: str, field: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"field {field}: cannot parse number list {text!r}") \
            from None
    if not values:
        raise ConfigError(f"field {field}: empty list")
    return values


def _require(cfg: dict, key: str) -> str:
    if key not in cfg:
        raise ConfigError(f"field {key}: required for experiment "
                          f"{cfg.get('experiment')!r}")
    return cfg[key]


def _int_field(cfg: dict, key: str, default=None) -> int:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"field {key}: required")
        return default
    try:
        return int(cfg[key])
    except ValueError:
        raise ConfigError(f"field {key}: not an integer: {cfg[key]!r}") from None


def _p_list(cfg: dict, default="2") -> list[float]:
    values = _float_list(cfg.get("p", default), "p")
    for p in values:
        if not p > 1.0:
            raise ConfigError("field p: p must exceed 1")
    return values


def _ball_cap(cfg: dict) -> int:
    if "max_ball" in cfg:
        return _int_field(cfg, "max_ball")
    env = os.environ.get("LAB_MAX_BALL")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"LAB_MAX_BALL: not an integer: {env!r}") from None
    return DEFAULT_BALL_CAP


def _group(cfg: dict):
    try:
        return group_from_name(_require(cfg, "group"), _ball_cap(cfg))
    except ValueError as exc:
        raise ConfigError(f"field group: {exc}") from None


# -- output writers ----------------------------------------------------------------


def _atomic_write(path: Path, data: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(data, encoding="utf-8")
    os.replace(tmp, path)


def write_csv(path: Path, header: list[str], rows: list[list[str]]):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _atomic_write(path, buffer.getvalue())


def svg_line_plot(series: list[tuple[str, list[tuple[float, float]]]],
                  title: str, xlabel: str, ylabel: str) -> str:
    """Self-contained polyline plot: one line per series, fixed palette."""
    width, height = 640, 420
    left, right, top, bottom = 70, 150, 40, 50
    xs = [pt[0] for _, pts in series for pt in pts]
    ys = [pt[1] for _, pts in series for pt in pts]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def sx(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * (width - left - right)

    def sy(y: float) -> float:
        return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="20" text-anchor="middle" '
        f'font-family="monospace" font-size="14">{title}</text>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" '
        f'y2="{height - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" '
        f'stroke="black"/>',
        f'<text x="{(left + width - right) // 2}" y="{height - 12}" '
        f'text-anchor="middle" font-family="monospace" font-size="12">'
        f'{xlabel}</text>',
        f'<text x="18" y="{(top + height - bottom) // 2}" text-anchor="middle" '
        f'font-family="monospace" font-size="12" '
        f'transform="rotate(-90 18 {(top + height - bottom) // 2})">'
        f'{ylabel}</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        x_val = x_lo + frac * (x_hi - x_lo)
        y_val = y_lo + frac * (y_hi - y_lo)
        parts.append(
            f'<text x="{sx(x_val):.2f}" y="{height - bottom + 16}" '
            f'text-anchor="middle" font-family="monospace" font-size="10">'
            f'{x_val:.4g}</text>')
        parts.append(
            f'<text x="{left - 6}" y="{sy(y_val):.2f}" text-anchor="end" '
            f'font-family="monospace" font-size="10">{y_val:.4g}</text>')
    for k, (label, pts) in enumerate(series):
        color = _SVG_PALETTE[k % len(_SVG_PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(f'<polyline points="{coords}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        y_leg = top + 14 * (k + 1)
        parts.append(f'<line x1="{width - right + 8}" y1="{y_leg - 4}" '
                     f'x2="{width - right + 28}" y2="{y_leg - 4}" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{width - right + 32}" y="{y_leg}" '
                     f'font-family="monospace" font-size="11">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _curve_rows(curve: DecayCurve) -> list[list[str]]:
    rows = []
    for row in curve.rows:
        rows.append([curve.experiment, curve.group, curve.resolution,
                     str(curve.degree), fmt_float(row.p), row.index_kind,
                     str(row.index), fmt_float(row.value), str(row.iterations),
                     fmt_bool(row.converged)])
    return rows


def _write_curve(curve: DecayCurve, out_path: Path, xlabel: str):
    write_csv(out_path, DECAY_HEADER, _curve_rows(curve))
    series = {}
    for row in curve.rows:
        series.setdefault(f"p={row.p:g}", []).append((float(row.index), row.value))
    svg = svg_line_plot(sorted(series.items()),
                        f"{curve.experiment} {curve.group}", xlabel, "value")
    _atomic_write(out_path.with_suffix(".svg"), svg)


# -- experiment runners ---------------------------------------------------------


def _default_central_element(group):
    if group.signature[0] == "heisenberg":
        return group.element((0, 0, 1))
    for g in group.generators:
        if RingElement.from_element(g).is_central():
            return g
    raise ConfigError(
        f"field h: required for {group.name} (no central generator)")


def _run_verify_resolutions(cfg: dict, out_path: Path):
    cap = _ball_cap(cfg)
    rows = []
    failures = 0
    for name in VERIFY_RESOLUTION_NAMES:
        res = resolution_from_name(name, cap)
        report = validate(res)
        for check in report.checks:
            rows.append([name, res.group.name, check.name,
                         "" if check.index is None else str(check.index),
                         fmt_bool(check.ok), check.detail])
            failures += 0 if check.ok else 1
    for gname in ("Z^2", "Z^3", "free:2", "dihedral-inf", "heisenberg",
                  "cyclic:4", "S3"):
        presentation, group = catalog_presentation(gname, cap)
        gens = group.generators
        one = RingElement.one(group)
        for idx, word in enumerate(presentation.relators):
            lhs = RingElement.zero(group)
            for j, g in enumerate(gens):
                lhs = lhs + fox_derivative(group, word, j, gens) * \
                    (RingElement.from_element(g) - one)
            rhs = RingElement.from_element(evaluate_word(group, word, gens)) - one
            ok = lhs == rhs
            rows.append([f"fox:{gname}", group.name, "fox_identity", str(idx),
                         fmt_bool(ok), "" if ok else str(lhs - rhs)])
            failures += 0 if ok else 1
    write_csv(out_path, RESOLUTION_HEADER, rows)
    if failures:
        raise InvariantViolation(f"{failures} resolution checks failed")


def _run_verify_homotopy(cfg: dict, out_path: Path):
    group = _group(cfg)
    degree = _int_field(cfg, "degree", 1)
    radius = _int_field(cfg, "R", 3)
    count = _int_field(cfg, "count", 5)
    seed = _int_field(cfg, "seed", 0)
    if "h" in cfg:
        try:
            h = group.parse_element(cfg["h"])
        except ValueError as exc:
            raise ConfigError(f"field h: {exc}") from None
    else:
        h = _default_central_element(group)
    rng = Random(seed)
    rows = []
    worst = None
    for _ in range(count):
        phi = random_cochain(group, degree, radius, rng)
        report = homotopy_residual(phi, h)
        rows.append([group.name, str(h), str(degree), str(radius),
                     str(report.max_abs.numerator),
                     str(report.max_abs.denominator)])
        if worst is None or report.max_abs > worst:
            worst = report.max_abs
    write_csv(out_path, HOMOTOPY_HEADER, rows)
    if worst != 0:
        raise InvariantViolation(
            f"homotopy residual must vanish for central {h}, got {worst}")


def _run_class_sum_homotopy(cfg: dict, out_path: Path):
    group = _group(cfg)
    degree = _int_field(cfg, "degree", 1)
    radius = _int_field(cfg, "R", 3)
    count = _int_field(cfg, "count", 3)
    seed = _int_field(cfg, "seed", 0)
    cap = _int_field(cfg, "cap", 10_000)
    try:
        representative = group.parse_element(_require(cfg, "class"))
    except ValueError as exc:
        raise ConfigError(f"field class: {exc}") from None
    orbit = conjugacy_class(representative, cap)
    if orbit is None:
        raise ConfigError(
            f"field class: conjugacy class of {representative} is not finite "
            f"within cap {cap}")
    label = "class:" + format_ring_element(class_sum(representative, cap))
    singleton_central = (len(orbit) == 1
                         and RingElement.from_element(representative).is_central())
    rng = Random(seed)
    rows = []
    for _ in range(count):
        phi = random_cochain(group, degree, radius, rng)
        report = class_sum_homotopy_residual(phi, orbit)
        rows.append([group.name, label, str(degree), str(radius),
                     str(report.max_abs.numerator),
                     str(report.max_abs.denominator)])
        if singleton_central and report.max_abs != 0:
            raise InvariantViolation(
                f"singleton central class must give residual 0, got "
                f"{report.max_abs}")
    write_csv(out_path, HOMOTOPY_HEADER, rows)


def _run_pairing_adjointness(cfg: dict, out_path: Path):
    cap = _ball_cap(cfg)
    try:
        res = resolution_from_name(_require(cfg, "resolution"), cap)
    except ValueError as exc:
        raise ConfigError(f"field resolution: {exc}") from None
    degree = _int_field(cfg, "degree", 1)
    radius = _int_field(cfg, "R", 3)
    draws = _int_field(cfg, "count", 1000)
    seed = _int_field(cfg, "seed", 0)
    rows = []
    for p in _p_list(cfg, default="1.5,2,3"):
        rng = np.random.default_rng(seed)
        op = assemble_boundary(res, degree, radius, p)
        max_gap = 0.0
        max_excess = float("-inf")
        for _ in range(draws):
            x = rng.standard_normal(op.domain.dim)
            y = rng.standard_normal(op.codomain.dim)
            gap = abs(float(y @ (op.matrix @ x)) - float((op.matrix.T @ y) @ x))
            bound = 1e-10 * (1 + float(np.linalg.norm(x))) * \
                (1 + float(np.linalg.norm(y)))
            if gap > bound:
                raise InvariantViolation(
                    f"adjointness gap {gap:.3e} exceeds {bound:.3e} at p={p}")
            max_gap = max(max_gap, gap)
            xv = ChainVector(op.domain, rng.standard_normal(op.domain.dim))
            yv = CochainVector(op.domain, rng.standard_normal(op.domain.dim))
            excess = abs(pairing(yv, xv)) - yv.norm() * xv.norm()
            if excess > 1e-12 * (1 + yv.norm() * xv.norm()):
                raise InvariantViolation(
                    f"pairing bound violated by {excess:.3e} at p={p}")
            max_excess = max(max_excess, excess)
        rows.append([res.group.name, res.name, str(degree), str(radius),
                     fmt_float(p), str(draws), fmt_float(max_gap),
                     fmt_float(max_excess)])
    write_csv(out_path, ADJOINTNESS_HEADER, rows)


def _parse_ring_parts(cfg: dict, key: str, group, rank: int):
    if key not in cfg:
        parts = [RingElement.one(group)]
        parts.extend(RingElement.zero(group) for _ in range(rank - 1))
        return parts
    pieces = [piece.strip() for piece in cfg[key].split(";")]
    if len(pieces) != rank:
        raise ConfigError(
            f"field {key}: expected {rank} part(s) separated by ';', got "
            f"{len(pieces)}")
    try:
        return [parse_ring_element(group, piece) for piece in pieces]
    except ValueError as exc:
        raise ConfigError(f"field {key}: {exc}") from None


def _run_distance_curve(cfg: dict, out_path: Path):
    cap = _ball_cap(cfg)
    try:
        res = resolution_from_name(_require(cfg, "resolution"), cap)
    except ValueError as exc:
        raise ConfigError(f"field resolution: {exc}") from None
    degree = _int_field(cfg, "degree", 0)
    if not 0 <= degree < res.length:
        raise ConfigError(
            f"field degree: resolution {res.name} supports degrees "
            f"0..{res.length - 1}")
    radii = _int_list(_require(cfg, "R"), "R")
    p_values = _p_list(cfg)
    max_iter = _int_field(cfg, "max_iter", 500)
    x_parts = _parse_ring_parts(cfg, "x", res.group, res.ranks[degree])
    curve = boundary_distance_curve(res, degree, x_parts, p_values, radii,
                                    max_iterations=max_iter)
    _write_curve(curve, out_path, "R")


def _run_translation_decay(cfg: dict, out_path: Path):
    group = _group(cfg)
    radius = _int_field(cfg, "radius", 4)
    seed = _int_field(cfg, "seed", 0)
    indices = _int_list(_require(cfg, "indices"), "indices")
    try:
        sequence = central_catalog(group, max((abs(i) for i in indices),
                                              default=1))
    except ValueError as exc:
        raise ConfigError(f"field group: {exc}") from None
    if sequence.kind == "class-sums" and min(indices) < 0:
        raise ConfigError("field indices: class-sum indices must be >= 0")
    all_rows = []
    for p in _p_list(cfg):
        space = TruncatedSpace(group, 1, radius, p)
        rng = np.random.default_rng(seed)
        if "x" in cfg:
            x = vector_from_ring_parts(space, _parse_ring_parts(
                cfg, "x", group, 1))
        else:
            x = ChainVector(space, rng.standard_normal(space.dim))
        if "y" in cfg:
            y = vector_from_ring_parts(space, _parse_ring_parts(
                cfg, "y", group, 1), cls=CochainVector)
        else:
            y = CochainVector(space, rng.standard_normal(space.dim))
        curve = translation_pairing_decay(y, x, sequence, indices)
        all_rows.extend(curve.rows)
    merged = DecayCurve("translation-decay", group.name, "-", 0,
                        tuple(all_rows))
    _write_curve(merged, out_path, "translation index")


def _run_finite_homology(cfg: dict, out_path: Path):
    n = _int_field(cfg, "n")
    length = _int_field(cfg, "N", 3)
    if n < 2:
        raise ConfigError(f"field n: cyclic order must be at least 2, got {n}")
    rows = []
    seen = set()
    for p in _p_list(cfg):
        dims = finite_group_homology_ranks(n, length, p)
        seen.add(dims)
        for degree, dim in enumerate(dims):
            rows.append([f"cyclic:{n}", str(n), str(length), fmt_float(p),
                         str(degree), str(dim)])
    write_csv(out_path, FINITE_HOMOLOGY_HEADER, rows)
    if len(seen) != 1:
        raise InvariantViolation(
            "homology dimensions changed with p at finite dimension")


def _run_finite_index(cfg: dict, out_path: Path):
    n = _int_field(cfg, "n")
    m = _int_field(cfg, "m")
    length = _int_field(cfg, "N", 3)
    rows = []
    for p in _p_list(cfg):
        try:
            report = finite_index_compare(n, m, p, length=length)
        except ValueError as exc:
            raise ConfigError(f"field m: {exc}") from None
        for degree in range(length + 1):
            rows.append([str(n), str(m), fmt_float(p), str(degree),
                         str(report.dims_group[degree]),
                         str(report.dims_subgroup[degree]),
                         fmt_bool(report.equal)])
        if not report.equal:
            raise InvariantViolation(
                f"dimensions differ between cyclic:{n} and cyclic:{m}")
    write_csv(out_path, FINITE_INDEX_HEADER, rows)


_RUNNERS = {
    "verify-resolutions": _run_verify_resolutions,
    "verify-homotopy": _run_verify_homotopy,
    "class-sum-homotopy": _run_class_sum_homotopy,
    "pairing-adjointness": _run_pairing_adjointness,
    "distance-curve": _run_distance_curve,
    "translation-decay": _run_translation_decay,
    "finite-homology": _run_finite_homology,
    "finite-index": _run_finite_index,
}


def run_config(path: str | Path) -> Path:
    """Execute one experiment config; returns the CSV output path."""
    cfg = parse_config(path)
    experiment = cfg["experiment"]
    if experiment not in _RUNNERS:
        raise ConfigError(
            f"field experiment: unknown experiment {experiment!r}; choose one "
            f"of {', '.join(EXPERIMENTS)}")
    out_path = Path(cfg.get("output", f"{experiment}.csv"))
    _RUNNERS[experiment](cfg, out_path)
    return out_path


def list_catalog() -> str:
    lines = [
        "groups:",
        "  trivial            one element",
        "  cyclic:<n>         finite cyclic of order n        (e.g. cyclic:4)",
        "  Z^<d>              free abelian of rank d          (e.g. Z^2)",
        "  free:<k>           free group of rank k            (e.g. free:2)",
        "  dihedral-inf       infinite dihedral",
        "  heisenberg         discrete Heisenberg",
        "  S3                 symmetric group on three points",
        "resolutions:",
        "  cyclic-inf         length 1 over Z^1, boundary t - 1",
        "  cyclic:<n>:<N>     period-two over cyclic:n, length N",
        "  lattice:<d>        tensor resolution over Z^d, d <= 3",
        "  fox:<group>        length 2 from the catalog presentation",
        "  bar:<group>:<n>:<R>   bar-complex slice basis (degree n, ball R)",
        "experiments:",
    ]
    lines.extend(f"  {name}" for name in EXPERIMENTS)
    lines.append("config keys: experiment group resolution degree p R indices "
                 "x y h class n m N count seed output max_ball max_iter "
                 "radius cap")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lab",
        description="run catalog verifications and vanishing experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    run_parser = sub.add_parser("run", help="run one or more experiment configs")
    run_parser.add_argument("configs", nargs="+", help="key=value config files")
    sub.add_parser("list", help="print the group/resolution/experiment catalog")
    sub.add_parser("verify-all", help="run every invariant suite")
    args = parser.parse_args(argv)

    if args.command == "list":
        print(list_catalog())
        return EXIT_OK
    if args.command == "verify-all":
        outcomes = checks.run_all(verbose=True)
        return EXIT_OK if all(o.ok for o in outcomes) else EXIT_INVARIANT
    status = EXIT_OK
    for config_path in args.configs:
        try:
            out = run_config(config_path)
            print(f"{config_path}: wrote {out}")
        except (ConfigError, FileNotFoundError) as exc:
            print(f"{config_path}: config error: {exc}", file=sys.stderr)
            status = max(status, EXIT_CONFIG)
        except (InvariantViolation, AssertionError, BallCapError) as exc:
            print(f"{config_path}: invariant failure: {exc}", file=sys.stderr)
            status = max(status, EXIT_INVARIANT)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
