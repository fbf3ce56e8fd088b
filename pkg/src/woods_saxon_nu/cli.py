"""Command line front end: ``woods-saxon-nu <subcommand> [flags]``.

Exit codes: 0 success, 1 no levels / failed validation / invalid level,
2 usage error.  Energies are in the unit of ``--V0`` and lengths in the unit
of ``--R0``/``--a``; ``--hbar2-over-2mu`` must be given in matching units
(no physical constants are built in).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from . import __version__
from .core import PotentialSpec, effective_l
from .errors import GridTooCoarseError, InvalidInputError
from .numerov import PotentialKind, compare_levels, oscillator_selftest, solve_levels
from .pekeris import pekeris_error_profile
from .spectrum import depth_threshold, energy, enumerate_levels, levels_for_l
from .wavefunctions import normalize

UNITS_NOTE = ("energies in the unit of V0; lengths in the unit of R0 and a; "
              "hbar2_over_2mu supplied by the user in energy*length^2")

DEFAULTS = {"hbar2_over_2mu": 1.0, "D": 3, "format": "csv", "out": None, "verbose": False,
            "l_max": 0, "n": 0, "l": 0, "points_per_a": 200, "tol": 1e-5, "h": None,
            "selftest": False, "num": 11, "r_min": None, "r_max": None, "points": 101}


class UsageError(Exception):
    pass


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return "" if value is None else str(value)


class Table:
    """Columns plus rows plus ``#`` metadata, rendered to CSV or JSON."""

    def __init__(self, columns, metadata=None):
        self.columns = list(columns)
        self.rows: list[list] = []
        self.metadata: dict = dict(metadata or {})
        self.notes: list[str] = []

    def add(self, *row):
        self.rows.append(list(row))

    def to_csv(self) -> str:
        lines = [f"# {key}={fmt(value)}" for key, value in self.metadata.items()]
        lines += [f"# {note}" for note in self.notes]
        lines.append(",".join(self.columns))
        lines += [",".join(fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        def clean(v):
            if isinstance(v, (np.floating, float)):
                return None if math.isnan(v) else float(v)
            if isinstance(v, np.integer):
                return int(v)
            return v

        doc = {
            "metadata": {k: clean(v) for k, v in self.metadata.items()},
            "notes": self.notes,
            "columns": self.columns,
            "rows": [[clean(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def render(self, form: str) -> str:
        return self.to_json() if form == "json" else self.to_csv()


def parse_csv(text: str) -> tuple[dict, list[str], list[list[str]]]:
    """Inverse of ``Table.to_csv`` (values stay strings)."""
    meta, header, rows = {}, None, []
    for line in text.splitlines():
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key] = value
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows


def _shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--V0", type=float)
    parser.add_argument("--R0", type=float)
    parser.add_argument("--a", type=float)
    parser.add_argument("--hbar2-over-2mu", dest="hbar2_over_2mu", type=float)
    parser.add_argument("--D", type=int)
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out")
    parser.add_argument("--config", help="flat JSON object of defaults (keys = long flag names)")
    parser.add_argument("--verbose", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="woods-saxon-nu", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("levels", help="closed-form bound-state energies")
    _shared(p)
    p.add_argument("--l-max", dest="l_max", type=int)

    p = sub.add_parser("wavefunction", help="normalized radial eigenfunction table")
    _shared(p)
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--points-per-a", dest="points_per_a", type=int)

    p = sub.add_parser("validate", help="closed form vs Numerov (Pekeris and exact potentials)")
    _shared(p)
    p.add_argument("--l", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--h", type=float, help="Numerov grid step (default a/200)")
    p.add_argument("--selftest", action="store_true", default=None,
                   help="run the harmonic-oscillator self-test instead")

    p = sub.add_parser("scan", help="sweep one parameter and tabulate levels")
    _shared(p)
    p.add_argument("--param", choices=("V0", "R0", "a", "D"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--num", type=int)
    p.add_argument("--l-max", dest="l_max", type=int)

    p = sub.add_parser("pekeris-error", help="exact barrier vs its Pekeris stand-in")
    _shared(p)
    p.add_argument("--l", type=int)
    p.add_argument("--r-min", dest="r_min", type=float)
    p.add_argument("--r-max", dest="r_max", type=float)
    p.add_argument("--points", type=int)
    return parser


def resolve(args: argparse.Namespace) -> dict:
    """Merge built-in defaults, then the config file, then explicit flags."""
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a flat JSON object")
        cfg.update({k.replace("-", "_"): v for k, v in loaded.items()})
    cfg.update({k: v for k, v in vars(args).items() if v is not None and k != "config"})
    needs_spec = not (args.command == "validate" and cfg["selftest"])
    for key in ("V0", "R0", "a"):
        if needs_spec and cfg.get(key) is None:
            raise UsageError(f"--{key} is required (flag or config file)")
    return cfg


def make_spec(cfg: dict) -> PotentialSpec:
    return PotentialSpec(float(cfg["V0"]), float(cfg["R0"]), float(cfg["a"]),
                         float(cfg["hbar2_over_2mu"]), int(cfg["D"]))


def spec_metadata(spec: PotentialSpec) -> dict:
    meta = {"V0": spec.V0, "R0": spec.R0, "a": spec.a, "hbar2_over_2mu": spec.hbar2_over_2mu,
            "D": spec.D, "units": UNITS_NOTE}
    if spec.flags:
        meta["flags"] = " ".join(sorted(spec.flags))
    return meta


LEVEL_COLUMNS = ["D", "l", "l_tilde", "n", "n_prime", "epsilon", "E"]


def _empty_diagnostics(spec: PotentialSpec, l_max: int) -> list[str]:
    msgs = []
    for l in range(l_max + 1):
        lt = effective_l(l, spec.D)
        th = depth_threshold(spec, lt)
        if th.no_bound_states_ever:
            msg = f"l={l}: l_tilde={fmt(lt)} gives n' <= 0, no bound state at any depth"
            if spec.D == 3 and l == 0:
                msg += " (no s-wave bound state in three dimensions)"
        else:
            msg = f"l={l}: depth threshold V0 > {fmt(th.V0_min)}; reason {levels_for_l(spec, l, True)[0].quantization.failure_reason.value}"
        msgs.append(msg)
    return msgs


def cmd_levels(cfg: dict) -> tuple[Table, int, list[str]]:
    spec = make_spec(cfg)
    table = Table(LEVEL_COLUMNS, spec_metadata(spec))
    l_max = int(cfg["l_max"])
    for lv in enumerate_levels(spec, l_max, include_invalid=True):
        q = lv.quantization
        if lv.valid:
            table.add(spec.D, lv.l, lv.l_tilde, lv.n, q.n_prime, q.epsilon, lv.E)
        elif cfg["verbose"]:
            table.notes.append(f"skipped l={lv.l} n={lv.n} reason={q.failure_reason.value}")
    if not table.rows:
        return table, 1, ["no valid bound states"] + _empty_diagnostics(spec, l_max)
    return table, 0, []


def cmd_wavefunction(cfg: dict) -> tuple[Table, int, list[str]]:
    spec = make_spec(cfg)
    n, l = int(cfg["n"]), int(cfg["l"])
    level = energy(spec, n, l)
    meta = spec_metadata(spec)
    meta.update(n=n, l=l)
    if not level.valid:
        return Table(["r", "u", "R"], meta), 1, [
            f"level n={n} l={l} is not bound: {level.quantization.failure_reason.value}"]
    tab = normalize(spec, level.quantization, n, points_per_a=int(cfg["points_per_a"]))
    meta.update(E=level.E, C_nl=tab.C_nl, nodes=tab.nodes, nodes_full_line=tab.nodes_full_line,
                r_max=tab.r_max, u0_ratio=tab.u0_ratio, R_origin=tab.metadata["R_origin"])
    table = Table(["r", "u", "R"], meta)
    for row in zip(tab.r, tab.u, tab.R):
        table.add(*row)
    return table, 0, []


def cmd_validate(cfg: dict) -> tuple[Table, int, list[str]]:
    if cfg["selftest"]:
        table = Table(["n", "l_tilde", "E_numerov", "E_exact", "rel_error"],
                      {"potential": "r^2", "hbar2_over_2mu": 1.0})
        worst = 0.0
        for n, lt, E, Ee in oscillator_selftest():
            err = abs(E - Ee) / Ee
            worst = max(worst, err)
            table.add(n, lt, E, Ee, err)
        table.metadata["max_rel_error"] = worst
        return table, (0 if worst < 1e-6 else 1), ([] if worst < 1e-6 else ["oscillator self-test failed"])

    spec = make_spec(cfg)
    l, tol = int(cfg["l"]), float(cfg["tol"])
    h = cfg["h"]
    analytic = levels_for_l(spec, l)
    n_max = max([lv.n for lv in analytic], default=0) + 2
    try:
        pek = solve_levels(PotentialKind.PEKERIS, spec, l, n_max, h=h)
        exact = solve_levels(PotentialKind.EXACT_EFFECTIVE, spec, l, n_max, h=h)
    except GridTooCoarseError as exc:
        return Table(["n"], spec_metadata(spec)), 1, [f"validation failed: {exc}"]
    report = compare_levels(analytic, pek)
    a_map = {lv.n: lv.E for lv in analytic}
    p_map = {lv.n: lv.E for lv in pek}
    x_map = {lv.n: lv.E for lv in exact}
    meta = spec_metadata(spec)
    meta.update(l=l, tol=tol, max_rel_error_analytic_vs_pekeris=report.max_rel_error)
    table = Table(["n", "E_analytic", "E_numerov_pekeris", "E_numerov_exact",
                   "rel_error_pekeris", "pekeris_model_error"], meta)
    for n in sorted(a_map.keys() | p_map.keys() | x_map.keys()):
        Ea, Ep, Ex = a_map.get(n), p_map.get(n), x_map.get(n)
        rel = abs(Ep - Ea) / max(abs(Ea), 1.0) if Ea is not None and Ep is not None else None
        model = Ea - Ex if Ea is not None and Ex is not None else None
        table.add(n, Ea, Ep, Ex, rel, model)
    problems = []
    if report.analytic_only:
        problems.append(f"analytic levels without a Numerov partner: {report.analytic_only}")
    if report.oracle_only:
        problems.append(f"Numerov (Pekeris) levels without an analytic partner: {report.oracle_only}")
    if report.max_rel_error > tol:
        problems.append(f"max relative error {fmt(report.max_rel_error)} exceeds tol {fmt(tol)}")
    return table, (1 if problems else 0), problems


def scan_values(param: str, start: float, stop: float, num: int) -> list:
    if param == "D":
        lo, hi = int(round(start)), int(round(stop))
        return list(range(lo, hi + 1)) if lo <= hi else list(range(lo, hi - 1, -1))
    return [float(v) for v in np.linspace(start, stop, num)]


def cmd_scan(cfg: dict) -> tuple[Table, int, list[str]]:
    param = cfg["param"]
    base = make_spec(cfg)
    meta = spec_metadata(base)
    meta.update(param=param)
    table = Table(["value", "status"] + LEVEL_COLUMNS, meta)
    values = sorted(scan_values(param, float(cfg["start"]), float(cfg["stop"]), int(cfg["num"])))

    def point(value):
        spec = base.replace(**{param: value})
        return spec, enumerate_levels(spec, int(cfg["l_max"]))

    found = 0
    # map() yields in submission order, so rows stay sorted by parameter value
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(point, values))
    for value, (spec, levels) in zip(values, results):
        if not levels:
            table.add(value, "NO_LEVELS", *([None] * len(LEVEL_COLUMNS)))
        for lv in levels:
            q = lv.quantization
            table.add(value, "BOUND", spec.D, lv.l, lv.l_tilde, lv.n, q.n_prime, q.epsilon, lv.E)
            found += 1
    return table, (0 if found else 1), ([] if found else ["no bound states anywhere in the scan"])


def cmd_pekeris_error(cfg: dict) -> tuple[Table, int, list[str]]:
    spec = make_spec(cfg)
    l = int(cfg["l"])
    lt = effective_l(l, spec.D)
    r_min = cfg["r_min"] if cfg["r_min"] is not None else spec.a / 10
    r_max = cfg["r_max"] if cfg["r_max"] is not None else spec.R0 + 10 * spec.a
    if r_min <= 0:
        raise InvalidInputError("--r-min must be positive (barrier pole at r = 0)")
    meta = spec_metadata(spec)
    meta.update(l=l, l_tilde=lt)
    table = Table(["r", "exact", "approx", "abs_diff", "rel_diff"], meta)
    for point in pekeris_error_profile(spec, lt, np.linspace(r_min, r_max, int(cfg["points"]))):
        table.add(*point)
    return table, 0, []


COMMANDS = {"levels": cmd_levels, "wavefunction": cmd_wavefunction, "validate": cmd_validate,
            "scan": cmd_scan, "pekeris-error": cmd_pekeris_error}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve(args)
        table, code, messages = COMMANDS[args.command](cfg)
    except (UsageError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = table.render(cfg["format"])
    if cfg["out"]:
        with open(cfg["out"], "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for msg in messages:
        print(msg, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
