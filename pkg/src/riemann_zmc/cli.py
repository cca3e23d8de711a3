"""Command line front end.

Subcommands ``generate``, ``classify``, ``characteristic`` and ``verify``
share one set of flags; a JSON file given with ``--config`` supplies the same
keys and explicit flags win over it.

Exit codes: 0 success, 1 mathematical disagreement or failed check, 2 invalid
input, 3 I/O failure, 4 missing precondition (no straight lightlike line).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .characteristic import characteristic
from .classify import Grid, sample_class
from .entire_graph import EntireGraph
from .errors import InvalidParams, NoLightlikePart, NotALine, OutOfDomain, ZMCError
from .families import (
    EuclideanGeneral,
    EuclideanSingular,
    HyperbolaGeneral,
    HyperbolaSingular,
    Parabola,
    SurfaceFamily,
)
from .mesh import build_mesh, csv_text, ply_text
from .reports import dumps
from .sweeps import DEFAULT_TOLERANCES, FAMILY_GROUPS, run_checks

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID, EXIT_IO, EXIT_PRECONDITION = 0, 1, 2, 3, 4
MU_RESIDUAL_MAX = 1e-4

FAMILY_NAMES = (
    "euclidean-general",
    "euclidean-singular",
    "hyperbola-i",
    "hyperbola-ii",
    "hyperbola-i-singular",
    "hyperbola-ii-singular",
    "parabola-gen-zero",
    "parabola-gen-pos",
    "parabola-gen-neg",
    "parabola-singular",
    "entire-graph",
)
# names completed by --variant
_VARIANT_BASES = {"hyperbola", "hyperbola-singular", "parabola"}

_PARAM_KEYS = ("a", "b", "c", "delta", "p", "r0")
_RANGE_KEYS = ("r", "theta", "u", "v")
_CONFIG_KEYS = ("family", "variant", *_PARAM_KEYS, *_RANGE_KEYS, "tol", "out", "json",
                "format", "workers", "samples", "tolerances")

_GROUP_OF = {
    "euclidean-general": "euclidean-general",
    "euclidean-singular": "euclidean-singular",
    "hyperbola-i": "hyperbola-general",
    "hyperbola-ii": "hyperbola-general",
    "hyperbola-i-singular": "hyperbola-singular",
    "hyperbola-ii-singular": "hyperbola-singular",
    "parabola-gen-zero": "parabola",
    "parabola-gen-pos": "parabola",
    "parabola-gen-neg": "parabola",
    "parabola-singular": "parabola",
    "entire-graph": "entire-graph",
}


class UsageError(InvalidParams):
    """Bad flag or config value."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: str | None = None
    params: dict = field(default_factory=dict)
    p1: tuple[float, float, int] | None = None
    p2: tuple[float, float, int] | None = None
    tol: float | None = None
    out: str | None = None
    json: bool = False
    format: str | None = None
    workers: int = 1
    samples: int = 101
    tolerances: dict = field(default_factory=dict)


def parse_range(text) -> tuple[float, float, int]:
    """``lo:hi:count`` (or a 3-item list from a config file)."""
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be lo:hi:count, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"range must be lo:hi:count, got {text!r}") from exc
    if not lo < hi:
        raise UsageError(f"range needs lo < hi, got {text!r}")
    if n < 2:
        raise UsageError(f"range needs count >= 2, got {text!r}")
    return lo, hi, n


def canonical_family(name: str | None, variant: str | None) -> str:
    if not name:
        raise UsageError("--family is required")
    name = str(name).lower()
    if name in _VARIANT_BASES:
        if not variant:
            raise UsageError(f"--variant is required with --family {name}")
        v = str(variant).lower()
        if name.startswith("hyperbola"):
            if v not in ("i", "ii"):
                raise UsageError(f"hyperbola variant must be i or ii, got {variant!r}")
            name = f"hyperbola-{v}" + ("-singular" if name.endswith("singular") else "")
        else:
            name = f"parabola-{v}"
    if name not in FAMILY_NAMES:
        raise UsageError(f"unknown family {name!r}; choose one of {', '.join(FAMILY_NAMES)}")
    return name


def _need(params: dict, key: str, family: str) -> float:
    if params.get(key) is None:
        raise UsageError(f"--{key} is required for {family}")
    return float(params[key])


def _opt(params: dict, key: str, default: float = 0.0) -> float:
    v = params.get(key)
    return default if v is None else float(v)


def build_family(name: str, params: dict) -> SurfaceFamily:
    """Construct a family from a canonical name and a parameter dict."""
    r0 = params.get("r0")
    r0 = None if r0 is None else float(r0)
    if name == "euclidean-general":
        return EuclideanGeneral(_need(params, "a", name), _need(params, "b", name), r0)
    if name == "euclidean-singular":
        return EuclideanSingular(_need(params, "a", name))
    if name in ("hyperbola-i", "hyperbola-ii"):
        variant = "I" if name == "hyperbola-i" else "II"
        return HyperbolaGeneral(variant, _opt(params, "a"), _opt(params, "b"),
                                _need(params, "delta", name), r0)
    if name in ("hyperbola-i-singular", "hyperbola-ii-singular"):
        variant = "I" if name.startswith("hyperbola-i-") else "II"
        return HyperbolaSingular(variant, _opt(params, "a"), _need(params, "b", name))
    if name.startswith("parabola-"):
        case = name[len("parabola-"):]
        return Parabola(case, _opt(params, "a"), _opt(params, "b"), _opt(params, "c"), _opt(params, "p"))
    if name == "entire-graph":
        return EntireGraph(_need(params, "a", name), _need(params, "p", name))
    raise UsageError(f"unknown family {name!r}")


def grid_for(f: SurfaceFamily, cfg: RunConfig) -> Grid:
    default = Grid.default(f)
    return Grid(cfg.p1 or default.p1, cfg.p2 or default.p2)


# ---------------------------------------------------------------- commands

def cmd_generate(cfg: RunConfig) -> tuple[int, dict, str]:
    """(exit code, summary, mesh text)."""
    name = canonical_family(cfg.family, None)
    f = build_family(name, cfg.params)
    mesh = build_mesh(f, grid_for(f, cfg), cfg.workers)
    fmt = cfg.format or ("csv" if (cfg.out or "").lower().endswith(".csv") else "ply")
    text = csv_text(mesh) if fmt == "csv" else ply_text(mesh)
    summary = {
        "family": f.key,
        "params": f.params(),
        "format": fmt,
        "out": cfg.out,
        "vertices": len(mesh.points),
        "faces": len(mesh.faces),
        "counts": {k: mesh.count(k) for k in ("S", "T", "L")},
    }
    return EXIT_OK, summary, text


def cmd_classify(cfg: RunConfig) -> tuple[int, dict]:
    name = canonical_family(cfg.family, None)
    f = build_family(name, cfg.params)
    report = sample_class(f, grid_for(f, cfg), cfg.workers)
    return (EXIT_OK if report.agreement else EXIT_DISAGREE), report.as_dict()


def cmd_characteristic(cfg: RunConfig) -> tuple[int, dict]:
    name = canonical_family(cfg.family, None)
    f = build_family(name, cfg.params)
    report = characteristic(f, n=cfg.samples)
    limit = MU_RESIDUAL_MAX if cfg.tol is None else cfg.tol
    return (EXIT_OK if report.mu_residual <= limit else EXIT_DISAGREE), report.as_dict()


def cmd_verify(cfg: RunConfig) -> tuple[int, dict]:
    if cfg.family:
        groups = (_GROUP_OF[canonical_family(cfg.family, None)],)
    else:
        groups = FAMILY_GROUPS
    tolerances = dict(cfg.tolerances)
    unknown = set(tolerances) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise UsageError(f"unknown tolerance keys: {', '.join(sorted(unknown))}")
    if cfg.tol is not None:
        tolerances["zmc"] = cfg.tol
    checks = run_checks(groups, tolerances)
    passed = all(c.passed for c in checks)
    return (EXIT_OK if passed else EXIT_DISAGREE), {"passed": passed,
                                                    "checks": [c.as_dict() for c in checks]}


# ---------------------------------------------------------------- argument handling

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with the same keys as the flags")
    p.add_argument("--family", help="family name, e.g. euclidean-general")
    p.add_argument("--variant", help="i/ii for hyperbola names, case for parabola")
    for key in _PARAM_KEYS:
        p.add_argument(f"--{key}", type=float)
    p.add_argument("--r", help="p1 window lo:hi:count (radius families)")
    p.add_argument("--u", help="p1 window lo:hi:count (parabola families)")
    p.add_argument("--theta", help="p2 window lo:hi:count (circle families)")
    p.add_argument("--v", help="p2 window lo:hi:count (parabola families)")
    p.add_argument("--tol", type=float, help="residual bound (characteristic: mu residual; verify: ZMC)")
    p.add_argument("--out", help="output file; reports go to stdout when omitted")
    p.add_argument("--json", action="store_true", help="generate: print a JSON summary")
    p.add_argument("--format", choices=("ply", "csv"), help="mesh format (default from --out suffix)")
    p.add_argument("--workers", type=int, help="threads for grid sampling")
    p.add_argument("--samples", type=int, help="characteristic: samples along the line")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riemann-zmc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("generate", "write a causally coloured mesh"),
                       ("classify", "compare predicted and sampled causal characters"),
                       ("characteristic", "characteristic along a lightlike line"),
                       ("verify", "batch residual checks")):
        _common(sub.add_parser(name, help=text))
    return parser


def _load_config(path: str) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    unknown = set(data) - set(_CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    merged = _load_config(ns.config) if ns.config else {}
    for key in _CONFIG_KEYS:
        value = getattr(ns, key, None)
        if value is not None and value is not False:
            merged[key] = value
    for a, b in (("r", "u"), ("theta", "v")):
        if merged.get(a) is not None and merged.get(b) is not None:
            raise UsageError(f"give only one of --{a} and --{b}")
    p1 = merged.get("r", merged.get("u"))
    p2 = merged.get("theta", merged.get("v"))
    family = merged.get("family")
    if ns.command != "verify" or family:
        family = canonical_family(family, merged.get("variant"))
    workers = int(merged.get("workers", 1))
    if workers < 1:
        raise UsageError("--workers must be at least 1")
    samples = int(merged.get("samples", 101))
    if samples < 5:
        raise UsageError("--samples must be at least 5")
    tolerances = merged.get("tolerances") or {}
    if not isinstance(tolerances, dict):
        raise UsageError("tolerances must be an object")
    return RunConfig(
        command=ns.command,
        family=family,
        params={k: merged[k] for k in _PARAM_KEYS if merged.get(k) is not None},
        p1=parse_range(p1) if p1 is not None else None,
        p2=parse_range(p2) if p2 is not None else None,
        tol=None if merged.get("tol") is None else float(merged["tol"]),
        out=merged.get("out"),
        json=bool(merged.get("json", False)),
        format=merged.get("format"),
        workers=workers,
        samples=samples,
        tolerances={k: float(v) for k, v in tolerances.items()},
    )


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute a command; writes files and reports, returns the exit code."""
    stdout = stdout or sys.stdout
    if cfg.command == "generate":
        code, summary, text = cmd_generate(cfg)
        if cfg.out:
            _write(cfg.out, text)
        else:
            stdout.write(text)
        if cfg.json:
            (sys.stderr if not cfg.out else stdout).write(dumps(summary))
        return code
    handler = {"classify": cmd_classify, "characteristic": cmd_characteristic, "verify": cmd_verify}
    code, report = handler[cfg.command](cfg)
    text = dumps(report)
    if cfg.out:
        _write(cfg.out, text)
    else:
        stdout.write(text)
    return code


def _attach_ranges(argv: list[str]) -> list[str]:
    """Glue ``--u -3:3:20`` into ``--u=-3:3:20`` so argparse does not read a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in {f"--{k}" for k in _RANGE_KEYS}:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    ns = parser.parse_args(_attach_ranges(sys.argv[1:] if argv is None else list(argv)))
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except (NoLightlikePart, NotALine) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InvalidParams, OutOfDomain) as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ZMCError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
