"""Command line front end.

Subcommands: validate, diagnose, rep, harset, hodge, upsilon, primes, vr,
render.  Domain failures exit 1 with a machine-readable JSON object on
stderr; usage errors exit 2; identical invocations produce byte-identical
output.  The environment variable HARMONICA_CAP overrides the default
enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import cotrees
from .complexes import Chain, SimplicialComplex, PointCloud, load_complex_file, vietoris_rips
from .errors import HarmonicaError
from .fields import FieldSpec, primes_up_to
from .harmonic import (diagnose, har_set, harmonic_representative,
                       hodge_decomposition, is_cohomologically_harmonic)
from .render import render_svg


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved invocation; equal configs give equal bytes."""

    command: str
    paths: tuple
    field: str | None = None
    degree: int | None = None
    cycle: tuple = ()
    radius: str | None = None
    max_dim: int | None = None
    cap: int | None = None
    bound: int | None = None
    seed: int | None = None
    output: str | None = None
    allow_nonunique: bool = False
    search: bool = False
    points: str | None = None
    view: str = "xy"


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _field(cfg: RunConfig) -> FieldSpec:
    if cfg.field is None:
        raise HarmonicaError("--field is required for this subcommand")
    return FieldSpec.parse(cfg.field)


def _load_cycle(path: str, field: FieldSpec, length: int) -> Chain:
    with open(path, "r", encoding="utf-8") as fh:
        return Chain.from_json(json.load(fh), field, length)


def _cmd_validate(cfg: RunConfig) -> int:
    chain, simplicial = load_complex_file(cfg.paths[0])
    out = chain.validate()
    out["format"] = "simplicial-v1" if simplicial else "chain-complex-v1"
    if simplicial is not None:
        out["closed_under_faces"] = True  # enforced at parse time
    _emit(out)
    return 0


def _cmd_diagnose(cfg: RunConfig) -> int:
    chain, _ = load_complex_file(cfg.paths[0])
    fc = chain.instantiate(_field(cfg))
    report = diagnose(fc, cfg.degree)
    out = report.to_json()
    out["cohomologically_harmonic"] = is_cohomologically_harmonic(
        fc, cfg.degree)
    _emit(out)
    return 0


def _cmd_rep(cfg: RunConfig) -> int:
    chain_cx, _ = load_complex_file(cfg.paths[0])
    field = _field(cfg)
    fc = chain_cx.instantiate(field)
    degree = cfg.degree
    z = _load_cycle(cfg.cycle[0], field, chain_cx.num_cells(degree))
    if z.degree != degree:
        raise HarmonicaError(
            f"cycle has degree {z.degree}, expected {degree}")
    if cfg.allow_nonunique:
        hs = har_set(fc, z)
        out = {
            "representative": None if hs.representative is None
            else hs.representative.to_json(),
            "torsor_basis": [c.to_json() for c in hs.torsor_basis],
        }
        _emit(out)
        return 0
    h = harmonic_representative(fc, z)
    _emit(h.to_json())
    return 0


def _cmd_harset(cfg: RunConfig) -> int:
    chain_cx, _ = load_complex_file(cfg.paths[0])
    field = _field(cfg)
    fc = chain_cx.instantiate(field)
    z = _load_cycle(cfg.cycle[0], field, chain_cx.num_cells(cfg.degree))
    hs = har_set(fc, z)
    _emit({
        "representative": None if hs.representative is None
        else hs.representative.to_json(),
        "torsor_basis": [c.to_json() for c in hs.torsor_basis],
    })
    return 0


def _cmd_hodge(cfg: RunConfig) -> int:
    chain_cx, _ = load_complex_file(cfg.paths[0])
    field = _field(cfg)
    fc = chain_cx.instantiate(field)
    hd = hodge_decomposition(fc, cfg.degree)
    fmt = field.format_value
    def cols(m):
        return [[fmt(v) for v in col] for col in m.columns()]
    _emit({"harmonic_basis": cols(hd.harmonic_basis),
           "boundary_basis": cols(hd.boundary_basis),
           "coboundary_basis": cols(hd.coboundary_basis)})
    return 0


def _cmd_upsilon(cfg: RunConfig) -> int:
    chain_cx, _ = load_complex_file(cfg.paths[0])
    census = cotrees.cotree_census(chain_cx, cfg.degree, cfg.cap)
    _emit({"degree": census.degree,
           "upsilon": census.upsilon,
           "cotrees": len(census.cotrees),
           "trees": len(census.trees),
           "theta_x": census.theta_x})
    return 0


def _cmd_primes(cfg: RunConfig) -> int:
    chain_cx, _ = load_complex_file(cfg.paths[0])
    bound = cfg.bound if cfg.bound is not None else 13
    hp = cotrees.harmonic_primes(chain_cx, cfg.degree, bound, cfg.cap)
    out = hp.to_json()
    if cfg.search:
        fc_cache = {}
        smallest = None
        for p in primes_up_to(10000):
            fc = chain_cx.instantiate(FieldSpec.prime_field(p))
            fc_cache[p] = fc
            if diagnose(fc, cfg.degree).consensus:
                smallest = p
                break
        if smallest is None:
            raise HarmonicaError("no harmonic prime below 10000; "
                                 "raise the search limit")
        out["smallest_harmonic_prime"] = smallest
    _emit(out)
    return 0


def _cmd_vr(cfg: RunConfig) -> int:
    with open(cfg.paths[0], "r", encoding="utf-8") as fh:
        cloud = PointCloud.from_csv(fh.read())
    sc = vietoris_rips(cloud, cfg.radius, cfg.max_dim or 2)
    _emit(sc.to_json())
    return 0


def _cmd_render(cfg: RunConfig) -> int:
    with open(cfg.paths[0], "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != "simplicial-v1":
        raise HarmonicaError("render needs a simplicial complex")
    sc = SimplicialComplex.from_json(doc)
    if sc.points is None and cfg.points:
        with open(cfg.points, "r", encoding="utf-8") as fh:
            sc.points = PointCloud.from_csv(fh.read()).points
    field = FieldSpec.parse(cfg.field) if cfg.field else FieldSpec.rationals()
    n_edges = sc.num_simplices(1)
    chains = [
        _load_cycle(path, field, n_edges) for path in cfg.cycle]
    svg = render_svg(sc, chains, view=cfg.view)
    sys.stdout.write(svg)
    return 0


_HANDLERS = {
    "validate": _cmd_validate,
    "diagnose": _cmd_diagnose,
    "rep": _cmd_rep,
    "harset": _cmd_harset,
    "hodge": _cmd_hodge,
    "upsilon": _cmd_upsilon,
    "primes": _cmd_primes,
    "vr": _cmd_vr,
    "render": _cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonica",
        description="Exact harmonic representatives of homology classes "
                    "over Q and prime fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, needs_field=False, needs_degree=False,
            cycle=False, vr=False, render=False, census=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("paths", nargs=1, metavar="COMPLEX")
        if needs_field:
            p.add_argument("--field", required=(name != "render"),
                           help="q for the rationals, f<p> for a prime field")
        if needs_degree:
            p.add_argument("--degree", type=int, required=True)
        if cycle:
            p.add_argument("--cycle", action="append", default=[],
                           required=(name != "render"),
                           help="cycle JSON file (repeatable for render)")
        if census:
            p.add_argument("--cap", type=int, default=None,
                           help="candidate-subset budget "
                                "(default 10^6, env HARMONICA_CAP)")
        if name == "primes":
            p.add_argument("--bound", type=int, default=13)
            p.add_argument("--search", action="store_true",
                           help="also search for the smallest prime that "
                                "diagnoses harmonic")
        if name == "rep":
            p.add_argument("--allow-nonunique", action="store_true",
                           help="fall back to the representative-set query")
        if vr:
            p.add_argument("--radius", required=True,
                           help="edge threshold (closed ball), exact decimal")
            p.add_argument("--max-dim", type=int, default=2)
        if render:
            p.add_argument("--points", default=None,
                           help="CSV of vertex coordinates if the complex "
                                "does not embed them")
            p.add_argument("--view", choices=("xy", "xz", "yz"),
                           default="xy")
            p.add_argument("--output", choices=("json", "svg"),
                           default="svg")
        else:
            p.add_argument("--output", choices=("json",), default="json")
        p.add_argument("--seed", type=int, default=None)
        return p

    add("validate", "check boundary-squared-zero and face closure")
    add("diagnose", "evaluate the nine harmonicity statements",
        needs_field=True, needs_degree=True)
    add("rep", "compute the unique harmonic representative of a cycle",
        needs_field=True, needs_degree=True, cycle=True)
    add("harset", "compute the full harmonic representative set",
        needs_field=True, needs_degree=True, cycle=True)
    add("hodge", "compute the three-part orthogonal decomposition",
        needs_field=True, needs_degree=True)
    add("upsilon", "enumerate spanning cotrees and their invariant",
        needs_degree=True, census=True)
    add("primes", "report primes guaranteed harmonic up to a bound",
        needs_degree=True, census=True)
    add("vr", "build a Vietoris-Rips complex from a point cloud CSV",
        vr=True)
    add("render", "draw the 1-skeleton and chain supports as SVG",
        needs_field=True, cycle=True, render=True)
    return parser


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        paths=tuple(args.paths),
        field=getattr(args, "field", None),
        degree=getattr(args, "degree", None),
        cycle=tuple(getattr(args, "cycle", []) or []),
        radius=getattr(args, "radius", None),
        max_dim=getattr(args, "max_dim", None),
        cap=getattr(args, "cap", None),
        bound=getattr(args, "bound", None),
        seed=getattr(args, "seed", None),
        output=getattr(args, "output", None),
        allow_nonunique=getattr(args, "allow_nonunique", False),
        search=getattr(args, "search", False),
        points=getattr(args, "points", None),
        view=getattr(args, "view", "xy"),
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    cfg = _config_from_args(args)
    try:
        return _HANDLERS[cfg.command](cfg)
    except HarmonicaError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), indent=2,
                                    sort_keys=True) + "\n")
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(json.dumps(
            {"error": type(exc).__name__, "message": str(exc)},
            indent=2, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
