"""Command-line front end.

Exit status: 0 on success, 2 for an expected mathematical negative (a failed
validation, an impossible shadow, a failed report), 1 for operational errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .abelian import DEFAULT_MAX_ORDER, AbelianGroup, SubgroupLattice
from .cdga.algebra import PresentedCdga
from .cdga.homology import GradedRingValue, formal_cdga
from .cdga.oracle import truncated_homology_oracle
from .constructions import (
    CONSTRUCTIONS,
    PIPELINE_MAX_ORDER,
    build_counterexample,
    build_example_C2_pair,
    build_named,
    counterexample_prime,
)
from .errors import InputError, OracleUnavailableError, OrbitCdgaError, SizeLimitError
from .orbit import OrbitDiagram, homology_diagram, shadow_constancy_pattern, validate_diagram
from .structures import decide_norm_shadow, enumerate_beta_patterns, render_report, uniqueness_report

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2
CONSTRUCTION_NAMES = sorted(CONSTRUCTIONS) + ["counterexample", "c2-pair"]


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    out: str | None = None
    weight_bound: int = 10
    window: tuple[int, int] = (-2, 2)
    max_order: int = DEFAULT_MAX_ORDER

    def __post_init__(self):
        if self.weight_bound < 1:
            raise InputError("--weight-bound must be >= 1")
        if self.fmt not in ("text", "json"):
            raise InputError(f"unknown format {self.fmt!r}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    body = dumps(payload) if cfg.fmt == "json" else text.rstrip("\n") + "\n"
    if cfg.out:
        Path(cfg.out).write_text(body)
    else:
        sys.stdout.write(body)


def _group(spec: str, bound: int) -> AbelianGroup:
    G = AbelianGroup.parse(spec)
    if G.order > bound:
        raise SizeLimitError(f"|{G.name}| = {G.order} exceeds the bound {bound}")
    return G


def _load_diagram(path: str) -> OrbitDiagram:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read diagram file {path}: {exc}") from exc
    if "nodes" not in data:
        raise InputError(f"{path} is not a diagram file")
    return OrbitDiagram.from_json(data)


# -- subcommands -------------------------------------------------------------
def cmd_subgroups(cfg: RunConfig, args) -> int:
    lat = SubgroupLattice(_group(args.group, cfg.max_order))
    payload = lat.to_json()
    lines = [f"{lat.group.name}: {len(lat.nodes)} subgroups"]
    for sid, s in zip(lat.ids, lat.nodes):
        lines.append(f"  {sid:<8} order {s.order:<4} {'cyclic' if s.is_cyclic else 'non-cyclic'}")
    lines.append("covering edges:")
    lines += [f"  {lat.ids[i]} < {lat.ids[j]}" for i, j in lat.covers]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_build(cfg: RunConfig, args) -> int:
    name = args.construction
    if name not in CONSTRUCTION_NAMES:
        raise InputError(f"unknown construction {name!r}; choose from {CONSTRUCTION_NAMES}")
    if name == "counterexample":
        G = _group(args.group, PIPELINE_MAX_ORDER)
        return _counterexample(cfg, counterexample_prime(G))
    if name == "c2-pair":
        ident, zero = build_example_C2_pair()
        reps = {D.name: validate_diagram(D) for D in (ident, zero)}
        patterns = {D.name: shadow_constancy_pattern(D, "x") for D in (ident, zero)}
        payload = {
            "diagrams": {D.name: D.to_json() for D in (ident, zero)},
            "valid": {k: r.valid for k, r in reps.items()},
            "x_image_pattern": {k: {f"{a}->{b}": v for (a, b), v in p.items()} for k, p in patterns.items()},
            "isomorphic": patterns[ident.name] == patterns[zero.name],
        }
        text = "\n".join(
            [f"{k}: valid {reps[k].valid}, x-image {patterns[k]}" for k in reps]
            + [f"isomorphic: {payload['isomorphic']}"]
        )
        _emit(cfg, payload, text)
        return EXIT_OK if all(r.valid for r in reps.values()) else EXIT_NEGATIVE
    D = build_named(name, _group(args.group, PIPELINE_MAX_ORDER))
    rep = validate_diagram(D)
    summary = {"construction": name, "group": D.group.name, "valid": rep.valid, "violations": rep.violations}
    if cfg.out:
        Path(cfg.out).write_text(dumps(D.to_json()))
        summary["out"] = cfg.out
        payload = summary
    else:
        payload = D.to_json()
    lines = [
        f"{name} over {D.group.name}: {len(D.values)} nodes, {len(D.shadows)} shadows, "
        + ("valid" if rep.valid else "INVALID")
    ]
    lines += [f"  {v}" for v in rep.violations]
    if cfg.out:
        lines.append(f"written to {cfg.out}")
    body = dumps(payload) if cfg.fmt == "json" else "\n".join(lines) + "\n"
    sys.stdout.write(body)
    return EXIT_OK if rep.valid else EXIT_NEGATIVE


def _counterexample(cfg: RunConfig, p: int) -> int:
    q = build_counterexample(p)
    res = q.query()
    lines = [
        f"C_{p * p}: top node Q[x] (x) E(y), d(y) = Phi_{p * p}(x); H0 dimension {q.top_dimension}",
        f"shadow C{p} -> C{p * p}: " + ("exists" if res.exists else "no shadow exists"),
    ]
    lines += [f"  {s}" for s in res.certificate]
    lines += [f"note: {n}" for n in q.notes]
    payload = {"p": p, "top_dimension": q.top_dimension, "flagged": q.flagged, "notes": q.notes, "query": res.to_json()}
    if res.exists:
        D = q.complete()
        rep = validate_diagram(D)
        payload["diagram"] = D.to_json()
        payload["valid"] = rep.valid
        lines.append(f"completed diagram valid: {rep.valid}")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if res.exists else EXIT_NEGATIVE


def cmd_homology(cfg: RunConfig, args) -> int:
    D = _load_diagram(args.diagram)
    H = homology_diagram(D)
    payload = H.to_json()
    lo, hi = cfg.window
    lines = [f"homology of {D.name or 'diagram'} over {D.group.name}"]
    for s in D.lattice.nodes:
        v = H.values[s]
        dims = v.dims(lo, hi)
        payload["nodes"][D.id_of(s)]["dims"] = {str(k): d for k, d in dims.items()}
        lines.append(f"  {D.id_of(s):<8} {v.shape:<24} dims[{lo}..{hi}] {[dims[k] for k in range(lo, hi + 1)]}")
    for (a, b), e in sorted(H.edges.items(), key=lambda kv: (D.lattice.index[kv[0][0]], D.lattice.index[kv[0][1]])):
        z = "-" if e.embedding is None else str(e.embedding.image)
        lines.append(f"  {D.id_of(a)} -> {D.id_of(b)}: zeta -> {z}, standard {e.standard}, beta -> {e.beta}")
    if args.oracle:
        oracle = {}
        for s in D.lattice.nodes:
            sid = D.id_of(s)
            try:
                r = truncated_homology_oracle(D.values[s], cfg.window, cfg.weight_bound)
            except OracleUnavailableError as exc:
                oracle[sid] = {"available": False, "reason": str(exc)}
                lines.append(f"  oracle {sid}: unavailable ({exc})")
                continue
            expected = H.values[s].dims(lo, hi)
            entry = r.to_json()
            entry["available"] = True
            entry["matches_certificate"] = r.dims == expected
            oracle[sid] = entry
            lines.append(
                f"  oracle {sid}: W={r.bound} dims {[r.dims[k] for k in range(lo, hi + 1)]} "
                f"stabilized {r.stabilized} matches {r.dims == expected}"
            )
        payload["oracle"] = oracle
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_validate(cfg: RunConfig, args) -> int:
    D = _load_diagram(args.diagram)
    rep = validate_diagram(D)
    payload = {"group": D.group.name, "name": D.name, "valid": rep.valid, "violations": rep.violations}
    text = "valid" if rep.valid else "INVALID\n" + "\n".join(f"  {v}" for v in rep.violations)
    _emit(cfg, payload, text)
    return EXIT_OK if rep.valid else EXIT_NEGATIVE


def cmd_enumerate(cfg: RunConfig, args) -> int:
    G = _group(args.group, cfg.max_order)
    e = enumerate_beta_patterns(G, invertible=args.invertible)
    payload = {
        "group": G.name,
        "invertible": e.invertible,
        "count": e.count,
        "edges": [f"{a}->{b}" for a, b in e.edges],
        "patterns": [p.to_json() for p in e.patterns],
        "rejected": [r.to_json() for r in e.rejected],
    }
    lines = [f"{G.name}: {e.count} pattern(s){' (beta invertible)' if e.invertible else ''}"]
    lines.append("edges: " + " ".join(f"{a}->{b}" for a, b in e.edges))
    lines += [f"  {p.encoding()}" for p in e.patterns]
    if e.rejected:
        lines.append(f"rejected {len(e.rejected)}:")
        lines += [
            f"  {r.pattern.encoding()} at ({r.location[0]}, {r.location[1]}): {r.chains[0]} vs {r.chains[1]}"
            for r in e.rejected
        ]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_obstruction(cfg: RunConfig, args) -> int:
    if args.target is None and args.field is None:
        return _counterexample(cfg, args.m)
    if args.target is not None:
        try:
            target = PresentedCdga.from_json(json.loads(Path(args.target).read_text()))
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise InputError(f"cannot read CDGA file {args.target}: {exc}") from exc
    else:
        target = formal_cdga(GradedRingValue("field", args.field))
    res = decide_norm_shadow(args.m, target)
    text = "\n".join(
        [f"Q(zeta_{args.m}) -> target: {res.verdict}"]
        + ([f"  witness {res.witness}"] if res.witness else [])
        + [f"  {s}" for s in res.certificate]
    )
    _emit(cfg, res.to_json(), text)
    return EXIT_OK if res.exists else EXIT_NEGATIVE


def cmd_report(cfg: RunConfig, args) -> int:
    rep = uniqueness_report(_group(args.group, PIPELINE_MAX_ORDER))
    _emit(cfg, rep, render_report(rep))
    return EXIT_OK if rep["passed"] else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write output to this file")

    parser = argparse.ArgumentParser(
        prog="orbitcdga", description="Exact computations with diagrams of rational CDGAs over subgroup lattices."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subgroups", parents=[common], help="list subgroups and covering edges")
    p.add_argument("group", help="group spec such as C12 or C2xC4")

    p = sub.add_parser("build", parents=[common], help="build and validate a named diagram")
    p.add_argument("construction", help=", ".join(CONSTRUCTION_NAMES))
    p.add_argument("group", nargs="?", default="C2")

    p = sub.add_parser("homology", parents=[common], help="homology diagram of a diagram file")
    p.add_argument("diagram")
    p.add_argument("--oracle", action="store_true", help="cross-check with the truncated oracle")
    p.add_argument("--weight-bound", type=int, default=10)
    p.add_argument("--window", type=int, nargs=2, default=(-2, 2), metavar=("LO", "HI"))

    p = sub.add_parser("validate", parents=[common], help="validate a diagram file")
    p.add_argument("diagram")

    p = sub.add_parser("enumerate", parents=[common], help="count Bott-class patterns")
    p.add_argument("group")
    p.add_argument("--invertible", action="store_true", help="beta invertible: kill is not allowed")

    p = sub.add_parser("obstruction", parents=[common], help="decide whether a shadow out of Q(zeta_m) exists")
    p.add_argument("m", type=int, help="source is Q(zeta_m); without a target, the C_{m^2} query for prime m")
    p.add_argument("--target", default=None, help="CDGA JSON file for the target")
    p.add_argument("--field", type=int, default=None, help="target the formal field Q(zeta_N)")

    p = sub.add_parser("report", parents=[common], help="full uniqueness report")
    p.add_argument("group")
    return parser


COMMANDS = {
    "subgroups": cmd_subgroups,
    "build": cmd_build,
    "homology": cmd_homology,
    "validate": cmd_validate,
    "enumerate": cmd_enumerate,
    "obstruction": cmd_obstruction,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            args.command,
            args.format,
            args.out,
            getattr(args, "weight_bound", 10),
            tuple(getattr(args, "window", (-2, 2))),
        )
        return COMMANDS[args.command](cfg, args)
    except OrbitCdgaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
