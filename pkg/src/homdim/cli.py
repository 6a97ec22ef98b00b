"""Command-line front end.  Reports are JSON on stdout.

Exit codes: 0 determinate, 1 parse error, 2 unknown name, 3 undetermined at the horizon.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exactla import Field, rank
from .fdim import f_dim, parse_oracle
from .gorenstein import d_reflexive_report, g_class, g_dim
from .homology import DEFAULT_HORIZON, ext_dim, minimal_resolution, pdim
from .laws import LawSuite, LawSuiteConfig, report_json
from .verdict import Verdict
from .workspace import UnknownName, Workspace, WorkspaceError, builtin_algebra, load_workspace

EXIT_OK, EXIT_PARSE, EXIT_NAME, EXIT_UNKNOWN = 0, 1, 2, 3


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--max", type=int, default=DEFAULT_HORIZON, dest="horizon", help="horizon (default 10)")
    p.add_argument("--seed", type=int, default=None, help="64-bit seed for randomized commands")
    p.add_argument("--field", default=None, help="q or fp:<p> (default: the workspace field)")
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    p.add_argument("--workspace", default=None,
                   help="workspace JSON file or builtin:<a3|a3-ba0|d4|k> (default: bundled A3 example)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="homdim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    alg = sub.add_parser("algebra", parents=[common], help="algebra commands")
    alg_sub = alg.add_subparsers(dest="action", required=True, parser_class=_Parser)
    alg_sub.add_parser("check", parents=[common], help="validate the workspace algebra")

    r = sub.add_parser("resolve", parents=[common], help="minimal projective resolution")
    r.add_argument("module")
    e = sub.add_parser("ext", parents=[common], help="dimensions of Ext^i(M, N)")
    e.add_argument("source")
    e.add_argument("target")
    p = sub.add_parser("pdim", parents=[common], help="projective dimension")
    p.add_argument("module")
    f = sub.add_parser("fdim", parents=[common], help="dimension relative to a class oracle")
    f.add_argument("oracle", help="projectives | add:U | perp:G1,G2:m|inf")
    f.add_argument("module")
    for name, text in (("gclass", "G-class conditions"), ("gdim", "G-dimension")):
        g = sub.add_parser(name, parents=[common], help=text)
        g.add_argument("--ctx", default=None, help="adjoint context name (default: the first one)")
        g.add_argument("module")
    d = sub.add_parser("dreflexive", parents=[common], help="D-reflexivity for cohomological bound n")
    d.add_argument("--ctx", default=None)
    d.add_argument("--n", type=int, default=1)
    d.add_argument("module")

    laws = sub.add_parser("laws", parents=[common], help="law harness")
    laws_sub = laws.add_subparsers(dest="action", required=True, parser_class=_Parser)
    run = laws_sub.add_parser("run", parents=[common], help="run the law suite")
    run.add_argument("--config", default=None, help="JSON config (seed, instances, maxDim, field, ...)")
    run.add_argument("--report", default=None, help="also write the report to this file")
    return parser


def _load(args) -> Workspace:
    field_ = Field.from_spec(args.field) if args.field else None
    spec = args.workspace
    if spec and spec.startswith("builtin:"):
        return Workspace(builtin_algebra(spec.split(":", 1)[1], field_ or Field.rationals()))
    return load_workspace(spec, field_)


def _ctx(ws: Workspace, name: str | None, horizon: int):
    if name is None:
        if not ws.context_specs:
            raise UnknownName("workspace defines no adjoint context")
        name = next(iter(ws.context_specs))
    return ws.context(name, horizon)


def _status(*verdicts: Verdict) -> int:
    return EXIT_UNKNOWN if any(v.is_unknown for v in verdicts) else EXIT_OK


def cmd_algebra_check(ws: Workspace, args) -> tuple[dict, int]:
    A = ws.algebra
    sc = A.sc  # associativity and unit are checked on construction
    n = A.num_vertices
    e = [sc.basis_vector(A.idempotent(i)) for i in range(n)]
    idem_ok = all(sc.mul(e[i], e[j]) == (e[i] if i == j else sc.zero_vector()) for i in range(n) for j in range(n))
    total = sc.zero_vector()
    for x in e:
        total = sc.add(total, x)
    return {
        "field": A.field.to_spec(),
        "vertices": [str(v) for v in A.quiver.vertices],
        "arrows": [a.name for a in A.quiver.arrows],
        "dimension": A.dimension,
        "basis": [A.label(i) for i in range(A.dimension)],
        "associative": True,
        "unital": total == sc.unit,
        "orthogonalIdempotents": idem_ok,
        "modules": {k: list(v.dims) for k, v in sorted(ws.modules.items())},
        "contexts": sorted(ws.context_specs),
    }, EXIT_OK


def cmd_resolve(ws: Workspace, args) -> tuple[dict, int]:
    M = ws.module(args.module)
    res = minimal_resolution(M, args.horizon)
    truncated = res.truncated_at(args.horizon)
    out = {
        "module": args.module,
        "terms": [{"dims": list(t.dims), "generators": [str(ws.algebra.quiver.vertices[v]) for v in g]}
                  for t, g in zip(res.terms, res.gens)],
        "differentialRanks": [sum(rank(m) for m in d.mats) for d in res.differentials],
        "length": None if truncated else res.length,
        "truncated": truncated,
        "horizon": args.horizon,
    }
    return out, EXIT_UNKNOWN if truncated else EXIT_OK


def cmd_ext(ws: Workspace, args) -> tuple[dict, int]:
    rep = ext_dim(ws.module(args.source), ws.module(args.target), args.horizon)
    out = rep.to_json()
    out.update({"source": args.source, "target": args.target})
    # degrees up to the horizon are exact even when the resolution goes on
    return out, EXIT_OK


def cmd_pdim(ws: Workspace, args) -> tuple[dict, int]:
    v = pdim(ws.module(args.module), args.horizon)
    return {"module": args.module, "pdim": v.to_json()}, _status(v)


def cmd_fdim(ws: Workspace, args) -> tuple[dict, int]:
    M = ws.module(args.module)
    try:
        oracle = parse_oracle(args.oracle, ws.modules, ws.algebra, args.horizon)
    except KeyError as exc:
        raise UnknownName(exc.args[0]) from None
    rep = f_dim(oracle, M, args.horizon)
    out = {"module": args.module, "oracle": oracle.describe(), **rep.to_json()}
    return out, _status(rep.value)


def cmd_gclass(ws: Workspace, args) -> tuple[dict, int]:
    ctx = _ctx(ws, args.ctx, args.horizon)
    rep = g_class(ctx, ws.module(args.module))
    return {"module": args.module, "context": ctx.summary(), **rep.to_json()}, _status(rep.member)


def cmd_gdim(ws: Workspace, args) -> tuple[dict, int]:
    ctx = _ctx(ws, args.ctx, args.horizon)
    M = ws.module(args.module)
    rep = g_class(ctx, M)
    v = g_dim(ctx, M)
    out = {"module": args.module, "context": ctx.summary(), "gClass": rep.to_json(), "gDim": v.to_json()}
    return out, _status(v)


def cmd_dreflexive(ws: Workspace, args) -> tuple[dict, int]:
    ctx = _ctx(ws, args.ctx, args.horizon)
    rep = d_reflexive_report(ctx, ws.module(args.module), args.n)
    return {"module": args.module, **rep.to_json()}, _status(rep.verdict)


def cmd_laws_run(ws: Workspace, args) -> tuple[dict, int]:
    data = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read config: {exc}") from exc
    if args.seed is not None:
        data["seed"] = args.seed
    if args.field is not None:
        data["field"] = args.field
    if "horizon" not in data and args.horizon != DEFAULT_HORIZON:
        data["horizon"] = args.horizon
    try:
        cfg = LawSuiteConfig.from_json(data)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad config: {exc}") from exc
    results = LawSuite(cfg, ws).run()
    out = report_json(cfg, results)
    if args.report:
        Path(args.report).write_text(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return out, EXIT_OK if out["passed"] else EXIT_UNKNOWN


COMMANDS = {
    ("algebra", "check"): cmd_algebra_check,
    ("resolve", None): cmd_resolve,
    ("ext", None): cmd_ext,
    ("pdim", None): cmd_pdim,
    ("fdim", None): cmd_fdim,
    ("gclass", None): cmd_gclass,
    ("gdim", None): cmd_gdim,
    ("dreflexive", None): cmd_dreflexive,
    ("laws", "run"): cmd_laws_run,
}


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if "verdict" in obj and len(obj) <= 2:
            rest = [v for k, v in obj.items() if k != "verdict"]
            return obj["verdict"] + (f"({json.dumps(rest[0], sort_keys=True)})" if rest else "")
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:\n{_pretty(v, indent + 1)}")
            else:
                lines.append(f"{pad}{k}: {_pretty(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if _flat(obj):
            return json.dumps(obj)
        return "\n".join(f"{pad}- {_pretty(v, indent + 1).lstrip()}" for v in obj)
    return json.dumps(obj) if not isinstance(obj, str) else obj


def _flat(obj) -> bool:
    if isinstance(obj, dict):
        return "verdict" in obj and len(obj) <= 2
    return all(not isinstance(v, (dict, list)) or (isinstance(v, list) and _flat(v)) for v in obj)


def emit(out: dict, pretty: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if pretty:
        stream.write(_pretty(out) + "\n")
    else:
        stream.write(json.dumps(out, sort_keys=True) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.horizon < 0:
            raise ParseError("--max must be non-negative")
        fn = COMMANDS[(args.command, getattr(args, "action", None))]
        ws = _load(args)
        out, code = fn(ws, args)
    except ParseError as exc:
        emit({"error": "parse", "message": str(exc)}, False, sys.stderr)
        return EXIT_PARSE
    except UnknownName as exc:
        emit({"error": "unknown name", "name": str(exc.args[0]) if exc.args else ""}, False, sys.stderr)
        return EXIT_NAME
    except (WorkspaceError, ValueError) as exc:
        emit({"error": "parse", "message": str(exc)}, False, sys.stderr)
        return EXIT_PARSE
    emit(out, args.pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
