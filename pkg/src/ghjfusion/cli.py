"""Command line front end.

Exit codes: 0 success, 1 validation failure, 2 usage error,
3 decomposition failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .cache import Cache
from .checks import suite
from .core import build_diagram
from .errors import GHJError
from .esspath import esspath_table
from .ghj import dual_principal_graph, ghj_report, standard_vertex
from .render import dump_json, render_esspath_table, render_fusion_table, render_report, render_system, to_dot
from .sectors import principal_graph
from .zsystem import ConnectionSystem, decompose_zsystem, validate_system, zfusion_table


def load_system(name: str, use_cache: bool = True) -> ConnectionSystem:
    """Connection system for a diagram, going through the disk cache."""
    K = build_diagram(name)
    cache = Cache() if use_cache else None
    if cache is not None:
        hit = cache.get("zsystem", K.name)
        if hit is not None:
            sys_ = ConnectionSystem.from_json(hit)
            if not validate_system(sys_):
                return sys_
    sys_ = decompose_zsystem(K)
    if cache is not None:
        cache.put("zsystem", K.name, sys_.to_json())
    return sys_


def cmd_esspath(args) -> str:
    table = esspath_table(build_diagram(args.diagram))
    if args.format == "table":
        return render_esspath_table(table)
    return dump_json(table.to_json())


def cmd_graph(args) -> str:
    K = build_diagram(args.diagram)
    x = K.vertices[K.index(args.vertex)]
    if args.dual:
        g = dual_principal_graph(K, x, load_system(K.name, not args.no_cache))
        name = f"dual GHJ({K.name},{x})"
    else:
        g = principal_graph(K, x)
        name = f"GHJ({K.name},{x})"
    if args.format == "dot":
        return to_dot(g, name)
    return dump_json({"graph": name, **g.to_json()})


def cmd_zsystem(args) -> str:
    sys_ = load_system(args.diagram, not args.no_cache)
    ring = zfusion_table(sys_)
    if args.format == "json":
        payload = {"system": sys_.to_json()}
        if args.table:
            payload["fusion"] = ring.to_json()
        return dump_json(payload)
    out = render_system(sys_)
    if args.table:
        out += "\n" + render_fusion_table(ring)
    return out


def cmd_report(args) -> str:
    K = build_diagram(args.diagram)
    load_system(K.name, not args.no_cache)
    x = args.vertex if args.vertex is not None else standard_vertex(K)
    rep = ghj_report(K, x)
    if args.format == "json":
        return dump_json(rep.to_json())
    return render_report(rep)


def cmd_check(args) -> tuple[str, int]:
    lines = []
    failed = 0
    for check in suite(args.all):
        try:
            name, ok, detail = check()
        except GHJError as exc:
            name, ok, detail = check.__name__, False, str(exc)
        failed += not ok
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    lines.append(f"{len(lines) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n", 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghjfusion", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("esspath", help="essential path dimension tables")
    e.add_argument("diagram")
    e.add_argument("--format", choices=["json", "table"], default="json")

    g = sub.add_parser("graph", help="principal or dual principal graph")
    g.add_argument("diagram")
    g.add_argument("vertex")
    g.add_argument("--dual", action="store_true")
    g.add_argument("--format", choices=["dot", "json"], default="dot")

    z = sub.add_parser("zsystem", help="irreducible K-K connections and their fusion")
    z.add_argument("diagram")
    z.add_argument("--table", action="store_true", help="also print the fusion table")
    z.add_argument("--format", choices=["text", "json"], default="text")

    r = sub.add_parser("report", help="summary of GHJ(K, x)")
    r.add_argument("diagram")
    r.add_argument("vertex", nargs="?")
    r.add_argument("--format", choices=["text", "json"], default="text")

    c = sub.add_parser("check", help="run the validator suite")
    c.add_argument("--all", action="store_true", help="every diagram in the supported ranges")

    for s in (g, z, r):
        s.add_argument("--no-cache", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            out, code = cmd_check(args)
        else:
            handler = {"esspath": cmd_esspath, "graph": cmd_graph, "zsystem": cmd_zsystem, "report": cmd_report}
            out, code = handler[args.command](args), 0
    except GHJError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
