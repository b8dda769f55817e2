"""Command line interface.

Exit codes: 0 success, 1 internal or verification failure, 2 bad input
(unparsable or missing file, too few points, degenerate configuration).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .ccplab import (
    blow_up,
    find_ham_cycle,
    find_ham_path,
    k4_counterexample,
    load_gadget,
    pulling_tetrahedralization,
)
from .ccplab.blowup import EmbeddedCubic
from .corpus import SHAPES, random_points
from .errors import GeneralPositionViolation, HamTetraError, InteriorPointsPresent, ParseError, TooFewPoints
from .formats import format_mesh, format_points, read_mesh, read_points
from .graph import euler_characteristic, format_graph, is_three_connected, read_graph, trace_faces
from .pipeline import hamiltonian_tetrahedralization
from .verify import LEVELS, verify_mesh

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

log = logging.getLogger("hamtetra")


class InputError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_points(args) -> list:
    if args.random is not None:
        return random_points(args.random, args.seed, args.shape)
    if not args.inp:
        raise InputError("an input file (--in) or --random N is required")
    return read_points(args.inp)


def _load_graph(path: Optional[str]) -> EmbeddedCubic:
    if not path:
        return load_gadget()
    return EmbeddedCubic.from_graph(read_graph(path))


def cmd_tetra(args) -> int:
    pts = _load_points(args)
    mesh, cert, stats = hamiltonian_tetrahedralization(pts)
    rep = verify_mesh(pts, mesh, args.verify, cert)
    info = {
        "n": stats.n,
        "m": stats.m,
        "m_prime": stats.m_prime,
        "peels": stats.peels,
        "initial_cycles": stats.initial_cycles,
        "steiner_count": stats.steiner_count,
        "steiner_bound": stats.steiner_bound,
        "base_case": str(stats.base_case).lower(),
        "verify": args.verify if rep.ok else "FAILED",
    }
    for f in stats.findings:
        log.warning("finding: %s", f)
    _emit(format_mesh(mesh, cert.order, cert.cycle, info), args.out)
    if not rep.ok:
        sys.stderr.write(rep.to_text())
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.inp or not args.mesh:
        raise InputError("verify needs --in POINTS and --mesh MESH")
    pts = read_points(args.inp)
    mf = read_mesh(args.mesh)
    cert = None
    if mf.order is not None:
        from .pipeline import HamCertificate

        cert = HamCertificate(mf.order, mf.cycle)
    level = args.verify if args.verify != "off" else "fast"
    try:
        rep = verify_mesh(pts, mf.mesh, level, cert)
    except GeneralPositionViolation as exc:
        # the input points themselves are degenerate
        raise InputError(str(exc)) from None
    sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_pulling(args) -> int:
    pts = _load_points(args)
    res = pulling_tetrahedralization(pts, args.budget)
    if res is None:
        sys.stdout.write("outcome: no Hamiltonian cycle of the hull dual found\n")
        return EXIT_FAIL
    mesh, cert, p = res
    rep = verify_mesh(pts, mesh, args.verify, cert)
    info = {"m": len(pts), "pulled_vertex": p, "path_length": len(cert.order), "verify": args.verify if rep.ok else "FAILED"}
    _emit(format_mesh(mesh, cert.order, cert.cycle, info), args.out)
    if not rep.ok:
        sys.stderr.write(rep.to_text())
        return EXIT_FAIL
    return EXIT_OK


def cmd_graph(args) -> int:
    action = args.action
    if action == "counterexample":
        h = _load_graph(args.gadget)
        g = k4_counterexample(h)
        comments = ["K4 with every vertex blown up by a non-Hamiltonian cubic plane graph"]
        _emit(format_graph(g, comments), args.out)
        _report_counts(g, sys.stderr if not args.out else sys.stdout)
        return EXIT_OK
    if action == "blowup":
        if not args.inp:
            raise InputError("blowup needs --in G")
        g = _load_graph(args.inp)
        h = _load_graph(args.gadget)
        r = blow_up(g, args.u, h, args.v, args.face)
        _emit(format_graph(r), args.out)
        return EXIT_OK
    g = _load_graph(args.inp)
    if action == "hamsearch":
        res = (find_ham_path if args.path else find_ham_cycle)(g, args.budget)
        text = res.describe()
        if args.path and res:
            text = "path: " + " ".join(map(str, res.order))
        _emit(f"{text}\nnodes: {res.nodes}\n", args.out)
        return EXIT_OK
    if action == "faces":
        faces = trace_faces(g)
        lines = [f"faces: {len(faces)}"] + [" ".join(map(str, f)) for f in faces]
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if action == "check3ccp":
        checks = [
            ("cubic", g.is_cubic()),
            ("3-connected", is_three_connected(g)),
            ("Euler", _euler_ok(g)),
        ]
        _emit("".join(f"{name} {'✓' if ok else '✗'}\n" for name, ok in checks), args.out)
        return EXIT_OK if all(ok for _, ok in checks) else EXIT_FAIL
    raise InputError(f"unknown graph action {action!r}")


def _euler_ok(g) -> bool:
    try:
        return euler_characteristic(g) == 2
    except HamTetraError:
        return False


def _report_counts(g, stream) -> None:
    faces = trace_faces(g)
    stream.write(
        f"vertices: {g.n}\nedges: {g.num_edges}\nfaces: {len(faces)}\n"
        f"euler: {g.n - g.num_edges + len(faces)}\n"
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inp", metavar="PATH", help="input file")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0, help="seed for --random inputs")
    common.add_argument("--budget", type=int, default=2_000_000, help="search node budget")
    common.add_argument("--verify", choices=LEVELS, default="fast", help="verification level")
    common.add_argument("-v", "--verbose", action="store_true")

    points = argparse.ArgumentParser(add_help=False)
    points.add_argument("--random", type=int, metavar="N", help="use N seeded random points instead of --in")
    points.add_argument("--shape", choices=SHAPES, default="ball")

    p = argparse.ArgumentParser(prog="hamtetra", description="Hamiltonian tetrahedralizations and cubic plane graph tools.")
    sub = p.add_subparsers(dest="command", required=True)
    t = sub.add_parser("tetra", parents=[common, points], help="tetrahedralize a point set")
    t.set_defaults(func=cmd_tetra)
    v = sub.add_parser("verify", parents=[common], help="check a mesh and its certificate")
    v.add_argument("--mesh", metavar="PATH", help="mesh file written by tetra or pulling")
    v.set_defaults(func=cmd_verify)
    pl = sub.add_parser("pulling", parents=[common, points], help="Hamiltonian pulling tetrahedralization")
    pl.set_defaults(func=cmd_pulling)
    g = sub.add_parser("graph", parents=[common], help="cubic plane graph tools")
    g.add_argument("action", choices=["blowup", "counterexample", "hamsearch", "faces", "check3ccp"])
    g.add_argument("--gadget", metavar="PATH", help="graph H to blow in (default: shipped 38-vertex graph)")
    g.add_argument("--u", type=int, default=0, help="vertex of G to blow up")
    g.add_argument("--v", type=int, default=0, help="vertex of H removed by the blow-up")
    g.add_argument("--face", type=int, default=0, choices=[0, 1, 2], help="corner of G at u receiving H")
    g.add_argument("--path", action="store_true", help="hamsearch: look for a path instead of a cycle")
    g.set_defaults(func=cmd_graph)
    pts = sub.add_parser("points", parents=[common, points], help="write a seeded random point set")
    pts.set_defaults(func=lambda a: _emit(format_points(_load_points(a)), a.out) or EXIT_OK)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: file not found: {exc.filename}\n")
        return EXIT_INPUT
    except (TooFewPoints, GeneralPositionViolation, InteriorPointsPresent, ParseError, InputError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except HamTetraError as exc:
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
