"""``corrhier`` command line: hierarchy, orbits, canonical, verify."""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .density import (
    EIGEN_CUTOFF,
    HERMITIAN_TOL,
    canonical_state,
    correlation_report,
    graph_state,
    pauli_matrix,
    reduced_density,
    stabilizer_reduced_entropy,
    stabilizer_state,
    von_neumann_entropy,
)
from .errors import CapacityError, CorrHierError, ParseError
from .graphs import (
    DEFAULT_MAX_VERTICES,
    Graph,
    enumerate_connected_graphs,
    graph_hierarchy,
    graph_state_stabilizer,
    lc_orbits,
    local_complement,
    parse_edge_list,
    parse_graph6,
    read_graph6_catalog,
    to_graph6,
)
from .pauli import PauliString, pauli_to_text
from .stabilizer import (
    DEFAULT_ENUMERATION_LIMIT,
    ElementTable,
    enumerate_elements,
    gf2_rank,
    hierarchy,
    make_group,
    rank_profile,
)

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_VERIFY = 0, 1, 2, 3
LIMIT_ENV = "CORRHIER_LIMIT"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    edges: str | None = None
    graph6: str | None = None
    name: str | None = None
    n: int | None = None
    format: str = "table"
    limit: int = DEFAULT_ENUMERATION_LIMIT
    workers: int = 1
    max_vertices: int = DEFAULT_MAX_VERTICES
    seed: int = 0

    def __post_init__(self) -> None:
        if self.limit < 1 or self.workers < 1 or self.max_vertices < 1:
            raise _UsageError("--limit, --workers and --max-vertices must be positive")


def _default_limit() -> int:
    raw = os.environ.get(LIMIT_ENV)
    if raw is None:
        return DEFAULT_ENUMERATION_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"{LIMIT_ENV}={raw!r} is not an integer") from None


def _graph_from_text(text: str, source: str) -> Graph:
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise ParseError(f"{source}: no graph found")
    if body[0].split()[0] == "n":
        try:
            return parse_edge_list(text)
        except ParseError as exc:
            raise ParseError(f"{source}: {exc}") from None
    try:
        return parse_graph6(body[0])
    except ParseError as exc:
        raise ParseError(f"{source}: {exc}") from None


def _load_graph(cfg: RunConfig) -> Graph:
    given = [v is not None for v in (cfg.input, cfg.edges, cfg.graph6)]
    if sum(given) != 1:
        raise _UsageError("give exactly one of --input, --edges, --graph6")
    if cfg.edges is not None:
        return _graph_from_text(cfg.edges.replace("\\n", "\n"), "--edges")
    if cfg.graph6 is not None:
        try:
            return parse_graph6(cfg.graph6)
        except ParseError as exc:
            raise ParseError(f"--graph6: {exc}") from None
    try:
        with open(cfg.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {cfg.input}: {exc.strerror}") from None
    return _graph_from_text(text, cfg.input)


def _num(x: float) -> float:
    v = round(float(x), 12)
    return 0.0 if v == 0 else v


# -- commands -------------------------------------------------------------------


def cmd_hierarchy(cfg: RunConfig) -> dict:
    g = _load_graph(cfg)
    group = graph_state_stabilizer(g)
    profile = rank_profile(group, limit=cfg.limit, workers=cfg.workers)
    hier = hierarchy(profile)
    table = ElementTable(group, cfg.limit)
    witnesses = {
        str(k): [pauli_to_text(p) for p in table.witnesses(k, profile[k])]
        for k in range(1, g.n + 1)
    }
    return {
        "version": __version__,
        "command": "hierarchy",
        "graph6": to_graph6(g),
        "n": g.n,
        "connected": g.is_connected(),
        "rank_profile": list(profile.ranks),
        "hierarchy": list(hier.c),
        "c_total": hier.c_total,
        "witnesses": witnesses,
    }


def cmd_orbits(cfg: RunConfig) -> dict:
    if cfg.n is None:
        raise _UsageError("orbits needs --n")
    if cfg.n < 2:
        raise _UsageError("orbits needs --n >= 2")
    catalog = None
    if cfg.input is not None:
        try:
            with open(cfg.input, encoding="utf-8") as fh:
                catalog = read_graph6_catalog(fh.read())
        except OSError as exc:
            raise _UsageError(f"cannot read {cfg.input}: {exc.strerror}") from None
    report = lc_orbits(cfg.n, max_vertices=cfg.max_vertices, catalog=catalog)
    return {
        "version": __version__,
        "command": "orbits",
        "n": cfg.n,
        "orbit_count": len(report.orbits),
        "graphs": report.total_members,
        "orbits": [
            {
                "representative": to_graph6(o.representative),
                "members": o.members,
                "hierarchy": list(o.hierarchy.c),
            }
            for o in report.orbits
        ],
        "separation": report.separation,
    }


def cmd_canonical(cfg: RunConfig) -> dict:
    if not cfg.name:
        raise _UsageError("canonical needs a state name")
    graph = None
    if cfg.name.strip().lower() == "graph":
        graph = _load_graph(cfg)
    try:
        rho = canonical_state(cfg.name, graph=graph)
    except (ValueError, ParseError) as exc:
        raise _UsageError(str(exc)) from None
    rep = correlation_report(rho)
    out = {
        "version": __version__,
        "command": "canonical",
        "name": cfg.name,
        "n": rep.n,
        "single_entropies": [_num(s) for s in rep.single_entropies],
        "pairwise_mutual": {f"{i},{j}": _num(v) for (i, j), v in rep.pairwise_mutual.items()},
        "c_total": _num(rep.c_total),
        "eigen_cutoff": EIGEN_CUTOFF,
        "hermitian_tol": HERMITIAN_TOL,
    }
    if rep.three_party_mutual is not None:
        out["three_party_mutual"] = _num(rep.three_party_mutual)
    return out


# -- verification suites --------------------------------------------------------


class SuiteFailure(Exception):
    def __init__(self, suite: str, detail: str):
        self.suite = suite
        super().__init__(detail)


@dataclass
class SuiteResult:
    name: str
    checks: int
    note: str = ""


def _suite_enumeration(cfg: RunConfig, rng: random.Random) -> SuiteResult:
    """Every enumerated element must stabilize the dense projector state."""
    checks = 0
    for n in range(1, 5):
        for g in enumerate_connected_graphs(n):
            group = graph_state_stabilizer(g)
            rho = stabilizer_state(group).m
            for elem in enumerate_elements(group, cfg.limit):
                expect = np.trace(pauli_matrix(elem) @ rho).real
                checks += 1
                if abs(expect - 1.0) > 1e-9:
                    raise SuiteFailure(
                        "enumeration",
                        f"graph {to_graph6(g)}: element {pauli_to_text(elem)} has expectation {expect:+.3f}",
                    )
    return SuiteResult("enumeration", checks)


def _random_local_relabel(p: PauliString, perms: Sequence[Sequence[int]]) -> PauliString:
    """Apply a per-qubit permutation of {X, Y, Z}; commutation is preserved."""
    x = z = 0
    for q in range(p.n):
        code = (p.x >> q & 1) | (p.z >> q & 1) << 1  # 1=X, 2=Z, 3=Y
        if code:
            code = perms[q][code - 1]
        x |= (code & 1) << q
        z |= (code >> 1) << q
    return PauliString(p.n, x, z)


def _closure_size(vectors: Sequence[int]) -> int:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for v in vectors:
                b = a ^ v
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)


def _suite_group_order(cfg: RunConfig, rng: random.Random, trials: int = 200) -> SuiteResult:
    for _ in range(trials):
        n = rng.randint(2, 6)
        g = _random_connected_graph(n, rng)
        perms = [rng.sample([1, 2, 3], 3) for _ in range(n)]
        gens = [_random_local_relabel(k, perms) for k in graph_state_stabilizer(g).generators]
        elems = list(enumerate_elements(make_group(gens), cfg.limit))
        picks = rng.sample(elems, rng.randint(1, min(6, len(elems))))
        vecs = [p.symplectic for p in picks]
        if 2 ** gf2_rank(vecs) != _closure_size(vecs):
            raise SuiteFailure(
                "group_order",
                f"graph {to_graph6(g)}: subset {[pauli_to_text(p) for p in picks]} "
                f"has rank {gf2_rank(vecs)} but closure {_closure_size(vecs)}",
            )
        if len({p.symplectic for p in elems}) != 2**n:
            raise SuiteFailure("group_order", f"graph {to_graph6(g)}: enumeration has duplicates")
    return SuiteResult("group_order", trials)


def _suite_dense_entropy(cfg: RunConfig, rng: random.Random, max_n: int = 5) -> SuiteResult:
    checks = 0
    for n in range(2, max_n + 1):
        for g in enumerate_connected_graphs(n):
            group = graph_state_stabilizer(g)
            rho = graph_state(g)
            for size in range(1, min(3, n) + 1):
                for keep in itertools.combinations(range(1, n + 1), size):
                    dense = von_neumann_entropy(reduced_density(rho, keep))
                    stab = stabilizer_reduced_entropy(group, keep, cfg.limit)
                    checks += 1
                    if abs(dense - stab) > 1e-9:
                        raise SuiteFailure(
                            "dense_entropy",
                            f"graph {to_graph6(g)} qubits {keep}: dense {dense:.6f} vs stabilizer {stab}",
                        )
    return SuiteResult("dense_entropy", checks)


def _random_connected_graph(n: int, rng: random.Random) -> Graph:
    while True:
        p = rng.uniform(0.2, 0.9)
        g = Graph.from_edges(
            n, [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
        )
        if g.is_connected():
            return g


def _suite_invariance(cfg: RunConfig, rng: random.Random, trials: int = 200) -> SuiteResult:
    for _ in range(trials):
        n = rng.randint(2, 8)
        g = _random_connected_graph(n, rng)
        v = rng.randrange(n)
        a, b = graph_hierarchy(g), graph_hierarchy(local_complement(g, v))
        if a != b:
            raise SuiteFailure(
                "invariance", f"graph {to_graph6(g)} vertex {v + 1}: {a.c} vs {b.c} after local complement"
            )
        perm = list(range(n))
        rng.shuffle(perm)
        c = graph_hierarchy(g.relabel(perm))
        if a != c:
            raise SuiteFailure("invariance", f"graph {to_graph6(g)} relabel {perm}: {a.c} vs {c.c}")
    return SuiteResult("invariance", 2 * trials)


TABLE1 = sorted([(4, 0, 0, 1), (3, 1, 1, 0), (2, 3, 0, 0), (0, 5, 0, 0)])


def _suite_table1(cfg: RunConfig, rng: random.Random) -> SuiteResult:
    graphs = list(enumerate_connected_graphs(5))
    found = sorted({graph_hierarchy(g).multiparty for g in graphs})
    if len(graphs) != 21 or found != TABLE1:
        raise SuiteFailure("table1", f"{len(graphs)} graphs with hierarchies {found}")
    return SuiteResult("table1", len(graphs))


def _suite_orbits(cfg: RunConfig, rng: random.Random) -> SuiteResult:
    top = 6 if cfg.n is None else cfg.n
    notes = []
    checks = 0
    for n in range(2, top + 1):
        try:
            report = lc_orbits(n, max_vertices=cfg.max_vertices)
        except AssertionError as exc:
            raise SuiteFailure("orbits", str(exc)) from None
        checks += report.total_members
        notes.append(f"n={n}: {len(report.orbits)} orbits, separation={str(report.separation).lower()}")
        if n <= 5 and not report.separation:
            raise SuiteFailure("orbits", f"n={n}: hierarchies fail to separate LC orbits")
    return SuiteResult("orbits", checks, "; ".join(notes))


SUITES: list[tuple[str, Callable[[RunConfig, random.Random], SuiteResult]]] = [
    ("enumeration", _suite_enumeration),
    ("group_order", _suite_group_order),
    ("dense_entropy", _suite_dense_entropy),
    ("invariance", _suite_invariance),
    ("table1", _suite_table1),
    ("orbits", _suite_orbits),
]


def cmd_verify(cfg: RunConfig) -> dict:
    results = []
    failure = None
    for name, suite in SUITES:
        rng = random.Random(f"{cfg.seed}:{name}")
        try:
            res = suite(cfg, rng)
            results.append({"suite": name, "passed": True, "checks": res.checks, "note": res.note})
        except SuiteFailure as exc:
            results.append({"suite": name, "passed": False, "checks": 0, "note": str(exc)})
            failure = failure or f"{name}: {exc}"
    return {
        "version": __version__,
        "command": "verify",
        "suites": results,
        "passed": failure is None,
        "first_failure": failure,
    }


# -- rendering ------------------------------------------------------------------


def _render_table(rep: dict) -> str:
    cmd = rep["command"]
    lines = []
    if cmd == "hierarchy":
        lines.append(f"graph6      {rep['graph6']}")
        lines.append(f"n           {rep['n']}")
        lines.append(f"connected   {'yes' if rep['connected'] else 'no'}")
        lines.append(f"{'k':>3}  {'r_k':>4}  {'C_k':>4}  witnesses")
        for k in range(1, rep["n"] + 1):
            ops = " ".join(rep["witnesses"][str(k)]) or "-"
            lines.append(
                f"{k:>3}  {rep['rank_profile'][k - 1]:>4}  {rep['hierarchy'][k - 1]:>4}  {ops}"
            )
        lines.append("hierarchy   " + " ".join(f"C_{k}={c}" for k, c in enumerate(rep["hierarchy"], 1)))
        lines.append(f"C_T         {rep['c_total']}")
    elif cmd == "orbits":
        lines.append(f"n           {rep['n']}")
        lines.append(f"graphs      {rep['graphs']}")
        lines.append(f"orbits      {rep['orbit_count']}")
        for i, o in enumerate(rep["orbits"], 1):
            cs = " ".join(f"C_{k}={c}" for k, c in enumerate(o["hierarchy"], 1))
            lines.append(f"  [{i}] {o['representative']:<12} members={o['members']:<4} {cs}")
        lines.append(f"separation  {str(rep['separation']).lower()}")
    elif cmd == "canonical":
        lines.append(f"state       {rep['name']}")
        lines.append(f"n           {rep['n']}")
        for q, s in enumerate(rep["single_entropies"], 1):
            lines.append(f"S({q})        {s:.12g}")
        for pair, v in rep["pairwise_mutual"].items():
            lines.append(f"I({pair})      {v:.12g}")
        lines.append(f"C_T         {rep['c_total']:.12g}")
        if "three_party_mutual" in rep:
            lines.append(f"I(123)      {rep['three_party_mutual']:.12g}")
        lines.append(f"tolerances  eigen_cutoff={rep['eigen_cutoff']:g} hermitian_tol={rep['hermitian_tol']:g}")
    elif cmd == "verify":
        for s in rep["suites"]:
            status = "PASS" if s["passed"] else "FAIL"
            note = f"  {s['note']}" if s["note"] else ""
            lines.append(f"{status} {s['suite']:<14} checks={s['checks']}{note}")
        if rep["first_failure"]:
            lines.append(f"first counterexample: {rep['first_failure']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("graph input")
    src.add_argument("--input", metavar="PATH", help="edge-list or graph6 file (graph6 catalog for orbits)")
    src.add_argument("--edges", metavar="TEXT", help="inline edge list, e.g. 'n 2\\n1 2'")
    src.add_argument("--graph6", metavar="TEXT", help="inline graph6 string")
    common.add_argument("--n", type=int, help="vertex count (orbits) or largest orbit probe (verify)")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--limit", type=int, default=None, help=f"enumeration limit (env {LIMIT_ENV})")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="corrhier", description=__doc__)
    parser.add_argument("--version", action="version", version=f"corrhier {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("hierarchy", parents=[common], help="correlation hierarchy of a graph state")
    sub.add_parser("orbits", parents=[common], help="LC orbits of connected graphs on n vertices")
    canon = sub.add_parser("canonical", parents=[common], help="entropic quantities of a named state")
    canon.add_argument("name", help="classical2, bell, classical3, ghz3, ghzN, classicalN or graph")
    sub.add_parser("verify", parents=[common], help="run the cross-check suites")
    return parser


COMMANDS = {
    "hierarchy": cmd_hierarchy,
    "orbits": cmd_orbits,
    "canonical": cmd_canonical,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            input=args.input,
            edges=args.edges,
            graph6=args.graph6,
            name=getattr(args, "name", None),
            n=args.n,
            format=args.format,
            limit=args.limit if args.limit is not None else _default_limit(),
            workers=args.workers,
            max_vertices=args.max_vertices,
            seed=args.seed,
        )
        report = COMMANDS[cfg.command](cfg)
    except (_UsageError, ParseError) as exc:
        print(f"corrhier: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"corrhier: capacity: {exc}; raise --limit/--max-vertices or {LIMIT_ENV}", file=sys.stderr)
        return EXIT_CAPACITY
    except CorrHierError as exc:
        print(f"corrhier: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_render_table(report))
    if cfg.command == "verify" and not report["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
