"""Simple graphs, graph states, local complementation and LC orbits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import CapacityError, ParseError
from .pauli import PauliString
from .stabilizer import CorrelationHierarchy, StabilizerGroup, group_hierarchy, make_group

DEFAULT_MAX_VERTICES = 8


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``rows[i]`` is the neighbour bit mask of vertex ``i``.

    Vertices are 0-based internally and 1-based in every textual format.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError("one adjacency row per vertex required")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full or r >> i & 1:
                raise ValueError(f"row {i} has a self-loop or out-of-range bit")
            for j in range(self.n):
                if (r >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build from 0-based edge pairs."""
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        r = self.rows[v]
        return [u for u in range(self.n) if r >> u & 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in range(v) if self.rows[u] >> v & 1]

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in range(self.n):
                if frontier >> v & 1:
                    nxt |= self.rows[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for u, v in self.edges():
            a, b = perm[u], perm[v]
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return Graph(self.n, tuple(rows))


# -- named families -------------------------------------------------------------


def star_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(0, j) for j in range(1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(j, j + 1) for j in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(j, (j + 1) % n) for j in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


# -- text formats ---------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines (1-based, ``#`` comments)."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError("expected header 'n <count>'", line=lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"vertex count {parts[1]!r} is not an integer", line=lineno) from None
            if n < 1:
                raise ParseError("vertex count must be positive", line=lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", line=lineno) from None
        for w in (u, v):
            if not 1 <= w <= n:
                raise ParseError(f"vertex {w} out of range 1..{n}", line=lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=lineno)
        edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError("missing header 'n <count>'", line=1)
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


_G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = [int(g.has_edge(i, j)) for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _g6_size(g.n) + body


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER) :]
    if not s:
        raise ParseError("empty graph6 string", position=1)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", position=i + 1)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) > 1 and vals[1] == 63:
        if len(vals) < 8:
            raise ParseError("truncated graph6 size field", position=len(s))
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        pos = 8
    else:
        if len(vals) < 4:
            raise ParseError("truncated graph6 size field", position=len(s))
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        pos = 4
    if n < 1:
        raise ParseError("graph6 encodes a graph with no vertices", position=1)
    need = n * (n - 1) // 2
    body = vals[pos:]
    if len(body) != (need + 5) // 6:
        raise ParseError(
            f"graph6 body has {len(body)} characters, expected {(need + 5) // 6} for n={n}",
            position=pos + 1,
        )
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_catalog(text: str) -> list[Graph]:
    """All graphs from a file of graph6 lines; blank lines are skipped."""
    graphs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            graphs.append(parse_graph6(line))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return graphs


# -- graph states ---------------------------------------------------------------


def graph_state_stabilizer(g: Graph) -> StabilizerGroup:
    """Generators ``K_j = X_j prod_{l ~ j} Z_l``, all with sign +1."""
    return make_group([PauliString(g.n, 1 << j, g.rows[j]) for j in range(g.n)])


def graph_hierarchy(g: Graph, limit: int | None = None, workers: int = 1) -> CorrelationHierarchy:
    return group_hierarchy(graph_state_stabilizer(g), limit=limit, workers=workers)


def local_complement(g: Graph, v: int) -> Graph:
    """Complement the subgraph induced on the neighbourhood of 0-based ``v``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range 0..{g.n - 1}")
    nb = g.rows[v]
    rows = list(g.rows)
    for u in range(g.n):
        if nb >> u & 1:
            rows[u] ^= nb & ~(1 << u)
    return Graph(g.n, tuple(rows))


# -- canonical forms ------------------------------------------------------------


def _code(g: Graph, order: Sequence[int]) -> int:
    """Upper-triangle adjacency bits of ``g`` listed in vertex ``order``."""
    code = 0
    for b in range(1, len(order)):
        row = g.rows[order[b]]
        for a in range(b):
            code = code << 1 | (row >> order[a] & 1)
    return code


def _refined_cells(g: Graph) -> list[list[int]]:
    """Ordered partition of the vertices by iterated degree refinement."""
    colour = [g.degree(v) for v in range(g.n)]
    while True:
        sig = [
            (colour[v], tuple(sorted(colour[u] for u in g.neighbors(v)))) for v in range(g.n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_code(g: Graph) -> int:
    """Isomorphism-invariant integer: the minimum adjacency code over all
    vertex orders that list the refined colour cells in their fixed order.

    The colour partition is itself isomorphism invariant, so restricting the
    minimum to orders respecting it still yields a complete invariant.
    """
    cells = _refined_cells(g)
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for p in parts for v in p]
        code = _code(g, order)
        if best is None or code < best:
            best = code
    return best


def brute_force_canonical_code(g: Graph) -> int:
    """Minimum adjacency code over every vertex permutation."""
    return min(_code(g, order) for order in itertools.permutations(range(g.n)))


def canonical_form(g: Graph, canonicalizer: Callable[[Graph], int] = canonical_code) -> Graph:
    """Representative graph whose adjacency code in natural order is the canonical code."""
    code = canonicalizer(g)
    n = g.n
    rows = [0] * n
    total = n * (n - 1) // 2
    k = total - 1
    for b in range(1, n):
        for a in range(b):
            if code >> k & 1:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
            k -= 1
    return Graph(n, tuple(rows))


def _check_vertices(n: int, max_vertices: int | None) -> None:
    limit = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if n > limit:
        raise CapacityError(f"graph enumeration on {n} vertices requested", limit)
    if n < 1:
        raise ValueError("n must be positive")


def enumerate_graphs(n: int, max_vertices: int | None = None) -> list[Graph]:
    """One canonical representative per isomorphism class of graphs on ``n`` vertices.

    Classes on ``n`` vertices are grown from classes on ``n - 1`` vertices by
    attaching a new vertex to every possible neighbour set.
    """
    _check_vertices(n, max_vertices)
    layer = {canonical_code(Graph.empty(1)): Graph.empty(1)}
    for size in range(2, n + 1):
        nxt: dict[int, Graph] = {}
        for g in layer.values():
            for nb in range(1 << (size - 1)):
                rows = list(g.rows) + [nb]
                for u in range(size - 1):
                    if nb >> u & 1:
                        rows[u] |= 1 << (size - 1)
                h = Graph(size, tuple(rows))
                code = canonical_code(h)
                if code not in nxt:
                    nxt[code] = canonical_form(h)
        layer = nxt
    return [layer[c] for c in sorted(layer)]


def enumerate_connected_graphs(
    n: int, max_vertices: int | None = None, catalog: Iterable[Graph] | None = None
) -> Iterator[Graph]:
    """Connected isomorphism classes on ``n`` vertices, optionally from a graph6 catalog."""
    _check_vertices(n, max_vertices)
    if catalog is not None:
        seen: set[int] = set()
        for g in catalog:
            if g.n != n or not g.is_connected():
                continue
            code = canonical_code(g)
            if code not in seen:
                seen.add(code)
                yield canonical_form(g)
        return
    for g in enumerate_graphs(n, max_vertices):
        if g.is_connected():
            yield g


@dataclass(frozen=True)
class Orbit:
    representative: Graph
    members: int
    hierarchy: CorrelationHierarchy


@dataclass(frozen=True)
class OrbitReport:
    n: int
    orbits: tuple[Orbit, ...]
    separation: bool

    @property
    def total_members(self) -> int:
        return sum(o.members for o in self.orbits)


def lc_orbit(g: Graph) -> dict[int, Graph]:
    """Isomorphism classes reachable from ``g`` by local complementations."""
    start = canonical_form(g)
    seen = {canonical_code(start): start}
    queue = [start]
    while queue:
        h = queue.pop()
        for v in range(h.n):
            nb = canonical_form(local_complement(h, v))
            code = canonical_code(nb)
            if code not in seen:
                seen[code] = nb
                queue.append(nb)
    return seen


def lc_orbits(
    n: int, max_vertices: int | None = None, catalog: Iterable[Graph] | None = None
) -> OrbitReport:
    """Partition connected graphs on ``n`` vertices into local-complementation orbits."""
    graphs = list(enumerate_connected_graphs(n, max_vertices, catalog))
    codes = {canonical_code(g): g for g in graphs}
    assigned: set[int] = set()
    orbits = []
    for code in sorted(codes):
        if code in assigned:
            continue
        members = lc_orbit(codes[code])
        assigned.update(members)
        rep_code = min(members)
        hier = graph_hierarchy(members[rep_code])
        for other in members.values():
            other_hier = graph_hierarchy(other)
            if other_hier != hier:
                raise AssertionError(
                    f"hierarchy differs inside an LC orbit: {to_graph6(members[rep_code])} "
                    f"{hier.c} vs {to_graph6(other)} {other_hier.c}"
                )
        orbits.append(Orbit(members[rep_code], len(members), hier))
    orbits.sort(key=lambda o: (o.hierarchy.c, to_graph6(o.representative)), reverse=True)
    tuples = [o.hierarchy.c for o in orbits]
    return OrbitReport(n, tuple(orbits), len(set(tuples)) == len(tuples))
