"""Stabilizer groups over GF(2) and their weight-filtered rank profiles.

The correlation hierarchy of a stabilizer state is read off from the ranks
``r[k]`` of the subgroups generated by all elements of weight at most ``k``:
the ``k``-party correlation is ``r[k] - r[k-1]`` bits.  Ranks only depend on
the symplectic vectors, so the heavy lifting here runs on packed ``uint64``
arrays and never materialises Pauli objects.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, DimensionError, GroupError
from .pauli import PauliString, commutes, multiply, pauli_to_text

DEFAULT_ENUMERATION_LIMIT = 24
CHUNK_BITS = 14
_MAX_PACKED_QUBITS = 32  # 2n symplectic bits must fit in a uint64


class XorBasis:
    """Incremental GF(2) basis keyed by the highest set bit of each vector."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[int] = ()):
        self._rows: dict[int, int] = {}
        for r in rows:
            self.insert(r)

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            row = self._rows.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def insert(self, v: int) -> bool:
        """Add ``v``; return True if it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        self._rows[v.bit_length() - 1] = v
        return True

    def absorb(self, vecs: np.ndarray) -> None:
        """Insert every entry of a ``uint64`` array, vectorised."""
        if vecs.size == 0:
            return
        vecs = vecs.copy()
        for pivot in sorted(self._rows, reverse=True):
            hit = ((vecs >> np.uint64(pivot)) & np.uint64(1)).astype(bool)
            vecs[hit] ^= np.uint64(self._rows[pivot])
        vecs = vecs[vecs != 0]
        while vecs.size:
            v = int(vecs[0])
            pivot = v.bit_length() - 1
            self._rows[pivot] = v
            hit = ((vecs >> np.uint64(pivot)) & np.uint64(1)).astype(bool)
            vecs[hit] ^= np.uint64(v)
            vecs = vecs[vecs != 0]

    @property
    def rank(self) -> int:
        return len(self._rows)

    def vectors(self) -> list[int]:
        return [self._rows[p] for p in sorted(self._rows)]

    def __len__(self) -> int:
        return len(self._rows)


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of integer-packed bit vectors."""
    return XorBasis(rows).rank


@dataclass(frozen=True)
class StabilizerGroup:
    """Abelian Pauli group given by independent Hermitian generators.

    Construct through :func:`make_group`, which validates the generators.
    """

    n: int
    generators: tuple[PauliString, ...]

    @property
    def m(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        return "<" + ", ".join(pauli_to_text(g) for g in self.generators) + ">"


def make_group(generators: Sequence[PauliString]) -> StabilizerGroup:
    gens = tuple(generators)
    if not gens:
        raise GroupError("a stabilizer group needs at least one generator")
    n = gens[0].n
    for i, g in enumerate(gens):
        if g.n != n:
            raise DimensionError(f"generator {i} acts on {g.n} qubits, expected {n}")
        if g.x == 0 and g.z == 0:
            if g.sign:
                raise GroupError(f"generator {i} is -identity")
            raise GroupError(f"generator {i} is the identity and therefore redundant")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not commutes(gens[i], gens[j]):
                raise GroupError(
                    f"generators {i} ({pauli_to_text(gens[i])}) and "
                    f"{j} ({pauli_to_text(gens[j])}) anticommute"
                )
    # Independent Hermitian commuting generators can never multiply to -I:
    # that would need a nonempty subset with zero symplectic sum.
    basis = XorBasis()
    for i, g in enumerate(gens):
        if not basis.insert(g.symplectic):
            raise GroupError(f"generator {i} ({pauli_to_text(g)}) is dependent on earlier ones")
    return StabilizerGroup(n, gens)


def _check_limit(g: StabilizerGroup, limit: int | None) -> int:
    limit = DEFAULT_ENUMERATION_LIMIT if limit is None else limit
    if g.m > limit:
        raise CapacityError(f"group has {g.m} generators, too many to enumerate", limit)
    return limit


def enumerate_elements(g: StabilizerGroup, limit: int | None = None) -> Iterator[PauliString]:
    """Yield all ``2**m`` group elements in Gray-code order, identity first."""
    _check_limit(g, limit)
    cur = PauliString.identity(g.n)
    yield cur
    for i in range(1, 1 << g.m):
        cur = multiply(cur, g.generators[(i & -i).bit_length() - 1])
        yield cur


def element_from_subset(g: StabilizerGroup, subset: int) -> PauliString:
    """Product of the generators selected by the bits of ``subset``."""
    cur = PauliString.identity(g.n)
    for j, gen in enumerate(g.generators):
        if subset >> j & 1:
            cur = multiply(cur, gen)
    return cur


# -- packed symplectic streaming ------------------------------------------------


def _span(vectors: Sequence[int]) -> np.ndarray:
    """All XOR combinations; entry ``i`` combines the vectors picked by bits of ``i``."""
    out = np.zeros(1 << len(vectors), dtype=np.uint64)
    size = 1
    for v in vectors:
        out[size : 2 * size] = out[:size] ^ np.uint64(v)
        size *= 2
    return out


def _packed(g: StabilizerGroup) -> list[int]:
    if g.n > _MAX_PACKED_QUBITS:
        raise CapacityError("packed symplectic arrays need n <= 32 qubits", _MAX_PACKED_QUBITS)
    return [gen.symplectic for gen in g.generators]


def _chunk_layout(m: int) -> tuple[int, int]:
    low = min(m, CHUNK_BITS)
    return low, m - low


def _iter_chunks(
    vecs: Sequence[int], start: int = 0, stop: int | None = None
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(high_index, array)`` blocks covering the span of ``vecs``.

    Block ``h`` holds the elements whose generator subset has high bits ``h``,
    indexed by the low bits, so element index is ``h << low | position``.
    """
    low, high = _chunk_layout(len(vecs))
    base = _span(vecs[:low])
    high_vecs = vecs[low:]
    stop = (1 << high) if stop is None else stop
    for h in range(start, stop):
        offset = 0
        for j, v in enumerate(high_vecs):
            if h >> j & 1:
                offset ^= v
        yield h, base ^ np.uint64(offset)


def _weights(chunk: np.ndarray, n: int) -> np.ndarray:
    mask = np.uint64((1 << n) - 1)
    return np.bitwise_count((chunk & mask) | (chunk >> np.uint64(n))).astype(np.int64)


def symplectic_elements(g: StabilizerGroup, limit: int | None = None) -> np.ndarray:
    """Every group element as a packed vector ``x | z << n``, indexed by subset."""
    _check_limit(g, limit)
    return _span(_packed(g))


def _bucket_bases(n: int, vecs: Sequence[int], start: int, stop: int | None):
    """Per-weight bases and weight counts over a range of chunks."""
    bases = [XorBasis() for _ in range(n + 1)]
    counts = np.zeros(n + 1, dtype=np.int64)
    for _, chunk in _iter_chunks(vecs, start, stop):
        w = _weights(chunk, n)
        counts += np.bincount(w, minlength=n + 1)
        order = np.argsort(w, kind="stable")
        w_sorted = w[order]
        bounds = np.searchsorted(w_sorted, np.arange(n + 2))
        for k in range(1, n + 1):
            lo, hi = bounds[k], bounds[k + 1]
            if hi > lo and bases[k].rank < len(vecs):
                bases[k].absorb(chunk[order[lo:hi]])
    return [b.vectors() for b in bases], counts


def _bucket_bases_job(args):
    return _bucket_bases(*args)


@dataclass(frozen=True)
class RankProfile:
    """``ranks[k-1]`` is the GF(2) rank of the elements of weight ``<= k``."""

    n: int
    ranks: tuple[int, ...]
    weight_counts: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if len(self.ranks) != self.n:
            raise ValueError("rank profile needs one entry per k = 1..n")
        if any(a > b for a, b in zip(self.ranks, self.ranks[1:])) or self.ranks[0] < 0:
            raise ValueError(f"rank profile must be nonnegative and monotone: {self.ranks}")

    def __getitem__(self, k: int) -> int:
        """1-based access, ``profile[0] == 0`` by convention."""
        if k == 0:
            return 0
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return self.ranks[k - 1]


def rank_profile(g: StabilizerGroup, limit: int | None = None, workers: int = 1) -> RankProfile:
    """Weight-filtered ranks of ``g`` from one streamed pass over its elements.

    Each block of elements is bucketed by weight and absorbed into a per-weight
    basis; the buckets are then merged in ascending weight order.  With
    ``workers > 1`` blocks are split across processes and merged the same way,
    which gives identical ranks.
    """
    _check_limit(g, limit)
    n = g.n
    if n > _MAX_PACKED_QUBITS:
        return _rank_profile_python(g)
    vecs = _packed(g)
    _, high = _chunk_layout(len(vecs))
    n_blocks = 1 << high
    workers = max(1, min(workers, n_blocks))
    if workers == 1:
        parts = [_bucket_bases(n, vecs, 0, None)]
    else:
        edges = [n_blocks * i // workers for i in range(workers + 1)]
        jobs = [(n, vecs, edges[i], edges[i + 1]) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_bucket_bases_job, jobs))
    counts = sum(p[1] for p in parts)
    total = XorBasis()
    ranks = []
    for k in range(1, n + 1):
        for bases, _ in parts:
            for v in bases[k]:
                total.insert(v)
        ranks.append(total.rank)
    return RankProfile(n, tuple(ranks), tuple(int(c) for c in counts))


def _rank_profile_python(g: StabilizerGroup) -> RankProfile:
    n = g.n
    buckets = [XorBasis() for _ in range(n + 1)]
    counts = [0] * (n + 1)
    cur = 0
    syms = [gen.symplectic for gen in g.generators]
    full = (1 << n) - 1
    for i in range(1 << g.m):
        if i:
            cur ^= syms[(i & -i).bit_length() - 1]
        w = ((cur & full) | (cur >> n)).bit_count()
        counts[w] += 1
        if w:
            buckets[w].insert(cur)
    total = XorBasis()
    ranks = []
    for k in range(1, n + 1):
        for v in buckets[k].vectors():
            total.insert(v)
        ranks.append(total.rank)
    return RankProfile(n, tuple(ranks), tuple(counts))


@dataclass(frozen=True)
class CorrelationHierarchy:
    """Correlation bits ``c[k-1] = C_k`` for ``k = 1..n`` and their total."""

    n: int
    c: tuple[int, ...]
    c_total: int

    def __post_init__(self) -> None:
        if len(self.c) != self.n or any(v < 0 for v in self.c):
            raise ValueError(f"invalid hierarchy {self.c}")
        if sum(self.c) != self.c_total:
            raise ValueError("hierarchy entries must sum to c_total")

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return self.c[k - 1]

    @property
    def multiparty(self) -> tuple[int, ...]:
        """``(C_2, ..., C_n)``, the part that is nonzero for connected graphs."""
        return self.c[1:]


def hierarchy(p: RankProfile) -> CorrelationHierarchy:
    c = tuple(p[k] - p[k - 1] for k in range(1, p.n + 1))
    return CorrelationHierarchy(p.n, c, p[p.n])


def group_hierarchy(g: StabilizerGroup, limit: int | None = None, workers: int = 1) -> CorrelationHierarchy:
    return hierarchy(rank_profile(g, limit=limit, workers=workers))


class ElementTable:
    """Materialised packed elements of a group, sorted for witness selection.

    Witness selection scans elements in ascending order of the packed integer
    ``x | z << n`` and keeps each one that enlarges the span, so the chosen
    operators are the lexicographically smallest basis available.
    """

    def __init__(self, g: StabilizerGroup, limit: int | None = None):
        self.group = g
        elems = symplectic_elements(g, limit)
        order = np.argsort(elems, kind="stable")
        self.subsets = order
        self.values = elems[order]
        self.weights = _weights(self.values, g.n)

    def witnesses(self, k: int, target: int | None = None) -> list[PauliString]:
        g = self.group
        if not 1 <= k <= g.n:
            raise ValueError(f"k must lie in 1..{g.n}")
        idx = np.flatnonzero((self.weights <= k) & (self.values != 0))
        vals = self.values[idx].copy()
        target = g.m if target is None else target
        chosen: list[PauliString] = []
        pos = 0
        while len(chosen) < target and pos < vals.size:
            nz = np.flatnonzero(vals[pos:])
            if nz.size == 0:
                break
            i = pos + int(nz[0])
            v = int(vals[i])
            chosen.append(element_from_subset(g, int(self.subsets[idx[i]])))
            pivot = np.uint64(v.bit_length() - 1)
            rest = vals[i + 1 :]
            hit = ((rest >> pivot) & np.uint64(1)).astype(bool)
            rest[hit] ^= np.uint64(v)
            pos = i + 1
        return chosen


def witness_operators(g: StabilizerGroup, k: int, limit: int | None = None) -> list[PauliString]:
    """Independent elements of weight ``<= k`` spanning the weight-``<= k`` subgroup."""
    return ElementTable(g, limit).witnesses(k)


def support_rank(g: StabilizerGroup, keep_mask: int, limit: int | None = None) -> int:
    """Rank of the subgroup of elements supported inside ``keep_mask``."""
    _check_limit(g, limit)
    n = g.n
    if n > _MAX_PACKED_QUBITS:
        basis = XorBasis()
        cur = 0
        syms = [gen.symplectic for gen in g.generators]
        full = (1 << n) - 1
        for i in range(1, 1 << g.m):
            cur ^= syms[(i & -i).bit_length() - 1]
            if ((cur & full) | (cur >> n)) & ~keep_mask == 0:
                basis.insert(cur)
        return basis.rank
    outside = np.uint64(((1 << n) - 1) & ~keep_mask)
    mask = np.uint64((1 << n) - 1)
    basis = XorBasis()
    for _, chunk in _iter_chunks(_packed(g)):
        supp = (chunk & mask) | (chunk >> np.uint64(n))
        basis.absorb(chunk[(supp & outside) == 0])
    return basis.rank

