"""Dense density matrices, von Neumann entropies and correlation quantities.

Qubit 1 is the leftmost tensor factor of the dense matrix.  All entropies are
in bits.  The dense path is a cross-check for small systems; the stabilizer
path in :func:`stabilizer_reduced_entropy` scales further.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError
from .graphs import Graph, graph_state_stabilizer, parse_edge_list, parse_graph6
from .pauli import PauliString
from .stabilizer import StabilizerGroup, support_rank

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIGEN_CUTOFF = 1e-10
MAX_DENSE_QUBITS = 10


@dataclass(frozen=True)
class DensityMatrix:
    n: int
    m: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self) -> None:
        dim = 1 << self.n
        if self.m.shape != (dim, dim):
            raise DomainError(f"expected a {dim}x{dim} matrix for {self.n} qubits, got {self.m.shape}")
        if np.max(np.abs(self.m - self.m.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(self.m) - 1.0) > TRACE_TOL:
            raise DomainError(f"density matrix has trace {np.trace(self.m).real:.3g}, expected 1")

    @classmethod
    def from_vector(cls, psi: Sequence[complex]) -> DensityMatrix:
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        n = psi.size.bit_length() - 1
        return cls(n, np.outer(psi, psi.conj()))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.m)


def _basis_projector(n: int, states: Iterable[int]) -> np.ndarray:
    states = list(states)
    m = np.zeros((1 << n, 1 << n), dtype=complex)
    for s in states:
        m[s, s] = 1.0 / len(states)
    return m


def classical_state(n: int) -> DensityMatrix:
    """Equal mixture of all-zeros and all-ones."""
    return DensityMatrix(n, _basis_projector(n, [0, (1 << n) - 1]))


def ghz_state(n: int) -> DensityMatrix:
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = psi[-1] = 1.0
    return DensityMatrix.from_vector(psi)


def _pauli_action(p: PauliString) -> tuple[np.ndarray, np.ndarray]:
    """``P|b> = phase[b] |perm[b]>`` on computational basis indices.

    Basis index bit ``n - q`` holds qubit ``q`` (1-based), so qubit 1 is the
    leftmost tensor factor.
    """
    n = p.n
    idx = np.arange(1 << n)
    xm = zm = 0
    for q in range(n):
        if p.x >> q & 1:
            xm |= 1 << (n - 1 - q)
        if p.z >> q & 1:
            zm |= 1 << (n - 1 - q)
    perm = idx ^ xm
    # X^x Z^z acting on |b>: Z first gives (-1)^{z.b}, then X flips bits.
    signs = (-1.0) ** np.bitwise_count((idx & zm).astype(np.uint64)).astype(float)
    ys = (p.x & p.z).bit_count()
    phase = signs * (1j**ys) * (-1.0 if p.sign else 1.0)
    return perm, phase


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense matrix of a Pauli string, built column by column."""
    perm, phase = _pauli_action(p)
    dim = perm.size
    m = np.zeros((dim, dim), dtype=complex)
    m[perm, np.arange(dim)] = phase
    return m


def stabilizer_state(g: StabilizerGroup) -> DensityMatrix:
    """``prod_j (I + K_j) / 2`` normalised to unit trace."""
    if g.n > MAX_DENSE_QUBITS:
        raise CapacityError(f"dense state on {g.n} qubits requested", MAX_DENSE_QUBITS)
    dim = 1 << g.n
    rho = np.eye(dim, dtype=complex)
    for gen in g.generators:
        perm, phase = _pauli_action(gen)
        k_rho = np.empty_like(rho)
        k_rho[perm, :] = phase[:, None] * rho
        rho = (rho + k_rho) / 2
    rho /= np.trace(rho)
    return DensityMatrix(g.n, rho)


def graph_state(g: Graph) -> DensityMatrix:
    return stabilizer_state(graph_state_stabilizer(g))


_NAMED = {
    "classical2": lambda: classical_state(2),
    "bell": lambda: ghz_state(2),
    "classical3": lambda: classical_state(3),
    "ghz3": lambda: ghz_state(3),
}


def canonical_state(name: str, graph: Graph | None = None) -> DensityMatrix:
    """Named example states.

    Accepts ``classical2``, ``bell``, ``classical3``, ``ghz3``, ``ghz(N)`` /
    ``ghzN``, ``classical(N)``, and ``graph`` (with ``graph=`` or an inline
    ``graph(<graph6>)``).
    """
    key = name.strip().lower()
    if key in _NAMED:
        return _NAMED[key]()
    m = re.fullmatch(r"(ghz|classical)\(?(\d+)\)?", key)
    if m:
        n = int(m.group(2))
        if not 1 <= n <= MAX_DENSE_QUBITS:
            raise CapacityError(f"{m.group(1)} state on {n} qubits requested", MAX_DENSE_QUBITS)
        return ghz_state(n) if m.group(1) == "ghz" else classical_state(n)
    m = re.fullmatch(r"graph(?:\((.*)\))?", name.strip(), flags=re.S)
    if m:
        if graph is None:
            text = m.group(1)
            if not text:
                raise ValueError("graph state needs a graph")
            graph = parse_edge_list(text) if text.lstrip().startswith("n") else parse_graph6(text)
        return graph_state(graph)
    raise ValueError(f"unknown canonical state {name!r}")


def _mask_to_qubits(keep: Iterable[int], n: int) -> list[int]:
    qubits = sorted(set(keep))
    if not qubits:
        raise ValueError("qubit subset must be nonempty")
    for q in qubits:
        if not 1 <= q <= n:
            raise ValueError(f"qubit {q} out of range 1..{n}")
    return qubits


def reduced_density(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Partial trace onto the 1-based qubits in ``keep`` (kept in ascending order)."""
    n = rho.n
    kept = [q - 1 for q in _mask_to_qubits(keep, n)]
    if len(kept) == n:
        return rho
    traced = [q for q in range(n) if q not in kept]
    t = rho.m.reshape([2] * (2 * n))
    t = t.transpose(kept + traced + [n + q for q in kept] + [n + q for q in traced])
    dk, dt = 1 << len(kept), 1 << len(traced)
    red = np.einsum("iaja->ij", t.reshape(dk, dt, dk, dt))
    return DensityMatrix(len(kept), red)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    evals = rho.eigenvalues()
    if evals.min() < -EIGEN_CUTOFF:
        raise DomainError(f"matrix is not positive semidefinite (eigenvalue {evals.min():.3g})")
    evals = evals[evals > EIGEN_CUTOFF]
    return float(-np.sum(evals * np.log2(evals)))


def _subset_entropy(rho: DensityMatrix, qubits: Iterable[int]) -> float:
    return von_neumann_entropy(reduced_density(rho, qubits))


def mutual_information(rho: DensityMatrix, partition: tuple[Iterable[int], Iterable[int]]) -> float:
    """``S(A) + S(B) - S(AB)`` for a bipartition of all qubits."""
    a, b = (set(part) for part in partition)
    if not a or not b or a & b or a | b != set(range(1, rho.n + 1)):
        raise ValueError(f"{sorted(a)} | {sorted(b)} is not a bipartition of 1..{rho.n}")
    return _subset_entropy(rho, a) + _subset_entropy(rho, b) - von_neumann_entropy(rho)


def pairwise_mutual_information(rho: DensityMatrix, i: int, j: int) -> float:
    """Mutual information of the two-qubit reduction onto qubits ``i`` and ``j``."""
    return mutual_information(reduced_density(rho, (i, j)), ({1}, {2}))


def total_correlation(rho: DensityMatrix) -> float:
    singles = sum(_subset_entropy(rho, [q]) for q in range(1, rho.n + 1))
    return singles - von_neumann_entropy(rho)


def three_party_mutual_entropy(rho: DensityMatrix) -> float:
    """Total correlation minus the three pairwise mutual informations; can be negative."""
    if rho.n != 3:
        raise ValueError(f"three-party mutual entropy needs 3 qubits, got {rho.n}")
    pairs = sum(pairwise_mutual_information(rho, i, j) for i, j in ((1, 2), (1, 3), (2, 3)))
    return total_correlation(rho) - pairs


@dataclass(frozen=True)
class CorrelationReport:
    n: int
    single_entropies: tuple[float, ...]
    c_total: float
    pairwise_mutual: dict[tuple[int, int], float]
    three_party_mutual: float | None = None


def correlation_report(rho: DensityMatrix) -> CorrelationReport:
    singles = tuple(_subset_entropy(rho, [q]) for q in range(1, rho.n + 1))
    pairs = {
        (i, j): pairwise_mutual_information(rho, i, j)
        for i, j in itertools.combinations(range(1, rho.n + 1), 2)
    }
    c_total = sum(singles) - von_neumann_entropy(rho)
    three = None
    if rho.n == 3:
        three = c_total - sum(pairs.values())
    return CorrelationReport(rho.n, singles, c_total, pairs, three)


def stabilizer_reduced_entropy(g: StabilizerGroup, keep: Iterable[int], limit: int | None = None) -> int:
    """Entropy in bits of the reduction onto ``keep``: ``|keep|`` minus the rank
    of the subgroup supported inside ``keep``.
    """
    qubits = _mask_to_qubits(keep, g.n)
    mask = 0
    for q in qubits:
        mask |= 1 << (q - 1)
    return len(qubits) - support_rank(g, mask, limit)
