import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrhier.density import (
    DensityMatrix,
    canonical_state,
    correlation_report,
    ghz_state,
    graph_state,
    mutual_information,
    pairwise_mutual_information,
    pauli_matrix,
    reduced_density,
    stabilizer_reduced_entropy,
    three_party_mutual_entropy,
    total_correlation,
    von_neumann_entropy,
)
from corrhier.errors import CapacityError, DomainError
from corrhier.graphs import Graph, path_graph, graph_state_stabilizer, star_graph
from corrhier.pauli import pauli_from_text
from corrhier.stabilizer import make_group
from oracles import kron_matrix, partial_trace_keep, von_neumann_bits

TOL = 1e-9


def product_state(*vectors):
    psi = np.array([1.0 + 0j])
    for v in vectors:
        psi = np.kron(psi, np.asarray(v, dtype=complex))
    return DensityMatrix.from_vector(psi)


def test_classical2_matrix():
    assert np.allclose(canonical_state("classical2").m, np.diag([0.5, 0, 0, 0.5]))


def test_bell_is_projector():
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(canonical_state("bell").m, np.outer(psi, psi))


def test_graph_single_edge_state():
    rho = canonical_state("graph", graph=path_graph(2))
    assert abs(von_neumann_entropy(rho)) < TOL
    for q in (1, 2):
        assert np.allclose(reduced_density(rho, [q]).m, np.eye(2) / 2)


def test_named_variants():
    assert canonical_state("ghz(4)").n == 4
    assert canonical_state("GHZ5").n == 5
    assert canonical_state("graph(A_)").n == 2
    with pytest.raises(ValueError):
        canonical_state("werner")
    with pytest.raises(CapacityError):
        canonical_state("ghz(11)")
    with pytest.raises(CapacityError):
        graph_state(star_graph(11))


def test_pauli_matrix_matches_kron():
    for text in ["XZ", "-YI", "ZYX", "IIY", "-XXXX"]:
        assert np.allclose(pauli_matrix(pauli_from_text(text)), kron_matrix(text))


def test_graph_state_matches_kron_projector():
    g = star_graph(4)
    proj = np.eye(16, dtype=complex)
    for k in graph_state_stabilizer(g).generators:
        proj = proj @ (np.eye(16) + kron_matrix(str(k))) / 2
    assert np.allclose(graph_state(g).m, proj)


def test_reduce_bell():
    assert np.allclose(reduced_density(canonical_state("bell"), [1]).m, np.eye(2) / 2)


def test_reduce_classical3():
    assert np.allclose(reduced_density(canonical_state("classical3"), [1, 2]).m, np.diag([0.5, 0, 0, 0.5]))


def test_reduce_all_is_identity():
    rho = canonical_state("ghz3")
    assert np.allclose(reduced_density(rho, [1, 2, 3]).m, rho.m)


@pytest.mark.parametrize("keep", [[], [0], [4]])
def test_reduce_rejects_bad_subsets(keep):
    with pytest.raises(ValueError):
        reduced_density(canonical_state("ghz3"), keep)


@pytest.mark.parametrize("keep", [(1,), (2,), (1, 3), (2, 3), (3,), (1, 2)])
def test_partial_trace_matches_index_sum(keep):
    rho = graph_state(Graph.from_edges(3, [(0, 1), (1, 2)]))
    # mix in a non-symmetric product factor so qubit order matters
    psi = np.kron(np.kron([1, 0], [np.cos(0.3), np.sin(0.3)]), [np.cos(1.1), 1j * np.sin(1.1)])
    rho2 = DensityMatrix.from_vector(psi)
    for r in (rho, rho2):
        expected = partial_trace_keep(r.m, 3, [q - 1 for q in keep])
        assert np.allclose(reduced_density(r, keep).m, expected)


def test_entropy_examples():
    assert abs(von_neumann_entropy(canonical_state("bell"))) < TOL
    assert abs(von_neumann_entropy(DensityMatrix(1, np.eye(2) / 2)) - 1) < TOL
    assert abs(von_neumann_entropy(canonical_state("classical3")) - 1) < TOL


def test_entropy_rejects_non_psd():
    m = np.diag([1.5, -0.5]).astype(complex)
    with pytest.raises(DomainError):
        von_neumann_entropy(DensityMatrix(1, m))


def test_density_matrix_validation():
    with pytest.raises(DomainError):
        DensityMatrix(1, np.array([[0.5, 1], [0, 0.5]], dtype=complex))
    with pytest.raises(DomainError):
        DensityMatrix(1, np.eye(2, dtype=complex))
    with pytest.raises(DomainError):
        DensityMatrix(2, np.eye(2, dtype=complex) / 2)


@pytest.mark.parametrize(
    "name, partition, value",
    [("classical2", ({1}, {2}), 1.0), ("bell", ({1}, {2}), 2.0), ("classical3", ({1}, {2, 3}), 1.0)],
)
def test_mutual_information_examples(name, partition, value):
    assert abs(mutual_information(canonical_state(name), partition) - value) < TOL


def test_mutual_information_requires_bipartition():
    with pytest.raises(ValueError):
        mutual_information(canonical_state("ghz3"), ({1}, {2}))
    with pytest.raises(ValueError):
        mutual_information(canonical_state("ghz3"), ({1, 2}, {2, 3}))


def test_total_correlation_examples():
    assert abs(total_correlation(canonical_state("classical3")) - 2) < TOL
    assert abs(total_correlation(canonical_state("ghz3")) - 3) < TOL


@pytest.mark.parametrize("g", [path_graph(4), star_graph(5), Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])])
def test_total_correlation_graph_states(g):
    assert abs(total_correlation(graph_state(g)) - g.n) < TOL


def test_three_party_examples():
    assert abs(three_party_mutual_entropy(canonical_state("classical3")) + 1) < TOL
    assert abs(three_party_mutual_entropy(canonical_state("ghz3"))) < TOL
    zero = product_state([1, 0], [0, 1], [1 / np.sqrt(2), 1 / np.sqrt(2)])
    assert abs(three_party_mutual_entropy(zero)) < TOL
    with pytest.raises(ValueError):
        three_party_mutual_entropy(canonical_state("bell"))


def test_classical3_and_ghz3_share_pair_reductions():
    a, b = canonical_state("classical3"), canonical_state("ghz3")
    for pair in itertools.combinations([1, 2, 3], 2):
        assert np.max(np.abs(reduced_density(a, pair).m - reduced_density(b, pair).m)) <= 1e-12


def test_correlation_report_fields():
    rep = correlation_report(canonical_state("classical3"))
    assert set(rep.pairwise_mutual) == {(1, 2), (1, 3), (2, 3)}
    assert abs(rep.c_total - 2) < TOL
    assert abs(rep.three_party_mutual + 1) < TOL
    assert correlation_report(canonical_state("bell")).three_party_mutual is None


def test_stabilizer_entropy_examples():
    bell = make_group([pauli_from_text("ZZ"), pauli_from_text("XX")])
    assert stabilizer_reduced_entropy(bell, [1]) == 1
    ghz_star = graph_state_stabilizer(star_graph(3))
    # the star stabilizer is LC-equivalent to GHZ; in GHZ form Z1Z2 alone lives on {1,2}
    ghz = make_group([pauli_from_text(t) for t in ("IZZ", "ZZI", "XXX")])
    assert stabilizer_reduced_entropy(ghz, [1, 2]) == 1
    assert stabilizer_reduced_entropy(ghz_star, [1, 2]) == 1
    assert stabilizer_reduced_entropy(ghz, [1, 2, 3]) == 0


def test_stabilizer_entropy_matches_dense_for_ghz_form():
    ghz = make_group([pauli_from_text(t) for t in ("IZZ", "ZZI", "XXX")])
    from corrhier.density import stabilizer_state

    rho = stabilizer_state(ghz)
    assert np.allclose(rho.m, ghz_state(3).m)
    for keep in ([1], [2, 3], [1, 3]):
        assert abs(von_neumann_entropy(reduced_density(rho, keep)) - stabilizer_reduced_entropy(ghz, keep)) < TOL


def test_stabilizer_entropy_mixed_group():
    g = make_group([pauli_from_text("IZZ"), pauli_from_text("ZZI")])
    from corrhier.density import stabilizer_state

    rho = stabilizer_state(g)
    assert np.allclose(rho.m, canonical_state("classical3").m)
    for keep in ([1], [1, 2], [1, 2, 3]):
        assert abs(von_neumann_entropy(reduced_density(rho, keep)) - stabilizer_reduced_entropy(g, keep)) < TOL


def random_state(rng, n, rank):
    vecs = rng.normal(size=(rank, 2**n)) + 1j * rng.normal(size=(rank, 2**n))
    m = sum(np.outer(v, v.conj()) for v in vecs)
    return DensityMatrix(n, m / np.trace(m))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(1, 4), st.integers(0, 2**32 - 1), st.data())
def test_subadditivity(n, rank, seed, data):
    rho = random_state(np.random.default_rng(seed), n, rank)
    qubits = list(range(1, n + 1))
    a = set(data.draw(st.lists(st.sampled_from(qubits), min_size=1, max_size=n - 1, unique=True)))
    assert mutual_information(rho, (a, set(qubits) - a)) >= -1e-9
    assert abs(von_neumann_entropy(rho) - von_neumann_bits(rho.m)) < 1e-9


def test_entropy_relabel_invariant():
    rng = np.random.default_rng(3)
    rho = random_state(rng, 3, 2)
    t = rho.m.reshape([2] * 6).transpose(2, 0, 1, 5, 3, 4).reshape(8, 8)
    swapped = DensityMatrix(3, t)
    assert abs(von_neumann_entropy(rho) - von_neumann_entropy(swapped)) < TOL
    assert abs(total_correlation(rho) - total_correlation(swapped)) < TOL


@pytest.mark.parametrize(
    "a, b",
    [("classical2", "bell"), ("bell", "ghz3"), ("classical3", "classical2"), ("ghz3", "ghz3")],
)
def test_total_correlation_additive(a, b):
    ra, rb = canonical_state(a), canonical_state(b)
    joint = DensityMatrix(ra.n + rb.n, np.kron(ra.m, rb.m))
    assert abs(total_correlation(joint) - total_correlation(ra) - total_correlation(rb)) < TOL
    pair = pairwise_mutual_information(joint, 1, ra.n + 1)
    assert abs(pair) < TOL
