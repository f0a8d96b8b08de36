import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from chamberconn.building import flag_building
from chamberconn.connectivity import distance_two, local_connectivity, vertex_connectivity, verify_disjoint_family
from chamberconn.coxeter import cayley_ball, type_a
from chamberconn.errors import ChamberError, NotDistanceTwo, RankTooSmall
from chamberconn.lattice import (
    GeometricLattice,
    boolean_lattice,
    build_lattice,
    distance2_witness,
    flats_lattice,
    interval_sizes,
    lattice_disjoint_paths,
    parse_lattice_spec,
    partition_lattice,
    q_of_lattice,
    subspace_lattice,
    validate_geometric,
)

LATTICES = {
    "boolean:4": (lambda: boolean_lattice(4), lambda: oracles.boolean_poset(4)),
    "partition:4": (lambda: partition_lattice(4), lambda: oracles.partition_poset(4)),
    "subspace:3,2": (lambda: subspace_lattice(3, 2), lambda: oracles.subspace_poset(3, 2)),
}


def pentagon():
    # 0 < a < b < 1 and 0 < c < 1
    return GeometricLattice(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def square_faces():
    # empty face, 4 vertices, 4 edges, the square
    covers = [(0, v) for v in range(1, 5)]
    covers += [(1 + i, 5 + i) for i in range(4)] + [(1 + (i + 1) % 4, 5 + i) for i in range(4)]
    covers += [(5 + i, 9) for i in range(4)]
    return GeometricLattice(10, covers)


@pytest.mark.parametrize("spec", sorted(LATTICES))
def test_sizes_chains_and_q_match_oracle(spec):
    build, oracle = LATTICES[spec]
    P, O = build(), oracle()
    assert len(P) == len(O.elements)
    assert len(P.maximal_chains()) == len(O.maximal_chains())
    assert q_of_lattice(P).q == O.local_width_q()
    assert validate_geometric(P).ok


def test_stated_shapes():
    assert (len(boolean_lattice(4)), boolean_lattice(4).n, len(boolean_lattice(4).atoms)) == (16, 4, 4)
    assert (len(partition_lattice(4)), partition_lattice(4).n, len(partition_lattice(4).atoms)) == (15, 3, 6)
    assert (len(subspace_lattice(3, 2)), subspace_lattice(3, 2).n, len(subspace_lattice(3, 2).atoms)) == (16, 3, 7)
    assert boolean_lattice(4).chamber_graph.n == 24
    assert partition_lattice(4).chamber_graph.n == 18
    G = subspace_lattice(3, 2).chamber_graph
    assert G.n == 21 and set(G.degrees().tolist()) == {4}


def test_rank_labels_on_edges():
    P = partition_lattice(4)
    G = P.chamber_graph
    for a, b, r in G.edges:
        C, D = G.keys[a], G.keys[b]
        assert [i + 1 for i in range(P.n - 1) if C[i] != D[i]] == [r]


def test_non_geometric_inputs_fail():
    r = validate_geometric(pentagon())
    assert not r.ok and r.failed == "graded"
    r = validate_geometric(square_faces())
    assert not r.ok and r.failed in ("semimodular", "atomistic")
    # a three-element chain is a lattice but not atomistic
    r = validate_geometric(GeometricLattice(3, [(0, 1), (1, 2)]))
    assert not r.ok and r.failed == "atomistic"


def test_flats_of_a_matrix():
    # the uniform matroid U_{2,3} over F_3: rank 2 with 3 atoms
    P = flats_lattice([[1, 0, 1], [0, 1, 1]], 3)
    assert len(P) == 5 and P.n == 2 and validate_geometric(P).ok
    # columns of the identity are a boolean lattice
    P = flats_lattice([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2)
    assert len(P) == 8 and q_of_lattice(P).q == 1


@pytest.mark.parametrize("spec", ["boolean:3", "boolean:4", "partition:4", "partition:5", "subspace:3,2", "subspace:3,3"])
def test_width_equality_and_injection(spec):
    P = parse_lattice_spec(spec)
    rep = q_of_lattice(P)
    assert rep.full_min == rep.q + 1
    # joining with x maps the atoms under a v b injectively into (x, y)
    between = interval_sizes(P)
    rank = P.rank
    for x in range(len(P)):
        for y in range(len(P)):
            if not (P.le(x, y) and rank[y] == rank[x] + 2):
                continue
            a = next(c for c in P.atoms if P.le(c, y) and not P.le(c, x))
            xa = P.j(x, a)
            b = next(c for c in P.atoms if P.le(c, y) and not P.le(c, xa))
            ab = P.j(a, b)
            assert P.rank[ab] == 2 and P.j(x, ab) == y
            image = [P.j(x, c) for c in P.open_interval(P.bottom, ab)]
            assert len(set(image)) == len(image)
            assert all(P.le(x, z) and P.le(z, y) and z not in (x, y) for z in image)
            assert between[x, y] >= rep.q + 1


def test_rank_too_small():
    with pytest.raises(RankTooSmall):
        q_of_lattice(boolean_lattice(1))


def test_json_round_trip():
    P = partition_lattice(4)
    Q = GeometricLattice.from_json(P.to_json())
    assert Q.covers == P.covers and Q.rank == P.rank
    doc = P.to_json()
    doc["rank"][1] = 2
    with pytest.raises(ChamberError):
        GeometricLattice.from_json(doc)


def test_build_lattice_errors():
    with pytest.raises(ChamberError):
        build_lattice("torus", 3)


def _chain(P, *sets):
    return tuple(P.labels.index("{" + ",".join(map(str, s)) + "}") for s in sets)


def test_witness_examples():
    P = boolean_lattice(4)
    C = _chain(P, [1], [1, 2], [1, 2, 3])
    D = _chain(P, [2], [1, 2], [1, 2, 4])
    w = distance2_witness(P, C, D)
    assert (w.i1, w.i2, w.swapped) == (1, 3, False)
    assert w.B == _chain(P, [2], [1, 2], [1, 2, 3])
    with pytest.raises(NotDistanceTwo):
        distance2_witness(P, C, _chain(P, [2], [1, 2], [1, 2, 3]))
    with pytest.raises(NotDistanceTwo):
        distance2_witness(P, C, _chain(P, [4], [1, 4], [1, 2, 4]))


def test_swapped_orientation_is_recorded():
    P = boolean_lattice(3)
    # differ at ranks 1 and 2; only one of the two replacements is a chain
    C = _chain(P, [1], [1, 2])
    D = _chain(P, [3], [2, 3])
    with pytest.raises(NotDistanceTwo):
        distance2_witness(P, C, D)
    D = _chain(P, [2], [2, 3])
    w = distance2_witness(P, C, D)
    B = w.B
    assert P.is_chain(B)
    src, dst = (D, C) if w.swapped else (C, D)
    assert sum(x != y for x, y in zip(B, src)) == 1 and B[w.i1 - 1] != src[w.i1 - 1]
    assert sum(x != y for x, y in zip(B, dst)) == 1 and B[w.i2 - 1] != dst[w.i2 - 1]


@pytest.mark.parametrize("spec", ["boolean:4", "partition:4", "subspace:3,2"])
def test_every_pair(spec):
    P = parse_lattice_spec(spec)
    G = P.chamber_graph
    q = q_of_lattice(P).q
    for a, b in distance_two(G):
        C, D = G.keys[a], G.keys[b]
        fam = lattice_disjoint_paths(P, C, D)
        assert len(fam) == q * (P.n - 1)
        assert verify_disjoint_family(G, fam).ok
        I, J = fam.meta["i1"], fam.meta["i2"]
        for path, r in zip(fam.paths, fam.groups):
            assert P.rank[path[1][r - 1]] == r
            for chain in path[1:-1]:
                assert {k + 1 for k in range(P.n - 1) if chain[k] != C[k]} <= {r, I, J}
        assert local_connectivity(G, int(a), int(b)).value >= len(fam)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_random_pairs_in_partition_5(data):
    P = partition_lattice(5)
    G = P.chamber_graph
    pairs = distance_two(G)
    a, b = pairs[data.draw(st.integers(0, len(pairs) - 1))]
    fam = lattice_disjoint_paths(P, G.keys[a], G.keys[b])
    assert len(fam) == 3 and verify_disjoint_family(G, fam).ok


def test_connectivity_agrees_with_coxeter_and_building():
    assert vertex_connectivity(boolean_lattice(4).chamber_graph).kappa == vertex_connectivity(cayley_ball(type_a(3), 100)).kappa
    assert vertex_connectivity(subspace_lattice(3, 2).chamber_graph).kappa == vertex_connectivity(flag_building(3, 2).graph).kappa


def test_subspace_chain_graph_is_the_flag_graph():
    P = subspace_lattice(3, 2)
    B = flag_building(3, 2)
    G, H = P.chamber_graph, B.graph
    # both number subspaces the same way, so chains and flags coincide
    assert sorted(G.keys) == sorted(H.keys)
    edges_G = {frozenset((G.keys[a], G.keys[b])) for a, b, _ in G.edges}
    edges_H = {frozenset((H.keys[a], H.keys[b])) for a, b, _ in H.edges}
    assert edges_G == edges_H
