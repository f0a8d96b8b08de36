"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (shown in the terminal summary) before
asserting, so a failing criterion still reports what it measured.
Timings are taken after the JIT kernels are compiled.
"""

import random
import time

import pytest

import oracles
from chamberconn.building import building_disjoint_paths, building_parameters, flag_building
from chamberconn.complex import chamber_graph_from_complex, from_edges, simplex_boundary, ternary_tree
from chamberconn.connectivity import (
    distance_two,
    liu_check,
    local_connectivity,
    vertex_connectivity,
    verify_disjoint_family,
)
from chamberconn.coxeter import INF, cayley_ball, coxeter_disjoint_fan, dihedral, type_a
from chamberconn.lattice import (
    GeometricLattice,
    boolean_lattice,
    lattice_disjoint_paths,
    parse_lattice_spec,
    q_of_lattice,
    validate_geometric,
)

pytestmark = pytest.mark.usefixtures("warm_kernels")

# criterion 3 spans three parametrized tests; fold them into one line
_PARTS: dict[int, list] = {}


def _partial(number: int) -> list:
    return _PARTS.setdefault(number, [])


def _record_partial(acceptance_line, number: int, prior: list, ok: bool, detail: str) -> None:
    prior.append((ok, detail))
    acceptance_line(number, all(o for o, _ in prior), "; ".join(d for _, d in prior))


def test_criterion_1_s4_coxeter_complex(acceptance_line):
    start = time.perf_counter()
    W = type_a(3)
    G = cayley_ball(W, 100)
    kappa = vertex_connectivity(G).kappa
    f12 = coxeter_disjoint_fan(W, (0,), (1,))
    f13 = coxeter_disjoint_fan(W, (0,), (2,))
    certified = verify_disjoint_family(G, f12).ok and verify_disjoint_family(G, f13).ok
    elapsed = time.perf_counter() - start
    ok = (
        G.n == 24
        and set(G.degrees().tolist()) == {3}
        and kappa == 3
        and sorted(f12.lengths()) == [2, 4, 6]
        and sorted(f13.lengths()) == [2, 2, 8]
        and certified
        and elapsed < 1.0
    )
    acceptance_line(1, ok, f"n={G.n} kappa={kappa} fans={sorted(f12.lengths())},{sorted(f13.lengths())} {elapsed:.3f}s")
    assert ok


def test_criterion_2_infinite_dihedral(acceptance_line):
    start = time.perf_counter()
    G = cayley_ball(dihedral(INF), 5)
    path_shape = G.n == 11 and G.num_edges == 10 and sorted(G.degrees().tolist()) == [1, 1] + [2] * 9
    report = liu_check(G, 2, allow_incomplete=True)
    elapsed = time.perf_counter() - start
    ok = path_shape and report.passed is False and report.bounded and elapsed < 1.0
    acceptance_line(2, ok, f"n={G.n} path={path_shape} liu(k=2) passed={report.passed} {elapsed:.3f}s")
    assert ok


@pytest.mark.parametrize("n,p,q_expected", [(3, 2, 4), (3, 3, 6), (4, 2, 6)])
def test_criterion_3_flag_buildings(acceptance_line, n, p, q_expected):
    start = time.perf_counter()
    expected_chambers = len(oracles.complete_flags(n, p))
    B = flag_building(n, p)
    G = B.graph
    params = building_parameters(B)
    kappa = vertex_connectivity(G).kappa
    pairs = distance_two(G)
    bad = 0
    for a, b in pairs:
        fam = building_disjoint_paths(B, G.keys[a], G.keys[b])
        if len(fam) != params.q_total or not verify_disjoint_family(G, fam).ok:
            bad += 1
    elapsed = time.perf_counter() - start
    ok = (
        len(B.chambers) == expected_chambers
        and params.q_total == q_expected
        and kappa == q_expected
        and bad == 0
        and elapsed < 120
    )
    prior = _partial(3)
    detail = f"({n},{p}) chambers={len(B.chambers)}/{expected_chambers} q={params.q_total} kappa={kappa} pairs={len(pairs)} bad={bad} {elapsed:.2f}s"
    _record_partial(acceptance_line, 3, prior, ok, detail)
    assert ok


def test_criterion_4_uniformity(acceptance_line):
    ok = True
    detail = []
    for n, p in [(3, 2), (3, 3), (4, 2)]:
        B = flag_building(n, p)
        for s in B.types:
            sizes = {len(B.neighbours(C, s)) for C in B.chambers}
            ok &= len(sizes) == 1
        detail.append(f"({n},{p}) q_s={building_parameters(B).q}")
    acceptance_line(4, ok, "; ".join(detail))
    assert ok


def test_criterion_5_lattice_width(acceptance_line):
    expected = {"boolean:4": 1, "subspace:3,2": 2, "partition:4": 1}
    # derived values are recomputed by brute force over the poset
    assert oracles.subspace_poset(3, 2).local_width_q() == 2
    assert oracles.partition_poset(4).local_width_q() == 1
    ok = True
    parts = []
    for spec in ["boolean:3", "boolean:4", "partition:4", "partition:5", "subspace:3,2", "subspace:3,3"]:
        start = time.perf_counter()
        P = parse_lattice_spec(spec)
        rep = q_of_lattice(P)
        elapsed = time.perf_counter() - start
        ok &= rep.full_min == rep.q + 1 and elapsed < 10
        if spec in expected:
            ok &= rep.q == expected[spec]
            parts.append(f"q({spec})={rep.q}")
    acceptance_line(5, ok, " ".join(parts) + " width equality on 6 lattices")
    assert ok


def test_criterion_6_lattice_paths(acceptance_line):
    start = time.perf_counter()
    ok = True
    parts = []
    for spec in ["boolean:4", "partition:4", "partition:5", "subspace:3,2", "subspace:3,3"]:
        P = parse_lattice_spec(spec)
        G = P.chamber_graph
        q = q_of_lattice(P).q
        k = q * (P.n - 1)
        pairs = distance_two(G)
        bad = 0
        for a, b in pairs:
            C, D = G.keys[a], G.keys[b]
            fam = lattice_disjoint_paths(P, C, D)
            good = len(fam) == k and verify_disjoint_family(G, fam).ok
            support = {fam.meta["i1"], fam.meta["i2"]}
            for path, r in zip(fam.paths, fam.groups):
                for chain in path[1:-1]:
                    good &= {i + 1 for i in range(P.n - 1) if chain[i] != C[i]} <= support | {r}
            good &= local_connectivity(G, int(a), int(b)).value >= k
            bad += not good
        passed = liu_check(G, k).passed
        ok &= bad == 0 and passed
        parts.append(f"{spec}:{len(pairs)} pairs k={k} bad={bad} liu={passed}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    acceptance_line(6, ok, "; ".join(parts) + f" {elapsed:.2f}s")
    assert ok


def _chain_of_perm(P, perm):
    index = {lab: i for i, lab in enumerate(P.labels)}
    return tuple(index["{" + ",".join(map(str, sorted(perm[:i]))) + "}"] for i in range(1, len(perm)))


def _chain_of_word(P, word):
    # s_g acts on the right by swapping positions g and g+1
    perm = [1, 2, 3, 4]
    for g in word:
        perm[g], perm[g + 1] = perm[g + 1], perm[g]
    return _chain_of_perm(P, perm)


def test_criterion_7_boolean_matches_coxeter_fan(acceptance_line):
    W = type_a(3)
    P = boolean_lattice(4)
    ok = True
    parts = []
    for s, t in [(0, 1), (0, 2)]:
        fan = coxeter_disjoint_fan(W, (s,), (t,))
        expected = {tuple(_chain_of_word(P, w) for w in path) for path in fan.paths}
        fam = lattice_disjoint_paths(P, _chain_of_word(P, (s,)), _chain_of_word(P, (t,)))
        ok &= set(fam.paths) == expected
        parts.append(f"s{s + 1},s{t + 1}: lengths {sorted(fam.lengths())}")
    acceptance_line(7, ok, "; ".join(parts))
    assert ok


def test_criterion_8_flow_against_brute_force(acceptance_line):
    rng = random.Random(2024)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        n = rng.randint(2, 12)
        density = rng.random()
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
        G = from_edges(n, edges)
        adj = oracles.adjacency(n, edges)
        u, v = rng.sample(range(n), 2)
        local = local_connectivity(G, u, v)
        paths = oracles.max_disjoint_paths(adj, u, v)
        sep = oracles.min_separator_size(adj, u, v)
        same = local.value == paths and len(local.family) == paths and verify_disjoint_family(G, local.family).ok
        if sep is None:
            same &= local.adjacent
        else:
            same &= len(local.cut) == paths == sep
        mismatches += not same
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 30
    acceptance_line(8, ok, f"200 graphs mismatches={mismatches} {elapsed:.2f}s")
    assert ok


def test_criterion_9_negative_controls(acceptance_line):
    K4 = chamber_graph_from_complex(simplex_boundary(2))
    kappa = vertex_connectivity(K4).kappa
    tree = liu_check(ternary_tree(3), 2)
    N5 = GeometricLattice(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    n5 = validate_geometric(N5)
    ok = K4.n == 4 and kappa == 3 and tree.passed is False and not n5.ok
    acceptance_line(9, ok, f"K4 kappa={kappa} tree liu(k=2)={tree.passed} N5 geometric={n5.ok} ({n5.failed})")
    assert ok
