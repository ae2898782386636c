"""Complementations, orbits, minors, obstructions, and the bordered-matrix
rank identities."""

import random

import numpy as np
import pytest

from rankw.cutrank import CutFunction
from rankw.fields import (FieldError, field_make, sigma_compatible_set,
                          sigma_frobenius_conj, sigma_identity, sigma_negation)
from rankw.graphs import (GraphError, SigmaGraph, encode_undirected,
                          is_sigma_symmetric, isomorphic)
from rankw.layouts import birankwidth, rankwidth
from rankw.matrix import rank_of
from rankw.selfcheck import random_colored_graph, random_sigma_graph
from rankw.transform import (const_graph, ec_cycle,
                             equivalence_orbit, equivalence_orbit_graphs,
                             find_obstructions, is_minor, local_complement,
                             obstruction_size_bound, pivot_complement,
                             sigma_symmetric_graphs)

F2, F3, F4 = field_make(2, 1), field_make(3, 1), field_make(2, 2)
S2, S3N, S3I = sigma_identity(F2), sigma_negation(F3), sigma_identity(F3)
S4 = sigma_frobenius_conj(F4)


def test_local_complement_gf2_is_bouchet():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randrange(2, 8)
        G = random_sigma_graph(rng, F2, S2, n)
        x = rng.randrange(n)
        H = local_complement(G, x, 1)
        nb = {j for j in range(n) if G.adj[x, j]}
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                flip = i in nb and j in nb and x not in (i, j)
                assert H.adj[i, j] == (G.adj[i, j] ^ 1 if flip else G.adj[i, j])
        assert local_complement(H, x, 1) == G  # involution in char 2


def test_local_complement_errors():
    G = encode_undirected([(0, 1)])
    with pytest.raises(FieldError):
        local_complement(G, 0, 0)
    with pytest.raises(GraphError):
        local_complement(G, 9, 1)


def test_local_complement_gf4_uniform_increment():
    """z <- x -> t with z, t non-adjacent becomes z <-> t: a^2 * a = 1."""
    a = np.zeros((3, 3), dtype=np.uint16)
    a[1, 0], a[0, 1] = 2, 3   # arc x -> z
    a[1, 2], a[2, 1] = 2, 3   # arc x -> t
    G = SigmaGraph(F4, ("z", "x", "t"), a, S4)
    H = local_complement(G, "x", 1)
    assert H.adj[0, 2] == 1 and H.adj[2, 0] == 1


TABLE_UNIFORM = {0: 1, 2: 3, 3: 2, 1: 0}
TABLE_NONUNIFORM = {0: 2, 2: 0, 3: 1, 1: 3}


@pytest.mark.parametrize("centers,mapping", [
    ([(3, 2), (2, 3), (1, 1)], TABLE_UNIFORM),       # z<-x->t, z->x<-t, z<->x<->t
    ([(3, 3), (2, 1), (1, 2)], TABLE_NONUNIFORM),    # z<-x<-t, z->x<->t, z<->x->t
])
def test_directed_table_rows(centers, mapping):
    """The eight rows of the directed one-local-complementation table, on
    GF(4) three-vertex gadgets (codes: 2 = a = arc out, 3 = a^2 = arc in,
    1 = bidirected, 0 = non-adjacent)."""
    for zx, xt in centers:
        for before, after in mapping.items():
            a = np.zeros((3, 3), dtype=np.uint16)
            a[0, 1], a[1, 0] = zx, S4(zx)
            a[1, 2], a[2, 1] = xt, S4(xt)
            a[0, 2], a[2, 0] = before, S4(before)
            G = SigmaGraph(F4, ("z", "x", "t"), a, S4)
            H = local_complement(G, "x", 1)
            assert H.adj[0, 2] == after
            assert H.adj[0, 1] == zx and H.adj[1, 2] == xt  # x row untouched


def test_sigma_symmetry_preservation():
    rng = random.Random(1)
    for _ in range(100):
        F, s = rng.choice([(F2, S2), (F3, S3I), (F4, S4), (F3, S3N)])
        n = rng.randrange(2, 7)
        G = random_sigma_graph(rng, F, s, n, density=0.7)
        for lam in sigma_compatible_set(s):
            H = local_complement(G, rng.randrange(n), lam)
            assert isinstance(H, SigmaGraph) and is_sigma_symmetric(H, s)
        edges = [(i, j) for i in range(n) for j in range(n)
                 if i != j and G.adj[i, j]]
        if edges:
            x, y = rng.choice(edges)
            P = pivot_complement(G, x, y)
            assert is_sigma_symmetric(P, s)


def test_cut_invariance_of_complementations():
    """cutrk preserved by compatible local complementation and by pivot;
    bicutrk preserved by every local complementation."""
    rng = random.Random(2)
    per_field = {id(F2): 0, id(F3): 0, id(F4): 0}
    while min(per_field.values()) < 100:
        F, s = rng.choice([(F2, S2), (F3, S3I), (F4, S4), (F3, S3N)])
        n = rng.randrange(2, 7)
        G = random_sigma_graph(rng, F, s, n, density=0.7)
        full = (1 << n) - 1
        X = rng.randrange(full + 1)
        f = CutFunction(G, "cutrk")
        lams = sigma_compatible_set(s)
        if lams:
            H = local_complement(G, rng.randrange(n), rng.choice(lams))
            assert CutFunction(H, "cutrk")(X) == f(X)
        edges = [(i, j) for i in range(n) for j in range(n)
                 if i != j and G.adj[i, j]]
        if edges:
            P = pivot_complement(G, *rng.choice(edges))
            assert CutFunction(P, "cutrk")(X) == f(X)
        A = random_colored_graph(rng, F, n)
        B = local_complement(A, rng.randrange(n), rng.randrange(1, F.q))
        assert CutFunction(B, "bicutrk")(X) == CutFunction(A, "bicutrk")(X)
        per_field[id(F)] += 1


def test_pivot_examples_gf2():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randrange(2, 8)
        G = random_sigma_graph(rng, F2, S2, n, density=0.6)
        edges = [(i, j) for i in range(n) for j in range(n)
                 if i != j and G.adj[i, j]]
        if not edges:
            continue
        x, y = rng.choice(edges)
        P = pivot_complement(G, x, y)
        Q = local_complement(local_complement(local_complement(G, x, 1), y, 1), x, 1)
        assert np.array_equal(P.adj, Q.adj)                      # G*x*y*x
        assert np.array_equal(pivot_complement(G, y, x).adj, P.adj)
        assert np.array_equal(pivot_complement(P, x, y).adj, G.adj)


def test_pivot_xy_equals_yx_when_sigma1_is_one():
    rng = random.Random(4)
    for F, s in [(F4, S4), (F3, S3I)]:
        assert s.one == 1
        for _ in range(30):
            G = random_sigma_graph(rng, F, s, rng.randrange(2, 6), density=0.8)
            edges = [(i, j) for i in range(G.n) for j in range(G.n)
                     if i != j and G.adj[i, j]]
            if not edges:
                continue
            x, y = rng.choice(edges)
            assert np.array_equal(pivot_complement(G, x, y).adj,
                                  pivot_complement(G, y, x).adj)


def test_pivot_needs_edge():
    G = encode_undirected([(0, 1)], vertices=range(3))
    with pytest.raises(GraphError):
        pivot_complement(G, 0, 2)


def test_bordered_rank_identity_local():
    """cutrk of (G*x) minus x equals the bordered rank minus one, with
    corner -1/lambda (the -1 form only for lambda = 1)."""
    rng = random.Random(5)
    for _ in range(100):
        F, s = rng.choice([(F2, S2), (F3, S3I), (F4, S4)])
        lams = sigma_compatible_set(s)
        n = rng.randrange(2, 7)
        G = random_sigma_graph(rng, F, s, n, density=0.7)
        lam = rng.choice(lams)
        x = rng.randrange(n)
        rest = [v for v in range(n) if v != x]
        H = local_complement(G, x, lam).induced_subgraph(rest)
        fH = CutFunction(H, "cutrk")
        a = G.adj
        Xm = rng.randrange(1 << (n - 1))
        X = [rest[i] for i in range(n - 1) if Xm >> i & 1]
        Y = [v for v in rest if v not in X]
        B = np.zeros((len(X) + 1, len(Y) + 1), dtype=np.uint16)
        B[0, 0] = F.neg(F.inv(lam))
        B[0, 1:] = a[x, Y]
        B[1:, 0] = a[X, x]
        B[1:, 1:] = a[np.ix_(X, Y)]
        assert fH(set(X)) == rank_of(B, F) - 1


def test_bordered_rank_identity_pivot():
    """cutrk of (G ^ xy) minus x equals the 0-corner bordered rank minus one."""
    rng = random.Random(6)
    done = 0
    while done < 100:
        F, s = rng.choice([(F2, S2), (F3, S3N), (F4, S4)])
        n = rng.randrange(2, 7)
        G = random_sigma_graph(rng, F, s, n, density=0.7)
        edges = [(i, j) for i in range(n) for j in range(n)
                 if i != j and G.adj[i, j]]
        if not edges:
            continue
        x, y = rng.choice(edges)
        rest = [v for v in range(n) if v != x]
        P = pivot_complement(G, x, y).induced_subgraph(rest)
        fP = CutFunction(P, "cutrk")
        a = G.adj
        Xm = rng.randrange(1 << (n - 1))
        X = [rest[i] for i in range(n - 1) if Xm >> i & 1]
        Y = [v for v in rest if v not in X]
        B = np.zeros((len(X) + 1, len(Y) + 1), dtype=np.uint16)
        B[0, 1:] = a[x, Y]
        B[1:, 0] = a[X, x]
        B[1:, 1:] = a[np.ix_(X, Y)]
        assert fP(set(X)) == rank_of(B, F) - 1
        done += 1


def test_orbit_examples():
    G = random_sigma_graph(random.Random(7), F3, S3N, 4)
    assert equivalence_orbit(G, "sigma-vertex") == {G.canonical_form()}
    K2 = encode_undirected([(0, 1)])
    assert equivalence_orbit(K2, "sigma-vertex") == {K2.canonical_form()}
    for m in (6, 8):
        E = ec_cycle(m)
        orbit = equivalence_orbit_graphs(E, "vertex")
        assert all(isomorphic(E, H) is not None for H in orbit)


def test_orbit_width_invariance():
    rng = random.Random(8)
    for _ in range(8):
        G = random_sigma_graph(rng, F4, S4, rng.randrange(2, 5))
        w = rankwidth(G).width
        for H in equivalence_orbit_graphs(G, "sigma-vertex"):
            assert rankwidth(H).width == w
        for H in equivalence_orbit_graphs(G, "pivot"):
            assert rankwidth(H).width == w


def test_is_minor_examples():
    C6 = encode_undirected([(i, (i + 1) % 6) for i in range(6)])
    C5 = encode_undirected([(i, (i + 1) % 5) for i in range(5)])
    assert is_minor(C5, C5, "sigma-vertex").found
    P3 = encode_undirected([(0, 1), (1, 2)])
    assert is_minor(P3, C5, "sigma-vertex").found  # plain induced subgraph
    r = is_minor(C5, C6, "sigma-vertex")
    assert r.found and r.complete
    # width monotonicity makes K4 impossible inside C6 (widths 1 vs 2 are
    # fine; a P5 with an extra color is impossible by field)
    K4 = encode_undirected([(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert is_minor(K4, C6, "pivot").complete in (True, False)


def test_is_minor_budget():
    C6 = encode_undirected([(i, (i + 1) % 6) for i in range(6)])
    target = encode_undirected([(0, 1), (2, 3)], vertices=range(4))
    r = is_minor(target, C6, "sigma-vertex", max_states=3)
    assert not r.complete or r.found


def test_minor_width_monotonicity():
    """Vertex-/pivot-minors never increase the matching width."""
    rng = random.Random(9)
    pairs = 0
    while pairs < 100:
        F, s = rng.choice([(F2, S2), (F4, S4), (F3, S3N)])
        n = rng.randrange(3, 6)
        G = random_sigma_graph(rng, F, s, n, density=0.6)
        H = G
        lams = sigma_compatible_set(s)
        for _ in range(rng.randrange(1, 4)):
            if lams and rng.random() < 0.7:
                H = local_complement(H, rng.choice(H.vertices), rng.choice(lams))
            else:
                edges = [(i, j) for i in H.vertices for j in H.vertices
                         if i != j and H.color(i, j)]
                if edges:
                    H = pivot_complement(H, *rng.choice(edges))
        keep = [v for v in H.vertices if rng.random() < 0.75]
        if not keep:
            continue
        H = H.induced_subgraph(keep)
        assert rankwidth(H).width <= rankwidth(G).width
        pairs += 1
    # all-lambda vertex-minors respect bi-rank-width
    pairs = 0
    while pairs < 60:
        F = rng.choice([F2, F3, F4])
        G = random_colored_graph(rng, F, rng.randrange(3, 6))
        H = G
        for _ in range(rng.randrange(1, 4)):
            H = local_complement(H, rng.choice(H.vertices),
                                 rng.randrange(1, F.q))
        keep = [v for v in H.vertices if rng.random() < 0.75]
        if not keep:
            continue
        H = H.induced_subgraph(keep)
        assert birankwidth(H).width <= birankwidth(G).width
        pairs += 1


def test_generation_counts_gf2():
    # unlabeled-graph counts 1, 2, 4, 11, 34 on 1..5 vertices
    for n, expect in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)]:
        assert len(sigma_symmetric_graphs(F2, S2, n)) == expect
    conn = sigma_symmetric_graphs(F2, S2, 4, connected_only=True)
    assert len(conn) == 6  # connected graphs on 4 vertices


def test_ec_cycles():
    E4 = ec_cycle(4)
    outdeg = (E4.adj != 0).sum(axis=1)
    indeg = (E4.adj != 0).sum(axis=0)
    assert sorted(outdeg) == [0, 0, 2, 2] and sorted(indeg) == [0, 0, 2, 2]
    E6 = ec_cycle(6)
    und = (E6.adj != 0) | (E6.adj != 0).T
    assert (und.sum(axis=0) == 2).all()  # a cycle
    with pytest.raises(GraphError):
        ec_cycle(5)
    for m in (4, 6, 8):
        E = ec_cycle(m)
        for x in E.vertices:
            assert isomorphic(E, local_complement(E, x, 1)) is not None


def test_obstruction_size_bound():
    assert [obstruction_size_bound(k) for k in range(3)] == [1, 7, 43]


def test_obstructions_k0():
    for F, s in [(F2, S2), (F3, S3N), (F4, S4)]:
        obs = find_obstructions(F, s, "pivot", 0, 3)
        expected = {const_graph(F, s, a).canonical_form() for a in F.units()}
        assert {o.graph.canonical_form() for o in obs} == expected
        obs_v = find_obstructions(F, s, "sigma-vertex", 0, 3)
        assert {o.graph.canonical_form() for o in obs_v} == expected


def test_width1_obstructions_gf2():
    """The width-1 searches recover the classical families: C5's
    local-equivalence class {C5, house, gem} for vertex-minors, joined by
    C6's pivot class for pivot-minors (C5 is a vertex-minor of C6 but not a
    pivot-minor)."""
    C5 = encode_undirected([(i, (i + 1) % 5) for i in range(5)])
    C6 = encode_undirected([(i, (i + 1) % 6) for i in range(6)])
    house = encode_undirected([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)])
    gem = encode_undirected([(0, 1), (1, 2), (2, 3),
                             (0, 4), (1, 4), (2, 4), (3, 4)])
    assert equivalence_orbit(C5, "sigma-vertex") == \
        {C5.canonical_form(), house.canonical_form(), gem.canonical_form()}
    obs_v = find_obstructions(F2, S2, "sigma-vertex", 1, 6)
    assert {o.graph.canonical_form() for o in obs_v} == \
        {C5.canonical_form(), house.canonical_form(), gem.canonical_form()}
    assert is_minor(C5, C6, "sigma-vertex").found
    r = is_minor(C5, C6, "pivot")
    assert not r.found and r.complete
    obs_p = find_obstructions(F2, S2, "pivot", 1, 6)
    canon_p = {o.graph.canonical_form() for o in obs_p}
    assert {o.graph.canonical_form() for o in obs_v} <= canon_p
    assert C6.canonical_form() in canon_p
    assert canon_p - {o.graph.canonical_form() for o in obs_v} == \
        equivalence_orbit(C6, "pivot")


def test_const_graph_iso_classes():
    # const_a and const_{sigma(a)} are isomorphic by swapping the vertices
    assert isomorphic(const_graph(F4, S4, 2), const_graph(F4, S4, 3)) is not None
    assert isomorphic(const_graph(F4, S4, 1), const_graph(F4, S4, 2)) is None
