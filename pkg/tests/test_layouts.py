"""Layout enumeration, f-width evaluation, and exact width search."""

import random

import numpy as np
import pytest

from rankw.cutrank import CutFunction
from rankw.fields import field_make, sigma_frobenius_conj
from rankw.graphs import digraph_gf2, encode_undirected
from rankw.layouts import (Layout, LayoutError, SizeBoundError, birankwidth,
                           decide_width_at_most, enumerate_layouts,
                           layout_width, parse_newick, rankwidth, width_exact)
from rankw.selfcheck import (is_strongly_connected, random_colored_graph,
                             random_digraph_arcs, random_sigma_graph)


def rank_mod2(rows):
    """Independent GF(2) rank for oracle duty (numpy integer elimination)."""
    a = np.array(rows, dtype=np.int64) % 2
    r = 0
    for c in range(a.shape[1] if a.size else 0):
        piv = next((i for i in range(r, a.shape[0]) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] = (a[i] + a[r]) % 2
        r += 1
    return r


def cut_oracle_gf2(G, side):
    idx = [G.index(v) for v in side]
    rest = [i for i in range(G.n) if i not in idx]
    if not idx or not rest:
        return 0
    return rank_mod2(G.adj[np.ix_(idx, rest)])


def c5():
    return encode_undirected([(i, (i + 1) % 5) for i in range(5)])


def double_factorial_odd(m):
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 3),
                                     (5, 15), (6, 105)])
def test_enumeration_counts(n, count):
    shapes = list(enumerate_layouts(n))
    assert len(shapes) == count
    if n >= 3:
        assert count == double_factorial_odd(2 * n - 5)
    # all distinct as split systems
    def sig(L):
        return frozenset(
            s if len(s) <= L.n / 2 else frozenset(set(L.vertices) - s)
            for _, s in L.edge_sides())
    assert len({sig(L) for L in shapes}) == count


def test_layout_width_k4():
    K4 = encode_undirected([(i, j) for i in range(4) for j in range(i + 1, 4)])
    f = CutFunction(K4, "cutrk")
    for L in enumerate_layouts(4, K4.vertices):
        assert layout_width(K4, f, L).width == 1


def test_layout_width_single_vertex():
    G = encode_undirected([], vertices=["a"])
    L = Layout([], {0: "a"})
    assert layout_width(G, CutFunction(G, "cutrk"), L).width == 0


def test_caterpillar_c5():
    """Every cut of the caterpillar evaluated against the independent
    GF(2) rank oracle; width 2."""
    G = c5()
    L = parse_newick("(0,(1,(2,(3,4))));").relabel_leaves(
        {str(i): i for i in range(5)})
    res = layout_width(G, CutFunction(G, "cutrk"), L)
    assert len(res.cut_values) == 7
    for e, side in res.cut_sides.items():
        assert res.cut_values[e] == cut_oracle_gf2(G, side)
    assert res.width == 2


def test_width_exact_examples():
    for n in (2, 3, 5, 6):
        Kn = encode_undirected([(i, j) for i in range(n)
                                for j in range(i + 1, n)])
        assert rankwidth(Kn).width == 1
    res = rankwidth(c5())
    assert res.width == 2
    # oracle: exhaustive minimum over all 15 shapes with independent ranks
    G = c5()
    best = min(max(cut_oracle_gf2(G, side) for _, side in L.edge_sides())
               for L in enumerate_layouts(5, G.vertices))
    assert best == 2


def test_width_result_invariants():
    res = rankwidth(c5())
    assert res.width == max(res.cut_values.values())
    assert set(res.witness.leaves.values()) == set(c5().vertices)


def test_decide_width_at_most():
    K5 = encode_undirected([(i, j) for i in range(5) for j in range(i + 1, 5)])
    L = decide_width_at_most(K5, CutFunction(K5, "cutrk"), 1)
    assert L is not None
    assert layout_width(K5, CutFunction(K5, "cutrk"), L).width <= 1
    G = c5()
    assert decide_width_at_most(G, CutFunction(G, "cutrk"), 1) is None
    assert decide_width_at_most(G, CutFunction(G, "cutrk"), 5) is not None
    # k >= n always has a witness
    rng = random.Random(9)
    for _ in range(10):
        F4 = field_make(2, 2)
        H = random_sigma_graph(rng, F4, sigma_frobenius_conj(F4),
                               rng.randrange(1, 6))
        assert decide_width_at_most(H, CutFunction(H, "cutrk"), H.n) is not None


def test_birankwidth_examples():
    arc = digraph_gf2([("x", "y")])
    assert birankwidth(arc).width == 1
    rng = random.Random(0)
    F4 = field_make(2, 2)
    s4 = sigma_frobenius_conj(F4)
    for _ in range(10):
        G = random_sigma_graph(rng, F4, s4, rng.randrange(2, 6))
        wr, wb = rankwidth(G), birankwidth(G)
        assert wb.width == 2 * wr.width
        # the rank witness is optimal for bicutrk too
        assert layout_width(G, CutFunction(G, "bicutrk"),
                            wr.witness).width == wb.width


def test_width_invariance_under_relabeling_and_automorphism():
    rng = random.Random(1)
    F4 = field_make(2, 2)
    s4 = sigma_frobenius_conj(F4)
    for _ in range(10):
        G = random_sigma_graph(rng, F4, s4, rng.randrange(2, 6))
        w = rankwidth(G).width
        perm = list(G.vertices)
        rng.shuffle(perm)
        assert rankwidth(G.permuted(perm)).width == w
        # entrywise field automorphism (a <-> a^2 is the Frobenius)
        H = G.with_adj(s4.np_table[G.adj])
        assert rankwidth(H).width == w


def test_disconnected_width_is_component_max():
    rng = random.Random(2)
    for _ in range(10):
        e1 = [(i, j) for i in range(4) for j in range(i + 1, 4)
              if rng.random() < 0.6]
        e2 = [(i + 4, j + 4) for i in range(4) for j in range(i + 1, 4)
              if rng.random() < 0.6]
        G = encode_undirected(e1 + e2, vertices=range(8))
        w1 = rankwidth(encode_undirected(e1, vertices=range(4))).width
        w2 = rankwidth(encode_undirected(e2, vertices=range(4, 8))).width
        assert rankwidth(G).width == max(w1, w2)


def test_bnb_agrees_with_enumeration():
    rng = random.Random(3)
    for _ in range(30):
        F = field_make(*rng.choice([(2, 1), (3, 1)]))
        n = rng.randrange(2, 8)
        G = random_colored_graph(rng, F, n)
        f1, f2 = CutFunction(G, "bicutrk"), CutFunction(G, "bicutrk")
        assert width_exact(G, f1).width == \
            width_exact(G, f2, enum_bound=1).width


def test_strongly_connected_bicut_floor():
    rng = random.Random(4)
    for _ in range(15):
        n = rng.randrange(2, 7)
        arcs = random_digraph_arcs(rng, n, density=0.5)
        if not is_strongly_connected(n, arcs):
            continue
        G = digraph_gf2(arcs, vertices=range(n))
        f = CutFunction(G, "bicutrk")
        assert all(f(X) >= 2 for X in range(1, (1 << n) - 1))
        assert birankwidth(G).width >= 2


def _distance_hereditary(n, edges):
    """Pendant/twin pruning; an independent route to the width <= 1 class."""
    adj = {i: set() for i in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    verts = set(range(n))
    changed = True
    while len(verts) > 1 and changed:
        changed = False
        for v in sorted(verts):
            if len(adj[v]) <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                verts.discard(v)
                adj.pop(v)
                changed = True
                break
            if any(adj[v] - {u} == adj[u] - {v}
                   for u in sorted(verts) if u != v):
                for w in adj[v]:
                    adj[w].discard(v)
                verts.discard(v)
                adj.pop(v)
                changed = True
                break
    return len(verts) == 1


def test_width_one_class_is_distance_hereditary():
    """rank-width <= 1 coincides with distance-hereditary, decided by the
    unrelated pendant/twin pruning algorithm (exhaustive n <= 5 plus random
    6-vertex graphs)."""
    import itertools
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            G = encode_undirected(edges, vertices=range(n))
            assert (rankwidth(G).width <= 1) == _distance_hereditary(n, edges)
    rng = random.Random(12)
    for _ in range(150):
        edges = [(i, j) for i in range(6) for j in range(i + 1, 6)
                 if rng.random() < rng.choice([0.25, 0.5, 0.75])]
        G = encode_undirected(edges, vertices=range(6))
        assert (rankwidth(G).width <= 1) == _distance_hereditary(6, edges)


def test_size_bound_error():
    G = encode_undirected([(i, (i + 1) % 13) for i in range(13)])
    with pytest.raises(SizeBoundError):
        rankwidth(G)
    assert rankwidth(G, force=True).width == 2


def test_newick_roundtrip_and_parsing():
    res = rankwidth(c5())
    L = res.witness
    back = parse_newick(L.to_newick())
    assert sorted(back.leaves.values()) == [str(v) for v in sorted(L.leaves.values())]
    three = parse_newick("(a,b,(c,d));")
    assert three.n == 4
    assert {str(v) for v in three.vertices} == {"a", "b", "c", "d"}
    single = parse_newick("v1;")
    assert single.n == 1
    with_trailer = parse_newick("((v1,v2),(v3,(v4,v5)));\n# width 2\n")
    assert with_trailer.n == 5 and len(with_trailer.edges) == 7
    with pytest.raises(LayoutError):
        parse_newick("((a,b)")
    with pytest.raises(LayoutError):
        parse_newick("(a,a);")


def test_layout_validation():
    with pytest.raises(LayoutError):
        Layout([(0, 1), (0, 2), (0, 3), (0, 4)], {1: "a", 2: "b", 3: "c", 4: "d"})
    with pytest.raises(LayoutError):
        layout_width(c5(), CutFunction(c5(), "cutrk"),
                     Layout([(0, 1)], {0: 0, 1: 1}))
