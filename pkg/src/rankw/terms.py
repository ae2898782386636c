"""Bilinear-product term algebras for rank-width and bi-rank-width:
evaluation of terms to colored graphs and compilation of layouts into terms.

A rank term is either a single vertex colored by a row vector u, or a product
of two terms under matrices (M, N, P): the product draws a cross edge x-y
colored gamma(x) . M . sigma(gamma(y))^T whenever that value is nonzero (and
the sigma-image the other way), then recolors the two sides by N and P.
Bi-rank terms carry separate outbound/inbound colorings and six matrices; no
sesqui-morphism is involved.  Bi-rank color widths may be zero (empty
vectors), which is what the layout compiler produces at one-sided leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .fields import Field, Sesquimorphism
from .graphs import ColoredGraph, SigmaGraph
from .layouts import Layout
from .matrix import FMatrix, fmatmul, rank_of, solve_in_row_span


class TermError(ValueError):
    """Malformed term: dimension or field mismatch."""


@dataclass(frozen=True)
class Mat:
    """A small immutable matrix of element codes (shape kept explicitly so
    zero-size matrices round-trip)."""
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows * self.cols:
            raise TermError("matrix data does not match its shape")

    @classmethod
    def from_array(cls, a) -> "Mat":
        a = np.asarray(a, dtype=np.uint16)
        if a.ndim != 2:
            raise TermError("matrices must be 2-dimensional")
        return cls(a.shape[0], a.shape[1], tuple(int(x) for x in a.ravel()))

    def np(self, field: Field) -> np.ndarray:
        a = np.array(self.data, dtype=np.uint16).reshape(self.rows, self.cols)
        if a.size and int(a.max(initial=0)) >= field.q:
            raise TermError("matrix entry is not an element code of the field")
        return a

    def literal(self) -> str:
        body = ""
        for r in range(self.rows):
            row = self.data[r * self.cols:(r + 1) * self.cols]
            body += "; " + " ".join(str(x) for x in row)
        return f"[{self.rows} {self.cols}{body or ';'}]"

    def is_zero(self) -> bool:
        return not any(self.data)


@dataclass(frozen=True)
class RankConst:
    u: tuple[int, ...]

    def __post_init__(self):
        if len(self.u) < 1:
            raise TermError("rank constants need color width >= 1")

    @property
    def width(self) -> int:
        return len(self.u)


@dataclass(frozen=True)
class RankProd:
    m: Mat
    n: Mat
    p: Mat
    left: "RankTerm"
    right: "RankTerm"

    @property
    def width(self) -> int:
        return self.n.cols


RankTerm = Union[RankConst, RankProd]


@dataclass(frozen=True)
class BiConst:
    u: tuple[int, ...]
    v: tuple[int, ...]


@dataclass(frozen=True)
class BiProd:
    m1: Mat
    m2: Mat
    n1: Mat
    n2: Mat
    p1: Mat
    p2: Mat
    left: "BiRankTerm"
    right: "BiRankTerm"


BiRankTerm = Union[BiConst, BiProd]


@dataclass
class VColoredGraph:
    graph: ColoredGraph
    gamma: np.ndarray  # |V| x k


@dataclass
class BiColoredGraph:
    graph: ColoredGraph
    gamma_plus: np.ndarray   # |V| x k1
    gamma_minus: np.ndarray  # |V| x k2


def term_leaves(t) -> int:
    if isinstance(t, (RankConst, BiConst)):
        return 1
    return term_leaves(t.left) + term_leaves(t.right)


def term_max_width(t) -> int:
    """Largest color width appearing in the term (k1+k2 for bi-rank nodes)."""
    if isinstance(t, RankConst):
        return len(t.u)
    if isinstance(t, BiConst):
        return len(t.u) + len(t.v)
    if isinstance(t, RankProd):
        dims = [t.m.rows, t.m.cols, t.n.cols]
        return max(max(dims), term_max_width(t.left), term_max_width(t.right))
    dims = [t.m1.rows + t.m2.rows,      # k1 + k2
            t.m2.cols + t.m1.cols,      # l1 + l2
            t.n1.cols + t.n2.cols]      # m1 + m2
    return max(max(dims), term_max_width(t.left), term_max_width(t.right))


# -- evaluation -----------------------------------------------------------------

def eval_rank_term(t: RankTerm, sigma: Sesquimorphism,
                   trace: Optional[list] = None) -> VColoredGraph:
    """Evaluate to a sigma-symmetric graph with vertices numbered by leaf
    position.  If trace is a list, (leaf_span, gamma) is appended for every
    subterm in post-order."""
    field = sigma.field
    sig = sigma.np_table

    def rec(t, offset: int):
        if isinstance(t, RankConst):
            u = np.array([t.u], dtype=np.uint16)
            if u.size and int(u.max()) >= field.q:
                raise TermError("constant color is not an element code")
            adj = np.zeros((1, 1), dtype=np.uint16)
            if trace is not None:
                trace.append(((offset, offset + 1), u))
            return adj, u
        if not isinstance(t, RankProd):
            raise TermError(f"not a rank term node: {t!r}")
        a_g, gam_g = rec(t.left, offset)
        n_g = a_g.shape[0]
        a_h, gam_h = rec(t.right, offset + n_g)
        M, N, P = t.m.np(field), t.n.np(field), t.p.np(field)
        k, l = gam_g.shape[1], gam_h.shape[1]
        if M.shape != (k, l):
            raise TermError(f"M must be {k}x{l}, got {M.shape}")
        if N.shape[0] != k or P.shape[0] != l or N.shape[1] != P.shape[1]:
            raise TermError("N and P must map both sides to one color width")
        cross = fmatmul(fmatmul(gam_g, M, field), sig[gam_h].T, field)
        n_h = a_h.shape[0]
        adj = np.zeros((n_g + n_h, n_g + n_h), dtype=np.uint16)
        adj[:n_g, :n_g] = a_g
        adj[n_g:, n_g:] = a_h
        adj[:n_g, n_g:] = cross
        adj[n_g:, :n_g] = sig[cross.T]
        gamma = np.concatenate([fmatmul(gam_g, N, field),
                                fmatmul(gam_h, P, field)], axis=0)
        if trace is not None:
            trace.append(((offset, offset + n_g + n_h), gamma))
        return adj, gamma

    adj, gamma = rec(t, 0)
    n = adj.shape[0]
    G = SigmaGraph(field, tuple(range(n)), adj, sigma)
    return VColoredGraph(G, gamma)


def eval_birank_term(t: BiRankTerm, field: Field,
                     trace: Optional[list] = None) -> BiColoredGraph:
    """Evaluate a bi-rank term over the field; vertices numbered by leaf
    position.  trace (optional list) collects (leaf_span, gamma+, gamma-)."""

    def rec(t, offset: int):
        if isinstance(t, BiConst):
            u = np.array([t.u], dtype=np.uint16).reshape(1, len(t.u))
            v = np.array([t.v], dtype=np.uint16).reshape(1, len(t.v))
            for vec in (u, v):
                if vec.size and int(vec.max(initial=0)) >= field.q:
                    raise TermError("constant color is not an element code")
            adj = np.zeros((1, 1), dtype=np.uint16)
            if trace is not None:
                trace.append(((offset, offset + 1), u, v))
            return adj, u, v
        if not isinstance(t, BiProd):
            raise TermError(f"not a bi-rank term node: {t!r}")
        a_g, gp_g, gm_g = rec(t.left, offset)
        n_g = a_g.shape[0]
        a_h, gp_h, gm_h = rec(t.right, offset + n_g)
        n_h = a_h.shape[0]
        M1, M2 = t.m1.np(field), t.m2.np(field)
        N1, N2 = t.n1.np(field), t.n2.np(field)
        P1, P2 = t.p1.np(field), t.p2.np(field)
        k1, k2 = gp_g.shape[1], gm_g.shape[1]
        l1, l2 = gp_h.shape[1], gm_h.shape[1]
        if M1.shape != (k1, l2):
            raise TermError(f"M1 must be {k1}x{l2}, got {M1.shape}")
        if M2.shape != (k2, l1):
            raise TermError(f"M2 must be {k2}x{l1}, got {M2.shape}")
        if N1.shape[0] != k1 or P1.shape[0] != l1 or N1.shape[1] != P1.shape[1]:
            raise TermError("N1/P1 must map the outbound colors to one width")
        if N2.shape[0] != k2 or P2.shape[0] != l2 or N2.shape[1] != P2.shape[1]:
            raise TermError("N2/P2 must map the inbound colors to one width")
        fwd = fmatmul(fmatmul(gp_g, M1, field), gm_h.T, field)   # G -> H arcs
        back = fmatmul(fmatmul(gm_g, M2, field), gp_h.T, field)  # H -> G arcs
        adj = np.zeros((n_g + n_h, n_g + n_h), dtype=np.uint16)
        adj[:n_g, :n_g] = a_g
        adj[n_g:, n_g:] = a_h
        adj[:n_g, n_g:] = fwd
        adj[n_g:, :n_g] = back.T
        gp = np.concatenate([fmatmul(gp_g, N1, field),
                             fmatmul(gp_h, P1, field)], axis=0)
        gm = np.concatenate([fmatmul(gm_g, N2, field),
                             fmatmul(gm_h, P2, field)], axis=0)
        if trace is not None:
            trace.append(((offset, offset + n_g + n_h), gp, gm))
        return adj, gp, gm

    adj, gp, gm = rec(t, 0)
    n = adj.shape[0]
    return BiColoredGraph(ColoredGraph(field, tuple(range(n)), adj), gp, gm)


# -- syntactic layout -------------------------------------------------------------

def syntactic_layout(t) -> Layout:
    """The term's binary syntactic tree as an unrooted layout; leaves are the
    constants numbered left to right (matching evaluation vertex labels)."""
    n = term_leaves(t)
    if n == 1:
        return Layout([], {0: 0})
    counter = [n]
    edges: list[tuple[int, int]] = []
    leaf_counter = [0]

    def build(t) -> int:
        if isinstance(t, (RankConst, BiConst)):
            node = leaf_counter[0]
            leaf_counter[0] += 1
            return node
        node = counter[0]
        counter[0] += 1
        edges.append((node, build(t.left)))
        edges.append((node, build(t.right)))
        return node

    root = build(t)
    # the root has degree 2: splice it out so internal nodes are cubic
    kids = [v for u, v in edges if u == root]
    edges = [(u, v) for u, v in edges if u != root]
    edges.append((kids[0], kids[1]))
    return Layout(edges, {i: i for i in range(n)})


# -- vertex bases and layout compilation --------------------------------------------

def vertex_basis(M: FMatrix) -> tuple:
    """Greedy leftmost-independent rows in ambient row order, spanning the
    row space of M."""
    field = M.field
    picked = []
    if M.shape[1] == 0:
        return ()
    stack = np.zeros((0, M.shape[1]), dtype=np.uint16)
    for i, label in enumerate(M.rows):
        cand = np.concatenate([stack, M.a[i:i + 1]], axis=0)
        if rank_of(cand, field) > stack.shape[0]:
            stack = cand
            picked.append(label)
    return tuple(picked)


def _rooted(L: Layout, first_vertex):
    """Rooted binary structure for the layout, rooted by subdividing the edge
    at first_vertex's leaf: nested pairs of vertex labels.  Degree-2 interior
    nodes collapse transparently."""
    node_of = {lbl: node for node, lbl in L.leaves.items()}
    start = node_of[first_vertex]
    if L.n == 1:
        return first_vertex
    adj = L._adj

    def sub(node: int, parent: int):
        if node in L.leaves:
            return L.leaves[node]
        kids = [w for w in adj[node] if w != parent]
        if len(kids) == 1:
            return sub(kids[0], node)
        if len(kids) != 2:
            raise TermError("layout interior nodes must have degree <= 3")
        return (sub(kids[0], node), sub(kids[1], node))

    nbr = adj[start][0]
    return (first_vertex, sub(nbr, start))


def _restrict_layout(L: Layout, keep: set) -> Layout:
    """The layout induced on a vertex subset: minimal spanning subtree with
    degree-2 nodes suppressed."""
    keep_nodes = {node for node, lbl in L.leaves.items() if lbl in keep}
    adj = {node: set(nbrs) for node, nbrs in L._adj.items()}
    # prune leaves outside the kept set until stable
    changed = True
    while changed:
        changed = False
        for node in list(adj):
            if len(adj[node]) <= 1 and node not in keep_nodes:
                for w in adj[node]:
                    adj[w].discard(node)
                del adj[node]
                changed = True
    for node in list(adj):
        if node not in keep_nodes and len(adj[node]) == 2:
            a, b = adj[node]
            adj[a].discard(node)
            adj[b].discard(node)
            adj[a].add(b)
            adj[b].add(a)
            del adj[node]
    edges = {tuple(sorted((u, v))) for u, nb in adj.items() for v in nb}
    leaves = {node: L.leaves[node] for node in keep_nodes}
    return Layout(sorted(edges), leaves)


def _zero_mat(r: int, c: int) -> Mat:
    return Mat(r, c, (0,) * (r * c))


def term_from_layout_rank(G: SigmaGraph, L: Layout) -> RankTerm:
    """Compile a layout of G into a rank term whose evaluation is isomorphic
    to G; all matrix dimensions stay within the layout's cutrk-width
    (padded to >= 1 where a vertex basis is empty).

    The layout is rooted at the edge incident to the leaf of G's first
    vertex; at each node the cross matrix is (1/sigma(1)) M[X1][X2] over the
    child bases and N/P carry each child-basis row's coordinates in the
    parent basis."""
    if not isinstance(G, SigmaGraph):
        raise TermError("rank terms compile from sigma-symmetric graphs")
    if set(L.leaves.values()) != set(G.vertices):
        raise TermError("layout leaves do not match the graph's vertices")
    comps = G.components()
    if len(comps) > 1:
        parts = [term_from_layout_rank(G.induced_subgraph(c),
                                       _restrict_layout(L, set(c)))
                 for c in comps]
        t = parts[0]
        for part in parts[1:]:
            zero = _zero_mat(1, 1)
            t = RankProd(zero, zero, zero, t, part)
        return t
    return _compile_rank_connected(G, L)


def _compile_rank_connected(G: SigmaGraph, L: Layout) -> RankTerm:
    F = G.field
    sigma = G.sigma
    inv_s1 = F.inv(sigma.one)
    vpos = {v: i for i, v in enumerate(G.vertices)}
    all_v = set(G.vertices)
    M = G.matrix

    def block(rows, cols) -> np.ndarray:
        return M.submatrix(rows, cols).a

    def rec(node):
        if not isinstance(node, tuple):
            x = node
            rest = sorted(all_v - {x}, key=vpos.get)
            row = block([x], rest)
            X = (x,) if row.any() else ()
            return RankConst((1,)), X, [x]
        left, right = node
        t1, X1, vs1 = rec(left)
        t2, X2, vs2 = rec(right)
        w1, w2 = max(1, len(X1)), max(1, len(X2))
        m = np.zeros((w1, w2), dtype=np.uint16)
        if X1 and X2:
            m[:len(X1), :len(X2)] = F.MUL[inv_s1, block(X1, X2)]
        vs = vs1 + vs2
        rest = sorted(all_v - set(vs), key=vpos.get)
        candidates = sorted(X1 + X2, key=vpos.get)
        if rest:
            Xu = vertex_basis(M.submatrix(candidates, rest))
            coords = solve_in_row_span(block(Xu, rest), block(candidates, rest), F)
        else:
            Xu = ()
            coords = np.zeros((len(candidates), 0), dtype=np.uint16)
        wu = max(1, len(Xu))
        coord_of = {z: coords[i] for i, z in enumerate(candidates)}
        n_mat = np.zeros((w1, wu), dtype=np.uint16)
        for i, z in enumerate(X1):
            n_mat[i, :len(Xu)] = coord_of[z]
        p_mat = np.zeros((w2, wu), dtype=np.uint16)
        for i, z in enumerate(X2):
            p_mat[i, :len(Xu)] = coord_of[z]
        t = RankProd(Mat.from_array(m), Mat.from_array(n_mat),
                     Mat.from_array(p_mat), t1, t2)
        return t, Xu, vs

    t, _, _ = rec(_rooted(L, G.vertices[0]))
    return t


def term_from_layout_birank(G: ColoredGraph, L: Layout) -> BiRankTerm:
    """Compile a layout of G into a bi-rank term; per node the outbound and
    inbound color widths are the exact vertex-basis sizes, so k1+k2 equals
    the bi-cut-rank of the node's cut."""
    if set(L.leaves.values()) != set(G.vertices):
        raise TermError("layout leaves do not match the graph's vertices")
    comps = G.components()
    if len(comps) > 1:
        parts = [term_from_layout_birank(G.induced_subgraph(c),
                                         _restrict_layout(L, set(c)))
                 for c in comps]
        t = parts[0]
        for part in parts[1:]:
            def z(r, c):
                return _zero_mat(r, c)
            t = BiProd(z(0, 0), z(0, 0), z(0, 0), z(0, 0), z(0, 0), z(0, 0),
                       t, part)
        return t
    return _compile_birank_connected(G, L)


def _compile_birank_connected(G: ColoredGraph, L: Layout) -> BiRankTerm:
    F = G.field
    vpos = {v: i for i, v in enumerate(G.vertices)}
    all_v = set(G.vertices)
    M = G.matrix

    def block(rows, cols) -> np.ndarray:
        return M.submatrix(rows, cols).a

    def rec(node):
        if not isinstance(node, tuple):
            x = node
            rest = sorted(all_v - {x}, key=vpos.get)
            Xp = (x,) if block([x], rest).any() else ()
            Xm = (x,) if block(rest, [x]).any() else ()
            return BiConst((1,) * len(Xp), (1,) * len(Xm)), Xp, Xm, [x]
        left, right = node
        t1, Xp1, Xm1, vs1 = rec(left)
        t2, Xp2, Xm2, vs2 = rec(right)
        m1 = block(Xp1, Xm2)                      # k1 x l2
        m2 = block(Xp2, Xm1).T.copy()             # k2 x l1
        vs = vs1 + vs2
        rest = sorted(all_v - set(vs), key=vpos.get)
        cand_p = sorted(Xp1 + Xp2, key=vpos.get)
        cand_m = sorted(Xm1 + Xm2, key=vpos.get)
        if rest:
            Xpu = vertex_basis(M.submatrix(cand_p, rest))
            coords_p = solve_in_row_span(block(Xpu, rest), block(cand_p, rest), F)
            Xmu = vertex_basis(FMatrix(F, cand_m, rest, block(rest, cand_m).T))
            coords_m = solve_in_row_span(block(rest, Xmu).T.copy(),
                                         block(rest, cand_m).T.copy(), F)
        else:
            Xpu = Xmu = ()
            coords_p = np.zeros((len(cand_p), 0), dtype=np.uint16)
            coords_m = np.zeros((len(cand_m), 0), dtype=np.uint16)
        cp = {z: coords_p[i] for i, z in enumerate(cand_p)}
        cm = {z: coords_m[i] for i, z in enumerate(cand_m)}

        def rows_for(X, table, width):
            out = np.zeros((len(X), width), dtype=np.uint16)
            for i, z in enumerate(X):
                out[i] = table[z]
            return out

        n1 = rows_for(Xp1, cp, len(Xpu))
        p1 = rows_for(Xp2, cp, len(Xpu))
        n2 = rows_for(Xm1, cm, len(Xmu))
        p2 = rows_for(Xm2, cm, len(Xmu))
        t = BiProd(Mat.from_array(m1), Mat.from_array(m2),
                   Mat.from_array(n1), Mat.from_array(n2),
                   Mat.from_array(p1), Mat.from_array(p2), t1, t2)
        return t, Xpu, Xmu, vs

    t, _, _, _ = rec(_rooted(L, G.vertices[0]))
    return t


def compiled_leaf_order(G: ColoredGraph, L: Layout) -> list:
    """Graph vertices in the leaf order the compiler uses (per component,
    components in order), matching evaluation vertex numbering."""
    comps = G.components()
    order = []
    for c in comps:
        sub = _restrict_layout(L, set(c)) if len(comps) > 1 else L
        first = G.induced_subgraph(c).vertices[0] if len(comps) > 1 else G.vertices[0]

        def walk(node):
            if not isinstance(node, tuple):
                order.append(node)
            else:
                walk(node[0])
                walk(node[1])

        walk(_rooted(sub, first))
    return order


# -- term file format (s-expressions) ---------------------------------------------

def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append(ch)
            i += 1
        elif ch == "[":
            j = text.index("]", i)
            tokens.append(text[i:j + 1])
            i = j + 1
        elif ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()[]#":
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


def _mat_from_token(tok: str) -> Mat:
    if not tok.startswith("["):
        raise TermError(f"expected a matrix literal, got {tok!r}")
    parts = [p.strip() for p in tok[1:-1].split(";")]
    try:
        r, c = (int(x) for x in parts[0].split())
        data = tuple(int(x) for row in parts[1:] for x in row.split())
    except ValueError:
        raise TermError(f"bad matrix literal {tok!r}") from None
    return Mat(r, c, data)


def parse_term(text: str):
    """Parse `(const ...)`, `(biconst U V)`, `(prod M N P t1 t2)`, and
    `(biprod M1 M2 N1 N2 P1 P2 t1 t2)` s-expressions."""
    tokens = _tokenize(text)
    pos = [0]

    def expect(tok: str):
        if pos[0] >= len(tokens) or tokens[pos[0]] != tok:
            raise TermError(f"expected {tok!r} at token {pos[0]}")
        pos[0] += 1

    def next_token() -> str:
        if pos[0] >= len(tokens):
            raise TermError("unexpected end of term")
        tok = tokens[pos[0]]
        pos[0] += 1
        return tok

    def parse() :
        expect("(")
        head = next_token()
        if head == "const":
            codes = []
            while tokens[pos[0]] != ")":
                codes.append(int(next_token()))
            expect(")")
            return RankConst(tuple(codes))
        if head == "biconst":
            u = _mat_from_token(next_token())
            v = _mat_from_token(next_token())
            expect(")")
            if u.rows != 1 or v.rows != 1:
                raise TermError("biconst vectors must be 1-row matrices")
            return BiConst(u.data, v.data)
        if head == "prod":
            m, n, p = (_mat_from_token(next_token()) for _ in range(3))
            t1 = parse()
            t2 = parse()
            expect(")")
            return RankProd(m, n, p, t1, t2)
        if head == "biprod":
            ms = [_mat_from_token(next_token()) for _ in range(6)]
            t1 = parse()
            t2 = parse()
            expect(")")
            return BiProd(*ms, t1, t2)
        raise TermError(f"unknown term head {head!r}")

    t = parse()
    if pos[0] != len(tokens):
        raise TermError("trailing tokens after term")
    return t


def emit_term(t) -> str:
    if isinstance(t, RankConst):
        return "(const " + " ".join(str(c) for c in t.u) + ")"
    if isinstance(t, BiConst):
        u = Mat(1, len(t.u), t.u).literal()
        v = Mat(1, len(t.v), t.v).literal()
        return f"(biconst {u} {v})"
    if isinstance(t, RankProd):
        return (f"(prod {t.m.literal()} {t.n.literal()} {t.p.literal()} "
                f"{emit_term(t.left)} {emit_term(t.right)})")
    if isinstance(t, BiProd):
        mats = " ".join(x.literal() for x in (t.m1, t.m2, t.n1, t.n2, t.p1, t.p2))
        return f"(biprod {mats} {emit_term(t.left)} {emit_term(t.right)})"
    raise TermError(f"not a term: {t!r}")
