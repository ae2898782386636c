"""Edge-colored graphs over a finite field: encodings of undirected, directed
and oriented graphs, the quadratic-extension lift, induced subgraphs,
isomorphism, and canonical forms.

A graph is a square matrix of element codes with zero diagonal; code 0 is a
non-edge.  A SigmaGraph additionally carries a sesqui-morphism sigma and
satisfies adj[y][x] = sigma(adj[x][y]).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .fields import (Field, FieldError, Sesquimorphism, field_extend_quadratic,
                     field_make, parse_sigma, sigma_frobenius_conj,
                     sigma_identity, sigma_negation)
from .matrix import FMatrix

_FULL_PERM_MAX_N = 7      # below this, canonical form minimizes over all n!
_PERM_GUARD = 2_000_000   # refuse larger restricted permutation products
CANONICAL_MAX_N = 12


class GraphError(ValueError):
    """Invalid graph construction or operation."""


class ColoredGraph:
    """An F*-graph: square matrix over a field with zero diagonal."""

    __slots__ = ("field", "vertices", "adj", "_index", "_canon")

    def __init__(self, field: Field, vertices: Sequence, adj):
        self.field = field
        self.vertices = tuple(vertices)
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise GraphError("duplicate vertex labels")
        a = np.asarray(adj, dtype=np.uint16).reshape(n, n).copy()
        if a.size:
            if int(a.max(initial=0)) >= field.q:
                raise FieldError("color is not a valid element code")
            if a.trace() != 0 or np.diag(a).any():
                raise GraphError("graphs are loop-free: diagonal must be zero")
        a.flags.writeable = False
        self.adj = a
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._canon = None

    # basic accessors -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def color(self, u, v) -> int:
        return int(self.adj[self.index(u), self.index(v)])

    @property
    def matrix(self) -> FMatrix:
        return FMatrix(self.field, self.vertices, self.vertices, self.adj)

    def with_adj(self, adj) -> "ColoredGraph":
        return ColoredGraph(self.field, self.vertices, adj)

    def induced_subgraph(self, X) -> "ColoredGraph":
        X = tuple(X)
        idx = [self.index(x) for x in X]
        sub = self.adj[np.ix_(idx, idx)] if idx else np.zeros((0, 0), dtype=np.uint16)
        return type(self)._rebuild(self, X, sub)

    @classmethod
    def _rebuild(cls, proto, vertices, adj):
        return ColoredGraph(proto.field, vertices, adj)

    def relabel(self, mapping) -> "ColoredGraph":
        """New graph with vertex v renamed mapping[v]; matrix untouched."""
        return type(self)._rebuild(self, [mapping[v] for v in self.vertices], self.adj)

    def permuted(self, order: Sequence) -> "ColoredGraph":
        """Same graph with vertices listed in the given order."""
        idx = [self.index(v) for v in order]
        return type(self)._rebuild(self, order, self.adj[np.ix_(idx, idx)])

    def components(self) -> list[tuple]:
        """Connected components of the underlying graph (an arc either way
        makes vertices adjacent), as vertex tuples in input order."""
        n = self.n
        seen = [False] * n
        und = (self.adj != 0) | (self.adj != 0).T
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in np.nonzero(und[u])[0]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(int(w))
            comps.append(tuple(self.vertices[i] for i in sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # canonical form ---------------------------------------------------------

    def canonical_form(self):
        """Label-independent signature: equal iff isomorphic (n <= 12)."""
        if self._canon is None:
            self._canon = _canonical_form(self.field, self.adj)
        return self._canon

    def __eq__(self, other):
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (self.field == other.field and self.vertices == other.vertices
                and np.array_equal(self.adj, other.adj))

    def __hash__(self):
        return hash((self.field, self.vertices, self.adj.tobytes()))

    def __repr__(self):
        kind = type(self).__name__
        edges = int(np.count_nonzero(self.adj))
        return f"{kind}(n={self.n}, arcs={edges}, field={self.field!r})"


class SigmaGraph(ColoredGraph):
    """A sigma-symmetric F*-graph."""

    __slots__ = ("sigma",)

    def __init__(self, field: Field, vertices: Sequence, adj,
                 sigma: Sesquimorphism):
        super().__init__(field, vertices, adj)
        if sigma.field != field:
            raise GraphError("sesqui-morphism is over a different field")
        self.sigma = sigma
        if not _symmetric(self.adj, sigma):
            raise GraphError("matrix is not sigma-symmetric")

    @classmethod
    def _rebuild(cls, proto, vertices, adj):
        return SigmaGraph(proto.field, vertices, adj, proto.sigma)

    def with_adj(self, adj) -> "SigmaGraph":
        return SigmaGraph(self.field, self.vertices, adj, self.sigma)

    def drop_sigma(self) -> ColoredGraph:
        return ColoredGraph(self.field, self.vertices, self.adj)


def _symmetric(adj: np.ndarray, sigma: Sesquimorphism) -> bool:
    return np.array_equal(adj.T, sigma.np_table[adj])


def is_sigma_symmetric(G: ColoredGraph, sigma: Sesquimorphism) -> bool:
    if sigma.field != G.field:
        raise GraphError("sesqui-morphism is over a different field")
    return _symmetric(G.adj, sigma)


# -- encodings ---------------------------------------------------------------

def _collect_vertices(pairs, vertices):
    if vertices is not None:
        return tuple(vertices)
    seen = []
    for u, v in pairs:
        for w in (u, v):
            if w not in seen:
                seen.append(w)
    return tuple(seen)


def encode_undirected(edges, vertices=None) -> SigmaGraph:
    """Undirected graph as a GF(2) graph with the identity sesqui-morphism."""
    edges = [tuple(e) for e in edges]
    verts = _collect_vertices(edges, vertices)
    F = field_make(2, 1)
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    a = np.zeros((n, n), dtype=np.uint16)
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop at {u!r}")
        a[idx[u], idx[v]] = a[idx[v], idx[u]] = 1
    return SigmaGraph(F, verts, a, sigma_identity(F))


def encode_directed(arcs, vertices=None) -> SigmaGraph:
    """Directed graph over GF(4) with sigma4: a bidirected pair becomes 1, a
    lone arc (x, y) becomes a at (x, y) and a^2 at (y, x)."""
    arcs = [tuple(e) for e in arcs]
    verts = _collect_vertices(arcs, vertices)
    F = field_make(2, 2)
    A, A2 = 2, 3
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    arcset = set()
    for u, v in arcs:
        if u == v:
            raise GraphError(f"loop at {u!r}")
        arcset.add((idx[u], idx[v]))
    a = np.zeros((n, n), dtype=np.uint16)
    for (i, j) in arcset:
        if (j, i) in arcset:
            a[i, j] = a[j, i] = 1
        else:
            a[i, j], a[j, i] = A, A2
    return SigmaGraph(F, verts, a, sigma_frobenius_conj(F))


def encode_oriented(arcs, vertices=None) -> SigmaGraph:
    """Oriented graph over GF(3) with negation: arc (x, y) becomes 1 at
    (x, y) and -1 at (y, x); opposite arc pairs are rejected."""
    arcs = [tuple(e) for e in arcs]
    verts = _collect_vertices(arcs, vertices)
    F = field_make(3, 1)
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    arcset = set()
    for u, v in arcs:
        if u == v:
            raise GraphError(f"loop at {u!r}")
        arcset.add((idx[u], idx[v]))
    a = np.zeros((n, n), dtype=np.uint16)
    for (i, j) in arcset:
        if (j, i) in arcset:
            raise GraphError("oriented graphs admit no opposite arc pairs")
        a[i, j], a[j, i] = 1, 2
    return SigmaGraph(F, verts, a, sigma_negation(F))


def digraph_gf2(arcs, vertices=None) -> ColoredGraph:
    """Directed graph as a plain GF(2) graph (adj[x][y] = 1 iff arc x->y);
    generally not sigma-symmetric.  This is the bi-rank-width representation."""
    arcs = [tuple(e) for e in arcs]
    verts = _collect_vertices(arcs, vertices)
    F = field_make(2, 1)
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    a = np.zeros((n, n), dtype=np.uint16)
    for u, v in arcs:
        if u == v:
            raise GraphError(f"loop at {u!r}")
        a[idx[u], idx[v]] = 1
    return ColoredGraph(F, verts, a)


def tilde(G: ColoredGraph) -> SigmaGraph:
    """Lift to the quadratic extension: entry (x, y) becomes
    f~(adj[x][y], adj[y][x]); the result is sigma~-symmetric."""
    ext = field_extend_quadratic(G.field)
    tab = ext.f_tilde_table
    a = tab[G.adj, G.adj.T].astype(np.uint16)
    np.fill_diagonal(a, 0)  # f~(0,0) = 0 anyway; keep the invariant explicit
    return SigmaGraph(ext.ext, G.vertices, a, ext.sigma_tilde)


# -- canonical form and isomorphism ------------------------------------------

@lru_cache(maxsize=16)
def _perm_flat_idx(n: int) -> np.ndarray:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return perms[:, :, None] * n + perms[:, None, :]


def _lexmin_rows(sig: np.ndarray) -> bytes:
    order = np.lexsort(sig.T[::-1])
    return sig[order[0]].astype(np.uint16).tobytes()


def _refine_classes(adj: np.ndarray) -> list[list[int]]:
    """Iterated color refinement; returns vertex classes in canonical order."""
    n = adj.shape[0]
    keys = [tuple(sorted((int(adj[v, w]), int(adj[w, v]))
                         for w in range(n) if w != v)) for v in range(n)]
    while True:
        ordered = sorted(set(keys))
        cid = {k: i for i, k in enumerate(ordered)}
        new = [tuple(sorted((int(adj[v, w]), int(adj[w, v]), cid[keys[w]])
                            for w in range(n) if w != v)) for v in range(n)]
        if len(set(new)) == len(set(keys)):
            keys = new
            break
        keys = new
    ordered = sorted(set(keys))
    classes = [[v for v in range(n) if keys[v] == k] for k in ordered]
    return classes


def _canonical_form(field: Field, adj: np.ndarray):
    n = adj.shape[0]
    if n > CANONICAL_MAX_N:
        raise GraphError(f"canonical form limited to n <= {CANONICAL_MAX_N}")
    if n <= 1:
        return (n, field.q, adj.tobytes())
    if n <= _FULL_PERM_MAX_N:
        sig = adj.ravel()[_perm_flat_idx(n).reshape(-1, n * n)]
        return (n, field.q, _lexmin_rows(sig))
    classes = _refine_classes(adj)
    total = 1
    for c in classes:
        for i in range(2, len(c) + 1):
            total *= i
        if total > _PERM_GUARD:
            raise GraphError("canonical form search space too large")
    flat = adj.ravel()
    best = None
    batch = []
    for combo in itertools.product(*[itertools.permutations(c) for c in classes]):
        perm = [v for group in combo for v in group]
        batch.append(perm)
        if len(batch) >= 65536:
            best = _fold_best(flat, batch, n, best)
            batch = []
    if batch:
        best = _fold_best(flat, batch, n, best)
    return (n, field.q, best)


def _fold_best(flat, perms, n, best):
    p = np.array(perms, dtype=np.int64)
    sig = flat[(p[:, :, None] * n + p[:, None, :]).reshape(len(perms), n * n)]
    cand = _lexmin_rows(sig)
    return cand if best is None or cand < best else best


def canonical_form(G: ColoredGraph):
    return G.canonical_form()


def isomorphic(G: ColoredGraph, H: ColoredGraph) -> Optional[dict]:
    """A color-preserving vertex bijection G -> H, or None."""
    if G.field != H.field:
        raise GraphError("graphs live over different fields")
    if G.n != H.n:
        return None
    if G.n == 0:
        return {}
    a, b = G.adj, H.adj
    inv_g = _refine_classes(a)
    inv_h = _refine_classes(b)
    if [len(c) for c in inv_g] != [len(c) for c in inv_h]:
        return None
    # candidate targets per G-vertex: vertices of H in the matching class
    cand = {}
    for cg, ch in zip(inv_g, inv_h):
        for v in cg:
            cand[v] = list(ch)
    order = sorted(range(G.n), key=lambda v: len(cand[v]))
    mapping: dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in cand[v]:
            if w in used:
                continue
            ok = True
            for v2, w2 in mapping.items():
                if a[v, v2] != b[w, w2] or a[v2, v] != b[w2, w]:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.remove(w)
        return False

    if not extend(0):
        return None
    return {G.vertices[v]: H.vertices[w] for v, w in mapping.items()}


# -- graph file format --------------------------------------------------------

def parse_graph(text: str) -> ColoredGraph:
    """Parse the graph file format:

        field <p> <k>
        sigma <spec>            # optional
        vertices v1 v2 ... vn
        edge <u> <v> <element-code>
    """
    field = None
    sigma = None
    verts: Optional[tuple] = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split(None, 1)
        arg = rest[0] if rest else ""
        if head == "field":
            try:
                p, k = (int(t) for t in arg.split())
            except ValueError:
                raise GraphError(f"line {lineno}: bad field declaration") from None
            field = field_make(p, k)
        elif head == "sigma":
            if field is None:
                raise GraphError(f"line {lineno}: sigma before field")
            sigma = parse_sigma(field, arg)
        elif head == "vertices":
            verts = tuple(arg.split())
        elif head == "edge":
            parts = arg.split()
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: edge needs <u> <v> <code>")
            edges.append((parts[0], parts[1], int(parts[2]), lineno))
        else:
            raise GraphError(f"line {lineno}: unknown declaration {head!r}")
    if field is None:
        raise GraphError("missing field declaration")
    if verts is None:
        raise GraphError("missing vertices declaration")
    idx = {v: i for i, v in enumerate(verts)}
    a = np.zeros((len(verts), len(verts)), dtype=np.uint16)
    for u, v, code, lineno in edges:
        if u not in idx or v not in idx:
            raise GraphError(f"line {lineno}: unknown vertex in edge {u} {v}")
        if u == v:
            raise GraphError(f"line {lineno}: loop at {u}")
        a[idx[u], idx[v]] = code
    if sigma is not None:
        return SigmaGraph(field, verts, a, sigma)
    return ColoredGraph(field, verts, a)


def emit_graph(G: ColoredGraph) -> str:
    lines = [f"field {G.field.p} {G.field.k}"]
    sigma = getattr(G, "sigma", None)
    if sigma is not None:
        spec = sigma.name if sigma.name else " ".join(map(str, sigma.table))
        lines.append(f"sigma {spec}")
    lines.append("vertices " + " ".join(str(v) for v in G.vertices))
    for i, u in enumerate(G.vertices):
        for j, v in enumerate(G.vertices):
            if G.adj[i, j]:
                lines.append(f"edge {u} {v} {int(G.adj[i, j])}")
    return "\n".join(lines) + "\n"


def emit_dot(G: ColoredGraph) -> str:
    """DOT export: one directed edge per nonzero entry, labeled by its code."""
    lines = ["digraph G {"]
    for v in G.vertices:
        lines.append(f'  "{v}";')
    for i, u in enumerate(G.vertices):
        for j, v in enumerate(G.vertices):
            if G.adj[i, j]:
                lines.append(f'  "{u}" -> "{v}" [label="{int(G.adj[i, j])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
