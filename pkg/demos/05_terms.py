"""Compiling layouts into bilinear-product terms and evaluating them back.

A term either creates one colored vertex or joins two evaluated graphs,
drawing cross edges gamma(x) . M . sigma(gamma(y))^T and recoloring by N and
P.  Compiling an optimal layout yields a term whose matrices stay within the
width, and evaluation reconstructs the graph up to isomorphism.
"""

from rankw import (birankwidth, digraph_gf2, emit_term, encode_undirected,
                   eval_birank_term, eval_rank_term, field_make, isomorphic,
                   rankwidth, sigma_identity, syntactic_layout,
                   term_from_layout_rank, term_from_layout_birank)
from rankw.terms import compiled_leaf_order, term_max_width

F2 = field_make(2, 1)
s2 = sigma_identity(F2)

C5 = encode_undirected([(i, (i + 1) % 5) for i in range(5)])
res = rankwidth(C5)
t = term_from_layout_rank(C5, res.witness)
print("C5 compiled from an optimal layout (width 2):")
print(emit_term(t))
print("largest color width in the term:", term_max_width(t))

ev = eval_rank_term(t, s2)
order = compiled_leaf_order(C5, res.witness)
print("leaf order:", order)
print("evaluates back to C5:",
      isomorphic(ev.graph, C5.relabel({v: i for i, v in enumerate(order)}))
      is not None)

# The syntactic tree of the term is itself a layout of the result.
L = syntactic_layout(t)
print("syntactic layout:", L.to_newick())

# Bi-rank terms handle arbitrary digraphs with outbound/inbound colorings;
# one-sided vertices get zero-width colors on the silent side.
D = digraph_gf2([("x", "y"), ("y", "z"), ("z", "x")])
resb = birankwidth(D)
tb = term_from_layout_birank(D, resb.witness)
print("\ndirected triangle, bi-rank-width", resb.width)
print(emit_term(tb))
evb = eval_birank_term(tb, F2)
orderb = compiled_leaf_order(D, resb.witness)
print("evaluates back:",
      isomorphic(evb.graph, D.relabel({v: i for i, v in enumerate(orderb)}))
      is not None)
