"""Local and pivot complementation, orbits, and vertex-minors.

Every lambda-local complementation adds lambda * M[z][x] * M[x][t] away from
the pivot vertex x; sigma-compatible lambdas keep the graph sigma-symmetric
and preserve every cut-rank, so widths are invariant along orbits.
"""

import numpy as np

from rankw import (CutFunction, SigmaGraph, ec_cycle, encode_undirected,
                   equivalence_orbit_graphs, field_make, is_minor, isomorphic,
                   local_complement, pivot_complement, rankwidth,
                   sigma_frobenius_conj)

F4 = field_make(2, 2)
s4 = sigma_frobenius_conj(F4)

# A directed path z <- x -> t (codes: 2 = a out, 3 = a^2 in).  A 1-local
# complementation at x joins z and t bidirectedly: a^2 * a = 1.
a = np.zeros((3, 3), dtype=np.uint16)
a[1, 0], a[0, 1] = 2, 3
a[1, 2], a[2, 1] = 2, 3
G = SigmaGraph(F4, ("z", "x", "t"), a, s4)
H = local_complement(G, "x", 1)
print("before:", G.adj[0, 2], " after one local complementation at x:",
      H.adj[0, 2], "(z <-> t)")

# Over GF(2) the pivot is the classic three-step dance G*x*y*x.
C5 = encode_undirected([(i, (i + 1) % 5) for i in range(5)])
P = pivot_complement(C5, 0, 1)
Q = local_complement(local_complement(local_complement(C5, 0, 1), 1, 1), 0, 1)
print("pivot == G*x*y*x over GF(2):", np.array_equal(P.adj, Q.adj))

# Cut-ranks are untouched by either move.
f0 = CutFunction(C5, "cutrk")
f1 = CutFunction(P, "cutrk")
print("cutrk preserved on all 2^5 cuts:",
      all(f0(X) == f1(X) for X in range(1 << 5)))

# The orbit of C5 under 1-local complementations, up to isomorphism.
orbit = equivalence_orbit_graphs(C5, "sigma-vertex")
print("\nC5 orbit size (iso classes):", len(orbit))
print("orbit widths:", sorted(rankwidth(M).width for M in orbit))

# C5 is a vertex-minor of C6: complement and delete.
C6 = encode_undirected([(i, (i + 1) % 6) for i in range(6)])
res = is_minor(C5, C6, "sigma-vertex")
print("C5 is a vertex-minor of C6:", res.found,
      f"(closure of {res.states} states, complete={res.complete})")

# Alternating even cycles are isomorphic to each of their 1-local
# complementations in the plain GF(2) digraph representation.
E6 = ec_cycle(6)
print("\nEC(6) isomorphic to all its complementations:",
      all(isomorphic(E6, local_complement(E6, x, 1)) is not None
          for x in E6.vertices))
