"""Independent oracles and hypothesis strategies shared by the test modules.

The oracles work from the boolean matrices or the arc list only, never from
the bitmask internals used by the package.
"""

import itertools

import networkx as nx
from hypothesis import strategies as st

from bbdigraph import BalancedBipartiteDigraph


def to_nx(D):
    G = nx.DiGraph()
    G.add_nodes_from(str(v) for v in D.vertices())
    G.add_edges_from((str(u), str(v)) for u, v in D.arcs())
    return G


def strong_oracle(D):
    return nx.is_strongly_connected(to_nx(D))


def degree_oracle(D, name):
    arcs = [(str(u), str(v)) for u, v in D.arcs()]
    out_d = sum(1 for u, _ in arcs if u == name)
    in_d = sum(1 for _, v in arcs if v == name)
    return out_d, in_d, out_d + in_d


def all_cycles(D):
    """Every simple cycle as a tuple of vertex names, rotated to start at its smallest x."""
    a = D.a
    found = []
    for cyc in nx.simple_cycles(to_nx(D)):
        flat = [int(v[1:]) if v[0] == "x" else a + int(v[1:]) for v in cyc]
        k = flat.index(min(flat))
        found.append(tuple(flat[k:] + flat[:k]))
    return found


def longest_cycle_oracle(D):
    cycles = all_cycles(D)
    return max((len(c) for c in cycles), default=0)


def lexmin_longest_oracle(D):
    cycles = all_cycles(D)
    if not cycles:
        return None
    best = max(len(c) for c in cycles)
    return min(c for c in cycles if len(c) == best)


def hamiltonian_oracle(D):
    return longest_cycle_oracle(D) == 2 * D.a


def hall_bruteforce(matrix):
    """Some S of row indices with |N(S)| < |S|, scanning every subset; None if none."""
    a = len(matrix)
    for size in range(1, a + 1):
        for S in itertools.combinations(range(a), size):
            nbrs = {j for i in S for j in range(a) if matrix[i][j]}
            if len(nbrs) < len(S):
                return set(S)
    return None


def pairs_oracle(D, kind):
    """Same-side pairs {u, v} with a common out- (dominating) or in- (dominated) neighbour."""
    arcs = {(str(u), str(v)) for u, v in D.arcs()}
    names = [str(v) for v in D.vertices()]
    result = set()
    for u, v in itertools.combinations(names, 2):
        for z in names:
            hit = ((u, z) in arcs and (v, z) in arcs) if kind == "dominating" else ((z, u) in arcs and (z, v) in arcs)
            if hit:
                result.add(frozenset((u, v)))
    return result


@st.composite
def digraphs(draw, min_a=1, max_a=4):
    a = draw(st.integers(min_a, max_a))
    code = draw(st.integers(0, (1 << (2 * a * a)) - 1))
    return BalancedBipartiteDigraph.from_code(a, code)


@st.composite
def dense_digraphs(draw, min_a=2, max_a=4):
    """Digraphs with each arc present with probability about 3/4, which are
    far more often strong than uniform draws."""
    a = draw(st.integers(min_a, max_a))
    n = 2 * a * a
    c1 = draw(st.integers(0, (1 << n) - 1))
    c2 = draw(st.integers(0, (1 << n) - 1))
    return BalancedBipartiteDigraph.from_code(a, c1 | c2)


@st.composite
def permutations_for(draw, a):
    p1 = draw(st.permutations(range(a)))
    p2 = draw(st.permutations(range(a)))
    return list(p1), list(p2)
