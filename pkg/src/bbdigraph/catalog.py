"""The exceptional non-Hamiltonian digraphs H1, H2 (with and without the arc
x3 -> y1) and H3, and isomorphism testing against them.

Arc lists below use the 1-based names from the literature; they are shifted to
0-based indices when the digraph is built.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Optional

from .conditions import satisfies_sharp_premise
from .core import BalancedBipartiteDigraph, Side, VertexRef, _bits, is_strong
from .ham import is_hamiltonian


class ExceptionName(enum.Enum):
    H1 = "H1"
    H2 = "H2"
    H2X = "H2X"
    H3 = "H3"


def _two_cycles(*pairs: str) -> list[tuple[str, str]]:
    arcs = []
    for p in pairs:
        u, v = p.split("-")
        arcs += [(u, v), (v, u)]
    return arcs


_H2_ARCS = _two_cycles("x1-y1", "x2-y1", "x3-y2", "x3-y3") + [
    ("y2", "x1"),
    ("y2", "x2"),
    ("y3", "x1"),
    ("y3", "x2"),
    ("y1", "x3"),
]

_SPECS: dict[ExceptionName, tuple[int, list[tuple[str, str]]]] = {
    ExceptionName.H1: (2, _two_cycles("x1-y1", "x2-y1", "x2-y2")),
    ExceptionName.H2: (3, _H2_ARCS),
    ExceptionName.H2X: (3, _H2_ARCS + [("x3", "y1")]),
    ExceptionName.H3: (
        3,
        _two_cycles("y3-x1", "y3-x2", "x3-y1", "x3-y2")
        + [("x1", "y2"), ("y2", "x2"), ("x2", "y1"), ("y1", "x1")],
    ),
}


def _zero_based(name: str) -> VertexRef:
    return VertexRef(Side(name[0]), int(name[1:]) - 1)


class CatalogError(AssertionError):
    """A catalog entry failed its self-test."""


@lru_cache(maxsize=None)
def build_exception(name: ExceptionName | str) -> BalancedBipartiteDigraph:
    """Return the catalog digraph; it is checked to be strong, to satisfy the
    (2a-2, a+1) dominating-pair bound and to be non-Hamiltonian."""
    name = ExceptionName(name)
    a, arcs = _SPECS[name]
    D = BalancedBipartiteDigraph.from_arcs(a, [(_zero_based(u), _zero_based(v)) for u, v in arcs])
    if not is_strong(D) or not satisfies_sharp_premise(D).holds or is_hamiltonian(D) is not None:
        raise CatalogError(f"{name.value} failed its self-test")
    return D


def _signatures(D: BalancedBipartiteDigraph) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    a = D.a
    out, inn = D.out_masks, D.in_masks
    sig = [(out[v].bit_count(), inn[v].bit_count()) for v in range(2 * a)]
    return sig[:a], sig[a:]


def _x_perms(cands: list[list[int]]):
    a = len(cands)
    perm = [-1] * a
    used = [False] * a

    def rec(i: int):
        if i == a:
            yield tuple(perm)
            return
        for p in cands[i]:
            if not used[p]:
                used[p] = True
                perm[i] = p
                yield from rec(i + 1)
                used[p] = False

    yield from rec(0)


def _map_mask(mask: int, perm: tuple[int, ...]) -> int:
    return sum(1 << perm[i] for i in _bits(mask))


def _side_preserving(D1: BalancedBipartiteDigraph, D2: BalancedBipartiteDigraph):
    """Find perms (p1, p2) with D1.relabel(p1, p2) == D2, or None."""
    a = D1.a
    s1x, s1y = _signatures(D1)
    s2x, s2y = _signatures(D2)
    if sorted(s1x) != sorted(s2x) or sorted(s1y) != sorted(s2y):
        return None
    cands = [[p for p in range(a) if s2x[p] == s1x[i]] for i in range(a)]
    # a y vertex is determined by its in-mask from V1 and its out-mask to V1
    cols1 = D1.in_masks[a:]
    cols2 = D2.in_masks[a:]
    targets: dict[tuple[int, int], list[int]] = {}
    for q in range(a):
        targets.setdefault((cols2[q], D2.rows2[q]), []).append(q)
    for p1 in _x_perms(cands):
        pool = {k: list(v) for k, v in targets.items()}
        p2 = []
        for j in range(a):
            key = (_map_mask(cols1[j], p1), _map_mask(D1.rows2[j], p1))
            bucket = pool.get(key)
            if not bucket:
                break
            p2.append(bucket.pop(0))
        else:
            return p1, tuple(p2)
    return None


def is_isomorphic(
    D1: BalancedBipartiteDigraph, D2: BalancedBipartiteDigraph
) -> Optional[dict[VertexRef, VertexRef]]:
    """A vertex bijection from D1 to D2 carrying arcs onto arcs exactly, or None.

    Bijections that keep each partite set in place are tried first, then
    those exchanging V1 and V2.
    """
    if D1.a != D2.a or D1.arc_count != D2.arc_count:
        return None
    a = D1.a
    found = _side_preserving(D1, D2)
    if found is not None:
        p1, p2 = found
        mapping = {VertexRef(Side.V1, i): VertexRef(Side.V1, p1[i]) for i in range(a)}
        mapping.update({VertexRef(Side.V2, j): VertexRef(Side.V2, p2[j]) for j in range(a)})
        return mapping
    found = _side_preserving(D1, D2.swap_sides())
    if found is not None:
        p1, p2 = found
        mapping = {VertexRef(Side.V1, i): VertexRef(Side.V2, p1[i]) for i in range(a)}
        mapping.update({VertexRef(Side.V2, j): VertexRef(Side.V1, p2[j]) for j in range(a)})
        return mapping
    return None


def apply_mapping(D: BalancedBipartiteDigraph, mapping: dict[VertexRef, VertexRef]) -> BalancedBipartiteDigraph:
    """Image of ``D`` under a vertex bijection (which may exchange the sides)."""
    return BalancedBipartiteDigraph.from_arcs(D.a, [(mapping[u], mapping[v]) for u, v in D.arcs()])


def match_exception(D: BalancedBipartiteDigraph) -> Optional[ExceptionName]:
    """First of H1, H2, H2X, H3 isomorphic to ``D``."""
    for name in ExceptionName:
        E = build_exception(name)
        if E.a == D.a and is_isomorphic(D, E) is not None:
            return name
    return None
