"""Perfect matchings between the partite sets and cycle factors built from them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import BalancedBipartiteDigraph, Cycle, Side, VertexRef, _bits, x, y
from .errors import InvalidInputError


class MatchDirection(enum.Enum):
    V1_TO_V2 = "V1toV2"
    V2_TO_V1 = "V2toV1"

    @property
    def source(self) -> Side:
        return Side.V1 if self is MatchDirection.V1_TO_V2 else Side.V2


@dataclass(frozen=True)
class Matching:
    """``assignment[i]`` is the partner index of source vertex i, or None."""

    direction: MatchDirection
    assignment: tuple[Optional[int], ...]

    @property
    def is_perfect(self) -> bool:
        return all(j is not None for j in self.assignment)

    def __len__(self) -> int:
        return sum(j is not None for j in self.assignment)

    def arcs(self) -> list[tuple[VertexRef, VertexRef]]:
        src, dst = (x, y) if self.direction is MatchDirection.V1_TO_V2 else (y, x)
        return [(src(i), dst(j)) for i, j in enumerate(self.assignment) if j is not None]

    def is_valid_in(self, D: BalancedBipartiteDigraph) -> bool:
        used = [j for j in self.assignment if j is not None]
        return (
            len(self.assignment) == D.a
            and len(used) == len(set(used))
            and all(D.has_arc(u, v) for u, v in self.arcs())
        )


def _rows(D: BalancedBipartiteDigraph, direction: MatchDirection) -> tuple[int, ...]:
    if not isinstance(direction, MatchDirection):
        raise InvalidInputError(f"not a matching direction: {direction!r}")
    return D.rows1 if direction is MatchDirection.V1_TO_V2 else D.rows2


def _max_matching(rows: Sequence[int], a: int) -> tuple[list[int], list[int]]:
    """Kuhn's augmenting-path algorithm; returns (match_of_source, match_of_target), -1 = free."""
    mate_s = [-1] * a
    mate_t = [-1] * a

    def augment(u: int, seen: list[bool]) -> bool:
        for t in _bits(rows[u]):
            if seen[t]:
                continue
            seen[t] = True
            if mate_t[t] < 0 or augment(mate_t[t], seen):
                mate_s[u] = t
                mate_t[t] = u
                return True
        return False

    for u in range(a):
        augment(u, [False] * a)
    return mate_s, mate_t


def maximum_matching(D: BalancedBipartiteDigraph, direction: MatchDirection) -> Matching:
    mate_s, _ = _max_matching(_rows(D, direction), D.a)
    return Matching(direction, tuple(None if t < 0 else t for t in mate_s))


def perfect_matching(D: BalancedBipartiteDigraph, direction: MatchDirection) -> Optional[Matching]:
    m = maximum_matching(D, direction)
    return m if m.is_perfect else None


def hall_violation(D: BalancedBipartiteDigraph, direction: MatchDirection) -> Optional[frozenset[VertexRef]]:
    """A source-side set S with |N+(S)| < |S|, or None if Hall's condition holds.

    Built from a maximum matching: the source vertices reachable from a free
    source vertex along alternating paths have exactly |S| - 1 neighbours.
    """
    rows = _rows(D, direction)
    a = D.a
    mate_s, mate_t = _max_matching(rows, a)
    try:
        root = mate_s.index(-1)
    except ValueError:
        return None
    S = 1 << root
    stack = [root]
    while stack:
        u = stack.pop()
        for t in _bits(rows[u]):
            w = mate_t[t]
            # every neighbour of S is matched, otherwise the matching was not maximum
            if not S >> w & 1:
                S |= 1 << w
                stack.append(w)
    ref = x if direction.source is Side.V1 else y
    return frozenset(ref(i) for i in _bits(S))


@dataclass(frozen=True)
class CycleFactor:
    cycles: tuple[Cycle, ...]

    def __str__(self) -> str:
        return " ".join(f"[{c}]" for c in self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)

    def is_valid_in(self, D: BalancedBipartiteDigraph) -> bool:
        seen = [v for c in self.cycles for v in c]
        return (
            len(seen) == len(set(seen)) == D.order
            and set(seen) == set(D.vertices())
            and all(c.is_valid_in(D) for c in self.cycles)
        )

    @classmethod
    def parse(cls, text: str) -> CycleFactor:
        parts = [p.strip() for p in text.replace("]", "[").split("[") if p.strip()]
        return cls(tuple(Cycle.parse(p) for p in parts))


def factor_from_matchings(a: int, m1: Matching, m2: Matching) -> CycleFactor:
    """Follow ``m1`` (V1 -> V2) then ``m2`` (V2 -> V1) until each cycle closes.

    Cycles are started at the unvisited x of smallest index.
    """
    if m1.direction is not MatchDirection.V1_TO_V2 or m2.direction is not MatchDirection.V2_TO_V1:
        raise InvalidInputError("need a V1->V2 matching followed by a V2->V1 matching")
    if not (m1.is_perfect and m2.is_perfect):
        raise InvalidInputError("both matchings must be perfect")
    visited = [False] * a
    cycles = []
    for start in range(a):
        if visited[start]:
            continue
        seq = []
        i = start
        while not visited[i]:
            visited[i] = True
            j = m1.assignment[i]
            seq += [x(i), y(j)]
            i = m2.assignment[j]
        cycles.append(Cycle(tuple(seq)))
    return CycleFactor(tuple(cycles))


def cycle_factor(D: BalancedBipartiteDigraph) -> Optional[CycleFactor]:
    """A cycle factor exists iff both perfect matchings do; None otherwise."""
    m1 = perfect_matching(D, MatchDirection.V1_TO_V2)
    if m1 is None:
        return None
    m2 = perfect_matching(D, MatchDirection.V2_TO_V1)
    if m2 is None:
        return None
    return factor_from_matchings(D.a, m1, m2)


def has_cycle_factor(D: BalancedBipartiteDigraph) -> bool:
    a = D.a
    return (
        min(_max_matching(D.rows1, a)[0]) >= 0 and min(_max_matching(D.rows2, a)[0]) >= 0
    )
