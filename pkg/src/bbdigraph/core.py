"""Balanced bipartite digraphs and their elementary queries.

A digraph on partite sets V1 = {x_0..x_{a-1}} and V2 = {y_0..y_{a-1}} is stored
as two lists of row bitmasks: ``rows1[i]`` has bit ``j`` set iff x_i -> y_j and
``rows2[i]`` has bit ``j`` set iff y_i -> x_j.  Arcs inside a partite set cannot
be expressed, so loops and intra-side arcs are impossible by construction.

Internally vertices are also given a flat index: x_i is ``i`` and y_j is
``a + j``.  The flat adjacency masks are what the search routines use.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidInputError


class Side(enum.Enum):
    V1 = "x"
    V2 = "y"

    @property
    def other(self) -> Side:
        return Side.V2 if self is Side.V1 else Side.V1


_NAME_RE = re.compile(r"^([xy])(\d+)$")


class VertexRef(NamedTuple):
    """A vertex named by its partite set and 0-based index."""

    side: Side
    index: int

    def __str__(self) -> str:
        return f"{self.side.value}{self.index}"

    @classmethod
    def parse(cls, name: str) -> VertexRef:
        m = _NAME_RE.match(name.strip())
        if not m:
            raise InvalidInputError(f"bad vertex name {name!r}")
        return cls(Side(m.group(1)), int(m.group(2)))

    def flat(self, a: int) -> int:
        return self.index if self.side is Side.V1 else a + self.index


def x(i: int) -> VertexRef:
    return VertexRef(Side.V1, i)


def y(j: int) -> VertexRef:
    return VertexRef(Side.V2, j)


def vertex_from_flat(a: int, v: int) -> VertexRef:
    return VertexRef(Side.V1, v) if v < a else VertexRef(Side.V2, v - a)


class PairKind(enum.Enum):
    DOMINATING = "dominating"
    DOMINATED = "dominated"
    # only used for witnesses of the non-adjacent degree-sum condition
    NON_ADJACENT = "non-adjacent"


@dataclass(frozen=True)
class VertexPair:
    u: VertexRef
    v: VertexRef
    kind: PairKind

    def __str__(self) -> str:
        return f"{{{self.u},{self.v}}}"


class Degree(NamedTuple):
    out_degree: int
    in_degree: int
    total: int


class Direction(enum.Enum):
    OUT = "out"
    IN = "in"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transpose(rows: Sequence[int], a: int) -> tuple[int, ...]:
    cols = [0] * a
    for i, row in enumerate(rows):
        bit = 1 << i
        for j in _bits(row):
            cols[j] |= bit
    return tuple(cols)


class BalancedBipartiteDigraph:
    """Immutable balanced bipartite digraph of order ``2a``.

    ``m1[i][j]`` is the arc x_i -> y_j and ``m2[i][j]`` the arc y_i -> x_j.
    Use :meth:`from_rows`, :meth:`from_code` or :meth:`from_arcs` for the
    other construction routes.
    """

    __slots__ = ("_a", "_rows1", "_rows2", "_cache")

    def __init__(self, a: int, m1: Sequence[Sequence[bool]], m2: Sequence[Sequence[bool]]):
        a = _check_order(a)
        rows = []
        for name, m in (("m1", m1), ("m2", m2)):
            if len(m) != a or any(len(r) != a for r in m):
                raise InvalidInputError(f"{name} must be {a}x{a}")
            rows.append(tuple(sum(1 << j for j, b in enumerate(r) if b) for r in m))
        self._init(a, rows[0], rows[1])

    def _init(self, a: int, rows1: tuple[int, ...], rows2: tuple[int, ...]) -> None:
        self._a = a
        self._rows1 = rows1
        self._rows2 = rows2
        self._cache: dict = {}

    @classmethod
    def _raw(cls, a: int, rows1: tuple[int, ...], rows2: tuple[int, ...]) -> BalancedBipartiteDigraph:
        obj = cls.__new__(cls)
        obj._init(a, rows1, rows2)
        return obj

    @classmethod
    def from_rows(cls, a: int, rows1: Sequence[int], rows2: Sequence[int]) -> BalancedBipartiteDigraph:
        a = _check_order(a)
        full = (1 << a) - 1
        if len(rows1) != a or len(rows2) != a:
            raise InvalidInputError(f"need exactly {a} rows per side")
        for r in (*rows1, *rows2):
            if not 0 <= r <= full:
                raise InvalidInputError(f"row mask {r} out of range for a={a}")
        return cls._raw(a, tuple(rows1), tuple(rows2))

    @classmethod
    def from_code(cls, a: int, code: int) -> BalancedBipartiteDigraph:
        """Decode the 2a^2-bit arc integer (m1 row-major, then m2 row-major)."""
        a = _check_order(a)
        if not 0 <= code < 1 << (2 * a * a):
            raise InvalidInputError(f"code out of range for a={a}")
        full = (1 << a) - 1
        rows1 = tuple((code >> (i * a)) & full for i in range(a))
        code >>= a * a
        rows2 = tuple((code >> (i * a)) & full for i in range(a))
        return cls._raw(a, rows1, rows2)

    @classmethod
    def from_arcs(cls, a: int, arcs: Iterable[tuple[VertexRef | str, VertexRef | str]]) -> BalancedBipartiteDigraph:
        """Build from (tail, head) pairs; names like ``"x0"`` are accepted."""
        a = _check_order(a)
        rows1, rows2 = [0] * a, [0] * a
        for tail, head in arcs:
            tail, head = _as_ref(tail), _as_ref(head)
            _check_ref(a, tail)
            _check_ref(a, head)
            if tail.side is head.side:
                raise InvalidInputError(f"arc {tail}->{head} lies inside a partite set")
            if tail.side is Side.V1:
                rows1[tail.index] |= 1 << head.index
            else:
                rows2[tail.index] |= 1 << head.index
        return cls._raw(a, tuple(rows1), tuple(rows2))

    @classmethod
    def complete(cls, a: int) -> BalancedBipartiteDigraph:
        a = _check_order(a)
        full = (1 << a) - 1
        return cls._raw(a, (full,) * a, (full,) * a)

    @classmethod
    def empty(cls, a: int) -> BalancedBipartiteDigraph:
        a = _check_order(a)
        return cls._raw(a, (0,) * a, (0,) * a)

    @classmethod
    def hamiltonian_cycle(cls, a: int) -> BalancedBipartiteDigraph:
        """The single alternating cycle x0 y0 x1 y1 ... x_{a-1} y_{a-1} x0."""
        a = _check_order(a)
        return cls._raw(a, tuple(1 << i for i in range(a)), tuple(1 << ((i + 1) % a) for i in range(a)))

    @classmethod
    def disjoint_two_cycles(cls, a: int) -> BalancedBipartiteDigraph:
        """The union of the 2-cycles x_i <-> y_i."""
        a = _check_order(a)
        rows = tuple(1 << i for i in range(a))
        return cls._raw(a, rows, rows)

    # -- accessors ---------------------------------------------------------

    @property
    def a(self) -> int:
        return self._a

    @property
    def order(self) -> int:
        return 2 * self._a

    @property
    def rows1(self) -> tuple[int, ...]:
        return self._rows1

    @property
    def rows2(self) -> tuple[int, ...]:
        return self._rows2

    @property
    def m1(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(r >> j & 1) for j in range(self._a)) for r in self._rows1)

    @property
    def m2(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(r >> j & 1) for j in range(self._a)) for r in self._rows2)

    @property
    def code(self) -> int:
        c = self._cache.get("code")
        if c is None:
            a = self._a
            c = 0
            for i, r in enumerate(self._rows1):
                c |= r << (i * a)
            for i, r in enumerate(self._rows2):
                c |= r << (a * a + i * a)
            self._cache["code"] = c
        return c

    @property
    def arc_count(self) -> int:
        return sum(r.bit_count() for r in self._rows1) + sum(r.bit_count() for r in self._rows2)

    def vertices(self) -> list[VertexRef]:
        return [x(i) for i in range(self._a)] + [y(j) for j in range(self._a)]

    def has_arc(self, tail: VertexRef | str, head: VertexRef | str) -> bool:
        tail, head = _as_ref(tail), _as_ref(head)
        _check_ref(self._a, tail)
        _check_ref(self._a, head)
        if tail.side is head.side:
            return False
        rows = self._rows1 if tail.side is Side.V1 else self._rows2
        return bool(rows[tail.index] >> head.index & 1)

    def arcs(self) -> list[tuple[VertexRef, VertexRef]]:
        out = [(x(i), y(j)) for i, r in enumerate(self._rows1) for j in _bits(r)]
        out += [(y(i), x(j)) for i, r in enumerate(self._rows2) for j in _bits(r)]
        return out

    @property
    def out_masks(self) -> tuple[int, ...]:
        """Flat out-adjacency: entry ``v`` is a 2a-bit mask of heads."""
        m = self._cache.get("out")
        if m is None:
            a = self._a
            m = tuple(r << a for r in self._rows1) + self._rows2
            self._cache["out"] = m
        return m

    @property
    def in_masks(self) -> tuple[int, ...]:
        m = self._cache.get("in")
        if m is None:
            a = self._a
            # in-neighbours of x_j are the y_i with rows2[i] bit j, i.e. column j of m2
            m = tuple(c << a for c in _transpose(self._rows2, a)) + _transpose(self._rows1, a)
            self._cache["in"] = m
        return m

    @property
    def degrees(self) -> tuple[int, ...]:
        """Total degree per flat vertex index."""
        d = self._cache.get("deg")
        if d is None:
            d = tuple(o.bit_count() + i.bit_count() for o, i in zip(self.out_masks, self.in_masks))
            self._cache["deg"] = d
        return d

    # -- derived digraphs ----------------------------------------------------

    def reverse(self) -> BalancedBipartiteDigraph:
        """Digraph with every arc reversed."""
        a = self._a
        return BalancedBipartiteDigraph._raw(a, _transpose(self._rows2, a), _transpose(self._rows1, a))

    def swap_sides(self) -> BalancedBipartiteDigraph:
        """Same digraph with the roles of V1 and V2 exchanged."""
        return BalancedBipartiteDigraph._raw(self._a, self._rows2, self._rows1)

    def relabel(self, perm1: Sequence[int], perm2: Sequence[int]) -> BalancedBipartiteDigraph:
        """Rename x_i as x_{perm1[i]} and y_j as y_{perm2[j]}."""
        a = self._a
        if sorted(perm1) != list(range(a)) or sorted(perm2) != list(range(a)):
            raise InvalidInputError("relabelling must use permutations of range(a)")
        rows1, rows2 = [0] * a, [0] * a
        for i, r in enumerate(self._rows1):
            rows1[perm1[i]] = sum(1 << perm2[j] for j in _bits(r))
        for i, r in enumerate(self._rows2):
            rows2[perm2[i]] = sum(1 << perm1[j] for j in _bits(r))
        return BalancedBipartiteDigraph._raw(a, tuple(rows1), tuple(rows2))

    def with_arcs(self, arcs: Iterable[tuple[VertexRef | str, VertexRef | str]]) -> BalancedBipartiteDigraph:
        extra = BalancedBipartiteDigraph.from_arcs(self._a, arcs)
        return BalancedBipartiteDigraph._raw(
            self._a,
            tuple(p | q for p, q in zip(self._rows1, extra._rows1)),
            tuple(p | q for p, q in zip(self._rows2, extra._rows2)),
        )

    def without_arcs(self, arcs: Iterable[tuple[VertexRef | str, VertexRef | str]]) -> BalancedBipartiteDigraph:
        drop = BalancedBipartiteDigraph.from_arcs(self._a, arcs)
        return BalancedBipartiteDigraph._raw(
            self._a,
            tuple(p & ~q for p, q in zip(self._rows1, drop._rows1)),
            tuple(p & ~q for p, q in zip(self._rows2, drop._rows2)),
        )

    def is_semicomplete(self) -> bool:
        """Every cross pair is joined by an arc in at least one direction."""
        full = (1 << self._a) - 1
        cols2 = _transpose(self._rows2, self._a)
        return all((r | c) == full for r, c in zip(self._rows1, cols2))

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BalancedBipartiteDigraph):
            return NotImplemented
        return self._a == other._a and self._rows1 == other._rows1 and self._rows2 == other._rows2

    def __hash__(self) -> int:
        return hash((self._a, self._rows1, self._rows2))

    def __repr__(self) -> str:
        return f"BalancedBipartiteDigraph(a={self._a}, code={self.code:#x})"


def _check_order(a: int) -> int:
    if not isinstance(a, int) or isinstance(a, bool) or a < 1:
        raise InvalidInputError(f"a must be a positive integer, got {a!r}")
    return a


def _as_ref(v: VertexRef | str) -> VertexRef:
    if isinstance(v, VertexRef):
        return v
    if isinstance(v, str):
        return VertexRef.parse(v)
    raise InvalidInputError(f"not a vertex: {v!r}")


def _check_ref(a: int, v: VertexRef) -> None:
    if not isinstance(v.side, Side) or not 0 <= v.index < a:
        raise InvalidInputError(f"vertex {v} is not valid for a={a}")


# -- queries ----------------------------------------------------------------


def degree(D: BalancedBipartiteDigraph, v: VertexRef | str) -> Degree:
    v = _as_ref(v)
    _check_ref(D.a, v)
    f = v.flat(D.a)
    out_d = D.out_masks[f].bit_count()
    in_d = D.in_masks[f].bit_count()
    return Degree(out_d, in_d, out_d + in_d)


def neighborhood(
    D: BalancedBipartiteDigraph, S: Iterable[VertexRef | str], direction: Direction = Direction.OUT
) -> frozenset[VertexRef]:
    """N+(S) or N-(S); all of ``S`` must lie on one side."""
    refs = [_as_ref(v) for v in S]
    if not refs:
        return frozenset()
    for v in refs:
        _check_ref(D.a, v)
    if len({v.side for v in refs}) > 1:
        raise InvalidInputError("neighborhood set mixes both partite sets")
    masks = D.out_masks if direction is Direction.OUT else D.in_masks
    acc = 0
    for v in refs:
        acc |= masks[v.flat(D.a)]
    return frozenset(vertex_from_flat(D.a, w) for w in _bits(acc))


def pairs(D: BalancedBipartiteDigraph, kind: PairKind) -> list[VertexPair]:
    """Unordered dominating (common out-neighbour) or dominated (common
    in-neighbour) pairs, each listed once in lexicographic flat order."""
    if kind is PairKind.DOMINATING:
        masks = D.out_masks
    elif kind is PairKind.DOMINATED:
        masks = D.in_masks
    else:
        raise InvalidInputError(f"pairs() takes DOMINATING or DOMINATED, not {kind}")
    a = D.a
    found = []
    for lo, hi in ((0, a), (a, 2 * a)):
        for u in range(lo, hi):
            mu = masks[u]
            if not mu:
                continue
            for v in range(u + 1, hi):
                if mu & masks[v]:
                    found.append(VertexPair(vertex_from_flat(a, u), vertex_from_flat(a, v), kind))
    return found


def _closure(masks: Sequence[int], start: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_strong(D: BalancedBipartiteDigraph) -> bool:
    """Forward and backward reachability from x_0 both cover every vertex."""
    full = (1 << D.order) - 1
    out = D.out_masks
    # cheap rejection: a source or sink vertex
    if not all(out) or not all(D.in_masks):
        return False
    return _closure(out, 0) == full and _closure(D.in_masks, 0) == full


@dataclass(frozen=True)
class Cycle:
    """Directed cycle as a vertex sequence, rotated to start at its smallest x."""

    vertices: tuple[VertexRef, ...]

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 2 or len(vs) % 2:
            raise InvalidInputError("a bipartite cycle has even length >= 2")
        if len(set(vs)) != len(vs):
            raise InvalidInputError("cycle repeats a vertex")
        for p, q in zip(vs, vs[1:] + vs[:1]):
            if p.side is q.side:
                raise InvalidInputError("cycle does not alternate sides")
        start = min((i for i, v in enumerate(vs) if v.side is Side.V1), key=lambda i: vs[i].index)
        object.__setattr__(self, "vertices", tuple(vs[start:] + vs[:start]))

    @classmethod
    def from_flat(cls, a: int, seq: Sequence[int]) -> Cycle:
        return cls(tuple(vertex_from_flat(a, v) for v in seq))

    @classmethod
    def parse(cls, text: str) -> Cycle:
        return cls(tuple(VertexRef.parse(t) for t in text.split()))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))

    def arcs(self) -> list[tuple[VertexRef, VertexRef]]:
        vs = self.vertices
        return list(zip(vs, vs[1:] + vs[:1]))

    def is_valid_in(self, D: BalancedBipartiteDigraph) -> bool:
        try:
            return all(D.has_arc(p, q) for p, q in self.arcs())
        except InvalidInputError:
            return False
