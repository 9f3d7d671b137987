"""Exact Hamiltonicity and longest cycles by subset dynamic programming.

States are (visited mask, last vertex) over the 2a flat vertex indices; for a
fixed visited mask all feasible last vertices are packed into one bitmask, so
a DP layer is a dict ``mask -> lasts``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import BalancedBipartiteDigraph, Cycle, VertexRef, _bits, vertex_from_flat
from .errors import CapacityError, InvalidInputError

MAX_DP_ORDER = 12
MAX_BRUTEFORCE_ORDER = 6


def _check_dp_capacity(D: BalancedBipartiteDigraph) -> None:
    if D.a > MAX_DP_ORDER:
        raise CapacityError(f"exact cycle search is limited to a <= {MAX_DP_ORDER}, got a={D.a}")


def _layers(out: Sequence[int], s: int, allowed: int):
    """Yield successive DP layers of simple paths starting at ``s`` inside ``allowed``."""
    layer = {1 << s: 1 << s}
    while layer:
        yield layer
        nxt: dict[int, int] = {}
        for mask, lasts in layer.items():
            free = allowed & ~mask
            for v in _bits(lasts):
                for w in _bits(out[v] & free):
                    m = mask | (1 << w)
                    nxt[m] = nxt.get(m, 0) | (1 << w)
        layer = nxt


def _closing_lengths(out: Sequence[int], s: int, allowed: int) -> int:
    """Bitmask of the cycle lengths through ``s`` that use only ``allowed``."""
    lengths = 0
    into_s = 0
    for v, o in enumerate(out):
        if o >> s & 1:
            into_s |= 1 << v
    for size, layer in enumerate(_layers(out, s, allowed), start=1):
        if size < 2:
            continue
        for lasts in layer.values():
            if lasts & into_s:
                lengths |= 1 << size
                break
    return lengths


def _lex_min_cycle(out: Sequence[int], s: int, allowed: int, length: int) -> Optional[list[int]]:
    """Lexicographically smallest cycle s, v1, ..., v_{length-1} within ``allowed``."""
    memo: dict[tuple[int, int], bool] = {}

    def good(mask: int, last: int, size: int) -> bool:
        key = (mask, last)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if size == length:
            res = bool(out[last] >> s & 1)
        else:
            res = any(good(mask | (1 << w), w, size + 1) for w in _bits(out[last] & allowed & ~mask))
        memo[key] = res
        return res

    if not good(1 << s, s, 1):
        return None
    seq = [s]
    mask = 1 << s
    while len(seq) < length:
        last = seq[-1]
        for w in _bits(out[last] & allowed & ~mask):
            if good(mask | (1 << w), w, len(seq) + 1):
                seq.append(w)
                mask |= 1 << w
                break
    return seq


def is_hamiltonian(D: BalancedBipartiteDigraph) -> Optional[Cycle]:
    """A Hamiltonian cycle of ``D`` or None.

    Paths are grown from x_0 only, since every Hamiltonian cycle passes through
    it.  The returned cycle is the lexicographically smallest one.
    """
    _check_dp_capacity(D)
    out = D.out_masks
    if not all(out) or not all(D.in_masks):
        return None
    n = D.order
    full = (1 << n) - 1
    final = None
    for final in _layers(out, 0, full):
        pass
    lasts = final.get(full, 0) if final else 0
    if not lasts & D.in_masks[0]:
        return None
    seq = _lex_min_cycle(out, 0, full, n)
    return Cycle.from_flat(D.a, seq)


def longest_cycle_length(D: BalancedBipartiteDigraph) -> int:
    """Length of a longest cycle (0 if ``D`` is acyclic)."""
    _check_dp_capacity(D)
    out = D.out_masks
    n = D.order
    full = (1 << n) - 1
    best = 0
    for s in range(D.a):
        # every cycle is found from its smallest x; later starts can only be shorter
        if 2 * (D.a - s) <= best:
            break
        allowed = full & ~((1 << s) - 1)
        lengths = _closing_lengths(out, s, allowed)
        if lengths:
            best = max(best, lengths.bit_length() - 1)
            if best == n:
                break
    return best


def longest_cycle(D: BalancedBipartiteDigraph) -> Optional[Cycle]:
    """A longest cycle; ties go to the lexicographically smallest vertex sequence."""
    best = longest_cycle_length(D)
    if best == 0:
        return None
    out = D.out_masks
    full = (1 << D.order) - 1
    for s in range(D.a):
        seq = _lex_min_cycle(out, s, full & ~((1 << s) - 1), best)
        if seq is not None:
            return Cycle.from_flat(D.a, seq)
    raise AssertionError("longest cycle length found but no cycle reconstructed")


def has_cycle_at_least(D: BalancedBipartiteDigraph, L: int) -> bool:
    if not isinstance(L, int) or L < 2 or L % 2:
        raise InvalidInputError(f"L must be an even integer >= 2, got {L!r}")
    return longest_cycle_length(D) >= L


@dataclass(frozen=True)
class MergeViolation:
    tail: VertexRef
    head: VertexRef
    in_from_cycle: int
    out_to_cycle: int
    half_length: int
    # a cycle vertex c with c -> tail and head -> successor(c), if any
    merge_point: Optional[VertexRef] = None


@dataclass(frozen=True)
class MergeBoundResult:
    passed: bool
    cycle: Optional[Cycle]
    arcs_checked: int
    violation: Optional[MergeViolation] = None

    def __bool__(self) -> bool:
        return self.passed


def check_merge_bound(D: BalancedBipartiteDigraph) -> MergeBoundResult:
    """Check the longest-cycle merge bound on one canonical longest cycle C.

    For every arc u -> v with both ends off C: no cycle vertex c has both
    c -> u and v -> c+, hence d-_C(u) + d+_C(v) <= |C|/2.  Arcs with u on either
    side are checked; relabelling C's starting vertex makes both cases the
    same statement.  A failure means ``longest_cycle`` returned a cycle that
    is not longest.
    """
    C = longest_cycle(D)
    if C is None:
        return MergeBoundResult(True, None, 0)
    a = D.a
    seq = [v.flat(a) for v in C]
    m = len(seq) // 2
    on_c = sum(1 << v for v in seq)
    succ = {p: q for p, q in zip(seq, seq[1:] + seq[:1])}
    out, inn = D.out_masks, D.in_masks
    checked = 0
    for u in range(D.order):
        if on_c >> u & 1:
            continue
        for v in _bits(out[u] & ~on_c):
            checked += 1
            preds = inn[u] & on_c
            merge_point = next((c for c in _bits(preds) if out[v] >> succ[c] & 1), None)
            n_in = preds.bit_count()
            n_out = (out[v] & on_c).bit_count()
            if merge_point is not None or n_in + n_out > m:
                return MergeBoundResult(
                    False,
                    C,
                    checked,
                    MergeViolation(
                        vertex_from_flat(a, u),
                        vertex_from_flat(a, v),
                        n_in,
                        n_out,
                        m,
                        None if merge_point is None else vertex_from_flat(a, merge_point),
                    ),
                )
    return MergeBoundResult(True, C, checked)


@dataclass(frozen=True)
class Bypass:
    """A path u_1..u_s (s >= 3) meeting C only in its two distinct ends.

    ``gap`` is the number of arcs on C from u_1 forward to u_s.
    """

    path: tuple[VertexRef, ...]
    gap: int

    @classmethod
    def on(cls, D: BalancedBipartiteDigraph, C: Cycle, path: Sequence[VertexRef]) -> Bypass:
        path = tuple(path)
        cyc = list(C)
        if len(path) < 3:
            raise InvalidInputError("a bypass has at least 3 vertices")
        if path[0] == path[-1] or path[0] not in cyc or path[-1] not in cyc:
            raise InvalidInputError("bypass ends must be distinct vertices of the cycle")
        if len(set(path)) != len(path) or any(v in cyc for v in path[1:-1]):
            raise InvalidInputError("bypass interior must avoid the cycle")
        if not all(D.has_arc(p, q) for p, q in zip(path, path[1:])):
            raise InvalidInputError("bypass is not a path of the digraph")
        gap = (cyc.index(path[-1]) - cyc.index(path[0])) % len(cyc)
        return cls(path, gap)


def is_hamiltonian_bruteforce(D: BalancedBipartiteDigraph) -> Optional[Cycle]:
    """Reference check by trying every interleaving of V1 and V2 orders.

    x_0 is pinned first, the other x's and all y's are permuted.  Meant as an
    independent oracle for small digraphs only.
    """
    a = D.a
    if a > MAX_BRUTEFORCE_ORDER:
        raise CapacityError(f"brute force is limited to a <= {MAX_BRUTEFORCE_ORDER}, got a={a}")
    r1, r2 = D.rows1, D.rows2
    for xs in itertools.permutations(range(1, a)):
        xs = (0, *xs)
        for ys in itertools.permutations(range(a)):
            if all(
                r1[xs[k]] >> ys[k] & 1 and r2[ys[k]] >> xs[(k + 1) % a] & 1 for k in range(a)
            ):
                seq = [v for k in range(a) for v in (xs[k], a + ys[k])]
                return Cycle.from_flat(a, seq)
    return None
