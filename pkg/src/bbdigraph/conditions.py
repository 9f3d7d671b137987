"""Degree-condition predicates on balanced bipartite digraphs.

Every predicate returns a :class:`ConditionReport`.  When the condition fails
the report carries the first violating pair in lexicographic flat-index order
together with the degrees of its two members.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional

from .core import BalancedBipartiteDigraph, PairKind, VertexPair, vertex_from_flat
from .errors import InvalidInputError

SHARP = "sharp"
NONADJACENT_3A = "nonadjacent-3a"
DOM_PAIRS_3A = "dompairs-3a"


def bk_id(k: int) -> str:
    return f"B{k}"


@dataclass(frozen=True)
class Witness:
    pair: VertexPair
    degrees: tuple[int, int]


@dataclass(frozen=True)
class ConditionReport:
    condition_id: str
    holds: bool
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a report has a witness exactly when the condition fails")

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            p = self.witness.pair
            w = {
                "kind": p.kind.value,
                "vertices": [str(p.u), str(p.v)],
                "degrees": list(self.witness.degrees),
            }
        return {"condition_id": self.condition_id, "holds": self.holds, "witness": w}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _require_order(D: BalancedBipartiteDigraph) -> None:
    if D.a < 2:
        raise InvalidInputError(f"degree conditions need a >= 2, got a={D.a}")


def _scan(masks, a: int, ok: Callable[[int, int], bool]) -> Optional[tuple[int, int]]:
    """First same-side pair (u, v) sharing a neighbour in ``masks`` with not ok(u, v)."""
    for lo, hi in ((0, a), (a, 2 * a)):
        for u in range(lo, hi):
            mu = masks[u]
            if not mu:
                continue
            for v in range(u + 1, hi):
                if mu & masks[v] and not ok(u, v):
                    return u, v
    return None


def _report(D, cid: str, hit: Optional[tuple[int, int]], kind: PairKind) -> ConditionReport:
    if hit is None:
        return ConditionReport(cid, True)
    u, v = hit
    d = D.degrees
    pair = VertexPair(vertex_from_flat(D.a, u), vertex_from_flat(D.a, v), kind)
    return ConditionReport(cid, False, Witness(pair, (d[u], d[v])))


def _asymmetric(D: BalancedBipartiteDigraph, high: int, low: int, cid: str) -> ConditionReport:
    _require_order(D)
    d = D.degrees

    def ok(u: int, v: int) -> bool:
        du, dv = d[u], d[v]
        return (du >= high and dv >= low) or (dv >= high and du >= low)

    return _report(D, cid, _scan(D.out_masks, D.a, ok), PairKind.DOMINATING)


def satisfies_Bk(D: BalancedBipartiteDigraph, k: int) -> ConditionReport:
    """Every dominating pair has one degree >= 2a-k and the other >= a+k.

    Evaluated literally for any k >= 0; once a+k > 2a the bound can only hold
    vacuously, i.e. when ``D`` has no dominating pair.
    """
    if not isinstance(k, int) or k < 0:
        raise InvalidInputError(f"k must be a non-negative integer, got {k!r}")
    return _asymmetric(D, 2 * D.a - k, D.a + k, bk_id(k))


def satisfies_sharp_premise(D: BalancedBipartiteDigraph) -> ConditionReport:
    """Every dominating pair has one degree >= 2a-2 and the other >= a+1."""
    return _asymmetric(D, 2 * D.a - 2, D.a + 1, SHARP)


def satisfies_nonadjacent_3a(D: BalancedBipartiteDigraph) -> ConditionReport:
    """d(u) + d(v) >= 3a for all distinct non-adjacent u, v (same-side pairs included)."""
    _require_order(D)
    a = D.a
    n = 2 * a
    d = D.degrees
    out, inn = D.out_masks, D.in_masks
    bound = 3 * a
    for u in range(n):
        adj = out[u] | inn[u]
        for v in range(u + 1, n):
            if not adj >> v & 1 and d[u] + d[v] < bound:
                return _report(D, NONADJACENT_3A, (u, v), PairKind.NON_ADJACENT)
    return ConditionReport(NONADJACENT_3A, True)


def satisfies_dom_pairs_3a(D: BalancedBipartiteDigraph) -> ConditionReport:
    """d(x) + d(y) >= 3a for every dominating and every dominated pair."""
    _require_order(D)
    d = D.degrees
    bound = 3 * D.a

    def ok(u: int, v: int) -> bool:
        return d[u] + d[v] >= bound

    hit = _scan(D.out_masks, D.a, ok)
    if hit is not None:
        return _report(D, DOM_PAIRS_3A, hit, PairKind.DOMINATING)
    return _report(D, DOM_PAIRS_3A, _scan(D.in_masks, D.a, ok), PairKind.DOMINATED)


def evaluate(D: BalancedBipartiteDigraph, condition_id: str) -> ConditionReport:
    """Dispatch by condition id: ``B<k>``, ``sharp``, ``nonadjacent-3a`` or ``dompairs-3a``."""
    cid = condition_id.strip()
    if cid[:1] in ("B", "b") and cid[1:].isdigit():
        return satisfies_Bk(D, int(cid[1:]))
    table = {
        SHARP: satisfies_sharp_premise,
        NONADJACENT_3A: satisfies_nonadjacent_3a,
        DOM_PAIRS_3A: satisfies_dom_pairs_3a,
    }
    try:
        fn = table[cid.lower()]
    except KeyError:
        raise InvalidInputError(f"unknown condition {condition_id!r}") from None
    return fn(D)


CONDITION_IDS = ("B<k>", SHARP, NONADJACENT_3A, DOM_PAIRS_3A)
