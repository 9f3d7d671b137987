"""Enumeration, random generation and theorem verification sweeps.

Work is sharded by residue: shard ``r`` of ``W`` handles arc codes (exhaustive
mode) or sample indices (random mode) congruent to ``r`` mod ``W``.  Every
random sample draws from its own generator seeded by ``(seed, index)``, so the
merged report does not depend on the worker count.
"""

from __future__ import annotations

import enum
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from .catalog import ExceptionName, match_exception
from .conditions import (
    satisfies_Bk,
    satisfies_dom_pairs_3a,
    satisfies_nonadjacent_3a,
    satisfies_sharp_premise,
)
from .core import BalancedBipartiteDigraph, is_strong
from .errors import CapacityError, InvalidInputError
from .factors import has_cycle_factor
from .formats import parse_bbd, render_bbd
from .ham import MAX_DP_ORDER, has_cycle_at_least, is_hamiltonian

SCHEMA_VERSION = 1
MAX_EXHAUSTIVE_ORDER = 3
DEFAULT_PROBABILITIES = (0.3, 0.5, 0.7, 0.9)

Probability = Union[float, Fraction]


# -- generation -------------------------------------------------------------


def enumerate_all(a: int, shard: int = 0, num_shards: int = 1) -> Iterator[BalancedBipartiteDigraph]:
    """Every digraph of order 2a, ordered by arc code (optionally one residue class)."""
    if a > MAX_EXHAUSTIVE_ORDER:
        raise CapacityError(
            f"exhaustive enumeration is limited to a <= {MAX_EXHAUSTIVE_ORDER} "
            f"(a={a} has 2^{2 * a * a} digraphs); use random mode"
        )
    if a < 1:
        raise InvalidInputError(f"a must be positive, got {a}")
    if not 0 <= shard < num_shards:
        raise InvalidInputError(f"shard {shard} out of range for {num_shards} shards")
    from_code = BalancedBipartiteDigraph.from_code
    for code in range(shard, 1 << (2 * a * a), num_shards):
        yield from_code(a, code)


def _check_probability(p: Probability) -> float:
    try:
        ok = 0 <= p <= 1
    except TypeError:
        ok = False
    if not ok:
        raise InvalidInputError(f"arc probability must lie in [0, 1], got {p!r}")
    return float(p)


def random_digraph(a: int, arc_probability: Probability, seed) -> BalancedBipartiteDigraph:
    """Each of the 2a^2 arcs present independently with the given probability.

    ``seed`` is anything ``numpy.random.default_rng`` accepts (an int or a
    sequence of ints).
    """
    if a < 2:
        raise InvalidInputError(f"random digraphs need a >= 2, got {a}")
    p = _check_probability(arc_probability)
    rng = np.random.default_rng(seed)
    bits = rng.random(2 * a * a) < p
    code = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    return BalancedBipartiteDigraph.from_code(a, code)


# -- theorem table ------------------------------------------------------------


class TheoremId(enum.Enum):
    MAIN = "main"  # B_1 => hamiltonian
    SHARP = "sharp"  # (2a-2, a+1) => hamiltonian or one of the exceptions
    ADAMUS3A = "adamus3a"  # non-adjacent degree sums >= 3a => hamiltonian
    PROP1 = "prop1"  # dominating/dominated degree sums >= 3a => cycle factor
    LEMMA1 = "lemma1"  # (2a-2, a+1), not H2 => both perfect matchings
    LEMMA3 = "lemma3"  # (2a-2, a+1), a >= 3 => cycle of length >= 4


def _not_h2(D: BalancedBipartiteDigraph) -> bool:
    return match_exception(D) not in (ExceptionName.H2, ExceptionName.H2X)


def _sharp_conclusion(D: BalancedBipartiteDigraph) -> bool:
    return is_hamiltonian(D) is not None or match_exception(D) is not None


@dataclass(frozen=True)
class _Theorem:
    premise: Callable[[BalancedBipartiteDigraph], bool]
    conclusion: Callable[[BalancedBipartiteDigraph], bool]
    # extra premise that is counted separately (checked <= premise_count)
    exclusion: Optional[Callable[[BalancedBipartiteDigraph], bool]] = None
    min_a: int = 2


THEOREMS: dict[TheoremId, _Theorem] = {
    TheoremId.MAIN: _Theorem(lambda D: satisfies_Bk(D, 1).holds, lambda D: is_hamiltonian(D) is not None),
    TheoremId.SHARP: _Theorem(lambda D: satisfies_sharp_premise(D).holds, _sharp_conclusion),
    TheoremId.ADAMUS3A: _Theorem(
        lambda D: satisfies_nonadjacent_3a(D).holds, lambda D: is_hamiltonian(D) is not None
    ),
    TheoremId.PROP1: _Theorem(lambda D: satisfies_dom_pairs_3a(D).holds, has_cycle_factor),
    TheoremId.LEMMA1: _Theorem(lambda D: satisfies_sharp_premise(D).holds, has_cycle_factor, _not_h2),
    TheoremId.LEMMA3: _Theorem(
        lambda D: satisfies_sharp_premise(D).holds, lambda D: has_cycle_at_least(D, 4), min_a=3
    ),
}


def is_counterexample(theorem_id: TheoremId, D: BalancedBipartiteDigraph) -> bool:
    """Strong, premise holds, conclusion fails."""
    th = THEOREMS[TheoremId(theorem_id)]
    if not is_strong(D) or not th.premise(D):
        return False
    if th.exclusion is not None and not th.exclusion(D):
        return False
    return not th.conclusion(D)


def reverify(theorem_id: TheoremId, bbd_text: str) -> bool:
    """Re-check a serialized counterexample from scratch."""
    return is_counterexample(theorem_id, parse_bbd(bbd_text))


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Exhaustive:
    def to_dict(self) -> dict:
        return {"kind": "exhaustive"}


@dataclass(frozen=True)
class RandomMode:
    samples: int
    seed: int
    probabilities: tuple[float, ...] = DEFAULT_PROBABILITIES

    def __post_init__(self):
        if self.samples < 0:
            raise InvalidInputError("samples must be non-negative")
        if not self.probabilities:
            raise InvalidInputError("need at least one arc probability")
        for p in self.probabilities:
            _check_probability(p)

    def to_dict(self) -> dict:
        return {
            "kind": "random",
            "samples": self.samples,
            "seed": self.seed,
            "probabilities": [float(p) for p in self.probabilities],
        }


Mode = Union[Exhaustive, RandomMode]


def _mode_from_dict(d: dict) -> Mode:
    if d["kind"] == "exhaustive":
        return Exhaustive()
    return RandomMode(d["samples"], d["seed"], tuple(d["probabilities"]))


@dataclass
class VerificationReport:
    theorem_id: TheoremId
    a: int
    mode: Mode
    generated: int = 0
    strong_count: int = 0
    premise_count: int = 0
    checked: int = 0
    counterexamples: list[str] = field(default_factory=list)
    # non-Hamiltonian premise-satisfiers by catalog name (SHARP only)
    exception_matches: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def merge(self, other: VerificationReport) -> VerificationReport:
        matches = dict(self.exception_matches)
        for k, v in other.exception_matches.items():
            matches[k] = matches.get(k, 0) + v
        return VerificationReport(
            self.theorem_id,
            self.a,
            self.mode,
            self.generated + other.generated,
            self.strong_count + other.strong_count,
            self.premise_count + other.premise_count,
            self.checked + other.checked,
            self.counterexamples + other.counterexamples,
            matches,
            max(self.elapsed, other.elapsed),
        )

    def to_dict(self, include_elapsed: bool = False) -> dict:
        d = {
            "schema": SCHEMA_VERSION,
            "report": "verification",
            "theorem_id": self.theorem_id.value,
            "a": self.a,
            "mode": self.mode.to_dict(),
            "generated": self.generated,
            "strong_count": self.strong_count,
            "premise_count": self.premise_count,
            "checked": self.checked,
            "counterexamples": list(self.counterexamples),
            "exception_matches": dict(sorted(self.exception_matches.items())),
        }
        if include_elapsed:
            d["elapsed"] = round(self.elapsed, 6)
        return d

    def to_json(self, include_elapsed: bool = False) -> str:
        return json.dumps(self.to_dict(include_elapsed), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        return cls(
            TheoremId(d["theorem_id"]),
            d["a"],
            _mode_from_dict(d["mode"]),
            d["generated"],
            d["strong_count"],
            d["premise_count"],
            d["checked"],
            list(d["counterexamples"]),
            dict(d.get("exception_matches", {})),
            d.get("elapsed", 0.0),
        )


def _sort_bbd(texts: Sequence[str]) -> list[str]:
    return sorted(texts, key=lambda t: parse_bbd(t).code)


def _sample_stream(a: int, mode: RandomMode, shard: int, num_shards: int) -> Iterator[BalancedBipartiteDigraph]:
    probs = mode.probabilities
    for i in range(shard, mode.samples, num_shards):
        yield random_digraph(a, probs[i % len(probs)], (mode.seed, i))


def _verify_shard(theorem_id: TheoremId, a: int, mode: Mode, shard: int, num_shards: int) -> VerificationReport:
    th = THEOREMS[theorem_id]
    rep = VerificationReport(theorem_id, a, mode)
    if isinstance(mode, Exhaustive):
        stream = enumerate_all(a, shard, num_shards)
    else:
        stream = _sample_stream(a, mode, shard, num_shards)
    sharp = theorem_id is TheoremId.SHARP
    for D in stream:
        rep.generated += 1
        if not is_strong(D):
            continue
        rep.strong_count += 1
        if not th.premise(D):
            continue
        rep.premise_count += 1
        if th.exclusion is not None and not th.exclusion(D):
            continue
        rep.checked += 1
        if sharp:
            if is_hamiltonian(D) is not None:
                continue
            name = match_exception(D)
            if name is not None:
                rep.exception_matches[name.value] = rep.exception_matches.get(name.value, 0) + 1
                continue
            rep.counterexamples.append(render_bbd(D))
        elif not th.conclusion(D):
            rep.counterexamples.append(render_bbd(D))
    return rep


def _run_sharded(fn, args: tuple, workers: int) -> list:
    if workers <= 1:
        return [fn(*args, 0, 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args, r, workers) for r in range(workers)]
        return [f.result() for f in futures]


def verify(theorem_id: TheoremId | str, a: int, mode: Mode, workers: int = 1) -> VerificationReport:
    """Filter generated digraphs by strong + premise and check the conclusion.

    Counterexamples are stored in BBD text form, sorted by arc code.
    """
    theorem_id = TheoremId(theorem_id)
    th = THEOREMS[theorem_id]
    if a < th.min_a:
        raise InvalidInputError(f"{theorem_id.value} needs a >= {th.min_a}, got a={a}")
    if isinstance(mode, Exhaustive):
        if a > MAX_EXHAUSTIVE_ORDER:
            raise CapacityError(f"exhaustive mode is limited to a <= {MAX_EXHAUSTIVE_ORDER}; use random mode")
    elif isinstance(mode, RandomMode):
        if a > MAX_DP_ORDER:
            raise CapacityError(f"random mode is limited to a <= {MAX_DP_ORDER}")
    else:
        raise InvalidInputError(f"unknown mode {mode!r}")
    if workers < 1:
        raise InvalidInputError("workers must be >= 1")
    start = time.perf_counter()
    parts = _run_sharded(_verify_shard, (theorem_id, a, mode), workers)
    rep = parts[0]
    for p in parts[1:]:
        rep = rep.merge(p)
    rep.counterexamples = _sort_bbd(rep.counterexamples)
    rep.elapsed = time.perf_counter() - start
    return rep


# -- open-problem explorer -----------------------------------------------------

PROFILES = ("mixed", "sweep", "biased")


def thin_out(D: BalancedBipartiteDigraph, k: int, rng: np.random.Generator) -> BalancedBipartiteDigraph:
    """Delete arcs in random order, keeping each deletion that leaves ``D``
    strong and satisfying B_k."""
    a = D.a
    code = D.code
    for bit in rng.permutation(2 * a * a):
        bit = int(bit)
        if not code >> bit & 1:
            continue
        cand = BalancedBipartiteDigraph.from_code(a, code & ~(1 << bit))
        if is_strong(cand) and satisfies_Bk(cand, k).holds:
            code = cand.code
    return BalancedBipartiteDigraph.from_code(a, code)


@dataclass
class ExplorationReport:
    a: int
    k: int
    samples: int
    seed: int
    profile: str
    generated: int = 0
    strong_count: int = 0
    premise_count: int = 0
    found: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def merge(self, other: ExplorationReport) -> ExplorationReport:
        return ExplorationReport(
            self.a,
            self.k,
            self.samples,
            self.seed,
            self.profile,
            self.generated + other.generated,
            self.strong_count + other.strong_count,
            self.premise_count + other.premise_count,
            self.found + other.found,
            max(self.elapsed, other.elapsed),
        )

    def to_dict(self, include_elapsed: bool = False) -> dict:
        d = {
            "schema": SCHEMA_VERSION,
            "report": "exploration",
            "a": self.a,
            "k": self.k,
            "samples": self.samples,
            "seed": self.seed,
            "profile": self.profile,
            "generated": self.generated,
            "strong_count": self.strong_count,
            "premise_count": self.premise_count,
            "found": list(self.found),
        }
        if include_elapsed:
            d["elapsed"] = round(self.elapsed, 6)
        return d

    def to_json(self, include_elapsed: bool = False) -> str:
        return json.dumps(self.to_dict(include_elapsed), indent=2, sort_keys=True)


def is_problem1_candidate(D: BalancedBipartiteDigraph, k: int) -> bool:
    """Strong, satisfies B_k, and has no Hamiltonian cycle."""
    return is_strong(D) and satisfies_Bk(D, k).holds and is_hamiltonian(D) is None


def _explore_shard(a: int, k: int, samples: int, seed: int, profile: str, shard: int, num_shards: int):
    rep = ExplorationReport(a, k, samples, seed, profile)
    probs = DEFAULT_PROBABILITIES
    for i in range(shard, samples, num_shards):
        rng = np.random.default_rng((seed, i))
        biased = profile == "biased" or (profile == "mixed" and i % 2 == 1)
        if biased:
            D = thin_out(BalancedBipartiteDigraph.complete(a), k, rng)
        else:
            p = probs[(i // 2 if profile == "mixed" else i) % len(probs)]
            bits = rng.random(2 * a * a) < p
            D = BalancedBipartiteDigraph.from_code(
                a, int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
            )
        rep.generated += 1
        if not is_strong(D):
            continue
        rep.strong_count += 1
        if not satisfies_Bk(D, k).holds:
            continue
        rep.premise_count += 1
        if is_hamiltonian(D) is None:
            rep.found.append(render_bbd(D))
    return rep


def explore_problem1(
    a: int, k: int, samples: int, seed: int, profile: str = "mixed", workers: int = 1
) -> ExplorationReport:
    """Sample digraphs looking for strong, B_k, non-Hamiltonian ones.

    Profiles: ``sweep`` draws each arc with probability from the default grid,
    ``biased`` thins the complete digraph while B_k and strong connectivity
    survive, ``mixed`` alternates the two.  Nothing is concluded from the
    result either way.
    """
    if a < 4:
        raise InvalidInputError(f"the explorer needs a >= 4, got a={a}")
    if a > MAX_DP_ORDER:
        raise CapacityError(f"the explorer is limited to a <= {MAX_DP_ORDER}")
    if not 2 <= k <= a / 2:
        raise InvalidInputError(f"k must satisfy 2 <= k <= a/2, got k={k}, a={a}")
    if samples < 0:
        raise InvalidInputError("samples must be non-negative")
    if profile not in PROFILES:
        raise InvalidInputError(f"unknown profile {profile!r}; choose from {PROFILES}")
    if workers < 1:
        raise InvalidInputError("workers must be >= 1")
    start = time.perf_counter()
    parts = _run_sharded(_explore_shard, (a, k, samples, seed, profile), workers)
    rep = parts[0]
    for p in parts[1:]:
        rep = rep.merge(p)
    rep.found = _sort_bbd(rep.found)
    rep.elapsed = time.perf_counter() - start
    return rep
