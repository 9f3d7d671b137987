"""Hamiltonicity tools for balanced bipartite digraphs."""

from .catalog import ExceptionName, build_exception, is_isomorphic, match_exception
from .conditions import (
    ConditionReport,
    satisfies_Bk,
    satisfies_dom_pairs_3a,
    satisfies_nonadjacent_3a,
    satisfies_sharp_premise,
)
from .core import (
    BalancedBipartiteDigraph,
    Cycle,
    Degree,
    Direction,
    PairKind,
    Side,
    VertexPair,
    VertexRef,
    degree,
    is_strong,
    neighborhood,
    pairs,
)
from .errors import BBDError, CapacityError, InvalidInputError, ParseError
from .factors import CycleFactor, MatchDirection, Matching, cycle_factor, hall_violation, perfect_matching
from .formats import parse_bbd, render_bbd
from .ham import (
    check_merge_bound,
    has_cycle_at_least,
    is_hamiltonian,
    is_hamiltonian_bruteforce,
    longest_cycle,
)
from .search import (
    Exhaustive,
    ExplorationReport,
    RandomMode,
    TheoremId,
    VerificationReport,
    enumerate_all,
    explore_problem1,
    random_digraph,
    verify,
)

__version__ = "0.1.0"
