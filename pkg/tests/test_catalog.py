import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbdigraph import (
    BalancedBipartiteDigraph,
    ExceptionName,
    build_exception,
    degree,
    is_hamiltonian,
    is_isomorphic,
    is_strong,
    match_exception,
    satisfies_Bk,
    satisfies_sharp_premise,
)
from bbdigraph.catalog import apply_mapping
from bbdigraph.core import Side, VertexRef
from bbdigraph.search import enumerate_all

from helpers import degree_oracle, digraphs, permutations_for, strong_oracle


def iso_bruteforce(D1, D2):
    """Try every side-preserving and side-swapping bijection explicitly."""
    if D1.a != D2.a:
        return False
    a = D1.a
    arcs2 = {(str(u), str(v)) for u, v in D2.arcs()}
    arcs1 = [(str(u), str(v)) for u, v in D1.arcs()]
    if len(arcs1) != len(arcs2):
        return False
    for p1 in itertools.permutations(range(a)):
        for p2 in itertools.permutations(range(a)):
            for swap in (False, True):
                sx, sy = ("y", "x") if swap else ("x", "y")
                f = {f"x{i}": f"{sx}{p1[i]}" for i in range(a)}
                f.update({f"y{j}": f"{sy}{p2[j]}" for j in range(a)})
                if all((f[u], f[v]) in arcs2 for u, v in arcs1):
                    return True
    return False


def side_degree_sequences(D):
    seqs = []
    for side in "xy":
        seqs.append(sorted(degree_oracle(D, f"{side}{i}")[:2] for i in range(D.a)))
    return seqs


def degree_filter(D1, D2):
    s1, s2 = side_degree_sequences(D1), side_degree_sequences(D2)
    return s1 == s2 or s1 == s2[::-1]


@pytest.mark.parametrize(
    "name, a, arcs", [("H1", 2, 6), ("H2", 3, 13), ("H2X", 3, 14), ("H3", 3, 12)]
)
def test_sizes(name, a, arcs):
    D = build_exception(name)
    assert (D.a, D.arc_count) == (a, arcs)


@pytest.mark.parametrize("name", list(ExceptionName))
def test_sharpness_triple(name):
    D = build_exception(name)
    assert is_strong(D) and strong_oracle(D)
    assert satisfies_sharp_premise(D).holds
    assert is_hamiltonian(D) is None
    assert not satisfies_Bk(D, 1).holds


def test_h2_degrees(H2):
    assert degree(H2, VertexRef.parse("x1")).total == 4
    assert [degree(H2, v).total for v in H2.vertices()] == [4, 4, 5, 5, 4, 4]


def test_h3_regular(H3):
    assert all(degree(H3, v).total == 4 for v in H3.vertices())


def test_h1_degrees(H1):
    assert [degree(H1, v).total for v in H1.vertices()] == [2, 4, 4, 2]


def test_string_names():
    assert build_exception("H2X") == build_exception(ExceptionName.H2X)


class TestIsomorphism:
    @pytest.mark.parametrize("name", list(ExceptionName))
    def test_reflexive(self, name):
        D = build_exception(name)
        m = is_isomorphic(D, D)
        assert m is not None and apply_mapping(D, m) == D

    def test_h2_vs_h2x(self, H2, H2X):
        assert is_isomorphic(H2, H2X) is None

    def test_h1_vs_h3(self, H1, H3):
        assert is_isomorphic(H1, H3) is None

    @pytest.mark.parametrize("name", list(ExceptionName))
    def test_relabel_and_mirror(self, name):
        D = build_exception(name)
        for p1 in itertools.permutations(range(D.a)):
            for p2 in itertools.permutations(range(D.a)):
                for E in (D.relabel(p1, p2), D.relabel(p1, p2).swap_sides()):
                    m = is_isomorphic(D, E)
                    assert m is not None
                    assert apply_mapping(D, m) == E
                    assert match_exception(E) is ExceptionName(name)

    @given(digraphs(min_a=2, max_a=4), st.data())
    @settings(max_examples=150)
    def test_invariant_under_side_permutations(self, D, data):
        p1, p2 = data.draw(permutations_for(D.a))
        E = D.relabel(p1, p2)
        if data.draw(st.booleans()):
            E = E.swap_sides()
        m12, m21 = is_isomorphic(D, E), is_isomorphic(E, D)
        assert m12 is not None and m21 is not None
        assert apply_mapping(D, m12) == E and apply_mapping(E, m21) == D

    def test_mirror_needs_side_swap(self):
        # x0 has both out-arcs; in the mirror only y's have out-arcs
        D = BalancedBipartiteDigraph.from_arcs(2, [("x0", "y0"), ("x0", "y1")])
        E = D.swap_sides()
        m = is_isomorphic(D, E)
        assert set(m.values()) == set(D.vertices())
        assert all(m[v].side is Side.V2 for v in D.vertices()[:2])
        assert apply_mapping(D, m) == E

    def test_against_bruteforce_a2(self):
        # all pairs of strong a=2 digraphs plus a slice of the rest
        graphs = list(enumerate_all(2))
        pool = [D for D in graphs if is_strong(D)] + graphs[::17]
        for D1, D2 in itertools.product(pool, repeat=2):
            got = is_isomorphic(D1, D2)
            assert (got is not None) == iso_bruteforce(D1, D2)
            if got is not None:
                assert apply_mapping(D1, got) == D2
                assert degree_filter(D1, D2)

    @given(digraphs(min_a=3, max_a=3), digraphs(min_a=3, max_a=3))
    @settings(max_examples=150)
    def test_against_bruteforce_a3(self, D1, D2):
        assert (is_isomorphic(D1, D2) is not None) == iso_bruteforce(D1, D2)

    @given(digraphs(min_a=2, max_a=4), digraphs(min_a=2, max_a=4))
    def test_degree_filter_agrees(self, D1, D2):
        if is_isomorphic(D1, D2) is not None:
            assert degree_filter(D1, D2)
        if not degree_filter(D1, D2):
            assert is_isomorphic(D1, D2) is None


class TestMatchException:
    @pytest.mark.parametrize("name", list(ExceptionName))
    def test_self_match(self, name):
        assert match_exception(build_exception(name)) is ExceptionName(name)

    def test_relabelled_h3(self, H3):
        # swap x0 <-> x1 and y0 <-> y1
        # this swap is an automorphism of H3
        E = H3.relabel([1, 0, 2], [1, 0, 2])
        assert E == H3
        assert match_exception(E) is ExceptionName.H3
        F = H3.relabel([2, 0, 1], [0, 2, 1])
        assert F != H3
        assert match_exception(F) is ExceptionName.H3

    def test_complete(self, complete3):
        assert match_exception(complete3) is None

    def test_other_order(self):
        assert match_exception(BalancedBipartiteDigraph.complete(4)) is None

    def test_sharp_non_hamiltonian_a3_all_match(self):
        # every strong, sharp, non-Hamiltonian digraph at a=3 is one of the catalog
        for D in enumerate_all(3):
            if is_strong(D) and satisfies_sharp_premise(D).holds and is_hamiltonian(D) is None:
                assert match_exception(D) is not None
