import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbdigraph import (
    BalancedBipartiteDigraph,
    Degree,
    Direction,
    InvalidInputError,
    PairKind,
    VertexRef,
    degree,
    is_strong,
    neighborhood,
    pairs,
)
from bbdigraph.core import Cycle, Side, x, y

from helpers import degree_oracle, digraphs, pairs_oracle, strong_oracle


def names(refs):
    return {str(v) for v in refs}


def pair_names(ps):
    return {frozenset((str(p.u), str(p.v))) for p in ps}


class TestDegree:
    def test_h2_x2_has_degree_four(self, H2):
        # 1-based x2 is index 1
        assert degree(H2, x(1)).total == 4

    def test_complete(self, complete3):
        for v in complete3.vertices():
            assert degree(complete3, v) == Degree(3, 3, 6)

    def test_h1(self, H1):
        assert degree(H1, "x0").total == 2
        assert degree(H1, "x1").total == 4

    def test_invalid_index(self, H1):
        with pytest.raises(InvalidInputError):
            degree(H1, x(2))
        with pytest.raises(InvalidInputError):
            degree(H1, "z0")

    @given(digraphs())
    def test_matches_arc_count(self, D):
        for v in D.vertices():
            assert tuple(degree(D, v)) == degree_oracle(D, str(v))
            assert degree(D, v).total <= 2 * D.a
        assert sum(degree(D, v).out_degree for v in D.vertices()) == D.arc_count


class TestNeighborhood:
    def test_h2_pair(self, H2):
        assert names(neighborhood(H2, [x(0), x(1)], Direction.OUT)) == {"y0"}

    def test_empty_set(self, H2):
        assert neighborhood(H2, [], Direction.IN) == frozenset()

    def test_complete_in(self):
        D = BalancedBipartiteDigraph.complete(2)
        assert names(neighborhood(D, ["x0"], Direction.IN)) == {"y0", "y1"}

    def test_mixed_sides_rejected(self, H2):
        with pytest.raises(InvalidInputError):
            neighborhood(H2, [x(0), y(0)])

    @given(digraphs(min_a=2), st.data())
    def test_monotone_and_opposite_side(self, D, data):
        side = data.draw(st.sampled_from(list(Side)))
        T = data.draw(st.sets(st.integers(0, D.a - 1)))
        S = data.draw(st.sets(st.sampled_from(sorted(T)))) if T else set()
        for direction in Direction:
            nS = neighborhood(D, [VertexRef(side, i) for i in S], direction)
            nT = neighborhood(D, [VertexRef(side, i) for i in T], direction)
            assert nS <= nT
            assert all(v.side is side.other for v in nT)


class TestPairs:
    def test_h1(self, H1):
        expected = {frozenset({"x0", "x1"}), frozenset({"y0", "y1"})}
        assert pair_names(pairs(H1, PairKind.DOMINATING)) == expected
        assert pair_names(pairs(H1, PairKind.DOMINATED)) == expected

    def test_single_hamilton_cycle_has_no_pairs(self):
        D = BalancedBipartiteDigraph.hamiltonian_cycle(3)
        assert pairs(D, PairKind.DOMINATING) == []
        assert pairs(D, PairKind.DOMINATED) == []

    def test_h2(self, H2):
        dom = pair_names(pairs(H2, PairKind.DOMINATING))
        assert frozenset({"x0", "x1"}) in dom
        assert frozenset({"y1", "y2"}) in dom

    @given(digraphs())
    def test_against_oracle(self, D):
        for kind in (PairKind.DOMINATING, PairKind.DOMINATED):
            found = pairs(D, kind)
            assert len(found) == len(pair_names(found))
            assert pair_names(found) == pairs_oracle(D, kind.value)
            assert all(p.u.side is p.v.side and p.u != p.v for p in found)

    @given(digraphs())
    def test_reversal_swaps_kinds(self, D):
        assert pair_names(pairs(D, PairKind.DOMINATING)) == pair_names(pairs(D.reverse(), PairKind.DOMINATED))

    def test_nonadjacent_kind_rejected(self, H1):
        with pytest.raises(InvalidInputError):
            pairs(H1, PairKind.NON_ADJACENT)


class TestStrong:
    def test_exceptions_strong(self, H1, H2, H2X, H3):
        assert all(is_strong(D) for D in (H1, H2, H2X, H3))

    def test_two_disjoint_two_cycles(self):
        assert not is_strong(BalancedBipartiteDigraph.disjoint_two_cycles(2))

    @pytest.mark.parametrize("a", [1, 2, 3, 5])
    def test_complete(self, a):
        assert is_strong(BalancedBipartiteDigraph.complete(a))

    @given(digraphs())
    def test_against_networkx(self, D):
        assert is_strong(D) == strong_oracle(D)

    @given(digraphs())
    def test_reversal_invariant(self, D):
        assert is_strong(D) == is_strong(D.reverse())


class TestRepresentation:
    def test_same_side_arc_rejected(self):
        with pytest.raises(InvalidInputError):
            BalancedBipartiteDigraph.from_arcs(2, [("x0", "x1")])
        with pytest.raises(InvalidInputError):
            BalancedBipartiteDigraph.from_arcs(2, [("y0", "y0")])
        with pytest.raises(InvalidInputError):
            BalancedBipartiteDigraph.complete(2).with_arcs([("y1", "y0")])

    def test_same_side_never_adjacent(self):
        D = BalancedBipartiteDigraph.complete(3)
        assert not D.has_arc("x0", "x1")
        assert not D.has_arc("y2", "y2")

    def test_matrix_shape_checked(self):
        with pytest.raises(InvalidInputError):
            BalancedBipartiteDigraph(2, [[1, 0]], [[1, 0], [0, 1]])
        with pytest.raises(InvalidInputError):
            BalancedBipartiteDigraph(0, [], [])
        with pytest.raises(InvalidInputError):
            BalancedBipartiteDigraph.from_rows(2, [4, 0], [0, 0])
        with pytest.raises(InvalidInputError):
            BalancedBipartiteDigraph.from_code(2, 1 << 8)

    def test_immutable(self, H1):
        with pytest.raises(AttributeError):
            H1.a = 3
        with pytest.raises(AttributeError):
            H1.extra = 1

    def test_matrix_constructor_agrees_with_arcs(self):
        D = BalancedBipartiteDigraph(2, [[1, 0], [0, 1]], [[0, 1], [1, 0]])
        assert D == BalancedBipartiteDigraph.from_arcs(2, [("x0", "y0"), ("x1", "y1"), ("y0", "x1"), ("y1", "x0")])
        assert D.m1 == ((True, False), (False, True))

    @given(digraphs())
    def test_arc_bound_and_cross_arcs(self, D):
        assert D.arc_count <= 2 * D.a * D.a
        assert all(u.side is not v.side for u, v in D.arcs())
        assert len(D.arcs()) == D.arc_count

    @given(digraphs())
    def test_code_round_trip(self, D):
        assert BalancedBipartiteDigraph.from_code(D.a, D.code) == D
        assert BalancedBipartiteDigraph(D.a, D.m1, D.m2) == D
        assert BalancedBipartiteDigraph.from_arcs(D.a, D.arcs()) == D

    @given(digraphs())
    def test_reverse_is_involution(self, D):
        R = D.reverse()
        assert R.reverse() == D
        assert {(str(v), str(u)) for u, v in D.arcs()} == {(str(u), str(v)) for u, v in R.arcs()}

    @given(digraphs(min_a=2), st.data())
    @settings(max_examples=50)
    def test_relabel_preserves_structure(self, D, data):
        p1 = data.draw(st.permutations(range(D.a)))
        p2 = data.draw(st.permutations(range(D.a)))
        E = D.relabel(p1, p2)
        assert E.arc_count == D.arc_count
        assert is_strong(E) == is_strong(D)
        for i in range(D.a):
            assert degree(E, x(p1[i])) == degree(D, x(i))
            assert degree(E, y(p2[i])) == degree(D, y(i))


class TestCycle:
    def test_rotation_normalised(self):
        C = Cycle.parse("y1 x1 y0 x0")
        assert str(C) == "x0 y1 x1 y0"

    def test_rejects_bad_sequences(self):
        for text in ("x0 y0 x1", "x0 x1", "x0 y0 x0 y0", ""):
            with pytest.raises(InvalidInputError):
                Cycle.parse(text)

    def test_validates_against_digraph(self, H3):
        assert Cycle.parse("x0 y1 x1 y0").is_valid_in(H3)
        assert not Cycle.parse("x0 y0 x1 y1").is_valid_in(H3)
