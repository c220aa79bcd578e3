import json
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings

from senate_power.coalitions import (
    Coalition,
    FamilyKind,
    TooManyVoters,
    TooManyVotersForOracle,
    UnknownIndex,
    brute_force_shapley,
    critical_players,
    enumerate_minimal_winning,
    enumerate_vulnerable,
    enumerate_winning,
    oracle_index,
    oracle_shapley,
)
from senate_power.game import InvalidMember, coalition_weight, is_winning, new_game

from conftest import games


def sets(family):
    return [set(c) for c in family]


def all_subsets(n):
    for size in range(n + 1):
        for members in combinations(range(n), size):
            yield Coalition.of(members)


class TestEnumeration:
    def test_winning_small(self):
        fam = enumerate_winning(new_game(3, [2, 1, 1]))
        assert fam.kind is FamilyKind.WINNING
        assert sets(fam) == [{0, 1}, {0, 2}, {0, 1, 2}]

    def test_winning_majority(self):
        fam = enumerate_winning(new_game(2, [1, 1, 1]))
        assert len(fam) == 4 and all(len(c) >= 2 for c in fam)

    def test_winning_toy(self):
        assert sets(enumerate_winning(new_game(20, [18, 10, 10]))) == [
            {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}
        ]

    def test_minimal_small(self):
        assert sets(enumerate_minimal_winning(new_game(3, [2, 1, 1]))) == [{0, 1}, {0, 2}]

    def test_minimal_toy(self):
        assert sets(enumerate_minimal_winning(new_game(20, [18, 10, 10]))) == [
            {0, 1}, {0, 2}, {1, 2}
        ]

    def test_minimal_excludes_null_player(self):
        assert sets(enumerate_minimal_winning(new_game(1, [1, 0]))) == [{0}]

    def test_vulnerable(self):
        assert sets(enumerate_vulnerable(new_game(3, [2, 1, 1]))) == [{0, 1}, {0, 2}, {0, 1, 2}]
        # the grand coalition of a symmetric majority has no critical member
        assert sets(enumerate_vulnerable(new_game(2, [1, 1, 1]))) == [{0, 1}, {0, 2}, {1, 2}]

    def test_too_many_voters(self):
        with pytest.raises(TooManyVoters):
            enumerate_winning(new_game(1, [1] * 30))

    def test_family_json_sorted(self):
        doc = json.loads(enumerate_minimal_winning(new_game(3, [2, 1, 1])).to_json())
        assert doc == {"game": "3;2,1,1", "kind": "minimal_winning", "coalitions": [[0, 1], [0, 2]]}

    @given(games(max_voters=10))
    def test_partition_of_power_set(self, game):
        winning = set(enumerate_winning(game))
        for c in all_subsets(game.n):
            assert (c in winning) == is_winning(game, c)

    @given(games(max_voters=10))
    def test_minimal_winning_all_critical(self, game):
        winning = set(enumerate_winning(game))
        for c in enumerate_minimal_winning(game):
            assert c in winning
            assert critical_players(game, c) == frozenset(c)

    @given(games(max_voters=10))
    def test_minimal_family_is_complete(self, game):
        minimal = set(enumerate_minimal_winning(game))
        for c in enumerate_winning(game):
            drop_any_loses = all(
                coalition_weight(game, c) - game.weights[i] < game.quota for i in c
            )
            assert (c in minimal) == drop_any_loses


class TestCriticalPlayers:
    def test_examples(self):
        assert critical_players(new_game(3, [2, 1, 1]), {0, 1, 2}) == {0}
        assert critical_players(new_game(20, [18, 10, 10]), {0, 1}) == {0, 1}
        assert critical_players(new_game(2, [1, 1, 1]), {0, 1, 2}) == set()

    def test_losing_has_none(self):
        assert critical_players(new_game(20, [18, 10, 10]), {0}) == set()

    def test_invalid(self):
        with pytest.raises(InvalidMember):
            critical_players(new_game(3, [2, 1, 1]), {5})


class TestOracles:
    def test_shapley_small(self):
        assert oracle_shapley(new_game(3, [2, 1, 1])) == (F(2, 3), F(1, 6), F(1, 6))

    def test_shapley_toy(self):
        assert oracle_shapley(new_game(20, [18, 10, 10])) == (F(1, 3),) * 3

    def test_shapley_dictator(self):
        assert oracle_shapley(new_game(1, [1])) == (F(1),)

    def test_shapley_cap(self):
        with pytest.raises(TooManyVotersForOracle):
            oracle_shapley(new_game(1, [1] * 11))

    @settings(max_examples=60)
    @given(games(max_voters=7))
    def test_tree_walk_matches_plain_enumeration(self, game):
        assert oracle_shapley(game) == brute_force_shapley(game)

    @given(games(max_voters=9))
    def test_shapley_is_distribution(self, game):
        values = oracle_shapley(game)
        assert all(v >= 0 for v in values) and sum(values) == 1

    def test_index_examples(self):
        small = new_game(3, [2, 1, 1])
        assert oracle_index(small, "dp") == (F(1, 2), F(1, 4), F(1, 4))
        assert oracle_index(small, "jo") == (F(2, 3), F(1, 6), F(1, 6))
        assert oracle_index(small, "bz") == (F(3, 5), F(1, 5), F(1, 5))
        assert oracle_index(small, "hp") == (F(1, 2), F(1, 4), F(1, 4))
        assert oracle_index(new_game(2, [1, 1, 1]), "bz") == (F(1, 3),) * 3

    def test_unknown_index(self):
        with pytest.raises(UnknownIndex):
            oracle_index(new_game(1, [1]), "owen")

    def test_subset_cap(self):
        with pytest.raises(TooManyVotersForOracle):
            oracle_index(new_game(1, [1] * 21), "bz")
