from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from senate_power.game import (
    LAW_TYPES,
    Coalition,
    EmptyGame,
    GameParseError,
    InvalidMember,
    LabelMismatch,
    LawType,
    NegativeWeight,
    NonPositiveSeats,
    QuotaExceedsTotal,
    QuotaNonPositive,
    coalition_weight,
    is_winning,
    new_game,
    parse_game,
    quota_for,
)

from conftest import games

REFORM, INTERP, ORGANIC, QUALIFIED = LAW_TYPES


def quota_by_search(law: LawType, seats: int) -> int:
    """Smallest vote count strictly above the fraction of seats."""
    share = Fraction(law.numerator, law.denominator) * seats
    k = 0
    while not k > share:
        k += 1
    return k


class TestNewGame:
    def test_toy_game(self):
        g = new_game(20, [18, 10, 10])
        assert g.quota == 20 and g.weights == (18, 10, 10)

    def test_dictator(self):
        assert new_game(1, [1]).n == 1

    @pytest.mark.parametrize(
        "quota, weights, error",
        [
            (5, [2, 2], QuotaExceedsTotal),
            (0, [2, 2], QuotaNonPositive),
            (1, [], EmptyGame),
            (1, [2, -1], NegativeWeight),
        ],
    )
    def test_invalid(self, quota, weights, error):
        with pytest.raises(error):
            new_game(quota, weights)

    def test_labels_must_match(self):
        with pytest.raises(LabelMismatch):
            new_game(2, [1, 1], ["a"])

    def test_zero_weights_kept_in_order(self):
        assert new_game(1, [0, 1, 0]).weights == (0, 1, 0)


class TestLiteral:
    def test_parse(self):
        assert parse_game("20;18,10,10") == new_game(20, [18, 10, 10])

    def test_whitespace_ignored(self):
        assert parse_game(" 20 ; 18, 10 ,10 ") == new_game(20, [18, 10, 10])

    @pytest.mark.parametrize("text", ["", "20", "20;", "a;1", "20;1,,2", "20,1,2"])
    def test_malformed(self, text):
        with pytest.raises(GameParseError):
            parse_game(text)

    def test_parses_but_invalid(self):
        with pytest.raises(QuotaExceedsTotal):
            parse_game("5;2,2")

    @given(games(max_voters=12))
    def test_round_trip(self, game):
        assert parse_game(game.literal()) == game


class TestQuota:
    def test_38_seats(self):
        assert [quota_for(law, 38) for law in LAW_TYPES] == [26, 23, 22, 20]

    def test_organic_47(self):
        assert quota_for(ORGANIC, 47) == 27 == quota_by_search(ORGANIC, 47)

    def test_exact_division_adds_one(self):
        assert quota_for(REFORM, 36) == 25

    @pytest.mark.parametrize(
        "seats, expected",
        [
            (38, [26, 23, 22, 20]),
            (47, [32, 29, 27, 24]),
            (46, [31, 28, 27, 24]),
            (48, [33, 29, 28, 25]),
            (49, [33, 30, 29, 25]),
            (37, [25, 23, 22, 19]),
            (36, [25, 22, 21, 19]),
        ],
    )
    def test_quota_rows(self, seats, expected):
        assert [quota_by_search(law, seats) for law in LAW_TYPES] == expected
        assert [quota_for(law, seats) for law in LAW_TYPES] == expected

    def test_nonpositive_seats(self):
        with pytest.raises(NonPositiveSeats):
            quota_for(QUALIFIED, 0)

    @given(st.sampled_from(LAW_TYPES), st.integers(1, 500))
    def test_monotone(self, law, seats):
        assert quota_for(law, seats) <= quota_for(law, seats + 1)

    @given(st.integers(1, 1000))
    def test_qualified_is_absolute_majority(self, seats):
        assert quota_for(QUALIFIED, seats) > seats / 2

    @pytest.mark.parametrize("name, law", [
        ("reform23", REFORM), ("reform35", INTERP), ("interpretation", INTERP),
        ("organic", ORGANIC), ("qualified", QUALIFIED),
    ])
    def test_cli_names(self, name, law):
        assert LawType.from_name(name) is law

    def test_four_variants(self):
        assert [law.value for law in LawType] == [(2, 3), (3, 5), (4, 7), (1, 2)]


class TestCoalitions:
    toy = new_game(20, [18, 10, 10])
    small = new_game(3, [2, 1, 1])

    def test_weight(self):
        assert coalition_weight(self.toy, {0, 1}) == 28
        assert coalition_weight(self.toy, set()) == 0
        assert coalition_weight(self.small, {1, 2}) == 2

    def test_winning(self):
        assert is_winning(self.toy, {1, 2})
        assert not is_winning(self.toy, {0})
        assert is_winning(self.toy, self.toy.grand_coalition)

    def test_invalid_member(self):
        with pytest.raises(InvalidMember):
            coalition_weight(self.toy, {3})
        with pytest.raises(InvalidMember):
            Coalition.of([-1])

    def test_coalition_set_ops(self):
        c = Coalition.of([0, 2])
        assert 2 in c and 1 not in c and len(c) == 2
        assert Coalition.of([0]).issubset(c)
        assert (c - Coalition.of([0])).members == (2,)

    @given(games(max_voters=12), st.data())
    def test_monotonicity(self, game, data):
        small = data.draw(st.integers(0, (1 << game.n) - 1))
        extra = data.draw(st.integers(0, (1 << game.n) - 1))
        s, t = Coalition(small), Coalition(small | extra)
        if is_winning(game, s):
            assert is_winning(game, t)
        if not is_winning(game, t):
            assert not is_winning(game, s)

    @given(games(max_voters=12))
    def test_grand_coalition_wins(self, game):
        assert is_winning(game, game.grand_coalition)
