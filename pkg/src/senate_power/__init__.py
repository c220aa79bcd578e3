"""Power indices of weighted voting games and the Chilean Senate, 1990-2017."""

from senate_power.game import (
    Coalition,
    LawType,
    WeightedVotingGame,
    coalition_weight,
    is_winning,
    new_game,
    parse_game,
    quota_for,
)
from senate_power.indices import (
    IndexKind,
    PowerVector,
    banzhaf,
    deegan_packel,
    holler_packel,
    johnston,
    power_index,
    rank_players,
    shapley_shubik,
)

__all__ = [
    "Coalition",
    "IndexKind",
    "LawType",
    "PowerVector",
    "WeightedVotingGame",
    "banzhaf",
    "coalition_weight",
    "deegan_packel",
    "holler_packel",
    "is_winning",
    "johnston",
    "new_game",
    "parse_game",
    "power_index",
    "quota_for",
    "rank_players",
    "shapley_shubik",
]
