"""Coin-flip leader election under global visibility.

Every agent starts red. Each round the red agents flip a fair coin and a
zero turns an agent blue; when a round would turn every remaining red
agent blue, those agents stay red and flip again. The first round that
leaves exactly one red agent elects it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from core.rng import ELECTION, make_rng


@dataclass(frozen=True)
class ElectionResult:
    winner: int
    rounds: int
    history: tuple  # red-agent count after each round, starting with ``count``


def global_visibility_election(count: int, seed: int) -> ElectionResult:
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = make_rng(seed, ELECTION)
    contenders = np.arange(count, dtype=np.int64)
    history = [count]
    rounds = 0
    while len(contenders) > 1:
        rounds += 1
        ones = rng.integers(0, 2, size=len(contenders), dtype=np.int8).astype(bool)
        if ones.any():
            contenders = contenders[ones]
        history.append(len(contenders))
    return ElectionResult(winner=int(contenders[0]), rounds=rounds, history=tuple(history))
