"""Exact deterministic baselines: DP over all capacities and brute-force
optima for small instances (deterministic and chance-constrained)."""

from __future__ import annotations

import numpy as np

from . import chance
from .chance import ChanceParams

_BRUTE_FORCE_MAX_N = 20
_ENUM_CHUNK = 1 << 14


def dp_optimal_profits(instance, c_max: int) -> np.ndarray:
    """0/1 knapsack DP over expected weights: entry c is the best profit
    achievable with total expected weight <= c, for every c in 0..c_max."""
    if c_max < 0:
        raise ValueError("c_max must be >= 0")
    dp = np.zeros(c_max + 1, np.int64)
    for it in instance.items:
        w, p = it.expected_weight, it.profit
        if w <= c_max:
            # dp[:-w] + p is materialized first, so each item is used at most once
            np.maximum(dp[w:], dp[:-w] + p, out=dp[w:])
    return dp


def _enumerate_subsets(instance):
    """Yield (bits_matrix, profits, weights, counts, lex_keys) in chunks over
    all 2^n subsets. lex_keys order bit-vectors lexicographically (bit 0 most
    significant)."""
    n = instance.n
    profits = instance.profit_array()
    weights = instance.weight_array()
    shifts = np.arange(n, dtype=np.uint32)
    lex_weights = 1 << (n - 1 - shifts).astype(np.int64)
    total = 1 << n
    for start in range(0, total, _ENUM_CHUNK):
        masks = np.arange(start, min(start + _ENUM_CHUNK, total), dtype=np.uint32)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int64)
        yield (bits, bits @ profits, bits @ weights, bits.sum(axis=1),
               bits @ lex_weights)


def _check_brute_force_n(instance):
    if instance.n > _BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"brute force capped at n <= {_BRUTE_FORCE_MAX_N}, got {instance.n}")


def _best_subset(instance, feasible_of_chunk):
    """Exhaustive max-profit subset under a per-chunk feasibility predicate;
    ties go to the lexicographically smallest bit-vector."""
    best_profit = -1
    best_key = None
    best_bits = None
    for bits, profs, ews, counts, keys in _enumerate_subsets(instance):
        feas = feasible_of_chunk(profs, ews, counts)
        if not feas.any():
            continue
        profs = np.where(feas, profs, -1)
        top = profs.max()
        if top < best_profit:
            continue
        cand = np.flatnonzero(profs == top)
        j = cand[np.argmin(keys[cand])]
        if top > best_profit or keys[j] < best_key:
            best_profit = int(top)
            best_key = int(keys[j])
            best_bits = bits[j].astype(np.uint8)
    if best_bits is None:  # no feasible subset at all (empty set infeasible)
        return 0, np.zeros(instance.n, np.uint8)
    return best_profit, best_bits


def brute_force_optimum(instance, capacity: float):
    """Exact deterministic optimum by enumeration (n <= 20)."""
    _check_brute_force_n(instance)
    return _best_subset(instance, lambda p, w, k: w <= capacity)


def brute_force_chance_optimum(instance, capacity: float, params: ChanceParams):
    """Exact optimum subject to the surrogate chance constraint
    violation_prob(x, capacity) <= alpha for the configured bound kind."""
    _check_brute_force_n(instance)

    def feasible(p, w, k):
        viol = chance.violation_prob_array(w, k, params.delta, capacity,
                                           params.bound_kind)
        return viol <= params.alpha

    return _best_subset(instance, feasible)
