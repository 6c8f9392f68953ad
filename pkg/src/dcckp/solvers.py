"""Evolutionary solvers for the dynamic chance-constrained knapsack.

Three algorithms share the same iteration currency (one fitness evaluation
per iteration):

* ``OnePlusOneEA`` -- single incumbent, 1/n bit flips, lexicographic
  (constraint violation, profit) acceptance.
* ``Posdc`` -- dual non-dominated archives around the current capacity: S-
  holds solutions whose capacity bound sits in [C - eta, C), S+ those in
  [C, C + eta]. Keeping the infeasible side warm is what lets the search
  react when the capacity shifts.
* ``Nsga2`` -- population of 20 on the objectives (profit up, capacity bound
  down), fast non-dominated sorting, crowding distance, uniform crossover and
  1/n mutation; one generation is charged 20 iterations.

``run_algorithm`` drives any of them through a capacity schedule and records
the per-iteration offline error against a precomputed DP optimum table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chance, metrics
from .chance import CHEBYSHEV, ChanceParams

REPAIR_STEP_CAP = 10 ** 6


@dataclass(frozen=True)
class LexFitness:
    violation: float  # max{0, violation_prob - alpha}
    profit: int


def lex_better_or_equal(a: LexFitness, b: LexFitness) -> bool:
    """True iff fitness ``a`` is at least as good as ``b`` lexicographically:
    smaller violation first, then higher profit; equality accepted."""
    return a.violation < b.violation or (
        a.violation == b.violation and a.profit >= b.profit)


def posdc_dominates(a, b) -> bool:
    """Weak dominance on (profit, capacity bound): at least the profit, at
    most the bound. Equal points dominate each other."""
    return a[0] >= b[0] and a[1] <= b[1]


class _RunContext:
    """Per-run item data and scalar bound evaluators on the hot path."""

    __slots__ = ("n", "inv_n", "profits", "weights", "profit_list",
                 "weight_list", "delta", "alpha", "bound_kind", "viol", "bound",
                 "record_viol")

    def __init__(self, instance, params: ChanceParams):
        self.n = instance.n
        self.inv_n = 1.0 / instance.n
        self.profits = instance.profit_array()
        self.weights = instance.weight_array()
        self.profit_list = self.profits.tolist()
        self.weight_list = self.weights.tolist()
        self.delta = float(params.delta)
        self.alpha = params.alpha
        self.bound_kind = params.bound_kind
        delta, alpha = self.delta, params.alpha
        if params.bound_kind == CHEBYSHEV:
            viol_fn = chance.chebyshev_violation_prob
            bound_fn = chance.chebyshev_capacity_bound
        else:
            viol_fn = chance.chernoff_violation_prob
            bound_fn = chance.chernoff_capacity_bound
        self.viol = lambda w, k, c: viol_fn(w, k, delta, c)
        self.bound = lambda w, k: bound_fn(w, k, delta, alpha)
        # offline-error accounting uses the family's tightest certificate so
        # that "capacity_bound(x) <= C" and "recorded violation <= alpha"
        # agree; for Chebyshev this is the same closed form the solvers use
        kind = params.bound_kind
        self.record_viol = lambda w, k, c: chance.certified_violation_prob(
            w, k, delta, c, kind)

    def lex_violation(self, w: int, k: int, capacity: int) -> float:
        """Violation term of the lexicographic fitness.

        At and above the mean the tail formulas saturate at 1, which would
        leave selection blind to how far overweight a solution is (and let
        profit maximization drag it further from feasibility after a sharp
        capacity drop). Adding the expected-weight overshoot keeps a descent
        direction toward feasibility; below the mean this is exactly
        max{0, violation - alpha}.
        """
        v = self.viol(w, k, capacity) - self.alpha
        if v < 0.0:
            return 0.0
        if w > capacity:
            v += w - capacity
        return v

    def random_solution(self, rng):
        bits = rng.integers(0, 2, self.n, np.uint8)
        return (bits, int(bits @ self.profits), int(bits @ self.weights),
                int(bits.sum()))

    def mutate(self, rng, bits, p, w, k):
        """1/n independent bit flips; returns None when no bit flips (the
        offspring is an exact copy)."""
        flips = np.flatnonzero(rng.random(self.n) < self.inv_n)
        if flips.size == 0:
            return None
        nb = bits.copy()
        pl, wl = self.profit_list, self.weight_list
        for i in flips.tolist():
            if nb[i]:
                nb[i] = 0
                p -= pl[i]
                w -= wl[i]
                k -= 1
            else:
                nb[i] = 1
                p += pl[i]
                w += wl[i]
                k += 1
        return nb, p, w, k


class OnePlusOneEA:
    """(1+1)-EA with lexicographic (violation, profit) acceptance."""

    name = "ea11"

    def __init__(self, ctx: _RunContext, rng, capacity: int):
        self.ctx = ctx
        self.rng = rng
        self.bits, self.p, self.w, self.k = ctx.random_solution(rng)

    def on_change(self, capacity: int):
        # fitness is recomputed at the current capacity on every comparison
        pass

    def step(self, capacity: int):
        ctx = self.ctx
        child = ctx.mutate(self.rng, self.bits, self.p, self.w, self.k)
        if child is None:
            return  # identical offspring; weak acceptance keeps the state as is
        bits, p, w, k = child
        off_v = ctx.lex_violation(w, k, capacity)
        inc_v = ctx.lex_violation(self.w, self.k, capacity)
        if off_v < inc_v or (off_v == inc_v and p >= self.p):
            self.bits, self.p, self.w, self.k = bits, p, w, k

    def fitness(self, capacity: int) -> LexFitness:
        return LexFitness(self.ctx.lex_violation(self.w, self.k, capacity), self.p)

    def designated_eval(self, capacity: int):
        return self.p, self.ctx.record_viol(self.w, self.k, capacity)


class _Archive:
    """Non-dominated store over (profit, capacity bound) with parallel numpy
    columns so dominance scans stay vectorized."""

    __slots__ = ("bits", "p", "w", "k", "cstar", "size")

    def __init__(self, n: int, capacity_hint: int = 64):
        self.bits = np.empty((capacity_hint, n), np.uint8)
        self.p = np.empty(capacity_hint, np.int64)
        self.w = np.empty(capacity_hint, np.int64)
        self.k = np.empty(capacity_hint, np.int64)
        self.cstar = np.empty(capacity_hint, np.float64)
        self.size = 0

    def _ensure_room(self, extra: int = 1):
        cap = len(self.p)
        if self.size + extra <= cap:
            return
        new_cap = cap * 2
        while self.size + extra > new_cap:
            new_cap *= 2
        grown_bits = np.empty((new_cap, self.bits.shape[1]), np.uint8)
        grown_bits[:cap] = self.bits
        self.bits = grown_bits
        for name in ("p", "w", "k", "cstar"):
            old = getattr(self, name)
            new = np.empty(new_cap, old.dtype)
            new[:cap] = old
            setattr(self, name, new)

    def has_weak_dominator(self, p: int, cstar: float) -> bool:
        s = self.size
        if s == 0:
            return False
        return bool(((self.p[:s] >= p) & (self.cstar[:s] <= cstar)).any())

    def insert(self, bits, p, w, k, cstar):
        """Insert a member and drop everything it weakly dominates. The caller
        must have checked ``has_weak_dominator`` first."""
        s = self.size
        if s:
            dominated = (self.p[:s] <= p) & (self.cstar[:s] >= cstar)
            if dominated.any():
                keep = np.flatnonzero(~dominated)
                m = len(keep)
                self.bits[:m] = self.bits[keep]
                self.p[:m] = self.p[keep]
                self.w[:m] = self.w[keep]
                self.k[:m] = self.k[keep]
                self.cstar[:m] = self.cstar[keep]
                self.size = s = m
        self._ensure_room()
        self.bits[s] = bits
        self.p[s] = p
        self.w[s] = w
        self.k[s] = k
        self.cstar[s] = cstar
        self.size = s + 1

    def extend(self, bits, p, w, k, cstar):
        """Bulk append of already mutually non-dominated members."""
        m = len(p)
        self._ensure_room(m)
        s = self.size
        self.bits[s:s + m] = bits
        self.p[s:s + m] = p
        self.w[s:s + m] = w
        self.k[s:s + m] = k
        self.cstar[s:s + m] = cstar
        self.size = s + m

    def max_profit_index(self) -> int:
        """Index of the highest-profit member; profit ties go to smaller C*."""
        s = self.size
        top = self.p[:s].max()
        cand = np.flatnonzero(self.p[:s] == top)
        if len(cand) > 1:
            return int(cand[np.argmin(self.cstar[cand])])
        return int(cand[0])

    def min_cstar_index(self) -> int:
        """Index of the smallest-C* member; C* ties go to higher profit."""
        s = self.size
        low = self.cstar[:s].min()
        cand = np.flatnonzero(self.cstar[:s] == low)
        if len(cand) > 1:
            return int(cand[np.argmax(self.p[cand])])
        return int(cand[0])

    def member(self, i: int):
        return (self.bits[i], int(self.p[i]), int(self.w[i]), int(self.k[i]),
                float(self.cstar[i]))

    def rows(self):
        s = self.size
        return self.bits[:s], self.p[:s], self.w[:s], self.k[:s], self.cstar[:s]


def _pareto_keep_mask(p: np.ndarray, cstar: np.ndarray) -> np.ndarray:
    """Mask of members not weakly dominated by any other (distinct C* values
    assumed, which the archive construction guarantees)."""
    order = np.argsort(cstar, kind="stable")
    keep = np.zeros(len(p), bool)
    best = -np.inf
    for idx in order:
        if p[idx] > best:
            keep[idx] = True
            best = p[idx]
    return keep


class Posdc:
    """Dual-archive Pareto tracker around the moving capacity.

    Until the initial random solution (or a repaired descendant of it) lands
    inside [C - eta, C + eta], every step is a lexicographic (1+1)-EA repair
    step; afterwards steps mutate a uniformly chosen archive member and insert
    the offspring into the matching window side unless weakly dominated.
    """

    name = "posdc"

    def __init__(self, ctx: _RunContext, rng, capacity: int, eta: int,
                 repair_cap: int = REPAIR_STEP_CAP):
        if eta < 1:
            raise ValueError("eta must be >= 1")
        self.ctx = ctx
        self.rng = rng
        self.eta = eta
        self.repair_cap = repair_cap
        self.repair_steps = 0
        self.s_minus = _Archive(ctx.n)
        self.s_plus = _Archive(ctx.n)
        self._best = None  # cached (p, w, k, cstar) of the designated member
        bits, p, w, k = ctx.random_solution(rng)
        cstar = ctx.bound(w, k)
        if capacity - eta <= cstar <= capacity + eta:
            self.repair = None
            self._seed(bits, p, w, k, cstar, capacity)
        else:
            self.repair = (bits, p, w, k)

    # -- archive plumbing ----------------------------------------------------

    def _seed(self, bits, p, w, k, cstar, capacity):
        side = self.s_minus if cstar < capacity else self.s_plus
        side.insert(bits, p, w, k, cstar)
        self._best = None

    def archive_size(self) -> int:
        return self.s_minus.size + self.s_plus.size

    # -- designation and archive queries ---------------------------------------

    def best(self):
        """Designated solution: highest profit in S-, else smallest C* in S+.

        Returns (bits, profit, expected_weight_sum, count, cstar); raises when
        both archives are empty (still repairing).
        """
        if self.s_minus.size:
            return self.s_minus.member(self.s_minus.max_profit_index())
        if self.s_plus.size:
            return self.s_plus.member(self.s_plus.min_cstar_index())
        raise RuntimeError("POSDC archives are empty (repair still running)")

    def step(self, capacity: int):
        if self.repair is not None:
            self._repair_step(capacity)
            return
        ctx = self.ctx
        sm, sp = self.s_minus, self.s_plus
        j = int(self.rng.integers(sm.size + sp.size))
        if j < sm.size:
            parent = sm
        else:
            parent = sp
            j -= sm.size
        child = ctx.mutate(self.rng, parent.bits[j], int(parent.p[j]),
                           int(parent.w[j]), int(parent.k[j]))
        if child is None:
            return  # duplicate of an archived member: always weakly dominated
        bits, p, w, k = child
        cstar = ctx.bound(w, k)
        if capacity - self.eta <= cstar < capacity:
            if not sm.has_weak_dominator(p, cstar):
                sm.insert(bits, p, w, k, cstar)
                self._best = None
        elif capacity <= cstar <= capacity + self.eta:
            if not sp.has_weak_dominator(p, cstar):
                sp.insert(bits, p, w, k, cstar)
                if sm.size == 0:
                    self._best = None

    def _repair_step(self, capacity: int):
        self.repair_steps += 1
        if self.repair_steps > self.repair_cap:
            raise RuntimeError(
                f"POSDC repair did not reach the window within {self.repair_cap} steps")
        ctx = self.ctx
        bits, p, w, k = self.repair
        child = ctx.mutate(self.rng, bits, p, w, k)
        if child is not None:
            nb, np_, nw, nk = child
            off_v = ctx.lex_violation(nw, nk, capacity)
            inc_v = ctx.lex_violation(w, k, capacity)
            if off_v < inc_v or (off_v == inc_v and np_ >= p):
                bits, p, w, k = nb, np_, nw, nk
        cstar = ctx.bound(w, k)
        if capacity - self.eta <= cstar <= capacity + self.eta:
            self.repair = None
            self._seed(bits, p, w, k, cstar, capacity)
        else:
            self.repair = (bits, p, w, k)

    def on_change(self, capacity: int):
        """Re-partition both archives against the shifted capacity, dropping
        members outside the new window; if nothing survives, the previously
        designated solution reseeds the archive even when out of window."""
        if self.repair is not None:
            return  # archives empty; repair keeps running against the new capacity
        keep_bits, keep_p, keep_w, keep_k, keep_c = self.best()
        keep_bits = keep_bits.copy()
        b1, p1, w1, k1, c1 = self.s_minus.rows()
        b2, p2, w2, k2, c2 = self.s_plus.rows()
        bits = np.concatenate([b1, b2])
        p = np.concatenate([p1, p2])
        w = np.concatenate([w1, w2])
        k = np.concatenate([k1, k2])
        cstar = np.concatenate([c1, c2])
        in_window = (cstar >= capacity - self.eta) & (cstar <= capacity + self.eta)
        self.s_minus = _Archive(self.ctx.n)
        self.s_plus = _Archive(self.ctx.n)
        for side, region in ((self.s_minus, in_window & (cstar < capacity)),
                             (self.s_plus, in_window & (cstar >= capacity))):
            idx = np.flatnonzero(region)
            if idx.size == 0:
                continue
            idx = idx[_pareto_keep_mask(p[idx], cstar[idx])]
            side.extend(bits[idx], p[idx], w[idx], k[idx], cstar[idx])
        if self.archive_size() == 0:
            self._seed(keep_bits, keep_p, keep_w, keep_k, keep_c, capacity)
        self._best = None

    def designated_eval(self, capacity: int):
        if self.repair is not None:
            _, p, w, k = self.repair
            return p, self.ctx.record_viol(w, k, capacity)
        if self._best is None:
            _, p, w, k, cstar = self.best()
            self._best = (p, w, k, cstar)
        p, w, k, _ = self._best
        return p, self.ctx.record_viol(w, k, capacity)


def fast_nondominated_sort(profits, cap_bounds):
    """Front indices under (maximize profit, minimize capacity bound)."""
    p = np.asarray(profits, np.float64)
    c = np.asarray(cap_bounds, np.float64)
    ge = p[:, None] >= p[None, :]
    le = c[:, None] <= c[None, :]
    strict = (p[:, None] > p[None, :]) | (c[:, None] < c[None, :])
    dom = ge & le & strict  # dom[i, j]: i dominates j
    counts = dom.sum(axis=0).astype(np.int64)
    fronts = []
    current = np.flatnonzero(counts == 0)
    while current.size:
        fronts.append(current)
        counts = counts - dom[current].sum(axis=0)
        counts[current] = -1
        current = np.flatnonzero(counts == 0)
    return fronts


def crowding_distances(profits, cap_bounds) -> np.ndarray:
    """Crowding distance within one front; boundary members get +inf."""
    m = len(profits)
    d = np.zeros(m)
    if m <= 2:
        d[:] = np.inf
        return d
    for obj in (np.asarray(profits, np.float64), np.asarray(cap_bounds, np.float64)):
        order = np.argsort(obj, kind="stable")
        d[order[0]] = d[order[-1]] = np.inf
        spread = obj[order[-1]] - obj[order[0]]
        if spread > 0:
            d[order[1:-1]] += (obj[order[2:]] - obj[order[:-2]]) / spread
    return d


class Nsga2:
    """NSGA-II on (profit up, capacity bound down) with a tracked best
    feasible solution for the current capacity."""

    name = "nsga2"
    pop_size = 20
    crossover_rate = 0.9

    def __init__(self, ctx: _RunContext, rng, capacity: int):
        self.ctx = ctx
        self.rng = rng
        self.bits = rng.integers(0, 2, (self.pop_size, ctx.n), np.uint8)
        self._evaluate_population()
        self.best_feasible = None  # (profit, w, k, bits copy)
        self.generations = 0
        self._fallback = None
        self._consider(self.bits, self.p, self.w, self.k, capacity)

    def _evaluate_population(self):
        b = self.bits.astype(np.int64)
        self.p = b @ self.ctx.profits
        self.w = b @ self.ctx.weights
        self.k = b.sum(axis=1)
        self.cstar = self._bounds(self.w, self.k)

    def _bounds(self, w, k):
        return chance.capacity_bound_array(w, k, self.ctx.delta, self.ctx.alpha,
                                           self.ctx.bound_kind)

    def _consider(self, bits, p, w, k, capacity):
        """Fold freshly evaluated individuals into the tracked best feasible."""
        viol = chance.violation_prob_array(w, k, self.ctx.delta, capacity,
                                           self.ctx.bound_kind)
        feas = viol <= self.ctx.alpha
        if not feas.any():
            return
        idx = np.flatnonzero(feas)
        j = idx[np.argmax(p[idx])]
        if self.best_feasible is None or p[j] > self.best_feasible[0]:
            self.best_feasible = (int(p[j]), int(w[j]), int(k[j]), bits[j].copy())

    def _ranks_and_crowding(self, p, cstar):
        fronts = fast_nondominated_sort(p, cstar)
        ranks = np.empty(len(p), np.int64)
        crowd = np.empty(len(p), np.float64)
        for depth, front in enumerate(fronts):
            ranks[front] = depth
            crowd[front] = crowding_distances(p[front], cstar[front])
        return ranks, crowd, fronts

    def generation(self, capacity: int):
        rng = self.rng
        pop, n = self.pop_size, self.ctx.n
        ranks, crowd, _ = self._ranks_and_crowding(self.p, self.cstar)

        # binary tournaments on (rank, crowding)
        cand = rng.integers(0, pop, size=(pop, 2))
        a, b = cand[:, 0], cand[:, 1]
        a_wins = (ranks[a] < ranks[b]) | ((ranks[a] == ranks[b]) & (crowd[a] >= crowd[b]))
        pool = self.bits[np.where(a_wins, a, b)]

        # uniform crossover on consecutive pairs, then 1/n mutation
        do_cross = rng.random(pop // 2) < self.crossover_rate
        mix = (rng.random((pop // 2, n)) < 0.5) & do_cross[:, None]
        p1, p2 = pool[0::2], pool[1::2]
        children = np.empty_like(pool)
        children[0::2] = np.where(mix, p2, p1)
        children[1::2] = np.where(mix, p1, p2)
        children ^= (rng.random((pop, n)) < self.ctx.inv_n).astype(np.uint8)

        cb = children.astype(np.int64)
        cp = cb @ self.ctx.profits
        cw = cb @ self.ctx.weights
        ck = cb.sum(axis=1)
        c_cstar = self._bounds(cw, ck)
        self._consider(children, cp, cw, ck, capacity)

        # elitist survival over parents + children
        all_bits = np.concatenate([self.bits, children])
        all_p = np.concatenate([self.p, cp])
        all_w = np.concatenate([self.w, cw])
        all_k = np.concatenate([self.k, ck])
        all_c = np.concatenate([self.cstar, c_cstar])
        fronts = fast_nondominated_sort(all_p, all_c)
        chosen = []
        for front in fronts:
            if len(chosen) + len(front) <= pop:
                chosen.extend(front.tolist())
                if len(chosen) == pop:
                    break
            else:
                cd = crowding_distances(all_p[front], all_c[front])
                order = np.argsort(-cd, kind="stable")
                chosen.extend(front[order[: pop - len(chosen)]].tolist())
                break
        chosen = np.asarray(chosen)
        self.bits = all_bits[chosen]
        self.p = all_p[chosen]
        self.w = all_w[chosen]
        self.k = all_k[chosen]
        self.cstar = all_c[chosen]
        self.generations += 1
        self._fallback = None

    def on_change(self, capacity: int):
        self.best_feasible = None
        self._fallback = None
        self._consider(self.bits, self.p, self.w, self.k, capacity)

    def designated_eval(self, capacity: int):
        if self.best_feasible is not None:
            p, w, k, _ = self.best_feasible
            return p, self.ctx.record_viol(w, k, capacity)
        if self._fallback is None or self._fallback[0] != capacity:
            viol = chance.violation_prob_array(self.w, self.k, self.ctx.delta,
                                               capacity, self.ctx.bound_kind)
            j = np.lexsort((-self.p, viol))[0]
            self._fallback = (capacity, int(self.p[j]),
                              self.ctx.record_viol(int(self.w[j]), int(self.k[j]),
                                                   capacity))
        return self._fallback[1], self._fallback[2]


ALGORITHMS = ("ea11", "posdc", "nsga2")


def _make_solver(algo: str, ctx, rng, capacity: int, eta: int):
    if algo == "ea11":
        return OnePlusOneEA(ctx, rng, capacity)
    if algo == "posdc":
        return Posdc(ctx, rng, capacity, eta)
    if algo == "nsga2":
        return Nsga2(ctx, rng, capacity)
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")


def run_algorithm(algo: str, instance, schedule, params: ChanceParams, dp_table,
                  seed: int, eta: int | None = None, trace: bool = False) -> metrics.RunRecord:
    """Run one algorithm through a capacity schedule.

    Applies scheduled capacity changes at the start of their iteration,
    records the designated best solution's offline error for every
    post-warmup iteration, and returns the per-run record. Fully
    deterministic for fixed inputs.
    """
    if params.delta != instance.delta:
        raise ValueError(
            f"params.delta={params.delta} does not match instance delta={instance.delta}")
    if len(dp_table) <= schedule.c_max:
        raise ValueError("DP table does not cover the schedule's capacity range")
    total = schedule.total_iters
    warmup = schedule.warmup
    measured = total - warmup
    if measured <= 0:
        raise ValueError("schedule has no post-warmup iterations; "
                         "total offline error is undefined")
    if eta is None:
        eta = schedule.r

    rng = np.random.default_rng(seed)
    ctx = _RunContext(instance, params)
    capacity = schedule.c0
    solver = _make_solver(algo, ctx, rng, capacity, eta)

    phi = np.empty(measured)
    feasible = np.empty(measured, bool)
    cap_trace = np.empty(measured, np.int64) if trace else None
    profit_trace = np.empty(measured, np.int64) if trace else None
    viol_trace = np.empty(measured, np.float64) if trace else None

    change_iters = schedule.change_iters
    change_caps = schedule.change_caps
    n_changes = len(change_iters)
    ptr = 0
    p_star = int(dp_table[capacity])
    alpha = params.alpha
    evaluations = 0

    def record(i, capacity, p_star):
        j = i - warmup
        p_x, viol = solver.designated_eval(capacity)
        feasible[j] = ok = viol <= alpha
        phi[j] = (p_star - p_x) if ok else (1.0 + viol) * p_star
        if trace:
            cap_trace[j] = capacity
            profit_trace[j] = p_x
            viol_trace[j] = viol

    if algo == "nsga2":
        pending_change = False
        i = 0
        while i < total:
            if pending_change:
                solver.on_change(capacity)
                pending_change = False
            gen_end = min(i + Nsga2.pop_size, total)
            if ptr < n_changes and change_iters[ptr] == i:
                capacity = int(change_caps[ptr])
                p_star = int(dp_table[capacity])
                ptr += 1
                solver.on_change(capacity)
            solver.generation(capacity)
            evaluations += Nsga2.pop_size
            for it in range(i, gen_end):
                if ptr < n_changes and change_iters[ptr] == it and it != i:
                    # mid-generation change: offline error sees it immediately,
                    # the population reacts at the next generation boundary
                    capacity = int(change_caps[ptr])
                    p_star = int(dp_table[capacity])
                    ptr += 1
                    pending_change = True
                if it >= warmup:
                    record(it, capacity, p_star)
            i = gen_end
    else:
        for i in range(total):
            if ptr < n_changes and change_iters[ptr] == i:
                capacity = int(change_caps[ptr])
                p_star = int(dp_table[capacity])
                ptr += 1
                solver.on_change(capacity)
            solver.step(capacity)
            evaluations += 1
            if i >= warmup:
                record(i, capacity, p_star)

    rec = metrics.RunRecord(
        algo=algo,
        bound_kind=params.bound_kind,
        instance_seed=instance.seed,
        run_seed=seed,
        r=schedule.r,
        tau=schedule.tau,
        delta=instance.delta,
        alpha=params.alpha,
        per_iteration_phi=phi,
        total_offline_error=metrics.total_offline_error(phi),
        feasible_fraction=float(feasible.mean()),
        change_count=schedule.change_count,
        evaluations=evaluations,
        capacity_trace=cap_trace,
        best_profit_trace=profit_trace,
        violation_trace=viol_trace,
    )
    return rec
