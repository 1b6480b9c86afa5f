"""Exhaustive longest-free-sequence search shared by the Davenport and
idempotent-product solvers.

Sequences are enumerated as canonical multisets: candidate elements in
nondecreasing order, so every multiset is visited once. The DFS state is the
product set of the chosen prefix together with the minimum candidate position
still allowed; a branch dies as soon as its product set meets the forbidden
set, which is exact because product sets only grow. States are memoized with
an LRU-capped table mapping (product set, position) to the best extension
depth proven from there.

Optionally the top-level branches fan out to worker processes; results are
merged by maximum length with ties going to the smallest leading candidate,
so the outcome is identical to the sequential run regardless of schedule.
"""

from __future__ import annotations

import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import BudgetExceeded, InternalConsistencyError

MEMO_CAP = 1 << 20


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the exhaustive search: node expansions and wall-clock time."""
    max_nodes: int | None = None
    max_seconds: float | None = None


class _Engine:
    def __init__(self, mul_rows, candidates, forbidden, budget, memo_cap):
        self.rows = mul_rows
        self.cands = tuple(candidates)
        self.forbidden = frozenset(forbidden)
        self.memo: OrderedDict = OrderedDict()
        self.memo_cap = memo_cap
        self.nodes = 0
        self.best_len = 0
        self.enforce = budget is not None
        self.max_nodes = budget.max_nodes if budget else None
        self.deadline = (time.monotonic() + budget.max_seconds
                         if budget and budget.max_seconds is not None else None)

    def expand(self, state, a):
        row_of = self.rows
        new = set(state)
        new.add(a)
        for s in state:
            new.add(row_of[s][a])
        return frozenset(new)

    def longest(self, state, start, depth):
        key = (state, start)
        got = self.memo.get(key)
        if got is not None:
            self.memo.move_to_end(key)
            return got
        self.nodes += 1
        if self.enforce:
            if self.max_nodes is not None and self.nodes > self.max_nodes:
                raise BudgetExceeded("node budget exhausted", self.best_len)
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise BudgetExceeded("time budget exhausted", self.best_len)
        best = 0
        for idx in range(start, len(self.cands)):
            ns = self.expand(state, self.cands[idx])
            if ns.isdisjoint(self.forbidden):
                d = 1 + self.longest(ns, idx, depth + 1)
                if d > best:
                    best = d
        if depth + best > self.best_len:
            self.best_len = depth + best
        self.memo[key] = best
        if len(self.memo) > self.memo_cap:
            self.memo.popitem(last=False)
        return best

    def witness(self, total, state=frozenset(), start=0):
        """Lexicographically least canonical sequence achieving the maximum."""
        self.enforce = False
        seq = []
        remaining = total
        while remaining > 0:
            for idx in range(start, len(self.cands)):
                ns = self.expand(state, self.cands[idx])
                if ns.isdisjoint(self.forbidden) and self.longest(ns, idx, 0) == remaining - 1:
                    seq.append(self.cands[idx])
                    state, start, remaining = ns, idx, remaining - 1
                    break
            else:
                raise InternalConsistencyError("witness reconstruction diverged from the search")
        return tuple(seq)


def _run_branch(args):
    rows, candidates, forbidden, idx, max_nodes, remaining_seconds, memo_cap = args
    budget = None
    if max_nodes is not None or remaining_seconds is not None:
        budget = SearchBudget(max_nodes, remaining_seconds)
    eng = _Engine(rows, candidates, forbidden, budget, memo_cap)
    first = candidates[idx]
    state = eng.expand(frozenset(), first)
    sub = eng.longest(state, idx, 1)
    return idx, 1 + sub, (first,) + eng.witness(sub, state, idx)


def max_free_sequence(mul_rows, candidates, forbidden, *, budget: SearchBudget | None = None,
                      memo_cap: int = MEMO_CAP, workers: int = 1):
    """Length of the longest sequence whose product set avoids ``forbidden``,
    plus the lexicographically least witness of that length.

    ``mul_rows`` is an indexable table of rows covering every index reachable
    by multiplying candidates together.
    """
    candidates = tuple(sorted(candidates))
    forbidden = frozenset(forbidden)
    if workers > 1 and len(candidates) > 1:
        return _parallel(mul_rows, candidates, forbidden, budget, memo_cap, workers)
    eng = _Engine(mul_rows, candidates, forbidden, budget, memo_cap)
    total = eng.longest(frozenset(), 0, 0)
    return total, eng.witness(total)


def _parallel(mul_rows, candidates, forbidden, budget, memo_cap, workers):
    rows = [[int(v) for v in row] for row in mul_rows]
    probe = _Engine(rows, candidates, forbidden, None, memo_cap)
    live = [idx for idx in range(len(candidates))
            if probe.expand(frozenset(), candidates[idx]).isdisjoint(forbidden)]
    if not live:
        return 0, ()
    max_nodes = budget.max_nodes if budget else None
    remaining = budget.max_seconds if budget else None
    jobs = [(rows, candidates, sorted(forbidden), idx, max_nodes, remaining, memo_cap)
            for idx in live]
    best = (0, ())
    failure: BudgetExceeded | None = None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        try:
            for idx, length, wit in pool.map(_run_branch, jobs):
                if length > best[0]:
                    best = (length, wit)
        except BudgetExceeded as exc:
            failure = exc
    if failure is not None:
        raise BudgetExceeded(str(failure), max(best[0], failure.best_length))
    return best
