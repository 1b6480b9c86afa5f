"""Ideal arithmetic: generation, sum, product, powers, index, nilradical,
maximal-ideal enumeration, quotient rings and coset-intersection CRT solving.

All operations are pure functions of immutable inputs. Closures are computed
by worklist BFS over membership sets, which is exact at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InternalConsistencyError
from .rings import FiniteRing, VALIDATION_CAP, idempotents, is_field


@dataclass(frozen=True)
class Ideal:
    """A subset of ring elements closed under addition and absorption.

    ``generators`` is a greedily reduced generating list, kept for rendering;
    ``members`` is the authoritative content.
    """

    ring: FiniteRing
    members: frozenset[int]
    generators: tuple[int, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_proper(self) -> bool:
        return self.ring.one not in self.members

    @property
    def is_zero(self) -> bool:
        return self.members == frozenset({self.ring.zero})

    def contains(self, x: int) -> bool:
        return x in self.members

    def render(self) -> str:
        if not self.generators:
            return f"({self.ring.name(self.ring.zero)})"
        return "(" + ",".join(self.ring.name(g) for g in self.generators) + ")"

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.ring is other.ring
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.ring), self.members))

    def __repr__(self):
        return f"Ideal({self.ring.label}, {self.render()}, size={self.size})"


def _additive_closure(ring, seeds) -> frozenset[int]:
    members = {ring.zero}
    seeds = sorted(set(seeds))
    frontier = [ring.zero]
    while frontier:
        nxt = []
        for m in frontier:
            for s in seeds:
                y = ring.add(m, s)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(members)


def _ideal_closure(ring, gens) -> frozenset[int]:
    seeds = {ring.mul(g, r) for g in gens for r in ring.elements}
    return _additive_closure(ring, seeds)


def _greedy_generators(ring, members) -> tuple[int, ...]:
    gens: list[int] = []
    have: frozenset[int] = frozenset({ring.zero})
    for x in sorted(members):
        if x not in have:
            gens.append(x)
            have = _ideal_closure(ring, gens)
            if have == members:
                break
    return tuple(gens)


def _make_ideal(ring, members) -> Ideal:
    return Ideal(ring, members, _greedy_generators(ring, members))


def zero_ideal(ring: FiniteRing) -> Ideal:
    return Ideal(ring, frozenset({ring.zero}), ())


def unit_ideal(ring: FiniteRing) -> Ideal:
    return Ideal(ring, frozenset(ring.elements), (ring.one,))


def ideal_generated_by(ring: FiniteRing, gens) -> Ideal:
    """Smallest ideal containing the given elements."""
    members = _ideal_closure(ring, tuple(gens))
    return _make_ideal(ring, members)


def _check_same_ring(a: Ideal, b: Ideal):
    if a.ring is not b.ring:
        raise ValueError("ideals belong to different rings")


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _check_same_ring(a, b)
    ring = a.ring
    members = frozenset(ring.add(x, y) for x in a.members for y in b.members)
    return _make_ideal(ring, members)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _check_same_ring(a, b)
    ring = a.ring
    seeds = {ring.mul(x, y) for x in a.members for y in b.members}
    return _make_ideal(ring, _additive_closure(ring, seeds))


def ideal_power(n: Ideal, i: int) -> Ideal:
    """i-th power of an ideal; the 0-th power is the whole ring."""
    if i < 0:
        raise ValueError("ideal powers need a nonnegative exponent")
    acc = unit_ideal(n.ring)
    for _ in range(i):
        acc = ideal_product(acc, n)
    return acc


def ideal_index(n: Ideal) -> int:
    """Least k with N^k = N^(k+1); the chain is stationary from there on."""
    prev = unit_ideal(n.ring)
    cur = n
    k = 0
    while prev.members != cur.members:
        k += 1
        prev, cur = cur, ideal_product(cur, n)
    return k


def nilradical(ring: FiniteRing) -> Ideal:
    """All nilpotent elements, found per element by power iteration with
    cycle detection."""
    members = set()
    for x in ring.elements:
        seen = set()
        y = x
        while y not in seen:
            seen.add(y)
            y = ring.mul(y, x)
        if ring.zero in seen:
            members.add(x)
    return _make_ideal(ring, frozenset(members))


def quotient_ring(ring: FiniteRing, ideal: Ideal) -> tuple[FiniteRing, list[int]]:
    """Cosets of a proper ideal as a ring, plus the projection map.

    Coset representatives are the least member of each coset; coset indices
    follow representative order. The returned list maps every ring element
    index to its coset index.
    """
    if not ideal.is_proper:
        raise ValueError("cannot form a quotient by the unit ideal")
    n = ring.order
    rep_of = [-1] * n
    reps: list[int] = []
    for x in range(n):
        if rep_of[x] < 0:
            for m in ideal.members:
                rep_of[ring.add(x, m)] = x
            reps.append(x)
    pos = {r: i for i, r in enumerate(reps)}
    theta = [pos[rep_of[x]] for x in range(n)]

    def add_fn(i, j):
        return pos[rep_of[ring.add(reps[i], reps[j])]]

    def mul_fn(i, j):
        return pos[rep_of[ring.mul(reps[i], reps[j])]]

    def neg_fn(i):
        return pos[rep_of[ring.neg(reps[i])]]

    label = f"{ring.label}/{ideal.render()}"
    quot = FiniteRing(len(reps), theta[ring.zero], theta[ring.one], label,
                      add_fn=add_fn, mul_fn=mul_fn, neg_fn=neg_fn,
                      names=lambda i: ring.name(reps[i]))
    if n <= VALIDATION_CAP and ring._add_t is not None and quot._add_t is not None:
        th = np.asarray(theta)
        if not np.array_equal(th[ring._add_t], quot._add_t[th[:, None], th[None, :]]):
            raise InternalConsistencyError("projection does not respect addition")
        if not np.array_equal(th[ring._mul_t], quot._mul_t[th[:, None], th[None, :]]):
            raise InternalConsistencyError("projection does not respect multiplication")
    return quot, theta


def maximal_ideals(ring: FiniteRing) -> list[Ideal]:
    """The complete list of maximal ideals, each certified by a field quotient.

    Route: quotient by the nilradical (semisimple, a product of fields),
    take primitive idempotents there, annihilate each, and pull back.
    """
    nil = nilradical(ring)
    semi, theta = quotient_ring(ring, nil)
    idem = sorted(idempotents(semi) - {semi.zero})
    primitive = [e for e in idem
                 if not any(f != e and semi.mul(f, e) == f for f in idem)]
    found = []
    for e in primitive:
        ann = {x for x in semi.elements if semi.mul(x, e) == semi.zero}
        pulled = frozenset(i for i in ring.elements if theta[i] in ann)
        m = _make_ideal(ring, pulled)
        quot, _ = quotient_ring(ring, m)
        if not is_field(quot):
            raise InternalConsistencyError(
                f"candidate maximal ideal {m.render()} has a non-field quotient")
        found.append(m)
    found.sort(key=lambda m: tuple(sorted(m.members)))
    return found


def crt_solve(ring: FiniteRing, constraints) -> int:
    """Least element congruent to a_i modulo Q_i for pairwise coprime ideals Q_i.

    constraints is a list of (Ideal, element) pairs. Solves by intersecting
    the coset membership sets.
    """
    constraints = list(constraints)
    if not constraints:
        raise ValueError("at least one congruence constraint is required")
    for q, _ in constraints:
        if q.ring is not ring:
            raise ValueError("constraint ideal belongs to a different ring")
    for i in range(len(constraints)):
        for j in range(i + 1, len(constraints)):
            if len(ideal_sum(constraints[i][0], constraints[j][0]).members) != ring.order:
                raise ValueError(
                    f"constraint ideals {i} and {j} are not coprime")
    sols = None
    for q, a in constraints:
        coset = {ring.add(a, m) for m in q.members}
        sols = coset if sols is None else (sols & coset)
    if not sols:
        raise InternalConsistencyError("coprime cosets failed to intersect")
    return min(sols)


def is_valid_ideal(ideal: Ideal) -> bool:
    """Exhaustive membership check: additive closure and absorption."""
    ring = ideal.ring
    mem = ideal.members
    if ring.zero not in mem:
        return False
    for x in mem:
        for y in mem:
            if ring.add(x, y) not in mem:
                return False
        for r in ring.elements:
            if ring.mul(x, r) not in mem:
                return False
    return True
