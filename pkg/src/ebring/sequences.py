"""Multiset sequences over a commutative element-indexed carrier.

A carrier only needs ``mul(i, j)``, ``one`` and ``name(i)``; both rings and
abelian group views qualify. Sequences are order-insensitive: the canonical
form is the nondecreasing list of element indices, and any permutation of
terms denotes the same sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .rings import idempotents

SUBSEQUENCE_ORACLE_CAP = 20


@dataclass(frozen=True)
class Sequence:
    carrier: object
    terms: tuple[int, ...]

    @staticmethod
    def make(carrier, terms) -> "Sequence":
        return Sequence(carrier, tuple(sorted(terms)))

    def __len__(self):
        return len(self.terms)

    def render(self) -> str:
        return ",".join(self.carrier.name(t) for t in self.terms)

    def names(self) -> list[str]:
        return [self.carrier.name(t) for t in self.terms]


def empty_sequence(carrier) -> Sequence:
    return Sequence(carrier, ())


def concat(a: Sequence, b: Sequence) -> Sequence:
    if a.carrier is not b.carrier:
        raise ValueError("sequences live over different carriers")
    return Sequence.make(a.carrier, a.terms + b.terms)


def sequence_product(seq: Sequence) -> int:
    """Product of all terms; the empty product is the carrier identity."""
    return reduce(seq.carrier.mul, seq.terms, seq.carrier.one)


def product_set(seq: Sequence) -> frozenset[int]:
    """Products of all nonempty subsequences, accumulated incrementally.

    Appending a term a maps the set S to S | {a} | S*a, so the whole set
    costs O(|T| * carrier order) instead of 2^|T|.
    """
    mul = seq.carrier.mul
    acc: set[int] = set()
    for a in seq.terms:
        acc |= {a} | {mul(s, a) for s in acc}
    return frozenset(acc)


def subsequences_iter(seq: Sequence):
    """All nonempty subsequences, for brute-force oracles only."""
    n = len(seq.terms)
    if n > SUBSEQUENCE_ORACLE_CAP:
        raise ValueError(f"subsequence enumeration is capped at {SUBSEQUENCE_ORACLE_CAP} terms")
    for mask in range(1, 1 << n):
        yield Sequence.make(seq.carrier,
                            tuple(seq.terms[i] for i in range(n) if mask >> i & 1))


def is_idempotent_product_free(seq: Sequence) -> bool:
    """True iff no nonempty subsequence multiplies to an idempotent."""
    return product_set(seq).isdisjoint(idempotents(seq.carrier))
