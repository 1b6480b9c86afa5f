"""Finite commutative unitary rings on an element-indexed carrier.

Every ring presents the same interface: elements are the indices
``0..order-1`` and the structure is given by total ``add``/``mul``/``neg``
operations plus distinguished ``zero`` and ``one`` indices. Structured
backends (modular integers, finite fields, polynomial quotients, products)
materialize full numpy operation tables up to ``TABLE_CAP`` elements and
fall back to on-demand evaluation above it. Rings of order up to
``VALIDATION_CAP`` are exhaustively checked against the ring axioms at
construction time; structured backends above the cap are trusted by
construction, while raw table input above the cap is rejected because it
carries no correctness guarantee.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence as Seq

import numpy as np

from . import gfpoly
from .errors import AxiomViolation

TABLE_CAP = 4096
VALIDATION_CAP = 512


class FiniteRing:
    """A finite commutative unitary ring with elements indexed 0..order-1."""

    def __init__(self, order: int, zero: int, one: int, label: str, *,
                 add_table=None, mul_table=None,
                 add_fn: Callable[[int, int], int] | None = None,
                 mul_fn: Callable[[int, int], int] | None = None,
                 neg_fn: Callable[[int], int] | None = None,
                 names: Callable[[int], str] | Seq[str] | None = None,
                 validate: bool = True):
        if order < 2:
            raise ValueError("a unitary nonzero ring needs at least two elements")
        self.order = order
        self.zero = zero
        self.one = one
        self.label = label
        self._names = names
        self._add_fn = add_fn
        self._mul_fn = mul_fn
        self._neg_fn = neg_fn
        self._units: frozenset[int] | None = None
        self._idempotents: frozenset[int] | None = None
        self._char: int | None = None

        if add_table is not None:
            self._add_t = np.asarray(add_table, dtype=np.int32).reshape(order, order)
            self._mul_t = np.asarray(mul_table, dtype=np.int32).reshape(order, order)
        elif order <= TABLE_CAP:
            self._add_t = _table_from_fn(order, add_fn)
            self._mul_t = _table_from_fn(order, mul_fn)
        else:
            self._add_t = self._mul_t = None

        if validate and order <= VALIDATION_CAP:
            validate_ring(self)

        if self._add_t is not None:
            self._neg_t = np.argmax(self._add_t == zero, axis=1).astype(np.int32)
        else:
            if neg_fn is None:
                raise ValueError("rings beyond the table cap need an explicit negation")
            self._neg_t = None

    # element operations -------------------------------------------------

    def add(self, i: int, j: int) -> int:
        if self._add_t is not None:
            return int(self._add_t[i, j])
        return self._add_fn(i, j)

    def mul(self, i: int, j: int) -> int:
        if self._mul_t is not None:
            return int(self._mul_t[i, j])
        return self._mul_fn(i, j)

    def neg(self, i: int) -> int:
        if self._neg_t is not None:
            return int(self._neg_t[i])
        return self._neg_fn(i)

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))

    def inverse(self, x: int) -> Optional[int]:
        return inverse(self, x)

    def name(self, i: int) -> str:
        if self._names is None:
            return str(i)
        if callable(self._names):
            return self._names(i)
        return self._names[i]

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def char(self) -> int:
        """Characteristic: the additive order of 1."""
        if self._char is None:
            acc, c = self.one, 1
            while acc != self.zero:
                acc = self.add(acc, self.one)
                c += 1
            self._char = c
        return self._char

    def mul_rows(self) -> list[list[int]] | None:
        """Multiplication table as plain lists, or None above the table cap."""
        if self._mul_t is None:
            return None
        return [[int(v) for v in row] for row in self._mul_t]

    def __repr__(self):
        return f"FiniteRing({self.label}, order={self.order})"


def _table_from_fn(order, fn):
    t = np.empty((order, order), dtype=np.int32)
    for i in range(order):
        t[i] = [fn(i, j) for j in range(order)]
    return t


# axioms -------------------------------------------------------------------

def validate_ring(ring: FiniteRing) -> None:
    """Exhaustively check every ring axiom; raise AxiomViolation with a witness.

    Requires materialized tables, so it only applies up to the table cap.
    """
    a, m = ring._add_t, ring._mul_t
    if a is None or m is None:
        raise ValueError("cannot exhaustively validate a ring without tables")
    n = ring.order
    rng = np.arange(n)
    for opname, t in (("addition", a), ("multiplication", m)):
        if int(t.min()) < 0 or int(t.max()) >= n:
            bad = np.argwhere((t < 0) | (t >= n))[0]
            raise AxiomViolation(f"{opname} closure", (int(bad[0]), int(bad[1])))
        if not np.array_equal(t, t.T):
            bad = np.argwhere(t != t.T)[0]
            raise AxiomViolation(f"{opname} commutativity", (int(bad[0]), int(bad[1])))
    if ring.zero == ring.one:
        raise AxiomViolation("distinct identities", (ring.zero,))
    if not np.array_equal(a[ring.zero], rng):
        j = int(np.argwhere(a[ring.zero] != rng)[0][0])
        raise AxiomViolation("additive identity", (ring.zero, j))
    if not np.array_equal(m[ring.one], rng):
        j = int(np.argwhere(m[ring.one] != rng)[0][0])
        raise AxiomViolation("multiplicative identity", (ring.one, j))
    if not bool((a == ring.zero).any(axis=1).all()):
        i = int(np.argwhere(~(a == ring.zero).any(axis=1))[0][0])
        raise AxiomViolation("additive inverse", (i,))
    for i in range(n):
        left = a[a[i], :]
        right = a[i, a]
        if not np.array_equal(left, right):
            j, k = np.argwhere(left != right)[0]
            raise AxiomViolation("addition associativity", (i, int(j), int(k)))
        left = m[m[i], :]
        right = m[i, m]
        if not np.array_equal(left, right):
            j, k = np.argwhere(left != right)[0]
            raise AxiomViolation("multiplication associativity", (i, int(j), int(k)))
        row = m[i]
        left = m[i, a]
        right = a[row[:, None], row[None, :]]
        if not np.array_equal(left, right):
            j, k = np.argwhere(left != right)[0]
            raise AxiomViolation("distributivity", (i, int(j), int(k)))


# constructors --------------------------------------------------------------

def make_zmod(n: int) -> FiniteRing:
    """The ring of integers modulo n."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    return _zmod(n, f"Z/{n}")


def _zmod(n, label):
    if n <= TABLE_CAP:
        i = np.arange(n, dtype=np.int64)
        add = (i[:, None] + i[None, :]) % n
        mul = (i[:, None] * i[None, :]) % n
        return FiniteRing(n, 0, 1, label, add_table=add, mul_table=mul)
    return FiniteRing(n, 0, 1, label,
                      add_fn=lambda x, y: (x + y) % n,
                      mul_fn=lambda x, y: (x * y) % n,
                      neg_fn=lambda x: (-x) % n)


def _prime_power(q):
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            k, t = 0, q
            while t % p == 0:
                t //= p
                k += 1
            return (p, k) if t == 1 else None
        p += 1
    return (q, 1)


def make_gf(q: int, cap: int = VALIDATION_CAP) -> FiniteRing:
    """The finite field with q elements; q must be a prime power within cap."""
    pk = _prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    if q > cap:
        raise ValueError(f"field order {q} exceeds the cap {cap}")
    p, k = pk
    if k == 1:
        return _zmod(p, f"GF({p})")
    base = make_gf(p, cap)
    modulus = gfpoly.find_irreducible(base, k)
    return make_poly_quotient(base, modulus, label=f"GF({q})")


def make_poly_quotient(base: FiniteRing, f, label: str | None = None) -> FiniteRing:
    """Residue ring of base[x] modulo a monic polynomial f of degree >= 1.

    f is given as base element indices in ascending degree order. Elements of
    the quotient are residue polynomials of degree < deg(f), packed into a
    single index whose base-q digits are the coefficient indices.
    """
    if not is_field(base):
        raise ValueError("polynomial quotients are only built over a field")
    f = gfpoly.trim(base, tuple(f))
    if not gfpoly.is_monic(base, f):
        raise ValueError("modulus polynomial must be monic")
    d = gfpoly.degree(f)
    if d < 1:
        raise ValueError("modulus polynomial must have degree at least 1")
    q = base.order
    order = q ** d
    if base._add_t is None:
        raise ValueError("base field is too large to serve as a coefficient field")

    badd = base._add_t.tolist()
    bmul = base._mul_t.tolist()
    bzero, bone = base.zero, base.one
    bneg = [base.neg(c) for c in range(q)]

    # coefficient vectors of x^e mod f for e in [d, 2d-2]
    red = []
    if d >= 2:
        cur = [bneg[c] for c in f[:d]]
        red.append(cur)
        for _ in range(d - 2):
            top = cur[d - 1]
            nxt = [bzero] + cur[:d - 1]
            if top != bzero:
                trow = bmul[top]
                nxt = [badd[o][trow[r]] for o, r in zip(nxt, red[0])]
            red.append(nxt)
            cur = nxt

    def decode(idx):
        digits = []
        for _ in range(d):
            digits.append(idx % q)
            idx //= q
        return digits

    def encode(digits):
        idx = 0
        for e in range(d - 1, -1, -1):
            idx = idx * q + digits[e]
        return idx

    def add_fn(i, j):
        return encode([badd[a][b] for a, b in zip(decode(i), decode(j))])

    def mul_fn(i, j):
        a_dig, b_dig = decode(i), decode(j)
        conv = [bzero] * (2 * d - 1)
        for s in range(d):
            a = a_dig[s]
            if a == bzero:
                continue
            arow = bmul[a]
            for t in range(d):
                b = b_dig[t]
                if b != bzero:
                    k = s + t
                    conv[k] = badd[conv[k]][arow[b]]
        out = conv[:d]
        for e in range(d, 2 * d - 1):
            c = conv[e]
            if c != bzero:
                crow = bmul[c]
                out = [badd[o][crow[r]] for o, r in zip(out, red[e - d])]
        return encode(out)

    def neg_fn(i):
        return encode([bneg[c] for c in decode(i)])

    def name_fn(i):
        digits = decode(i)
        while digits and digits[-1] == bzero:
            digits.pop()
        return gfpoly.render(base, tuple(digits))

    zero_idx = encode([bzero] * d)
    one_idx = encode([bone] + [bzero] * (d - 1))
    if label is None:
        label = f"{base.label}[x]/({gfpoly.render(base, f)})"
    return FiniteRing(order, zero_idx, one_idx, label,
                      add_fn=add_fn, mul_fn=mul_fn, neg_fn=neg_fn, names=name_fn)


def make_product(factors: Seq[FiniteRing], label: str | None = None) -> FiniteRing:
    """Componentwise product ring on the Cartesian product of the factors."""
    if not factors:
        raise ValueError("a product ring needs at least one factor")
    sizes = [f.order for f in factors]
    order = 1
    for s in sizes:
        order *= s
        if order > TABLE_CAP:
            raise ValueError(f"product order exceeds the cap {TABLE_CAP}")
    weights = []
    w = 1
    for s in sizes:
        weights.append(w)
        w *= s

    def decode(idx):
        return tuple((idx // weights[k]) % sizes[k] for k in range(len(sizes)))

    def encode(digits):
        return sum(dk * weights[k] for k, dk in enumerate(digits))

    zero = encode([f.zero for f in factors])
    one = encode([f.one for f in factors])

    if all(f._add_t is not None for f in factors):
        idx = np.arange(order, dtype=np.int64)
        add = np.zeros((order, order), dtype=np.int64)
        mul = np.zeros((order, order), dtype=np.int64)
        for k, f in enumerate(factors):
            dk = (idx // weights[k]) % sizes[k]
            add += f._add_t[dk[:, None], dk[None, :]].astype(np.int64) * weights[k]
            mul += f._mul_t[dk[:, None], dk[None, :]].astype(np.int64) * weights[k]
        ring = FiniteRing(order, zero, one, label or " x ".join(f.label for f in factors),
                          add_table=add, mul_table=mul,
                          names=lambda i: _tuple_name(factors, decode(i)))
        return ring

    def add_fn(i, j):
        return encode([f.add(a, b) for f, a, b in zip(factors, decode(i), decode(j))])

    def mul_fn(i, j):
        return encode([f.mul(a, b) for f, a, b in zip(factors, decode(i), decode(j))])

    def neg_fn(i):
        return encode([f.neg(a) for f, a in zip(factors, decode(i))])

    return FiniteRing(order, zero, one, label or " x ".join(f.label for f in factors),
                      add_fn=add_fn, mul_fn=mul_fn, neg_fn=neg_fn,
                      names=lambda i: _tuple_name(factors, decode(i)))


def _tuple_name(factors, digits):
    return "(" + ",".join(f.name(dk) for f, dk in zip(factors, digits)) + ")"


def make_from_table(n: int, add_table, mul_table, names: Seq[str] | None = None,
                    label: str = "table ring") -> FiniteRing:
    """Build and fully validate a ring from raw n-by-n operation tables.

    Table input above the validation cap is rejected: unlike the structured
    backends there is nothing to trust it by.
    """
    if n < 2:
        raise ValueError("a unitary nonzero ring needs at least two elements")
    if n > VALIDATION_CAP:
        raise ValueError(f"table rings above {VALIDATION_CAP} elements cannot be validated")
    add = np.asarray(add_table, dtype=np.int64)
    mul = np.asarray(mul_table, dtype=np.int64)
    if add.size != n * n or mul.size != n * n:
        raise ValueError("operation tables must have n*n entries")
    add = add.reshape(n, n)
    mul = mul.reshape(n, n)
    if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        t = add if (add.min() < 0 or add.max() >= n) else mul
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise AxiomViolation("closure", (int(bad[0]), int(bad[1])))
    rng = np.arange(n)
    zeros = [i for i in range(n) if np.array_equal(add[i], rng)]
    if not zeros:
        raise AxiomViolation("additive identity", ())
    ones = [i for i in range(n) if np.array_equal(mul[i], rng)]
    if not ones:
        raise AxiomViolation("multiplicative identity", ())
    if names is not None and len(names) != n:
        raise ValueError("names must list one string per element")
    return FiniteRing(n, zeros[0], ones[0], label,
                      add_table=add, mul_table=mul,
                      names=list(names) if names is not None else None)


# queries --------------------------------------------------------------------

def units(ring: FiniteRing) -> frozenset[int]:
    """All elements with a multiplicative inverse."""
    if ring._units is None:
        if ring._mul_t is not None:
            hit = (ring._mul_t == ring.one).any(axis=1)
            ring._units = frozenset(int(i) for i in np.where(hit)[0])
        else:
            ring._units = frozenset(
                x for x in ring.elements
                if any(ring.mul(x, y) == ring.one for y in ring.elements))
    return ring._units


def idempotents(ring: FiniteRing) -> frozenset[int]:
    """All elements equal to their own square; always contains 0 and 1."""
    if ring._idempotents is None:
        if ring._mul_t is not None:
            diag = ring._mul_t.diagonal()
            ring._idempotents = frozenset(
                int(i) for i in np.where(diag == np.arange(ring.order))[0])
        else:
            ring._idempotents = frozenset(
                x for x in ring.elements if ring.mul(x, x) == x)
    return ring._idempotents


def is_field(ring: FiniteRing) -> bool:
    return len(units(ring)) == ring.order - 1


def mul_power(ring: FiniteRing, x: int, k: int) -> int:
    """x raised to a nonnegative integer power; x^0 is 1."""
    if k < 0:
        raise ValueError("negative powers are not defined in a ring")
    acc = ring.one
    base = x
    while k:
        if k & 1:
            acc = ring.mul(acc, base)
        k >>= 1
        if k:
            base = ring.mul(base, base)
    return acc


def inverse(ring: FiniteRing, x: int) -> Optional[int]:
    """The multiplicative inverse of x, or None when x is not a unit."""
    if ring._mul_t is not None:
        hits = np.where(ring._mul_t[x] == ring.one)[0]
        return int(hits[0]) if hits.size else None
    for y in ring.elements:
        if ring.mul(x, y) == ring.one:
            return y
    return None
