"""Witness-carrying sets of group elements and of element pairs.

These are the label sets the closure algorithms push around: finite
maps from a canonical element to one word that evaluates to it.  All
operations return fresh sets; existing sets are never mutated.  When
two witnesses compete for the same element the shorter one wins, ties
broken lexicographically on the letter sequence, so retained witnesses
do not depend on iteration order.

``GroupSet`` lives in the semiring of subsets of a group under union
and elementwise product (zero: the empty set, one: the identity
singleton).  ``PairSet`` is the analogue over pairs, multiplied with
the ``diamond`` operation (x, y) . (z, t) = (xz, ty) that models how a
production wraps text around both sides of a nonterminal.
"""

from __future__ import annotations

from typing import Iterable

from .errors import BackendMismatch, CapExceeded
from .groups import Backend, Word, inverse_word


def better_witness(a: Word, b: Word) -> Word:
    return a if (len(a), a) <= (len(b), b) else b


def _check_cap(size: int, cap: int | None) -> None:
    if cap is not None and size > cap:
        raise CapExceeded(size)


def _same_backend(x, y) -> None:
    if x.backend != y.backend:
        raise BackendMismatch(f"mixed backends: {x.backend!r} vs {y.backend!r}")


class GroupSet:
    """Finite set of canonical group elements, each with one witness word."""

    __slots__ = ("backend", "elements")

    def __init__(self, backend: Backend, elements: dict | None = None):
        self.backend = backend
        self.elements: dict = elements if elements is not None else {}

    @classmethod
    def empty(cls, backend: Backend) -> "GroupSet":
        return cls(backend)

    @classmethod
    def identity(cls, backend: Backend) -> "GroupSet":
        return cls(backend, {backend.identity: ()})

    @classmethod
    def from_witness_words(cls, backend: Backend, words: Iterable[Word]) -> "GroupSet":
        out: dict = {}
        for w in words:
            w = tuple(w)
            _merge(out, backend.canonicalize(w), w)
        return cls(backend, out)

    @staticmethod
    def witness_key(wit: Word) -> tuple:
        return (len(wit), wit)

    def __len__(self) -> int:
        return len(self.elements)

    def __bool__(self) -> bool:
        return bool(self.elements)

    def __contains__(self, elem) -> bool:
        return elem in self.elements

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupSet)
            and self.backend == other.backend
            and self.elements == other.elements
        )

    def __repr__(self) -> str:
        return f"GroupSet({self.elements!r})"

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def witness(self, elem) -> Word:
        return self.elements[elem]

    def sorted_items(self) -> list:
        return sorted(self.elements.items(), key=lambda kv: (len(kv[1]), kv[1]))

    def best_non_identity(self):
        """The non-identity element with the smallest witness, or None."""
        ident = self.backend.identity
        best = None
        for elem, wit in self.elements.items():
            if elem != ident and (best is None or (len(wit), wit) < (len(best[1]), best[1])):
                best = (elem, wit)
        return best

    def is_identity_singleton(self) -> bool:
        return len(self.elements) == 1 and self.backend.identity in self.elements

    def check_witnesses(self) -> None:
        """Assert that every stored witness evaluates to its element."""
        for elem, wit in self.elements.items():
            got = self.backend.canonicalize(wit)
            if got != elem:
                raise AssertionError(f"witness {wit!r} evaluates to {got!r}, not {elem!r}")


class PairSet:
    """Finite set of canonical element pairs, each with a witness word pair."""

    __slots__ = ("backend", "elements")

    def __init__(self, backend: Backend, elements: dict | None = None):
        self.backend = backend
        self.elements: dict = elements if elements is not None else {}

    @classmethod
    def empty(cls, backend: Backend) -> "PairSet":
        return cls(backend)

    @classmethod
    def identity(cls, backend: Backend) -> "PairSet":
        e = backend.identity
        return cls(backend, {(e, e): ((), ())})

    @staticmethod
    def witness_key(wit: tuple[Word, Word]) -> tuple:
        wl, wr = wit
        return (len(wl) + len(wr), wl, wr)

    def __len__(self) -> int:
        return len(self.elements)

    def __bool__(self) -> bool:
        return bool(self.elements)

    def __contains__(self, pair) -> bool:
        return pair in self.elements

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PairSet)
            and self.backend == other.backend
            and self.elements == other.elements
        )

    def __repr__(self) -> str:
        return f"PairSet({self.elements!r})"

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def witness(self, pair) -> tuple[Word, Word]:
        return self.elements[pair]

    def sorted_items(self) -> list:
        return sorted(self.elements.items(), key=lambda kv: PairSet.witness_key(kv[1]))

    def check_witnesses(self) -> None:
        for (left, right), (wl, wr) in self.elements.items():
            if self.backend.canonicalize(wl) != left or self.backend.canonicalize(wr) != right:
                raise AssertionError(f"witness pair ({wl!r}, {wr!r}) does not evaluate to ({left!r}, {right!r})")


def _merge(elements: dict, key, wit: Word) -> None:
    old = elements.get(key)
    if old is None or (len(wit), wit) < (len(old), old):
        elements[key] = wit


def _merge_pair(elements: dict, key, wit: tuple[Word, Word]) -> None:
    old = elements.get(key)
    if old is None or PairSet.witness_key(wit) < PairSet.witness_key(old):
        elements[key] = wit


def union(x, y, *, cap: int | None = None):
    """Elementwise union; on collisions the better witness is retained."""
    _same_backend(x, y)
    if type(x) is not type(y):
        raise BackendMismatch("cannot union a GroupSet with a PairSet")
    if not x.elements:
        return y
    if not y.elements:
        return x
    merged = dict(x.elements)
    key = type(x).witness_key
    for elem, wit in y.elements.items():
        old = merged.get(elem)
        if old is None or key(wit) < key(old):
            merged[elem] = wit
    _check_cap(len(merged), cap)
    return type(x)(x.backend, merged)


def product(x: GroupSet, y: GroupSet, *, cap: int | None = None) -> GroupSet:
    """All pairwise products; the zero (empty set) annihilates."""
    _same_backend(x, y)
    if not x.elements or not y.elements:
        return GroupSet.empty(x.backend)
    backend = x.backend
    out: dict = {}
    for a, wa in x.elements.items():
        for b, wb in y.elements.items():
            _merge(out, backend.multiply(a, b), wa + wb)
            _check_cap(len(out), cap)
    return GroupSet(backend, out)


def star(x: GroupSet, y: GroupSet, *, cap: int | None = None) -> GroupSet:
    """All conjugates a b a^-1 with a from ``x`` and b from ``y``."""
    _same_backend(x, y)
    if not x.elements or not y.elements:
        return GroupSet.empty(x.backend)
    backend = x.backend
    out: dict = {}
    for a, wa in x.elements.items():
        a_inv = backend.invert(a)
        wa_inv = inverse_word(wa)
        for b, wb in y.elements.items():
            conj = backend.multiply(backend.multiply(a, b), a_inv)
            _merge(out, conj, wa + wb + wa_inv)
            _check_cap(len(out), cap)
    return GroupSet(backend, out)


def diamond(x: PairSet, y: PairSet, *, cap: int | None = None) -> PairSet:
    """Pairwise (a, b) . (c, d) = (ac, db); note the reversed right component."""
    _same_backend(x, y)
    if not x.elements or not y.elements:
        return PairSet.empty(x.backend)
    backend = x.backend
    out: dict = {}
    for (al, ar), (wal, war) in x.elements.items():
        for (bl, br), (wbl, wbr) in y.elements.items():
            key = (backend.multiply(al, bl), backend.multiply(br, ar))
            _merge_pair(out, key, (wal + wbl, wbr + war))
            _check_cap(len(out), cap)
    return PairSet(backend, out)


def proj_left(p: PairSet) -> GroupSet:
    out: dict = {}
    for (left, _right), (wl, _wr) in p.elements.items():
        _merge(out, left, wl)
    return GroupSet(p.backend, out)


def proj_right(p: PairSet) -> GroupSet:
    out: dict = {}
    for (_left, right), (_wl, wr) in p.elements.items():
        _merge(out, right, wr)
    return GroupSet(p.backend, out)


def proj_product(p: PairSet) -> GroupSet:
    """Image of each pair under multiplication of its components."""
    backend = p.backend
    out: dict = {}
    for (left, right), (wl, wr) in p.elements.items():
        _merge(out, backend.multiply(left, right), wl + wr)
    return GroupSet(backend, out)


def triple_literal(x: GroupSet, y: GroupSet, z: GroupSet, *, cap: int | None = None) -> GroupSet:
    """All products a b c b^-1 with the three factors drawn independently.

    Kept for comparison with :func:`triple_paired`; drawing the outer
    factors independently can manufacture values no actual derivation
    produces.
    """
    _same_backend(x, y)
    _same_backend(y, z)
    if not x.elements or not y.elements or not z.elements:
        return GroupSet.empty(x.backend)
    backend = x.backend
    out: dict = {}
    for a, wa in x.elements.items():
        for b, wb in y.elements.items():
            b_inv = backend.invert(b)
            wb_inv = inverse_word(wb)
            ab = backend.multiply(a, b)
            for c, wc in z.elements.items():
                _merge(out, backend.multiply(backend.multiply(ab, c), b_inv), wa + wb + wc + wb_inv)
                _check_cap(len(out), cap)
    return GroupSet(backend, out)


def triple_paired(p: PairSet, v: GroupSet, *, cap: int | None = None) -> GroupSet:
    """All products u w_mid w w_mid^-1 where (u, w) is one pair from ``p``.

    Unlike :func:`triple_literal` the outer factors come from the same
    pair, so every value corresponds to an actual cycle label wrapped
    around an actual tail.
    """
    _same_backend(p, v)
    if not p.elements or not v.elements:
        return GroupSet.empty(p.backend)
    backend = p.backend
    out: dict = {}
    for (u, w), (wu, ww) in p.elements.items():
        for mid, wmid in v.elements.items():
            mid_inv = backend.invert(mid)
            value = backend.multiply(
                backend.multiply(backend.multiply(u, mid), w), mid_inv
            )
            _merge(out, value, wu + wmid + ww + inverse_word(wmid))
            _check_cap(len(out), cap)
    return GroupSet(backend, out)
