"""Group backends over a symmetric generator alphabet.

A word is a tuple of signed integers: letter ``i`` (1-based) stands for
the i-th generator and ``-i`` for its inverse, so inverting a word is
reversing it and flipping signs.  Each backend maps words to a canonical
form on which plain ``==`` decides equality in the group; a word belongs
to the group's identity language exactly when it canonicalizes to the
identity.

>>> FreeGroup(1).canonicalize((1, -1, 1))
(1,)
>>> Cyclic(3).word_in_group_language((1, 1, 1))
True
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .errors import BackendMismatch, CayleyTableError, InputError, LetterOutOfRange

Word = tuple[int, ...]

EPSILON: Word = ()


def inverse_letter(letter: int) -> int:
    return -letter


def inverse_word(word: Word) -> Word:
    """Reverse the word and invert every letter: (uv)^-1 = v^-1 u^-1."""
    return tuple(-x for x in reversed(word))


def validate_word(word: Word, rank: int) -> None:
    for x in word:
        if not isinstance(x, int) or isinstance(x, bool) or x == 0 or abs(x) > rank:
            raise LetterOutOfRange(f"letter {x!r} outside the signed range 1..{rank}")


def word_to_tokens(word: Word) -> str:
    """Render a word as space-separated tokens: x3 for a generator, X3 for its inverse.

    >>> word_to_tokens((1, -2))
    'x1 X2'
    >>> word_to_tokens(())
    '(eps)'
    """
    if not word:
        return "(eps)"
    return " ".join(f"x{x}" if x > 0 else f"X{-x}" for x in word)


def word_from_tokens(text: str) -> Word:
    """Parse the token syntax produced by :func:`word_to_tokens`."""
    text = text.strip()
    if not text or text == "(eps)":
        return ()
    letters = []
    for tok in text.split():
        sign = 1 if tok[0] == "x" else -1 if tok[0] == "X" else 0
        if sign == 0 or not tok[1:].isdigit() or int(tok[1:]) < 1:
            raise InputError(f"bad word token {tok!r}; expected x<n> or X<n>")
        letters.append(sign * int(tok[1:]))
    return tuple(letters)


class GroupBackend:
    """Shared behavior for all backends; concrete classes add canonical forms."""

    rank: int

    @property
    def identity(self):
        raise NotImplementedError

    def canonicalize(self, word: Word):
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def is_identity(self, a) -> bool:
        return a == self.identity

    def word_in_group_language(self, word: Word) -> bool:
        """Does ``word`` multiply out to the identity?"""
        return self.canonicalize(word) == self.identity


@dataclass(frozen=True)
class FreeGroup(GroupBackend):
    """Free group on ``rank`` generators; canonical form is the freely reduced word."""

    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or isinstance(self.rank, bool) or self.rank < 1:
            raise InputError("free group rank must be a positive integer")

    @property
    def identity(self) -> Word:
        return ()

    def canonicalize(self, word: Word) -> Word:
        validate_word(word, self.rank)
        out: list[int] = []
        for x in word:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def multiply(self, a: Word, b: Word) -> Word:
        self._check(a)
        self._check(b)
        out = list(a)
        for x in b:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def invert(self, a: Word) -> Word:
        self._check(a)
        return tuple(-x for x in reversed(a))

    def _check(self, a) -> None:
        if not isinstance(a, tuple):
            raise BackendMismatch(f"{a!r} is not a free-group element (reduced word)")


@dataclass(frozen=True)
class FreeAbelian(GroupBackend):
    """Free abelian group of ``rank``; canonical form is the exponent vector."""

    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or isinstance(self.rank, bool) or self.rank < 1:
            raise InputError("free abelian rank must be a positive integer")

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def canonicalize(self, word: Word) -> tuple[int, ...]:
        validate_word(word, self.rank)
        vec = [0] * self.rank
        for x in word:
            vec[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(vec)

    def multiply(self, a, b):
        self._check(a)
        self._check(b)
        return tuple(p + q for p, q in zip(a, b))

    def invert(self, a):
        self._check(a)
        return tuple(-p for p in a)

    def _check(self, a) -> None:
        if not isinstance(a, tuple) or len(a) != self.rank:
            raise BackendMismatch(f"{a!r} is not a length-{self.rank} exponent vector")


@dataclass(frozen=True)
class Cyclic(GroupBackend):
    """Cyclic group of ``order`` on one generator; canonical form is the residue."""

    order: int

    def __post_init__(self):
        if not isinstance(self.order, int) or isinstance(self.order, bool) or self.order < 1:
            raise InputError("cyclic order must be a positive integer")

    @property
    def rank(self) -> int:
        return 1

    @property
    def identity(self) -> int:
        return 0

    def canonicalize(self, word: Word) -> int:
        validate_word(word, 1)
        total = 0
        for x in word:
            total += 1 if x > 0 else -1
        return total % self.order

    def multiply(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return (a + b) % self.order

    def invert(self, a: int) -> int:
        self._check(a)
        return (-a) % self.order

    def _check(self, a) -> None:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.order:
            raise BackendMismatch(f"{a!r} is not a residue modulo {self.order}")


@dataclass(frozen=True)
class FiniteCayley(GroupBackend):
    """Finite group given by a multiplication table; canonical form is the element index.

    The table is validated at construction: the identity row and column
    must act trivially, every row and column must be a permutation, and
    associativity is checked exhaustively while ``size`` stays within
    ``assoc_check_limit`` (beyond it the O(size^3) sweep is skipped with
    a warning).  Generator inverses are derived from the table rather
    than supplied.
    """

    size: int
    identity_index: int
    table: tuple[tuple[int, ...], ...]
    generator_images: tuple[int, ...]
    assoc_check_limit: int = field(default=64, compare=False, repr=False)

    def __post_init__(self):
        s = self.size
        if not isinstance(s, int) or isinstance(s, bool) or s < 1:
            raise CayleyTableError("size must be a positive integer")
        if not 0 <= self.identity_index < s:
            raise CayleyTableError(f"identity index {self.identity_index} out of range 0..{s - 1}")
        if len(self.table) != s or any(len(row) != s for row in self.table):
            raise CayleyTableError(f"table must be {s}x{s}")
        for row in self.table:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < s:
                    raise CayleyTableError(f"table entry {v!r} out of range 0..{s - 1}")
        e = self.identity_index
        for a in range(s):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise CayleyTableError(f"index {e} does not act as the identity on {a}")
        full = set(range(s))
        for a in range(s):
            if set(self.table[a]) != full:
                raise CayleyTableError(f"row {a} is not a permutation")
            if {self.table[b][a] for b in range(s)} != full:
                raise CayleyTableError(f"column {a} is not a permutation")
        if s <= self.assoc_check_limit:
            for a in range(s):
                ta = self.table[a]
                for b in range(s):
                    tab = ta[b]
                    tb = self.table[b]
                    for c in range(s):
                        if self.table[tab][c] != ta[tb[c]]:
                            raise CayleyTableError(
                                f"not associative at ({a}, {b}, {c})"
                            )
        else:
            warnings.warn(
                f"table size {s} exceeds the associativity check limit "
                f"{self.assoc_check_limit}; skipping the exhaustive check",
                stacklevel=2,
            )
        if not self.generator_images:
            raise CayleyTableError("at least one generator image is required")
        for g in self.generator_images:
            if not isinstance(g, int) or isinstance(g, bool) or not 0 <= g < s:
                raise CayleyTableError(f"generator image {g!r} out of range 0..{s - 1}")

    @property
    def rank(self) -> int:
        return len(self.generator_images)

    @property
    def identity(self) -> int:
        return self.identity_index

    def canonicalize(self, word: Word) -> int:
        validate_word(word, self.rank)
        acc = self.identity_index
        for x in word:
            img = self.generator_images[abs(x) - 1]
            if x < 0:
                img = self.invert(img)
            acc = self.table[acc][img]
        return acc

    def multiply(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self.table[a][b]

    def invert(self, a: int) -> int:
        self._check(a)
        return self.table[a].index(self.identity_index)

    def _check(self, a) -> None:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.size:
            raise BackendMismatch(f"{a!r} is not an element index below {self.size}")


Backend = Union[FreeGroup, FreeAbelian, Cyclic, FiniteCayley]

_GROUP_FIELDS = {
    "free": {"kind", "rank"},
    "free_abelian": {"kind", "rank"},
    "cyclic": {"kind", "order"},
    "cayley": {"kind", "size", "identity", "table", "generator_images"},
}

_PRESENTATION_KEYS = ("relators", "relations", "presentation")


def _require_int(obj: dict, key: str, minimum: int) -> int:
    if key not in obj:
        raise InputError(f"missing field {key!r}")
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise InputError(f"field {key!r} must be an integer >= {minimum}, got {v!r}")
    return v


def parse_group(obj: dict) -> Backend:
    """Build a backend from a parsed group-specification object."""
    if not isinstance(obj, dict):
        raise InputError("group specification must be a JSON object")
    for key in _PRESENTATION_KEYS:
        if key in obj:
            raise InputError(
                "groups given by defining relators are not supported (their word "
                "problem is undecidable in general); use kind free, free_abelian, "
                "cyclic, or cayley"
            )
    kind = obj.get("kind")
    if kind not in _GROUP_FIELDS:
        raise InputError(
            f"field 'kind' must be one of {sorted(_GROUP_FIELDS)}, got {kind!r}"
        )
    unknown = set(obj) - _GROUP_FIELDS[kind]
    if unknown:
        raise InputError(f"unknown fields for kind {kind!r}: {sorted(unknown)}")
    if kind == "free":
        return FreeGroup(_require_int(obj, "rank", 1))
    if kind == "free_abelian":
        return FreeAbelian(_require_int(obj, "rank", 1))
    if kind == "cyclic":
        return Cyclic(_require_int(obj, "order", 1))
    size = _require_int(obj, "size", 1)
    identity = _require_int(obj, "identity", 0)
    table = obj.get("table")
    images = obj.get("generator_images")
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InputError("field 'table' must be a list of rows")
    if not isinstance(images, list):
        raise InputError("field 'generator_images' must be a list")
    return FiniteCayley(
        size=size,
        identity_index=identity,
        table=tuple(tuple(row) for row in table),
        generator_images=tuple(images),
    )


def load_group(path: str | Path) -> Backend:
    """Load a group-specification JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_group(obj)
