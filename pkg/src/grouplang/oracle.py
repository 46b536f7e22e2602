"""Brute-force verification: enumerate language words and test each one.

This is the independent ground truth the closure algorithms are checked
against.  Enumeration is exact up to a length bound and streams words
in length-then-lexicographic order, so the first failing word it
reports is globally minimal.  A clean sweep is evidence at the bound,
not a proof of inclusion.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .errors import BoundExceeded, InputError
from .groups import Backend, Word
from .linear import LinearGrammar, diagram_arcs
from .regular import Nfa


@dataclass(frozen=True)
class EnumerationBound:
    """Length bound plus a word-count safety cap; whichever is hit first stops the run."""

    max_word_length: int
    max_words: int = 1_000_000

    def __post_init__(self):
        if self.max_word_length < 1:
            raise InputError("max_word_length must be >= 1")
        if self.max_words < 1:
            raise InputError("max_words must be >= 1")


@dataclass(frozen=True)
class OracleHolds:
    """Every enumerated word was in the identity language; not a proof beyond the bound."""

    words_checked: int


@dataclass(frozen=True)
class OracleFails:
    """The length-lex smallest enumerated word outside the identity language."""

    witness: Word
    words_checked: int


OracleResult = OracleHolds | OracleFails


def enumerate_nfa_words(a: Nfa, bound: EnumerationBound) -> Iterator[Word]:
    """All accepted words up to the length bound, each once, in length-lex order.

    The frontier maps each live prefix to the set of states it reaches,
    so a word accepted along several runs is still emitted exactly once.
    Prefixes that cannot reach a final state within the remaining length
    are dropped.
    """
    if not a.finals:
        return
    step: dict[int, list[tuple[int, int]]] = {}
    back: dict[int, set[int]] = {}
    for src, letter, dst in a.transitions:
        step.setdefault(src, []).append((letter, dst))
        back.setdefault(dst, set()).add(src)
    for lst in step.values():
        lst.sort()

    # Distance (in arcs) from each state to the nearest final state.
    dist: dict[int, int] = {f: 0 for f in a.finals}
    frontier = set(a.finals)
    d = 0
    while frontier:
        d += 1
        nxt = {s for t in frontier for s in back.get(t, ()) if s not in dist}
        for s in nxt:
            dist[s] = d
        frontier = nxt

    emitted = 0
    level: dict[Word, frozenset[int]] = {}
    if dist.get(a.start, bound.max_word_length + 1) <= bound.max_word_length:
        level[()] = frozenset({a.start})
    for length in range(bound.max_word_length + 1):
        for word in sorted(level):
            if level[word] & a.finals:
                emitted += 1
                if emitted > bound.max_words:
                    raise BoundExceeded("max_words", bound.max_words)
                yield word
        if length == bound.max_word_length or not level:
            break
        remaining = bound.max_word_length - length - 1
        nxt: dict[Word, set[int]] = {}
        for word, states in level.items():
            targets: dict[int, set[int]] = {}
            for s in states:
                for letter, dst in step.get(s, ()):
                    if dist.get(dst, remaining + 1) <= remaining:
                        targets.setdefault(letter, set()).add(dst)
            for letter, dsts in targets.items():
                nxt.setdefault(word + (letter,), set()).update(dsts)
        level = {w: frozenset(s) for w, s in nxt.items()}


def enumerate_grammar_words(g: LinearGrammar, bound: EnumerationBound) -> Iterator[Word]:
    """All generated words up to the length bound, each once, in length-lex order.

    Walks of the grammar's diagram are explored in buckets of emitted
    word length (arcs only ever append letters, so the length never
    shrinks along a walk); a bucket's words are sorted and yielded once
    every walk of that total length has been processed.  Walk states
    (vertex, left part, right part) are deduplicated, which both
    terminates label-free cycles and collapses duplicate derivations.
    """
    arcs: dict[int, list[tuple[int, int, Word, Word]]] = {}
    can_exit: set[int] = {g.sink}
    changed = True
    all_arcs = diagram_arcs(g)
    while changed:
        changed = False
        for src, dst, _l, _r in all_arcs:
            if dst in can_exit and src not in can_exit:
                can_exit.add(src)
                changed = True
    for src, dst, left, right in all_arcs:
        if dst in can_exit:
            arcs.setdefault(src, []).append((dst, left, right))
    if g.start not in can_exit:
        return

    start_state = (g.start, (), ())
    buckets: dict[int, deque] = {0: deque([start_state])}
    seen = {start_state}
    emitted = 0
    for total in range(bound.max_word_length + 1):
        queue = buckets.pop(total, deque())
        collected: set[Word] = set()
        while queue:
            vertex, left, right = queue.popleft()
            if vertex == g.sink:
                collected.add(left + right)
                continue
            for dst, alpha, beta in arcs.get(vertex, ()):
                new_left = left + alpha
                new_right = beta + right
                new_total = len(new_left) + len(new_right)
                if new_total > bound.max_word_length:
                    continue
                state = (dst, new_left, new_right)
                if state in seen:
                    continue
                seen.add(state)
                if new_total == total:
                    queue.append(state)
                else:
                    buckets.setdefault(new_total, deque()).append(state)
        for word in sorted(collected):
            emitted += 1
            if emitted > bound.max_words:
                raise BoundExceeded("max_words", bound.max_words)
            yield word
        if not buckets:
            break


def brute_force_inclusion(words, backend: Backend) -> OracleResult:
    """Test each word of the stream; stop at the first one outside the identity language."""
    checked = 0
    for word in words:
        checked += 1
        if not backend.word_in_group_language(word):
            return OracleFails(witness=word, words_checked=checked)
    return OracleHolds(words_checked=checked)


def counterexample_bound_regular(a: Nfa) -> int:
    """Length bound within which a counterexample exists if any does.

    A failing instance always has one assembled from an acyclic access
    path, at most one simple cycle, and an acyclic exit path, each of at
    most ``states`` arcs.
    """
    return 3 * a.states


def counterexample_bound_linear(g: LinearGrammar) -> int:
    """Length bound for grammars: walk of <= n+1 arcs plus one simple cycle of <= n arcs,
    each arc contributing at most the longest production's letter count."""
    longest = max((len(p.alpha) + len(p.beta) for p in g.productions), default=0)
    return (2 * g.nonterminals + 1) * longest
