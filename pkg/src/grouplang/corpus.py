"""Seeded random automata and grammars for agreement testing.

Half the instances are generated with inverse-paired arcs (an arc and
its reversed inverse-letter twin) or mirrored production sides, which
biases them toward inclusions that hold; plain random instances mostly
fail, and a useful corpus needs both.
"""

from __future__ import annotations

import random

from .linear import LinearGrammar, Production
from .regular import Nfa

_PIECE_SHAPES = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2))


def random_nfa(
    rng: random.Random,
    *,
    max_states: int = 5,
    rank: int = 2,
    density: float = 0.2,
    inverse_paired: bool = False,
) -> Nfa:
    n = rng.randint(1, max_states)
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    arcs: set[tuple[int, int, int]] = set()
    rate = density / 2 if inverse_paired else density
    for src in range(1, n + 1):
        for dst in range(1, n + 1):
            for letter in letters:
                if rng.random() < rate:
                    arcs.add((src, letter, dst))
                    if inverse_paired:
                        arcs.add((dst, -letter, src))
    finals = frozenset(s for s in range(1, n + 1) if rng.random() < 0.35)
    return Nfa(states=n, rank=rank, transitions=frozenset(arcs), start=1, finals=finals)


def random_linear_grammar(
    rng: random.Random,
    *,
    max_nonterminals: int = 4,
    rank: int = 2,
    max_productions: int = 7,
    mirrored: bool = False,
) -> LinearGrammar:
    n = rng.randint(1, max_nonterminals)
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]

    def piece(size: int) -> tuple[int, ...]:
        return tuple(rng.choice(letters) for _ in range(size))

    prods: list[Production] = []
    for _ in range(rng.randint(1, max_productions)):
        lhs = rng.randint(1, n)
        if rng.random() < 0.35:
            prods.append(Production(lhs=lhs, alpha=piece(rng.randint(0, 2))))
        else:
            rhs = rng.randint(1, n)
            if mirrored and rng.random() < 0.6:
                alpha = piece(1)
                beta = tuple(-x for x in reversed(alpha))
            else:
                la, lb = rng.choice(_PIECE_SHAPES)
                alpha, beta = piece(la), piece(lb)
            prods.append(Production(lhs=lhs, alpha=alpha, rhs=rhs, beta=beta))
    # Keep a healthy share of nonempty languages in the mix.
    if not any(p.rhs is None for p in prods) and rng.random() < 0.6:
        prods.append(Production(lhs=rng.randint(1, n), alpha=piece(rng.randint(0, 2))))
    return LinearGrammar(nonterminals=n, rank=rank, productions=tuple(prods), start=1)


def nfa_corpus(seed: int, count: int, *, rank: int, max_states: int = 5) -> list[Nfa]:
    """Deterministic batch with varied density and arc style."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        density = rng.choice((0.05, 0.1, 0.2, 0.35, 0.5))
        out.append(
            random_nfa(
                rng,
                max_states=max_states,
                rank=rank,
                density=density,
                inverse_paired=rng.random() < 0.5,
            )
        )
    return out


def grammar_corpus(
    seed: int, count: int, *, rank: int, max_nonterminals: int = 4
) -> list[LinearGrammar]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(
            random_linear_grammar(
                rng,
                max_nonterminals=max_nonterminals,
                rank=rank,
                max_productions=rng.randint(2, 7),
                mirrored=rng.random() < 0.5,
            )
        )
    return out
