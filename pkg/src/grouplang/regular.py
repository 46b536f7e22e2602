"""Finite automata and the inclusion check of their languages in a group's identity language.

The check labels each automaton arc with the group image of its letter,
closes the label matrix with the all-pairs pivot recurrence
``K[i][j] = K[i][j] | K[i][k] * K[k][j]``, and then tests two things:
no start-to-final cell may contain a non-identity element, and for
every state the conjugates of its cycle labels by its access labels
must collapse to the identity.  Witness words ride along with every
element, so a failed check always names a concrete accepted word that
does not multiply out to the identity.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    BackendMismatch,
    CapExceeded,
    InputError,
    InternalInconsistency,
    SingletonViolation,
)
from .groups import Backend, Word, validate_word
from .semiring import GroupSet, PairSet, product, star, union
from .verdicts import (
    CONJUGATE,
    DISTINCT_LABELS,
    SIMPLE_PATH,
    Fails,
    Holds,
    OpCounters,
    ResourceExceeded,
    RunConfig,
    Verdict,
)


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton over the signed alphabet; states are 1..states.

    Arcs carry exactly one letter; empty-word arcs are rejected.
    """

    states: int
    rank: int
    transitions: frozenset[tuple[int, int, int]]
    start: int = 1
    finals: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.states < 1:
            raise InputError("an automaton needs at least one state")
        if self.rank < 1:
            raise InputError("alphabet rank must be >= 1")
        if not 1 <= self.start <= self.states:
            raise InputError(f"start state {self.start} out of range 1..{self.states}")
        for f in self.finals:
            if not 1 <= f <= self.states:
                raise InputError(f"final state {f} out of range 1..{self.states}")
        for src, letter, dst in self.transitions:
            if not 1 <= src <= self.states or not 1 <= dst <= self.states:
                raise InputError(f"transition ({src}, {letter}, {dst}) leaves 1..{self.states}")
            if letter == 0:
                raise InputError("empty-word transitions are not allowed")
            validate_word((letter,), self.rank)

    def accepts(self, word: Word) -> bool:
        """Subset simulation; independent of the closure machinery."""
        step: dict[tuple[int, int], set[int]] = {}
        for src, letter, dst in self.transitions:
            step.setdefault((src, letter), set()).add(dst)
        current = {self.start}
        for letter in word:
            current = set().union(*(step.get((s, letter), ()) for s in current))
            if not current:
                return False
        return bool(current & self.finals)


_NFA_FIELDS = {"kind", "states", "alphabet_rank", "transitions", "start", "finals"}


def parse_nfa(obj: dict) -> Nfa:
    if not isinstance(obj, dict):
        raise InputError("automaton description must be a JSON object")
    if obj.get("kind", "automaton") != "automaton":
        raise InputError(f"field 'kind' must be 'automaton', got {obj.get('kind')!r}")
    unknown = set(obj) - _NFA_FIELDS
    if unknown:
        raise InputError(f"unknown automaton fields: {sorted(unknown)}")
    for key in ("states", "alphabet_rank", "transitions", "start", "finals"):
        if key not in obj:
            raise InputError(f"missing automaton field {key!r}")
    raw = obj["transitions"]
    if not isinstance(raw, list):
        raise InputError("field 'transitions' must be a list of [from, letter, to]")
    arcs = []
    for t in raw:
        if not isinstance(t, list) or len(t) != 3 or not all(isinstance(v, int) for v in t):
            raise InputError(f"bad transition {t!r}; expected [from, letter, to]")
        arcs.append(tuple(t))
    finals = obj["finals"]
    if not isinstance(finals, list) or not all(isinstance(v, int) for v in finals):
        raise InputError("field 'finals' must be a list of states")
    return Nfa(
        states=obj["states"],
        rank=obj["alphabet_rank"],
        transitions=frozenset(arcs),
        start=obj["start"],
        finals=frozenset(finals),
    )


def nfa_to_dict(a: Nfa) -> dict:
    return {
        "kind": "automaton",
        "states": a.states,
        "alphabet_rank": a.rank,
        "transitions": [list(t) for t in sorted(a.transitions)],
        "start": a.start,
        "finals": sorted(a.finals),
    }


def load_nfa(path: str | Path) -> Nfa:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_nfa(obj)


def useful_states(a: Nfa) -> frozenset[int]:
    """States on some walk from the start to a final state."""
    fwd: dict[int, set[int]] = {}
    bwd: dict[int, set[int]] = {}
    for src, _letter, dst in a.transitions:
        fwd.setdefault(src, set()).add(dst)
        bwd.setdefault(dst, set()).add(src)

    def reach(seeds: set[int], edges: dict[int, set[int]]) -> set[int]:
        seen = set(seeds)
        todo = list(seeds)
        while todo:
            for nxt in edges.get(todo.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    reachable = reach({a.start}, fwd)
    coreachable = reach(set(a.finals), bwd)
    return frozenset(reachable & coreachable)


@dataclass
class LabelMatrix:
    """Grid of label sets indexed by 1-based vertices; the check's workspace.

    ``level`` counts how many pivots the closure has applied; builders
    produce level 0.  ``pair_cells`` selects whether empty cells read as
    empty pair sets or empty element sets.
    """

    backend: Backend
    rows: int
    cols: int
    useful: tuple[int, ...]
    cells: dict[tuple[int, int], GroupSet | PairSet]
    level: int = 0
    pair_cells: bool = False
    _empty: GroupSet | PairSet = field(init=False, repr=False)

    def __post_init__(self):
        self._empty = (PairSet if self.pair_cells else GroupSet).empty(self.backend)

    def cell(self, i: int, j: int):
        return self.cells.get((i, j), self._empty)


def build_initial_matrix(
    a: Nfa,
    backend: Backend,
    *,
    cap: int | None = None,
    useful: frozenset[int] | None = None,
) -> LabelMatrix:
    """Level-0 matrix: cell (i, j) holds the images of the single arcs i -> j.

    When ``useful`` is given, arcs touching other states are dropped, so
    their rows and columns stay empty.
    """
    if a.rank != backend.rank:
        raise BackendMismatch(
            f"automaton rank {a.rank} does not match backend rank {backend.rank}"
        )
    keep = useful if useful is not None else frozenset(range(1, a.states + 1))
    cells: dict[tuple[int, int], GroupSet] = {}
    for src, letter, dst in sorted(a.transitions):
        if src not in keep or dst not in keep:
            continue
        cell = cells.get((src, dst))
        if cell is None:
            cell = GroupSet.empty(backend)
            cells[src, dst] = cell
        elem = backend.canonicalize((letter,))
        old = cell.elements.get(elem)
        if old is None or (1, (letter,)) < (len(old), old):
            cell.elements[elem] = (letter,)
        if cap is not None and len(cell.elements) > cap:
            raise CapExceeded(len(cell.elements), cell=(src, dst))
    mat = LabelMatrix(
        backend=backend,
        rows=a.states,
        cols=a.states,
        useful=tuple(sorted(keep)),
        cells=cells,
    )
    return mat


def _two_smallest_witnesses(cell: GroupSet) -> tuple[Word, Word]:
    wits = sorted(cell.elements.values(), key=lambda w: (len(w), w))
    return wits[0], wits[1]


def closure(
    mat: LabelMatrix,
    *,
    early_fail: bool = True,
    cap: int | None = None,
    counters: OpCounters | None = None,
) -> LabelMatrix:
    """Pivot recurrence over the useful states; mutates ``mat`` in place.

    With ``early_fail`` set, raises :class:`SingletonViolation` the
    moment any useful-to-useful cell holds two distinct elements: two
    different walk labels between one state pair already disprove the
    inclusion, and stopping there keeps every set a singleton on
    instances where the inclusion holds.
    """
    if mat.level != 0:
        raise ValueError("closure expects a level-0 matrix")
    useful = mat.useful
    if early_fail:
        for (i, j), cell in mat.cells.items():
            if len(cell) >= 2:
                raise SingletonViolation(i, j, *_two_smallest_witnesses(cell))
    for k in useful:
        for i in useful:
            left = mat.cell(i, k)
            if not left:
                continue
            for j in useful:
                right = mat.cell(k, j)
                if not right:
                    continue
                try:
                    prod = product(left, right, cap=cap)
                    if counters is not None:
                        counters.products += 1
                    merged = union(mat.cell(i, j), prod, cap=cap)
                    if counters is not None:
                        counters.unions += 1
                except CapExceeded as exc:
                    exc.cell = (i, j)
                    raise
                mat.cells[i, j] = merged
                if early_fail and len(merged) >= 2:
                    raise SingletonViolation(i, j, *_two_smallest_witnesses(merged))
        mat.level += 1
    # Pivots outside the useful set have empty rows and columns, so
    # skipping them never changes a cell; the matrix is fully closed.
    mat.level = mat.rows
    return mat


def shortest_word_path(a: Nfa, source: int, targets: frozenset[int] | set[int]) -> Word | None:
    """Minimal (length, then lexicographic) word labeling a path into ``targets``."""
    if source in targets:
        return ()
    arcs: dict[int, list[tuple[int, int]]] = {}
    for src, letter, dst in a.transitions:
        arcs.setdefault(src, []).append((letter, dst))
    for lst in arcs.values():
        lst.sort()
    heap: list[tuple[int, Word, int]] = [(0, (), source)]
    done: set[int] = set()
    while heap:
        length, word, state = heapq.heappop(heap)
        if state in done:
            continue
        done.add(state)
        if state in targets:
            return word
        for letter, dst in arcs.get(state, ()):
            if dst not in done:
                heapq.heappush(heap, (length + 1, word + (letter,), dst))
    return None


def first_failing_word(backend: Backend, candidates: list[Word]) -> Word:
    """First candidate outside the identity language; at least one must be."""
    for word in candidates:
        if not backend.word_in_group_language(word):
            return word
    raise InternalInconsistency(
        f"all candidate counterexamples map to the identity: {candidates!r}"
    )


def extract_witness(backend: Backend, u: Word, v: Word, w: Word) -> Word:
    """Pick the failing word among u v w and u w.

    When the conjugate of v by u is not the identity, the images of
    u v w and u w differ, so at most one of the two accepted words can
    be the identity.
    """
    return first_failing_word(backend, [u + v + w, u + w])


def check_regular_inclusion(
    a: Nfa,
    backend: Backend,
    config: RunConfig | None = None,
    counters: OpCounters | None = None,
) -> Verdict:
    """Decide whether every word the automaton accepts maps to the group identity."""
    config = config if config is not None else RunConfig()
    if a.rank != backend.rank:
        raise BackendMismatch(
            f"automaton rank {a.rank} does not match backend rank {backend.rank}"
        )
    useful = useful_states(a)
    finals_useful = sorted(a.finals & useful)
    if not finals_useful:
        return Holds()  # empty language; nothing to violate
    try:
        mat = build_initial_matrix(a, backend, cap=config.set_cap, useful=useful)
        closure(mat, early_fail=config.early_fail, cap=config.set_cap, counters=counters)
    except SingletonViolation as sv:
        u = shortest_word_path(a, a.start, {sv.i})
        w = shortest_word_path(a, sv.j, set(finals_useful))
        assert u is not None and w is not None  # i, j are useful
        witness = first_failing_word(backend, [u + sv.witness_a + w, u + sv.witness_b + w])
        return Fails(witness=witness, reason=DISTINCT_LABELS, state=sv.j)
    except CapExceeded as exc:
        return ResourceExceeded(cell=exc.cell, cardinality=exc.cardinality)

    start = a.start
    for t in finals_useful:
        bad = mat.cell(start, t).best_non_identity()
        if bad is not None:
            return Fails(witness=bad[1], reason=SIMPLE_PATH)

    for j in sorted(useful):
        access = mat.cell(start, j)
        cycles = mat.cell(j, j)
        if not access or not cycles:
            continue
        if not any(mat.cell(j, t) for t in finals_useful):
            continue
        try:
            conjugates = star(access, cycles, cap=config.set_cap)
        except CapExceeded as exc:
            return ResourceExceeded(cell=(j, j), cardinality=exc.cardinality)
        if counters is not None:
            counters.stars += 1
        if conjugates.best_non_identity() is None:
            continue
        u, v = _failing_conjugate_witnesses(backend, access, cycles)
        w = _best_exit_witness(mat, j, finals_useful)
        witness = extract_witness(backend, u, v, w)
        return Fails(witness=witness, reason=CONJUGATE, state=j)
    return Holds()


def _failing_conjugate_witnesses(
    backend: Backend, access: GroupSet, cycles: GroupSet
) -> tuple[Word, Word]:
    """Witnesses of the smallest (access, cycle) pair whose conjugate is not the identity."""
    ident = backend.identity
    for x, wx in access.sorted_items():
        x_inv = backend.invert(x)
        for y, wy in cycles.sorted_items():
            if backend.multiply(backend.multiply(x, y), x_inv) != ident:
                return wx, wy
    raise InternalInconsistency("conjugate set had a non-identity element but no pair does")


def _best_exit_witness(mat: LabelMatrix, j: int, finals_useful: list[int]) -> Word:
    best: Word | None = None
    for t in finals_useful:
        for wit in mat.cell(j, t).elements.values():
            if best is None or (len(wit), wit) < (len(best), best):
                best = wit
    assert best is not None  # guarded by the caller
    return best
