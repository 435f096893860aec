"""
Bounded breadth-first search over the closed-braid move graph.

Nodes are conjugacy classes (deduplicated by Garside super-summit keys),
edges are the implemented moves.  Two move sets are supported: the full
topological set (stabilization and destabilization of both signs, exchange,
3-braid flypes) and the transverse set (positive stabilization and
destabilization, exchange) whose moves all preserve the self-linking
number.  Flypes are excluded from the transverse set: their transverse
legality is not a given, and the negative flype in particular changes the
transverse type of the pinned examples.

A ``found`` result carries a replayable :class:`MoveSequence`; an
``exhausted`` result means the bounded graph was used up, which is
evidence, never a disproof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import garside
from .garside import SuperSummitCapError
from .moves import (
    MoveSequence,
    MoveStep,
    apply_move,
    find_exchange_decompositions,
    find_flype_decompositions,
    try_destabilize,
)
from .words import BraidWord, free_reduce

TOPOLOGICAL = "topological"
TRANSVERSE = "transverse"


@dataclass(frozen=True)
class SearchBounds:
    max_strands: int = 5
    max_word_length: int = 24
    max_nodes: int = 100_000
    move_set: str = TOPOLOGICAL

    def __post_init__(self):
        if self.max_strands < 1 or self.max_word_length < 0 or self.max_nodes < 1:
            raise ValueError("all bounds must be positive")
        if self.move_set not in (TOPOLOGICAL, TRANSVERSE):
            raise ValueError(f"unknown move set {self.move_set!r}")


@dataclass(frozen=True)
class SearchStats:
    nodes_expanded: int
    frontier_peak: int
    dedup_hits: int
    weak_keys: int  # nodes keyed by normal form only (summit-set cap exceeded)


@dataclass(frozen=True)
class SearchResult:
    outcome: str  # "found" | "exhausted"
    stats: SearchStats
    sequence: MoveSequence | None = None

    @property
    def found(self) -> bool:
        return self.outcome == "found"


def _class_key(w: BraidWord) -> tuple[str, bool]:
    """Conjugacy key string; falls back to the normal form when capped."""
    try:
        return str(garside.super_summit_set(w)), False
    except SuperSummitCapError:
        return "nf:" + str(w.n) + ":" + garside.left_normal_form(w).serialize(), True


def _edges(w: BraidWord, bounds: SearchBounds):
    """Deterministically ordered (kind, params) moves available at w."""
    transverse = bounds.move_set == TRANSVERSE
    out: list[tuple[str, dict]] = []
    if w.n >= 2:
        found = try_destabilize(w)
        if found is not None and not (transverse and found.sign < 0):
            out.append(
                (
                    "destab+" if found.sign > 0 else "destab-",
                    {"conjugator": list(found.conjugator.letters), "rotation": found.rotation},
                )
            )
    for d in find_exchange_decompositions(w):
        out.append(("exchange", {"rotation": d.rotation, "p_len": d.p_len, "sign": d.sign}))
    if not transverse:
        for f in find_flype_decompositions(w):
            out.append(
                (
                    "flype+" if f.eps > 0 else "flype-",
                    {"rotation": f.rotation, "p": f.p, "r": f.r, "q": f.q},
                )
            )
    if w.n < bounds.max_strands and len(w.letters) + 1 <= bounds.max_word_length:
        out.append(("stab+", {}))
        if not transverse:
            out.append(("stab-", {}))
    return out


def connect(source: BraidWord, target: BraidWord, bounds: SearchBounds) -> SearchResult:
    """Search for a certified move sequence from source to target's class."""
    source = BraidWord(source.n, free_reduce(source.letters))
    target = BraidWord(target.n, free_reduce(target.letters))
    for w, name in ((source, "source"), (target, "target")):
        if w.n > bounds.max_strands or len(w.letters) > bounds.max_word_length:
            raise ValueError(f"{name} word exceeds the search bounds")

    target_key, target_weak = _class_key(target)
    weak_keys = 0
    dedup_hits = 0
    nodes_expanded = 0
    frontier_peak = 1

    src_key, src_weak = _class_key(source)
    weak_keys += int(src_weak) + int(target_weak)

    def goal(w: BraidWord, key: str) -> bool:
        if w.n != target.n:
            return False
        if key == target_key:
            return True
        # A weak key on either side can miss conjugacy; fall back to the
        # pairwise decision when strand counts agree.
        if key.startswith("nf:") or target_weak:
            try:
                return bool(garside.are_conjugate(w, target))
            except SuperSummitCapError:
                return False
        return False

    # parents[key] = (parent key, MoveStep) for path reconstruction
    parents: dict[str, tuple[str | None, MoveStep | None]] = {src_key: (None, None)}
    reps: dict[str, BraidWord] = {src_key: source}

    def build_sequence(key: str) -> MoveSequence:
        steps = []
        while True:
            parent, step = parents[key]
            if parent is None:
                break
            steps.append(step)
            key = parent
        return MoveSequence(source, tuple(reversed(steps)))

    if goal(source, src_key):
        return SearchResult(
            "found", SearchStats(0, 1, 0, weak_keys), MoveSequence(source, ())
        )

    frontier = [src_key]
    while frontier:
        frontier_peak = max(frontier_peak, len(frontier))
        next_frontier: list[str] = []
        for key in frontier:
            w = reps[key]
            nodes_expanded += 1
            neighbors = []
            for kind, params in _edges(w, bounds):
                result = apply_move(w, kind, params)
                if len(result.letters) > bounds.max_word_length:
                    continue
                nkey, weak = _class_key(result)
                if nkey in parents:
                    dedup_hits += 1
                    continue
                weak_keys += int(weak)
                neighbors.append((nkey, MoveStep(kind, params, result)))
            for nkey, step in sorted(neighbors, key=lambda kv: kv[0]):
                if nkey in parents:
                    dedup_hits += 1
                    continue
                parents[nkey] = (key, step)
                reps[nkey] = step.result
                if goal(step.result, nkey):
                    stats = SearchStats(nodes_expanded, frontier_peak, dedup_hits, weak_keys)
                    return SearchResult("found", stats, build_sequence(nkey))
                if len(parents) >= bounds.max_nodes:
                    stats = SearchStats(nodes_expanded, frontier_peak, dedup_hits, weak_keys)
                    return SearchResult("exhausted", stats)
                next_frontier.append(nkey)
        frontier = next_frontier
    stats = SearchStats(nodes_expanded, frontier_peak, dedup_hits, weak_keys)
    return SearchResult("exhausted", stats)


def scramble(
    w: BraidWord,
    k: int,
    seed: int,
    move_set: str = TOPOLOGICAL,
    max_strands: int | None = None,
) -> tuple[BraidWord, MoveSequence]:
    """Apply k seeded random legal moves; returns the result and the ground truth.

    Conjugation counts as a move here (it is one of the closed-braid moves),
    realized by a random permutation-braid conjugator.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    rng = random.Random(seed)
    bounds = SearchBounds(
        max_strands=max_strands if max_strands is not None else w.n + 2,
        max_word_length=10_000,
        move_set=move_set,
    )
    cur = w
    steps = []
    from .moves import _simple_conjugator_words

    for _ in range(k):
        options = _edges(cur, bounds)
        simples = _simple_conjugator_words(cur.n)
        if simples:
            options.append(("conjugation", {"by": list(rng.choice(simples).letters)}))
        kind, params = rng.choice(options)
        result = apply_move(cur, kind, params)
        steps.append(MoveStep(kind, params, result))
        cur = result
    return cur, MoveSequence(w, tuple(steps))
