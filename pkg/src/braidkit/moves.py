"""
The closed-braid move repertoire as executable word transformations.

Markov stabilization appends σₙ^{±1} on a new strand; destabilization
removes it.  The exchange move rewrites P·σₙ₋₁·Q·σₙ₋₁⁻¹ into
P·σₙ₋₁⁻¹·Q·σₙ₋₁ (P, Q away from the last strand), and the 3-braid flype
rewrites σ₁ᵖ·σ₂ʳ·σ₁^q·σ₂^ε into σ₁ᵖ·σ₂^ε·σ₁^q·σ₂ʳ.  All matchers scan
cyclic permutations, because closed braids are conjugacy classes.

Moves also exist in template form: a pair of weighted block-strand
diagrams that close to the same link for every braiding assignment to the
blocks.  A strand of weight w stands for w parallel strands; a crossing
between bands of weights u and v expands to the unique one-signed
permutation braid with u·v crossings shifting one band past the other,
and block slots receive arbitrary braid words re-indexed into the band's
global positions.  Five templates ship built in: destab+, destab-,
exchange, flype+, flype-.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources

from .words import (
    BraidWord,
    conjugate,
    free_reduce,
    multiply,
    rotate,
)


# ---------------------------------------------------------------------------
# Elementary moves on words


def stabilize(w: BraidWord, sign: int) -> BraidWord:
    """Append σₙ^{sign} on a fresh strand: braid index n → n+1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(w.n + 1, w.letters + (sign * w.n,))


def cyclic_free_reduce(w: BraidWord) -> tuple[BraidWord, BraidWord]:
    """Freely and cyclically reduce; returns (reduced word, conjugator used)."""
    u = BraidWord(w.n, free_reduce(w.letters))
    g = BraidWord(w.n)
    while u.letters and u.letters[0] == -u.letters[-1]:
        step = BraidWord(w.n, (u.letters[0],))
        u = conjugate(u, step)
        g = multiply(g, step)
    return u, g


@dataclass(frozen=True)
class DestabResult:
    """A destabilization found by bounded search.

    ``rotate(conjugate(input, conjugator), rotation)`` equals
    ``word + σₙ₋₁^{sign}`` letter for letter.
    """

    word: BraidWord  # the destabilized word on n-1 strands
    sign: int
    conjugator: BraidWord
    rotation: int


def _simple_conjugator_words(n: int) -> list[BraidWord]:
    """Words of the nontrivial permutation braids, shortest first."""
    from .garside import _perm_word

    perms = [p for p in itertools.permutations(range(1, n + 1)) if p != tuple(range(1, n + 1))]
    words = [BraidWord(n, _perm_word(p)) for p in perms]
    return sorted(words, key=lambda w: (len(w.letters), w.letters))


def try_destabilize(w: BraidWord, search_depth: int = 2) -> DestabResult | None:
    """Search conjugates of w for the form P·σₙ₋₁^{±1} with P on n−1 strands.

    The search is bounded: cyclic permutations always, plus conjugation by
    up to ``search_depth`` permutation braids.  An empty result is not a
    proof that the closure cannot be destabilized.
    """
    if w.n < 2:
        raise ValueError("destabilization needs at least 2 strands")
    top = w.n - 1

    def check(u: BraidWord, g: BraidWord) -> DestabResult | None:
        hits = [j for j, x in enumerate(u.letters) if abs(x) == top]
        if len(hits) != 1:
            return None
        r = (hits[0] + 1) % len(u.letters)
        u_rot = rotate(u, r)
        sign = 1 if u_rot.letters[-1] > 0 else -1
        return DestabResult(BraidWord(w.n - 1, u_rot.letters[:-1]), sign, g, r)

    start, g0 = cyclic_free_reduce(w)
    found = check(start, g0)
    if found is not None:
        return found
    seen = {start.letters}
    frontier = [(start, g0)]
    simples = _simple_conjugator_words(w.n)
    for _ in range(search_depth):
        next_frontier: list[tuple[BraidWord, BraidWord]] = []
        for cand, g in frontier:
            for s in simples:
                u, g_red = cyclic_free_reduce(conjugate(cand, s))
                if u.letters in seen:
                    continue
                seen.add(u.letters)
                g_total = multiply(multiply(g, s), g_red)
                found = check(u, g_total)
                if found is not None:
                    return found
                next_frontier.append((u, g_total))
        frontier = next_frontier
    return None


@dataclass(frozen=True)
class ExchangeDecomposition:
    """A reading of some cyclic permutation of w as P·σₙ₋₁^s·Q·σₙ₋₁^{−s}."""

    rotation: int
    p_len: int
    sign: int


def find_exchange_decompositions(w: BraidWord) -> list[ExchangeDecomposition]:
    """All exchange-move sites of a word (cyclic scans included)."""
    if w.n < 3:
        return []
    top = w.n - 1
    hits = [j for j, x in enumerate(w.letters) if abs(x) == top]
    if len(hits) != 2:
        return []
    s0, s1 = (1 if w.letters[j] > 0 else -1 for j in hits)
    if s0 == s1:
        return []
    L = len(w.letters)
    out = []
    for j_last in hits:
        r = (j_last + 1) % L
        rotated = rotate(w, r)
        j_first = next(k for k, x in enumerate(rotated.letters) if abs(x) == top)
        out.append(
            ExchangeDecomposition(r, j_first, 1 if rotated.letters[j_first] > 0 else -1)
        )
    return sorted(out, key=lambda d: d.rotation)


def apply_exchange(w: BraidWord, d: ExchangeDecomposition) -> BraidWord:
    """Toggle the two σₙ₋₁ signs at the given decomposition."""
    top = w.n - 1
    rotated = rotate(w, d.rotation)
    ls = rotated.letters
    if (
        d.p_len >= len(ls)
        or abs(ls[d.p_len]) != top
        or abs(ls[-1]) != top
        or (1 if ls[d.p_len] > 0 else -1) != d.sign
        or ls[-1] != -ls[d.p_len]
        or any(abs(x) == top for x in ls[: d.p_len])
        or any(abs(x) == top for x in ls[d.p_len + 1 : -1])
    ):
        raise ValueError("invalid exchange decomposition for this word")
    new = ls[: d.p_len] + (-ls[d.p_len],) + ls[d.p_len + 1 : -1] + (-ls[-1],)
    return BraidWord(w.n, new)


@dataclass(frozen=True)
class FlypeData:
    """A match of a 3-braid word against σ₁ᵖ·σ₂ʳ·σ₁^q·σ₂^ε (cyclically)."""

    word: BraidWord
    rotation: int
    p: int
    r: int
    q: int
    eps: int


def _run(letters: tuple[int, ...], start: int, index: int) -> int:
    """Signed length of the maximal constant-sign run of |x| == index at start."""
    if start >= len(letters) or abs(letters[start]) != index:
        return 0
    lead = letters[start]
    j = start
    while j < len(letters) and letters[j] == lead:
        j += 1
    return (j - start) * (1 if lead > 0 else -1)


def find_flype_decompositions(w: BraidWord) -> list[FlypeData]:
    """All cyclic matches of a 3-braid word against the flype schema."""
    if w.n != 3:
        return []
    out = []
    L = len(w.letters)
    for r0 in range(L):
        ls = rotate(w, r0).letters
        p = _run(ls, 0, 1)
        if p == 0:
            continue
        i = abs(p)
        rr = _run(ls, i, 2)
        if rr == 0:
            continue
        i += abs(rr)
        q = _run(ls, i, 1)
        if q == 0:
            continue
        i += abs(q)
        if i != L - 1 or abs(ls[i]) != 2:
            continue
        out.append(FlypeData(w, r0, p, rr, q, 1 if ls[i] > 0 else -1))
    return out


def match_flype_3braid(w: BraidWord) -> FlypeData | None:
    """First flype match by cyclic rotation, or None."""
    found = find_flype_decompositions(w)
    return found[0] if found else None


def apply_flype(data: FlypeData) -> BraidWord:
    """Rewrite the matched word σ₁ᵖ σ₂ʳ σ₁^q σ₂^ε into σ₁ᵖ σ₂^ε σ₁^q σ₂ʳ."""

    def run(index: int, count: int) -> tuple[int, ...]:
        sign = 1 if count > 0 else -1
        return (sign * index,) * abs(count)

    return BraidWord(
        3, run(1, data.p) + run(2, data.eps) + run(1, data.q) + run(2, data.r)
    )


# ---------------------------------------------------------------------------
# Block-strand diagrams and templates


@dataclass(frozen=True)
class Crossing:
    pos: int  # 1-based diagram-strand position; crosses pos and pos+1
    sign: int


@dataclass(frozen=True)
class BlockSlot:
    block: str
    pos: int = 1  # 1-based first diagram strand entering the block


@dataclass(frozen=True)
class BlockStrandDiagram:
    """An ordered schema of crossings and block slots over weighted strands."""

    strand_weights: tuple[int, ...]
    items: tuple[Crossing | BlockSlot, ...]
    block_arities: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "strand_weights", tuple(self.strand_weights))
        object.__setattr__(self, "items", tuple(self.items))
        k = len(self.strand_weights)
        if k < 1 or any(not isinstance(x, int) or x < 1 for x in self.strand_weights):
            raise ValueError("strand weights must be positive integers")
        for item in self.items:
            if isinstance(item, Crossing):
                if not 1 <= item.pos <= k - 1 or item.sign not in (1, -1):
                    raise ValueError(f"bad crossing {item!r} for {k} diagram strands")
            else:
                arity = self.block_arities.get(item.block)
                if arity is None:
                    raise ValueError(f"block {item.block!r} missing from arity map")
                if not 1 <= item.pos <= k - arity + 1:
                    raise ValueError(f"block {item.block!r} does not fit at {item.pos}")

    @property
    def total_strands(self) -> int:
        return sum(self.strand_weights)


@dataclass(frozen=True)
class Template:
    """A pair of block-strand diagrams closing to the same link for every assignment."""

    name: str
    left: BlockStrandDiagram
    right: BlockStrandDiagram

    def __post_init__(self):
        if self.left.block_arities != self.right.block_arities:
            raise ValueError("left and right diagrams must share block ids and arities")


BraidingAssignment = dict[str, BraidWord]


def _band_crossing(u: int, v: int, offset: int, sign: int) -> list[int]:
    """One-signed permutation braid shifting a u-band past a v-band (u·v letters)."""
    out = []
    for b in range(1, v + 1):
        for i in range(u + b - 1, b - 1, -1):
            out.append(sign * (i + offset))
    return out


def expand_weights(d: BlockStrandDiagram, assignment: BraidingAssignment) -> BraidWord:
    """Instantiate a diagram: cable the weighted crossings, splice in the blocks."""
    running = list(d.strand_weights)
    letters: list[int] = []
    for item in d.items:
        if isinstance(item, Crossing):
            p = item.pos
            u, v = running[p - 1], running[p]
            offset = sum(running[: p - 1])
            letters.extend(_band_crossing(u, v, offset, item.sign))
            running[p - 1], running[p] = running[p], running[p - 1]
        else:
            arity = d.block_arities[item.block]
            span = sum(running[item.pos - 1 : item.pos - 1 + arity])
            word = assignment.get(item.block)
            if word is None:
                raise ValueError(f"no assignment for block {item.block!r}")
            if word.n != span:
                raise ValueError(
                    f"block {item.block!r} expects a {span}-strand word, got {word.n}"
                )
            offset = sum(running[: item.pos - 1])
            letters.extend(x + offset if x > 0 else x - offset for x in word.letters)
    return BraidWord(sum(d.strand_weights), tuple(letters))


def expanded_arities(d: BlockStrandDiagram) -> dict[str, int]:
    """Strand count each block's assignment must have, at first occurrence."""
    running = list(d.strand_weights)
    out: dict[str, int] = {}
    for item in d.items:
        if isinstance(item, Crossing):
            p = item.pos
            running[p - 1], running[p] = running[p], running[p - 1]
        elif item.block not in out:
            arity = d.block_arities[item.block]
            out[item.block] = sum(running[item.pos - 1 : item.pos - 1 + arity])
    return out


def instantiate_template(t: Template, a: BraidingAssignment) -> tuple[BraidWord, BraidWord]:
    """Expand both sides of a template under one braiding assignment."""
    return expand_weights(t.left, a), expand_weights(t.right, a)


def random_assignment(t: Template, max_len: int, rng) -> BraidingAssignment:
    """A seeded random assignment with block words of length ≤ max_len."""
    out: BraidingAssignment = {}
    for block, span in sorted(expanded_arities(t.left).items()):
        if span < 2:
            out[block] = BraidWord(span)
            continue
        length = rng.randint(0, max_len)
        letters = tuple(
            rng.choice([i for i in range(1 - span, span) if i != 0]) for _ in range(length)
        )
        out[block] = BraidWord(span, letters)
    return out


# --- JSON wire format -------------------------------------------------------


def _diagram_to_json(d: BlockStrandDiagram) -> list:
    out = []
    for item in d.items:
        if isinstance(item, Crossing):
            out.append({"x": [item.pos, item.sign]})
        elif item.pos == 1:
            out.append({"b": item.block})
        else:
            out.append({"b": [item.block, item.pos]})
    return out


def _diagram_from_json(items: list, weights: tuple[int, ...], arities: dict) -> BlockStrandDiagram:
    parsed: list[Crossing | BlockSlot] = []
    for item in items:
        if "x" in item:
            pos, sign = item["x"]
            parsed.append(Crossing(int(pos), int(sign)))
        elif "b" in item:
            entry = item["b"]
            if isinstance(entry, str):
                parsed.append(BlockSlot(entry, 1))
            else:
                parsed.append(BlockSlot(str(entry[0]), int(entry[1])))
        else:
            raise ValueError(f"unknown template item {item!r}")
    return BlockStrandDiagram(weights, tuple(parsed), dict(arities))


def template_to_json(t: Template) -> dict:
    obj = {
        "name": t.name,
        "weights": list(t.left.strand_weights),
        "left": _diagram_to_json(t.left),
        "right": _diagram_to_json(t.right),
        "blocks": dict(t.left.block_arities),
    }
    if t.right.strand_weights != t.left.strand_weights:
        obj["right_weights"] = list(t.right.strand_weights)
    return obj


def template_from_json(obj: dict) -> Template:
    arities = {str(k): int(v) for k, v in obj["blocks"].items()}
    weights = tuple(int(x) for x in obj["weights"])
    right_weights = tuple(int(x) for x in obj.get("right_weights", obj["weights"]))
    return Template(
        str(obj["name"]),
        _diagram_from_json(obj["left"], weights, arities),
        _diagram_from_json(obj["right"], right_weights, arities),
    )


def destab_template(sign: int, band_weight: int = 1) -> Template:
    """Destabilization: remove a strand crossing the rest once with the given sign."""
    name = "destab+" if sign > 0 else "destab-"
    left = BlockStrandDiagram(
        (band_weight, 1, 1), (BlockSlot("P", 1), Crossing(2, sign)), {"P": 2}
    )
    right = BlockStrandDiagram((band_weight, 1), (BlockSlot("P", 1),), {"P": 2})
    return Template(name, left, right)


def exchange_template(band_weight: int = 1) -> Template:
    """The exchange move P·σₙ₋₁·Q·σₙ₋₁⁻¹ ↦ P·σₙ₋₁⁻¹·Q·σₙ₋₁ in template form."""
    arities = {"P": 2, "Q": 2}
    left = BlockStrandDiagram(
        (band_weight, 1, 1),
        (BlockSlot("P", 1), Crossing(2, 1), BlockSlot("Q", 1), Crossing(2, -1)),
        arities,
    )
    right = BlockStrandDiagram(
        (band_weight, 1, 1),
        (BlockSlot("P", 1), Crossing(2, -1), BlockSlot("Q", 1), Crossing(2, 1)),
        arities,
    )
    return Template("exchange", left, right)


def flype_template(eps: int) -> Template:
    """The 3-braid flype with half-twist sign eps."""
    name = "flype+" if eps > 0 else "flype-"
    arities = {"P": 2, "Q": 2, "R": 2}
    left = BlockStrandDiagram(
        (1, 1, 1),
        (BlockSlot("P", 1), BlockSlot("R", 2), BlockSlot("Q", 1), Crossing(2, eps)),
        arities,
    )
    right = BlockStrandDiagram(
        (1, 1, 1),
        (BlockSlot("P", 1), Crossing(2, eps), BlockSlot("Q", 1), BlockSlot("R", 2)),
        arities,
    )
    return Template(name, left, right)


_BUILTIN_FILES = {
    "destab+": "destab_pos.json",
    "destab-": "destab_neg.json",
    "exchange": "exchange.json",
    "flype+": "flype_pos.json",
    "flype-": "flype_neg.json",
}


def builtin_templates() -> dict[str, Template]:
    """The five shipped templates, loaded from their JSON wire form."""
    out = {}
    for name, fname in _BUILTIN_FILES.items():
        text = resources.files("braidkit.data").joinpath(fname).read_text()
        out[name] = template_from_json(json.loads(text))
    return out


# ---------------------------------------------------------------------------
# Move sequences (certified chains of moves)

MOVE_KINDS = ("conjugation", "stab+", "stab-", "destab+", "destab-", "exchange", "flype+", "flype-")


@dataclass(frozen=True)
class MoveStep:
    kind: str
    params: dict
    result: BraidWord


@dataclass(frozen=True)
class MoveSequence:
    initial: BraidWord
    steps: tuple[MoveStep, ...] = ()

    @property
    def final(self) -> BraidWord:
        return self.steps[-1].result if self.steps else self.initial


def apply_move(w: BraidWord, kind: str, params: dict) -> BraidWord:
    """Re-apply a recorded move; deterministic given the recorded parameters."""
    if kind == "conjugation":
        return conjugate(w, BraidWord(w.n, tuple(params["by"])))
    if kind in ("stab+", "stab-"):
        return stabilize(w, 1 if kind == "stab+" else -1)
    if kind in ("destab+", "destab-"):
        g = BraidWord(w.n, tuple(params["conjugator"]))
        u = rotate(conjugate(w, g), params["rotation"])
        top = w.n - 1
        want = top if kind == "destab+" else -top
        if not u.letters or u.letters[-1] != want or any(abs(x) == top for x in u.letters[:-1]):
            raise ValueError("recorded destabilization does not apply")
        return BraidWord(w.n - 1, u.letters[:-1])
    if kind == "exchange":
        d = ExchangeDecomposition(params["rotation"], params["p_len"], params["sign"])
        return apply_exchange(w, d)
    if kind in ("flype+", "flype-"):
        data = FlypeData(
            w, params["rotation"], params["p"], params["r"], params["q"],
            1 if kind == "flype+" else -1,
        )
        matches = find_flype_decompositions(w)
        if not any(
            m.rotation == data.rotation and (m.p, m.r, m.q, m.eps) == (data.p, data.r, data.q, data.eps)
            for m in matches
        ):
            raise ValueError("recorded flype does not apply")
        return apply_flype(data)
    raise ValueError(f"unknown move kind {kind!r}")


def replay(seq: MoveSequence) -> BraidWord:
    """Re-run every step, checking each recorded result letter for letter."""
    w = seq.initial
    for step in seq.steps:
        got = apply_move(w, step.kind, step.params)
        if got != step.result:
            raise ValueError(f"step {step.kind} does not reproduce its recorded result")
        w = got
    return w


def sequence_to_json(seq: MoveSequence) -> dict:
    from .words import word_to_json

    return {
        "initial": word_to_json(seq.initial),
        "steps": [
            {"move": s.kind, "params": s.params, "result_word": word_to_json(s.result)}
            for s in seq.steps
        ],
    }


def sequence_from_json(obj: dict) -> MoveSequence:
    from .words import word_from_json

    steps = tuple(
        MoveStep(str(s["move"]), dict(s["params"]), word_from_json(s["result_word"]))
        for s in obj["steps"]
    )
    return MoveSequence(word_from_json(obj["initial"]), steps)


# ---------------------------------------------------------------------------
# Exchange-move winding


def _block_words(n: int, max_len: int):
    """All words on n strands of length ≤ max_len, by (length, letters)."""
    alphabet = [i for i in range(1 - n, n) if i != 0]
    for length in range(max_len + 1):
        for tup in itertools.product(alphabet, repeat=length):
            yield BraidWord(n, tup)


def winding_iterates(
    P: BraidWord, Q: BraidWord, k: int, block_search_len: int | None = None
) -> list[BraidWord]:
    """Wind w₀ = P·σₙ₋₁·Q·σₙ₋₁⁻¹ through k exchange moves, preferring new
    conjugacy classes.

    A single exchange toggle is an involution up to conjugacy, so iterating
    it at the word level only alternates between at most two classes.  The
    winding pictures instead re-braid the moving block each time it passes
    the axis strand.  Here each step searches the representations
    P·σₙ₋₁^s·V·σₙ₋₁^{−s} of the current conjugacy class, with V ranging
    over words on n−1 strands of length ≤ ``block_search_len`` (default:
    max of the two block lengths), and applies the exchange whose result
    leaves every class seen so far; when no fresh class is exposed it falls
    back to a plain toggle.  Each step is a conjugation followed by one
    exchange move, so every iterate closes to the same link.
    """
    if P.n != Q.n:
        raise ValueError("P and Q must live in the same braid group")
    if k < 0:
        raise ValueError("iteration count must be >= 0")
    from .garside import super_summit_set

    n = P.n + 1
    top = n - 1
    vmax = block_search_len if block_search_len is not None else max(len(P), len(Q), 1)
    w0 = BraidWord(n, free_reduce(P.letters + (top,) + Q.letters + (-top,)))
    out = [w0]
    if not w0.letters:
        return out + [w0] * k
    seen_keys = {super_summit_set(w0)}
    for _ in range(k):
        cur = out[-1]
        cur_key = super_summit_set(cur)
        chosen = None
        fallback = None
        for s in (1, -1):
            for v in _block_words(n - 1, vmax):
                site = BraidWord(
                    n, free_reduce(P.letters + (s * top,) + v.letters + (-s * top,))
                )
                if super_summit_set(site) != cur_key:
                    continue
                toggled = BraidWord(
                    n, free_reduce(P.letters + (-s * top,) + v.letters + (s * top,))
                )
                tk = super_summit_set(toggled)
                if tk not in seen_keys:
                    chosen = (toggled, tk)
                    break
                if fallback is None and tk != cur_key:
                    fallback = toggled
            if chosen:
                break
        if chosen:
            out.append(chosen[0])
            seen_keys.add(chosen[1])
        else:
            out.append(fallback if fallback is not None else cur)
    return out
