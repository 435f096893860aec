"""
Exact topological-equality oracles for braid closures.

Two closed braids related by the move templates represent the same link,
so any honest link invariant must agree on the two sides.  This module
provides the invariants used as oracles throughout the test suite and the
template fuzzer:

* the reduced Burau representation over ℤ[t, t⁻¹] and the Alexander
  polynomial of the closure via det(ψ(w) − I) / (1 + t + ⋯ + t^{n−1});
* the Kauffman bracket by full state sum (2^L states for an L-letter
  word) and the Jones polynomial X = (−A³)^{−writhe}·⟨·⟩ with t = A⁻⁴,
  returned in the variable q = t^{1/2} (so q = A⁻²);
* a seeded fuzzer asserting that both sides of a template close to links
  with equal component counts, Jones, and Alexander polynomials.

The bracket kernel has a compiled implementation (``braidkit._bracket``,
Cython) and a pure-Python fallback selected at import time; set
``BRAIDKIT_PURE_BRACKET=1`` to force the fallback.  Both kernels count
exactly 2^L states and produce identical coefficient tables.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .laurent import LaurentPolynomial, PolyMatrix
from .words import BraidWord, closure_components, exponent_sum

from . import _bracket_py

if os.environ.get("BRAIDKIT_PURE_BRACKET"):
    _kernel = _bracket_py
else:
    try:
        from . import _bracket as _kernel  # type: ignore[no-redef]
    except ImportError:
        _kernel = _bracket_py

BRACKET_BACKEND: str = _kernel.BACKEND

DEFAULT_CROSSING_CAP = 24


class CrossingCapExceeded(ValueError):
    """The word has more crossings than the state sum is allowed to expand."""


def _t(exp: int, coeff: int = 1) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(exp, coeff)


def _burau_letter(n: int, i: int, positive: bool) -> PolyMatrix:
    """Reduced Burau image of σᵢ^{±1} in dimension n−1."""
    d = n - 1
    m = [[LaurentPolynomial.one() if r == c else LaurentPolynomial.zero() for c in range(d)] for r in range(d)]

    def put(r, c, poly):
        m[r][c] = poly

    j = i - 1  # 0-based row/column of the -t pivot
    if positive:
        put(j, j, _t(1, -1))
        if j > 0:
            put(j - 1, j, _t(1))
        if j < d - 1:
            put(j + 1, j, LaurentPolynomial.one())
    else:
        put(j, j, _t(-1, -1))
        if j > 0:
            put(j - 1, j, LaurentPolynomial.one())
        if j < d - 1:
            put(j + 1, j, _t(-1))
    return PolyMatrix(tuple(tuple(r) for r in m))


def burau_reduced(w: BraidWord) -> PolyMatrix:
    """Product of the reduced Burau images of the letters (dimension n−1)."""
    if w.n < 2:
        raise ValueError("reduced Burau needs at least 2 strands")
    acc = PolyMatrix.identity(w.n - 1)
    for x in w.letters:
        acc = acc * _burau_letter(w.n, abs(x), x > 0)
    return acc


@dataclass(frozen=True)
class AlexanderResult:
    polynomial: LaurentPolynomial
    normalized: bool  # symmetric normalization applied (knot closures only)


def alexander_with_flag(w: BraidWord) -> AlexanderResult:
    """Alexander polynomial of the closure, flagged by normalization status.

    det(ψ(w) − I) is exactly divisible by 1 + t + ⋯ + t^{n−1}; for knot
    closures the quotient is normalized symmetrically in t ↔ t⁻¹ with a
    positive leading coefficient, which quotients out the ±t^k unit
    ambiguity.  Multi-component closures return the raw quotient
    (``normalized=False``); compare those with
    :meth:`LaurentPolynomial.equals_up_to_units`.
    """
    if w.n < 2:
        raise ValueError("Alexander via reduced Burau needs at least 2 strands")
    mat = burau_reduced(w) - PolyMatrix.identity(w.n - 1)
    det = mat.determinant()
    divisor = LaurentPolynomial(tuple((e, 1) for e in range(w.n)))
    try:
        quot = det.divide_exact(divisor)
    except ValueError as exc:
        from .transverse import InternalConsistencyError

        raise InternalConsistencyError(f"Burau determinant not divisible: {exc}") from exc
    if closure_components(w).n_components != 1:
        return AlexanderResult(quot, False)
    if quot.is_zero():
        return AlexanderResult(quot, True)
    span = quot.min_exp + quot.max_exp
    centered = quot.shift(-((span + 1) // 2) if span % 2 else -(span // 2))
    if centered.terms[-1][1] < 0:
        centered = -centered
    return AlexanderResult(centered, True)


def alexander_polynomial(w: BraidWord) -> LaurentPolynomial:
    """Alexander polynomial of the closure (see :func:`alexander_with_flag`)."""
    return alexander_with_flag(w).polynomial


def _merge(parts: list[dict[int, int]]) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in parts:
        for e, c in part.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


def bracket_coeff_table(
    w: BraidWord, max_crossings: int = DEFAULT_CROSSING_CAP, threads: int = 1
) -> tuple[dict[int, int], int]:
    """Raw bracket coefficient table over the A-exponent, plus states touched.

    The state sum always touches exactly 2^L states.  With ``threads > 1``
    the state range is partitioned; partial tables are merged by integer
    addition, so the result is identical to the sequential one.
    """
    L = len(w.letters)
    if L > max_crossings:
        raise CrossingCapExceeded(f"{L} crossings exceeds the cap of {max_crossings}")
    total = 1 << L
    if threads <= 1 or total < 1 << 12:
        return _kernel.bracket_coeffs(w.n, list(w.letters), 0, total), total
    bounds = [total * i // threads for i in range(threads + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(
            pool.map(
                lambda ab: _kernel.bracket_coeffs(w.n, list(w.letters), ab[0], ab[1]),
                zip(bounds, bounds[1:]),
            )
        )
    return _merge(parts), total


def kauffman_bracket(
    w: BraidWord, max_crossings: int = DEFAULT_CROSSING_CAP, threads: int = 1
) -> LaurentPolynomial:
    """Kauffman bracket of the closure diagram, in the variable A."""
    table, _ = bracket_coeff_table(w, max_crossings, threads)
    return LaurentPolynomial.from_dict(table)


def jones_polynomial(
    w: BraidWord, max_crossings: int = DEFAULT_CROSSING_CAP, threads: int = 1
) -> LaurentPolynomial:
    """Jones polynomial of the closure, in q = t^{1/2}.

    X = (−A³)^{−writhe}·⟨w⟩ with the writhe equal to the exponent sum; the
    substitution t = A⁻⁴ makes q = A⁻², and every exponent of X is even, so
    the result is an honest integer Laurent polynomial in q.  Closures with
    an odd number of components land in even q-powers (integer t-powers).
    """
    table, _ = bracket_coeff_table(w, max_crossings, threads)
    writhe = exponent_sum(w)
    sign = -1 if writhe % 2 else 1
    out: dict[int, int] = {}
    for e, c in table.items():
        shifted = e - 3 * writhe
        if shifted % 2 != 0:
            from .transverse import InternalConsistencyError

            raise InternalConsistencyError("odd A-exponent after writhe correction")
        out[-shifted // 2] = out.get(-shifted // 2, 0) + sign * c
    return LaurentPolynomial.from_dict(out)


def jones_text(p: LaurentPolynomial) -> str:
    """Print a Jones polynomial over t when possible, else over q (q² = t)."""
    if all(e % 2 == 0 for e, _ in p.terms):
        return LaurentPolynomial(tuple((e // 2, c) for e, c in p.terms)).text("t")
    return "[q^2 = t] " + p.text("q")


@dataclass(frozen=True)
class TemplateFailure:
    trial: int
    mismatch: str  # "components" | "jones" | "alexander"
    assignment: dict[str, list[int]]
    left_word: BraidWord
    right_word: BraidWord
    detail: str


@dataclass(frozen=True)
class TemplateReport:
    template: str
    trials: int
    failures: tuple[TemplateFailure, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def template_soundness_check(
    template,
    trials: int,
    max_len: int,
    seed: int,
    threads: int = 1,
) -> TemplateReport:
    """Fuzz a template: both sides must close to the same link, every time.

    For each trial a seeded random braiding assignment (block words of
    length ≤ ``max_len``) instantiates both diagrams; the check asserts
    equal closure component counts, equal Jones polynomials, and equal
    Alexander polynomials (up to units, which is exact for knot closures
    and the honest comparison for links).  Any counterexample is reported
    verbatim; an unsound template is expected to fail loudly here.
    """
    from .moves import instantiate_template, random_assignment

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    failures = []
    for trial in range(trials):
        assignment = random_assignment(template, max_len, rng)
        left, right = instantiate_template(template, assignment)
        raw = {bid: list(word.letters) for bid, word in assignment.items()}
        cl, cr = closure_components(left).n_components, closure_components(right).n_components
        if cl != cr:
            failures.append(
                TemplateFailure(trial, "components", raw, left, right, f"{cl} vs {cr}")
            )
            continue
        jl = jones_polynomial(left, threads=threads)
        jr = jones_polynomial(right, threads=threads)
        if jl != jr:
            failures.append(
                TemplateFailure(trial, "jones", raw, left, right, f"{jl.text('q')} vs {jr.text('q')}")
            )
            continue
        al = alexander_with_flag(left).polynomial
        ar = alexander_with_flag(right).polynomial
        if not al.equals_up_to_units(ar):
            failures.append(
                TemplateFailure(trial, "alexander", raw, left, right, f"{al.text()} vs {ar.text()}")
            )
    return TemplateReport(template.name, trials, tuple(failures))
