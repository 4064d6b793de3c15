"""Breadth-first sign decision for forms on the nonnegative orthant.

Scaling a point by a positive constant never changes a form's sign, so only
directions matter and the standard simplex T_n carries all of them.  The
engine keeps a frontier of (form, index path) branches, one per subsimplex
still in doubt.  Each level replaces every branch by its images under the
scheme's matrices:

  - a child whose coefficients are all nonnegative is nonnegative on its
    whole cell and is pruned;
  - a child whose coefficient sum is negative is negative at its cell's
    barycenter, which is an explicit interior counterexample: the run stops
    and reports the mapped barycenter as witness;
  - anything else survives to the next level.

An empty frontier proves nonnegativity on all of T_n (every direction is
covered by some pruned ancestor); hitting max_depth with live branches is
inconclusive.  All arithmetic is exact.

Branch forms are content normalized, so each level works on coprime integer
coefficient vectors.  For speed the engine clears each matrix's denominators
once (scaling a substitution matrix by a positive constant multiplies the
image form by a positive constant, which normalization removes and no sign
test can see) and precomputes, per scheme and degree, the expansion of every
monomial's image as integer columns; a child is then one integer
matrix-vector accumulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, NamedTuple, Sequence

from .forms import DimensionMismatchError, Exponents, Form
from .subdivision import (
    SchemeError,
    SubdivisionScheme,
    barycenter,
    compose,
    validate_scheme,
)

IndexPath = tuple[int, ...]  # 1-based matrix choices, root to leaf


class Outcome(Enum):
    PSD = "PSD"
    INDEFINITE = "indefinite"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Branch:
    """A live subsimplex: the restricted form and how we got there."""

    form: Form
    path: IndexPath


@dataclass(frozen=True)
class RunStats:
    branches_expanded: int  # child forms materialized (pruned and negative included)
    branches_pruned_positive: int
    peak_frontier_size: int


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    depth_reached: int
    stats: RunStats
    witness_path: IndexPath | None = None
    witness_point: tuple[Fraction, ...] | None = None
    witness_value: Fraction | None = None


class LevelResult(NamedTuple):
    children: list[Branch]
    pruned: int
    negative: Branch | None


# ---------------------------------------------------------------------------
# per-(scheme, degree) substitution tables


def _exponent_list(n: int, d: int) -> list[Exponents]:
    """All exponent vectors of total degree d, descending lex order."""
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _exponent_list(n - 1, d - first):
            out.append((first,) + rest)
    return out


def _int_mul_linear(poly: dict, image: tuple) -> dict:
    out: dict[Exponents, int] = {}
    for k, v in poly.items():
        for j, c in enumerate(image):
            if c:
                kk = k[:j] + (k[j] + 1,) + k[j + 1 :]
                s = out.get(kk, 0) + v * c
                if s:
                    out[kk] = s
                elif kk in out:
                    del out[kk]
    return out


class _Table:
    """Integer expansion columns for one scheme at one degree.

    columns[m][j] lists (row_index, coefficient) pairs: the expansion of
    monomial `exponents[j]` under scheme matrix m with denominators cleared.
    """

    __slots__ = ("exponents", "index", "columns")

    def __init__(self, scheme: SubdivisionScheme, degree: int):
        n = scheme.n
        self.exponents = tuple(_exponent_list(n, degree))
        self.index = {e: i for i, e in enumerate(self.exponents)}
        zero = (0,) * n
        self.columns = []
        for mat in scheme.matrices:
            scale = 1
            for row in mat.rows:
                for v in row:
                    scale = lcm(scale, v.denominator)
            images = [
                tuple(int(v * scale) for v in row) for row in mat.rows
            ]
            # walk degrees upward, keeping only the previous level in memory
            prev = {zero: {zero: 1}}
            for k in range(1, degree + 1):
                cur = {}
                for alpha in _exponent_list(n, k):
                    i = next(ix for ix, e in enumerate(alpha) if e)
                    pred = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
                    cur[alpha] = _int_mul_linear(prev[pred], images[i])
                prev = cur
            cols = []
            for alpha in self.exponents:
                expansion = prev[alpha] if degree else {zero: 1}
                cols.append(
                    sorted((self.index[beta], c) for beta, c in expansion.items())
                )
            self.columns.append(cols)


def _table_for(scheme: SubdivisionScheme, degree: int) -> _Table:
    table = scheme._tables.get(degree)
    if table is None:
        table = _Table(scheme, degree)
        scheme._tables[degree] = table
    return table


# ---------------------------------------------------------------------------
# level expansion


def _to_items(form: Form, table: _Table) -> list[tuple[int, int]]:
    normalized = form.normalize_content()
    items = []
    for exps, coeff in normalized.terms.items():
        items.append((table.index[exps], coeff.numerator))
    items.sort()
    return items


def _ints_to_form(vector: list, table: _Table, n: int, degree: int) -> Form:
    g = 0
    for v in vector:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g == 0:
        raise AssertionError("nonzero form mapped to zero under a nonsingular matrix")
    exps = table.exponents
    terms = {}
    for i, v in enumerate(vector):
        if v:
            terms[exps[i]] = Fraction(v // g)
    return Form(n, terms, degree=degree)


def expand_level(
    frontier: Sequence[Branch], scheme: SubdivisionScheme
) -> LevelResult:
    """Expand every branch by every scheme matrix, in order.

    Children are visited parent by parent, matrix by matrix.  Trivially
    positive children are counted in `pruned` and dropped; on the first
    trivially negative child the scan stops and that child is returned as
    `negative` (later children are never materialized); all other children
    are returned content normalized.  The caller is responsible for handing
    in a valid scheme and branches whose forms share one degree and
    dimension (decide does both).
    """
    branches = list(frontier)
    if not branches:
        return LevelResult([], 0, None)
    degree = branches[0].form.degree
    for b in branches:
        if b.form.n != scheme.n:
            raise DimensionMismatchError(
                f"branch form has {b.form.n} variables, scheme has {scheme.n}"
            )
        if b.form.degree != degree:
            raise ValueError("frontier mixes forms of different degrees")
    table = _table_for(scheme, degree)
    size = len(table.exponents)
    children: list[Branch] = []
    pruned = 0
    for branch in branches:
        items = _to_items(branch.form, table)
        for m_idx, col in enumerate(table.columns, start=1):
            out = [0] * size
            for j, v in items:
                for r, c in col[j]:
                    out[r] += c * v
            path = branch.path + (m_idx,)
            if sum(out) < 0:
                negative = Branch(_ints_to_form(out, table, scheme.n, degree), path)
                return LevelResult(children, pruned, negative)
            if all(v >= 0 for v in out):
                pruned += 1
                continue
            children.append(
                Branch(_ints_to_form(out, table, scheme.n, degree), path)
            )
    return LevelResult(children, pruned, None)


# ---------------------------------------------------------------------------
# the decision loop


def witness_point(path: Iterable[int], scheme: SubdivisionScheme) -> tuple[Fraction, ...]:
    """Map the simplex barycenter through the cells of a 1-based index path."""
    matrices = []
    for i in path:
        if not isinstance(i, int) or not 1 <= i <= len(scheme.matrices):
            raise ValueError(
                f"path index {i!r} out of range 1..{len(scheme.matrices)}"
            )
        matrices.append(scheme.matrices[i - 1])
    point = barycenter(scheme.n)
    if not matrices:
        return point
    return compose(matrices).apply(point)


def _dedup(children: list[Branch]) -> list[Branch]:
    seen = set()
    out = []
    for b in children:
        if b.form not in seen:
            seen.add(b.form)
            out.append(b)
    return out


def decide(
    form: Form,
    scheme: SubdivisionScheme,
    max_depth: int = 30,
    dedup: bool = False,
    on_level: Callable[[int, int, int, int], None] | None = None,
) -> Verdict:
    """Decide whether `form` is nonnegative on the nonnegative orthant.

    Returns a PSD verdict when subdivision proves nonnegativity, an
    indefinite verdict carrying an exact interior point with negative value,
    or inconclusive after `max_depth` levels.  `dedup` drops repeated
    identical branch forms within a level, keeping the first path (off by
    default so traces match the plain nested-loop expansion order).
    `on_level`, when given, is called after each completed level as
    on_level(level, parents, pruned, kept); the level that stops the run on
    a negative child is reported by the verdict instead.

    The verdict is deterministic: same form, scheme and options give the
    identical verdict, witness and stats.
    """
    if form.is_zero:
        raise ValueError("cannot decide the zero form; it is identically zero")
    if form.n != scheme.n:
        raise DimensionMismatchError(
            f"form has {form.n} variables, scheme subdivides {scheme.n}"
        )
    if not isinstance(max_depth, int) or max_depth < 1:
        raise ValueError("max_depth must be an integer >= 1")
    validation = validate_scheme(scheme)
    if not validation.ok:
        raise SchemeError("invalid scheme: " + "; ".join(validation.failures()))

    # depth 0: the input form itself may already settle it
    if form.is_trivially_negative():
        point = barycenter(form.n)
        return Verdict(
            Outcome.INDEFINITE,
            0,
            RunStats(0, 0, 1),
            witness_path=(),
            witness_point=point,
            witness_value=form.evaluate(point),
        )
    if form.is_trivially_positive():
        return Verdict(Outcome.PSD, 0, RunStats(0, 0, 1))

    frontier = [Branch(form.normalize_content(), ())]
    expanded = 0
    pruned_total = 0
    peak = 1
    for level in range(1, max_depth + 1):
        children, pruned, negative = expand_level(frontier, scheme)
        expanded += len(children) + pruned + (1 if negative is not None else 0)
        pruned_total += pruned
        if negative is not None:
            stats = RunStats(expanded, pruned_total, peak)
            point = witness_point(negative.path, scheme)
            value = form.evaluate(point)
            if not value < 0:
                raise AssertionError(
                    "internal error: witness point does not evaluate negative"
                )
            return Verdict(
                Outcome.INDEFINITE,
                level,
                stats,
                witness_path=negative.path,
                witness_point=point,
                witness_value=value,
            )
        if dedup:
            children = _dedup(children)
        peak = max(peak, len(children))
        if on_level is not None:
            on_level(level, len(frontier), pruned, len(children))
        if not children:
            return Verdict(Outcome.PSD, level, RunStats(expanded, pruned_total, peak))
        frontier = children
    return Verdict(
        Outcome.INCONCLUSIVE, max_depth, RunStats(expanded, pruned_total, peak)
    )


def run_report(verdict: Verdict) -> dict:
    """JSON-ready summary of a verdict; rationals are rendered as 'p/q'."""
    report: dict = {
        "verdict": verdict.outcome.value,
        "depth_reached": verdict.depth_reached,
        "stats": {
            "branches_expanded": verdict.stats.branches_expanded,
            "branches_pruned_positive": verdict.stats.branches_pruned_positive,
            "peak_frontier_size": verdict.stats.peak_frontier_size,
        },
    }
    if verdict.outcome is Outcome.INDEFINITE:
        report["witness"] = {
            "path": list(verdict.witness_path),
            "point": [str(v) for v in verdict.witness_point],
            "value": str(verdict.witness_value),
        }
    if verdict.outcome is Outcome.INCONCLUSIVE:
        report["note"] = (
            "undecided: the form may be nonnegative with zeros on the simplex "
            "(then no depth suffices) or max_depth may simply be too small"
        )
    return report
