"""Star-shaped graphs, Hirzebruch-Jung branches and quotient detection.

A branch ``[b_1, ..., b_k]`` read from the central curve outward corresponds
to the fraction ``q/p = b_1 - 1/(b_2 - ... - 1/b_k)``; a star with central
weight ``b`` and branch fractions ``q_i/p_i`` is presented by the
Pinkham-Demazure divisor ``D = b.Q - sum (p_i/q_i) P_i`` on the projective
line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .classify import is_gorenstein, star_arms
from .cycles import _memo, require_minimal
from .errors import (
    CrossCheckMismatch,
    CyclicQuotient,
    DegreeNotPositive,
    GorensteinInput,
    NotCoprime,
    NotNegativeDefinite,
    NotQuotient,
    NotStarShaped,
    OutOfRange,
    WeightBelowTwo,
)
from .graph import WeightedDualGraph, discrepancies, star_graph

PLATONIC = ((2, 3, 3), (2, 3, 4), (2, 3, 5))


def branch_fraction(weights: Sequence[int]) -> tuple[int, int]:
    """``(q, p)`` with ``q/p = [b_1, ..., b_k]``.

    >>> branch_fraction([2, 2, 3])
    (7, 5)
    """
    if not weights:
        raise OutOfRange("a branch needs at least one curve")
    for b in weights:
        if b < 2:
            raise WeightBelowTwo(f"branch weight {b} < 2")
    q, p = weights[-1], 1
    for b in reversed(weights[:-1]):
        q, p = b * q - p, q
    return q, p


def fraction_to_branch(q: int, p: int) -> list[int]:
    """Inverse of :func:`branch_fraction` (the HJ continued fraction)."""
    if not 0 < p < q:
        raise OutOfRange(f"need 0 < p < q, got q={q}, p={p}")
    if gcd(q, p) != 1:
        raise NotCoprime(f"gcd({q}, {p}) = {gcd(q, p)}")
    out = []
    while p:
        b = -(-q // p)
        out.append(b)
        q, p = p, b * p - q
    return out


def is_chain(G: WeightedDualGraph) -> bool:
    return G.is_tree() and max(G.degrees, default=0) <= 2


@dataclass(frozen=True)
class Branch:
    vertices: tuple[int, ...]
    weights: tuple[int, ...]
    q: int
    p: int


@dataclass(frozen=True)
class SeifertData:
    center: int
    b: int
    branches: tuple[Branch, ...]

    @property
    def fractions(self) -> tuple[tuple[int, int], ...]:
        return tuple((br.q, br.p) for br in self.branches)

    @property
    def degree(self) -> Fraction:
        return self.b - sum(Fraction(br.p, br.q) for br in self.branches)


def star_decompose(G: WeightedDualGraph) -> SeifertData:
    """Central curve and branches, in the center's neighbor order."""
    if is_chain(G):
        raise NotStarShaped("graph is a chain")
    star = star_arms(G)
    if star is None:
        raise NotStarShaped("graph has several nodes, a cycle, or a branching arm")
    c, arms = star
    branches = []
    for arm in arms:
        ws = tuple(G.weights[v] for v in arm)
        q, p = branch_fraction(ws)
        branches.append(Branch(tuple(arm), ws, q, p))
    return SeifertData(c, G.weights[c], tuple(branches))


def _structural_log_terminal(G: WeightedDualGraph) -> bool:
    if is_chain(G):
        return True
    try:
        sd = star_decompose(G)
    except NotStarShaped:
        return False
    if len(sd.branches) != 3:
        return False
    qs = sorted(br.q for br in sd.branches)
    return qs[:2] == [2, 2] or tuple(qs) in PLATONIC


@_memo
def is_log_terminal(G: WeightedDualGraph) -> bool:
    """Quotient test by branch orders, cross-checked by discrepancies > -1."""
    require_minimal(G)
    if not G.negative_definite:
        raise NotNegativeDefinite("intersection form is not negative definite")
    structural = _structural_log_terminal(G)
    by_discrepancy = all(a > -1 for a in discrepancies(G))
    if structural != by_discrepancy:
        raise CrossCheckMismatch(
            f"branch test says {structural}, discrepancy test says {by_discrepancy}")
    return structural


@dataclass(frozen=True)
class PDDivisor:
    b: int
    fractions: tuple[tuple[int, int], ...]  # (q_i, p_i), sorted
    degree: Fraction
    display: str
    extension: bool  # display convention is ours, not the b = 2 normal form

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple((1 if i < self.b else 0) - Fraction(p, q)
                     for i, (q, p) in enumerate(self.fractions))


def _format_divisor(b: int, fractions: Sequence[tuple[int, int]]) -> str:
    parts = []
    for i, (q, p) in enumerate(fractions, start=1):
        c = (1 if i <= b else 0) - Fraction(p, q)
        sign = "-" if c < 0 else "+"
        term = f"{abs(c.numerator)}/{c.denominator} P_{i}" if c.denominator != 1 \
            else f"{abs(c.numerator)} P_{i}"
        if not parts:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f" {sign} {term}")
    if b > len(fractions):
        parts.append(f" + {b - len(fractions)} Q")
    return "".join(parts)


def pd_divisor(G: WeightedDualGraph) -> PDDivisor:
    sd = star_decompose(G)
    fr = tuple(sorted(sd.fractions))
    return PDDivisor(sd.b, fr, sd.degree, _format_divisor(sd.b, fr), sd.b != 2)


def graph_from_pd(b: int, branches: Sequence[tuple[int, int]]) -> WeightedDualGraph:
    """Star graph with central weight ``b`` and the given branch fractions."""
    arms = [fraction_to_branch(q, p) for q, p in branches]
    if b < 1:
        raise OutOfRange(f"central weight {b} < 1")
    deg = b - sum(Fraction(p, q) for q, p in branches)
    if deg <= 0:
        raise DegreeNotPositive(f"deg D = {deg} <= 0")
    G = star_graph(b, arms)
    if not G.negative_definite:
        raise NotNegativeDefinite("star graph is not negative definite")
    return G


# -- the nearly Gorenstein non-cyclic quotient list --------------------------------

DING_TABLE: dict[int, tuple[tuple[int, int], ...]] = {
    2: ((2, 1), (3, 1), (3, 1)),
    3: ((2, 1), (3, 1), (3, 2)),
    4: ((2, 1), (3, 2), (4, 1)),
    5: ((2, 1), (3, 1), (4, 1)),
    6: ((2, 1), (3, 1), (4, 3)),
    7: ((2, 1), (3, 2), (5, 1)),
    8: ((2, 1), (3, 2), (5, 3)),
    9: ((2, 1), (3, 1), (5, 1)),
    10: ((2, 1), (3, 1), (5, 3)),
    11: ((2, 1), (3, 1), (5, 4)),
}

# Item 5 has no counterpart in the earlier published list.
PREVIOUSLY_MISSING = frozenset({5})


def family_fraction(k: int, s: int) -> tuple[int, int]:
    """Third branch of item 1: ``k`` (-2)-curves followed by a (-s)-curve."""
    return (k + 1) * s - k, k * s - (k - 1)


@dataclass(frozen=True)
class DingMatch:
    item: Optional[int]
    params: Optional[tuple[int, int]] = None  # (k, s) for item 1

    @property
    def previously_missing(self) -> bool:
        return self.item in PREVIOUSLY_MISSING

    def __str__(self) -> str:
        if self.item is None:
            return "none"
        if self.item == 1:
            return f"1(k={self.params[0]},s={self.params[1]})"
        return str(self.item)


def match_ding(G: WeightedDualGraph) -> DingMatch:
    if is_chain(G):
        raise CyclicQuotient("chain graphs are cyclic quotients")
    sd = star_decompose(G)
    if not is_log_terminal(G):
        raise NotQuotient("graph is not log-terminal")
    if is_gorenstein(G):
        raise GorensteinInput("the list covers non-Gorenstein quotients only")
    if sd.b != 2:
        return DingMatch(None)
    fr = tuple(sorted(sd.fractions))
    if fr[:2] == ((2, 1), (2, 1)):
        weights = fraction_to_branch(*fr[2])
        if weights[-1] >= 3 and all(w == 2 for w in weights[:-1]):
            return DingMatch(1, (len(weights) - 1, weights[-1]))
        return DingMatch(None)
    for item, row in DING_TABLE.items():
        if row == fr:
            return DingMatch(item)
    return DingMatch(None)
