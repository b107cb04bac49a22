"""Decision procedure for algebraic solvability of the triangular Riccati
equation, via the classical 15-row classification table (Kimura) plus the
odd-integer-sum test.

The decision takes the parameter inverses x = (1/alpha, 1/beta, 1/gamma)
with 1/infinity = 0 and checks

  condition 1: some row of the table is matched by (eps_i * x_{sigma(i)})
               modulo Z, over all 6 slot permutations and 8 sign patterns,
               honoring the row's "l+m+n even" flag where present;
  condition 2: one of the four sums +-x0 + x1 + x2 (single sign flips) is
               an odd integer.

If neither fires over the exhaustive 15 x 6 x 8 = 720 assignment search and
the four sums, the Riccati equation has no algebraic solution over the
algebraic closure of C(y) ("condition Ric holds") and the Schwarzian
equation has no order-two differential subvarieties.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from typing import Iterator, List, Optional, Tuple, Union

from .scalars import INF, ExtRational, Q, is_odd_integer
from .schwarzian import TriangleParams

CONDITION_RIC_HOLDS = "ConditionRicHolds"
ALGEBRAIC_SOLUTION_INDICATED = "AlgebraicSolutionIndicated"


@dataclass(frozen=True)
class TableRow:
    """One row of the classification table.

    Each slot is a fraction q (the row matches values in q + Z) or None for
    an "arbitrary" slot.  parity=True adds the constraint that the recovered
    integers l, m, n sum to an even number.
    """

    index: int
    slots: Tuple[Optional[object], ...]
    parity: bool


def _row(index, fracs, parity):
    slots = tuple(None if f is None else Q(*f) for f in fracs)
    return TableRow(index, slots, parity)


TABLE: Tuple[TableRow, ...] = (
    _row(1, ((1, 2), (1, 2), None), False),
    _row(2, ((1, 2), (1, 2), (1, 2)), False),
    _row(3, ((2, 3), (1, 3), (1, 4)), True),
    _row(4, ((1, 2), (1, 3), (1, 4)), False),
    _row(5, ((2, 3), (1, 4), (1, 4)), True),
    _row(6, ((1, 2), (1, 3), (1, 5)), False),
    _row(7, ((2, 5), (1, 3), (1, 3)), True),
    _row(8, ((2, 3), (1, 5), (1, 5)), True),
    _row(9, ((1, 2), (2, 5), (1, 5)), True),
    _row(10, ((3, 5), (1, 3), (1, 5)), True),
    _row(11, ((2, 5), (2, 5), (2, 5)), True),
    _row(12, ((2, 3), (1, 3), (1, 5)), True),
    _row(13, ((4, 5), (1, 5), (1, 5)), True),
    _row(14, ((1, 2), (2, 5), (1, 3)), True),
    _row(15, ((3, 5), (2, 5), (1, 3)), True),
)

_PERMS: Tuple[Tuple[int, int, int], ...] = tuple(permutations((0, 1, 2)))
_SIGNS: Tuple[Tuple[int, int, int], ...] = tuple(product((1, -1), repeat=3))

# total assignments examined by the exhaustive condition-1 search
ASSIGNMENT_COUNT = len(TABLE) * len(_PERMS) * len(_SIGNS)


@dataclass(frozen=True)
class LatticeWitness:
    """Condition-1 witness: eps_i * x_{perm[i]} = slot fraction + integers[i]."""

    row: int
    permutation: Tuple[int, int, int]
    signs: Tuple[int, int, int]
    integers: Tuple[Optional[int], ...]  # None for an "arbitrary" slot

    condition = 1


@dataclass(frozen=True)
class OddSumWitness:
    """Condition-2 witness: sum of signs[i] * x_i is the odd integer value."""

    signs: Tuple[int, int, int]
    value: int

    condition = 2


KimuraWitness = Union[LatticeWitness, OddSumWitness]


@dataclass(frozen=True)
class KimuraVerdict:
    outcome: str  # CONDITION_RIC_HOLDS or ALGEBRAIC_SOLUTION_INDICATED
    witness: Optional[KimuraWitness] = None

    @property
    def holds(self) -> bool:
        return self.outcome == CONDITION_RIC_HOLDS


_TABLE_FRACTIONS = frozenset(q for row in TABLE for q in row.slots if q is not None)
_ROW_NEEDED = tuple(
    frozenset(q for q in row.slots if q is not None) for row in TABLE
)

_frac_match_cache: dict = {}


def _frac_matches(x) -> frozenset:
    """Row fractions q with +x or -x in q + Z (cached; x values repeat)."""
    hit = _frac_match_cache.get(x)
    if hit is None:
        hit = frozenset(
            f for f in ((x % 1), ((-x) % 1)) if f in _TABLE_FRACTIONS
        )
        _frac_match_cache[x] = hit
    return hit


def _row_match(row: TableRow, xs, matched=None) -> Optional[LatticeWitness]:
    """First matching assignment of row against inverse values xs, or None.

    Deterministic order: permutations in itertools order, then sign patterns
    in itertools.product((1, -1)) order.
    """
    if matched is None:
        matched = _frac_matches(xs[0]) | _frac_matches(xs[1]) | _frac_matches(xs[2])
    # a row can only match if every required fraction is hit by some value
    if not _ROW_NEEDED[row.index - 1] <= matched:
        return None
    for perm in _PERMS:
        for signs in _SIGNS:
            integers: List[Optional[int]] = []
            ok = True
            for slot, q in enumerate(row.slots):
                if q is None:
                    integers.append(None)
                    continue
                v = signs[slot] * xs[perm[slot]] - q
                if v.denominator != 1:
                    ok = False
                    break
                integers.append(int(v))
            if not ok:
                continue
            if row.parity and sum(i for i in integers if i is not None) % 2 != 0:
                continue
            return LatticeWitness(row.index, perm, signs, tuple(integers))
    return None


def condition_one(p: TriangleParams) -> Optional[LatticeWitness]:
    """Exhaustive search of the table; first witness by (row, perm, signs)."""
    return _condition_one_xs(p.inverses())


def _condition_one_xs(xs) -> Optional[LatticeWitness]:
    matched = _frac_matches(xs[0]) | _frac_matches(xs[1]) | _frac_matches(xs[2])
    if matched:
        for row in TABLE:
            w = _row_match(row, xs, matched)
            if w is not None:
                return w
    return None


_SUM_SIGNS: Tuple[Tuple[int, int, int], ...] = (
    (1, 1, 1),
    (-1, 1, 1),
    (1, -1, 1),
    (1, 1, -1),
)


def condition_two(p: TriangleParams) -> Optional[OddSumWitness]:
    """First of the four single-flip sums that is an odd integer, if any."""
    return _condition_two_xs(p.inverses())


def _condition_two_xs(xs) -> Optional[OddSumWitness]:
    x0, x1, x2 = xs
    total = x0 + x1 + x2
    for signs, s in (
        ((1, 1, 1), total),
        ((-1, 1, 1), total - 2 * x0),
        ((1, -1, 1), total - 2 * x1),
        ((1, 1, -1), total - 2 * x2),
    ):
        if is_odd_integer(s):
            return OddSumWitness(signs, int(s))
    return None


def verify_witness(p: TriangleParams, w: KimuraWitness) -> bool:
    """Independent replay of a witness, kept deliberately simple.

    Checks only elementary arithmetic facts: Z-membership of each matched
    slot, the parity constraint, or odd integrality of the named sum.
    """
    xs = p.inverses()
    if isinstance(w, OddSumWitness):
        s = sum(sign * x for sign, x in zip(w.signs, xs))
        return s == w.value and w.value % 2 != 0
    row = TABLE[w.row - 1]
    assert row.index == w.row
    total = 0
    for slot, q in enumerate(row.slots):
        if q is None:
            if w.integers[slot] is not None:
                return False
            continue
        k = w.integers[slot]
        if k is None:
            return False
        if w.signs[slot] * xs[w.permutation[slot]] != q + k:
            return False
        total += k
    if row.parity and total % 2 != 0:
        return False
    return True


def decide_condition_ric(p: TriangleParams) -> KimuraVerdict:
    """Full decision: condition 1 first, then condition 2.

    CONDITION_RIC_HOLDS is returned only after the exhaustive search over
    all 720 table assignments and all four sums found nothing.
    """
    xs = p.inverses()
    w: Optional[KimuraWitness] = _condition_one_xs(xs)
    if w is None:
        w = _condition_two_xs(xs)
    if w is None:
        return KimuraVerdict(CONDITION_RIC_HOLDS)
    return KimuraVerdict(ALGEBRAIC_SOLUTION_INDICATED, w)


def hyperbolic_integer_triples(bound: int) -> Iterator[TriangleParams]:
    """All alpha <= beta <= gamma from {2..bound} u {inf} with
    1/alpha + 1/beta + 1/gamma < 1; infinity sorts last."""
    values = [(ExtRational.of(n), Q(1, n)) for n in range(2, bound + 1)]
    values.append((INF, Q(0)))
    one = Q(1)
    for (a, ia), (b, ib), (c, ic) in combinations_with_replacement(values, 3):
        if ia + ib + ic < one:
            yield TriangleParams(a, b, c)


def hyperbolic_integer_sweep(bound: int) -> List[Tuple[TriangleParams, KimuraVerdict]]:
    """Decide every hyperbolic integer triple up to the bound."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    return [(p, decide_condition_ric(p)) for p in hyperbolic_integer_triples(bound)]
