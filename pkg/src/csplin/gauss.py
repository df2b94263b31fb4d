"""Incremental exact Gauss-Jordan elimination.

Rows are kept fraction-free: integer coefficients with content 1 and a
positive pivot coefficient.  Each row's pivot occurs in no other row, so a
term is reduced by a single pass over its pivot variables.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .formula import LinearTerm
from .rational import bit_size

IntRow = dict  # var -> int, plus the constant under key None


class Outcome(enum.Enum):
    ADDED = "added"
    REDUNDANT = "redundant"
    INCONSISTENT = "inconsistent"


def _to_int_row(t: LinearTerm) -> IntRow:
    """Clear denominators; the result has the same zero set as ``t``."""
    den = 1
    for c in t.coeffs.values():
        den = lcm(den, c.denominator)
    den = lcm(den, t.const.denominator)
    row = {v: int(c * den) for v, c in t.items()}
    if t.const:
        row[None] = int(t.const * den)
    return row


def _content(row: IntRow) -> int:
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _divide(row: IntRow, g: int) -> IntRow:
    if g > 1:
        return {v: c // g for v, c in row.items()}
    return row


def _row_bits(row: IntRow) -> int:
    return sum(c.bit_length() or 1 for c in row.values())


def _row_term(row: IntRow) -> LinearTerm:
    return LinearTerm(((v, c) for v, c in row.items() if v is not None), row.get(None, 0))


def shorten(t: LinearTerm) -> LinearTerm:
    """Clear denominators, divide out the integer gcd, make the lead positive.

    The lead is the first coefficient in the term's own order; the zero set
    is unchanged.
    """
    row = _to_int_row(t)
    row = _divide(row, _content(row))
    items = [(v, c) for v, c in row.items() if v is not None]
    lead = items[0][1] if items else row.get(None, 0)
    sign = -1 if lead < 0 else 1
    return LinearTerm(((v, sign * c) for v, c in items), sign * row.get(None, 0))


def term_bit_size(t: LinearTerm) -> int:
    """Total ``bit_size`` of a term's coefficients and constant."""
    return sum(bit_size(c) for c in t.coeffs.values()) + bit_size(t.const)


def eliminate(row: IntRow, pivot, prow: IntRow) -> IntRow:
    """Fraction-free ``a*row - b*prow`` cancelling ``pivot``, then shortened."""
    b = row[pivot]
    a = prow[pivot]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {v: a * c for v, c in row.items()} if a != 1 else dict(row)
    for v, c in prow.items():
        nc = out.get(v, 0) - b * c
        if nc:
            out[v] = nc
        else:
            out.pop(v, None)
    return _divide(out, _content(out))


class TriangularSystem:
    """A growing set of linear equations ``row = 0`` in reduced echelon form.

    ``order`` fixes variable ordinals; the pivot of a new row is its
    lowest-ordinal variable.  Variables outside ``order`` rank after it in
    first-seen order.
    """

    def __init__(self, order: Sequence[str] = ()):
        self._rank_of: dict[str, int] = {v: i for i, v in enumerate(order)}
        self._rows: list[IntRow] = []
        self._pivot_vars: list[str] = []
        self.pivots: dict[str, int] = {}
        self._col: dict[str, set[int]] = {}
        self.consistent = True
        self.max_row_bits = 0

    def copy(self) -> TriangularSystem:
        new = TriangularSystem.__new__(TriangularSystem)
        new._rank_of = dict(self._rank_of)
        new._rows = [dict(r) for r in self._rows]
        new._pivot_vars = list(self._pivot_vars)
        new.pivots = dict(self.pivots)
        new._col = {v: set(s) for v, s in self._col.items()}
        new.consistent = self.consistent
        new.max_row_bits = self.max_row_bits
        return new

    snapshot = copy

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> list[LinearTerm]:
        return [_row_term(r) for r in self._rows]

    def row_for(self, pivot: str) -> LinearTerm:
        return _row_term(self._rows[self.pivots[pivot]])

    def pivot_row(self, pivot: str) -> IntRow:
        """The internal integer row for ``pivot`` (do not mutate)."""
        return self._rows[self.pivots[pivot]]

    @property
    def last_pivot(self) -> str | None:
        return self._pivot_vars[-1] if self._pivot_vars else None

    def _set_row(self, i: int, row: IntRow):
        old = self._rows[i] if i < len(self._rows) else {}
        for v in old:
            if v is not None and v not in row:
                self._col[v].discard(i)
        for v in row:
            if v is not None and v not in old:
                self._col.setdefault(v, set()).add(i)
        if i < len(self._rows):
            self._rows[i] = row
        else:
            self._rows.append(row)

    def _ordinal(self, v: str) -> int:
        r = self._rank_of.get(v)
        if r is None:
            r = self._rank_of[v] = len(self._rank_of)
        return r

    def _note(self, row: IntRow):
        bits = _row_bits(row)
        if bits > self.max_row_bits:
            self.max_row_bits = bits

    def reduce_row(self, row: IntRow) -> IntRow:
        """Fraction-free reduction of an integer row by every pivot in it."""
        for v in [v for v in row if v in self.pivots]:
            if v in row:
                row = eliminate(row, v, self._rows[self.pivots[v]])
                self._note(row)
        return row

    def add_equation(self, eq: LinearTerm) -> Outcome:
        row = _to_int_row(eq)
        row = _divide(row, _content(row))
        self._note(row)
        row = self.reduce_row(row)
        variables = [v for v in row if v is not None]
        if not variables:
            if row.get(None, 0):
                self.consistent = False
                return Outcome.INCONSISTENT
            return Outcome.REDUNDANT
        pivot = min(variables, key=self._ordinal)
        if row[pivot] < 0:
            row = {v: -c for v, c in row.items()}
        for i in sorted(self._col.get(pivot, ())):
            new = eliminate(self._rows[i], pivot, row)
            self._note(new)
            self._set_row(i, new)
        self.pivots[pivot] = len(self._rows)
        self._set_row(len(self._rows), row)
        self._pivot_vars.append(pivot)
        return Outcome.ADDED

    def entails(self, eq: LinearTerm) -> bool:
        """Whether every solution satisfies ``eq = 0``.

        An inconsistent system entails everything.
        """
        if not self.consistent:
            return True
        row = self.reduce_row(_to_int_row(eq))
        return not row

    def reduce_term(self, t: LinearTerm) -> LinearTerm:
        """``t`` minus a combination of rows, free of pivot variables."""
        coeffs = dict(t.coeffs)
        const = t.const
        for v in [v for v in coeffs if v in self.pivots]:
            factor = coeffs[v]
            prow = self._rows[self.pivots[v]]
            factor = factor / prow[v]
            for w, c in prow.items():
                if w is None:
                    const -= factor * c
                else:
                    nc = coeffs.get(w, 0) - factor * c
                    if nc:
                        coeffs[w] = nc
                    else:
                        coeffs.pop(w, None)
        return LinearTerm(coeffs, const)

    def solution(self, free_values: dict[str, Fraction]) -> dict[str, Fraction]:
        """Values of the pivot variables given values for all free ones."""
        out = {}
        for pivot, row in zip(self._pivot_vars, self._rows):
            acc = Fraction(row.get(None, 0))
            for v, c in row.items():
                if v is not None and v != pivot:
                    acc += c * free_values[v]
            out[pivot] = -acc / row[pivot]
        return out

    def variables(self) -> set[str]:
        out = set()
        for r in self._rows:
            out.update(v for v in r if v is not None)
        return out

    @classmethod
    def from_batch(cls, equations: Iterable[LinearTerm], order: Sequence[str] = ()) -> TriangularSystem:
        """One-shot Gauss-Jordan over the full rational matrix."""
        equations = list(equations)
        cols = list(order)
        seen = set(cols)
        for e in equations:
            for v in e.variables():
                if v not in seen:
                    seen.add(v)
                    cols.append(v)
        matrix = [[e.coeff(v) for v in cols] + [e.const] for e in equations]
        pivot_cols = []
        r = 0
        for c in range(len(cols)):
            pr = next((i for i in range(r, len(matrix)) if matrix[i][c]), None)
            if pr is None:
                continue
            matrix[r], matrix[pr] = matrix[pr], matrix[r]
            lead = matrix[r][c]
            matrix[r] = [x / lead for x in matrix[r]]
            for i in range(len(matrix)):
                if i != r and matrix[i][c]:
                    f = matrix[i][c]
                    matrix[i] = [x - f * y for x, y in zip(matrix[i], matrix[r])]
            pivot_cols.append(c)
            r += 1
        sys = cls(cols)
        if any(row[-1] for row in matrix[r:]):
            sys.consistent = False
        for i, c in enumerate(pivot_cols):
            term = LinearTerm(((v, x) for v, x in zip(cols, matrix[i][:-1])), matrix[i][-1])
            row = _to_int_row(term)
            row = _divide(row, _content(row))
            sys.pivots[cols[c]] = i
            sys._set_row(i, row)
            sys._pivot_vars.append(cols[c])
            sys._note(row)
        return sys


def add_equation(sys: TriangularSystem, eq: LinearTerm) -> Outcome:
    return sys.add_equation(eq)


def entails(sys: TriangularSystem, eq: LinearTerm) -> bool:
    return sys.entails(eq)


def reduce_term(sys: TriangularSystem, t: LinearTerm) -> LinearTerm:
    return sys.reduce_term(t)
