"""Exact scalar fields and sparse row-echelon linear algebra.

Scalars are either ``fractions.Fraction`` (rationals, the default and the
only backend used for certified verdicts) or ``ModInt`` residues mod a
prime.  Both support ``+ - * /`` and are falsy exactly at zero, so all
elimination code below is field-agnostic.

Vectors are dicts ``{column: nonzero scalar}``.  ``RowSpace`` is the
incremental echelon accumulator every higher module reduces to: rows are
immutable once stored, so a copied space can be extended without touching
the original.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush

from .errors import ComplementNotSubspace, ValidationError

try:
    # C-implemented exact rationals; same reduced-form invariants as Fraction
    from gmpy2 import mpq as _rat
except ImportError:  # pragma: no cover
    _rat = Fraction


class ModInt:
    """Residue in F_p, normalized to [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def __add__(self, other):
        return ModInt(self.v + other.v, self.p)

    def __sub__(self, other):
        return ModInt(self.v - other.v, self.p)

    def __mul__(self, other):
        return ModInt(self.v * other.v, self.p)

    def __truediv__(self, other):
        return ModInt(self.v * pow(other.v, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field Q; scalars are exact rationals (gmpy2.mpq when available,
    else Fraction), always reduced with positive denominator."""

    name = "Q"
    zero = _rat(0)
    one = _rat(1)

    @staticmethod
    def from_int(n):
        return _rat(n)

    @staticmethod
    def from_fraction(q):
        return _rat(q.numerator, q.denominator)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """The field F_p for a prime p; scalars are ModInt."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValidationError(f"{p} is not prime")
        self.p = p
        self.name = f"Fp({p})"
        self.zero = ModInt(0, p)
        self.one = ModInt(1, p)

    def from_int(self, n):
        return ModInt(n, self.p)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ValidationError(f"denominator {q.denominator} not invertible mod {self.p}")
        return ModInt(q.numerator * pow(q.denominator, -1, self.p), self.p)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


class RowSpace:
    """Row space accumulator in row-echelon form (REF, not fully reduced).

    ``pivots`` maps a pivot column to its row; rows are dicts with pivot
    coefficient 1.  Stored rows are never mutated, so ``copy()`` shares
    them and the copy may be extended independently of the original.
    """

    __slots__ = ("field", "pivots")

    def __init__(self, field):
        self.field = field
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def copy(self):
        other = RowSpace(self.field)
        other.pivots = dict(self.pivots)
        return other

    @staticmethod
    def _eliminate(vec, f, row):
        # vec -= f * row, in place (row's pivot coefficient is 1)
        for c, s in row.items():
            t = vec.get(c)
            if t is None:
                vec[c] = -(f * s)
            else:
                t = t - f * s
                if t:
                    vec[c] = t
                else:
                    del vec[c]

    def reduce_leading(self, vec):
        """Leading-chain reduction (returns a new dict).  The result is
        zero iff vec lies in the span; otherwise its leading column is not
        a pivot."""
        vec = {c: s for c, s in vec.items() if s}
        pivots = self.pivots
        while vec:
            lead = min(vec)
            row = pivots.get(lead)
            if row is None:
                break
            self._eliminate(vec, vec[lead], row)
        return vec

    def reduce_full(self, vec):
        """Eliminate every pivot column from the support.  The result is
        the canonical representative of vec modulo the row space (supported
        on non-pivot columns only), even though storage is only REF."""
        vec = {c: s for c, s in vec.items() if s}
        pivots = self.pivots
        heap = list(vec)
        heapify(heap)
        while heap:
            c = heappop(heap)
            s = vec.get(c)
            if not s:
                continue
            row = pivots.get(c)
            if row is None:
                continue
            before = set(vec)
            self._eliminate(vec, s, row)
            for k in vec:
                if k not in before:
                    heappush(heap, k)
        return vec

    def insert(self, vec):
        """Insert a vector; returns the new pivot column, or None if the
        vector was already in the span."""
        vec = self.reduce_leading(vec)
        if not vec:
            return None
        lead = min(vec)
        inv = self.field.one / vec[lead]
        self.pivots[lead] = {c: s * inv for c, s in vec.items()}
        return lead

    def contains(self, vec):
        return not self.reduce_leading(vec)

    def contains_space(self, other):
        return all(self.contains(r) for r in other.pivots.values())

    def equals_space(self, other):
        return self.rank == other.rank and self.contains_space(other)

    def basis(self):
        """Stored rows sorted by pivot column."""
        return [self.pivots[c] for c in sorted(self.pivots)]

    def reduced_basis(self):
        """Fully back-substituted (RREF) rows, sorted by pivot column."""
        done = RowSpace(self.field)
        for c in sorted(self.pivots, reverse=True):
            row = self.pivots[c]
            tail = done.reduce_full({k: v for k, v in row.items() if k != c})
            tail[c] = self.field.one
            done.pivots[c] = tail
        return [done.pivots[c] for c in sorted(done.pivots)]


def span(field, vectors):
    sp = RowSpace(field)
    for v in vectors:
        sp.insert(v)
    return sp


def left_kernel_basis(field, rows, tag_offset):
    """Basis of {c : sum_i c_i * rows_i = 0} for dict-vector ``rows``.

    ``tag_offset`` must exceed every column index used by ``rows``; the
    standard [M | I] augmentation tracks the coefficients in tag columns.
    """
    sp = RowSpace(field)
    out = []
    for i, r in enumerate(rows):
        aug = dict(r)
        aug[tag_offset + i] = field.one
        red = sp.reduce_leading(aug)
        if not red or min(red) >= tag_offset:
            out.append({c - tag_offset: s for c, s in red.items()})
        else:
            lead = min(red)
            inv = field.one / red[lead]
            sp.pivots[lead] = {c: s * inv for c, s in red.items()}
    return out


# ---------------------------------------------------------------------------
# SparseMatrix: the public contract type.

class SparseMatrix:
    """Sparse matrix over an exact field with an optional column order.

    ``column_order`` lists the columns from most to least significant; the
    default (None) is the identity 0..ncols-1.  ``rref(m)`` is in reduced
    row-echelon form with respect to that order.  Instances are treated as
    immutable values.
    """

    def __init__(self, nrows, ncols, rows, field=QQ, column_order=None):
        self.ncols = ncols
        self.field = field
        self.column_order = tuple(column_order) if column_order is not None else None
        if self.column_order is not None and sorted(self.column_order) != list(range(ncols)):
            raise ValidationError("column_order must be a permutation of range(ncols)")
        self._pos = None
        self.rows = [self._normalize_row(r) for r in rows]
        self.nrows = len(self.rows)
        if nrows != self.nrows:
            raise ValidationError("nrows does not match rows")

    def _positions(self):
        if self._pos is None:
            if self.column_order is None:
                self._pos = list(range(self.ncols))
            else:
                self._pos = [0] * self.ncols
                for k, c in enumerate(self.column_order):
                    self._pos[c] = k
        return self._pos

    def _normalize_row(self, row):
        items = row.items() if isinstance(row, dict) else row
        pos = self._positions()
        out = []
        for c, s in items:
            if not (0 <= c < self.ncols):
                raise ValidationError(f"column {c} out of range")
            if s:
                out.append((c, s))
        out.sort(key=lambda it: pos[it[0]])
        return tuple(out)

    @classmethod
    def from_dense(cls, entries, field=QQ, column_order=None):
        rows = []
        ncols = len(entries[0]) if entries else 0
        for dense in entries:
            rows.append({c: field.from_int(v) if isinstance(v, int) else v
                         for c, v in enumerate(dense) if v})
        return cls(len(rows), ncols, rows, field, column_order)

    def to_dense(self):
        out = []
        zero = self.field.zero
        for r in self.rows:
            dense = [zero] * self.ncols
            for c, s in r:
                dense[c] = s
            out.append(dense)
        return out

    def row_dicts_positional(self):
        """Rows as {order position: scalar}."""
        pos = self._positions()
        return [{pos[c]: s for c, s in r} for r in self.rows]

    def _from_positional(self, rows_pos):
        back = self.column_order if self.column_order is not None else tuple(range(self.ncols))
        rows = [{back[p]: s for p, s in r.items()} for r in rows_pos]
        return SparseMatrix(len(rows), self.ncols, rows, self.field, self.column_order)

    def row_space(self):
        sp = RowSpace(self.field)
        for r in self.row_dicts_positional():
            sp.insert(r)
        return sp

    def rank(self):
        return self.row_space().rank

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.ncols == other.ncols
                and self.field == other.field and self.column_order == other.column_order
                and self.rows == other.rows)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols} over {self.field!r})"


def rref(m):
    """Reduced row-echelon form under m's column order.  Preserves the row
    space; the result has rank(m) rows and is a fixed point of rref."""
    return m._from_positional(m.row_space().reduced_basis())


def kernel(m):
    """Basis of {v : m v^T = 0}, one row per basis vector; the number of
    rows is ncols - rank(m)."""
    reduced = m.row_space().reduced_basis()
    pivot_set = {min(r) for r in reduced}
    rows_pos = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        vec = {f: m.field.one}
        for r in reduced:
            s = r.get(f)
            if s:
                vec[min(r)] = -s
        rows_pos.append(vec)
    return m._from_positional(rows_pos)


def _require_compatible(a, b):
    if a.ncols != b.ncols or a.column_order != b.column_order or a.field != b.field:
        raise ValidationError("subspace operands need same ncols, field and column_order")


def subspace_sum(a, b):
    _require_compatible(a, b)
    sp = a.row_space()
    for r in b.row_dicts_positional():
        sp.insert(r)
    return a._from_positional(sp.reduced_basis())


def subspace_intersection(a, b):
    """Zassenhaus: echelonize rows [r|r] for r in a against rows [r|0] for
    r in b; combinations whose left half vanishes carry an intersection
    vector in the right half."""
    _require_compatible(a, b)
    n = a.ncols
    sp = RowSpace(a.field)
    found = []
    for r in a.row_dicts_positional():
        aug = dict(r)
        aug.update({c + n: s for c, s in r.items()})
        sp.insert(aug)
    for r in b.row_dicts_positional():
        red = sp.reduce_leading(dict(r))
        if red and min(red) >= n:
            found.append({c - n: s for c, s in red.items()})
        elif red:
            lead = min(red)
            inv = a.field.one / red[lead]
            sp.pivots[lead] = {c: s * inv for c, s in red.items()}
    inter = span(a.field, found)
    return a._from_positional(inter.reduced_basis())


def subspace_contains(a, b):
    """True iff rowspace(b) is contained in rowspace(a)."""
    _require_compatible(a, b)
    sp = a.row_space()
    return all(not sp.reduce_leading(r) for r in b.row_dicts_positional())


def subspace_complement(a, b):
    """Echelon basis c with rowspace(c) (+) rowspace(a) = rowspace(b),
    built greedily from b's reduced rows in pivot order (deterministic):
    each row's reduction remainder modulo a and the rows already kept
    becomes a complement vector.

    Raises ComplementNotSubspace unless rowspace(a) <= rowspace(b)."""
    _require_compatible(a, b)
    if not subspace_contains(b, a):
        raise ComplementNotSubspace("first operand not contained in the second")
    sp = a.row_space()
    picked = []
    for r in b.row_space().reduced_basis():
        piv = sp.insert(dict(r))
        if piv is not None:
            picked.append(dict(sp.pivots[piv]))
    comp = span(a.field, picked)
    return a._from_positional(comp.reduced_basis())


def subspace_ops(a, b):
    """Bundle {sum, intersection, contains, complement}; contains means
    rowspace(b) <= rowspace(a), complement is of a inside b (None when a is
    not a subspace of b; the standalone op raises instead)."""
    try:
        comp = subspace_complement(a, b)
    except ComplementNotSubspace:
        comp = None
    return {
        "sum": subspace_sum(a, b),
        "intersection": subspace_intersection(a, b),
        "contains": subspace_contains(a, b),
        "complement": comp,
    }
