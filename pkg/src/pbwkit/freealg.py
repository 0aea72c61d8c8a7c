"""Words and elements of the free algebra on g degree-1 generators.

A Word is a tuple of generator indices; the empty tuple is the unit.  The
one global monomial order is degree-descending, then lexicographic on the
letters: it drives every column order downstream, so echelon bases are
simultaneously adapted to all filtration steps T^{<=n}.

Elements are finite maps Word -> nonzero scalar over a fixed field.  The
text syntax (used by presentation files) is ``x*y - y*x - 1/2*x``:
identifiers are generators, ``*`` concatenates, ``+``/``-`` are linear,
coefficients are integers or ``a/b``, and ``1`` is the unit word.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import product

from .errors import HomogenizeZero, ParseError, ResourceExceeded, ValidationError
from .linalg import QQ

DEFAULT_COLUMN_GUARD = 2 * 10**6


def column_guard():
    raw = os.environ.get("PBWKIT_MAX_COLUMNS")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValidationError(f"PBWKIT_MAX_COLUMNS={raw!r} is not an integer")
    return DEFAULT_COLUMN_GUARD


def word_key(w):
    """Sort key for the global order: degree descending, then lex."""
    return (-len(w), w)


class Element:
    """Finite linear combination of words; zero coefficients are never stored."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {}
        if terms:
            for w, s in terms.items():
                if s:
                    self.terms[tuple(w)] = s

    @classmethod
    def zero(cls, field=QQ):
        return cls(field)

    @classmethod
    def unit(cls, field=QQ):
        return cls(field, {(): field.one})

    @classmethod
    def generator(cls, i, field=QQ):
        return cls(field, {(i,): field.one})

    @classmethod
    def from_word(cls, w, field=QQ, coeff=None):
        return cls(field, {tuple(w): coeff if coeff is not None else field.one})

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Max word degree; None for the zero element (the -infinity sentinel)."""
        if not self.terms:
            return None
        return max(len(w) for w in self.terms)

    def is_homogeneous(self):
        degs = {len(w) for w in self.terms}
        return len(degs) <= 1

    def __add__(self, other):
        out = dict(self.terms)
        for w, s in other.terms.items():
            t = out.get(w)
            t = s if t is None else t + s
            if t:
                out[w] = t
            else:
                out.pop(w, None)
        return Element(self.field, out)

    def __neg__(self):
        return Element(self.field, {w: -s for w, s in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Element(self.field)
        return Element(self.field, {w: c * s for w, s in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda it: word_key(it[0]))

    def __repr__(self):
        return f"Element({format_element(self, None)})"


def multiply(a, b):
    """Bilinear concatenation product of the tensor ring."""
    out = {}
    for u, s in a.terms.items():
        for v, t in b.terms.items():
            w = u + v
            c = out.get(w)
            c = s * t if c is None else c + s * t
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return Element(a.field, out)


def project(e, n):
    """p^n(e): the degree-n homogeneous component."""
    return Element(e.field, {w: s for w, s in e.terms.items() if len(w) == n})


def leading_homogeneous(e):
    """LH(e) = p^{deg e}(e); LH(0) = 0."""
    d = e.degree()
    if d is None:
        return Element(e.field)
    return project(e, d)


class HomogenizedElement:
    """Element of T[z], homogeneous in total degree = word degree + z power."""

    __slots__ = ("field", "total_degree", "terms")

    def __init__(self, field, total_degree, terms):
        self.field = field
        self.total_degree = total_degree
        self.terms = {}
        for (w, k), s in terms.items():
            if len(w) + k != total_degree:
                raise ValidationError("term not homogeneous in total degree")
            if s:
                self.terms[(tuple(w), k)] = s

    def eval_z(self, value):
        """Substitute z := value (a field scalar); returns an Element of T."""
        out = Element(self.field)
        for (w, k), s in self.terms.items():
            c = s
            for _ in range(k):
                c = c * value
            if c:
                out = out + Element.from_word(w, self.field, c)
        return out

    def __eq__(self, other):
        return (isinstance(other, HomogenizedElement)
                and self.total_degree == other.total_degree and self.terms == other.terms)

    def __repr__(self):
        bits = []
        for (w, k), s in sorted(self.terms.items(), key=lambda it: (word_key(it[0][0]), it[0][1])):
            word = "*".join(f"g{i}" for i in w) if w else ""
            zpart = f"z^{k}" if k > 1 else ("z" if k == 1 else "")
            mono = "*".join(x for x in (word, zpart) if x) or "1"
            bits.append(f"{s}*{mono}")
        return " + ".join(bits) or "0"


def homogenize(e):
    """External homogenization e* in T[z]: each degree-i part is padded with
    z^(d-i).  Substituting z := 1 recovers e; z := 0 recovers LH(e)."""
    d = e.degree()
    if d is None:
        raise HomogenizeZero("cannot homogenize the zero element")
    return HomogenizedElement(e.field, d, {(w, d - len(w)): s for w, s in e.terms.items()})


# ---------------------------------------------------------------------------
# Column indexing.

class WordBasis:
    """Columns for T^{<=max_degree}: degree-descending blocks, lex inside.

    Because blocks are listed from the top degree down, the column set of
    T^{<=n} is a suffix for every n <= max_degree, which is what makes one
    echelon basis adapted to the whole filtration.
    """

    def __init__(self, g, max_degree, guard=None):
        if g < 1:
            raise ValidationError("need at least one generator")
        guard = guard if guard is not None else column_guard()
        self.g = g
        self.max_degree = max_degree
        total = 0
        sizes = []
        for n in range(max_degree + 1):
            size = g ** n
            sizes.append(size)
            total += size
            if total > guard:
                raise ResourceExceeded(
                    f"T^<={max_degree} over {g} generators needs {total}+ columns"
                    f" (guard {guard}; set PBWKIT_MAX_COLUMNS to raise)")
        self.size = total
        # offset of the degree-n block, blocks stored from degree max down to 0
        self.offsets = {}
        off = 0
        for n in range(max_degree, -1, -1):
            self.offsets[n] = off
            off += sizes[n]
        self._word_cache = {}
        self._deg_of = None
        self._mult_left = None
        self._mult_right = None

    def pos(self, w):
        n = len(w)
        off = self.offsets.get(n)
        if off is None:
            raise ValidationError(f"word degree {n} exceeds basis bound {self.max_degree}")
        p = 0
        for letter in w:
            p = p * self.g + letter
        return off + p

    def word_at(self, pos):
        w = self._word_cache.get(pos)
        if w is not None:
            return w
        for n in range(self.max_degree, -1, -1):
            off = self.offsets[n]
            if off <= pos < off + self.g ** n:
                rem = pos - off
                letters = []
                for _ in range(n):
                    letters.append(rem % self.g)
                    rem //= self.g
                w = tuple(reversed(letters))
                self._word_cache[pos] = w
                return w
        raise ValidationError(f"position {pos} out of range")

    def degree_of_pos(self, pos):
        if self._deg_of is None:
            arr = [0] * self.size
            for n in range(self.max_degree + 1):
                off = self.offsets[n]
                for p in range(off, off + self.g ** n):
                    arr[p] = n
            self._deg_of = arr
        return self._deg_of[pos]

    def _build_mult(self):
        g = self.g
        left = [[-1] * self.size for _ in range(g)]
        right = [[-1] * self.size for _ in range(g)]
        for n in range(self.max_degree):
            off = self.offsets[n]
            off1 = self.offsets[n + 1]
            block = g ** n
            for p in range(block):
                pos = off + p
                for i in range(g):
                    left[i][pos] = off1 + i * block + p
                    right[i][pos] = off1 + p * g + i
        self._mult_left = left
        self._mult_right = right

    def mult_left_vec(self, i, vec):
        """x_i * vec, positions only; every entry must have degree < max.
        Under the degree-descending order the smallest position has the top
        degree, so one check guards the whole row."""
        if self._mult_left is None:
            self._build_mult()
        if vec and min(vec) < self.offsets[self.max_degree - 1]:
            raise ValidationError("product would exceed the basis degree")
        tab = self._mult_left[i]
        return {tab[p]: s for p, s in vec.items()}

    def mult_right_vec(self, vec, i):
        if self._mult_right is None:
            self._build_mult()
        if vec and min(vec) < self.offsets[self.max_degree - 1]:
            raise ValidationError("product would exceed the basis degree")
        tab = self._mult_right[i]
        return {tab[p]: s for p, s in vec.items()}

    def words_of_degree(self, n):
        return product(range(self.g), repeat=n)

    def suffix_start(self, n):
        """First column of the T^{<=n} suffix block."""
        if n >= self.max_degree:
            return 0
        return self.offsets[n]

    def element_to_vec(self, e):
        return {self.pos(w): s for w, s in e.terms.items()}

    def vec_to_element(self, vec, field):
        return Element(field, {self.word_at(p): s for p, s in vec.items()})

    def shift_into(self, bigger):
        """Position offset mapping this basis into a bigger one (same g)."""
        if bigger.g != self.g or bigger.max_degree < self.max_degree:
            raise ValidationError("incompatible word bases")
        return bigger.size - self.size


class DegreeBasis:
    """Columns for the single homogeneous component T^n (lex order)."""

    def __init__(self, g, n, guard=None):
        guard = guard if guard is not None else column_guard()
        if g ** n > guard:
            raise ResourceExceeded(
                f"T^{n} over {g} generators needs {g ** n} columns (guard {guard})")
        self.g = g
        self.n = n
        self.size = g ** n

    def pos(self, w):
        if len(w) != self.n:
            raise ValidationError("word degree mismatch")
        p = 0
        for letter in w:
            p = p * self.g + letter
        return p

    def word_at(self, pos):
        rem = pos
        letters = []
        for _ in range(self.n):
            letters.append(rem % self.g)
            rem //= self.g
        return tuple(reversed(letters))


# ---------------------------------------------------------------------------
# Element text syntax.

class _Tokenizer:
    def __init__(self, text, line=1, col=1):
        self.text = text
        self.i = 0
        self.line = line
        self.col = col

    def error(self, msg):
        raise ParseError(self.line, self.col, msg)

    def _advance(self, k):
        for ch in self.text[self.i:self.i + k]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.i += k

    def tokens(self):
        out = []
        while self.i < len(self.text):
            ch = self.text[self.i]
            if ch.isspace():
                self._advance(1)
                continue
            start = (self.line, self.col)
            if ch in "+-*/":
                out.append((ch, ch, start))
                self._advance(1)
            elif ch.isdigit():
                j = self.i
                while j < len(self.text) and self.text[j].isdigit():
                    j += 1
                out.append(("int", self.text[self.i:j], start))
                self._advance(j - self.i)
            elif ch.isalpha() or ch == "_":
                j = self.i
                while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_"):
                    j += 1
                out.append(("ident", self.text[self.i:j], start))
                self._advance(j - self.i)
            else:
                self.error(f"unexpected character {ch!r}")
        out.append(("end", "", (self.line, self.col)))
        return out


def parse_element(text, generators, field=QQ, line=1, col=1):
    """Parse the element syntax over the named generators.

    >>> e = parse_element("x*y - y*x - 1/2*x", ["x", "y"])
    >>> sorted(e.terms.items(), key=lambda t: t[0])
    [((0,), Fraction(-1, 2)), ((0, 1), Fraction(1, 1)), ((1, 0), Fraction(-1, 1))]
    """
    gen_index = {name: k for k, name in enumerate(generators)}
    toks = _Tokenizer(text, line, col).tokens()
    k = 0

    def peek():
        return toks[k]

    def take():
        nonlocal k
        t = toks[k]
        k += 1
        return t

    def fail(tok, msg):
        raise ParseError(tok[2][0], tok[2][1], msg)

    def parse_atom(coeff, word):
        tok = take()
        if tok[0] == "int":
            num = int(tok[1])
            if peek()[0] == "/":
                take()
                dtok = take()
                if dtok[0] != "int":
                    fail(dtok, "expected integer denominator")
                den = int(dtok[1])
                if den == 0:
                    fail(dtok, "zero denominator")
                coeff = coeff * field.from_fraction(Fraction(num, den))
            else:
                coeff = coeff * field.from_int(num)
        elif tok[0] == "ident":
            idx = gen_index.get(tok[1])
            if idx is None:
                fail(tok, f"unknown generator {tok[1]!r}")
            word = word + (idx,)
        else:
            fail(tok, f"expected coefficient or generator, got {tok[1]!r}")
        return coeff, word

    def parse_term(sign):
        coeff = field.from_int(sign)
        word = ()
        coeff, word = parse_atom(coeff, word)
        while peek()[0] == "*":
            take()
            coeff, word = parse_atom(coeff, word)
        return word, coeff

    result = Element(field)
    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if take()[0] == "-" else 1
    w, c = parse_term(sign)
    result = result + Element(field, {w: c})
    while peek()[0] != "end":
        tok = take()
        if tok[0] not in ("+", "-"):
            fail(tok, f"expected '+' or '-', got {tok[1]!r}")
        w, c = parse_term(-1 if tok[0] == "-" else 1)
        result = result + Element(field, {w: c})
    return result


def _coeff_str(s):
    if isinstance(s, Fraction):
        return str(s)
    if hasattr(s, "v"):
        return str(s.v)
    return str(s)


def format_element(e, generators):
    """Inverse of parse_element up to term order (global word order)."""
    if e.is_zero():
        return "0"
    names = generators

    def mono(w):
        if not w:
            return "1"
        if names is None:
            return "*".join(f"g{i}" for i in w)
        return "*".join(names[i] for i in w)

    bits = []
    for w, s in e.sorted_terms():
        cs = _coeff_str(s)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if w and cs == "1":
            body = mono(w)
        elif not w:
            body = cs
        else:
            body = f"{cs}*{mono(w)}"
        if not bits:
            bits.append(f"-{body}" if neg else body)
        else:
            bits.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(bits)
