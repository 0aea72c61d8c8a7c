"""The central extension D(P) = T[z]/<P*>, built degree by degree.

This is the independent check against the Jacobi ladder: (J_n) holds iff
the degree-n annihilator of z in D(P) vanishes, so the two modules must
agree on every instance.  To keep the cross-check honest the engine uses
its own monomial representation (word (x) z-power, ordered by ascending
word degree, i.e. descending z-exponent) and its own ideal recursion in
T[z]; nothing is shared with the ladder beyond the generic row-space code.

P_z is always built through alpha_z (never by homogenizing a raw spanning
set), which is what guarantees <P*> = <P_z>.
"""

from __future__ import annotations

from .errors import ResourceExceeded, ValidationError
from .freealg import column_guard, homogenize
from .gradedring import ideal_chain
from .linalg import RowSpace, left_kernel_basis, span

ENGINE_DEGREE_CAP = 24


def _filtration_size(g, n):
    if n < 0:
        return 0
    return sum(g ** i for i in range(n + 1))


def build_pz(alpha, rel):
    """alpha_z(r) = sum alpha_i(r) z^i for each basis element r of rel.

    Since alpha_0 is the inclusion these are exactly the external
    homogenizations of the alpha images, homogeneous of total degree
    deg(r); evaluating z := 1 recovers alpha(r) and z := 0 recovers r.
    """
    out = []
    for n in rel.degrees():
        for row in rel.blocks[n].basis():
            image = alpha.apply_vec(n, row)
            out.append(homogenize(image))
    return out


class ZMonomials:
    """Position indexing for T[z]^n: monomial w z^(n-|w|) for every word w
    of degree <= n, ordered by word degree descending (z-power ascending),
    lex inside a degree.  High-degree pivots keep the echelon rows sparse;
    multiplication by z into degree n+1 is a constant position shift."""

    _word_cache = {}

    def __init__(self, g, n):
        self.g = g
        self.n = n
        self.size = _filtration_size(g, n)
        if self.size > column_guard():
            raise ResourceExceeded(
                f"T[z]^{n} over {g} generators needs {self.size} columns")

    def pos_of_word(self, w):
        p = 0
        for letter in w:
            p = p * self.g + letter
        return self.size - _filtration_size(self.g, len(w)) + p

    def word_at(self, pos):
        t = self.size - pos
        key = (self.g, t)
        w = self._word_cache.get(key)
        if w is not None:
            return w
        d = 0
        while _filtration_size(self.g, d) < t:
            d += 1
        rem = _filtration_size(self.g, d) - t
        letters = []
        for _ in range(d):
            letters.append(rem % self.g)
            rem //= self.g
        w = tuple(reversed(letters))
        self._word_cache[key] = w
        return w

    def monomial_at(self, pos):
        w = self.word_at(pos)
        return (w, self.n - len(w))


class ExtensionEngine:
    """Caches, per degree n: the ideal component <P_z>^n, the quotient
    basis of D^n, the multiplication-by-z matrix D^n -> D^{n+1}, and the
    annihilator dimension.  Single-writer; completed degrees are frozen."""

    def __init__(self, g, alpha, rel, field, degree_cap=ENGINE_DEGREE_CAP):
        self.g = g
        self.field = field
        self.rel = rel
        self.alpha = alpha
        self.degree_cap = degree_cap
        self.pz = build_pz(alpha, rel)
        # group alpha_z generators by total degree, as position vectors
        self._pz_by_degree = {}
        for h in self.pz:
            n = h.total_degree
            mono = ZMonomials(g, n)
            vec = {mono.pos_of_word(w): s for (w, k), s in h.terms.items()}
            self._pz_by_degree.setdefault(n, []).append(vec)
        self._ideal = {0: RowSpace(field)}
        self._dbasis = {0: [0]}        # positions of quotient basis monomials
        self._zimage = {}              # n -> list of reduced image vecs (D^n basis order)
        self._zrank = {}
        self._ann = {}
        self.saturated_at = None

    # -- ideal components -------------------------------------------------

    def ideal_component(self, n):
        if n < 0:
            raise ValidationError("negative degree")
        if n > self.degree_cap:
            raise ResourceExceeded(f"extension degree {n} above cap {self.degree_cap}")
        known = self._ideal.get(n)
        if known is not None:
            return known
        top = max(self._ideal)
        for m in range(top + 1, n + 1):
            self._ideal[m] = self._step(m)
        return self._ideal[n]

    def _step(self, m):
        if self.saturated_at is not None and m > self.saturated_at:
            # once <P_z>^m = T[z]^m, strong grading keeps every later
            # degree full
            sp = RowSpace(self.field)
            mono = ZMonomials(self.g, m)
            for p in range(mono.size):
                sp.pivots[p] = {p: self.field.one}
            self._dbasis[m] = []
            return sp
        prev = self._ideal[m - 1]
        mono_prev = ZMonomials(self.g, m - 1)
        mono = ZMonomials(self.g, m)
        sp = RowSpace(self.field)
        g = self.g
        zshift = g ** m
        for row in prev.basis():
            # z * row: same word parts, one more z power each
            sp.insert({p + zshift: s for p, s in row.items()})
            # x_i * row and row * x_i
            for i in range(g):
                left = {}
                right = {}
                for p, s in row.items():
                    w = mono_prev.word_at(p)
                    left[mono.pos_of_word((i,) + w)] = s
                    right[mono.pos_of_word(w + (i,))] = s
                sp.insert(left)
                sp.insert(right)
        for vec in self._pz_by_degree.get(m, []):
            sp.insert(dict(vec))
        if sp.rank == mono.size and self.saturated_at is None:
            self.saturated_at = m
        self._dbasis[m] = [p for p in range(mono.size) if p not in sp.pivots]
        return sp

    # -- quotient data -----------------------------------------------------

    def extension_degree(self, n):
        """Quotient basis of D^n as (word, z-power) monomials."""
        self.ideal_component(n)
        mono = ZMonomials(self.g, n)
        return [mono.monomial_at(p) for p in self._dbasis[n]]

    def dim_d(self, n):
        self.ideal_component(n)
        return len(self._dbasis[n])

    def _z_images(self, n):
        """Reduced images of the D^n basis under multiplication by z, as
        vectors over T[z]^{n+1} positions (supported on D^{n+1} basis)."""
        cached = self._zimage.get(n)
        if cached is not None:
            return cached
        self.ideal_component(n)
        nxt = self.ideal_component(n + 1)
        zshift = self.g ** (n + 1)
        images = []
        for p in self._dbasis[n]:
            # z * (w z^k) keeps the word part: position shifts by one block
            images.append(nxt.reduce_full({p + zshift: self.field.one}))
        self._zimage[n] = images
        return images

    def annihilator_dim(self, n):
        """dim ker(z . (-) : D^n -> D^{n+1}); z is n-regular iff this
        vanishes for all degrees <= n."""
        cached = self._ann.get(n)
        if cached is not None:
            return cached
        images = self._z_images(n)
        rank = span(self.field, [dict(v) for v in images]).rank
        self._zrank[n] = rank
        out = len(images) - rank
        self._ann[n] = out
        return out

    def annihilator_basis(self, n):
        """Basis of ann(z)^n as elements of D^n (lists of (monomial, scalar))."""
        images = self._z_images(n)
        mono = ZMonomials(self.g, n)
        size_next = _filtration_size(self.g, n + 1)
        combos = left_kernel_basis(self.field, [dict(v) for v in images], size_next)
        basis_positions = self._dbasis[n]
        out = []
        for combo in combos:
            out.append([(mono.monomial_at(basis_positions[k]), s)
                        for k, s in sorted(combo.items())])
        return out

    def z_image_rank(self, n):
        self.annihilator_dim(n)
        return self._zrank[n]

    def is_regular_up_to(self, n):
        return all(self.annihilator_dim(k) == 0 for k in range(n + 1))

    # -- the quotient by z: dims of A -------------------------------------

    def a_dims(self, upto):
        """dim A^n for A = T/<rel>, by the graded recursion on rel."""
        chain = ideal_chain(self.rel, upto)
        return [self.g ** n - chain[n].rank for n in range(upto + 1)]


def rees_identity_check(engine, upto):
    """Check dim D^n = dim A^n + dim D^{n-1} for n <= upto.

    Under regularity this follows from the exact sequences
    0 -> D^{n-1} --z--> D^n -> A^n -> 0; the first failing degree is a
    regularity witness.  Returns (holds, per_degree, first_failure)."""
    a = engine.a_dims(upto)
    per = []
    first_bad = None
    prev = 0
    for n in range(upto + 1):
        dn = engine.dim_d(n)
        ok = (dn == a[n] + prev)
        per.append(ok)
        if not ok and first_bad is None:
            first_bad = n
        prev = dn
    return first_bad is None, per, first_bad


def engine_for(P, degree_cap=ENGINE_DEGREE_CAP):
    """Engine for D(P) built from the deformation's own alpha and R_P."""
    from .deformation import extract_alpha, rp_of
    rel = rp_of(P)
    alpha = extract_alpha(P)
    return ExtensionEngine(P.g, alpha, rel, P.field, degree_cap)
