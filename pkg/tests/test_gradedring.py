import pytest

from pbwkit.errors import NotHomogeneous, ResourceExceeded, ValidationError
from pbwkit.freealg import parse_element
from pbwkit.gradedring import (GradedSubspace, PresentedRing, ideal_chain,
                               is_minimal_relations, minimal_complement)
from pbwkit.linalg import QQ

from conftest import brute_ideal_dim, random_homogeneous

X, XY = ["x"], ["x", "y"]


def ring_of(g, texts, gens):
    rel = GradedSubspace.from_elements(g, [parse_element(t, gens) for t in texts])
    return PresentedRing(g, rel)


class TestIdealComponent:
    def test_principal_monomial(self):
        ring = ring_of(1, ["x*x"], X)
        assert ring.ideal_component(2).rank == 1
        assert ring.ideal_component(3).rank == 1
        assert ring.hilbert_value(2) == 0

    def test_commutator_degree3(self):
        # [DERIVED] brute-force enumeration of F^i G F^k inside the 8-dim F^3
        ring = ring_of(2, ["x*y - y*x"], XY)
        oracle = brute_ideal_dim(2, [parse_element("x*y - y*x", XY)], 3)
        assert ring.ideal_component(3).rank == oracle == 4
        assert ring.hilbert_value(3) == 4

    def test_no_relations(self):
        ring = PresentedRing(2, GradedSubspace(2, QQ))
        for n in range(4):
            assert ring.ideal_component(n).rank == 0

    def test_recursion_matches_brute_force_randomized(self, rng):
        for _ in range(12):
            g = rng.choice([1, 2])
            degs = sorted(rng.sample([2, 2, 3], rng.randint(1, 2)))
            elems = []
            for d in degs:
                e = random_homogeneous(rng, g, d, rng.randint(1, 2))
                if not e.is_zero():
                    elems.append(e)
            if not elems:
                continue
            rel = GradedSubspace.from_elements(g, elems)
            ring = PresentedRing(g, rel)
            for n in range(5):
                assert ring.ideal_component(n).rank == brute_ideal_dim(g, elems, n)


class TestNormalForm:
    def test_x2_dies(self):
        ring = ring_of(1, ["x*x"], X)
        assert ring.normal_form(parse_element("x*x", X)).is_zero()

    def test_commutator_straightening(self):
        # [DERIVED] xy - yx lies in I^2, so the two words share one normal
        # form, a single basis word
        ring = ring_of(2, ["x*y - y*x"], XY)
        nf_yx = ring.normal_form(parse_element("y*x", XY))
        nf_xy = ring.normal_form(parse_element("x*y", XY))
        assert nf_yx == nf_xy and not nf_yx.is_zero()
        assert len(nf_yx.terms) == 1
        assert set(nf_yx.terms) <= set(ring.basis_words(2))

    def test_identity_when_no_relations(self):
        ring = PresentedRing(2, GradedSubspace(2, QQ))
        e = parse_element("x*y + 2*y*x", XY)
        assert ring.normal_form(e) == e

    def test_rejects_inhomogeneous(self):
        ring = ring_of(1, ["x*x"], X)
        with pytest.raises(NotHomogeneous):
            ring.normal_form(parse_element("x*x + x", X))

    def test_zero_iff_in_ideal(self):
        ring = ring_of(2, ["x*y - y*x"], XY)
        assert ring.normal_form(parse_element("x*y*x - y*x*x", XY)).is_zero()
        assert not ring.normal_form(parse_element("x*y*x", XY)).is_zero()


class TestHilbert:
    def test_x2(self):
        hd = ring_of(1, ["x*x"], X).hilbert(5)
        assert hd.values == [1, 1, 0, 0, 0, 0]
        assert hd.finite_dim and hd.c_a == 0

    def test_x3_koszul_family_value(self):
        # the n-Koszul family k[X]/(X^n) has c_A = n - 2; here n = 3
        hd = ring_of(1, ["x*x*x"], X).hilbert(5)
        assert hd.values == [1, 1, 1, 0, 0, 0]
        assert hd.finite_dim and hd.c_a == 1

    def test_polynomial_counts(self):
        # [DERIVED] h(n) = n + 1 for the plane, cross-checked by brute force
        ring = ring_of(2, ["x*y - y*x"], XY)
        hd = ring.hilbert(6)
        assert hd.values == [n + 1 for n in range(7)]
        assert not hd.finite_dim
        for n in range(5):
            assert 2 ** n - brute_ideal_dim(2, [parse_element("x*y - y*x", XY)], n) \
                == hd.values[n]

    def test_dimension_pairing(self, rng):
        for _ in range(8):
            g = rng.choice([1, 2])
            e = random_homogeneous(rng, g, 2, 2)
            if e.is_zero():
                continue
            ring = PresentedRing(g, GradedSubspace.from_elements(g, [e]))
            for n in range(5):
                assert ring.ideal_component(n).rank + ring.hilbert_value(n) == g ** n

    def test_strong_grading_propagation(self):
        hd = ring_of(2, ["x*x", "x*y", "y*x", "y*y"], XY).hilbert(6)
        assert hd.values == [1, 2, 0, 0, 0, 0, 0]

    def test_degree_cap(self):
        ring = ring_of(1, ["x*x"], X)
        with pytest.raises(ResourceExceeded):
            ring.ideal_component(ring.max_degree + 1)

    def test_relations_below_degree_2_rejected(self):
        rel = GradedSubspace.from_elements(1, [parse_element("x", X)])
        with pytest.raises(ValidationError):
            PresentedRing(1, rel)


class TestMinimalComplement:
    def test_strips_consequence(self):
        rel = GradedSubspace.from_elements(
            1, [parse_element("x*x", X), parse_element("x*x*x", X)])
        out = minimal_complement(rel)
        assert out.degrees() == [2] and out.dim(2) == 1
        assert not is_minimal_relations(rel)

    def test_fixed_point(self):
        rel = GradedSubspace.from_elements(2, [parse_element("x*y - y*x", XY)])
        out = minimal_complement(rel)
        assert out.equals(rel)
        assert is_minimal_relations(rel)

    def test_same_ideal(self, rng):
        for _ in range(8):
            g = rng.choice([1, 2])
            elems = [random_homogeneous(rng, g, d, 2) for d in (2, 3)]
            elems = [e for e in elems if not e.is_zero()]
            if not elems:
                continue
            rel = GradedSubspace.from_elements(g, elems)
            out = minimal_complement(rel)
            d = rel.max_degree()
            ca, cb = ideal_chain(rel, d), ideal_chain(out, d)
            for n in range(d + 1):
                assert ca[n].rank == cb[n].rank
                assert ca[n].contains_space(cb[n])
