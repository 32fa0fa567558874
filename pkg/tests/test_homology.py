import random

import pytest

from pd3.complexes import (compose, push_to_integers, restrict_complex)
from pd3.corpus import (default_catalog, named_element, presentation_complex,
                        standard_complex)
from pd3.errors import InfiniteGroup
from pd3.groups import ALL, PI, S3, Z2, Z3, enumerate_elements
from pd3.homology import (AbelianGroupDescriptor, annihilator_is_principal,
                          annihilator_lattice, bar_homology, bar_rank,
                          betti_mod2, bounded_injectivity,
                          bounded_kernel_search, coords_element,
                          element_coords, flatten_complex, flatten_matrix,
                          h3_generator_check, homology, lifting_identity_check,
                          mayer_vietoris_h3, orientability_check,
                          principal_ideal_lattice, r_module_invariants)
from pd3.intlin import hnf_lattice, lattice_contains, matmul
from pd3.ring import RElement, RingElement, parse_element


@pytest.fixture(scope="module")
def cat():
    return default_catalog()


class TestDescriptor:
    def test_normalization(self):
        d = AbelianGroupDescriptor.from_factors(0, [3, 3, 2])
        assert d == AbelianGroupDescriptor(0, (3, 6))
        assert str(d) == "Z/3 + Z/6"
        assert AbelianGroupDescriptor.from_factors(1, [1, 1]) == \
            AbelianGroupDescriptor(1, ())
        assert AbelianGroupDescriptor.from_factors(0, [0, 4]) == \
            AbelianGroupDescriptor(1, (4,))


class TestFlatten:
    def test_regular_representation_example(self):
        from pd3.groups import context
        z2 = context("z2")
        M = [[parse_element(z2, "a + 1")]]
        assert flatten_matrix(M, z2) == [[1, 1], [1, 1]]

    def test_zero(self):
        assert flatten_matrix([[RingElement.zero(S3)]], S3) == \
            [[0] * 6 for _ in range(6)]

    def test_functorial(self, cat):
        rng = random.Random(9)
        els = enumerate_elements(S3, ALL)

        def rand_mat(rows, cols):
            return [[RingElement(S3, {rng.choice(els): rng.randint(-3, 3)
                                      for _ in range(2)})
                     for _ in range(cols)] for _ in range(rows)]
        for _ in range(10):
            M = rand_mat(2, 3)
            N = rand_mat(3, 2)
            assert flatten_matrix(compose(M, N), S3) == \
                matmul(flatten_matrix(M, S3), flatten_matrix(N, S3))

    def test_rank_of_flattened_d2(self, cat):
        # forced by H2 = 0 and the rank-one degree-3 kernel:
        # rank d1 = 5, ker d1 = im d2 has rank 7
        from pd3.intlin import rank_of
        FX = flatten_complex(standard_complex(cat, "x"))
        assert rank_of(FX.diffs[2]) == 7

    def test_infinite_group_rejected(self, cat):
        with pytest.raises(InfiniteGroup):
            flatten_complex(standard_complex(cat, "y"))


class TestHomology:
    def test_universal_cover_of_x(self, cat):
        H = homology(flatten_complex(standard_complex(cat, "x")))
        assert H == [AbelianGroupDescriptor(1), AbelianGroupDescriptor(0),
                     AbelianGroupDescriptor(0), AbelianGroupDescriptor(1)]

    def test_base_spaces(self, cat):
        want = [AbelianGroupDescriptor(1), AbelianGroupDescriptor(0, (2,)),
                AbelianGroupDescriptor(0), AbelianGroupDescriptor(1)]
        for which in ("x", "y", "z"):
            assert homology(push_to_integers(standard_complex(cat, which))) == want

    def test_invariant_under_basis_change(self, cat):
        from pd3.corpus import attached_complex
        X_orig = attached_complex(cat, "x")
        X_ef = standard_complex(cat, "x")
        assert homology(flatten_complex(X_orig)) == homology(flatten_complex(X_ef))

    def test_double_covers(self, cat):
        for which in ("y", "z"):
            cover = push_to_integers(restrict_complex(standard_complex(cat, which)))
            H = homology(cover)
            assert H[0] == AbelianGroupDescriptor(1)
            assert H[1] == AbelianGroupDescriptor(0, (3, 3))

    def test_betti_mod2(self, cat):
        assert betti_mod2(push_to_integers(standard_complex(cat, "y"))) == [1, 1, 1, 1]


class TestAnnihilators:
    def test_principality(self, cat):
        gen_a = named_element(cat, "annihilator_generator_a")
        gen_b = named_element(cat, "annihilator_generator_b")
        assert annihilator_is_principal(parse_element(S3, "a + 1"), gen_a)
        assert annihilator_is_principal(parse_element(S3, "b^2*a + a - 1"), gen_b)

    def test_generator_expansion(self, cat):
        # (b-1)(ba-1) multiplied out
        b = parse_element(S3, "b")
        ba = parse_element(S3, "b*a")
        one = RingElement.one(S3)
        assert (b - one) * (ba - one) == named_element(cat, "annihilator_generator_b")

    def test_annihilator_of_unit_is_zero(self):
        assert annihilator_lattice(parse_element(S3, "1")) == []

    def test_lattice_vectors_annihilate(self, cat):
        x = parse_element(S3, "b^2*a + a - 1")
        for row in annihilator_lattice(x):
            assert (coords_element(S3, row) * x).is_zero()

    def test_ideal_lattice_membership(self, cat):
        gen = named_element(cat, "annihilator_generator_a")
        lat = principal_ideal_lattice(gen)
        probe = parse_element(S3, "b^2*a - b^2")  # b^2 (a - 1)
        assert lattice_contains(lat, element_coords(probe))


class TestBoundedCertificates:
    def _entries(self, cat):
        d1 = parse_element(PI, "a + 1")
        d2 = parse_element(PI, "b^2*a + a - 1")
        g1 = parse_element(PI, "a - 1")
        g2 = parse_element(PI, cat.get("elements:annihilator_generator_b"))
        return d1, d2, g1, g2

    def test_kernel_membership_small_radius(self, cat):
        d1, d2, g1, g2 = self._entries(cat)
        for d, g in ((d1, g1), (d2, g2)):
            cert = bounded_kernel_search(d, 3, g)
            assert cert.status == "PARTIAL" and cert.radius == 3
            assert cert.kernel_rank > 0

    def test_wrong_generator_fails_fast(self, cat):
        d1, d2, g1, g2 = self._entries(cat)
        cert = bounded_kernel_search(d1, 2, parse_element(PI, "b"))
        assert cert.status == "FAIL"

    def test_monotone_in_radius(self, cat):
        from pd3.homology import _ball_annihilator
        d1, d2, g1, g2 = self._entries(cat)
        ball2, k2 = _ball_annihilator([d2], 2)
        ball3, k3 = _ball_annihilator([d2], 3)
        index3 = {g: i for i, g in enumerate(ball3)}
        lifted = []
        for vec in k2:
            big = [0] * len(ball3)
            for g, c in zip(ball2, vec):
                big[index3[g]] = c
            lifted.append(big)
        lat3 = hnf_lattice(k3)
        assert all(lattice_contains(lat3, v) for v in lifted)

    def test_injectivity(self, cat):
        Y = standard_complex(cat, "y")
        theta_f = [Y.diffs[3][i][0] for i in range(3)]
        cert = bounded_injectivity(theta_f, 3)
        assert cert.status == "PARTIAL" and cert.kernel_rank == 0
        unit = bounded_injectivity([RingElement.one(PI)], 3)
        assert unit.kernel_rank == 0

    def test_single_column_not_injective(self, cat):
        # h (a+1) = 0 has plenty of short solutions, so injectivity FAILs
        cert = bounded_injectivity([parse_element(PI, "a + 1")], 2)
        assert cert.status == "FAIL" and cert.kernel_rank > 0


class TestDegreeThree:
    def test_lifting_identity(self, cat):
        out = lifting_identity_check(
            standard_complex(cat, "x"),
            named_element(cat, "annihilator_generator_b"),
            named_element(cat, "lifting_multiplier_p"),
            named_element(cat, "lifting_multiplier_q"))
        assert out.passed
        assert len(out.details) == 16  # {0,1,b,b^2}^2

    def test_h3_generator(self, cat):
        out = h3_generator_check(standard_complex(cat, "x"),
                                 named_element(cat, "nu"),
                                 named_element(cat, "beta"))
        assert out.passed


class TestBar:
    def test_low_degrees(self):
        for ctx, ab in ((Z2, (2,)), (Z3, (3,)), (S3, (2,))):
            assert bar_homology(ctx, 0) == AbelianGroupDescriptor(1)
            assert bar_homology(ctx, 1) == AbelianGroupDescriptor(0, ab)
        assert bar_homology(S3, 2) == AbelianGroupDescriptor(0)

    def test_degree_three(self):
        assert bar_homology(Z2, 3) == AbelianGroupDescriptor(0, (2,))
        assert bar_homology(Z3, 3) == AbelianGroupDescriptor(0, (3,))
        assert bar_homology(S3, 3) == AbelianGroupDescriptor(0, (6,))

    def test_normalized_ranks(self):
        assert bar_rank(S3, 4) == 625
        assert bar_rank(Z2, 3) == 1

    def test_degree_out_of_range(self):
        with pytest.raises(ValueError):
            bar_homology(S3, 4)

    def test_mayer_vietoris(self):
        desc, details = mayer_vietoris_h3()
        assert desc == AbelianGroupDescriptor(0, (3, 6))


class TestRModules:
    def test_spec_examples(self):
        inv = r_module_invariants([[RElement(-1, 2)]])  # Coker(2a - 1)
        assert inv.underlying == AbelianGroupDescriptor(0, (3,))
        assert inv.socle_eigen == ((3, (0, 1)),)  # a acts by -1
        inv = r_module_invariants([[RElement(1, 1)]])  # Coker(a + 1)
        assert inv.underlying == AbelianGroupDescriptor(1)
        assert inv.free_eigen == (0, 1)

    def test_orientability(self, cat):
        rep = orientability_check(presentation_complex(cat, "pi").diffs[2])
        assert rep.passed
        assert rep.by_character[1][1] == "MATCH"
        assert rep.by_character[-1][1] == "MISMATCH"
        plus, minus = rep.by_character[1][0], rep.by_character[-1][0]
        assert plus.underlying == minus.underlying  # only the action differs
        assert plus.free_eigen == (0, 1) and minus.free_eigen == (1, 0)
        assert plus.socle_eigen == ((3, (0, 2)),)
        assert minus.socle_eigen == ((3, (2, 0)),)
