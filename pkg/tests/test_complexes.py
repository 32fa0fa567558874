import random

import pytest
from hypothesis import given, settings, strategies as st

from pd3.errors import NotACycle, NotInvertible
from pd3.complexes import (BasisChange, FreeComplex, attach_top_cell,
                           build_fox_lyndon, change_basis, compose,
                           dual_conjugate_transpose, fox_derivative,
                           identity_gmatrix, invert_gmatrix, parse_gmatrix,
                           push_along_hom, push_to_R, push_to_integers,
                           restrict_complex, self_duality_check)
from pd3.corpus import (attached_complex, basis_change, cycle_chain,
                        default_catalog, presentation_complex, standard_complex)
from pd3.groups import PI, S3, named_hom
from pd3.ring import RElement, RingElement, parse_element
from pd3.words import Word, parse_word


@pytest.fixture(scope="module")
def cat():
    return default_catalog()


class TestFoxCalculus:
    def test_spec_examples(self):
        assert fox_derivative(parse_word("a^2"), "a", PI) == parse_element(PI, "a + 1")
        s = parse_word("a*b*a*b^-2")
        assert fox_derivative(s, "b", S3) == parse_element(S3, "a - b - 1")
        assert fox_derivative(s, "c", PI).is_zero()

    def test_product_rule(self):
        rng = random.Random(3)
        for _ in range(40):
            u = _random_word(rng)
            v = _random_word(rng)
            for x in "abc":
                lhs = fox_derivative(u * v, x, PI)
                rhs = fox_derivative(u, x, PI) + \
                    RingElement.from_element(PI.element(u)) * fox_derivative(v, x, PI)
                assert lhs == rhs

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(st.sampled_from("abc"),
                              st.integers(-2, 2).filter(bool)), max_size=12))
    def test_fundamental_identity(self, syllables):
        w = Word(tuple(syllables))
        total = RingElement.zero(PI)
        for x in "abc":
            gen = RingElement.from_element(PI.generator(x))
            total = total + fox_derivative(w, x, PI) * (gen - 1)
        expected = RingElement.from_element(PI.element(w)) - RingElement.one(PI)
        assert total == expected


def _random_word(rng, max_syllables=5):
    n = rng.randint(0, max_syllables)
    if n == 0:
        return Word()
    return Word(tuple((rng.choice("abc"), rng.choice([1, 2, -1, -2]))
                      for _ in range(n)))


class TestFoxLyndonComplex:
    def test_matches_displayed_s3(self, cat):
        K = presentation_complex(cat, "s3")
        assert K.diffs[1] == parse_gmatrix(S3, [["a - 1", "b - 1"]])
        assert K.diffs[2] == parse_gmatrix(
            S3, [["a + 1", "b^2*a + 1"], ["0", "a - b - 1"]])

    def test_matches_displayed_pi(self, cat):
        L = presentation_complex(cat, "pi")
        assert L.diffs[1] == parse_gmatrix(PI, [["a - 1", "b - 1", "c - 1"]])
        assert L.diffs[2] == parse_gmatrix(PI, [
            ["a + 1", "b^2*a + 1", "c^2*a + 1"],
            ["0", "a - b - 1", "0"],
            ["0", "0", "a - c - 1"]])

    def test_no_relators(self):
        cx = build_fox_lyndon(S3, relators=[])
        assert cx.ranks == [1, 2, 0]

    def test_bad_relator_rejected(self):
        with pytest.raises(ValueError):
            build_fox_lyndon(S3, relators=[parse_word("a^3")])


class TestAttach:
    def test_cycles_attach(self, cat):
        for name, which in (("psi", "s3"), ("theta", "pi"), ("xi", "pi")):
            base = presentation_complex(cat, which)
            z = cycle_chain(cat, name)
            cx = attach_top_cell(base, z)
            assert cx.ranks[-1] == 1
            assert [row[0] for row in cx.diffs[3]] == z

    def test_non_cycle_rejected_with_residual(self, cat):
        base = presentation_complex(cat, "s3")
        with pytest.raises(NotACycle) as err:
            attach_top_cell(base, [parse_element(S3, "1"), parse_element(S3, "0")])
        assert err.value.residual[0] != "0"


class TestBasisChange:
    def test_diagonalization_golden(self, cat):
        X = standard_complex(cat, "x")
        assert X.diffs[2] == parse_gmatrix(
            S3, [["a + 1", "0"], ["0", "b^2*a + a - 1"]])
        assert [row[0] for row in X.diffs[3]] == [
            parse_element(S3, "a - 1"), parse_element(S3, "-b^2*a + b*a + b - 1")]
        Y = standard_complex(cat, "y")
        assert Y.diffs[2][2][2] == parse_element(PI, "c^2*a + a - 1")

    def test_identity_change_is_trivial(self, cat):
        X = attached_complex(cat, "x")
        bc = BasisChange(S3, {1: identity_gmatrix(S3, 2), 2: identity_gmatrix(S3, 2)})
        assert change_basis(X, bc).diffs == X.diffs

    def test_inverse_is_two_sided(self, cat):
        bc = basis_change(cat, "y")
        for d, M in bc.mats.items():
            W = bc.invs[d]
            n = len(M)
            assert compose(M, W) == identity_gmatrix(PI, n)
            assert compose(W, M) == identity_gmatrix(PI, n)

    def test_singular_matrix_rejected(self):
        with pytest.raises(NotInvertible):
            invert_gmatrix(parse_gmatrix(S3, [["a + 1"]]), S3)


class TestDuality:
    def test_self_dual_fixed_points(self, cat):
        for which in ("x", "y", "z"):
            cx = standard_complex(cat, which)
            rep = self_duality_check(cx)
            assert rep.passed, (which, rep)
            assert dual_conjugate_transpose(cx).diffs == cx.diffs

    def test_dual_of_dual(self, cat):
        X = standard_complex(cat, "x")
        assert dual_conjugate_transpose(dual_conjugate_transpose(X)).diffs == X.diffs

    def test_scaling_breaks_transpose_condition(self, cat):
        X = standard_complex(cat, "x")
        doubled = [[x * 2] for (x,) in X.diffs[3]]
        bad = FreeComplex(S3, X.ranks, {1: X.diffs[1], 2: X.diffs[2], 3: doubled},
                          X.labels)
        rep = self_duality_check(bad)
        assert rep.hermitian_ok and not rep.transpose_ok

    def test_perturbed_entry_detected(self, cat):
        # doubling one component keeps d2 o d3 = 0 but breaks the transpose
        Y = standard_complex(cat, "y")
        tweaked = [[row[0]] for row in Y.diffs[3]]
        tweaked[2][0] = tweaked[2][0] * 2
        bad = FreeComplex(PI, Y.ranks,
                          {1: Y.diffs[1], 2: Y.diffs[2], 3: tweaked}, Y.labels)
        assert not self_duality_check(bad).passed


class TestPushForwards:
    def test_augmentation_of_y(self, cat):
        IY = push_to_integers(standard_complex(cat, "y"))
        assert IY.diffs[1] == [[0, 0, 0]]
        assert IY.diffs[2] == [[2, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert IY.diffs[3] == [[0], [0], [0]]

    def test_reduction_to_R(self, cat):
        ranks, diffs = push_to_R(standard_complex(cat, "y"))
        assert diffs[2][0][0] == RElement(1, 1)
        assert diffs[2][1][1] == RElement(-1, 2)
        assert diffs[2][2][2] == RElement(-1, 2)
        assert diffs[2][0][1].is_zero()

    def test_push_along_retraction_is_a_complex(self, cat):
        Y = attached_complex(cat, "y")
        pushed = push_along_hom(Y, named_hom("retract_b"))  # validates d o d = 0
        assert pushed.ctx is S3
        assert pushed.ranks == Y.ranks

    def test_restriction_doubles_ranks(self, cat):
        Yr = restrict_complex(standard_complex(cat, "y"))
        assert Yr.ranks == [2, 6, 6, 2]  # validated as a complex on construction


class TestComplexFileFormat:
    def test_round_trip_through_payload(self, cat):
        import json
        from pd3.complexes import complex_from_payload, complex_to_payload
        for which in ("x", "y", "z"):
            cx = standard_complex(cat, which)
            payload = json.loads(json.dumps(complex_to_payload(cx)))
            back = complex_from_payload(payload)
            assert back.ranks == cx.ranks
            assert back.diffs == cx.diffs
            assert back.labels == cx.labels
