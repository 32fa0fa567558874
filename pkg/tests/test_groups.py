import random

import pytest
from hypothesis import given, settings, strategies as st

from pd3.errors import ContextMismatch, InfiniteEnumeration, UnknownSymbol
from pd3.groups import (ALL, FREE, PI, PI_PRIME, S3, Z2, Z3, GroupHom,
                        RewriteSystem, check_confluence, check_rules, context,
                        enumerate_elements, invert, multiply, named_hom,
                        normalize)
from pd3.words import parse_word

# the permutation model: a = (1 2), b = (1 2 3), composing left to right
_PERMS = {"a": {1: 2, 2: 1, 3: 3}, "b": {1: 2, 2: 3, 3: 1}}


def perm_of(element):
    cur = {1: 1, 2: 2, 3: 3}
    for ch in element.letters:
        cur = {k: _PERMS[ch][v] for k, v in cur.items()}
    return tuple(sorted(cur.items()))


def perm_mul(p, q):
    dp, dq = dict(p), dict(q)
    return tuple(sorted((k, dq[dp[k]]) for k in dp))


def random_word(rng, symbols, max_syllables=6):
    n = rng.randint(0, max_syllables)
    return parse_word("1") if n == 0 else parse_word(
        "*".join(f"{rng.choice(symbols)}^{rng.choice([1, 2, -1, -2])}"
                 for _ in range(n)))


class TestNormalize:
    def test_spec_examples(self):
        assert str(normalize(S3, "a*a")) == "1"
        assert str(normalize(S3, "1")) == "1"
        assert str(normalize(S3, "b*a")) == "a*b^2"
        assert str(normalize(PI, "c*b*a")) == "a*c^2*b^2"

    def test_permutation_oracle_for_b_a(self):
        # both sides act identically on {1,2,3}
        assert perm_of(normalize(S3, "b*a")) == perm_of(normalize(S3, "a*b^2"))

    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbol):
            normalize(S3, "c")
        with pytest.raises(UnknownSymbol):
            normalize(Z3, "a*b")

    @given(st.lists(st.tuples(st.sampled_from("abc"), st.integers(-3, 3).filter(bool)),
                    max_size=12))
    @settings(max_examples=150, deadline=None)
    def test_idempotent_and_multiplicative(self, syllables):
        from pd3.words import Word
        w = Word(tuple(syllables))
        x = normalize(PI, w)
        assert normalize(PI, x.word()) == x
        # split the word anywhere: normalize(uv) = normalize(u) * normalize(v)
        for cut in (0, len(syllables) // 2, len(syllables)):
            u, v = Word(tuple(syllables[:cut])), Word(tuple(syllables[cut:]))
            assert normalize(PI, u) * normalize(PI, v) == x

    def test_free_reduction(self):
        x = normalize(FREE, "a*b*b^-1*a^-1*c")
        assert str(x) == "c"
        y = normalize(FREE, "b^-2")
        assert y.inverse() == normalize(FREE, "b^2")


class TestGroupStructure:
    def test_cayley_table_matches_permutation_model(self):
        els = enumerate_elements(S3, ALL)
        assert len(els) == 6
        images = {perm_of(g) for g in els}
        assert len(images) == 6
        for x in els:
            for y in els:
                assert perm_of(x * y) == perm_mul(perm_of(x), perm_of(y))

    def test_associative_with_identity_and_inverses(self):
        els = enumerate_elements(S3, ALL)
        e = S3.identity
        for x in els:
            assert x * e == x and e * x == x
            assert x * invert(x) == e
            for y in els:
                for z in els:
                    assert (x * y) * z == x * (y * z)

    def test_spec_multiply_examples(self):
        a, b = S3.generator("a"), S3.generator("b")
        assert (a * a).is_identity()
        assert multiply(multiply(a, b), a) == b * b  # aba = b^2
        assert invert(a) == a
        assert invert(b) == b * b
        assert invert(normalize(S3, "b^2*a")) == normalize(S3, "a*b")

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            multiply(S3.generator("a"), PI.generator("a"))


class TestEnumeration:
    def test_finite_sizes(self):
        assert len(enumerate_elements(S3, ALL)) == 6
        assert [str(g) for g in enumerate_elements(Z2, ALL)] == ["1", "a"]
        assert len(enumerate_elements(Z3, ALL)) == 3

    def test_infinite_raises(self):
        for ctx in (PI, PI_PRIME, FREE):
            with pytest.raises(InfiniteEnumeration):
                enumerate_elements(ctx, ALL)

    def test_ball_counts_match_growth_formula(self):
        # syllable-words of length n number 4 * 2^(n-1); the a-prefix adds one
        def expected(L):
            def words_up_to(m):
                return 1 + sum(4 * 2 ** (n - 1) for n in range(1, m + 1))
            return words_up_to(L) + (words_up_to(L - 1) if L >= 1 else 0)
        for L in range(0, 6):
            assert len(enumerate_elements(PI, L)) == expected(L)

    def test_ball_matches_brute_force_closure(self):
        # multiply out all short products and deduplicate
        ball = {PI.identity}
        gens = [PI.generator(s) for s in "abc"] + \
               [PI.generator(s).inverse() for s in "abc"]
        frontier = [PI.identity]
        for _ in range(3):
            frontier = [g * x for g in frontier for x in gens]
            ball.update(frontier)
        from_ball = {g for g in ball if g.length() <= 2}
        assert from_ball == set(enumerate_elements(PI, 2))

    def test_normal_form_shape(self):
        for g in enumerate_elements(PI, 4):
            body = g.letters[1:] if g.letters.startswith("a") else g.letters
            assert "a" not in body
            runs = [body[i] for i in range(len(body)) if i == 0 or body[i] != body[i - 1]]
            assert all(x != y for x, y in zip(runs, runs[1:]))

    def test_shortlex_order(self):
        keys = [g.shortlex_key() for g in enumerate_elements(PI, 3)]
        assert keys == sorted(keys)


class TestConfluence:
    @pytest.mark.parametrize("ctx", [S3, PI, Z2, Z3, PI_PRIME])
    def test_all_contexts_confluent(self, ctx):
        report = check_confluence(ctx)
        assert report.passed, report

    def test_missing_torsion_rules_fail(self):
        # commuting rule alone: no critical pairs, but the relators aa, bbb
        # do not reduce to the identity
        system = RewriteSystem("ab", [("ba", "ab")])
        report = check_rules(system, "broken", ["aa", "bbb"])
        assert not report.passed
        assert report.bad_relators == ("aa", "bbb")

    def test_genuinely_unjoinable_pair_detected(self):
        system = RewriteSystem("ab", [("ab", "a"), ("ba", "b")])
        report = check_rules(system, "anticonfluent", [])
        assert not report.passed and report.failures


class TestHoms:
    def test_spec_examples(self):
        x = normalize(PI, "c*b*a")
        assert str(named_hom("retract_b")(x)) == "a*b^2"  # c -> 1
        assert str(named_hom("abelianize_pi")(normalize(PI, "a*b^2*c"))) == "a"
        ident = named_hom("id_pi")
        assert ident(x) == x

    def test_relator_validation(self):
        with pytest.raises(ValueError):
            GroupHom(S3, Z3, {"a": "b", "b": "1"})  # a^2 -> b^2 != 1

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_functoriality(self, seed):
        rng = random.Random(seed)
        h = named_hom(rng.choice(["retract_b", "retract_c", "abelianize_pi"]))
        x = normalize(PI, random_word(rng, "abc", 4))
        y = normalize(PI, random_word(rng, "abc", 4))
        assert h(x * y) == h(x) * h(y)

    def test_retraction_splits_inclusion(self):
        rb, ib = named_hom("retract_b"), named_hom("include_b")
        rc, ic = named_hom("retract_c"), named_hom("include_c")
        for g in enumerate_elements(S3, ALL):
            assert rb(ib(g)) == g
            assert rc(ic(g)) == g

    def test_hom_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            named_hom("retract_b")(S3.generator("a"))


def test_context_lookup():
    assert context("s3") is S3
    with pytest.raises(UnknownSymbol):
        context("dihedral")
