"""Free products, direct sums and the single-projection conditions."""

from hypothesis import given, strategies as st

from conecheck.products import (
    DirectSum,
    FreeProduct,
    ReducedWord,
    cyclic_factor,
    integer_factor,
    oracle_factor,
    verify_contraction_conditions,
)
from conecheck.wordnorm import symmetric_oracle


def z2_z3(projection="collapse"):
    return FreeProduct({
        1: cyclic_factor(2, "discrete", projection),
        2: cyclic_factor(3, "discrete", projection),
    })


class TestReduce:
    def test_cancellation(self):
        fp = z2_z3()
        assert fp.reduce([(1, 1), (1, 1)]).is_identity()

    def test_same_factor_merge(self):
        fp = z2_z3()
        assert fp.reduce([(2, 1), (2, 1)]) == ReducedWord(((2, 2),))

    def test_already_reduced(self):
        fp = z2_z3()
        letters = ((1, 1), (2, 1), (1, 1), (2, 2), (1, 1), (2, 1))
        assert fp.reduce(letters).letters == letters

    def test_identity_letters_dropped(self):
        fp = z2_z3()
        assert fp.reduce([(1, 0), (2, 0)]).is_identity()

    def test_cascading_reduction(self):
        fp = z2_z3()
        # (2:1)(2:2) collapses, exposing (1:1)(1:1) which collapses too
        assert fp.reduce([(1, 1), (2, 1), (2, 2), (1, 1)]).is_identity()


class TestNorms:
    def test_empty_word(self):
        fp = z2_z3()
        assert fp.l1_norm(ReducedWord(())) == 0

    def test_discrete_counts_letters(self):
        fp = z2_z3()
        assert fp.l1_norm(fp.reduce([(1, 1), (2, 1)])) == 2

    def test_integers(self):
        fp = FreeProduct({1: integer_factor(), 2: integer_factor()})
        word = fp.reduce([(1, 3), (2, -2)])
        assert fp.l1_norm(word) == 5


class TestProjections:
    def test_empty_maps_to_empty(self):
        fp = z2_z3()
        assert fp.prefix_project(ReducedWord(())).is_identity()

    def test_single_integer_letter_shrinks(self):
        fp = FreeProduct({1: integer_factor(), 2: integer_factor()})
        assert fp.prefix_project(fp.reduce([(1, 3)])) == fp.reduce([(1, 2)])

    def test_dying_letter_exposes_tail(self):
        fp = FreeProduct({1: integer_factor(), 2: integer_factor()})
        word = fp.reduce([(1, 1), (2, 5)])
        assert fp.prefix_project(word) == fp.reduce([(2, 5)])

    def test_sum_projection_least_index(self):
        ds = DirectSum({i: cyclic_factor(i, "discrete") for i in (2, 7)})
        g = ds.element({2: 1, 7: 3})
        assert ds.sum_project(g) == ds.element({7: 3})
        assert ds.sum_project(ds.element({})) == ds.element({})
        assert ds.sum_project(ds.element({7: 3})) == ds.element({})


class TestConditions:
    def test_free_product_exhaustive(self):
        fp = z2_z3()
        words = fp.enumerate_words(5)
        report = verify_contraction_conditions(
            fp.prefix_project, words, fp.l1_norm, fp.distance,
            lambda w: w.is_identity(), 1)
        assert report["all_hold"]

    def test_direct_sum_exhaustive(self):
        ds = DirectSum({i: cyclic_factor(i, "discrete") for i in range(2, 6)})
        elements = ds.enumerate_elements(range(2, 6), 3)
        report = verify_contraction_conditions(
            ds.sum_project, elements, ds.supp_norm,
            lambda a, b: ds.distance(a, b, ds.supp_norm),
            lambda a: a.is_identity(), 1)
        assert report["all_hold"]

    def test_identity_projection_negative_control(self):
        fp = z2_z3("identity")
        report = verify_contraction_conditions(
            fp.prefix_project, fp.enumerate_words(4), fp.l1_norm, fp.distance,
            lambda w: w.is_identity(), 1)
        assert not report["all_hold"]
        assert report["norm-decrease"]["violations"] > 0
        assert report["norm-decrease"]["witness"] is not None
        assert report["non-expansive"]["violations"] == 0
        assert report["displacement"]["violations"] == 0

    def test_integer_shrink_window(self):
        factor = integer_factor(50)
        report = verify_contraction_conditions(
            factor.projection, range(-50, 51), factor.norm,
            lambda a, b: abs(a - b), lambda a: a == 0, 1)
        assert report["all_hold"]


class TestInvariants:
    def test_inclusion_isometry(self):
        fp = FreeProduct({1: cyclic_factor(5, "word"), 2: cyclic_factor(7, "word")})
        f5 = cyclic_factor(5, "word")
        for k in range(5):
            assert fp.l1_norm(fp.include(1, k)) == f5.norm(k)

    def test_l1_supp_equivalence_constants(self):
        fp = FreeProduct({1: cyclic_factor(5, "word"), 2: cyclic_factor(7, "word")})
        sup_norm = max(f.norm(e) for f in fp.factors.values()
                       for e in f.non_identity_elements())
        inf_norm = min(f.norm(e) for f in fp.factors.values()
                       for e in f.non_identity_elements())
        for word in fp.enumerate_words(4):
            supp = fp.supp_norm(word)
            assert inf_norm * supp <= fp.l1_norm(word) <= sup_norm * supp

    def test_oracle_factor(self):
        factor = oracle_factor(symmetric_oracle(3))
        fp = FreeProduct({1: factor, 2: cyclic_factor(2, "discrete")})
        words = fp.enumerate_words(3)
        report = verify_contraction_conditions(
            fp.prefix_project, words, fp.l1_norm, fp.distance,
            lambda w: w.is_identity(), 1)
        assert report["all_hold"]

    @given(st.lists(st.tuples(st.sampled_from([1, 2]), st.integers(0, 2)), max_size=8))
    def test_reduce_is_canonical(self, letters):
        fp = z2_z3()
        word = fp.reduce(letters)
        for (i, a), (j, b) in zip(word.letters, word.letters[1:]):
            assert i != j
        for i, a in word.letters:
            assert a != 0
        assert fp.reduce(word.letters) == word

    @given(
        st.lists(st.tuples(st.sampled_from([1, 2]), st.integers(0, 2)), max_size=6),
        st.lists(st.tuples(st.sampled_from([1, 2]), st.integers(0, 2)), max_size=6),
    )
    def test_group_laws_through_reduce(self, raw_a, raw_b):
        fp = z2_z3()
        a, b = fp.reduce(raw_a), fp.reduce(raw_b)
        assert fp.multiply(a, fp.invert(a)).is_identity()
        assert fp.l1_norm(fp.multiply(a, b)) <= fp.l1_norm(a) + fp.l1_norm(b)


def test_serialization_roundtrip():
    fp = z2_z3()
    word = fp.reduce([(1, 1), (2, 2), (1, 1)])
    assert fp.parse(str(word)) == word
    assert fp.parse("()").is_identity()
