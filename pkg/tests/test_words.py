"""Word arithmetic, twist action, and Bruhat order."""

import pytest
from hypothesis import given, strategies as st

from tklwb.words import (
    CapExceeded,
    CoxeterSpec,
    GeneratorError,
    NotTwistedInvolution,
    bruhat_leq,
    bruhat_leq_twisted,
    dagger,
    descents,
    ell_star,
    enumerate_twisted_involutions,
    enumerate_words,
    format_star,
    format_word,
    inverse,
    is_twisted_involution,
    lower_twisted,
    lower_words,
    multiply,
    parse_star,
    parse_word,
    reduce_word,
    rho,
    star_word,
    twist,
    twist_expression,
    twist_word,
)

ID3 = CoxeterSpec.make(3, "id")
SWAP2 = CoxeterSpec.make(2, "(a b)")
SWAP3 = CoxeterSpec.make(3, "(a b)")


def w(text, gens=3):
    return parse_word(text, gens)


# -- reduction and products ---------------------------------------------------


def test_reduce_examples():
    assert reduce_word([0, 1, 1, 0], 3) == ()
    assert reduce_word([0, 1, 0], 3) == (0, 1, 0)
    assert reduce_word([0, 1, 1, 0, 2], 3) == (2,)


def test_reduce_rejects_out_of_range():
    with pytest.raises(GeneratorError):
        reduce_word([0, 3], 3)


def test_multiply_examples():
    assert multiply(w("ab"), w("ba")) == ()
    assert multiply(w("ab"), w("ab")) == w("abab")
    assert multiply(w("aba"), w("ac")) == w("abc")


def test_multiply_length_parity():
    for u, v in [("ab", "ba"), ("aba", "ac"), ("abc", "cb"), ("e", "abab")]:
        prod = multiply(w(u), w(v))
        assert (len(prod) - len(w(u)) - len(w(v))) % 2 == 0


@given(st.lists(st.integers(0, 2), max_size=8), st.lists(st.integers(0, 2), max_size=8),
       st.lists(st.integers(0, 2), max_size=8))
def test_multiply_associative(a, b, c):
    x, y, z = reduce_word(a, 3), reduce_word(b, 3), reduce_word(c, 3)
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@given(st.lists(st.integers(0, 2), max_size=10))
def test_inverse_is_two_sided(a):
    x = reduce_word(a, 3)
    assert multiply(x, inverse(x)) == ()
    assert multiply(inverse(x), x) == ()


def test_involutive_maps():
    assert inverse(w("abc")) == w("cba")
    assert star_word(SWAP2, w("ab", 2)) == w("ba", 2)
    assert dagger(ID3, w("ab")) == w("ba")
    for word in enumerate_words(3, 4):
        assert inverse(inverse(word)) == word
        assert star_word(SWAP3, star_word(SWAP3, word)) == word
        assert dagger(SWAP3, dagger(SWAP3, word)) == word


def test_star_and_dagger_are_algebra_compatible():
    words = enumerate_words(3, 3)
    for u in words:
        for v in words:
            assert star_word(SWAP3, multiply(u, v)) == multiply(
                star_word(SWAP3, u), star_word(SWAP3, v)
            )
            assert dagger(SWAP3, multiply(u, v)) == multiply(
                dagger(SWAP3, v), dagger(SWAP3, u)
            )


def test_descents():
    assert descents(w("aba")) == (frozenset({0}), frozenset({0}))
    assert descents(()) == (frozenset(), frozenset())
    assert descents(w("abc")) == (frozenset({0}), frozenset({2}))


def test_bruhat_leq():
    assert bruhat_leq(w("ba"), w("aba"))
    assert not bruhat_leq(w("bab"), w("aba"))
    for word in enumerate_words(3, 4):
        assert bruhat_leq(word, word)


def test_lower_words_is_the_bruhat_interval():
    interval = lower_words(w("aba"))
    assert [format_word(u) for u in interval] == ["e", "a", "b", "ab", "ba", "aba"]
    big = w("abcba")
    assert all(bruhat_leq(y, big) for y in lower_words(big))
    assert len(lower_words(big)) == sum(
        1 for y in enumerate_words(3, 5) if bruhat_leq(y, big)
    )


# -- twist action -------------------------------------------------------------


def test_twist_examples():
    assert twist(ID3, 0, ()) == w("a")
    assert twist(SWAP2, 0, ()) == w("ab", 2)
    assert twist(ID3, 0, w("aba")) == w("b")


def test_twist_is_involutive():
    for spec in (ID3, SWAP2, SWAP3):
        for word in enumerate_twisted_involutions(spec, 3):
            for s in range(spec.gen_count):
                u = twist(spec, s, word)
                assert u != word
                assert is_twisted_involution(spec, u)
                assert twist(spec, s, u) == word


def test_twist_word_examples():
    assert twist_word(ID3, w("ab"), ()) == w("aba")
    assert twist_word(ID3, (), w("aba")) == w("aba")
    assert twist_word(ID3, reduce_word([0, 0], 3), w("b")) == w("b")


def test_twist_word_is_an_action():
    for word in enumerate_twisted_involutions(ID3, 3):
        for x in enumerate_words(3, 3):
            assert twist_word(ID3, inverse(x), twist_word(ID3, x, word)) == word


def test_twist_expression_examples():
    assert twist_expression(ID3, ()) == ()
    assert twist_expression(ID3, w("aba")) == (0, 1)
    assert twist_expression(SWAP2, w("ab", 2)) == (0,)


def test_twist_expression_folds_back():
    for spec in (ID3, SWAP2, SWAP3):
        for word in enumerate_twisted_involutions(spec, 4):
            expr = twist_expression(spec, word)
            assert twist_word(spec, expr, ()) == word
            assert len(expr) == rho(spec, word)


def test_twist_expression_rejects_non_involutions():
    with pytest.raises(NotTwistedInvolution):
        twist_expression(ID3, w("ab"))


def test_rho_and_ell_star_examples():
    assert (rho(ID3, ()), ell_star(ID3, ())) == (0, 0)
    assert (rho(ID3, w("aba")), ell_star(ID3, w("aba"))) == (2, 1)
    assert (rho(SWAP2, w("ab", 2)), ell_star(SWAP2, w("ab", 2))) == (1, 0)


def test_grading_identity():
    for spec in (ID3, SWAP2, SWAP3):
        for word in enumerate_twisted_involutions(spec, 4):
            assert 2 * rho(spec, word) == len(word) + ell_star(spec, word)


def test_rank_steps_match_length_steps():
    for spec in (ID3, SWAP3):
        for word in enumerate_twisted_involutions(spec, 3):
            for s in range(spec.gen_count):
                down = rho(spec, twist(spec, s, word)) == rho(spec, word) - 1
                assert down == (len(multiply((s,), word)) == len(word) - 1)


def test_bruhat_leq_twisted_examples():
    for word in enumerate_twisted_involutions(ID3, 3):
        assert bruhat_leq_twisted(ID3, (), word)
    assert bruhat_leq_twisted(ID3, w("b"), w("aba"))
    assert not bruhat_leq_twisted(ID3, w("a"), w("b"))


def test_orders_agree_on_twisted_involutions():
    for spec in (ID3, SWAP2, SWAP3):
        elements = enumerate_twisted_involutions(spec, 4)
        for y in elements:
            for z in elements:
                assert bruhat_leq_twisted(spec, y, z) == bruhat_leq(y, z)


def test_lower_twisted_matches_enumeration():
    for spec in (ID3, SWAP3):
        elements = enumerate_twisted_involutions(spec, 4)
        for word in elements:
            below = lower_twisted(spec, word)
            expected = [y for y in elements if bruhat_leq_twisted(spec, y, word)]
            assert list(below) == expected


# -- enumeration --------------------------------------------------------------


def test_enumerate_words_counts_and_order():
    assert [format_word(u) for u in enumerate_words(3, 1)] == ["e", "a", "b", "c"]
    assert [format_word(u) for u in enumerate_words(2, 2)] == ["e", "a", "b", "ab", "ba"]
    for n in (2, 3):
        words = enumerate_words(n, 5)
        for length in range(1, 6):
            assert sum(1 for u in words if len(u) == length) == n * (n - 1) ** (length - 1)


def test_enumerate_twisted_involutions_example():
    assert [format_word(u) for u in enumerate_twisted_involutions(SWAP2, 1)] == [
        "e",
        "ab",
        "ba",
    ]


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_words(3, 10, cap=50)
    with pytest.raises(CapExceeded):
        enumerate_twisted_involutions(ID3, 8, cap=10)


# -- literals -----------------------------------------------------------------


def test_word_literals():
    assert parse_word("e", 3) == ()
    assert format_word(()) == "e"
    assert parse_word("abba", 3) == ()
    with pytest.raises(GeneratorError):
        parse_word("ad", 3)
    with pytest.raises(GeneratorError):
        parse_word("", 3)
    for word in enumerate_words(3, 4):
        assert parse_word(format_word(word), 3) == word


def test_star_literals():
    assert parse_star("id", 3) == (0, 1, 2)
    assert parse_star("(a b)", 3) == (1, 0, 2)
    assert parse_star("(a c)(b d)", 4) == (2, 3, 0, 1)
    assert format_star((1, 0, 2)) == "(a b)"
    assert format_star((0, 1, 2)) == "id"
    with pytest.raises(GeneratorError):
        parse_star("(a a)", 3)
    with pytest.raises(GeneratorError):
        parse_star("(a b)(b c)", 3)
    with pytest.raises(GeneratorError):
        parse_star("(a d)", 3)


def test_spec_validation():
    with pytest.raises(GeneratorError):
        CoxeterSpec(0, ())
    with pytest.raises(GeneratorError):
        CoxeterSpec(27, tuple(range(27)))
    with pytest.raises(GeneratorError):
        CoxeterSpec(3, (1, 2, 0))
    assert CoxeterSpec.make(2, "(a b)").star_is_fixed_point_free
    assert not ID3.star_is_fixed_point_free
