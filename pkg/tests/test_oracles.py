import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import brute_nadic

from bnskit.errors import AlphabetCollision
from bnskit.oracles import (
    INFINITY,
    AffineElement,
    BsOracle,
    ExtendedRational,
    all_reduced_words,
    in_z_inv_n,
    n_adic_valuation,
    oracle_bs,
    oracle_direct_product,
    oracle_free,
    oracle_free_abelian,
    random_reduced_word,
)
from bnskit.words import Word, format_word, parse_word, word_from_letters

AT = ("a", "t")


# ---------------------------------------------------------------------------
# extended rationals


def test_extended_rational_order_and_arithmetic():
    two = ExtendedRational.of(2)
    half = ExtendedRational.of(Fraction(1, 2))
    assert half < two < INFINITY
    assert min(two, INFINITY) == two
    assert two + INFINITY == INFINITY
    assert INFINITY + Fraction(5) == INFINITY
    assert (two + half).finite == Fraction(5, 2)
    assert INFINITY - Fraction(3) == INFINITY
    with pytest.raises(ValueError):
        two - INFINITY


# ---------------------------------------------------------------------------
# normal forms


def test_free_oracle_examples():
    oracle = oracle_free(2)
    word = parse_word("a t a^-1", AT)
    assert oracle.normal_form(word) == word
    assert oracle.is_identity(parse_word("a a^-1", AT))
    assert oracle.is_identity(parse_word("t^2 t^-2", AT))


def test_free_abelian_oracle_examples():
    oracle = oracle_free_abelian(2)
    assert format_word(oracle.normal_form(parse_word("t a", AT)), AT) == "a t"
    assert format_word(oracle.normal_form(parse_word("a t a^-1", AT)), AT) == "t"
    assert oracle.is_identity(parse_word("a^2 t^-1 a^-2 t", AT))


def test_bs_oracle_examples():
    oracle = oracle_bs(2)
    word = parse_word("t a t^-1", AT)
    element = oracle.evaluate(word)
    assert (element.scale, element.shift) == (0, Fraction(2))
    assert format_word(oracle.normal_form(word), AT) == "a^2"

    word = parse_word("t^-1 a t", AT)
    element = oracle.evaluate(word)
    assert (element.scale, element.shift) == (0, Fraction(1, 2))
    assert format_word(oracle.normal_form(word), AT) == "t^-1 a t"

    identity = oracle.evaluate(Word())
    assert (identity.scale, identity.shift) == (0, Fraction(0))


def test_bs_oracle_rejects_small_n():
    with pytest.raises(ValueError):
        oracle_bs(1)
    with pytest.raises(ValueError):
        oracle_bs(0)


def test_bs_normal_form_needs_trailing_power():
    # a t^-2 = t^-2 a^4 in BS(1,2); no form with p = 0 or n not dividing m exists
    oracle = oracle_bs(2)
    assert format_word(oracle.normal_form(parse_word("a t^-2", AT)), AT) \
        == "t^-2 a^4"


def test_bs_contracting_orientation():
    oracle = BsOracle(2, scale_sign=-1)
    # with the contracting stable letter, t^-1 a t = a^2
    assert format_word(oracle.normal_form(parse_word("t^-1 a t", AT)), AT) == "a^2"


def test_product_oracle_examples():
    symbols = ("a", "b", "z")
    oracle = oracle_direct_product(oracle_free(2), oracle_free_abelian(1),
                                   ("a", "b"), ("z",))
    assert format_word(oracle.normal_form(parse_word("z a z^-1", symbols)),
                       symbols) == "a"
    assert format_word(oracle.normal_form(parse_word("a z", symbols)),
                       symbols) == "a z"
    assert oracle.is_identity(parse_word("a z a^-1 z^-1", symbols))


def test_product_alphabet_collision():
    with pytest.raises(AlphabetCollision):
        oracle_direct_product(oracle_free(1), oracle_free(1), ("a",), ("a",))


def _oracles_under_test():
    return [
        ("free", oracle_free(2), 2),
        ("free_abelian", oracle_free_abelian(2), 2),
        ("bs2", oracle_bs(2), 2),
        ("bs3", oracle_bs(3), 2),
        ("product", oracle_direct_product(oracle_free(1), oracle_free_abelian(1)), 2),
    ]


@pytest.mark.parametrize("name,oracle,rank", _oracles_under_test())
def test_oracle_contract_on_random_words(name, oracle, rank):
    rng = random.Random(99)
    words = [random_reduced_word(rng, rank, rng.randrange(9)) for _ in range(200)]
    for w in words:
        nf = oracle.normal_form(w)
        assert oracle.normal_form(nf) == nf
        assert oracle.is_identity(w * w.inverse())
        assert oracle.is_identity(w) == nf.is_empty()
    for _ in range(10 ** 4):
        u = words[rng.randrange(len(words))]
        v = words[rng.randrange(len(words))]
        assert oracle.normal_form(u * v) == oracle.normal_form(
            oracle.normal_form(u) * oracle.normal_form(v))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_bs_normal_form_soundness(n):
    oracle = oracle_bs(n)
    rng = random.Random(5)
    for w in all_reduced_words(2, 4):
        nf = oracle.normal_form(w)
        assert oracle.evaluate(nf) == oracle.evaluate(w)
    for _ in range(500):
        w = random_reduced_word(rng, 2, 8)
        assert oracle.evaluate(oracle.normal_form(w)) == oracle.evaluate(w)


# ---------------------------------------------------------------------------
# affine elements


def test_affine_composition_matches_word_evaluation():
    oracle = oracle_bs(2)
    rng = random.Random(17)
    for _ in range(500):
        u = random_reduced_word(rng, 2, 6)
        v = random_reduced_word(rng, 2, 6)
        assert oracle.evaluate(u * v) == oracle.evaluate(u).compose(oracle.evaluate(v))


def test_affine_associativity_and_inverse():
    rng = random.Random(23)
    for _ in range(300):
        elements = [
            AffineElement(2, rng.randint(-4, 4),
                          Fraction(rng.randint(-8, 8), 2 ** rng.randint(0, 3)))
            for _ in range(3)
        ]
        x, y, z = elements
        assert x.compose(y).compose(z) == x.compose(y.compose(z))
        assert x.compose(x.inverse()).is_identity()
        assert x.inverse().compose(x).is_identity()


def test_affine_rejects_shift_outside_ring():
    with pytest.raises(ValueError):
        AffineElement(2, 0, Fraction(1, 3))
    assert in_z_inv_n(Fraction(5, 12), 6)
    assert not in_z_inv_n(Fraction(1, 5), 6)


# ---------------------------------------------------------------------------
# n-adic valuation


@pytest.mark.parametrize("n,b,expected", [
    (2, 8, Fraction(3)),
    (2, Fraction(1, 4), Fraction(-2)),
    (6, 4, Fraction(0)),
    (6, Fraction(1, 6), Fraction(-1)),
    (4, 2, Fraction(1, 2)),
    (4, 8, Fraction(3, 2)),
    (6, 9, Fraction(0)),
    (6, 36, Fraction(2)),
])
def test_nadic_examples(n, b, expected):
    assert n_adic_valuation(b, n) == ExtendedRational(expected)


def test_nadic_zero_is_infinite():
    assert n_adic_valuation(0, 2) == INFINITY


def test_nadic_rejects_bad_input():
    with pytest.raises(ValueError):
        n_adic_valuation(Fraction(1, 5), 6)
    with pytest.raises(ValueError):
        n_adic_valuation(1, 1)


def _random_ring_element(rng, n):
    return Fraction(rng.randint(-200, 200), n ** rng.randint(0, 4))


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_nadic_against_brute_oracle(n):
    rng = random.Random(n)
    for _ in range(2000):
        b = _random_ring_element(rng, n)
        value = n_adic_valuation(b, n)
        expected = brute_nadic(b, n)
        if expected is None:
            assert value == INFINITY
        else:
            assert value == ExtendedRational(expected)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_nadic_superadditivity_and_shift(n):
    rng = random.Random(100 + n)
    for _ in range(10 ** 4):
        b1 = _random_ring_element(rng, n)
        b2 = _random_ring_element(rng, n)
        total = n_adic_valuation(b1 + b2, n)
        assert total >= min(n_adic_valuation(b1, n), n_adic_valuation(b2, n))
        assert n_adic_valuation(n * b1, n) == n_adic_valuation(b1, n) \
            + ExtendedRational.of(1)


# ---------------------------------------------------------------------------
# word enumeration


def test_all_reduced_words_counts():
    words = list(all_reduced_words(2, 3))
    assert len(words) == 1 + 4 + 12 + 36
    assert len(set(words)) == len(words)
    assert all(w.length <= 3 for w in words)


@given(st.integers(min_value=0, max_value=8))
def test_random_reduced_word_is_reduced(length):
    rng = random.Random(length)
    word = random_reduced_word(rng, 3, length)
    assert word.length == length
    assert word_from_letters(word.letters) == word
