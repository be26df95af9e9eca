import pytest
from hypothesis import given, strategies as st

from bnskit.errors import WordParseError
from bnskit.words import (
    Word,
    format_word,
    free_reduce,
    parse_word,
    word_from_letters,
)

AT = ("a", "t")


def test_parse_bs_relator():
    word = parse_word("t a t^-1 a^-2", AT)
    assert word.letters == ((1, 1), (0, 1), (1, -1), (0, -2))


def test_parse_cancels():
    assert parse_word("a a^-1", AT).is_empty()


def test_parse_merges_exponents():
    assert parse_word("a^2 a^3 t", AT).letters == ((0, 5), (1, 1))


def test_parse_empty_text_is_identity():
    assert parse_word("", AT).is_empty()
    assert parse_word("   ", AT).is_empty()


def test_unknown_symbol_position():
    with pytest.raises(WordParseError) as info:
        parse_word("a b", AT)
    assert info.value.position == 2


def test_malformed_exponent():
    with pytest.raises(WordParseError):
        parse_word("a^", AT)
    with pytest.raises(WordParseError):
        parse_word("a^x", AT)
    with pytest.raises(WordParseError):
        parse_word("a^0", AT)


def test_missing_whitespace_rejected():
    with pytest.raises(WordParseError):
        parse_word("a^2t", AT)


@pytest.mark.parametrize("letters, expected", [
    ([(0, 1), (0, -1)], ()),
    ([(0, 2), (1, 1), (1, -1), (0, -2)], ()),
    ([(0, 1), (1, 2), (1, 1)], ((0, 1), (1, 3))),
])
def test_free_reduce(letters, expected):
    assert word_from_letters(letters).letters == expected


def test_free_reduce_idempotent_entry_point():
    word = word_from_letters([(0, 3), (1, -1)])
    assert free_reduce(word) == word


def test_word_constructor_rejects_unreduced():
    with pytest.raises(ValueError):
        Word(((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        Word(((0, 0),))


def test_multiplication_and_inverse():
    u = parse_word("a t", AT)
    v = parse_word("t^-1 a", AT)
    assert format_word(u * v, AT) == "a^2"
    assert (u * u.inverse()).is_empty()
    assert u ** 0 == Word()
    assert format_word(u ** -2, AT) == "t^-1 a^-1 t^-1 a^-1"


def test_length_counts_letters():
    assert parse_word("a^3 t^-2", AT).length == 5
    assert Word().length == 0


letters_strategy = st.lists(
    st.tuples(st.integers(min_value=0, max_value=2),
              st.integers(min_value=-3, max_value=3).filter(lambda e: e != 0)),
    max_size=12,
)


@given(letters_strategy)
def test_reduction_idempotent(letters):
    once = word_from_letters(letters)
    assert word_from_letters(once.letters) == once


@given(letters_strategy)
def test_print_parse_round_trip(letters):
    symbols = ("a", "t", "u")
    word = word_from_letters(letters)
    text = format_word(word, symbols)
    assert parse_word(text, symbols) == word
    assert format_word(parse_word(text, symbols), symbols) == text


@given(letters_strategy, letters_strategy)
def test_concatenation_inverse(l1, l2):
    u = word_from_letters(l1)
    v = word_from_letters(l2)
    assert (u * v).inverse() == v.inverse() * u.inverse()
