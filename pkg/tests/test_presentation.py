import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bnskit.errors import PresentationError, RelatorNonVanishing, ZeroCharacter
from bnskit.presentation import (
    Character,
    GroupFlags,
    GroupPresentation,
    RayClass,
    TriState,
    antipode,
    canonical_ray,
    character_from_values,
    exponent_matrix,
    presentation_from_texts,
    ray_from_ints,
)
from bnskit.words import Word, word_from_letters


def test_duplicate_generator_rejected():
    with pytest.raises(PresentationError):
        GroupPresentation(("a", "a"))


def test_invalid_symbol_rejected():
    with pytest.raises(PresentationError):
        GroupPresentation(("1a",))


def test_empty_relator_rejected():
    with pytest.raises(PresentationError):
        GroupPresentation(("a",), (Word(),))


def test_relator_alphabet_checked():
    with pytest.raises(PresentationError):
        GroupPresentation(("a",), (Word(((1, 1),)),))


def test_amenable_promotes_free_subgroup_flag():
    flags = GroupFlags(amenable=TriState.TRUE)
    assert flags.no_nonabelian_free_subgroups is TriState.TRUE


def test_amenable_contradiction_rejected():
    with pytest.raises(PresentationError):
        GroupFlags(amenable=TriState.TRUE,
                   no_nonabelian_free_subgroups=TriState.FALSE)


def test_tristate_is_not_a_bool():
    with pytest.raises(TypeError):
        bool(TriState.TRUE)


def test_exponent_matrix_bs(bs12):
    assert exponent_matrix(bs12) == [[-1, 0]]


def test_exponent_matrix_z2(z2):
    assert exponent_matrix(z2) == [[0, 0]]


def test_exponent_matrix_free(f2):
    assert exponent_matrix(f2) == []


def test_character_valid_on_bs(bs12):
    chi = character_from_values(bs12, [0, 1])
    assert chi.values == (Fraction(0), Fraction(1))


def test_character_nonvanishing_rejected(bs12):
    with pytest.raises(RelatorNonVanishing):
        character_from_values(bs12, [1, 0])


def test_zero_character_rejected(bs12):
    with pytest.raises(ZeroCharacter):
        character_from_values(bs12, [0, 0])
    chi = character_from_values(bs12, [0, 0], allow_zero=True)
    assert chi.is_zero()


def test_wrong_value_count(bs12):
    with pytest.raises(PresentationError):
        character_from_values(bs12, [1])


def test_evaluate_examples(bs12):
    chi = character_from_values(bs12, [0, 1])
    assert chi.evaluate(bs12.parse("t a t^-1")) == 0
    assert chi.evaluate(bs12.parse("t^3")) == 3
    assert chi.evaluate(Word()) == 0


def test_evaluate_is_a_homomorphism(f2):
    chi = character_from_values(f2, [Fraction(2, 3), Fraction(-1, 2)])
    rng = random.Random(7)
    for _ in range(200):
        u = word_from_letters((rng.randrange(2), rng.choice((1, -1)))
                              for _ in range(rng.randrange(8)))
        v = word_from_letters((rng.randrange(2), rng.choice((1, -1)))
                              for _ in range(rng.randrange(8)))
        assert chi.evaluate(u * v) == chi.evaluate(u) + chi.evaluate(v)
    assert chi.evaluate(u.inverse()) == -chi.evaluate(u)


def test_character_validity_matches_matrix_kernel():
    presentation = presentation_from_texts(["a", "b", "c"],
                                           ["a b a^-1 b^-1", "a^2 c^-3"])
    matrix = exponent_matrix(presentation)
    rng = random.Random(3)
    hits = 0
    for _ in range(300):
        values = [Fraction(rng.randint(-4, 4), rng.randint(1, 4))
                  for _ in range(3)]
        in_kernel = all(
            sum(row[j] * values[j] for j in range(3)) == 0 for row in matrix
        ) and any(v != 0 for v in values)
        try:
            character_from_values(presentation, values)
            assert in_kernel
            hits += 1
        except (RelatorNonVanishing, ZeroCharacter):
            assert not in_kernel
    assert hits > 0


def test_canonical_ray_examples(z2):
    chi = character_from_values(z2, [0, Fraction(3, 2)])
    assert canonical_ray(chi) == RayClass((0, 1))
    chi = character_from_values(z2, [-2, 4])
    assert canonical_ray(chi) == RayClass((-1, 2))
    assert canonical_ray(character_from_values(z2, [0, 1])) \
        == canonical_ray(character_from_values(z2, [0, 7]))


def test_canonical_ray_requires_nonzero(z2):
    with pytest.raises(ZeroCharacter):
        canonical_ray(character_from_values(z2, [0, 0], allow_zero=True))


def test_ray_class_rejects_non_coprime():
    with pytest.raises(ValueError):
        RayClass((2, 4))


positive_rationals = st.builds(
    Fraction,
    st.integers(min_value=1, max_value=60),
    st.integers(min_value=1, max_value=60),
)
value_lists = st.lists(
    st.builds(Fraction, st.integers(min_value=-9, max_value=9),
              st.integers(min_value=1, max_value=9)),
    min_size=2, max_size=4,
).filter(lambda vs: any(v != 0 for v in vs))


@given(value_lists, positive_rationals)
def test_canonical_ray_scaling_invariant(values, scalar):
    presentation = GroupPresentation(tuple(f"g{i}" for i in range(len(values))))
    chi = character_from_values(presentation, values)
    assert canonical_ray(chi.scale(scalar)) == canonical_ray(chi)


@given(value_lists, value_lists, positive_rationals)
def test_canonical_ray_complete_invariant(v1, v2, scalar):
    if len(v1) != len(v2):
        return
    presentation = GroupPresentation(tuple(f"g{i}" for i in range(len(v1))))
    c1 = character_from_values(presentation, v1)
    c2 = character_from_values(presentation, v2)
    same_ray = canonical_ray(c1) == canonical_ray(c2)
    proportional = all(a * scalar == b for a, b in zip(v1, v2))
    if proportional:
        assert same_ray
    if same_ray:
        # the witness scalar is forced by any nonzero coordinate
        base = next((i for i, a in enumerate(v1) if a != 0))
        forced = v2[base] / v1[base]
        assert forced > 0
        assert all(a * forced == b for a, b in zip(v1, v2))


def test_antipode_examples():
    assert antipode(RayClass((0, 1))) == RayClass((0, -1))
    assert antipode(RayClass((-1, 2))) == RayClass((1, -2))


def test_antipode_involution_without_fixed_points():
    rng = random.Random(11)
    for _ in range(100):
        values = [rng.randint(-6, 6) for _ in range(3)]
        if all(v == 0 for v in values):
            values[0] = 1
        ray = ray_from_ints(values)
        assert antipode(antipode(ray)) == ray
        assert antipode(ray) != ray
