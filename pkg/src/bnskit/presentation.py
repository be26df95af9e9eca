"""Finitely presented groups, characters, and rays on the character sphere.

All arithmetic is exact: character values are rationals, ray classes are
coprime integer vectors.  A character is a homomorphism to the reals
exactly when its value vector is killed by the relator exponent matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import PresentationError, RelatorNonVanishing, ZeroCharacter
from .words import SYMBOL_RE, Word, display_word, format_word, parse_word


class TriState(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def parse(cls, text: str) -> "TriState":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise PresentationError(
                f"flag value must be true/false/unknown, got {text!r}"
            ) from None

    def __bool__(self):
        raise TypeError("TriState is three-valued; compare explicitly")


@dataclass(frozen=True)
class GroupFlags:
    """User-declared structural facts that no algorithm can decide."""

    no_nonabelian_free_subgroups: TriState = TriState.UNKNOWN
    amenable: TriState = TriState.UNKNOWN
    claimed_kahler: TriState = TriState.UNKNOWN
    commutator_fg: TriState = TriState.UNKNOWN

    def __post_init__(self):
        if self.amenable is TriState.TRUE:
            if self.no_nonabelian_free_subgroups is TriState.FALSE:
                raise PresentationError(
                    "amenable groups contain no nonabelian free subgroups; "
                    "the declared flags contradict each other"
                )
            # amenability forces the weaker flag
            object.__setattr__(self, "no_nonabelian_free_subgroups", TriState.TRUE)

    def describe(self) -> str:
        parts = []
        for name in ("no_nonabelian_free_subgroups", "amenable",
                     "claimed_kahler", "commutator_fg"):
            value: TriState = getattr(self, name)
            if value is not TriState.UNKNOWN:
                parts.append(f"{name}={value.value}")
        return ", ".join(parts) if parts else "(none)"


@dataclass(frozen=True)
class GroupPresentation:
    """Generators, freely reduced relators, and declared flags."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    flags: GroupFlags = field(default_factory=GroupFlags)

    def __post_init__(self):
        seen = set()
        for sym in self.generators:
            if not SYMBOL_RE.fullmatch(sym):
                raise PresentationError(f"invalid generator symbol {sym!r}")
            if sym in seen:
                raise PresentationError(f"duplicate generator symbol {sym!r}")
            seen.add(sym)
        for rel in self.relators:
            if rel.is_empty():
                raise PresentationError("the empty relator is rejected")
            if rel.max_generator() >= len(self.generators):
                raise PresentationError(
                    f"relator {rel.letters} uses an undeclared generator"
                )

    @property
    def rank(self) -> int:
        return len(self.generators)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, word: Word) -> str:
        return format_word(word, self.generators)

    def display(self, word: Word) -> str:
        return display_word(word, self.generators)


def presentation_from_texts(generators: Sequence[str],
                            relator_texts: Sequence[str],
                            flags: GroupFlags | None = None) -> GroupPresentation:
    gens = tuple(generators)
    rels = tuple(parse_word(t, gens) for t in relator_texts)
    return GroupPresentation(gens, rels, flags or GroupFlags())


def exponent_matrix(presentation: GroupPresentation) -> list[list[int]]:
    """Relators-by-generators matrix of total exponents.

    The kernel of this matrix over the rationals is exactly the space of
    characters of the group.
    """
    rows = []
    for rel in presentation.relators:
        row = [0] * presentation.rank
        for gen, exp in rel.letters:
            row[gen] += exp
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Character:
    """A homomorphism to the reals given by exact rational generator values."""

    presentation: GroupPresentation
    values: tuple[Fraction, ...]

    def evaluate(self, word: Word) -> Fraction:
        return sum((exp * self.values[gen] for gen, exp in word.letters),
                   start=Fraction(0))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def negate(self) -> "Character":
        return Character(self.presentation, tuple(-v for v in self.values))

    def scale(self, factor: Fraction) -> "Character":
        if factor <= 0:
            raise ValueError("ray scaling must be by a positive rational")
        return Character(self.presentation, tuple(factor * v for v in self.values))


def character_from_values(presentation: GroupPresentation,
                          values: Sequence[Fraction | int],
                          allow_zero: bool = False) -> Character:
    """Validate generator values as a character.

    Raises RelatorNonVanishing when some relator has a nonzero
    exponent-weighted sum, ZeroCharacter when all values vanish and
    non-triviality is required.
    """
    if len(values) != presentation.rank:
        raise PresentationError(
            f"expected {presentation.rank} values, got {len(values)}"
        )
    vals = tuple(Fraction(v) for v in values)
    for rel in presentation.relators:
        total = sum((exp * vals[gen] for gen, exp in rel.letters), start=Fraction(0))
        if total != 0:
            raise RelatorNonVanishing(
                f"relator {presentation.format(rel)!r} has weighted sum {total}; "
                "the values define no homomorphism"
            )
    if not allow_zero and all(v == 0 for v in vals):
        raise ZeroCharacter("all generator values are zero")
    return Character(presentation, vals)


def evaluate(character: Character, word: Word) -> Fraction:
    return character.evaluate(word)


@dataclass(frozen=True)
class RayClass:
    """Positive-scaling class of a nonzero character.

    Canonical form: coprime integers, direction preserved (a ray and its
    antipode are always distinct).
    """

    values: tuple[int, ...]

    def __post_init__(self):
        if all(v == 0 for v in self.values):
            raise ZeroCharacter("a ray class needs a nonzero vector")
        if gcd(*self.values) != 1:
            raise ValueError("ray class values must be coprime")

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def canonical_ray(character: Character) -> RayClass:
    """Clear denominators and divide by the gcd; the sign pattern is kept."""
    if character.is_zero():
        raise ZeroCharacter("the zero character has no ray class")
    denominator_lcm = lcm(*(v.denominator for v in character.values))
    ints = [int(v * denominator_lcm) for v in character.values]
    g = gcd(*ints)
    return RayClass(tuple(v // g for v in ints))


def ray_from_ints(values: Iterable[int]) -> RayClass:
    """Build the canonical ray through an integer vector."""
    ints = tuple(values)
    if all(v == 0 for v in ints):
        raise ZeroCharacter("a ray class needs a nonzero vector")
    g = gcd(*ints)
    return RayClass(tuple(v // g for v in ints))


def antipode(ray: RayClass) -> RayClass:
    return RayClass(tuple(-v for v in ray.values))
