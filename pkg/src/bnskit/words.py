"""Freely reduced words over an indexed generator alphabet.

A word is a sequence of (generator index, exponent) syllables with no zero
exponents and no two adjacent syllables on the same generator.  Words are
immutable and hashable so they can serve as graph vertices and dict keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import WordParseError

Letter = tuple[int, int]

SYMBOL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_ATOM_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(\^(-?\d+))?")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[list[int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word. Use :func:`word_from_letters` to build one
    from arbitrary syllables."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        prev = None
        for gen, exp in self.letters:
            if exp == 0:
                raise ValueError("zero exponent in word")
            if gen < 0:
                raise ValueError("negative generator index")
            if prev is not None and prev == gen:
                raise ValueError("word is not freely reduced")
            prev = gen

    def __mul__(self, other: "Word") -> "Word":
        return Word(_reduce(self.letters + other.letters))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    @property
    def length(self) -> int:
        """Letter count (sum of absolute exponents)."""
        return sum(abs(e) for _, e in self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def max_generator(self) -> int:
        """Largest generator index used, or -1 for the empty word."""
        return max((g for g, _ in self.letters), default=-1)

    def single_letters(self) -> Iterator[Letter]:
        """Yield the word one +/-1 exponent at a time."""
        for gen, exp in self.letters:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield gen, step


def word_from_letters(letters: Iterable[Letter]) -> Word:
    """Freely reduce a syllable sequence into a Word."""
    return Word(_reduce(letters))


def free_reduce(word: Word) -> Word:
    """Idempotent free reduction. Word objects are reduced on construction,
    so this is the identity on them; kept as the public entry point for
    raw syllable data."""
    return word_from_letters(word.letters)


def parse_word(text: str, symbols: tuple[str, ...]) -> Word:
    """Parse the space-separated ``sym`` / ``sym^exp`` grammar.

    Raises WordParseError with the character position of the first defect.
    """
    index = {s: i for i, s in enumerate(symbols)}
    letters: list[Letter] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _ATOM_RE.match(text, pos)
        if not m:
            raise WordParseError(f"expected a generator symbol, found {text[pos]!r}", pos)
        sym = m.group(1)
        if sym not in index:
            raise WordParseError(f"unknown generator symbol {sym!r}", pos)
        exp = 1
        if m.group(2) is not None:
            exp = int(m.group(3))
            if exp == 0:
                raise WordParseError("zero exponent is not allowed", m.start(3))
        letters.append((index[sym], exp))
        pos = m.end()
        if pos < n and not text[pos].isspace():
            raise WordParseError(f"expected whitespace after atom, found {text[pos]!r}", pos)
    return word_from_letters(letters)


def format_word(word: Word, symbols: tuple[str, ...]) -> str:
    """Inverse of parse_word; the empty word prints as the empty string."""
    atoms = []
    for gen, exp in word.letters:
        atoms.append(symbols[gen] if exp == 1 else f"{symbols[gen]}^{exp}")
    return " ".join(atoms)


def display_word(word: Word, symbols: tuple[str, ...]) -> str:
    """Human-facing rendering; the identity shows as ``1``."""
    return format_word(word, symbols) if word.letters else "1"
