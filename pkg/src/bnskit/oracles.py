"""Exact word-problem engines for the built-in group families.

Oracles operate on generator indices, not symbols: an oracle for rank r
answers words over indices 0..r-1.  Every oracle provides an idempotent
normal form and an identity test, which is what finite Cayley-ball
construction and valuation evaluation need.

BS(1,n) elements are realized as affine maps x -> n^k x + b with b in
Z[1/n]; the normalized n-adic valuation of the translation part is the
witness engine behind the non-membership certificates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Iterator, Sequence

from .errors import AlphabetCollision, EvaluatorUndefined
from .words import Word, word_from_letters

Letter = tuple[int, int]


@total_ordering
@dataclass(frozen=True)
class ExtendedRational:
    """A rational or +infinity; infinity absorbs addition and is maximal."""

    finite: Fraction | None  # None encodes +infinity

    @classmethod
    def of(cls, value) -> "ExtendedRational":
        return cls(Fraction(value))

    @classmethod
    def infinity(cls) -> "ExtendedRational":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    def __add__(self, other):
        other = _coerce(other)
        if self.finite is None or other.finite is None:
            return ExtendedRational(None)
        return ExtendedRational(self.finite + other.finite)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if self.finite is None:
            return ExtendedRational(None)
        if other.finite is None:
            raise ValueError("cannot subtract infinity")
        return ExtendedRational(self.finite - other.finite)

    def __eq__(self, other):
        other = _coerce(other)
        return self.finite == other.finite

    def __lt__(self, other):
        other = _coerce(other)
        if self.finite is None:
            return False
        if other.finite is None:
            return True
        return self.finite < other.finite

    def __hash__(self):
        return hash(self.finite)

    def __str__(self):
        return "inf" if self.finite is None else str(self.finite)


def _coerce(value) -> ExtendedRational:
    if isinstance(value, ExtendedRational):
        return value
    return ExtendedRational(Fraction(value))


INFINITY = ExtendedRational.infinity()


def prime_factors(n: int) -> dict[int, int]:
    if n < 2:
        raise ValueError("prime factorization needs n >= 2")
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _padic(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("p-adic valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def in_z_inv_n(b: Fraction, n: int) -> bool:
    """Membership in Z[1/n]: every prime of the denominator divides n."""
    d = b.denominator
    while d != 1:
        g = gcd(d, n)
        if g == 1:
            return False
        while d % g == 0:
            d //= g
    return True


def n_adic_valuation(b: Fraction | int, n: int) -> ExtendedRational:
    """Normalized valuation on Z[1/n]: min over primes p | n of v_p(b)/v_p(n).

    Satisfies val(n*b) = val(b) + 1 and val(b1+b2) >= min(val(b1), val(b2));
    val(0) is +infinity.  For composite n the value can be a proper fraction,
    which is why the naive largest-power-of-n definition is not used.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    b = Fraction(b)
    if not in_z_inv_n(b, n):
        raise ValueError(f"{b} is not in Z[1/{n}]")
    if b == 0:
        return INFINITY
    best: Fraction | None = None
    for p, mult in prime_factors(n).items():
        vp = Fraction(_padic(b.numerator, p) - _padic(b.denominator, p), mult)
        if best is None or vp < best:
            best = vp
    return ExtendedRational(best)


@dataclass(frozen=True)
class AffineElement:
    """The map x -> base^scale * x + shift with shift in Z[1/base]."""

    base: int
    scale: int
    shift: Fraction

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("affine base must be at least 2")
        if not in_z_inv_n(self.shift, self.base):
            raise ValueError(f"shift {self.shift} is not in Z[1/{self.base}]")

    @classmethod
    def identity(cls, base: int) -> "AffineElement":
        return cls(base, 0, Fraction(0))

    def compose(self, other: "AffineElement") -> "AffineElement":
        """self after other: (k1,b1)(k2,b2) = (k1+k2, n^k1 b2 + b1)."""
        if other.base != self.base:
            raise ValueError("mismatched affine bases")
        return AffineElement(self.base, self.scale + other.scale,
                             _scale_pow(other.shift, self.base, self.scale) + self.shift)

    def inverse(self) -> "AffineElement":
        return AffineElement(self.base, -self.scale,
                             _scale_pow(-self.shift, self.base, -self.scale))

    def is_identity(self) -> bool:
        return self.scale == 0 and self.shift == 0


def _scale_pow(x: Fraction, n: int, k: int) -> Fraction:
    if k >= 0:
        return x * n ** k
    return x / n ** (-k)


class WordOracle:
    """Normal-form engine contract: idempotent normal_form, is_identity."""

    alphabet_size: int

    def normal_form(self, word: Word) -> Word:
        raise NotImplementedError

    def is_identity(self, word: Word) -> bool:
        return self.normal_form(word).is_empty()

    def check_word(self, word: Word):
        if word.max_generator() >= self.alphabet_size:
            raise EvaluatorUndefined(
                f"word uses generator index {word.max_generator()}, "
                f"oracle alphabet has size {self.alphabet_size}"
            )


class FreeOracle(WordOracle):
    """Free group: the normal form is free reduction itself."""

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.alphabet_size = rank

    def normal_form(self, word: Word) -> Word:
        self.check_word(word)
        return word


class FreeAbelianOracle(WordOracle):
    """Free abelian group: sort letters by index and merge exponents."""

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.alphabet_size = rank

    def normal_form(self, word: Word) -> Word:
        self.check_word(word)
        totals: dict[int, int] = {}
        for gen, exp in word.letters:
            totals[gen] = totals.get(gen, 0) + exp
        return word_from_letters((g, totals[g]) for g in sorted(totals))


class BsOracle(WordOracle):
    """BS(1,n) = <a, t | t a t^-1 = a^n> with index 0 = a, index 1 = t.

    Elements are evaluated in the affine model a -> x+1, t -> n*x.  The
    normal form is the Britton-reduced word t^-p a^m t^q with p, q >= 0
    and no removable t...t^-1 pinch (p = 0, or q = 0, or n does not
    divide m).
    """

    A, T = 0, 1

    def __init__(self, n: int, scale_sign: int = 1):
        if n <= 1:
            raise ValueError("BS(1,n) oracle needs n >= 2; n = 1 is the "
                             "free abelian case")
        if scale_sign not in (1, -1):
            raise ValueError("scale_sign must be +1 or -1")
        self.n = n
        self.scale_sign = scale_sign
        self.alphabet_size = 2

    def evaluate(self, word: Word) -> AffineElement:
        self.check_word(word)
        out = AffineElement.identity(self.n)
        for gen, exp in word.letters:
            if gen == self.A:
                step = AffineElement(self.n, 0, Fraction(exp))
            else:
                step = AffineElement(self.n, self.scale_sign * exp, Fraction(0))
            out = out.compose(step)
        return out

    def normal_form(self, word: Word) -> Word:
        elt = self.evaluate(word)
        k = elt.scale  # count of the n-scaling stable element
        shift = elt.shift
        p = 0
        while shift.denominator > 1:
            shift *= self.n
            p += 1
        # the right-hand stable count q = k + p must be nonnegative
        while k + p < 0:
            shift *= self.n
            p += 1
        m = int(shift)
        q = k + p
        sign = self.scale_sign
        return word_from_letters(
            [(self.T, -p * sign), (self.A, m), (self.T, q * sign)]
        )

    def is_identity(self, word: Word) -> bool:
        return self.evaluate(word).is_identity()


class DirectProductOracle(WordOracle):
    """Direct product: letters project to each factor, factors commute.

    Factor one owns indices 0..r1-1, factor two the rest.  The normal form
    is the first factor's normal form followed by the second's (shifted
    back up).
    """

    def __init__(self, first: WordOracle, second: WordOracle,
                 first_symbols: Sequence[str] | None = None,
                 second_symbols: Sequence[str] | None = None):
        if first_symbols is not None and second_symbols is not None:
            shared = set(first_symbols) & set(second_symbols)
            if shared:
                raise AlphabetCollision(
                    f"factors share generator symbols: {sorted(shared)}"
                )
        self.first = first
        self.second = second
        self.alphabet_size = first.alphabet_size + second.alphabet_size

    def _split(self, word: Word) -> tuple[Word, Word]:
        cut = self.first.alphabet_size
        left = [(g, e) for g, e in word.letters if g < cut]
        right = [(g - cut, e) for g, e in word.letters if g >= cut]
        return word_from_letters(left), word_from_letters(right)

    def normal_form(self, word: Word) -> Word:
        self.check_word(word)
        left, right = self._split(word)
        nf_left = self.first.normal_form(left)
        nf_right = self.second.normal_form(right)
        cut = self.first.alphabet_size
        shifted = tuple((g + cut, e) for g, e in nf_right.letters)
        return word_from_letters(nf_left.letters + shifted)

    def is_identity(self, word: Word) -> bool:
        left, right = self._split(word)
        return self.first.is_identity(left) and self.second.is_identity(right)


def oracle_free(rank: int) -> WordOracle:
    return FreeOracle(rank)


def oracle_free_abelian(rank: int) -> WordOracle:
    return FreeAbelianOracle(rank)


def oracle_bs(n: int) -> WordOracle:
    return BsOracle(n)


def oracle_direct_product(first: WordOracle, second: WordOracle,
                          first_symbols: Sequence[str] | None = None,
                          second_symbols: Sequence[str] | None = None) -> WordOracle:
    return DirectProductOracle(first, second, first_symbols, second_symbols)


def all_reduced_words(alphabet_size: int, max_length: int) -> Iterator[Word]:
    """Every freely reduced word of letter count at most max_length,
    in length-then-lexicographic order."""
    yield Word()
    frontier: list[tuple[Letter, ...]] = [()]
    for _ in range(max_length):
        next_frontier = []
        for prefix in frontier:
            for gen in range(alphabet_size):
                for step in (1, -1):
                    if prefix and prefix[-1][0] == gen and prefix[-1][1] * step < 0:
                        continue
                    ext = prefix + ((gen, step),)
                    next_frontier.append(ext)
                    yield word_from_letters(ext)
        frontier = next_frontier


def random_reduced_word(rng: random.Random, alphabet_size: int, length: int) -> Word:
    letters: list[tuple[int, int]] = []
    for _ in range(length):
        while True:
            gen = rng.randrange(alphabet_size)
            step = rng.choice((1, -1))
            if letters and letters[-1][0] == gen and letters[-1][1] * step < 0:
                continue
            letters.append((gen, step))
            break
    return word_from_letters(letters)
