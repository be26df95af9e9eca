"""HNN decompositions, their valuations, and Brown's criterion.

Convention (fixed throughout the toolkit): for G = <B, t | t h t^-1 =
phi(h), h in B1> with phi: B1 -> B2 an isomorphism of subgroups of B,
the decomposition is *properly descending* when B1 = B and B2 != B, and
*properly ascending* when B2 = B and B1 != B.  The associated character
sends the stable element to 1 and the base to 0.

Subgroup equality against the base is undecidable in general, so it is
declared by the user; when a word-problem oracle is available the
declarations are cross-checked by a bounded product search and refuted
declarations raise DeclarationMismatch rather than being silently
trusted.

Taking the stable letter s = t^-1 swaps the two subgroups and inverts
phi; the toolkit models this by an orientation sign on the same ambient
presentation, so the associated character of the inverted reading is
literally the antipode of the original one.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    DeclarationMismatch,
    NonInvertiblePhi,
    PresentationError,
    UnderdeterminedClassification,
)
from .facts import (
    AscendingStructure,
    DescendingFgHNN,
    SigmaFact,
    SigmaStatus,
    ValuationWitness,
)
from .oracles import (
    BsOracle,
    ExtendedRational,
    FreeAbelianOracle,
    WordOracle,
    all_reduced_words,
    n_adic_valuation,
)
from .presentation import (
    Character,
    GroupFlags,
    GroupPresentation,
    RayClass,
    TriState,
    canonical_ray,
    character_from_values,
)
from .words import SYMBOL_RE, Word, word_from_letters

DEFAULT_SEARCH_DEPTH = 10
DEFAULT_SEARCH_BUDGET = 5000


class HnnClass(enum.Enum):
    PROPERLY_DESCENDING = "ProperlyDescending"
    PROPERLY_ASCENDING = "ProperlyAscending"
    NON_PROPER = "NonProper"
    NEITHER = "Neither"


@dataclass(frozen=True)
class HnnDecomposition:
    """G = <base, t | tau w tau^-1 = phi(w)> where tau = t^stable_exponent.

    b1_generators generate B1, phi_images their images (generating B2);
    b2_generators defaults to the images.  Equality of B1 or B2 with the
    base is a declaration, verified as far as a bounded search can.
    """

    base: GroupPresentation
    stable_letter: str
    b1_generators: tuple[Word, ...]
    phi_images: tuple[Word, ...]
    b2_generators: tuple[Word, ...] = ()
    declared_b1_equals_base: TriState = TriState.UNKNOWN
    declared_b2_equals_base: TriState = TriState.UNKNOWN
    stable_exponent: int = 1
    base_finitely_generated: bool = True
    ambient_flags: GroupFlags = field(default_factory=GroupFlags)
    base_oracle: WordOracle | None = field(default=None, compare=False)

    def __post_init__(self):
        if not SYMBOL_RE.fullmatch(self.stable_letter):
            raise PresentationError(f"invalid stable letter {self.stable_letter!r}")
        if self.stable_letter in self.base.generators:
            raise PresentationError(
                f"stable letter {self.stable_letter!r} collides with a base generator"
            )
        if self.stable_exponent not in (1, -1):
            raise PresentationError("stable_exponent must be +1 or -1")
        if len(self.phi_images) != len(self.b1_generators):
            raise PresentationError("phi must be defined exactly on the B1 generators")
        if not self.b2_generators:
            object.__setattr__(self, "b2_generators", self.phi_images)
        if len(self.b2_generators) != len(self.b1_generators):
            raise PresentationError("B2 needs one generator word per B1 generator")
        for w in (*self.b1_generators, *self.phi_images, *self.b2_generators):
            if w.is_empty():
                raise PresentationError("subgroup generator words must be non-trivial")
            if w.max_generator() >= self.base.rank:
                raise PresentationError("subgroup generator word leaves the base alphabet")

    @property
    def stable_element_text(self) -> str:
        return self.stable_letter if self.stable_exponent == 1 \
            else f"{self.stable_letter}^-1"

    def with_oracle(self, oracle: WordOracle | None) -> "HnnDecomposition":
        fields = dict(self.__dict__)
        fields["base_oracle"] = oracle
        return HnnDecomposition(**fields)


def build_group(decomposition: HnnDecomposition) -> GroupPresentation:
    """Ambient presentation: base generators plus the stable letter, base
    relators plus one relator tau w tau^-1 phi(w)^-1 per B1 generator."""
    h = decomposition
    t = h.base.rank
    relators = list(h.base.relators)
    for w, image in zip(h.b1_generators, h.phi_images):
        relators.append(word_from_letters(
            ((t, h.stable_exponent),)
            + w.letters
            + ((t, -h.stable_exponent),)
            + image.inverse().letters
        ))
    return GroupPresentation(
        h.base.generators + (h.stable_letter,),
        tuple(relators),
        h.ambient_flags,
    )


def associated_character(decomposition: HnnDecomposition) -> Character:
    """Value 1 on the stable element, 0 on the base; validated against the
    ambient relators rather than assumed."""
    ambient = build_group(decomposition)
    values = [Fraction(0)] * decomposition.base.rank
    values.append(Fraction(decomposition.stable_exponent))
    return character_from_values(ambient, values)


def kernel_element(decomposition: HnnDecomposition, k: int, base_word: Word) -> Word:
    """t^k w t^-k, a member of the associated character's kernel."""
    if base_word.max_generator() >= decomposition.base.rank:
        raise PresentationError("base word leaves the base alphabet")
    t = decomposition.base.rank
    return word_from_letters(((t, k),) + base_word.letters + ((t, -k),))


def bounded_subgroup_closure(oracle: WordOracle,
                             generator_words: Sequence[Word],
                             depth: int = DEFAULT_SEARCH_DEPTH,
                             max_size: int = DEFAULT_SEARCH_BUDGET) -> set[Word]:
    """Normal forms of products of at most `depth` generator-word factors."""
    gens: list[Word] = []
    for w in generator_words:
        gens.append(w)
        gens.append(w.inverse())
    start = oracle.normal_form(Word())
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        fresh = []
        for x in frontier:
            for g in gens:
                nf = oracle.normal_form(x * g)
                if nf not in seen:
                    seen.add(nf)
                    fresh.append(nf)
                    if len(seen) >= max_size:
                        return seen
        if not fresh:
            break
        frontier = fresh
    return seen


def _resolve_equality(decomposition: HnnDecomposition,
                      side: str,
                      generator_words: tuple[Word, ...],
                      declared: TriState,
                      depth: int,
                      budget: int) -> bool:
    oracle = decomposition.base_oracle
    proven: bool | None = None
    if oracle is not None:
        closure = bounded_subgroup_closure(oracle, generator_words, depth, budget)
        base_gen_forms = [
            oracle.normal_form(Word(((g, 1),)))
            for g in range(decomposition.base.rank)
        ]
        if all(nf in closure for nf in base_gen_forms):
            proven = True
        elif not generator_words and any(not nf.is_empty() for nf in base_gen_forms):
            # the trivial subgroup cannot equal a base with a non-trivial generator
            proven = False
    if proven is True and declared is TriState.FALSE:
        raise DeclarationMismatch(
            f"declared {side} != base, but the bounded search expresses every "
            f"base generator as a product of {side} generators"
        )
    if proven is False and declared is TriState.TRUE:
        raise DeclarationMismatch(
            f"declared {side} = base, refuted under the oracle"
        )
    if declared is TriState.UNKNOWN:
        if proven is None:
            raise UnderdeterminedClassification(
                f"{side} = base is declared unknown and the bounded check "
                "could not settle it"
            )
        return proven
    return declared is TriState.TRUE


def classify(decomposition: HnnDecomposition,
             depth: int = DEFAULT_SEARCH_DEPTH,
             budget: int = DEFAULT_SEARCH_BUDGET) -> HnnClass:
    """Properly descending iff B1 = B and B2 != B; properly ascending iff
    B2 = B and B1 != B; non-proper iff B1 = B2 = B."""
    h = decomposition
    eq1 = _resolve_equality(h, "B1", h.b1_generators, h.declared_b1_equals_base,
                            depth, budget)
    eq2 = _resolve_equality(h, "B2", h.b2_generators, h.declared_b2_equals_base,
                            depth, budget)
    if eq1 and eq2:
        return HnnClass.NON_PROPER
    if eq1:
        return HnnClass.PROPERLY_DESCENDING
    if eq2:
        return HnnClass.PROPERLY_ASCENDING
    return HnnClass.NEITHER


def stable_letter_inverse(decomposition: HnnDecomposition) -> HnnDecomposition:
    """Re-read the decomposition with stable letter s = t^-1: the subgroups
    swap, phi is inverted, and the associated character flips sign."""
    h = decomposition
    oracle = h.base_oracle
    for i, (image, b2gen) in enumerate(zip(h.phi_images, h.b2_generators)):
        if image == b2gen:
            continue
        if oracle is not None and oracle.normal_form(image) == oracle.normal_form(b2gen):
            continue
        raise NonInvertiblePhi(
            f"B2 generator {i} does not match the corresponding phi image, "
            "so phi cannot be inverted generator-by-generator"
        )
    if oracle is not None:
        forms: dict[Word, Word] = {}
        for src, image in zip(h.b1_generators, h.phi_images):
            nf = oracle.normal_form(image)
            prev = forms.get(nf)
            if prev is not None and oracle.normal_form(src) != oracle.normal_form(prev):
                raise NonInvertiblePhi(
                    "two distinct B1 generators share a phi image; phi is not injective"
                )
            forms[nf] = src
    return HnnDecomposition(
        base=h.base,
        stable_letter=h.stable_letter,
        b1_generators=h.b2_generators,
        phi_images=h.b1_generators,
        b2_generators=h.b1_generators,
        declared_b1_equals_base=h.declared_b2_equals_base,
        declared_b2_equals_base=h.declared_b1_equals_base,
        stable_exponent=-h.stable_exponent,
        base_finitely_generated=h.base_finitely_generated,
        ambient_flags=h.ambient_flags,
        base_oracle=oracle,
    )


def is_stable_letter_inverse_pair(descending: HnnDecomposition,
                                  ascending: HnnDecomposition) -> bool:
    """True when the second decomposition is the s = t^-1 reading of the first."""
    d, a = descending, ascending
    return (
        d.base == a.base
        and d.stable_letter == a.stable_letter
        and d.stable_exponent == -a.stable_exponent
        and a.b1_generators == d.b2_generators
        and a.phi_images == d.b1_generators
        and a.b2_generators == d.b1_generators
    )


def spot_check_phi(decomposition: HnnDecomposition,
                   samples: int = 50,
                   sample_length: int = 4,
                   seed: int = 0) -> dict[str, int]:
    """Affordable consistency checks of phi under the base oracle.

    Full verification that phi extends to an isomorphism B1 -> B2 is
    undecidable; this maps base relators through phi where B1 covers the
    base generators letter-for-letter, and samples injectivity.  Returns
    counters; raises DeclarationMismatch on any refutation.
    """
    h = decomposition
    oracle = h.base_oracle
    checked = {"relators": 0, "injectivity_pairs": 0}
    if oracle is None:
        return checked
    letter_map: dict[int, Word] = {}
    for src, image in zip(h.b1_generators, h.phi_images):
        if len(src.letters) == 1 and src.letters[0][1] == 1:
            letter_map[src.letters[0][0]] = image

    def substitute(word: Word) -> Word | None:
        parts: tuple = ()
        for gen, exp in word.letters:
            if gen not in letter_map:
                return None
            parts += (letter_map[gen] ** exp).letters
        return word_from_letters(parts)

    for rel in h.base.relators:
        image = substitute(rel)
        if image is None:
            continue
        checked["relators"] += 1
        if not oracle.is_identity(image):
            raise DeclarationMismatch(
                f"phi does not kill the base relator {h.base.format(rel)!r}"
            )
    rng = random.Random(seed)
    m = len(h.b1_generators)
    if m == 0:
        return checked
    for _ in range(samples):
        u = _random_subgroup_word(rng, m, sample_length)
        v = _random_subgroup_word(rng, m, sample_length)
        gu = _apply_on_indices(u, h.b1_generators)
        gv = _apply_on_indices(v, h.b1_generators)
        pu = _apply_on_indices(u, h.phi_images)
        pv = _apply_on_indices(v, h.phi_images)
        checked["injectivity_pairs"] += 1
        if oracle.normal_form(pu) == oracle.normal_form(pv) \
                and oracle.normal_form(gu) != oracle.normal_form(gv):
            raise DeclarationMismatch(
                "phi identifies two B1 elements the oracle distinguishes; "
                "it is not injective"
            )
    return checked


def _random_subgroup_word(rng: random.Random, alphabet: int, length: int) -> Word:
    letters = []
    for _ in range(rng.randrange(length + 1)):
        letters.append((rng.randrange(alphabet), rng.choice((1, -1))))
    return word_from_letters(letters)


def _apply_on_indices(abstract: Word, targets: Sequence[Word]) -> Word:
    parts: tuple = ()
    for gen, exp in abstract.letters:
        parts += (targets[gen] ** exp).letters
    return word_from_letters(parts)


# ---------------------------------------------------------------------------
# HNN valuations


@dataclass(frozen=True)
class HnnValuation:
    """An evaluable map to the extended rationals, relative to a character.

    Axiom (a): v(g^-1) = v(g) + chi(g); axiom (b): v(gh) >= min(v(g),
    v(h) - chi(g)); non-trivial when the witness sequence produces kernel
    elements on which v drops without bound.
    """

    relative_character: Character
    evaluator: Callable[[Word], ExtendedRational]
    nontriviality_witness: Callable[[int], Word]
    description: str = ""

    def value(self, word: Word) -> ExtendedRational:
        return self.evaluator(word)


@dataclass(frozen=True)
class Violation:
    axiom: str
    words: tuple[Word, ...]
    lhs: ExtendedRational
    rhs: ExtendedRational

    def sort_key(self):
        return (sum(w.length for w in self.words),
                tuple(w.letters for w in self.words))


@dataclass(frozen=True)
class AxiomReport:
    words_checked: int
    pairs_checked: int
    violations_a: tuple[Violation, ...]
    violations_b: tuple[Violation, ...]
    witness_trace: tuple[ExtendedRational, ...]
    witness_in_kernel: bool
    witness_strictly_decreasing: bool

    @property
    def nontriviality_ok(self) -> bool:
        return (self.witness_in_kernel
                and self.witness_strictly_decreasing
                and all(not v.is_infinite for v in self.witness_trace))

    @property
    def passed(self) -> bool:
        return (not self.violations_a and not self.violations_b
                and self.nontriviality_ok)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}: {self.words_checked} words, "
                f"{self.pairs_checked} pairs, "
                f"{len(self.violations_a)} axiom-(a) violations, "
                f"{len(self.violations_b)} axiom-(b) violations, "
                f"nontriviality {'ok' if self.nontriviality_ok else 'FAILED'}")


def check_valuation_axioms(valuation: HnnValuation,
                           sample: Iterable[Word],
                           pair_budget: int | None = None,
                           witness_depth: int = 20,
                           seed: int = 0) -> AxiomReport:
    """Exact check of the valuation axioms over a word sample.

    All ordered pairs are checked when they fit in pair_budget (or the
    budget is None); otherwise a seeded uniform sample of pairs is used.
    Violations are reported sorted by total word length, then
    lexicographically, so reports are deterministic.
    """
    words = list(dict.fromkeys(sample))
    chi = valuation.relative_character
    values: dict[Word, ExtendedRational] = {}
    chis: dict[Word, Fraction] = {}

    def val(w: Word) -> ExtendedRational:
        out = values.get(w)
        if out is None:
            out = valuation.evaluator(w)
            values[w] = out
        return out

    def chival(w: Word) -> Fraction:
        out = chis.get(w)
        if out is None:
            out = chi.evaluate(w)
            chis[w] = out
        return out

    bad_a = []
    for g in words:
        lhs = val(g.inverse())
        rhs = val(g) + chival(g)
        if lhs != rhs:
            bad_a.append(Violation("a", (g,), lhs, rhs))

    n = len(words)
    if pair_budget is None or n * n <= pair_budget:
        pairs = itertools.product(words, words)
        pair_count = n * n
    else:
        rng = random.Random(seed)
        pairs = ((words[rng.randrange(n)], words[rng.randrange(n)])
                 for _ in range(pair_budget))
        pair_count = pair_budget

    bad_b = []
    for g, h in pairs:
        lhs = val(g * h)
        rhs = min(val(g), val(h) - chival(g))
        if lhs < rhs:
            bad_b.append(Violation("b", (g, h), lhs, rhs))

    trace = []
    in_kernel = True
    for k in range(1, witness_depth + 1):
        w = valuation.nontriviality_witness(k)
        trace.append(val(w))
        if chival(w) != 0:
            in_kernel = False
    decreasing = all(trace[i + 1] < trace[i] for i in range(len(trace) - 1)) \
        and bool(trace)

    return AxiomReport(
        words_checked=n,
        pairs_checked=pair_count,
        violations_a=tuple(sorted(bad_a, key=Violation.sort_key)),
        violations_b=tuple(sorted(bad_b, key=Violation.sort_key)),
        witness_trace=tuple(trace),
        witness_in_kernel=in_kernel,
        witness_strictly_decreasing=decreasing,
    )


# ---------------------------------------------------------------------------
# The Baumslag-Solitar family


def bs_decomposition(n: int,
                     symbols: tuple[str, str] = ("a", "t"),
                     stable_exponent: int = 1,
                     ambient_flags: GroupFlags | None = None) -> HnnDecomposition:
    """The standard descending reading of BS(1,n): base Z = <a>, phi(a) = a^n."""
    if n < 2:
        raise ValueError("BS(1,n) needs n >= 2")
    base = GroupPresentation((symbols[0],))
    a = Word(((0, 1),))
    return HnnDecomposition(
        base=base,
        stable_letter=symbols[1],
        b1_generators=(a,),
        phi_images=(a ** n,),
        b2_generators=(a ** n,),
        declared_b1_equals_base=TriState.TRUE,
        declared_b2_equals_base=TriState.FALSE,
        stable_exponent=stable_exponent,
        ambient_flags=ambient_flags or GroupFlags(),
        base_oracle=FreeAbelianOracle(1),
    )


def bs_valuation(n: int,
                 scale_sign: int = 1,
                 symbols: tuple[str, str] = ("a", "t")) -> HnnValuation:
    """The witness valuation certifying that the contracting ray of BS(1,n)
    misses the invariant.

    Relative to minus the associated character of the descending reading;
    v(g) is the normalized n-adic valuation of the translation part of g
    in the affine model, and witness(k) = tau^-k a tau^k has value -k.
    """
    if n < 2:
        raise ValueError("BS(1,n) needs n >= 2")
    if scale_sign not in (1, -1):
        raise ValueError("scale_sign must be +1 or -1")
    oracle = BsOracle(n, scale_sign=scale_sign)
    decomposition = bs_decomposition(n, symbols, stable_exponent=scale_sign)
    ambient = build_group(decomposition)
    relative = character_from_values(ambient, (0, -scale_sign))

    def evaluator(word: Word) -> ExtendedRational:
        return n_adic_valuation(oracle.evaluate(word).shift, n)

    def witness(k: int) -> Word:
        return word_from_letters(((1, -k * scale_sign), (0, 1), (1, k * scale_sign)))

    return HnnValuation(
        relative_character=relative,
        evaluator=evaluator,
        nontriviality_witness=witness,
        description=f"n-adic translation valuation on BS(1,{n})",
    )


def detect_bs_standard(decomposition: HnnDecomposition) -> tuple[int, int] | None:
    """Recognize either reading of the standard BS(1,n) decomposition.

    Returns (n, scale_sign) where the ambient stable letter scales the
    affine model by n^scale_sign, or None if the shape does not match.
    """
    h = decomposition
    if h.base.rank != 1 or h.base.relators or len(h.b1_generators) != 1:
        return None
    if h.b2_generators != h.phi_images:
        return None
    (src,) = h.b1_generators
    (img,) = h.phi_images
    if len(src.letters) != 1 or len(img.letters) != 1:
        return None
    e1 = src.letters[0][1]
    e2 = img.letters[0][1]
    if abs(e1) == 1 and e2 % e1 == 0 and e2 // e1 >= 2:
        # descending shape: tau a tau^-1 = a^n
        return e2 // e1, h.stable_exponent
    if abs(e2) == 1 and e1 % e2 == 0 and e1 // e2 >= 2:
        # ascending shape: tau a^n tau^-1 = a
        return e1 // e2, -h.stable_exponent
    return None


# ---------------------------------------------------------------------------
# Brown's criterion

PROVENANCE_DESCENDING = (
    "Brown's criterion: a descending HNN decomposition with finitely "
    "generated base group admits no non-trivial HNN valuation, so the "
    "associated ray (cleared to coprime integers) lies in Sigma(G)"
)
PROVENANCE_ASCENDING = (
    "Brown's criterion: a properly ascending HNN decomposition rules out "
    "every descending reading, so a non-trivial HNN valuation exists and "
    "the associated ray (cleared to coprime integers) lies outside Sigma(G)"
)


def brown_criterion(decomposition: HnnDecomposition,
                    depth: int = DEFAULT_SEARCH_DEPTH,
                    budget: int = DEFAULT_SEARCH_BUDGET) -> list[SigmaFact]:
    """Certified membership facts readable off the classification.

    Descending or non-proper with finitely generated base puts the
    associated ray inside the invariant; properly ascending puts it
    outside; an inconclusive shape yields no facts.
    """
    cls = classify(decomposition, depth, budget)
    ray = canonical_ray(associated_character(decomposition))
    if cls in (HnnClass.PROPERLY_DESCENDING, HnnClass.NON_PROPER):
        if not decomposition.base_finitely_generated:
            return []
        return [SigmaFact(ray, SigmaStatus.IN_SIGMA,
                          DescendingFgHNN(decomposition),
                          provenance=PROVENANCE_DESCENDING)]
    if cls is HnnClass.PROPERLY_ASCENDING:
        return [SigmaFact(ray, SigmaStatus.NOT_IN_SIGMA,
                          AscendingStructure(decomposition),
                          provenance=PROVENANCE_ASCENDING)]
    return []


PROVENANCE_VALUATION = (
    "a non-trivial HNN valuation passed the exact axiom check, and the "
    "existence of such a valuation places its ray outside Sigma(G)"
)


def certified_facts(decomposition: HnnDecomposition,
                    depth: int = DEFAULT_SEARCH_DEPTH,
                    budget: int = DEFAULT_SEARCH_BUDGET,
                    include_valuation: bool = True,
                    valuation_sample_length: int = 4,
                    witness_depth: int = 12) -> tuple[list[SigmaFact], list[str]]:
    """Everything the toolkit can certify from one decomposition file.

    Runs Brown's criterion on the given reading and on its stable-letter
    inverse, and, when asked and the decomposition is a standard BS(1,n)
    shape, independently verifies the witness valuation and adds its
    certificate.  Returns the facts plus notes about skipped steps.
    """
    notes: list[str] = []
    facts = list(brown_criterion(decomposition, depth, budget))
    try:
        inverse = stable_letter_inverse(decomposition)
    except NonInvertiblePhi as exc:
        inverse = None
        notes.append(f"stable-letter inversion skipped: {exc}")
    if inverse is not None:
        for fact in brown_criterion(inverse, depth, budget):
            if fact not in facts:
                facts.append(fact)
    if not include_valuation:
        return facts, notes
    detected = detect_bs_standard(decomposition)
    if detected is not None:
        n, scale_sign = detected
        valuation = bs_valuation(
            n, scale_sign=scale_sign,
            symbols=(decomposition.base.generators[0], decomposition.stable_letter),
        )
        sample = list(all_reduced_words(2, valuation_sample_length))
        report = check_valuation_axioms(valuation, sample,
                                        witness_depth=witness_depth)
        if report.passed:
            ray = canonical_ray(valuation.relative_character)
            facts.append(SigmaFact(ray, SigmaStatus.NOT_IN_SIGMA,
                                   ValuationWitness(valuation, report),
                                   provenance=PROVENANCE_VALUATION))
        else:
            notes.append("valuation axiom check FAILED; no witness "
                         "certificate emitted: " + report.summary())
    else:
        notes.append("no built-in valuation matches this decomposition shape")
    return facts, notes
