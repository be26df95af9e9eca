"""Forward-chaining inference over certified membership facts.

The store holds SigmaFacts; run_inference applies rules R1..R7 in a fixed
order to a fixed point and returns verdicts whose proof chains cite the
literature result each step rests on.  Undecidable hypotheses (amenability,
absence of free subgroups, the Kahler claim, a finitely generated
commutator subgroup) only ever enter through user-declared flags, and
every verdict records which flags it assumed.

Contradiction is a first-class verdict: refuting a declared flag is how
the toolkit rejects hypotheses, so inconsistent inputs are reported, not
raised.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .facts import (
    AbelianQuotientRule,
    AscendingStructure,
    DescendingFgHNN,
    SigmaFact,
    SigmaStatus,
    UserAxiom,
    ValuationWitness,
)
from .hnn import is_stable_letter_inverse_pair
from .presentation import GroupFlags, RayClass, TriState, antipode

# Rule citations.  Each anchors the literature statement the rule encodes;
# render_proof prints them verbatim so a verdict is auditable.
CITE_R1 = ("Bieri-Neumann-Strebel Theorem C: a finitely presented group with "
           "no nonabelian free subgroups has Sigma(G) united with -Sigma(G) "
           "covering the whole character sphere S(G)")
CITE_R2 = ("Delzant's corollary: every Kahler group has symmetric BNS "
           "invariant, Sigma(G) = -Sigma(G)")
CITE_R3 = ("Bieri-Neumann-Strebel Theorem B1, commutator case: G' is "
           "finitely generated if and only if Sigma(G) = S(G)")
CITE_R4_DESCENDING = ("Brown's criterion: the descending finitely-generated-"
                      "base reading certifies membership of its associated ray")
CITE_R4_INVERSION = ("taking the stable letter s=t^-1 instead turns the "
                     "descending reading into a properly ascending one, whose "
                     "associated ray is the antipode and lies outside Sigma(G)")
CITE_R4_SYMMETRY = ("Napier-Ramachandran obstruction: certified asymmetry of "
                    "the invariant refutes the Kahler property, since every "
                    "Kahler group has symmetric BNS invariant")
CITE_R5 = ("Delzant's theorem via Napier-Ramachandran: for a Kahler group, a "
           "certified exceptional ray comes from a holomorphic map with "
           "connected fibers onto a hyperbolic Riemann orbifold; no geometry "
           "is computed here, the consequence is recorded as cited")
CITE_R6 = ("amenable case: a Kahler group that does not contain any free "
           "nonabelian subgroup has Sigma(G) = S(G), so a certified "
           "exceptional ray refutes the Kahler claim")
CITE_R7 = ("Brown's criterion, moreover clause: once a descending finitely-"
           "generated-base reading certifies a ray, every HNN decomposition "
           "with that associated character is descending; conflicting "
           "certified membership is impossible")


class VerdictKind(enum.Enum):
    NOT_KAHLER = "NotKahler"
    FIBERS_OVER_HYPERBOLIC_ORBIFOLD = "FibersOverHyperbolicOrbifold"
    CONTRADICTION = "Contradiction"
    CONSISTENT = "Consistent"


@dataclass(frozen=True)
class ProofStep:
    rule: str
    facts: tuple[SigmaFact, ...]
    citation: str
    note: str = ""


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    proof_chain: tuple[ProofStep, ...]
    assumed_flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class FactStore:
    """Immutable fact collection; adding returns a new store."""

    facts: tuple[SigmaFact, ...] = ()

    def with_fact(self, fact: SigmaFact) -> "FactStore":
        if fact in self.facts:
            return self
        return FactStore(self.facts + (fact,))

    def with_facts(self, facts: Iterable[SigmaFact]) -> "FactStore":
        store = self
        for fact in facts:
            store = store.with_fact(fact)
        return store

    def rays(self) -> list[RayClass]:
        seen = []
        for fact in self.facts:
            if fact.ray not in seen:
                seen.append(fact.ray)
        return sorted(seen, key=lambda r: r.values)

    def by_status(self, ray: RayClass, status: SigmaStatus) -> list[SigmaFact]:
        return [f for f in self.facts if f.ray == ray and f.status is status]

    def pending_conflicts(self) -> list[RayClass]:
        return [ray for ray in self.rays()
                if self.by_status(ray, SigmaStatus.IN_SIGMA)
                and self.by_status(ray, SigmaStatus.NOT_IN_SIGMA)]


def add_fact(store: FactStore, fact: SigmaFact) -> FactStore:
    """Idempotent for identical facts; conflicting statuses are both kept,
    with contradiction detection deferred to run_inference."""
    return store.with_fact(fact)


def run_inference(store: FactStore,
                  flags: GroupFlags,
                  queried_rays: Sequence[RayClass] = ()) -> tuple[Verdict, ...]:
    """Apply R1..R7 in order until nothing new fires.

    Only R3 ever derives new membership facts; every other Sigma-fact must
    arrive with a structural certificate.  When no rule produces a verdict
    the result is the single Consistent verdict with an empty chain.
    """
    verdicts: list[Verdict] = []

    def emit(verdict: Verdict):
        if verdict not in verdicts:
            verdicts.append(verdict)

    changed = True
    while changed:
        changed = False

        # R1: two certified exceptional antipodal rays cannot coexist
        # without nonabelian free subgroups.
        if flags.no_nonabelian_free_subgroups is TriState.TRUE:
            for ray in store.rays():
                if ray.values > antipode(ray).values:
                    continue  # handle each antipodal pair once
                outs = store.by_status(ray, SigmaStatus.NOT_IN_SIGMA)
                opposite = store.by_status(antipode(ray), SigmaStatus.NOT_IN_SIGMA)
                if outs and opposite:
                    emit(Verdict(
                        VerdictKind.CONTRADICTION,
                        (ProofStep("R1", (outs[0], opposite[0]), CITE_R1,
                                   note=f"both {ray} and {antipode(ray)} are "
                                        "certified outside Sigma(G)"),),
                        assumed_flags=("no_nonabelian_free_subgroups=true",),
                    ))

        # R2: a Kahler claim plus certified asymmetry.
        if flags.claimed_kahler is TriState.TRUE:
            for ray in store.rays():
                ins = store.by_status(ray, SigmaStatus.IN_SIGMA)
                outs = store.by_status(antipode(ray), SigmaStatus.NOT_IN_SIGMA)
                if ins and outs:
                    emit(Verdict(
                        VerdictKind.NOT_KAHLER,
                        (ProofStep("R2", (ins[0], outs[0]), CITE_R2,
                                   note=f"{ray} is inside but its antipode "
                                        f"{antipode(ray)} is outside"),),
                        assumed_flags=("claimed_kahler=true",),
                    ))

        # R3: finitely generated commutator subgroup means Sigma(G) = S(G).
        if flags.commutator_fg is TriState.TRUE:
            for ray in queried_rays:
                fact = SigmaFact(ray, SigmaStatus.IN_SIGMA, AbelianQuotientRule(),
                                 provenance=CITE_R3)
                if fact not in store.facts:
                    store = store.with_fact(fact)
                    changed = True
            for fact in store.facts:
                if fact.status is SigmaStatus.NOT_IN_SIGMA:
                    emit(Verdict(
                        VerdictKind.CONTRADICTION,
                        (ProofStep("R3", (fact,), CITE_R3,
                                   note="an exceptional ray is certified while "
                                        "G' is declared finitely generated"),),
                        assumed_flags=("commutator_fg=true",),
                    ))

        # R4: one decomposition family certifies both sides of an
        # asymmetry; no Kahler claim is needed.
        for ray in store.rays():
            for in_fact in store.by_status(ray, SigmaStatus.IN_SIGMA):
                if not isinstance(in_fact.certificate, DescendingFgHNN):
                    continue
                for out_fact in store.by_status(antipode(ray),
                                                SigmaStatus.NOT_IN_SIGMA):
                    if not isinstance(out_fact.certificate, AscendingStructure):
                        continue
                    if not is_stable_letter_inverse_pair(
                            in_fact.certificate.decomposition,
                            out_fact.certificate.decomposition):
                        continue
                    emit(Verdict(
                        VerdictKind.NOT_KAHLER,
                        (
                            ProofStep("R4", (in_fact,), CITE_R4_DESCENDING),
                            ProofStep("R4", (out_fact,), CITE_R4_INVERSION),
                            ProofStep("R4", (in_fact, out_fact), CITE_R4_SYMMETRY,
                                      note=f"Sigma(G) contains {ray} but not "
                                           f"{antipode(ray)}"),
                        ),
                    ))

        # R5: a Kahler claim plus an ascending structure forces a fibration.
        if flags.claimed_kahler is TriState.TRUE:
            for fact in store.facts:
                if fact.status is SigmaStatus.NOT_IN_SIGMA \
                        and isinstance(fact.certificate, AscendingStructure):
                    emit(Verdict(
                        VerdictKind.FIBERS_OVER_HYPERBOLIC_ORBIFOLD,
                        (ProofStep("R5", (fact,), CITE_R5),),
                        assumed_flags=("claimed_kahler=true",),
                    ))

        # R6: amenable Kahler groups have no exceptional rays at all.
        if flags.amenable is TriState.TRUE \
                and flags.claimed_kahler is TriState.TRUE:
            for fact in store.facts:
                if fact.status is SigmaStatus.NOT_IN_SIGMA:
                    emit(Verdict(
                        VerdictKind.NOT_KAHLER,
                        (ProofStep("R6", (fact,), CITE_R6),),
                        assumed_flags=("amenable=true", "claimed_kahler=true"),
                    ))

        # R7: conflicting certified membership for one ray.
        for ray in store.pending_conflicts():
            ins = store.by_status(ray, SigmaStatus.IN_SIGMA)
            outs = store.by_status(ray, SigmaStatus.NOT_IN_SIGMA)
            emit(Verdict(
                VerdictKind.CONTRADICTION,
                (ProofStep("R7", (ins[0], outs[0]), CITE_R7,
                           note=f"{ray} is certified both inside and outside "
                                "Sigma(G)"),),
            ))

    if not verdicts:
        return (Verdict(VerdictKind.CONSISTENT, ()),)
    return tuple(verdicts)


def render_proof(verdict: Verdict) -> str:
    lines = [f"verdict: {verdict.kind.value}"]
    if verdict.assumed_flags:
        lines.append("  assumed flags: " + ", ".join(verdict.assumed_flags))
    for i, step in enumerate(verdict.proof_chain, start=1):
        facts = "; ".join(f.describe() for f in step.facts)
        lines.append(f"  [{i}] rule {step.rule}: {facts}")
        if step.note:
            lines.append(f"      note: {step.note}")
        lines.append(f"      cites: {step.citation}")
    if not verdict.proof_chain:
        lines.append("  (no steps)")
    return "\n".join(lines)
