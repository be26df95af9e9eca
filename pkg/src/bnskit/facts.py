"""Certified membership facts about rays of the character sphere.

A SigmaFact is a claim [chi] in Sigma(G) or [chi] not in Sigma(G) together
with the structural certificate that backs it.  Certificate types are tied
to the claim direction: a descending finitely-generated-base decomposition
only ever certifies membership, an ascending structure or a verified
valuation witness only ever certifies non-membership.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from .errors import MalformedCertificate
from .presentation import RayClass

if TYPE_CHECKING:
    from .hnn import AxiomReport, HnnDecomposition, HnnValuation


class SigmaStatus(enum.Enum):
    IN_SIGMA = "IN_SIGMA"
    NOT_IN_SIGMA = "NOT_IN_SIGMA"


@dataclass(frozen=True)
class DescendingFgHNN:
    """Descending (or non-proper) HNN decomposition with finitely
    generated base group; certifies membership."""

    decomposition: "HnnDecomposition"

    label = "DescendingFgHNN"


@dataclass(frozen=True)
class AscendingStructure:
    """Properly ascending HNN decomposition; certifies non-membership."""

    decomposition: "HnnDecomposition"

    label = "AscendingStructure"


@dataclass(frozen=True)
class ValuationWitness:
    """A non-trivial HNN valuation that passed the axiom checker;
    certifies non-membership independently of any decomposition."""

    valuation: "HnnValuation"
    report: "AxiomReport"

    label = "ValuationWitness"


@dataclass(frozen=True)
class AbelianQuotientRule:
    """Membership derived from a finitely generated commutator subgroup."""

    label = "AbelianQuotientRule"


@dataclass(frozen=True)
class UserAxiom:
    """An unverified user assertion, carried by name."""

    name: str

    label = "UserAxiom"


Certificate = Any  # one of the five dataclasses above


@dataclass(frozen=True)
class SigmaFact:
    ray: RayClass
    status: SigmaStatus
    certificate: Certificate
    provenance: str = ""

    def __post_init__(self):
        cert = self.certificate
        if isinstance(cert, DescendingFgHNN) and self.status is not SigmaStatus.IN_SIGMA:
            raise MalformedCertificate(
                "a descending decomposition certifies membership only"
            )
        if isinstance(cert, (AscendingStructure, ValuationWitness)) \
                and self.status is not SigmaStatus.NOT_IN_SIGMA:
            raise MalformedCertificate(
                f"{cert.label} certifies non-membership only"
            )
        if isinstance(cert, AbelianQuotientRule) and self.status is not SigmaStatus.IN_SIGMA:
            raise MalformedCertificate(
                "the abelian-quotient rule certifies membership only"
            )
        if isinstance(cert, ValuationWitness) and not cert.report.passed:
            raise MalformedCertificate(
                "a valuation witness must embed a PASS axiom report"
            )
        if not isinstance(cert, (DescendingFgHNN, AscendingStructure,
                                 ValuationWitness, AbelianQuotientRule, UserAxiom)):
            raise MalformedCertificate(f"unknown certificate {cert!r}")

    def describe(self) -> str:
        return (f"status={self.status.value} ray={self.ray} "
                f"certificate={self.certificate.label}")
