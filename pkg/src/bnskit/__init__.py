"""Exact-arithmetic toolkit for the BNS invariant of finitely presented
groups: certified membership via HNN decompositions and valuations,
finite Cayley-ball evidence, and Kahler-group obstruction verdicts."""

from .abelianization import AbelianizationData, abelianization, betti_number, smith_normal_form
from .cayley import (
    CayleyBall,
    ChiSubgraph,
    ConnectivityReport,
    build_ball,
    chi_subgraph,
    connectivity_evidence,
    export_graph,
)
from .facts import (
    AbelianQuotientRule,
    AscendingStructure,
    DescendingFgHNN,
    SigmaFact,
    SigmaStatus,
    UserAxiom,
    ValuationWitness,
)
from .hnn import (
    AxiomReport,
    HnnClass,
    HnnDecomposition,
    HnnValuation,
    associated_character,
    brown_criterion,
    bs_decomposition,
    bs_valuation,
    build_group,
    certified_facts,
    check_valuation_axioms,
    classify,
    detect_bs_standard,
    kernel_element,
    stable_letter_inverse,
)
from .inference import (
    FactStore,
    Verdict,
    VerdictKind,
    add_fact,
    render_proof,
    run_inference,
)
from .oracles import (
    AffineElement,
    ExtendedRational,
    WordOracle,
    n_adic_valuation,
    oracle_bs,
    oracle_direct_product,
    oracle_free,
    oracle_free_abelian,
)
from .presentation import (
    Character,
    GroupFlags,
    GroupPresentation,
    RayClass,
    TriState,
    antipode,
    canonical_ray,
    character_from_values,
    evaluate,
    exponent_matrix,
    ray_from_ints,
)
from .words import Word, format_word, free_reduce, parse_word, word_from_letters

__version__ = "0.1.0"
