"""unitcert: exact-arithmetic certification of the residual unit-group bit in
the totally real octic fields Q(sqrt2, sqrt pq, sqrt ps), plus the general
local machinery for separating squareclass candidates by finitely many
Hilbert-symbol bits at split places."""

from .arith import hilbert_symbol, is_prime, jacobi, local_basis, sqrt_mod
from .certify import (
    AffineCertificate,
    SeparationCertificate,
    TestFunctional,
    certify_affine,
    separate_candidates,
    test_vector,
)
from .errors import (
    DenominatorNotInvertible,
    HypothesisViolation,
    Inseparable,
    InvalidPlace,
    NonUnitResidue,
    NotASquareInBiquad,
    OracleDisagreement,
    PrecisionExhausted,
    RankDeficient,
    SearchExhausted,
    UnitCertError,
)
from .fields import (
    BiquadField,
    OcticField,
    Tower,
    TowerElement,
    biquad_unit_index,
    embed_real,
    octic_mul,
    sqrt_biquad,
    sqrt_exact,
    sqrt_octic,
    theta,
    theta_factors,
)
from .pell import QuadUnit, fundamental_pell, is_squarefree, load_cache, save_cache
from .residual import (
    Certificate,
    ClassicalDatum,
    Generator,
    PlaceDecision,
    SplitPlace,
    classical_datum,
    decide_mu_hilbert,
    delta,
    enumerate_places,
    find_split_primes,
    fsu,
    hypothesis_branch,
    iter_split_primes,
    noncollapse_check,
    residue_at,
    survey_places,
)

__version__ = "0.1.0"

__all__ = [
    "AffineCertificate", "BiquadField", "Certificate", "ClassicalDatum",
    "DenominatorNotInvertible", "Generator", "HypothesisViolation",
    "Inseparable", "InvalidPlace", "NonUnitResidue", "NotASquareInBiquad",
    "OcticField", "OracleDisagreement", "PlaceDecision", "PrecisionExhausted",
    "QuadUnit", "RankDeficient", "SearchExhausted", "SeparationCertificate",
    "SplitPlace", "TestFunctional", "Tower", "TowerElement", "UnitCertError",
    "biquad_unit_index", "certify_affine", "classical_datum",
    "decide_mu_hilbert", "delta", "embed_real", "enumerate_places",
    "find_split_primes", "fsu", "fundamental_pell", "hilbert_symbol",
    "hypothesis_branch", "is_prime", "is_squarefree", "iter_split_primes",
    "jacobi", "load_cache", "local_basis", "noncollapse_check", "octic_mul",
    "residue_at", "save_cache", "separate_candidates", "sqrt_biquad",
    "sqrt_exact", "sqrt_mod", "sqrt_octic", "survey_places", "test_vector",
    "theta", "theta_factors",
]
