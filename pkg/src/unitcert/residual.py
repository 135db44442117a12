"""The split-prime residue pipeline.

Validates the congruence hypotheses on (p, q, s), builds the normalized Theta,
searches for a split prime with a valid place, decides the residual bit delta
by one Legendre symbol, and emits the complete rank-7 unit system together
with a fully auditable certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .arith import hilbert_symbol, is_prime, jacobi, local_basis, sqrt_mod
from .errors import (
    DenominatorNotInvertible,
    HypothesisViolation,
    InvalidPlace,
    NonUnitResidue,
    OracleDisagreement,
    SearchExhausted,
)
from .fields import (
    DEFAULT_PRECISION_BITS,
    OcticField,
    TowerElement,
    sqrt_octic,
    theta,
)
from .pell import QuadUnit, fundamental_pell

# Pell-unit convention recorded in every certificate: the smallest unit > 1 of
# Z[sqrt(d)], from the continued fraction of sqrt(d). A maximal-order
# convention would differ for some d and could flip delta.
EPS_CONVENTION = "pell-unit-of-Z[sqrt d]"

ALLOWED_BRANCHES = ((1, 1, 1), (-1, -1, 1))

DEFAULT_PRIME_BOUND = 100_000
DEFAULT_PRIME_COUNT = 50


@dataclass(frozen=True)
class ClassicalDatum:
    """Residues mod 8 and the three Legendre symbols attached to (p, q, s)."""

    p_mod8: int
    q_mod8: int
    s_mod8: int
    leg_q_p: int
    leg_s_p: int
    leg_q_s: int

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.p_mod8, self.q_mod8, self.s_mod8, self.leg_q_p, self.leg_s_p, self.leg_q_s)

    def branch(self) -> tuple[int, int, int]:
        return (self.leg_q_p, self.leg_s_p, self.leg_q_s)


def _check_triple(p: int, q: int, s: int) -> None:
    if len({p, q, s}) != 3 or any(n == 2 or not is_prime(n) for n in (p, q, s)):
        raise ValueError(f"({p}, {q}, {s}) must be distinct odd primes")


def classical_datum(p: int, q: int, s: int) -> ClassicalDatum:
    """The 6-tuple (p mod 8, q mod 8, s mod 8, (q/p), (s/p), (q/s))."""
    _check_triple(p, q, s)
    return ClassicalDatum(p % 8, q % 8, s % 8, jacobi(q, p), jacobi(s, p), jacobi(q, s))


def hypothesis_branch(p: int, q: int, s: int) -> tuple[int, int, int]:
    """Checks p = 7, q = s = 3 mod 8 and the Legendre pattern; returns the branch."""
    datum = classical_datum(p, q, s)
    if datum.p_mod8 != 7 or datum.q_mod8 != 3 or datum.s_mod8 != 3:
        raise HypothesisViolation(
            f"need p = 7 and q = s = 3 mod 8, got ({datum.p_mod8}, {datum.q_mod8}, {datum.s_mod8})"
        )
    br = datum.branch()
    if br not in ALLOWED_BRANCHES:
        raise HypothesisViolation(
            f"Legendre pattern {br} is outside the supported branches {ALLOWED_BRANCHES}"
        )
    return br


# -- split places ----------------------------------------------------------


@dataclass
class SplitPlace:
    """A place above an odd prime t split in the octic field: an embedding of
    the tower into F_t given by compatible residues of the three radicals."""

    t: int
    p: int
    q: int
    s: int
    r2: int
    rpq: int
    rps: int
    signs: tuple[int, int, int] = (1, 1, 1)
    residues: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        t, p = self.t, self.p
        if (2 * self.p * self.q * self.s) % t == 0:
            raise ValueError(f"t = {t} divides 2pqs")
        for r, m in ((self.r2, 2), (self.rpq, p * self.q), (self.rps, p * self.s)):
            if r * r % t != m % t:
                raise ValueError(f"{r}^2 is not {m} mod {t}")
        pinv = pow(p, -1, t)
        self.residues = {
            1: 1,
            2: self.r2,
            p * self.q: self.rpq,
            2 * p * self.q: self.r2 * self.rpq % t,
            p * self.s: self.rps,
            2 * p * self.s: self.r2 * self.rps % t,
            self.q * self.s: self.rpq * self.rps * pinv % t,
            2 * self.q * self.s: self.r2 * self.rpq * self.rps * pinv % t,
        }

    def key(self) -> tuple[int, tuple[int, int, int]]:
        return (self.t, self.signs)


def iter_split_primes(p: int, q: int, s: int, bound: int = DEFAULT_PRIME_BOUND) -> Iterator[int]:
    """Odd primes t below bound, coprime to 2pqs, split in Q(sqrt2, sqrt pq, sqrt ps)."""
    _check_triple(p, q, s)
    pq, ps = p * q, p * s
    for t in range(3, bound + 1, 2):
        if not is_prime(t) or (2 * p * q * s) % t == 0:
            continue
        if jacobi(2, t) == 1 and jacobi(pq, t) == 1 and jacobi(ps, t) == 1:
            yield t


def find_split_primes(p: int, q: int, s: int, count: int, bound: int = DEFAULT_PRIME_BOUND) -> list[int]:
    """The first `count` split primes below `bound`, ascending."""
    out = []
    for t in iter_split_primes(p, q, s, bound):
        out.append(t)
        if len(out) == count:
            return out
    raise SearchExhausted(f"only {len(out)} of {count} split primes below {bound}")


_SIGN_TRIPLES = tuple(
    (s2, spq, sps) for s2 in (1, -1) for spq in (1, -1) for sps in (1, -1)
)


def enumerate_places(t: int, p: int, q: int, s: int) -> list[SplitPlace]:
    """The eight places above a split prime t, ordered lexicographically by the
    sign choices on the canonical roots, all-canonical first."""
    c2 = sqrt_mod(2, t)
    cpq = sqrt_mod(p * q, t)
    cps = sqrt_mod(p * s, t)
    if not c2 or not cpq or not cps:
        raise ValueError(f"{t} does not split in the octic field for ({p}, {q}, {s})")
    places = []
    for s2, spq, sps in _SIGN_TRIPLES:
        places.append(
            SplitPlace(
                t, p, q, s,
                c2 if s2 > 0 else t - c2,
                cpq if spq > 0 else t - cpq,
                cps if sps > 0 else t - cps,
                signs=(s2, spq, sps),
            )
        )
    return places


def residue_at(x, place: SplitPlace) -> int:
    """Residue of a unit, biquadratic, or octic element at a split place."""
    t = place.t
    if isinstance(x, QuadUnit):
        if x.d not in place.residues:
            raise ValueError(f"sqrt({x.d}) has no residue at this place")
        return (x.x + x.y * place.residues[x.d]) % t
    if isinstance(x, TowerElement):
        total = 0
        for m, c in zip(x.tower.radicands, x.coords):
            if c == 0:
                continue
            if m not in place.residues:
                raise ValueError(f"sqrt({m}) has no residue at this place")
            if c.denominator % t == 0:
                raise DenominatorNotInvertible(f"denominator {c.denominator} not invertible mod {t}")
            val = c.numerator * pow(c.denominator, -1, t) % t
            total += val * place.residues[m]
        return total % t
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        if f.denominator % t == 0:
            raise DenominatorNotInvertible(f"denominator {f.denominator} not invertible mod {t}")
        return f.numerator * pow(f.denominator, -1, t) % t
    raise TypeError(f"cannot reduce {type(x).__name__} at a place")


# -- certificates ----------------------------------------------------------


@dataclass
class Generator:
    """One member of the unit system: a symbolic name plus the exact element
    when its square root was computed, with a flag and optional warning."""

    name: str
    element: TowerElement | None
    exact: bool
    mu: str | None = None
    warning: str | None = None

    def to_json_dict(self) -> dict:
        d = {
            "name": self.name,
            "element": None if self.element is None else self.element.to_text(),
            "exact": self.exact,
        }
        if self.mu is not None:
            d["mu"] = self.mu
        if self.warning is not None:
            d["warning"] = self.warning
        return d


@dataclass
class Certificate:
    """Complete audit trail of one residual-bit decision."""

    p: int
    q: int
    s: int
    datum: ClassicalDatum
    eps_convention: str
    hypotheses_verified: bool
    place: SplitPlace
    theta_residue: int
    eps_pq_residue: int
    legendre_theta: int
    legendre_eps: int
    delta: int
    mu: str
    fsu: list[Generator] | None
    oracle_checked: bool

    def __post_init__(self):
        if self.legendre_eps != -1:
            raise InvalidPlace("certificate place must have eps_pq a local nonsquare")
        if self.delta != (0 if self.legendre_theta == 1 else 1):
            raise ValueError("delta is inconsistent with the Legendre bit")
        if self.mu != ("1" if self.delta == 0 else "eps_pq"):
            raise ValueError("mu is inconsistent with delta")

    def to_json_dict(self) -> dict:
        place = self.place
        return {
            "triple": {"p": str(self.p), "q": str(self.q), "s": str(self.s)},
            "datum": {
                "p_mod8": self.datum.p_mod8,
                "q_mod8": self.datum.q_mod8,
                "s_mod8": self.datum.s_mod8,
                "legendre_q_p": self.datum.leg_q_p,
                "legendre_s_p": self.datum.leg_s_p,
                "legendre_q_s": self.datum.leg_q_s,
            },
            "eps_convention": self.eps_convention,
            "hypotheses_verified": self.hypotheses_verified,
            "place": {
                "t": str(place.t),
                "signs": list(place.signs),
                "r2": str(place.r2),
                "rpq": str(place.rpq),
                "rps": str(place.rps),
                "r2pq": str(place.residues[2 * place.p * place.q]),
                "r2ps": str(place.residues[2 * place.p * place.s]),
                "rqs": str(place.residues[place.q * place.s]),
                "r2qs": str(place.residues[2 * place.q * place.s]),
            },
            "theta_residue": str(self.theta_residue),
            "eps_pq_residue": str(self.eps_pq_residue),
            "legendre_theta": self.legendre_theta,
            "legendre_eps": self.legendre_eps,
            "delta": self.delta,
            "mu": self.mu,
            "fsu": None if self.fsu is None else [g.to_json_dict() for g in self.fsu],
            "oracle_checked": self.oracle_checked,
        }


@dataclass
class PlaceDecision:
    """Evaluation of one (t, place) pair: validity and, when valid, the bit."""

    place: SplitPlace
    eps_residue: int
    legendre_eps: int
    valid: bool
    theta_residue: int | None = None
    legendre_theta: int | None = None
    delta: int | None = None


def survey_places(
    p: int,
    q: int,
    s: int,
    prime_bound: int = DEFAULT_PRIME_BOUND,
    prime_count: int = DEFAULT_PRIME_COUNT,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    cache: dict[int, QuadUnit] | None = None,
    theta_elem: TowerElement | None = None,
) -> list[PlaceDecision]:
    """Evaluate every place above the first split primes; delta at valid ones."""
    if theta_elem is None:
        theta_elem = theta(p, q, s, precision_bits, cache)
    eps_pq = fundamental_pell(p * q, cache)
    out = []
    seen = 0
    for t in iter_split_primes(p, q, s, prime_bound):
        seen += 1
        if seen > prime_count:
            break
        for place in enumerate_places(t, p, q, s):
            r_eps = residue_at(eps_pq, place)
            leg_eps = jacobi(r_eps, t)
            if leg_eps != -1:
                out.append(PlaceDecision(place, r_eps, leg_eps, valid=False))
                continue
            try:
                r_theta = residue_at(theta_elem, place)
            except DenominatorNotInvertible:
                break
            if r_theta == 0:
                break
            leg_theta = jacobi(r_theta, t)
            out.append(
                PlaceDecision(
                    place, r_eps, leg_eps, True, r_theta, leg_theta,
                    0 if leg_theta == 1 else 1,
                )
            )
    return out


def _fsu_generators(
    octic: OcticField,
    theta_elem: TowerElement,
    mu: str,
    xi: TowerElement | None,
    precision_bits: int,
    cache: dict[int, QuadUnit] | None,
) -> list[Generator]:
    p, q, s = octic.p, octic.q, octic.s
    emb = octic.from_quad_unit
    e2 = emb(fundamental_pell(2, cache))
    e_pq = emb(fundamental_pell(p * q, cache))
    e_ps = emb(fundamental_pell(p * s, cache))
    e_qs = emb(fundamental_pell(q * s, cache))
    e_2qs = emb(fundamental_pell(2 * q * s, cache))
    e_2pq = emb(fundamental_pell(2 * p * q, cache))

    def rooted(name: str, product: TowerElement, mu_tag: str | None = None) -> Generator:
        from .errors import PrecisionExhausted
        from .fields import sqrt_preferring_subfield

        try:
            root = sqrt_preferring_subfield(product, precision_bits)
        except PrecisionExhausted:
            return Generator(name, None, False, mu_tag, "precision cap reached; emitted symbolically")
        if root is None:
            return Generator(
                name, None, False, mu_tag,
                "not a square in the octic field; hypothesis or convention mismatch",
            )
        return Generator(name, root, True, mu_tag)

    mu_theta = theta_elem if mu == "1" else e_pq * theta_elem
    xi_gen = (
        Generator("xi", xi, True, mu)
        if xi is not None
        else rooted("xi", mu_theta, mu)
    )
    return [
        Generator("eps_2", e2, True),
        Generator("eps_pq", e_pq, True),
        rooted("sqrt(eps_pq*eps_ps)", e_pq * e_ps),
        rooted("sqrt(eps_pq*eps_qs)", e_pq * e_qs),
        rooted("sqrt(eps_2qs)", e_2qs),
        rooted("sqrt(eps_pq*eps_2pq)", e_pq * e_2pq),
        xi_gen,
    ]


def delta(
    p: int,
    q: int,
    s: int,
    prime_bound: int = DEFAULT_PRIME_BOUND,
    prime_count: int = DEFAULT_PRIME_COUNT,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    force: bool = False,
    oracle: bool | None = None,
    with_fsu: bool = True,
    cache: dict[int, QuadUnit] | None = None,
) -> Certificate:
    """Decide the residual bit delta(p, q, s) and certify it.

    Iterates (split prime, place) pairs in deterministic order, selects the
    first place where eps_pq has nonsquare residue, and reads delta off the
    Legendre symbol of the Theta residue. With `force` the congruence check is
    downgraded to a certificate flag and the exact square-root cross-check is
    switched on. The cross-check recomputes the decision globally: exactly one
    of Theta and eps_pq*Theta must have an exact root.
    """
    hypotheses_verified = True
    try:
        hypothesis_branch(p, q, s)
    except HypothesisViolation:
        if not force:
            raise
        hypotheses_verified = False
    oracle_on = bool(oracle)
    if not hypotheses_verified:
        oracle_on = True

    datum = classical_datum(p, q, s)
    theta_elem = theta(p, q, s, precision_bits, cache)
    eps_pq = fundamental_pell(p * q, cache)

    chosen = None
    seen = 0
    for t in iter_split_primes(p, q, s, prime_bound):
        seen += 1
        if seen > prime_count:
            break
        for place in enumerate_places(t, p, q, s):
            r_eps = residue_at(eps_pq, place)
            if jacobi(r_eps, t) != -1:
                continue
            try:
                r_theta = residue_at(theta_elem, place)
            except DenominatorNotInvertible:
                break  # pick another t
            if r_theta == 0:
                break  # cannot happen for a unit; defend against bad inputs
            chosen = (place, r_eps, r_theta)
            break
        if chosen:
            break
    if not chosen:
        raise SearchExhausted(
            f"no valid place below t = {prime_bound} (first {prime_count} split primes)"
        )

    place, r_eps, r_theta = chosen
    leg_theta = jacobi(r_theta, place.t)
    bit = 0 if leg_theta == 1 else 1
    mu = "1" if bit == 0 else "eps_pq"

    xi = None
    if oracle_on:
        octic = theta_elem.tower
        e_pq_elem = octic.from_quad_unit(eps_pq)
        square_candidate = theta_elem if bit == 0 else e_pq_elem * theta_elem
        other_candidate = e_pq_elem * theta_elem if bit == 0 else theta_elem
        xi = sqrt_octic(square_candidate, precision_bits)
        if xi is None:
            raise OracleDisagreement(
                f"residue criterion gives delta = {bit} but mu*Theta has no exact root"
            )
        if sqrt_octic(other_candidate, precision_bits) is not None:
            raise OracleDisagreement("both squareclass candidates have exact roots")

    fsu_list = None
    if with_fsu:
        fsu_list = _fsu_generators(
            theta_elem.tower, theta_elem, mu, xi, precision_bits, cache
        )

    return Certificate(
        p=p, q=q, s=s,
        datum=datum,
        eps_convention=EPS_CONVENTION,
        hypotheses_verified=hypotheses_verified,
        place=place,
        theta_residue=r_theta,
        eps_pq_residue=r_eps,
        legendre_theta=leg_theta,
        legendre_eps=-1,
        delta=bit,
        mu=mu,
        fsu=fsu_list,
        oracle_checked=oracle_on,
    )


def fsu(p: int, q: int, s: int, **options) -> list[Generator]:
    """The seven-generator unit system of the octic field, exact where possible."""
    return delta(p, q, s, with_fsu=True, **options).fsu


def decide_mu_hilbert(
    p: int,
    q: int,
    s: int,
    place: SplitPlace,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    cache: dict[int, QuadUnit] | None = None,
) -> tuple[str, tuple[int, int], int]:
    """Alternate decision path through Hilbert symbols at one place.

    Evaluates the local test vector of Theta against the basis (t, u) of the
    completion at the place; mu = "1" exactly when every symbol is trivial.
    Also returns the single basis element b with (eps_pq, b) = -1, which
    realizes the one-functional certification of the pair of candidates.
    Agreement with the Legendre path is an invariant, since the residue of
    Theta is a unit and only the uniformizer component can be nontrivial.
    """
    t, u = local_basis(place.t)
    eps_pq = fundamental_pell(p * q, cache)
    r_eps = residue_at(eps_pq, place)
    if jacobi(r_eps, t) != -1:
        raise InvalidPlace(f"eps_pq is a square at the place above {t}")
    theta_elem = theta(p, q, s, precision_bits, cache)
    r_theta = residue_at(theta_elem, place)
    if r_theta == 0:
        raise NonUnitResidue("Theta has zero residue at the place")
    vector = (
        0 if hilbert_symbol(r_theta, t, t) == 1 else 1,
        0 if hilbert_symbol(r_theta, u, t) == 1 else 1,
    )
    mu = "1" if vector == (0, 0) else "eps_pq"
    b = t if hilbert_symbol(r_eps, t, t) == -1 else u
    return mu, vector, b


def noncollapse_check(
    triple1: tuple[int, int, int],
    triple2: tuple[int, int, int],
    **options,
) -> tuple[bool, dict]:
    """True when the classical data agree but the residual bits differ."""
    c1 = delta(*triple1, with_fsu=False, **options)
    c2 = delta(*triple2, with_fsu=False, **options)
    same_datum = c1.datum == c2.datum
    differs = c1.delta != c2.delta
    report = {
        "triple1": {"triple": triple1, "datum": c1.datum.as_tuple(), "delta": c1.delta},
        "triple2": {"triple": triple2, "datum": c2.datum.as_tuple(), "delta": c2.delta},
        "datum_equal": same_datum,
        "delta_differs": differs,
        "certificates": (c1, c2),
    }
    return same_datum and differs, report
