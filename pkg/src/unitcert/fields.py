"""Exact arithmetic in real multiquadratic towers.

Covers the biquadratic fields Q(sqrt a, sqrt b) and the octic field
Q(sqrt2, sqrt pq, sqrt ps): basis multiplication, real embeddings at arbitrary
precision, exact algebraic square roots with mandatory verification, the
normalized generator product Theta, and the biquadratic unit-index square test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd

from . import _interval as iv
from .errors import NotASquareInBiquad, PrecisionExhausted
from .pell import QuadUnit, fundamental_pell, is_squarefree

DEFAULT_PRECISION_BITS = 256
MAX_PRECISION_BITS = 16384
# Coordinates of integral elements in these towers have dyadic denominators
# dividing 4; the bound limits completeness only, never soundness.
MAX_COORD_DENOMINATOR = 4


def _square_decompose(m: int) -> tuple[int, int]:
    """Write m = g^2 * r with r squarefree; returns (g, r)."""
    g, r, k = 1, m, 2
    while k * k <= r:
        while r % (k * k) == 0:
            r //= k * k
            g *= k
        k += 1
    return g, r


class Tower:
    """The field Q(sqrt g_1, ..., sqrt g_k) for multiplicatively independent
    squarefree generators, with basis the squarefree parts of subset products
    in subset-binary order."""

    def __init__(self, generators: tuple[int, ...]):
        gens = tuple(int(g) for g in generators)
        for g in gens:
            if g <= 1 or not is_squarefree(g):
                raise ValueError(f"generator {g} must be a squarefree integer > 1")
        k = len(gens)
        radicands = []
        for mask in range(1 << k):
            m = 1
            for j in range(k):
                if mask >> j & 1:
                    m *= gens[j]
            radicands.append(_square_decompose(m)[1])
        if len(set(radicands)) != len(radicands):
            raise ValueError(f"generators {gens} are not independent modulo squares")
        self.generators = gens
        self.radicands = tuple(radicands)
        self.degree = 1 << k
        self._index = {m: i for i, m in enumerate(radicands)}
        table = []
        for mi in radicands:
            row = []
            for mj in radicands:
                g, r = _square_decompose(mi * mj)
                row.append((g, self._index[r]))
            table.append(tuple(row))
        self._table = tuple(table)
        self.tokens = tuple("1" if m == 1 else f"r{m}" for m in radicands)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tower) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        inside = ", ".join(f"sqrt{g}" for g in self.generators)
        return f"Q({inside})"

    # -- elements ---------------------------------------------------------

    def element(self, coords) -> TowerElement:
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(cs)}")
        return TowerElement(self, cs)

    def zero(self) -> TowerElement:
        return self.element([0] * self.degree)

    def one(self) -> TowerElement:
        return self.from_rational(1)

    def from_rational(self, c) -> TowerElement:
        coords = [Fraction(c)] + [Fraction(0)] * (self.degree - 1)
        return self.element(coords)

    def from_quad_unit(self, u: QuadUnit) -> TowerElement:
        if u.d not in self._index:
            raise ValueError(f"sqrt({u.d}) does not lie in {self!r}")
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(u.x)
        coords[self._index[u.d]] = Fraction(u.y)
        return TowerElement(self, tuple(coords))

    def lift(self, x: TowerElement) -> TowerElement:
        """Embed an element of a subtower whose radicands all occur here."""
        coords = [Fraction(0)] * self.degree
        for m, c in zip(x.tower.radicands, x.coords):
            if m not in self._index:
                raise ValueError(f"sqrt({m}) does not lie in {self!r}")
            coords[self._index[m]] = c
        return TowerElement(self, tuple(coords))

    # -- embeddings -------------------------------------------------------

    def embeddings(self) -> list[tuple[int, ...]]:
        """All real embeddings as sign tuples over the generators; the
        distinguished all-positive embedding comes first."""
        return list(product((1, -1), repeat=len(self.generators)))

    def iota0(self) -> tuple[int, ...]:
        return (1,) * len(self.generators)

    def basis_sign(self, i: int, signs: tuple[int, ...]) -> int:
        """Sign picked up by the i-th basis radical under an embedding."""
        sg = 1
        for j, s in enumerate(signs):
            if i >> j & 1 and s < 0:
                sg = -sg
        return sg


class TowerElement:
    """Element of a Tower with exact rational coordinates."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower: Tower, coords: tuple[Fraction, ...]):
        self.tower = tower
        self.coords = coords

    def __repr__(self) -> str:
        return f"<{self.to_text()} in {self.tower!r}>"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TowerElement)
            and self.tower == other.tower
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.tower, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _coerce(self, other) -> TowerElement | None:
        if isinstance(other, TowerElement):
            if other.tower != self.tower:
                raise ValueError("elements live in different towers")
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower.from_rational(other)
        return None

    def __add__(self, other) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __neg__(self) -> TowerElement:
        return TowerElement(self.tower, tuple(-c for c in self.coords))

    def __mul__(self, other) -> TowerElement:
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return TowerElement(self.tower, tuple(c * f for c in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.tower.degree
        table = self.tower._table
        out = [Fraction(0)] * n
        for i, ci in enumerate(self.coords):
            if ci == 0:
                continue
            for j, cj in enumerate(o.coords):
                if cj == 0:
                    continue
                g, k = table[i][j]
                out[k] += ci * cj * g
        return TowerElement(self.tower, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TowerElement:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_text(self) -> str:
        """Canonical textual form "c0 + c1*r2 + ..." with exact rationals."""
        parts = []
        for c, tok in zip(self.coords, self.tower.tokens):
            rat = str(c)
            parts.append(rat if tok == "1" else f"{rat}*{tok}")
        return " + ".join(parts)


class BiquadField(Tower):
    """Real biquadratic field Q(sqrt a, sqrt b) with a, b, ab squarefree."""

    def __init__(self, a: int, b: int):
        if gcd(a, b) != 1:
            raise ValueError(f"need ab squarefree, got gcd({a},{b}) > 1")
        super().__init__((a, b))
        self.a, self.b = a, b


class OcticField(Tower):
    """The degree-8 field Q(sqrt2, sqrt pq, sqrt ps) for distinct odd primes."""

    def __init__(self, p: int, q: int, s: int):
        from .arith import is_prime

        if len({p, q, s}) != 3 or any(n == 2 or not is_prime(n) for n in (p, q, s)):
            raise ValueError(f"({p}, {q}, {s}) must be distinct odd primes")
        super().__init__((2, p * q, p * s))
        self.p, self.q, self.s = p, q, s
        self.tokens = ("1", "r2", "rpq", "r2pq", "rps", "r2ps", "rqs", "r2qs")


def octic_mul(a: TowerElement, b: TowerElement) -> TowerElement:
    """Exact product of two octic elements (same field required)."""
    if a.tower != b.tower:
        raise ValueError("elements live in different fields")
    return a * b


# -- real embeddings ------------------------------------------------------


def _radical_ivs(tower: Tower, bits: int) -> list[iv.Iv]:
    return [iv.iv_sqrt_int(m, bits) for m in tower.radicands]


def _embed_iv(x: TowerElement, signs: tuple[int, ...], rads: list[iv.Iv], bits: int) -> iv.Iv:
    total = (0, 0)
    for i, c in enumerate(x.coords):
        if c == 0:
            continue
        sg = x.tower.basis_sign(i, signs)
        total = iv.iv_add(total, iv.iv_scale(rads[i], c if sg > 0 else -c))
    return total


def embed_real(
    x: TowerElement,
    signs: tuple[int, ...] | None = None,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> Fraction:
    """Evaluate an element under a real embedding to the requested precision.

    The embedding is a choice of sign for each generating radical; omitting it
    selects the distinguished all-positive embedding. The returned rational is
    the midpoint of a rigorous enclosure whose relative width is below
    2^(8 - precision_bits); the working precision is raised internally when
    cancellation (tiny conjugates of units) makes that necessary.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    tower = x.tower
    if signs is None:
        signs = tower.iota0()
    if len(signs) != len(tower.generators) or any(s not in (1, -1) for s in signs):
        raise ValueError(f"embedding must be a sign tuple of length {len(tower.generators)}")
    if x.is_zero():
        return Fraction(0)
    signs = tuple(signs)
    bits = precision_bits
    while True:
        rads = _radical_ivs(tower, bits)
        enc = _embed_iv(x, signs, rads, bits)
        lo, hi = iv.iv_endpoints(enc, bits)
        mid = iv.iv_mid(enc, bits)
        # nonzero element, injective embedding: the loop must terminate
        if (lo > 0 or hi < 0) and hi - lo <= abs(mid) * Fraction(1, 1 << (precision_bits - 8)):
            return mid
        bits *= 2
        if bits > max(MAX_PRECISION_BITS, 8 * precision_bits):
            raise PrecisionExhausted("embedding enclosure did not converge")


# -- exact square roots ---------------------------------------------------

_AMBIGUOUS = object()


def _simplest_in(lo: Fraction, hi: Fraction, depth: int = 0) -> Fraction | None:
    """Smallest-denominator rational in [lo, hi] by the continued-fraction walk.

    The depth cut aborts once the denominator provably exceeds the coordinate
    bound (continuants grow at least like Fibonacci numbers).
    """
    if depth > 5:
        return None
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        r = _simplest_in(-hi, -lo, depth)
        return None if r is None else -r
    ceil_lo = -((-lo.numerator) // lo.denominator)
    if ceil_lo <= hi:
        return Fraction(ceil_lo)
    fl = lo.numerator // lo.denominator
    inner = _simplest_in(1 / (hi - fl), 1 / (lo - fl), depth + 1)
    if inner is None or inner == 0:
        return None
    return fl + 1 / inner


def _rational_in(c_iv: iv.Iv, bits: int, max_den: int):
    """The unique rational with denominator <= max_den inside the enclosure.

    Returns the rational, None when no such rational exists, or the ambiguity
    sentinel when the enclosure is too wide to isolate a single candidate
    (distinct rationals with denominator <= m differ by at least 1/m^2).
    """
    lo, hi = iv.iv_endpoints(c_iv, bits)
    if hi - lo >= Fraction(1, max_den * max_den):
        return _AMBIGUOUS
    cand = _simplest_in(lo, hi)
    if cand is None or cand.denominator > max_den:
        return None
    return cand


def sqrt_exact(
    alpha: TowerElement,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_bits: int = MAX_PRECISION_BITS,
) -> TowerElement | None:
    """Exact square root in the element's own tower, or None.

    Method: enclose every real conjugate of alpha; any negative conjugate rules
    out a root. Otherwise, for each assignment of signs to the conjugates of
    the root (the distinguished embedding fixed positive), recover candidate
    coordinates by the inverse embedding transform, reconstruct them as
    rationals with bounded denominator, and accept only on exact verification
    by squaring. Failure of every assignment at a resolving precision proves
    there is no root with admissible denominators; unresolved assignments
    trigger a precision doubling up to the cap.
    """
    if alpha.is_zero():
        raise ValueError("square root of the zero element")
    tower = alpha.tower
    n = tower.degree
    embs = tower.embeddings()
    bits = precision_bits
    while bits <= max_bits:
        rads = _radical_ivs(tower, bits)
        targets = []
        resolved = True
        for sg in embs:
            enc = _embed_iv(alpha, sg, rads, bits)
            if enc[1] < 0:
                return None  # negative at a real embedding: no root anywhere
            if enc[0] <= 0:
                resolved = False
                break
            targets.append(enc)
        if not resolved:
            bits *= 2
            continue
        roots = [iv.iv_sqrt(t, bits) for t in targets]
        denoms = [(n * rads[i][0], n * rads[i][1]) for i in range(n)]
        base_signs = [[tower.basis_sign(i, sg) for sg in embs] for i in range(n)]
        saw_ambiguous = False
        for pattern in range(1 << (n - 1)):
            coords = []
            dead = False
            for i in range(n):
                lo = hi = 0
                row = base_signs[i]
                for k in range(n):
                    sg = row[k]
                    if k and pattern >> (k - 1) & 1:
                        sg = -sg
                    rk = roots[k]
                    if sg > 0:
                        lo += rk[0]
                        hi += rk[1]
                    else:
                        lo -= rk[1]
                        hi -= rk[0]
                c = _rational_in(iv.iv_div((lo, hi), denoms[i], bits), bits, MAX_COORD_DENOMINATOR)
                if c is _AMBIGUOUS:
                    saw_ambiguous = True
                    dead = True
                    break
                if c is None:
                    dead = True
                    break
                coords.append(c)
            if dead:
                continue
            candidate = tower.element(coords)
            if candidate * candidate == alpha:
                return candidate
        if not saw_ambiguous:
            return None
        bits *= 2
    raise PrecisionExhausted(
        f"no decision below {max_bits} bits for a degree-{n} square root"
    )


def sqrt_preferring_subfield(
    alpha: TowerElement, precision_bits: int = DEFAULT_PRECISION_BITS
) -> TowerElement | None:
    """Exact square root, first attempted in the subtower spanned by the
    radicals actually present in alpha (at most biquadratic), then in the
    full tower; the result is lifted back to alpha's tower."""
    tower = alpha.tower
    basis: dict[int, int] = {}
    for mask, c in enumerate(alpha.coords):
        if c == 0 or mask == 0:
            continue
        cur = mask
        while cur:
            top = cur.bit_length() - 1
            if top in basis:
                cur ^= basis[top]
            else:
                basis[top] = cur
                break
    if 1 <= len(basis) < len(tower.generators):
        sub = Tower(tuple(tower.radicands[m] for m in sorted(basis.values())))
        by_radicand = dict(zip(tower.radicands, alpha.coords))
        proj = sub.element([by_radicand.get(m, 0) for m in sub.radicands])
        root = sqrt_exact(proj, precision_bits)
        if root is not None:
            return tower.lift(root)
    return sqrt_exact(alpha, precision_bits)


def sqrt_biquad(alpha: TowerElement, precision_bits: int = DEFAULT_PRECISION_BITS) -> TowerElement | None:
    """Square root in a biquadratic field, normalized positive at the
    distinguished embedding; None when there is no root."""
    if alpha.tower.degree != 4:
        raise ValueError("sqrt_biquad expects an element of a biquadratic field")
    return sqrt_exact(alpha, precision_bits)


def sqrt_octic(alpha: TowerElement, precision_bits: int = DEFAULT_PRECISION_BITS) -> TowerElement | None:
    """Square root in the octic field, normalized positive at the distinguished
    embedding; None when there is no root."""
    if alpha.tower.degree != 8:
        raise ValueError("sqrt_octic expects an element of the octic field")
    return sqrt_exact(alpha, precision_bits)


# -- Theta and the biquadratic unit index ---------------------------------


def _unit_product_root(
    d: int,
    precision_bits: int,
    cache: dict[int, QuadUnit] | None,
) -> TowerElement:
    """The positive square root of eps_d * eps_2d inside Q(sqrt2, sqrt d)."""
    field = BiquadField(2, d)
    e_d = field.from_quad_unit(fundamental_pell(d, cache))
    e_2d = field.from_quad_unit(fundamental_pell(2 * d, cache))
    root = sqrt_biquad(e_d * e_2d, precision_bits)
    if root is None:
        raise NotASquareInBiquad(
            f"eps_{d} * eps_{2 * d} is not a square in Q(sqrt2, sqrt{d})"
        )
    return root


def theta_factors(
    p: int,
    q: int,
    s: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    cache: dict[int, QuadUnit] | None = None,
) -> tuple[TowerElement, TowerElement]:
    """The two normalized biquadratic roots whose product is Theta."""
    return (
        _unit_product_root(p * q, precision_bits, cache),
        _unit_product_root(p * s, precision_bits, cache),
    )


def theta(
    p: int,
    q: int,
    s: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    cache: dict[int, QuadUnit] | None = None,
) -> TowerElement:
    """The normalized product Theta = sqrt(eps_pq eps_2pq) * sqrt(eps_ps eps_2ps)
    as an exact octic element, positive at the distinguished embedding."""
    f1, f2 = theta_factors(p, q, s, precision_bits, cache)
    octic = OcticField(p, q, s)
    return octic.lift(f1) * octic.lift(f2)


_INDEX_EXPONENTS = (
    (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1),
)


def biquad_unit_index(
    a: int,
    b: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    cache: dict[int, QuadUnit] | None = None,
) -> tuple[int, tuple[int, int, int] | None]:
    """Index of the subgroup generated by quadratic-subfield units inside the
    unit group of Q(sqrt a, sqrt b): either 1, or 2 with the exponent vector
    (e1, e2, e3) such that eps_a^e1 * eps_b^e2 * eps_ab^e3 is a square."""
    field = BiquadField(a, b)
    ab = _square_decompose(a * b)[1]
    units = [field.from_quad_unit(fundamental_pell(d, cache)) for d in (a, b, ab)]
    for exps in _INDEX_EXPONENTS:
        candidate = field.one()
        for u, e in zip(units, exps):
            if e:
                candidate = candidate * u
        if sqrt_biquad(candidate, precision_bits) is not None:
            return 2, exps
    return 1, None
