"""Fundamental Pell units of Z[sqrt(d)] by the continued fraction of sqrt(d)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt
from pathlib import Path

from .arith import is_prime


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        while n % k == 0:
            n //= k
        k += 1
    return True


@dataclass(frozen=True)
class QuadUnit:
    """The fundamental Pell unit x + y*sqrt(d) of Z[sqrt(d)], with its norm sign."""

    d: int
    x: int
    y: int
    norm: int

    def __post_init__(self):
        if self.norm not in (1, -1) or self.x * self.x - self.d * self.y * self.y != self.norm:
            raise ValueError(f"not a unit of Z[sqrt({self.d})]: {self.x}, {self.y}")
        if self.x <= 0 or self.y <= 0:
            raise ValueError("expected the positive fundamental solution")

    def __str__(self) -> str:
        return f"{self.x} + {self.y}*sqrt({self.d})  (norm {self.norm:+d})"


def fundamental_pell(d: int, cache: dict[int, QuadUnit] | None = None) -> QuadUnit:
    """Smallest unit > 1 of Z[sqrt(d)], from the continued fraction of sqrt(d).

    The norm is -1 exactly when the period length is odd. Cache entries (when a
    cache dict is supplied) were norm-checked at load time and are trusted here;
    a non-minimal entry surfaces downstream as a reference-value mismatch.
    """
    if d <= 1 or not is_squarefree(d):
        raise ValueError(f"d must be a squarefree integer > 1, got {d}")
    if cache is not None and d in cache:
        return cache[d]
    a0 = isqrt(d)
    P, Q, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    period = 0
    while True:
        period += 1
        P = a * Q - P
        Q = (d - P * P) // Q
        a = (a0 + P) // Q
        if Q == 1:
            unit = QuadUnit(d, h, k, -1 if period % 2 else 1)
            if cache is not None:
                cache[d] = unit
            return unit
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k


def load_cache(path: str | Path) -> dict[int, QuadUnit]:
    """Load a JSON Pell cache, dropping entries that fail the norm identity."""
    cache: dict[int, QuadUnit] = {}
    p = Path(path)
    if not p.exists():
        return cache
    try:
        raw = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError):
        return cache
    if not isinstance(raw, dict):
        return cache
    for key, entry in raw.items():
        try:
            d = int(key)
            unit = QuadUnit(d, int(entry["x"]), int(entry["y"]), int(entry["norm"]))
        except (KeyError, TypeError, ValueError):
            continue  # corrupt entry: recompute on demand instead of trusting it
        cache[d] = unit
    return cache


def save_cache(path: str | Path, cache: dict[int, QuadUnit]) -> None:
    """Persist the cache as JSON with decimal-string fields, sorted by d."""
    obj = {
        str(d): {"x": str(u.x), "y": str(u.y), "norm": str(u.norm)}
        for d, u in sorted(cache.items())
    }
    p = Path(path)
    tmp = p.with_suffix(p.suffix + ".tmp")
    tmp.write_text(json.dumps(obj, indent=2) + "\n")
    tmp.replace(p)


def pell_for_triple(p: int, q: int, s: int, cache: dict[int, QuadUnit] | None = None) -> dict[int, QuadUnit]:
    """All quadratic units entering the rank-7 unit system of Q(sqrt2, sqrt pq, sqrt ps)."""
    for n in (p, q, s):
        if not is_prime(n) or n == 2:
            raise ValueError(f"{n} is not an odd prime")
    ds = (2, p * q, 2 * p * q, p * s, 2 * p * s, q * s, 2 * q * s)
    return {d: fundamental_pell(d, cache) for d in ds}
