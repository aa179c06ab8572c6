"""Hilbert symbols and square classes of Q_p (p odd) by search modulo p³.

A primitive solution of a·x² + b·y² = z² modulo p³ lifts by Hensel's lemma
when a, b have valuation ≤ 1, so the search decides solvability over Q_p.
"""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def _squares(p: int) -> frozenset[int]:
    n = p**3
    return frozenset(z * z % n for z in range(n))


def hilbert(a: int, b: int, p: int) -> int:
    n = p**3
    sq = _squares(p)
    for x in range(n):
        for y in range(n):
            if x % p == 0 and y % p == 0:
                continue
            if (a * x * x + b * y * y) % n in sq:
                return 1
    return -1


def nonsquare_unit(p: int) -> int:
    return next(u for u in range(2, p) if pow(u, (p - 1) // 2, p) == p - 1)


def square_class_coords(a: int, p: int) -> tuple[int, int]:
    """Coordinates of a unit or p·unit in the basis ({u}, {π}) of F^×/F^×²."""
    v = 1 if a % p == 0 else 0
    unit = a // p if v else a
    is_sq = pow(unit % p, (p - 1) // 2, p) == 1
    return (0 if is_sq else 1, v)


def local_expectations(p: int) -> dict:
    """kᴹ₁ basis {u}, {π}; products in the basis {u,π} of kᴹ₂; ρ = {−1}."""
    u = nonsquare_unit(p)
    gens = (u, p)
    mult = tuple(tuple(int(hilbert(a, b, p) == -1) for b in gens) for a in gens)
    return {"dims": (1, 2, 1), "mult": mult, "rho": square_class_coords(p**3 - 1, p)}
