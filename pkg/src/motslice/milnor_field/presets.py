"""Built-in field presentations.

Each preset is plain data. The numbers come from standard facts that the test
suite re-derives by brute force where that is feasible:

* finite fields F_q: kᴹ = F₂ ⊕ F₂·{ε}, ρ = {−1} vanishes iff q ≡ 1 (mod 4);
  H^{1,n} = Z/(q^n − 1) and H^{a,n} = 0 otherwise for n ≥ 1.
* odd p-adic fields: square classes {1, u, π, uπ}, degree-2 products from the
  quadratic Hilbert symbol.
* real closed fields: kᴹ = F₂[ρ].
* quadratically closed fields: kᴹ = F₂.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..exact_linalg import FgAbGroup, IntMatrix
from .core import DEFAULT_TRUNCATION, FieldError, FieldPresentation, IntegralCell

__all__ = ["preset_field", "parse_field_spec", "PRESET_NAMES", "resolve_field"]

PRESET_NAMES = (
    "quadratically_closed",
    "real_closed",
    "finite(5)",
    "finite(7)",
    "finite(9)",
    "local(5)",
    "local(7)",
)


def _cell(p, q, free=0, torsion=(), pr=None, divisible=False, hdim=0):
    group = FgAbGroup(free, tuple(torsion))
    if pr is None:
        pr = [[0] * group.ngens for _ in range(hdim)]
    return IntegralCell(p, q, group, IntMatrix.from_rows(pr, group.ngens), divisible)


def _common_flags():
    # H^{0,2} vanishes for every field; negative degrees are left to the flag.
    return {"beilinson_soule": True, "zero_cells": frozenset({(0, 2)})}


def _quadratically_closed(N):
    dims = (1,) + (0,) * N
    basis = (("1",),) + ((),) * N
    integral = {(0, 0): _cell(0, 0, free=1, pr=[[1]])}
    for q in range(1, N + 1):
        for a in range(1, q + 1):
            integral[(a, q)] = _cell(a, q, divisible=True)
    return FieldPresentation("quadratically_closed", N, dims, basis, (), {}, integral, **_common_flags())


def _real_closed(N):
    dims = (1,) * (N + 1)
    basis = tuple(("1",) if n == 0 else ("{-1}",) if n == 1 else (f"{{-1}}^{n}",) for n in range(N + 1))
    mult = {(a, b): ((1,),) for a in range(1, N) for b in range(1, N - a + 1)}
    # H^{a,q}(R; Z) for 0 < a ≤ q carries a Z/2 exactly when a ≡ q (mod 2),
    # and pr is then onto τ^{q-a}ρ^a; diagonal groups also have a divisible part.
    integral = {(0, 0): _cell(0, 0, free=1, pr=[[1]])}
    for q in range(1, N + 1):
        for a in range(1, q + 1):
            if (q - a) % 2 == 0:
                integral[(a, q)] = _cell(a, q, torsion=(2,), pr=[[1]], divisible=(a == q))
            else:
                integral[(a, q)] = _cell(a, q, hdim=1)
    return FieldPresentation("real_closed", N, dims, basis, (1,), mult, integral, **_common_flags())


def _prime_factors(n):
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _odd_prime_power(q):
    f = _prime_factors(q)
    if q < 3 or len(f) != 1 or 2 in f:
        raise FieldError(f"finite field order must be an odd prime power, got {q}")
    return f.pop()


def _smallest_nonsquare(p):
    squares = {x * x % p for x in range(1, p)}
    return next(a for a in range(2, p) if a not in squares)


def _finite(q, N):
    char = _odd_prime_power(q)
    dims = (1, 1) + (0,) * (N - 1)
    eps = f"{{{_smallest_nonsquare(q)}}}" if char == q else "{ζ}"
    basis = (("1",), (eps,)) + ((),) * (N - 1)
    rho = (0,) if q % 4 == 1 else (1,)
    mult = {}  # kᴹ_2(F_q) = 0
    integral = {(0, 0): _cell(0, 0, free=1, pr=[[1]])}
    for n in range(1, N + 1):
        for a in range(0, n + 1):
            hdim = dims[a]
            if a == 1:
                integral[(1, n)] = _cell(1, n, torsion=(q**n - 1,), pr=[[1]])
            else:
                integral[(a, n)] = _cell(a, n, hdim=hdim)
    return FieldPresentation(f"finite({q})", N, dims, basis, rho, mult, integral, **_common_flags())


def _local(p, N):
    if p == 2:
        raise FieldError("dyadic local fields (p = 2) are not supported")
    if p < 3 or _prime_factors(p) != {p}:
        raise FieldError(f"local(p) needs an odd prime, got {p}")
    dims = (1, 2, 1) + (0,) * (N - 2)
    basis = (("1",), ("{u}", "{π}"), ("{u,π}",)) + ((),) * (N - 2)
    # ρ = {−1} is {u} when −1 is a non-square unit, 0 when −1 is a square
    rho = (0, 0) if p % 4 == 1 else (1, 0)
    # Hilbert symbols: (u,u) = 1, (u,π) = −1, (π,π) = (−1,π) = (−1/p)
    pipi = 0 if p % 4 == 1 else 1
    mult = {(1, 1): ((0, 1), (1, pipi))}
    integral = {
        (0, 0): _cell(0, 0, free=1, pr=[[1]]),
        # F^× = Z·π ⊕ μ_{p−1} ⊕ U¹; rows of pr are ({u}, {π}), columns (π, ζ)
        (1, 1): _cell(1, 1, free=1, torsion=(p - 1,), pr=[[0, 1], [1, 0]], divisible=True),
        # K_2(F) = μ_{p−1} ⊕ divisible, detected mod 2 by the Hilbert symbol
        (2, 2): _cell(2, 2, torsion=(p - 1,), pr=[[1]], divisible=True),
        # K_3^ind(F) = Z/(p²−1) ⊕ uniquely 2-divisible; its reduction is τ{u}
        # since {−1, π} ≠ 0 in K_2(F) while {−1, u} = 0
        (1, 2): _cell(1, 2, torsion=(p * p - 1,), pr=[[1], [0]], divisible=True),
    }
    for q in range(3, N + 1):
        # prime-to-p torsion: H^0(F, Q/Z(q)) and H^1(F, Q/Z(q)); H^{3,q} is torsion free,
        # so pr onto h^{2,q} is surjective and the reduction of H^{1,q} is again τ^{q−1}{u}
        integral[(1, q)] = _cell(1, q, torsion=(p**q - 1,), pr=[[1], [0]], divisible=True)
        integral[(2, q)] = _cell(2, q, torsion=(p ** (q - 1) - 1,), pr=[[1]], divisible=True)
        integral[(q, q)] = _cell(q, q, divisible=True)
        for a in range(3, q):
            integral[(a, q)] = _cell(a, q, divisible=True)
    return FieldPresentation(f"local({p})", N, dims, basis, rho, mult, integral, **_common_flags())


def preset_field(kind: str, param: int | None = None, truncation: int = DEFAULT_TRUNCATION) -> FieldPresentation:
    """Build a preset. ``kind`` is quadratically_closed, real_closed, finite or local."""
    if truncation < 2:
        raise FieldError(f"truncation {truncation} too small (need at least 2)")
    if kind == "quadratically_closed":
        return _quadratically_closed(truncation)
    if kind == "real_closed":
        return _real_closed(truncation)
    if kind == "finite":
        if param is None:
            raise FieldError("finite needs the field order q")
        return _finite(int(param), truncation)
    if kind == "local":
        if param is None:
            raise FieldError("local needs the residue characteristic p")
        return _local(int(param), truncation)
    raise FieldError(f"unknown preset kind {kind!r}")


_ALIASES = {
    "qc": "quadratically_closed",
    "quadratically_closed": "quadratically_closed",
    "c": "quadratically_closed",
    "real": "real_closed",
    "real_closed": "real_closed",
    "r": "real_closed",
}


def parse_field_spec(spec: str) -> tuple[str, int | None]:
    """``finite(5)``, ``finite5``, ``local(7)``, ``real``, ``qc`` → (kind, param)."""
    s = spec.strip().lower()
    if s in _ALIASES:
        return _ALIASES[s], None
    m = re.fullmatch(r"(finite|local|f|l)\s*\(?\s*(\d+)\s*\)?", s)
    if m:
        kind = {"f": "finite", "l": "local"}.get(m.group(1), m.group(1))
        return kind, int(m.group(2))
    raise FieldError(f"unrecognised field {spec!r}")


def resolve_field(spec: str, truncation: int = DEFAULT_TRUNCATION) -> FieldPresentation:
    """A preset name or a path to a field document."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        from .documents import load_field_file

        return load_field_file(path)
    kind, param = parse_field_spec(spec)
    return preset_field(kind, param, truncation)
