"""Weight ≤ 1 Steenrod operations evaluated on classes τⁿ·c of a field.

Every positive-degree square kills c ∈ h^{p,p} for bidegree reasons, so the
Cartan formula collapses to a case split on n mod 4:

    Sq¹(τⁿc)    = ρ τⁿ⁻¹ c      n odd
    Sq²(τⁿc)    = ρ² τⁿ⁻¹ c     n ≡ 2, 3
    Sq²Sq¹(τⁿc) = ρ³ τⁿ⁻² c     n ≡ 3
    Sq³Sq¹(τⁿc) = ρ⁴ τⁿ⁻³ c     n ≡ 3
"""

from __future__ import annotations

from typing import Callable, Sequence

from .milnor_field import FieldPresentation, MotClass, cup, make_class, tau

__all__ = ["sq1", "sq2", "sq3", "sq2sq1", "sq3sq1", "q1", "apply_letters", "LETTER_EVAL"]


def _rho_times(F: FieldPresentation, k: int, x: MotClass, dp: int, dq: int) -> MotClass:
    """ρ^k·c placed in bidegree (p+dp, q+dq); zero if the target group vanishes."""
    p, q = x.p + dp, x.q + dq
    if not (0 <= p <= q) or not x.coords:
        return make_class(F, p, q)
    c = F.multiply(x.p, x.coords, k, F.rho_power(k))
    return MotClass(p, q, c)


def _zero(F, x, dp, dq):
    return make_class(F, x.p + dp, x.q + dq)


def sq1(F: FieldPresentation, x: MotClass) -> MotClass:
    if x.coords and x.n % 2 == 1:
        return _rho_times(F, 1, x, 1, 0)
    return _zero(F, x, 1, 0)


def sq2(F: FieldPresentation, x: MotClass) -> MotClass:
    if x.coords and x.n % 4 in (2, 3):
        return _rho_times(F, 2, x, 2, 1)
    return _zero(F, x, 2, 1)


def sq2sq1(F: FieldPresentation, x: MotClass) -> MotClass:
    if x.coords and x.n % 4 == 3:
        return _rho_times(F, 3, x, 3, 1)
    return _zero(F, x, 3, 1)


def sq3sq1(F: FieldPresentation, x: MotClass) -> MotClass:
    if x.coords and x.n % 4 == 3:
        return _rho_times(F, 4, x, 4, 1)
    return _zero(F, x, 4, 1)


def sq3(F: FieldPresentation, x: MotClass) -> MotClass:
    """Sq³ = Sq¹Sq²."""
    return sq1(F, sq2(F, x))


def q1(F: FieldPresentation, x: MotClass) -> MotClass:
    """Milnor operation Q₁ = Sq³ + Sq²Sq¹."""
    return sq3(F, x) + sq2sq1(F, x)


def _tau(F, x):
    return cup(F, tau(F), x)


def _rho(F, x):
    return cup(F, MotClass(1, 1, F.rho), x)


LETTER_EVAL: dict[str, Callable[[FieldPresentation, MotClass], MotClass]] = {
    "Sq1": sq1,
    "Sq2": sq2,
    "Sq3": sq3,
    "t": _tau,
    "r": _rho,
}


def apply_letters(F: FieldPresentation, letters: Sequence[str], x: MotClass) -> MotClass:
    """Evaluate a word right to left (the rightmost letter acts first)."""
    for letter in reversed(letters):
        try:
            op = LETTER_EVAL[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} has no numeric evaluation on mod-2 classes") from None
        x = op(F, x)
    return x
