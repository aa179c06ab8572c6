"""Slice decompositions as summand lists, and E¹-cells π_{p,0}s_q as concrete groups.

A summand Σ^{s,q}MZ/2 of the q-th slice contributes h^{s−p,q} to E¹_{p,q};
an integral summand Σ^{s,q}MZ contributes H^{s−p,q}. Summands are indexed by
their *offset* m = s − q, so that the mod-2 ones of KT sit at every even m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exact_linalg import F2Matrix, FgAbGroup, IntMatrix
from .milnor_field import (
    FieldError,
    FieldPresentation,
    MotClass,
    class_label,
    h_dim,
    integral_cell,
)

__all__ = [
    "SPECTRA",
    "DISPLAY_ONLY",
    "SummandDesc",
    "Component",
    "GroupObject",
    "GroupHom",
    "summand_offsets",
    "integral_offset",
    "slice_summands",
    "e1_group",
]

SPECTRA = ("KT", "KQ", "KGL", "KGL2", "KGLhC2")
DISPLAY_ONLY = ("KGL", "KGLhC2")


@dataclass(frozen=True)
class SummandDesc:
    coeff: str  # "MZ" or "MZ2"
    s: int
    w: int

    @property
    def offset(self) -> int:
        return self.s - self.w

    def __str__(self) -> str:
        name = "MZ" if self.coeff == "MZ" else "MZ/2"
        return f"Σ^{{{self.s},{self.w}}}{name}"


def _check_spectrum(spectrum: str) -> None:
    if spectrum not in SPECTRA:
        raise FieldError(f"unknown spectrum {spectrum!r}; expected one of {', '.join(SPECTRA)}")


def summand_offsets(spectrum: str, q: int, m_lo: int, m_hi: int) -> dict[int, str]:
    """Offsets m ∈ [m_lo, m_hi] of the summands of s_q, mapped to their coefficients."""
    _check_spectrum(spectrum)
    out: dict[int, str] = {}
    if q < 0:
        return out
    if spectrum == "KT":
        for m in range(m_lo + (m_lo % 2), m_hi + 1, 2):
            out[m] = "MZ2"
    elif spectrum == "KQ":
        if q % 2 == 0:
            if m_lo <= q <= m_hi:
                out[q] = "MZ"
            top = q - 2
        else:
            top = q - 1
        for m in range(m_lo + (m_lo % 2), min(top, m_hi) + 1, 2):
            out[m] = "MZ2"
    elif spectrum in ("KGL", "KGL2"):
        if m_lo <= q <= m_hi:
            out[q] = "MZ" if spectrum == "KGL" else "MZ2"
    else:  # KGLhC2
        if q % 2 == 0:
            if m_lo <= q <= m_hi:
                out[q] = "MZ"
            start = q + 1
        else:
            start = q
        first = start if m_lo <= start else m_lo + ((m_lo - start) % 2)
        for m in range(first, m_hi + 1, 2):
            out[m] = "MZ2"
    return out


def integral_offset(spectrum: str, q: int) -> int | None:
    """Offset of the integral summand Σ^{2q,q}MZ of s_q, if there is one."""
    _check_spectrum(spectrum)
    if q < 0:
        return None
    if spectrum == "KGL" or (spectrum in ("KQ", "KGLhC2") and q % 2 == 0):
        return q
    return None


def slice_summands(spectrum: str, q: int, window: tuple[int, int]) -> list[SummandDesc]:
    """Summands of s_q that can contribute to some E¹_{p,q} with p in the window.

    Integral summands are always listed; their groups H^{a,q} may be nonzero
    outside 0 ≤ a ≤ q.
    """
    pmin, pmax = window
    if pmin > pmax:
        return []
    offs = summand_offsets(spectrum, q, pmin - q, pmax)
    m = integral_offset(spectrum, q)
    if m is not None:
        offs[m] = "MZ"
    return [SummandDesc(c, m + q, q) for m, c in sorted(offs.items(), reverse=True)]


@dataclass(frozen=True)
class Component:
    """One summand's contribution to a cell.

    ``kind`` is ``F2`` (h^{a,q}), ``group`` (the finitely generated part of
    H^{a,q}), ``divisible`` (a uniquely 2-divisible part) or ``conditional``
    (H^{a,q} taken to vanish on the Beilinson–Soulé flag). The last two have no
    generators and contribute nothing to any map.
    """

    kind: str
    offset: int
    a: int
    q: int
    dim: int = 0
    labels: tuple[str, ...] = ()
    group: FgAbGroup | None = None
    pr: IntMatrix | None = None

    @property
    def ngens(self) -> int:
        if self.kind == "F2":
            return self.dim
        if self.kind == "group":
            return self.group.ngens
        return 0

    def orders(self) -> tuple[int, ...]:
        if self.kind == "F2":
            return (2,) * self.dim
        if self.kind == "group":
            return self.group.orders()
        return ()

    @property
    def name(self) -> str:
        if self.kind == "F2":
            return f"h^{{{self.a},{self.q}}}"
        if self.kind == "group":
            return f"H^{{{self.a},{self.q}}}"
        if self.kind == "divisible":
            return f"D^{{{self.a},{self.q}}}"
        return f"H^{{{self.a},{self.q}}}?"

    def describe(self) -> str:
        if self.kind == "F2":
            return f"{self.name} = F₂^{self.dim}" if self.dim != 1 else f"{self.name} = F₂"
        if self.kind == "group":
            return f"{self.name} ⊇ {self.group}"
        if self.kind == "divisible":
            return f"{self.name} (uniquely 2-divisible)"
        return f"{self.name} = 0 (conditional)"


@dataclass(frozen=True)
class GroupObject:
    """A cell E^r_{p,q}, as an ordered direct sum of components (descending offset)."""

    p: int
    q: int
    components: tuple[Component, ...] = ()
    note: str = ""

    @property
    def ngens(self) -> int:
        return sum(c.ngens for c in self.components)

    def orders(self) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        for c in self.components:
            out += c.orders()
        return out

    @property
    def is_mod2(self) -> bool:
        return all(c.kind != "group" for c in self.components)

    @property
    def dim(self) -> int:
        """F₂-dimension of the mod-2 components."""
        return sum(c.dim for c in self.components if c.kind == "F2")

    def offsets(self) -> dict[int, int]:
        """Generator start index of every component that carries generators."""
        out, k = {}, 0
        for idx, c in enumerate(self.components):
            out[idx] = k
            k += c.ngens
        return out

    def labels(self) -> tuple[str, ...]:
        out: tuple[str, ...] = ()
        for c in self.components:
            if c.kind == "F2":
                out += c.labels
        return out

    def abelian_group(self) -> FgAbGroup:
        return FgAbGroup.from_orders(self.orders())

    def has_divisible(self) -> bool:
        return any(c.kind == "divisible" for c in self.components)

    def is_zero(self) -> bool:
        return self.ngens == 0 and not self.has_divisible() and self.abelian_group().is_trivial()

    def summary(self) -> str:
        parts = []
        fin = self.abelian_group()
        if not fin.is_trivial():
            parts.append(str(fin))
        for c in self.components:
            if c.kind == "divisible":
                parts.append(c.name)
        if not parts:
            return "0"
        return " ⊕ ".join(parts)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism between cells, stored per component pair.

    A block is an integer matrix from the source component's generators to
    the target component's generators; entries into F₂ components are 0/1.
    """

    source: GroupObject
    target: GroupObject
    blocks: tuple[tuple[int, int, str, IntMatrix], ...] = field(default=())

    def full_matrix(self) -> IntMatrix:
        so = self.source.offsets()
        to = self.target.offsets()
        rows = [[0] * self.source.ngens for _ in range(self.target.ngens)]
        for i, j, _, mat in self.blocks:
            for r, row in enumerate(mat.to_rows()):
                for c, v in enumerate(row):
                    rows[to[j] + r][so[i] + c] += v
        orders = self.target.orders()
        for r, d in enumerate(orders):
            if d:
                rows[r] = [v % d for v in rows[r]]
        return IntMatrix.from_rows(rows, self.source.ngens)

    def f2_matrix(self) -> F2Matrix:
        m = self.full_matrix()
        return F2Matrix.from_rows([[v & 1 for v in row] for row in m.to_rows()], self.source.ngens)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.full_matrix().to_rows() for v in row)


def _f2_component(F: FieldPresentation, m: int, a: int, q: int) -> Component | None:
    d = h_dim(F, a, q)
    if d == 0:
        return None
    labels = tuple(class_label(F, MotClass(a, q, tuple(int(k == i) for k in range(d)))) for i in range(d))
    return Component("F2", m, a, q, dim=d, labels=labels)


def _integral_components(F: FieldPresentation, m: int, a: int, q: int) -> list[Component]:
    look = integral_cell(F, a, q)
    if look.status == "zero":
        return []
    if look.status in ("divisible", "conditional"):
        return [Component(look.status, m, a, q)]
    cell = look.cell
    out = []
    if not cell.group.is_trivial():
        out.append(Component("group", m, a, q, group=cell.group, pr=cell.pr))
    if cell.divisible:
        out.append(Component("divisible", m, a, q))
    return out


@lru_cache(maxsize=None)
def e1_group(spectrum: str, F: FieldPresentation, p: int, q: int) -> GroupObject:
    """E¹_{p,q} = π_{p,0}s_q for the spectrum over F."""
    _check_spectrum(spectrum)
    if q < 0:
        return GroupObject(p, q)
    h_dim(F, 0, q)  # truncation check
    comps: list[Component] = []
    for desc in slice_summands(spectrum, q, (p, p)):
        m = desc.offset
        a = desc.s - p
        if desc.coeff == "MZ2":
            c = _f2_component(F, m, a, q)
            if c is not None:
                comps.append(c)
        else:
            comps.extend(_integral_components(F, m, a, q))
    return GroupObject(p, q, tuple(comps))
