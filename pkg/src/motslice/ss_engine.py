"""E² pages, collapse checks and the headline reports built from them."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .differentials import D1Region, d1_matrix, d1_region
from .exact_linalg import F2Matrix, f2_homology, f2_rank_kernel_image, fgab_homology
from .milnor_field import FieldError, FieldPresentation, h_dim
from .slice_pages import DISPLAY_ONLY, Component, GroupHom, GroupObject, e1_group

__all__ = [
    "PageRegion",
    "page_region",
    "e2_group",
    "CellCheck",
    "check_collapse_kt",
    "WittReport",
    "graded_witt",
    "KTFiltrationReport",
    "kt_filtration_groups",
    "kt_filtration_crosscheck",
    "kq_e2_column",
    "KOReport",
    "ko_low_degree",
]

NOT_CERTIFIED = "E² (not E^∞-certified)"


def _incoming(spectrum: str, F: FieldPresentation, p: int, q: int) -> GroupHom:
    if q == 0:
        tgt = e1_group(spectrum, F, p, q)
        return GroupHom(GroupObject(p + 1, q - 1), tgt)
    return d1_matrix(spectrum, F, p + 1, q - 1)


def _rep_label(cell: GroupObject, bits: tuple[int, ...]) -> tuple[int, str]:
    """Index of the leading component and a readable sum of the basis classes in a vector."""
    offs = cell.offsets()
    lead = None
    terms = []
    for idx, comp in enumerate(cell.components):
        for k in range(comp.ngens):
            if bits[offs[idx] + k]:
                if lead is None:
                    lead = idx
                terms.append(comp.labels[k])
    return lead, " + ".join(terms)


@lru_cache(maxsize=None)
def e2_group(spectrum: str, F: FieldPresentation, p: int, q: int) -> GroupObject:
    """Homology of E¹_{p+1,q−1} → E¹_{p,q} → E¹_{p−1,q+1}."""
    if spectrum in DISPLAY_ONLY:
        raise FieldError(f"no differential defined for {spectrum}: E² is not available")
    f = _incoming(spectrum, F, p, q)
    g = d1_matrix(spectrum, F, p, q)
    mid = g.source
    passthrough = tuple(c for c in mid.components if c.kind in ("divisible", "conditional"))
    if f.source.is_mod2 and mid.is_mod2 and g.target.is_mod2:
        dim, reps = f2_homology(f.f2_matrix(), g.f2_matrix())
        grouped: dict[int, list[str]] = {}
        for rep in reps:
            lead, label = _rep_label(mid, tuple(rep))
            grouped.setdefault(lead, []).append(label)
        comps = []
        for idx in sorted(grouped):
            c = mid.components[idx]
            comps.append(Component("F2", c.offset, c.a, c.q, dim=len(grouped[idx]), labels=tuple(grouped[idx])))
        return GroupObject(p, q, tuple(comps) + passthrough)
    group = fgab_homology(
        f.full_matrix(), g.full_matrix(), f.source.orders(), mid.orders(), g.target.orders()
    )
    comps = []
    if not group.is_trivial():
        lead = next(c for c in mid.components if c.ngens)
        comps.append(Component("group", lead.offset, lead.a, lead.q, group=group))
    return GroupObject(p, q, tuple(comps) + passthrough, note="homology over Z")


# --------------------------------------------------------------- regions


@dataclass
class PageRegion:
    spectrum: str
    field: str
    page: str  # "1", "2" or "inf"
    window: tuple[int, int, int, int]
    cells: dict[tuple[int, int], GroupObject] = field(default_factory=dict)
    homs: dict[tuple[int, int], GroupHom] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def _map_cells(fn, keys, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return dict(zip(keys, pool.map(fn, keys)))
    return {k: fn(k) for k in keys}


def page_region(
    spectrum: str,
    F: FieldPresentation,
    page: str,
    window: tuple[int, int, int, int],
    workers: int = 1,
) -> PageRegion:
    """Cells of E¹, E² or E^∞ over a window (pmin, pmax, qmin, qmax)."""
    pmin, pmax, qmin, qmax = window
    page = str(page)
    if page not in ("1", "2", "inf"):
        raise FieldError(f"page must be 1, 2 or inf, got {page}")
    if page == "1":
        if spectrum in DISPLAY_ONLY:
            region = PageRegion(spectrum, F.name, page, window)
            keys = [(p, q) for q in range(max(qmin, 0), qmax + 1) for p in range(pmin, pmax + 1)]
            region.cells = _map_cells(lambda k: e1_group(spectrum, F, *k), keys, workers)
            region.notes.append(f"no differential defined for {spectrum}; E¹ shown for display only")
            return region
        d1: D1Region = d1_region(spectrum, F, window)
        return PageRegion(spectrum, F.name, page, window, d1.cells, d1.homs)
    if spectrum in DISPLAY_ONLY:
        raise FieldError(f"no differential defined for {spectrum}: page {page} is not available")
    region = PageRegion(spectrum, F.name, page, window)
    keys = [(p, q) for q in range(max(qmin, 0), qmax + 1) for p in range(pmin, pmax + 1)]
    region.cells = _map_cells(lambda k: e2_group(spectrum, F, *k), keys, workers)
    if spectrum == "KT":
        if page == "inf":
            region.notes.append("E^∞ = E²: the KT slice spectral sequence collapses at E²")
    elif page == "inf":
        raise FieldError(f"E^∞ is only certified for KT; use --r 2 for {spectrum}")
    else:
        region.notes.append(f"{spectrum} cells are {NOT_CERTIFIED}")
    return region


# -------------------------------------------------------- collapse check


@dataclass
class CellCheck:
    p: int
    q: int
    expected: tuple[str, ...]
    got: tuple[str, ...]
    ok: bool
    entering_rank: int | None = None
    entering_source_dim: int | None = None

    def text(self) -> str:
        exp = ", ".join(self.expected) or "0"
        got = ", ".join(self.got) or "0"
        return f"({self.p},{self.q}) expected [{exp}] got [{got}] {'ok' if self.ok else 'MISMATCH'}"


@dataclass
class CollapseReport:
    field: str
    cells: list[CellCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def split_injective(self) -> bool:
        return all(
            c.entering_rank == c.entering_source_dim for c in self.cells if c.entering_rank is not None
        )


def _alpha_rank(F: FieldPresentation, p: int, q: int) -> tuple[int, int]:
    """Rank and source dimension of the entering d₁ restricted to the summands
    h^{a,q−1} of E¹_{p+1,q−1} with a ≡ q (mod 4); the others map to zero."""
    inc = d1_matrix("KT", F, p + 1, q - 1)
    offs = inc.source.offsets()
    keep = []
    for idx, comp in enumerate(inc.source.components):
        if comp.kind == "F2" and (comp.a - q) % 4 == 0:
            keep.extend(range(offs[idx], offs[idx] + comp.ngens))
    full = inc.f2_matrix()
    cols = [full.column(j) for j in keep]
    restricted = F2Matrix.from_columns(cols, full.nrows) if cols else F2Matrix.zeros(full.nrows, 0)
    return f2_rank_kernel_image(restricted)[0], len(keep)


def check_collapse_kt(F: FieldPresentation, window: tuple[int, int, int], workers: int = 1) -> CollapseReport:
    """Compare E²(KT) over (pmin, pmax, qmax) with h^{q,q} at p ≡ 0 (mod 4) and 0 elsewhere.

    Also records, for each p ≡ 0 cell, rank and source dimension of the part of
    the entering d₁ that must be split injective.
    """
    pmin, pmax, qmax = window
    keys = [(p, q) for q in range(qmax + 1) for p in range(pmin, pmax + 1)]

    def one(key):
        p, q = key
        e2 = e2_group("KT", F, p, q)
        got = e2.labels()
        if p % 4 == 0:
            expected = tuple(F.basis[q]) if h_dim(F, q, q) else ()
        else:
            expected = ()
        ok = e2.is_mod2 and got == expected
        rank = src = None
        if p % 4 == 0 and q > 0:
            rank, src = _alpha_rank(F, p, q)
        return CellCheck(p, q, expected, got, ok, rank, src)

    checks = _map_cells(one, keys, workers)
    return CollapseReport(F.name, [checks[k] for k in keys])


# ------------------------------------------------------------------ Witt


@dataclass
class WittReport:
    field: str
    qmax: int
    dims: list[int]
    labels: list[tuple[str, ...]]
    note: str = "I^q/I^{q+1} read off E²_{0,q}(KT) = E^∞_{0,q}"

    def text(self) -> str:
        lines = [f"graded Witt ring of {self.field}: {self.note}"]
        for q, (d, lab) in enumerate(zip(self.dims, self.labels)):
            lines.append(f"  I^{q}/I^{q + 1}: dim {d}  [{', '.join(lab)}]")
        return "\n".join(lines)


def graded_witt(F: FieldPresentation, qmax: int) -> WittReport:
    if qmax >= F.truncation:
        raise FieldError(f"qmax {qmax} needs weight {qmax + 1}, beyond truncation {F.truncation}")
    dims, labels = [], []
    for q in range(qmax + 1):
        e2 = e2_group("KT", F, 0, q)
        dims.append(e2.dim)
        labels.append(e2.labels())
    return WittReport(F.name, qmax, dims, labels)


# ------------------------------------------------------ KT filtration


@dataclass
class KTFiltrationReport:
    """π_{p,0}f_q(KT) for p ≢ 0 (mod 4); for p ≡ 0 the split part of π_{p,0}f_{q+1},
    whose quotient is the tail I^{q+1}."""

    field: str
    p: int
    q: int
    components: list[tuple[int, int, int]]  # (a, q, dim h^{a,q})
    tail: str | None
    engine_dim: int

    @property
    def dim(self) -> int:
        return sum(d for _, _, d in self.components)

    @property
    def ok(self) -> bool:
        return self.dim == self.engine_dim

    def text(self) -> str:
        parts = [f"h^{{{a},{q}}}" for a, q, d in self.components if d]
        body = " ⊕ ".join(parts) or "0"
        if self.tail:
            what = f"π_{{{self.p},0}}f_{{{self.q + 1}}}(KT): 0 → {body} → · → {self.tail} → 0"
        else:
            what = f"π_{{{self.p},0}}f_{{{self.q}}}(KT) = {body}"
        return f"{what}  (dim {self.dim}, engine {self.engine_dim})"


def _closed_form_degrees(p: int, q: int) -> list[int]:
    start = {1: q - 1, 2: q - 2, 3: q - 3, 0: q - 3}[p % 4]
    return list(range(start, -1, -4))


def kt_filtration_groups(F: FieldPresentation, p: int, q: int) -> KTFiltrationReport:
    comps = [(a, q, h_dim(F, a, q)) for a in _closed_form_degrees(p, q)]
    if p % 4 == 0:
        engine = f2_rank_kernel_image(d1_matrix("KT", F, p + 1, q).f2_matrix())[0]
        tail = f"I^{q + 1}"
    else:
        _, kernel, _ = f2_rank_kernel_image(d1_matrix("KT", F, p, q).f2_matrix())
        engine = len(kernel)
        tail = None
    return KTFiltrationReport(F.name, p, q, comps, tail, engine)


@dataclass
class CrosscheckEntry:
    p: int
    q: int
    e1_dim: int
    left: KTFiltrationReport
    right: KTFiltrationReport

    @property
    def ok(self) -> bool:
        return self.left.ok and self.right.ok and self.e1_dim == self.left.dim + self.right.dim

    def text(self) -> str:
        return (
            f"({self.p},{self.q}): dim E¹ {self.e1_dim} = {self.left.dim} + {self.right.dim}"
            f" {'ok' if self.ok else 'MISMATCH'}"
        )


def kt_filtration_crosscheck(F: FieldPresentation, window: tuple[int, int, int]) -> list[CrosscheckEntry]:
    """dim E¹_{p,q} = dim π_{p,0}f_q + dim π_{p−1,0}f_{q+1} for p ≡ 2, 3 (mod 4)."""
    pmin, pmax, qmax = window
    out = []
    for q in range(qmax + 1):
        for p in range(pmin, pmax + 1):
            if p % 4 not in (2, 3):
                continue
            e1 = e1_group("KT", F, p, q)
            out.append(
                CrosscheckEntry(p, q, e1.dim, kt_filtration_groups(F, p, q), kt_filtration_groups(F, p - 1, q + 1))
            )
    return out


# ------------------------------------------------------------------- KQ


def kq_e2_column(F: FieldPresentation, p: int, qmax: int) -> list[GroupObject]:
    """E²_{p,q}(KQ) for q = 0 … qmax."""
    if p not in (0, 1, 2, 3, 4):
        raise FieldError(f"KQ columns are reported for p ∈ 0…4, got {p}")
    if qmax >= F.truncation:
        raise FieldError(f"qmax {qmax} needs weight {qmax + 1}, beyond truncation {F.truncation}")
    return [e2_group("KQ", F, p, q) for q in range(qmax + 1)]


@dataclass
class KOReport:
    """Filtration quotients of KO_n(F), n ≤ 3; extensions are left unresolved."""

    field: str
    ko0: list[str]
    ko1: list[str]
    ko2: list[str]
    ko3_sub: str
    ko3_quotient: str
    ko3_extra: list[str]
    note: str = NOT_CERTIFIED

    def text(self) -> str:
        lines = [
            f"KO_n({self.field}) from the KQ slice spectral sequence [{self.note}]",
            f"  KO_0 filtration quotients: {'; '.join(self.ko0)}",
            f"  KO_1 filtration quotients: {'; '.join(self.ko1)}",
            f"  KO_2 filtration quotients: {'; '.join(self.ko2)}",
            f"  KO_3: 0 → {self.ko3_sub} → · → {self.ko3_quotient} → 0",
        ]
        if self.ko3_extra:
            lines.append(f"  KO_3 further quotients: {'; '.join(self.ko3_extra)}")
        return "\n".join(lines)


def _nonzero_summaries(column: list[GroupObject], skip=()) -> list[str]:
    out = []
    for q, g in enumerate(column):
        if q not in skip and not g.is_zero():
            out.append(f"q={q}: {g.summary()}")
    return out


def ko_low_degree(F: FieldPresentation, qmax: int | None = None) -> KOReport:
    qmax = F.truncation - 1 if qmax is None else qmax
    cols = [kq_e2_column(F, p, qmax) for p in range(4)]
    return KOReport(
        F.name,
        _nonzero_summaries(cols[0]) or ["0"],
        _nonzero_summaries(cols[1]) or ["0"],
        _nonzero_summaries(cols[2]) or ["0"],
        cols[3][3].summary(),
        cols[3][2].summary(),
        _nonzero_summaries(cols[3], skip=(2, 3)),
    )
