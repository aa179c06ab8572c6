"""d₁ as a concrete GroupHom between adjacent E¹-cells."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exact_linalg import F2Matrix, IntMatrix, f2_rank_kernel_image
from .milnor_field import FieldError, FieldPresentation, MotClass, make_class
from .op_algebra import OpSum, d1_row, format_sum
from .slice_pages import DISPLAY_ONLY, Component, GroupHom, GroupObject, e1_group
from .steenrod_eval import apply_letters

__all__ = [
    "ConsistencyError",
    "d1_matrix",
    "d1_region",
    "D1Region",
    "evaluate_op",
]


class ConsistencyError(RuntimeError):
    """d₁∘d₁ ≠ 0 on concrete data."""


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


def _delta_lift(F: FieldPresentation, comp: Component, y: MotClass) -> list[int]:
    """δ(y) in generator coordinates of the integral component: the 2-torsion
    element whose reduction is Sq¹y."""
    from .steenrod_eval import sq1

    target = sq1(F, y)
    group, pr = comp.group, comp.pr.to_rows()
    # 2-torsion generators: (d/2)·e_i for even torsion orders d
    cols, vecs = [], []
    for i, d in enumerate(group.orders()):
        if d and d % 2 == 0:
            k = d // 2
            cols.append([(k * pr[r][i]) & 1 for r in range(len(pr))])
            vecs.append((i, k))
    mat = F2Matrix.from_columns(cols, len(pr)) if cols else F2Matrix.zeros(len(pr), 0)
    rank, _, _ = f2_rank_kernel_image(mat)
    if rank != len(cols):
        raise FieldError(
            f"δ into H^{{{comp.a},{comp.q}}} is not determined: reduction is not injective on its 2-torsion"
        )
    if target.is_zero():
        return [0] * comp.ngens
    # solve mat·x = target by brute force over the (small) 2-torsion
    want = tuple(target.coords)
    for mask in range(1 << len(cols)):
        acc = [0] * len(pr)
        for j in range(len(cols)):
            if mask >> j & 1:
                acc = [a ^ b for a, b in zip(acc, cols[j])]
        if tuple(acc) == want:
            out = [0] * comp.ngens
            for j, (i, k) in enumerate(vecs):
                if mask >> j & 1:
                    out[i] = k
            return out
    raise FieldError(f"Sq¹-image in h^{{{target.p},{target.q}}} has no 2-torsion lift in H^{{{comp.a},{comp.q}}}")


def evaluate_op(F: FieldPresentation, operation: OpSum, src: Component, tgt: Component) -> IntMatrix:
    """Matrix of an operation from a source component to a target component."""
    cols = []
    for g in range(src.ngens):
        total = [0] * tgt.ngens
        for word in operation.terms:
            letters = list(word)
            if letters and letters[-1] == "pr":
                letters.pop()
                x = MotClass(src.a, src.q, tuple(row[g] & 1 for row in src.pr.to_rows()))
                if not x.coords:
                    x = make_class(F, src.a, src.q)
            else:
                x = MotClass(src.a, src.q, _unit(src.dim, g))
            lift = bool(letters) and letters[0] == "d"
            if lift:
                letters = letters[1:]
            y = apply_letters(F, letters, x)
            if lift:
                vec = _delta_lift(F, tgt, y)
            else:
                if (y.p, y.q) != (tgt.a, tgt.q):
                    raise FieldError(
                        f"{format_sum(operation)} lands in h^{{{y.p},{y.q}}}, not h^{{{tgt.a},{tgt.q}}}"
                    )
                vec = list(y.coords) if y.coords else [0] * tgt.ngens
            total = [a + b for a, b in zip(total, vec)]
        orders = tgt.orders()
        cols.append([v % d if d else v for v, d in zip(total, orders)])
    rows = [[cols[c][r] for c in range(src.ngens)] for r in range(tgt.ngens)]
    return IntMatrix.from_rows(rows, src.ngens)


@lru_cache(maxsize=None)
def d1_matrix(spectrum: str, F: FieldPresentation, p: int, q: int) -> GroupHom:
    """d₁: E¹_{p,q} → E¹_{p−1,q+1}."""
    if spectrum in DISPLAY_ONLY:
        raise FieldError(f"no differential defined for {spectrum}")
    src = e1_group(spectrum, F, p, q)
    tgt = e1_group(spectrum, F, p - 1, q + 1)
    blocks = []
    for i, sc in enumerate(src.components):
        if sc.ngens == 0:
            continue
        for m_tgt, operation in d1_row(spectrum, q, sc.offset):
            for j, tc in enumerate(tgt.components):
                if tc.offset != m_tgt or tc.ngens == 0:
                    continue
                mat = evaluate_op(F, operation, sc, tc)
                if any(v for row in mat.to_rows() for v in row):
                    blocks.append((i, j, format_sum(operation), mat))
    return GroupHom(src, tgt, tuple(blocks))


def compose_is_zero(first: GroupHom, second: GroupHom) -> bool:
    prod = second.full_matrix() @ first.full_matrix()
    orders = second.target.orders()
    for r, row in enumerate(prod.to_rows()):
        d = orders[r]
        for v in row:
            if (v % d if d else v) != 0:
                return False
    return True


@dataclass
class D1Region:
    spectrum: str
    field: str
    window: tuple[int, int, int, int]  # pmin, pmax, qmin, qmax
    cells: dict[tuple[int, int], GroupObject] = field(default_factory=dict)
    homs: dict[tuple[int, int], GroupHom] = field(default_factory=dict)


def d1_region(spectrum: str, F: FieldPresentation, window: tuple[int, int, int, int]) -> D1Region:
    """All E¹-cells in the window and every d₁ whose target is also in it; checks d₁∘d₁ = 0."""
    pmin, pmax, qmin, qmax = window
    region = D1Region(spectrum, F.name, window)
    for q in range(max(qmin, 0), qmax + 1):
        for p in range(pmin, pmax + 1):
            region.cells[(p, q)] = e1_group(spectrum, F, p, q)
    for (p, q) in region.cells:
        if (p - 1, q + 1) in region.cells:
            region.homs[(p, q)] = d1_matrix(spectrum, F, p, q)
    for (p, q), first in region.homs.items():
        second = region.homs.get((p - 1, q + 1))
        if second is not None and not compose_is_zero(first, second):
            raise ConsistencyError(f"d₁∘d₁ ≠ 0 for {spectrum} over {F.name} starting at ({p},{q})")
    return region
