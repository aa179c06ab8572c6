"""Truncated mod-2 Milnor K-rings and the bigraded ring h^{*,*} they determine."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from types import MappingProxyType
from typing import Mapping, Sequence

from ..exact_linalg import F2Matrix, FgAbGroup, IntMatrix, f2_rank_kernel_image

DEFAULT_TRUNCATION = 12


class FieldError(ValueError):
    """Invalid field presentation or a request outside its truncation."""


@dataclass(frozen=True)
class IntegralCell:
    """Data for H^{p,q}(F; Z): a finitely generated group, its reduction mod 2, and a divisible marker.

    ``pr`` has one row per basis element of h^{p,q} (= kᴹ_p) and one column per
    generator of ``group``. ``divisible`` records an extra uniquely 2-divisible
    summand that is kept for display but is invisible to every mod-2 map.
    """

    p: int
    q: int
    group: FgAbGroup
    pr: IntMatrix
    divisible: bool = False


@dataclass(frozen=True)
class FieldPresentation:
    name: str
    truncation: int
    dims: tuple[int, ...]
    basis: tuple[tuple[str, ...], ...]
    rho: tuple[int, ...]
    # mult[(a, b)][i][j] is the product e_i·e_j as a bitmask over the degree a+b basis
    mult: Mapping[tuple[int, int], tuple[tuple[int, ...], ...]]
    integral: Mapping[tuple[int, int], IntegralCell] = field(default_factory=dict)
    beilinson_soule: bool = False
    zero_cells: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "mult", MappingProxyType(dict(self.mult)))
        object.__setattr__(self, "integral", MappingProxyType(dict(self.integral)))
        object.__setattr__(self, "zero_cells", frozenset(self.zero_cells))
        validate(self)

    def __eq__(self, other):
        if not isinstance(other, FieldPresentation):
            return NotImplemented
        return (
            self.name == other.name
            and self.truncation == other.truncation
            and self.dims == other.dims
            and self.basis == other.basis
            and self.rho == other.rho
            and dict(self.mult) == dict(other.mult)
            and dict(self.integral) == dict(other.integral)
            and self.beilinson_soule == other.beilinson_soule
            and self.zero_cells == other.zero_cells
        )

    def __hash__(self):
        return hash((self.name, self.truncation, self.dims, self.rho))

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.truncation:
            raise FieldError(f"Milnor degree {n} beyond truncation {self.truncation} of {self.name}")
        return self.dims[n]

    def product_bits(self, a: int, i: int, b: int, j: int) -> int:
        """Basis product e_i·e_j for e_i ∈ kᴹ_a, e_j ∈ kᴹ_b, as a bitmask in degree a+b."""
        if a == 0:
            return 1 << j
        if b == 0:
            return 1 << i
        if a + b > self.truncation:
            raise FieldError(f"product lands in degree {a + b} beyond truncation {self.truncation}")
        table = self.mult.get((a, b))
        if table is None:
            return 0
        return table[i][j]

    def multiply(self, a: int, x: Sequence[int], b: int, y: Sequence[int]) -> tuple[int, ...]:
        """Product of coordinate vectors x ∈ kᴹ_a, y ∈ kᴹ_b."""
        n = self.dim(a + b)
        acc = 0
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    acc ^= self.product_bits(a, i, b, j)
        return tuple((acc >> k) & 1 for k in range(n))

    def rho_power(self, k: int) -> tuple[int, ...]:
        """Coordinates of ρ^k in kᴹ_k."""
        vec: tuple[int, ...] = (1,)
        for d in range(k):
            vec = self.multiply(d, vec, 1, self.rho)
        return vec


def _label(F: FieldPresentation, n: int, i: int) -> str:
    return F.basis[n][i]


def validate(F: FieldPresentation) -> None:
    """Check every presentation axiom; raise FieldError naming the failing basis data."""
    N = F.truncation
    if N < 2:
        raise FieldError(f"truncation {N} too small (need at least 2)")
    if len(F.dims) != N + 1:
        raise FieldError(f"dims has {len(F.dims)} entries, expected truncation+1 = {N + 1}")
    if F.dims[0] != 1:
        raise FieldError("dims[0] must be 1")
    if any(d < 0 for d in F.dims):
        raise FieldError("negative dimension")
    if len(F.basis) != N + 1 or any(len(F.basis[n]) != F.dims[n] for n in range(N + 1)):
        raise FieldError("basis labels do not match dims")
    if len(F.rho) != F.dims[1] or any(v not in (0, 1) for v in F.rho):
        raise FieldError("rho must be a 0/1 vector in degree 1")
    for (a, b), table in F.mult.items():
        if a < 1 or b < 1 or a + b > N:
            raise FieldError(f"mult entry ({a},{b}) outside 1 ≤ a,b and a+b ≤ {N}")
        if len(table) != F.dims[a] or any(len(row) != F.dims[b] for row in table):
            raise FieldError(f"mult table ({a},{b}) has the wrong shape")
        limit = 1 << F.dims[a + b]
        for row in table:
            for v in row:
                if v < 0 or v >= limit:
                    raise FieldError(f"mult table ({a},{b}) has an entry outside degree {a + b}")
    # commutativity
    for a in range(1, N):
        for b in range(1, N - a + 1):
            for i, j in product(range(F.dims[a]), range(F.dims[b])):
                if F.product_bits(a, i, b, j) != F.product_bits(b, j, a, i):
                    raise FieldError(
                        f"commutativity fails on basis pair ({_label(F, a, i)}, {_label(F, b, j)}) in degrees ({a},{b})"
                    )
    # associativity on basis triples
    for a in range(1, N):
        for b in range(1, N - a):
            for c in range(1, N - a - b + 1):
                for i, j, k in product(range(F.dims[a]), range(F.dims[b]), range(F.dims[c])):
                    ei = _unit(F.dims[a], i)
                    ej = _unit(F.dims[b], j)
                    ek = _unit(F.dims[c], k)
                    left = F.multiply(a + b, F.multiply(a, ei, b, ej), c, ek)
                    right = F.multiply(a, ei, b + c, F.multiply(b, ej, c, ek))
                    if left != right:
                        raise FieldError(
                            "associativity fails on basis triple "
                            f"({_label(F, a, i)}, {_label(F, b, j)}, {_label(F, c, k)})"
                        )
    # x·x = ρ·x in degree 2
    for i in range(F.dims[1]):
        e = _unit(F.dims[1], i)
        if F.multiply(1, e, 1, e) != F.multiply(1, F.rho, 1, e):
            raise FieldError(f"x·x ≠ ρ·x for degree-1 basis element {_label(F, 1, i)}")
    for (p, q), cell in F.integral.items():
        if (cell.p, cell.q) != (p, q):
            raise FieldError(f"integral cell keyed ({p},{q}) claims bidegree ({cell.p},{cell.q})")
        hdim = F.dims[p] if 0 <= p <= q and p <= N else 0
        if cell.pr.nrows != hdim or cell.pr.ncols != cell.group.ngens:
            raise FieldError(
                f"pr matrix of H^{{{p},{q}}} is {cell.pr.nrows}x{cell.pr.ncols}, "
                f"expected {hdim}x{cell.group.ngens}"
            )
        for k, d in enumerate(cell.group.orders()):
            if d % 2 and any(row[k] % 2 for row in cell.pr.entries):
                raise FieldError(f"pr of H^{{{p},{q}}} is not defined on a generator of odd order {d}")
        if p == q and hdim:
            m = F2Matrix.from_rows([[v & 1 for v in row] for row in cell.pr.entries], cell.pr.ncols)
            if f2_rank_kernel_image(m)[0] != hdim:
                raise FieldError(f"pr: H^{{{p},{p}}} → kᴹ_{p} is not surjective")


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


# ----------------------------------------------------------------- classes


@dataclass(frozen=True)
class MotClass:
    """An element τ^{q−p}·c of h^{p,q}, with c given by coordinates in the kᴹ_p basis.

    Outside 0 ≤ p ≤ q the group is zero and ``coords`` is empty.
    """

    p: int
    q: int
    coords: tuple[int, ...]

    @property
    def n(self) -> int:
        """Exponent of τ."""
        return self.q - self.p

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "MotClass") -> "MotClass":
        if (self.p, self.q) != (other.p, other.q):
            raise FieldError("cannot add classes of different bidegree")
        return MotClass(self.p, self.q, tuple(a ^ b for a, b in zip(self.coords, other.coords)))


def h_dim(F: FieldPresentation, p: int, q: int) -> int:
    if q > F.truncation:
        raise FieldError(f"weight {q} beyond truncation {F.truncation} of {F.name}")
    if 0 <= p <= q:
        return F.dims[p]
    return 0


def make_class(F: FieldPresentation, p: int, q: int, coords: Sequence[int] | None = None) -> MotClass:
    d = h_dim(F, p, q)
    if coords is None:
        coords = (0,) * d
    coords = tuple(int(c) & 1 for c in coords)
    if len(coords) != d:
        raise FieldError(f"h^{{{p},{q}}} has dimension {d}, got {len(coords)} coordinates")
    return MotClass(p, q, coords)


def zero_class(F: FieldPresentation, p: int, q: int) -> MotClass:
    return make_class(F, p, q)


def basis_classes(F: FieldPresentation, p: int, q: int) -> list[MotClass]:
    d = h_dim(F, p, q)
    return [MotClass(p, q, _unit(d, i)) for i in range(d)]


def tau(F: FieldPresentation) -> MotClass:
    return MotClass(0, 1, (1,))


def rho(F: FieldPresentation) -> MotClass:
    return MotClass(1, 1, F.rho)


def cup(F: FieldPresentation, x: MotClass, y: MotClass) -> MotClass:
    p, q = x.p + y.p, x.q + y.q
    if q > F.truncation:
        raise FieldError(f"cup product lands in weight {q} beyond truncation {F.truncation}")
    if not (0 <= p <= q):
        return MotClass(p, q, ())
    if not x.coords or not y.coords:
        return zero_class(F, p, q)
    return MotClass(p, q, F.multiply(x.p, x.coords, y.p, y.coords))


def class_label(F: FieldPresentation, x: MotClass) -> str:
    """Human-readable sum of basis elements, e.g. ``τ^2·{u}``."""
    terms = [F.basis[x.p][i] for i, c in enumerate(x.coords) if c]
    if not terms:
        return "0"
    prefix = "" if x.n == 0 else ("τ" if x.n == 1 else f"τ^{x.n}")
    out = []
    for t in terms:
        if not prefix:
            out.append(t)
        elif t == "1":
            out.append(prefix)
        else:
            out.append(f"{prefix}·{t}")
    return " + ".join(out)


# ------------------------------------------------------------ integral data


@dataclass(frozen=True)
class IntegralLookup:
    """Result of asking for H^{p,q}: explicit data, or a zero/divisible verdict and where it came from.

    ``status`` is one of ``data``, ``zero`` (proved: listed zero cell or forced
    by the field), ``conditional`` (zero only under the Beilinson–Soulé flag) or
    ``divisible`` (uniquely divisible, no mod-2 content).
    """

    p: int
    q: int
    status: str
    cell: IntegralCell | None = None


class MissingIntegralCell(FieldError):
    pass


def integral_cell(F: FieldPresentation, p: int, q: int) -> IntegralLookup:
    if (p, q) in F.integral:
        return IntegralLookup(p, q, "data", F.integral[(p, q)])
    if (p, q) in F.zero_cells:
        return IntegralLookup(p, q, "zero")
    if q < 0 or p > q:
        return IntegralLookup(p, q, "zero")
    if q == 0:
        if p == 0:
            raise MissingIntegralCell(f"integral cell required: H^{{0,0}} for {F.name}")
        return IntegralLookup(p, q, "zero")
    if q == 1 and p != 1:
        return IntegralLookup(p, q, "zero")
    if p <= 0:
        return IntegralLookup(p, q, "conditional" if F.beilinson_soule else "divisible")
    raise MissingIntegralCell(f"integral cell required: H^{{{p},{q}}} for {F.name}")
