"""Exact linear algebra over GF(2) and over the integers.

GF(2) matrices keep one Python int per row, bit ``j`` holding column ``j``.
Python ints are arbitrary-width bit strings, so a row of any length is a
single packed word sequence and row operations are a single XOR.

Integer work goes through a Smith normal form written for exactness rather
than speed; all preset matrices are tiny.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "F2Matrix",
    "IntMatrix",
    "FgAbGroup",
    "LinalgError",
    "f2_rank_kernel_image",
    "f2_homology",
    "f2_reduce",
    "smith_normal_form",
    "fgab_homology",
    "int_matmul",
]


class LinalgError(ValueError):
    """Raised when a complex is malformed (shapes, or d∘d ≠ 0)."""


def _bits(vec: Sequence[int]) -> int:
    word = 0
    for j, v in enumerate(vec):
        if v & 1:
            word |= 1 << j
    return word


def _unbits(word: int, n: int) -> tuple[int, ...]:
    return tuple((word >> j) & 1 for j in range(n))


@dataclass(frozen=True)
class F2Matrix:
    """Dense GF(2) matrix with bit-packed rows. ``rows × cols``; maps GF(2)^cols → GF(2)^rows."""

    nrows: int
    ncols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise LinalgError("matrix dimensions must be nonnegative")
        if len(self.row_bits) != self.nrows:
            raise LinalgError("row count mismatch")
        limit = 1 << self.ncols
        for r in self.row_bits:
            if r < 0 or r >= limit:
                raise LinalgError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "F2Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise LinalgError("ragged rows")
            if any(v not in (0, 1) for v in r):
                raise LinalgError("entries must be 0 or 1")
        return cls(len(rows), ncols, tuple(_bits(r) for r in rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "F2Matrix":
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise LinalgError("column length mismatch")
            for i, v in enumerate(col):
                if v & 1:
                    rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    def to_rows(self) -> list[list[int]]:
        return [list(_unbits(r, self.ncols)) for r in self.row_bits]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple((r >> j) & 1 for r in self.row_bits)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise LinalgError("vector length mismatch")
        x = _bits(vec)
        return tuple(bin(r & x).count("1") & 1 for r in self.row_bits)

    def transpose(self) -> "F2Matrix":
        return F2Matrix.from_columns(self.to_rows(), self.ncols) if self.nrows else F2Matrix.zeros(self.ncols, 0)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise LinalgError(f"cannot compose {self.nrows}x{self.ncols} with {other.nrows}x{other.ncols}")
        out = []
        for r in self.row_bits:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other.row_bits[k]
                r >>= 1
                k += 1
            out.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(out))

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinalgError("shape mismatch in addition")
        return F2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.row_bits, other.row_bits)))

    def is_zero(self) -> bool:
        return not any(self.row_bits)


def _echelon(words: Iterable[int]) -> list[tuple[int, int]]:
    """Reduced echelon form of a list of bit-vectors, pivots at the lowest set bit.

    Returns (pivot, word) pairs sorted by pivot. Lowest bit = leftmost coordinate.
    """
    basis: dict[int, int] = {}
    for w in words:
        for piv, b in basis.items():
            if (w >> piv) & 1:
                w ^= b
        if w:
            piv = (w & -w).bit_length() - 1
            for other in list(basis):
                if (basis[other] >> piv) & 1:
                    basis[other] ^= w
            basis[piv] = w
    return sorted(basis.items())


def f2_reduce(vec: int, echelon: Sequence[tuple[int, int]]) -> int:
    """Reduce a packed vector against a reduced echelon basis."""
    for piv, b in echelon:
        if (vec >> piv) & 1:
            vec ^= b
    return vec


def f2_rank_kernel_image(m: F2Matrix):
    """Return (rank, kernel basis, image basis) with deterministic echelonized bases."""
    rref = _echelon(m.row_bits)
    rank = len(rref)
    pivots = [p for p, _ in rref]
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    kernel = []
    for f in free:
        v = 1 << f
        for piv, row in rref:
            if (row >> f) & 1:
                v |= 1 << piv
        kernel.append(v)
    kernel = [w for _, w in _echelon(kernel)]
    cols = [_bits(m.column(j)) for j in range(m.ncols)]
    image = [w for _, w in _echelon(cols)]
    return (
        rank,
        [_unbits(v, m.ncols) for v in kernel],
        [_unbits(v, m.nrows) for v in image],
    )


def f2_homology(f: F2Matrix, g: F2Matrix):
    """Homology ker g / im f at the middle of A --f--> B --g--> C.

    Representatives are kernel basis vectors (in echelon order) that are not in
    the span of the image together with the representatives already chosen.
    """
    if f.nrows != g.ncols:
        raise LinalgError(f"non-composable: f lands in dim {f.nrows}, g starts at dim {g.ncols}")
    if not (g @ f).is_zero():
        raise LinalgError("g∘f ≠ 0 over GF(2)")
    _, kernel, _ = f2_rank_kernel_image(g)
    _, _, image = f2_rank_kernel_image(f)
    span = _echelon(_bits(v) for v in image)
    reps = []
    for v in kernel:
        w = _bits(v)
        red = f2_reduce(w, span)
        if red:
            reps.append(v)
            span = _echelon([b for _, b in span] + [red])
    return len(reps), reps


# ---------------------------------------------------------------- integers


@dataclass(frozen=True)
class IntMatrix:
    nrows: int
    ncols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise LinalgError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.nrows or any(len(r) != self.ncols for r in self.entries):
            raise LinalgError("IntMatrix shape mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(v) for v in r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def to_rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return int_matmul(self, other)


def int_matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.ncols != b.nrows:
        raise LinalgError(f"cannot compose {a.nrows}x{a.ncols} with {b.nrows}x{b.ncols}")
    cols = list(zip(*b.entries)) if b.nrows else [()] * b.ncols
    return IntMatrix(
        a.nrows,
        b.ncols,
        tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a.entries),
    )


def smith_normal_form(m: IntMatrix):
    """Return (U, D, V) with U·M·V = D diagonal, d_1 | d_2 | …, all d_i ≥ 0."""
    nr, nc = m.nrows, m.ncols
    a = [list(r) for r in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(nr, nc):
        # pick the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return IntMatrix.from_rows(u, nr), IntMatrix.from_rows(a, nc), IntMatrix.from_rows(v, nc)


def _diagonal(d: IntMatrix) -> list[int]:
    return [d.entries[i][i] for i in range(min(d.nrows, d.ncols))]


@dataclass(frozen=True)
class FgAbGroup:
    """Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k in invariant-factor form (d_i | d_{i+1}, d_i ≥ 2).

    Generators are ordered free part first, then torsion.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise LinalgError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise LinalgError(f"invariant factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise LinalgError(f"divisibility chain broken: {a} ∤ {b}")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FgAbGroup":
        """Canonical form of ⊕ Z/n_i, with n_i = 0 meaning Z and n_i = 1 trivial."""
        orders = [abs(int(n)) for n in orders]
        free = sum(1 for n in orders if n == 0)
        tors = [n for n in orders if n > 1]
        if not tors:
            return cls(free, ())
        _, d, _ = smith_normal_form(IntMatrix.from_rows([[n if i == j else 0 for j in range(len(tors))] for i, n in enumerate(tors)]))
        return cls(free, tuple(x for x in _diagonal(d) if x > 1))

    @classmethod
    def elementary(cls, dim: int) -> "FgAbGroup":
        return cls(0, (2,) * dim)

    def orders(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.torsion

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_orders(self.orders() + other.orders())

    def doubled(self) -> "FgAbGroup":
        """The subgroup 2G."""
        return FgAbGroup.from_orders((0,) * self.free_rank + tuple(d // gcd(d, 2) for d in self.torsion))

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"


def _relations(orders: Sequence[int]) -> list[list[int]]:
    """Columns of the relation lattice of ⊕ Z/n_i, as a list of column vectors."""
    n = len(orders)
    return [[o if i == k else 0 for i in range(n)] for k, o in enumerate(orders) if o]


def _in_lattice(vec: Sequence[int], orders: Sequence[int]) -> bool:
    return all((x == 0) if o == 0 else (x % o == 0) for x, o in zip(vec, orders))


def _columns(m: IntMatrix) -> list[list[int]]:
    return [[m.entries[i][j] for i in range(m.nrows)] for j in range(m.ncols)]


def _integer_kernel(cols: list[list[int]], nrows: int, ncols: int) -> list[list[int]]:
    """Basis of the integer kernel of the matrix with the given columns."""
    if ncols == 0:
        return []
    mat = IntMatrix.from_rows([[cols[j][i] for j in range(ncols)] for i in range(nrows)], ncols)
    _, d, v = smith_normal_form(mat)
    diag = _diagonal(d)
    rank = sum(1 for x in diag if x)
    return [[v.entries[i][j] for i in range(ncols)] for j in range(rank, ncols)]


def _lattice_basis(vectors: list[list[int]], n: int):
    """Return (basis columns B, coordinate function) for the span of ``vectors`` in Z^n."""
    if not vectors:
        return [], lambda w: []
    mat = IntMatrix.from_rows([[v[i] for v in vectors] for i in range(n)], len(vectors))
    u, d, _ = smith_normal_form(mat)
    diag = [x for x in _diagonal(d) if x]
    r = len(diag)
    # U·K·V = D, so span(K) = U^{-1} · span(D) and a basis is (U^{-1} e_i) d_i.
    uinv = _unimodular_inverse(u)
    basis = [[uinv.entries[i][k] * diag[k] for i in range(n)] for k in range(r)]

    def coords(w: Sequence[int]) -> list[int]:
        uw = [sum(u.entries[i][j] * w[j] for j in range(n)) for i in range(n)]
        out = []
        for k in range(r):
            if uw[k] % diag[k]:
                raise LinalgError("vector outside lattice")
            out.append(uw[k] // diag[k])
        if any(uw[k] for k in range(r, n)):
            raise LinalgError("vector outside lattice")
        return out

    return basis, coords


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix by exact Gauss-Jordan over the rationals."""
    from fractions import Fraction

    n = u.nrows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(u.entries)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                k = a[r][c]
                a[r] = [x - k * y for x, y in zip(a[r], a[c])]
    out = []
    for row in a:
        vals = row[n:]
        if any(x.denominator != 1 for x in vals):
            raise LinalgError("matrix is not unimodular")
        out.append([int(x) for x in vals])
    return IntMatrix.from_rows(out, n)


def fgab_homology(
    f: IntMatrix,
    g: IntMatrix,
    src_orders: Sequence[int],
    mid_orders: Sequence[int],
    tgt_orders: Sequence[int],
) -> FgAbGroup:
    """Homology ker g / im f of A --f--> B --g--> C for presented groups.

    Each group is ⊕ Z/n_i on its generators (n_i = 0 for Z); maps are integer
    matrices on generators. Both maps must be well defined and g∘f must vanish.
    """
    na, nb, nc = len(src_orders), len(mid_orders), len(tgt_orders)
    if (f.nrows, f.ncols) != (nb, na) or (g.nrows, g.ncols) != (nc, nb):
        raise LinalgError(f"non-composable shapes: f {f.nrows}x{f.ncols}, g {g.nrows}x{g.ncols} for orders {na},{nb},{nc}")
    for name, m, so, to in (("f", f, src_orders, mid_orders), ("g", g, mid_orders, tgt_orders)):
        for rel in _relations(so):
            img = [sum(m.entries[i][j] * rel[j] for j in range(len(so))) for i in range(len(to))]
            if not _in_lattice(img, to):
                raise LinalgError(f"{name} is not well defined on the presented source")
    gf = int_matmul(g, f)
    for col in _columns(gf):
        if not _in_lattice(col, tgt_orders):
            raise LinalgError("g∘f ≠ 0")
    # ker g inside B: b ∈ Z^nb with g·b in the relation lattice of C
    rel_c = _relations(tgt_orders)
    big_cols = _columns(g) + rel_c
    kernel_full = _integer_kernel(big_cols, nc, nb + len(rel_c))
    kvecs = [k[:nb] for k in kernel_full]
    # the relations of B also lie in ker g (g well defined); include for safety
    kvecs += _relations(mid_orders)
    basis, coords = _lattice_basis(kvecs, nb)
    r = len(basis)
    denom = _columns(f) + _relations(mid_orders)
    rel_rows = [coords(w) for w in denom]
    if r == 0:
        return FgAbGroup()
    if not rel_rows:
        return FgAbGroup(r, ())
    mat = IntMatrix.from_rows([[rel_rows[k][i] for k in range(len(rel_rows))] for i in range(r)], len(rel_rows))
    _, d, _ = smith_normal_form(mat)
    diag = _diagonal(d) + [0] * (r - min(mat.nrows, mat.ncols))
    return FgAbGroup.from_orders(diag)
