"""Witt rings of finite fields by brute force on Gram matrices.

A form is reduced to its anisotropic part by repeatedly splitting off a
hyperbolic plane spanned by an isotropic vector; Witt classes are then
compared by brute-force isometry of anisotropic forms (dimension ≤ 2 over a
finite field, but nothing here assumes that).
"""

from __future__ import annotations

from itertools import product

from .finite_fields import FiniteField


def _vecs(K: FiniteField, n: int):
    return product(K.elements(), repeat=n)


def bil(K, G, x, y):
    acc = K.zero()
    for i, row in enumerate(G):
        for j, g in enumerate(row):
            acc = K.add(acc, K.mul(K.mul(x[i], g), y[j]))
    return acc


def _solve_complement(K, G, v, w):
    """Basis of {x : B(x,v) = B(x,w) = 0} by enumeration, then greedy independence."""
    n = len(G)
    z = K.zero()
    cand = [x for x in _vecs(K, n) if bil(K, G, x, v) == z and bil(K, G, x, w) == z and any(c != z for c in x)]
    basis: list[tuple] = []
    span = {tuple([z] * n)}
    for x in cand:
        if x in span:
            continue
        basis.append(x)
        new = set()
        for s in span:
            for c in K.elements():
                new.add(tuple(K.add(a, K.mul(c, b)) for a, b in zip(s, x)))
        span = new
        if len(basis) == n - 2:
            break
    return basis


def anisotropic_part(K: FiniteField, G):
    """Gram matrix of the anisotropic kernel."""
    n = len(G)
    z = K.zero()
    while n:
        iso = next(
            (v for v in _vecs(K, n) if any(c != z for c in v) and bil(K, G, v, v) == z),
            None,
        )
        if iso is None:
            return G
        w = next(x for x in _vecs(K, n) if bil(K, G, iso, x) == K.one())
        basis = _solve_complement(K, G, iso, w)
        G = [[bil(K, G, a, b) for b in basis] for a in basis]
        n = len(G)
    return G


def isometric(K: FiniteField, G, H) -> bool:
    n = len(G)
    if n != len(H):
        return False
    if n == 0:
        return True
    for entries in product(K.elements(), repeat=n * n):
        P = [entries[i * n : (i + 1) * n] for i in range(n)]  # rows are images of basis vectors
        if all(bil(K, G, P[i], P[j]) == H[i][j] for i in range(n) for j in range(n)):
            # P must be invertible: its rows span everything (check via nondegeneracy of H)
            return True
    return False


def diag(K, entries):
    n = len(entries)
    return [[entries[i] if i == j else K.zero() for j in range(n)] for i in range(n)]


class WittRing:
    """Witt classes generated by one-dimensional forms.

    Every class is a sum of classes ⟨a⟩, so addition of anisotropic
    representatives (dimension ≤ 4 after summing two of them) is all that is
    ever reduced by brute force.
    """

    def __init__(self, K: FiniteField):
        self.K = K
        self.classes: list = []
        self._add: dict[tuple[int, int], int] = {}
        self.zero = self._index([])
        self.one_dim = {a: self._index(diag(K, [a])) for a in K.units()}
        self.all = self.additive_closure(set(self.one_dim.values()))

    def _index(self, G) -> int:
        A = anisotropic_part(self.K, G)
        for k, B in enumerate(self.classes):
            if isometric(self.K, A, B):
                return k
        self.classes.append(A)
        return len(self.classes) - 1

    def add(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in self._add:
            A, B = self.classes[i], self.classes[j]
            n, m = len(A), len(B)
            z = self.K.zero()
            G = [
                [A[r][c] if r < n and c < n else (B[r - n][c - n] if r >= n and c >= n else z) for c in range(n + m)]
                for r in range(n + m)
            ]
            self._add[key] = self._index(G)
        return self._add[key]

    def of_diag(self, entries) -> int:
        acc = self.zero
        for a in entries:
            acc = self.add(acc, self.one_dim[a])
        return acc

    def additive_closure(self, gens: set[int]) -> set[int]:
        out = {self.zero}
        frontier = set(out)
        while frontier:
            new = set()
            for x in frontier:
                for g in gens:
                    s = self.add(x, g)
                    if s not in out:
                        new.add(s)
            out |= new
            frontier = new
        return out

    def power_of_I(self, k: int) -> set[int]:
        """I^k: additively generated by k-fold Pfister forms ⟨⟨a₁,…,a_k⟩⟩ = ⊗⟨1,−aᵢ⟩."""
        K = self.K
        if k == 0:
            return set(self.all)
        gens = set()
        for elems in product(K.units(), repeat=k):
            entries = [K.one()]
            for a in elems:
                entries = [e for x in entries for e in (x, K.mul(K.neg(a), x))]
            gens.add(self.of_diag(entries))
        return self.additive_closure(gens)


def filtration_orders(q: int, kmax: int = 4) -> list[int]:
    """|I^k / I^{k+1}| for k = 0 … kmax − 1 over F_q."""
    from .finite_fields import FIELDS

    W = WittRing(FIELDS[q])
    sizes = [len(W.power_of_I(k)) for k in range(kmax + 1)]
    return [sizes[k] // sizes[k + 1] for k in range(kmax)]
