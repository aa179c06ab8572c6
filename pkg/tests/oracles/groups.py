"""Brute-force groups: subsets of ⊕ Z/n_i enumerated element by element."""

from __future__ import annotations

from collections import Counter
from itertools import product
from math import gcd


def elements(orders):
    return list(product(*(range(n) for n in orders)))


def add(x, y, orders):
    return tuple((a + b) % n for a, b, n in zip(x, y, orders))


def element_order(x, orders) -> int:
    k = 1
    for a, n in zip(x, orders):
        if a:
            m = n // gcd(a, n)
            k = k * m // gcd(k, m)
    return k


def order_profile(elems, orders) -> Counter:
    """Multiset of element orders; determines a finite abelian group up to isomorphism."""
    return Counter(element_order(x, orders) for x in elems)


def cyclic_profile(torsion) -> Counter:
    """Order profile of ⊕ Z/d by enumeration."""
    return order_profile(elements(torsion), torsion)


def quotient_profile(sub, orders) -> Counter:
    """Order profile of the quotient of ⊕ Z/n_i by a subgroup given as a set."""
    sub = set(sub)
    seen, cosets = set(), []
    for x in elements(orders):
        if x in seen:
            continue
        coset = {add(x, s, orders) for s in sub}
        seen |= coset
        cosets.append(x)
    out = Counter()
    for x in cosets:
        k, y = 1, x
        while y not in sub:
            y = add(y, x, orders)
            k += 1
        out[k] += 1
    return out


def f2_rank(rows) -> int:
    """Rank over GF(2) as log₂ of the number of distinct row combinations."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return 0
    n = len(rows[0])
    span = {tuple([0] * n)}
    for r in rows:
        span |= {tuple(a ^ b for a, b in zip(s, r)) for s in span}
    return len(span).bit_length() - 1
