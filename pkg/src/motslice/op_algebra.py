"""Symbolic motivic Steenrod operations of weight ≤ 2 over a field.

Words are tuples of letters read as composites: ``("Sq1", "Sq2")`` is Sq¹∘Sq²,
so the rightmost letter acts first. Letters::

    Sq1 … Sq5   Steenrod squares, bidegree (i, ⌊i/2⌋)
    d           integral Bockstein δ: MZ/2 → Σ^{1,0} MZ
    pr          reduction MZ → MZ/2
    t, r        left multiplication by τ ∈ h^{0,1}, ρ ∈ h^{1,1}

An :class:`OpSum` is a formal GF(2)-sum of words of one bidegree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "OpError",
    "OutsideWeightError",
    "OpSum",
    "op",
    "op_compose",
    "op_normalize",
    "Rule",
    "RULES",
    "NormalForm",
    "word_bidegree",
    "word_types",
    "format_word",
    "format_sum",
    "d1_row",
    "d1_symbolic",
    "D1_CASES",
    "verify_d1_squared",
    "verify_adem",
    "hom_basis_table",
    "HomEntry",
    "in_tabulated_span",
]

Word = tuple[str, ...]

SQ_LETTERS = ("Sq1", "Sq2", "Sq3", "Sq4", "Sq5")
COEFF_LETTERS = ("t", "r")
LETTERS = SQ_LETTERS + ("d", "pr") + COEFF_LETTERS

# (source coefficients, target coefficients)
_TYPES = {name: ("MZ2", "MZ2") for name in SQ_LETTERS + COEFF_LETTERS}
_TYPES["d"] = ("MZ2", "MZ")
_TYPES["pr"] = ("MZ", "MZ2")

_BIDEG = {f"Sq{i}": (i, i // 2) for i in range(1, 6)}
_BIDEG.update({"d": (1, 0), "pr": (0, 0), "t": (0, 1), "r": (1, 1)})

_ORDER = {name: k for k, name in enumerate(("d", "t", "r") + SQ_LETTERS + ("pr",))}

ADMISSIBLE: tuple[Word, ...] = (
    (),
    ("Sq1",),
    ("Sq2",),
    ("Sq2", "Sq1"),
    ("Sq3",),
    ("Sq3", "Sq1"),
    ("Sq4",),
    ("Sq4", "Sq1"),
    ("Sq5",),
    ("Sq5", "Sq1"),
)


class OpError(ValueError):
    """Incompatible composition (MZ vs MZ/2 wiring) or malformed word."""


class OutsideWeightError(OpError):
    """The rewriting system cannot bring a word to normal form."""


def word_bidegree(w: Word) -> tuple[int, int]:
    s = t = 0
    for letter in w:
        a, b = _BIDEG[letter]
        s += a
        t += b
    return s, t


def word_types(w: Word) -> tuple[str | None, str | None]:
    """(source, target) coefficient types; None for the empty word, which is polymorphic."""
    for letter in w:
        if letter not in _TYPES:
            raise OpError(f"unknown letter {letter!r}")
    for left, right in zip(w, w[1:]):
        if _TYPES[right][1] != _TYPES[left][0]:
            raise OpError(f"cannot compose {letter_name(left)} after {letter_name(right)}")
    if not w:
        return None, None
    return _TYPES[w[-1]][0], _TYPES[w[0]][1]


_PRETTY = {"Sq1": "Sq¹", "Sq2": "Sq²", "Sq3": "Sq³", "Sq4": "Sq⁴", "Sq5": "Sq⁵", "d": "δ", "pr": "pr", "t": "τ", "r": "ρ"}


def letter_name(letter: str) -> str:
    return _PRETTY.get(letter, letter)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    out = ""
    for k, letter in enumerate(w):
        if k and (letter in ("pr", "d") or w[k - 1] in ("pr", "d")):
            out += "∘"
        out += letter_name(letter)
    # collapse repeated coefficients: ττ → τ², ρρρ → ρ³
    for sym in ("τ", "ρ"):
        for n in range(9, 1, -1):
            out = out.replace(sym * n, f"{sym}{_sup(n)}")
    return out


def _sup(n: int) -> str:
    return "".join("⁰¹²³⁴⁵⁶⁷⁸⁹"[int(c)] for c in str(n))


def _word_key(w: Word):
    return (len(w), tuple(_ORDER[x] for x in w))


@dataclass(frozen=True)
class OpSum:
    """A formal GF(2)-sum of words."""

    terms: frozenset[Word] = field(default_factory=frozenset)

    def __post_init__(self):
        terms = frozenset(tuple(w) for w in self.terms)
        object.__setattr__(self, "terms", terms)
        degs = {word_bidegree(w) for w in terms}
        if len(degs) > 1:
            raise OpError(f"terms of different bidegrees in one sum: {sorted(degs)}")
        for w in terms:
            word_types(w)

    @classmethod
    def of(cls, *words: Iterable[str]) -> "OpSum":
        acc: set[Word] = set()
        for w in words:
            acc ^= {tuple(w)}
        return cls(frozenset(acc))

    def __add__(self, other: "OpSum") -> "OpSum":
        return OpSum(self.terms ^ other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[Word]:
        return sorted(self.terms, key=_word_key)

    @property
    def bidegree(self) -> tuple[int, int] | None:
        for w in self.terms:
            return word_bidegree(w)
        return None

    def types(self) -> tuple[str | None, str | None]:
        src = tgt = None
        for w in self.terms:
            s, t = word_types(w)
            if s is not None:
                if src not in (None, s) or tgt not in (None, t):
                    raise OpError("terms of different coefficient types in one sum")
                src, tgt = s, t
        return src, tgt

    def __str__(self) -> str:
        return format_sum(self)


def op(spec: str) -> OpSum:
    """Parse a space-separated word, with ``+`` between terms: ``"Sq2 + r Sq1"``."""
    words = []
    for part in spec.split("+"):
        letters = tuple(x for x in part.split() if x)
        if letters == ("1",):
            letters = ()
        if letters == ("0",):
            continue
        words.append(letters)
    return OpSum.of(*words)


def format_sum(s: OpSum) -> str:
    if not s.terms:
        return "0"
    return " + ".join(format_word(w) for w in s.sorted_terms())


ZERO = OpSum()


def op_compose(a: OpSum, b: OpSum) -> OpSum:
    """a∘b: concatenation distributed over sums, with coefficient types checked."""
    acc: set[Word] = set()
    for u in a.terms:
        for v in b.terms:
            if u and v:
                src_u = _TYPES[u[-1]][0]
                tgt_v = _TYPES[v[0]][1]
                if src_u != tgt_v:
                    raise OpError(f"cannot compose {format_word(u)} after {format_word(v)}: {tgt_v} is not {src_u}")
            acc ^= {u + v}
    return OpSum(frozenset(acc))


# ------------------------------------------------------------------ rewriting


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: tuple[str, str]
    rhs: tuple[Word, ...]
    phase: int  # 1: structural and coefficient moves, 2: Sq-pair reductions
    origin: str  # "listed", "derived" or "extra"
    note: str = ""

    def text(self) -> str:
        rhs = format_sum(OpSum.of(*self.rhs)) if self.rhs else "0"
        return f"{format_word(self.lhs)} = {rhs}"


RULES: tuple[Rule, ...] = (
    # structural
    Rule("pr∘δ", ("pr", "d"), (("Sq1",),), 1, "listed", "Sq¹ is the composite pr∘δ"),
    Rule("δ∘pr", ("d", "pr"), (), 1, "extra", "consecutive maps in the cofiber sequence MZ → MZ → MZ/2"),
    Rule("Sq¹∘pr", ("Sq1", "pr"), (), 1, "extra", "pr∘δ∘pr with δ∘pr = 0"),
    Rule("δ∘Sq¹", ("d", "Sq1"), (), 1, "extra", "δ∘pr∘δ with δ∘pr = 0"),
    Rule("δ∘Sq³", ("d", "Sq3"), (), 1, "extra", "δ∘Sq¹∘Sq²"),
    Rule("δ∘Sq⁵", ("d", "Sq5"), (), 1, "extra", "δ∘Sq¹∘Sq⁴, using Sq¹Sq⁴ = Sq⁵"),
    # coefficients move left
    Rule("τρ", ("r", "t"), (("t", "r"),), 1, "listed", "coefficients commute"),
    Rule("Sq¹τ", ("Sq1", "t"), (("t", "Sq1"), ("r",)), 1, "listed"),
    Rule("Sq¹ρ", ("Sq1", "r"), (("r", "Sq1"),), 1, "listed"),
    Rule("Sq²τ", ("Sq2", "t"), (("t", "Sq2"), ("t", "r", "Sq1")), 1, "listed"),
    Rule("Sq²ρ", ("Sq2", "r"), (("r", "Sq2"),), 1, "listed"),
    Rule("Sq³τ", ("Sq3", "t"), (("Sq1", "Sq2", "t"),), 1, "derived", "expand Sq³ = Sq¹Sq² before moving τ"),
    Rule("Sq³ρ", ("Sq3", "r"), (("Sq1", "Sq2", "r"),), 1, "derived", "expand Sq³ = Sq¹Sq² before moving ρ"),
    # Sq pairs
    Rule("Sq¹Sq¹", ("Sq1", "Sq1"), (), 2, "listed"),
    Rule("Sq¹Sq²", ("Sq1", "Sq2"), (("Sq3",),), 2, "listed"),
    Rule("Sq¹Sq³", ("Sq1", "Sq3"), (), 2, "listed"),
    Rule("Sq²Sq²", ("Sq2", "Sq2"), (("t", "Sq3", "Sq1"),), 2, "listed"),
    Rule("Sq²Sq³", ("Sq2", "Sq3"), (("Sq5",), ("Sq4", "Sq1")), 2, "listed"),
    Rule("Sq³Sq³", ("Sq3", "Sq3"), (("Sq5", "Sq1"),), 2, "listed"),
    Rule("Sq³Sq²", ("Sq3", "Sq2"), (("r", "Sq3", "Sq1"),), 2, "derived", "Sq¹Sq²Sq² = Sq¹τSq³Sq¹"),
    Rule("Sq¹Sq⁴", ("Sq1", "Sq4"), (("Sq5",),), 2, "extra", "Adem relation Sq¹Sq^{2k} = Sq^{2k+1}"),
    Rule("Sq¹Sq⁵", ("Sq1", "Sq5"), (), 2, "extra", "Sq¹Sq¹Sq⁴"),
)

_RULE_INDEX = {r.lhs: r for r in RULES}


@dataclass(frozen=True)
class TraceStep:
    rule: str
    before: Word
    after: tuple[Word, ...]

    def text(self) -> str:
        after = " + ".join(format_word(w) for w in self.after) if self.after else "0"
        return f"{format_word(self.before)} → {after}   [{self.rule}]"


@dataclass(frozen=True)
class NormalForm:
    value: OpSum
    trace: tuple[TraceStep, ...] = ()

    @property
    def rules_used(self) -> frozenset[str]:
        return frozenset(s.rule for s in self.trace)

    def is_zero(self) -> bool:
        return not self.value.terms

    def __str__(self) -> str:
        return format_sum(self.value)


def _find(w: Word, rules: dict, phase: int, rightmost: bool):
    idx = range(len(w) - 2, -1, -1) if rightmost else range(len(w) - 1)
    for k in idx:
        r = rules.get((w[k], w[k + 1]))
        if r is not None and r.phase == phase:
            return k, r
    return None


def is_normal(w: Word) -> bool:
    """[δ] τ^a ρ^b (admissible Sq-word) [pr]."""
    k = 0
    n = len(w)
    if k < n and w[k] == "d":
        k += 1
    while k < n and w[k] == "t":
        k += 1
    while k < n and w[k] == "r":
        k += 1
    end = n
    if end > k and w[end - 1] == "pr":
        end -= 1
    return tuple(w[k:end]) in ADMISSIBLE


def op_normalize(
    w: OpSum,
    *,
    rules: Iterable[Rule] | None = None,
    rightmost: bool = False,
    max_steps: int = 10_000,
) -> NormalForm:
    """Rewrite to normal form: first move τ, ρ left (and resolve δ/pr), then reduce Sq-pairs.

    Raises :class:`OutsideWeightError` when a word is stuck outside normal form.
    """
    table = _RULE_INDEX if rules is None else {r.lhs: r for r in rules}
    todo = list(w.sorted_terms())
    done: set[Word] = set()
    trace: list[TraceStep] = []
    steps = 0
    while todo:
        word = todo.pop()
        hit = _find(word, table, 1, rightmost) or _find(word, table, 2, rightmost)
        if hit is None:
            if not is_normal(word):
                raise OutsideWeightError(f"no listed relation reduces {format_word(word)}: outside supported weight")
            done ^= {word}
            continue
        steps += 1
        if steps > max_steps:
            raise OutsideWeightError(f"rewriting did not terminate on {format_sum(w)}")
        k, rule = hit
        new = tuple(word[:k] + r + word[k + 2 :] for r in rule.rhs)
        trace.append(TraceStep(rule.name, word, new))
        todo.extend(new)
    return NormalForm(OpSum(frozenset(done)), tuple(trace))


# ----------------------------------------------------------------- d₁ rows

SPECTRA_WITH_D1 = ("KT", "KQ", "KGL2")

SQ3SQ1 = op("Sq3 Sq1")
SQ2 = op("Sq2")
SQ2_RHO = op("Sq2 + r Sq1")
TAU = op("t")
SQ2_PR = op("Sq2 pr")
TAU_PR = op("t pr")
DELTA_SQ2SQ1 = op("d Sq2 Sq1")
Q1 = op("Sq3 + Sq2 Sq1")

# name → (entries as (offset shift, operation)); offsets are those of the
# summand Σ^{m+q,q}, and a d₁ entry lands in slice q+1 at offset m + shift.
D1_CASES: dict[tuple[str, str], tuple[tuple[int, OpSum], ...]] = {
    ("KT", "m≡0"): ((2, SQ3SQ1), (0, SQ2)),
    ("KT", "m≡2"): ((2, SQ3SQ1), (0, SQ2_RHO), (-2, TAU)),
    ("KQ", "m≡0"): ((2, SQ3SQ1), (0, SQ2)),
    ("KQ", "m≡2"): ((2, SQ3SQ1), (0, SQ2_RHO), (-2, TAU)),
    ("KQ", "integral q≡0"): ((0, SQ2_PR),),
    ("KQ", "integral q≡2"): ((0, SQ2_PR), (-2, TAU_PR)),
    ("KQ", "top q≡1"): ((2, DELTA_SQ2SQ1), (0, SQ2)),
    ("KQ", "top q≡3"): ((2, DELTA_SQ2SQ1), (0, SQ2_RHO), (-2, TAU)),
    ("KGL2", "Q1"): ((1, Q1),),
}


def d1_case(spectrum: str, q: int, m: int) -> tuple[str, str]:
    """Which row applies to the summand at offset m of slice q."""
    if spectrum == "KGL2":
        return ("KGL2", "Q1")
    if spectrum == "KT":
        return ("KT", f"m≡{m % 4}")
    if spectrum == "KQ":
        if q % 2 == 0 and m == q:
            return ("KQ", f"integral q≡{q % 4}")
        if q % 2 == 1 and m == q - 1:
            return ("KQ", f"top q≡{q % 4}")
        return ("KQ", f"m≡{m % 4}")
    raise OpError(f"no d₁ is defined for {spectrum}")


def d1_symbolic(spectrum: str, case: str) -> tuple[tuple[int, OpSum], ...]:
    try:
        return D1_CASES[(spectrum, case)]
    except KeyError:
        raise OpError(f"unknown d₁ case {spectrum}/{case}") from None


def d1_row(spectrum: str, q: int, m: int) -> list[tuple[int, OpSum]]:
    """(target offset in slice q+1, operation) for every target summand that exists."""
    from .slice_pages import summand_offsets

    targets = summand_offsets(spectrum, q + 1, m - 4, m + 4)
    row = []
    for shift, operation in d1_symbolic(*d1_case(spectrum, q, m)):
        if (m + shift) in targets:
            row.append((m + shift, operation))
    return row


@dataclass
class CompositeEntry:
    spectrum: str
    q: int
    source: int
    target: int
    paths: list[tuple[int, OpSum]]
    composite: OpSum
    normal: NormalForm

    @property
    def ok(self) -> bool:
        return self.normal.is_zero()

    def text(self) -> str:
        src_case = d1_case(self.spectrum, self.q, self.source)[1]
        via = " + ".join(f"[{format_sum(o)}]" for _, o in self.paths) or "0"
        status = "ok" if self.ok else "NONZERO"
        return (
            f"{self.spectrum} q≡{self.q % 4} ({src_case}) offset {self.source} → {self.target}: "
            f"{via} ⇒ {format_sum(self.normal.value)}  {status}"
        )


@dataclass
class D1SquaredReport:
    spectrum: str
    entries: list[CompositeEntry]
    extras_used: frozenset[str]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def verify_d1_squared(spectrum: str, depth: int = 10) -> D1SquaredReport:
    """Normalize every entry of d₁∘d₁ over one representative of each residue class of q."""
    from .slice_pages import summand_offsets

    if spectrum not in SPECTRA_WITH_D1:
        raise OpError(f"no d₁ is defined for {spectrum}")
    entries = []
    extras: set[str] = set()
    extra_names = {r.name for r in RULES if r.origin == "extra"}
    base = 12
    for q in range(base, base + 4):
        for m in sorted(summand_offsets(spectrum, q, q - depth, q + 1)):
            finals: dict[int, list[tuple[int, OpSum]]] = {}
            for mid, first in d1_row(spectrum, q, m):
                for end, second in d1_row(spectrum, q + 1, mid):
                    finals.setdefault(end, []).append((mid, op_compose(second, first)))
            for end in sorted(finals):
                paths = finals[end]
                total = ZERO
                for _, c in paths:
                    total = total + c
                nf = op_normalize(total)
                extras |= nf.rules_used & extra_names
                entries.append(CompositeEntry(spectrum, q, m, end, paths, total, nf))
    return D1SquaredReport(spectrum, entries, frozenset(extras))


# --------------------------------------------------------------- Adem check


@dataclass
class AdemRecord:
    name: str
    lhs: OpSum
    expected: OpSum
    normal: NormalForm
    origin: str

    @property
    def ok(self) -> bool:
        return self.normal.value == op_normalize(self.expected).value

    def text(self) -> str:
        steps = "; ".join(s.text() for s in self.normal.trace) or "already normal"
        return f"{format_sum(self.lhs)} = {format_sum(self.expected)}  [{self.origin}] via {steps}"


ADEM_RELATIONS: tuple[tuple[str, str, str, str], ...] = (
    ("Sq¹Sq¹", "Sq1 Sq1", "0", "listed"),
    ("Sq¹τ", "Sq1 t", "t Sq1 + r", "listed"),
    ("Sq¹ρ", "Sq1 r", "r Sq1", "listed"),
    ("Sq¹Sq²", "Sq1 Sq2", "Sq3", "listed"),
    ("Sq¹Sq³", "Sq1 Sq3", "0", "listed"),
    ("Sq²τ", "Sq2 t", "t Sq2 + t r Sq1", "listed"),
    ("Sq²ρ", "Sq2 r", "r Sq2", "listed"),
    ("Sq²Sq²", "Sq2 Sq2", "t Sq3 Sq1", "listed"),
    ("Sq²Sq³", "Sq2 Sq3", "Sq5 + Sq4 Sq1", "listed"),
    ("Sq³Sq³", "Sq3 Sq3", "Sq5 Sq1", "listed"),
    ("Sq³τ", "Sq3 t", "t Sq3 + r Sq2 + r r Sq1", "derived"),
)


def verify_adem() -> list[AdemRecord]:
    out = []
    for name, lhs, rhs, origin in ADEM_RELATIONS:
        left = op(lhs)
        out.append(AdemRecord(name, left, op(rhs), op_normalize(left), origin))
    return out


# ------------------------------------------------------------ hom tables


@dataclass(frozen=True)
class HomEntry:
    """One summand of a hom group: a coefficient space times a fixed operation.

    ``coeff`` is ``F2`` (the operation itself), ``h01`` (τ times it) or
    ``h11`` (φ times it for every φ ∈ h^{1,1}; the word carries ρ as the
    placeholder φ).
    """

    display: str
    coeff: str
    word: Word
    # for the quotient group: relation identifying this entry's φ = ρ member with another entry
    relation_with: str | None = None

    @property
    def normal(self) -> OpSum:
        return op_normalize(OpSum.of(self.word)).value


def _h(display, coeff, *word, relation_with=None):
    return HomEntry(display, coeff, tuple(word), relation_with)


_HOM_TABLES: dict[tuple[str, str, int], dict[int, tuple[HomEntry, ...]]] = {
    ("MZ2", "MZ2", 0): {
        0: (_h("F₂{1}", "F2"),),
        1: (_h("F₂{Sq¹}", "F2", "Sq1"),),
    },
    ("MZ2", "MZ2", 1): {
        0: (_h("h^{0,1}", "h01", "t"),),
        1: (_h("h^{1,1}", "h11", "r"), _h("h^{0,1}{τSq¹}", "h01", "t", "Sq1")),
        2: (_h("h^{1,1}·Sq¹", "h11", "r", "Sq1"), _h("F₂{Sq²}", "F2", "Sq2")),
        3: (_h("F₂{Sq²Sq¹}", "F2", "Sq2", "Sq1"), _h("F₂{Sq¹Sq²}", "F2", "Sq1", "Sq2")),
        4: (_h("F₂{Sq¹Sq²Sq¹}", "F2", "Sq1", "Sq2", "Sq1"),),
    },
    ("MZ", "MZ2", 0): {
        0: (_h("F₂{pr}", "F2", "pr"),),
    },
    ("MZ2", "MZ", 0): {
        1: (_h("F₂{δ}", "F2", "d"),),
    },
    ("MZ", "MZ2", 1): {
        0: (_h("F₂{τ∘pr}", "F2", "t", "pr"),),
        1: (_h("h^{1,1}∘pr", "h11", "r", "pr"),),
        2: (_h("F₂{Sq²∘pr}", "F2", "Sq2", "pr"),),
        3: (_h("F₂{Sq¹Sq²∘pr}", "F2", "Sq1", "Sq2", "pr"),),
    },
    ("MZ2", "MZ", 1): {
        1: (_h("F₂{δ∘τ}", "F2", "d", "t"),),
        2: (
            _h("δ∘h^{1,1}", "h11", "d", "r", relation_with="F₂{δ∘τSq¹}"),
            _h("F₂{δ∘τSq¹}", "F2", "d", "t", "Sq1"),
        ),
        3: (_h("F₂{δ∘Sq²}", "F2", "d", "Sq2"),),
        4: (_h("F₂{δ∘Sq²Sq¹}", "F2", "d", "Sq2", "Sq1"),),
    },
}


def hom_basis_table(coeff_src: str, coeff_tgt: str, p: int, w: int) -> tuple[HomEntry, ...]:
    """Basis of [coeff_src, Σ^{p,w} coeff_tgt] for weight w ≤ 1; empty where the group vanishes."""
    if w not in (0, 1):
        raise OpError(f"hom tables cover weights 0 and 1 only, got {w}")
    key = (coeff_src, coeff_tgt, w)
    if key not in _HOM_TABLES:
        raise OpError(f"no tabulated hom group from {coeff_src} to {coeff_tgt}")
    return _HOM_TABLES[key].get(p, ())


def hom_dimension(coeff_src: str, coeff_tgt: str, p: int, w: int, h11_dim: int) -> int:
    """Dimension over F₂ once h^{1,1} is expanded, accounting for the one quotient relation."""
    dim = 0
    for e in hom_basis_table(coeff_src, coeff_tgt, p, w):
        dim += h11_dim if e.coeff == "h11" else 1
        if e.relation_with is not None:
            dim -= 1
    return dim


def _coeff_split(w: Word) -> tuple[Word, Word, Word, Word]:
    """Split a normal word into (δ prefix, coefficients, Sq part, pr suffix)."""
    k = 0
    head: Word = ()
    if w and w[0] == "d":
        head = ("d",)
        k = 1
    start = k
    while k < len(w) and w[k] in COEFF_LETTERS:
        k += 1
    coeffs = w[start:k]
    tail: Word = ()
    end = len(w)
    if end > k and w[-1] == "pr":
        tail = ("pr",)
        end -= 1
    return head, coeffs, w[k:end], tail


def in_tabulated_span(value: OpSum) -> bool:
    """Whether a weight ≤ 1 normal form is a combination of tabulated basis operations."""
    if not value.terms:
        return True
    src, tgt = value.types()
    deg, weight = value.bidegree
    try:
        table = hom_basis_table(src, tgt, deg, weight)
    except OpError:
        return False
    shapes = set()
    for e in table:
        for nw in (e.normal.terms or {e.word}):
            head, coeffs, sq, tail = _coeff_split(nw)
            shapes.add((head, coeffs, sq, tail))
    for w in value.terms:
        if _coeff_split(w) not in shapes:
            return False
    return True
