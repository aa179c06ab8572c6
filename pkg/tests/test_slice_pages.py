import pytest
from hypothesis import given
from hypothesis import strategies as st

from motslice.exact_linalg import IntMatrix
from motslice.milnor_field import PRESET_NAMES, FieldError, resolve_field
from motslice.slice_pages import (
    GroupHom,
    e1_group,
    integral_offset,
    slice_summands,
    summand_offsets,
)

FIELDS = {name: resolve_field(name) for name in PRESET_NAMES}


def test_summand_offsets_per_spectrum():
    assert summand_offsets("KT", 3, -3, 4) == {-2: "MZ2", 0: "MZ2", 2: "MZ2", 4: "MZ2"}
    assert summand_offsets("KQ", 4, -4, 6) == {-4: "MZ2", -2: "MZ2", 0: "MZ2", 2: "MZ2", 4: "MZ"}
    assert summand_offsets("KQ", 5, -4, 8) == {-4: "MZ2", -2: "MZ2", 0: "MZ2", 2: "MZ2", 4: "MZ2"}
    assert summand_offsets("KGL", 2, -5, 5) == {2: "MZ"}
    assert summand_offsets("KGL2", 2, -5, 5) == {2: "MZ2"}
    assert summand_offsets("KGLhC2", 4, 0, 8) == {4: "MZ", 5: "MZ2", 7: "MZ2"}
    assert summand_offsets("KGLhC2", 3, 0, 8) == {3: "MZ2", 5: "MZ2", 7: "MZ2"}
    assert summand_offsets("KT", -1, -5, 5) == {}


def test_integral_offsets():
    assert integral_offset("KQ", 6) == 6
    assert integral_offset("KQ", 5) is None
    assert integral_offset("KGL", 5) == 5
    assert integral_offset("KT", 4) is None
    with pytest.raises(FieldError, match="unknown spectrum"):
        integral_offset("KU", 1)


def test_slice_summands_notation():
    names = [str(s) for s in slice_summands("KQ", 4, (0, 4))]
    assert names == ["Σ^{8,4}MZ", "Σ^{6,4}MZ/2", "Σ^{4,4}MZ/2", "Σ^{2,4}MZ/2", "Σ^{0,4}MZ/2"]


@given(st.sampled_from(PRESET_NAMES), st.integers(-12, 12), st.integers(0, 11))
def test_kt_e1_dimension_formula(name, p, q):
    """E¹_{p,q}(KT) is ⊕ h^{a,q} over 0 ≤ a ≤ q with a ≡ q − p (mod 2)."""
    F = FIELDS[name]
    g = e1_group("KT", F, p, q)
    expected = sum(F.dims[a] for a in range(q + 1) if (a - q + p) % 2 == 0)
    assert g.dim == expected
    assert g.is_mod2
    assert [c.a for c in g.components] == sorted((c.a for c in g.components), reverse=True)


def test_kq_cells_with_integral_data():
    g = e1_group("KQ", FIELDS["local(7)"], 2, 2)
    assert [c.kind for c in g.components] == ["group", "divisible", "F2"]
    assert g.summary() == "Z/2 ⊕ Z/6 ⊕ D^{2,2}"
    g = e1_group("KQ", FIELDS["finite(5)"], 3, 2)
    assert g.summary() == "Z/24"


def test_conditional_component_is_kept_for_display():
    g = e1_group("KQ", FIELDS["finite(5)"], 5, 2)  # H^{−1,2}
    assert [c.kind for c in g.components] == ["conditional"]
    assert g.is_zero()


def test_group_hom_full_matrix_reduces_mod_target_orders():
    src = e1_group("KQ", FIELDS["finite(5)"], 3, 2)
    tgt = e1_group("KQ", FIELDS["finite(5)"], 3, 2)
    h = GroupHom(src, tgt, ((0, 0, "x", IntMatrix.from_rows([[25]])),))
    assert h.full_matrix().to_rows() == [[1]]
    assert not h.is_zero()
    assert h.f2_matrix().to_rows() == [[1]]


def test_truncation_guard():
    F = resolve_field("real", truncation=4)
    with pytest.raises(FieldError, match="truncation"):
        e1_group("KT", F, 0, 5)
