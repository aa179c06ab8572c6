import pytest

from motslice.differentials import ConsistencyError, compose_is_zero, d1_matrix, d1_region
from motslice.exact_linalg import IntMatrix
from motslice.milnor_field import PRESET_NAMES, FieldError, field_to_document, load_field, resolve_field
from motslice.slice_pages import GroupHom

FIELDS = {name: resolve_field(name) for name in PRESET_NAMES}


def test_kgl2_tau_squared_goes_to_rho_cubed():
    h = d1_matrix("KGL2", FIELDS["real_closed"], 4, 2)
    assert h.source.labels() == ("τ^2",)
    assert h.target.labels() == ("{-1}^3",)
    assert h.full_matrix().to_rows() == [[1]]
    assert h.blocks[0][2] == "Sq³ + Sq²Sq¹"


def test_kt_tau_arrow_over_reals():
    h = d1_matrix("KT", FIELDS["real_closed"], 2, 0)
    assert [(b[2], b[3].to_rows()) for b in h.blocks] == [("τ", [[1]])]


def test_kq_ko2_differential_over_finite5_vanishes():
    # Sq²(τ²) = τρ² and ρ = 0 over F₅
    assert d1_matrix("KQ", FIELDS["finite(5)"], 2, 2).is_zero()
    assert not d1_matrix("KQ", FIELDS["real_closed"], 2, 2).is_zero()


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("spectrum", ["KT", "KQ", "KGL2"])
def test_numeric_d1_squared_vanishes(name, spectrum):
    region = d1_region(spectrum, FIELDS[name], (-6, 8, 0, 9))
    assert region.homs


def test_display_only_spectra_have_no_differential():
    for spectrum in ("KGL", "KGLhC2"):
        with pytest.raises(FieldError, match="no differential defined"):
            d1_matrix(spectrum, FIELDS["real_closed"], 2, 2)


def test_delta_lift_requires_injective_reduction():
    doc = field_to_document(FIELDS["real_closed"])
    for c in doc["integral"]["cells"]:
        if (c["p"], c["q"]) == (4, 4):
            c["torsion"] = [4]
    doc["name"] = "real with Z/4 in H^{4,4}"
    G = load_field(doc)
    with pytest.raises(FieldError, match="not determined"):
        d1_matrix("KQ", G, 5, 3)
    h = d1_matrix("KQ", FIELDS["real_closed"], 5, 3)
    assert "δ∘Sq²Sq¹" in {b[2] for b in h.blocks}


def test_compose_is_zero_detects_nonzero():
    F = FIELDS["real_closed"]
    first = d1_matrix("KT", F, 2, 0)
    fake = GroupHom(first.target, first.source, ((0, 0, "x", IntMatrix.from_rows([[1]])),))
    assert not compose_is_zero(first, fake)


def test_region_raises_on_inconsistent_data(monkeypatch):
    import motslice.differentials as diff

    monkeypatch.setattr(diff, "compose_is_zero", lambda a, b: False)
    with pytest.raises(ConsistencyError, match="d₁∘d₁"):
        diff.d1_region("KT", FIELDS["finite(7)"], (0, 2, 0, 2))
