import copy
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motslice.milnor_field import (
    PRESET_NAMES,
    FieldError,
    MissingIntegralCell,
    basis_classes,
    class_label,
    cup,
    dump_field,
    field_to_document,
    h_dim,
    integral_cell,
    load_field,
    load_field_file,
    make_class,
    parse_field_spec,
    preset_field,
    resolve_field,
    rho,
    tau,
)
from oracles.finite_fields import FIELDS
from oracles.groups import cyclic_profile, element_order
from oracles.hilbert import local_expectations


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_finite_presets_match_brute_force_square_classes(q):
    K = FIELDS[q]
    F = preset_field("finite", q)
    units = K.units()
    assert len(units) // len(K.squares()) == 2 ** F.dims[1]
    assert F.dims[2:] == (0,) * (F.truncation - 1)
    minus_one = K.neg(K.one())
    assert F.rho == ((0,) if K.is_square(minus_one) else (1,))


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_finite_unit_group_is_cyclic_of_order_q_minus_1(q):
    K = FIELDS[q]
    orders = []
    for x in K.units():
        k, y = 1, x
        while y != K.one():
            y = K.mul(y, x)
            k += 1
        orders.append(k)
    assert max(orders) == q - 1  # a generator exists
    cell = preset_field("finite", q).integral[(1, 1)]
    assert cell.group.torsion == (q - 1,)
    assert cyclic_profile(cell.group.torsion)[q - 1] == sum(1 for k in orders if k == q - 1)


@pytest.mark.parametrize("p", [5, 7])
def test_local_presets_match_hilbert_symbols(p):
    F = preset_field("local", p)
    exp = local_expectations(p)
    assert F.dims[:3] == exp["dims"]
    assert F.mult[(1, 1)] == exp["mult"]
    assert F.rho == exp["rho"]


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_presets_validate_and_round_trip(name):
    F = resolve_field(name)
    doc = field_to_document(F)
    again = load_field(json.loads(json.dumps(doc)))
    assert again == F
    assert field_to_document(again) == doc
    assert dump_field(again) == dump_field(F)


def test_round_trip_through_file(tmp_path):
    F = preset_field("local", 7)
    path = tmp_path / "l7.json"
    path.write_text(dump_field(F), encoding="utf-8")
    assert load_field_file(path) == F
    assert resolve_field(str(path)) == F


def _doc(name="local(5)"):
    return copy.deepcopy(field_to_document(resolve_field(name)))


def test_validation_names_failing_basis_pair():
    doc = _doc("local(7)")
    # break commutativity: {u}·{π} ≠ {π}·{u}
    doc["milnor"]["mult"][0]["table"][0][1] = [0]
    doc["milnor"]["mult"].append({"deg_a": 1, "deg_b": 1, "table": [[[0], [1]], [[1], [1]]]})
    with pytest.raises(FieldError, match="duplicate"):
        load_field(doc)
    doc["milnor"]["mult"].pop()
    with pytest.raises(FieldError, match=r"\{u\}|\{π\}"):
        load_field(doc)


def test_validation_rejects_x_squared_rule_violation():
    doc = _doc("local(7)")
    doc["milnor"]["rho"] = [0, 0]  # but {π}² = {u,π} ≠ 0
    with pytest.raises(FieldError, match="x·x ≠ ρ·x"):
        load_field(doc)


def test_validation_rejects_schema_errors():
    doc = _doc()
    del doc["milnor"]["dims"]
    with pytest.raises(FieldError, match="milnor.dims"):
        load_field(doc)
    doc = _doc()
    doc["truncation"] = 1
    with pytest.raises(FieldError, match="truncation"):
        load_field(doc)
    doc = _doc()
    doc["integral"]["cells"][0]["torsion"] = [4, 6]
    with pytest.raises(FieldError):
        load_field(doc)


def test_preset_parameters():
    with pytest.raises(FieldError, match="p = 2"):
        preset_field("local", 2)
    with pytest.raises(FieldError):
        preset_field("finite", 6)
    assert parse_field_spec("finite(5)") == ("finite", 5)
    assert parse_field_spec("l7") == ("local", 7)
    assert parse_field_spec("real") == ("real_closed", None)
    with pytest.raises(FieldError):
        parse_field_spec("nonsense")


def test_truncation_is_enforced():
    F = preset_field("real_closed", truncation=4)
    assert h_dim(F, 4, 4) == 1
    with pytest.raises(FieldError, match="truncation"):
        h_dim(F, 0, 5)


def test_h_ring_products_real():
    F = preset_field("real_closed")
    r, t = rho(F), tau(F)
    x = cup(F, cup(F, r, r), t)
    assert (x.p, x.q, x.coords) == (2, 3, (1,))
    assert class_label(F, x) == "τ·{-1}^2"
    assert class_label(F, make_class(F, 0, 2, [1])) == "τ^2"


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_cup_is_associative_and_commutative_on_local(a1, n1, a2, n2):
    F = preset_field("local", 7)
    xs = [x for x in basis_classes(F, min(a1, 2), min(a1, 2) + n1)]
    ys = [y for y in basis_classes(F, min(a2, 2), min(a2, 2) + n2)]
    for x in xs:
        for y in ys:
            assert cup(F, x, y) == cup(F, y, x)
            assert cup(F, cup(F, x, rho(F)), y) == cup(F, x, cup(F, rho(F), y))


def test_integral_lookup_statuses():
    F = preset_field("local", 5)
    assert integral_cell(F, 1, 2).status == "data"
    assert integral_cell(F, 0, 2).status == "zero"
    assert integral_cell(F, 0, 3).status == "conditional"
    assert integral_cell(F, -1, 3).status == "conditional"
    assert integral_cell(F, 3, 2).status == "zero"
    doc = _doc("finite(5)")
    doc["integral"]["cells"] = [c for c in doc["integral"]["cells"] if (c["p"], c["q"]) != (1, 2)]
    G = load_field(doc)
    with pytest.raises(MissingIntegralCell, match=r"H\^\{1,2\}"):
        integral_cell(G, 1, 2)


def test_unit_group_element_orders_oracle_helper():
    assert element_order((2, 3), (4, 6)) == 2
