import copy
import json

import pytest

from motzeta import GrElement, LaurentPoly, blowup, bundled, is_X0_linear, load_resolution, reduced_fiber_class, validate
from motzeta.errors import CenterTooSmall, DatasetError, EmptyCenter, IncompleteData, InvalidStratum
from motzeta.grring import StratumSymbol, gr_reduce
from motzeta.laurent import L
from motzeta.resolution import (
    BUNDLED,
    resolution_from_dict,
    resolution_to_dict,
    stratum_gcd,
    x0_linear_witness,
)


def raw(name):
    return resolution_to_dict(bundled(name))


def kinds(data):
    with pytest.raises(DatasetError) as info:
        resolution_from_dict(data)
    return {d.kind for d in info.value.diagnostics}


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_datasets_validate(name):
    assert validate(bundled(name)) == []


@pytest.mark.parametrize("name", BUNDLED)
def test_dict_round_trip(name):
    res = bundled(name)
    assert resolution_from_dict(json.loads(json.dumps(resolution_to_dict(res)))) == res


def test_load_by_path_and_name(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(raw("cusp")))
    assert load_resolution(path) == bundled("cusp") == load_resolution("cusp.json")


def test_label_mismatch():
    data = raw("cusp")
    for s in data["strata"]:
        if s["J"] == [1, 3]:
            s["eq_class"] = "E~{1,3}[m=5]"
    assert "LabelMismatch" in kinds(data)


def test_unknown_divisor():
    data = raw("xy")
    data["strata"].append({"J": [7], "eq_class": "E~{7}[m=1]", "naive_class": "1"})
    assert "UnknownDivisor" in kinds(data)


def test_unknown_keys_rejected():
    data = raw("xy")
    data["colour"] = "red"
    with pytest.raises(DatasetError):
        resolution_from_dict(data)
    data = raw("xy")
    data["strata"][0]["extra"] = 1
    with pytest.raises(DatasetError):
        resolution_from_dict(data)


def test_codimension_and_duplicates():
    data = raw("smooth")
    data["divisors"].append(copy.deepcopy(data["divisors"][0]))
    assert "DuplicateDivisor" in kinds(data)
    data = raw("xy")
    data["m"] = 0
    assert "CodimensionTooLarge" in kinds(data)


def test_missing_singleton():
    data = raw("xy")
    data["strata"] = [s for s in data["strata"] if s["J"] != [2]]
    assert {"MissingSingleton"} <= kinds(data) or {"NotDownwardClosed"} <= kinds(data)


def test_bad_file_reports_diagnostics(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(DatasetError):
        load_resolution(path)


def test_stratum_gcd(cusp):
    assert stratum_gcd(cusp, [3]) == 6
    assert stratum_gcd(cusp, [1, 3]) == 2
    assert stratum_gcd(cusp, [3, 4]) == 1
    with pytest.raises(InvalidStratum):
        stratum_gcd(cusp, [])
    with pytest.raises(InvalidStratum):
        stratum_gcd(cusp, [9])


def test_x0_linearity(cusp, xy):
    J, alpha = x0_linear_witness(cusp, 7)
    assert J == (3, 4) and sum(a * cusp.N(i) for a, i in zip(alpha, J)) == 7
    assert not is_X0_linear(cusp, 5)
    assert [d for d in range(1, 10) if is_X0_linear(cusp, d)] == [7, 8, 9]
    assert is_X0_linear(xy, 2) and not is_X0_linear(xy, 1)


def test_blowup_xy_structure(xy):
    b = blowup(xy, [1, 2])
    assert [(d.id, d.N, d.xi) for d in b.divisors] == [(1, 1, 1), (2, 1, 1), (0, 2, 2)]
    assert b.stratum([1]) == xy.stratum([1]) and b.stratum([2]) == xy.stratum([2])
    s12 = StratumSymbol.equivariant([1, 2], 1)
    assert b.stratum([0]).eq_class == GrElement.from_symbol(s12, L - 1)
    assert b.stratum([0, 1]).eq_class == GrElement.from_symbol(s12)
    assert b.stratum([0, 2]).eq_class == GrElement.from_symbol(s12)
    assert b.stratum([1, 2]) is None
    assert validate(b) == []


def test_blowup_new_id_avoids_collision(xy):
    b = blowup(blowup(xy, [1, 2]), [0, 1])
    assert sorted(b.ids) == [0, 1, 2, 3]
    assert b.N(3) == 3 and b.xi(3) == 3


def test_blowup_errors(xy, cusp):
    with pytest.raises(CenterTooSmall):
        blowup(xy, [1])
    with pytest.raises(EmptyCenter):
        blowup(cusp, [1, 2])
    with pytest.raises(DatasetError):
        blowup(xy, [1, 9])


def test_reduced_fiber_class(xy):
    before = reduced_fiber_class(xy)
    after = reduced_fiber_class(blowup(xy, [1, 2]))
    assert before == GrElement.scalar(2 * L - 1)
    assert after == GrElement.scalar(3 * L - 1)
    assert gr_reduce(before, "L") == gr_reduce(after, "L") == GrElement.scalar(-1)


def test_reduced_fiber_class_needs_naive_classes(xy):
    data = resolution_to_dict(xy)
    del data["strata"][0]["naive_class"]
    res = resolution_from_dict(data)
    with pytest.raises(IncompleteData):
        reduced_fiber_class(res)


def test_chi_transport_under_blowup(cusp):
    b = blowup(cusp, [3, 4])
    assert b.stratum([0]).chi == 0
    assert b.stratum([0, 3]).chi == 1 and b.stratum([0, 4]).chi == 1
    assert LaurentPoly.parse("L - 1") == b.stratum([0]).eq_class.coefficient(StratumSymbol.equivariant([3, 4], 1))
