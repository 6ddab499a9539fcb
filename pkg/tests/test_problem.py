"""Spec parsing, run orchestration and the byte-stable serializers."""

import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tripart.problem import (
    DEFAULT_RAYS_DEG,
    InputError,
    canonical_json,
    parse_spec,
    report_json,
    run,
    serialize_spec,
    sweep_csv,
    triangle_from_angles,
)

TRI_SPEC = '{"mode": "triangle", "triangle": [[0, 0], [1, 0], [0, 1]]}'
MASS_SPEC = (
    '{"mode": "mass-partition", "polygon": [[0, 0], [1, 0], [1, 1], [0, 1]],'
    ' "fractions": [0.25, 0.35, 0.4]}'
)


def code_of(text: str) -> str:
    with pytest.raises(InputError) as err:
        parse_spec(text)
    return err.value.code


def test_parse_triangle_spec():
    spec = parse_spec(TRI_SPEC)
    assert spec.mode == "triangle"
    assert spec.triangle == ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))
    assert spec.solver == ()


def test_parse_fills_defaults():
    spec = parse_spec(MASS_SPEC)
    assert spec.rays == DEFAULT_RAYS_DEG
    assert spec.targets is None
    spec = parse_spec('{"mode": "sweep"}')
    assert spec.resolution == 100


def test_parse_solver_options():
    spec = parse_spec(
        '{"mode": "triangle", "triangle": [[0, 0], [1, 0], [0, 1]],'
        ' "solver": {"max_iters": 50, "area_tol_rel": 1e-10}}'
    )
    assert dict(spec.solver) == {"max_iters": 50.0, "area_tol_rel": 1e-10}


def test_serialize_round_trips():
    for text in (
        TRI_SPEC,
        MASS_SPEC,
        '{"mode": "mass-partition", "polygon": [[0, 0], [2, 0], [1, 2]],'
        ' "rays": [10, 100, 250], "targets": [1.0, 0.5, 0.5]}',
        '{"mode": "sweep", "resolution": 25}',
        '{"mode": "triangle", "triangle": [[0, 0], [1, 0], [0.3, 0.8]],'
        ' "solver": {"kkm_initial_grid": 32}}',
    ):
        spec = parse_spec(text)
        assert parse_spec(serialize_spec(spec)) == spec


def test_error_codes():
    assert code_of("{not json") == "malformed-json"
    assert code_of("[1, 2]") == "invalid-value"
    assert code_of('{"triangle": [[0, 0], [1, 0], [0, 1]]}') == "missing-field"
    assert code_of('{"mode": "nope"}') == "invalid-value"
    assert code_of('{"mode": "triangle"}') == "missing-field"
    assert code_of('{"mode": "triangle", "triangle": [[0, 0], [1, 0]]}') == "invalid-value"
    assert code_of('{"mode": "triangle", "triangle": [[0, 0], [1, 0], [2, 0]]}') == "degenerate-geometry"
    assert code_of('{"mode": "triangle", "triangle": [[0, 0], [1, 0], [0, "x"]]}') == "invalid-value"
    assert code_of('{"mode": "triangle", "triangle": [[0, 0], [1, 0], [0, 1]], "rays": [0, 1, 2]}') == "invalid-value"
    assert code_of('{"mode": "sweep", "resolution": 1}') == "invalid-value"
    assert code_of('{"mode": "sweep", "resolution": 2.5}') == "invalid-value"
    assert code_of('{"mode": "mass-partition", "polygon": [[0, 0], [1, 0], [1, 1]]}') == "missing-field"
    assert code_of('{"mode": "mass-partition", "polygon": [[0, 0], [1, 0], [2, 0]], "fractions": [0.3, 0.3, 0.4]}') == "degenerate-geometry"


def test_mass_partition_target_validation():
    base = '{"mode": "mass-partition", "polygon": [[0, 0], [1, 0], [1, 1], [0, 1]], %s}'
    assert code_of(base % '"fractions": [0.3, 0.3, 0.3]') == "invalid-value"
    assert code_of(base % '"fractions": [0.5, 0.6, -0.1]') == "invalid-value"
    assert code_of(base % '"targets": [0.5, 0.5, 0.5]') == "invalid-value"
    assert code_of(base % '"targets": [0.5, 0.5, 0.0]') == "invalid-value"
    assert code_of(base % '"targets": [0.2, 0.3, 0.5], "fractions": [0.2, 0.3, 0.5]') == "invalid-value"
    assert code_of(base % '"rays": [0, 0, 120], "fractions": [0.3, 0.3, 0.4]') == "invalid-value"


def test_solver_option_validation():
    base = '{"mode": "triangle", "triangle": [[0, 0], [1, 0], [0, 1]], "solver": %s}'
    assert code_of(base % '{"bogus": 1}') == "invalid-value"
    assert code_of(base % '{"max_iters": 0}') == "invalid-value"
    assert code_of(base % '{"area_tol_rel": "tight"}') == "invalid-value"
    assert code_of(base % "[1]") == "invalid-value"


def test_unknown_keys_rejected_per_mode():
    assert code_of('{"mode": "sweep", "triangle": [[0, 0], [1, 0], [0, 1]]}') == "invalid-value"
    assert code_of('{"mode": "triangle", "triangle": [[0, 0], [1, 0], [0, 1]], "resolution": 5}') == "invalid-value"


def test_run_triangle_report():
    report = run(parse_spec(TRI_SPEC))
    assert report.mode == "triangle"
    assert report.method == "newton"
    assert report.classification.kind == "right"
    r = 1.0 / math.sqrt(6.0)
    assert report.point[0] == pytest.approx(r, abs=5e-12)
    assert report.point[1] == pytest.approx(r, abs=5e-12)
    assert sum(report.areas) == pytest.approx(0.5, rel=1e-12)
    assert report.fractions[0] == pytest.approx(1 / 3, abs=1e-11)
    assert len(report.regions) == 3
    assert report.timing_s > 0.0


def test_run_is_label_consistent_for_clockwise_input():
    ccw = parse_spec('{"mode": "triangle", "triangle": [[0, 0], [1.1, 0], [0.2, 0.9]]}')
    cw = parse_spec('{"mode": "triangle", "triangle": [[0, 0], [0.2, 0.9], [1.1, 0]]}')
    ra, rb = run(ccw), run(cw)
    assert ra.point[0] == pytest.approx(rb.point[0], abs=1e-11)
    assert ra.point[1] == pytest.approx(rb.point[1], abs=1e-11)
    # vertex 0 is 'a' in both; the other two swap both input slot and label,
    # so the per-label areas land on the same geometric vertices
    assert ra.areas[0] == pytest.approx(rb.areas[0], abs=1e-12)
    assert ra.areas[1] == pytest.approx(rb.areas[2], abs=1e-12)
    assert ra.areas[2] == pytest.approx(rb.areas[1], abs=1e-12)


def test_run_maps_obtuse_vertex_to_input_labels():
    spec = parse_spec('{"mode": "triangle", "triangle": [[0, 0], [0.5, 0.05], [1, 0]]}')
    report = run(spec)
    assert report.classification.kind == "obtuse-exterior"
    assert report.classification.obtuse_vertex == "b"


def test_run_mass_partition_report():
    report = run(parse_spec(MASS_SPEC))
    assert report.mode == "mass-partition"
    assert report.residual <= 1e-12
    assert report.translation == (-report.apex[0], -report.apex[1])
    for got, frac in zip(report.achieved, (0.25, 0.35, 0.4)):
        assert got == pytest.approx(frac, abs=1e-12)
    assert report.iterations >= 1


def test_run_tol_override():
    spec = parse_spec(TRI_SPEC)
    report = run(spec, tol=1e-6)
    assert report.residual <= 1e-6 * 0.5


def test_run_sweep_rows():
    report = run(parse_spec('{"mode": "sweep", "resolution": 12}'))
    rows = report.sweep_rows
    assert len(rows) == 55  # lattice points with i, j >= 1 and i + j <= 11
    kinds = {r.kind for r in rows}
    assert {"acute", "right", "obtuse-interior", "obtuse-exterior"} <= kinds
    right = [r for r in rows if r.kind == "right"]
    assert right
    for r in right:
        widest = max(r.angle_a_deg, r.angle_b_deg, 180.0 - r.angle_a_deg - r.angle_b_deg)
        assert widest == pytest.approx(90.0, abs=1e-9)
    for r in rows:
        if r.kind in ("acute", "right"):
            assert r.margin is None
        else:
            assert math.isfinite(r.margin)


def test_report_json_deterministic():
    spec = parse_spec(TRI_SPEC)
    one, two = report_json(run(spec)), report_json(run(spec))
    assert one == two
    payload = json.loads(one)
    assert payload["mode"] == "triangle"
    assert payload["input"]["triangle"] == [[0, 0], [1, 0], [0, 1]]
    assert set(payload["areas"]) == {"at_a", "at_b", "at_c", "fractions", "total"}
    assert "timing" not in one and "timing_s" not in one


def test_report_json_mass_partition_shape():
    payload = json.loads(report_json(run(parse_spec(MASS_SPEC))))
    assert payload["input"]["rays"] == list(DEFAULT_RAYS_DEG)
    assert payload["areas"]["total"] == 1
    assert len(payload["translation"]) == 2


def test_sweep_csv_format():
    report = run(parse_spec('{"mode": "sweep", "resolution": 8}'))
    text = sweep_csv(report)
    lines = text.splitlines()
    assert lines[0] == "angle_a_deg,angle_b_deg,kind,margin"
    assert len(lines) == 1 + len(report.sweep_rows)
    for line in lines[1:]:
        a, b, kind, margin = line.split(",")
        assert float(a) > 0 and float(b) > 0
        assert (margin == "") == (kind in ("acute", "right"))
    assert sweep_csv(run(parse_spec('{"mode": "sweep", "resolution": 8}'))) == text


def test_sweep_csv_rejects_other_modes():
    with pytest.raises(ValueError):
        sweep_csv(run(parse_spec(TRI_SPEC)))
    with pytest.raises(ValueError):
        report_json(run(parse_spec('{"mode": "sweep", "resolution": 4}')))


def test_canonical_json_scalars():
    assert canonical_json({"a": 0.0, "b": -0.0, "c": 1, "d": True, "e": None}) == (
        '{"a":0,"b":0,"c":1,"d":true,"e":null}'
    )
    assert canonical_json([0.1]) == "[0.10000000000000001]"
    assert canonical_json("x\"y") == '"x\\"y"'
    with pytest.raises(ValueError):
        canonical_json(math.inf)
    with pytest.raises(TypeError):
        canonical_json({"x": object()})


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_canonical_floats_round_trip(x):
    assert json.loads(canonical_json(x)) == x


def test_triangle_from_angles():
    t = triangle_from_angles(45.0, 45.0)
    assert t.c.x == pytest.approx(0.5, abs=1e-15)
    assert t.c.y == pytest.approx(0.5, abs=1e-15)
    t = triangle_from_angles(30.0, 90.0)
    assert t.c.as_tuple() == (1.0, math.tan(math.radians(30.0)))
    t = triangle_from_angles(90.0, 30.0)
    assert t.c.as_tuple() == (0.0, math.tan(math.radians(30.0)))
    assert math.degrees(triangle_from_angles(70.0, 60.0).angle("c")) == pytest.approx(50.0, abs=1e-9)
    from tripart.partition import PartitionError

    with pytest.raises(PartitionError):
        triangle_from_angles(120.0, 60.0)
    with pytest.raises(PartitionError):
        triangle_from_angles(-5.0, 60.0)
