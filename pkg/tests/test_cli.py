import json

import pytest

from ebring import SpecParseError, build_ring, parse_group_spec, parse_ring_spec, report, serialize_report
from ebring.cli import RingSpec, run

VALID_SPECS = (
    [f"Z/{n}" for n in range(2, 17)]
    + ["GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(7)", "GF(8)", "GF(9)", "GF(25)", "GF(27)"]
    + ["GF(2)[x]/(x^2)", "GF(2)[x]/(x^3)", "GF(2)[x]/(x^2+x)", "GF(2)[x]/(x^3+x^2)",
       "GF(3)[x]/(x^2)", "GF(3)[x]/(x^2+2x+1)", "GF(2)[x]/(x^4+x+1)",
       "Z/4 x GF(3)", "Z/2 x Z/2", "GF(2) x GF(3) x Z/4",
       "  Z/6   x   GF(4) ", "GF(3)[x]/(2+x^2)", "GF(2)[x]/(1+x)"]
)

INVALID_SPECS = [
    "", "Z/", "Z12", "GF(6)", "GF(4", "GF(2)[x]/()", "GF(2)[x]/(2)",
    "GF(3)[x]/(2x^2+1)", "Z/12 x", "Z/12 y GF(3)", "Z/12 GF(3)",
    "table:", "GF(2)[x]/(x^2+*)", "Z/12 trailing",
]


def test_round_trip_corpus():
    assert len(VALID_SPECS) >= 30
    for text in VALID_SPECS:
        spec = parse_ring_spec(text)
        rendered = spec.render()
        again = parse_ring_spec(rendered)
        assert again.atoms == spec.atoms, text
        assert again.render() == rendered


def test_invalid_specs_carry_positions():
    for text in INVALID_SPECS:
        with pytest.raises(SpecParseError) as err:
            parse_ring_spec(text)
        assert isinstance(err.value.position, int), text
        assert 0 <= err.value.position <= len(text)


def test_poly_coefficients_reduce_mod_char():
    spec = parse_ring_spec("GF(2)[x]/(3x^2+2x+1)")
    assert spec.atoms[0].coeffs == (1, 0, 1)


def test_poly_accepts_any_term_order():
    a = parse_ring_spec("GF(2)[x]/(x^3+x^2)")
    b = parse_ring_spec("GF(2)[x]/(x^2+x^3)")
    assert a.atoms == b.atoms


def test_leading_cancellation_changes_degree():
    spec = parse_ring_spec("GF(3)[x]/(3x^3+x^2+2)")
    assert spec.atoms[0].coeffs == (2, 0, 1)


def test_group_spec_grammar():
    assert parse_group_spec("Z2 x Z4") == [2, 4]
    assert parse_group_spec("Z12") == [12]
    with pytest.raises(SpecParseError):
        parse_group_spec("Z2 x 4")
    with pytest.raises(SpecParseError):
        parse_group_spec("A5")


def test_build_ring_product_order():
    ring = build_ring("Z/4 x GF(3)")
    assert ring.order == 12
    assert ring.label == "Z/4 x GF(3)"


def test_build_quotient_ring_order():
    assert build_ring("GF(2)[x]/(x^3+x^2)").order == 8
    assert build_ring("GF(3)[x]/(x^2)").order == 9


def test_table_ring_file(tmp_path):
    import ebring
    src = ebring.make_zmod(4)
    doc = {
        "n": 4,
        "add": [src.add(i, j) for i in range(4) for j in range(4)],
        "mul": [src.mul(i, j) for i in range(4) for j in range(4)],
        "names": ["0", "1", "2", "3"],
    }
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(doc))
    ring = build_ring(f"table:{path}")
    assert ring.order == 4
    assert sorted(ebring.units(ring)) == [1, 3]


def test_table_ring_file_missing_fields(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"n": 4}))
    with pytest.raises(ValueError):
        build_ring(f"table:{path}")


def test_serialize_report_field_names():
    rep = report(build_ring("Z/12"), exact=True)
    doc = json.loads(serialize_report(rep))
    assert list(doc) == ["ring", "order", "units_order", "unit_group", "davenport",
                         "maximal_ideals", "lower_bound", "exact_I",
                         "exact_is_formula_derived", "ghw_upper", "equality_case",
                         "witness_T"]
    assert doc["ring"] == "Z/12"
    assert doc["unit_group"] == [2, 2]
    assert doc["maximal_ideals"] == [
        {"generators": ["2"], "size": 6, "index": 2},
        {"generators": ["3"], "size": 4, "index": 1},
    ]
    assert doc["exact_I"] == 4
    assert doc["exact_is_formula_derived"] is False
    assert doc["witness_T"] == ["5", "7", "10"]


def test_serialize_report_null_fields():
    doc = json.loads(serialize_report(report(build_ring("Z/12"))))
    assert doc["exact_I"] is None


def test_run_exit_codes(capsys, monkeypatch):
    monkeypatch.delenv("EBRING_BUDGET", raising=False)
    assert run(["invariants", "Z/12", "--json"]) == 0
    assert run(["invariants", "Z/banana"]) == 2
    assert run(["invariants", "GF(6)"]) == 2
    assert run(["nonsense"]) == 2
    assert run(["invariants", "Z/26", "--exact"]) == 3  # above the search cap
    assert run(["davenport", "Z3 x Z3"]) == 0
    assert run(["verify", "Z/6"]) == 0
    assert run(["crosscheck", "int", "12"]) == 0
    assert run(["crosscheck", "poly", "2", "x^3+x^2"]) == 0
    assert run(["inspect", "Z/12", "units"]) == 0
    assert run(["construct", "GF(2)[x]/(x^3)"]) == 0
    capsys.readouterr()


def test_run_threads_validation(capsys):
    assert run(["invariants", "Z/4", "--threads", "0"]) == 2
    capsys.readouterr()


def test_inspect_outputs(capsys):
    run(["inspect", "Z/12", "units"])
    assert capsys.readouterr().out.strip() == "1,5,7,11"
    run(["inspect", "Z/12", "idempotents"])
    assert capsys.readouterr().out.strip() == "0,1,4,9"
    run(["inspect", "Z/12", "nilradical"])
    assert capsys.readouterr().out.strip() == "0,6"
    run(["inspect", "Z/12", "maxideals"])
    out = capsys.readouterr().out
    assert "(2)  size 6  index 2" in out
    assert "(3)  size 4  index 1" in out


def test_davenport_cli_accepts_trivial_factors(capsys):
    assert run(["davenport", "Z1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["davenport"] == 1
    assert doc["witness"] == []


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("EBRING_BUDGET", "5")
    assert run(["invariants", "Z/13", "--exact", "--json"]) == 3
    monkeypatch.setenv("EBRING_BUDGET", "100000000")
    assert run(["invariants", "Z/13", "--exact", "--json"]) == 0
    capsys.readouterr()


def test_crosscheck_poly_bad_input(capsys):
    assert run(["crosscheck", "poly", "6", "x^2"]) == 2
    assert run(["crosscheck", "poly", "2", "2x^2"]) == 2
    capsys.readouterr()


def test_ring_spec_dataclass_render():
    spec = parse_ring_spec("Z/6 x GF(4)")
    assert isinstance(spec, RingSpec)
    assert spec.render() == "Z/6 x GF(4)"
