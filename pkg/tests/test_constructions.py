"""Builder tests against hand-computed rows, values and residues."""

from fractions import Fraction

import pytest

from vallab.constructions import (BUILDERS, build_2ext, build_as_resf,
                                  build_as_valgp, build_kummer_resf,
                                  build_kummer_valgp, build_lemma_3_3,
                                  required_padic_positions)
from vallab.errors import PrecisionError, ValidationError
from vallab.tower import val


def rows_of(result):
    return result.certificate.to_json()["rows"]


# -- growing value group, equal characteristic --------------------------------


def test_as_valgp_depth3_p3_frozen():
    r = build_as_valgp(3, 3)
    data = r.certificate.to_json()
    assert data["schema"] == 1
    assert data["construction"] == "as-valgp"
    assert len(data["rows"]) == 4
    for row in data["rows"]:
        assert row["kind"] == "ramified"
        assert (row["degree"], row["e"], row["f"], row["m"]) == (3, 3, 1, 0)
    assert data["rows"][0]["new_value"] == "-1/3"
    assert data["rows"][3]["new_value"] == "-1/81"
    assert data["absorption"] == [True, True, True, True]
    vals = [val(w) for w in r.extras["witnesses"]]
    assert vals == [Fraction(-1, 3), Fraction(-1, 9),
                    Fraction(-1, 27), Fraction(-1, 81)]


def test_as_valgp_small_primes():
    for p in (2, 5):
        r = build_as_valgp(p, 2)
        rows = rows_of(r)
        assert len(rows) == 3
        assert all((row["e"], row["f"], row["m"]) == (p, 1, 0) for row in rows)
        assert rows[-1]["new_value"] == str(Fraction(-1, p ** 3))
        assert rows[-1]["witness"].startswith("b2")


def test_lemma33_frozen():
    for p in (2, 3):
        r = build_lemma_3_3(p)
        rows = rows_of(r)
        assert len(rows) == 1
        assert rows[0]["kind"] == "residue"
        assert (rows[0]["e"], rows[0]["f"], rows[0]["m"]) == (1, p, 0)
        assert rows[0]["new_residue"] == "u^(1/%d)" % p
        assert r.towers[0].res_level() == 1


def test_lemma33_rejects_bad_twist():
    with pytest.raises(ValidationError):
        build_lemma_3_3(3, 0)
    with pytest.raises(ValidationError):
        build_lemma_3_3(3, 2)
    r = build_lemma_3_3(3, -2)
    assert rows_of(r)[0]["new_residue"] == "u^(1/3)"


def test_as_resf_depth2_p3_frozen():
    r = build_as_resf(3, 2)
    rows = rows_of(r)
    assert len(rows) == 3
    assert [row["kind"] for row in rows] == ["residue"] * 3
    assert all((row["e"], row["f"], row["m"]) == (1, 3, 0) for row in rows)
    assert rows[0]["new_residue"] == "u^(1/3)"
    assert rows[1]["new_residue"] == "u^(1/9)"
    assert rows[2]["new_residue"] == "u^(1/27)"
    assert r.extras["witness_residue"].to_text() == "u^(1/27)"
    assert val(r.extras["witness"]) == Fraction(-1, 27)
    assert r.towers[0].res_level() == 3


def test_as_resf_depth0_and_p2():
    r0 = build_as_resf(3, 0)
    assert len(rows_of(r0)) == 1
    assert rows_of(r0)[0]["new_residue"] == "u^(1/3)"
    r2 = build_as_resf(2, 2)
    assert rows_of(r2)[2]["new_residue"] == "u^(1/8)"
    assert val(r2.extras["witness"]) == Fraction(-1, 8)


# -- mixed characteristic ------------------------------------------------------


def test_kummer_valgp_p3_depth2_frozen():
    r = build_kummer_valgp(3, 2)
    data = r.certificate.to_json()
    rows = data["rows"]
    assert len(rows) == 3
    assert all(row["kind"] == "ramified" for row in rows)
    assert all((row["degree"], row["e"], row["f"], row["m"]) == (3, 3, 1, 0)
               for row in rows)
    assert rows[0]["new_value"] == "-1/6"
    assert rows[1]["new_value"] == "-1/18"
    assert rows[2]["new_value"] == "-1/54"
    assert rows[2]["witness"].startswith("b2")
    assert data["absorption"] == [True, True, True]
    assert data["precision"]["required"] == required_padic_positions(2)
    assert r.extras["a0"].val() == Fraction(-1, 2)
    assert r.extras["witness_value"] == Fraction(-1, 54)


def test_kummer_valgp_p2():
    r = build_kummer_valgp(2, 2)
    rows = rows_of(r)
    assert [row["new_value"] for row in rows] == ["-1/2", "-1/4", "-1/8"]
    assert all((row["e"], row["f"]) == (2, 1) for row in rows)


def test_kummer_valgp_cap_guard():
    with pytest.raises(PrecisionError):
        build_kummer_valgp(3, 9, padic_cap=10)
    with pytest.raises(ValidationError):
        build_kummer_valgp(3, 0)


def test_2ext_p3_frozen():
    r = build_2ext(3)
    rows = rows_of(r)
    assert len(rows) == 3
    assert all(row["kind"] == "residue" for row in rows)
    assert all((row["degree"], row["e"], row["f"], row["m"]) == (3, 1, 3, 0)
               for row in rows)
    assert rows[0]["new_residue"] == "u^(1/3)"
    assert rows[1]["new_residue"] == "u^(1/3)"
    assert rows[2]["new_residue"] == "u^(1/9)"
    assert [x.to_text() for x in r.extras["unit_residues"]] == \
        ["u^(1/3)", "u^(1/3)"]
    assert r.extras["witness_residue"].to_text() == "u^(1/9)"


def test_2ext_p2():
    r = build_2ext(2)
    rows = rows_of(r)
    assert rows[0]["new_residue"] == "u^(1/2)"
    assert rows[2]["new_residue"] == "u^(1/4)"


def test_kummer_resf_p3_depth2_frozen():
    r = build_kummer_resf(3, 2)
    rows = rows_of(r)
    assert len(rows) == 3
    assert all(row["kind"] == "residue" for row in rows)
    assert all((row["e"], row["f"], row["m"]) == (1, 3, 0) for row in rows)
    levels = [x._canonical()[0] for x in r.extras["unit_residues"]]
    assert levels == [1, 2]
    assert r.extras["witness_residue"]._canonical()[0] == 3
    assert r.extras["b0"].val() == Fraction(-1)
    assert val(r.extras["witness"]) == Fraction(-1, 27)
    assert r.towers[0].res_level() == 3


def test_kummer_resf_p2():
    r = build_kummer_resf(2, 2)
    rows = rows_of(r)
    assert len(rows) == 3
    assert all((row["e"], row["f"], row["m"]) == (1, 2, 0) for row in rows)
    assert r.extras["witness_residue"]._canonical()[0] == 3


def test_builders_registry():
    assert set(BUILDERS) == {"as-valgp", "lemma33", "as-resf", "kummer-valgp",
                             "two-ext", "kummer-resf"}
