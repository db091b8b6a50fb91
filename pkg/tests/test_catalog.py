"""Catalog loading, validation, round-trip, and the verdict sweep."""

import json

import pytest

from weylkit.catalog import (
    CHECKS,
    PROVENANCES,
    CatalogEntry,
    compute_check,
    default_catalog_path,
    load_catalog,
    run_catalog,
    serialize_catalog,
)
from weylkit.errors import CatalogFormatError, UnknownNameError
from weylkit.linalg import is_zero


MINIMUM_IDS = {
    "a1-full",
    "a1-cartan",
    "a1-nilradical",
    "a1-zero",
    "a2-cartan",
    "a2-borel",
    "a2-nilradical",
    "a1xa1-diagonal",
    "b2-cartan",
    "defining-single",
    "defining-doubled",
    "a2-defining",
}


def _write(tmp_path, doc):
    p = tmp_path / "catalog.json"
    p.write_text(json.dumps(doc) if isinstance(doc, dict) else doc)
    return str(p)


def _minimal_entry(**overrides):
    entry = {
        "id": "probe",
        "group": "A1",
        "subalgebra": "cartan",
        "expected": {
            "spherical": {
                "verdict": "spherical",
                "provenance": "derived_oracle",
                "note": "probe",
            }
        },
    }
    entry.update(overrides)
    return {"schema_version": 1, "entries": [entry]}


class TestLoading:
    def test_shipped_catalog_loads(self):
        entries = load_catalog()
        ids = {e.id for e in entries}
        assert MINIMUM_IDS <= ids
        assert len(ids) == len(entries)
        for e in entries:
            for check, expectation in e.expected.items():
                assert check in CHECKS
                assert expectation["provenance"] in PROVENANCES
                assert expectation["note"]

    def test_span_subalgebra_expands(self):
        entries = {e.id: e for e in load_catalog()}
        tw = entries["a1-twisted-line"]
        assert tw.h is not None
        assert tw.h.dim == 1
        v = tw.h.basis[0]
        assert v[0] != 0 and v[1] != 0 and v[2] == 0

    def test_malformed_file_is_a_parse_error(self, tmp_path):
        path = _write(tmp_path, "{ this is not json")
        with pytest.raises(CatalogFormatError, match="line"):
            load_catalog(path)

    def test_wrong_schema_version(self, tmp_path):
        path = _write(tmp_path, {"schema_version": 99, "entries": []})
        with pytest.raises(CatalogFormatError, match="schema_version"):
            load_catalog(path)

    def test_unknown_symbolic_name(self, tmp_path):
        path = _write(tmp_path, _minimal_entry(subalgebra="bogus"))
        with pytest.raises(UnknownNameError):
            load_catalog(path)

    def test_missing_provenance_refused(self, tmp_path):
        doc = _minimal_entry()
        del doc["entries"][0]["expected"]["spherical"]["provenance"]
        with pytest.raises(CatalogFormatError, match="provenance"):
            load_catalog(_write(tmp_path, doc))

    def test_unrecognized_provenance_refused(self, tmp_path):
        doc = _minimal_entry()
        doc["entries"][0]["expected"]["spherical"]["provenance"] = "hunch"
        with pytest.raises(CatalogFormatError, match="provenance"):
            load_catalog(_write(tmp_path, doc))

    def test_inapplicable_check_refused(self, tmp_path):
        # a module-only entry has no subalgebra for a sphericality claim
        doc = _minimal_entry()
        del doc["entries"][0]["subalgebra"]
        doc["entries"][0]["module"] = {"summands": [[[1], 1]]}
        with pytest.raises(CatalogFormatError, match="shape"):
            load_catalog(_write(tmp_path, doc))

    def test_duplicate_ids_refused(self, tmp_path):
        doc = _minimal_entry()
        doc["entries"].append(json.loads(json.dumps(doc["entries"][0])))
        with pytest.raises(CatalogFormatError, match="duplicate"):
            load_catalog(_write(tmp_path, doc))

    def test_env_var_overrides_default(self, tmp_path, monkeypatch):
        path = _write(tmp_path, _minimal_entry())
        monkeypatch.setenv("WEYLKIT_CATALOG", path)
        assert default_catalog_path() == path
        entries = load_catalog()
        assert [e.id for e in entries] == ["probe"]


class TestRoundTrip:
    def test_serialize_then_reload_is_identical(self, tmp_path):
        entries = load_catalog()
        doc = serialize_catalog(entries)
        path = _write(tmp_path, doc)
        again = load_catalog(path)
        assert len(again) == len(entries)
        for a, b in zip(entries, again):
            assert a.id == b.id
            assert a.group == b.group
            assert a.module == b.module
            assert a.expected == b.expected
            if a.h is None:
                assert b.h is None
            else:
                assert a.h.dim == b.h.dim
                for va, vb in zip(a.h.basis, b.h.basis):
                    assert is_zero(va - vb)


class TestRunning:
    def test_shipped_catalog_runs_clean(self):
        entries = load_catalog()
        res = run_catalog(entries)
        assert res["summary"]["disagreements"] == 0
        assert res["summary"]["errors"] == 0
        assert res["summary"]["skipped"] == 0
        assert res["summary"]["agreements"] == res["summary"]["checks_run"]
        assert res["summary"]["checks_run"] >= 30

    def test_rows_ordered_by_id_then_check(self):
        res = run_catalog(load_catalog())
        keys = [(r["id"], r["check"]) for r in res["rows"]]
        assert keys == sorted(keys)

    def test_empty_check_set_yields_empty_table(self):
        res = run_catalog(load_catalog(), checks=[])
        assert res["rows"] == []
        assert res["summary"]["checks_run"] == 0

    def test_single_check_subset(self):
        res = run_catalog(load_catalog(), checks=["involution"])
        assert {r["check"] for r in res["rows"]} == {"involution"}
        assert len(res["rows"]) == 3
        assert all(r["agree"] for r in res["rows"])

    def test_unknown_check_rejected(self):
        with pytest.raises(UnknownNameError):
            run_catalog(load_catalog(), checks=["bogus"])

    def test_dimension_cap_recorded_as_skip(self, tmp_path):
        doc = {
            "schema_version": 1,
            "entries": [
                {
                    "id": "too-big",
                    "group": "A1",
                    "module": {"summands": [[[70], 1]], "degree_bound": 2},
                    "expected": {
                        "mf_truncated": {
                            "verdict": "multiplicity_free_up_to_D",
                            "provenance": "derived_oracle",
                            "note": "never runs",
                        }
                    },
                }
            ],
        }
        res = run_catalog(load_catalog(_write(tmp_path, doc)))
        row = res["rows"][0]
        assert row["skipped"] is True
        assert "dimension" in row["reason"]
        assert res["summary"]["skipped"] == 1
        assert res["summary"]["disagreements"] == 0

    def test_errors_recorded_not_fatal(self, tmp_path):
        # the nilradical fails the reductivity gate inside the involution
        # check; the sweep must record that and keep going
        doc = {
            "schema_version": 1,
            "entries": [
                {
                    "id": "bad-fiber",
                    "group": "A1",
                    "subalgebra": "nilradical",
                    "module": {"fiber": ["trivial"]},
                    "expected": {
                        "involution": {
                            "verdict": "verified",
                            "provenance": "derived_oracle",
                            "note": "will not verify",
                        }
                    },
                },
                {
                    "id": "fine",
                    "group": "A1",
                    "subalgebra": "cartan",
                    "expected": {
                        "spherical": {
                            "verdict": "spherical",
                            "provenance": "derived_oracle",
                            "note": "control",
                        }
                    },
                },
            ],
        }
        res = run_catalog(load_catalog(_write(tmp_path, doc)))
        by_id = {r["id"]: r for r in res["rows"]}
        assert by_id["bad-fiber"]["verdict"] == "error:non_reductive"
        assert by_id["bad-fiber"]["agree"] is False
        assert by_id["fine"]["agree"] is True
        assert res["summary"]["errors"] == 1
        assert res["summary"]["disagreements"] == 1


class TestComputeCheck:
    def test_trivial_dimension_example(self):
        entries = {e.id: e for e in load_catalog()}
        assert compute_check(entries["a2-cartan"], "spherical") == "not_spherical"

    def test_seed_is_threaded_through(self):
        entries = {e.id: e for e in load_catalog()}
        a = compute_check(entries["a1-cartan"], "spherical", seed=0)
        b = compute_check(entries["a1-cartan"], "spherical", seed=1)
        assert a == b == "spherical"
