import copy
import json

import pytest

from heegaard_atlas.atlas import (
    EXHAUSTED,
    GEOMETRIES,
    PASS,
    AtlasError,
    default_atlas_path,
    load_atlas,
    run_atlas,
    tex_to_grammar,
    verify_manifold,
)
from heegaard_atlas.groupcalc import AbelianGroup
from heegaard_atlas.words import format_word

RAW = json.loads(default_atlas_path().read_text())


@pytest.fixture(scope="module")
def records():
    return {r.name: r for r in load_atlas()}


def write(tmp_path, data):
    path = tmp_path / "atlas.json"
    path.write_text(json.dumps(data))
    return path


def test_eight_records_one_per_geometry(records):
    assert len(records) == 8
    assert sorted(r.geometry for r in records.values()) == sorted(GEOMETRIES)


@pytest.mark.parametrize("name,relators", [
    ("poincare", ("a^4ba^-1b", "b^-2a^-1ba^-1")),
    ("sol", ("ab^-1a^-1b^-1aba^-1b", "aba^-2bab^-3")),
    ("seifert-h2xr", ("b^-1a^4b^-1a^-1b^-1a^4b^-1a^-1b^-1a^-1", "b^5a^-5")),
])
def test_caption_strings(records, name, relators):
    item = next(r for r in RAW if r["name"] == name)
    assert tuple(item["caption"]) == relators
    assert tuple(records[name].caption.relators) == tuple(records[name].caption.word(s) for s in relators)


def test_transliteration():
    assert tex_to_grammar("a^{-1}b^{-2}=1") == "a^-1b^-2"
    assert tex_to_grammar("b^5a^{-5}") == "b^5a^-5"
    for item in RAW:
        assert [tex_to_grammar(t) for t in item["caption_tex"]] == item["caption"]


def test_caption_words_round_trip(records):
    for rec in records.values():
        for r in rec.caption.relators:
            assert rec.caption.word(format_word(r)) == r


def test_expected_h1_table(records):
    table = {
        "poincare": (0, ()), "rp3rp3": (0, (2, 2)), "weeks": (0, (5, 5)), "hantzsche-wendt": (0, (4, 4)),
        "heisenberg": (2, ()), "sol": (1, ()), "brieskorn-237": (0, ()), "seifert-h2xr": (1, (5,)),
    }
    for name, (rank, torsion) in table.items():
        assert records[name].expected_h1 == AbelianGroup(rank, torsion)


class TestLoadErrors:
    def test_caption_mismatch(self, tmp_path):
        data = copy.deepcopy(RAW)
        data[0]["caption"][0] = "a^4ba^-1b^2"
        with pytest.raises(AtlasError) as exc:
            load_atlas(write(tmp_path, data))
        assert exc.value.record == "poincare" and exc.value.field == "caption[0]"

    def test_bad_certificate(self, tmp_path):
        data = copy.deepcopy(RAW)
        rec = next(r for r in data if r["name"] == "seifert-h2xr")
        step = next(s for s in rec["certificates"][0]["steps"] if s["op"] == "add_relator")
        step["cert"][0][2] *= -1
        with pytest.raises(AtlasError) as exc:
            load_atlas(write(tmp_path, data))
        assert exc.value.record == "seifert-h2xr" and exc.value.field == "certificates[0]"

    def test_bad_matrices(self, tmp_path):
        data = copy.deepcopy(RAW)
        rec = next(r for r in data if r["name"] == "sol")
        rec["matrices"]["a"] = [[2, -1, 0], [1, 0, 0], [0, 0, 1]]
        with pytest.raises(AtlasError) as exc:
            load_atlas(write(tmp_path, data))
        assert exc.value.field == "matrices"

    def test_missing_geometry(self, tmp_path):
        with pytest.raises(AtlasError):
            load_atlas(write(tmp_path, RAW[:7]))

    def test_unknown_generator_in_caption(self, tmp_path):
        data = copy.deepcopy(RAW)
        data[1]["caption_tex"][0] = "c^2=1"
        data[1]["caption"][0] = "c^2"
        with pytest.raises(AtlasError) as exc:
            load_atlas(write(tmp_path, data))
        assert exc.value.record == "rp3rp3"


class TestVerify:
    def test_rp3rp3(self, records):
        results = {r.check: r for r in verify_manifold(records["rp3rp3"])}
        assert results["h1"].outcome == PASS and "Z/2 + Z/2" in results["h1"].details
        assert results["tc<ab>"].outcome == PASS
        assert results["realize"].outcome == PASS

    def test_heisenberg(self, records):
        results = {r.check: r for r in verify_manifold(records["heisenberg"])}
        assert set(results) == {"matrix", "tietze[0]", "h1", "realize"}
        assert all(r.outcome == PASS for r in results.values())
        assert "Z + Z" in results["h1"].details

    def test_weeks(self, records):
        results = {r.check: r for r in verify_manifold(records["weeks"])}
        assert "Z/5 + Z/5" in results["h1"].details

    def test_every_check_once(self, records):
        report = run_atlas(list(records.values()))
        for rec in records.values():
            got = [r.check for r in report.results if r.record == rec.name]
            assert got == rec.check_names()

    def test_report_is_deterministic(self, records):
        strip = lambda rep: [{k: v for k, v in c.items() if k != "elapsed_ms"}
                             for rec in rep.to_json()["records"] for c in rec["checks"]]
        recs = list(records.values())
        assert strip(run_atlas(recs)) == strip(run_atlas(recs))

    def test_exhausted_only_fails_when_required(self, tmp_path):
        data = copy.deepcopy(RAW)
        rec = next(r for r in data if r["name"] == "seifert-h2xr")
        check = next(c for c in rec["checks"] if c["kind"] == "realize")
        check["budget"] = 5
        check["required"] = False
        loaded = {r.name: r for r in load_atlas(write(tmp_path, data))}
        [res] = [r for r in verify_manifold(loaded["seifert-h2xr"]) if r.check == "realize"]
        assert res.outcome == EXHAUSTED and res.ok
        check["required"] = True
        loaded = {r.name: r for r in load_atlas(write(tmp_path, data))}
        [res] = [r for r in verify_manifold(loaded["seifert-h2xr"]) if r.check == "realize"]
        assert res.outcome == EXHAUSTED and not res.ok

    def test_failing_check_is_reported(self, tmp_path):
        data = copy.deepcopy(RAW)
        rec = next(r for r in data if r["name"] == "poincare")
        rec["checks"][0]["expect_index"] = 60
        loaded = {r.name: r for r in load_atlas(write(tmp_path, data))}
        results = verify_manifold(loaded["poincare"])
        assert results[0].outcome == "fail"
        assert not run_atlas(list(loaded.values()), ["poincare"]).ok

    def test_unresolved_certificate_is_searched(self, tmp_path):
        data = copy.deepcopy(RAW)
        rec = next(r for r in data if r["name"] == "hantzsche-wendt")
        del rec["certificates"][0]["steps"]
        loaded = {r.name: r for r in load_atlas(write(tmp_path, data))}
        assert loaded["hantzsche-wendt"].certificates[0] is None
        [res] = [r for r in verify_manifold(loaded["hantzsche-wendt"]) if r.check == "tietze[0]"]
        assert res.outcome == PASS

    def test_text_report(self, records):
        text = run_atlas(list(records.values()), ["rp3rp3"]).to_text()
        assert text.splitlines()[0] == "rp3rp3: PASS"
