import json
import random

import pytest
from click.testing import CliRunner
from hypothesis import given, settings, strategies as st

from clubkit import docs
from clubkit.cli import main
from clubkit.clubs import sample_collections
from clubkit.dblclubs import sample_collections_h
from clubkit.errors import ParseError, UnresolvedReference
from clubkit.fincat import equal_tables, validate_category
from clubkit.harness import (SuiteConfig, category_mutation, law_pools, parse_arities,
                             profunctor_mutation, run_suite)
from clubkit.probes import default_universe, point_pro, two
from clubkit.profunctor import pro_identity, validate_profunctor
from clubkit.smc import s_cat

import oracles


def test_parse_arities():
    assert parse_arities("0..3") == (0, 1, 2, 3)
    assert parse_arities("2,1,2") == (1, 2)
    assert parse_arities("4") == (4,)


def test_config_problems():
    assert SuiteConfig().problems() == []
    bad = SuiteConfig(arities=(), monad="Q", suites=("nope",)).problems()
    assert len(bad) == 3


# documents ----------------------------------------------------------------------

@pytest.mark.parametrize("C", [two(), s_cat(two(), {0, 1, 2}), oracles.z2(), oracles.three()],
                         ids=lambda C: C.name)
def test_category_doc_roundtrip(C):
    D = docs.parse_category(json.loads(docs.dumps(docs.category_doc(C))))
    assert equal_tables(C, D)


def test_profunctor_doc_roundtrip():
    U = default_universe()
    for P in list(U.profunctors.values()):
        doc = json.loads(docs.dumps(docs.profunctor_doc(P)))
        Q = docs.parse_profunctor(doc, {P.src_cat.name: P.src_cat, P.tgt_cat.name: P.tgt_cat})
        assert Q.left_table() == P.left_table() and Q.right_table() == P.right_table()


@pytest.mark.parametrize("monad", ["S", "T"])
def test_collection_docs_roundtrip(monad):
    for c in sample_collections(monad):
        d = docs.parse_collection(json.loads(docs.dumps(docs.collection_doc(c))))
        assert d.arity == c.arity and d.perm == c.perm and equal_tables(d.base, c.base)
    for h in sample_collections_h(monad):
        k = docs.parse_collection_h(json.loads(docs.dumps(docs.collection_h_doc(h))))
        assert k.theta_cell == h.theta_cell


def test_digit_ids_stay_strings():
    doc = docs.category_doc(two())
    assert list(docs.parse_category(doc).objects) == ["0", "1"]


def test_empty_probe_dir(tmp_path):
    U = docs.load_universe(tmp_path)
    assert len(U.categories) == 4 and len(U.profunctors) == 3


def test_probe_dir_adds_documents(tmp_path):
    cdoc = docs.category_doc(oracles.three())
    del cdoc["name"]  # named after the file
    (tmp_path / "three.json").write_text(docs.dumps(cdoc))
    doc = docs.profunctor_doc(pro_identity(oracles.three()))
    doc["src"] = doc["tgt"] = "three"
    doc["name"] = "I3"
    (tmp_path / "I3.json").write_text(docs.dumps(doc))
    U = docs.load_universe(tmp_path)
    assert "three" in U.categories and "I3" in U.profunctors
    assert validate_profunctor(U.profunctors["I3"]) == []


def test_dangling_reference(tmp_path):
    doc = docs.profunctor_doc(point_pro())
    doc["src"] = "nowhere"
    (tmp_path / "bad.json").write_text(docs.dumps(doc))
    with pytest.raises(UnresolvedReference):
        docs.load_universe(tmp_path)


def test_malformed_json(tmp_path):
    (tmp_path / "bad.json").write_text('{"objects": [1, 2,')
    with pytest.raises(ParseError) as e:
        docs.load_universe(tmp_path)
    assert ":1:" in str(e.value)


def test_non_category_rejected(tmp_path):
    doc = docs.category_doc(oracles.z2())
    doc["compose"] = []  # s.s left undefined
    (tmp_path / "z.json").write_text(docs.dumps(doc))
    with pytest.raises(ParseError):
        docs.load_universe(tmp_path)


# fuzzing ---------------------------------------------------------------------------

@given(st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_mutations_are_violations(seed):
    # the independent law oracle agrees that every mutation breaks a law
    rng = random.Random(seed)
    cats, pros = law_pools(default_universe())
    if rng.random() < 0.5:
        n, C = rng.choice(cats)
        M, kind, _ = category_mutation(C, rng)
        assert oracles.category_law_violations(M) > 0, (n, kind)
        assert validate_category(M) != []
    else:
        n, P = rng.choice(pros)
        M, kind, _ = profunctor_mutation(P, rng)
        assert oracles.profunctor_law_violations(M) > 0, (n, kind)
        assert validate_profunctor(M) != []


# cli ---------------------------------------------------------------------------------

def test_cli_materialize():
    r = CliRunner().invoke(main, ["materialize", "--cat", "2", "--arities", "0..2"])
    assert r.exit_code == 0
    out = json.loads(r.output)
    C = docs.parse_category(out["category"])
    assert equal_tables(C, s_cat(two(), {0, 1, 2}))


def test_cli_check_pass_and_figure(tmp_path):
    fig = tmp_path / "r.png"
    r = CliRunner().invoke(main, ["check", "--suite", "category-laws,profunctor-coherence",
                                  "--fuzz", "20", "--report", "json", "--figure", str(fig)])
    assert r.exit_code == 0, r.output
    rep = json.loads(r.output)
    assert rep["summary"]["failed"] == 0 and rep["summary"]["total"] > 20
    assert fig.exists() and fig.stat().st_size > 0


def test_cli_inject_gives_one_failure():
    r = CliRunner().invoke(main, ["check", "--suite", "hps", "--monad", "T", "--inject",
                                  "--report", "json"])
    assert r.exit_code == 1
    rep = json.loads(r.output)
    bad = [c["name"] for c in rep["checks"] if not c["verdict"]]
    assert len(bad) == 1 and bad[0].endswith("/corrupt")


def test_cli_bad_suite():
    r = CliRunner().invoke(main, ["check", "--suite", "nope"])
    assert r.exit_code == 2


def test_cli_parse_error_exit(tmp_path):
    (tmp_path / "x.json").write_text("[")
    r = CliRunner().invoke(main, ["check", "--suite", "category-laws", "--probes",
                                  str(tmp_path)])
    assert r.exit_code == 2


def test_cli_club_tensor(tmp_path):
    b, t = [c for c in sample_collections() if c.name in ("binary", "ternary")]
    (tmp_path / "b.json").write_text(docs.dumps(docs.collection_doc(b)))
    (tmp_path / "t.json").write_text(docs.dumps(docs.collection_doc(t)))
    r = CliRunner().invoke(main, ["club", "tensor", "--left", str(tmp_path / "b.json"),
                                  "--right", str(tmp_path / "t.json")])
    assert r.exit_code == 0
    c = docs.parse_collection(json.loads(r.output))
    assert sorted(c.arity.values()) == [6]


def _inverse(tmp_path, f, g):
    (tmp_path / "i.json").write_text(json.dumps({"kind": "cat0", "f": f, "g": g}))
    return CliRunner().invoke(main, ["dblclub", "inverse", "--instance",
                                     str(tmp_path / "i.json"), "--emit-witness"])


def test_cli_inverse_instance(tmp_path):
    r = _inverse(tmp_path, "!:G1->1", "!:G1->1")
    assert r.exit_code == 0, r.output
    out = json.loads(r.output)
    assert out["vu_identity"] and out["uv_identity"] and out["v"]


def test_cli_inverse_rejects_non_opfibration(tmp_path):
    r = _inverse(tmp_path, "u:2->G1", "u:2->G1")
    assert r.exit_code == 2 and "HypothesisFailed" in r.output


def test_same_seed_same_report():
    cfg = SuiteConfig(suites=("category-laws", "roundtrip"), seed=5, fuzz=40)
    a = run_suite(cfg).to_json()
    b = run_suite(cfg).to_json()
    assert a == b
