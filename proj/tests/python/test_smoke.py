import pytest

import modaldef as md


def test_parse_and_classify():
    f = md.parse("~p | [u] p")
    assert str(f) == "~p | [u] p"
    assert f.fragment == "ML_UBOX_POS"
    assert f.kind == "disj"
    assert f.propositions == {"p"}
    assert md.parse("[]<>p").modal_depth == 2
    assert md.parse("p & q") == md.parse("p & q")
    assert md.fragment_leq("ML", "EMDL")


def test_errors():
    with pytest.raises(md.ParseError):
        md.parse("p &")
    with pytest.raises(md.FragmentError):
        md.to_idis_normal_form(md.parse("[u] p"))
    with pytest.raises(ValueError):
        md.frame_valid({"points": []}, "p")


def test_evaluation():
    model = {"points": ["1", "2"], "rel": [["1", "2"]], "val": {"p": ["1"]}}
    assert md.eval_world(model, "1", "<>~p")
    assert not md.eval_team(model, ["1", "2"], "p \\/ ~p")
    assert md.eval_team(model, ["1", "2"], "p | ~p")
    assert md.model_valid(model, "p | ~p")


def test_frame_class_and_audit():
    assert md.frame_class("~p | [u] p", 2) == [{"points": ["1"], "rel": []}, {"points": ["1"], "rel": [["1", "1"]]}]
    assert md.frame_valid({"points": ["a"], "rel": [["a", "a"]]}, "[]p -> p")
    report = md.audit("disjoint-union", "~p | [u] p", max_points=2)
    assert report["verdict"] == "counterexample"
    assert md.replay(report)
    assert md.audit("gen-subframe", "[u] ~p | [u] p")["verdict"] == "pass"


def test_equivalence():
    assert md.equiv("[](p | [u] q)", "[]p | [u] q", "kripke_point")["verdict"] == "pass"
    r = md.equiv("p | ~p", "p \\/ ~p", "team", max_points=2)
    assert r["verdict"] == "counterexample"
    assert md.replay(r)


def test_transformations():
    assert str(md.to_box_form(md.parse("[](p | [u] q)"))) == "[]p | [u] q"
    assert md.to_closed_clauses(md.parse("[u] p | [u] q"))
    assert all(g.fragment in ("ML", "ML_IDIS") for g in md.to_idis_normal_form(md.parse("p \\/ []q")))
    assert md.emdl_to_mdl(md.parse("dep(<>p; q)")).fragment == "MDL"
    assert md.dep_to_idis(md.parse("dep(p; q)")).fragment == "ML_IDIS"
    assert md.clause_to_idis([md.parse("p"), md.parse("q")]).fragment == "ML_IDIS"


def test_generate():
    a = md.generate("EMDL", depth=2, props=2, seed=3, count=20)
    assert a == md.generate("EMDL", depth=2, props=2, seed=3, count=20)
    assert all(md.fragment_leq(f.fragment, "EMDL") for f in a)
