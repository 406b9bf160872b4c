import json

import pytest

from snc_dual.model import (ModelError, dumps_model, is_simplicial_case, load_model, make_model, model_digest,
                            read_model, simplex_name, simplicial_model, stratum_count_bound, validate)


def codes(exc_info):
    return {v.code for v in exc_info.value.violations}


def edge_doc(**extra):
    doc = {
        "ambient_dim": 2,
        "components": ["A", "B"],
        "strata": [{"indices": ["A", "B"], "pieces": [{"name": "AB", "faces": {"A": "B", "B": "A"}}]}],
    }
    doc.update(extra)
    return doc


def test_edge_document_round_trips():
    m = load_model(edge_doc(name="edge"))
    assert m.components == ("A", "B")
    assert [p.name for p in m.pieces] == ["A", "B", "AB"]
    assert m.piece("AB").parent(0) == "B"
    again = load_model(dumps_model(m))
    assert dumps_model(again) == dumps_model(m)
    assert model_digest(again) == model_digest(m)


def test_digest_ignores_key_order_in_source():
    a = json.dumps(edge_doc())
    b = json.dumps(dict(reversed(list(edge_doc().items()))))
    assert model_digest(load_model(a)) == model_digest(load_model(b))


def test_unknown_top_level_field_rejected():
    with pytest.raises(ModelError) as e:
        load_model(edge_doc(colour="red"))
    assert codes(e) == {"schema"}


def test_invalid_json_is_schema_error():
    with pytest.raises(ModelError):
        load_model("{not json")


def test_dangling_link(fixtures):
    with pytest.raises(ModelError) as e:
        read_model(fixtures / "broken.json")
    assert "dangling-link" in codes(e)


def test_inconsistent_double_drop(fixtures):
    with pytest.raises(ModelError) as e:
        read_model(fixtures / "inconsistent_links.json")
    assert codes(e) == {"inconsistent-links"}


def test_missing_link():
    doc = edge_doc()
    doc["strata"][0]["pieces"][0]["faces"] = {"A": "B"}
    with pytest.raises(ModelError) as e:
        load_model(doc)
    assert "missing-link" in codes(e)


def test_wrong_parent_stratum():
    doc = edge_doc()
    doc["strata"][0]["pieces"][0]["faces"] = {"A": "A", "B": "A"}
    with pytest.raises(ModelError) as e:
        load_model(doc)
    assert "wrong-parent-stratum" in codes(e)


def test_depth_bound_uses_ambient_dimension():
    with pytest.raises(ModelError) as e:
        simplicial_model(["A", "B", "C"], [(0, 1, 2)], ambient_dim=2)
    assert "depth-exceeded" in codes(e)
    m = simplicial_model(["A", "B", "C"], [(0, 1, 2)], ambient_dim=3)
    assert m.max_depth == 2


def test_duplicate_piece_names():
    with pytest.raises(ModelError) as e:
        make_model(["A", "B"], {("A", "B"): [("A", {"A": "B", "B": "A"})]}, ambient_dim=2)
    assert "duplicate-piece" in codes(e)


def test_duplicate_and_unknown_components():
    with pytest.raises(ModelError) as e:
        make_model(["A", "A"], {}, ambient_dim=2)
    assert codes(e) == {"duplicate-component"}
    with pytest.raises(ModelError) as e:
        make_model(["A"], {("A", "Z"): [("AZ", {})]}, ambient_dim=2)
    assert "unknown-component" in codes(e)


def test_parallel_pieces_are_not_simplicial():
    m = make_model(["A", "B"], {("A", "B"): [("p", {"A": "B", "B": "A"}), ("q", {"A": "B", "B": "A"})]},
                   ambient_dim=2)
    assert validate(m) == []
    assert not is_simplicial_case(m)
    assert len(m.strata[(0, 1)]) == 2


def test_simplex_name():
    assert simplex_name(["A"]) == "A"
    assert simplex_name(["A", "B"]) == "{A,B}"


def test_count_bound():
    m = simplicial_model(list("ABCD"), [(0, 1, 2)], ambient_dim=3)
    assert stratum_count_bound(m, 1) == 6
    assert len(m.pieces_at_depth(1)) <= stratum_count_bound(m, 1)


def test_read_model_names_from_file_stem(tmp_path):
    path = tmp_path / "thing.json"
    path.write_text(json.dumps(edge_doc()))
    assert read_model(path).name == "thing"
