import json

import pytest

from syzlab import corpus, io
from syzlab.decomp import decompose, is_isomorphic
from syzlab.quiver import projective
from syzlab.rep import simple


def test_expressions(A3, L2):
    m = io.load_module("P(1)/rad^1", A3)
    assert is_isomorphic(m, simple(A3, "1"))
    assert io.load_module("P(1)/rad^2", A3).dims == projective(A3, "1").dims
    assert io.load_module("P(1)/rad^0", L2).is_zero()
    m = io.load_module("2*S(1) + P(2)", A3)
    assert sorted(k for _, k in decompose(m)) == [1, 2]
    with pytest.raises(io.InputError):
        io.load_module("", A3)


def test_triples(T2L2):
    x = io.load_triple("bar:S(1) + under:P(1)", T2L2)
    assert x.dim_vector() == (1, 2)
    assert io.load_triple("proj:0", T2L2).dim_vector() == (2, 2)
    with pytest.raises(io.InputError):
        io.load_triple("corpus:9999", T2L2)


def test_algebra_files(tmp_path, T2A2):
    path = tmp_path / "t.json"
    path.write_text(json.dumps(io.algebra_to_json(T2A2)))
    back = io.load_algebra(str(path))
    assert back.total_dimension == T2A2.total_dimension
    with pytest.raises(io.InputError):
        io.load_algebra("nope")


def test_module_file(tmp_path, A2):
    path = tmp_path / "m.json"
    path.write_text(io.dumps(projective(A2, "1").to_json()))
    assert is_isomorphic(io.load_module(str(path), A2), projective(A2, "1"))


def test_workspace_index(tmp_path, A2):
    (tmp_path / "alg.json").write_text(io.dumps(A2.to_json()))
    (tmp_path / "m.json").write_text(io.dumps(simple(A2, "1").to_json()))
    _, d = corpus.pex_diagrams(A2)[0]
    (tmp_path / "d.json").write_text(io.dumps(d.to_json()))
    idx = io.Workspace(tmp_path).index()
    assert idx["algebras"] == ["alg.json"] and idx["modules"] == ["m.json"] and idx["diagrams"] == ["d.json"]


def test_dumps_is_deterministic():
    obj = {"b": [1, 2], "a": "Ω"}
    assert io.dumps(obj) == io.dumps(json.loads(io.dumps(obj)))
    assert "Ω" in io.dumps(obj)
