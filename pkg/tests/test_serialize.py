import json
import random

import pytest

from spancalc import serialize
from spancalc.corpus import decorated_corpus, groupoid_corpus, random_span
from spancalc.errors import InvariantViolation, ParseError
from spancalc.groupoid import delooping, identity_functor
from spancalc.local_systems import trivial_system
from spancalc.span import identity_span, spans_equivalent
from spancalc.tft import DecoratedObject, decorated_equivalent, decorated_identity, dual_data

BZ2_DOC = {
    "kind": "groupoid", "objects": 1, "morphisms": [[0, 0], [0, 0]], "identity": [0], "inverse": [0, 1],
    "compose": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]],
}


def test_parse_bz2():
    X = serialize.parse_document(json.dumps(BZ2_DOC))
    assert X == delooping([[0, 1], [1, 0]])


def test_missing_compose_pair():
    doc = dict(BZ2_DOC, compose=BZ2_DOC["compose"][:3])
    with pytest.raises(InvariantViolation) as info:
        serialize.parse_document(doc)
    assert info.value.axiom == "totality" and info.value.path == ".compose"


def test_bad_rational_in_local_system():
    doc = {"kind": "local_system", "base": BZ2_DOC, "dim": [1], "action": [[["1"]], [["2/0"]]]}
    with pytest.raises(ParseError) as info:
        serialize.parse_document(doc)
    assert info.value.path == ".action[1][0][0]"


def test_functoriality_error_path():
    doc = {"kind": "local_system", "base": BZ2_DOC, "dim": [1], "action": [[["1"]], [["2"]]]}
    with pytest.raises(InvariantViolation) as info:
        serialize.parse_document(doc)
    assert info.value.axiom == "local-system-functoriality"


@pytest.mark.parametrize("text,fragment", [
    ("{", "invalid JSON"), ("[]", "object"), ('{"objects": 1}', "kind"), ('{"kind": "monoid"}', "unknown kind"),
    (b"\xff", "UTF-8"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        serialize.parse_document(text)
    assert fragment in str(info.value)


def test_expect_mismatch():
    with pytest.raises(ParseError):
        serialize.parse_document(BZ2_DOC, expect="span")


def test_non_integer_fields():
    with pytest.raises(ParseError) as info:
        serialize.parse_document(dict(BZ2_DOC, objects="1"))
    assert info.value.path == ".objects"
    with pytest.raises(ParseError):
        serialize.parse_document(dict(BZ2_DOC, identity=[True]))


@pytest.mark.parametrize("name,X", groupoid_corpus())
def test_groupoid_round_trip(name, X):
    assert serialize.parse_document(serialize.dumps(serialize.dump(X))) == X


@pytest.mark.parametrize("seed", range(5))
def test_span_round_trip(seed):
    rng = random.Random(seed)
    corpus = [X for _, X in groupoid_corpus()]
    S = random_span(rng.choice(corpus), rng.choice(corpus), rng, corpus)
    S2 = serialize.parse_document(serialize.dumps(serialize.dump(S)))
    assert S2.source == S.source and S2.target == S.target
    assert spans_equivalent(S, S2) is not None


@pytest.mark.parametrize("case", [0, 1, 2, 20])
def test_decorated_round_trip(case):
    _, A = decorated_corpus(random.Random(3), 30)[case]
    A2 = serialize.parse_document(serialize.dumps(serialize.dump(A)))
    assert A2 == A
    for D in (decorated_identity(A), dual_data(A)[1]):
        D2 = serialize.parse_document(serialize.dumps(serialize.dump(D)))
        assert decorated_equivalent(D, D2) is not None


def test_file_references(tmp_path):
    (tmp_path / "sub").mkdir()
    (tmp_path / "sub" / "bz2.json").write_text(json.dumps(BZ2_DOC))
    (tmp_path / "ls.json").write_text(json.dumps(
        {"kind": "local_system", "base": "sub/bz2.json", "dim": [1], "action": [[["1"]], [["-1"]]]}))
    (tmp_path / "obj.json").write_text(json.dumps(
        {"kind": "decorated_object", "space": "sub/bz2.json", "system": "ls.json"}))
    A = serialize.load_document(str(tmp_path / "obj.json"))
    assert A.system.action(1)[0, 0] == -1


def test_circular_reference(tmp_path):
    (tmp_path / "a.json").write_text(json.dumps({"kind": "span", "apex": "a.json", "left": {}, "right": {}}))
    with pytest.raises(ParseError) as info:
        serialize.load_document(str(tmp_path / "a.json"))
    assert "circular" in str(info.value)


def test_missing_reference(tmp_path):
    (tmp_path / "a.json").write_text(json.dumps({"kind": "local_system", "base": "nope.json", "dim": [],
                                                 "action": []}))
    with pytest.raises(ParseError) as info:
        serialize.load_document(str(tmp_path / "a.json"))
    assert info.value.path == ".base"


def test_span_legs_default_to_apex():
    doc = {"kind": "span", "apex": BZ2_DOC,
           "left": {"codomain": BZ2_DOC, "object_map": [0], "morphism_map": [0, 1]},
           "right": {"codomain": BZ2_DOC, "object_map": [0], "morphism_map": [0, 0]}}
    S = serialize.parse_document(doc)
    assert S.left == identity_functor(S.apex)


def test_decorated_span_validation_path():
    bz2 = delooping([[0, 1], [1, 0]])
    A = DecoratedObject(bz2, trivial_system(bz2))
    doc = serialize.dump(decorated_identity(A))
    doc["left_dec"] = [[["0"]]]
    with pytest.raises(InvariantViolation) as info:
        serialize.parse_document(doc)
    assert info.value.axiom == "pi-cartesian"


def test_dumps_is_canonical():
    text = serialize.dumps(serialize.dump(identity_span(delooping([[0, 1], [1, 0]]))))
    assert text.endswith("\n")
    assert text == serialize.dumps(json.loads(text))
