from __future__ import annotations

import json
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from conehom import documents
from conehom.documents import DocumentError
from conehom.lattice import FgAbGroup, Matrix
from conehom.qz import QZGroup, QZMorphism
from strategies import DOCUMENT_KINDS, qz_groups, random_document_value


def round_trip(value):
    text = documents.dumps(value)
    back = documents.loads(text)
    return text, back


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(DOCUMENT_KINDS))
def test_round_trip_is_identity(seed, kind):
    value = random_document_value(random.Random(seed), kind)
    text, back = round_trip(value)
    assert type(back) is type(value)
    assert back == value
    assert documents.dumps(back) == text


@settings(max_examples=200, deadline=None)
@given(qz_groups(), st.integers(0, 2**32 - 1))
def test_element_round_trip(G, seed):
    rng = random.Random(seed)
    vec = G.normalize([mpq(rng.randint(-20, 20), rng.randint(1, 12)) if k < 0 else rng.randint(-30, 30) for k in G.kinds])
    encoded = documents.encode_element(G, vec)
    assert documents.decode_element(G, json.loads(json.dumps(encoded))) == tuple(vec)


def test_scalar_forms():
    assert documents.encode_scalar(mpq(7, 3)) == "7/3"
    assert documents.encode_scalar(mpq(7, 3), -2) == "1/3 mod 1"
    assert documents.encode_scalar(4) == 4
    assert documents.decode_scalar("-2/4") == mpq(-1, 2)
    assert documents.decode_scalar("7/3 mod 1") == mpq(7, 3)
    assert documents.decode_scalar(5) == 5
    G = QZGroup(1, 1, (), 1)
    assert documents.decode_element(G, ["1/2", "7/3 mod 1", 5]) == (mpq(1, 2), mpq(1, 3), 5)


def test_matrix_entries_are_not_reduced():
    # a multiplier of 2 on Q/Z is not the zero map
    QZ = QZGroup.QmodZ()
    f = QZMorphism(QZ, QZ, Matrix([[2]]))
    doc = documents.encode(f)
    assert doc["matrix"] == [[2]] and doc["category"] == "qz"
    assert documents.decode(doc) == f


def test_fg_and_qz_categories_are_kept_apart():
    A = FgAbGroup.from_orders(1, [4])
    assert type(documents.loads(documents.dumps(A))) is FgAbGroup
    assert type(documents.loads(documents.dumps(QZGroup.from_fg(A)))) is QZGroup


def test_canonical_text():
    text = documents.dumps(FgAbGroup.from_orders(2, [6, 2]))
    assert text.endswith("\n") and json.loads(text) == {"kind": "group", "free": 2, "torsion": [2, 6]}
    assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"


@pytest.mark.parametrize(
    "text, where",
    [
        ('{"kind": "group", "free": 0, "torsion": [3, 2]}', "$"),
        ('{"kind": "group", "free": 0}', "$: missing field 'torsion'"),
        ('{"kind": "group", "free": "1", "torsion": []}', "$.free"),
        ('{"kind": "complex", "lo": 0, "groups": [{"kind": "group", "free": 1, "torsion": []}], "deltas": [[[1]]]}', "$.deltas"),
        # Z/2 -> Z must be zero
        ('{"kind": "morphism", "source": {"kind": "group", "free": 0, "torsion": [2]},'
         ' "target": {"kind": "group", "free": 1, "torsion": []}, "matrix": [[1]]}', "$"),
        ('[]', "$"),
        ('{"kind": "group", ', "line 1"),
    ],
)
def test_malformed_documents(text, where):
    with pytest.raises(DocumentError) as info:
        documents.loads(text)
    assert str(info.value).startswith(where)


def test_expected_kind():
    with pytest.raises(DocumentError, match=r"\$\.kind"):
        documents.loads(documents.dumps(FgAbGroup.free(1)), expect="complex")
