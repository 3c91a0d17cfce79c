import json

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from qwang import tilefile
from qwang.tensor import Tensor


def test_one_based_indices():
    t = tilefile.loads(json.dumps({"dim": 2, "arity": 2, "entries": [{"idx": [1, 2], "re": 1, "im": -1}]}))
    assert t.data[0, 1] == 1 - 1j
    assert tilefile.to_doc(t)["entries"] == [{"idx": [1, 2], "re": 1.0, "im": -1.0}]


@pytest.mark.parametrize("doc", [
    {"dim": 2, "arity": 2, "entries": [{"idx": [0, 1], "re": 1}]},
    {"dim": 2, "arity": 2, "entries": [{"idx": [1, 3], "re": 1}]},
    {"dim": 2, "arity": 2, "entries": [{"idx": [1], "re": 1}]},
    {"dim": 2, "arity": 2, "entries": [{"idx": [1, 1], "re": 1}, {"idx": [1, 1], "re": 2}]},
    {"dim": 2, "entries": []},
    {"dim": 0, "arity": 2, "entries": []},
])
def test_rejects_invalid(doc):
    with pytest.raises(tilefile.TileFileError):
        tilefile.loads(json.dumps(doc))


def test_rejects_bad_json():
    with pytest.raises(tilefile.TileFileError):
        tilefile.loads("{")


@given(arrays(np.complex128, (3, 3, 3, 3),
              elements=st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)))
def test_roundtrip_bit_exact(a):
    t = Tensor(a)
    assert tilefile.loads(tilefile.dumps(t)) == t
