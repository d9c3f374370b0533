import json

import numpy as np
import pytest

from monoqubit.linalg import DensityMatrix, PureState, haar_random_pure, random_mixed
from monoqubit.statefile import StateFileError, dump_state, load_state, parse_state, save_state


def test_round_trip_pure(tmp_path):
    psi = haar_random_pure((2, 3), 1)
    save_state(psi, tmp_path / "s.json")
    back = load_state(tmp_path / "s.json")
    assert isinstance(back, PureState) and back.dims == (2, 3)
    np.testing.assert_array_equal(back.amplitudes, psi.amplitudes)


def test_round_trip_mixed(tmp_path):
    rho = DensityMatrix((2, 2), random_mixed((2, 2), 4))
    save_state(rho, tmp_path / "m.json")
    back = load_state(tmp_path / "m.json")
    assert isinstance(back, DensityMatrix)
    np.testing.assert_array_equal(back.matrix, rho.matrix)


def _w_doc(scale=1.0):
    a = scale / np.sqrt(3)
    amps = [[0, 0]] * 8
    amps = [[a, 0] if k in (1, 2, 4) else [0, 0] for k in range(8)]
    return {"kind": "pure", "dims": [2, 2, 2], "amplitudes": amps}


def test_unnormalized_pure_names_invariant():
    with pytest.raises(StateFileError, match="amplitudes.*unit-trace"):
        parse_state(_w_doc(np.sqrt(0.98)))


def test_normalize_flag():
    doc = _w_doc(0.999) | {"normalize": True}
    psi = parse_state(doc)
    assert np.vdot(psi.amplitudes, psi.amplitudes).real == pytest.approx(1.0)


def test_mixed_trace_names_invariant():
    m = np.eye(8) * 0.98 / 8
    doc = {"kind": "mixed", "dims": [2, 2, 2],
           "matrix": [[[float(x), 0.0] for x in row] for row in m]}
    with pytest.raises(StateFileError, match="trace 0.98.*unit-trace"):
        parse_state(doc)


def test_mixed_hermiticity_names_invariant():
    doc = {"kind": "mixed", "dims": [2],
           "matrix": [[[0.5, 0], [0.1, 0]], [[0, 0], [0.5, 0]]]}
    with pytest.raises(StateFileError, match="Hermiticity"):
        parse_state(doc)


@pytest.mark.parametrize("doc,field", [
    ({"kind": "blah", "dims": [2]}, "kind"),
    ({"kind": "pure", "dims": [1]}, "dims"),
    ({"kind": "pure", "dims": [2], "amplitudes": [[1, 0]]}, "amplitudes"),
    ({"kind": "pure", "dims": [2], "amplitudes": [[1, 0], [0]]}, r"amplitudes\[1\]"),
    ({"kind": "pure", "dims": [2], "amplitudes": [[1, 0], ["a", 0]]}, r"amplitudes\[1\]"),
    ({"kind": "mixed", "dims": [2], "matrix": [[[1, 0], [0, 0]]]}, "matrix"),
    ([1, 2], "top level"),
])
def test_field_errors(doc, field):
    with pytest.raises(StateFileError, match=field):
        parse_state(doc)


def test_json_syntax_error_reports_line(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"kind": "pure",\n "dims": [2,\n}')
    with pytest.raises(StateFileError, match="line 3"):
        load_state(p)


def test_missing_file(tmp_path):
    with pytest.raises(StateFileError, match="cannot read"):
        load_state(tmp_path / "nope.json")


def test_dump_is_json_serializable():
    json.dumps(dump_state(haar_random_pure((2, 2), 0)))
    with pytest.raises(TypeError):
        dump_state(np.eye(2))
