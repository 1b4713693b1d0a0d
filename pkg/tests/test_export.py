import json
from fractions import Fraction

import pytest

from rac.drawing import validate
from rac.errors import DrawingFormatError
from rac.export import (
    drawing_from_dict,
    drawing_to_dict,
    dumps_drawing,
    load_drawing,
    loads_drawing,
    save_drawing,
    svg_string,
    write_svg,
)


def test_rational_coordinates_survive_a_file(tmp_path, lens_with_donor):
    path = tmp_path / "lens.json"
    save_drawing(lens_with_donor, path)
    assert load_drawing(path) == lens_with_donor


def test_document_keeps_coordinates_as_strings(plus_drawing):
    doc = json.loads(dumps_drawing(plus_drawing))
    assert doc["vertices"][0] == {"id": "a", "x": "0", "y": "1"}
    assert "allow_self_loops" not in doc


def test_dict_form(square_with_diagonals):
    data = drawing_to_dict(square_with_diagonals)
    assert len(data["edges"]) == 6
    again = drawing_from_dict(data)
    assert again.point("v3").x == Fraction(4)


def test_fraction_strings_parse_exactly():
    d = loads_drawing('{"vertices": [{"id": "a", "x": "1/3", "y": "0"}, {"id": "b", "x": "2/3", "y": "1"}]}')
    assert d.point("a").x == Fraction(1, 3)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"edges": []}',
        '{"vertices": [{"id": "a", "x": "zero", "y": "0"}]}',
        '{"bend_limit": -1, "vertices": []}',
    ],
)
def test_bad_documents(text):
    with pytest.raises(DrawingFormatError):
        loads_drawing(text)


def test_missing_file(tmp_path):
    with pytest.raises(DrawingFormatError):
        load_drawing(tmp_path / "absent.json")


def test_svg_marks_crossings(plus_drawing):
    svg = svg_string(plus_drawing, validate(plus_drawing))
    assert 'id="edges"' in svg
    assert 'id="vertices"' in svg
    assert 'id="crossings"' in svg


def test_svg_without_crossing_marks(plus_drawing):
    svg = svg_string(plus_drawing, validate(plus_drawing), mark_crossings=False)
    assert 'id="crossings"' not in svg


def test_write_svg(tmp_path, lens_drawing):
    out = tmp_path / "lens.svg"
    write_svg(lens_drawing, out)
    assert out.read_text(encoding="utf-8").startswith("<?xml")
