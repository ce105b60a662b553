"""
Unit tests for the document models in kugacert.models.
"""

import pytest
from pydantic import ValidationError

from kugacert.models import FanDocument, SupportDocument, to_int


@pytest.mark.parametrize("value, expected", [(3, 3), ("-12", -12), (" 7 ", 7), ("0", 0)])
def test_to_int_accepts(value, expected):
    assert to_int(value) == expected


@pytest.mark.parametrize("value", [True, 1.0, "1.5", "x", None, "1e3"])
def test_to_int_rejects(value):
    with pytest.raises(ValueError):
        to_int(value)


class TestFanDocument:
    """Coercion and cross-field rules."""

    def test_string_entries_coerced(self):
        doc = FanDocument.model_validate(
            {"ambient_rank": "2", "cones": [[["1", "0"], [1, "1"]]], "projection": [["1", "0"]], "layout": ["1", 1]}
        )
        assert doc.ambient_rank == 2
        assert doc.cones == [[[1, 0], [1, 1]]]
        assert doc.layout == [1, 1]
        assert doc.window is None

    def test_generator_length_checked(self):
        with pytest.raises(ValidationError):
            FanDocument.model_validate({"ambient_rank": 3, "cones": [[[1, 0]]]})

    def test_empty_cone_rejected(self):
        with pytest.raises(ValidationError):
            FanDocument.model_validate({"ambient_rank": 2, "cones": [[]]})

    def test_layout_must_match_rank(self):
        with pytest.raises(ValidationError):
            FanDocument.model_validate({"ambient_rank": 2, "cones": [[[1, 0]]], "layout": [2, 1]})

    @pytest.mark.parametrize("layout", [[0, 1], [1, -1], [1, 1, 1]])
    def test_layout_shape(self, layout):
        with pytest.raises(ValidationError):
            FanDocument.model_validate({"ambient_rank": 2, "cones": [[[1, 0]]], "layout": layout})

    def test_rank_positive(self):
        with pytest.raises(ValidationError):
            FanDocument.model_validate({"ambient_rank": 0, "cones": []})


class TestSupportDocument:
    """g x g matrices only."""

    def test_valid(self):
        doc = SupportDocument.model_validate({"g": "2", "matrices": [[["2", 0], [0, 2]]]})
        assert doc.matrices == [[[2, 0], [0, 2]]]

    def test_wrong_shape(self):
        with pytest.raises(ValidationError):
            SupportDocument.model_validate({"g": 2, "matrices": [[[2]]]})

    def test_g_positive(self):
        with pytest.raises(ValidationError):
            SupportDocument.model_validate({"g": 0, "matrices": []})
