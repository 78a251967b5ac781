import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from achromatic_planes.colouring import (
    ColourMatrix,
    PointColour,
    colour_frequencies,
    colour_from_json,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    verify_graph_colouring,
    verify_matrix,
)
from achromatic_planes.constructions import build_ms
from achromatic_planes.errors import MatrixFormatError
from achromatic_planes.gf import field_create
from achromatic_planes.plane import plane_construct

# proper and complete with 4 colours; the pair (2, 4) is only covered by a column
LINE_COMPLETE_2X3 = ColourMatrix.from_rows([[1, 2, 3], [3, 4, 1]])


class TestColourMatrix:
    def test_shape(self):
        assert LINE_COMPLETE_2X3.shape == (2, 3)
        assert LINE_COMPLETE_2X3.column(1) == (2, 4)

    def test_jagged_rows(self):
        with pytest.raises(MatrixFormatError):
            ColourMatrix.from_rows([[1, 2], [3]])

    def test_empty(self):
        with pytest.raises(MatrixFormatError):
            ColourMatrix(())

    def test_bad_colour(self):
        with pytest.raises(MatrixFormatError):
            ColourMatrix.from_rows([[1, 2.5]])
        with pytest.raises(MatrixFormatError):
            ColourMatrix.from_rows([[PointColour(0, 1)]])

    def test_mixed_colour_order(self):
        matrix = ColourMatrix.from_rows([[PointColour(1, 2), "d1", 3]])
        assert matrix.colours() == [3, "d1", PointColour(1, 2)]

    def test_transpose_and_permute(self):
        assert LINE_COMPLETE_2X3.transpose().shape == (3, 2)
        assert LINE_COMPLETE_2X3.permute_rows([1, 0]).row(0) == (3, 4, 1)
        assert LINE_COMPLETE_2X3.permute_columns([2, 0, 1]).row(0) == (3, 1, 2)


class TestVerifyMatrix:
    def test_line_complete(self):
        report = verify_matrix(LINE_COMPLETE_2X3)
        assert report.passed
        assert report.colour_count == 4

    def test_row_mode_needs_rows(self):
        report = verify_matrix(LINE_COMPLETE_2X3, mode="row")
        assert report.proper
        assert not report.passed
        assert report.complete.witnesses == [[2, 4]]

    def test_row_duplicate(self):
        report = verify_matrix(ColourMatrix.from_rows([[1, 1], [2, 3]]))
        assert not report.proper_rows.passed
        assert report.proper_rows.witnesses == [{"row": 0, "positions": [0, 1], "colour": 1}]
        assert report.proper_cols.passed

    def test_column_duplicate(self):
        report = verify_matrix(ColourMatrix.from_rows([[1, 2], [1, 3]]))
        assert report.proper_cols.witnesses == [{"col": 0, "positions": [0, 1], "colour": 1}]

    def test_uncovered_pairs(self):
        report = verify_matrix(ColourMatrix.from_rows([[1, 2], [3, 4]]))
        assert report.proper
        assert report.complete.violations == 2
        assert report.complete.witnesses == [[1, 4], [2, 3]]

    def test_witness_cap(self):
        matrix = ColourMatrix.from_rows([list(range(1, 13)), list(range(13, 25))])
        report = verify_matrix(matrix, max_witnesses=4)
        assert len(report.complete.witnesses) == 4
        assert report.complete.violations > 4

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            verify_matrix(LINE_COMPLETE_2X3, mode="column")

    def test_structured_colours_in_report(self, fano_fixture):
        report = verify_matrix(fano_fixture.ms, mode="row")
        data = report.to_dict()
        assert data["passed"] is True
        assert data["colour_count"] == 21
        assert (data["rows"], data["cols"]) == (7, 9)

    def test_transpose_preserves_line_mode(self):
        assert verify_matrix(LINE_COMPLETE_2X3.transpose()).passed


class TestFrequencies:
    def test_counts(self):
        report = colour_frequencies(LINE_COMPLETE_2X3)
        assert report.counts == {1: 2, 2: 1, 3: 2, 4: 1}
        assert report.minimum == 1

    def test_fixture_frequencies(self, fano_fixture):
        report = colour_frequencies(fano_fixture.ms)
        assert set(report.counts.values()) == {3}
        assert report.to_dict()["counts"]["1:1"] == 3


class TestMatrixJson:
    def test_structured_colour_strings(self):
        assert colour_from_json("3:2") == PointColour(3, 2)
        assert colour_from_json("d1") == "d1"
        assert colour_from_json(7) == 7
        with pytest.raises(MatrixFormatError):
            colour_from_json(True)

    def test_round_trip(self, fano_fixture):
        assert matrix_from_json(matrix_to_json(fano_fixture.ms)) == fano_fixture.ms

    def test_string_label_in_structured_form_is_rejected(self):
        mixed = ColourMatrix.from_rows([["3:2", PointColour(3, 2)], [PointColour(1, 1), "d"]])
        with pytest.raises(MatrixFormatError, match="'3:2'"):
            matrix_to_json(mixed)
        with pytest.raises(MatrixFormatError):
            matrix_to_json(ColourMatrix.from_rows([["3:0", "x"]]))

    def test_mixed_labels_round_trip(self):
        matrix = ColourMatrix.from_rows([[1, "d1", PointColour(2, 3)], [PointColour(2, 3), 1, "x"]])
        parsed = matrix_from_json(matrix_to_json(matrix))
        assert parsed == matrix
        assert verify_matrix(parsed).to_dict() == verify_matrix(matrix).to_dict()

    def test_shape_mismatch(self):
        with pytest.raises(MatrixFormatError, match="declared shape"):
            matrix_from_json({"rows": 3, "cols": 2, "cells": [[1, 2], [3, 4]]})

    @pytest.mark.parametrize("text", ["[", '{"rows": 1}', '{"rows": 1, "cols": 1, "cells": [1]}'])
    def test_malformed(self, text):
        with pytest.raises(MatrixFormatError):
            load_matrix(text)


class TestGraphOracle:
    def test_agrees_on_known_matrix(self):
        check = verify_graph_colouring(LINE_COMPLETE_2X3)
        assert check.proper and check.complete

    def test_detects_improper(self):
        assert not verify_graph_colouring(ColourMatrix.from_rows([[1, 2], [1, 3]])).proper


@st.composite
def small_matrices(draw):
    p = draw(st.integers(min_value=1, max_value=5))
    q = draw(st.integers(min_value=1, max_value=6))
    colours = st.integers(min_value=1, max_value=7)
    return ColourMatrix.from_rows(
        [[draw(colours) for _ in range(q)] for _ in range(p)]
    )


@settings(max_examples=200, deadline=None)
@given(small_matrices())
def test_graph_oracle_agrees_with_matrix_verifier(matrix):
    report = verify_matrix(matrix, mode="line")
    check = verify_graph_colouring(matrix)
    assert check.proper == report.proper
    assert check.complete == report.complete.passed
    assert check.missing_pairs == report.complete.violations


FANO_M3 = build_ms(plane_construct(field_create(2)), 3)


@settings(max_examples=200, deadline=None)
@given(st.permutations(range(7)), st.permutations(range(9)))
def test_row_complete_implies_line_complete(row_order, col_order):
    matrix = FANO_M3.permute_rows(row_order).permute_columns(col_order)
    assert verify_matrix(matrix, mode="row").passed
    assert verify_matrix(matrix, mode="line").passed
