import pytest

from achromatic_planes.errors import MatrixFormatError, NoUniqueLine, PreconditionViolated
from achromatic_planes.gf import field_create
from achromatic_planes.plane import (
    CHECK_NAMES,
    ProjectivePlane,
    flag_count,
    line_through,
    lines_through,
    load_plane,
    plane_construct,
    plane_from_json,
    plane_size,
    plane_to_json,
    plane_verify,
)

CANONICAL_FANO = ((2, 4, 6), (1, 4, 5), (3, 4, 7), (1, 2, 3), (2, 5, 7), (1, 6, 7), (3, 5, 6))


class TestPlaneConstruct:
    @pytest.mark.parametrize("r", [2, 3, 4, 5, 7, 8, 9])
    def test_constructed_plane_passes_every_check(self, r):
        plane = plane_construct(field_create(r))
        report = plane_verify(plane)
        assert report.passed, report.failed()
        assert len(plane.points) == plane_size(r)
        assert len(plane.lines) == plane_size(r)
        assert all(len(line) == r + 1 for line in plane.lines)

    def test_canonical_fano_lines(self, fano):
        assert fano.lines == CANONICAL_FANO
        assert fano.points == tuple(range(1, 8))

    def test_lines_are_ascending(self):
        plane = plane_construct(field_create(4))
        assert all(list(line) == sorted(line) for line in plane.lines)

    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_every_point_on_r_plus_one_lines(self, r):
        plane = plane_construct(field_create(r))
        for point in plane.points:
            assert len(lines_through(plane, point)) == r + 1
        assert flag_count(plane) == plane_size(r) * (r + 1)


class TestLineThrough:
    def test_two_lowest_points(self, fano):
        assert line_through(fano, 1, 2) == 3
        assert set(fano.lines[3]) >= {1, 2}

    def test_symmetric(self, fano):
        for a in fano.points:
            for b in fano.points:
                if a != b:
                    assert line_through(fano, a, b) == line_through(fano, b, a)

    def test_same_point(self, fano):
        with pytest.raises(PreconditionViolated):
            line_through(fano, 3, 3)

    def test_no_line(self, fano):
        broken = ProjectivePlane(order=2, lines=fano.lines[1:])
        with pytest.raises(NoUniqueLine) as excinfo:
            line_through(broken, 2, 6)
        assert excinfo.value.found == 0

    def test_repeated_line(self, fano):
        doubled = ProjectivePlane(order=2, lines=fano.lines + (fano.lines[0],))
        with pytest.raises(NoUniqueLine) as excinfo:
            line_through(doubled, 2, 4)
        assert excinfo.value.found == 2
        assert line_through(doubled, 1, 2) == 3

    def test_lines_through_point(self, fano):
        assert lines_through(fano, 4) == (0, 1, 2)


class TestPlaneVerify:
    def setup_method(self):
        self.fano = plane_construct(field_create(2))

    def test_report_lists_all_checks(self):
        report = plane_verify(self.fano)
        assert [c["name"] for c in report.to_dict()["checks"]] == list(CHECK_NAMES)

    def test_missing_line(self):
        report = plane_verify(ProjectivePlane(order=2, lines=self.fano.lines[:-1]))
        assert not report.passed
        assert {"A1", "B3", "B5"} <= set(report.failed())
        assert report.checks["B5"].witnesses == ["6 lines, expected 7"]

    def test_short_line(self):
        lines = ((2, 4),) + self.fano.lines[1:]
        report = plane_verify(ProjectivePlane(order=2, lines=lines))
        assert report.checks["B2"].witnesses == [(0, 2)]
        assert (6, 2) in report.checks["B3"].witnesses
        assert not report.checks["A1"].passed
        assert (2, 6, 0) in report.checks["A1"].witnesses

    def test_disjoint_lines(self):
        plane = ProjectivePlane(order=2, lines=((1, 2, 3), (4, 5, 6)))
        report = plane_verify(plane)
        assert (0, 1) in report.checks["A2"].witnesses
        assert (0, 1, 0) in report.checks["B1"].witnesses
        assert not report.checks["A3"].passed

    def test_extra_point_label(self):
        lines = ((2, 4, 8),) + self.fano.lines[1:]
        report = plane_verify(ProjectivePlane(order=2, lines=lines))
        assert not report.checks["B4"].passed

    def test_witnesses_are_capped(self):
        report = plane_verify(ProjectivePlane(order=4, lines=()))
        a1 = report.checks["A1"]
        assert not a1.passed
        assert len(a1.witnesses) == 10
        assert a1.witnesses[0] == (1, 2, 0)

    def test_custom_cap(self):
        report = plane_verify(ProjectivePlane(order=3, lines=()), max_witnesses=3)
        assert len(report.checks["A1"].witnesses) == 3


class TestPlaneJson:
    def test_round_trip(self, fano):
        assert plane_from_json(plane_to_json(fano)) == fano

    def test_json_lines_sorted(self, fano_fixture):
        data = plane_to_json(fano_fixture.plane)
        assert data["lines"][1] == [3, 4, 5]
        assert data["lines"][3] == [1, 4, 7]

    def test_keep_order(self):
        plane = plane_from_json({"order": 2, "lines": [[3, 1, 2]]}, keep_order=True)
        assert plane.lines == ((3, 1, 2),)

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            '{"lines": []}',
            '{"order": 1, "lines": []}',
            '{"order": 2, "lines": [[1, 0]]}',
            '{"order": 2, "lines": "abc"}',
            '{"order": true, "lines": []}',
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(MatrixFormatError):
            load_plane(text)
