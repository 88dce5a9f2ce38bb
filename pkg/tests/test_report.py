import math

import pytest

from bohmatom import ModelParams, ProjectionError, SphericalPoint, integrate, validate_qn
from bohmatom import report
from bohmatom.dynamics import Frame, FrameVector
from bohmatom.trajectories import Trajectory, TrajectorySample


@pytest.fixture(scope="module")
def small_traj():
    qn = validate_qn(1, 0, 0.5, 0.5)
    return integrate(qn, ModelParams(), SphericalPoint(1.0, math.pi / 2, 0.0), 1.0, 64)


class TestCsv:
    def test_round_trip_bit_exact(self, small_traj):
        text = report.trajectory_csv(small_traj)
        parsed = report.parse_trajectory_csv(text)
        assert len(parsed) == len(small_traj.samples)
        for sample, row in zip(small_traj.samples, parsed):
            x, y, z = sample.position.to_cartesian()
            vals = (sample.t, x, y, z) + sample.velocity.components
            assert all(a == b for a, b in zip(vals, row))

    def test_header_and_column_order(self, small_traj):
        text = report.trajectory_csv(small_traj)
        assert text.splitlines()[0] == "t,x,y,z,vx,vy,vz"

    def test_fmt_shortest_round_trip(self):
        for v in (0.1, 1.0 / 3.0, 1e-300, 123456.789, -0.0):
            assert float(report.fmt(v)) == v


class TestJson:
    def test_schema_and_determinism(self):
        doc1 = report.json_document("rates", {"alpha": 0.007}, [{"rate": 1.0 / 3.0}])
        doc2 = report.json_document("rates", {"alpha": 0.007}, [{"rate": 1.0 / 3.0}])
        assert doc1 == doc2
        import json

        payload = json.loads(doc1)
        assert payload["schema_version"] == 1
        assert payload["spec"]["command"] == "rates"
        assert payload["results"][0]["rate"] == 1.0 / 3.0


class TestSvg:
    def test_trajectory_svg_structure(self, small_traj):
        svg = report.emit_svg(small_traj)
        assert svg.startswith('<?xml version="1.0"')
        assert "<polyline" in svg
        assert "n=1 l=0 j=1/2 m=1/2" in svg
        assert svg == report.emit_svg(small_traj)  # byte-deterministic

    def test_field_slice_svg(self):
        sl = report.FieldSlice(
            label="rate", xlabel="theta", ylabel="rate",
            x=tuple(float(x) for x in range(10)),
            y=tuple(math.sin(x) for x in range(10)),
        )
        svg = report.emit_svg(sl)
        assert "<polyline" in svg and "rate" in svg

    def test_empty_trajectory_rejected(self, small_traj):
        empty = Trajectory(samples=[], qn=small_traj.qn, model=small_traj.model)
        with pytest.raises(ProjectionError):
            report.emit_svg(empty)

    def test_non_planar_rejected(self, small_traj):
        qn = small_traj.qn
        samples = [
            TrajectorySample(0.0, SphericalPoint(1.0, 1.0, 0.0), FrameVector((0, 0, 0), Frame.CARTESIAN)),
            TrajectorySample(1.0, SphericalPoint(1.0, 2.0, 0.0), FrameVector((0, 0, 0), Frame.CARTESIAN)),
        ]
        bad = Trajectory(samples=samples, qn=qn, model=small_traj.model)
        with pytest.raises(ProjectionError):
            report.emit_svg(bad)

    def test_unknown_object_rejected(self):
        with pytest.raises(ProjectionError):
            report.emit_svg(42)
