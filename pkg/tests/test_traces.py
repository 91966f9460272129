"""Figure traces: curves, learning regions, CSV and SVG emission."""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from cavscreen import (
    Contract,
    PosteriorSeparable,
    Potential,
    binary_figure_traces,
    design_binary_contract,
    figure_table,
    learning_regions,
    neg_entropy,
    write_csv,
    write_svg,
)


@pytest.fixture(scope="module")
def designed():
    model = PosteriorSeparable(1.0, neg_entropy())
    contract = design_binary_contract(model)
    traces = binary_figure_traces(model, contract)
    return model, contract, traces


class TestTraceShapes:
    def test_envelope_dominates_objective(self, designed):
        _, _, traces = designed
        assert (traces.envelope >= traces.objective - 1e-9).all()

    def test_center_curve_is_pointwise_lowest(self, designed):
        _, _, traces = designed
        center = traces.curve(1)
        for k in (0, 2):
            flank = traces.curve(k)
            assert (flank >= center - 1e-12).all()
            assert flank.max() > center.max()

    def test_flanks_mirror_each_other(self, designed):
        # priors 0.47 and 0.53 sit symmetrically around 1/2, and so do their
        # curves once the x axis is reflected
        _, _, traces = designed
        x = traces.x
        left = traces.curve(0)
        right_reflected = np.interp(x, x, traces.curve(2)[::-1])
        sym = np.allclose(x, 1.0 - x[::-1], atol=1e-12)
        assert sym
        np.testing.assert_allclose(left, right_reflected, atol=1e-9)

    def test_center_splits_flanks_stay(self, designed):
        _, _, traces = designed
        assert not traces.plans[1].is_degenerate()
        assert traces.plans[0].is_degenerate()
        assert traces.plans[2].is_degenerate()

    def test_learning_region_brackets_the_center(self, designed):
        _, _, traces = designed
        regions = learning_regions(traces)
        assert len(regions) == 1
        lo, hi = regions[0]
        assert lo < 0.5 < hi
        assert 0.47 < lo and hi < 0.53

    def test_offsets_shift_curves_by_prior_potential(self, designed):
        model, _, traces = designed
        for k, p in enumerate(traces.priors):
            want = model.kappa * neg_entropy().value(np.array([p, 1.0 - p]))
            assert traces.offsets[k] == pytest.approx(want, abs=1e-12)


class TestFreeLearning:
    def test_zero_potential_envelope_is_the_chord(self):
        model = PosteriorSeparable(1.0, Potential("zero", lambda pts: np.zeros(len(pts))))
        contract = Contract(1.0, 4.0)
        traces = binary_figure_traces(model, contract, resolution=400)
        np.testing.assert_allclose(traces.envelope, 1.0, atol=1e-12)
        for plan in traces.plans:
            support = sorted(b[0] for b in plan.support)
            np.testing.assert_allclose(support, [0.0, 1.0], atol=1e-12)


class TestEmission:
    def test_csv_is_byte_stable(self, designed, tmp_path):
        _, _, traces = designed
        header, rows = figure_table(traces)
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(first, header, rows)
        write_csv(second, header, rows)
        assert first.read_bytes() == second.read_bytes()

    def test_csv_layout(self, designed, tmp_path):
        _, _, traces = designed
        header, rows = figure_table(traces)
        assert header[:4] == ["x", "gross", "objective", "envelope"]
        assert len(rows) == len(traces.x)
        assert len(rows[0]) == len(header)

    def test_svg_is_wellformed(self, designed, tmp_path):
        _, _, traces = designed
        path = tmp_path / "figure.svg"
        write_svg(
            path,
            traces.x,
            [("objective", traces.objective), ("envelope", traces.envelope)],
            title="traces",
        )
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg")
        polylines = [e for e in root.iter() if e.tag.endswith("polyline")]
        assert len(polylines) == 2
