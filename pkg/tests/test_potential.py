import numpy as np
import pytest

from ptsmatrix.exceptions import ConfigError
from ptsmatrix.potential import (Free, PiecewiseConstant, PointInteraction, Sampled,
                                 potential_from_dict, potential_to_dict, pt_step_well,
                                 pt_symmetry_residual, square_well, support_radius)


def test_pt_residual_examples():
    assert pt_symmetry_residual(Free(1.0), 10) == 0.0
    assert pt_symmetry_residual(PointInteraction(1.0), 10) == 0.0
    assert pt_symmetry_residual(pt_step_well(1.0, 1.0), 10) == 0.0
    assert pt_symmetry_residual(PiecewiseConstant(1.0, [(0.0, 1.0, 1j)]), 10) == pytest.approx(1.0)


@pytest.mark.parametrize("n", [2, 3, 10, 1001])
def test_pt_residual_independent_of_n_for_piecewise(n):
    q = PiecewiseConstant(1.0, [(-0.7, -0.2, 2.0), (0.1, 0.6, 2.0)])
    # defect exists only on thin slivers; boundary-aware sampling finds it for any n
    assert pt_symmetry_residual(q, n) == pytest.approx(2.0)


def test_pt_residual_real_even_vs_non_even():
    assert pt_symmetry_residual(square_well(3.0, 0.4, rho=1.0)) == 0.0
    assert pt_symmetry_residual(PiecewiseConstant(1.0, [(-0.4, 0.2, 3.0)])) > 0
    x = np.linspace(-1, 1, 101)
    assert pt_symmetry_residual(Sampled(1.0, np.exp(-x ** 2) + 1j * x)) < 1e-12
    assert pt_symmetry_residual(Sampled(1.0, np.exp(-x ** 2) + x)) > 0.1


def test_pt_residual_rejects_small_n():
    with pytest.raises(ValueError):
        pt_symmetry_residual(Free(1.0), 1)


def test_support_radius():
    assert support_radius(Free(2.0)) == 2.0
    assert support_radius(PointInteraction(1.0)) == 0.0
    assert support_radius(PiecewiseConstant(1.5, [(-1, 1, 1.0)])) == 1.5


@pytest.mark.parametrize("segs", [[(0.5, 0.2, 1)], [(-0.5, 0.2, 1), (0.1, 0.3, 1)], [(-2, 0, 1)]])
def test_piecewise_invariants(segs):
    with pytest.raises(ValueError):
        PiecewiseConstant(1.0, segs)


def test_invalid_rho_and_samples():
    with pytest.raises(ValueError):
        Free(-1.0)
    with pytest.raises(ValueError):
        Sampled(1.0, [1.0])
    with pytest.raises(ValueError):
        Sampled(1.0, [1.0, np.nan])


def test_evaluation():
    q = pt_step_well(2.0, 0.5, rho=1.0)
    np.testing.assert_array_equal(q([-0.25, 0.25, 0.75]), [-2j, 2j, 0])
    s = Sampled(1.0, [0.0, 1.0, 0.0])
    np.testing.assert_allclose(s([-0.5, 0.0, 0.5, 2.0]), [0.5, 1.0, 0.5, 0.0])


@pytest.mark.parametrize("q", [
    Free(1.0), PointInteraction(1.5, 0.2), pt_step_well(1.5, 0.5, rho=1.0),
    Sampled(1.0, [0.0, 1 + 2j, 0.0]),
])
def test_json_roundtrip(q):
    assert potential_from_dict(potential_to_dict(q)) == q


@pytest.mark.parametrize("doc, field", [
    ({"type": "blob"}, "potential.type"),
    ({"type": "point"}, "potential.gamma"),
    ({"type": "piecewise", "rho": 1, "segments": [{"lo": 0}]}, "potential.segments[0]"),
    ({"type": "sampled", "rho": 1, "samples": {"values": [[1]]}}, "potential.samples.values"),
    ({"type": "free", "rho": -1}, "potential"),
])
def test_json_errors_name_the_field(doc, field):
    with pytest.raises(ConfigError, match=field.replace("[", r"\[").replace("]", r"\]")):
        potential_from_dict(doc)
