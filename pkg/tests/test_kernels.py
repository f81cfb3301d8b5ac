import numpy as np
import pytest

from madcap import _kernels_py, forms, kernels
from madcap.madfamily import DecayParams

try:
    from madcap import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

needs_ext = pytest.mark.skipif(_kernels_c is None, reason="compiled kernel not built")


def _sample_forms():
    p = DecayParams(0.5, 0.5, 0.2)
    return [forms.single_decay_ic(0.3), forms.vtype_ic(0.4, 0.7), forms.equal_rates_ic(0.5),
            forms.coherent_info_generic(p), forms.vtype_holevo(0.6, 0.4),
            forms.mutual_info_form("lambda", DecayParams(0.44, 0.3, 0.2))]


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_simplex_grid():
    pts = _kernels_py.simplex_grid(10, (True, True, True))
    assert pts.shape == (286, 4)
    assert np.abs(pts[:, 0] + 6 * pts[:, 1] + pts[:, 2] + pts[:, 3] - 1).max() < 1e-15
    assert pts.min() >= 0
    assert _kernels_py.simplex_grid(10, (True, False, True)).shape == (66, 4)


def test_eta_clamp():
    f = forms._form([(1.0, kernels.ETA, (1, 0, 0, 0, 0))])
    vals = f.evaluate([[0.0, 0, 0, 0], [1e-13, 0, 0, 0], [0.5, 0, 0, 0]])
    assert vals[0] == 0 and vals[1] == 0 and abs(vals[2] - 0.5) < 1e-15


def test_h2rel_endpoints():
    f = forms._form([(1.0, kernels.H2REL, (0, 0, 1, 0, 0))])
    vals = f.evaluate([[0, 0, 0.0, 0], [0, 0, 1.0, 0]])
    assert abs(vals[0]) < 1e-15 and abs(vals[1] - 1) < 1e-15


@needs_ext
def test_eval_parity(rng):
    pts = _kernels_py.simplex_grid(30, (True, True, True))
    for f in _sample_forms():
        a = _kernels_py.eval_forms(pts, f.coef, f.weight, f.kind)
        b = _kernels_c.eval_forms(pts, f.coef, f.weight, f.kind)
        assert np.abs(a - b).max() < 1e-12


@needs_ext
def test_grid_top_parity():
    for f in _sample_forms():
        for free in [(1, 1, 1), (1, 0, 1)]:
            mask = np.array(free, dtype=np.intc)
            va, pa = _kernels_py.grid_top(f.coef, f.weight, f.kind, 50, mask, 5)
            vb, pb = _kernels_c.grid_top(f.coef, f.weight, f.kind, 50, mask, 5)
            assert np.abs(va - vb).max() < 1e-12
            assert np.abs(pa - pb).max() < 1e-15


def test_grid_top_value():
    f = forms.single_decay_ic(0.0)
    vals, pts = kernels.grid_top(f.coef, f.weight, f.kind, 9, np.ones(3, dtype=np.intc), 1)
    assert abs(vals[0] - np.log2(9)) < 1e-12
    assert np.abs(pts[0] - [1 / 9, 1 / 9, 1 / 9, 1 / 9]).max() < 1e-15
