import pytest

from gsnc.generators import c_times_c, cycle_of_lines, nodal_curve, p1_two_points, smooth_projective
from gsnc.model import connected_components
from gsnc.mv import (build_mv_complex, cohomology_of_X, e2_dims, euler_characteristic,
                     structure_sheaf_cohomology)


def test_nodal_slots_and_differential():
    cx = build_mv_complex(nodal_curve())
    assert cx.slot_dim(0, 0) == 2 and cx.slot_dim(0, 2) == 2 and cx.slot_dim(1, 0) == 1
    d = cx.d1[(0, 0)]
    assert d.shape == (1, 2)
    assert sorted(d.to_strings()[0]) == ["-1", "1"]


def test_smooth_has_single_column():
    cx = build_mv_complex(smooth_projective(2))
    assert {p for p, q in cx.slots if cx.slot_dim(p, q)} == {0}
    assert all(m.is_zero() for m in cx.d1.values())


def test_cxc_slot_dims():
    cx = build_mv_complex(c_times_c())
    expected = {(0, 0): 4, (1, 0): 4, (2, 0): 1, (0, 2): 8, (1, 2): 4, (0, 4): 4}
    assert {k: cx.slot_dim(*k) for k in expected} == expected
    assert all(cx.slot_dim(p, q) == 0 for p, q in cx.slots if (p, q) not in expected)


@pytest.mark.parametrize("pair, betti", [
    (nodal_curve(), (1, 0, 2)),
    (cycle_of_lines(3), (1, 1, 3)),
    (c_times_c(), (1, 0, 4, 0, 4)),
])
def test_betti(pair, betti):
    assert cohomology_of_X(build_mv_complex(pair)).betti == betti


def test_cycle_h1_has_weight_zero():
    res = cohomology_of_X(build_mv_complex(cycle_of_lines(3)))
    assert res.weights.get((1, 0)) == 1


def test_structure_sheaf():
    assert structure_sheaf_cohomology(cycle_of_lines(3)) == (1, 1)
    assert structure_sheaf_cohomology(c_times_c()) == (1, 0, 0)


def test_boundary_rejected():
    with pytest.raises(ValueError):
        build_mv_complex(p1_two_points())


def test_euler_characteristic_and_components(models):
    for p in models.values():
        x = p.x_part()
        cx = build_mv_complex(x)
        res = cohomology_of_X(cx)
        assert euler_characteristic(cx) == sum((-1) ** n * b for n, b in enumerate(res.betti))
        assert res.betti[0] == connected_components(x.model)


def test_a0_slice_is_subcomplex(models):
    for p in models.values():
        x = p.x_part()
        full = cohomology_of_X(build_mv_complex(x)).betti
        sheaf = structure_sheaf_cohomology(x)
        assert all(s <= b for s, b in zip(sheaf, full))
        assert e2_dims(build_mv_complex(x))
