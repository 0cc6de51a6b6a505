import dataclasses

import pytest

from gsnc.generators import (cycle_of_lines, nodal_curve, nodal_with_boundary_point, p1_two_points,
                             projective_product_smooth, smooth_projective)
from gsnc.linalg import QMatrix
from gsnc.mv import build_mv_complex, cohomology_of_X
from gsnc.weight import (D1SquareError, assemble_d1, assemble_E1, hodge_filtration_dims,
                         mixed_hodge_numbers)

from conftest import flip_sign


def _slot(e1, q, n):
    return next(s for s in e1[q] if s.n == n)


def test_e1_nodal_curve():
    e1 = assemble_E1(nodal_curve())
    slot = _slot(e1, -1, 1)
    assert [(s.p, s.stratum, s.degree, s.shift) for s in slot.summands] == [(1, "L1.L2", 0, 1)]


def test_e1_punctured_line():
    e1 = assemble_E1(p1_two_points())
    slot = _slot(e1, 1, 1)
    assert sorted(s.stratum for s in slot.summands) == ["L1|b0", "L1|binf"]
    assert all(s.degree == 0 and s.twist == 1 for s in slot.summands)
    assert {s.n for s in e1[0]} == {0, 2}


def test_e1_smooth_only_q_minus_p():
    e1 = assemble_E1(smooth_projective(2))
    assert set(e1) == {0}
    assert all(s.p == 0 for slot in e1[0] for s in slot.summands)


def test_d1_punctured_line():
    d1 = assemble_d1(p1_two_points())
    cx = d1.blocks[(1, 1)]
    assert cx.d[1] == QMatrix.from_rows([[1, 1]])
    assert cx.cohomology()[1] == 1


def test_d1_reduces_to_mv_when_b_empty():
    for pair in (nodal_curve(), cycle_of_lines(3)):
        d1 = assemble_d1(pair)
        mv = build_mv_complex(pair)
        # H^0 slice: weight-graded d1 in degree 0 equals the MV map (0,0) -> (1,0)
        assert d1.blocks[(0, 0)].d[0] == mv.d1[(0, 0)]


def test_both_block_types_and_square_zero():
    pair = nodal_with_boundary_point()
    d1 = assemble_d1(pair)
    cx = d1.blocks[(1, 1)]
    sids = {sid for ps in cx.pieces.values() for sid, *_ in ps}
    assert "L1|b1" in sids and "L1.L2" not in sids
    for (A, B), c in d1.blocks.items():
        for n, d in c.d.items():
            nxt = c.d.get(n + 1)
            if nxt is not None and nxt.cols == d.rows:
                assert (nxt @ d).is_zero()


def test_inconsistent_signs_raise_named_square():
    from gsnc.generators import c_times_c
    pair = c_times_c()
    bad = pair.with_model(flip_sign(pair.model, "L1.L2*L1.L2", "L1*L1.L2"))
    with pytest.raises(D1SquareError, match="square from"):
        assemble_d1(bad, validate=False)


def test_mhs_punctured_line():
    t = mixed_hodge_numbers(p1_two_points())
    assert t.rows() == [(0, 0, 0, 1), (1, 1, 1, 1)]
    assert t.betti[2] == 0


def test_mhs_cycle():
    t = mixed_hodge_numbers(cycle_of_lines(3))
    assert t.h(1, 0, 0) == 1 and t.h(2, 1, 1) == 3


def test_mhs_p1xp1_pure():
    t = mixed_hodge_numbers(projective_product_smooth([1, 1]))
    assert t.h(2, 1, 1) == 2
    assert all(w == n for (n, w), d in t.weights.items() if d)


def test_hodge_filtration_examples():
    hf = hodge_filtration_dims(p1_two_points())
    assert hf.consistent
    assert hf.from_table.get((1, 0), 0) == 0 and hf.from_table[(1, 1)] == 1
    assert hodge_filtration_dims(cycle_of_lines(3)).from_table[(1, 0)] == 1
    hf = hodge_filtration_dims(smooth_projective(2))
    assert all(hf.from_table[(2 * r, r)] == 1 for r in range(3))


def test_weight_properties(models):
    for p in models.values():
        t = mixed_hodge_numbers(p)
        for (n, a, b), d in t.entries.items():
            assert t.h(n, b, a) == d
        for (n, w), d in t.weights.items():
            if not d:
                continue
            assert 0 <= w <= 2 * n
            if not p.has_boundary:
                assert w <= n
        if not p.has_boundary:
            assert t.betti == cohomology_of_X(build_mv_complex(p)).betti
        assert hodge_filtration_dims(p, t).consistent


def test_smooth_irreducible_weights_at_least_n(models):
    for p in models.values():
        if len(p.model.components) == 1:
            t = mixed_hodge_numbers(p)
            assert all(w >= n for (n, w), d in t.weights.items() if d)
