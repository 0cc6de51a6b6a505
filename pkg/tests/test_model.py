import pytest

from gsnc.generators import c_times_c, nodal_curve, product, smooth_projective
from gsnc.model import (Component, GsncModel, ModelError, Stratum, default_sign, dual_complex_cells,
                        level, mv_sign, strata_of_codim, validate_model)

from conftest import drop_incidence, flip_sign


def test_single_component_is_valid_level_zero():
    m = smooth_projective(2).model
    assert validate_model(m).ok
    assert level(m) == 0


def test_nodal_curve_valid():
    m = nodal_curve().model
    assert validate_model(m).ok
    assert [s.id for s in strata_of_codim(m, 1)] == ["L1.L2"]
    assert level(m) == 1


def test_cxc_strata_and_level():
    m = c_times_c().model
    assert validate_model(m).ok
    assert len(strata_of_codim(m, 1)) == 4
    assert len(strata_of_codim(m, 2)) == 1
    assert level(m) == 2
    shapes = sorted(s.factor_type for s in strata_of_codim(m, 1))
    assert shapes == [(1,)] * 4


def test_flipped_sign_breaks_coherence():
    m = c_times_c().model
    bad = flip_sign(m, "L1.L2*L1.L2", "L1*L1.L2")
    rep = validate_model(bad)
    assert not rep.ok
    assert "sign-coherence" in rep.codes()


def test_missing_incidence_is_a_face_poset_error():
    m = c_times_c().model
    rep = validate_model(drop_incidence(m, "L1.L2*L1.L2", "L1*L1.L2"))
    assert "face-poset" in rep.codes()


def test_wrong_factor_type_rejected():
    import dataclasses
    m = c_times_c().model
    strata = tuple(dataclasses.replace(s, factor_type=(2,)) if s.id == "L1.L2*L1.L2" else s
                   for s in m.strata)
    rep = validate_model(dataclasses.replace(m, strata=strata))
    assert not rep.ok


def test_empty_model_rejected():
    assert "empty" in validate_model(GsncModel.build([], [], [])).codes()


def test_unequal_dimensions_rejected():
    m = GsncModel.build([Component("A", 1), Component("B", 2)], [], [])
    assert "dimension" in validate_model(m).codes()


def test_unknown_component_rejected():
    m = GsncModel.build([Component("A", 1)], [Stratum("A.Z", ("A", "Z"), 1, factor_type=(1,))], [])
    assert "unknown-id" in validate_model(m).codes()


def test_mv_sign_positions():
    m = nodal_curve().model
    # the node adds L2 to {L1} (position 1) and L1 to {L2} (position 0)
    assert mv_sign(m, "L1.L2", "L2") == 1
    assert mv_sign(m, "L1.L2", "L1") == -1
    with pytest.raises(ModelError, match="not an incidence"):
        mv_sign(m, "L1", "L2")


def test_default_signs_anticommute_on_cxc_square():
    m = c_times_c().model
    total = 0
    top = "L1.L2*L1.L2"
    for mid in ("L1*L1.L2", "L1.L2*L1"):
        total += mv_sign(m, top, mid) * mv_sign(m, mid, "L1*L1")
    assert total == 0


def test_default_sign_counts_smaller_components():
    m = nodal_curve().model
    assert default_sign(m, m.by_id["L1"], m.by_id["L1.L2"]) == -1
    assert default_sign(m, m.by_id["L2"], m.by_id["L1.L2"]) == 1


def test_product_cell_counts():
    a, b = nodal_curve(), nodal_curve()
    ca, cb = dual_complex_cells(a.model), dual_complex_cells(b.model)
    cp = dual_complex_cells(product(a, b).model)
    assert sum(cp.values()) == sum(ca.values()) * sum(cb.values())


def test_strata_of_codim_partitions(models):
    for p in models.values():
        m = p.model
        seen = [s.id for n in range(m.dim + 1) for s in strata_of_codim(m, n)]
        assert sorted(seen) == sorted(s.id for s in m.x_strata())
