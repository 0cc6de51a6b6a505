import dataclasses
from itertools import combinations

from gsnc.generators import c_times_c, smooth_projective
from gsnc.hodge import (StratumCohomology, gysin_from_pd, make_projective_product,
                        restriction_from_class_map, validate_hodge)
from gsnc.linalg import QMatrix


def test_projective_line_and_plane():
    p1, _ = make_projective_product([1])
    assert dict(p1.dims) == {(0, 0): 1, (2, 1): 1}
    p2, _ = make_projective_product([2])
    assert all(p2.block_dim(2 * k, k) == 1 for k in range(3))


def test_p1xp1_kunneth():
    c, pairing = make_projective_product([1, 1])
    assert c.betti() == [1, 0, 2, 0, 1]
    assert c.block_dim(2, 1) == 2
    assert pairing.is_nondegenerate()


def test_poincare_duality_of_dims():
    for dims in ([1], [2], [1, 1], [2, 1], [1, 1, 1]):
        c, _ = make_projective_product(dims)
        d = c.dim
        for (n, a), v in c.dims.items():
            assert c.block_dim(2 * d - n, d - a) == v


def test_restriction_to_ruling():
    src, _ = make_projective_product([1, 1])
    tgt, _ = make_projective_product([1])
    r = restriction_from_class_map(src, tgt, [[0], [1]])
    assert r.block(2, 1, src, tgt) == QMatrix.from_rows([[0, 1]])
    assert r.block(0, 0, src, tgt) == QMatrix.from_rows([[1]])


def test_identity_class_map():
    p1, _ = make_projective_product([1])
    r = restriction_from_class_map(p1, p1, [[1]])
    for (n, a) in p1.blocks():
        assert r.block(n, a, p1, p1) == QMatrix.identity(1)


def test_plane_to_line():
    p2, _ = make_projective_product([2])
    p1, _ = make_projective_product([1])
    r = restriction_from_class_map(p2, p1, [[1]])
    assert r.block(2, 1, p2, p1) == QMatrix.from_rows([[1]])
    assert r.block(4, 2, p2, p1).rows == 0


def _gysin(src_dims, tgt_dims, images):
    src, sp = make_projective_product(src_dims)
    tgt, tp = make_projective_product(tgt_dims)
    r = restriction_from_class_map(src, tgt, images)
    return src, tgt, r, gysin_from_pd(r, src, tgt, sp, tp)


def test_gysin_of_point_is_point_class():
    src, tgt, _, g = _gysin([1], [0], [[1]])
    assert g.block(0, 0, tgt, src) == QMatrix.from_rows([[1]])
    # H^2(pt) = 0 maps to H^4(P^1) = 0
    assert g.block(2, 1, tgt, src).cols == 0


def test_gysin_of_ruling_is_h1():
    src, tgt, _, g = _gysin([1, 1], [0, 1], [[0, 0], [0, 1]])
    assert g.block(0, 0, tgt, src) == QMatrix.from_rows([[1], [0]])


def test_restriction_after_gysin_is_normal_class():
    # line in P^2: restr o gysin = cup with h|_line
    src, tgt, r, g = _gysin([2], [1], [[1]])
    comp = r.block(2, 1, src, tgt) @ g.block(0, 0, tgt, src)
    assert comp == QMatrix.from_rows([[1]])
    # ruling in P^1 x P^1 has trivial normal bundle
    src, tgt, r, g = _gysin([1, 1], [0, 1], [[0, 0], [0, 1]])
    for (n, a) in tgt.blocks():
        gb = g.block(n, a, tgt, src)
        rb = r.block(n + 2, a + 1, src, tgt)
        assert (rb @ gb).is_zero()


def test_functoriality_on_cxc():
    p = c_times_c()
    m, h = p.model, p.hodge
    for top in m.x_strata():
        for mid in m.lowers.get(top.id, ()):
            for low in m.lowers.get(mid.lower, ()):
                r1 = h.restrictions[(top.id, mid.lower)]
                r2 = h.restrictions[(mid.lower, low.lower)]
                coh = h.cohomology
                for (n, a) in coh[top.id].blocks():
                    comp = r2.block(n, a, coh[mid.lower], coh[low.lower]) @ \
                        r1.block(n, a, coh[top.id], coh[mid.lower])
                    # every path between the same two strata gives the same map
                    for other in m.uppers.get(low.lower, ()):
                        if (top.id, other.upper) in h.restrictions:
                            alt = h.restrictions[(other.upper, low.lower)].block(
                                n, a, coh[other.upper], coh[low.lower]) @ \
                                h.restrictions[(top.id, other.upper)].block(
                                    n, a, coh[top.id], coh[other.upper])
                            assert alt == comp


def test_generated_cxc_hodge_is_valid():
    p = c_times_c()
    assert validate_hodge(p.model, p.hodge).ok


def test_hodge_symmetry_violation():
    p = smooth_projective(1)
    bad = StratumCohomology("P", 1, {(0, 0): 1, (1, 0): 1, (2, 1): 1},
                            {(0, 0): ("1",), (1, 0): ("x",), (2, 1): ("pt",)})
    data = dataclasses.replace(p.hodge, cohomology={"P": bad}, pairings={})
    assert "hodge-symmetry" in validate_hodge(p.model, data).codes()


def test_missing_restriction_reported():
    p = c_times_c()
    restr = dict(p.hodge.restrictions)
    restr.pop(next(iter(restr)))
    data = dataclasses.replace(p.hodge, restrictions=restr)
    assert "missing-map" in validate_hodge(p.model, data).codes()
