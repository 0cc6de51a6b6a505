"""Desk-scale GSNC pairs with known cohomology.

Building blocks:

* linear blocks: unions of coordinate hyperplanes of P^n (or P^n itself),
  with general hyperplanes as B-branches; every stratum is a linear P^k;
* curve graphs: smooth curves of given genera glued at nodes, with marked
  points as B-branches;
* products of the above (level adds up), with Kunneth cohomology and the
  product orientation ``d(s x t) = ds x t + (-1)^{|s|} s x dt``.
"""

from __future__ import annotations

import random
from collections import defaultdict
from itertools import combinations
from typing import Sequence

from .hodge import (GradedMap, HodgeData, PdPairing, StratumCohomology, complete_gysins,
                    identity_map, kunneth, make_curve, make_projective_product,
                    restriction_from_class_map, tensor_map, tensor_pairing)
from .linalg import QMatrix
from .model import Component, GsncModel, Incidence, Stratum, default_sign
from .pair import GsncPair


def _finish(name, components, strata, incidences, branches, cohomology, restrictions,
            pairings, gysins=None, divisors=()) -> GsncPair:
    model = GsncModel.build(components, strata, [], branches, name)
    incs = []
    for lower, upper, sign in incidences:
        if sign is None:
            sign = default_sign(model, model.by_id[upper], model.by_id[lower])
        incs.append(Incidence(lower, upper, sign))
    model = GsncModel(model.components, model.strata, tuple(incs), model.b_branch_ids, name)
    model = _with_copy_indices(model)
    data = HodgeData(cohomology, restrictions, gysins or {}, pairings)
    return GsncPair(model, complete_gysins(model, data), tuple(divisors))


def _with_copy_indices(model: GsncModel) -> GsncModel:
    seen: dict = defaultdict(int)
    strata = []
    for s in model.strata:
        key = (frozenset(s.components), frozenset(s.b_branches))
        strata.append(Stratum(s.id, s.components, s.codim, seen[key], s.b_branches, s.factor_type))
        seen[key] += 1
    return GsncModel(model.components, tuple(strata), model.incidences, model.b_branch_ids, model.name)


# --------------------------------------------------------------------------
# linear blocks


def linear_block(n: int, hyperplanes: Sequence[int] = (), branches: int = 0,
                 name: str | None = None) -> GsncPair:
    """Union of coordinate hyperplanes ``H_i`` (``i`` in ``hyperplanes``) of P^n.

    With no hyperplanes the single component is P^n.  ``branches`` general
    hyperplanes ``g1, g2, ...`` form B.
    """
    S = sorted(set(hyperplanes))
    if any(i < 0 or i > n for i in S):
        raise ValueError("coordinate hyperplane index out of range")
    smooth = not S
    dim = n if smooth else n - 1
    if dim < 0:
        raise ValueError("empty variety")
    comp_ids = ["P"] if smooth else [f"H{i}" for i in S]
    components = [Component(c, dim) for c in comp_ids]
    bids = [f"g{j + 1}" for j in range(branches)]

    def sid(I, J):
        base = "P" if smooth else ".".join(f"H{i}" for i in I)
        return base + ("|" + ".".join(bids[j] for j in J) if J else "")

    subsets_I = [()] if smooth else [I for k in range(1, len(S) + 1) for I in combinations(S, k)]
    nodes = []
    for I in subsets_I:
        for k in range(branches + 1):
            for J in combinations(range(branches), k):
                pdim = n - len(I) - len(J)
                if pdim < 0 or (not I and not smooth):
                    continue
                nodes.append((I, J, pdim))
    node_set = {(I, J) for I, J, _ in nodes}
    strata, cohomology, pairings = [], {}, {}
    for I, J, pdim in nodes:
        x_codim = 0 if smooth else len(I) - 1
        ft = (x_codim,) if x_codim else ()
        comps = ("P",) if smooth else tuple(f"H{i}" for i in I)
        strata.append(Stratum(sid(I, J), comps, x_codim + len(J), 0,
                              tuple(bids[j] for j in J), ft))
        c, p = make_projective_product([pdim], sid(I, J))
        cohomology[sid(I, J)] = c
        pairings[sid(I, J)] = p
    incidences, restrictions = [], {}
    for I, J, _ in nodes:
        lower = sid(I, J)
        uppers = [(tuple(x for x in I if x != i), J) for i in I] if not smooth else []
        uppers += [(I, tuple(x for x in J if x != j)) for j in J]
        for UI, UJ in uppers:
            if (UI, UJ) not in node_set:
                continue
            upper = sid(UI, UJ)
            incidences.append((lower, upper, None))
            restrictions[(upper, lower)] = restriction_from_class_map(
                cohomology[upper], cohomology[lower], [[1]])
    if name is None:
        name = f"P{n}" if smooth else f"P{n}-hyperplanes-{''.join(map(str, S))}"
        if branches:
            name += f"-B{branches}"
    return _finish(name, components, strata, incidences, bids, cohomology, restrictions, pairings)


def smooth_projective(n: int) -> GsncPair:
    return linear_block(n, name=f"smooth-P{n}")


def projective_product_smooth(dims: Sequence[int], name: str | None = None) -> GsncPair:
    """A single smooth component ``P^{n1} x ... x P^{nk}``."""
    c, p = make_projective_product(dims, "X")
    name = name or "smooth-" + "x".join(f"P{d}" for d in dims)
    return _finish(name, [Component("X", sum(dims))], [], [], [], {"X": c}, {}, {"X": p})


# --------------------------------------------------------------------------
# curve graphs


def _curve(genus: int, sid: str):
    if genus == 0:
        return make_projective_product([1], sid)
    return make_curve(genus, sid)


def _to_point(curve: StratumCohomology, pt: StratumCohomology) -> GradedMap:
    if curve.projective is not None:
        return restriction_from_class_map(curve, pt, [[1]])
    mats = {(0, 0): QMatrix.identity(1)}
    for blk, d in curve.dims.items():
        if blk != (0, 0):
            mats[blk] = QMatrix.zeros(pt.block_dim(*blk), d)
    return GradedMap(curve.stratum, pt.stratum, "restriction", mats)


def curve_graph(genera: Sequence[int], edges: Sequence[tuple[int, int]] = (),
                marked: Sequence[int] = (), name: str = "curves",
                component_names: Sequence[str] | None = None,
                branch_names: Sequence[str] | None = None, divisors=()) -> GsncPair:
    """Curves ``C_i`` of genus ``genera[i]`` glued at nodes ``edges``.

    Repeated edges give several nodes on the same pair of curves.  Each entry
    of ``marked`` puts a separate B-branch point on that curve.
    """
    names = list(component_names or [f"L{i + 1}" if g == 0 else f"E{i + 1}" for i, g in enumerate(genera)])
    bnames = list(branch_names or [f"b{t + 1}" for t in range(len(marked))])
    components = [Component(c, 1) for c in names]
    strata, incidences, cohomology, pairings, restrictions = [], [], {}, {}, {}
    for i, g in enumerate(genera):
        c, p = _curve(g, names[i])
        cohomology[names[i]], pairings[names[i]] = c, p
    count: dict = defaultdict(int)
    for i, j in edges:
        if i == j:
            raise ValueError("self-intersections are not allowed; split the component")
        i, j = sorted((i, j))
        k = count[(i, j)]
        count[(i, j)] += 1
        sid = f"{names[i]}.{names[j]}" + (f"#{k}" if k or (i, j) in _multi(edges) else "")
        strata.append(Stratum(sid, (names[i], names[j]), 1, k, (), (1,)))
        c, p = make_projective_product([0], sid)
        cohomology[sid], pairings[sid] = c, p
        for v in (i, j):
            incidences.append((sid, names[v], None))
            restrictions[(names[v], sid)] = _to_point(cohomology[names[v]], c)
    for t, v in enumerate(marked):
        sid = f"{names[v]}|{bnames[t]}"
        strata.append(Stratum(sid, (names[v],), 1, 0, (bnames[t],), ()))
        c, p = make_projective_product([0], sid)
        cohomology[sid], pairings[sid] = c, p
        incidences.append((sid, names[v], None))
        restrictions[(names[v], sid)] = _to_point(cohomology[names[v]], c)
    return _finish(name, components, strata, incidences, bnames, cohomology, restrictions,
                   pairings, divisors=divisors)


def _multi(edges):
    c = defaultdict(int)
    for i, j in edges:
        c[tuple(sorted((i, j)))] += 1
    return {k for k, v in c.items() if v > 1}


def nodal_curve() -> GsncPair:
    """Two lines meeting in one node."""
    return curve_graph([0, 0], [(0, 1)], name="nodal-curve")


def cycle_of_lines(n: int = 3) -> GsncPair:
    if n < 2:
        raise ValueError("a cycle needs at least two lines")
    return curve_graph([0] * n, [(i, (i + 1) % n) for i in range(n)], name=f"cycle-{n}-lines")


def chain_of_lines(n: int) -> GsncPair:
    return curve_graph([0] * n, [(i, i + 1) for i in range(n - 1)], name=f"chain-{n}-lines")


def p1_two_points() -> GsncPair:
    """P^1 with B = {0} + {infinity}, i.e. C^*."""
    from .divisors import QDivisor
    d = QDivisor.of({"b0": "3/4", "binf": "5/6"}, id="D", meets_strata=("L1",),
                    hypotheses={"smooth_traces": True})
    return curve_graph([0], [], [0, 0], name="P1-minus-two-points",
                       branch_names=["b0", "binf"], divisors=[d])


def nodal_with_boundary_point() -> GsncPair:
    return curve_graph([0, 0], [(0, 1)], [0], name="nodal-curve-with-boundary-point")


def elliptic_with_point() -> GsncPair:
    return curve_graph([1], [], [0], name="elliptic-curve-minus-point")


# --------------------------------------------------------------------------
# products


def product(A: GsncPair, B: GsncPair, name: str | None = None) -> GsncPair:
    ma, mb = A.model, B.model
    ha, hb = A.hodge, B.hodge
    ra = {b: f"{b}*" for b in ma.b_branch_ids}
    rb = {b: f"*{b}" for b in mb.b_branch_ids}
    comp_ids = {(ca.id, cb.id): f"{ca.id}*{cb.id}" for ca in ma.components for cb in mb.components}
    components = [Component(comp_ids[(ca.id, cb.id)], ca.dim + cb.dim)
                  for ca in ma.components for cb in mb.components]
    order = {c.id: i for i, c in enumerate(components)}

    def sid(ya, yb):
        return f"{ya}*{yb}"

    strata, cohomology, pairings = [], {}, {}
    for ya in ma.strata:
        for yb in mb.strata:
            s = sid(ya.id, yb.id)
            comps = sorted((comp_ids[(a, b)] for a in ya.components for b in yb.components),
                           key=order.__getitem__)
            if ya.codim == 0 and yb.codim == 0:
                continue  # added by GsncModel.build as a component stratum
            strata.append(Stratum(s, tuple(comps), ya.codim + yb.codim, 0,
                                  tuple(ra[b] for b in ya.b_branches) + tuple(rb[b] for b in yb.b_branches),
                                  ya.factor_type + yb.factor_type))
    for ya in ma.strata:
        for yb in mb.strata:
            s = sid(ya.id, yb.id)
            ca, cb = ha.cohomology[ya.id], hb.cohomology[yb.id]
            cohomology[s] = kunneth(ca, cb, s)
            if ya.id in ha.pairings and yb.id in hb.pairings:
                pairings[s] = tensor_pairing(ha.pairings[ya.id], hb.pairings[yb.id], ca, cb, s)
    incidences, restrictions, gysins = [], {}, {}
    for inc in ma.incidences:
        for yb in mb.strata:
            lo, up = sid(inc.lower, yb.id), sid(inc.upper, yb.id)
            incidences.append((lo, up, inc.sign))
            cb = hb.cohomology[yb.id]
            ca_u, ca_l = ha.cohomology[inc.upper], ha.cohomology[inc.lower]
            idb = identity_map(cb)
            restrictions[(up, lo)] = tensor_map(ha.restrictions[(inc.upper, inc.lower)], idb,
                                                ca_u, cb, ca_l, cb, up, lo, "restriction")
            g = ha.gysins.get((inc.lower, inc.upper))
            if g is not None:
                gysins[(lo, up)] = tensor_map(g, idb, ca_l, cb, ca_u, cb, lo, up, "gysin")
    for inc in mb.incidences:
        for ya in ma.strata:
            lo, up = sid(ya.id, inc.lower), sid(ya.id, inc.upper)
            incidences.append((lo, up, (-1) ** ya.codim * inc.sign))
            ca = ha.cohomology[ya.id]
            cb_u, cb_l = hb.cohomology[inc.upper], hb.cohomology[inc.lower]
            ida = identity_map(ca)
            restrictions[(up, lo)] = tensor_map(ida, hb.restrictions[(inc.upper, inc.lower)],
                                                ca, cb_u, ca, cb_l, up, lo, "restriction")
            g = hb.gysins.get((inc.lower, inc.upper))
            if g is not None:
                gysins[(lo, up)] = tensor_map(ida, g, ca, cb_l, ca, cb_u, lo, up, "gysin")
    name = name or f"({ma.name})x({mb.name})"
    return _finish(name, components, strata, incidences, list(ra.values()) + list(rb.values()),
                   cohomology, restrictions, pairings, gysins)


def c_times_c() -> GsncPair:
    """Product of two nodal curves: a level-2 GSNC surface."""
    return product(nodal_curve(), nodal_curve(), name="CxC")


# --------------------------------------------------------------------------
# corpus and random models


def corpus() -> list[GsncPair]:
    """The bundled oracle corpus."""
    return [
        smooth_projective(1),
        smooth_projective(2),
        projective_product_smooth([1, 1], name="smooth-P1xP1"),
        nodal_curve(),
        cycle_of_lines(2),
        cycle_of_lines(3),
        cycle_of_lines(4),
        c_times_c(),
        p1_two_points(),
        nodal_with_boundary_point(),
        elliptic_with_point(),
        linear_block(2, [0, 1, 2], branches=1, name="P2-triangle-plus-line"),
        product(curve_graph([1], name="E"), nodal_curve(), name="ExC"),
    ]


def _random_block(rng: random.Random) -> GsncPair:
    if rng.random() < 0.5:
        nv = rng.randint(1, 3)
        genera = [rng.choice([0, 0, 1]) for _ in range(nv)]
        edges = []
        if nv > 1:
            for _ in range(rng.randint(0, 3)):
                i, j = rng.sample(range(nv), 2)
                edges.append((i, j))
        marked = [rng.randrange(nv) for _ in range(rng.randint(0, 2))]
        return curve_graph(genera, edges, marked, name="random-curves")
    n = rng.randint(1, 3)
    k = rng.randint(0, n + 1)
    S = sorted(rng.sample(range(n + 1), k))
    dim = n if not S else n - 1
    return linear_block(n, S, branches=rng.randint(0, min(dim, 2)))


def random_pair(rng: random.Random, max_strata: int = 30) -> GsncPair:
    """A random valid pair with at most ``max_strata`` strata."""
    while True:
        a = _random_block(rng)
        if rng.random() < 0.5:
            b = _random_block(rng)
            if len(a.model.strata) * len(b.model.strata) <= max_strata:
                return product(a, b, name="random-product")
        if len(a.model.strata) <= max_strata:
            return a


def random_b0_pair(rng: random.Random, max_strata: int = 30) -> GsncPair:
    """A random pair with B = 0 (proper X)."""
    while True:
        p = random_pair(rng, max_strata)
        if not p.has_boundary:
            return p
        x = p.x_part()
        if x.model.strata:
            return x
