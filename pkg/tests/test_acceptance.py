"""Acceptance criteria 1-9.

Each test prints one ``PASS``/``FAIL`` line.  Run ``pytest tests/test_acceptance.py -s``
to see them inline, or ``python tests/test_acceptance.py`` for the bare list.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from math import ceil

from gsnc.divisors import QDivisor, covering_plan, round_up
from gsnc.epoly import e_polynomial_from_mhs, e_polynomial_strata
from gsnc.generators import (c_times_c, corpus, cycle_of_lines, nodal_curve, p1_two_points,
                             projective_product_smooth, random_b0_pair, random_pair)
from gsnc.model import reorder_components
from gsnc.mv import build_mv_complex, cohomology_of_X, structure_sheaf_cohomology
from gsnc.weight import assemble_d1, assemble_E1, hodge_filtration_dims, mixed_hodge_numbers

HYP = {"in_boundary": True, "distinct_components": True, "smooth_traces": True}


def _randoms(seed: int, n: int, b0: bool = False):
    rng = random.Random(seed)
    gen = random_b0_pair if b0 else random_pair
    return [gen(rng, max_strata=30) for _ in range(n)]


def criterion_1():
    cases = [(nodal_curve(), (1, 0, 2)), (cycle_of_lines(3), (1, 1, 3)),
             (c_times_c(), (1, 0, 4, 0, 4)), (projective_product_smooth([1, 1]), (1, 0, 2, 0, 1))]
    bad, slowest = [], 0.0
    for pair, oracle in cases:
        t0 = time.perf_counter()
        betti = cohomology_of_X(build_mv_complex(pair)).betti
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if betti != oracle or dt >= 1.0:
            bad.append(f"{pair.model.name}: {betti} in {dt:.3f}s")
    return not bad, f"4 models, slowest {slowest:.3f}s" + (f"; {bad}" if bad else "")


def criterion_2():
    failures = 0
    summands = 0
    for pair in _randoms(2, 100):
        m = pair.model
        e1 = assemble_E1(pair)
        for q, slots in e1.items():
            for slot in slots:
                for s in slot.summands:
                    summands += 1
                    codim_in_piece = m.by_id[s.stratum].codim - s.p
                    if codim_in_piece != s.p + q or s.shift != 2 * s.p + q or \
                            slot.n - s.shift != s.degree:
                        failures += 1
        for cx in assemble_d1(pair).blocks.values():
            for n, d in cx.d.items():
                nxt = cx.d.get(n + 1)
                if nxt is not None and nxt.cols == d.rows and not (nxt @ d).is_zero():
                    failures += 1
    return failures == 0, f"100 models, {summands} summands, {failures} failures"


def criterion_3():
    t = mixed_hodge_numbers(p1_two_points())
    c = mixed_hodge_numbers(cycle_of_lines(3))
    ok = (t.rows() == [(0, 0, 0, 1), (1, 1, 1, 1)]
          and c.h(1, 0, 0) == 1 and c.h(2, 1, 1) == 3 and sum(c.entries[k] for k in c.entries
                                                             if k[0] == 1) == 1)
    return ok, f"C^*: {t.rows()}; cycle-3 H^1 (0,0)={c.h(1, 0, 0)}, H^2 (1,1)={c.h(2, 1, 1)}"


def criterion_4():
    t0 = time.perf_counter()
    pairs = corpus() + _randoms(4, 100)
    mismatches = [p.model.name for p in pairs
                  if e_polynomial_strata(p) != e_polynomial_from_mhs(mixed_hodge_numbers(p))]
    dt = time.perf_counter() - t0
    return not mismatches and dt < 60, f"{len(pairs)} models, {len(mismatches)} mismatches, {dt:.1f}s"


def criterion_5():
    bad = []
    pairs = corpus() + _randoms(5, 100) + _randoms(55, 100, b0=True)
    checked = 0
    for p in pairs:
        t = mixed_hodge_numbers(p)
        ws = [(n, w) for (n, w), d in t.weights.items() if d]
        if not p.has_boundary:
            checked += 1
            if any(w > n for n, w in ws):
                bad.append(p.model.name)
            if len(p.model.components) == 1 and any(w != n for n, w in ws):
                bad.append(p.model.name + " (not pure)")
        if any(not 0 <= w <= 2 * n for n, w in ws):
            bad.append(p.model.name + " (out of range)")
    return not bad, f"{checked} proper B=0 models checked, {len(bad)} violations"


def criterion_6():
    pairs = corpus() + _randoms(6, 100)
    bad = [p.model.name for p in pairs if not hodge_filtration_dims(p).consistent]
    return not bad, f"{len(pairs)} models, {len(bad)} inconsistent"


def criterion_7():
    cyc = structure_sheaf_cohomology(cycle_of_lines(3))
    cxc = structure_sheaf_cohomology(c_times_c())
    padded = tuple(cxc) + (0,) * (5 - len(cxc))
    return cyc == (1, 1) and padded == (1, 0, 0, 0, 0), f"cycle-3 {cyc}, CxC {padded}"


def _proper_divisors(m: int) -> list[int]:
    return [d for d in range(1, m) if m % d == 0]


def criterion_8():
    rng = random.Random(8)
    failures = 0
    for _ in range(1000):
        k = rng.randint(1, 4)
        coeffs = {f"d{i}": Fraction(rng.randint(-3000, 3000), rng.randint(1, 1000)) for i in range(k)}
        d = QDivisor.of(coeffs, hypotheses=HYP)
        up = round_up(d)
        if round_up(up).coefficients != up.coefficients:
            failures += 1
        for j, v in d.coefficients.items():
            if not 0 <= up.coefficients[j] - v < 1:
                failures += 1
        bigger = QDivisor.of({j: v + Fraction(rng.randint(0, 50), rng.randint(1, 20))
                              for j, v in coeffs.items()})
        if any(round_up(bigger).coefficients[j] < up.coefficients[j] for j in coeffs):
            failures += 1
        plan = covering_plan(d)
        for j, v in d.coefficients.items():
            m = plan.multiplicities[j]
            if (m * v).denominator != 1 or any((mp * v).denominator == 1 for mp in _proper_divisors(m)):
                failures += 1
            if ceil(v) != up.coefficients[j]:
                failures += 1
    return failures == 0, f"1000 divisors, {failures} failures"


def _dims(pair):
    out = {"mhs": mixed_hodge_numbers(pair).entries,
           "hf": hodge_filtration_dims(pair).from_e1,
           "betti": cohomology_of_X(build_mv_complex(pair.x_part())).betti}
    if not pair.has_boundary:
        out["sheaf"] = structure_sheaf_cohomology(pair)
    return out


def criterion_9():
    rng = random.Random(9)
    pairs = []
    while len(pairs) < 20:
        p = random_pair(rng)
        if len(p.model.components) > 1:
            pairs.append(p)
    changed, failures = 0, 0
    for p in pairs:
        ref = _dims(p)
        ids = [c.id for c in p.model.components]
        for _ in range(5):
            order = ids[:]
            rng.shuffle(order)
            q = p.with_model(reorder_components(p.model, order))
            if set(q.model.incidences) != set(p.model.incidences):
                changed += 1
            if _dims(q) != ref:
                failures += 1
    return failures == 0, f"100 reorderings, {changed} with changed signs, {failures} differences"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]

TITLES = {
    1: "Mayer-Vietoris Betti numbers",
    2: "E1 indexing and d1 o d1 = 0",
    3: "mixed Hodge numbers of C^* and the 3-cycle",
    4: "E-polynomial oracle equality",
    5: "weight bounds",
    6: "Hodge filtration two-way check",
    7: "structure sheaf slice",
    8: "divisor arithmetic",
    9: "sign-gauge invariance",
}


def _line(i: int, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {i}: {TITLES[i]} ({detail})"


def _check(i, capsys):
    ok, detail = CRITERIA[i - 1]()
    with capsys.disabled():
        print("\n" + _line(i, ok, detail))
    assert ok, detail


def test_criterion_1_betti(capsys):
    _check(1, capsys)


def test_criterion_2_e1_indexing(capsys):
    _check(2, capsys)


def test_criterion_3_degeneration(capsys):
    _check(3, capsys)


def test_criterion_4_epoly_oracle(capsys):
    _check(4, capsys)


def test_criterion_5_weight_bounds(capsys):
    _check(5, capsys)


def test_criterion_6_hodge_filtration(capsys):
    _check(6, capsys)


def test_criterion_7_structure_sheaf(capsys):
    _check(7, capsys)


def test_criterion_8_divisors(capsys):
    _check(8, capsys)


def test_criterion_9_gauge(capsys):
    _check(9, capsys)


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(ok)
        print(_line(i, ok, detail))
    sys.exit(0 if all(results) else 1)
