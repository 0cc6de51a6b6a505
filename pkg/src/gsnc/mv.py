"""Mayer-Vietoris E1 complex of a GSNC variety and its cohomology.

Slot ``(p, q)`` is ``H^q(X^[p])``, the direct sum of ``H^q(Y)`` over strata
of codimension ``p``; ``d1`` is the signed sum of restriction maps.  The
spectral sequence degenerates at E2 (B = 0), so ``H^n(X)`` is the sum of
``E2^{p, n-p}`` and the ``E2^{p,q}`` part has weight ``q``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Mapping

from .linalg import QMatrix, block_matrix
from .model import strata_of_codim
from .pair import GsncPair, require_valid

Piece = tuple[str, int, int]  # (stratum, hodge index a, dim)


@dataclass(frozen=True)
class BigradedComplex:
    slots: Mapping[tuple[int, int], tuple[Piece, ...]]
    d1: Mapping[tuple[int, int], QMatrix]
    dim: int

    def slot_dim(self, p: int, q: int) -> int:
        return sum(d for _, _, d in self.slots.get((p, q), ()))

    def hodge_slot_dims(self, p: int, q: int) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for _, a, d in self.slots.get((p, q), ()):
            out[a] += d
        return dict(out)

    def check_d_squared(self) -> None:
        for (p, q), d in self.d1.items():
            nxt = self.d1.get((p + 1, q))
            if nxt is not None and not (nxt @ d).is_zero():
                raise ArithmeticError(f"d1 o d1 != 0 at slot ({p},{q})")


def build_mv_complex(pair: GsncPair, hodge_filter: Callable[[int], bool] | None = None,
                     validate: bool = True) -> BigradedComplex:
    """Assemble E1^{p,q} = H^q(X^[p]) with the signed restriction differential.

    ``hodge_filter`` keeps only Hodge indices ``a`` for which it returns true
    (restriction preserves ``a``, so any selection is a sub-complex).
    """
    if pair.has_boundary:
        raise ValueError("the Mayer-Vietoris complex is defined for B = 0; use x_part()")
    if validate:
        pair = require_valid(pair)
    model, coh = pair.model, pair.hodge.cohomology
    keep = hodge_filter or (lambda a: True)
    N = model.dim
    slots = {}
    offsets: dict[tuple[int, int], dict[tuple[str, int], int]] = {}
    for p in range(N + 1):
        for q in range(2 * (N - p) + 1):
            pieces = []
            for s in strata_of_codim(model, p):
                for a in range(q + 1):
                    d = coh[s.id].block_dim(q, a)
                    if d and keep(a):
                        pieces.append((s.id, a, d))
            slots[(p, q)] = tuple(pieces)
            offsets[(p, q)] = {(sid, a): i for i, (sid, a, _) in enumerate(pieces)}

    d1 = {}
    for (p, q), pieces in slots.items():
        if (p + 1, q) not in slots:
            continue
        tgt = slots[(p + 1, q)]
        tpos = offsets[(p + 1, q)]
        blocks = []
        for j, (sid, a, _) in enumerate(pieces):
            for inc in model.lowers.get(sid, ()):
                i = tpos.get((inc.lower, a))
                if i is None:
                    continue
                r = pair.hodge.restrictions[(sid, inc.lower)]
                blocks.append((i, j, r.block(q, a, coh[sid], coh[inc.lower]).scale(inc.sign)))
        d1[(p, q)] = block_matrix([d for *_, d in tgt], [d for *_, d in pieces], blocks)
    cx = BigradedComplex(slots, d1, N)
    cx.check_d_squared()
    return cx


@dataclass(frozen=True)
class CohomologyOfX:
    betti: tuple[int, ...]
    e2: Mapping[tuple[int, int], int]
    weights: Mapping[tuple[int, int], int]  # (n, w) -> dim Gr_w^W H^n

    def rows(self) -> list[tuple[int, int, dict[int, int]]]:
        out = []
        for n, b in enumerate(self.betti):
            out.append((n, b, {w: d for (m, w), d in sorted(self.weights.items()) if m == n and d}))
        return out


def e2_dims(cx: BigradedComplex) -> dict[tuple[int, int], int]:
    ranks = {k: m.rank() for k, m in cx.d1.items()}
    out = {}
    for (p, q) in cx.slots:
        out[(p, q)] = cx.slot_dim(p, q) - ranks.get((p, q), 0) - ranks.get((p - 1, q), 0)
    return out


def cohomology_of_X(cx: BigradedComplex) -> CohomologyOfX:
    e2 = e2_dims(cx)
    betti = [0] * (2 * cx.dim + 1)
    weights: dict[tuple[int, int], int] = defaultdict(int)
    for (p, q), d in e2.items():
        if d:
            betti[p + q] += d
            weights[(p + q, q)] += d
    return CohomologyOfX(tuple(betti), e2, dict(weights))


def structure_sheaf_cohomology(pair: GsncPair) -> tuple[int, ...]:
    """``h^j(X, O_X)`` for ``j = 0..dim X`` from the Hodge index a = 0 slice."""
    cx = build_mv_complex(pair, hodge_filter=lambda a: a == 0)
    e2 = e2_dims(cx)
    out = [0] * (2 * cx.dim + 1)
    for (p, q), d in e2.items():
        if d:
            out[p + q] += d
    # types (0, q) only occur for q <= dim of the stratum
    if any(out[cx.dim + 1:]):
        raise ArithmeticError("a = 0 slice has cohomology above dim X; Hodge data inconsistent")
    return tuple(out[:cx.dim + 1])


def euler_characteristic(cx: BigradedComplex) -> int:
    return sum((-1) ** (p + q) * cx.slot_dim(p, q) for (p, q) in cx.slots)
