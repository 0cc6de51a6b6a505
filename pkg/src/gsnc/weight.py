"""Weight spectral sequence of ``Ri_* Q_{X - B}`` for a GSNC pair.

A stratum ``Y`` of the pair lying in ``X^[p]`` and cut by ``k`` branches has
codimension ``k`` inside ``X^[p]``.  It contributes ``Q_Y[-2p-q]`` to
``Gr_q^W`` with ``q = k - p``, Tate-twisted ``k`` times, so ``H^m(Y)`` sits in
total degree ``n = m + p + k`` and a class of type ``(a, b)`` acquires type
``(a + k, b + k)``.

``d1`` has two kinds of blocks, both raising ``n`` by one and lowering ``q``:
restriction to a smaller stratum of X (``p -> p + 1``) and the Gysin map
forgetting one branch (``k -> k - 1``, degree ``+2``).  Each block carries
the sign of its incidence.  The spectral sequence degenerates at E2 and
``d1`` preserves the twisted bidegree, so E2 is computed bidegree by
bidegree; the results are only meaningful for proper X, where that
degeneration holds.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Mapping

from .linalg import QMatrix, block_matrix
from .pair import GsncPair, require_valid


class D1SquareError(ArithmeticError):
    """``d1 o d1 != 0``: the supplied maps are inconsistent."""


@dataclass(frozen=True)
class Summand:
    p: int
    stratum: str
    degree: int  # cohomological degree m of H^m(Y)
    twist: int   # number of branches k = p + q

    @property
    def shift(self) -> int:
        return 2 * self.p + (self.twist - self.p)


@dataclass(frozen=True)
class WeightSlot:
    q: int
    n: int
    summands: tuple[Summand, ...]


@dataclass(frozen=True)
class _Node:
    sid: str
    p: int
    k: int


def _nodes(pair: GsncPair) -> list[_Node]:
    return [_Node(s.id, s.x_codim, len(s.b_branches)) for s in pair.model.strata]


def assemble_E1(pair: GsncPair, validate: bool = True) -> dict[int, list[WeightSlot]]:
    """E1 columns: ``Gr_q^W`` in degree ``n`` as a list of stratum summands."""
    if validate:
        pair = require_valid(pair)
    model, coh = pair.model, pair.hodge.cohomology
    acc: dict[tuple[int, int], list[Summand]] = defaultdict(list)
    for node in _nodes(pair):
        s = model.by_id[node.sid]
        q = node.k - node.p
        c = coh[node.sid]
        for m in range(2 * c.dim + 1):
            if not any(c.block_dim(m, a) for a in range(m + 1)):
                continue
            n = m + 2 * node.p + q
            summand = Summand(node.p, node.sid, m, node.k)
            # Weight bookkeeping: codim of Y in its X^[p] piece is p + q,
            # and the shift is 2p + q.
            assert s.codim - node.p == node.p + q
            assert n - summand.shift == m
            acc[(q, n)].append(summand)
    out: dict[int, list[WeightSlot]] = defaultdict(list)
    for (q, n) in sorted(acc):
        out[q].append(WeightSlot(q, n, tuple(acc[(q, n)])))
    return dict(out)


@dataclass(frozen=True)
class BlockComplex:
    """Sub-complex of E1 selected by a predicate on twisted Hodge types."""
    pieces: Mapping[int, tuple[tuple[str, int, int, int], ...]]  # n -> (sid, m, a, dim)
    d: Mapping[int, QMatrix]  # n -> matrix C^n -> C^{n+1}

    def dim(self, n: int) -> int:
        return sum(x[3] for x in self.pieces.get(n, ()))

    def cohomology(self) -> dict[int, int]:
        ranks = {n: m.rank() for n, m in self.d.items()}
        return {n: self.dim(n) - ranks.get(n, 0) - ranks.get(n - 1, 0) for n in self.pieces}


def _build(pair: GsncPair, keep: Callable[[int, int, int], bool]) -> BlockComplex:
    """Collect E1 pieces ``(Y, m, a)`` with ``keep(k, m, a)`` and wire up d1."""
    model, h = pair.model, pair.hodge
    coh = h.cohomology
    pieces: dict[int, list[tuple[str, int, int, int]]] = defaultdict(list)
    for node in _nodes(pair):
        c = coh[node.sid]
        for (m, a) in c.blocks():
            if keep(node.k, m, a):
                pieces[m + node.p + node.k].append((node.sid, m, a, c.block_dim(m, a)))
    index = {n: {(sid, m, a): i for i, (sid, m, a, _) in enumerate(ps)} for n, ps in pieces.items()}
    d = {}
    for n, ps in pieces.items():
        tgt = pieces.get(n + 1, [])
        tpos = index.get(n + 1, {})
        blocks = []
        for j, (sid, m, a, _) in enumerate(ps):
            for inc in model.lowers.get(sid, ()):
                if model.is_branch_incidence(inc):
                    continue
                i = tpos.get((inc.lower, m, a))
                if i is not None:
                    r = h.restrictions[(sid, inc.lower)]
                    blocks.append((i, j, r.block(m, a, coh[sid], coh[inc.lower]).scale(inc.sign)))
            for inc in model.uppers.get(sid, ()):
                if not model.is_branch_incidence(inc):
                    continue
                i = tpos.get((inc.upper, m + 2, a + 1))
                if i is not None:
                    g = h.gysins[(sid, inc.upper)]
                    blocks.append((i, j, g.block(m, a, coh[sid], coh[inc.upper]).scale(inc.sign)))
        d[n] = block_matrix([x[3] for x in tgt], [x[3] for x in ps], blocks)
    return BlockComplex({n: tuple(v) for n, v in pieces.items()}, d)


def _check_square(cx: BlockComplex, label: str) -> None:
    for n, dn in cx.d.items():
        nxt = cx.d.get(n + 1)
        if nxt is None or nxt.cols != dn.rows:
            continue
        prod = nxt @ dn
        if prod.is_zero():
            continue
        src = cx.pieces[n]
        tgt = cx.pieces[n + 2]
        r0 = 0
        for sid_t, mt, at, dt in tgt:
            c0 = 0
            for sid_s, ms, as_, ds in src:
                if any(prod[r0 + i, c0 + j] for i in range(dt) for j in range(ds)):
                    raise D1SquareError(
                        f"d1 o d1 != 0 in {label}: square from {sid_s} (H^{ms}, a={as_}) "
                        f"to {sid_t} (H^{mt}, a={at})")
                c0 += ds
            r0 += dt
        raise D1SquareError(f"d1 o d1 != 0 in {label} at degree {n}")


@dataclass(frozen=True)
class WeightD1:
    """d1 split into twisted-bidegree blocks ``(A, B) -> BlockComplex``."""
    blocks: Mapping[tuple[int, int], BlockComplex]


def _twisted_types(pair: GsncPair) -> list[tuple[int, int]]:
    out = set()
    for node in _nodes(pair):
        for (m, a) in pair.hodge.cohomology[node.sid].blocks():
            out.add((a + node.k, m - a + node.k))
    return sorted(out)


def assemble_d1(pair: GsncPair, validate: bool = True) -> WeightD1:
    """Build d1 per twisted bidegree and assert ``d1 o d1 = 0``."""
    if validate:
        pair = require_valid(pair)
    blocks = {}
    for (A, B) in _twisted_types(pair):
        cx = _build(pair, lambda k, m, a, A=A, B=B: a + k == A and m - a + k == B)
        _check_square(cx, f"Hodge type ({A},{B})")
        blocks[(A, B)] = cx
    return WeightD1(blocks)


@dataclass(frozen=True)
class MixedHodgeTable:
    entries: Mapping[tuple[int, int, int], int]  # (n, a, b) -> h^{a,b}(H^n)
    weights: Mapping[tuple[int, int], int]       # (n, w) -> dim Gr_w^W H^n
    betti: tuple[int, ...]

    def rows(self) -> list[tuple[int, int, int, int]]:
        return [(n, a, b, d) for (n, a, b), d in sorted(self.entries.items()) if d]

    def weight_rows(self) -> list[tuple[int, int, int]]:
        return [(n, w, d) for (n, w), d in sorted(self.weights.items()) if d]

    def h(self, n: int, a: int, b: int) -> int:
        return self.entries.get((n, a, b), 0)


def mixed_hodge_numbers(pair: GsncPair, d1: WeightD1 | None = None) -> MixedHodgeTable:
    """Mixed Hodge numbers of ``H^n(X - B)`` (E2 = E_infinity for proper X)."""
    pair = require_valid(pair)
    if d1 is None:
        d1 = assemble_d1(pair, validate=False)
    entries: dict[tuple[int, int, int], int] = {}
    weights: dict[tuple[int, int], int] = defaultdict(int)
    top = 2 * pair.model.dim
    betti = [0] * (top + 1)
    for (A, B), cx in sorted(d1.blocks.items()):
        for n, dim in cx.cohomology().items():
            if dim:
                entries[(n, A, B)] = dim
                weights[(n, A + B)] += dim
                if n > top:
                    betti.extend([0] * (n - top))
                    top = n
                betti[n] += dim
    return MixedHodgeTable(dict(sorted(entries.items())), dict(sorted(weights.items())), tuple(betti))


@dataclass(frozen=True)
class HodgeFiltrationDims:
    from_table: Mapping[tuple[int, int], int]  # route (i): columns of the MHS table
    from_e1: Mapping[tuple[int, int], int]     # route (ii): F-graded E1 directly
    consistent: bool

    def rows(self) -> list[tuple[int, int, int, int]]:
        keys = sorted(set(self.from_table) | set(self.from_e1))
        return [(n, r, self.from_table.get((n, r), 0), self.from_e1.get((n, r), 0)) for n, r in keys]


def hodge_filtration_dims(pair: GsncPair, table: MixedHodgeTable | None = None) -> HodgeFiltrationDims:
    """``dim Gr_F^r H^n`` two ways; ``consistent`` flags agreement.

    Route (ii) takes ``Gr_F^r`` of each summand ``Omega_Y^{>= r-p-q}[-2p-q]``:
    ``H^m(Y)`` contributes its ``(r - k, m - r + k)`` part, all weights at
    once, and the homology of that F-graded complex is taken directly.
    """
    pair = require_valid(pair)
    if table is None:
        table = mixed_hodge_numbers(pair)
    route_i: dict[tuple[int, int], int] = defaultdict(int)
    for (n, a, b), d in table.entries.items():
        route_i[(n, a)] += d
    route_ii: dict[tuple[int, int], int] = {}
    rs = sorted({A for A, _ in _twisted_types(pair)})
    for r in rs:
        cx = _build(pair, lambda k, m, a, r=r: a == r - k)
        _check_square(cx, f"Gr_F^{r}")
        for n, dim in cx.cohomology().items():
            if dim:
                route_ii[(n, r)] = dim
    route_i = {k: v for k, v in sorted(route_i.items()) if v}
    return HodgeFiltrationDims(route_i, dict(sorted(route_ii.items())), route_i == route_ii)
