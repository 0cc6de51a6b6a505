"""Pure Hodge structures on closed strata, restriction and Gysin maps.

Cohomology of a stratum is stored as blocks keyed by ``(n, a)``: the
``(a, n - a)`` Hodge piece of ``H^n``.  A restriction map sends block
``(n, a)`` of the source to block ``(n, a)`` of the target; a Gysin map along
an inclusion of codimension ``c`` sends ``(n, a)`` to ``(n + 2c, a + c)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Mapping, Sequence

from .linalg import QMatrix, block_matrix, kron
from .model import GsncModel, Issue, ValidationReport

Block = tuple[int, int]


@dataclass(frozen=True)
class StratumCohomology:
    stratum: str
    dim: int
    dims: Mapping[Block, int]
    basis_labels: Mapping[Block, tuple[str, ...]]
    projective: tuple[int, ...] | None = None

    def block_dim(self, n: int, a: int) -> int:
        return self.dims.get((n, a), 0)

    def blocks(self) -> list[Block]:
        return sorted(k for k, v in self.dims.items() if v)

    def betti(self) -> list[int]:
        out = [0] * (2 * self.dim + 1)
        for (n, a), d in self.dims.items():
            out[n] += d
        return out

    def renamed(self, stratum: str) -> "StratumCohomology":
        return StratumCohomology(stratum, self.dim, self.dims, self.basis_labels, self.projective)


@dataclass(frozen=True)
class GradedMap:
    source: str
    target: str
    kind: str  # "restriction" or "gysin"
    matrices: Mapping[Block, QMatrix]
    shift: int = 0  # Tate twist: block (n, a) -> (n + 2*shift, a + shift)

    def target_block(self, n: int, a: int) -> Block:
        return (n + 2 * self.shift, a + self.shift)

    def block(self, n: int, a: int, source: StratumCohomology,
              target: StratumCohomology) -> QMatrix:
        m = self.matrices.get((n, a))
        if m is None:
            tn, ta = self.target_block(n, a)
            return QMatrix.zeros(target.block_dim(tn, ta), source.block_dim(n, a))
        return m


@dataclass(frozen=True)
class PdPairing:
    """Cup-product pairing blocks ``(n, a) x (2d - n, d - a) -> Q``."""
    stratum: str
    dim: int
    blocks: Mapping[Block, QMatrix]

    def block(self, n: int, a: int) -> QMatrix:
        return self.blocks[(n, a)]

    def is_nondegenerate(self) -> bool:
        return all(m.rows == m.cols and m.rank() == m.rows for m in self.blocks.values())


# --------------------------------------------------------------------------
# products of projective spaces


def _monomials(dims: Sequence[int], degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total ``degree`` with ``e_i <= dims[i]``, descending lex."""
    out = [e for e in product(*[range(d + 1) for d in dims]) if sum(e) == degree]
    return sorted(out, reverse=True)


def monomial_label(e: Sequence[int]) -> str:
    parts = [f"h{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
    return "*".join(parts) if parts else "1"


def make_projective_product(dims: Sequence[int], stratum: str = "") -> tuple[StratumCohomology, PdPairing]:
    """Cohomology of ``P^{n1} x ... x P^{nk}`` with its monomial basis.

    Factors of dimension 0 are allowed (a point factor) so that linear
    sections can keep the factor layout of their ambient stratum.
    """
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 0 for d in dims):
        raise ValueError(f"need a nonempty list of non-negative dimensions, got {list(dims)}")
    total = sum(dims)
    coh_dims, labels, basis = {}, {}, {}
    for k in range(total + 1):
        mons = _monomials(dims, k)
        coh_dims[(2 * k, k)] = len(mons)
        labels[(2 * k, k)] = tuple(monomial_label(e) for e in mons)
        basis[k] = mons
    top = tuple(dims)
    pairing = {}
    for k in range(total + 1):
        rows, cols = basis[k], basis[total - k]
        pairing[(2 * k, k)] = QMatrix.from_rows(
            [[int(tuple(x + y for x, y in zip(r, c)) == top) for c in cols] for r in rows],
            cols=len(cols))
    coh = StratumCohomology(stratum, total, coh_dims, labels, dims)
    return coh, PdPairing(stratum, total, pairing)


def _poly_mul(p: dict, q: dict, caps: Sequence[int]) -> dict:
    out: dict = defaultdict(int)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if all(x <= cap for x, cap in zip(e, caps)):
                out[e] += c1 * c2
    return {e: c for e, c in out.items() if c}


def restriction_from_class_map(source: StratumCohomology, target: StratumCohomology,
                               class_images: Sequence[Sequence[int]]) -> GradedMap:
    """Extend ``h_i -> sum_j class_images[i][j] * h'_j`` to a ring map.

    Monomials exceeding a target factor's dimension vanish.
    """
    if source.projective is None or target.projective is None:
        raise ValueError("class maps need strata with projective-product cohomology")
    src, tgt = source.projective, target.projective
    if len(class_images) != len(src) or any(len(r) != len(tgt) for r in class_images):
        raise ValueError(f"class_images must be {len(src)}x{len(tgt)}")
    ntgt = len(tgt)
    images = []
    for row in class_images:
        poly = {}
        for j, c in enumerate(row):
            if c:
                e = tuple(int(k == j) for k in range(ntgt))
                poly = {**poly, e: poly.get(e, 0) + int(c)}
        images.append({e: c for e, c in poly.items() if c and all(x <= cap for x, cap in zip(e, tgt))})
    mats = {}
    for k in range(sum(src) + 1):
        smons = _monomials(src, k)
        tmons = _monomials(tgt, k)
        tindex = {e: i for i, e in enumerate(tmons)}
        cols = []
        for e in smons:
            poly = {tuple([0] * ntgt): 1}
            for i, power in enumerate(e):
                for _ in range(power):
                    poly = _poly_mul(poly, images[i], tgt)
            col = [0] * len(tmons)
            for m, c in poly.items():
                col[tindex[m]] += c
            cols.append(col)
        mat = QMatrix.from_rows([list(r) for r in zip(*cols)], cols=len(smons)) if tmons and smons \
            else QMatrix.zeros(len(tmons), len(smons))
        mats[(2 * k, k)] = mat
    return GradedMap(source.stratum, target.stratum, "restriction", mats)


def gysin_from_pd(restr: GradedMap, source: StratumCohomology, target: StratumCohomology,
                  src_pair: PdPairing, tgt_pair: PdPairing) -> GradedMap:
    """Gysin map ``H(target) -> H(source)`` adjoint to ``restr``: ``<R x, y> = <x, G y>``.

    ``source``/``target`` refer to the restriction, so the Gysin map goes
    from ``restr.target`` back to ``restr.source``.
    """
    if restr.kind != "restriction":
        raise ValueError("gysin_from_pd needs a restriction map")
    c = source.dim - target.dim
    if c <= 0:
        raise ValueError("Gysin map needs a positive codimension")
    ds, dt = source.dim, target.dim
    mats = {}
    for m in range(2 * dt + 1):
        for a in range(m + 1):
            ydim = target.block_dim(m, a)
            n_out, a_out = m + 2 * c, a + c
            out_dim = source.block_dim(n_out, a_out)
            if ydim == 0 or out_dim == 0:
                mats[(m, a)] = QMatrix.zeros(out_dim, ydim)
                continue
            # x runs over source block dual to (n_out, a_out)
            xn, xa = 2 * ds - n_out, ds - a_out
            p_s = src_pair.block(xn, xa)
            p_t = tgt_pair.block(xn, xa)
            r = restr.block(xn, xa, source, target)
            try:
                p_s_inv = p_s.inverse()
            except ZeroDivisionError:
                raise ValueError(f"singular pairing on {source.stratum} block {(xn, xa)}") from None
            mats[(m, a)] = p_s_inv @ r.T @ p_t
    return GradedMap(restr.target, restr.source, "gysin", mats, shift=c)


# --------------------------------------------------------------------------
# curves and Kunneth products


def make_curve(genus: int, stratum: str = "") -> tuple[StratumCohomology, PdPairing]:
    """Smooth projective curve of the given genus, symplectic basis a_i, b_i."""
    g = int(genus)
    dims = {(0, 0): 1, (2, 1): 1}
    labels = {(0, 0): ("1",), (2, 1): ("pt",)}
    if g:
        dims[(1, 0)] = g
        dims[(1, 1)] = g
        labels[(1, 0)] = tuple(f"b{i + 1}" for i in range(g))
        labels[(1, 1)] = tuple(f"a{i + 1}" for i in range(g))
    pairing = {(0, 0): QMatrix.identity(1), (2, 1): QMatrix.identity(1)}
    if g:
        pairing[(1, 1)] = QMatrix.identity(g)
        pairing[(1, 0)] = QMatrix.identity(g).scale(-1)
    return StratumCohomology(stratum, 1, dims, labels), PdPairing(stratum, 1, pairing)


def point_cohomology(stratum: str = "") -> tuple[StratumCohomology, PdPairing]:
    return make_projective_product([0], stratum)


def _kunneth_layout(a: StratumCohomology, b: StratumCohomology):
    """Ordered summands of each product block: ``((n1,a1), (n2,a2))`` pairs.

    First-factor blocks are taken in descending order so that products of
    projective spaces come out in descending-lex monomial order.
    """
    layout = defaultdict(list)
    for ba in sorted(a.blocks(), reverse=True):
        for bb in sorted(b.blocks(), reverse=True):
            layout[(ba[0] + bb[0], ba[1] + bb[1])].append((ba, bb))
    return layout


def kunneth(a: StratumCohomology, b: StratumCohomology, stratum: str = "") -> StratumCohomology:
    dims, labels = {}, {}
    for key, parts in _kunneth_layout(a, b).items():
        names = []
        for ba, bb in parts:
            for la in a.basis_labels[ba]:
                for lb in b.basis_labels[bb]:
                    names.append(_join_label(la, lb))
        dims[key] = len(names)
        labels[key] = tuple(names)
    proj = a.projective + b.projective if a.projective is not None and b.projective is not None else None
    if proj is not None:
        labels = make_projective_product(proj)[0].basis_labels
    return StratumCohomology(stratum, a.dim + b.dim, dims, labels, proj)


def _join_label(la: str, lb: str) -> str:
    if la == "1":
        return lb
    if lb == "1":
        return la
    return f"{la}(x){lb}"


def _parity(block: Block) -> int:
    return block[0] % 2


def tensor_map(fa: GradedMap, fb: GradedMap, sa: StratumCohomology, sb: StratumCohomology,
               ta: StratumCohomology, tb: StratumCohomology, source: str, target: str,
               kind: str) -> GradedMap:
    """``fa (x) fb`` between Kunneth products; at most one factor may shift degree."""
    if fa.shift and fb.shift:
        raise ValueError("tensor of two Gysin maps is not needed here")
    shift = fa.shift + fb.shift
    src_layout = _kunneth_layout(sa, sb)
    tgt_layout = _kunneth_layout(ta, tb)
    mats = {}
    for key, parts in src_layout.items():
        tkey = (key[0] + 2 * shift, key[1] + shift)
        tparts = tgt_layout.get(tkey, [])
        row_sizes = [ta.block_dim(*p) * tb.block_dim(*q) for p, q in tparts]
        col_sizes = [sa.block_dim(*p) * sb.block_dim(*q) for p, q in parts]
        tpos = {pq: i for i, pq in enumerate(tparts)}
        blocks = []
        for j, (pa, pb) in enumerate(parts):
            qa = fa.target_block(*pa)
            qb = fb.target_block(*pb)
            i = tpos.get((qa, qb))
            if i is None:
                continue
            ma = fa.block(*pa, sa, ta)
            mb = fb.block(*pb, sb, tb)
            # Even-degree maps: no Koszul sign.
            blocks.append((i, j, kron(ma, mb)))
        mats[key] = block_matrix(row_sizes, col_sizes, blocks)
    return GradedMap(source, target, kind, mats, shift)


def identity_map(c: StratumCohomology) -> GradedMap:
    return GradedMap(c.stratum, c.stratum, "restriction",
                     {k: QMatrix.identity(v) for k, v in c.dims.items()})


def tensor_pairing(pa: PdPairing, pb: PdPairing, a: StratumCohomology, b: StratumCohomology,
                   stratum: str = "") -> PdPairing:
    """Pairing on ``A x B``: ``<x(x)y, x'(x)y'> = (-1)^{|y||x'|} <x,x'><y,y'>``."""
    layout = _kunneth_layout(a, b)
    da, db = a.dim, b.dim
    d = da + db
    out = {}
    for (n, h), parts in layout.items():
        dual = (2 * d - n, d - h)
        dparts = layout.get(dual, [])
        row_sizes = [a.block_dim(*p) * b.block_dim(*q) for p, q in parts]
        col_sizes = [a.block_dim(*p) * b.block_dim(*q) for p, q in dparts]
        dpos = {pq: i for i, pq in enumerate(dparts)}
        blocks = []
        for i, (xa, xb) in enumerate(parts):
            want = ((2 * da - xa[0], da - xa[1]), (2 * db - xb[0], db - xb[1]))
            j = dpos.get(want)
            if j is None:
                continue
            sign = -1 if (xb[0] * want[0][0]) % 2 else 1
            blocks.append((i, j, kron(pa.block(*xa), pb.block(*xb)).scale(sign)))
        out[(n, h)] = block_matrix(row_sizes, col_sizes, blocks)
    return PdPairing(stratum, d, out)


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class HodgeData:
    """Cohomology of every stratum plus the maps along incidences.

    ``restrictions`` is keyed by ``(upper, lower)``; ``gysins`` by
    ``(lower, upper)`` and is only required on branch incidences.
    """
    cohomology: Mapping[str, StratumCohomology]
    restrictions: Mapping[tuple[str, str], GradedMap]
    gysins: Mapping[tuple[str, str], GradedMap] = field(default_factory=dict)
    pairings: Mapping[str, PdPairing] = field(default_factory=dict)


def complete_gysins(model: GsncModel, data: HodgeData) -> HodgeData:
    """Derive missing Gysin maps on branch incidences from Poincare pairings."""
    gys = dict(data.gysins)
    for inc in model.incidences:
        if not model.is_branch_incidence(inc) or (inc.lower, inc.upper) in gys:
            continue
        r = data.restrictions.get((inc.upper, inc.lower))
        ps, pt = data.pairings.get(inc.upper), data.pairings.get(inc.lower)
        if r is None or ps is None or pt is None:
            continue
        gys[(inc.lower, inc.upper)] = gysin_from_pd(
            r, data.cohomology[inc.upper], data.cohomology[inc.lower], ps, pt)
    return HodgeData(data.cohomology, data.restrictions, gys, data.pairings)


def _check_shapes(f: GradedMap, src: StratumCohomology, tgt: StratumCohomology) -> list[str]:
    bad = []
    for (n, a), m in f.matrices.items():
        tn, ta = f.target_block(n, a)
        want = (tgt.block_dim(tn, ta), src.block_dim(n, a))
        if m.shape != want:
            bad.append(f"block {(n, a)} has shape {m.shape}, expected {want}")
    return bad


def validate_hodge(model: GsncModel, data: HodgeData) -> ValidationReport:
    issues: list[Issue] = []

    def add(code, msg):
        issues.append(Issue(code, msg))

    for s in model.strata:
        c = data.cohomology.get(s.id)
        if c is None:
            add("missing-cohomology", f"stratum {s.id} has no cohomology")
            continue
        d = model.dim - s.codim
        if c.dim != d:
            add("dimension", f"cohomology of {s.id} has dimension {c.dim}, stratum has {d}")
        for (n, a), v in c.dims.items():
            if v < 0:
                add("dims", f"{s.id}: negative dimension at {(n, a)}")
            if v and not (0 <= a <= n <= 2 * d):
                add("dims", f"{s.id}: nonzero block {(n, a)} outside 0 <= a <= n <= {2 * d}")
            if v != c.dims.get((n, n - a), 0):
                add("hodge-symmetry", f"{s.id}: h^({a},{n - a}) = {v} but "
                                      f"h^({n - a},{a}) = {c.dims.get((n, n - a), 0)} in H^{n}")
            if len(c.basis_labels.get((n, a), ())) != v:
                add("basis", f"{s.id}: block {(n, a)} has {len(c.basis_labels.get((n, a), ()))} "
                             f"labels for dimension {v}")
        if c.dims.get((0, 0), 0) != 1:
            add("h0", f"{s.id}: H^0 must be one-dimensional of type (0,0) (connected stratum)")
        if c.dims.get((2 * d, d), 0) != 1:
            add("top-degree", f"{s.id}: H^{2 * d} must be one-dimensional (proper connected stratum)")

    if issues:
        return ValidationReport(tuple(issues))
    coh = data.cohomology

    for inc in model.incidences:
        key = (inc.upper, inc.lower)
        r = data.restrictions.get(key)
        if r is None:
            add("missing-map", f"no restriction map {inc.upper} -> {inc.lower}")
            continue
        for msg in _check_shapes(r, coh[inc.upper], coh[inc.lower]):
            add("shape", f"restriction {inc.upper} -> {inc.lower}: {msg}")
        if r.shift:
            add("shape", f"restriction {inc.upper} -> {inc.lower} shifts degree")
        if model.is_branch_incidence(inc):
            g = data.gysins.get((inc.lower, inc.upper))
            if g is None:
                add("missing-map", f"no Gysin map {inc.lower} -> {inc.upper} "
                                   f"(supply it or Poincare pairings)")
                continue
            if g.shift != 1:
                add("shape", f"Gysin {inc.lower} -> {inc.upper} must shift by (2,1)")
            for msg in _check_shapes(g, coh[inc.lower], coh[inc.upper]):
                add("shape", f"Gysin {inc.lower} -> {inc.upper}: {msg}")
    for sid, p in data.pairings.items():
        if not p.is_nondegenerate():
            add("pairing", f"Poincare pairing of {sid} is degenerate")
    if issues:
        return ValidationReport(tuple(issues))

    # signed commutativity of restrictions around codim-2 squares
    for top in model.strata:
        acc: dict[str, dict[Block, QMatrix]] = defaultdict(dict)
        for i1 in model.lowers.get(top.id, ()):
            r1 = data.restrictions[(top.id, i1.lower)]
            for i2 in model.lowers.get(i1.lower, ()):
                r2 = data.restrictions[(i1.lower, i2.lower)]
                sign = i1.sign * i2.sign
                for blk in coh[top.id].blocks():
                    m = (r2.block(*blk, coh[i1.lower], coh[i2.lower])
                         @ r1.block(*blk, coh[top.id], coh[i1.lower])).scale(sign)
                    acc[i2.lower][blk] = acc[i2.lower][blk] + m if blk in acc[i2.lower] else m
        for bottom, blocks in sorted(acc.items()):
            if any(not m.is_zero() for m in blocks.values()):
                add("square", f"restrictions {top.id} -> {bottom} do not commute "
                              f"up to the incidence signs")
    return ValidationReport(tuple(issues))
