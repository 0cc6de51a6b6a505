"""Combinatorial stratification of a GSNC pair (X, B).

A model lists the irreducible components of X, every closed stratum (an
irreducible component of an intersection of components of X and of
B-branches), and the cover relations between strata with orientation
signs.  Strata cut out by B-branches ("pair strata") live in the same
poset as the strata of X.

Sign convention for generated models: components come first in the global
order, then B-branches.  Adding component ``c`` to a stratum whose component
set is ``S`` has sign ``(-1)**#{s in S : s < c}``.  Adding branch ``j`` to a
stratum of X-codimension ``p`` with branch set ``J`` has sign
``(-1)**(p + #{i in J : i < j})``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterable, Sequence


class ModelError(ValueError):
    """Raised for structural misuse of a model (not for validation findings)."""


@dataclass(frozen=True)
class Component:
    id: str
    dim: int


@dataclass(frozen=True)
class Stratum:
    id: str
    components: tuple[str, ...]
    codim: int
    copy_index: int = 0
    b_branches: tuple[str, ...] = ()
    factor_type: tuple[int, ...] = ()

    @property
    def x_codim(self) -> int:
        """Codimension of the underlying stratum of X (branches removed)."""
        return self.codim - len(self.b_branches)

    @property
    def is_pair_stratum(self) -> bool:
        return bool(self.b_branches)


@dataclass(frozen=True)
class Incidence:
    lower: str
    upper: str
    sign: int


@dataclass(frozen=True)
class Issue:
    code: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.issues + other.issues)

    def __iter__(self):
        return iter(self.issues)

    def __len__(self):
        return len(self.issues)


@dataclass(frozen=True)
class GsncModel:
    components: tuple[Component, ...]
    strata: tuple[Stratum, ...]
    incidences: tuple[Incidence, ...]
    b_branch_ids: tuple[str, ...] = ()
    name: str = ""

    @classmethod
    def build(cls, components: Iterable[Component], strata: Iterable[Stratum],
              incidences: Iterable[Incidence], b_branch_ids: Iterable[str] = (),
              name: str = "") -> "GsncModel":
        """Create a model, adding a codim-0 stratum for each component if absent."""
        components = tuple(components)
        strata = list(strata)
        present = {s.id for s in strata}
        missing = [Stratum(c.id, (c.id,), 0) for c in components if c.id not in present]
        return cls(components, tuple(missing + strata), tuple(incidences),
                   tuple(b_branch_ids), name)

    @property
    def dim(self) -> int:
        return self.components[0].dim if self.components else 0

    @cached_property
    def by_id(self) -> dict[str, Stratum]:
        return {s.id: s for s in self.strata}

    @cached_property
    def order(self) -> dict[str, int]:
        """Global total order: components first, then B-branches."""
        ids = [c.id for c in self.components] + list(self.b_branch_ids)
        return {x: i for i, x in enumerate(ids)}

    @cached_property
    def uppers(self) -> dict[str, tuple[Incidence, ...]]:
        out = defaultdict(list)
        for inc in self.incidences:
            out[inc.lower].append(inc)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def lowers(self) -> dict[str, tuple[Incidence, ...]]:
        out = defaultdict(list)
        for inc in self.incidences:
            out[inc.upper].append(inc)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def incidence_map(self) -> dict[tuple[str, str], Incidence]:
        return {(i.lower, i.upper): i for i in self.incidences}

    def x_strata(self) -> list[Stratum]:
        return [s for s in self.strata if not s.b_branches]

    def pair_strata(self) -> list[Stratum]:
        return [s for s in self.strata if s.b_branches]

    def stratum_dim(self, sid: str) -> int:
        return self.dim - self.by_id[sid].codim

    def is_branch_incidence(self, inc: Incidence) -> bool:
        return len(self.by_id[inc.lower].b_branches) != len(self.by_id[inc.upper].b_branches)

    @cached_property
    def base(self) -> dict[str, str]:
        """Underlying stratum of X for every stratum (follow branch removals up)."""
        out: dict[str, str] = {}
        for s in sorted(self.strata, key=lambda s: len(s.b_branches)):
            if not s.b_branches:
                out[s.id] = s.id
                continue
            for inc in self.uppers.get(s.id, ()):
                if self.is_branch_incidence(inc) and inc.upper in out:
                    out[s.id] = out[inc.upper]
                    break
        return out

    def up_set(self, sid: str) -> set[str]:
        """All strata containing ``sid`` (itself included)."""
        seen = {sid}
        stack = [sid]
        while stack:
            cur = stack.pop()
            for inc in self.uppers.get(cur, ()):
                if inc.upper not in seen:
                    seen.add(inc.upper)
                    stack.append(inc.upper)
        return seen

    def down_set(self, sid: str) -> set[str]:
        seen = {sid}
        stack = [sid]
        while stack:
            cur = stack.pop()
            for inc in self.lowers.get(cur, ()):
                if inc.lower not in seen:
                    seen.add(inc.lower)
                    stack.append(inc.lower)
        return seen

    def x_part(self) -> "GsncModel":
        """The model of X alone, forgetting B."""
        keep = {s.id for s in self.strata if not s.b_branches}
        return GsncModel(self.components, tuple(s for s in self.strata if s.id in keep),
                         tuple(i for i in self.incidences if i.lower in keep and i.upper in keep),
                         (), self.name)


def strata_of_codim(model: GsncModel, n: int) -> list[Stratum]:
    """Closed strata of X of codimension ``n``, i.e. the pieces of X^[n]."""
    return [s for s in model.strata if s.codim == n and not s.b_branches]


def level(model: GsncModel) -> int:
    return max((len(s.factor_type) for s in model.strata if not s.b_branches), default=0)


def default_sign(model: GsncModel, upper: Stratum, lower: Stratum) -> int:
    """Sign of the cover ``lower < upper`` under the generated-model convention.

    Only defined when the cover adds a single component or a single branch.
    """
    order = model.order
    added_c = set(lower.components) - set(upper.components)
    added_b = set(lower.b_branches) - set(upper.b_branches)
    if len(added_c) == 1 and not added_b:
        (c,) = added_c
        return (-1) ** sum(order[s] < order[c] for s in upper.components)
    if len(added_b) == 1 and not added_c:
        (j,) = added_b
        return (-1) ** (upper.x_codim + sum(order[s] < order[j] for s in upper.b_branches))
    raise ModelError(f"no default sign for {upper.id} > {lower.id}: the cover adds "
                     f"{len(added_c)} components and {len(added_b)} branches")


def mv_sign(model: GsncModel, sub: str, sup: str) -> int:
    """Stored orientation sign of the incidence ``sub`` (lower) < ``sup`` (upper)."""
    inc = model.incidence_map.get((sub, sup))
    if inc is None:
        raise ModelError(f"not an incidence: {sub} < {sup}")
    return inc.sign


def with_default_signs(model: GsncModel) -> GsncModel:
    incs = tuple(Incidence(i.lower, i.upper,
                           default_sign(model, model.by_id[i.upper], model.by_id[i.lower]))
                 for i in model.incidences)
    return GsncModel(model.components, model.strata, incs, model.b_branch_ids, model.name)


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def reorder_components(model: GsncModel, new_order: Sequence[str]) -> GsncModel:
    """Change the global component order, reorienting every cell accordingly.

    Each stratum's cell is reoriented by the sign of the permutation that the
    new order induces on its components; incidence signs change by the
    product of the two cells' reorientations, so the boundary still squares
    to zero and all cohomology is unchanged.
    """
    if sorted(new_order) != sorted(c.id for c in model.components):
        raise ModelError("new order must be a permutation of the component ids")
    old = model.order
    new = {c: i for i, c in enumerate(new_order)}
    flip = {}
    for s in model.strata:
        by_old = sorted(s.components, key=old.__getitem__)
        flip[s.id] = _perm_sign([new[c] for c in by_old])
    comps = {c.id: c for c in model.components}
    incs = tuple(Incidence(i.lower, i.upper, i.sign * flip[i.lower] * flip[i.upper])
                 for i in model.incidences)
    return GsncModel(tuple(comps[c] for c in new_order), model.strata, incs,
                     model.b_branch_ids, model.name)


# --------------------------------------------------------------------------
# validation


def _product_face_check(model: GsncModel, s: Stratum) -> list[Issue]:
    """Check that the cell of ``s`` has the face poset of a product of simplices."""
    ft = s.factor_type
    up = [model.by_id[u] for u in model.up_set(s.id) if not model.by_id[u].b_branches]
    verts = set(s.components)
    issues = []

    def bad(msg):
        return [Issue("face-poset", f"stratum {s.id} (factor_type {list(ft)}): {msg}")]

    if len(verts) != prod(t + 1 for t in ft):
        return bad(f"{len(verts)} components contain it, expected {prod(t + 1 for t in ft)}")
    vsets = {}
    for z in up:
        key = frozenset(z.components)
        if key in vsets:
            return bad(f"strata {vsets[key]} and {z.id} have the same component set")
        vsets[key] = z.id
    for v in verts:
        if frozenset([v]) not in vsets:
            return bad(f"component {v} is not an upper face")
    if not ft:
        return [] if len(up) == 1 else bad("extra faces above a vertex")

    edges = defaultdict(set)
    for key in vsets:
        if len(key) == 2:
            a, b = tuple(key)
            edges[a].add(b)
            edges[b].add(a)

    def dists(src):
        d = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for x in frontier:
                for y in edges[x]:
                    if y not in d:
                        d[y] = d[x] + 1
                        nxt.append(y)
            frontier = nxt
        return d

    v0 = min(verts, key=model.order.__getitem__)
    nbrs = sorted(edges[v0], key=model.order.__getitem__)
    classes: list[list[str]] = []
    for a in nbrs:
        for cl in classes:
            if frozenset([v0, a, cl[0]]) in vsets:
                cl.append(a)
                break
        else:
            classes.append([a])
    if sorted(len(c) for c in classes) != sorted(ft):
        return bad(f"edge classes at {v0} have sizes {sorted(len(c) for c in classes)}")
    classes.sort(key=len)
    factors = sorted(range(len(ft)), key=lambda i: ft[i])
    labels = [None] * len(ft)
    for fi, cl in zip(factors, classes):
        labels[fi] = [v0] + cl

    dist = {v: dists(v) for v in [v0] + nbrs}
    coord = {}
    for w in verts:
        if w not in dist[v0]:
            return bad(f"component {w} not connected to {v0} by edges of the cell")
        c = []
        for lab in labels:
            hit = [a for a in lab[1:] if dist[a].get(w, -1) == dist[v0][w] - 1]
            if len(hit) > 1:
                return bad(f"component {w} has ambiguous coordinates")
            c.append(hit[0] if hit else v0)
        coord[w] = tuple(c)
    if len(set(coord.values())) != len(verts):
        return bad("components do not form the vertex grid of a product of simplices")
    inv = {c: w for w, c in coord.items()}

    boxes = {}
    for subsets in product(*[[frozenset(x for k, x in enumerate(lab) if mask >> k & 1)
                              for mask in range(1, 1 << len(lab))] for lab in labels]):
        vs = frozenset(inv[c] for c in product(*[sorted(x) for x in subsets]))
        boxes[vs] = sum(len(x) - 1 for x in subsets)
    if set(boxes) != set(vsets):
        return bad("upper faces are not exactly the boxes of the vertex grid")
    for key, zid in vsets.items():
        if model.by_id[zid].codim != boxes[key]:
            issues += bad(f"face {zid} has codim {model.by_id[zid].codim}, expected {boxes[key]}")
    for key, zid in vsets.items():
        for key2, zid2 in vsets.items():
            if key < key2 and len(key2) > len(key) and boxes[key2] == boxes[key] + 1:
                if (zid2, zid) not in model.incidence_map:
                    issues += bad(f"missing incidence {zid2} < {zid}")
    return issues


def _pair_structure_check(model: GsncModel, s: Stratum) -> list[Issue]:
    """Up-set of a pair stratum must be (cell of its base) x (subsets of its branches)."""
    base = model.base.get(s.id)
    if base is None:
        return [Issue("pair-structure", f"pair stratum {s.id} has no underlying stratum of X")]
    b = model.by_id[base]
    issues = []
    if tuple(sorted(b.components)) != tuple(sorted(s.components)):
        issues.append(Issue("pair-structure",
                            f"pair stratum {s.id} and its base {base} have different components"))
    if b.factor_type != s.factor_type:
        issues.append(Issue("pair-structure",
                            f"pair stratum {s.id} factor_type differs from its base {base}"))
    up_x = {u for u in model.up_set(base)}
    seen = set()
    for u in model.up_set(s.id):
        ub = model.base.get(u)
        key = (ub, frozenset(model.by_id[u].b_branches))
        if ub not in up_x or key in seen:
            issues.append(Issue("pair-structure",
                                f"upper stratum {u} of {s.id} breaks the local product structure"))
        seen.add(key)
    expected = len(up_x) * 2 ** len(s.b_branches)
    if len(seen) != expected and not issues:
        issues.append(Issue("pair-structure",
                            f"pair stratum {s.id} has {len(seen)} upper strata, expected {expected}"))
    by_branch = defaultdict(int)
    for inc in model.uppers.get(s.id, ()):
        if model.is_branch_incidence(inc):
            (j,) = set(s.b_branches) - set(model.by_id[inc.upper].b_branches)
            by_branch[j] += 1
    for j in s.b_branches:
        if by_branch[j] != 1:
            issues.append(Issue("pair-structure",
                                f"pair stratum {s.id} lies on {by_branch[j]} strata without branch {j}"))
    return issues


def _sign_coherence(model: GsncModel) -> list[Issue]:
    issues = []
    for top in model.strata:
        acc = defaultdict(int)
        for inc1 in model.lowers.get(top.id, ()):
            for inc2 in model.lowers.get(inc1.lower, ()):
                acc[inc2.lower] += inc1.sign * inc2.sign
        for bottom, total in sorted(acc.items()):
            if total != 0:
                issues.append(Issue("sign-coherence",
                                    f"boundary does not square to zero between {bottom} and {top.id} "
                                    f"(signed path sum {total})"))
    return issues


def validate_model(model: GsncModel) -> ValidationReport:
    issues: list[Issue] = []

    def add(code, msg):
        issues.append(Issue(code, msg))

    if not model.components:
        add("empty", "model has no components")
        return ValidationReport(tuple(issues))
    comp_ids = [c.id for c in model.components]
    if len(set(comp_ids)) != len(comp_ids):
        add("duplicate-id", "component ids are not unique")
    if len({c.dim for c in model.components}) != 1:
        add("dimension", "components do not all have the same dimension")
    if any(c.dim < 0 for c in model.components):
        add("dimension", "negative component dimension")
    ids = [s.id for s in model.strata]
    if len(set(ids)) != len(ids):
        add("duplicate-id", "stratum ids are not unique")
    if len(set(model.b_branch_ids)) != len(model.b_branch_ids):
        add("duplicate-id", "B-branch ids are not unique")
    if set(comp_ids) & set(model.b_branch_ids):
        add("duplicate-id", "a B-branch id coincides with a component id")

    comp_set = set(comp_ids)
    branch_set = set(model.b_branch_ids)
    dim = model.dim
    structurally_ok = True
    for s in model.strata:
        unknown = [c for c in s.components if c not in comp_set]
        unknown += [b for b in s.b_branches if b not in branch_set]
        if unknown:
            add("unknown-id", f"stratum {s.id} references unknown ids {unknown}")
            structurally_ok = False
            continue
        if not s.components:
            add("structure", f"stratum {s.id} lies on no component")
            structurally_ok = False
        if any(t <= 0 for t in s.factor_type):
            add("structure", f"stratum {s.id} has non-positive factor_type entries")
        if s.codim != sum(s.factor_type) + len(s.b_branches):
            add("codim", f"stratum {s.id}: codim {s.codim} != sum(factor_type) + #branches "
                         f"= {sum(s.factor_type) + len(s.b_branches)}")
        if s.codim > dim or s.codim < 0:
            add("codim", f"stratum {s.id}: codim {s.codim} outside [0, {dim}]")
        if s.codim == 0 and (s.b_branches or len(s.components) != 1 or s.id not in comp_set):
            add("structure", f"codim-0 stratum {s.id} is not a component")
    for c in comp_ids:
        st = model.by_id.get(c)
        if st is None or st.components != (c,) or st.codim != 0:
            add("structure", f"component {c} is missing its codim-0 stratum")
            structurally_ok = False

    seen_pairs = set()
    for inc in model.incidences:
        if inc.lower not in model.by_id or inc.upper not in model.by_id:
            add("unknown-id", f"incidence {inc.lower} < {inc.upper} references an unknown stratum")
            structurally_ok = False
            continue
        if (inc.lower, inc.upper) in seen_pairs:
            add("duplicate-incidence", f"incidence {inc.lower} < {inc.upper} listed twice")
        seen_pairs.add((inc.lower, inc.upper))
        lo, hi = model.by_id[inc.lower], model.by_id[inc.upper]
        if inc.sign not in (1, -1):
            add("sign", f"incidence {lo.id} < {hi.id} has sign {inc.sign}")
        if lo.codim != hi.codim + 1:
            add("codim", f"incidence {lo.id} < {hi.id} does not raise codim by one")
        more_comps = set(lo.components) > set(hi.components) and set(lo.b_branches) == set(hi.b_branches)
        more_branch = (set(lo.components) == set(hi.components)
                       and set(lo.b_branches) > set(hi.b_branches)
                       and len(lo.b_branches) == len(hi.b_branches) + 1)
        if not (more_comps or more_branch):
            add("containment", f"incidence {lo.id} < {hi.id}: lower must add components "
                               f"or exactly one branch to the upper stratum")
    if not structurally_ok:
        return ValidationReport(tuple(issues))

    for s in model.strata:
        if s.codim > 0 and not model.uppers.get(s.id):
            add("unreachable", f"stratum {s.id} lies on no stratum of smaller codimension")
    if issues:
        return ValidationReport(tuple(issues))

    for s in model.strata:
        if s.b_branches:
            issues += _pair_structure_check(model, s)
        else:
            issues += _product_face_check(model, s)
    issues += _sign_coherence(model)
    return ValidationReport(tuple(issues))


def dual_complex_cells(model: GsncModel) -> dict[int, int]:
    """Number of cells of the dual complex of X in each dimension."""
    out: dict[int, int] = defaultdict(int)
    for s in model.strata:
        if not s.b_branches:
            out[s.codim] += 1
    return dict(out)


def connected_components(model: GsncModel) -> int:
    """Connected components of the dual complex of X (via its 1-skeleton)."""
    parent = {c.id: c.id for c in model.components}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in model.strata:
        if not s.b_branches and len(s.components) > 1:
            root = find(s.components[0])
            for c in s.components[1:]:
                parent[find(c)] = root
    return len({find(c) for c in parent})
