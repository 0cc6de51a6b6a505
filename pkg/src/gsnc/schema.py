"""Reading and writing model files.

A model file is a JSON object::

    {
      "version": 1,
      "name": "nodal-curve",
      "components": [{"id": "L1", "dim": 1}, ...],
      "b_branches": ["b0", ...],
      "strata": [{"id": "L1.L2", "components": ["L1", "L2"], "codim": 1,
                  "copy_index": 0, "b_branches": [], "factor_type": [1]}, ...],
      "incidences": [{"lower": "L1.L2", "upper": "L1", "sign": 1}, ...],
      "cohomology": {"L1": {"projective": [1]},
                     "E": {"curve": 1},
                     "Y": {"dim": 1, "blocks": [{"n": 0, "a": 0, "basis": ["1"]}, ...]}},
      "restrictions": [{"source": "L1", "target": "L1.L2", "class_images": [[1]]},
                       {"source": "E", "target": "p",
                        "blocks": [{"n": 0, "a": 0, "matrix": [["1"]]}]}],
      "gysins": [{"source": "p", "target": "E", "blocks": [...]}],
      "pairings": {"Y": [{"n": 0, "a": 0, "matrix": [["1"]]}, ...]},
      "divisors": [{"id": "D", "coefficients": {"b0": "3/4"}, "meets_strata": ["L1"],
                    "contains_strata": [], "hypotheses": {"smooth_traces": true}}]
    }

Component order, then branch order, is the global order used for default
signs.  Components need not be repeated under ``strata``.  An incidence
without ``sign`` gets the default sign.  A missing restriction between two
projective-product strata with the same number of factors is the identity
class map.  Matrices are row-major lists of rational strings and map
source block to target block (rows index the target basis); omitted
blocks are zero.  Pairings of ``projective`` and ``curve`` strata are
generated, and Gysin maps missing on branch incidences are derived from the
pairings.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .divisors import QDivisor
from .hodge import (GradedMap, HodgeData, PdPairing, StratumCohomology, complete_gysins,
                    make_curve, make_projective_product, restriction_from_class_map)
from .linalg import QMatrix
from .model import Component, GsncModel, Incidence, ModelError, Stratum, default_sign
from .pair import GsncPair

FORMAT_VERSION = 1


class SchemaError(ValueError):
    """Malformed model file (exit status 2 in the CLI)."""


def _req(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    return obj[key]


def _matrix(rows, where: str, shape: tuple[int, int]) -> QMatrix:
    try:
        m = QMatrix.from_rows(rows, cols=shape[1] if not rows else None)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise SchemaError(f"{where}: bad matrix ({e})") from None
    if m.shape != shape:
        raise SchemaError(f"{where}: matrix has shape {m.shape}, expected {shape}")
    return m


def _cohomology(sid: str, entry: dict, dim: int) -> tuple[StratumCohomology, PdPairing | None]:
    where = f"cohomology[{sid}]"
    if "projective" in entry:
        c, p = make_projective_product(entry["projective"], sid)
        return c, p
    if "curve" in entry:
        return make_curve(int(entry["curve"]), sid)
    blocks = _req(entry, "blocks", where)
    dims, labels = {}, {}
    for b in blocks:
        key = (int(_req(b, "n", where)), int(_req(b, "a", where)))
        basis = tuple(str(x) for x in _req(b, "basis", where))
        if key in dims:
            raise SchemaError(f"{where}: block {key} listed twice")
        dims[key] = len(basis)
        labels[key] = basis
    return StratumCohomology(sid, int(entry.get("dim", dim)), dims, labels), None


def _blocks(entries, where, src: StratumCohomology, tgt: StratumCohomology, shift: int) -> dict:
    mats = {}
    for b in entries:
        n, a = int(_req(b, "n", where)), int(_req(b, "a", where))
        shape = (tgt.block_dim(n + 2 * shift, a + shift), src.block_dim(n, a))
        mats[(n, a)] = _matrix(_req(b, "matrix", where), f"{where} block {(n, a)}", shape)
    return mats


def pair_from_dict(doc: dict[str, Any]) -> GsncPair:
    if not isinstance(doc, dict):
        raise SchemaError("model file must contain a JSON object")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported model file version {version}")
    for key in ("components", "strata", "incidences"):
        if key not in doc:
            raise SchemaError(f"missing top-level key {key!r}")
    try:
        components = [Component(str(_req(c, "id", "components")), int(_req(c, "dim", "components")))
                      for c in doc["components"]]
        strata = []
        for s in doc["strata"]:
            strata.append(Stratum(
                str(_req(s, "id", "strata")),
                tuple(str(x) for x in _req(s, "components", "strata")),
                int(_req(s, "codim", "strata")),
                int(s.get("copy_index", 0)),
                tuple(str(x) for x in s.get("b_branches", ())),
                tuple(int(x) for x in s.get("factor_type", ())),
            ))
        branches = [str(b) for b in doc.get("b_branches", ())]
        model = GsncModel.build(components, strata, [], branches, str(doc.get("name", "")))
        incs = []
        for i in doc["incidences"]:
            lower, upper = str(_req(i, "lower", "incidences")), str(_req(i, "upper", "incidences"))
            sign = i.get("sign")
            if sign is None:
                if lower not in model.by_id or upper not in model.by_id:
                    raise SchemaError(f"incidence {lower} < {upper}: unknown stratum")
                try:
                    sign = default_sign(model, model.by_id[upper], model.by_id[lower])
                except ModelError as e:
                    raise SchemaError(f"incidence {lower} < {upper} needs an explicit sign: {e}") from None
            if sign not in (1, -1):
                raise SchemaError(f"incidence {lower} < {upper}: sign must be 1 or -1, got {sign!r}")
            incs.append(Incidence(lower, upper, sign))
        model = GsncModel(model.components, model.strata, tuple(incs), model.b_branch_ids, model.name)
    except (TypeError, ValueError) as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError(f"malformed model structure: {e}") from None

    try:
        return GsncPair(model, _hodge_from_dict(doc, model), _divisors_from_dict(doc))
    except (TypeError, ValueError, KeyError) as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError(f"malformed cohomology data: {e}") from None


def _hodge_from_dict(doc: dict, model: GsncModel) -> HodgeData:
    coh_doc = doc.get("cohomology", {})
    cohomology, pairings = {}, {}
    for sid, entry in coh_doc.items():
        if sid not in model.by_id:
            raise SchemaError(f"cohomology given for unknown stratum {sid}")
        c, p = _cohomology(sid, entry, model.stratum_dim(sid))
        cohomology[sid] = c
        if p is not None:
            pairings[sid] = p
    for sid, blocks in doc.get("pairings", {}).items():
        if sid not in cohomology:
            raise SchemaError(f"pairing given for stratum {sid} without cohomology")
        c = cohomology[sid]
        mats = {}
        for b in blocks:
            n, a = int(_req(b, "n", "pairings")), int(_req(b, "a", "pairings"))
            shape = (c.block_dim(n, a), c.block_dim(2 * c.dim - n, c.dim - a))
            mats[(n, a)] = _matrix(_req(b, "matrix", "pairings"), f"pairings[{sid}] {(n, a)}", shape)
        pairings[sid] = PdPairing(sid, c.dim, mats)

    restrictions = {}
    for r in doc.get("restrictions", ()):
        src, tgt = str(_req(r, "source", "restrictions")), str(_req(r, "target", "restrictions"))
        if src not in cohomology or tgt not in cohomology:
            raise SchemaError(f"restriction {src} -> {tgt}: stratum without cohomology")
        if "class_images" in r:
            try:
                restrictions[(src, tgt)] = restriction_from_class_map(
                    cohomology[src], cohomology[tgt], r["class_images"])
            except ValueError as e:
                raise SchemaError(f"restriction {src} -> {tgt}: {e}") from None
        else:
            mats = _blocks(_req(r, "blocks", "restrictions"), f"restriction {src} -> {tgt}",
                           cohomology[src], cohomology[tgt], 0)
            restrictions[(src, tgt)] = GradedMap(src, tgt, "restriction", mats)
    for inc in model.incidences:
        key = (inc.upper, inc.lower)
        cu, cl = cohomology.get(inc.upper), cohomology.get(inc.lower)
        if key in restrictions or cu is None or cl is None:
            continue
        if cu.projective is not None and cl.projective is not None and \
                len(cu.projective) == len(cl.projective):
            n = len(cu.projective)
            restrictions[key] = restriction_from_class_map(
                cu, cl, [[int(i == j) for j in range(n)] for i in range(n)])

    gysins = {}
    for g in doc.get("gysins", ()):
        src, tgt = str(_req(g, "source", "gysins")), str(_req(g, "target", "gysins"))
        if src not in cohomology or tgt not in cohomology:
            raise SchemaError(f"gysin {src} -> {tgt}: stratum without cohomology")
        shift = cohomology[tgt].dim - cohomology[src].dim
        mats = _blocks(_req(g, "blocks", "gysins"), f"gysin {src} -> {tgt}",
                       cohomology[src], cohomology[tgt], shift)
        gysins[(src, tgt)] = GradedMap(src, tgt, "gysin", mats, shift)
    return complete_gysins(model, HodgeData(cohomology, restrictions, gysins, pairings))


def _divisors_from_dict(doc: dict) -> tuple[QDivisor, ...]:
    out = []
    for d in doc.get("divisors", ()):
        try:
            out.append(QDivisor.of(
                _req(d, "coefficients", "divisors"),
                id=str(d.get("id", "D")),
                meets_strata=tuple(d.get("meets_strata", ())),
                contains_strata=tuple(d.get("contains_strata", ())),
                hypotheses={str(k): bool(v) for k, v in d.get("hypotheses", {}).items()},
            ))
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"divisor {d.get('id')}: {e}") from None
    return tuple(out)


def load_pair(path: str | Path) -> GsncPair:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e})") from None
    return pair_from_dict(doc)


# --------------------------------------------------------------------------
# writing


def _mat_blocks(f: GradedMap) -> list[dict]:
    return [{"n": n, "a": a, "matrix": m.to_strings()}
            for (n, a), m in sorted(f.matrices.items()) if m.rows and m.cols and not m.is_zero()]


def pair_to_dict(pair: GsncPair) -> dict[str, Any]:
    m, h = pair.model, pair.hodge
    comp_ids = {c.id for c in m.components}
    doc: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "name": m.name,
        "components": [{"id": c.id, "dim": c.dim} for c in m.components],
        "b_branches": list(m.b_branch_ids),
        "strata": [{"id": s.id, "components": list(s.components), "codim": s.codim,
                    "copy_index": s.copy_index, "b_branches": list(s.b_branches),
                    "factor_type": list(s.factor_type)}
                   for s in m.strata if s.id not in comp_ids],
        "incidences": [{"lower": i.lower, "upper": i.upper, "sign": i.sign} for i in m.incidences],
    }
    coh, pairings = {}, {}
    for s in m.strata:
        c = h.cohomology[s.id]
        if c.projective is not None:
            coh[s.id] = {"projective": list(c.projective)}
            continue
        coh[s.id] = {"dim": c.dim, "blocks": [{"n": n, "a": a, "basis": list(c.basis_labels[(n, a)])}
                                              for (n, a) in c.blocks()]}
        if s.id in h.pairings:
            pairings[s.id] = [{"n": n, "a": a, "matrix": mat.to_strings()}
                              for (n, a), mat in sorted(h.pairings[s.id].blocks.items())
                              if mat.rows and mat.cols]
    doc["cohomology"] = coh
    doc["pairings"] = pairings
    doc["restrictions"] = [{"source": i.upper, "target": i.lower,
                            "blocks": _mat_blocks(h.restrictions[(i.upper, i.lower)])}
                           for i in m.incidences if (i.upper, i.lower) in h.restrictions]
    doc["gysins"] = [{"source": i.lower, "target": i.upper,
                      "blocks": _mat_blocks(h.gysins[(i.lower, i.upper)])}
                     for i in m.incidences if (i.lower, i.upper) in h.gysins]
    doc["divisors"] = [{"id": d.id, "coefficients": {k: str(v) for k, v in d.coefficients.items()},
                        "meets_strata": list(d.meets_strata), "contains_strata": list(d.contains_strata),
                        "hypotheses": dict(d.hypotheses)} for d in pair.divisors]
    return doc


def dump_pair(pair: GsncPair, path: str | Path) -> None:
    Path(path).write_text(json.dumps(pair_to_dict(pair), indent=1) + "\n", encoding="utf-8")
