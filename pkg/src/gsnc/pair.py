from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .hodge import HodgeData, complete_gysins, validate_hodge
from .model import GsncModel, ValidationReport, validate_model


@dataclass(frozen=True)
class GsncPair:
    """A validated-or-not GSNC pair: stratification plus Hodge data.

    ``divisors`` holds the Q-divisors declared alongside the model (see
    :mod:`gsnc.divisors`).
    """
    model: GsncModel
    hodge: HodgeData
    divisors: tuple = field(default=())

    @property
    def has_boundary(self) -> bool:
        return bool(self.model.b_branch_ids) or bool(self.model.pair_strata())

    def x_part(self) -> "GsncPair":
        m = self.model.x_part()
        keep = {s.id for s in m.strata}
        h = self.hodge
        return GsncPair(
            m,
            HodgeData({k: v for k, v in h.cohomology.items() if k in keep},
                      {k: v for k, v in h.restrictions.items() if k[0] in keep and k[1] in keep},
                      {},
                      {k: v for k, v in h.pairings.items() if k in keep}),
        )

    def with_model(self, model: GsncModel) -> "GsncPair":
        return GsncPair(model, self.hodge, self.divisors)


def prepare(pair: GsncPair) -> GsncPair:
    """Fill in Gysin maps derivable from Poincare pairings."""
    return GsncPair(pair.model, complete_gysins(pair.model, pair.hodge), pair.divisors)


def validate_pair(pair: GsncPair) -> ValidationReport:
    report = validate_model(pair.model)
    if not report.ok:
        return report
    return validate_hodge(pair.model, complete_gysins(pair.model, pair.hodge))


class InvalidModel(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(i) for i in report.issues[:5]))


def require_valid(pair: GsncPair) -> GsncPair:
    pair = prepare(pair)
    report = validate_pair(pair)
    if not report.ok:
        raise InvalidModel(report)
    return pair
