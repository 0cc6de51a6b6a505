"""Q-divisor arithmetic on a GSNC model: permissibility, round-up, covering plans.

Geometry is taken on declaration: a divisor lists the strata its support
meets and any strata it contains, and the covering hypotheses are flags.
Only the coefficient arithmetic is computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, lcm, prod
from typing import Iterable, Mapping

from .linalg import to_fraction
from .model import GsncModel

# Hypotheses of the Kummer covering construction, in order.
HYPOTHESES = ("in_boundary", "distinct_components", "smooth_traces")


@dataclass(frozen=True)
class QDivisor:
    coefficients: Mapping[str, Fraction]
    id: str = "D"
    meets_strata: tuple[str, ...] = ()
    contains_strata: tuple[str, ...] = ()
    hypotheses: Mapping[str, bool] = field(default_factory=dict)

    @classmethod
    def of(cls, coefficients: Mapping[str, object], **kw) -> "QDivisor":
        return cls({k: to_fraction(v) for k, v in coefficients.items()}, **kw)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(k for k, v in self.coefficients.items() if v)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coefficients.values())


@dataclass(frozen=True)
class CoveringPlan:
    multiplicities: Mapping[str, int]
    total_degree: int
    pullback: Mapping[str, int]
    lcm_degree: int  # degree of a single cyclic cover, the other common choice


class CoveringHypothesisError(ValueError):
    pass


def boundary_divisor(model: GsncModel) -> QDivisor:
    return QDivisor({b: Fraction(1) for b in model.b_branch_ids}, id="B")


def is_permissible(model: GsncModel, divisor: QDivisor,
                   registered: Iterable[str] = ()) -> tuple[bool, list[str]]:
    """True iff no closed stratum is declared to lie in the support.

    Returns the offending strata as witnesses.
    """
    known = set(model.b_branch_ids) | set(registered)
    unknown = [k for k in divisor.coefficients if k not in known]
    if unknown:
        raise KeyError(f"unknown divisor ids {unknown}")
    bad = [s for s in (*divisor.meets_strata, *divisor.contains_strata) if s not in model.by_id]
    if bad:
        raise KeyError(f"unknown strata {bad}")
    witnesses = list(divisor.contains_strata)
    return (not witnesses, witnesses)


def round_up(divisor: QDivisor) -> QDivisor:
    return QDivisor({k: Fraction(ceil(v)) for k, v in divisor.coefficients.items()},
                    divisor.id, divisor.meets_strata, divisor.contains_strata, divisor.hypotheses)


def restrict(divisor: QDivisor, traces: Mapping[str, Mapping[str, int]]) -> dict[str, Fraction]:
    """``D|_Y`` as coefficients on trace components, given ``D_j -> {trace: mult}``."""
    out: dict[str, Fraction] = {}
    for j, d in divisor.coefficients.items():
        for t, mult in traces.get(j, {}).items():
            out[t] = out.get(t, Fraction(0)) + d * mult
    return out


def restrict_then_roundup_check(divisor: QDivisor, stratum: str,
                                traces: Mapping[str, Mapping[str, int]]) -> bool:
    """Check ``round_up(D)|_Y == round_up(D|_Y)`` for reduced trace data.

    Raises ``ValueError`` when a trace is non-reduced or two components share a
    trace component (B restricted to Y would not be reduced).
    """
    owner: dict[str, str] = {}
    for j, tr in traces.items():
        if j not in divisor.coefficients:
            raise ValueError(f"trace data for {j}, which is not in the support of {divisor.id}")
        for t, mult in tr.items():
            if mult != 1:
                raise ValueError(f"trace of {j} on {stratum} has multiplicity {mult}; "
                                 f"restriction to a stratum must be reduced")
            if t in owner:
                raise ValueError(f"{owner[t]} and {j} share the trace component {t} on {stratum}; "
                                 f"restriction would not be reduced")
            owner[t] = j
    lhs = restrict(round_up(divisor), traces)
    rhs = {t: Fraction(ceil(v)) for t, v in restrict(divisor, traces).items()}
    return lhs == rhs


def covering_plan(divisor: QDivisor, model: GsncModel | None = None) -> CoveringPlan:
    """Ramification multiplicities making the pullback of ``divisor`` integral.

    With a model, conditions (1) and (2) hold automatically for supports made
    of distinct B-branches; everything else must be declared.
    """
    declared = dict(divisor.hypotheses)
    if model is not None and all(k in model.b_branch_ids for k in divisor.coefficients):
        declared.setdefault("in_boundary", True)
        declared.setdefault("distinct_components", True)
    missing = [f"({i + 1}) {h}" for i, h in enumerate(HYPOTHESES) if not declared.get(h)]
    if missing:
        raise CoveringHypothesisError("covering hypotheses not declared: " + ", ".join(missing))
    mult = {k: v.denominator for k, v in divisor.coefficients.items()}
    pull = {k: int(v * mult[k]) for k, v in divisor.coefficients.items()}
    return CoveringPlan(mult, prod(mult.values()), pull, lcm(*mult.values()) if mult else 1)
