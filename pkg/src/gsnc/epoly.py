"""Hodge-Deligne E-polynomials from the strata poset, as an independent check.

Two strata-side polynomials are available:

* :func:`e_polynomial_compact` is the classical compactly supported
  ``E_c(X - B)``: Moebius inversion over the closed strata writes each open
  stratum as an alternating sum of closed ones.
* :func:`e_polynomial_strata` is the polynomial of ordinary cohomology
  ``sum (-1)^n h^{a,b}(H^n(X - B)) u^a v^b``.  Mayer-Vietoris over X reduces it
  to the smooth pieces ``Z - B_Z`` (Z a closed stratum of X), and Poincare
  duality on each piece turns ``E_c(Z - B_Z)`` into the ordinary polynomial.

For B = 0 and X proper the two agree.  Neither uses the weight spectral
sequence, so comparing :func:`e_polynomial_strata` with
:func:`e_polynomial_from_mhs` checks the E2 computation.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .hodge import StratumCohomology
from .pair import GsncPair, require_valid
from .weight import MixedHodgeTable


@dataclass(frozen=True)
class EPolynomial:
    coefficients: Mapping[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def of(cls, coeffs) -> "EPolynomial":
        return cls({k: v for k, v in sorted(dict(coeffs).items()) if v})

    def __add__(self, other: "EPolynomial") -> "EPolynomial":
        acc = defaultdict(int, self.coefficients)
        for k, v in other.coefficients.items():
            acc[k] += v
        return EPolynomial.of(acc)

    def __mul__(self, other: "EPolynomial") -> "EPolynomial":
        acc = defaultdict(int)
        for (a, b), x in self.coefficients.items():
            for (c, d), y in other.coefficients.items():
                acc[(a + c, b + d)] += x * y
        return EPolynomial.of(acc)

    def scale(self, c: int) -> "EPolynomial":
        return EPolynomial.of({k: c * v for k, v in self.coefficients.items()})

    def poincare_dual(self, d: int) -> "EPolynomial":
        """``(uv)^d E(1/u, 1/v)``."""
        return EPolynomial.of({(d - a, d - b): v for (a, b), v in self.coefficients.items()})

    def at_one(self) -> int:
        return sum(self.coefficients.values())

    def is_symmetric(self) -> bool:
        return all(self.coefficients.get((b, a), 0) == v for (a, b), v in self.coefficients.items())

    def __str__(self):
        return format_epoly(self)


def format_epoly(e: EPolynomial) -> str:
    if not e.coefficients:
        return "0"
    out = ""
    for i, ((a, b), c) in enumerate(sorted(e.coefficients.items())):
        term = f"{abs(c)}·u^{a}·v^{b}"
        if i == 0:
            out = term if c > 0 else f"-{term}"
        else:
            out += f" + {term}" if c > 0 else f" - {term}"
    return out


def e_of_stratum(c: StratumCohomology) -> EPolynomial:
    if c.block_dim(2 * c.dim, c.dim) != 1:
        raise ValueError(f"stratum {c.stratum} is not proper and connected")
    acc = defaultdict(int)
    for (n, a), d in c.dims.items():
        acc[(a, n - a)] += (-1) ** n * d
    return EPolynomial.of(acc)


def moebius_to(model, top: str) -> dict[str, int]:
    """``mu(y, top)`` for every stratum ``y`` contained in ``top``, by recursion."""
    below = model.down_set(top)
    # process from top downward: mu(top, top) = 1, mu(y, top) = -sum_{y < z <= top} mu(z, top)
    order = sorted(below, key=lambda s: model.by_id[s].codim)
    mu: dict[str, int] = {}
    ups = {y: model.up_set(y) & below for y in below}
    for y in order:
        if y == top:
            mu[y] = 1
        else:
            mu[y] = -sum(mu[z] for z in ups[y] if z != y)
    return mu


def e_polynomial_compact(pair: GsncPair) -> EPolynomial:
    pair = require_valid(pair)
    model, coh = pair.model, pair.hodge.cohomology
    total = EPolynomial()
    for z in model.x_strata():
        for y, mu in moebius_to(model, z.id).items():
            if mu:
                total = total + e_of_stratum(coh[y]).scale(mu)
    return total


def e_polynomial_strata(pair: GsncPair) -> EPolynomial:
    pair = require_valid(pair)
    model, coh = pair.model, pair.hodge.cohomology
    base = model.base
    total = EPolynomial()
    for z in model.x_strata():
        open_part = EPolynomial()
        for y, mu in moebius_to(model, z.id).items():
            if mu and base[y] == z.id:
                open_part = open_part + e_of_stratum(coh[y]).scale(mu)
        d = model.stratum_dim(z.id)
        total = total + open_part.poincare_dual(d).scale((-1) ** z.codim)
    return total


def e_polynomial_from_mhs(table: MixedHodgeTable) -> EPolynomial:
    acc = defaultdict(int)
    for (n, a, b), d in table.entries.items():
        acc[(a, b)] += (-1) ** n * d
    return EPolynomial.of(acc)
