"""Tropical membership, cone initial ideals, and certificates.

Weight-vector operations (in_tropicalization, same_groebner_cone) use the
MAX convention of the polynomial engine.  Cone data (rays, lineality) is
tropical data in the MIN convention -- the convention in which published
tropical rays are stated -- so cone-level initial ideals negate the rays
before calling the max-convention engine.  This is the single place where
the two sign conventions meet.

Primality of binomial ideals is geometric (over the algebraic closure):
monomial-freeness, equality with the saturation at all variables, and
saturatedness of the exponent lattice of a reduced basis.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactmath import IntLattice, QMatrix, is_saturated, rref
from .groebner import (
    Ideal,
    ResourceBudget,
    contains_monomial,
    ideal_equal,
    initial_ideal,
    saturate,
    saturate_at_variables,
)
from .poly import OrderSpec, Polynomial, PolyRing


class NotACone(Exception):
    """An iterated initial ideal became monomial-containing inside a cone
    that was supposed to lie in the tropicalization."""


class NotBinomial(Exception):
    pass


class NotCertified(Exception):
    """Adjacency was requested for cones that fail the maximal-prime
    certificate."""


class Cone:
    """Rational polyhedral cone data attached to a polynomial ring."""

    __slots__ = ("ring", "rays", "lineality")

    def __init__(self, ring: PolyRing, rays: Sequence[Sequence],
                 lineality: Sequence[Sequence] = ()):
        self.ring = ring
        self.rays = tuple(tuple(Fraction(x) for x in r) for r in rays)
        self.lineality = tuple(tuple(Fraction(x) for x in l) for l in lineality)
        n = ring.nvars
        for v in self.rays + self.lineality:
            if len(v) != n:
                raise ValueError("vector length does not match variable count")
        for r in self.rays:
            if all(x == 0 for x in r):
                raise ValueError("zero ray")

    def to_json(self) -> str:
        return json.dumps(
            {
                "rays": [[str(x) for x in r] for r in self.rays],
                "lineality": [[str(x) for x in l] for l in self.lineality],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, ring: PolyRing, text: str) -> "Cone":
        data = json.loads(text)
        return cls(ring, [[Fraction(x) for x in r] for r in data["rays"]],
                   [[Fraction(x) for x in l] for l in data.get("lineality", [])])

    def __repr__(self):
        return f"Cone({len(self.rays)} rays, {len(self.lineality)} lineality)"


@dataclass(frozen=True)
class PositivityCertificate:
    verdict: str  # "positive" | "not_positive" | "inconclusive"
    point: Optional[tuple] = None
    witness: Optional[Polynomial] = None


def in_tropicalization(ideal: Ideal, w: Sequence) -> bool:
    """True iff init_w (max convention) of the ideal is monomial-free."""
    return not contains_monomial(initial_ideal(ideal, OrderSpec.weight_order(w)))


def lineality_vectors(ring: PolyRing) -> list[tuple]:
    """One weight vector per grading coordinate: the r-th vector assigns each
    variable the r-th entry of its degree vector.  Every such weight fixes
    every homogeneous ideal, so these span lineality directions.  When the
    degree vectors are distinct unit vectors this reduces to the indicator
    vectors of the grading blocks."""
    width = len(ring.degrees[0]) if ring.degrees else 0
    out = []
    for r in range(width):
        v = tuple(d[r] for d in ring.degrees)
        if any(v) and v not in out:
            out.append(v)
    return out


def cone_initial_ideal(ideal: Ideal, cone: Cone) -> Ideal:
    """The initial ideal of the cone's relative interior, via iterated
    single-weight initial ideals: lineality vectors first, then rays.

    Cone data is min-convention, so each weight is negated before the
    max-convention engine runs.  Raises NotACone if an intermediate ideal
    acquires a monomial.
    """
    weights = [
        tuple(-x for x in w)
        for w in tuple(cone.lineality) + tuple(cone.rays)
        if not all(_weight_homogeneous(g, w) for g in ideal.generators)
    ]
    if not weights:
        if contains_monomial(ideal):
            raise NotACone("iterated initial ideal contains a monomial")
        return ideal
    if ideal.ring.is_positively_graded() and ideal.is_homogeneous():
        # one Groebner basis under the stacked order; a monomial appearing at
        # any intermediate stage survives into the final initial ideal, so
        # the single final check is equivalent.  Some stacked orders blow up,
        # so the attempt is budgeted with the slower iterated route as backup.
        try:
            current = _with_budget(
                15.0, lambda: initial_ideal(ideal, OrderSpec.matrix_order(weights))
            )
        except ResourceBudget:
            current = None
        if current is not None:
            if contains_monomial(current):
                raise NotACone("iterated initial ideal contains a monomial")
            return current
    current = ideal
    for w in weights:
        current = initial_ideal(current, OrderSpec.weight_order(w))
        if contains_monomial(current):
            raise NotACone("iterated initial ideal contains a monomial")
    return current


def _with_budget(seconds: float, fn):
    """Run fn with a temporary wall-clock Groebner budget unless one is
    already configured in the environment."""
    import os

    if os.environ.get("TROPCLUSTER_TIME_BUDGET") is not None:
        return fn()
    os.environ["TROPCLUSTER_TIME_BUDGET"] = str(seconds)
    try:
        return fn()
    finally:
        del os.environ["TROPCLUSTER_TIME_BUDGET"]


def _weight_homogeneous(g, w) -> bool:
    values = {sum(wi * ei for wi, ei in zip(w, e)) for e in g.terms}
    return len(values) <= 1


def is_binomial(ideal: Ideal) -> bool:
    """All elements of the reduced grevlex basis have at most two terms."""
    return all(g.num_terms() <= 2 for g in ideal.groebner_basis(OrderSpec.term("grevlex")))


def _exponent_lattice(ideal: Ideal) -> IntLattice:
    gens = []
    n = ideal.ring.nvars
    for g in ideal.groebner_basis(OrderSpec.term("grevlex")):
        exps = list(g.terms)
        if len(exps) == 2:
            gens.append(tuple(a - b for a, b in zip(exps[0], exps[1])))
    return IntLattice(gens, n)


def is_prime_binomial(ideal: Ideal) -> bool:
    """Geometric primality test for a binomial ideal.

    Requires (a) no monomial in the ideal, (b) the ideal equals its
    saturation at the product of all variables, (c) the exponent lattice of
    the reduced basis is saturated in Z^n.
    """
    if not is_binomial(ideal):
        raise NotBinomial("input has an element with more than two terms")
    if contains_monomial(ideal):
        return False
    if ideal.ring.is_positively_graded() and ideal.is_homogeneous():
        sat = saturate_at_variables(ideal)
    else:
        prod = ideal.ring.monomial((1,) * ideal.ring.nvars)
        sat = saturate(ideal, prod)
    if not ideal_equal(ideal, sat):
        return False
    return is_saturated(_exponent_lattice(ideal), ideal.ring.nvars)


def is_totally_positive(ideal: Ideal) -> PositivityCertificate:
    """Certificate for whether the ideal's zero set meets the strictly
    positive orthant.

    A one-signed basis element is a witness against positivity.  All
    binomials with coefficient ratio -1 vanish at the all-ones point
    (exact).  Binomials with other ratios are handled by solving the
    log-linear system numerically (residual tolerance 1e-9).
    """
    gb = ideal.groebner_basis(OrderSpec.term("grevlex"))
    if not gb:
        return PositivityCertificate("positive", point=(1,) * ideal.ring.nvars)
    for g in gb:
        coeffs = list(g.terms.values())
        if all(c > 0 for c in coeffs) or all(c < 0 for c in coeffs):
            return PositivityCertificate("not_positive", witness=g)
    if any(g.num_terms() > 2 for g in gb):
        return PositivityCertificate("inconclusive")
    # every element is a binomial with mixed signs
    if all(sum(g.terms.values()) == 0 for g in gb):
        point = (1,) * ideal.ring.nvars
        return PositivityCertificate("positive", point=point)
    # solve exp-linear system: x^(a-b) = -c_b/c_a > 0 for each binomial
    rows, rhs = [], []
    for g in gb:
        (ea, ca), (eb, cb) = g.terms.items()
        ratio = -cb / ca
        rows.append([a - b for a, b in zip(ea, eb)])
        rhs.append(math.log(float(ratio)))
    import numpy as np

    a = np.array(rows, dtype=float)
    b = np.array(rhs, dtype=float)
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.max(np.abs(a @ sol - b)) > 1e-9:
        return PositivityCertificate("inconclusive")
    point = tuple(float(math.exp(x)) for x in sol)
    for g in gb:
        val = sum(
            float(c) * math.prod(p ** e for p, e in zip(point, exp))
            for exp, c in g.terms.items()
        )
        if abs(val) > 1e-9:
            return PositivityCertificate("inconclusive")
    return PositivityCertificate("positive", point=point)


def same_groebner_cone(ideal: Ideal, v: Sequence, w: Sequence) -> bool:
    """Whether two weight vectors (max convention) select the same initial
    ideal."""
    iv = initial_ideal(ideal, OrderSpec.weight_order(v))
    iw = initial_ideal(ideal, OrderSpec.weight_order(w))
    return ideal_equal(iv, iw)


def _canonical_ray(ray: tuple, lineality: Sequence[tuple]) -> tuple:
    """Representative of a ray modulo lineality span and positive scaling."""
    v = list(ray)
    if lineality:
        red, pivots = rref(QMatrix(list(lineality)))
        for r, c in enumerate(pivots):
            f = v[c]
            if f:
                v = [x - f * y for x, y in zip(v, red.row(r))]
    from math import gcd

    denom = 1
    for x in v:
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    return tuple(ints)


def cones_adjacent(ideal: Ideal, c1: Cone, c2: Cone) -> bool:
    """Whether two certified maximal prime cones share a facet: their ray
    sets (modulo lineality and scaling) differ in exactly one generator and
    their initial ideals differ."""
    certificates = []
    for c in (c1, c2):
        init = cone_initial_ideal(ideal, c)
        if not (is_binomial(init) and is_prime_binomial(init)):
            raise NotCertified("cone initial ideal is not binomial prime")
        certificates.append(init)
    lin = tuple(c1.lineality) + tuple(c2.lineality)
    s1 = {_canonical_ray(r, lin) for r in c1.rays}
    s2 = {_canonical_ray(r, lin) for r in c2.rays}
    if len(s1 - s2) != 1 or len(s2 - s1) != 1:
        return False
    return not ideal_equal(certificates[0], certificates[1])
