"""Order of contact of an arc with the maximum-multiplicity locus.

The order of contact r is the t-order of the image of the presenting Rees
algebra along the arc: min over generators of ord_t(phi(f_i)) / n_i.  Its
normalization r / nu_t(phi) is the quantity whose infimum over arcs the
theorem verifier compares against the elimination order, and its integral
part is the persistence computed independently by the blow-up oracle.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DependenceInvalid,
    EmptySample,
    NotInSingularLocus,
    PrecisionExhausted,
)
from .fields import INF
from .poly import Point
from .rees import ReesAlgebra
from .series import Arc, ArcPowers, TruncatedSeries, arc_substitute


@dataclass(frozen=True)
class ContactResult:
    """Contact data of one arc: r, nu, r_bar = r/nu, rho = floor(r)."""

    r: object  # Fraction or INF
    nu: int
    r_bar: object  # Fraction or INF
    rho: object  # int or INF
    generator_orders: tuple  # of (generator index, order or INF)

    def to_json(self) -> dict:
        return {
            "r": _rational_str(self.r),
            "nu": self.nu,
            "r_bar": _rational_str(self.r_bar),
            "rho": self.rho if self.rho != INF else "inf",
            "generator_orders": [
                [i, "inf" if o == INF else o] for i, o in self.generator_orders
            ],
        }


def _rational_str(value) -> str:
    return "inf" if value == INF else str(Fraction(value))


def _generator_orders(algebra: ReesAlgebra, arc: Arc):
    """t-order of each generator image; PrecisionExhausted when one is needed but unknown."""
    known = []
    pending = []
    powers = ArcPowers(arc)
    for i, (poly, weight) in enumerate(algebra.generators):
        image = arc_substitute(poly, arc, powers)
        order = image.known_order()
        if order is None:
            pending.append((i, weight, image.order_lower_bound()))
        else:
            known.append((i, weight, order))
    finite = [Fraction(o) / w for _, w, o in known if o != INF]
    best = min(finite) if finite else INF
    for i, weight, lower_bound in pending:
        if Fraction(lower_bound) / weight <= best:
            raise PrecisionExhausted(
                f"order of generator {i} indeterminate at this precision"
            )
    # Indeterminate orders provably exceed the minimum; report their bound as unknown-high.
    orders = {i: o for i, _, o in known}
    for i, _, lower_bound in pending:
        orders[i] = INF
    return best, tuple(sorted(orders.items()))


def contact_order(algebra: ReesAlgebra, arc: Arc):
    """r = ord_t(phi(G)); INF when the arc sits inside the singular locus."""
    best, _ = _generator_orders(algebra, arc)
    return best


def normalized_contact(algebra: ReesAlgebra, arc: Arc) -> ContactResult:
    best, orders = _generator_orders(algebra, arc)
    nu = arc.order()
    if best == INF:
        return ContactResult(INF, nu, INF, INF, orders)
    return ContactResult(best, nu, best / nu, math.floor(best), orders)


@dataclass(frozen=True)
class SampleBudget:
    """Arc-sampling budget: monomial exponent bound, random count, degrees, seed."""

    exponent_bound: int = 8
    random_arcs: int = 100
    degree_bound: int = 8
    seed: int = 0


def sample_arcs(
    algebra: ReesAlgebra,
    center: Point,
    budget: SampleBudget,
    constraints=(),
    parametrization: Arc | None = None,
) -> list:
    """Deterministic arc pool: monomial arcs plus reparametrized parametrizations.

    Arcs are recentered at the given center (the algebra and constraints are
    translated instead, so arcs keep zero constant terms).  Monomial arcs
    must satisfy every constraint exactly; arcs composed through the
    parametrization satisfy them by construction.
    """
    field = algebra.field
    variables = algebra.variables
    shifted = [c.translate(center) for c in constraints]
    arcs = []
    seen = set()

    def admit(arc: Arc):
        key = str(arc)
        if key in seen:
            return
        for constraint in shifted:
            image = arc_substitute(constraint, arc)
            if not image.is_exactly_zero():
                return
        seen.add(key)
        arcs.append(arc)

    units = field.units(6)
    width = len(variables)
    bound = budget.exponent_bound
    # Keep the monomial grid tractable in higher ambient dimension.
    while bound > 1 and (1 + len(units) * bound) ** width > 20000:
        bound -= 1
    choices = [None] + [(u, a) for a in range(1, bound + 1) for u in units]
    stack = [()]
    for _ in range(width):
        stack = [prefix + (c,) for prefix in stack for c in choices]
    for assignment in stack:
        if all(c is None for c in assignment):
            continue
        components = []
        for choice in assignment:
            if choice is None:
                components.append(TruncatedSeries.zero(field))
            else:
                u, a = choice
                components.append(TruncatedSeries.t_power(field, a, u))
        admit(Arc(variables, tuple(components), field))

    if parametrization is not None:
        rng = random.Random(budget.seed)
        produced = 0
        attempts = 0
        while produced < budget.random_arcs and attempts < budget.random_arcs * 20:
            attempts += 1
            degree = rng.randint(1, budget.degree_bound)
            coeffs = [field.zero] + [
                field.random_element(rng, bound=3) for _ in range(degree)
            ]
            if all(field.is_zero(c) for c in coeffs):
                continue
            inner = TruncatedSeries.exact_series(field, coeffs)
            if inner.is_exactly_zero():
                continue
            arc = parametrization.compose(inner)
            before = len(arcs)
            admit(arc)
            produced += 1 if len(arcs) > before else 0
        # Reparametrizations of the parametrization itself are always included.
        for n in range(1, 9):
            admit(parametrization.reparametrize(n))
    return arcs


def phi_sample(
    algebra: ReesAlgebra,
    center: Point,
    budget: SampleBudget,
    constraints=(),
    parametrization: Arc | None = None,
) -> list:
    """Sampled normalized contact orders: deduplicated by r_bar, sorted, finite only."""
    if not algebra.sing_member(center):
        raise NotInSingularLocus(f"sampling center {center} is not in Sing")
    recentered = algebra.translate(center)
    arcs = sample_arcs(algebra, center, budget, constraints, parametrization)
    by_value = {}
    for arc in arcs:
        result = normalized_contact(recentered, arc)
        if result.r == INF:
            continue
        by_value.setdefault(result.r_bar, result)
    if not by_value:
        raise EmptySample("no arc with finite contact order within the budget")
    return [by_value[value] for value in sorted(by_value)]


def integral_invariance_check(
    algebra: ReesAlgebra,
    extra: tuple,
    relation,
    arcs,
) -> bool:
    """Contact orders are unchanged by adjoining an integral element.

    `extra` is (h, n); `relation` lists the coefficients a_1 ... a_l of a
    monic dependence h^l + a_1 h^(l-1) + ... + a_l = 0 whose i-th entry is
    understood to carry weight n*i.  The identity is verified by polynomial
    arithmetic (DependenceInvalid otherwise); membership of the a_i in the
    algebra is the caller's assertion.
    """
    h, weight = extra
    relation = list(relation)
    if not relation:
        raise DependenceInvalid("empty dependence relation")
    length = len(relation)
    total = h**length
    for i, coefficient in enumerate(relation, start=1):
        total = total + coefficient * h ** (length - i)
    if not total.is_zero():
        raise DependenceInvalid(f"dependence relation sums to {total}, not 0")
    joined = algebra.odot(
        ReesAlgebra.of(algebra.variables, [(h, weight)], algebra.field)
    )
    return all(
        contact_order(algebra, arc) == contact_order(joined, arc) for arc in arcs
    )
