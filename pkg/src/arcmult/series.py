"""Truncated univariate power series in t, and arcs.

A TruncatedSeries stores coefficients 0..precision-1 plus an `exact` flag:
exact means every omitted coefficient is genuinely zero (the series is a
polynomial, fully stored).  The distinction is load-bearing: order INF
requires exactness, while an all-zero truncated series has *indeterminate*
order and raises PrecisionExhausted instead of silently passing for zero.

An Arc assigns one series to each ambient variable; components always have
zero constant term (arcs are stored recentered at the current chart origin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .errors import (
    DivisionOrderError,
    EngineError,
    InvalidArc,
    PrecisionExhausted,
    VariableMismatch,
)
from .fields import INF, FieldSpec, ensure_same_field
from .poly import MultiPoly, parse_poly

#: Default coefficient budget for non-terminating divisions and expansions.
DEFAULT_PRECISION = 64


@dataclass(frozen=True)
class TruncatedSeries:
    field: FieldSpec
    coeffs: tuple
    precision: int
    exact: bool

    def __post_init__(self):
        if self.precision < 1:
            raise EngineError("series precision must be at least 1")

    # -- constructors ------------------------------------------------------------

    @classmethod
    def exact_series(cls, field: FieldSpec, coeffs) -> "TruncatedSeries":
        values = [field.coerce(c) for c in coeffs]
        while values and field.is_zero(values[-1]):
            values.pop()
        return cls(field, tuple(values), max(len(values), 1), True)

    @classmethod
    def _exact_trusted(cls, field: FieldSpec, values: list) -> "TruncatedSeries":
        # Internal: values are already field elements.
        while values and values[-1] == 0:
            values.pop()
        return cls(field, tuple(values), max(len(values), 1), True)

    @classmethod
    def truncated(cls, field: FieldSpec, coeffs, precision: int) -> "TruncatedSeries":
        values = [field.coerce(c) for c in coeffs][:precision]
        values += [field.zero] * (precision - len(values))
        return cls(field, tuple(values), precision, False)

    @classmethod
    def zero(cls, field: FieldSpec) -> "TruncatedSeries":
        return cls.exact_series(field, ())

    @classmethod
    def t_power(cls, field: FieldSpec, k: int, coeff=1) -> "TruncatedSeries":
        return cls.exact_series(field, [field.zero] * k + [field.coerce(coeff)])

    # -- queries -----------------------------------------------------------------

    def coefficient(self, i: int):
        if i < len(self.coeffs):
            return self.coeffs[i]
        if self.exact:
            return self.field.zero
        raise PrecisionExhausted(f"coefficient {i} beyond precision {self.precision}")

    def effective_precision(self):
        return INF if self.exact else self.precision

    def is_exactly_zero(self) -> bool:
        return self.exact and not self.coeffs

    def known_order(self):
        """First nonzero index, INF for exact zero, None when indeterminate."""
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return i
        return INF if self.exact else None

    def order(self):
        """First nonzero index; raises PrecisionExhausted when indeterminate."""
        result = self.known_order()
        if result is None:
            raise PrecisionExhausted(
                f"series is zero up to t^{self.precision}; order indeterminate"
            )
        return result

    def order_lower_bound(self):
        result = self.known_order()
        return self.precision if result is None else result

    # -- arithmetic -----------------------------------------------------------------

    def _check(self, other: "TruncatedSeries"):
        ensure_same_field(self.field, other.field)

    def __add__(self, other):
        self._check(other)
        field = self.field
        if self.exact and other.exact:
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            coeffs = list(a)
            for i, c in enumerate(b):
                coeffs[i] = field.add(coeffs[i], c)
            return TruncatedSeries._exact_trusted(field, coeffs)
        prec = min(self.effective_precision(), other.effective_precision())
        prec = int(prec)
        coeffs = [
            field.add(self.coefficient(i), other.coefficient(i)) for i in range(prec)
        ]
        return TruncatedSeries.truncated(field, coeffs, prec)

    def __neg__(self):
        field = self.field
        coeffs = tuple(field.neg(c) for c in self.coeffs)
        return TruncatedSeries(field, coeffs, self.precision, self.exact)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value) -> "TruncatedSeries":
        field = self.field
        value = field.coerce(value)
        if field.is_zero(value):
            if self.exact:
                return TruncatedSeries.zero(field)
            return TruncatedSeries.truncated(field, (), self.precision)
        coeffs = tuple(field.mul(c, value) for c in self.coeffs)
        return TruncatedSeries(field, coeffs, self.precision, self.exact)

    def __mul__(self, other):
        self._check(other)
        field = self.field
        if self.is_exactly_zero() or other.is_exactly_zero():
            return TruncatedSeries.zero(field)
        if self.exact and other.exact:
            if field.characteristic == 0:
                # Clear denominators once: integer convolution avoids per-op gcd.
                da = math.lcm(*(c.denominator for c in self.coeffs))
                db = math.lcm(*(c.denominator for c in other.coeffs))
                ints_a = [c.numerator * (da // c.denominator) for c in self.coeffs]
                ints_b = [c.numerator * (db // c.denominator) for c in other.coeffs]
                n = len(ints_a) + len(ints_b) - 1
                raw = [0] * n
                for i, a in enumerate(ints_a):
                    if a:
                        for j, b in enumerate(ints_b):
                            if b:
                                raw[i + j] += a * b
                scale = da * db
                coeffs = [Fraction(v, scale) for v in raw]
                return TruncatedSeries._exact_trusted(field, coeffs)
            n = len(self.coeffs) + len(other.coeffs) - 1
            coeffs = [field.zero] * n
            for i, a in enumerate(self.coeffs):
                if field.is_zero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    if b != 0:
                        coeffs[i + j] = field.add(coeffs[i + j], field.mul(a, b))
            return TruncatedSeries._exact_trusted(field, coeffs)
        # Known coefficients of the product reach min(prec_a + ord_b, prec_b + ord_a).
        prec = min(
            self.effective_precision() + other.order_lower_bound(),
            other.effective_precision() + self.order_lower_bound(),
        )
        prec = max(int(prec), 1)
        coeffs = [field.zero] * prec
        for i, a in enumerate(self.coeffs):
            if field.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= prec:
                    break
                coeffs[i + j] = field.add(coeffs[i + j], field.mul(a, b))
        return TruncatedSeries.truncated(field, coeffs, prec)

    def __pow__(self, n: int):
        if n < 0:
            raise EngineError("negative series power")
        result = TruncatedSeries.exact_series(self.field, (self.field.one,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divide(self, other: "TruncatedSeries", fallback_precision: int = DEFAULT_PRECISION):
        """Series division; requires order(divisor) <= order(dividend)."""
        self._check(other)
        field = self.field
        if other.is_exactly_zero():
            raise DivisionOrderError("division by the zero series")
        divisor_order = other.order()  # PrecisionExhausted if indeterminate
        dividend_order = self.known_order()
        if dividend_order == INF:
            return TruncatedSeries.zero(field)
        if dividend_order is None:
            # All stored coefficients vanish: quotient is zero to reduced precision.
            prec = self.precision - divisor_order
            if prec < 1:
                raise PrecisionExhausted("no precision left after division")
            return TruncatedSeries.truncated(field, (), prec)
        if dividend_order < divisor_order:
            raise DivisionOrderError(
                f"divisor order {divisor_order} exceeds dividend order {dividend_order}"
            )
        prec = min(self.effective_precision(), other.effective_precision())
        if prec == INF:
            # Exact inputs: polynomial division, exact result only on zero remainder.
            a = list(self.coeffs[divisor_order:])
            b = list(other.coeffs[divisor_order:])
            quotient = _series_quotient(field, a, b, max(len(a), 1))
            while quotient and field.is_zero(quotient[-1]):
                quotient.pop()
            product = _poly_mul(field, quotient, b)
            n = max(len(product), len(a))
            if _pad(field, product, n) == _pad(field, a, n):
                return TruncatedSeries.exact_series(field, quotient)
            out = int(fallback_precision)
            return TruncatedSeries.truncated(
                field, _series_quotient(field, a, b, out), out
            )
        out = int(prec) - divisor_order
        if out < 1:
            raise PrecisionExhausted("no precision left after division")
        a = [self.coefficient(i + divisor_order) for i in range(out)]
        b = [other.coefficient(i + divisor_order) for i in range(out)]
        return TruncatedSeries.truncated(field, _series_quotient(field, a, b, out), out)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute t -> inner(t); inner must have zero constant term."""
        self._check(inner)
        field = self.field
        if not field.is_zero(inner.coefficient(0)):
            raise EngineError("composition requires inner series with zero constant term")
        if self.exact and inner.exact:
            result = TruncatedSeries.zero(field)
            for c in reversed(self.coeffs):
                result = result * inner + TruncatedSeries.exact_series(field, (c,))
            return result
        prec = int(min(self.effective_precision(), inner.effective_precision()))
        result = TruncatedSeries.truncated(field, (), prec)
        for c in reversed(self.coeffs):
            result = result * inner + TruncatedSeries.truncated(field, (c,), prec)
        coeffs = [result.coefficient(i) for i in range(min(prec, len(result.coeffs)))]
        return TruncatedSeries.truncated(field, coeffs, prec)

    def reparametrize(self, n: int) -> "TruncatedSeries":
        """Substitute t -> t^n (n >= 1): every exponent is multiplied by n."""
        if n < 1:
            raise EngineError("reparametrization requires n >= 1")
        if n == 1:
            return self
        field = self.field
        coeffs = [field.zero] * (len(self.coeffs) * n)
        for i, c in enumerate(self.coeffs):
            coeffs[i * n] = c
        if self.exact:
            return TruncatedSeries.exact_series(field, coeffs)
        return TruncatedSeries.truncated(field, coeffs, self.precision * n)

    # -- display -----------------------------------------------------------------------

    def __str__(self):
        field = self.field
        parts = []
        for i, c in enumerate(self.coeffs):
            if field.is_zero(c):
                continue
            negative = field.characteristic == 0 and c < 0
            magnitude = -c if negative else c
            if i == 0:
                body = field.element_str(magnitude)
            else:
                t = "t" if i == 1 else f"t^{i}"
                body = t if magnitude == field.one else f"{field.element_str(magnitude)}*{t}"
            if not parts:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        if not parts:
            return "0"
        text = " ".join(parts)
        if not self.exact:
            text += f" + O(t^{self.precision})"
        return text

    def __repr__(self):
        return f"TruncatedSeries({self})"


def _pad(field, values, n):
    return list(values) + [field.zero] * max(0, n - len(values))


def _poly_mul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


def _series_quotient(field, a, b, n):
    """First n coefficients of (sum a_i t^i) / (sum b_i t^i) with b_0 a unit."""
    a = _pad(field, a, n)
    b = _pad(field, b, n)
    inverse_lead = field.inv(b[0])
    q = []
    for k in range(n):
        acc = a[k]
        for i in range(k):
            acc = field.sub(acc, field.mul(q[i], b[k - i]))
        q.append(field.mul(acc, inverse_lead))
    return q


def parse_series(text: str, field: FieldSpec) -> TruncatedSeries:
    """Parse polynomial-in-t text like "t^3 + 2*t^5" into an exact series."""
    poly = parse_poly(text, ("t",), field)
    degree = poly.total_degree()
    coeffs = [field.zero] * (degree + 1 if degree >= 0 else 0)
    for exps, coeff in poly.terms.items():
        coeffs[exps[0]] = coeff
    return TruncatedSeries.exact_series(field, coeffs)


# -- arcs ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    """An assignment of a series (zero constant term) to each ambient variable."""

    variables: tuple
    components: tuple
    field: FieldSpec = dataclass_field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "components", tuple(self.components))
        if self.field is None:
            if not self.components:
                raise InvalidArc("arc needs at least one component")
            object.__setattr__(self, "field", self.components[0].field)
        if len(self.variables) != len(self.components):
            raise VariableMismatch(
                f"{len(self.components)} components for variables {self.variables}"
            )
        for comp in self.components:
            ensure_same_field(comp.field, self.field)
            if not self.field.is_zero(comp.coefficient(0)):
                raise InvalidArc("arc components must have zero constant term")
        if all(comp.known_order() is INF for comp in self.components):
            raise InvalidArc("arc must have at least one nonzero component")

    def component(self, name: str) -> TruncatedSeries:
        return self.components[self.variables.index(name)]

    def order(self) -> int:
        """nu_t: minimal t-order over the components."""
        best = INF
        for comp in self.components:
            known = comp.known_order()
            if known is not None and known < best:
                best = known
        for comp in self.components:
            if comp.known_order() is None and comp.order_lower_bound() < best:
                raise PrecisionExhausted("arc order indeterminate at this precision")
        if best is INF:
            raise InvalidArc("arc must have at least one nonzero component")
        return best

    def reparametrize(self, n: int) -> "Arc":
        return Arc(self.variables, tuple(c.reparametrize(n) for c in self.components), self.field)

    def compose(self, inner: TruncatedSeries) -> "Arc":
        return Arc(self.variables, tuple(c.compose(inner) for c in self.components), self.field)

    def project(self, variables) -> "Arc":
        """Arc induced on a coordinate subspace (a smooth projection)."""
        return Arc(
            tuple(variables),
            tuple(self.component(name) for name in variables),
            self.field,
        )

    def __str__(self):
        return ", ".join(
            f"{name} -> {comp}" for name, comp in zip(self.variables, self.components)
        )


def arc_order(arc: Arc) -> int:
    return arc.order()


def reparametrize(arc: Arc, n: int) -> Arc:
    return arc.reparametrize(n)


class ArcPowers:
    """Cache of component powers, shareable across generator evaluations."""

    def __init__(self, arc: Arc):
        self.arc = arc
        self._cache: dict = {}

    def power(self, index: int, exponent: int) -> TruncatedSeries:
        key = (index, exponent)
        cached = self._cache.get(key)
        if cached is None:
            if exponent == 1:
                cached = self.arc.components[index]
            else:
                half = self.power(index, exponent // 2)
                cached = half * half
                if exponent & 1:
                    cached = cached * self.arc.components[index]
            self._cache[key] = cached
        return cached


def arc_substitute(poly: MultiPoly, arc: Arc, powers: ArcPowers | None = None) -> TruncatedSeries:
    """Evaluate a polynomial along an arc: phi(f) in K[[t]]."""
    ensure_same_field(poly.field, arc.field)
    if poly.variables != arc.variables:
        raise VariableMismatch(
            f"polynomial variables {poly.variables} vs arc variables {arc.variables}"
        )
    field = poly.field
    if powers is None:
        powers = ArcPowers(arc)
    total = TruncatedSeries.zero(field)
    for exps, coeff in poly.terms.items():
        term = TruncatedSeries.exact_series(field, (coeff,))
        for i, e in enumerate(exps):
            if e:
                term = term * powers.power(i, e)
        total = total + term
    return total


def series_order(series: TruncatedSeries):
    return series.order()
