"""Exact integer Laurent polynomials in a single variable.

Coefficients are Python ints, exponents may be negative.  This is the
arithmetic backbone for the bracket/Jones computations, so everything
here stays exact; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Tuple

__all__ = ["LaurentPoly"]


class LaurentPoly:
    """An integer Laurent polynomial ``sum(c_e * X**e)``.

    Immutable once built.  The variable name only matters for display;
    arithmetic is name-agnostic.
    """

    __slots__ = ("_coeffs", "variable")

    def __init__(self, coeffs: Dict[int, int] | None = None, variable: str = "t"):
        clean: Dict[int, int] = {}
        if coeffs:
            for exp, c in coeffs.items():
                if c:
                    clean[int(exp)] = clean.get(int(exp), 0) + int(c)
        self._coeffs = {e: c for e, c in clean.items() if c}
        self.variable = variable

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variable: str = "t") -> "LaurentPoly":
        return cls({}, variable)

    @classmethod
    def one(cls, variable: str = "t") -> "LaurentPoly":
        return cls({0: 1}, variable)

    @classmethod
    def monomial(cls, coeff: int, exp: int, variable: str = "t") -> "LaurentPoly":
        return cls({exp: coeff}, variable)

    # -- basic queries -------------------------------------------------

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._coeffs.items()))

    def coeff(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def min_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponent range")
        return min(self._coeffs)

    @property
    def max_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponent range")
        return max(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._coeffs.items())))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.variable)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.variable)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()}, self.variable)

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.variable)
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly({0: other}, self.variable) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(
                {e: c * other for e, c in self._coeffs.items()}, self.variable
            )
        out: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.variable)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.unit_monomial_power(k)
        out = LaurentPoly.one(self.variable)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def unit_monomial_power(self, k: int) -> "LaurentPoly":
        """Raise a ``+-X**e`` monomial to any integer power, including negative."""
        if len(self._coeffs) != 1:
            raise ValueError("not a monomial")
        ((e, c),) = self._coeffs.items()
        if c not in (1, -1):
            raise ValueError("not a unit monomial")
        return LaurentPoly({e * k: -1 if (c == -1 and k % 2) else 1}, self.variable)

    def shift(self, delta: int) -> "LaurentPoly":
        """Multiply by X**delta."""
        return LaurentPoly({e + delta: c for e, c in self._coeffs.items()}, self.variable)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide by ``other``, raising if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.variable)
        rem = dict(self._coeffs)
        out: Dict[int, int] = {}
        lead_e = other.max_exp
        lead_c = other._coeffs[lead_e]
        # an exact quotient cannot reach below this exponent
        q_floor = self.min_exp - other.min_exp
        while rem:
            e = max(rem)
            c = rem[e]
            if c % lead_c:
                raise ValueError("inexact Laurent division")
            q_e, q_c = e - lead_e, c // lead_c
            if q_e < q_floor:
                raise ValueError("inexact Laurent division")
            out[q_e] = out.get(q_e, 0) + q_c
            for oe, oc in other._coeffs.items():
                ne = oe + q_e
                nv = rem.get(ne, 0) - oc * q_c
                if nv:
                    rem[ne] = nv
                else:
                    rem.pop(ne, None)
        return LaurentPoly(out, self.variable)

    # -- evaluation / substitution --------------------------------------

    def eval_int(self, x: int) -> Fraction:
        """Evaluate at a nonzero integer, exactly."""
        if x == 0:
            raise ValueError("cannot evaluate Laurent polynomial at 0")
        total = Fraction(0)
        for e, c in self._coeffs.items():
            total += Fraction(c) * (Fraction(x) ** e)
        return total

    def subst_power(self, k: int, variable: str | None = None) -> "LaurentPoly":
        """Substitute ``X -> Y**(1/k)``: requires every exponent divisible by k."""
        out: Dict[int, int] = {}
        for e, c in self._coeffs.items():
            if e % k:
                raise ValueError(f"exponent {e} not divisible by {k}")
            out[e // k] = c
        return LaurentPoly(out, variable or self.variable)

    def mirror(self) -> "LaurentPoly":
        """Substitute ``X -> X**-1``."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()}, self.variable)

    # -- serialization ---------------------------------------------------

    def serialize(self) -> str:
        """Canonical text form: ``c*t^e`` terms sorted by ascending exponent.

        The zero polynomial serializes as ``0``.
        """
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self._coeffs.items()):
            parts.append(f"{c:+d}*{self.variable}^{e}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    @classmethod
    def parse(cls, text: str, variable: str = "t") -> "LaurentPoly":
        text = text.strip().replace(" ", "")
        if text in ("0", ""):
            return cls.zero(variable)
        # Normalize leading sign, then split on sign boundaries of terms.
        if text[0] not in "+-":
            text = "+" + text
        terms: Dict[int, int] = {}
        i = 0
        while i < len(text):
            j = i + 1
            # a sign right after '^' belongs to the exponent
            while j < len(text) and (text[j] not in "+-" or text[j - 1] == "^"):
                j += 1
            term = text[i:j]
            body = term[1:]
            sign = -1 if term[0] == "-" else 1
            if "*" not in body:
                raise ValueError(f"malformed polynomial term: {term!r}")
            coeff_s, var_s = body.split("*", 1)
            if not var_s.startswith(variable + "^"):
                raise ValueError(f"malformed polynomial term: {term!r}")
            exp = int(var_s[len(variable) + 1 :])
            terms[exp] = terms.get(exp, 0) + sign * int(coeff_s)
            i = j
        return cls(terms, variable)

    def __repr__(self) -> str:  # pragma: no cover
        return f"LaurentPoly({self.serialize()!r})"


def _sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    total = LaurentPoly.zero()
    for p in polys:
        total = total + p
    return total
