"""Polynomials over Q in named parameters, with exact coefficients.

ParamPoly is a thin immutable wrapper around {exponent tuple: Fraction}.
Arithmetic interoperates with plain ints and Fractions, so series and
Laurent-polynomial code can hold either numbers or ParamPoly coefficients
without special cases.  Zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


class ParamPoly:
    __slots__ = ("params", "terms")

    def __init__(self, params, terms):
        object.__setattr__(self, "params", tuple(params))
        clean = {}
        for e, c in dict(terms).items():
            c = _as_fraction(c)
            if c != 0:
                e = tuple(int(k) for k in e)
                if len(e) != len(self.params):
                    raise ValueError("exponent arity does not match parameters")
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("ParamPoly is immutable")

    @classmethod
    def constant(cls, value, params=()):
        params = tuple(params)
        z = (0,) * len(params)
        return cls(params, {z: _as_fraction(value)})

    @classmethod
    def variable(cls, name, params):
        params = tuple(params)
        e = tuple(1 if p == name else 0 for p in params)
        if sum(e) != 1:
            raise ValueError(f"unknown parameter {name!r}")
        return cls(params, {e: Fraction(1)})

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(k == 0 for k in e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        z = (0,) * len(self.params)
        return self.terms.get(z, Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _aligned(a, b):
        """Bring two operands onto one parameter list (constants promote)."""
        if not isinstance(b, ParamPoly):
            return a, ParamPoly.constant(_as_fraction(b), a.params)
        if a.params == b.params:
            return a, b
        if b.is_constant():
            return a, ParamPoly.constant(b.constant_value(), a.params)
        if a.is_constant():
            return ParamPoly.constant(a.constant_value(), b.params), b
        raise ValueError("parameter lists differ")

    def __add__(self, other):
        a, b = ParamPoly._aligned(self, other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return ParamPoly(a.params, out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, ParamPoly) else -_as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = ParamPoly._aligned(self, other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return ParamPoly(a.params, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = ParamPoly.constant(1, self.params)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            if self.params == other.params:
                return self.terms == other.terms
            if self.is_constant() and other.is_constant():
                return self.constant_value() == other.constant_value()
            return False
        if isinstance(other, (int, Fraction, Rational)):
            return self.is_constant() and self.constant_value() == _as_fraction(other)
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.params, frozenset(self.terms.items())))

    # -- substitution -------------------------------------------------------

    def substitute(self, assignments):
        """Substitute rational values for a subset of the parameters.

        Returns a ParamPoly in the remaining parameters (possibly constant).
        """
        assignments = {k: _as_fraction(v) for k, v in assignments.items()}
        unknown = set(assignments) - set(self.params)
        if unknown:
            raise ValueError(f"unknown parameters {sorted(unknown)}")
        keep = [i for i, p in enumerate(self.params) if p not in assignments]
        out = {}
        for e, c in self.terms.items():
            val = c
            for i, p in enumerate(self.params):
                if p in assignments:
                    val *= assignments[p] ** e[i]
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, Fraction(0)) + val
        return ParamPoly(tuple(self.params[i] for i in keep), out)

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.params, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(c) + "*" + "*".join(factors))
        s = " + ".join(parts).replace("+ -", "- ")
        return s

    __repr__ = __str__


def coeff_is_constant(c):
    """True when a mixed coefficient (number or ParamPoly) is parameter-free."""
    if isinstance(c, ParamPoly):
        return c.is_constant()
    return True


def coeff_value(c):
    if isinstance(c, ParamPoly):
        return c.constant_value()
    return _as_fraction(c)


def coeff_substitute(c, assignments):
    """Substitute into a mixed coefficient; collapses constants to Fraction."""
    if isinstance(c, ParamPoly):
        out = c.substitute(assignments)
        return out.constant_value() if not out.params else out
    return _as_fraction(c)


def parse_coeff(text, params):
    """Parse a JSON coefficient string: a rational literal or a parameter name."""
    text = str(text).strip()
    if text in params:
        return ParamPoly.variable(text, params)
    try:
        return Fraction(text)
    except ValueError:
        raise ValueError(f"cannot parse coefficient {text!r}") from None
