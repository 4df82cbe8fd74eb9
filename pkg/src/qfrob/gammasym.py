"""Sparse polynomials in the odd-order derivative symbols G1, G3, G5, ...

Used for gamma-class coordinates and for solving Frobenius recursions
symbolically: G(2j+1) stands for the (2j+1)-st derivative at 0 of the
p-adic Gamma function, so results stay exact rational polynomials until a
prime and a precision are chosen.  Even-order derivatives never appear;
they are eliminated by the reflection identities before anything reaches
this ring.

A monomial is a tuple of (order, exponent) pairs sorted by order.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)


def _as_scalar(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


class GammaPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    self.terms[mono] = c

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "GammaPoly":
        return cls()

    @classmethod
    def one(cls) -> "GammaPoly":
        return cls({(): Fraction(1)})

    @classmethod
    def const(cls, c) -> "GammaPoly":
        f = _as_scalar(c)
        if f is None:
            raise TypeError(f"not a rational: {c!r}")
        return cls({(): f})

    @classmethod
    def symbol(cls, order: int, exponent: int = 1) -> "GammaPoly":
        if order < 1 or order % 2 == 0:
            raise ValueError(f"derivative symbols have odd order >= 1, got {order}")
        if exponent < 1:
            raise ValueError("exponent must be positive")
        return cls({((order, exponent),): Fraction(1)})

    # -- ring operations -----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GammaPoly):
            return other
        f = _as_scalar(other)
        if f is None:
            return None
        return GammaPoly({(): f})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in o.terms.items():
            s = out.get(mono, _ZERO) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return GammaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return GammaPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    @staticmethod
    def _mono_mul(a: tuple, b: tuple) -> tuple:
        exps = {}
        for order, e in a:
            exps[order] = exps.get(order, 0) + e
        for order, e in b:
            exps[order] = exps.get(order, 0) + e
        return tuple(sorted(exps.items()))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                mono = self._mono_mul(ma, mb)
                s = out.get(mono, _ZERO) + ca * cb
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return GammaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        f = _as_scalar(other)
        if f is None:
            return NotImplemented
        return self * (1 / f)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = GammaPoly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- predicates and access ------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def is_const(self) -> bool:
        return all(m == () for m in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms.get((), _ZERO)

    def orders(self) -> tuple:
        out = set()
        for mono in self.terms:
            for order, _ in mono:
                out.add(order)
        return tuple(sorted(out))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    # -- evaluation -----------------------------------------------------

    def evaluate(self, values: dict):
        """Substitute values (Fraction or ApproxPadic) for the symbols."""
        total = 0
        for mono, c in self.sorted_terms():
            term = c
            for order, e in mono:
                if order not in values:
                    raise ValueError(f"no value supplied for derivative order {order}")
                term = term * values[order] ** e
            total = total + term
        return total if not isinstance(total, int) else _ZERO

    def __repr__(self):
        if not self.terms:
            return "GammaPoly(0)"
        bits = []
        for mono, c in self.sorted_terms():
            factors = [str(c)]
            for order, e in mono:
                factors.append(f"G{order}" + (f"^{e}" if e > 1 else ""))
            bits.append("*".join(factors))
        return "GammaPoly(" + " + ".join(bits) + ")"
