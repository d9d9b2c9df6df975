"""Exact scalar arithmetic for the algebra kernel.

A scalar is a finite sum of terms, each term a Gaussian rational (pair of
exact ``Fraction`` values, real and imaginary) times a Laurent monomial in
named commuting parameter symbols such as ``hbar``, ``m``, ``dt``, ``tau``.
Nothing here ever rounds: all arithmetic is exact, and division is supported
whenever the divisor is a single invertible term.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

RatLike = Union[int, Fraction]

# A parameter monomial: sorted tuple of (name, exponent), exponents nonzero.
Monomial = tuple[tuple[str, int], ...]

_EMPTY: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[str, int] = dict(a)
    for name, e in b:
        new = exps.get(name, 0) + e
        if new:
            exps[name] = new
        else:
            del exps[name]
    return tuple(sorted(exps.items()))


def _mono_inv(a: Monomial) -> Monomial:
    return tuple((name, -e) for name, e in a)


def _mono_text(a: Monomial) -> str:
    parts = []
    for name, e in a:
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)


class Scalar:
    """Element of the coefficient ring: Gaussian rationals extended by
    central parameter symbols with integer exponents.

    Values are immutable and structurally canonical: zero coefficients are
    never stored and exponent zero never appears in a monomial, so ``==``
    is mathematical equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, tuple[Fraction, Fraction]] | None = None):
        canon: dict[Monomial, tuple[Fraction, Fraction]] = {}
        if terms:
            for mono, (re, im) in terms.items():
                if re or im:
                    canon[mono] = (re, im)
        self._terms = canon

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Scalar":
        return Scalar()

    @staticmethod
    def one() -> "Scalar":
        return Scalar({_EMPTY: (Fraction(1), Fraction(0))})

    @staticmethod
    def rational(p: RatLike, q: RatLike = 1) -> "Scalar":
        return Scalar({_EMPTY: (Fraction(p) / Fraction(q), Fraction(0))})

    @staticmethod
    def gaussian(re: RatLike, im: RatLike) -> "Scalar":
        return Scalar({_EMPTY: (Fraction(re), Fraction(im))})

    @staticmethod
    def imag_unit() -> "Scalar":
        return Scalar({_EMPTY: (Fraction(0), Fraction(1))})

    @staticmethod
    def param(name: str, exp: int = 1, coeff: RatLike = 1) -> "Scalar":
        if exp == 0:
            return Scalar.rational(coeff)
        return Scalar({((name, exp),): (Fraction(coeff), Fraction(0))})

    @staticmethod
    def coerce(value: "Scalar | RatLike") -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar.rational(value)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {_EMPTY: (Fraction(1), Fraction(0))}

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Scalar | RatLike") -> "Scalar":
        other = Scalar.coerce(other)
        terms = dict(self._terms)
        for mono, (re, im) in other._terms.items():
            cre, cim = terms.get(mono, (Fraction(0), Fraction(0)))
            terms[mono] = (cre + re, cim + im)
        return Scalar(terms)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({m: (-re, -im) for m, (re, im) in self._terms.items()})

    def __sub__(self, other: "Scalar | RatLike") -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: "Scalar | RatLike") -> "Scalar":
        return Scalar.coerce(other) + (-self)

    def __mul__(self, other: "Scalar | RatLike") -> "Scalar":
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        terms: dict[Monomial, tuple[Fraction, Fraction]] = {}
        for m1, (a, b) in self._terms.items():
            for m2, (c, d) in other._terms.items():
                mono = _mono_mul(m1, m2)
                re, im = terms.get(mono, (Fraction(0), Fraction(0)))
                terms[mono] = (re + a * c - b * d, im + a * d + b * c)
        return Scalar(terms)

    __rmul__ = __mul__

    def __truediv__(self, other: "Scalar | RatLike") -> "Scalar":
        return self * Scalar.coerce(other).inverse()

    def inverse(self) -> "Scalar":
        """Exact inverse; only single-term scalars are invertible here."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(
                "scalar division requires a nonzero single-term divisor"
            )
        (mono, (a, b)), = self._terms.items()
        norm = a * a + b * b
        return Scalar({_mono_inv(mono): (a / norm, -b / norm)})

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar.one()
        for _ in range(n):
            out = out * self
        return out

    # -- structure ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.rational(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def terms(self) -> Iterable[tuple[Monomial, tuple[Fraction, Fraction]]]:
        return sorted(self._terms.items())

    def substitute_square(self, name: str, replacement: "Scalar") -> "Scalar":
        """Replace param^(2k) by replacement^k; every exponent must be even."""
        out = Scalar.zero()
        for mono, (re, im) in self._terms.items():
            rest: list[tuple[str, int]] = []
            power = 0
            for pname, e in mono:
                if pname == name:
                    if e % 2:
                        raise ValueError(f"odd exponent on {name!r}")
                    power = e // 2
                else:
                    rest.append((pname, e))
            term = Scalar({tuple(rest): (re, im)})
            out = out + term * replacement ** power
        return out

    # -- text --------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, (re, im) in self.terms():
            parts.append(_term_text(mono, re, im))
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()})"


def _gaussian_text(re: Fraction, im: Fraction) -> str:
    if not im:
        return str(re)
    if not re:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{im}i"
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    itxt = "i" if mag == 1 else f"{mag}i"
    return f"({re} {sign} {itxt})"


def _term_text(mono: Monomial, re: Fraction, im: Fraction) -> str:
    gtxt = _gaussian_text(re, im)
    if not mono:
        return gtxt
    mtxt = _mono_text(mono)
    if (re, im) == (1, 0):
        return mtxt
    if (re, im) == (-1, 0):
        return "-" + mtxt
    return f"{gtxt} {mtxt}"


ZERO = Scalar.zero()
ONE = Scalar.one()
I = Scalar.imag_unit()
