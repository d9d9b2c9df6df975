"""Free non-commutative polynomial algebra over the exact scalar ring.

Elements are canonical finite maps from words (tuples of generators) to
scalars; no zero coefficient is ever stored, so structural equality is
equality in the free algebra. Every derivative in this world is a
commutator map ``f -> [f, n]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .scalar import RatLike, Scalar


@dataclass(frozen=True, order=True)
class Generator:
    """A non-commuting symbol, identified by name, integer indices, formal
    partial-derivative indices, and a prime (dot-derivative) count."""

    name: str
    indices: tuple[int, ...] = ()
    derivs: tuple[int, ...] = ()
    primes: int = 0

    def __post_init__(self):
        # mixed formal partials commute: store the multi-index sorted
        object.__setattr__(self, "derivs", tuple(sorted(self.derivs)))

    def with_deriv(self, i: int) -> "Generator":
        return Generator(self.name, self.indices, self.derivs + (i,), self.primes)

    def text(self) -> str:
        s = self.name
        if self.indices or self.derivs:
            s += "_" + "".join(str(i) for i in self.indices)
            if self.derivs:
                s += "," + "".join(str(i) for i in self.derivs)
        return s + "'" * self.primes


Word = tuple[Generator, ...]

EMPTY_WORD: Word = ()


def word_text(w: Word) -> str:
    return "1" if not w else ".".join(g.text() for g in w)


def _word_key(w: Word):
    return (len(w), w)


class NcPoly:
    """Canonical element of the free algebra: finite map word -> scalar."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        canon: dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    canon[w] = c
        self._terms = canon

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "NcPoly":
        return NcPoly()

    @staticmethod
    def one() -> "NcPoly":
        return NcPoly({EMPTY_WORD: Scalar.one()})

    @staticmethod
    def from_scalar(s: Scalar | RatLike) -> "NcPoly":
        return NcPoly({EMPTY_WORD: Scalar.coerce(s)})

    @staticmethod
    def from_word(w: Word, coeff: Scalar | RatLike = 1) -> "NcPoly":
        return NcPoly({w: Scalar.coerce(coeff)})

    @staticmethod
    def gen(name: str, *indices: int, derivs: tuple[int, ...] = (), primes: int = 0) -> "NcPoly":
        g = Generator(name, tuple(indices), derivs, primes)
        return NcPoly({(g,): Scalar.one()})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "NcPoly") -> "NcPoly":
        terms = dict(self._terms)
        for w, c in other._terms.items():
            prev = terms.get(w)
            terms[w] = c if prev is None else prev + c
        return NcPoly(terms)

    def __neg__(self) -> "NcPoly":
        return NcPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other: "NcPoly | Scalar | RatLike") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return self.scaled(other)
        terms: dict[Word, Scalar] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                c = c1 * c2
                prev = terms.get(w)
                terms[w] = c if prev is None else prev + c
        return NcPoly(terms)

    def __rmul__(self, other: "Scalar | RatLike") -> "NcPoly":
        return self.scaled(other)

    def scaled(self, s: Scalar | RatLike) -> "NcPoly":
        s = Scalar.coerce(s)
        return NcPoly({w: c * s for w, c in self._terms.items()})

    def __truediv__(self, s: Scalar | RatLike) -> "NcPoly":
        return self.scaled(Scalar.coerce(s).inverse())

    def __pow__(self, n: int) -> "NcPoly":
        out = NcPoly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset((w, c) for w, c in self._terms.items()))

    def terms(self) -> Iterator[tuple[Word, Scalar]]:
        """Terms in graded lexicographic word order."""
        return iter(sorted(self._terms.items(), key=lambda t: _word_key(t[0])))

    def coeff(self, w: Word) -> Scalar:
        return self._terms.get(w, Scalar.zero())

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def generators(self) -> set[Generator]:
        return {g for w in self._terms for g in w}

    # -- text --------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.terms():
            ctxt = c.to_text()
            if not w:
                parts.append(ctxt if _is_plain(ctxt) else f"({ctxt})")
            elif c.is_one():
                parts.append(word_text(w))
            else:
                parts.append(f"({ctxt}) {word_text(w)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NcPoly({self.to_text()})"


def _is_plain(ctxt: str) -> bool:
    return " " not in ctxt and not ctxt.startswith("-")


def scale(s: Scalar | RatLike, a: NcPoly) -> NcPoly:
    return a.scaled(s)


def commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b - b * a


def derivation(n: NcPoly) -> Callable[[NcPoly], NcPoly]:
    """The commutator derivation f -> [f, n]; linear and Leibniz."""

    def nabla(f: NcPoly) -> NcPoly:
        return commutator(f, n)

    return nabla


def G(name: str, *indices: int, derivs: tuple[int, ...] = (), primes: int = 0) -> Generator:
    return Generator(name, tuple(indices), derivs, primes)
