"""Symmetrized operator products and the constraint hierarchy.

The symmetrizer averages a product over all orderings of its factors; it is
the correspondence rule taking classical monomials to operators. Asking the
operator image of each classical derivative formula to match the operator
derivative produces a tower of constraints, each equivalent to a commutator
equation. The classical side lives in a small commutative polynomial ring
whose derivation d(theta) = h theta, d(h^(k)) = h^(k+1) generates the
derivative tower.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Mapping, Sequence

from .ncpoly import G, NcPoly, commutator
from .quotient import ABC, Q, P, RewriteSystem, flat_with_functions, reduce_poly
from .scalar import Scalar


def symmetrize(factors: Sequence[NcPoly]) -> NcPoly:
    """Average of the product over all orderings of the factor list."""
    if not factors:
        raise ValueError("symmetrize needs at least one factor")
    n = len(factors)
    out = NcPoly.zero()
    for order in permutations(range(n)):
        prod = NcPoly.one()
        for k in order:
            prod = prod * factors[k]
        out = out + prod
    return out / Scalar.rational(factorial(n))


# -- second constraint -------------------------------------------------------

def second_constraint_residual(theta: NcPoly, h: NcPoly) -> NcPoly:
    """{T H H} - {{T H} H} - (1/12) [[T, H], H]; zero in the free algebra,
    so the symmetrized constraint is the commutator equation [[T,H],H] = 0."""
    lhs = symmetrize([theta, h, h]) - symmetrize([symmetrize([theta, h]), h])
    return lhs - commutator(commutator(theta, h), h) / Scalar.rational(12)


def requirement_form_residual(theta: NcPoly, h: NcPoly) -> NcPoly:
    """T H^2 + H^2 T - 2 H T H equals [[T, H], H] identically."""
    direct = theta * h * h + h * h * theta - (h * theta * h).scaled(2)
    return direct - commutator(commutator(theta, h), h)


@dataclass(frozen=True)
class AbcIdentity:
    """Reduction of {ABC} - {A{BC}} under AB = BA, ACB = BCA."""

    reduced_difference: NcPoly      # should be (1/12)(ABC - 2 ACB + CAB)
    intermediate_residual: NcPoly   # difference minus that display
    commutator_residual: NcPoly     # difference minus (1/12)[A,[B,C]], reduced

    def ok(self) -> bool:
        return self.intermediate_residual.is_zero() and self.commutator_residual.is_zero()


def symmetrizer_commutator_identity(system: RewriteSystem = ABC) -> AbcIdentity:
    a, b, c = NcPoly.gen("A"), NcPoly.gen("B"), NcPoly.gen("C")
    diff = symmetrize([a, b, c]) - symmetrize([a, symmetrize([b, c])])
    reduced = reduce_poly(diff, system)
    display = (a * b * c - (a * c * b).scaled(2) + c * a * b) / Scalar.rational(12)
    bracket = commutator(a, commutator(b, c)) / Scalar.rational(12)
    return AbcIdentity(
        reduced_difference=reduced,
        intermediate_residual=reduced - reduce_poly(display, system),
        commutator_residual=reduced - reduce_poly(bracket, system),
    )


# -- third constraint --------------------------------------------------------

@dataclass(frozen=True)
class ThirdConstraint:
    expansion_double: NcPoly   # [H^2,[H,T]] minus its displayed expansion
    expansion_dotted: NcPoly   # [Hdot,[H,T]] - 2[H,[Hdot,T]] minus its expansion
    ratio: Fraction | None     # c with {T'''} - {T''}^dot = c * commutator form
    ratio_residual: NcPoly     # global residual after fitting c

    def ok(self) -> bool:
        return (self.expansion_double.is_zero() and self.expansion_dotted.is_zero()
                and self.ratio is not None and self.ratio != 0
                and self.ratio_residual.is_zero())


def third_constraint_check(theta: NcPoly, h: NcPoly, hdot: NcPoly,
                           hddot: NcPoly | None = None) -> ThirdConstraint:
    if hddot is None:
        hddot = NcPoly.gen("H", primes=2)

    hh = h * h
    exp1 = commutator(hh, commutator(h, theta)) - (
        h * h * h * theta - h * h * theta * h - h * theta * h * h + theta * h * h * h
    )
    exp2 = (commutator(hdot, commutator(h, theta))
            - commutator(h, commutator(hdot, theta)).scaled(2)) - (
        hdot * h * theta + hdot * theta * h + h * theta * hdot + theta * h * hdot
        - (h * hdot * theta + theta * hdot * h).scaled(2)
    )

    # symmetrized third derivative, straight from the classical tower
    tower = derivative_tower(3)
    sym_third = symmetrized_level(tower[2], theta, [h, hdot, hddot])
    sym_second_dotted = symmetrized_level_dot(tower[1], theta, [h, hdot, hddot])
    diff = sym_third - sym_second_dotted

    target = (commutator(hh, commutator(h, theta))
              - commutator(hdot, commutator(h, theta))
              + commutator(h, commutator(hdot, theta)).scaled(2))

    ratio = _match_ratio(diff, target)
    if ratio is None:
        ratio_residual = diff
    else:
        ratio_residual = diff - target.scaled(Scalar.rational(ratio))
    return ThirdConstraint(exp1, exp2, ratio, ratio_residual)


def _match_ratio(diff: NcPoly, target: NcPoly) -> Fraction | None:
    """Solve diff = c * target from the first common word, if any."""
    for w, c in target.terms():
        d = diff.coeff(w)
        ct = list(c.terms())
        dt = list(d.terms())
        if len(ct) == 1 and len(dt) == 1 and ct[0][0] == () and dt[0][0] == ():
            (re_t, im_t), (re_d, im_d) = ct[0][1], dt[0][1]
            if im_t == 0 and im_d == 0 and re_t != 0:
                return re_d / re_t
    return None


# -- curvature form of the second constraint ---------------------------------

def theta_sym(i: int, j: int) -> NcPoly:
    """Symmetric second-derivative symbol: indices stored sorted."""
    lo, hi = min(i, j), max(i, j)
    return NcPoly.gen("Theta", lo, hi)


def curvature_form_check(n: int) -> tuple[dict[tuple[int, int], NcPoly], NcPoly]:
    """Per-pair residual of the rearrangement
    [[T_ij, H_j], H_i] = [[T_ij, H_i], H_j] + [[H_i, H_j], T_ij]
    plus the summed weave sum_ij [[H_i, H_j], T_ij], which cancels pairwise
    for symmetric T."""
    residuals: dict[tuple[int, int], NcPoly] = {}
    summed = NcPoly.zero()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            hi, hj, t = NcPoly.gen("H", i), NcPoly.gen("H", j), theta_sym(i, j)
            lhs = commutator(commutator(t, hj), hi)
            rhs = commutator(commutator(t, hi), hj) + commutator(commutator(hi, hj), t)
            residuals[(i, j)] = lhs - rhs
            summed = summed + commutator(commutator(hi, hj), t)
    return residuals, summed


# -- first constraint with the quadratic Hamiltonian --------------------------

def quadratic_hamiltonian(n: int) -> NcPoly:
    """(1/4) sum_ij (g_ij P_i P_j + P_i P_j g_ij) with symmetric g."""
    total = NcPoly.zero()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            g = NcPoly.from_word((G("g", min(i, j), max(i, j)),))
            total = total + g * P(i) * P(j) + P(i) * P(j) * g
    return total / Scalar.rational(4)


def first_constraint_residual(n: int, max_steps: int | None = None) -> NcPoly:
    """[theta, H] - sum_i {Hdot_i theta_i} for the quadratic Hamiltonian,
    reduced in the flat world with function symbols g_ij and theta."""
    system = flat_with_functions(["g", "theta"])
    theta = NcPoly.gen("theta")
    h = quadratic_hamiltonian(n)
    lhs = reduce_poly(commutator(theta, h), system, max_steps)
    rhs = NcPoly.zero()
    for i in range(1, n + 1):
        hdot_i = reduce_poly(commutator(Q(i), h), system, max_steps)
        theta_i = reduce_poly(commutator(theta, P(i)), system, max_steps)
        rhs = rhs + symmetrize([hdot_i, theta_i])
    return reduce_poly(lhs - rhs, system, max_steps)


# -- classical derivative tower ----------------------------------------------

# commutative symbols: ("theta", 0) or ("h", k) for the k-th derivative of h
CSym = tuple[str, int]
CMonomial = tuple[CSym, ...]

THETA: CSym = ("theta", 0)


def hsym(k: int = 0) -> CSym:
    return ("h", k)


class CPoly:
    """Commutative polynomial in theta and the derivatives of h."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[CMonomial, Fraction] | None = None):
        canon: dict[CMonomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    canon[tuple(sorted(m))] = canon.get(tuple(sorted(m)), Fraction(0)) + c
        self._terms = {m: c for m, c in canon.items() if c}

    @staticmethod
    def monomial(syms: Iterable[CSym], coeff: Fraction | int = 1) -> "CPoly":
        return CPoly({tuple(sorted(syms)): Fraction(coeff)})

    def __add__(self, other: "CPoly") -> "CPoly":
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return CPoly(terms)

    def __sub__(self, other: "CPoly") -> "CPoly":
        return self + CPoly({m: -c for m, c in other._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def terms(self) -> Iterable[tuple[CMonomial, Fraction]]:
        return sorted(self._terms.items())

    def coeff(self, syms: Iterable[CSym]) -> Fraction:
        return self._terms.get(tuple(sorted(syms)), Fraction(0))

    def derive(self) -> "CPoly":
        """Leibniz derivation with d theta = h theta and d h^(k) = h^(k+1)."""
        out = CPoly()
        for m, c in self._terms.items():
            for pos, sym in enumerate(m):
                rest = m[:pos] + m[pos + 1:]
                if sym == THETA:
                    out = out + CPoly.monomial(rest + (hsym(0), THETA), c)
                else:
                    name, k = sym
                    out = out + CPoly.monomial(rest + ((name, k + 1),), c)
        return out

    def coefficient_sum(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.terms():
            body = " ".join(_csym_text(s) for s in _grouped(m)) or "1"
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c} {body}")
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def __repr__(self) -> str:
        return f"CPoly({self.to_text()})"


def _grouped(m: CMonomial) -> list[tuple[CSym, int]]:
    groups: list[tuple[CSym, int]] = []
    for s in m:
        if groups and groups[-1][0] == s:
            groups[-1] = (s, groups[-1][1] + 1)
        else:
            groups.append((s, 1))
    return groups


def _csym_text(group: tuple[CSym, int]) -> str:
    (name, k), power = group
    if name == "theta":
        base = "theta"
    elif k == 0:
        base = "h"
    elif k <= 3:
        base = "h" + "'" * k
    else:
        base = f"h^({k})"
    return base if power == 1 else f"{base}^{power}"


@dataclass(frozen=True)
class TowerLevel:
    level: int
    polynomial: CPoly


def derivative_tower(levels: int) -> list[TowerLevel]:
    """Successive temporal derivatives of theta, levels 1..N."""
    if levels < 1:
        raise ValueError("need at least one level")
    out = [TowerLevel(1, CPoly.monomial((hsym(0), THETA)))]
    for n in range(2, levels + 1):
        out.append(TowerLevel(n, out[-1].polynomial.derive()))
    return out


def hprime_coefficient(level: TowerLevel) -> Fraction:
    """Coefficient of h^(n-2) theta h' at level n."""
    n = level.level
    syms = (hsym(0),) * (n - 2) + (THETA, hsym(1))
    return level.polynomial.coeff(syms)


def hprime2_coefficient(level: TowerLevel) -> Fraction:
    """Coefficient of h^(n-4) theta h'^2 at level n."""
    n = level.level
    syms = (hsym(0),) * (n - 4) + (THETA, hsym(1), hsym(1))
    return level.polynomial.coeff(syms)


def _factor_polys(m: CMonomial, theta: NcPoly, h_derivs: Sequence[NcPoly]) -> list[NcPoly]:
    factors = []
    for name, k in m:
        if name == "theta":
            factors.append(theta)
        else:
            if k >= len(h_derivs):
                raise ValueError(f"no operator supplied for derivative order {k}")
            factors.append(h_derivs[k])
    return factors


def symmetrized_level(poly_or_level: "CPoly | TowerLevel", theta: NcPoly,
                      h_derivs: Sequence[NcPoly]) -> NcPoly:
    """Operator image of a classical level: symmetrize each monomial."""
    cpoly = poly_or_level.polynomial if isinstance(poly_or_level, TowerLevel) else poly_or_level
    out = NcPoly.zero()
    for m, c in cpoly.terms():
        out = out + symmetrize(_factor_polys(m, theta, h_derivs)).scaled(Scalar.rational(c))
    return out


def symmetrized_level_dot(poly_or_level: "CPoly | TowerLevel", theta: NcPoly,
                          h_derivs: Sequence[NcPoly]) -> NcPoly:
    """Dot-derivative of a symmetrized level, factor by factor, replacing a
    differentiated theta by the nested first-constraint value {theta h}."""
    cpoly = poly_or_level.polynomial if isinstance(poly_or_level, TowerLevel) else poly_or_level
    theta_dot = symmetrize([theta, h_derivs[0]])
    out = NcPoly.zero()
    for m, c in cpoly.terms():
        for pos, sym in enumerate(m):
            rest = m[:pos] + m[pos + 1:]
            factors = _factor_polys(rest, theta, h_derivs)
            if sym == THETA:
                factors.append(theta_dot)
            else:
                _, k = sym
                if k + 1 >= len(h_derivs):
                    raise ValueError(f"no operator supplied for derivative order {k + 1}")
                factors.append(h_derivs[k + 1])
            out = out + symmetrize(factors).scaled(Scalar.rational(c))
    return out
