"""Exact Novikov-field arithmetic and numeric series evaluation.

A NovikovScalar is a finite sum of c * T^e with rational c and e, kept
sorted with strictly increasing exponents.  An optional cutoff records that
terms with exponent >= cutoff have been dropped; all arithmetic propagates
cutoffs conservatively so reported terms are always complete.  Valuation is
the smallest exponent present, infinity for zero.

NovikovLaurent is a Laurent polynomial in n torus variables with
NovikovScalar coefficients; it carries the toric superpotentials, Gauss
valuations over a polytope, and base-point shifts.  evaluate() sends the
symbolic class series of the wallcross module to actual scalars once
energies and a torus point are chosen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadParams,
    DimensionMismatch,
    DivisionByZero,
    EmptyPolytope,
    EnergyViolation,
    OutsidePolytope,
    ZeroCoordinate,
)
from .fan import EnergyValues, FanSpec, class_boundary, ray_decomposition

INF = math.inf


def _min_cut(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class NovikovScalar:
    """Finite T-series with strictly increasing rational exponents."""

    terms: tuple[tuple[Fraction, Fraction], ...] = ()
    cutoff: Fraction | None = None

    @staticmethod
    def from_terms(pairs: Iterable[tuple], cutoff=None) -> "NovikovScalar":
        if cutoff is not None:
            cutoff = Fraction(cutoff)
        merged: dict[Fraction, Fraction] = {}
        for e, c in pairs:
            e, c = Fraction(e), Fraction(c)
            merged[e] = merged.get(e, Fraction(0)) + c
        kept = tuple(
            (e, c)
            for e, c in sorted(merged.items())
            if c != 0 and (cutoff is None or e < cutoff)
        )
        return NovikovScalar(kept, cutoff)

    @property
    def val(self):
        """Smallest exponent, infinity for the zero scalar."""
        return self.terms[0][0] if self.terms else INF

    def _val_floor(self):
        # smallest exponent any completion of this scalar could have
        return _min_cut(None if self.val is INF else self.val, self.cutoff)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e) -> Fraction:
        e = Fraction(e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return Fraction(0)

    def __add__(self, other: "NovikovScalar") -> "NovikovScalar":
        return NovikovScalar.from_terms(
            list(self.terms) + list(other.terms), _min_cut(self.cutoff, other.cutoff)
        )

    def __neg__(self) -> "NovikovScalar":
        return NovikovScalar(tuple((e, -c) for e, c in self.terms), self.cutoff)

    def __sub__(self, other: "NovikovScalar") -> "NovikovScalar":
        return self + (-other)

    def __mul__(self, other: "NovikovScalar") -> "NovikovScalar":
        cut = None
        if self.cutoff is not None:
            floor = other._val_floor()
            cut = _min_cut(cut, None if floor is None else self.cutoff + floor)
        if other.cutoff is not None:
            floor = self._val_floor()
            cut = _min_cut(cut, None if floor is None else other.cutoff + floor)
        prods = [
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        ]
        return NovikovScalar.from_terms(prods, cut)

    def __pow__(self, k: int) -> "NovikovScalar":
        return scalar_pow(self, k)

    def truncated(self, cutoff) -> "NovikovScalar":
        return NovikovScalar.from_terms(self.terms, _min_cut(self.cutoff, Fraction(cutoff)))

    def __str__(self):
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e, c in self.terms:
                if e == 0:
                    frag = str(c)
                elif c == 1:
                    frag = f"T^{e}"
                elif c == -1:
                    frag = f"-T^{e}"
                else:
                    frag = f"{c}*T^{e}"
                if parts and not frag.startswith("-"):
                    parts.append(f"+ {frag}")
                elif parts:
                    parts.append(f"- {frag[1:]}")
                else:
                    parts.append(frag)
            body = " ".join(parts)
        if self.cutoff is not None:
            body += f" + O(T^{self.cutoff})"
        return body


def t_monomial(e, c=1) -> NovikovScalar:
    return NovikovScalar.from_terms([(Fraction(e), Fraction(c))])


def constant(c) -> NovikovScalar:
    return t_monomial(0, c)


ZERO = NovikovScalar()
ONE = constant(1)


def scalar_val(x: NovikovScalar):
    return x.val


def in_positive_part(x: NovikovScalar) -> bool:
    """Membership in the maximal ideal: strictly positive valuation."""
    return x.val > 0


def is_norm_one(x: NovikovScalar) -> bool:
    """Membership in the unit-norm subgroup: valuation exactly 0."""
    return x.val == 0


def scalar_inverse(x: NovikovScalar, cutoff=None) -> NovikovScalar:
    """1/x by leading-monomial factorization and a geometric series.

    A multi-term x needs a cutoff (its own or the argument) because the
    geometric series does not terminate.
    """
    if x.is_zero():
        raise DivisionByZero("inverse of the zero scalar")
    e0, c0 = x.terms[0]
    lead_inv = t_monomial(-e0, Fraction(1) / c0)
    if x.cutoff is not None:
        result_cut = x.cutoff - 2 * e0
        if cutoff is not None:
            result_cut = min(result_cut, Fraction(cutoff))
    elif cutoff is not None:
        result_cut = Fraction(cutoff)
    else:
        if len(x.terms) > 1:
            raise ValueError("inverse of an exact multi-term scalar needs a cutoff")
        return lead_inv
    # x = c0 T^e0 (1 + r), val(r) > 0
    r = (x * lead_inv - ONE).truncated(result_cut + e0)
    acc = ONE.truncated(result_cut + e0)
    rpow = ONE.truncated(result_cut + e0)
    if not r.is_zero():
        step = r.val
        j = 1
        while j * step < result_cut + e0:
            rpow = rpow * (-r)
            if rpow.is_zero():
                break
            acc = acc + rpow
            j += 1
    return (lead_inv * acc).truncated(result_cut)


def scalar_pow(x: NovikovScalar, k: int) -> NovikovScalar:
    if k < 0:
        return scalar_pow(scalar_inverse(x), -k)
    result = ONE
    base = x
    e = k
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def trop(point: Sequence[NovikovScalar]) -> tuple:
    """Coordinate-wise valuation of a torus point."""
    out = []
    for i, x in enumerate(point):
        if x.is_zero():
            raise ZeroCoordinate(f"coordinate {i} is zero")
        out.append(x.val)
    return tuple(out)


@dataclass
class NovikovLaurent:
    """Laurent polynomial in n variables with NovikovScalar coefficients."""

    n: int
    terms: dict[tuple[int, ...], NovikovScalar]

    def __post_init__(self):
        clean = {}
        for nu, s in self.terms.items():
            nu = tuple(int(x) for x in nu)
            if len(nu) != self.n:
                raise DimensionMismatch(f"exponent {nu} does not have length {self.n}")
            if not s.is_zero():
                clean[nu] = s
        self.terms = clean

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return (
            isinstance(other, NovikovLaurent)
            and self.n == other.n
            and self.terms == other.terms
        )


def laurent_add(f: NovikovLaurent, g: NovikovLaurent) -> NovikovLaurent:
    if f.n != g.n:
        raise DimensionMismatch("cannot add Laurent series in different dimensions")
    out = dict(f.terms)
    for nu, s in g.terms.items():
        out[nu] = out[nu] + s if nu in out else s
    return NovikovLaurent(f.n, out)


def laurent_mul(f: NovikovLaurent, g: NovikovLaurent) -> NovikovLaurent:
    if f.n != g.n:
        raise DimensionMismatch("cannot multiply Laurent series in different dimensions")
    out: dict[tuple[int, ...], NovikovScalar] = {}
    for nu1, s1 in f.terms.items():
        for nu2, s2 in g.terms.items():
            key = tuple(a + b for a, b in zip(nu1, nu2))
            prod = s1 * s2
            out[key] = out[key] + prod if key in out else prod
    return NovikovLaurent(f.n, out)


def gauss_valuation(f, vertices) -> Fraction | float:
    """Valuation of f over the affinoid domain with the given polytope
    vertices: min over monomials of val(coeff) + min over vertices <nu, u>."""
    verts = [tuple(Fraction(x) for x in u) for u in vertices]
    if not verts:
        raise EmptyPolytope("need at least one vertex")
    pairs = f.items() if isinstance(f, NovikovLaurent) else list(f)
    best = INF
    for nu, s in pairs:
        v = s.val
        if v is INF:
            continue
        if any(len(u) != len(nu) for u in verts):
            raise DimensionMismatch("vertex and exponent dimensions differ")
        low = min(sum(Fraction(a) * b for a, b in zip(nu, u)) for u in verts)
        best = min(best, v + low)
    return best


def base_point_shift(f: NovikovLaurent, c) -> NovikovLaurent:
    """Recenter at a new base point: the coefficient of Y^nu gains T^<nu, c>."""
    c = tuple(Fraction(x) for x in c)
    if len(c) != f.n:
        raise DimensionMismatch(f"shift vector must have length {f.n}")
    out = {}
    for nu, s in f.terms.items():
        shift = sum(a * b for a, b in zip(nu, c))
        out[nu] = s * t_monomial(shift)
    return NovikovLaurent(f.n, out)


def toric_superpotential(normals, constants, q, corrections=None) -> NovikovLaurent:
    """Leading-order superpotential of a toric moment polytope at interior
    point q: one monomial T^{l_i(q)} Y^{v_i} per facet, l_i(q) = <v_i, q> - c_i.

    corrections, when given, supplies one scalar multiplier per facet (the
    sphere-bubbling factors); this function never invents them.
    """
    normals = [tuple(int(x) for x in v) for v in normals]
    constants = [Fraction(c) for c in constants]
    q = tuple(Fraction(x) for x in q)
    if len(normals) != len(constants):
        raise DimensionMismatch("need one constant per facet normal")
    if any(len(v) != len(q) for v in normals):
        raise DimensionMismatch("facet normals and base point dimensions differ")
    if corrections is not None and len(corrections) != len(normals):
        raise DimensionMismatch("need one correction per facet")
    out: dict[tuple[int, ...], NovikovScalar] = {}
    for i, (v, c) in enumerate(zip(normals, constants)):
        ell = sum(Fraction(a) * b for a, b in zip(v, q)) - c
        if ell <= 0:
            raise OutsidePolytope(i, f"facet {i}: l_{i}(q) = {ell} is not positive")
        coeff = t_monomial(ell)
        if corrections is not None:
            coeff = coeff * corrections[i]
        out[v] = out[v] + coeff if v in out else coeff
    return NovikovLaurent(len(q), out)


@dataclass(frozen=True)
class EnergyAssignment:
    """Validated areas for the generator classes of a fan."""

    fan: FanSpec
    beta_hat: Fraction
    gamma: tuple[Fraction, ...]
    h: tuple[Fraction, ...] | None

    def energy_of(self, cls) -> Fraction:
        """Area of a class by linearity."""
        total = self.beta_hat * cls.b
        for k, gk in enumerate(cls.g):
            total += self.gamma[k] * gk
        if any(cls.h):
            if self.h is None:
                raise EnergyViolation(
                    f"class {cls} needs sphere-class energies but none were assigned"
                )
            for a, ha in enumerate(cls.h):
                total += self.h[a] * ha
        return total


def assign_energies(spec: FanSpec, values=None) -> EnergyAssignment:
    """Validate raw energy values against the fan.

    Requires E(beta_hat) > 0 and every E(gamma_k) > 0, and, when sphere
    energies are present, that each derived disk class at infinity has
    E(beta'_a) = E(H_a) - p_a E(beta_hat) - sum_k v_{ak} E(gamma_k) > 0.
    """
    if values is None:
        values = spec.energies
    if values is None:
        raise BadParams("no energy values given and the fan spec carries none")
    if isinstance(values, Mapping):
        extra = set(values) - {"beta_hat", "gamma", "H"}
        if extra:
            raise BadParams(f"unknown energy keys {sorted(extra)}")
        values = EnergyValues(
            beta_hat=Fraction(values["beta_hat"]),
            gamma=tuple(Fraction(x) for x in values.get("gamma", ())),
            h=tuple(Fraction(x) for x in values["H"]) if "H" in values else None,
        )
    if len(values.gamma) != spec.n - 1:
        raise DimensionMismatch(
            f"need {spec.n - 1} gamma energies, got {len(values.gamma)}"
        )
    if values.beta_hat <= 0:
        raise EnergyViolation(f"E(beta_hat) = {values.beta_hat} must be positive")
    for k, e in enumerate(values.gamma, start=1):
        if e <= 0:
            raise EnergyViolation(f"E(gamma_{k}) = {e} must be positive")
    if values.h is not None:
        if len(values.h) != spec.m:
            raise DimensionMismatch(f"need {spec.m} sphere energies, got {len(values.h)}")
        for a in range(1, spec.m + 1):
            v, p = ray_decomposition(spec, a)
            e_prime = values.h[a - 1] - p * values.beta_hat
            for k in range(spec.n - 1):
                e_prime -= v[k] * values.gamma[k]
            if e_prime <= 0:
                raise EnergyViolation(
                    f"E(beta'_{a}) = {e_prime} must be positive; "
                    f"raise E(H_{a}) or shrink the disk energies"
                )
    return EnergyAssignment(spec, values.beta_hat, values.gamma, values.h)


def evaluate(s, ea: EnergyAssignment, point: Sequence[NovikovScalar]) -> NovikovScalar:
    """Numeric value of a class series at a torus point: each monomial of
    class c contributes coeff * T^{E(c)} * prod point_i^{boundary_i(c)}."""
    spec = ea.fan
    if len(point) != spec.n:
        raise DimensionMismatch(f"point must have {spec.n} coordinates")
    for i, x in enumerate(point):
        if x.is_zero():
            raise ZeroCoordinate(f"coordinate {i} is zero")
    total = ZERO
    for cls, coeff in s.items():
        term = t_monomial(ea.energy_of(cls), coeff)
        w = class_boundary(spec, cls)
        for xi, wi in zip(point, w):
            if wi:
                term = term * scalar_pow(xi, wi)
        total = total + term
    return total
