"""Chamber superpotentials, wall-crossing gluing, invariant tables.

The Clifford-chamber superpotential of a compactification collects one
Maslov-2 disk monomial per toric ray.  Crossing the wall into the Chekanov
chamber multiplies each monomial by a power of the gluing factor

    f = 1 + (gamma_1-monomial) + ... + (gamma_{n-1}-monomial),

the power being minus the beta_hat-coefficient of the class (plus for the
reverse direction).  The Chekanov superpotential has an exact closed form
whenever every extra ray has nonnegative coordinate sum, and its
coefficients are one-pointed open Gromov-Witten invariants; invariant_table
reads them off.  closed_form_invariant supplies independent multinomial
formulas for the stock families, and verify_wall_cross_identity checks the
exp/log consistency identity that pins the basic disk count to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    BadParams,
    DimensionMismatch,
    MaslovViolation,
    NegativePa,
    NonIntegerInvariant,
    UnknownFamily,
)
from .fan import (
    FanSpec,
    RelClass,
    beta_class,
    beta_hat_class,
    beta_prime_class,
    class_maslov,
    class_name,
    gamma_class,
    ray_decomposition,
)
from .series import (
    DEFAULT_TRUNC,
    ClassSeries,
    monomial,
    multiply,
    one,
    power,
    series_exp,
    series_log,
    truncate_gamma,
    zero,
)


class Chart(Enum):
    """Which chamber the fiber torus sits over."""

    CLIFFORD = "clifford"
    CHEKANOV = "chekanov"


class Ambient(Enum):
    """Disks in C^n only, or in the full compactification."""

    OPEN = "open"
    COMPACT = "compact"


class Direction(Enum):
    PLUS_TO_MINUS = "plus_to_minus"
    MINUS_TO_PLUS = "minus_to_plus"


@dataclass(frozen=True)
class Superpotential:
    """Finite sum of Maslov-2 disk monomials attached to one chamber."""

    fan: FanSpec
    series: ClassSeries
    chamber: Chart
    ambient: Ambient


@dataclass(frozen=True)
class GluingData:
    """Wall-crossing factor plus how to apply it.

    factor always has constant term 1 and one further term per gamma_k.
    trunc bounds the gamma-degree of glued output.
    """

    factor: ClassSeries
    direction: Direction
    trunc: int


@dataclass(frozen=True)
class InvariantRow:
    cls: RelClass
    maslov: int
    value: Fraction
    name: str


@dataclass(frozen=True)
class InvariantTable:
    """Canonically ordered rows of one-pointed disk counts."""

    rows: tuple[InvariantRow, ...]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def value_of(self, cls: RelClass) -> Fraction:
        for row in self.rows:
            if row.cls == cls:
                return row.value
        return Fraction(0)


def _check_ambient(spec: FanSpec, ambient: Ambient):
    if ambient is Ambient.COMPACT and spec.m == 0:
        raise BadParams("compact ambient needs at least one ray at infinity")


def clifford_superpotential(spec: FanSpec, ambient: Ambient) -> Superpotential:
    """One monomial per basic disk beta_1..beta_n; compact ambients add one
    monomial per extra ray's disk at infinity.  All coefficients are 1."""
    _check_ambient(spec, ambient)
    terms: dict[RelClass, Fraction] = {}
    for i in range(1, spec.n + 1):
        terms[beta_class(spec, i)] = Fraction(1)
    if ambient is Ambient.COMPACT:
        for a in range(1, spec.m + 1):
            terms[beta_prime_class(spec, a)] = Fraction(1)
    return Superpotential(
        spec, ClassSeries(spec.n, spec.m, terms), Chart.CLIFFORD, ambient
    )


def wall_crossing_factor(
    spec: FanSpec,
    direction: Direction = Direction.PLUS_TO_MINUS,
    trunc: int = DEFAULT_TRUNC,
) -> GluingData:
    """The gluing factor 1 + sum_k gamma_k-monomials for this fan."""
    if trunc < 0:
        raise BadParams(f"truncation bound must be >= 0, got {trunc}")
    f = one(spec.n, spec.m)
    for k in range(1, spec.n):
        f = f + monomial(spec.n, spec.m, gamma_class(spec, k))
    return GluingData(f, direction, trunc)


def chekanov_superpotential(spec: FanSpec, ambient: Ambient) -> Superpotential:
    """Exact pushforward of the Clifford superpotential across the wall.

    Open ambient: the single beta_hat monomial.  Compact: additionally
    (beta'_a-monomial) * factor^{p_a} per extra ray, expanded exactly; this
    needs every p_a >= 0, otherwise the expansion is an infinite series and
    we refuse rather than emit a silently truncated table.
    """
    _check_ambient(spec, ambient)
    w = monomial(spec.n, spec.m, beta_hat_class(spec))
    if ambient is Ambient.COMPACT:
        f = wall_crossing_factor(spec).factor
        for a in range(1, spec.m + 1):
            _, p = ray_decomposition(spec, a)
            if p < 0:
                raise NegativePa(a, p)
            term = monomial(spec.n, spec.m, beta_prime_class(spec, a))
            w = w + multiply(term, power(f, p))
    return Superpotential(spec, w, Chart.CHEKANOV, ambient)


def apply_gluing(spec: FanSpec, s: ClassSeries, gd: GluingData) -> ClassSeries:
    """Glue a series across the wall, exactly up to gamma-degree gd.trunc.

    Each monomial of class c is multiplied by factor^e, e = -c.b for
    PlusToMinus and +c.b for MinusToPlus; gamma- and H-only monomials are
    fixed.  Negative powers are infinite series, so those are expanded far
    enough (degree trunc plus the monomial's own gamma-degree) that every
    retained output coefficient is the exact coefficient of the full glued
    series; the result is then truncated at gd.trunc.  Nonnegative powers
    are exact, and a series needing none is returned untruncated.
    """
    if s.n != spec.n or s.m != spec.m:
        raise DimensionMismatch(
            f"series shape ({s.n},{s.m}) does not match fan ({spec.n},{spec.m})"
        )
    f = gd.factor
    if f.n != spec.n or f.m != spec.m:
        raise DimensionMismatch("gluing factor does not match the fan")
    sign = -1 if gd.direction is Direction.PLUS_TO_MINUS else 1
    # a source monomial at gamma-offset g0 can pull factor terms of degree
    # up to trunc + |g0| back under the output bound, so expand that far
    depth: dict[int, int] = {}
    for cls, _ in s.items():
        e = sign * cls.b
        if e < 0:
            need = gd.trunc + cls.gamma_degree
            depth[e] = max(depth.get(e, 0), need)
    powers: dict[int, ClassSeries] = {
        e: power(f, e, depth[e]) for e in depth
    }
    out = zero(spec.n, spec.m)
    for cls, coeff in s.items():
        e = sign * cls.b
        term = monomial(spec.n, spec.m, cls, coeff)
        if e == 0:
            out = out + term
        elif e > 0:
            out = out + multiply(term, powers.setdefault(e, power(f, e)))
        else:
            out = out + truncate_gamma(multiply(term, powers[e]), gd.trunc)
    if depth:
        out = truncate_gamma(out, gd.trunc)
    return out


def glue_superpotential(w: Superpotential, gd: GluingData) -> Superpotential:
    """apply_gluing lifted to superpotentials, flipping the chamber tag."""
    side = {
        Direction.PLUS_TO_MINUS: (Chart.CLIFFORD, Chart.CHEKANOV),
        Direction.MINUS_TO_PLUS: (Chart.CHEKANOV, Chart.CLIFFORD),
    }[gd.direction]
    if w.chamber is not side[0]:
        raise BadParams(
            f"direction {gd.direction.value} expects a {side[0].value} superpotential"
        )
    glued = apply_gluing(w.fan, w.series, gd)
    return Superpotential(w.fan, glued, side[1], w.ambient)


def invariant_table(w: Superpotential) -> InvariantTable:
    """Read the disk counts off a superpotential, one row per class.

    Every class must have Maslov index 2 and an integer coefficient;
    violations abort, they are never rounded away.
    """
    rows = []
    for cls, coeff in w.series.items():
        mu = class_maslov(w.fan, cls)
        if mu != 2:
            raise MaslovViolation(
                f"class {class_name(cls)} has Maslov index {mu}, expected 2"
            )
        if coeff.denominator != 1:
            raise NonIntegerInvariant(
                f"count for {class_name(cls)} is {coeff}, not an integer"
            )
        rows.append(InvariantRow(cls, mu, coeff, class_name(cls)))
    return InvariantTable(tuple(rows))


def _take_int(params: dict, key: str) -> int:
    if key not in params:
        raise BadParams(f"missing parameter {key!r}")
    v = params.pop(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise BadParams(f"parameter {key!r} must be an integer, got {v!r}")
    return v


def _take_vec(params: dict, key: str, length: int) -> tuple[int, ...]:
    if key not in params:
        raise BadParams(f"missing parameter {key!r}")
    v = params.pop(key)
    try:
        vec = tuple(int(x) for x in v)
    except TypeError as exc:
        raise BadParams(f"parameter {key!r} must be a sequence of integers") from exc
    if len(vec) != length:
        raise BadParams(f"parameter {key!r} must have length {length}, got {len(vec)}")
    return vec


def _no_extra(params: dict):
    if params:
        raise BadParams(f"unexpected parameters {sorted(params)}")


def closed_form_invariant(family: str, params: Mapping) -> Fraction:
    """Independent multinomial formulas for the stock families.

    Families: "cpn" (params n, and k of length n-1 or beta_hat), "cp_product"
    (params n, r, branch "H1"/"H2", k of length n-1 or beta_hat), "f1"
    (params branch "H1"/"H2", integer k, or beta_hat).  A class outside the
    admissible range has invariant 0.
    """
    params = dict(params)
    if family == "cpn":
        n = _take_int(params, "n")
        if n < 1:
            raise BadParams(f"need n >= 1, got {n}")
        if params.pop("beta_hat", False):
            _no_extra(params)
            return Fraction(1)
        k = _take_vec(params, "k", n - 1)
        _no_extra(params)
        if any(ki < -1 for ki in k) or sum(k) > 1:
            return Fraction(0)
        denom = math.prod(math.factorial(ki + 1) for ki in k)
        denom *= math.factorial(1 - sum(k))
        return Fraction(math.factorial(n), denom)
    if family == "cp_product":
        n = _take_int(params, "n")
        r = _take_int(params, "r")
        if not 1 <= r < n:
            raise BadParams(f"need 1 <= r < n, got r={r}, n={n}")
        if params.pop("beta_hat", False):
            _no_extra(params)
            return Fraction(1)
        branch = params.pop("branch", None)
        k = _take_vec(params, "k", n - 1)
        _no_extra(params)
        if branch == "H1":
            # first factor's disk at infinity dressed by factor^r
            if (
                any(k[i] < -1 for i in range(r))
                or any(k[i] < 0 for i in range(r, n - 1))
                or sum(k) > 0
            ):
                return Fraction(0)
            denom = math.prod(math.factorial(k[i] + 1) for i in range(r))
            denom *= math.prod(math.factorial(k[i]) for i in range(r, n - 1))
            denom *= math.factorial(-sum(k))
            return Fraction(math.factorial(r), denom)
        if branch == "H2":
            if (
                any(k[i] < 0 for i in range(r))
                or any(k[i] < -1 for i in range(r, n - 1))
                or sum(k) > 1
            ):
                return Fraction(0)
            denom = math.prod(math.factorial(k[i]) for i in range(r))
            denom *= math.prod(math.factorial(k[i] + 1) for i in range(r, n - 1))
            denom *= math.factorial(1 - sum(k))
            return Fraction(math.factorial(n - r), denom)
        raise BadParams(f"branch must be 'H1' or 'H2', got {branch!r}")
    if family == "f1":
        if params.pop("beta_hat", False):
            _no_extra(params)
            return Fraction(1)
        branch = params.pop("branch", None)
        kk = _take_int(params, "k")
        _no_extra(params)
        if branch == "H1":
            if -1 <= kk <= 1:
                return Fraction(math.factorial(2), math.factorial(kk + 1) * math.factorial(1 - kk))
            return Fraction(0)
        if branch == "H2":
            return Fraction(1) if kk in (0, 1) else Fraction(0)
        raise BadParams(f"branch must be 'H1' or 'H2', got {branch!r}")
    raise UnknownFamily(f"no closed form for family {family!r}")


def solve_exp_G(spec: FanSpec, trunc: int = DEFAULT_TRUNC) -> ClassSeries:
    """Log of the wall-crossing factor: the exponent series whose exp
    reproduces the factor.  Constant term 0, every term gamma-degree >= 1."""
    f = wall_crossing_factor(spec).factor
    return series_log(f, trunc)


def wall_cross_rhs(
    spec: FanSpec,
    trunc: int = DEFAULT_TRUNC,
    n_factors: Sequence[ClassSeries] | None = None,
) -> ClassSeries:
    """Right-hand side of the consistency identity for the basic disk count.

    With the k-th slot's sphere correction N_k (default 1, exact for C^n,
    which has no effective curve classes) the identity reads

        n_beta_hat = exp(-log f) * (N_n + sum_{k<n} gamma_k-monomial * N_k)

    and the left side is 1; callers compare against the constant series.
    """
    if n_factors is None:
        n_factors = [one(spec.n, spec.m)] * spec.n
    if len(n_factors) != spec.n:
        raise BadParams(f"need {spec.n} sphere-correction series")
    expf = series_exp(-solve_exp_G(spec, trunc), trunc)
    rhs = multiply(n_factors[spec.n - 1], expf)
    for k in range(1, spec.n):
        slot = monomial(spec.n, spec.m, gamma_class(spec, k))
        rhs = rhs + multiply(multiply(slot, n_factors[k - 1]), expf)
    return truncate_gamma(rhs, trunc)


def verify_wall_cross_identity(
    spec: FanSpec,
    trunc: int = DEFAULT_TRUNC,
    n_factors: Sequence[ClassSeries] | None = None,
) -> bool:
    """True iff the consistency identity holds term-exactly up to trunc."""
    return wall_cross_rhs(spec, trunc, n_factors) == one(spec.n, spec.m)
