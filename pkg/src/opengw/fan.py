"""Fan data for smooth toric compactifications of C^n.

A compactification is described by the fan of C^n itself (the base rays
-e_1, ..., -e_n) together with m extra primitive rays v_1, ..., v_m and an
optional list of maximal cones.  Ray indices 0..n-1 always mean the base
rays; index n+a-1 means the extra ray v_a.

Relative disk classes live in the free abelian group spanned by the basic
disk beta_hat, the loop differences gamma_1..gamma_{n-1}, and the sphere
classes H_1..H_m of the toric divisors added at infinity.  The derived
classes are

    beta_i   = beta_hat + gamma_i          (i < n),   beta_n = beta_hat
    beta'_a  = H_a - p_a beta_hat - sum_k v_{ak} gamma_k

with p_a the coordinate sum of v_a.  Boundaries are taken in the fixed
frame d(beta_hat) = -e_n, d(gamma_k) = e_n - e_k, which makes
d(beta_i) = -e_i and d(beta'_a) = v_a.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadParams,
    DimensionMismatch,
    IndexOutOfRange,
    MalformedCone,
    MissingCones,
    UnknownName,
)

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class RelClass:
    """A relative homotopy class b*beta_hat + sum g_k gamma_k + sum h_a H_a."""

    b: int
    g: IntVec
    h: IntVec

    def __add__(self, other: "RelClass") -> "RelClass":
        if len(self.g) != len(other.g) or len(self.h) != len(other.h):
            raise DimensionMismatch("cannot add classes of different shapes")
        return RelClass(
            self.b + other.b,
            tuple(x + y for x, y in zip(self.g, other.g)),
            tuple(x + y for x, y in zip(self.h, other.h)),
        )

    def __neg__(self) -> "RelClass":
        return RelClass(-self.b, tuple(-x for x in self.g), tuple(-x for x in self.h))

    def __sub__(self, other: "RelClass") -> "RelClass":
        return self + (-other)

    def scale(self, k: int) -> "RelClass":
        return RelClass(k * self.b, tuple(k * x for x in self.g), tuple(k * x for x in self.h))

    @property
    def gamma_degree(self) -> int:
        """Total absolute gamma coefficient; grades all truncations."""
        return sum(abs(x) for x in self.g)

    @property
    def sort_key(self):
        # canonical order: lexicographic on (h, b, g)
        return (self.h, self.b, self.g)

    def is_zero(self) -> bool:
        return self.b == 0 and not any(self.g) and not any(self.h)


@dataclass(frozen=True)
class EnergyValues:
    """Raw symplectic areas for the generator classes, all exact rationals.

    h may be None when only the open-ambient generators are being used.
    """

    beta_hat: Fraction
    gamma: tuple[Fraction, ...]
    h: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class FanSpec:
    """Fan of a toric compactification of C^n.

    extra_rays are the rays added to the C^n fan.  max_cones, when present,
    lists each maximal cone as indices into base-then-extra rays.  energies
    optionally pins areas for beta_hat, the gammas, and the H_a.
    """

    n: int
    extra_rays: tuple[IntVec, ...]
    max_cones: tuple[IntVec, ...] | None = None
    energies: EnergyValues | None = None

    def __post_init__(self):
        if self.n < 1:
            raise BadParams(f"dimension must be >= 1, got {self.n}")
        object.__setattr__(self, "extra_rays", tuple(tuple(int(x) for x in r) for r in self.extra_rays))
        for r in self.extra_rays:
            if len(r) != self.n:
                raise DimensionMismatch(f"extra ray {r} does not have length {self.n}")
        if self.max_cones is not None:
            cones = tuple(tuple(int(i) for i in c) for c in self.max_cones)
            object.__setattr__(self, "max_cones", cones)
            top = self.n + len(self.extra_rays)
            for c in cones:
                for i in c:
                    if not 0 <= i < top:
                        raise IndexOutOfRange(f"cone {c}: ray index {i} not in 0..{top - 1}")

    @property
    def m(self) -> int:
        return len(self.extra_rays)

    def ray(self, i: int) -> IntVec:
        """Ray by global index: 0..n-1 are -e_1..-e_n, then the extras."""
        if not 0 <= i < self.n + self.m:
            raise IndexOutOfRange(f"ray index {i} not in 0..{self.n + self.m - 1}")
        if i < self.n:
            return tuple(-1 if j == i else 0 for j in range(self.n))
        return self.extra_rays[i - self.n]

    @property
    def rays(self) -> tuple[IntVec, ...]:
        return tuple(self.ray(i) for i in range(self.n + self.m))


@dataclass(frozen=True)
class ValidationReport:
    primitive_ok: bool
    smooth_ok: bool
    complete_ok: bool
    fano_ok: bool
    diagnostics: tuple[str, ...] = field(default_factory=tuple)

    @property
    def all_ok(self) -> bool:
        return self.primitive_ok and self.smooth_ok and self.complete_ok and self.fano_ok


# class constructors

def zero_class(spec: FanSpec) -> RelClass:
    return RelClass(0, (0,) * (spec.n - 1), (0,) * spec.m)


def beta_hat_class(spec: FanSpec) -> RelClass:
    return RelClass(1, (0,) * (spec.n - 1), (0,) * spec.m)


def gamma_class(spec: FanSpec, k: int) -> RelClass:
    """gamma_k for 1 <= k <= n-1."""
    if not 1 <= k <= spec.n - 1:
        raise IndexOutOfRange(f"gamma index {k} not in 1..{spec.n - 1}")
    return RelClass(0, tuple(1 if j == k - 1 else 0 for j in range(spec.n - 1)), (0,) * spec.m)


def sphere_class(spec: FanSpec, a: int) -> RelClass:
    """H_a for 1 <= a <= m."""
    if not 1 <= a <= spec.m:
        raise IndexOutOfRange(f"sphere index {a} not in 1..{spec.m}")
    return RelClass(0, (0,) * (spec.n - 1), tuple(1 if j == a - 1 else 0 for j in range(spec.m)))


def beta_class(spec: FanSpec, i: int) -> RelClass:
    """Basic disk beta_i = beta_hat + gamma_i (and beta_n = beta_hat)."""
    if not 1 <= i <= spec.n:
        raise IndexOutOfRange(f"disk index {i} not in 1..{spec.n}")
    c = beta_hat_class(spec)
    if i < spec.n:
        c = c + gamma_class(spec, i)
    return c


def beta_prime_class(spec: FanSpec, a: int) -> RelClass:
    """Disk class at infinity: H_a - p_a beta_hat - sum_k v_{ak} gamma_k."""
    v, p = ray_decomposition(spec, a)
    return RelClass(
        -p,
        tuple(-v[k] for k in range(spec.n - 1)),
        tuple(1 if j == a - 1 else 0 for j in range(spec.m)),
    )


def ray_decomposition(spec: FanSpec, a: int) -> tuple[IntVec, int]:
    """Extra ray v_a (1-based) with its coordinate sum p_a."""
    if not 1 <= a <= spec.m:
        raise IndexOutOfRange(f"extra ray index {a} not in 1..{spec.m}")
    v = spec.extra_rays[a - 1]
    return v, sum(v)


def class_boundary(spec: FanSpec, c: RelClass) -> IntVec:
    """Boundary loop of c in the fixed pi_1 frame, as an integer n-vector.

    Linear in c and zero on pure sphere classes.
    """
    if len(c.g) != spec.n - 1 or len(c.h) != spec.m:
        raise DimensionMismatch(
            f"class shape ({len(c.g)}, {len(c.h)}) does not match fan ({spec.n - 1}, {spec.m})"
        )
    out = [-gk for gk in c.g]
    out.append(-c.b + sum(c.g))
    return tuple(out)


def class_maslov(spec: FanSpec, c: RelClass) -> int:
    """Maslov index: 2b plus 2(1 + p_a) per sphere class H_a."""
    if len(c.g) != spec.n - 1 or len(c.h) != spec.m:
        raise DimensionMismatch(
            f"class shape ({len(c.g)}, {len(c.h)}) does not match fan ({spec.n - 1}, {spec.m})"
        )
    mu = 2 * c.b
    for a in range(spec.m):
        if c.h[a]:
            mu += 2 * c.h[a] * (1 + sum(spec.extra_rays[a]))
    return mu


def class_name(c: RelClass) -> str:
    """Readable name like 'H_1 - 2β̂ + γ_1'."""
    parts: list[tuple[int, str]] = []
    for a, ha in enumerate(c.h, start=1):
        if ha:
            parts.append((ha, f"H_{a}"))
    if c.b:
        parts.append((c.b, "β̂"))
    for k, gk in enumerate(c.g, start=1):
        if gk:
            parts.append((gk, f"γ_{k}"))
    if not parts:
        return "0"
    pieces = []
    for coeff, sym in parts:
        mag = abs(coeff)
        body = sym if mag == 1 else f"{mag}{sym}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


# exact integer linear algebra, small n

def det_int(mat) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(row) for row in mat]
    k = len(a)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for r in range(i + 1, k):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[-1][-1]


def _facet_normal(rows: list[IntVec], n: int) -> IntVec:
    # generalized cross product: signed maximal minors of the (n-1) x n matrix
    return tuple(
        (-1) ** i * det_int([[row[c] for c in range(n) if c != i] for row in rows])
        for i in range(n)
    )


def _solve_unit_pairing(rows: list[IntVec]) -> tuple[Fraction, ...] | None:
    # solve <row_i, m> = 1 for all i, exactly; None when singular
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(1)] for row in rows]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def validate_fan(spec: FanSpec) -> ValidationReport:
    """Check primitivity, unimodular smoothness, completeness, and the
    reflexive-support Fano criterion.

    Completeness is only evaluated on smooth fans (facet hyperplanes need
    independent generators) and the Fano criterion only on smooth complete
    ones; skipped checks report False with a diagnostic saying why.
    """
    if spec.max_cones is None:
        raise MissingCones("fan spec has no maximal cones")
    for c in spec.max_cones:
        if len(c) != spec.n or len(set(c)) != spec.n:
            raise MalformedCone(f"cone {c} must have exactly {spec.n} distinct ray indices")
        for i in c:
            if not 0 <= i < spec.n + spec.m:
                raise IndexOutOfRange(f"cone {c}: ray index {i} out of range")

    diagnostics: list[str] = []

    primitive_ok = True
    seen: dict[IntVec, int] = {spec.ray(i): i for i in range(spec.n)}
    for a, v in enumerate(spec.extra_rays, start=1):
        if not any(v):
            primitive_ok = False
            diagnostics.append(f"extra ray {a} is zero")
            continue
        if math.gcd(*(abs(x) for x in v)) != 1:
            primitive_ok = False
            diagnostics.append(f"extra ray {a} = {v} is not primitive")
        idx = spec.n + a - 1
        if v in seen:
            primitive_ok = False
            diagnostics.append(f"extra ray {a} = {v} duplicates ray {seen[v]}")
        else:
            seen[v] = idx

    smooth_ok = True
    for ci, cone in enumerate(spec.max_cones):
        d = det_int([spec.ray(i) for i in cone])
        if abs(d) != 1:
            smooth_ok = False
            diagnostics.append(f"cone {ci} {cone}: ray determinant {d}")

    complete_ok = False
    if not smooth_ok:
        diagnostics.append("completeness not evaluated: fan is not smooth")
    elif not spec.max_cones:
        diagnostics.append("no maximal cones listed")
    else:
        complete_ok = True
        facets: dict[IntVec, list[tuple[int, int]]] = {}
        for ci, cone in enumerate(spec.max_cones):
            for omit in cone:
                facet = tuple(sorted(i for i in cone if i != omit))
                facets.setdefault(facet, []).append((ci, omit))
        adjacency: dict[int, set[int]] = {ci: set() for ci in range(len(spec.max_cones))}
        for facet, owners in sorted(facets.items()):
            if len(owners) != 2:
                complete_ok = False
                diagnostics.append(f"facet {facet} lies in {len(owners)} cone(s), want 2")
                continue
            (c1, r1), (c2, r2) = owners
            u = _facet_normal([spec.ray(i) for i in facet], spec.n)
            s1 = sum(x * y for x, y in zip(spec.ray(r1), u))
            s2 = sum(x * y for x, y in zip(spec.ray(r2), u))
            if s1 == 0 or s2 == 0 or (s1 > 0) == (s2 > 0):
                complete_ok = False
                diagnostics.append(
                    f"facet {facet}: cones {c1} and {c2} are not on strictly opposite sides"
                )
            else:
                adjacency[c1].add(c2)
                adjacency[c2].add(c1)
        if complete_ok:
            reached = {0}
            frontier = [0]
            while frontier:
                nxt = frontier.pop()
                for other in adjacency[nxt]:
                    if other not in reached:
                        reached.add(other)
                        frontier.append(other)
            if len(reached) != len(spec.max_cones):
                complete_ok = False
                diagnostics.append("cone adjacency graph is disconnected")

    fano_ok = False
    if not (smooth_ok and complete_ok):
        diagnostics.append("Fano criterion not evaluated: fan is not smooth and complete")
    else:
        fano_ok = True
        for ci, cone in enumerate(spec.max_cones):
            msig = _solve_unit_pairing([spec.ray(i) for i in cone])
            if msig is None or any(x.denominator != 1 for x in msig):
                fano_ok = False
                diagnostics.append(f"cone {ci} {cone}: no integral support point")
                continue
            for j in range(spec.n + spec.m):
                if j in cone:
                    continue
                pairing = sum(Fraction(x) * y for x, y in zip(spec.ray(j), msig))
                if pairing >= 1:
                    fano_ok = False
                    diagnostics.append(
                        f"cone {ci} {cone}: ray {j} pairs to {pairing} (needs < 1)"
                    )

    return ValidationReport(primitive_ok, smooth_ok, complete_ok, fano_ok, tuple(diagnostics))


def builtin_fan(name: str, **params) -> FanSpec:
    """Named example fans.

    cpn(n)            projective n-space
    cp_product(n, r)  CP^r x CP^(n-r), 1 <= r < n
    hirzebruch_f1     the Fano Hirzebruch surface
    f2_nonfano        the non-Fano Hirzebruch surface, fails only the
                      Fano criterion
    """
    if name == "cpn":
        n = _require_int_param(params, "n")
        if n < 1 or params:
            raise BadParams(f"cpn needs a single parameter n >= 1, got n={n}, extra={params}")
        extra = (tuple(1 for _ in range(n)),)
        cones = tuple(tuple(c) for c in itertools.combinations(range(n + 1), n))
        return FanSpec(n=n, extra_rays=extra, max_cones=cones)
    if name == "cp_product":
        n = _require_int_param(params, "n")
        r = _require_int_param(params, "r")
        if params or not 1 <= r < n:
            raise BadParams(f"cp_product needs 1 <= r < n, got n={n}, r={r}, extra={params}")
        v1 = tuple(1 if i < r else 0 for i in range(n))
        v2 = tuple(0 if i < r else 1 for i in range(n))
        first = list(range(r)) + [n]
        second = list(range(r, n)) + [n + 1]
        cones = tuple(
            tuple(sorted([x for x in first if x != i] + [y for y in second if y != j]))
            for i in first
            for j in second
        )
        return FanSpec(n=n, extra_rays=(v1, v2), max_cones=cones)
    if name == "hirzebruch_f1":
        if params:
            raise BadParams(f"hirzebruch_f1 takes no parameters, got {params}")
        return FanSpec(
            n=2,
            extra_rays=((1, 1), (0, 1)),
            max_cones=((0, 1), (1, 2), (2, 3), (0, 3)),
        )
    if name == "f2_nonfano":
        if params:
            raise BadParams(f"f2_nonfano takes no parameters, got {params}")
        return FanSpec(
            n=2,
            extra_rays=((0, 1), (1, 2)),
            max_cones=((0, 1), (1, 3), (2, 3), (0, 2)),
        )
    raise UnknownName(f"unknown builtin fan {name!r}")


def _require_int_param(params: dict, key: str) -> int:
    if key not in params:
        raise BadParams(f"missing parameter {key!r}")
    val = params.pop(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise BadParams(f"parameter {key!r} must be an integer, got {val!r}")
    return val
