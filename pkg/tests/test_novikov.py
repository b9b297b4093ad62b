"""Novikov scalars, Gauss valuations, toric potentials, numeric evaluation."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opengw import errors, fan, novikov, series, wallcross
from opengw.fan import RelClass
from opengw.novikov import NovikovScalar, constant, t_monomial

F = Fraction


class TestScalar:
    def test_valuation(self):
        x = NovikovScalar.from_terms([(F(2), F(3)), (F(1, 2), F(2))])
        assert x.val == F(1, 2)
        assert novikov.ZERO.val == math.inf

    def test_merge_and_zero_drop(self):
        x = NovikovScalar.from_terms([(F(1), F(2)), (F(1), F(-2)), (F(0), F(1))])
        assert x.terms == ((F(0), F(1)),)

    def test_cutoff_drops_terms(self):
        x = NovikovScalar.from_terms([(F(0), 1), (F(3), 1), (F(5), 1)], cutoff=F(3))
        assert x.terms == ((F(0), F(1)),)
        assert x.cutoff == 3

    def test_addition_keeps_min_cutoff(self):
        x = NovikovScalar.from_terms([(F(0), 1)], cutoff=F(2))
        y = NovikovScalar.from_terms([(F(1), 1)], cutoff=F(5))
        assert (x + y).cutoff == 2

    def test_inverse_of_one_plus_t(self):
        x = NovikovScalar.from_terms([(F(0), 1), (F(1), 1)], cutoff=F(3))
        inv = novikov.scalar_inverse(x)
        assert inv.terms == ((F(0), F(1)), (F(1), F(-1)), (F(2), F(1)))
        assert inv.cutoff == 3

    def test_inverse_is_involutive_up_to_cutoff(self):
        x = NovikovScalar.from_terms([(F(1, 2), 2), (F(1), 1), (F(2), -3)], cutoff=F(4))
        back = novikov.scalar_inverse(novikov.scalar_inverse(x))
        assert back.cutoff == x.cutoff
        assert back.terms == x.terms

    def test_inverse_of_monomial_is_exact(self):
        inv = novikov.scalar_inverse(t_monomial(F(3, 2), F(2, 5)))
        assert inv == t_monomial(F(-3, 2), F(5, 2))
        assert inv.cutoff is None

    def test_inverse_needs_cutoff_for_exact_multiterm(self):
        x = NovikovScalar.from_terms([(F(0), 1), (F(1), 1)])
        with pytest.raises(ValueError):
            novikov.scalar_inverse(x)
        got = novikov.scalar_inverse(x, cutoff=F(2))
        assert got.terms == ((F(0), F(1)), (F(1), F(-1)))

    def test_inverse_of_zero(self):
        with pytest.raises(errors.DivisionByZero):
            novikov.scalar_inverse(novikov.ZERO)

    def test_membership_predicates(self):
        assert novikov.in_positive_part(t_monomial(F(1, 3)))
        assert not novikov.in_positive_part(constant(2))
        assert novikov.is_norm_one(constant(2) + t_monomial(1))
        assert not novikov.is_norm_one(t_monomial(1))

    def test_formatting(self):
        x = NovikovScalar.from_terms([(F(0), F(3, 2)), (F(1, 2), -1)], cutoff=F(2))
        assert str(x) == "3/2 - T^1/2 + O(T^2)"


scalars = st.lists(
    st.tuples(
        st.fractions(min_value=-3, max_value=3, max_denominator=4),
        st.fractions(min_value=-5, max_value=5, max_denominator=4),
    ),
    max_size=4,
).map(NovikovScalar.from_terms)


@given(scalars, scalars)
def test_ultrametric_inequality(x, y):
    assert (x + y).val >= min(x.val, y.val)
    prod = x * y
    if x.is_zero() or y.is_zero():
        assert prod.val == math.inf
    else:
        assert prod.val == x.val + y.val


@given(scalars, scalars, scalars)
def test_scalar_ring_laws(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


class TestTrop:
    def test_coordinatewise_valuation(self):
        pt = [t_monomial(F(1, 2)), constant(2)]
        assert novikov.trop(pt) == (F(1, 2), F(0))

    def test_zero_coordinate(self):
        with pytest.raises(errors.ZeroCoordinate):
            novikov.trop([novikov.ONE, novikov.ZERO])


class TestGauss:
    def test_line_segment_example(self):
        f = novikov.NovikovLaurent(
            1, {(1,): t_monomial(F(1, 2)), (-1,): novikov.ONE}
        )
        assert novikov.gauss_valuation(f, [(F(0),), (F(1),)]) == -1

    def test_single_point_is_multiplicative(self):
        f = novikov.NovikovLaurent(1, {(1,): t_monomial(F(1, 2)), (0,): constant(3)})
        g = novikov.NovikovLaurent(1, {(2,): novikov.ONE, (-1,): t_monomial(1)})
        u = [(F(1, 3),)]
        assert novikov.gauss_valuation(novikov.laurent_mul(f, g), u) == novikov.gauss_valuation(
            f, u
        ) + novikov.gauss_valuation(g, u)

    def test_empty_polytope(self):
        f = novikov.NovikovLaurent(1, {(1,): novikov.ONE})
        with pytest.raises(errors.EmptyPolytope):
            novikov.gauss_valuation(f, [])


@given(st.data())
@settings(max_examples=80)
def test_gauss_valuation_properties(data):
    n = data.draw(st.integers(min_value=1, max_value=2), label="n")
    exps = st.tuples(*[st.integers(min_value=-2, max_value=2)] * n)
    nonzero = scalars.filter(lambda s: not s.is_zero())
    laurents = st.dictionaries(exps, nonzero, min_size=1, max_size=3).map(
        lambda d: novikov.NovikovLaurent(n, d)
    )
    f = data.draw(laurents, label="f")
    g = data.draw(laurents, label="g")
    vertex = data.draw(
        st.tuples(*[st.fractions(min_value=-2, max_value=2, max_denominator=3)] * n),
        label="vertex",
    )
    extra = data.draw(
        st.lists(
            st.tuples(*[st.fractions(min_value=-2, max_value=2, max_denominator=3)] * n),
            max_size=2,
        ),
        label="extra",
    )
    vf, vg = novikov.gauss_valuation(f, [vertex]), novikov.gauss_valuation(g, [vertex])
    prod = novikov.laurent_mul(f, g)
    # multiplicative over a single vertex, submultiplicative in general
    assert novikov.gauss_valuation(prod, [vertex]) == vf + vg
    poly = [vertex] + extra
    got = novikov.gauss_valuation(prod, poly)
    assert got >= novikov.gauss_valuation(f, poly) + novikov.gauss_valuation(g, poly)


class TestShift:
    def test_shift_adds_pairing(self):
        f = novikov.NovikovLaurent(2, {(1, -1): novikov.ONE})
        g = novikov.base_point_shift(f, (F(1, 2), F(1, 3)))
        assert g.terms[(1, -1)] == t_monomial(F(1, 2) - F(1, 3))

    def test_shift_of_toric_potential_matches_recomputation(self):
        normals = [(1, 0), (0, 1), (-1, -1)]
        consts = [F(0), F(0), F(-1)]
        q = (F(1, 3), F(1, 3))
        c = (F(1, 12), F(-1, 12))
        shifted = novikov.base_point_shift(
            novikov.toric_superpotential(normals, consts, q), c
        )
        direct = novikov.toric_superpotential(normals, consts, tuple(a + b for a, b in zip(q, c)))
        assert shifted == direct


class TestToric:
    def test_cp2_potential_at_center(self):
        got = novikov.toric_superpotential(
            [(1, 0), (0, 1), (-1, -1)], [F(0), F(0), F(-1)], (F(1, 3), F(1, 3))
        )
        assert set(got.terms) == {(1, 0), (0, 1), (-1, -1)}
        for s in got.terms.values():
            assert s == t_monomial(F(1, 3))

    def test_outside_polytope(self):
        with pytest.raises(errors.OutsidePolytope) as exc:
            novikov.toric_superpotential([(1, 0), (0, 1)], [F(0), F(0)], (F(-1), F(1)))
        assert exc.value.index == 0

    def test_boundary_is_outside(self):
        with pytest.raises(errors.OutsidePolytope):
            novikov.toric_superpotential([(1, 0), (0, 1)], [F(0), F(0)], (F(0), F(1)))

    def test_corrections_multiply_in(self):
        corr = [constant(1) + t_monomial(2), constant(1)]
        got = novikov.toric_superpotential(
            [(1, 0), (0, 1)], [F(0), F(0)], (F(1), F(1)), corrections=corr
        )
        assert got.terms[(1, 0)] == t_monomial(1) + t_monomial(3)
        assert got.terms[(0, 1)] == t_monomial(1)


class TestEnergies:
    def test_open_ambient_accepts_no_h(self):
        spec = fan.builtin_fan("cpn", n=3)
        ea = novikov.assign_energies(spec, {"beta_hat": 1, "gamma": [1, 1]})
        assert ea.energy_of(RelClass(2, (1, 0), (0,))) == 3

    def test_compact_validates_beta_prime(self):
        spec = fan.builtin_fan("cpn", n=2)
        ea = novikov.assign_energies(spec, {"beta_hat": 1, "gamma": [1], "H": [4]})
        # E(beta') = 4 - 2*1 - 1 = 1
        assert ea.energy_of(fan.beta_prime_class(spec, 1)) == 1

    def test_rejects_tight_sphere_energy(self):
        spec = fan.builtin_fan("cpn", n=2)
        with pytest.raises(errors.EnergyViolation):
            novikov.assign_energies(spec, {"beta_hat": 1, "gamma": [1], "H": [3]})

    def test_rejects_nonpositive_generators(self):
        spec = fan.builtin_fan("cpn", n=2)
        with pytest.raises(errors.EnergyViolation):
            novikov.assign_energies(spec, {"beta_hat": 0, "gamma": [1]})
        with pytest.raises(errors.EnergyViolation):
            novikov.assign_energies(spec, {"beta_hat": 1, "gamma": [F(-1, 2)]})

    def test_needs_h_for_sphere_classes(self):
        spec = fan.builtin_fan("cpn", n=2)
        ea = novikov.assign_energies(spec, {"beta_hat": 1, "gamma": [1]})
        with pytest.raises(errors.EnergyViolation):
            ea.energy_of(fan.sphere_class(spec, 1))

    def test_unknown_keys(self):
        spec = fan.builtin_fan("cpn", n=2)
        with pytest.raises(errors.BadParams):
            novikov.assign_energies(spec, {"beta_hat": 1, "gamma": [1], "area": [1]})


class TestEvaluate:
    def test_single_disk_n1(self):
        spec = fan.builtin_fan("cpn", n=1)
        ea = novikov.assign_energies(spec, {"beta_hat": 1, "gamma": []})
        w = series.monomial(1, 1, RelClass(1, (), (0,)))
        # T^1 * Y^(-1) at Y = T^(1/2) gives T^(1/2)
        got = novikov.evaluate(w, ea, [t_monomial(F(1, 2))])
        assert got == t_monomial(F(1, 2))

    def test_zero_coordinate(self):
        spec = fan.builtin_fan("cpn", n=1)
        ea = novikov.assign_energies(spec, {"beta_hat": 1, "gamma": []})
        w = series.monomial(1, 1, RelClass(1, (), (0,)))
        with pytest.raises(errors.ZeroCoordinate):
            novikov.evaluate(w, ea, [novikov.ZERO])

    def test_clifford_value_on_cp2(self):
        spec = fan.builtin_fan("cpn", n=2)
        ea = novikov.assign_energies(spec, {"beta_hat": 1, "gamma": [1], "H": [4]})
        w = wallcross.clifford_superpotential(spec, wallcross.Ambient.COMPACT)
        pt = [t_monomial(F(1, 4)), t_monomial(F(1, 3))]
        got = novikov.evaluate(w.series, ea, pt)
        # beta_1: T^2 / Y_1, beta_2: T / Y_2, beta': T Y_1 Y_2
        expected = (
            t_monomial(F(2) - F(1, 4))
            + t_monomial(F(1) - F(1, 3))
            + t_monomial(F(1) + F(1, 4) + F(1, 3))
        )
        assert got == expected

    def test_evaluation_is_multiplicative(self):
        spec = fan.builtin_fan("cpn", n=2)
        ea = novikov.assign_energies(spec, {"beta_hat": 1, "gamma": [2], "H": [5]})
        pt = [t_monomial(F(1, 5), 2), t_monomial(F(1, 7), -3)]
        f = series.ClassSeries(
            2, 1, {RelClass(1, (0,), (0,)): F(1), RelClass(0, (1,), (0,)): F(2)}
        )
        g = series.ClassSeries(
            2, 1, {RelClass(-1, (2,), (1,)): F(1, 3), RelClass(0, (0,), (0,)): F(1)}
        )
        lhs = novikov.evaluate(series.multiply(f, g), ea, pt)
        rhs = novikov.evaluate(f, ea, pt) * novikov.evaluate(g, ea, pt)
        assert lhs == rhs
