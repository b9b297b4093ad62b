"""Base classification, tropical wall detection, monodromy shears."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from opengw import chambers, errors, fan


def pt(lam, q2):
    return chambers.ChamberPoint(tuple(Fraction(x) for x in lam), Fraction(q2))


class TestClassify:
    def test_sides(self):
        assert chambers.classify_point(3, pt([1, 2], Fraction(1, 2))) == chambers.B_PLUS
        assert chambers.classify_point(3, pt([1, 2], Fraction(-1, 2))) == chambers.B_MINUS

    def test_walls_n3(self):
        assert chambers.classify_point(3, pt([-1, 2], 0)) == chambers.wall(1)
        assert chambers.classify_point(3, pt([2, -1], 0)) == chambers.wall(2)
        assert chambers.classify_point(3, pt([1, 2], 0)) == chambers.wall(3)

    def test_discriminant_ties(self):
        assert chambers.classify_point(3, pt([-1, -1], 0)) == chambers.DISCRIMINANT
        assert chambers.classify_point(3, pt([0, 2], 0)) == chambers.DISCRIMINANT
        assert chambers.classify_point(2, pt([0], 0)) == chambers.DISCRIMINANT

    def test_wall_n1(self):
        # no lambdas at all: the critical level is a single wall
        assert chambers.classify_point(1, pt([], 0)) == chambers.wall(1)

    def test_outside_base(self):
        with pytest.raises(errors.OutsideBase):
            chambers.classify_point(2, pt([1], -1))

    def test_dimension_mismatch(self):
        with pytest.raises(errors.DimensionMismatch):
            chambers.classify_point(3, pt([1], 0))

    def test_explicit_components_n3(self):
        # explicit descriptions of the three wall components for n = 3
        step = Fraction(1, 3)
        grid = [step * k for k in range(-6, 7)]
        for l1 in grid:
            for l2 in grid:
                got = chambers.classify_point(3, pt([l1, l2], 0))
                if l1 < 0 and l1 < l2:
                    assert got == chambers.wall(1)
                elif l2 < 0 and l2 < l1:
                    assert got == chambers.wall(2)
                elif l1 > 0 and l2 > 0:
                    assert got == chambers.wall(3)
                else:
                    assert got == chambers.DISCRIMINANT


class TestTropical:
    def test_cn_rays_shape(self):
        rays = chambers.cn_rays(3)
        assert rays.rays == ((0, 0, 1), (1, 0, 1), (0, 1, 1))

    def test_m0_pairing_enforced(self):
        with pytest.raises(errors.BadParams):
            chambers.CYFanRays(((1, 0), (2, 1)))

    def test_component_of_generic_point(self):
        rays = chambers.cn_rays(3)
        assert chambers.wall_component_tropical(rays, [-1, 2]) == 1
        assert chambers.wall_component_tropical(rays, [2, -1]) == 2
        assert chambers.wall_component_tropical(rays, [1, 2]) == 0

    def test_tie_is_pi(self):
        rays = chambers.cn_rays(3)
        assert chambers.wall_component_tropical(rays, [0, 1]) is None

    def test_constant_perturbation_breaks_tie(self):
        rays = chambers.cn_rays(3, constants=[Fraction(-1), Fraction(0), Fraction(0)])
        assert chambers.wall_component_tropical(rays, [0, 0]) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(errors.DimensionMismatch):
            chambers.wall_component_tropical(chambers.cn_rays(3), [1])

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_agrees_with_classify_on_grid(self, n):
        rays = chambers.cn_rays(n)
        step = Fraction(1, 3)
        grid = [step * k for k in range(-4, 5)]

        def walk(prefix):
            if len(prefix) == n - 1:
                yield tuple(prefix)
                return
            for x in grid:
                yield from walk(prefix + [x])

        for lam in walk([]):
            got = chambers.wall_component_tropical(rays, lam)
            expected = chambers.classify_point(n, pt(lam, 0))
            if got is None:
                assert expected == chambers.DISCRIMINANT
            elif got == 0:
                assert expected == chambers.wall(n)
            else:
                assert expected == chambers.wall(got)


class TestMonodromy:
    def test_c2_example(self):
        rays = chambers.cn_rays(2)
        assert chambers.monodromy_matrix(rays, 0, 1) == ((1, 1), (0, 1))

    def test_identity_on_same_ray(self):
        rays = chambers.cn_rays(3)
        eye = tuple(tuple(1 if i == j else 0 for j in range(3)) for i in range(3))
        assert chambers.monodromy_matrix(rays, 1, 1) == eye

    def test_index_range(self):
        with pytest.raises(errors.IndexOutOfRange):
            chambers.monodromy_matrix(chambers.cn_rays(2), 0, 5)


def mat_mul(a, b):
    k = len(a)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(k)) for i in range(k)
    )


@given(st.data())
def test_monodromy_group_laws(data):
    n = data.draw(st.integers(min_value=2, max_value=5), label="n")
    rays = chambers.cn_rays(n)
    i = data.draw(st.integers(min_value=0, max_value=n - 1), label="i")
    j = data.draw(st.integers(min_value=0, max_value=n - 1), label="j")
    k = data.draw(st.integers(min_value=0, max_value=n - 1), label="k")
    eye = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
    mij = chambers.monodromy_matrix(rays, i, j)
    mji = chambers.monodromy_matrix(rays, j, i)
    assert mat_mul(mij, mji) == eye
    mjk = chambers.monodromy_matrix(rays, j, k)
    mik = chambers.monodromy_matrix(rays, i, k)
    assert mat_mul(mij, mjk) == mik


class TestTransport:
    def test_transport_into_each_wall(self):
        spec = fan.builtin_fan("cpn", n=3)
        assert chambers.transport_beta_hat(spec, 1) == fan.RelClass(1, (1, 0), (0,))
        assert chambers.transport_beta_hat(spec, 2) == fan.RelClass(1, (0, 1), (0,))
        assert chambers.transport_beta_hat(spec, 3) == fan.RelClass(1, (0, 0), (0,))

    def test_boundary_of_transported_disk(self):
        spec = fan.builtin_fan("cpn", n=4)
        for i in range(1, 5):
            c = chambers.transport_beta_hat(spec, i)
            assert fan.class_boundary(spec, c) == tuple(
                -1 if j == i - 1 else 0 for j in range(4)
            )
            assert fan.class_maslov(spec, c) == 2

    def test_wall_index_range(self):
        with pytest.raises(errors.IndexOutOfRange):
            chambers.transport_beta_hat(fan.builtin_fan("cpn", n=2), 3)
