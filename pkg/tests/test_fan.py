"""Fan validation, disk classes, boundaries, Maslov indices."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from opengw import errors, fan


def cofactor_det(mat):
    """Independent determinant oracle: direct cofactor expansion."""
    k = len(mat)
    if k == 0:
        return 1
    if k == 1:
        return mat[0][0]
    total = 0
    for j in range(k):
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        total += (-1) ** j * mat[0][j] * cofactor_det(minor)
    return total


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda k: st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=k, max_size=k),
        min_size=k,
        max_size=k,
    )
)


@given(small_matrices)
def test_det_matches_cofactor_oracle(mat):
    assert fan.det_int(mat) == cofactor_det(mat)


class TestValidation:
    def test_cp2_all_ok(self):
        spec = fan.FanSpec(n=2, extra_rays=((1, 1),), max_cones=((0, 1), (0, 2), (1, 2)))
        report = fan.validate_fan(spec)
        assert report.all_ok
        assert report.diagnostics == ()

    def test_f2_fails_only_fano(self):
        report = fan.validate_fan(fan.builtin_fan("f2_nonfano"))
        assert report.primitive_ok and report.smooth_ok and report.complete_ok
        assert not report.fano_ok
        # the offending cone is named
        assert any("cone" in d and "needs < 1" in d for d in report.diagnostics)

    def test_missing_cone_breaks_completeness(self):
        spec = fan.FanSpec(n=2, extra_rays=((1, 1),), max_cones=((0, 1), (0, 2)))
        report = fan.validate_fan(spec)
        assert report.smooth_ok
        assert not report.complete_ok
        assert any("facet" in d for d in report.diagnostics)

    def test_no_cones_raises(self):
        spec = fan.FanSpec(n=2, extra_rays=((1, 1),))
        with pytest.raises(errors.MissingCones):
            fan.validate_fan(spec)

    def test_malformed_cone(self):
        spec = fan.FanSpec(n=2, extra_rays=((1, 1),), max_cones=((0, 0), (1, 2), (0, 2)))
        with pytest.raises(errors.MalformedCone):
            fan.validate_fan(spec)

    def test_cone_index_out_of_range(self):
        with pytest.raises(errors.IndexOutOfRange):
            fan.FanSpec(n=2, extra_rays=((1, 1),), max_cones=((0, 7),))

    def test_nonprimitive_ray_reported(self):
        spec = fan.FanSpec(n=2, extra_rays=((2, 2),), max_cones=((0, 1), (0, 2), (1, 2)))
        report = fan.validate_fan(spec)
        assert not report.primitive_ok

    def test_duplicate_ray_reported(self):
        spec = fan.FanSpec(
            n=2, extra_rays=((1, 1), (1, 1)), max_cones=((0, 1), (0, 2), (1, 3))
        )
        report = fan.validate_fan(spec)
        assert not report.primitive_ok

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_builtin_cpn_all_ok(self, n):
        assert fan.validate_fan(fan.builtin_fan("cpn", n=n)).all_ok

    @pytest.mark.parametrize("n,r", [(n, r) for n in range(2, 7) for r in range(1, n)])
    def test_builtin_products_all_ok(self, n, r):
        assert fan.validate_fan(fan.builtin_fan("cp_product", n=n, r=r)).all_ok

    def test_builtin_f1_all_ok(self):
        assert fan.validate_fan(fan.builtin_fan("hirzebruch_f1")).all_ok

    def test_fano_verdict_stable_under_relabeling(self):
        # swap the two extra rays of F_1 and relabel cones accordingly
        orig = fan.builtin_fan("hirzebruch_f1")
        relabel = {0: 0, 1: 1, 2: 3, 3: 2}
        swapped = fan.FanSpec(
            n=2,
            extra_rays=(orig.extra_rays[1], orig.extra_rays[0]),
            max_cones=tuple(tuple(sorted(relabel[i] for i in c)) for c in orig.max_cones),
        )
        assert fan.validate_fan(swapped).fano_ok == fan.validate_fan(orig).fano_ok

    def test_unknown_builtin(self):
        with pytest.raises(errors.UnknownName):
            fan.builtin_fan("dp3")

    def test_bad_builtin_params(self):
        with pytest.raises(errors.BadParams):
            fan.builtin_fan("cpn", n=0)
        with pytest.raises(errors.BadParams):
            fan.builtin_fan("cp_product", n=3, r=3)
        with pytest.raises(errors.BadParams):
            fan.builtin_fan("cpn")


class TestClasses:
    def setup_method(self):
        self.cp2 = fan.builtin_fan("cpn", n=2)
        self.f1 = fan.builtin_fan("hirzebruch_f1")

    def test_ray_decomposition_cp2(self):
        v, p = fan.ray_decomposition(self.cp2, 1)
        assert v == (1, 1) and p == 2

    def test_ray_decomposition_f1(self):
        assert fan.ray_decomposition(self.f1, 1) == ((1, 1), 2)
        assert fan.ray_decomposition(self.f1, 2) == ((0, 1), 1)

    def test_boundary_of_basic_disks(self):
        # d(beta_i) = -e_i in every dimension
        for n in range(1, 5):
            spec = fan.builtin_fan("cpn", n=n)
            for i in range(1, n + 1):
                expected = tuple(-1 if j == i - 1 else 0 for j in range(n))
                assert fan.class_boundary(spec, fan.beta_class(spec, i)) == expected

    def test_boundary_of_beta_prime_is_the_ray(self):
        for name, kw in [
            ("cpn", {"n": 3}),
            ("cp_product", {"n": 3, "r": 1}),
            ("hirzebruch_f1", {}),
        ]:
            spec = fan.builtin_fan(name, **kw)
            for a in range(1, spec.m + 1):
                v, _ = fan.ray_decomposition(spec, a)
                assert fan.class_boundary(spec, fan.beta_prime_class(spec, a)) == v

    def test_boundary_vanishes_on_spheres(self):
        assert fan.class_boundary(self.cp2, fan.sphere_class(self.cp2, 1)) == (0, 0)

    def test_maslov_values(self):
        assert fan.class_maslov(self.cp2, fan.beta_hat_class(self.cp2)) == 2
        assert fan.class_maslov(self.cp2, fan.gamma_class(self.cp2, 1)) == 0
        # a line in CP^2 has Maslov 6 = 2(1 + p)
        assert fan.class_maslov(self.cp2, fan.sphere_class(self.cp2, 1)) == 6
        for a in (1, 2):
            assert fan.class_maslov(self.f1, fan.beta_prime_class(self.f1, a)) == 2

    def test_shape_mismatch(self):
        with pytest.raises(errors.DimensionMismatch):
            fan.class_boundary(self.cp2, fan.RelClass(0, (0, 0), (0,)))
        with pytest.raises(errors.DimensionMismatch):
            fan.class_maslov(self.cp2, fan.RelClass(0, (0,), ()))

    def test_class_names(self):
        assert fan.class_name(fan.RelClass(-2, (1,), (1,))) == "H_1 - 2β̂ + γ_1"
        assert fan.class_name(fan.RelClass(1, (0,), (0,))) == "β̂"
        assert fan.class_name(fan.RelClass(0, (0,), (0,))) == "0"
        assert fan.class_name(fan.RelClass(-1, (-3, 0), (0, 2))) == (
            "2H_2 - β̂ - 3γ_1"
        )


def rel_classes(n, m):
    return st.builds(
        fan.RelClass,
        st.integers(min_value=-4, max_value=4),
        st.tuples(*[st.integers(min_value=-4, max_value=4)] * (n - 1)),
        st.tuples(*[st.integers(min_value=-4, max_value=4)] * m),
    )


@given(st.data())
def test_boundary_and_maslov_are_additive(data):
    n = data.draw(st.integers(min_value=1, max_value=4), label="n")
    spec = fan.builtin_fan("cpn", n=n)
    c1 = data.draw(rel_classes(n, 1), label="c1")
    c2 = data.draw(rel_classes(n, 1), label="c2")
    b1 = fan.class_boundary(spec, c1)
    b2 = fan.class_boundary(spec, c2)
    assert fan.class_boundary(spec, c1 + c2) == tuple(x + y for x, y in zip(b1, b2))
    assert fan.class_maslov(spec, c1 + c2) == fan.class_maslov(spec, c1) + fan.class_maslov(
        spec, c2
    )


@given(st.data())
def test_transported_disk_identity(data):
    # beta_i - beta_hat = gamma_i and gamma_n is absent (beta_n = beta_hat)
    n = data.draw(st.integers(min_value=2, max_value=5), label="n")
    spec = fan.builtin_fan("cpn", n=n)
    i = data.draw(st.integers(min_value=1, max_value=n - 1), label="i")
    diff = fan.beta_class(spec, i) - fan.beta_hat_class(spec)
    assert diff == fan.gamma_class(spec, i)
    assert fan.beta_class(spec, n) == fan.beta_hat_class(spec)
