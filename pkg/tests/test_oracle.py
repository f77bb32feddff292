import math
from fractions import Fraction

import pytest

from sphcover.configgen import SubsetSigns, builtin_configuration, make_configuration
from sphcover.oracle import (
    InstanceTooLarge,
    brute_force_vertices,
    min_angle_to,
    sampled_covering_radius,
)
from sphcover.polytope import (
    POLAR,
    Halfspace,
    HPolytope,
    enumerate_vertices,
    polar_hrep,
)
from sphcover.scalar import RATIONAL

F = Fraction


def cross_polytope(n):
    return make_configuration(n, RATIONAL, [SubsetSigns(1, value=1)])


def cube_hrep(n):
    halfspaces = []
    for i in range(n):
        for s in (1, -1):
            halfspaces.append(
                Halfspace(tuple(F(s if j == i else 0) for j in range(n)), POLAR)
            )
    return HPolytope(n, tuple(halfspaces), RATIONAL)


class TestBruteForce:
    def test_cube(self):
        V = brute_force_vertices(cube_hrep(3))
        assert len(V.vertices) == 8

    def test_square_polar(self):
        V = brute_force_vertices(polar_hrep(cross_polytope(2)))
        assert set(V.vertices) == {
            (F(1), F(1)),
            (F(1), F(-1)),
            (F(-1), F(1)),
            (F(-1), F(-1)),
        }

    def test_tight_sets_are_complete(self):
        P = cube_hrep(2)
        V = brute_force_vertices(P)
        for vec, tight in zip(V.vertices, V.tight_sets):
            expected = tuple(
                i
                for i, hs in enumerate(P.halfspaces)
                if sum(a * b for a, b in zip(hs.normal, vec)) == 1
            )
            assert tight == expected

    def test_guard(self):
        with pytest.raises(InstanceTooLarge):
            brute_force_vertices(cube_hrep(7))  # dimension 7 > 6
        big = HPolytope(
            2,
            tuple(
                Halfspace((F(k), F(1)), POLAR) for k in range(-20, 21)
            ),
            RATIONAL,
        )
        with pytest.raises(InstanceTooLarge):
            brute_force_vertices(big)

    def test_agrees_with_engine_on_cross_polytopes(self):
        for n in (2, 3, 4):
            P = polar_hrep(cross_polytope(n))
            assert set(brute_force_vertices(P).vertices) == set(
                enumerate_vertices(P).vertices
            )


class TestSampling:
    def test_cross_polytope_3d(self):
        config = cross_polytope(3)
        expected = math.acos(1 / math.sqrt(3))
        got = sampled_covering_radius(config, 100_000, seed=5)
        assert expected - 0.02 < got <= expected + 1e-12

    def test_upper_bound_on_builtin(self):
        config = builtin_configuration(6)
        got = sampled_covering_radius(config, 100_000, seed=5)
        assert got <= 0.84107 + 1e-9

    def test_angle_at_config_point_is_zero(self):
        # acos amplifies roundoff near 1, so exact zero becomes ~1e-8
        config = builtin_configuration(5)
        assert min_angle_to(config, config.points[0]) == pytest.approx(0.0, abs=1e-7)

    def test_deterministic(self):
        config = cross_polytope(4)
        a = sampled_covering_radius(config, 5000, seed=123)
        b = sampled_covering_radius(config, 5000, seed=123)
        assert a == b

    def test_needs_samples(self):
        with pytest.raises(ValueError):
            sampled_covering_radius(cross_polytope(2), 0)
