# Copyright 2024 The hypsurf Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import dataclasses
import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize

from hypsurf import core, errors, logging

GAMMA = core.MoebiusMap(-1.0, 0.0, 2.0, -1.0)
TIMES4 = core.MoebiusMap(2.0, 0.0, 0.0, 0.5)


def random_map(rng: np.random.Generator) -> core.MoebiusMap:
    a = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
    b, c = rng.uniform(-2.0, 2.0, size=2)
    return core.MoebiusMap(a, b, c, (1 + b * c) / a)


def random_point(rng: np.random.Generator) -> core.HPoint:
    return core.HPoint(rng.uniform(-3.0, 3.0), rng.uniform(0.05, 3.0))


maps = st.builds(
    lambda a, b, c: core.MoebiusMap(a, b, c, (1 + b * c) / a),
    st.floats(0.5, 2.0),
    st.floats(-2.0, 2.0),
    st.floats(-2.0, 2.0),
)
points = st.builds(core.HPoint, st.floats(-3.0, 3.0), st.floats(0.05, 3.0))


class TestMoebiusMap(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_construction(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            entries: tuple[float, float, float, float]
            want: type[Exception] | None

        cases = [
            TestCase(reason="A unit determinant matrix is a map.", entries=(1, 2, 0, 1), want=None),
            TestCase(reason="A zero determinant is degenerate.", entries=(1, 1, 1, 1), want=errors.DegenerateMapError),
            TestCase(
                reason="A negative determinant is degenerate.",
                entries=(0, 1, 1, 0),
                want=errors.DegenerateMapError,
            ),
            TestCase(reason="A determinant other than 1 is refused.", entries=(2, 0, 0, 1), want=errors.DomainError),
        ]

        for case in cases:
            if case.want is None:
                core.MoebiusMap(*case.entries)
                continue
            with self.assertRaises(case.want, msg=case.reason):
                core.MoebiusMap(*case.entries)

    def test_from_entries_normalizes(self) -> None:
        m = core.MoebiusMap.from_entries(2.0, 0.0, 0.0, 2.0)
        self.assertEqual((1.0, 0.0, 0.0, 1.0), (m.a, m.b, m.c, m.d), "-want, +got")

    def test_key_ignores_sign(self) -> None:
        m = core.MoebiusMap(-1.0, -2.0, 0.0, -1.0)
        self.assertEqual(core.MoebiusMap(1.0, 2.0, 0.0, 1.0).key(), m.key(), "-want, +got")

    @settings(max_examples=200, deadline=None)
    @given(m1=maps, m2=maps, p=points)
    def test_apply_respects_composition(self, m1: core.MoebiusMap, m2: core.MoebiusMap, p: core.HPoint) -> None:
        want = core.apply(m1, core.apply(m2, p))
        got = core.apply(core.compose(m1, m2), p)
        self.assertAlmostEqual(want.x, got.x, delta=1e-9 * max(1.0, abs(want.x)))
        self.assertAlmostEqual(want.y, got.y, delta=1e-9 * max(1.0, want.y))

    def test_group_axioms_on_long_products(self) -> None:
        rng = np.random.default_rng(7)
        for _ in range(200):
            ms = [random_map(rng) for _ in range(int(rng.integers(1, 21)))]
            product = core.MoebiusMap.identity()
            for m in ms:
                product = product @ m
            back = product
            for m in reversed(ms):
                back = back @ core.inverse(m)
            scale = max(1.0, *(abs(v) for v in (product.a, product.b, product.c, product.d)))
            self.assertTrue(core.is_identity(back, 1e-12 * scale * scale), f"products of {len(ms)} maps")


class TestApply(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_apply(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            m: core.MoebiusMap
            p: core.HPoint | core.BoundaryPoint
            want: core.HPoint | core.BoundaryPoint

        cases = [
            TestCase(
                reason="The identity fixes every point.",
                m=core.MoebiusMap.identity(),
                p=core.HPoint(0.0, 1.0),
                want=core.HPoint(0.0, 1.0),
            ),
            TestCase(
                reason="z ↦ z + 2 translates.",
                m=core.MoebiusMap(1.0, 2.0, 0.0, 1.0),
                p=core.HPoint(0.0, 1.0),
                want=core.HPoint(2.0, 1.0),
            ),
            TestCase(
                reason="γ sends ∞ to a/c = -1/2.",
                m=GAMMA,
                p=core.INFINITY,
                want=core.BoundaryPoint(-0.5),
            ),
            TestCase(
                reason="γ sends its pole 1/2 to ∞.",
                m=GAMMA,
                p=core.BoundaryPoint(0.5),
                want=core.INFINITY,
            ),
        ]

        for case in cases:
            got = core.apply(case.m, case.p)
            self.assertEqual(case.want, got, "-want, +got")


class TestClassify(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_classify(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            m: core.MoebiusMap
            want: core.Kind

        cases = [
            TestCase(reason="±Id is the identity.", m=core.MoebiusMap(-1.0, 0.0, 0.0, -1.0), want=core.Kind.IDENTITY),
            TestCase(reason="Trace 2 is parabolic.", m=core.MoebiusMap(1.0, 2.0, 0.0, 1.0), want=core.Kind.PARABOLIC),
            TestCase(
                reason="The product of the two level-2 generators has trace 6.",
                m=core.MoebiusMap(1.0, 2.0, 0.0, 1.0) @ core.MoebiusMap(1.0, 0.0, 2.0, 1.0),
                want=core.Kind.HYPERBOLIC,
            ),
            TestCase(reason="Trace 0 is elliptic.", m=core.MoebiusMap(0.0, 1.0, -1.0, 0.0), want=core.Kind.ELLIPTIC),
            TestCase(
                reason="A trace inside the parabolic band is parabolic.",
                m=core.MoebiusMap.from_entries(1.0 + 1e-11, 1.0, 0.0, 1.0),
                want=core.Kind.PARABOLIC,
            ),
        ]

        for case in cases:
            got = core.classify(case.m)
            self.assertEqual(case.want, got, "-want, +got")

    def test_translation_length(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            m: core.MoebiusMap
            want: float

        cases = [
            TestCase(
                reason="Trace 6 gives 2·arccosh(3).",
                m=core.MoebiusMap(1.0, 2.0, 0.0, 1.0) @ core.MoebiusMap(1.0, 0.0, 2.0, 1.0),
                want=2 * math.acosh(3),
            ),
            TestCase(reason="z ↦ 4z has trace 2.5.", m=TIMES4, want=2 * math.acosh(1.25)),
        ]

        for case in cases:
            got = core.translation_length(case.m)
            self.assertAlmostEqual(case.want, got, delta=1e-12, msg=case.reason)

        self.assertAlmostEqual(2 * math.acosh(3), 3.525494348, delta=1e-9)

    def test_translation_length_needs_hyperbolic(self) -> None:
        with self.assertRaises(errors.NotHyperbolicError):
            core.translation_length(core.MoebiusMap(1.0, 2.0, 0.0, 1.0))


class TestAxis(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_axis(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            m: core.MoebiusMap
            want: tuple[float | None, float | None]

        cases = [
            TestCase(reason="A diagonal map has axis (0, ∞).", m=TIMES4, want=(0.0, None)),
            TestCase(
                reason="XY solves z² - 2z - 1 = 0.",
                m=core.MoebiusMap(5.0, 2.0, 2.0, 1.0),
                want=(1 - math.sqrt(2), 1 + math.sqrt(2)),
            ),
        ]

        for case in cases:
            got = core.axis(case.m)
            want = core.Geodesic.between(*case.want)
            self.assertTrue(got.start.close(want.start, 1e-12), f"{case.reason}: start {got.start}")
            self.assertTrue(got.end.close(want.end, 1e-12), f"{case.reason}: end {got.end}")

    def test_axis_is_invariant(self) -> None:
        rng = np.random.default_rng(11)
        for _ in range(200):
            m = random_map(rng)
            if core.classify(m) != core.Kind.HYPERBOLIC:
                continue
            ax = core.axis(m)
            moved = ax.image(m)
            self.assertTrue(moved.start.close(ax.start, 1e-9) and moved.end.close(ax.end, 1e-9), str(m))

    def test_axis_is_equivariant(self) -> None:
        rng = np.random.default_rng(12)
        m = core.MoebiusMap(5.0, 2.0, 2.0, 1.0)
        for _ in range(100):
            g = random_map(rng)
            want = core.axis(m).image(g)
            got = core.axis(core.conjugate(m, g))
            self.assertTrue(want.start.close(got.start, 1e-9) and want.end.close(got.end, 1e-9), str(g))


class TestDistance(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_dist(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            p: core.HPoint
            q: core.HPoint
            want: float

        cases = [
            TestCase(
                reason="A vertical segment has log length.",
                p=core.HPoint(0, 1),
                q=core.HPoint(0, math.e),
                want=1.0,
            ),
            TestCase(
                reason="A point is at distance 0 from itself.",
                p=core.HPoint(0, 1),
                q=core.HPoint(0, 1),
                want=0.0,
            ),
            TestCase(
                reason="cosh d = 1 + 1/2 for unit horizontal offset at height 1.",
                p=core.HPoint(0, 1),
                q=core.HPoint(1, 1),
                want=math.acosh(1.5),
            ),
        ]

        for case in cases:
            got = core.dist(case.p, case.q)
            self.assertAlmostEqual(case.want, got, delta=1e-12, msg=case.reason)

    @settings(max_examples=300, deadline=None)
    @given(m=maps, p=points, q=points)
    def test_isometry(self, m: core.MoebiusMap, p: core.HPoint, q: core.HPoint) -> None:
        want = core.dist(p, q)
        got = core.dist(core.apply(m, p), core.apply(m, q))
        self.assertAlmostEqual(want, got, delta=1e-10 * max(1.0, want))

    def test_triangle_inequality(self) -> None:
        rng = np.random.default_rng(3)
        for _ in range(1000):
            p, q, r = random_point(rng), random_point(rng), random_point(rng)
            self.assertLessEqual(core.dist(p, r), core.dist(p, q) + core.dist(q, r) + 1e-12)


class TestGeodesicsRelation(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_relation(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            g1: core.Geodesic
            g2: core.Geodesic
            want: core.Relation

        vertical = core.Geodesic.between(0.0, None)
        cases = [
            TestCase(
                reason="Interleaved endpoints cross.",
                g1=vertical,
                g2=core.Geodesic.between(-1.0, 1.0),
                want=core.Relation.CROSSING,
            ),
            TestCase(
                reason="Nested endpoints are disjoint.",
                g1=vertical,
                g2=core.Geodesic.between(1.0, 2.0),
                want=core.Relation.DISJOINT,
            ),
            TestCase(
                reason="One shared endpoint is asymptotic.",
                g1=vertical,
                g2=core.Geodesic.between(0.0, 1.0),
                want=core.Relation.ASYMPTOTIC,
            ),
            TestCase(
                reason="The same endpoints in either order are equal.",
                g1=vertical,
                g2=core.Geodesic.between(None, 0.0),
                want=core.Relation.EQUAL,
            ),
        ]

        for case in cases:
            got = core.geodesics_relation(case.g1, case.g2).kind
            self.assertEqual(case.want, got, "-want, +got")

    def test_disjoint_distance_matches_minimization(self) -> None:
        rng = np.random.default_rng(5)
        vertical = core.Geodesic.between(0.0, None)
        for _ in range(50):
            lo = rng.uniform(0.1, 3.0)
            hi = lo + rng.uniform(0.1, 3.0)
            g = core.Geodesic.between(lo, hi)
            c, r = g.center, g.radius

            def height(t: float, c: float = c, r: float = r) -> float:
                return core.point_geodesic_distance(core.HPoint(c + r * math.cos(t), r * math.sin(t)), vertical)

            oracle = optimize.minimize_scalar(
                height, bounds=(1e-9, math.pi - 1e-9), method="bounded", options={"xatol": 1e-12}
            )
            got = core.geodesics_relation(vertical, g)
            self.assertAlmostEqual(oracle.fun, got.distance, delta=1e-7, msg=f"({lo}, {hi})")

    def test_far_apart_distance_is_accurate(self) -> None:
        # (0, ∞) and (1, 1 + ε): sinh of the distance is 1/ε² asymptotically.
        g = core.Geodesic.between(1.0, 1.0 + 1e-6)
        got = core.geodesics_relation(core.Geodesic.between(0.0, None), g).distance
        want = math.acosh((2 + 1e-6) / 1e-6)
        self.assertAlmostEqual(want, got, delta=1e-8)


class TestDisplacement(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_displacement(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            m: core.MoebiusMap
            p: core.HPoint
            want: float

        cases = [
            TestCase(reason="A point on the axis moves by ln 4.", m=TIMES4, p=core.HPoint(0.0, 1.0), want=math.log(4)),
            TestCase(
                reason="Off the axis the displacement is the direct distance.",
                m=TIMES4,
                p=core.HPoint(1.0, 1.0),
                want=core.dist(core.HPoint(1.0, 1.0), core.HPoint(4.0, 4.0)),
            ),
        ]

        for case in cases:
            got = core.displacement(case.m, case.p).distance
            self.assertAlmostEqual(case.want, got, delta=1e-12, msg=case.reason)

    def test_on_axis_equals_translation_length(self) -> None:
        d = core.displacement(TIMES4, core.HPoint(0.0, 3.0))
        self.assertAlmostEqual(d.translation_length, d.distance, delta=1e-12)
        self.assertAlmostEqual(0.0, d.offset, delta=1e-12)

    def test_factorization_on_random_maps(self) -> None:
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 10_000:
            m = random_map(rng)
            if abs(m.trace) < 2.01:
                continue
            p = random_point(rng)
            d = core.displacement(m, p)
            lhs = math.sinh(d.distance / 2)
            rhs = math.sinh(d.translation_length / 2) * math.cosh(d.offset)
            self.assertAlmostEqual(lhs, rhs, delta=1e-10 * max(1.0, lhs))
            checked += 1

    def test_parabolic_is_refused(self) -> None:
        with self.assertRaises(errors.NotHyperbolicError):
            core.displacement(core.MoebiusMap(1.0, 2.0, 0.0, 1.0), core.HPoint(0.0, 1.0))


class TestIsometricCircle(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_isometric_circle(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            m: core.MoebiusMap
            want: core.Circle

        cases = [
            TestCase(reason="γ has its circle centred at 1/2.", m=GAMMA, want=core.Circle(0.5, 0.5)),
            TestCase(reason="γ⁻¹ has its circle centred at -1/2.", m=GAMMA.inverse(), want=core.Circle(-0.5, 0.5)),
        ]

        for case in cases:
            got = core.isometric_circle(case.m)
            self.assertEqual(case.want, got, "-want, +got")

    def test_fixing_infinity_has_no_circle(self) -> None:
        with self.assertRaises(errors.FixesInfinityError):
            core.isometric_circle(TIMES4)

    def test_derivative_is_one_on_the_circle(self) -> None:
        rng = np.random.default_rng(17)
        for _ in range(1000):
            m = random_map(rng)
            if m.fixes_infinity(1e-6):
                continue
            circle = core.isometric_circle(m)
            t = rng.uniform(0, math.pi)
            z = complex(circle.center + circle.radius * math.cos(t), circle.radius * math.sin(t))
            self.assertAlmostEqual(1.0, 1 / abs(m.c * z + m.d) ** 2, delta=1e-10)

    def test_axis_angles(self) -> None:
        rng = np.random.default_rng(19)
        for _ in range(1000):
            s = rng.uniform(0.05, 3.0)
            r = rng.uniform(0.2, 5.0)
            # Translation of length 2s along the half-circle of radius r at 0.
            m = core.MoebiusMap(math.cosh(s), r * math.sinh(s), math.sinh(s) / r, math.cosh(s))
            got = core.axis_angles(m)
            self.assertAlmostEqual(got.from_circles, got.from_distance, delta=1e-10)
            want = math.sinh(got.translation_length / 2)
            self.assertAlmostEqual(want, math.tan(got.from_circles), delta=1e-10 * math.cosh(s) ** 2)
            self.assertAlmostEqual(got.axis_radius, got.isometric_radius * math.tan(got.from_circles), delta=1e-10 * r)


class TestHorodisk(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_horodisk_image(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            m: core.MoebiusMap
            h: core.Horodisk
            want: core.HorodiskImage

        cases = [
            TestCase(
                reason="A translation fixing ∞ maps the horodisk to itself.",
                m=core.MoebiusMap(1.0, 2.0, 0.0, 1.0),
                h=core.Horodisk(core.INFINITY, 0.7),
                want=core.HorodiskImage(core.Horodisk(core.INFINITY, 0.7), core.Contact.OVERLAPPING),
            ),
            TestCase(
                reason="At height 1/2 the image under γ is tangent.",
                m=GAMMA,
                h=core.Horodisk(core.INFINITY, 0.5),
                want=core.HorodiskImage(core.Horodisk(core.BoundaryPoint(-0.5), 0.5), core.Contact.TANGENT),
            ),
            TestCase(
                reason="At height 1 the image under γ has diameter 1/4 and is disjoint.",
                m=GAMMA,
                h=core.Horodisk(core.INFINITY, 1.0),
                want=core.HorodiskImage(core.Horodisk(core.BoundaryPoint(-0.5), 0.25), core.Contact.DISJOINT),
            ),
        ]

        for case in cases:
            got = core.horodisk_image(case.m, case.h)
            self.assertEqual(case.want, got, "-want, +got")

    def test_contact_agrees_with_euclidean_tangency(self) -> None:
        rng = np.random.default_rng(23)
        for _ in range(1000):
            m = random_map(rng)
            if m.fixes_infinity(1e-6):
                continue
            h = core.Horodisk(core.INFINITY, rng.uniform(0.05, 3.0))
            got = core.horodisk_image(m, h)
            self.assertEqual(core.horodisk_relation(h, got.image), got.contact, "-want, +got")

    def test_signed_distance(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            p: core.HPoint
            h: core.Horodisk
            want: float

        cases = [
            TestCase(
                reason="A point on the horocycle.",
                p=core.HPoint(0, 1),
                h=core.Horodisk(core.INFINITY, 1.0),
                want=0.0,
            ),
            TestCase(
                reason="One unit below the horocycle.",
                p=core.HPoint(0, 1),
                h=core.Horodisk(core.INFINITY, math.e),
                want=1.0,
            ),
            TestCase(
                reason="Inside is negative.",
                p=core.HPoint(0, math.e),
                h=core.Horodisk(core.INFINITY, 1.0),
                want=-1.0,
            ),
        ]

        for case in cases:
            got = core.horodisk_signed_distance(case.p, case.h)
            self.assertAlmostEqual(case.want, got, delta=1e-12, msg=case.reason)

    @settings(max_examples=300, deadline=None)
    @given(m=maps, p=points, size=st.floats(0.05, 3.0))
    def test_signed_distance_is_invariant(self, m: core.MoebiusMap, p: core.HPoint, size: float) -> None:
        h = core.Horodisk(core.INFINITY, size)
        want = core.horodisk_signed_distance(p, h)
        got = core.horodisk_signed_distance(core.apply(m, p), core.horodisk_image(m, h).image)
        self.assertAlmostEqual(want, got, delta=1e-9 * max(1.0, abs(want)))


if __name__ == "__main__":
    unittest.main()
