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
import json
import math
import unittest

import mpmath
import numpy as np

from hypsurf import core, errors, fuchsian, identities, logging, precision, surfaces

MARKOFF = surfaces.OneHoledTorus(3.0, 3.0, 3.0)


def series_li2(x: float) -> float:
    """Sum Σ x^k/k² directly; only for x ≤ 1/2."""
    return math.fsum(x**k / (k * k) for k in range(1, 200))


class TestRogersDilog(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_rogers_dilog(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            x: float
            want: float

        cases = [
            TestCase(reason="R(0) is the empty sum.", x=0.0, want=0.0),
            TestCase(reason="R(1) = Li₂(1) = π²/6.", x=1.0, want=math.pi**2 / 6),
            TestCase(reason="R(1/2) is half of R(1) by reflection.", x=0.5, want=math.pi**2 / 12),
            TestCase(
                reason="Below 1/2 the series applies directly.",
                x=0.25,
                want=series_li2(0.25) + 0.5 * math.log(0.25) * math.log(0.75),
            ),
        ]

        for case in cases:
            for prec in precision.Precision:
                got = identities.rogers_dilog(case.x, prec)
                self.assertAlmostEqual(case.want, got, delta=1e-14, msg=f"{case.reason} ({prec.value})")

    def test_reflection(self) -> None:
        for x in np.linspace(0.001, 0.999, 1000):
            got = identities.rogers_dilog(float(x)) + identities.rogers_dilog(1 - float(x))
            self.assertAlmostEqual(math.pi**2 / 6, got, delta=1e-13)

    def test_agrees_with_extended_precision(self) -> None:
        rng = np.random.default_rng(71)
        for x in rng.uniform(0.0, 1.0, 200):
            want = identities.rogers_dilog(float(x), precision.Precision.EXTENDED)
            self.assertAlmostEqual(want, identities.rogers_dilog(float(x)), delta=1e-14)

    def test_monotone(self) -> None:
        values = [identities.rogers_dilog(float(x)) for x in np.linspace(0.0, 1.0, 1001)]
        self.assertTrue(all(a < b for a, b in zip(values, values[1:], strict=False)))

    def test_out_of_range(self) -> None:
        for x in (-0.1, 1.1, math.nan):
            with self.assertRaises(errors.DomainError, msg=str(x)):
                identities.rogers_dilog(x)


class TestTerms(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_mcshane_term(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            args: tuple[float, float, float]
            want: float

        direct = 2 * math.log((math.exp(0.5) + math.exp(1.5)) / (math.exp(-0.5) + math.exp(1.5)))
        cases = [
            TestCase(reason="The closed form at moderate arguments.", args=(1.0, 1.0, 2.0), want=direct),
            TestCase(reason="Long geodesics contribute nothing.", args=(1.0, 200.0, 200.0), want=0.0),
        ]

        for case in cases:
            got = identities.mcshane_term_D(*case.args)
            self.assertAlmostEqual(case.want, got, delta=1e-14, msg=case.reason)

    def test_mcshane_term_near_zero_boundary(self) -> None:
        for x in (0.5, 2.0, 5.0):
            b1 = 1e-6
            want = 2 / (1 + math.exp(x))
            got = identities.mcshane_term_D(b1, x, x) / b1
            self.assertAlmostEqual(want, got, delta=1e-8, msg=str(x))

    def test_mcshane_term_monotone(self) -> None:
        rng = np.random.default_rng(73)
        h = 1e-4
        for b1, x, y in rng.uniform(0.05, 10.0, size=(10_000, 3)):
            d = identities.mcshane_term_D(b1, x, y)
            self.assertGreater(identities.mcshane_term_D(b1 + h, x, y), d)
            self.assertLess(identities.mcshane_term_D(b1, x + h, y), d)
            self.assertLess(identities.mcshane_term_D(b1, x, y + h), d)

    def test_extended_terms_keep_small_boundaries(self) -> None:
        b1 = 1e-12
        for x in (0.5, 2.0, 5.0):
            with mpmath.workdps(60):
                h, s = mpmath.mpf(b1) / 2, mpmath.mpf(x)
                want = float(2 * mpmath.log((mpmath.exp(h) + mpmath.exp(s)) / (mpmath.exp(-h) + mpmath.exp(s))))
            got = identities.mcshane_term_D(b1, x, x, precision.Precision.EXTENDED)
            self.assertAlmostEqual(1.0, got / want, delta=1e-14, msg=str(x))

    def test_extended_terms_agree_with_double(self) -> None:
        rng = np.random.default_rng(83)
        for b1, x, y in rng.uniform(0.05, 10.0, size=(200, 3)):
            want = identities.mcshane_term_D(b1, x, y)
            got = identities.mcshane_term_D(b1, x, y, precision.Precision.EXTENDED)
            self.assertAlmostEqual(want, got, delta=1e-12)
            want = identities.mirzakhani_term_R(b1, x, y)
            got = identities.mirzakhani_term_R(b1, x, y, precision.Precision.EXTENDED)
            self.assertAlmostEqual(want, got, delta=1e-12)

    def test_mirzakhani_term(self) -> None:
        self.assertAlmostEqual(1.0, identities.mirzakhani_term_R(1.0, 1.0, 1e-12), delta=1e-9)
        self.assertLess(identities.mirzakhani_term_R(1.0, 1.0, 50.0), 1e-9)
        self.assertGreater(identities.mirzakhani_term_R(1.0, 1.0, 50.0), 0.0)

    def test_mirzakhani_term_monotone(self) -> None:
        rng = np.random.default_rng(79)
        h = 1e-4
        for b1, bi, eta in rng.uniform(0.05, 10.0, size=(10_000, 3)):
            r = identities.mirzakhani_term_R(b1, bi, eta)
            self.assertGreater(r, 0.0)
            self.assertLess(identities.mirzakhani_term_R(b1, bi, eta + h), r)

    def test_terms_need_positive_arguments(self) -> None:
        for args in ((0.0, 1.0, 1.0), (1.0, 0.0, 1.0), (1.0, 1.0, -1.0)):
            with self.assertRaises(errors.DomainError, msg=str(args)):
                identities.mcshane_term_D(*args)
            with self.assertRaises(errors.DomainError, msg=str(args)):
                identities.mirzakhani_term_R(*args)


class TestSimpleTorusSpectrum(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_first_levels(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            cutoff: float
            want: list[tuple[tuple[int, int], float]]

        cases = [
            TestCase(
                reason="The first Markoff level has three geodesics of trace 3.",
                cutoff=2 * math.acosh(1.5) + 1e-9,
                want=[((0, 1), 3.0), ((1, 0), 3.0), ((1, 1), 3.0)],
            ),
            TestCase(
                reason="The next level has trace 3·3 - 3 = 6.",
                cutoff=2 * math.acosh(3) + 1e-9,
                want=[
                    ((0, 1), 3.0),
                    ((1, 0), 3.0),
                    ((1, 1), 3.0),
                    ((-1, 1), 6.0),
                    ((1, 2), 6.0),
                    ((2, 1), 6.0),
                ],
            ),
        ]

        for case in cases:
            got = [(g.slope, g.trace) for g in identities.simple_torus_spectrum(MARKOFF, case.cutoff)]
            self.assertEqual(case.want, got, "-want, +got")

    def test_slopes_are_unique(self) -> None:
        spectrum = identities.simple_torus_spectrum(MARKOFF, 20.0)
        self.assertEqual(len(spectrum), len({g.slope for g in spectrum}), "-want, +got")
        self.assertEqual(sorted(g.length for g in spectrum), [g.length for g in spectrum], "-want, +got")

    def test_agrees_with_ball_simplicity(self) -> None:
        group = surfaces.one_holed_torus(MARKOFF.x, MARKOFF.y, MARKOFF.z)
        simple = []
        for cls in fuchsian.conjugacy_classes(group, 20.0, 6):
            if fuchsian.simplicity(group, cls, 4).kind == fuchsian.Simplicity.SIMPLE:
                simple.append(cls.trace)
        markoff = [g.trace for g in identities.simple_torus_spectrum(MARKOFF, 2 * math.acosh(10))]
        np.testing.assert_allclose(sorted(simple), sorted(markoff), rtol=1e-9)


class TestVerifyMcShane(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_cusped_sum_selects_the_convention(self) -> None:
        convention, evidence = identities.select_convention()
        self.assertEqual(identities.Convention.FULL, convention, "-want, +got")
        self.assertIs(identities.Convention.MIRZAKHANI, convention)
        self.assertEqual("mirzakhani", convention.value, "-want, +got")
        self.assertAlmostEqual(identities.CUSPED_MCSHANE_SUM, evidence, delta=1e-6)

    def test_converges(self) -> None:
        got = identities.verify_mcshane(surfaces.OneHoledTorus.symmetric(1.0), 25.0)
        self.assertEqual("mcshane", got.identity, "-want, +got")
        self.assertEqual(got.targets.full, got.target, "-want, +got")
        self.assertAlmostEqual(1.0, got.targets.full, delta=1e-9)
        self.assertAlmostEqual(0.5, got.targets.half, delta=1e-9)
        self.assertEqual(got.targets.alternative, got.targets.full, "-want, +got")
        self.assertEqual("mirzakhani", got.convention_selected, "-want, +got")
        dumped = json.loads(got.model_dump_json())
        self.assertEqual(["alternative", "paper"], sorted(dumped["targets"]), "-want, +got")
        self.assertAlmostEqual(0.5, dumped["targets"]["paper"], delta=1e-9)
        self.assertLess(abs(got.residual), 1e-3)

    def test_partial_sums_increase(self) -> None:
        t = surfaces.OneHoledTorus.symmetric(1.0)
        sums = [identities.verify_mcshane(t, c).partial_sum for c in (5.0, 10.0, 15.0, 25.0)]
        self.assertEqual(sorted(sums), sums, "-want, +got")
        self.assertLessEqual(sums[-1], 1.0 + 1e-9)

        report = identities.verify_mcshane(t, 25.0)
        running = [r.running_sum for r in report.records]
        self.assertEqual(sorted(running), running, "-want, +got")

    def test_cusped_limit(self) -> None:
        b1 = 0.01
        got = identities.verify_mcshane(surfaces.OneHoledTorus.symmetric(b1), 25.0)
        self.assertAlmostEqual(2 * identities.CUSPED_MCSHANE_SUM, got.partial_sum / b1, delta=1e-3)

    def test_extended_precision_agrees(self) -> None:
        t = surfaces.OneHoledTorus.symmetric(1.0)
        want = identities.verify_mcshane(t, 15.0).partial_sum
        got = identities.verify_mcshane(t, 15.0, precision.Precision.EXTENDED).partial_sum
        self.assertAlmostEqual(want, got, delta=1e-12)

    def test_extended_precision_reaches_low_digits(self) -> None:
        t = surfaces.OneHoledTorus.symmetric(1.0)
        double = identities.verify_mcshane(t, 25.0)
        extended = identities.verify_mcshane(t, 25.0, precision.Precision.EXTENDED)
        self.assertEqual("double", double.precision, "-want, +got")
        self.assertEqual("extended", extended.precision, "-want, +got")
        self.assertEqual(double.terms, extended.terms, "-want, +got")
        self.assertAlmostEqual(double.residual, extended.residual, delta=1e-10)
        self.assertNotEqual(double.residual, extended.residual)

    def test_needs_geodesic_boundary(self) -> None:
        with self.assertRaises(errors.DomainError):
            identities.verify_mcshane(MARKOFF, 10.0)


class TestOrthogeodesics(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_shortest_are_the_seams(self) -> None:
        pants = surfaces.PairOfPants(2.0, 2.0, 2.0)
        got = identities.orthogeodesic_spectrum(pants, 6.0, 6)
        seam = pants.seam(0, 1)
        self.assertEqual([(0, 1), (0, 2), (1, 2)], sorted(o.boundaries for o in got[:3]), "-want, +got")
        for o in got[:3]:
            self.assertAlmostEqual(seam, o.length, delta=1e-9)
        self.assertGreater(got[3].length, seam + 1e-6)

    def test_unequal_seams(self) -> None:
        pants = surfaces.PairOfPants(1.0, 2.0, 3.0)
        got = identities.orthogeodesic_spectrum(pants, 6.0, 6)
        for o in got:
            i, j = o.boundaries
            if i != j and o.word == fuchsian.Word(()):
                self.assertAlmostEqual(pants.seam(i, j), o.length, delta=1e-9, msg=str(o.boundaries))

    def test_relabeling(self) -> None:
        want = [o.length for o in identities.orthogeodesic_spectrum(surfaces.PairOfPants(1.0, 2.0, 3.0), 3.5, 8)]
        got = [o.length for o in identities.orthogeodesic_spectrum(surfaces.PairOfPants(3.0, 1.0, 2.0), 3.5, 8)]
        np.testing.assert_allclose(got, want, rtol=1e-9)

    def test_count_grows_with_cutoff(self) -> None:
        pants = surfaces.PairOfPants(2.0, 2.0, 2.0)
        counts = [len(identities.orthogeodesic_spectrum(pants, c, 8)) for c in (3.0, 6.0, 9.0)]
        self.assertEqual(sorted(counts), counts, "-want, +got")
        self.assertLess(counts[0], counts[-1])

    def test_errors(self) -> None:
        with self.assertRaises(errors.CuspedBoundaryError):
            identities.orthogeodesic_spectrum(surfaces.PairOfPants(0.0, 2.0, 2.0), 6.0, 4)
        with self.assertRaises(errors.EmptyBallError):
            identities.orthogeodesic_spectrum(surfaces.PairOfPants(2.0, 2.0, 2.0), 6.0, 0)


class TestVerifyBridgeman(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_converges(self) -> None:
        got = identities.verify_bridgeman(surfaces.PairOfPants(2.0, 2.0, 2.0), 16.0, 10)
        self.assertEqual("bridgeman", got.identity, "-want, +got")
        self.assertAlmostEqual(math.pi**2 / 2, got.target, delta=1e-12)
        self.assertLess(got.residual / got.target, 0.02)
        self.assertGreaterEqual(got.residual, -1e-9)

    def test_partial_sums_increase(self) -> None:
        pants = surfaces.PairOfPants(2.0, 2.0, 2.0)
        sums = [identities.verify_bridgeman(pants, c, 8).partial_sum for c in (4.0, 8.0, 12.0)]
        self.assertEqual(sorted(sums), sums, "-want, +got")
        self.assertLessEqual(sums[-1], math.pi**2 / 2 + 1e-9)

    def test_term_range(self) -> None:
        report = identities.verify_bridgeman(surfaces.PairOfPants(2.0, 2.0, 2.0), 8.0, 6)
        for r in report.records:
            self.assertTrue(0 < r.term < math.pi**2 / 6, r.label)
            want = identities.rogers_dilog(1 / math.cosh(r.length / 2) ** 2)
            self.assertEqual(want, r.term, "-want, +got")

    def test_conjugation_invariance(self) -> None:
        pants = surfaces.PairOfPants(1.0, 2.0, 3.0)
        group = surfaces.pair_of_pants(*pants.lengths)
        want = identities.verify_bridgeman(pants, 6.0, 6)
        g = core.MoebiusMap(1.3, 0.4, -0.2, (1 + 0.4 * -0.2) / 1.3)
        got = identities.verify_bridgeman(pants, 6.0, 6, group=group.conjugated(g))
        self.assertEqual(want.terms, got.terms, "-want, +got")
        self.assertAlmostEqual(want.partial_sum, got.partial_sum, delta=1e-9)

    def test_extended_precision(self) -> None:
        pants = surfaces.PairOfPants(2.0, 2.0, 2.0)
        double = identities.verify_bridgeman(pants, 8.0, 6)
        extended = identities.verify_bridgeman(pants, 8.0, 6, precision.Precision.EXTENDED)
        self.assertEqual("extended", extended.precision, "-want, +got")
        self.assertEqual(double.terms, extended.terms, "-want, +got")
        self.assertAlmostEqual(double.partial_sum, extended.partial_sum, delta=1e-10)
        for want, got in zip(double.records, extended.records, strict=True):
            self.assertAlmostEqual(want.length, got.length, delta=1e-9, msg=want.label)

    def test_report_excludes_records(self) -> None:
        report = identities.verify_bridgeman(surfaces.PairOfPants(2.0, 2.0, 2.0), 4.0, 4)
        self.assertNotIn("records", report.model_dump())
        self.assertEqual(report.terms, len(report.records), "-want, +got")


class TestSeriesOracle(unittest.TestCase):
    def test_mpmath_series(self) -> None:
        # The direct series oracle itself agrees with mpmath below 1/2.
        for x in (0.1, 0.3, 0.5):
            self.assertAlmostEqual(float(mpmath.polylog(2, x)), series_li2(x), delta=1e-15)


if __name__ == "__main__":
    unittest.main()
