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

import importlib.util
import pathlib
import tempfile
import unittest

from hypsurf import figure, logging, surfaces

HAS_CAIRO = importlib.util.find_spec("cairocffi") is not None


class TestScene(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_sphere(self) -> None:
        got = figure.scene(surfaces.thrice_punctured_sphere())

        # X fixes ∞, so only γ and its inverse have isometric circles.
        circles = sorted((c.center, c.radius) for c in got.isometric_circles)
        self.assertEqual([(-0.5, 0.5), (0.5, 0.5)], circles, "-want, +got")

        self.assertEqual(0.5, got.cusp_height, "-want, +got")
        top, *rest = got.horodisks
        self.assertTrue(top.base.is_infinite)
        self.assertAlmostEqual(0.5, top.size, delta=1e-12)
        bases = sorted(h.base.value for h in rest)
        self.assertIn(-0.5, bases)
        self.assertIn(0.5, bases)
        for h in rest:
            self.assertAlmostEqual(0.5, h.size, delta=1e-9)
            self.assertAlmostEqual(0.5, abs(h.base.value) % 1.0, delta=1e-9)

        self.assertTrue(got.axes)
        self.assertLess(got.xlim[0], -1.0)
        self.assertGreater(got.xlim[1], 1.0)
        self.assertEqual(0.0, got.ylim[0], "-want, +got")

    def test_without_cusp(self) -> None:
        got = figure.scene(surfaces.pair_of_pants(2.0, 2.0, 2.0))
        self.assertEqual(4, len(got.isometric_circles), "-want, +got")
        self.assertEqual([], got.horodisks, "-want, +got")
        self.assertIsNone(got.cusp_height)
        self.assertLess(got.xlim[0], got.xlim[1])


@unittest.skipUnless(HAS_CAIRO, "drawing needs cairocffi")
class TestRender(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_render(self) -> None:
        s = figure.scene(surfaces.thrice_punctured_sphere())
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "sphere3.svg"
            got = figure.render(s, path, width=400)
            self.assertIn("<svg", path.read_text())

        want = figure.FigureSummary(
            path=str(path),
            isometric_circles=len(s.isometric_circles),
            horodisks=len(s.horodisks),
            axes=len(s.axes),
            cusp_height=0.5,
        )
        self.assertEqual(want, got, "-want, +got")


if __name__ == "__main__":
    unittest.main()
