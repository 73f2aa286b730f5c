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

"""Hyperbolic surfaces as Fuchsian groups acting on the upper half-plane.

The package is organised bottom-up:

* `hypsurf.core` - points, Möbius maps, geodesics, horodisks and the exact
  distance formulas.
* `hypsurf.trig` - scalar hyperbolic trigonometry (collars, cusp loops,
  right-angled pentagons and hexagons).
* `hypsurf.fuchsian` - free Fuchsian groups, word balls, conjugacy classes,
  simplicity certificates and maximal cusps.
* `hypsurf.surfaces` - the thrice-punctured sphere, one-holed tori, pairs of
  pants and the funnel model.
* `hypsurf.identities` - the McShane-Mirzakhani and Bridgeman identities.
* `hypsurf.invariants` - injectivity radius, systoles and the cusp
  penetration bound.
* `hypsurf.cli` - the command line front end.
"""
