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
import unittest
from collections.abc import Callable

from hypsurf import logging, report, verdict


class TestVerdict(unittest.TestCase):
    def setUp(self) -> None:
        logging.configure(level=logging.Level.DISABLED)

    def test_exit_code(self) -> None:
        @dataclasses.dataclass
        class TestCase:
            reason: str
            add: list[Callable[[report.Envelope, str], None]]
            want: int

        cases = [
            TestCase(reason="A run without results succeeded.", add=[], want=verdict.EXIT_OK),
            TestCase(reason="Warnings do not fail a run.", add=[verdict.normal, verdict.warning], want=verdict.EXIT_OK),
            TestCase(
                reason="A single fatal result fails the run.",
                add=[verdict.normal, verdict.fatal, verdict.warning],
                want=verdict.EXIT_FATAL,
            ),
        ]

        for case in cases:
            env = report.Envelope(command="cusp-area")
            for add in case.add:
                add(env, case.reason)
            self.assertEqual(case.want, verdict.exit_code(env), case.reason)

    def test_results_keep_order(self) -> None:
        env = report.Envelope(command="cusp-area")
        verdict.normal(env, "area 4")
        verdict.fatal(env, "area below 4")
        want = [
            verdict.Result(severity=verdict.Severity.NORMAL, message="area 4"),
            verdict.Result(severity=verdict.Severity.FATAL, message="area below 4"),
        ]
        self.assertEqual(want, env.results, "-want, +got")

    def test_exit_codes_are_distinct(self) -> None:
        codes = {verdict.EXIT_OK, verdict.EXIT_INPUT, verdict.EXIT_FATAL}
        self.assertEqual({0, 1, 2}, codes, "-want, +got")


if __name__ == "__main__":
    unittest.main()
