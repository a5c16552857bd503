import os
import tempfile

# Set cache dir to a temp dir before importing anything from hopfmorita
tmpdir = tempfile.mkdtemp()
os.environ["HOPFMORITA_CACHE_DIR"] = tmpdir

import json
import unittest

from hopfmorita.errors import InconsistencyError, ProblemValidationError
from hopfmorita.problem import build_context, load_problem
from hopfmorita.tasks import ERROR, FAIL, PASS, SKIP, TASKS, run, verify_oracle


def circle(*tasks, **extra):
    data = {
        "lie_algebra": {"dim": 1},
        "algebra": {"kind": "laurent"},
        "action": {"kind": "rotation"},
        "truncation": 2,
        "window": 1,
        "windings": [{"element": {"1": "1"}}],
        "cocycles": {
            "i": {"0": {"0": "i"}},
            "half-i": {"0": {"0": "1/2*i"}},
            "hermitian": {"0": {"0": "1"}},
        },
        "tasks": list(tasks),
    }
    data.update(extra)
    return build_context(load_problem(json.dumps(data)))


def flip(*tasks):
    data = {
        "group": {"cyclic": 2, "labels": ["e", "s"]},
        "algebra": {"kind": "finite-functions", "points": ["p", "q"]},
        "action": {"kind": "permutation", "permutations": {"s": {"p": "q", "q": "p"}}},
        "tasks": list(tasks),
    }
    return build_context(load_problem(json.dumps(data)))


def points(*tasks, **bimodules):
    data = {
        "algebra": {"kind": "finite-functions", "points": ["p", "q"]},
        "bimodules": bimodules,
        "tasks": list(tasks),
    }
    return build_context(load_problem(json.dumps(data)))


class TestValidation(unittest.TestCase):
    def test_unknown_task(self):
        with self.assertRaises(ProblemValidationError) as e:
            run(circle({"task": "ce-cohomology"}, {"task": "prove-everything"}))
        self.assertEqual(e.exception.path, "tasks[1].task")
        self.assertEqual(e.exception.task, 1)

    def test_arguments_are_validated_before_running(self):
        ctx = circle({"task": "ce-cohomology"}, {"task": "lift-equivalence"})
        with self.assertRaises(ProblemValidationError) as e:
            run(ctx)
        self.assertEqual(e.exception.path, "tasks[1].twist")
        with self.assertRaises(ProblemValidationError) as e:
            run(circle({"task": "lift-equivalence", "twist": "nope"}))
        self.assertEqual(e.exception.path, "tasks[0].twist")

    def test_argument_types(self):
        with self.assertRaises(ProblemValidationError) as e:
            run(circle({"task": "ce-cohomology", "expect_h1": "one"}))
        self.assertEqual(e.exception.path, "tasks[0].expect_h1")
        with self.assertRaises(ProblemValidationError) as e:
            run(points({"task": "picard", "max_rank": True}))
        self.assertEqual(e.exception.path, "tasks[0].max_rank")
        with self.assertRaises(ProblemValidationError) as e:
            run(points({"task": "picard", "pairings": "yes"}))
        self.assertEqual(e.exception.path, "tasks[0].pairings")

    def test_tasks_that_need_an_action(self):
        with self.assertRaises(ProblemValidationError) as e:
            run(points({"task": "check-action"}))
        self.assertEqual(e.exception.path, "tasks[0]")
        with self.assertRaises(ProblemValidationError):
            run(flip({"task": "ce-cohomology"}))

    def test_picard_bounds(self):
        with self.assertRaises(ProblemValidationError) as e:
            run(points({"task": "picard", "points": ["a", "b", "c", "d", "e"]}))
        self.assertEqual(e.exception.path, "tasks[0].points")
        with self.assertRaises(ProblemValidationError):
            run(circle({"task": "picard"}))

    def test_unknown_bimodule(self):
        with self.assertRaises(ProblemValidationError) as e:
            run(points({"task": "morita-check", "bimodule": "E"}))
        self.assertEqual(e.exception.path, "tasks[0].bimodule")

    def test_membership_needs_one_source(self):
        with self.assertRaises(ProblemValidationError) as e:
            run(circle({"task": "u-membership"}))
        self.assertEqual(e.exception.path, "tasks[0]")
        with self.assertRaises(ProblemValidationError) as e:
            run(circle({"task": "u-membership", "hat": {"phase": "1/2"}}))
        self.assertEqual(e.exception.path, "tasks[0].hat")


class TestRun(unittest.TestCase):
    def test_cohomology(self):
        report = run(circle({"task": "ce-cohomology", "expect_h1": 1}, {"task": "ce-cohomology", "expect_h1": 2}))
        self.assertEqual([t.verdict for t in report.tasks], [PASS, FAIL])
        self.assertEqual(report.verdict, FAIL)
        self.assertEqual(report.exit_code(), 1)
        self.assertEqual(report.tasks[0].report.data["h1_dim"], 1)
        self.assertEqual(report.tasks[1].report.failed_identities(), ["h1-dimension"])
        entry = report.tasks[0].report.data["cocycles"]["i"]
        self.assertTrue(entry["cocycle"])
        self.assertEqual(len(entry["class"]), 1)
        self.assertNotEqual(entry["class"], ["0"])

    def test_classify_lifts(self):
        report = run(circle({"task": "classify-lifts", "expect": {"h1_dim": 1, "quotient": "Q/Z"}}))
        result = report.tasks[0]
        self.assertEqual(result.verdict, PASS, result.report.failures)
        data = result.report.data
        self.assertEqual(data["quotient"]["description"], "Q/Z")
        self.assertTrue(data["classes"]["i"]["trivial"])
        self.assertFalse(data["classes"]["half-i"]["trivial"])
        self.assertGreater(data["members_checked"], 0)
        # a declared non-cocycle is noted, not classified
        self.assertNotIn("hermitian", data["classes"])
        self.assertTrue(any("hermitian" in note for note in result.report.notes))

    def test_classify_listed_non_cocycle(self):
        report = run(circle({"task": "classify-lifts", "cocycles": ["i", "hermitian"]}))
        result = report.tasks[0]
        self.assertEqual(result.verdict, FAIL)
        self.assertEqual(result.report.failed_identities(), ["cocycle"])
        self.assertIn("i", result.report.data["classes"])

    def test_lift_equivalence(self):
        report = run(
            circle(
                {"task": "lift-equivalence", "twist": "i", "expect": "isomorphic"},
                {"task": "lift-equivalence", "twist": "half-i", "expect": "not-isomorphic"},
                {"task": "lift-equivalence", "twist": "half-i", "expect": "isomorphic"},
            )
        )
        self.assertEqual([t.verdict for t in report.tasks], [PASS, PASS, FAIL])
        self.assertEqual(report.tasks[2].report.failed_identities(), ["expectation"])

    def test_precondition_failure(self):
        report = run(circle({"task": "u-membership", "cocycle": "hermitian"}))
        result = report.tasks[0]
        self.assertEqual(result.verdict, FAIL)
        self.assertEqual(result.report.failed_identities(), ["precondition"])
        self.assertFalse(report.inconsistent)

    def test_group_membership(self):
        member = {"e": {"p": "1", "q": "1"}, "s": {"p": "-1", "q": "-1"}}
        broken = {"e": {"p": "1", "q": "1"}, "s": {"p": "1", "q": "-1"}}
        report = run(
            flip(
                {"task": "u-membership", "values": member},
                {"task": "u-membership", "values": broken},
                {"task": "u-membership", "values": broken, "expect_member": False},
            )
        )
        self.assertEqual([t.verdict for t in report.tasks], [PASS, FAIL, PASS])
        self.assertIn("cocycle", report.tasks[1].report.failed_identities())
        self.assertFalse(report.tasks[2].report.data["member"])
        self.assertTrue(report.tasks[2].report.data["witnesses"])

    def test_group_scenario(self):
        report = run(
            flip(
                {"task": "check-action"},
                {"task": "hopf-axioms"},
                {"task": "convolution", "witnesses": [{"element": {"p": "i", "q": "1"}}, {"element": {"p": "1", "q": "1"}}]},
                {"task": "covariance"},
                {"task": "forget-diagram"},
                {"task": "picard"},
            )
        )
        self.assertEqual(report.verdict, PASS, [(t.task, t.report.failures) for t in report.tasks])
        certification = report.tasks[4].report.data["certification"]
        self.assertEqual(certification, {"level": "strong", "covariant": True})
        self.assertEqual(report.tasks[4].report.data["paths"]["ring"], ["strong->star", "star->ring", "covariant->plain"])
        self.assertEqual(report.tasks[5].report.data["order"], 2)

    def test_picard_pairings(self):
        report = run(points({"task": "picard", "pairings": True}))
        self.assertEqual(report.verdict, PASS, report.tasks[0].report.failures)
        self.assertEqual(
            report.tasks[0].report.data["pairings"],
            [
                {"class": [[0, 1], [1, 0]], "morita": 9, "positive": 4},
                {"class": [[1, 0], [0, 1]], "morita": 9, "positive": 4},
            ],
        )

    def test_morita_check(self):
        report = run(
            points(
                {"task": "morita-check", "bimodule": "E", "positivity_order": 2},
                {"task": "morita-check", "bimodule": "flip2", "isomorphic_to": "unit", "positivity_order": 1},
                {"task": "morita-check", "bimodule": "flip", "isomorphic_to": "unit", "positivity_order": 1},
                E={"kind": "standard", "n": 2},
                unit={"kind": "canonical"},
                flip={"kind": "permutation", "sigma": {"p": "q", "q": "p"}},
                flip2={"kind": "tensor", "of": ["flip", "flip"]},
            )
        )
        self.assertEqual([t.verdict for t in report.tasks], [PASS, PASS, FAIL])
        self.assertEqual(report.tasks[1].report.data["block_dimensions"], [[1, 0], [0, 1]])
        self.assertEqual(report.tasks[2].report.failed_identities(), ["isomorphic"])

    def test_inconsistency_is_an_error(self):
        def explode(ctx, call):
            def thunk():
                raise InconsistencyError("descent failed")

            return thunk

        TASKS.register("explode-for-test", explode)
        report = run(points({"task": "picard"}, {"task": "explode-for-test"}))
        self.assertEqual([t.verdict for t in report.tasks], [PASS, ERROR])
        self.assertTrue(report.inconsistent)
        self.assertEqual(report.verdict, ERROR)
        self.assertEqual(report.exit_code(), 3)
        self.assertEqual(report.tasks[1].error, "descent failed")

    def test_crash_is_an_error_of_its_task(self):
        def crash(ctx, call):
            def thunk():
                return 1 / 0

            return thunk

        TASKS.register("crash-for-test", crash)
        report = run(points({"task": "crash-for-test"}, {"task": "picard"}))
        self.assertEqual([t.verdict for t in report.tasks], [ERROR, PASS])
        self.assertTrue(report.tasks[0].error.startswith("ZeroDivisionError"))
        self.assertEqual(report.exit_code(), 3)

    def test_parallel_keeps_order(self):
        ctx = circle(
            {"task": "hopf-axioms"},
            {"task": "ce-cohomology", "expect_h1": 1},
            {"task": "check-action"},
            {"task": "covariance"},
        )
        sequential = run(ctx)
        parallel = run(ctx, parallel=True)
        self.assertEqual([t.index for t in parallel.tasks], [0, 1, 2, 3])
        self.assertEqual(sequential.to_json(timing=False), parallel.to_json(timing=False))

    def test_report_json(self):
        report = run(points({"task": "picard"}))
        data = json.loads(report.to_json())
        self.assertEqual(data["report_version"], 1)
        self.assertEqual(data["mode"], "run")
        self.assertIn("0:picard", data["timing"])
        self.assertIn("total", data["timing"])
        self.assertNotIn("timing", json.loads(report.to_json(timing=False)))
        # deterministic apart from timing
        self.assertEqual(report.to_json(timing=False), run(points({"task": "picard"})).to_json(timing=False))


class TestOracle(unittest.TestCase):
    def test_oracles_agree(self):
        report = verify_oracle(
            circle(
                {"task": "ce-cohomology"},
                {"task": "classify-lifts"},
                {"task": "convolution"},
                {"task": "check-action"},
            )
        )
        self.assertEqual(report.mode, "oracle")
        self.assertEqual([t.verdict for t in report.tasks], [PASS, PASS, PASS, SKIP])
        self.assertEqual(report.tasks[3].report.notes, ["no oracle"])
        self.assertEqual(report.tasks[0].report.data, {"computed": 1, "oracle": 1})
        convolution = report.tasks[2].report.data
        self.assertEqual((convolution["computed"], convolution["oracle"]), (True, True))
        # one winding and the unit
        self.assertEqual(convolution["triples"], 8)
        self.assertEqual(report.exit_code(), 0)

    def test_group_oracles(self):
        member = {"e": {"p": "1", "q": "1"}, "s": {"p": "-1", "q": "-1"}}
        report = verify_oracle(
            flip(
                {"task": "u-membership", "values": member},
                {"task": "convolution", "witnesses": [{"element": {"p": "i", "q": "1"}}]},
                {"task": "picard"},
            )
        )
        self.assertEqual(report.verdict, PASS, [(t.task, t.report.failures) for t in report.tasks])

    def test_associativity_beyond_the_sample(self):
        values = [("i", "1"), ("-1", "1"), ("1", "i"), ("-i", "-1"), ("i", "i"), ("-1", "-i")]
        witnesses = [{"element": {"p": p, "q": q}} for p, q in values]
        ctx = flip({"task": "convolution", "witnesses": witnesses})
        self.assertEqual(run(ctx).verdict, PASS)
        report = verify_oracle(ctx)
        data = report.tasks[0].report.data
        self.assertEqual(report.verdict, PASS, report.tasks[0].report.failures)
        self.assertEqual(data["triples"], 7**3)
        self.assertTrue(data["oracle"])

    def test_oracle_validates_like_run(self):
        with self.assertRaises(ProblemValidationError):
            verify_oracle(circle({"task": "lift-equivalence"}))


if __name__ == "__main__":
    unittest.main()
