import os
import tempfile

# Set cache dir to a temp dir before importing anything from hopfmorita
tmpdir = tempfile.mkdtemp()
os.environ["HOPFMORITA_CACHE_DIR"] = tmpdir

import json
from pathlib import Path
import unittest

from hopfmorita import config
from hopfmorita.algebra import FiniteFunctions, Laurent, TruncatedPoly
from hopfmorita.errors import ProblemParseError, ProblemValidationError
from hopfmorita.hopf import GroupAutomorphismAction, LieHopfAction
from hopfmorita.morita import CanonicalBimodule, GradedBimodule, TensorBimodule, TwistedBimodule
from hopfmorita.problem import build_context, load_problem


def circle(**extra) -> dict:
    data = {
        "lie_algebra": {"dim": 1},
        "algebra": {"kind": "laurent"},
        "action": {"kind": "rotation"},
        "windings": [{"element": {"1": "1"}}],
    }
    data.update(extra)
    return data


def context(data: dict, **flags):
    return build_context(load_problem(json.dumps(data)), **flags)


class TestLoadProblem(unittest.TestCase):
    def test_parse_error_position(self):
        with self.assertRaises(ProblemParseError) as e:
            load_problem('{\n  "algebra": {"kind": "laurent"},\n  "tasks": [\n}')
        self.assertEqual(e.exception.line, 4)
        self.assertEqual(e.exception.column, 1)

    def test_not_an_object(self):
        with self.assertRaises(ProblemValidationError) as e:
            load_problem("[1, 2]")
        self.assertEqual(e.exception.path, "problem")

    def test_field_path_of_a_type_error(self):
        with self.assertRaises(ProblemValidationError) as e:
            load_problem(json.dumps({"algebra": {"kind": "laurent"}, "lie_algebra": {"dim": "two"}}))
        self.assertEqual(e.exception.path, "lie_algebra.dim")

    def test_missing_algebra(self):
        with self.assertRaises(ProblemValidationError) as e:
            load_problem("{}")
        self.assertEqual(e.exception.path, "algebra")

    def test_format_version(self):
        with self.assertRaises(ProblemValidationError) as e:
            load_problem(json.dumps({"format_version": 7, "algebra": {"kind": "laurent"}}))
        self.assertEqual(e.exception.path, "format_version")

    def test_load_from_path(self):
        problem = load_problem(config.FIXTURES_DIR / "circle-lifts.json")
        self.assertEqual(problem.algebra.kind, "laurent")
        self.assertEqual(problem.tasks[0]["task"], "check-action")

    def test_every_fixture_builds(self):
        for path in sorted(Path(config.FIXTURES_DIR).glob("*.json")):
            ctx = build_context(load_problem(path))
            self.assertTrue(ctx.tasks, path.name)


class TestBuildContext(unittest.TestCase):
    def test_circle(self):
        ctx = context(circle())
        self.assertIsInstance(ctx.algebra, Laurent)
        self.assertIsInstance(ctx.action, LieHopfAction)
        self.assertIs(ctx.hopf, ctx.action.hopf)
        self.assertIsNotNone(ctx.lie_action)
        self.assertEqual(len(ctx.windings), 1)
        self.assertEqual(ctx.truncation, config.DEFAULT_TRUNCATION)
        self.assertEqual(ctx.window, config.DEFAULT_WINDOW)

    def test_flags_override_the_file(self):
        data = circle(truncation=2, window=5)
        ctx = context(data)
        self.assertEqual((ctx.truncation, ctx.window), (2, 5))
        ctx = context(data, truncation=3, window=1)
        self.assertEqual((ctx.truncation, ctx.window), (3, 1))
        self.assertEqual(ctx.hopf.truncation, 3)

    def test_negative_orders(self):
        with self.assertRaises(ProblemValidationError) as e:
            context(circle(), window=-1)
        self.assertEqual(e.exception.path, "window")
        with self.assertRaises(ProblemValidationError) as e:
            context(circle(truncation=-2))
        self.assertEqual(e.exception.path, "truncation")

    def test_malformed_bracket(self):
        data = circle(lie_algebra={"dim": 2, "brackets": [[0, 1]]}, action={"kind": "trivial"})
        with self.assertRaises(ProblemValidationError) as e:
            context(data)
        self.assertEqual(e.exception.path, "lie_algebra.brackets[0]")
        data["lie_algebra"]["brackets"] = [[0, 1, [1]]]
        with self.assertRaises(ProblemValidationError) as e:
            context(data)
        self.assertEqual(e.exception.path, "lie_algebra.brackets[0]")

    def test_solvable_derivations(self):
        ctx = context(
            {
                "lie_algebra": {"dim": 2, "brackets": [[0, 1, [0, 1]]]},
                "algebra": {"kind": "truncated-poly", "n": 4},
                "action": {"kind": "derivations", "derivations": [{"generator": {"1": "1"}}, {"generator": {"2": "1"}}]},
            }
        )
        alg = ctx.algebra
        self.assertIsInstance(alg, TruncatedPoly)
        x = alg.basis_element(1)
        self.assertEqual(ctx.lie_action.apply(1, x * x), x * x * x * 2)

    def test_derivation_errors(self):
        data = {
            "lie_algebra": {"dim": 1},
            "algebra": {"kind": "truncated-poly", "n": 3},
            "action": {"kind": "derivations", "derivations": [{"twist": {"1": "1"}}]},
        }
        with self.assertRaises(ProblemValidationError) as e:
            context(data)
        self.assertEqual(e.exception.path, "action.derivations[0]")
        data["action"]["derivations"] = [{"generator": {"7": "1"}}]
        with self.assertRaises(ProblemValidationError) as e:
            context(data)
        self.assertEqual(e.exception.path, "action.derivations[0].generator")
        data["action"]["derivations"] = []
        with self.assertRaises(ProblemValidationError) as e:
            context(data)
        self.assertEqual(e.exception.path, "action.derivations")

    def test_group_action(self):
        ctx = context(
            {
                "group": {"cyclic": 2, "labels": ["e", "s"]},
                "algebra": {"kind": "finite-functions", "points": ["p", "q"]},
                "action": {"kind": "permutation", "permutations": {"s": {"p": "q", "q": "p"}}},
            }
        )
        self.assertIsInstance(ctx.action, GroupAutomorphismAction)
        self.assertIsNone(ctx.lie_action)
        p, q = ctx.algebra.basis_element("p"), ctx.algebra.basis_element("q")
        self.assertEqual(ctx.action.act_basis(1, p), q)

    def test_unknown_group_element(self):
        with self.assertRaises(ProblemValidationError) as e:
            context(
                {
                    "group": {"cyclic": 2},
                    "algebra": {"kind": "finite-functions", "points": ["p", "q"]},
                    "action": {"kind": "permutation", "permutations": {"t": {"p": "q", "q": "p"}}},
                }
            )
        self.assertEqual(e.exception.path, "action.permutations.t")

    def test_lie_algebra_or_group(self):
        data = circle(group={"cyclic": 2})
        with self.assertRaises(ProblemValidationError) as e:
            context(data)
        self.assertEqual(e.exception.path, "group")
        with self.assertRaises(ProblemValidationError) as e:
            context({"algebra": {"kind": "laurent"}, "action": {"kind": "rotation"}})
        self.assertEqual(e.exception.path, "action")

    def test_windings_must_be_central_unitaries(self):
        with self.assertRaises(ProblemValidationError) as e:
            context(circle(windings=[{"element": {"1": "2"}}]))
        self.assertEqual(e.exception.path, "windings")

    def test_cocycles(self):
        ctx = context(circle(cocycles={"i": {"0": {"0": "i"}}}))
        alpha = ctx.cocycles["i"]
        self.assertEqual(alpha(0), ctx.algebra.parse_element({"0": "i"}))
        with self.assertRaises(ProblemValidationError) as e:
            context(circle(cocycles={"far": {"3": {"0": "i"}}}))
        self.assertEqual(e.exception.path, "cocycles.far")
        with self.assertRaises(ProblemValidationError) as e:
            context(circle(cocycles={"far": {"1": {}}}))
        self.assertEqual(e.exception.path, "cocycles.far")
        ctx = context(circle(cocycles={"i": {"0": {"0": "i"}}, "zero": {"0": {}}}))
        self.assertTrue(ctx.cocycles["zero"](0).is_zero())
        with self.assertRaises(ProblemValidationError):
            context(circle(cocycles={"named": {"xi": {"0": "i"}}}))

    def test_algebra_kinds(self):
        with self.assertRaises(ProblemValidationError) as e:
            context({"algebra": {"kind": "octonions"}})
        self.assertEqual(e.exception.path, "algebra.kind")
        with self.assertRaises(ProblemValidationError) as e:
            context({"algebra": {"kind": "matrix"}})
        self.assertEqual(e.exception.path, "algebra.n")
        ctx = context({"algebra": {"kind": "matrix", "n": 2, "base": {"kind": "finite-functions", "points": ["p"]}}})
        self.assertEqual(ctx.algebra.dim, 4)
        ctx = context(
            {
                "algebra": {
                    "kind": "product",
                    "factors": [{"kind": "finite-functions", "points": ["p"]}, {"kind": "matrix", "n": 2}],
                }
            }
        )
        self.assertEqual(ctx.algebra.dim, 5)
        self.assertIsNone(ctx.action)


class TestBimodules(unittest.TestCase):
    def points(self, **bimodules):
        return {"algebra": {"kind": "finite-functions", "points": ["p", "q"]}, "bimodules": bimodules}

    def test_kinds(self):
        ctx = context(
            self.points(
                unit={"kind": "canonical"},
                flip={"kind": "permutation", "sigma": {"p": "q", "q": "p"}},
                twist={"kind": "twisted", "sigma": {"p": "q", "q": "p"}},
                fixed={"kind": "twisted", "images": {}},
                both={"kind": "tensor", "of": ["flip", "twist"]},
            )
        )
        E = ctx.bimodules
        self.assertIsInstance(E["unit"], CanonicalBimodule)
        self.assertIsInstance(E["flip"], GradedBimodule)
        self.assertIsInstance(E["twist"], TwistedBimodule)
        self.assertIsInstance(E["both"], TensorBimodule)
        self.assertIs(E["both"].F, E["flip"])

    def test_operands_resolve_in_order(self):
        with self.assertRaises(ProblemValidationError) as e:
            context(self.points(both={"kind": "tensor", "of": ["unit", "unit"]}, unit={"kind": "canonical"}))
        self.assertEqual(e.exception.path, "bimodules.both.of[0]")
        with self.assertRaises(ProblemValidationError) as e:
            context(self.points(bar={"kind": "conjugate"}))
        self.assertEqual(e.exception.path, "bimodules.bar.of")

    def test_graded_needs_points(self):
        with self.assertRaises(ProblemValidationError) as e:
            context({"algebra": {"kind": "laurent"}, "bimodules": {"g": {"kind": "graded", "dims": [[1]]}}})
        self.assertEqual(e.exception.path, "bimodules.g.kind")

    def test_construction_errors_name_the_bimodule(self):
        with self.assertRaises(ProblemValidationError) as e:
            context(self.points(bad={"kind": "twisted", "sigma": {"p": "p", "q": "p"}}))
        self.assertEqual(e.exception.path, "bimodules.bad")
        with self.assertRaises(ProblemValidationError) as e:
            context(self.points(odd={"kind": "moebius"}))
        self.assertEqual(e.exception.path, "bimodules.odd.kind")

    def test_standard_module(self):
        ctx = context(self.points(E={"kind": "standard", "n": 2}))
        E = ctx.bimodules["E"]
        self.assertIsInstance(E.right, FiniteFunctions)
        self.assertEqual(E.dim, 4)


if __name__ == "__main__":
    unittest.main()
