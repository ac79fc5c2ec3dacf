import json
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from pydantic import ValidationError

from app.errors import InvalidInputError
from app.groups import Curve, SUnitContext
from app.ingestion import InstanceFile, dump_instance, load_context, load_instance, parse_instance
from app.utils.formatting import ReportFile, format_rational, json_int, parse_rational

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class TestInstanceFiles(unittest.TestCase):
    def test_every_fixture_round_trips(self):
        for path in sorted(FIXTURES.glob("*.json")):
            if path.stem == "curve_x3p1_torsion":
                continue
            instance = load_instance(path)
            self.assertEqual(parse_instance(dump_instance(instance)), instance, path.name)

    def test_fixture_contents(self):
        instance = load_instance(FIXTURES / "sunits_2_1o16.json")
        self.assertEqual(instance.context, SUnitContext((2,)))
        self.assertEqual([p.value for p in instance.points], [2, Fraction(1, 16)])
        instance = load_instance(FIXTURES / "curve_37a_p_m4p.json")
        self.assertEqual(instance.context, Curve(-16, 16))
        self.assertEqual(instance.points[1].affine, (8, 20))

    def test_dump_to_file(self):
        instance = load_instance(FIXTURES / "curve_37a_p_m4p_m9p.json")
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "instance.json"
            text = dump_instance(instance, path)
            self.assertEqual(path.read_text(), text)
            self.assertEqual(load_instance(path), instance)
        data = json.loads(text)
        self.assertEqual(data["points"][2], ["-80/49", "2108/343"])
        self.assertEqual(data["backend"], "elliptic")

    def test_declared_relations_survive(self):
        text = '{"backend": "sunits", "S": [2], "points": ["2", "1/16"], "declared_relations": [[4, 1]]}'
        instance = parse_instance(text)
        self.assertEqual(instance.declared_relations, ((4, 1),))
        self.assertEqual(parse_instance(dump_instance(instance)), instance)

    def test_torsion_points_only_load_as_a_context(self):
        with self.assertRaises(InvalidInputError):
            load_instance(FIXTURES / "curve_x3p1_torsion.json")
        self.assertEqual(load_context(FIXTURES / "curve_x3p1_torsion.json"), Curve(0, 1))

    def test_semantic_errors(self):
        bad = [
            '{"backend": "elliptic", "A": -16, "B": 16, "points": [["1", "2"]]}',
            '{"backend": "sunits", "S": [2], "points": ["3"]}',
            '{"backend": "sunits", "S": [2, 4], "points": ["2"]}',
            '{"backend": "elliptic", "A": 0, "B": 0, "points": [["0", "0"]]}',
            '{"backend": "sunits", "S": [2], "points": ["2", "4"], "declared_relations": [[2, 1, 0]]}',
        ]
        for text in bad:
            with self.assertRaises(InvalidInputError, msg=text):
                parse_instance(text)

    def test_schema_errors(self):
        bad = [
            "{not json",
            '{"backend": "sunits", "points": ["2"]}',
            '{"backend": "sunits", "S": [2], "points": [["2", "1"]]}',
            '{"backend": "elliptic", "A": 1, "points": [["0", "1"]]}',
            '{"backend": "sunits", "S": [2], "points": ["1/0"]}',
            '{"backend": "sunits", "S": [2], "points": ["2", "4", "8", "16"]}',
            '{"backend": "sunits", "S": [2], "points": []}',
            '{"backend": "sunits", "S": [2], "points": ["2"], "search_bound": 0}',
            '{"backend": "padic", "S": [2], "points": ["2"]}',
        ]
        for text in bad:
            with self.assertRaises(ValidationError, msg=text):
                parse_instance(text)

    def test_missing_file(self):
        with self.assertRaises(InvalidInputError):
            load_instance(FIXTURES / "no_such_instance.json")

    def test_model_defaults(self):
        data = InstanceFile.model_validate({"backend": "sunits", "S": [2], "points": [2]})
        self.assertEqual(data.schema_version, 1)
        self.assertEqual(data.declared_relations, [])
        self.assertIsNone(data.search_bound)


class TestFormatting(unittest.TestCase):
    def test_rationals(self):
        self.assertEqual(format_rational(Fraction(6, -8)), "-3/4")
        self.assertEqual(format_rational(Fraction(4, 2)), "2")
        self.assertEqual(parse_rational("-6/8"), Fraction(-3, 4))
        self.assertEqual(parse_rational(5), 5)
        for bad in ("1/0", "x", 1.5, True, None):
            with self.assertRaises(ValueError, msg=repr(bad)):
                parse_rational(bad)

    def test_json_int(self):
        self.assertEqual(json_int(2**63 - 1), 2**63 - 1)
        self.assertEqual(json_int(-(2**63)), -(2**63))
        self.assertEqual(json_int(2**63), str(2**63))

    def test_report_envelope(self):
        report = ReportFile(command=["decide", "x.json"], results={"status": "solvable"})
        text = report.to_json()
        self.assertTrue(text.endswith("}\n"))
        data = json.loads(text)
        self.assertNotIn("timing", data)
        self.assertEqual(data["schema_version"], 1)
        self.assertEqual(data["excluded_places"], [])
        timed = ReportFile(command=[], timing={"seconds": 0.5})
        self.assertEqual(json.loads(timed.to_json())["timing"], {"seconds": 0.5})


if __name__ == "__main__":
    unittest.main()
