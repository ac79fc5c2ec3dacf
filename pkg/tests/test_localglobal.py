import os
import random
import unittest
from fractions import Fraction
from math import gcd
from pathlib import Path

from sympy import primerange
from sympy.ntheory import n_order

from app.arith import valuation
from app.errors import CapExceededError, InvalidInputError
from app.groups import (
    Curve,
    SUnitContext,
    good_places,
    linear_combination,
    reduced_group_at,
    scalar_mul,
    su_make,
)
from app.ingestion import load_context, load_instance
from app.localglobal import (
    CONSISTENT,
    DecisionStatus,
    counterexample_rank_n,
    global_decide,
    global_decide_rank2,
    global_decide_rank3,
    local_solvable,
    local_solvable_bruteforce,
    make_instance,
    positive_definite_check,
    probe_assumption1,
    probe_assumption2,
    probe_proof_pattern,
    scan,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
SLOW = os.environ.get("LOCALGLOBAL_SLOW_TESTS") == "1"

SOLVABLE_FIXTURES = [
    "sunits_2_1o16",
    "sunits_3_1o81",
    "sunits_2_4_1o8",
    "sunits_2_3_1o6",
    "sunits_2_1o16_3",
    "curve_37a_p_m4p",
    "curve_37a_p_m9p",
    "curve_37a_p_m4p_m9p",
]

UNSOLVABLE_FIXTURES = [
    "sunits_2_1o8",
    "sunits_2_3",
    "curve_37a_p_m2p",
    "sunits_2_1o4_3",
    "sunits_2_3_5",
    "sunits_2_3_6",
    "sunits_2_4_8",
    "curve_37a_p_m2p_m3p",
]


def fixture(name):
    return load_instance(FIXTURES / f"{name}.json")


class WitnessChecks:
    def assert_global_witness(self, instance, decision):
        self.assertEqual(decision.status, DecisionStatus.SOLVABLE)
        self.assertEqual(gcd(*decision.witness), 1)
        total = linear_combination([x * x for x in decision.witness], instance.points)
        self.assertTrue(instance.context.is_torsion(total))
        self.assertEqual(total, decision.torsion)

    def assert_local_witness(self, instance, result):
        self.assertTrue(result.solvable)
        residues, torsion = result.witness
        context, p = instance.context, result.place
        group = reduced_group_at(context, p)
        total = group.identity
        for x, point in zip(residues, instance.points):
            total = group.add(total, group.mul(x * x, context.reduce_representation(point, p)))
        self.assertEqual(total, context.reduce_representation(torsion, p))
        self.assertEqual(gcd(result.modulus, *residues), 1)


class TestInstances(unittest.TestCase):
    def test_rejects_torsion_points(self):
        curve = Curve(0, 1)
        with self.assertRaises(InvalidInputError):
            make_instance(curve, [curve.point(2, 3)])
        context = SUnitContext((2,))
        with self.assertRaises(InvalidInputError):
            make_instance(context, [su_make(context, -1), su_make(context, 2)])

    def test_rejects_false_declared_relation(self):
        context = SUnitContext((2,))
        points = [su_make(context, 2), su_make(context, Fraction(1, 16))]
        make_instance(context, points, declared_relations=[(4, 1)])
        with self.assertRaises(InvalidInputError):
            make_instance(context, points, declared_relations=[(1, 1)])

    def test_rank_limits(self):
        context = SUnitContext((2, 3))
        instance = make_instance(context, [su_make(context, 2)])
        with self.assertRaises(InvalidInputError):
            global_decide(instance)
        with self.assertRaises(InvalidInputError):
            local_solvable(instance, 5)
        with self.assertRaises(InvalidInputError):
            global_decide_rank3(fixture("sunits_2_3"))
        with self.assertRaises(InvalidInputError):
            global_decide_rank2(fixture("sunits_2_3_5"))


class TestLocalSolvability(WitnessChecks, unittest.TestCase):
    def test_example_at_seven(self):
        instance = fixture("sunits_2_1o16")
        result = local_solvable(instance, 7)
        self.assertEqual(result.modulus, 3)
        self.assertEqual(result.orders, (3, 3))
        self.assertIsNone(result.obstruction)
        self.assert_local_witness(instance, result)
        self.assert_local_witness(instance, local_solvable_bruteforce(instance, 7))

    def test_bad_place(self):
        with self.assertRaises(InvalidInputError):
            local_solvable(fixture("sunits_2_3"), 3)

    def test_agrees_with_bruteforce(self):
        cases = [
            ("sunits_2_1o8", 60),
            ("sunits_2_3", 60),
            ("sunits_2_1o4_3", 30),
            ("sunits_2_3_6", 30),
            ("sunits_2_4_8", 30),
            ("curve_37a_p_m2p", 60),
            ("curve_37a_p_m4p", 60),
            ("curve_37a_p_m4p_m9p", 20),
            ("curve_37a_p_m2p_m3p", 20),
        ]
        for name, p_max in cases:
            instance = fixture(name)
            for p in good_places(instance.context, 2, p_max):
                fast = local_solvable(instance, p)
                slow = local_solvable_bruteforce(instance, p)
                self.assertEqual(fast.solvable, slow.solvable, (name, p))
                if fast.solvable:
                    self.assert_local_witness(instance, fast)
                    self.assert_local_witness(instance, slow)
                else:
                    l, e = fast.obstruction
                    self.assertEqual(fast.modulus % l**e, 0)
                    self.assertNotEqual((fast.modulus // l**e) % l, 0)


class TestGlobalDecisions(WitnessChecks, unittest.TestCase):
    def decide(self, name):
        instance = fixture(name)
        return instance, global_decide(instance)

    def test_rank2_sunits(self):
        instance, decision = self.decide("sunits_2_1o16")
        self.assertEqual(decision.witness, (2, 1))
        self.assertEqual(decision.certificate.basis, ((4, 1),))
        self.assertEqual(decision.proof_case, "dependent")
        self.assert_global_witness(instance, decision)

        _, decision = self.decide("sunits_2_1o8")
        self.assertEqual(decision.status, DecisionStatus.UNSOLVABLE)
        self.assertEqual(decision.certificate.basis, ((3, 1),))

        _, decision = self.decide("sunits_2_3")
        self.assertEqual(decision.status, DecisionStatus.UNSOLVABLE)
        self.assertEqual(decision.proof_case, "independent")

    def test_rank3_all_dependent(self):
        instance, decision = self.decide("sunits_2_4_1o8")
        self.assertEqual(decision.proof_case, "all_dependent")
        self.assertEqual(decision.witness, (1, 1, 1))
        self.assertEqual(decision.details["normal"], [1, 2, -3])
        self.assert_global_witness(instance, decision)

        _, decision = self.decide("sunits_2_4_8")
        self.assertEqual(decision.status, DecisionStatus.UNSOLVABLE)
        self.assertEqual(decision.details["normal"], [1, 2, 3])

    def test_rank3_no_dependent_pair(self):
        instance, decision = self.decide("sunits_2_3_1o6")
        self.assertEqual(decision.proof_case, "no_dependent_pair")
        self.assertEqual(decision.witness, (1, 1, 1))
        self.assertTrue(decision.details["b_over_a_square"])
        self.assert_global_witness(instance, decision)

        _, decision = self.decide("sunits_2_3_6")
        self.assertEqual(decision.proof_case, "no_dependent_pair")
        self.assertEqual(decision.status, DecisionStatus.UNSOLVABLE)
        self.assertFalse(decision.details["c_over_a_square"])

    def test_rank3_dependent_pair(self):
        instance, decision = self.decide("sunits_2_1o16_3")
        self.assertEqual(decision.proof_case, "dependent_pair")
        self.assertEqual(decision.witness, (2, 1, 0))
        self.assert_global_witness(instance, decision)

        _, decision = self.decide("sunits_2_1o4_3")
        self.assertEqual(decision.proof_case, "dependent_pair")
        self.assertEqual(decision.status, DecisionStatus.UNSOLVABLE)

    def test_rank3_independent(self):
        _, decision = self.decide("sunits_2_3_5")
        self.assertEqual(decision.status, DecisionStatus.UNSOLVABLE)
        self.assertEqual(decision.proof_case, "independent")
        self.assertTrue(decision.certificate.certified)

    def test_curves(self):
        instance, decision = self.decide("curve_37a_p_m4p")
        self.assertEqual(decision.witness, (2, 1))
        self.assert_global_witness(instance, decision)

        _, decision = self.decide("curve_37a_p_m2p")
        self.assertEqual(decision.status, DecisionStatus.UNSOLVABLE)
        self.assertEqual(decision.certificate.basis, ((2, 1),))

        instance, decision = self.decide("curve_37a_p_m4p_m9p")
        self.assertEqual(decision.proof_case, "all_dependent")
        self.assertEqual(decision.details["normal"], [1, -4, -9])
        # (2, 1, 0) solves it too; the search on the normalized form meets (3, 0, 1) first
        self.assertEqual(decision.witness, (3, 0, 1))
        self.assert_global_witness(instance, decision)

        _, decision = self.decide("curve_37a_p_m2p_m3p")
        self.assertEqual(decision.status, DecisionStatus.UNSOLVABLE)
        self.assertEqual(decision.proof_case, "all_dependent")
        self.assertEqual(decision.details["normal"], [1, -2, -3])
        self.assertTrue(decision.certificate.certified)

    def test_uncertified_search_never_claims_unsolvable(self):
        curve = Curve(-16, 16)
        P = curve.point(0, 4)
        instance = make_instance(curve, [P, scalar_mul(-9, P)], search_bound=2)
        decision = global_decide(instance)
        self.assertEqual(decision.status, DecisionStatus.INDEPENDENT_UNCERTIFIED)
        self.assertFalse(decision.certificate.certified)
        declared = make_instance(curve, [P, scalar_mul(-9, P)], declared_relations=[(9, 1)], search_bound=2)
        self.assert_global_witness(declared, global_decide(declared))

    def check_against_box_search(self, seed, cases, bounds):
        """Random S-units with exponents in [-6, 6]; the decision must match a search over max|x_i| <= bound."""
        rng = random.Random(seed)
        context = SUnitContext((2, 3))
        for _ in range(cases):
            rank = rng.choice((2, 3))
            points = []
            while len(points) < rank:
                exponents = (rng.randrange(-6, 7), rng.randrange(-6, 7))
                if any(exponents):
                    value = rng.choice((1, -1)) * Fraction(2) ** exponents[0] * Fraction(3) ** exponents[1]
                    points.append(su_make(context, value))
            instance = make_instance(context, points)
            decision = global_decide(instance)
            bound = bounds[rank]
            found = _box_solution([point.exponents for point in points], bound) is not None
            if decision.solvable:
                self.assert_global_witness(instance, decision)
                if max(abs(x) for x in decision.witness) <= bound:
                    self.assertTrue(found, instance.summary())
            else:
                self.assertFalse(found, instance.summary())

    def test_lattice_criterion_matches_box_search(self):
        self.check_against_box_search(20, 60, {2: 50, 3: 12})

    @unittest.skipUnless(SLOW, "set LOCALGLOBAL_SLOW_TESTS=1")
    def test_lattice_criterion_matches_box_search_at_scale(self):
        self.check_against_box_search(21, 300, {2: 50, 3: 30})


def _box_solution(exponent_vectors, bound):
    """Primitive x >= 0 with max x_i <= bound and sum x_i^2 e_i = 0; signs are torsion."""
    per_prime = list(zip(*exponent_vectors))

    def annihilates(x):
        return all(sum(a * a * e for a, e in zip(x, row)) == 0 for row in per_prime)

    values = range(bound + 1)
    if len(exponent_vectors) == 2:
        candidates = ((a, b) for a in values for b in values)
    else:
        candidates = ((a, b, c) for a in values for b in values for c in values)
    for x in candidates:
        if any(x) and gcd(*x) == 1 and annihilates(x):
            return x
    return None


class TestScan(WitnessChecks, unittest.TestCase):
    def check_solvable_scans(self, sunit_pmax, curve_pmax):
        for name in SOLVABLE_FIXTURES:
            instance = fixture(name)
            p_max = curve_pmax if isinstance(instance.context, Curve) else sunit_pmax
            report = scan(instance, p_max=p_max)
            self.assertEqual(report.decision.status, DecisionStatus.SOLVABLE)
            self.assertEqual(report.violations, ())
            self.assertEqual(report.verdict, CONSISTENT)
            self.assertEqual(report.failing, [])
            for result in report.results[:20]:
                self.assert_local_witness(instance, result)

    def test_solvable_instances_are_locally_solvable(self):
        self.check_solvable_scans(1000, 300)

    @unittest.skipUnless(SLOW, "set LOCALGLOBAL_SLOW_TESTS=1")
    def test_solvable_instances_up_to_10000(self):
        self.check_solvable_scans(10_000, 10_000)

    @unittest.skipUnless(SLOW, "set LOCALGLOBAL_SLOW_TESTS=1")
    def test_unsolvable_instances_up_to_10000(self):
        for name in UNSOLVABLE_FIXTURES:
            report = scan(fixture(name), p_max=10_000)
            self.assertEqual(report.decision.status, DecisionStatus.UNSOLVABLE, name)
            self.assertGreaterEqual(report.failing_fraction, Fraction(1, 100), name)

    def test_unsolvable_rank2_fails_often(self):
        report = scan(fixture("sunits_2_1o8"), p_max=2000)
        self.assertEqual(report.decision.status, DecisionStatus.UNSOLVABLE)
        self.assertGreaterEqual(report.failing_fraction, Fraction(1, 100))
        self.assertTrue(report.obstructions)
        self.assertEqual(sum(report.obstructions.values()), len(report.failing))

    def test_anisotropic_rank3_fails_at_two(self):
        report = scan(fixture("sunits_2_4_8"), p_max=5000)
        self.assertTrue(report.failing)
        self.assertEqual(set(report.obstructions), {2})

    def test_unsolvable_curve_rank3_fails_locally(self):
        report = scan(fixture("curve_37a_p_m2p_m3p"), p_max=1000)
        self.assertEqual(report.decision.status, DecisionStatus.UNSOLVABLE)
        self.assertEqual(report.verdict, CONSISTENT)
        self.assertGreaterEqual(report.failing_fraction, Fraction(1, 100))

    def test_excluded_places(self):
        report = scan(fixture("sunits_2_3"), p_max=20)
        self.assertEqual(report.excluded_places, (2, 3))
        self.assertEqual([r.place for r in report.results], [5, 7, 11, 13, 17, 19])

    def test_parallel_scan_matches_serial(self):
        instance = fixture("sunits_2_3_6")
        serial = scan(instance, p_max=1500, jobs=1)
        parallel = scan(instance, p_max=1500, jobs=2)
        self.assertEqual(serial.results, parallel.results)
        self.assertEqual(serial.obstructions, parallel.obstructions)

    def test_range_checks(self):
        with self.assertRaises(CapExceededError):
            scan(fixture("curve_37a_p_m4p"), p_max=10**9)
        with self.assertRaises(InvalidInputError):
            scan(fixture("sunits_2_3"), p_max=10, p_min=20)


class TestCounterexample(unittest.TestCase):
    def setUp(self):
        self.point = fixture("curve_37a_p").points[0]

    def test_local_vectors_up_to_2000(self):
        context = self.point.context
        for n in (4, 6):
            for p in good_places(context, 2, 2000):
                result = counterexample_rank_n(self.point, p, n)
                self.assertEqual(len(result.vector), n)
                self.assertEqual(result.vector[3], 1)
                group = reduced_group_at(context, p)
                reduced = context.reduce_representation(self.point, p)
                self.assertEqual(group.element_order(reduced), result.element_order)
                self.assertIsNone(group.mul(result.coefficient, reduced))

    def test_rank_three_is_rejected(self):
        with self.assertRaises(InvalidInputError):
            counterexample_rank_n(self.point, 5, 3)

    def test_sunit_backend(self):
        context = SUnitContext((2,))
        result = counterexample_rank_n(su_make(context, 2), 7, 4)
        self.assertEqual(result.element_order, 3)
        self.assertEqual(result.coefficient, 6)

    def test_positive_definite_box(self):
        report = positive_definite_check(self.point, 4, box=3)
        self.assertEqual(report.vectors_checked, 7**4 - 1)
        context = self.point.context
        for c, p in report.certificates.items():
            group = reduced_group_at(context, p)
            self.assertIsNotNone(group.mul(c, context.reduce_representation(self.point, p)))
        self.assertEqual(max(report.certificates), 2 * 9 + 3 * 9)

    def test_no_global_annihilator_in_default_box(self):
        for n in (4, 6):
            report = positive_definite_check(self.point, n)
            self.assertEqual(report.box, 10)
            self.assertEqual(max(report.certificates), 2 * 100 + (n - 1) * 100)
            self.assertEqual(min(report.certificates), 1)


class TestProbes(unittest.TestCase):
    def test_assumption1_matches_direct_count(self):
        context = SUnitContext((2, 3))
        points = [su_make(context, 2), su_make(context, 3)]
        report = probe_assumption1(points, 3, (1, 0), p_max=200)
        expected = 0
        places = good_places(context, 2, 200)
        for p in places:
            orders = (n_order(2, p), n_order(3, p))
            expected += orders[0] % 3 == 0 and orders[0] % 9 != 0 and orders[1] % 3 != 0
        self.assertEqual(report.matches, expected)
        self.assertEqual(report.total, len(places))
        self.assertGreater(report.frequency, 0)

    @unittest.skipUnless(SLOW, "set LOCALGLOBAL_SLOW_TESTS=1")
    def test_assumption1_up_to_100000(self):
        points = fixture("sunits_2_3").points
        for l in (2, 3):
            self.assertGreater(probe_assumption1(points, l, (1, 0), p_max=100_000).frequency, Fraction(5, 1000))
            self.assertGreater(probe_assumption1(points, l, (2, 3), p_max=100_000).matches, 0)

    def test_assumption1_rejects_bad_patterns(self):
        points = fixture("sunits_2_3").points
        with self.assertRaises(InvalidInputError):
            probe_assumption1(points, 3, (1,), p_max=50)
        with self.assertRaises(InvalidInputError):
            probe_assumption1(points, 4, (1, 0), p_max=50)

    def test_assumption2(self):
        self.assertEqual(probe_assumption2(load_context(FIXTURES / "sunits_2_3.json"), 1000), [])
        self.assertEqual(probe_assumption2(load_context(FIXTURES / "curve_x3p1_torsion.json"), 500), [])
        self.assertEqual(probe_assumption2(load_context(FIXTURES / "curve_37a_p.json"), 500), [])

    @unittest.skipUnless(SLOW, "set LOCALGLOBAL_SLOW_TESTS=1")
    def test_assumption2_up_to_10000(self):
        for name in ("sunits_2_3", "curve_x3p1_torsion", "curve_37a_p"):
            self.assertEqual(probe_assumption2(load_context(FIXTURES / f"{name}.json"), 10_000), [], name)

    def test_proof_pattern_rank2(self):
        instance = fixture("sunits_2_3")
        report = probe_proof_pattern(instance, p_max=30_000)
        self.assertEqual((report.l, report.pattern), (3, (2, 3)))
        expected = 0
        for p in primerange(5, 30_001):
            a, b = n_order(2, p), n_order(3, p)
            expected += a % 9 == 0 and a % 27 != 0 and b % 27 == 0 and b % 81 != 0
        self.assertEqual(report.matches, expected)
        self.assertGreater(report.matches, 0)
        self.assertEqual(report.unsolvable_matches, report.matches)

    def test_proof_pattern_rank3(self):
        report = probe_proof_pattern(fixture("sunits_2_3_5"), p_max=5000)
        self.assertEqual((report.l, report.pattern), (2, (2, 4, 5)))
        self.assertEqual(report.elements, ("P+Q", "Q", "Q+R"))
        expected = 0
        for p in primerange(7, 5001):
            orders = (n_order(6, p), n_order(3, p), n_order(15, p))
            expected += [valuation(n, 2) for n in orders] == [2, 4, 5]
        self.assertEqual(report.matches, expected)
        self.assertGreater(report.matches, 0)
        self.assertEqual(report.unsolvable_matches, report.matches)

    def test_proof_pattern_rank3_at_97(self):
        # mod 97: ord 6 = 12, ord 3 = 48, ord 15 = 96
        report = probe_proof_pattern(fixture("sunits_2_3_5"), p_min=97, p_max=97)
        self.assertEqual((report.matches, report.total, report.unsolvable_matches), (1, 1, 1))
        self.assertFalse(local_solvable(fixture("sunits_2_3_5"), 97).solvable)


if __name__ == "__main__":
    unittest.main()
