"""Equation encoding, box solving, serialization, and the ring window.

Round-trip oracle: group solutions found by brute-force arithmetic over a
coordinate box must map exactly onto the integer solutions of the encoded
system, and back.
"""

import itertools
import random

import pytest

from tau2.core import Tau2Presentation, commutator, from_word, multiply, power
from tau2.dioph import (
    DiophantineSystem,
    GroupEquationSystem,
    box_solve,
    build_odot_system,
    check_solution,
    encode_commutator_equation,
    encode_system,
    format_system,
    parse_equations,
    parse_system,
    ring_window_report,
    verify_ring_window,
)
from tau2.errors import BudgetExceededError, ParseError, PreconditionError

from conftest import random_presentation


class TestCommutatorEncoder:
    def test_heisenberg_c1(self, heisenberg):
        system = encode_commutator_equation(heisenberg, "x", "y", heisenberg.generator_c(1))
        assert format_system(system) == "vars X1 X2 Y1 Y2\n1*X1*Y2 + -1*X2*Y1 = 1\n"
        assert check_solution(system, {"X1": 1, "X2": 0, "Y1": 0, "Y2": 1})

    def test_identity_rhs_homogeneous(self, heisenberg):
        system = encode_commutator_equation(heisenberg, "x", "y", heisenberg.identity())
        assert check_solution(system, {"X1": 0, "X2": 0, "Y1": 0, "Y2": 0})
        for con in system.constraints:
            assert con.rhs == 0

    def test_rejects_noncentral_rhs(self, heisenberg):
        with pytest.raises(PreconditionError):
            encode_commutator_equation(heisenberg, "x", "y", heisenberg.generator_a(1))

    def test_specializing_x_to_generator_reproduces_generator_matrix(self):
        # substituting the k-th unit vector for X leaves a linear system in Y
        # whose coefficient matrix (with column k dropped) is the generator
        # matrix of a_k
        from tau2.structure import generator_matrix

        rng = random.Random(40)
        for _ in range(50):
            p = random_presentation(rng, rng.randint(2, 4), rng.randint(1, 3), 4)
            system = encode_commutator_equation(p, "x", "y", p.identity())
            for k in range(1, p.n + 1):
                coeffs = []
                for t in range(1, p.m + 1):
                    row = {j: 0 for j in range(1, p.n + 1)}
                    for coeff, mono in system.constraints[t - 1].terms:
                        xs = [v for v in mono if v.startswith("X")]
                        ys = [v for v in mono if v.startswith("Y")]
                        assert len(xs) == 1 and len(ys) == 1
                        if int(xs[0][1:]) == k:
                            row[int(ys[0][1:])] += coeff
                    coeffs.append([row[j] for j in range(1, p.n + 1) if j != k])
                from tau2.intlin import IntMatrix

                assert IntMatrix.from_rows(coeffs, p.n - 1) == generator_matrix(p, k)

    def test_agreement_with_group_solutions(self, heisenberg):
        system = encode_commutator_equation(heisenberg, "x", "y", heisenberg.generator_c(1))
        box = 2
        for ax in itertools.product(range(-box, box + 1), repeat=2):
            for ay in itertools.product(range(-box, box + 1), repeat=2):
                x = heisenberg.element(ax, (0,))
                y = heisenberg.element(ay, (0,))
                group_ok = commutator(x, y) == heisenberg.generator_c(1)
                assignment = {"X1": ax[0], "X2": ax[1], "Y1": ay[0], "Y2": ay[1]}
                assert group_ok == check_solution(system, assignment)


class TestEncodeSystem:
    def test_commuting_constraint(self, heisenberg):
        system = encode_system(heisenberg, parse_equations(heisenberg, "x*y = y*x"))
        assert format_system(system) == "vars X1 X2 Y1 Y2\n1*X1*Y2 + -1*X2*Y1 = 0\n"

    def test_point_constraint(self, heisenberg):
        system = encode_system(heisenberg, parse_equations(heisenberg, "x = a1"))
        assert format_system(system) == "vars X1 X2 Xg1\n1*X1 = 1\n1*X2 = 0\n1*Xg1 = 0\n"

    def test_square_is_not_central_generator(self, heisenberg):
        system = encode_system(heisenberg, parse_equations(heisenberg, "x^2 = c1"))
        assert box_solve(system, 5) == []

    def test_trivial_commutator(self, heisenberg):
        system = encode_system(heisenberg, parse_equations(heisenberg, "[x,x] = 1"))
        assert system.constraints == ()

    def test_matches_direct_commutator_encoder(self):
        rng = random.Random(41)
        for _ in range(30):
            p = random_presentation(rng, rng.randint(2, 3), rng.randint(1, 3), 3)
            gamma = [rng.randint(-4, 4) for _ in range(p.m)]
            w = p.element((0,) * p.n, gamma)
            direct = encode_commutator_equation(p, "x", "y", w)
            word = " ".join(f"c{t}^{gamma[t-1]}" for t in range(1, p.m + 1)) or "1"
            via_system = encode_system(p, parse_equations(p, f"[x,y] = {word}"))
            # the general encoder drops trivially-true rows; the direct one
            # keeps its per-generator row structure
            pruned = DiophantineSystem(
                direct.variables,
                tuple(c for c in direct.constraints if c.terms or c.rhs != 0),
            )
            assert pruned == via_system

    def test_group_round_trip_heisenberg_pairs(self, heisenberg):
        # brute-force both sides: group solutions in the coordinate box vs
        # integer solutions of the encoding, for a two-variable system
        eqs = parse_equations(heisenberg, "[x,y] = c1\nx*y = a1*a2")
        system = encode_system(heisenberg, eqs)
        box = 3
        expected = set()
        coords = list(itertools.product(range(-box, box + 1), repeat=3))
        target = multiply(heisenberg.generator_a(1), heisenberg.generator_a(2))
        for cx in coords:
            x = heisenberg.element(cx[:2], cx[2:])
            for cy in coords:
                y = heisenberg.element(cy[:2], cy[2:])
                if commutator(x, y) == heisenberg.generator_c(1) and multiply(x, y) == target:
                    expected.add(cx + cy)
        got = set()
        for sol in box_solve(system, box):
            got.add(
                (
                    sol["X1"],
                    sol["X2"],
                    sol["Xg1"],
                    sol["Y1"],
                    sol["Y2"],
                    sol["Yg1"],
                )
            )
        assert got == expected
        assert expected  # the scan is not vacuous

    def test_single_variable_round_trip_random(self):
        rng = random.Random(42)
        for _ in range(10):
            p = random_presentation(rng, 2, 2, 2)
            g = p.element(
                [rng.randint(-1, 1) for _ in range(2)], [rng.randint(-1, 1) for _ in range(2)]
            )
            eqs = GroupEquationSystem(
                p, (((("var", "x", 1), ("var", "x", 1)), (("const", power(g, 2)),)),)
            )
            system = encode_system(p, eqs)
            box = 3
            expected = set()
            for coords in itertools.product(range(-box, box + 1), repeat=4):
                x = p.element(coords[:2], coords[2:])
                if multiply(x, x) == power(g, 2):
                    expected.add(coords)
            got = {
                (sol["X1"], sol["X2"], sol["Xg1"], sol["Xg2"]) for sol in box_solve(system, box)
            }
            assert got == expected


class TestEncoderAgainstGroupEvaluation:
    """Random equation texts: parse, encode, and compare against direct
    group-arithmetic evaluation on random coordinate assignments."""

    @staticmethod
    def _rand_atom(rng, p, depth):
        r = rng.random()
        if r < 0.30:
            return rng.choice(["x", "y"])
        if r < 0.55 and p.n:
            return f"a{rng.randint(1, p.n)}"
        if r < 0.70 and p.m:
            return f"c{rng.randint(1, p.m)}"
        if r < 0.85 and depth < 2:
            side = TestEncoderAgainstGroupEvaluation._rand_side
            return f"[{side(rng, p, depth + 1)},{side(rng, p, depth + 1)}]"
        if depth < 2:
            return f"({TestEncoderAgainstGroupEvaluation._rand_side(rng, p, depth + 1)})"
        return rng.choice(["x", "y"])

    @staticmethod
    def _rand_side(rng, p, depth=0):
        parts = []
        for _ in range(rng.randint(1, 3)):
            atom = TestEncoderAgainstGroupEvaluation._rand_atom(rng, p, depth)
            if rng.random() < 0.4:
                atom = f"{atom}^{rng.randint(-3, 3)}"
            parts.append(atom)
        return "*".join(parts)

    @staticmethod
    def _evaluate(p, factors, env):
        from tau2.core import inverse as inv

        acc = p.identity()
        for f in factors:
            if f[0] == "const":
                elem = f[1]
            else:
                elem = env[f[1]]
                if f[2] < 0:
                    elem = inv(elem)
            acc = multiply(acc, elem)
        return acc

    def test_random_equations_agree_with_arithmetic(self):
        from tau2.dioph import alpha_unknown, gamma_unknown

        rng = random.Random(31337)
        for _ in range(150):
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            p = random_presentation(rng, n, m, 3)
            text = f"{self._rand_side(rng, p)} = {self._rand_side(rng, p)}"
            eqs = parse_equations(p, text)
            system = encode_system(p, eqs)
            assert parse_system(format_system(system)) == system
            ((lhs, rhs),) = eqs.equations
            for _ in range(10):
                env = {
                    v: p.element(
                        [rng.randint(-3, 3) for _ in range(n)],
                        [rng.randint(-3, 3) for _ in range(m)],
                    )
                    for v in ("x", "y")
                }
                group_truth = self._evaluate(p, lhs, env) == self._evaluate(p, rhs, env)
                assignment = {}
                for v, elem in env.items():
                    for i in range(1, n + 1):
                        assignment[alpha_unknown(v, i)] = elem.alpha[i - 1]
                    for t in range(1, m + 1):
                        assignment[gamma_unknown(v, t)] = elem.gamma[t - 1]
                restricted = {k: assignment[k] for k in system.variables}
                assert group_truth == check_solution(system, restricted), text


class TestBoxSolve:
    def test_solution_count_box1(self, heisenberg):
        system = encode_commutator_equation(heisenberg, "x", "y", heisenberg.generator_c(1))
        sols = box_solve(system, 1)
        # independent enumeration of X1*Y2 - X2*Y1 == 1 over {-1,0,1}^4
        brute = sum(
            1
            for a, b, c, d in itertools.product(range(-1, 2), repeat=4)
            if a * d - b * c == 1
        )
        assert len(sols) == brute == 20

    def test_budget_guard(self, heisenberg):
        system = encode_commutator_equation(heisenberg, "x", "y", heisenberg.generator_c(1))
        with pytest.raises(BudgetExceededError):
            box_solve(system, 10, budget=100)

    def test_empty_system(self):
        system = DiophantineSystem((), ())
        assert box_solve(system, 3) == [{}]

    def test_missing_variable(self, heisenberg):
        system = encode_commutator_equation(heisenberg, "x", "y", heisenberg.generator_c(1))
        with pytest.raises(PreconditionError):
            check_solution(system, {"X1": 1})

    def test_lexicographic_order(self, heisenberg):
        system = encode_system(heisenberg, parse_equations(heisenberg, "x*y = y*x"))
        sols = box_solve(system, 1)
        keys = [tuple(s[v] for v in system.variables) for s in sols]
        assert keys == sorted(keys)


class TestSerialization:
    def test_round_trip_examples(self, heisenberg):
        for text in [
            "vars X1 X2 Y1 Y2\n1*X1*Y2 + -1*X2*Y1 = 1\n",
            "vars\n",
            "vars A B\n2*A = 0\n0 = 3\n",
        ]:
            parsed = parse_system(text)
            assert format_system(parsed) == text
            assert parse_system(format_system(parsed)) == parsed

    def test_round_trip_random_systems(self):
        rng = random.Random(43)
        for _ in range(40):
            p = random_presentation(rng, rng.randint(2, 3), rng.randint(1, 3), 3)
            w = p.element((0,) * p.n, [rng.randint(-3, 3) for _ in range(p.m)])
            system = encode_commutator_equation(p, "x", "y", w)
            text = format_system(system)
            assert parse_system(text) == system
            assert format_system(parse_system(text)) == text

    def test_comments_ignored(self):
        system = parse_system("# header\nvars A\n# middle\n1*A = 2\n")
        assert system.variables == ("A",)

    @pytest.mark.parametrize(
        "text",
        [
            "1*A = 2\n",  # constraint before header
            "vars A\n1*B = 0\n",  # undeclared unknown
            "vars A\n1*A\n",  # missing rhs
            "vars A\nfoo*A = 1\n",  # bad coefficient
            "vars A A\n",  # duplicate declaration
            "vars A\n1*A*A*A = 1\n",  # degree 3
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_system(text)


class TestEquationParsing:
    def test_commutator_sugar(self, heisenberg):
        eqs = parse_equations(heisenberg, "[x,y] = c1")
        (lhs, rhs), = eqs.equations
        assert [f[0] for f in lhs] == ["var", "var", "var", "var"]
        assert rhs[0][0] == "const"

    def test_powers_expand(self, heisenberg):
        eqs = parse_equations(heisenberg, "x^3 = a1^-2")
        (lhs, rhs), = eqs.equations
        assert lhs == (("var", "x", 1),) * 3
        assert len(rhs) == 2 and rhs[0][1] == from_word(heisenberg, [("a", 1, -1)])

    def test_variable_names_validated(self, heisenberg):
        with pytest.raises(ParseError):
            parse_equations(heisenberg, "xY = a1")
        bad = GroupEquationSystem(heisenberg, (((("var", "xY", 1),), (("var", "xY", 1),)),))
        with pytest.raises(PreconditionError):
            encode_system(heisenberg, bad)

    @pytest.mark.parametrize("line", ["x =", "= x", "x", "[x,y = 1", "x^b = 1", "a9 = x"])
    def test_malformed_lines(self, heisenberg, line):
        with pytest.raises(ParseError):
            parse_equations(heisenberg, line)


class TestOdot:
    def test_requires_noncommuting(self, heisenberg):
        with pytest.raises(PreconditionError):
            build_odot_system(heisenberg, heisenberg.generator_a(1), heisenberg.generator_a(1))

    def test_solutions_multiply_exponents(self, heisenberg):
        a1, a2 = heisenberg.generator_a(1), heisenberg.generator_a(2)
        system = build_odot_system(heisenberg, a1, a2)
        c = commutator(a1, a2)
        for t1, t2 in [(0, 3), (1, 1), (2, -2), (-3, 5)]:
            assignment = {}
            witness = {
                "u": power(c, t1),
                "v": power(c, t2),
                "w": power(c, t1 * t2),
                "p": power(a1, t1),
                "q": power(a2, t2),
            }
            for name, elem in witness.items():
                assignment[f"{name.upper()}1"] = elem.alpha[0]
                assignment[f"{name.upper()}2"] = elem.alpha[1]
                assignment[f"{name.upper()}g1"] = elem.gamma[0]
            restricted = {k: assignment[k] for k in system.variables}
            assert check_solution(system, restricted)
            # a wrong product exponent must be rejected
            bad = dict(restricted)
            bad["Wg1"] = t1 * t2 + 1
            assert not check_solution(system, bad)

    def test_box_solutions_all_have_product_shape(self, heisenberg):
        # every box solution of the full system satisfies w-exponent =
        # (u-exponent) * (v-exponent)
        a1, a2 = heisenberg.generator_a(1), heisenberg.generator_a(2)
        system = build_odot_system(heisenberg, a1, a2)
        sols = box_solve(system, 1)
        assert sols
        for sol in sols:
            assert sol["Wg1"] == sol["Ug1"] * sol["Vg1"]


class TestRingWindow:
    def test_heisenberg_window5(self, heisenberg):
        a1, a2 = heisenberg.generator_a(1), heisenberg.generator_a(2)
        assert verify_ring_window(heisenberg, a1, a2, 5)

    def test_window0(self, heisenberg):
        a1, a2 = heisenberg.generator_a(1), heisenberg.generator_a(2)
        assert verify_ring_window(heisenberg, a1, a2, 0)

    def test_corrupted_system_fails(self, heisenberg):
        a1, a2 = heisenberg.generator_a(1), heisenberg.generator_a(2)
        corrupted = Tau2Presentation.from_nonzero(2, 1, {(1, 1, 2): 2})
        bad = build_odot_system(corrupted, corrupted.generator_a(1), corrupted.generator_a(2))
        assert not verify_ring_window(heisenberg, a1, a2, 3, odot_system=bad)
        report = ring_window_report(heisenberg, a1, a2, 3, odot_system=bad)
        assert any(f.reason == "encoded product system rejects witness" for f in report)

    def test_preconditions(self, heisenberg):
        a1 = heisenberg.generator_a(1)
        with pytest.raises(PreconditionError):
            verify_ring_window(heisenberg, a1, a1, 2)
        p = Tau2Presentation.from_nonzero(3, 1, {(1, 1, 2): 1})
        # a3 is central, [a1, a3] = 1; and a1 is not c-small here
        with pytest.raises(PreconditionError):
            verify_ring_window(p, p.generator_a(1), p.generator_a(3), 2)

    def test_random_certified_presentations(self):
        rng = random.Random(44)
        from tau2.structure import scalar_ring_is_Z_certificate

        found = 0
        while found < 5:
            p = random_presentation(rng, 3, 2, 10)
            if not scalar_ring_is_Z_certificate(p):
                continue
            found += 1
            assert verify_ring_window(p, p.generator_a(1), p.generator_a(2), 3)
