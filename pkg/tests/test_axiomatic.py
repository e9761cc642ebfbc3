import random

import pytest

from modalkit import (
    Atom,
    Box,
    Derivation,
    Hypothesis,
    Imp,
    KAxiom,
    LOGICS,
    MP,
    Not,
    PreconditionViolated,
    RN,
    SchemaAxiom,
    Step,
    check_derivation,
    deduction_transform,
    get_logic,
    is_k_axiom,
    mlk_regression_suite,
    parse,
    pretty,
    substitute,
    substitute_derivation,
    valid_in_class_bounded,
)
from modalkit.axiomatic import random_derivation

p, q = Atom("p"), Atom("q")


class TestSchemaRecognizers:
    def test_k_axiom_examples(self):
        assert is_k_axiom(parse("(q && r) --> (Box s --> (q && r))"))
        assert is_k_axiom(parse("Box (p --> q) --> Box p --> Box q"))
        assert not is_k_axiom(parse("Box p --> p"))

    def test_k_axioms_closed_under_substitution(self):
        rng = random.Random(21)
        from modalkit.axiomatic import K_SCHEMATA

        for schema in K_SCHEMATA:
            for _ in range(5):
                inst = substitute(
                    schema,
                    {n: rng.choice([p, q, Box(p), Imp(p, q), Not(q)]) for n in "pqr"},
                )
                assert is_k_axiom(inst)

    def test_specific_schemata(self):
        assert LOGICS["K"].schema(parse("Box p --> p")) is False
        assert LOGICS["T"].schema(parse("Box (p && q) --> (p && q)"))
        assert not LOGICS["T"].schema(parse("Box p --> q"))
        assert LOGICS["K4"].schema(parse("Box p --> Box Box p"))
        assert not LOGICS["K4"].schema(parse("Box p --> Box Box q"))
        assert LOGICS["GL"].schema(parse("Box (Box p --> p) --> Box p"))
        assert LOGICS["GL"].schema(parse("Box (Box Not q --> Not q) --> Box Not q"))

    def test_get_logic(self):
        assert get_logic("GL").name == "GL"
        assert get_logic(LOGICS["K"]) is LOGICS["K"]
        with pytest.raises(ValueError):
            get_logic("S5")


class TestCheckDerivation:
    def test_hypothesis_step(self):
        d = Derivation((Step(p, Hypothesis()),))
        assert check_derivation("K", {p}, d, p)
        assert not check_derivation("K", set(), d, p)

    def test_rn_on_axiom(self):
        ax = parse("p --> (q --> p)")
        d = Derivation((
            Step(ax, KAxiom()),
            Step(Box(ax), RN(Derivation((Step(ax, KAxiom()),)))),
        ))
        assert check_derivation("K", set(), d, Box(ax))

    def test_malformed_mp_diagnostic(self):
        d = Derivation((
            Step(p, Hypothesis()),
            Step(q, MP(0, 0)),
        ))
        res = check_derivation("K", {p}, d, q)
        assert not res
        assert res.step == 1
        assert "implication" in res.reason

    def test_mp_premise_mismatch(self):
        d = Derivation((
            Step(Imp(p, q), Hypothesis()),
            Step(p, Hypothesis()),
            Step(p, MP(0, 1)),  # conclusion should be q
        ))
        res = check_derivation("K", {Imp(p, q), p}, d, p)
        assert not res and res.step == 2

    def test_rn_needs_empty_hypotheses(self):
        d = Derivation((
            Step(Box(p), RN(Derivation((Step(p, Hypothesis()),)))),
        ))
        assert not check_derivation("K", {p}, d, Box(p))

    def test_schema_axiom_is_logic_specific(self):
        d = Derivation((Step(parse("Box p --> p"), SchemaAxiom()),))
        assert check_derivation("T", set(), d, parse("Box p --> p"))
        assert not check_derivation("K4", set(), d, parse("Box p --> p"))

    def test_monotonicity_under_hypothesis_growth(self):
        rng = random.Random(22)
        for _ in range(80):
            logic = rng.choice(list(LOGICS))
            hyps, d = random_derivation(logic, rng)
            assert check_derivation(logic, hyps, d, d.goal)
            bigger = hyps | {parse("r || Not r"), Atom("z")}
            assert check_derivation(logic, bigger, d, d.goal)

    def test_substitution_closure(self):
        rng = random.Random(23)
        for _ in range(60):
            logic = rng.choice(list(LOGICS))
            hyps, d = random_derivation(logic, rng)
            if hyps:
                continue  # closure is stated for hypothesis-free derivations
            mapping = {"p": rng.choice([q, Box(p), Imp(p, q)]), "q": rng.choice([p, Not(p)])}
            d2 = substitute_derivation(d, mapping)
            assert check_derivation(logic, set(), d2, substitute(d.goal, mapping))


class TestDeductionTransform:
    def test_self_hypothesis_case(self):
        d = Derivation((Step(p, Hypothesis()),))
        out = deduction_transform("K", set(), p, d)
        assert check_derivation("K", set(), out, Imp(p, p))

    def test_b_already_in_hypotheses(self):
        d = Derivation((Step(q, Hypothesis()),))
        out = deduction_transform("K", {q}, p, d)
        assert check_derivation("K", {q}, out, Imp(p, q))

    def test_rn_steps_survive_untouched(self):
        ax = parse("p --> (q --> p)")
        sub = Derivation((Step(ax, KAxiom()),))
        d = Derivation((Step(Box(ax), RN(sub)),))
        out = deduction_transform("K", set(), p, d)
        assert check_derivation("K", set(), out, Imp(p, Box(ax)))
        assert any(isinstance(st.by, RN) and st.by.sub == sub for st in out.steps)

    def test_rejects_unchecked_input(self):
        bad = Derivation((Step(p, Hypothesis()),))
        with pytest.raises(PreconditionViolated):
            deduction_transform("K", set(), q, bad)

    def test_random_round_trips(self):
        rng = random.Random(24)
        for _ in range(120):
            logic = rng.choice(list(LOGICS))
            hyps, d = random_derivation(logic, rng)
            b = sorted(hyps, key=pretty)[0] if hyps else p
            rest = hyps - {b}
            out = deduction_transform(logic, rest, b, d)
            assert check_derivation(logic, rest, out, Imp(b, d.goal))


class TestRegressionSuite:
    def test_all_entries_check(self):
        for entry in mlk_regression_suite():
            res = check_derivation(entry.logic, set(), entry.derivation, entry.goal)
            assert res, (entry.name, res.step, res.reason)

    def test_expected_goals(self):
        goals = {e.name: pretty(e.goal) for e in mlk_regression_suite()}
        assert goals["mlk_imp_box_pq"] == "Box p --> Box (q --> p)"
        assert goals["mlk_box_and_forward_pq"] == "Box (p && q) --> Box p && Box q"
        assert goals["mlk_box_and_pq"] == "Box (p && q) <-> Box p && Box q"
        assert goals["gl_schema_4_p"] == "Box p --> Box Box p"

    def test_soundness_hook(self):
        # every hypothesis-free goal is valid on the logic's class at bound 3
        for entry in mlk_regression_suite():
            cls = LOGICS[entry.logic].frame_class
            ok, _ = valid_in_class_bounded(entry.goal, cls, 3)
            assert ok, entry.name
