import random
from itertools import permutations

import pytest

from modalkit import (
    Atom,
    Box,
    Diam,
    FALSE,
    FrameClass,
    FrameProperty,
    KripkeModel,
    Not,
    PreconditionViolated,
    TRUE,
    UnknownWorld,
    bisimilar_agree,
    check_property,
    correspondence_check,
    holds,
    in_class,
    is_bisimulation,
    maximal_bisimulation,
    model_from_json,
    model_to_json,
    parse,
    valid_in_class_bounded,
    valid_in_model,
)
from modalkit.semantics import enumerate_frames
from corpus import naive_valid_in_class, random_formula, random_model

p, q = Atom("p"), Atom("q")


class TestHolds:
    def test_rn_counterexample_model(self):
        # two worlds, one edge, p true only at the root
        m = KripkeModel([0, 1], [(0, 1)], {"p": [0]})
        assert holds(m, p, 0)
        assert not holds(m, Box(p), 0)
        assert not valid_in_model(m, p)

    def test_false_never_holds(self):
        m = random_model(random.Random(1))
        for w in m.worlds:
            assert not holds(m, FALSE, w)
            assert holds(m, TRUE, w)

    def test_vacuous_box(self):
        m = KripkeModel([0], [], {})
        assert holds(m, Box(q), 0)

    def test_unknown_world(self):
        m = KripkeModel([0], [], {})
        with pytest.raises(UnknownWorld):
            holds(m, p, 3)

    def test_valid_in_model(self):
        m = KripkeModel([0], [(0, 0)], {"p": [0]})
        assert valid_in_model(m, parse("Box p --> p"))
        assert valid_in_model(m, TRUE)

    def test_diamond_duality(self):
        rng = random.Random(11)
        for _ in range(200):
            m = random_model(rng)
            f = random_formula(rng, rng.randint(1, 6))
            for w in m.worlds:
                direct = any(holds(m, f, x) for x in m.successors(w))
                assert holds(m, Diam(f), w) == direct

    def test_isomorphism_invariance(self):
        rng = random.Random(12)
        for _ in range(50):
            m = random_model(rng, max_worlds=4)
            worlds = sorted(m.worlds)
            perm = dict(zip(worlds, rng.sample(worlds, len(worlds))))
            m2 = KripkeModel(
                worlds,
                [(perm[a], perm[b]) for a, b in m.rel],
                {a: [perm[w] for w in ws] for a, ws in m.val.items()},
            )
            f = random_formula(rng, rng.randint(1, 8))
            for w in worlds:
                assert holds(m, f, w) == holds(m2, f, perm[w])


class TestModelValidation:
    def test_nonempty_worlds(self):
        with pytest.raises(ValueError):
            KripkeModel([], [], {})

    def test_rel_and_val_inside_worlds(self):
        with pytest.raises(ValueError):
            KripkeModel([0], [(0, 1)], {})
        with pytest.raises(ValueError):
            KripkeModel([0], [], {"p": [1]})

    def test_json_round_trip(self):
        m = KripkeModel([0, 1, 2], [(0, 1), (1, 2)], {"p": [0, 2], "q": []})
        assert model_from_json(model_to_json(m)) == m


class TestFrameProperties:
    def test_examples(self):
        assert check_property([0], [(0, 0)], FrameProperty.REFLEXIVE)
        assert not check_property([0], [], FrameProperty.SERIAL)
        assert check_property([0, 1], [], FrameProperty.TRANSITIVE)

    def test_cwf_is_acyclicity(self):
        assert check_property([0, 1], [(0, 1)], FrameProperty.CONVERSE_WELL_FOUNDED)
        assert not check_property([0], [(0, 0)], FrameProperty.CONVERSE_WELL_FOUNDED)
        assert not check_property(
            [0, 1, 2], [(0, 1), (1, 2), (2, 0)], FrameProperty.CONVERSE_WELL_FOUNDED
        )

    def test_appendix_facts_on_all_small_frames(self):
        # Reflexive => Serial; CWF => Irreflexive; on transitive finite frames
        # CWF <=> Irreflexive; Sym & Trans <=> Sym & Eucl; Refl & Eucl => Sym.
        P = FrameProperty
        for n in (1, 2, 3):
            worlds = range(n)
            for rel in enumerate_frames(n):
                have = {prop: check_property(worlds, rel, prop) for prop in P}
                if have[P.REFLEXIVE]:
                    assert have[P.SERIAL]
                if have[P.CONVERSE_WELL_FOUNDED]:
                    assert have[P.IRREFLEXIVE]
                if have[P.TRANSITIVE]:
                    assert have[P.CONVERSE_WELL_FOUNDED] == have[P.IRREFLEXIVE]
                if have[P.SYMMETRIC]:
                    assert have[P.TRANSITIVE] == have[P.EUCLIDEAN]
                if have[P.REFLEXIVE] and have[P.EUCLIDEAN]:
                    assert have[P.SYMMETRIC]

    def test_in_class(self):
        assert in_class([0], [(0, 0)], FrameClass.REFLEXIVE_FINITE)
        assert in_class([0, 1], [(0, 1)], FrameClass.IRREFLEXIVE_TRANSITIVE_FINITE)
        assert not in_class([0], [(0, 0)], FrameClass.IRREFLEXIVE_TRANSITIVE_FINITE)


class TestBoundedValidity:
    def test_t_schema_on_reflexive_frames(self):
        ok, counter = valid_in_class_bounded(parse("Box p --> p"), FrameClass.REFLEXIVE_FINITE, 3)
        assert ok and counter is None

    def test_t_schema_fails_on_all_frames(self):
        ok, counter = valid_in_class_bounded(parse("Box p --> p"), FrameClass.ALL_FINITE, 2)
        assert not ok
        model, w = counter
        assert not holds(model, parse("Box p --> p"), w)

    def test_trivial(self):
        ok, _ = valid_in_class_bounded(TRUE, FrameClass.ALL_FINITE, 1)
        assert ok

    def test_agrees_with_naive_oracle(self):
        from modalkit.semantics import CLASS_PROPERTIES

        rng = random.Random(13)
        for _ in range(25):
            f = random_formula(rng, rng.randint(1, 6))
            cls = rng.choice([FrameClass.ALL_FINITE, FrameClass.REFLEXIVE_FINITE,
                              FrameClass.TRANSITIVE_FINITE])
            got, _ = valid_in_class_bounded(f, cls, 2)
            want, _ = naive_valid_in_class(f, CLASS_PROPERTIES[cls], 2)
            assert got == want

    def test_antitone_in_class_strength(self):
        # anything valid over all finite frames stays valid on every subclass
        rng = random.Random(14)
        subclasses = [FrameClass.REFLEXIVE_FINITE, FrameClass.TRANSITIVE_FINITE,
                      FrameClass.IRREFLEXIVE_TRANSITIVE_FINITE, FrameClass.SERIAL_FINITE]
        checked = 0
        for _ in range(300):
            f = random_formula(rng, rng.randint(1, 6))
            ok, _ = valid_in_class_bounded(f, FrameClass.ALL_FINITE, 2)
            if ok:
                checked += 1
                for cls in subclasses:
                    sub_ok, _ = valid_in_class_bounded(f, cls, 2)
                    assert sub_ok, (f, cls)
        assert checked > 10


class TestCorrespondence:
    def test_spec_examples(self):
        assert correspondence_check(parse("Box p --> p"), [FrameProperty.REFLEXIVE], 3)
        assert correspondence_check(parse("Box p --> Box Box p"), [FrameProperty.TRANSITIVE], 3)
        assert correspondence_check(
            parse("Box (Box p --> p) --> Box p"),
            [FrameProperty.IRREFLEXIVE, FrameProperty.TRANSITIVE], 3,
        )

    def test_wrong_pairing_fails(self):
        assert not correspondence_check(parse("Box p --> p"), [FrameProperty.TRANSITIVE], 3)

    def test_needs_exactly_one_atom(self):
        with pytest.raises(ValueError):
            correspondence_check(parse("Box p --> q"), [FrameProperty.REFLEXIVE], 2)


class TestBisimulation:
    def test_identity_and_empty(self):
        m = random_model(random.Random(15))
        ident = {(w, w) for w in m.worlds}
        assert is_bisimulation(m, m, ident)
        assert is_bisimulation(m, m, set())

    def test_valuation_clause(self):
        m1 = KripkeModel([0], [], {"p": [0]})
        m2 = KripkeModel([0], [], {"p": []})
        assert not is_bisimulation(m1, m2, {(0, 0)})

    def test_isomorphic_chains(self):
        m1 = KripkeModel([0, 1], [(0, 1)], {"p": [1]})
        m2 = KripkeModel([5, 6], [(5, 6)], {"p": [6]})
        z = {(0, 5), (1, 6)}
        assert is_bisimulation(m1, m2, z)
        assert bisimilar_agree(m1, 0, m2, 5, z, parse("Box p"))

    def test_agree_precondition(self):
        m1 = KripkeModel([0], [], {"p": [0]})
        m2 = KripkeModel([0], [], {"p": []})
        with pytest.raises(PreconditionViolated):
            bisimilar_agree(m1, 0, m2, 0, {(0, 0)}, p)

    def test_maximal_bisimulation_agreement(self):
        rng = random.Random(16)
        for _ in range(60):
            m1, m2 = random_model(rng), random_model(rng)
            z = maximal_bisimulation(m1, m2)
            assert is_bisimulation(m1, m2, z)
            f = random_formula(rng, rng.randint(1, 8))
            for w1, w2 in z:
                assert holds(m1, f, w1) == holds(m2, f, w2)

    def test_maximal_bisimulation_is_maximal(self):
        # adding any missing pair must break the bisimulation clauses
        rng = random.Random(17)
        for _ in range(20):
            m1, m2 = random_model(rng, 3), random_model(rng, 3)
            z = maximal_bisimulation(m1, m2)
            for w1 in m1.worlds:
                for w2 in m2.worlds:
                    if (w1, w2) not in z:
                        assert not is_bisimulation(m1, m2, z | {(w1, w2)})
