import random

import pytest

from modalkit import (
    And,
    Atom,
    Box,
    Diam,
    FALSE,
    Iff,
    Imp,
    Not,
    Or,
    ParseError,
    TRUE,
    atoms,
    eliminate_diamonds,
    parse,
    pretty,
    size,
    subformulas,
    subsentences,
    substitute,
)
from corpus import random_formula

p, q, r, s = Atom("p"), Atom("q"), Atom("r"), Atom("s")


class TestParse:
    def test_distribution_schema(self):
        assert parse("Box (p --> q) --> Box p --> Box q") == Imp(
            Box(Imp(p, q)), Imp(Box(p), Box(q))
        )

    def test_and_binds_tighter_than_or(self):
        assert parse("p && q || r") == Or(And(p, q), r)

    def test_prefix_chain(self):
        assert parse("Not Box Not a") == Not(Box(Not(Atom("a"))))

    def test_right_associativity(self):
        assert parse("p --> q --> r") == Imp(p, Imp(q, r))
        assert parse("p && q && r") == And(p, And(q, r))
        assert parse("p <-> q <-> r") == Iff(p, Iff(q, r))

    def test_precedence_tower(self):
        assert parse("p <-> q --> r || s && p") == Iff(p, Imp(q, Or(r, And(s, p))))

    def test_constants_and_parens(self):
        assert parse("False") == FALSE
        assert parse("True") == TRUE
        assert parse("(p)") == p
        assert parse("Diam p") == Diam(p)

    def test_errors_carry_offset_and_expected(self):
        with pytest.raises(ParseError) as e:
            parse("p -->")
        assert e.value.offset == 5
        assert "(" in e.value.expected
        with pytest.raises(ParseError) as e:
            parse("p && (q")
        assert e.value.expected == (")",)
        with pytest.raises(ParseError):
            parse("Pbad")
        with pytest.raises(ParseError):
            parse("p q")
        with pytest.raises(ParseError):
            parse("")


class TestPretty:
    def test_examples(self):
        assert pretty(Imp(Box(p), p)) == "Box p --> p"
        assert pretty(And(p, Or(q, r))) == "p && (q || r)"
        assert pretty(Diam(p)) == "Diam p"
        assert pretty(Or(And(p, q), r)) == "p && q || r"
        assert pretty(Not(Imp(p, q))) == "Not (p --> q)"
        assert pretty(Imp(Imp(p, q), r)) == "(p --> q) --> r"
        assert pretty(And(And(p, q), r)) == "(p && q) && r"

    def test_round_trip_random(self):
        rng = random.Random(2024)
        for _ in range(400):
            f = random_formula(rng, rng.randint(1, 40), ("p", "q", "r"), allow_diam=True)
            assert parse(pretty(f)) == f


class TestStructure:
    def test_subformulas(self):
        f = Box(Imp(p, q))
        assert subformulas(f) == {f, Imp(p, q), p, q}
        assert subformulas(Atom("a")) == {Atom("a")}
        assert subformulas(Imp(p, p)) == {Imp(p, p), p}

    def test_subsentences(self):
        assert subsentences(p) == {p, Not(p)}
        assert subsentences(Box(p)) == {Box(p), Not(Box(p)), p, Not(p)}
        assert subsentences(FALSE) == {FALSE, Not(FALSE)}

    def test_subsentence_cardinality_bound(self):
        rng = random.Random(5)
        for _ in range(100):
            f = random_formula(rng, rng.randint(1, 20))
            assert len(subsentences(f)) <= 2 * len(subformulas(f))

    def test_size_and_cardinality(self):
        f = Box(Imp(p, q))
        assert size(f) == 4
        rng = random.Random(6)
        for _ in range(100):
            f = random_formula(rng, rng.randint(1, 25))
            assert len(subformulas(f)) <= size(f)
            assert size(f) >= 1

    def test_size_decreases_on_subterms(self):
        rng = random.Random(7)
        for _ in range(100):
            f = random_formula(rng, rng.randint(2, 25))
            for g in subformulas(f) - {f}:
                assert size(g) < size(f)

    def test_subformula_partial_order(self):
        rng = random.Random(8)
        for _ in range(50):
            f = random_formula(rng, rng.randint(1, 15))
            subs = subformulas(f)
            for g in subs:
                assert g in subformulas(g)  # reflexive
                for h in subformulas(g):
                    assert subformulas(h) <= subformulas(g)  # transitive
                    if h in subformulas(g) and g in subformulas(h):
                        assert g == h  # antisymmetric

    def test_atom_name_validation(self):
        with pytest.raises(ValueError):
            Atom("P")
        with pytest.raises(ValueError):
            Atom("1x")
        assert Atom("p_1A").name == "p_1A"


class TestSubstitute:
    def test_examples(self):
        assert substitute(Imp(Box(p), p), {"p": And(q, r)}) == Imp(
            Box(And(q, r)), And(q, r)
        )
        assert substitute(q, {"p": FALSE}) == q
        assert substitute(Imp(p, p), {"p": Box(p)}) == Imp(Box(p), Box(p))

    def test_identity_map(self):
        rng = random.Random(9)
        for _ in range(100):
            f = random_formula(rng, rng.randint(1, 20))
            assert substitute(f, {}) == f
            assert substitute(f, {n: Atom(n) for n in atoms(f)}) == f


def test_eliminate_diamonds():
    assert eliminate_diamonds(Diam(p)) == Not(Box(Not(p)))
    assert eliminate_diamonds(Box(Diam(p))) == Box(Not(Box(Not(p))))
    f = Imp(Box(p), q)
    assert eliminate_diamonds(f) == f


def test_parser_fuzz_raises_only_parse_errors():
    rng = random.Random(99)
    alphabet = "pq() &|->< BoxNotDiamTrueFalse\t\n*#"
    for _ in range(500):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 25)))
        try:
            f = parse(text)
        except ParseError:
            continue
        assert parse(pretty(f)) == f  # anything accepted must round-trip
