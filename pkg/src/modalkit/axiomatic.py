"""Hilbert-style calculus for normal modal systems.

Derivability is conceived as derivability in the minimal system K extended by
the specific schemata of the logic at hand (T, K4, GL).  Derivations are flat
step lists; necessitation embeds a hypothesis-free sub-derivation, mirroring
the side condition of the rule instead of tracking context switches.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .errors import PreconditionViolated
from .formula import (
    FALSE,
    TRUE,
    And,
    Atom,
    Box,
    Diam,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    pretty,
    substitute,
)
from .semantics import FrameClass

# ---------------------------------------------------------------------------
# Schema matching.  Atoms inside a schema are metavariables: a formula is an
# instance when some uniform assignment of formulas to those atoms yields it.

_P, _Q, _R = Atom("p"), Atom("q"), Atom("r")

# The axiom basis of the minimal calculus: ten propositional schemata plus
# the distribution schema.
K_SCHEMATA: tuple[Formula, ...] = (
    Imp(_P, Imp(_Q, _P)),
    Imp(Imp(_P, Imp(_Q, _R)), Imp(Imp(_P, _Q), Imp(_P, _R))),
    Imp(Imp(Imp(_P, FALSE), FALSE), _P),
    Imp(Iff(_P, _Q), Imp(_P, _Q)),
    Imp(Iff(_P, _Q), Imp(_Q, _P)),
    Imp(Imp(_P, _Q), Imp(Imp(_Q, _P), Iff(_P, _Q))),
    Iff(TRUE, Imp(FALSE, FALSE)),
    Iff(Not(_P), Imp(_P, FALSE)),
    Iff(And(_P, _Q), Imp(Imp(_P, Imp(_Q, FALSE)), FALSE)),
    Iff(Or(_P, _Q), Not(And(Not(_P), Not(_Q)))),
    Imp(Box(Imp(_P, _Q)), Imp(Box(_P), Box(_Q))),
)

T_SCHEMA = Imp(Box(_P), _P)
K4_SCHEMA = Imp(Box(_P), Box(Box(_P)))
GL_SCHEMA = Imp(Box(Imp(Box(_P), _P)), Box(_P))


def match_schema(schema: Formula, f: Formula) -> dict[str, Formula] | None:
    """First-order match of f against a schema; None when no binding works."""
    binding: dict[str, Formula] = {}

    def walk(s: Formula, g: Formula) -> bool:
        match s:
            case Atom(name):
                seen = binding.get(name)
                if seen is None:
                    binding[name] = g
                    return True
                return seen == g
            case _:
                if type(s) is not type(g):
                    return False
                match s:
                    case Not(a) | Box(a) | Diam(a):
                        return walk(a, g.arg)  # type: ignore[attr-defined]
                    case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b):
                        return walk(a, g.left) and walk(b, g.right)  # type: ignore[attr-defined]
                    case _:
                        return s == g  # constants

    return binding if walk(schema, f) else None


def is_k_axiom(f: Formula) -> bool:
    """Instance test against the eleven schemata of the minimal calculus."""
    return any(match_schema(s, f) is not None for s in K_SCHEMATA)


def _single_schema(schema: Formula) -> Callable[[Formula], bool]:
    return lambda f: match_schema(schema, f) is not None


@dataclass(frozen=True)
class Logic:
    """A normal modal system: name, specific-axiom recogniser, semantics hooks."""

    name: str
    schema: Callable[[Formula], bool]
    frame_class: FrameClass
    rules: str  # tableau rule-set id


LOGICS: dict[str, Logic] = {
    "K": Logic("K", lambda f: False, FrameClass.ALL_FINITE, "g3k"),
    "T": Logic("T", _single_schema(T_SCHEMA), FrameClass.REFLEXIVE_FINITE, "g3kt"),
    "K4": Logic("K4", _single_schema(K4_SCHEMA), FrameClass.TRANSITIVE_FINITE, "g3k4"),
    "GL": Logic(
        "GL", _single_schema(GL_SCHEMA), FrameClass.IRREFLEXIVE_TRANSITIVE_FINITE, "g3kgl"
    ),
}


def get_logic(name: str | Logic) -> Logic:
    if isinstance(name, Logic):
        return name
    try:
        return LOGICS[name]
    except KeyError:
        raise ValueError(f"unknown logic {name!r}; choose from {sorted(LOGICS)}") from None


# ---------------------------------------------------------------------------
# Derivations

@dataclass(frozen=True)
class KAxiom:
    pass


@dataclass(frozen=True)
class SchemaAxiom:
    pass


@dataclass(frozen=True)
class Hypothesis:
    pass


@dataclass(frozen=True)
class MP:
    imp: int  # earlier step proving p --> q
    arg: int  # earlier step proving p


@dataclass(frozen=True)
class RN:
    sub: "Derivation"  # hypothesis-free sub-derivation of the boxed body


Justification = Union[KAxiom, SchemaAxiom, Hypothesis, MP, RN]


@dataclass(frozen=True)
class Step:
    formula: Formula
    by: Justification


@dataclass(frozen=True)
class Derivation:
    steps: tuple[Step, ...]

    @property
    def goal(self) -> Formula:
        return self.steps[-1].formula


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    step: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_derivation(
    logic: str | Logic, hypotheses: Iterable[Formula], d: Derivation, goal: Formula
) -> CheckResult:
    """Local validity of every step plus agreement of the last step with goal.

    Failures are reported as a first-failing-step diagnostic, never raised.
    """
    lg = get_logic(logic)
    hyps = frozenset(hypotheses)
    if not d.steps:
        return CheckResult(False, None, "empty derivation")
    for k, step in enumerate(d.steps):
        f, by = step.formula, step.by
        match by:
            case KAxiom():
                if not is_k_axiom(f):
                    return CheckResult(False, k, f"not a K axiom: {pretty(f)}")
            case SchemaAxiom():
                if not lg.schema(f):
                    return CheckResult(False, k, f"not a {lg.name} schema instance: {pretty(f)}")
            case Hypothesis():
                if f not in hyps:
                    return CheckResult(False, k, f"not a hypothesis: {pretty(f)}")
            case MP(i, j):
                if not (0 <= i < k and 0 <= j < k):
                    return CheckResult(False, k, "MP cites a step out of range")
                prem = d.steps[i].formula
                if not isinstance(prem, Imp):
                    return CheckResult(False, k, "MP major premise is not an implication")
                if prem.left != d.steps[j].formula or prem.right != f:
                    return CheckResult(False, k, "MP premises do not fit the conclusion")
            case RN(sub):
                if not isinstance(f, Box):
                    return CheckResult(False, k, "RN conclusion is not boxed")
                inner = check_derivation(lg, frozenset(), sub, f.arg)
                if not inner:
                    return CheckResult(False, k, f"RN sub-derivation fails: {inner.reason}")
            case _:
                return CheckResult(False, k, f"unknown justification {by!r}")
    if d.steps[-1].formula != goal:
        return CheckResult(False, len(d.steps) - 1, "last step differs from the goal")
    return CheckResult(True)


def substitute_derivation(d: Derivation, mapping: dict[str, Formula]) -> Derivation:
    """Apply a substitution uniformly to every step (the SUB meta-operation)."""
    out = []
    for step in d.steps:
        by = step.by
        if isinstance(by, RN):
            by = RN(substitute_derivation(by.sub, mapping))
        out.append(Step(substitute(step.formula, mapping), by))
    return Derivation(tuple(out))


# ---------------------------------------------------------------------------
# Step-list builder with a few derived combinators.  All conclusions of the
# combinators are justified purely by K axioms and MP, so the results check
# in every normal system.

class DerivationBuilder:
    def __init__(self, base: Derivation | None = None):
        self._steps: list[Step] = list(base.steps) if base else []

    def add(self, f: Formula, by: Justification) -> int:
        self._steps.append(Step(f, by))
        return len(self._steps) - 1

    def formula(self, i: int) -> Formula:
        return self._steps[i].formula

    @property
    def last(self) -> int:
        return len(self._steps) - 1

    def k_axiom(self, f: Formula) -> int:
        if not is_k_axiom(f):
            raise ValueError(f"not a K axiom: {pretty(f)}")
        return self.add(f, KAxiom())

    def schema(self, f: Formula) -> int:
        return self.add(f, SchemaAxiom())

    def hyp(self, f: Formula) -> int:
        return self.add(f, Hypothesis())

    def mp(self, i: int, j: int) -> int:
        prem = self.formula(i)
        if not isinstance(prem, Imp) or prem.left != self.formula(j):
            raise ValueError("modus ponens does not apply")
        return self.add(prem.right, MP(i, j))

    def rn(self, sub: Derivation) -> int:
        return self.add(Box(sub.goal), RN(sub))

    def include(self, d: Derivation) -> int:
        """Splice another derivation's steps in, shifting its MP indices."""
        offset = len(self._steps)
        for step in d.steps:
            by = step.by
            if isinstance(by, MP):
                by = MP(by.imp + offset, by.arg + offset)
            self._steps.append(Step(step.formula, by))
        return len(self._steps) - 1

    def add_antecedent(self, i: int, b: Formula) -> int:
        """From a proof of c, conclude b --> c (schema 1 plus MP)."""
        c = self.formula(i)
        s = self.k_axiom(Imp(c, Imp(b, c)))
        return self.mp(s, i)

    def imp_trans(self, i: int, j: int) -> int:
        """From a --> b and b --> c, conclude a --> c."""
        ab, bc = self.formula(i), self.formula(j)
        assert isinstance(ab, Imp) and isinstance(bc, Imp) and ab.right == bc.left
        a, b, c = ab.left, ab.right, bc.right
        t1 = self.add_antecedent(j, a)  # a --> (b --> c)
        s2 = self.k_axiom(Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c))))
        t2 = self.mp(s2, t1)
        return self.mp(t2, i)

    def imp_box(self, sub: Derivation) -> int:
        """From a hypothesis-free proof of a --> b, conclude Box a --> Box b."""
        g = sub.goal
        assert isinstance(g, Imp)
        r = self.rn(sub)
        dist = self.k_axiom(Imp(Box(g), Imp(Box(g.left), Box(g.right))))
        return self.mp(dist, r)

    def build(self) -> Derivation:
        return Derivation(tuple(self._steps))


def _self_imp(a: Formula) -> Derivation:
    """Hypothesis-free proof of a --> a."""
    b = DerivationBuilder()
    s1 = b.k_axiom(Imp(a, Imp(Imp(a, a), a)))
    s2 = b.k_axiom(Imp(Imp(a, Imp(Imp(a, a), a)), Imp(Imp(a, Imp(a, a)), Imp(a, a))))
    s3 = b.mp(s2, s1)
    s4 = b.k_axiom(Imp(a, Imp(a, a)))
    b.mp(s3, s4)
    return b.build()


# ---------------------------------------------------------------------------
# Deduction theorem, constructively

def deduction_transform(
    logic: str | Logic, hypotheses: Iterable[Formula], b: Formula, d: Derivation
) -> Derivation:
    """Turn a checked derivation of A from h + {b} into one of b --> A from h.

    Case analysis on each step's justification: axioms and hypotheses other
    than b gain the antecedent via schema 1, the step b itself becomes the
    five-step proof of b --> b, MP steps route through schema 2, and RN steps
    are kept untouched (their sub-derivation is hypothesis-free already).
    """
    lg = get_logic(logic)
    hyps = frozenset(hypotheses)
    res = check_derivation(lg, hyps | {b}, d, d.goal)
    if not res:
        raise PreconditionViolated(
            f"input derivation does not check (step {res.step}: {res.reason})"
        )
    out = DerivationBuilder()
    new_index: dict[int, int] = {}  # old step -> step proving b --> old formula
    for k, step in enumerate(d.steps):
        c, by = step.formula, step.by
        match by:
            case KAxiom() | SchemaAxiom() | RN():
                i = out.add(c, by)
                new_index[k] = out.add_antecedent(i, b)
            case Hypothesis():
                if c == b:
                    new_index[k] = out.include(_self_imp(b))
                else:
                    i = out.hyp(c)
                    new_index[k] = out.add_antecedent(i, b)
            case MP(_, j):
                p = d.steps[j].formula
                s2 = out.k_axiom(Imp(Imp(b, Imp(p, c)), Imp(Imp(b, p), Imp(b, c))))
                t = out.mp(s2, new_index[by.imp])
                new_index[k] = out.mp(t, new_index[by.arg])
    return out.build()


# ---------------------------------------------------------------------------
# Propositional lemmas needed by the regression suite.  Each is produced as a
# hypothesis-free derivation by reasoning under hypotheses and discharging
# them with the deduction transformer.

_K = LOGICS["K"]


def _conj_elim(a: Formula, b: Formula, first: bool) -> Derivation:
    """Proof of (a && b) --> a (first) or (a && b) --> b."""
    target = a if first else b
    x = Imp(a, Imp(b, FALSE))  # the unfolding of a && b per schema 9
    bld = DerivationBuilder()
    h_ab = bld.hyp(And(a, b))
    s9 = bld.k_axiom(Iff(And(a, b), Imp(x, FALSE)))
    s4 = bld.k_axiom(Imp(Iff(And(a, b), Imp(x, FALSE)), Imp(And(a, b), Imp(x, FALSE))))
    fwd = bld.mp(s4, s9)
    xf = bld.mp(fwd, h_ab)  # (x --> False)
    h_neg = bld.hyp(Imp(target, FALSE))
    if first:
        k1 = bld.k_axiom(Imp(FALSE, Imp(b, FALSE)))
        x_idx = bld.imp_trans(h_neg, k1)  # a --> (b --> False)
    else:
        k1 = bld.k_axiom(Imp(Imp(b, FALSE), Imp(a, Imp(b, FALSE))))
        x_idx = bld.mp(k1, h_neg)
    bld.mp(xf, x_idx)  # False
    d1 = bld.build()  # {a && b, target --> False} |- False
    d2 = deduction_transform(_K, {And(a, b)}, Imp(target, FALSE), d1)
    bld2 = DerivationBuilder(d2)
    dne = bld2.k_axiom(Imp(Imp(Imp(target, FALSE), FALSE), target))
    bld2.mp(dne, len(d2.steps) - 1)
    d3 = bld2.build()  # {a && b} |- target
    return deduction_transform(_K, frozenset(), And(a, b), d3)


def _conj_intro(a: Formula, b: Formula) -> Derivation:
    """Proof of a --> (b --> (a && b))."""
    x = Imp(a, Imp(b, FALSE))
    bld = DerivationBuilder()
    h_a = bld.hyp(a)
    h_b = bld.hyp(b)
    h_x = bld.hyp(x)
    m1 = bld.mp(h_x, h_a)
    bld.mp(m1, h_b)  # False
    d1 = bld.build()  # {a, b, x} |- False
    d2 = deduction_transform(_K, {a, b}, x, d1)  # {a, b} |- x --> False
    bld2 = DerivationBuilder(d2)
    s9 = bld2.k_axiom(Iff(And(a, b), Imp(x, FALSE)))
    s5 = bld2.k_axiom(Imp(Iff(And(a, b), Imp(x, FALSE)), Imp(Imp(x, FALSE), And(a, b))))
    bwd = bld2.mp(s5, s9)
    bld2.mp(bwd, len(d2.steps) - 1)  # a && b
    d3 = bld2.build()
    d4 = deduction_transform(_K, {a}, b, d3)
    return deduction_transform(_K, frozenset(), a, d4)


def _box_and_forward(a: Formula, b: Formula) -> Derivation:
    """Proof of Box (a && b) --> (Box a && Box b)."""
    bld = DerivationBuilder()
    h = bld.hyp(Box(And(a, b)))
    e1 = bld.imp_box(_conj_elim(a, b, True))
    m1 = bld.mp(e1, h)  # Box a
    e2 = bld.imp_box(_conj_elim(a, b, False))
    m2 = bld.mp(e2, h)  # Box b
    ci = bld.include(_conj_intro(Box(a), Box(b)))
    m3 = bld.mp(ci, m1)
    bld.mp(m3, m2)  # Box a && Box b
    return deduction_transform(_K, frozenset(), Box(And(a, b)), bld.build())


def _box_and_backward(a: Formula, b: Formula) -> Derivation:
    """Proof of (Box a && Box b) --> Box (a && b)."""
    bld = DerivationBuilder()
    h = bld.hyp(And(Box(a), Box(b)))
    e1 = bld.include(_conj_elim(Box(a), Box(b), True))
    ba = bld.mp(e1, h)  # Box a
    e2 = bld.include(_conj_elim(Box(a), Box(b), False))
    bb = bld.mp(e2, h)  # Box b
    ib = bld.imp_box(_conj_intro(a, b))  # Box a --> Box (b --> (a && b))
    m1 = bld.mp(ib, ba)
    kd = bld.k_axiom(Imp(Box(Imp(b, And(a, b))), Imp(Box(b), Box(And(a, b)))))
    m2 = bld.mp(kd, m1)
    bld.mp(m2, bb)  # Box (a && b)
    return deduction_transform(_K, frozenset(), And(Box(a), Box(b)), bld.build())


def _mlk_imp_box() -> Derivation:
    # Instance of: from |- A --> B conclude |- Box A --> Box B, for the
    # axiom instance p --> (q --> p); necessitation, distribution, MP.
    sub = Derivation((Step(Imp(_P, Imp(_Q, _P)), KAxiom()),))
    bld = DerivationBuilder()
    bld.imp_box(sub)
    return bld.build()


def _mlk_box_and() -> Derivation:
    # Box (p && q) <-> (Box p && Box q), assembled from the two directions.
    lhs, rhs = Box(And(_P, _Q)), And(Box(_P), Box(_Q))
    bld = DerivationBuilder()
    f = bld.include(_box_and_forward(_P, _Q))
    g = bld.include(_box_and_backward(_P, _Q))
    s6 = bld.k_axiom(Imp(Imp(lhs, rhs), Imp(Imp(rhs, lhs), Iff(lhs, rhs))))
    t = bld.mp(s6, f)
    bld.mp(t, g)
    return bld.build()


def _gl_schema_4() -> Derivation:
    # The nine-line argument that GL proves Box p --> Box Box p, with the
    # classical-logic lines expanded into primitive steps.
    a = _P
    ba = Box(a)
    c = And(ba, a)  # Box p && p

    # step 3: |- p --> (Box c --> c)
    bld = DerivationBuilder()
    h_a = bld.hyp(a)
    h_bc = bld.hyp(Box(c))
    bf = bld.include(_box_and_forward(ba, a))  # Box c --> (Box Box p && Box p)
    m = bld.mp(bf, h_bc)
    e2 = bld.include(_conj_elim(Box(ba), ba, False))
    bp = bld.mp(e2, m)  # Box p
    ci = bld.include(_conj_intro(ba, a))
    m3 = bld.mp(ci, bp)
    bld.mp(m3, h_a)  # c
    d = deduction_transform(_K, {a}, Box(c), bld.build())
    step3 = deduction_transform(_K, frozenset(), a, d)

    main = DerivationBuilder()
    s4 = main.imp_box(step3)  # Box p --> Box (Box c --> c)
    s5 = main.schema(Imp(Box(Imp(Box(c), c)), Box(c)))  # the GL axiom at c
    s6 = main.imp_trans(s4, s5)  # Box p --> Box c
    s8 = main.imp_box(_conj_elim(ba, a, True))  # Box c --> Box Box p
    main.imp_trans(s6, s8)  # Box p --> Box Box p
    return main.build()


@dataclass(frozen=True)
class RegressionEntry:
    name: str
    logic: str
    derivation: Derivation

    @property
    def goal(self) -> Formula:
        return self.derivation.goal


def mlk_regression_suite() -> list[RegressionEntry]:
    """Hand-encoded derivations of normal-logic lemmas, all hypothesis-free."""
    return [
        RegressionEntry("mlk_imp_box_pq", "K", _mlk_imp_box()),
        RegressionEntry("mlk_box_and_forward_pq", "K", _box_and_forward(_P, _Q)),
        RegressionEntry("mlk_box_and_pq", "K", _mlk_box_and()),
        RegressionEntry("gl_schema_4_p", "GL", _gl_schema_4()),
    ]


# ---------------------------------------------------------------------------
# Random checked derivations (used by the property and acceptance tests)

def random_derivation(
    logic: str | Logic, rng: random.Random, max_steps: int = 15
) -> tuple[frozenset[Formula], Derivation]:
    """Forward-generate a derivation that checks against random hypotheses."""
    lg = get_logic(logic)
    pool = [_P, _Q, Box(_P), Not(_Q), Imp(_P, _Q), And(_P, _Q), FALSE, TRUE]
    hyps = frozenset(rng.sample(pool, rng.randint(1, 3)))
    target = rng.randint(1, max_steps)
    steps: list[Step] = []

    def random_axiom() -> Formula:
        schema = rng.choice(K_SCHEMATA)
        names = {"p", "q", "r"}
        return substitute(schema, {n: rng.choice(pool) for n in names})

    def random_schema_instance() -> Formula | None:
        base = {"K": None, "T": T_SCHEMA, "K4": K4_SCHEMA, "GL": GL_SCHEMA}[lg.name]
        if base is None:
            return None
        return substitute(base, {"p": rng.choice(pool)})

    while len(steps) < target:
        roll = rng.random()
        if roll < 0.35 or not steps:
            steps.append(Step(random_axiom(), KAxiom()))
        elif roll < 0.5:
            inst = random_schema_instance()
            if inst is None:
                steps.append(Step(random_axiom(), KAxiom()))
            else:
                steps.append(Step(inst, SchemaAxiom()))
        elif roll < 0.65:
            steps.append(Step(rng.choice(sorted(hyps, key=pretty)), Hypothesis()))
        elif roll < 0.85:
            pairs = [
                (i, j)
                for i, si in enumerate(steps)
                if isinstance(si.formula, Imp)
                for j, sj in enumerate(steps)
                if sj.formula == si.formula.left
            ]
            if pairs:
                i, j = rng.choice(pairs)
                steps.append(Step(steps[i].formula.right, MP(i, j)))
            else:
                steps.append(Step(random_axiom(), KAxiom()))
        else:
            sub = Derivation((Step(random_axiom(), KAxiom()),))
            steps.append(Step(Box(sub.goal), RN(sub)))
    return hyps, Derivation(tuple(steps))
