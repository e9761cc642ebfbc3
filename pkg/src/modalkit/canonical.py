"""Completeness machinery as an executable oracle.

Worlds are maximal consistent sets of subsentences of the goal, consistency
is decided through the proof-search engine, and the standard accessibility
relation of the logic at hand turns the world set into a model satisfying
the truth lemma.  The resulting verdict is used to cross-validate decide().
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .axiomatic import Logic, get_logic
from .errors import PreconditionViolated
from .formula import (
    TRUE,
    And,
    Atom,
    Box,
    Falsum,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Verum,
    eliminate_diamonds,
    pretty,
    size,
    subformulas,
    subsentences,
)
from .semantics import KripkeModel, holds, in_class
from .tableau import NonTheorem, Theorem, Undetermined, decide


class OracleUndetermined(RuntimeError):
    """The underlying proof search could not settle a consistency query."""


class SizeLimit(ValueError):
    """The goal has too many subformulas for desk-scale world enumeration."""


MAX_ORACLE_SUBFORMULAS = 10


def conjoin(xs: Sequence[Formula]) -> Formula:
    """Right-nested conjunction of a list; empty list is True."""
    if not xs:
        return TRUE
    if len(xs) == 1:
        return xs[0]
    return And(xs[0], conjoin(xs[1:]))


_theorem_cache: dict[tuple[str, Formula], bool] = {}


def _is_theorem(logic: Logic, f: Formula) -> bool:
    key = (logic.name, f)
    hit = _theorem_cache.get(key)
    if hit is not None:
        return hit
    outcome = decide(logic, f, collect_proof=False)
    if isinstance(outcome, Undetermined):
        raise OracleUndetermined(
            f"decide({logic.name}, {pretty(f)}) exhausted its step budget"
        )
    verdict = isinstance(outcome, Theorem)
    _theorem_cache[key] = verdict
    return verdict


def consistent(logic: str | Logic, xs: Sequence[Formula]) -> bool:
    """S-consistency of a finite list: the logic does not refute its conjunction."""
    lg = get_logic(logic)
    return not _is_theorem(lg, Not(conjoin(list(xs))))


@dataclass(frozen=True)
class McsWorld:
    """A maximal consistent, duplicate-free list of subsentences of the goal."""

    formulas: tuple[Formula, ...]

    @cached_property
    def members(self) -> frozenset[Formula]:
        return frozenset(self.formulas)

    def __contains__(self, f: Formula) -> bool:
        return f in self.members

    def boxed(self) -> list[Formula]:
        """Bodies B of the positive members Box B."""
        return [f.arg for f in self.formulas if isinstance(f, Box)]


def subformula_order(goal: Formula) -> list[Formula]:
    """The fixed enumeration order: by size, then by printed text."""
    return sorted(subformulas(goal), key=lambda g: (size(g), pretty(g)))


def lindenbaum_extend(
    logic: str | Logic, goal: Formula, xs: Sequence[Formula]
) -> McsWorld:
    """Extend a consistent list of subsentences of goal to a maximal one.

    Standard construction: walk the subformulas in the fixed order, adding
    each formula if the extension stays consistent and its negation otherwise.
    """
    lg = get_logic(logic)
    subs = subsentences(goal)
    for f in xs:
        if f not in subs:
            raise PreconditionViolated(f"{pretty(f)} is not a subsentence of the goal")
    if not consistent(lg, list(xs)):
        raise PreconditionViolated("input list is not consistent")
    current: list[Formula] = list(dict.fromkeys(xs))
    for e in subformula_order(goal):
        if e in current or Not(e) in current:
            continue
        if consistent(lg, current + [e]):
            current.append(e)
        else:
            current.append(Not(e))
    return McsWorld(tuple(current))


# ---------------------------------------------------------------------------
# Standard models

def _induced_sign(f: Formula, sign: dict[Formula, bool]) -> bool:
    """Truth-functional sign of a compound under the signs of its parts."""
    match f:
        case Falsum():
            return False
        case Verum():
            return True
        case Not(a):
            return not sign[a]
        case And(a, b):
            return sign[a] and sign[b]
        case Or(a, b):
            return sign[a] or sign[b]
        case Imp(a, b):
            return (not sign[a]) or sign[b]
        case Iff(a, b):
            return sign[a] == sign[b]
    raise TypeError(f"sign of {f!r} is not induced")


def _enumerate_worlds(lg: Logic, goal: Formula) -> list[McsWorld]:
    """All maximal consistent sign assignments over the subformula list.

    Iterates the sign vectors of the subformula list in a fixed order.
    Vectors that break a truth-functional constraint are inconsistent in
    every normal system, so the prover is only consulted for the rest.
    """
    order = subformula_order(goal)
    base = [f for f in order if isinstance(f, (Atom, Box))]
    worlds: list[McsWorld] = []
    for mask in range(1 << len(base)):
        sign: dict[Formula, bool] = {}
        for i, f in enumerate(base):
            sign[f] = bool(mask >> i & 1)
        coherent = True
        for f in order:
            if f in sign:
                continue
            try:
                sign[f] = _induced_sign(f, sign)
            except TypeError:
                coherent = False
                break
        if not coherent:
            continue
        formulas = tuple(f if sign[f] else Not(f) for f in order)
        if consistent(lg, list(formulas)):
            worlds.append(McsWorld(formulas))
    return worlds


def _standard_rel(lg: Logic, w: McsWorld, x: McsWorld) -> bool:
    """The logic's standard accessibility relation between two worlds."""
    base = all(b in x for b in w.boxed())
    match lg.name:
        case "K" | "T":
            return base
        case "K4":
            return base and all(Box(b) in x for b in w.boxed())
        case "GL":
            return (
                base
                and all(Box(b) in x for b in w.boxed())
                and any(Not(Box(e)) in w for e in x.boxed())
            )
    raise ValueError(f"no standard relation for {lg.name}")


@dataclass(frozen=True)
class TheoremSignal:
    """Returned when the goal is a theorem and no countermodel world exists."""


@dataclass(frozen=True)
class StandardModel:
    model: KripkeModel
    worlds: tuple[McsWorld, ...]  # world id i of the model is worlds[i]


def standard_model(logic: str | Logic, goal: Formula) -> StandardModel | TheoremSignal:
    """Construct the standard countermodel for a non-theorem goal.

    The construction is verified on the spot: the frame must sit in the
    logic's class, membership must match forcing for every subformula at
    every world (truth lemma), and boxed membership must match successor
    membership (accessibility lemma).
    """
    lg = get_logic(logic)
    goal = eliminate_diamonds(goal)
    if len(subformulas(goal)) > MAX_ORACLE_SUBFORMULAS:
        raise SizeLimit(
            f"goal has more than {MAX_ORACLE_SUBFORMULAS} subformulas"
        )
    outcome = decide(lg, goal)
    if isinstance(outcome, Undetermined):
        raise OracleUndetermined(f"decide({lg.name}, {pretty(goal)}) is undetermined")
    if isinstance(outcome, Theorem):
        return TheoremSignal()

    worlds = _enumerate_worlds(lg, goal)
    assert worlds, "a non-theorem goal must admit a maximal consistent world"
    ids = range(len(worlds))
    rel = frozenset(
        (i, j) for i in ids for j in ids if _standard_rel(lg, worlds[i], worlds[j])
    )
    names = sorted({f.name for f in subformulas(goal) if isinstance(f, Atom)})
    val = {
        name: frozenset(i for i in ids if Atom(name) in worlds[i]) for name in names
    }
    model = KripkeModel(ids, rel, val)

    assert in_class(model.worlds, model.rel, lg.frame_class), (
        f"standard frame left the {lg.frame_class.value} class"
    )
    for q in subformulas(goal):
        for i in ids:
            assert (q in worlds[i]) == holds(model, q, i), (
                f"truth lemma fails for {pretty(q)} at world {i}"
            )
    for q in subformulas(goal):
        if isinstance(q, Box):
            for i in ids:
                expected = all(q.arg in worlds[j] for j in model.successors(i))
                assert (q in worlds[i]) == expected, (
                    f"accessibility lemma fails for {pretty(q)} at world {i}"
                )
    return StandardModel(model, tuple(worlds))


@dataclass(frozen=True)
class OracleResult:
    is_theorem: bool
    model: KripkeModel | None = None
    world: int | None = None

    def __bool__(self) -> bool:
        return self.is_theorem


def oracle_verdict(logic: str | Logic, f: Formula) -> OracleResult:
    """Independent theoremhood verdict via the standard-model construction.

    Non-theorems come with the falsifying (model, world): the first world in
    enumeration order containing the goal's negation.
    """
    lg = get_logic(logic)
    goal = eliminate_diamonds(f)
    sm = standard_model(lg, goal)
    if isinstance(sm, TheoremSignal):
        return OracleResult(True)
    witness = next(i for i, w in enumerate(sm.worlds) if Not(goal) in w)
    assert not holds(sm.model, goal, witness), "witness world fails to falsify the goal"
    return OracleResult(False, sm.model, witness)
